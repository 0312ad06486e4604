//! Exact commutative algebra: Gröbner bases, finitely presented modules,
//! Koszul towers, local cohomology and completion towers.

pub mod error;
pub mod field;
pub mod complexes;
pub mod duality;
pub mod completion;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod localcoh;
pub mod modcat;
pub mod polyring;
pub mod text;

pub use complexes::{ComplexMap, FreeComplex};
pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use groebner::{FreeModuleMatrix, Ideal, Matrix};
pub use modcat::{FpModule, ModuleMap};
pub use polyring::{Monomial, MonomialOrder, Polynomial, Ring};
