//! Bounded cohomological complexes: tensor, Hom, cones, shifts, homology.
//!
//! Sign conventions:
//! - tensor: `d(a⊗b) = da⊗b + (-1)^|a| a⊗db`;
//! - Hom: `Hom^n = ⊕_p Hom(C^p, D^{p+n})`, `df = d∘f - (-1)^n f∘d`;
//! - cone: `Cone(f)^n = C^{n+1} ⊕ D^n`, `d(c, e) = (-dc, f(c) + de)`;
//! - shift: `C[k]^n = C^{n+k}` with `d` multiplied by `(-1)^k`.

mod complex;
mod homology;
mod map;
mod ops;

pub use complex::FreeComplex;
pub use homology::{connecting_map, exact_at, long_exact_sequence, ExactnessSpot};
pub use map::{constant_dense, ComplexMap};
pub use ops::{cone, hom_complex, hom_layout, tensor_complexes, tensor_layout, HomIndex, TensorIndex};

use crate::error::Result;
use crate::modcat::{FpModule, ModuleMap};

/// `H^i(C)` as a presented module.
pub fn homology(c: &FreeComplex, i: i64) -> Result<FpModule> {
    c.homology(i)
}

/// The map induced on `H^i`.
pub fn induced_homology_map(f: &ComplexMap, i: i64) -> Result<ModuleMap> {
    f.induced_homology_map(i)
}
