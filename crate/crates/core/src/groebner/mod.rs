//! Gröbner bases for ideals and submodules of free modules, with colon
//! ideals, saturation and syzygies.

pub(crate) mod engine;
mod ideal;
mod matrix;
mod module;

pub use ideal::{ideal_gb, ideal_quotient, normal_form, Ideal, Power, Quotient};
pub use matrix::{column_degree, FreeModuleMatrix, Matrix};
pub use module::{
    minimal_generators, reduce_column_mod_ring, reduce_mod_ring, syzygy_kernel, LiftGb, SubmoduleGb,
};
