//! Finitely presented modules, their maps, resolutions and Ext.

mod map;
mod module;
mod resolution;
mod subquotient;

pub use map::{IsoVerdict, ModuleMap};
pub use module::{ring_is_graded, FpModule, Pruned};
pub use resolution::{ext_module, free_resolution, hom_free_into, hom_map_into, homology_at, Resolution};
pub use subquotient::Subquotient;

/// `d ↦ dim M_d` over `lo..=hi`.
pub fn hilbert_function(m: &FpModule, lo: i64, hi: i64) -> crate::Result<std::collections::BTreeMap<i64, usize>> {
    m.hilbert_function(lo, hi)
}

/// Kernel and cokernel test for a module map.
pub fn verify_isomorphism(f: &ModuleMap) -> crate::Result<IsoVerdict> {
    f.verify_isomorphism()
}

#[cfg(test)]
mod tests;
