//! Koszul complexes `K(tʳ)`, their transitions, and the towers they form.

mod complex;
mod localization;
mod tower;

pub(crate) use complex::check_sequence;
pub use complex::{
    koszul_complex, koszul_subsets, koszul_transition, permutation_isomorphism, split_sequence_check,
};
pub use localization::{localization_colimit_check, LocalizationReport, LocalizationRow};
pub use tower::{Direction, KoszulTower};

use crate::error::Result;
use crate::modcat::FpModule;
use crate::polyring::Polynomial;

/// The inverse system `Hom(K(tʳ), P)`, `1 ≤ r ≤ r_max`.
pub fn dual_koszul_tower(t: &[Polynomial], p: &FpModule, r_max: u32) -> Result<KoszulTower> {
    KoszulTower::dual(t, p, r_max)
}
