//! Adic towers, the local homology tower `Hom(K(tʳ), P)` and the
//! finite-stage hom-tensor adjunction behind Greenlees–May duality.

mod adic;
mod gm;
mod lochom;

pub use adic::{adic_tower, AdicSummary, AdicTower};
pub use gm::{adjunction_map, gm_adjunction_check, DualityReport, SquareVerdict, StageVerdict};
pub use lochom::{
    local_homology_tower, local_homology_tower_in, H0Stage, LocalHomologyReport, MlEntry, TowerVerdict, NULLITY_FACTOR,
};

#[cfg(test)]
mod tests;
