//! Torsion, graded local cohomology as a colimit of Koszul or Ext stages,
//! and certificates for proregularity and essential nullity.

mod ext;
mod nullity;
mod proreg;
mod table;
mod torsion;

pub use nullity::{essential_nullity_check, EssentialNullityCertificate, NullityWitness};
pub use proreg::{proregular_containment, proregularity_check, ProregWitness, ProregularityCertificate, Verdict};
pub use table::{local_cohomology_graded, DegreeRow, LocalCohomologyTable, Method};
pub use torsion::{torsion_submodule, Torsion};

#[cfg(test)]
mod tests;
