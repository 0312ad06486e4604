use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{Ideal, Matrix};
use crate::modcat::{FpModule, ModuleMap};

/// The inverse system `M/IⁿM`, `1 ≤ n ≤ n_max`, with its projections.
#[derive(Clone, Debug)]
pub struct AdicTower {
    module: FpModule,
    ideal: Ideal,
    stages: Vec<FpModule>,
    transitions: Vec<ModuleMap>,
    surjective: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdicSummary {
    pub n_max: u32,
    /// `dim_k M/IⁿM` where finite.
    pub dims: Vec<Option<usize>>,
    pub surjective: Vec<bool>,
    /// `[degree, stage, dim]` over the requested window.
    pub hilbert: Vec<[i64; 3]>,
}

/// `M/IⁿM` with the identity on generators as transition maps.
pub fn adic_tower(m: &FpModule, i: &Ideal, n_max: u32) -> Result<AdicTower> {
    if n_max == 0 {
        return Err(Error::BadBounds("n_max must be positive".into()));
    }
    if !m.ring().same(i.ring()) {
        return Err(Error::MixedRings);
    }
    let ring = m.ring();
    let mut stages = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let p = i.power(n)?;
        stages.push(m.mod_ideal(p.generators())?);
    }
    let mut transitions = Vec::with_capacity(stages.len().saturating_sub(1));
    let mut surjective = Vec::with_capacity(transitions.capacity());
    for w in stages.windows(2) {
        let id = Matrix::identity(ring, m.twists().to_vec());
        let f = ModuleMap::new(w[1].clone(), w[0].clone(), id)?;
        surjective.push(f.cokernel()?.is_zero()?);
        transitions.push(f);
    }
    Ok(AdicTower {
        module: m.clone(),
        ideal: i.clone(),
        stages,
        transitions,
        surjective,
    })
}

impl AdicTower {
    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn n_max(&self) -> u32 {
        self.stages.len() as u32
    }

    /// `M/IⁿM`.
    pub fn stage(&self, n: u32) -> Result<&FpModule> {
        self.stages
            .get((n as usize).wrapping_sub(1))
            .ok_or_else(|| Error::BadBounds(format!("stage {n} outside 1..={}", self.n_max())))
    }

    /// `M/I^{n+1}M → M/IⁿM`.
    pub fn transition(&self, n: u32) -> Result<&ModuleMap> {
        self.transitions
            .get((n as usize).wrapping_sub(1))
            .ok_or_else(|| Error::BadBounds(format!("no transition into stage {n}")))
    }

    pub fn all_surjective(&self) -> bool {
        self.surjective.iter().all(|&b| b)
    }

    pub fn summary(&self, window: Option<(i64, i64)>) -> Result<AdicSummary> {
        let graded = self.module.is_graded() && self.ideal.generators().iter().all(|g| g.is_homogeneous());
        let dims = self
            .stages
            .iter()
            .map(|s| if graded { s.total_dimension() } else { Ok(None) })
            .collect::<Result<Vec<_>>>()?;
        let mut hilbert = Vec::new();
        if let (true, Some((lo, hi))) = (graded, window) {
            for d in lo..=hi {
                for (k, s) in self.stages.iter().enumerate() {
                    hilbert.push([d, k as i64 + 1, s.hilbert_value(d)? as i64]);
                }
            }
        }
        Ok(AdicSummary {
            n_max: self.n_max(),
            dims,
            surjective: self.surjective.clone(),
            hilbert,
        })
    }
}
