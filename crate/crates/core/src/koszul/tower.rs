use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::complexes::{hom_complex, ComplexMap, FreeComplex};
use crate::error::{Error, Result};
use crate::modcat::{FpModule, ModuleMap};
use crate::polyring::{Polynomial, Ring};

use super::complex::{check_sequence, koszul_complex, transition_between};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `K(tʳ) ⊗ M → K(tˢ) ⊗ M` for `r ≤ s`.
    Direct,
    /// `Hom(K(tˢ), P) → Hom(K(tʳ), P)` for `r ≤ s`.
    DualInverse,
}

/// Koszul complexes `K(tʳ)` for `1 ≤ r ≤ r_max` with their transitions,
/// built on demand.
pub struct KoszulTower {
    ring: Arc<Ring>,
    t: Vec<Polynomial>,
    direction: Direction,
    module: Option<FpModule>,
    r_max: u32,
    bases: Vec<OnceLock<Arc<FreeComplex>>>,
    stages: Vec<OnceLock<Arc<FreeComplex>>>,
    transitions: Mutex<HashMap<(u32, u32), Arc<ComplexMap>>>,
}

impl std::fmt::Debug for KoszulTower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KoszulTower")
            .field("t", &self.t)
            .field("direction", &self.direction)
            .field("r_max", &self.r_max)
            .finish()
    }
}

impl KoszulTower {
    fn build(t: &[Polynomial], module: Option<&FpModule>, direction: Direction, r_max: u32) -> Result<Self> {
        let ring = check_sequence(t)?;
        if r_max == 0 {
            return Err(Error::BadBounds("r_max must be positive".into()));
        }
        if let Some(m) = module {
            if !m.ring().same(&ring) {
                return Err(Error::MixedRings);
            }
        }
        let n = r_max as usize;
        Ok(KoszulTower {
            ring,
            t: t.to_vec(),
            direction,
            module: module.cloned(),
            r_max,
            bases: (0..n).map(|_| OnceLock::new()).collect(),
            stages: (0..n).map(|_| OnceLock::new()).collect(),
            transitions: Mutex::new(HashMap::new()),
        })
    }

    /// The direct system `K(tʳ) ⊗ M`.
    pub fn direct(t: &[Polynomial], m: Option<&FpModule>, r_max: u32) -> Result<Self> {
        Self::build(t, m, Direction::Direct, r_max)
    }

    /// The inverse system `Hom(K(tʳ), P)`.
    pub fn dual(t: &[Polynomial], p: &FpModule, r_max: u32) -> Result<Self> {
        Self::build(t, Some(p), Direction::DualInverse, r_max)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn sequence(&self) -> &[Polynomial] {
        &self.t
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn module(&self) -> Option<&FpModule> {
        self.module.as_ref()
    }

    pub fn r_max(&self) -> u32 {
        self.r_max
    }

    fn slot(&self, r: u32) -> Result<usize> {
        if r == 0 || r > self.r_max {
            return Err(Error::BadBounds(format!("stage {r} outside 1..={}", self.r_max)));
        }
        Ok(r as usize - 1)
    }

    fn coefficient(&self) -> Option<&FpModule> {
        match self.direction {
            Direction::Direct => self.module.as_ref(),
            Direction::DualInverse => None,
        }
    }

    /// `K(tʳ)` (with coefficients for a direct tower).
    pub fn base(&self, r: u32) -> Result<Arc<FreeComplex>> {
        let k = self.slot(r)?;
        if let Some(c) = self.bases[k].get() {
            return Ok(c.clone());
        }
        let c = Arc::new(koszul_complex(&self.t, r, self.coefficient())?);
        Ok(self.bases[k].get_or_init(|| c).clone())
    }

    pub fn stage(&self, r: u32) -> Result<Arc<FreeComplex>> {
        if self.direction == Direction::Direct {
            return self.base(r);
        }
        let k = self.slot(r)?;
        if let Some(c) = self.stages[k].get() {
            return Ok(c.clone());
        }
        let p = FreeComplex::from_module(self.module.as_ref().expect("dual tower"), 0);
        let c = Arc::new(hom_complex(&*self.base(r)?, &p)?);
        Ok(self.stages[k].get_or_init(|| c).clone())
    }

    /// The transition between stages `r ≤ s`: `stage r → stage s` for a direct
    /// tower and `stage s → stage r` for a dual one.
    pub fn transition(&self, r: u32, s: u32) -> Result<Arc<ComplexMap>> {
        self.slot(r)?;
        self.slot(s)?;
        if r > s {
            return Err(Error::BadBounds(format!("need r ≤ s, got r = {r}, s = {s}")));
        }
        if let Some(f) = self.transitions.lock().expect("poisoned").get(&(r, s)) {
            return Ok(f.clone());
        }
        let (br, bs) = (self.base(r)?, self.base(s)?);
        let direct = transition_between(&self.t, r, s, self.coefficient(), &br, &bs)?;
        let f = match self.direction {
            Direction::Direct => direct,
            Direction::DualInverse => {
                let p = FreeComplex::from_module(self.module.as_ref().expect("dual tower"), 0);
                direct.hom_into(&p, &self.stage(s)?, &self.stage(r)?)?
            }
        };
        let f = Arc::new(f);
        let mut cache = self.transitions.lock().expect("poisoned");
        Ok(cache.entry((r, s)).or_insert(f).clone())
    }

    /// `H^n` of stage `r`.
    pub fn homology(&self, r: u32, n: i64) -> Result<FpModule> {
        self.stage(r)?.homology(n)
    }

    /// The map induced on `H^n` by the transition between `r ≤ s`.
    pub fn homology_map(&self, r: u32, s: u32, n: i64) -> Result<ModuleMap> {
        self.transition(r, s)?.induced_homology_map(n)
    }

    /// For a dual tower, the isomorphism `P / tʳP → H⁰ Hom(K(tʳ), P)` sending
    /// each generator of `P` to its class.
    pub fn h0_comparison(&self, r: u32) -> Result<ModuleMap> {
        if self.direction != Direction::DualInverse {
            return Err(Error::InvalidComplex("H⁰ comparison needs a dual tower".into()));
        }
        let p = self.module.as_ref().expect("dual tower");
        let powers: Vec<Polynomial> = self.t.iter().map(|x| x.pow(r)).collect::<Result<_>>()?;
        let quotient = p.mod_ideal(&powers)?;
        let stage = self.stage(r)?;
        let h0 = stage.homology(0)?;
        let Some(sq) = stage.homology_subquotient(0)? else {
            return Ok(ModuleMap::zero(&quotient, &h0));
        };
        let mut cols = Vec::with_capacity(p.rank());
        for i in 0..p.rank() {
            let c = sq
                .express(&p.unit_vector(i))?
                .ok_or_else(|| Error::LiftFailure("generator is not a cycle".into()))?;
            cols.push(c);
        }
        let m = crate::groebner::Matrix::new(&self.ring, h0.twists().to_vec(), quotient.twists().to_vec(), cols)?;
        ModuleMap::new(quotient, h0, m)
    }
}
