use std::sync::{Arc, OnceLock};

use crate::error::Result;
use crate::groebner::{column_degree, LiftGb, Matrix};
use crate::modcat::module::FpModule;
use crate::polyring::{Polynomial, Ring};

/// `(Z + B)/B` inside a free module `F`, presented on a subset of `Z`.
#[derive(Debug)]
pub struct Subquotient {
    ambient_twists: Vec<i64>,
    gens: Vec<Vec<Polynomial>>,
    denominators: Vec<Vec<Polynomial>>,
    module: FpModule,
    lift: OnceLock<LiftGb>,
}

impl Clone for Subquotient {
    fn clone(&self) -> Self {
        Subquotient {
            ambient_twists: self.ambient_twists.clone(),
            gens: self.gens.clone(),
            denominators: self.denominators.clone(),
            module: self.module.clone(),
            lift: OnceLock::new(),
        }
    }
}

fn twists_of(cols: &[Vec<Polynomial>], ambient: &[i64]) -> Vec<i64> {
    cols.iter().map(|c| column_degree(c, ambient).unwrap_or(0)).collect()
}

impl Subquotient {
    pub fn new(
        ring: &Arc<Ring>,
        ambient_twists: Vec<i64>,
        gens: Vec<Vec<Polynomial>>,
        denominators: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let gens: Vec<Vec<Polynomial>> = gens
            .into_iter()
            .filter(|c| c.iter().any(|p| !p.is_zero()))
            .collect();
        let denominators: Vec<Vec<Polynomial>> = denominators
            .into_iter()
            .filter(|c| c.iter().any(|p| !p.is_zero()))
            .collect();
        let gt = twists_of(&gens, &ambient_twists);
        let n = gens.len();
        let raw = if n == 0 {
            FpModule::free(ring, Vec::new())
        } else {
            let mut cols = gens.clone();
            cols.extend(denominators.iter().cloned());
            let mut ct = gt.clone();
            ct.extend(twists_of(&denominators, &ambient_twists));
            let syz = LiftGb::new(ring, &ambient_twists, &ct, &cols)?.syzygies()?;
            let rels: Vec<Vec<Polynomial>> = syz
                .into_iter()
                .map(|mut s| {
                    s.truncate(n);
                    s
                })
                .filter(|s| s.iter().any(|p| !p.is_zero()))
                .collect();
            FpModule::new(Matrix::from_columns(ring, gt, rels)?)?
        };
        let pruned = raw.prune()?;
        let gens = pruned.kept.iter().map(|&i| gens[i].clone()).collect();
        Ok(Subquotient {
            ambient_twists,
            gens,
            denominators,
            module: pruned.module,
            lift: OnceLock::new(),
        })
    }

    pub fn module(&self) -> &FpModule {
        &self.module
    }

    pub fn into_module(self) -> FpModule {
        self.module
    }

    /// Generator columns in the ambient free module.
    pub fn generators(&self) -> &[Vec<Polynomial>] {
        &self.gens
    }

    pub fn ambient_twists(&self) -> &[i64] {
        &self.ambient_twists
    }

    pub fn denominators(&self) -> &[Vec<Polynomial>] {
        &self.denominators
    }

    fn lifter(&self) -> Result<&LiftGb> {
        if let Some(l) = self.lift.get() {
            return Ok(l);
        }
        let ring = self.module.ring();
        let mut cols = self.gens.clone();
        cols.extend(self.denominators.iter().cloned());
        let mut ct = self.module.twists().to_vec();
        ct.extend(twists_of(&self.denominators, &self.ambient_twists));
        let l = LiftGb::new(ring, &self.ambient_twists, &ct, &cols)?;
        let _ = self.lift.set(l);
        Ok(self.lift.get().unwrap())
    }

    /// Coordinates of the class of `v` on the generators, if `v ∈ Z + B`.
    pub fn express(&self, v: &[Polynomial]) -> Result<Option<Vec<Polynomial>>> {
        if self.gens.is_empty() && self.denominators.is_empty() {
            return Ok(if v.iter().all(|p| p.is_zero()) {
                Some(Vec::new())
            } else {
                None
            });
        }
        Ok(self.lifter()?.lift(v)?.map(|mut a| {
            a.truncate(self.gens.len());
            a
        }))
    }

    /// Whether `v` lies in `B`.
    pub fn is_trivial(&self, v: &[Polynomial]) -> Result<bool> {
        match self.express(v)? {
            None => Ok(false),
            Some(a) => self.module.element_is_zero(&a),
        }
    }
}
