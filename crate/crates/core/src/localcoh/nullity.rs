use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::SubmoduleGb;
use crate::koszul::{check_sequence, dual_koszul_tower, KoszulTower};
use crate::modcat::FpModule;
use crate::polyring::Polynomial;
use crate::text;

use super::proreg::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullityWitness {
    pub r: u32,
    /// Least `s ∈ (r, s_max]` with `H_i(tˢ, P) → H_i(tʳ, P)` zero, if any.
    pub s: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialNullityCertificate {
    pub ring: String,
    pub sequence: Vec<String>,
    pub module: String,
    /// Homological index; the tower is read in cohomological degree `-index`.
    pub index: i64,
    pub r_max: u32,
    pub s_max: u32,
    pub witnesses: Vec<NullityWitness>,
    pub verdict: Verdict,
}

/// Whether the transition `stage s → stage r` kills `H^{-i}`, checked by
/// pushing each homology generator of stage `s` forward and reducing it
/// against the boundaries of stage `r`.
fn kills(tower: &KoszulTower, r: u32, s: u32, i: i64) -> Result<bool> {
    let n = -i;
    let src = tower.stage(s)?;
    let tgt = tower.stage(r)?;
    let Some(zs) = src.homology_subquotient(n)? else {
        return Ok(true);
    };
    let Some(bt) = tgt.homology_subquotient(n)? else {
        return Ok(true);
    };
    let f = tower.transition(r, s)?.component(n);
    let gb = SubmoduleGb::new(tgt.ring(), bt.ambient_twists(), bt.denominators())?;
    for z in zs.generators() {
        if !gb.contains(&f.apply(z)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For each `r ≤ r_max`, the least `s ∈ (r, s_max]` for which
/// `H_i(tˢ, P) → H_i(tʳ, P)` vanishes, where `H_i(tʳ, P) = H^{-i} Hom(K(tʳ), P)`.
pub fn essential_nullity_check(
    t: &[Polynomial],
    p: &FpModule,
    i: i64,
    r_max: u32,
    s_max: u32,
) -> Result<EssentialNullityCertificate> {
    let ring = check_sequence(t)?;
    if i == 0 {
        return Err(Error::BadBounds("index must be nonzero".into()));
    }
    if r_max == 0 || s_max == 0 {
        return Err(Error::BadBounds("bounds must be positive".into()));
    }
    let tower = dual_koszul_tower(t, p, s_max.max(r_max))?;
    let witnesses = (1..=r_max)
        .into_par_iter()
        .map(|r| {
            for s in r + 1..=s_max {
                if tower.homology_map(r, s, -i)?.is_zero()? {
                    return Ok(NullityWitness { r, s: Some(s) });
                }
            }
            Ok(NullityWitness { r, s: None })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = if witnesses.iter().all(|w| w.s.is_some()) {
        Verdict::Certified
    } else {
        Verdict::Undecided
    };
    Ok(EssentialNullityCertificate {
        ring: text::ring_text(&ring),
        sequence: t.iter().map(|q| q.to_string()).collect(),
        module: text::module_text(p),
        index: i,
        r_max,
        s_max,
        witnesses,
        verdict,
    })
}

impl EssentialNullityCertificate {
    /// Rebuilds the tower from the recorded inputs and rechecks each witness
    /// and its minimality by direct reduction, without the search.
    pub fn verify(&self) -> Result<bool> {
        let ring = text::parse_ring(&self.ring)?;
        let t = self.sequence.iter().map(|s| ring.poly(s)).collect::<Result<Vec<_>>>()?;
        let p = text::parse_module(&ring, &self.module)?;
        check_sequence(&t)?;
        if self.index == 0 || self.witnesses.len() != self.r_max as usize {
            return Ok(false);
        }
        if self.witnesses.iter().zip(1..).any(|(w, r)| w.r != r) {
            return Ok(false);
        }
        let tower = dual_koszul_tower(&t, &p, self.s_max.max(self.r_max))?;
        let checks = self
            .witnesses
            .par_iter()
            .map(|w| -> Result<bool> {
                let last = match w.s {
                    Some(s) => {
                        if s <= w.r || s > self.s_max || !kills(&tower, w.r, s, self.index)? {
                            return Ok(false);
                        }
                        s - 1
                    }
                    None => self.s_max,
                };
                for s in w.r + 1..=last {
                    if kills(&tower, w.r, s, self.index)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect::<Result<Vec<_>>>()?;
        let decided = self.witnesses.iter().all(|w| w.s.is_some());
        let verdict_ok = (self.verdict == Verdict::Certified) == decided;
        Ok(verdict_ok && checks.into_iter().all(|b| b))
    }
}
