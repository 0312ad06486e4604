use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{ideal_quotient, Ideal, Power};
use crate::koszul::check_sequence;
use crate::polyring::{Polynomial, Ring};
use crate::text;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every search found a witness.
    Certified,
    /// Some search ran out of room below `s_max`.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProregWitness {
    /// Position in the sequence, starting at 1.
    pub i: usize,
    pub r: u32,
    /// Least `s ∈ (r, s_max]` with the containment, if any.
    pub s: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProregularityCertificate {
    pub ring: String,
    pub sequence: Vec<String>,
    pub r_max: u32,
    pub s_max: u32,
    pub witnesses: Vec<ProregWitness>,
    pub verdict: Verdict,
}

fn powers(t: &[Polynomial], e: u32) -> Result<Vec<Polynomial>> {
    t.iter().map(|p| p.pow(e)).collect()
}

/// `(t₁ᵃ, …, t_{i−1}ᵃ) : t_iᵇ`.
fn colon(ring: &Arc<Ring>, t: &[Polynomial], i: usize, a: u32, b: u32) -> Result<Ideal> {
    let base = Ideal::new(ring, powers(&t[..i - 1], a)?)?;
    Ok(ideal_quotient(&base, &t[i - 1].pow(b)?, Power::Finite(1))?.ideal)
}

/// Whether `((t₁ˢ..t_{i−1}ˢ) : t_iˢ) ⊆ ((t₁ʳ..t_{i−1}ʳ) : t_i^{s−r})`.
pub fn proregular_containment(t: &[Polynomial], i: usize, r: u32, s: u32) -> Result<bool> {
    let ring = check_sequence(t)?;
    if i == 0 || i > t.len() || r == 0 || s <= r {
        return Err(Error::BadBounds(format!("need 1 ≤ i ≤ {}, 1 ≤ r < s", t.len())));
    }
    let big = colon(&ring, t, i, s, s)?;
    let small = colon(&ring, t, i, r, s - r)?;
    small.contains_ideal(&big)
}

/// Searches `s ∈ (r, s_max]` for every `1 ≤ i ≤ μ` and `1 ≤ r ≤ r_max`.
pub fn proregularity_check(t: &[Polynomial], r_max: u32, s_max: u32) -> Result<ProregularityCertificate> {
    let ring = check_sequence(t)?;
    if r_max == 0 || s_max == 0 {
        return Err(Error::BadBounds("bounds must be positive".into()));
    }
    let pairs: Vec<(usize, u32)> = (1..=t.len()).flat_map(|i| (1..=r_max).map(move |r| (i, r))).collect();
    let witnesses = pairs
        .into_par_iter()
        .map(|(i, r)| {
            for s in r + 1..=s_max {
                if proregular_containment(t, i, r, s)? {
                    return Ok(ProregWitness { i, r, s: Some(s) });
                }
            }
            Ok(ProregWitness { i, r, s: None })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = if witnesses.iter().all(|w| w.s.is_some()) {
        Verdict::Certified
    } else {
        Verdict::Undecided
    };
    Ok(ProregularityCertificate {
        ring: text::ring_text(&ring),
        sequence: t.iter().map(|p| p.to_string()).collect(),
        r_max,
        s_max,
        witnesses,
        verdict,
    })
}

impl ProregularityCertificate {
    pub fn parse_inputs(&self) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
        let ring = text::parse_ring(&self.ring)?;
        let t = self.sequence.iter().map(|s| ring.poly(s)).collect::<Result<Vec<_>>>()?;
        Ok((ring, t))
    }

    /// Rechecks every witness, its minimality, the coverage of all `(i, r)`
    /// and the verdict, from the recorded data alone.
    pub fn verify(&self) -> Result<bool> {
        let (_, t) = self.parse_inputs()?;
        check_sequence(&t)?;
        if self.witnesses.len() != t.len() * self.r_max as usize {
            return Ok(false);
        }
        let expected = (1..=t.len()).flat_map(|i| (1..=self.r_max).map(move |r| (i, r)));
        for ((i, r), w) in expected.zip(&self.witnesses) {
            if (w.i, w.r) != (i, r) {
                return Ok(false);
            }
        }
        let checks = self
            .witnesses
            .par_iter()
            .map(|w| -> Result<bool> {
                let last = match w.s {
                    Some(s) => {
                        if s <= w.r || s > self.s_max || !proregular_containment(&t, w.i, w.r, s)? {
                            return Ok(false);
                        }
                        s - 1
                    }
                    None => self.s_max,
                };
                for s in w.r + 1..=last {
                    if proregular_containment(&t, w.i, w.r, s)? {
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
