use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Hard cap on the number of ring variables.
pub const MAX_VARS: usize = 16;

/// An exponent vector. Unused trailing slots stay zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) [u16; MAX_VARS]);

impl Default for Monomial {
    fn default() -> Self {
        Monomial([0; MAX_VARS])
    }
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::default();
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("more than {MAX_VARS} variables")));
        }
        let mut m = Self::default();
        for (slot, &e) in m.0.iter_mut().zip(exps) {
            *slot = u16::try_from(e).map_err(|_| Error::DegreeOverflow)?;
        }
        Ok(m)
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.0[..nvars]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i].checked_add(other.0[i]).ok_or(Error::DegreeOverflow)?;
        }
        Ok(Monomial(out))
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            let e = self.0[i] as u64 * k as u64;
            out[i] = u16::try_from(e).map_err(|_| Error::DegreeOverflow)?;
        }
        Ok(Monomial(out))
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Self) -> Self {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = other.0[i] - self.0[i];
        }
        Monomial(out)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i].max(other.0[i]);
        }
        Monomial(out)
    }

    pub fn gcd_is_one(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    #[inline]
    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        weights
            .iter()
            .zip(self.0.iter())
            .map(|(&w, &e)| w as i64 * e as i64)
            .sum()
    }
}

/// Monomial orders supported by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GRevLex,
}

impl MonomialOrder {
    /// Compare two monomials of an `nvars`-variable ring with the given weights.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        let n = weights.len();
        match self {
            MonomialOrder::Lex => a.0[..n].cmp(&b.0[..n]),
            MonomialOrder::GRevLex => {
                let da = a.weighted_degree(weights);
                let db = b.weighted_degree(weights);
                da.cmp(&db).then_with(|| {
                    for i in (0..n).rev() {
                        if a.0[i] != b.0[i] {
                            // smaller exponent in the last differing variable wins
                            return b.0[i].cmp(&a.0[i]);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

/// All monomials of weighted degree `d` in `nvars` variables, in no particular order.
pub fn monomials_of_degree(weights: &[u32], d: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut cur = Monomial::default();
    fn rec(i: usize, left: i64, weights: &[u32], cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == weights.len() {
            let w = weights[i] as i64;
            if left % w == 0 && left / w <= u16::MAX as i64 {
                cur.0[i] = (left / w) as u16;
                out.push(*cur);
                cur.0[i] = 0;
            }
            return;
        }
        let w = weights[i] as i64;
        let mut e = 0i64;
        while e * w <= left && e <= u16::MAX as i64 {
            cur.0[i] = e as u16;
            rec(i + 1, left - e * w, weights, cur, out);
            e += 1;
        }
        cur.0[i] = 0;
    }
    if weights.is_empty() {
        if d == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(0, d, weights, &mut cur, &mut out);
    out
}
