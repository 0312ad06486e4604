use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::engine::{Engine, Vector};
use crate::groebner::module::{from_vector, to_vector, LiftGb};
use crate::polyring::{Polynomial, Ring};

/// Reduced Gröbner basis of `(gens)` in the polynomial ring `ring`, ignoring
/// any quotient the ring carries. Sorted by leading monomial ascending.
pub fn ideal_gb(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if gens.iter().any(|g| !g.ring().same(ring)) {
        return Err(Error::MixedRings);
    }
    let twists = [0i64];
    let eng = Engine::new(ring, &twists);
    let vs: Vec<Vector> = gens.iter().map(|g| to_vector(&eng, std::slice::from_ref(g), 0)).collect();
    let gb = eng.groebner(vs, true)?;
    Ok(gb.iter().map(|v| from_vector(ring, v, 0, 1).pop().unwrap()).collect())
}

/// An ideal of `R` (or of `R/J` when the ring carries a quotient).
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

/// Result of a colon computation.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ideal: Ideal,
    /// The exponent used; for saturation, the least `k` with `(I : fᵏ) = (I : f^∞)`.
    pub exponent: u32,
}

/// Exponent argument of [`Ideal::quotient`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Power {
    Finite(u32),
    Infinity,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !g.ring().same(ring)) {
            return Err(Error::MixedRings);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    /// Parse comma-separated generators.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        let mut offset = 0;
        if !text.trim().is_empty() {
            for part in text.split(',') {
                let p = ring.poly(part).map_err(|e| match e {
                    Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
                    Error::UnknownVariable { name, pos } => Error::UnknownVariable { name, pos: pos + offset },
                    e => e,
                })?;
                gens.push(p);
                offset += part.len() + 1;
            }
        }
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis. Over `R/J` it is the basis of the preimage in `R`
    /// (so it contains a basis of `J`), expressed over the quotient ring.
    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let base = self.ring.base();
        let mut all = self.ring.quotient_polys(&base);
        all.extend(self.gens.iter().map(|g| g.with_ring(&base)));
        let gb: Vec<Polynomial> = ideal_gb(&base, &all)?
            .into_iter()
            .map(|g| g.with_ring(&self.ring))
            .collect();
        let _ = self.gb.set(gb);
        Ok(self.gb.get().unwrap())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same(&self.ring) {
            return Err(Error::MixedRings);
        }
        let gb = self.groebner_basis()?;
        let twists = [0i64];
        let eng = Engine::new(&self.ring, &twists);
        let basis: Vec<Vector> = gb.iter().map(|g| to_vector(&eng, std::slice::from_ref(g), 0)).collect();
        let v = to_vector(&eng, std::slice::from_ref(f), 0);
        let r = eng.reduce(v, &basis, true, false, None)?;
        Ok(from_vector(&self.ring, &r, 0, 1).pop().unwrap())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (same reduced Gröbner basis).
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        if !self.ring.same(&other.ring) {
            return Err(Error::MixedRings);
        }
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_constant()))
    }

    pub fn is_zero(&self) -> Result<bool> {
        let j = Ideal::zero(&self.ring);
        for g in &self.gens {
            if !j.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring.same(&other.ring) {
            return Err(Error::MixedRings);
        }
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring.same(&other.ring) {
            return Err(Error::MixedRings);
        }
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b)?);
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn power(&self, n: u32) -> Result<Ideal> {
        let mut acc = Ideal::new(&self.ring, vec![Polynomial::one(&self.ring)])?;
        for _ in 0..n {
            acc = acc.product(self)?;
            let gb = acc.groebner_basis()?.to_vec();
            acc = Ideal::new(&self.ring, gb)?;
        }
        Ok(acc)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring.same(&other.ring) {
            return Err(Error::MixedRings);
        }
        // syzygies (a, b) of [I | J]: Σ aᵢ gᵢ ∈ I ∩ J
        let mut cols: Vec<Vec<Polynomial>> = self.gens.iter().map(|g| vec![g.clone()]).collect();
        cols.extend(other.gens.iter().map(|g| vec![g.clone()]));
        let tw: Vec<i64> = cols.iter().map(|c| c[0].max_degree().unwrap_or(0)).collect();
        let syz = LiftGb::new(&self.ring, &[0], &tw, &cols)?.syzygies()?;
        let mut gens = Vec::new();
        for s in syz {
            let mut acc = Polynomial::zero(&self.ring);
            for (a, g) in s.iter().zip(&self.gens) {
                acc = acc.try_add(&a.mul(g)?)?;
            }
            gens.push(crate::groebner::reduce_mod_ring(&acc)?);
        }
        Ideal::new(&self.ring, gens)
    }

    /// `(I : fᵏ)`, or the saturation `(I : f^∞)` with its stabilization exponent.
    pub fn quotient(&self, f: &Polynomial, k: Power) -> Result<Quotient> {
        if !f.ring().same(&self.ring) {
            return Err(Error::MixedRings);
        }
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        match k {
            Power::Finite(k) => Ok(Quotient {
                ideal: self.colon(&f.pow(k)?)?,
                exponent: k,
            }),
            Power::Infinity => self.saturation(f),
        }
    }

    /// `(I : g)` via the syzygies of `[g | gens]`.
    pub fn colon(&self, g: &Polynomial) -> Result<Ideal> {
        let mut cols: Vec<Vec<Polynomial>> = vec![vec![g.clone()]];
        cols.extend(self.gens.iter().map(|p| vec![p.clone()]));
        let tw: Vec<i64> = cols.iter().map(|c| c[0].max_degree().unwrap_or(0)).collect();
        let syz = LiftGb::new(&self.ring, &[0], &tw, &cols)?.syzygies()?;
        let gens: Vec<Polynomial> = syz.into_iter().map(|mut s| s.swap_remove(0)).collect();
        let q = Ideal::new(&self.ring, gens)?;
        // canonical generators: the reduced basis itself
        let gb = q.groebner_basis()?.to_vec();
        let out = Ideal::new(&self.ring, gb)?;
        let _ = out.gb.set(q.gb.get().unwrap().clone());
        Ok(out)
    }

    fn saturation(&self, f: &Polynomial) -> Result<Quotient> {
        let mut cache: Vec<(u32, Ideal)> = Vec::new();
        let at = |k: u32, cache: &mut Vec<(u32, Ideal)>| -> Result<Ideal> {
            if let Some((_, q)) = cache.iter().find(|(e, _)| *e == k) {
                return Ok(q.clone());
            }
            let q = self.colon(&f.pow(k)?)?;
            cache.push((k, q.clone()));
            Ok(q)
        };
        let mut k = 1u32;
        loop {
            let a = at(k, &mut cache)?;
            let b = at(2 * k, &mut cache)?;
            if a.same_ideal(&b)? {
                break;
            }
            k = k.checked_mul(2).ok_or(Error::DegreeOverflow)?;
        }
        // least exponent reaching the stable ideal; the chain is increasing
        let stable = at(k, &mut cache)?;
        let (mut lo, mut hi) = (0u32, k);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if at(mid, &mut cache)?.same_ideal(&stable)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(Quotient {
            ideal: stable,
            exponent: hi,
        })
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.same_ideal(other).unwrap_or(false)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `NF(f)` with respect to `ideal`.
pub fn normal_form(f: &Polynomial, ideal: &Ideal) -> Result<Polynomial> {
    ideal.normal_form(f)
}

/// `(I : fᵏ)` or `(I : f^∞)`.
pub fn ideal_quotient(ideal: &Ideal, f: &Polynomial, k: Power) -> Result<Quotient> {
    ideal.quotient(f, k)
}
