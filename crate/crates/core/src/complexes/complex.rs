use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::Matrix;
use crate::modcat::{homology_at, FpModule, ModuleMap, Subquotient};
use crate::polyring::Ring;

/// A bounded cohomological complex `C^lo → … → C^hi` of presented modules
/// (free in the common case) with differentials given on covers.
///
/// Every generator carries an ordering key; tensor products order their
/// basis by concatenated keys, which makes `⊗` strictly associative.
pub struct FreeComplex {
    ring: Arc<Ring>,
    lo: i64,
    terms: Vec<FpModule>,
    keys: Vec<Vec<Vec<u32>>>,
    diffs: Vec<Matrix>,
    homology: Vec<OnceLock<Subquotient>>,
}

impl fmt::Debug for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeComplex")
            .field("lo", &self.lo)
            .field("ranks", &self.ranks())
            .field("diffs", &self.diffs)
            .finish()
    }
}

impl Clone for FreeComplex {
    fn clone(&self) -> Self {
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            terms: self.terms.clone(),
            keys: self.keys.clone(),
            diffs: self.diffs.clone(),
            homology: self.terms.iter().map(|_| OnceLock::new()).collect(),
        }
    }
}

impl PartialEq for FreeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring)
            && self.lo == other.lo
            && self.terms == other.terms
            && self.diffs == other.diffs
    }
}

fn positional_keys(terms: &[FpModule]) -> Vec<Vec<Vec<u32>>> {
    let mut keys: Vec<Vec<Vec<u32>>> = terms.iter().map(|t| vec![Vec::new(); t.rank()]).collect();
    let mut pos = 0u32;
    for k in (0..terms.len()).rev() {
        for key in keys[k].iter_mut() {
            *key = vec![pos];
            pos += 1;
        }
    }
    keys
}

impl FreeComplex {
    /// `terms[k]` sits in degree `lo + k`; `diffs[k] : terms[k] → terms[k+1]`.
    /// Checks shapes, well-definedness and `d∘d = 0`.
    pub fn new(ring: &Arc<Ring>, lo: i64, terms: Vec<FpModule>, diffs: Vec<Matrix>) -> Result<Self> {
        let keys = positional_keys(&terms);
        Self::with_keys(ring, lo, terms, diffs, keys)
    }

    pub(crate) fn with_keys(
        ring: &Arc<Ring>,
        lo: i64,
        terms: Vec<FpModule>,
        diffs: Vec<Matrix>,
        keys: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        if terms.iter().any(|t| !t.ring().same(ring)) {
            return Err(Error::MixedRings);
        }
        let mut fixed = Vec::with_capacity(diffs.len());
        for (k, d) in diffs.into_iter().enumerate() {
            let (s, t) = (&terms[k], &terms[k + 1]);
            if d.nrows() != t.rank() || d.ncols() != s.rank() {
                return Err(Error::InvalidComplex(format!(
                    "differential in degree {} has shape {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.nrows(),
                    d.ncols(),
                    t.rank(),
                    s.rank()
                )));
            }
            let d = ModuleMap::new(s.clone(), t.clone(), d)
                .map_err(|e| Error::InvalidComplex(format!("degree {}: {e}", lo + k as i64)))?;
            fixed.push(d.matrix().clone());
        }
        for k in 0..fixed.len().saturating_sub(1) {
            let dd = fixed[k + 1].mul(&fixed[k])?;
            for c in dd.columns() {
                if !terms[k + 2].element_is_zero(c)? {
                    return Err(Error::InvalidComplex(format!(
                        "d∘d ≠ 0 starting in degree {}",
                        lo + k as i64
                    )));
                }
            }
        }
        let homology = terms.iter().map(|_| OnceLock::new()).collect();
        Ok(FreeComplex {
            ring: ring.clone(),
            lo,
            terms,
            keys,
            diffs: fixed,
            homology,
        })
    }

    /// A module placed in degree `n`.
    pub fn from_module(m: &FpModule, n: i64) -> Self {
        Self::new(m.ring(), n, vec![m.clone()], Vec::new()).expect("single term")
    }

    /// The free module `R` in degree 0.
    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::from_module(&FpModule::free(ring, vec![0]), 0)
    }

    /// The two-term complex `source → target` in degrees `n, n+1`.
    pub fn from_map(f: &ModuleMap, n: i64) -> Result<Self> {
        Self::new(
            f.source().ring(),
            n,
            vec![f.source().clone(), f.target().clone()],
            vec![f.matrix().clone()],
        )
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::new(ring, 0, Vec::new(), Vec::new()).expect("empty")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree (`lo - 1` when empty).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn idx(&self, n: i64) -> Option<usize> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some((n - self.lo) as usize)
        }
    }

    pub fn term(&self, n: i64) -> Option<&FpModule> {
        self.idx(n).map(|k| &self.terms[k])
    }

    /// The term in degree `n`, zero outside the support.
    pub fn term_or_zero(&self, n: i64) -> FpModule {
        self.term(n).cloned().unwrap_or_else(|| FpModule::zero(&self.ring))
    }

    pub fn rank(&self, n: i64) -> usize {
        self.term(n).map_or(0, |t| t.rank())
    }

    pub fn twists(&self, n: i64) -> Vec<i64> {
        self.term(n).map(|t| t.twists().to_vec()).unwrap_or_default()
    }

    pub fn terms(&self) -> &[FpModule] {
        &self.terms
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.rank()).collect()
    }

    pub(crate) fn keys(&self, n: i64) -> &[Vec<u32>] {
        match self.idx(n) {
            Some(k) => &self.keys[k],
            None => &[],
        }
    }

    pub fn is_free(&self) -> bool {
        self.terms.iter().all(|t| t.is_free())
    }

    pub fn is_graded(&self) -> bool {
        self.terms.iter().all(|t| t.is_graded()) && self.diffs.iter().all(|d| d.is_homogeneous())
    }

    /// `d^n : C^n → C^{n+1}` (a zero matrix at the edges).
    pub fn differential(&self, n: i64) -> Matrix {
        match self.idx(n) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => Matrix::zero(&self.ring, self.twists(n + 1), self.twists(n)),
        }
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    /// Re-checks `d∘d = 0`.
    pub fn d_squared_is_zero(&self) -> Result<bool> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let dd = self.diffs[k + 1].mul(&self.diffs[k])?;
            for c in dd.columns() {
                if !self.terms[k + 2].element_is_zero(c)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub(crate) fn differential_map(&self, n: i64) -> Option<ModuleMap> {
        let k = self.idx(n)?;
        if k >= self.diffs.len() {
            return None;
        }
        Some(ModuleMap::new_unchecked(
            self.terms[k].clone(),
            self.terms[k + 1].clone(),
            self.diffs[k].clone(),
        ))
    }

    /// `H^n` as a subquotient of the cover of `C^n` (memoized).
    pub fn homology_subquotient(&self, n: i64) -> Result<Option<&Subquotient>> {
        let Some(k) = self.idx(n) else { return Ok(None) };
        if let Some(h) = self.homology[k].get() {
            return Ok(Some(h));
        }
        let prev = self.differential_map(n - 1);
        let next = self.differential_map(n);
        let h = homology_at(&self.terms[k], prev.as_ref(), next.as_ref())?;
        let _ = self.homology[k].set(h);
        Ok(self.homology[k].get())
    }

    /// `H^n(C)`; the zero module outside the support.
    pub fn homology(&self, n: i64) -> Result<FpModule> {
        Ok(match self.homology_subquotient(n)? {
            Some(h) => h.module().clone(),
            None => FpModule::zero(&self.ring),
        })
    }

    /// `C[k]`: `C[k]^n = C^{n+k}`, differentials multiplied by `(-1)^k`.
    pub fn shift(&self, k: i64) -> FreeComplex {
        let diffs = if k % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.neg()).collect()
        };
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo - k,
            terms: self.terms.clone(),
            keys: self.keys.clone(),
            diffs,
            homology: self.terms.iter().map(|_| OnceLock::new()).collect(),
        }
    }

    /// `C(k)`: every term twisted by `k`.
    pub fn twist(&self, k: i64) -> FreeComplex {
        let terms: Vec<FpModule> = self.terms.iter().map(|t| t.twist(k)).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                d.with_twists(terms[i + 1].twists().to_vec(), terms[i].twists().to_vec())
                    .expect("shape")
            })
            .collect();
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            homology: terms.iter().map(|_| OnceLock::new()).collect(),
            terms,
            keys: self.keys.clone(),
            diffs,
        }
    }
}

impl fmt::Display for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.degrees() {
            let t = self.term(n).unwrap();
            let tw: Vec<String> = t.twists().iter().map(|a| format!("R({})", -a)).collect();
            writeln!(f, "C^{n}: {}", if tw.is_empty() { "0".into() } else { tw.join(" + ") })?;
            if n < self.hi() {
                writeln!(f, "  d^{n} = {}", self.differential(n))?;
            }
        }
        Ok(())
    }
}
