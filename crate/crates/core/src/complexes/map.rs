use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Matrix;
use crate::linalg::DenseMatrix;
use crate::modcat::ModuleMap;
use crate::polyring::Polynomial;

use super::complex::FreeComplex;
use super::ops::{hom_layout, tensor_layout, HomIndex, TensorIndex};

/// A degree-0 chain map, one cover matrix per degree of the source.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: Arc<FreeComplex>,
    target: Arc<FreeComplex>,
    maps: Vec<Matrix>,
}

impl PartialEq for ComplexMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.maps == other.maps
    }
}

impl ComplexMap {
    /// `maps[k]` is the component in degree `source.lo() + k`. Checks that each
    /// component respects relations and that the square with `d` commutes.
    pub fn new(source: Arc<FreeComplex>, target: Arc<FreeComplex>, maps: Vec<Matrix>) -> Result<Self> {
        let f = Self::build(source, target, maps)?;
        f.verify()?;
        Ok(f)
    }

    pub(crate) fn build(source: Arc<FreeComplex>, target: Arc<FreeComplex>, maps: Vec<Matrix>) -> Result<Self> {
        if !source.ring().same(target.ring()) {
            return Err(Error::MixedRings);
        }
        if maps.len() != source.terms().len() {
            return Err(Error::InvalidMap("one matrix per source degree is required".into()));
        }
        let mut fixed = Vec::with_capacity(maps.len());
        for (n, m) in source.degrees().zip(maps) {
            if m.nrows() != target.rank(n) || m.ncols() != source.rank(n) {
                return Err(Error::InvalidMap(format!("component in degree {n} has the wrong shape")));
            }
            fixed.push(m.with_twists(target.twists(n), source.twists(n))?);
        }
        Ok(ComplexMap {
            source,
            target,
            maps: fixed,
        })
    }

    fn verify(&self) -> Result<()> {
        for n in self.source.degrees() {
            let f = self.component(n);
            if let Some(t) = self.target.term(n) {
                ModuleMap::new(self.source.term(n).unwrap().clone(), t.clone(), f.clone())
                    .map_err(|e| Error::InvalidMap(format!("degree {n}: {e}")))?;
            }
            let lhs = self.target.differential(n).mul(&f)?;
            let rhs = self.component(n + 1).mul(&self.source.differential(n))?;
            let diff = lhs.sub(&rhs)?;
            let zero_target = self.target.term(n + 1).is_none();
            for c in diff.columns() {
                if !zero_target && !self.target.term(n + 1).unwrap().element_is_zero(c)? {
                    return Err(Error::InvalidMap(format!("square in degree {n} does not commute")));
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: &Arc<FreeComplex>) -> Self {
        let maps = c
            .degrees()
            .map(|n| Matrix::identity(c.ring(), c.twists(n)))
            .collect();
        ComplexMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn zero(source: &Arc<FreeComplex>, target: &Arc<FreeComplex>) -> Self {
        let maps = source
            .degrees()
            .map(|n| Matrix::zero(source.ring(), target.twists(n), source.twists(n)))
            .collect();
        ComplexMap {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &Arc<FreeComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeComplex> {
        &self.target
    }

    pub fn components(&self) -> &[Matrix] {
        &self.maps
    }

    /// The component `C^n → D^n` (zero outside the source support).
    pub fn component(&self, n: i64) -> Matrix {
        if n >= self.source.lo() && n <= self.source.hi() {
            self.maps[(n - self.source.lo()) as usize].clone()
        } else {
            Matrix::zero(self.source.ring(), self.target.twists(n), self.source.twists(n))
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ComplexMap) -> Result<ComplexMap> {
        if *other.target != *self.source {
            return Err(Error::InvalidMap("composition of non-matching chain maps".into()));
        }
        let maps = other
            .source
            .degrees()
            .map(|n| self.component(n).mul(&other.component(n)))
            .collect::<Result<Vec<_>>>()?;
        Self::build(other.source.clone(), self.target.clone(), maps)
    }

    /// The component in degree `n` as a module map.
    pub fn module_map(&self, n: i64) -> ModuleMap {
        ModuleMap::new_unchecked(
            self.source.term_or_zero(n),
            self.target.term_or_zero(n),
            self.component(n),
        )
    }

    /// Whether every component is invertible.
    pub fn is_isomorphism(&self) -> Result<bool> {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        for n in lo..=hi {
            let m = self.component(n);
            if m.nrows() == 0 && m.ncols() == 0 {
                continue;
            }
            let free = self.source.term(n).is_none_or(|t| t.is_free())
                && self.target.term(n).is_none_or(|t| t.is_free());
            if free {
                if let Some(d) = constant_dense(&m) {
                    if !d.is_invertible() {
                        return Ok(false);
                    }
                    continue;
                }
            }
            if !self.module_map(n).verify_isomorphism()?.is_iso() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f ⊗ g : C ⊗ D → C' ⊗ D'`, `a ⊗ b ↦ f(a) ⊗ g(b)`.
    pub fn tensor(f: &ComplexMap, g: &ComplexMap, source: &Arc<FreeComplex>, target: &Arc<FreeComplex>) -> Result<ComplexMap> {
        let ring = source.ring();
        let (_, sl) = tensor_layout(&f.source, &g.source);
        let (tlo, tl) = tensor_layout(&f.target, &g.target);
        let tindex: Vec<HashMap<TensorIndex, usize>> = tl
            .iter()
            .map(|deg| deg.iter().enumerate().map(|(k, &i)| (i, k)).collect())
            .collect();
        let mut maps = Vec::new();
        for (t, deg) in sl.iter().enumerate() {
            let n = source.lo() + t as i64;
            let nrows = target.rank(n);
            let mut cols = Vec::with_capacity(deg.len());
            for &(p, a, q, b) in deg {
                let mut col = vec![Polynomial::zero(ring); nrows];
                let fp = f.component(p);
                let gq = g.component(q);
                for u in 0..f.target.rank(p) {
                    let e = fp.entry(u, a);
                    if e.is_zero() {
                        continue;
                    }
                    for v in 0..g.target.rank(q) {
                        let h = gq.entry(v, b);
                        if h.is_zero() {
                            continue;
                        }
                        let r = tindex[(n - tlo) as usize][&(p, u, q, v)];
                        col[r] = col[r].add(&e.mul(h)?);
                    }
                }
                cols.push(col);
            }
            maps.push(Matrix::new(ring, target.twists(n), source.twists(n), cols)?.reduced()?);
        }
        ComplexMap::new(source.clone(), target.clone(), maps)
    }

    /// `Hom(f, P) : Hom(D, P) → Hom(C, P)`, `φ ↦ φ ∘ f`. The complexes passed
    /// must be `hom_complex(f.target, P)` and `hom_complex(f.source, P)`.
    pub fn hom_into(&self, p: &FreeComplex, source: &Arc<FreeComplex>, target: &Arc<FreeComplex>) -> Result<ComplexMap> {
        let ring = source.ring();
        let (slo, sl) = hom_layout(&self.target, p);
        let (tlo, tl) = hom_layout(&self.source, p);
        let tindex: Vec<HashMap<HomIndex, usize>> = tl
            .iter()
            .map(|deg| deg.iter().enumerate().map(|(k, &i)| (i, k)).collect())
            .collect();
        let mut maps = Vec::new();
        for (t, deg) in sl.iter().enumerate() {
            let n = slo + t as i64;
            let nrows = target.rank(n);
            let mut cols = Vec::with_capacity(deg.len());
            for &(q, i, tt) in deg {
                let mut col = vec![Polynomial::zero(ring); nrows];
                let fq = self.component(q);
                for j in 0..self.source.rank(q) {
                    let e = fq.entry(i, j);
                    if !e.is_zero() {
                        let r = tindex[(n - tlo) as usize][&(q, j, tt)];
                        col[r] = col[r].add(e);
                    }
                }
                cols.push(col);
            }
            maps.push(Matrix::new(ring, target.twists(n), source.twists(n), cols)?);
        }
        ComplexMap::new(source.clone(), target.clone(), maps)
    }

    /// `Hom(E, f) : Hom(E, C) → Hom(E, D)`, `φ ↦ f ∘ φ`. The complexes passed
    /// must be `hom_complex(E, f.source)` and `hom_complex(E, f.target)`.
    pub fn hom_from(&self, e: &FreeComplex, source: &Arc<FreeComplex>, target: &Arc<FreeComplex>) -> Result<ComplexMap> {
        let ring = source.ring();
        let (slo, sl) = hom_layout(e, &self.source);
        let (tlo, tl) = hom_layout(e, &self.target);
        let tindex: Vec<HashMap<HomIndex, usize>> = tl
            .iter()
            .map(|deg| deg.iter().enumerate().map(|(k, &i)| (i, k)).collect())
            .collect();
        let mut maps = Vec::new();
        for (t, deg) in sl.iter().enumerate() {
            let n = slo + t as i64;
            let nrows = target.rank(n);
            let mut cols = Vec::with_capacity(deg.len());
            for &(p, i, tt) in deg {
                let mut col = vec![Polynomial::zero(ring); nrows];
                let f = self.component(p + n);
                for u in 0..self.target.rank(p + n) {
                    let c = f.entry(u, tt);
                    if !c.is_zero() {
                        let r = tindex[(n - tlo) as usize][&(p, i, u)];
                        col[r] = col[r].add(c);
                    }
                }
                cols.push(col);
            }
            maps.push(Matrix::new(ring, target.twists(n), source.twists(n), cols)?);
        }
        ComplexMap::new(source.clone(), target.clone(), maps)
    }

    /// The map on `H^n`, lifting images of homology generators.
    pub fn induced_homology_map(&self, n: i64) -> Result<ModuleMap> {
        let hs = self.source.homology(n)?;
        let ht = self.target.homology(n)?;
        let ring = self.source.ring();
        let Some(src) = self.source.homology_subquotient(n)? else {
            return Ok(ModuleMap::zero(&hs, &ht));
        };
        let tgt = self.target.homology_subquotient(n)?;
        let f = self.component(n);
        let mut cols = Vec::with_capacity(hs.rank());
        for z in src.generators() {
            let img = f.apply(z)?;
            let col = match tgt {
                None => Vec::new(),
                Some(t) => t.express(&img)?.ok_or_else(|| {
                    Error::LiftFailure(format!("image of a cycle is not a cycle in degree {n}"))
                })?,
            };
            cols.push(col);
        }
        let m = Matrix::new(ring, ht.twists().to_vec(), hs.twists().to_vec(), cols)?;
        ModuleMap::new(hs, ht, m)
    }

    /// Chain map given by a permutation of bases in each degree, with signs
    /// solved from the differentials. `perm[k][i]` is the target index of
    /// source basis element `i` in degree `source.lo() + k`.
    pub fn signed_permutation(source: &Arc<FreeComplex>, target: &Arc<FreeComplex>, perm: &[Vec<usize>]) -> Result<ComplexMap> {
        let ring = source.ring();
        let k = ring.field();
        let mut signs: Vec<Vec<i8>> = Vec::new();
        for (t, p) in perm.iter().enumerate() {
            let n = source.lo() + t as i64;
            let mut s = vec![0i8; p.len()];
            if t > 0 {
                let ds = source.differential(n - 1);
                let dt = target.differential(n - 1);
                let prev = &perm[t - 1];
                for (i, si) in s.iter_mut().enumerate() {
                    for (j, &sj) in signs[t - 1].iter().enumerate() {
                        let a = ds.entry(i, j);
                        if a.is_zero() {
                            continue;
                        }
                        let b = dt.entry(p[i], prev[j]);
                        let r = if *b == *a {
                            sj
                        } else if *b == a.neg() {
                            -sj
                        } else {
                            return Err(Error::InvalidMap("differentials differ beyond sign".into()));
                        };
                        if *si != 0 && *si != r {
                            return Err(Error::InvalidMap("inconsistent signs".into()));
                        }
                        *si = r;
                    }
                }
            }
            for v in s.iter_mut() {
                if *v == 0 {
                    *v = 1;
                }
            }
            signs.push(s);
        }
        let mut maps = Vec::new();
        for (t, p) in perm.iter().enumerate() {
            let n = source.lo() + t as i64;
            let mut m = Matrix::zero(ring, target.twists(n), source.twists(n));
            for (i, &j) in p.iter().enumerate() {
                let c = if signs[t][i] > 0 { k.one() } else { k.neg(&k.one()) };
                m.set_entry(j, i, Polynomial::constant(ring, c));
            }
            maps.push(m);
        }
        ComplexMap::new(source.clone(), target.clone(), maps)
    }
}

/// The matrix as a dense constant matrix, if all entries are constants.
pub fn constant_dense(m: &Matrix) -> Option<DenseMatrix> {
    let k = m.ring().field();
    let mut cols = Vec::with_capacity(m.ncols());
    for c in m.columns() {
        let mut col = Vec::with_capacity(c.len());
        for p in c {
            if p.is_zero() {
                col.push(k.zero());
            } else {
                col.push(p.constant_value()?);
            }
        }
        cols.push(col);
    }
    Some(DenseMatrix::from_columns(k, m.nrows(), cols))
}
