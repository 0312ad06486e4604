//! Submodule Gröbner bases, membership, lifting and syzygies over `R/J`.
//!
//! Modules over a quotient ring are handled over the ambient polynomial ring
//! by adding `J·eᵢ` for every component.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::engine::{Engine, VTerm, Vector};
use crate::groebner::matrix::{column_degree, Matrix};
use crate::polyring::{Monomial, Polynomial, Ring};

pub(crate) fn to_vector(eng: &Engine<'_>, col: &[Polynomial], offset: usize) -> Vector {
    let mut v: Vector = Vec::new();
    for (i, p) in col.iter().enumerate() {
        for (m, c) in p.terms() {
            v.push(eng.term(i + offset, *m, c.clone()));
        }
    }
    eng.sort(&mut v);
    v
}

pub(crate) fn from_vector(ring: &Arc<Ring>, v: &[VTerm], lo: usize, len: usize) -> Vec<Polynomial> {
    let mut parts: Vec<Vec<(Monomial, crate::field::FieldElem)>> = vec![Vec::new(); len];
    for t in v {
        let c = t.comp as usize;
        if c >= lo && c < lo + len {
            parts[c - lo].push((t.mono, t.coeff.clone()));
        }
    }
    parts
        .into_iter()
        .map(|t| Polynomial::from_terms(ring, t))
        .collect()
}

fn quotient_relations(eng: &Engine<'_>, ring: &Arc<Ring>, rank: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    if !ring.has_quotient() {
        return out;
    }
    let js = ring.quotient_polys(ring);
    for i in 0..rank {
        for j in &js {
            let mut col = vec![Polynomial::zero(ring); rank];
            col[i] = j.clone();
            out.push(to_vector(eng, &col, 0));
        }
    }
    out
}

fn check_ring(ring: &Arc<Ring>, cols: &[Vec<Polynomial>]) -> Result<()> {
    if cols.iter().flatten().any(|p| !p.ring().same(ring)) {
        return Err(Error::MixedRings);
    }
    Ok(())
}

/// Reduced Gröbner basis of a submodule of `⊕ (R/J)(-twistᵢ)`.
#[derive(Clone, Debug)]
pub struct SubmoduleGb {
    ring: Arc<Ring>,
    twists: Vec<i64>,
    basis: Vec<Vector>,
}

impl SubmoduleGb {
    pub fn new(ring: &Arc<Ring>, twists: &[i64], cols: &[Vec<Polynomial>]) -> Result<Self> {
        check_ring(ring, cols)?;
        let eng = Engine::new(ring, twists);
        let mut gens: Vec<Vector> = cols.iter().map(|c| to_vector(&eng, c, 0)).collect();
        gens.extend(quotient_relations(&eng, ring, twists.len()));
        let pc = twists.len() == 1;
        let basis = eng.groebner(gens, pc)?;
        Ok(SubmoduleGb {
            ring: ring.clone(),
            twists: twists.to_vec(),
            basis,
        })
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        Self::new(m.ring(), m.row_twists(), m.columns())
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn reduce(&self, col: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if col.len() != self.rank() {
            return Err(Error::Shape("vector rank differs from ambient rank".into()));
        }
        check_ring(&self.ring, std::slice::from_ref(&col.to_vec()))?;
        let eng = Engine::new(&self.ring, &self.twists);
        let v = to_vector(&eng, col, 0);
        let r = eng.reduce(v, &self.basis, true, false, None)?;
        Ok(from_vector(&self.ring, &r, 0, self.rank()))
    }

    pub fn contains(&self, col: &[Polynomial]) -> Result<bool> {
        Ok(self.reduce(col)?.iter().all(|p| p.is_zero()))
    }

    /// Leading `(component, monomial)` pairs of the basis.
    pub fn leading(&self) -> Vec<(usize, Monomial)> {
        self.basis.iter().map(|v| (v[0].comp as usize, v[0].mono)).collect()
    }

    /// Whether the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.rank()).all(|i| {
            self.basis
                .iter()
                .any(|v| v[0].comp as usize == i && v[0].mono.is_one())
        })
    }

    /// The basis as columns.
    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        self.basis
            .iter()
            .map(|v| from_vector(&self.ring, v, 0, self.rank()))
            .collect()
    }

    /// Whether a monomial `m·eᵢ` is a standard (non-leading) monomial.
    pub fn is_standard(&self, comp: usize, m: &Monomial) -> bool {
        !self
            .basis
            .iter()
            .any(|v| v[0].comp as usize == comp && v[0].mono.divides(m))
    }
}

/// Gröbner basis of `(columns | identity)` in a block order: decides
/// membership with explicit coefficients, and yields the syzygy module.
#[derive(Clone, Debug)]
pub struct LiftGb {
    ring: Arc<Ring>,
    twists: Vec<i64>,
    rank: usize,
    ngens: usize,
    basis: Vec<Vector>,
}

impl LiftGb {
    pub fn new(ring: &Arc<Ring>, row_twists: &[i64], col_twists: &[i64], cols: &[Vec<Polynomial>]) -> Result<Self> {
        check_ring(ring, cols)?;
        if cols.len() != col_twists.len() || cols.iter().any(|c| c.len() != row_twists.len()) {
            return Err(Error::Shape("generator shape mismatch".into()));
        }
        let rank = row_twists.len();
        let ngens = cols.len();
        let mut twists = row_twists.to_vec();
        twists.extend_from_slice(col_twists);
        let eng = Engine::with_split(ring, &twists, rank);
        let mut gens: Vec<Vector> = Vec::with_capacity(ngens);
        for (j, c) in cols.iter().enumerate() {
            let mut v = to_vector(&eng, c, 0);
            v.push(eng.term(rank + j, Monomial::one(), ring.field().one()));
            eng.sort(&mut v);
            gens.push(v);
        }
        gens.extend(quotient_relations(&eng, ring, rank));
        let basis = eng.groebner(gens, false)?;
        Ok(LiftGb {
            ring: ring.clone(),
            twists,
            rank,
            ngens,
            basis,
        })
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        Self::new(m.ring(), m.row_twists(), m.col_twists(), m.columns())
    }

    /// Coefficients `a` with `Σ aⱼ colⱼ ≡ v` modulo `J`, if `v` lies in the span.
    pub fn lift(&self, v: &[Polynomial]) -> Result<Option<Vec<Polynomial>>> {
        if v.len() != self.rank {
            return Err(Error::Shape("vector rank differs from ambient rank".into()));
        }
        let eng = Engine::with_split(&self.ring, &self.twists, self.rank);
        let x = to_vector(&eng, v, 0);
        let r = eng.reduce(x, &self.basis, false, true, None)?;
        if r.first().is_some_and(|t| (t.comp as usize) < self.rank) {
            return Ok(None);
        }
        let mut coeffs = from_vector(&self.ring, &r, self.rank, self.ngens);
        for c in coeffs.iter_mut() {
            *c = c.neg();
        }
        reduce_column_mod_ring(&self.ring, &mut coeffs)?;
        Ok(Some(coeffs))
    }

    /// Generators of the syzygy module (nonzero modulo `J`).
    pub fn syzygies(&self) -> Result<Vec<Vec<Polynomial>>> {
        let mut out = Vec::new();
        for v in &self.basis {
            if (v[0].comp as usize) < self.rank {
                continue;
            }
            let mut col = from_vector(&self.ring, v, self.rank, self.ngens);
            reduce_column_mod_ring(&self.ring, &mut col)?;
            if col.iter().any(|p| !p.is_zero()) {
                out.push(col);
            }
        }
        Ok(out)
    }
}

/// Reduce polynomials in place modulo the ring's quotient ideal.
pub fn reduce_column_mod_ring(ring: &Arc<Ring>, col: &mut [Polynomial]) -> Result<()> {
    if !ring.has_quotient() {
        return Ok(());
    }
    let twists = [0i64];
    let eng = Engine::new(ring, &twists);
    let basis: Vec<Vector> = ring
        .quotient_polys(ring)
        .iter()
        .map(|p| to_vector(&eng, std::slice::from_ref(p), 0))
        .collect();
    for p in col.iter_mut() {
        if p.is_zero() {
            continue;
        }
        let v = to_vector(&eng, std::slice::from_ref(p), 0);
        let r = eng.reduce(v, &basis, true, false, None)?;
        *p = from_vector(ring, &r, 0, 1).pop().unwrap();
    }
    Ok(())
}

/// Normal form of a single polynomial modulo the ring's quotient ideal.
pub fn reduce_mod_ring(p: &Polynomial) -> Result<Polynomial> {
    let mut v = [p.clone()];
    reduce_column_mod_ring(p.ring(), &mut v)?;
    let [q] = v;
    Ok(q)
}

/// Generators of the kernel of `m` over `R/J`, as a matrix whose rows are
/// indexed by the columns of `m`. Verified: `m · K = 0`.
pub fn syzygy_kernel(m: &Matrix) -> Result<Matrix> {
    let cols = LiftGb::from_matrix(m)?.syzygies()?;
    let cols = minimal_generators(m.ring(), m.col_twists(), cols)?;
    let k = Matrix::from_columns(m.ring(), m.col_twists().to_vec(), cols)?;
    if !m.mul(&k)?.is_zero() {
        return Err(Error::LiftFailure("kernel generators do not compose to zero".into()));
    }
    Ok(k)
}

/// Drop generators lying in the span of the others, scanning by ascending
/// degree. In the graded case the survivors are a minimal generating set.
pub fn minimal_generators(ring: &Arc<Ring>, twists: &[i64], cols: Vec<Vec<Polynomial>>) -> Result<Vec<Vec<Polynomial>>> {
    let mut cols: Vec<Vec<Polynomial>> = cols
        .into_iter()
        .filter(|c| c.iter().any(|p| !p.is_zero()))
        .collect();
    cols.sort_by_key(|c| column_degree(c, twists).unwrap_or(i64::MIN));
    let mut kept: Vec<Vec<Polynomial>> = Vec::new();
    // remaining = kept ∪ not-yet-scanned; a generator is dropped when the others
    // (already kept plus later ones of equal degree) span it
    for idx in 0..cols.len() {
        let d = column_degree(&cols[idx], twists);
        let mut others = kept.clone();
        others.extend(
            cols[idx + 1..]
                .iter()
                .filter(|c| column_degree(c, twists) == d)
                .cloned(),
        );
        // degree-lower-or-equal span suffices in the graded case
        let gb = SubmoduleGb::new(ring, twists, &others)?;
        if !gb.contains(&cols[idx])? {
            kept.push(cols[idx].clone());
        }
    }
    Ok(kept)
}
