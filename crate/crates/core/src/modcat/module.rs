use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::groebner::{minimal_generators, Ideal, Matrix, SubmoduleGb};
use crate::polyring::{monomials_of_degree, Monomial, Polynomial, Ring};

/// Whether the ring's grading is respected by its quotient ideal.
pub fn ring_is_graded(ring: &Arc<Ring>) -> bool {
    ring.quotient_polys(ring).iter().all(|p| p.is_homogeneous())
}

/// A finitely presented module `coker(relations : G → F)` with `F = ⊕ R(-twistᵢ)`.
#[derive(Debug)]
pub struct FpModule {
    relations: Matrix,
    gb: OnceLock<SubmoduleGb>,
}

impl Clone for FpModule {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        FpModule {
            relations: self.relations.clone(),
            gb,
        }
    }
}

impl PartialEq for FpModule {
    /// Equal presentations (not isomorphism).
    fn eq(&self, other: &Self) -> bool {
        self.relations == other.relations
    }
}

/// A pruned presentation together with how old generators map to new ones.
#[derive(Clone, Debug)]
pub struct Pruned {
    pub module: FpModule,
    /// Indices of the surviving generators of the original cover.
    pub kept: Vec<usize>,
    /// Old cover → new cover, expressing each old generator.
    pub projection: Matrix,
}

impl FpModule {
    /// Cokernel of `relations`; its row twists are the generator degrees.
    pub fn new(relations: Matrix) -> Result<Self> {
        let relations = relations.reduced()?;
        Ok(FpModule {
            relations,
            gb: OnceLock::new(),
        })
    }

    pub fn free(ring: &Arc<Ring>, twists: Vec<i64>) -> Self {
        FpModule {
            relations: Matrix::zero(ring, twists, Vec::new()),
            gb: OnceLock::new(),
        }
    }

    /// `R/I` generated in degree 0.
    pub fn cyclic(ideal: &Ideal) -> Result<Self> {
        let ring = ideal.ring();
        let cols = ideal.generators().iter().map(|g| vec![g.clone()]).collect();
        Self::new(Matrix::from_columns(ring, vec![0], cols)?)
    }

    pub fn from_columns(ring: &Arc<Ring>, twists: Vec<i64>, cols: Vec<Vec<Polynomial>>) -> Result<Self> {
        Self::new(Matrix::from_columns(ring, twists, cols)?)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.relations.ring()
    }

    pub fn rank(&self) -> usize {
        self.relations.nrows()
    }

    pub fn twists(&self) -> &[i64] {
        self.relations.row_twists()
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// Columns of the relation matrix together with `J·eᵢ` are implicit.
    pub fn relation_gb(&self) -> Result<&SubmoduleGb> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = SubmoduleGb::from_matrix(&self.relations)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn is_graded(&self) -> bool {
        ring_is_graded(self.ring()) && self.relations.is_homogeneous()
    }

    pub fn require_graded(&self) -> Result<()> {
        if self.is_graded() {
            Ok(())
        } else {
            Err(Error::NotGraded("module presentation is not homogeneous".into()))
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.rank() == 0 || self.relation_gb()?.is_everything())
    }

    /// Normal form of a cover element.
    pub fn reduce(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        self.relation_gb()?.reduce(v)
    }

    pub fn element_is_zero(&self, v: &[Polynomial]) -> Result<bool> {
        self.relation_gb()?.contains(v)
    }

    /// `M(k)`: generators move from degree `a` to `a - k`.
    pub fn twist(&self, k: i64) -> FpModule {
        let rt: Vec<i64> = self.twists().iter().map(|t| t - k).collect();
        let ct: Vec<i64> = self.relations.col_twists().iter().map(|t| t - k).collect();
        FpModule {
            relations: self.relations.with_twists(rt, ct).expect("same shape"),
            gb: OnceLock::new(),
        }
    }

    pub fn direct_sum(parts: &[&FpModule]) -> Result<FpModule> {
        let mats: Vec<&Matrix> = parts.iter().map(|p| &p.relations).collect();
        FpModule::new(Matrix::direct_sum(&mats)?)
    }

    /// `M / IM` for `I = (gens)`.
    pub fn mod_ideal(&self, gens: &[Polynomial]) -> Result<FpModule> {
        let ring = self.ring();
        let mut cols = self.relations.columns().to_vec();
        for g in gens {
            if !g.ring().same(ring) {
                return Err(Error::MixedRings);
            }
            if g.is_zero() {
                continue;
            }
            for i in 0..self.rank() {
                let mut c = vec![Polynomial::zero(ring); self.rank()];
                c[i] = g.clone();
                cols.push(c);
            }
        }
        FpModule::from_columns(ring, self.twists().to_vec(), cols)
    }

    /// The zero module over `ring`.
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::free(ring, Vec::new())
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Polynomial> {
        let ring = self.ring();
        let mut v = vec![Polynomial::zero(ring); self.rank()];
        v[i] = Polynomial::one(ring);
        v
    }

    /// Eliminate generators killed by unit relations, drop redundant relations.
    pub fn prune(&self) -> Result<Pruned> {
        let ring = self.ring().clone();
        let k = ring.field().clone();
        let n = self.rank();
        let mut alive: Vec<usize> = (0..n).collect();
        let mut rels: Vec<Vec<Polynomial>> = self.relations.columns().to_vec();
        let mut proj: Vec<Vec<Polynomial>> = (0..n).map(|i| self.unit_vector(i)).collect();
        loop {
            let mut pivot = None;
            'search: for (c, col) in rels.iter().enumerate() {
                for (i, p) in col.iter().enumerate() {
                    if p.is_constant() && !p.is_zero() {
                        pivot = Some((c, i));
                        break 'search;
                    }
                }
            }
            let Some((c, i)) = pivot else { break };
            let pcol = rels.swap_remove(c);
            let u = pcol[i].constant_value().unwrap();
            let uinv = k.inv(&u)?;
            let elim = |col: &mut Vec<Polynomial>| -> Result<()> {
                let a = col[i].clone();
                if !a.is_zero() {
                    let f = a.scale(&uinv);
                    for (x, y) in col.iter_mut().zip(&pcol) {
                        if !y.is_zero() {
                            *x = x.try_sub(&f.mul(y)?)?;
                        }
                    }
                }
                col.remove(i);
                crate::groebner::reduce_column_mod_ring(&ring, col)
            };
            for col in rels.iter_mut() {
                elim(col)?;
            }
            for col in proj.iter_mut() {
                elim(col)?;
            }
            alive.remove(i);
            rels.retain(|c| c.iter().any(|p| !p.is_zero()));
        }
        let twists: Vec<i64> = alive.iter().map(|&i| self.twists()[i]).collect();
        let graded = ring_is_graded(&ring)
            && Matrix::from_columns(&ring, twists.clone(), rels.clone())?.is_homogeneous();
        if graded && rels.len() > 1 {
            rels = minimal_generators(&ring, &twists, rels)?;
        }
        let module = FpModule::new(Matrix::from_columns(&ring, twists.clone(), rels)?)?;
        let projection = Matrix::new(&ring, twists, self.twists().to_vec(), proj)?;
        Ok(Pruned {
            module,
            kept: alive,
            projection,
        })
    }

    /// Standard monomials `(generator, monomial)` spanning the degree-`d` piece.
    pub fn degree_basis(&self, d: i64) -> Result<Vec<(usize, Monomial)>> {
        self.require_graded()?;
        let gb = self.relation_gb()?;
        let w = self.ring().weights();
        let mut out = Vec::new();
        for (i, &t) in self.twists().iter().enumerate() {
            let mut ms = monomials_of_degree(w, d - t);
            ms.sort_by(|a, b| self.ring().cmp_mono(b, a));
            out.extend(ms.into_iter().filter(|m| gb.is_standard(i, m)).map(|m| (i, m)));
        }
        Ok(out)
    }

    pub fn hilbert_value(&self, d: i64) -> Result<usize> {
        Ok(self.degree_basis(d)?.len())
    }

    /// `dim_k M` when finite: every variable must have a pure power among the
    /// leading terms of each component.
    pub fn total_dimension(&self) -> Result<Option<usize>> {
        self.require_graded()?;
        let gb = self.relation_gb()?;
        let ring = self.ring();
        let n = ring.nvars();
        let lead = gb.leading();
        let mut hi = i64::MIN;
        for (i, &t) in self.twists().iter().enumerate() {
            if lead.iter().any(|(c, m)| *c == i && m.is_one()) {
                continue;
            }
            let mut top = t;
            for v in 0..n {
                let pure = lead
                    .iter()
                    .filter(|(c, m)| *c == i && (0..n).all(|u| u == v || m.exp(u) == 0))
                    .map(|(_, m)| m.exp(v) as i64)
                    .min();
                match pure {
                    Some(e) => top += (e - 1) * ring.weights()[v] as i64,
                    None => return Ok(None),
                }
            }
            hi = hi.max(top);
        }
        if hi == i64::MIN {
            return Ok(Some(0));
        }
        let lo = self.twists().iter().copied().min().unwrap_or(0);
        Ok(Some(self.hilbert_function(lo, hi)?.values().sum()))
    }

    /// `d ↦ dim M_d` on `lo..=hi`.
    pub fn hilbert_function(&self, lo: i64, hi: i64) -> Result<BTreeMap<i64, usize>> {
        self.require_graded()?;
        (lo..=hi).map(|d| Ok((d, self.hilbert_value(d)?))).collect()
    }

    /// Coordinates of the class of `v` in a degree basis (`v` homogeneous).
    pub fn coordinates(&self, v: &[Polynomial], basis: &[(usize, Monomial)]) -> Result<Vec<FieldElem>> {
        let index: HashMap<(usize, Monomial), usize> =
            basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        self.coordinates_indexed(v, &index, basis.len())
    }

    pub(crate) fn coordinates_indexed(
        &self,
        v: &[Polynomial],
        index: &HashMap<(usize, Monomial), usize>,
        len: usize,
    ) -> Result<Vec<FieldElem>> {
        let k = self.ring().field();
        let mut out = vec![k.zero(); len];
        for (i, p) in self.reduce(v)?.iter().enumerate() {
            for (m, c) in p.terms() {
                let idx = index.get(&(i, *m)).ok_or_else(|| {
                    Error::NotGraded("element is not homogeneous of the probed degree".into())
                })?;
                out[*idx] = c.clone();
            }
        }
        Ok(out)
    }

    /// Element of the cover for a basis entry.
    pub fn basis_element(&self, b: (usize, Monomial)) -> Vec<Polynomial> {
        let ring = self.ring();
        let mut v = vec![Polynomial::zero(ring); self.rank()];
        v[b.0] = Polynomial::monomial(ring, b.1, ring.field().one());
        v
    }
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.relations.ncols() == 0 {
            write!(f, "free {}", self.rank())?;
        } else {
            write!(f, "coker {}", self.relations)?;
        }
        if self.twists().iter().any(|&t| t != 0) {
            let t: Vec<String> = self.twists().iter().map(|t| t.to_string()).collect();
            write!(f, " twists [{}]", t.join(", "))?;
        }
        Ok(())
    }
}
