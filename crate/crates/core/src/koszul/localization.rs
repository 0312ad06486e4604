use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{ideal_gb, normal_form, reduce_mod_ring, Ideal};
use crate::linalg::DenseMatrix;
use crate::modcat::{ring_is_graded, FpModule};
use crate::polyring::{Monomial, Polynomial, Ring};

/// One degree of the comparison between `colim(R →t→ R →t→ …)` and `R[1/t]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationRow {
    pub degree: i64,
    /// Dimension of the degree piece of each stage `R(r·deg t)`, `r = 1..=r_max`.
    pub stage_dims: Vec<usize>,
    /// Ranks of the transitions `r → r+1` on this piece.
    pub transition_ranks: Vec<usize>,
    /// The last two transition ranks agree (or the only transition is an isomorphism).
    pub stable: bool,
    /// Rank of the last transition, the image of stage `r_max - 1` in the colimit.
    pub colimit_dim: usize,
    /// Dimension of the span of `m·zᵇ`, `b ≤ r_max`, in `R[z]/(zt − 1)`.
    pub localization_dim: usize,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationReport {
    pub element: String,
    pub r_max: u32,
    pub rows: Vec<LocalizationRow>,
}

impl LocalizationReport {
    pub fn agrees(&self) -> bool {
        self.rows.iter().all(|r| r.agrees)
    }
}

fn piece(ring: &Arc<Ring>, d: i64) -> Result<Vec<Monomial>> {
    Ok(FpModule::free(ring, vec![0])
        .degree_basis(d)?
        .into_iter()
        .map(|(_, m)| m)
        .collect())
}

fn rank_of(ring: &Arc<Ring>, vectors: &[Polynomial]) -> usize {
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for v in vectors {
        for (m, _) in v.terms() {
            let n = index.len();
            index.entry(*m).or_insert(n);
        }
    }
    let k = ring.field();
    let cols = vectors
        .iter()
        .map(|v| {
            let mut c = vec![k.zero(); index.len()];
            for (m, a) in v.terms() {
                c[index[m]] = a.clone();
            }
            c
        })
        .collect();
    DenseMatrix::from_columns(k, index.len(), cols).rank()
}

/// Compares, degree by degree, the direct system `R(r·deg t)` with transitions
/// `·t` against the presented localization `R[z]/(zt − 1)` filtered by
/// `z`-degree at most `r_max`.
pub fn localization_colimit_check(t: &Polynomial, window: (i64, i64), r_max: u32) -> Result<LocalizationReport> {
    let ring = t.ring().clone();
    if !ring_is_graded(&ring) || !t.is_homogeneous() {
        return Err(Error::NotGraded("localization check needs a homogeneous element".into()));
    }
    let t = reduce_mod_ring(t)?;
    if t.is_zero() {
        return Err(Error::ZeroElement);
    }
    if r_max == 0 || window.0 > window.1 {
        return Err(Error::BadBounds("need r_max ≥ 1 and a nonempty window".into()));
    }
    let w = t.degree().unwrap_or(0);
    let j = ring.quotient_polys(&ring.base());
    let mut ext_vars: Vec<String> = ring.vars().to_vec();
    let mut z = String::from("z");
    while ext_vars.contains(&z) {
        z.push('_');
    }
    ext_vars.push(z);
    let zi = ring.nvars();
    let big = Ring::with_weights(ring.field().clone(), &ext_vars, ring.order(), &[ring.weights(), &[1]].concat())?;
    let lift = |p: &Polynomial| p.with_ring(&big);
    let mut gens: Vec<Polynomial> = j.iter().map(lift).collect();
    let zt = big.var(zi).mul(&lift(&t))?;
    gens.push(zt.sub(&Polynomial::one(&big)));
    let gb = Ideal::new(&big, ideal_gb(&big, &gens)?)?;

    let mut rows = Vec::new();
    for e in window.0..=window.1 {
        let mut stage_dims = Vec::new();
        let mut transition_ranks = Vec::new();
        for r in 1..=r_max {
            let d = e + r as i64 * w;
            stage_dims.push(if d < 0 { 0 } else { piece(&ring, d)?.len() });
            if r < r_max && d >= 0 {
                let images: Vec<Polynomial> = piece(&ring, d)?
                    .into_iter()
                    .map(|m| reduce_mod_ring(&Polynomial::monomial(&ring, m, ring.field().one()).mul(&t)?))
                    .collect::<Result<_>>()?;
                transition_ranks.push(rank_of(&ring, &images));
            } else if r < r_max {
                transition_ranks.push(0);
            }
        }
        let last = *stage_dims.last().expect("r_max ≥ 1");
        let (stable, colimit_dim) = match transition_ranks.as_slice() {
            [] => (t.is_constant(), last),
            [rk] => (*rk == stage_dims[0] && *rk == last, *rk),
            [.., a, b] => (a == b, *b),
        };
        let mut spans = Vec::new();
        for b in 0..=r_max {
            let d = e + b as i64 * w;
            if d < 0 {
                continue;
            }
            for m in piece(&ring, d)? {
                let mut mz = m;
                for _ in 0..b {
                    mz = mz.mul(&Monomial::var(zi))?;
                }
                let p = Polynomial::monomial(&big, mz, big.field().one());
                spans.push(normal_form(&p, &gb)?);
            }
        }
        let localization_dim = rank_of(&big, &spans);
        rows.push(LocalizationRow {
            degree: e,
            stage_dims,
            transition_ranks,
            stable,
            colimit_dim,
            localization_dim,
            agrees: stable && colimit_dim == localization_dim,
        });
    }
    Ok(LocalizationReport {
        element: t.to_string(),
        r_max,
        rows,
    })
}
