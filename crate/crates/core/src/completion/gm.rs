use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{hom_complex, hom_layout, tensor_complexes, tensor_layout, ComplexMap, FreeComplex, HomIndex};
use crate::error::{Error, Result};
use crate::groebner::Matrix;
use crate::koszul::{check_sequence, koszul_complex, koszul_transition};
use crate::polyring::Polynomial;

/// The canonical `Hom(K ⊗ E, F) → Hom(E, Hom(K, F))`,
/// `φ(f)(e)(k) = (-1)^{|k||e|} f(k ⊗ e)`.
pub fn adjunction_map(k: &FreeComplex, e: &FreeComplex, f: &FreeComplex) -> Result<ComplexMap> {
    if !k.ring().same(e.ring()) || !k.ring().same(f.ring()) {
        return Err(Error::MixedRings);
    }
    let ring = k.ring();
    let field = ring.field();
    let t = tensor_complexes(k, e)?;
    let h = hom_complex(k, f)?;
    let lhs = Arc::new(hom_complex(&t, f)?);
    let rhs = Arc::new(hom_complex(e, &h)?);
    let (tlo, tl) = tensor_layout(k, e);
    let (llo, ll) = hom_layout(&t, f);
    let (hlo, hl) = hom_layout(k, f);
    let (rlo, rl) = hom_layout(e, &h);
    let index = |layout: &[Vec<HomIndex>]| -> Vec<HashMap<HomIndex, usize>> {
        layout
            .iter()
            .map(|deg| deg.iter().enumerate().map(|(k, &i)| (i, k)).collect())
            .collect()
    };
    let hindex = index(&hl);
    let rindex = index(&rl);
    let mut maps = Vec::with_capacity(ll.len());
    for (s, deg) in ll.iter().enumerate() {
        let n = llo + s as i64;
        let nrows = rhs.rank(n);
        let mut cols = Vec::with_capacity(deg.len());
        for &(p, x, tt) in deg {
            let (a, i, b, j) = tl[(p - tlo) as usize][x];
            let m = b + n;
            let u = hindex[(m - hlo) as usize][&(a, i, tt)];
            let row = rindex[(n - rlo) as usize][&(b, j, u)];
            let mut col = vec![Polynomial::zero(ring); nrows];
            col[row] = if (a * b).rem_euclid(2) == 0 {
                Polynomial::one(ring)
            } else {
                Polynomial::constant(ring, field.neg(&field.one()))
            };
            cols.push(col);
        }
        maps.push(Matrix::new(ring, rhs.twists(n), lhs.twists(n), cols)?);
    }
    if lhs.is_empty() {
        return Ok(ComplexMap::zero(&lhs, &rhs));
    }
    ComplexMap::new(lhs, rhs, maps)
}

/// Equality of chain maps up to the relations of the target.
fn agree(a: &ComplexMap, b: &ComplexMap) -> Result<bool> {
    for n in a.source().degrees() {
        if !a.module_map(n).equals(&b.module_map(n))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageVerdict {
    pub r: u32,
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareVerdict {
    /// The square comparing stages `r` and `r + 1`.
    pub r: u32,
    pub commutes: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityReport {
    pub sequence: Vec<String>,
    pub r_range: (u32, u32),
    pub e: String,
    pub f: String,
    pub stages: Vec<StageVerdict>,
    pub squares: Vec<SquareVerdict>,
    /// `[degree, r, rank of Hom(K ⊗ E, F), rank of Hom(E, Hom(K, F))]`.
    pub ranks: Vec<[i64; 4]>,
    #[serde(skip)]
    pub maps: Vec<Arc<ComplexMap>>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.iso) && self.squares.iter().all(|s| s.commutes)
    }

    /// Rechecks every stored map degreewise.
    pub fn reverify(&self) -> Result<bool> {
        for (m, s) in self.maps.iter().zip(&self.stages) {
            if m.is_isomorphism()? != s.iso {
                return Ok(false);
            }
        }
        Ok(self.maps.len() == self.stages.len())
    }
}

/// For each `r` in `r_range`, the adjunction map for `K(tʳ)` and whether it
/// is an isomorphism of complexes, plus the naturality squares between
/// consecutive stages.
pub fn gm_adjunction_check(e: &FreeComplex, f: &FreeComplex, t: &[Polynomial], r_range: (u32, u32)) -> Result<DualityReport> {
    let ring = check_sequence(t)?;
    if !e.ring().same(&ring) || !f.ring().same(&ring) {
        return Err(Error::MixedRings);
    }
    let (lo, hi) = r_range;
    if lo == 0 || lo > hi {
        return Err(Error::BadBounds(format!("bad stage range {lo}..{hi}")));
    }
    if !e.is_free() {
        return Err(Error::InvalidComplex("E must have free terms".into()));
    }
    let stages = (lo..=hi)
        .into_par_iter()
        .map(|r| {
            let k = koszul_complex(t, r, None)?;
            let phi = adjunction_map(&k, e, f)?;
            Ok((k, Arc::new(phi)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut verdicts = Vec::new();
    let mut ranks = Vec::new();
    for (r, (_, phi)) in (lo..).zip(&stages) {
        verdicts.push(StageVerdict {
            r,
            iso: phi.is_isomorphism()?,
        });
        let (s, t) = (phi.source(), phi.target());
        let dlo = s.lo().min(t.lo());
        let dhi = s.hi().max(t.hi());
        for n in dlo..=dhi {
            ranks.push([n, r as i64, s.rank(n) as i64, t.rank(n) as i64]);
        }
    }
    let e_arc = Arc::new(e.clone());
    let squares = (lo..hi)
        .into_par_iter()
        .map(|r| {
            let (k0, phi0) = &stages[(r - lo) as usize];
            let (k1, phi1) = &stages[(r - lo + 1) as usize];
            let g = koszul_transition(t, r, r + 1, None)?;
            debug_assert!(**g.source() == *k0 && **g.target() == *k1);
            let id = ComplexMap::identity(&e_arc);
            let t0 = Arc::new(tensor_complexes(k0, e)?);
            let t1 = Arc::new(tensor_complexes(k1, e)?);
            let gt = ComplexMap::tensor(&g, &id, &t0, &t1)?;
            let left = gt.hom_into(f, phi1.source(), phi0.source())?;
            let h0 = Arc::new(hom_complex(k0, f)?);
            let h1 = Arc::new(hom_complex(k1, f)?);
            let gh = g.hom_into(f, &h1, &h0)?;
            let right = gh.hom_from(e, phi1.target(), phi0.target())?;
            let a = phi0.compose(&left)?;
            let b = right.compose(phi1)?;
            Ok(SquareVerdict { r, commutes: agree(&a, &b)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DualityReport {
        sequence: t.iter().map(|x| x.to_string()).collect(),
        r_range,
        e: e.to_string(),
        f: f.to_string(),
        stages: verdicts,
        squares,
        ranks,
        maps: stages.into_iter().map(|(_, m)| m).collect(),
    })
}
