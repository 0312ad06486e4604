use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{Ideal, Matrix, SubmoduleGb};
use crate::koszul::{check_sequence, dual_koszul_tower, KoszulTower};
use crate::localcoh::{essential_nullity_check, EssentialNullityCertificate, Verdict};
use crate::modcat::{FpModule, ModuleMap};
use crate::polyring::Polynomial;
use crate::text;

use super::adic::adic_tower;

/// The essential-nullity searches look up to `NULLITY_FACTOR * r_max`.
pub const NULLITY_FACTOR: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Stage {
    pub r: u32,
    /// `P/tʳP → H⁰ Hom(K(tʳ), P)` is an isomorphism.
    pub iso: bool,
    /// The square with the transition into stage `r` commutes (absent at the top).
    pub square: Option<bool>,
    /// The square with the adic projections commutes (absent at the top).
    pub adic_square: Option<bool>,
    /// Least `n` checked with `IⁿP ⊆ tʳP`, so that `P/IⁿP ↠ P/tʳP`.
    pub cofinal_n: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlEntry {
    /// Cohomological degree of the Hom tower.
    pub degree: i64,
    pub r: u32,
    /// Least `s ∈ (r, r_max)` from which the images in stage `r` agree in
    /// every probed internal degree up to `r_max`.
    pub witness: Option<u32>,
    /// Image dimensions never increase with `s`.
    pub monotone: bool,
    /// The images from `r_max - 1` and `r_max` coincide as submodules.
    pub module_stationary: bool,
    /// `[internal degree, s, image dim]`.
    pub images: Vec<[i64; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TowerVerdict {
    /// The `H⁰` comparison holds, every higher tower is pro-zero and every
    /// raw tower has a Mittag-Leffler witness within bounds.
    Consistent,
    /// Some search ran out of room.
    Undecided,
    /// The `H⁰` comparison failed or an image chain grew.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalHomologyReport {
    pub ring: String,
    pub sequence: Vec<String>,
    pub module: String,
    pub r_max: u32,
    pub window: (i64, i64),
    pub h0: Vec<H0Stage>,
    pub nullity: Vec<EssentialNullityCertificate>,
    pub ml: Vec<MlEntry>,
    pub verdict: TowerVerdict,
}

impl LocalHomologyReport {
    pub fn h0_holds(&self) -> bool {
        self.h0.iter().all(|s| {
            s.iso && s.square != Some(false) && s.adic_square != Some(false) && s.cofinal_n.is_some()
        })
    }

    pub fn pro_zero(&self) -> bool {
        self.nullity.iter().all(|c| c.verdict == Verdict::Certified)
    }

    pub fn ml_holds(&self) -> bool {
        self.ml.iter().all(|e| e.monotone && e.witness.is_some())
    }
}

fn quotient_map(source: &FpModule, target: &FpModule) -> Result<ModuleMap> {
    let id = Matrix::identity(source.ring(), source.twists().to_vec());
    ModuleMap::new(source.clone(), target.clone(), id)
}

fn h0_stages(tower: &KoszulTower, t: &[Polynomial], p: &FpModule, r_max: u32) -> Result<Vec<H0Stage>> {
    let ring = tower.ring();
    let ideal = Ideal::new(ring, t.to_vec())?;
    let adic = adic_tower(p, &ideal, r_max)?;
    let comps = (1..=r_max)
        .into_par_iter()
        .map(|r| tower.h0_comparison(r))
        .collect::<Result<Vec<_>>>()?;
    let mu = t.len() as u32;
    (1..=r_max)
        .into_par_iter()
        .map(|r| {
            let k = r as usize - 1;
            let phi = &comps[k];
            let iso = phi.verify_isomorphism()?.is_iso();
            let quot = phi.source();
            let to_adic = quotient_map(quot, adic.stage(r)?)?;
            let (square, adic_square) = if r < r_max {
                let up = &comps[k + 1];
                let q = quotient_map(up.source(), quot)?;
                let left = tower.homology_map(r, r + 1, 0)?.compose(up)?;
                let right = phi.compose(&q)?;
                let up_adic = quotient_map(up.source(), adic.stage(r + 1)?)?;
                let a = adic.transition(r)?.compose(&up_adic)?;
                let b = to_adic.compose(&q)?;
                (Some(left.equals(&right)?), Some(a.equals(&b)?))
            } else {
                (None, None)
            };
            let n = mu * (r - 1) + 1;
            let big = p.mod_ideal(ideal.power(n)?.generators())?;
            let cofinal_n = quotient_map(&big, quot).ok().map(|_| n);
            Ok(H0Stage {
                r,
                iso,
                square,
                adic_square,
                cofinal_n,
            })
        })
        .collect()
}

fn ml_entry(tower: &KoszulTower, n: i64, r: u32, r_max: u32, window: (i64, i64)) -> Result<MlEntry> {
    let mut images = Vec::new();
    let mut ranks: Vec<Vec<usize>> = Vec::new();
    for s in r + 1..=r_max {
        let f = tower.transition(r, s)?.module_map(n);
        let row = (window.0..=window.1)
            .map(|d| Ok(f.degree_matrix(d)?.rank()))
            .collect::<Result<Vec<_>>>()?;
        for (d, &rk) in (window.0..).zip(&row) {
            images.push([d, s as i64, rk as i64]);
        }
        ranks.push(row);
    }
    let monotone = ranks.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| b <= a));
    let last = ranks.last().cloned().unwrap_or_default();
    let witness = (r + 1..r_max)
        .find(|&s| ranks[(s - r - 1) as usize..].iter().all(|row| *row == last));
    let module_stationary = if r + 1 < r_max {
        let stage = tower.stage(r)?;
        let hi = tower.transition(r, r_max)?.component(n);
        let lo = tower.transition(r, r_max - 1)?.component(n);
        let mut cols = hi.columns().to_vec();
        cols.extend(stage.term_or_zero(n).relations().columns().iter().cloned());
        let gb = SubmoduleGb::new(stage.ring(), &stage.twists(n), &cols)?;
        let mut ok = true;
        for c in lo.columns() {
            if !gb.contains(c)? {
                ok = false;
                break;
            }
        }
        ok
    } else {
        true
    };
    Ok(MlEntry {
        degree: n,
        r,
        witness,
        monotone,
        module_stationary,
        images,
    })
}

/// [`local_homology_tower_in`] over the internal degrees
/// `[g, g + Σ deg tᵢ]`, `g` the least generator degree of `P`.
pub fn local_homology_tower(t: &[Polynomial], p: &FpModule, r_max: u32) -> Result<LocalHomologyReport> {
    let g = p.twists().iter().copied().min().unwrap_or(0);
    let span: i64 = t.iter().map(|x| x.degree().unwrap_or(0).max(1)).sum();
    local_homology_tower_in(t, p, r_max, (g, g + span))
}

/// Checks the tower `Hom(K(tʳ), P)` for a free `P`: `H⁰` against `P/tʳP` and
/// the adic tower, pro-zero higher homology, and degreewise Mittag-Leffler
/// for the raw terms over `window`.
pub fn local_homology_tower_in(
    t: &[Polynomial],
    p: &FpModule,
    r_max: u32,
    window: (i64, i64),
) -> Result<LocalHomologyReport> {
    let ring = check_sequence(t)?;
    if !p.ring().same(&ring) {
        return Err(Error::MixedRings);
    }
    if r_max < 2 {
        return Err(Error::BadBounds("r_max must be at least 2".into()));
    }
    if !p.is_free() {
        return Err(Error::InvalidComplex("the coefficient module must be free".into()));
    }
    p.require_graded()?;
    if let Some(x) = t.iter().find(|x| !x.is_homogeneous()) {
        return Err(Error::NotGraded(format!("{x} is not homogeneous")));
    }
    let tower = dual_koszul_tower(t, p, r_max)?;
    let h0 = h0_stages(&tower, t, p, r_max)?;
    let mu = t.len() as i64;
    let nullity = (1..=mu)
        .into_par_iter()
        .map(|i| essential_nullity_check(t, p, i, r_max, NULLITY_FACTOR * r_max))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(i64, u32)> = (-mu..=0).flat_map(|n| (1..r_max.saturating_sub(1)).map(move |r| (n, r))).collect();
    let ml = pairs
        .into_par_iter()
        .map(|(n, r)| ml_entry(&tower, n, r, r_max, window))
        .collect::<Result<Vec<_>>>()?;
    let mut report = LocalHomologyReport {
        ring: text::ring_text(&ring),
        sequence: t.iter().map(|x| x.to_string()).collect(),
        module: text::module_text(p),
        r_max,
        window,
        h0,
        nullity,
        ml,
        verdict: TowerVerdict::Inconsistent,
    };
    report.verdict = if !report.h0_holds() || report.ml.iter().any(|e| !e.monotone) {
        TowerVerdict::Inconsistent
    } else if report.pro_zero() && report.ml_holds() {
        TowerVerdict::Consistent
    } else {
        TowerVerdict::Undecided
    };
    Ok(report)
}
