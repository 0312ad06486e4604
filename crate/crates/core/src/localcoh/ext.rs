use std::sync::Arc;

use crate::complexes::{ComplexMap, FreeComplex};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, LiftGb, Matrix};
use crate::modcat::{free_resolution, hom_free_into, hom_map_into, FpModule, Resolution};
use crate::polyring::Polynomial;

/// `Hom(F•, N)` in cohomological degrees `0..=len`.
pub(crate) fn hom_of_resolution(res: &Resolution, n: &FpModule) -> Result<FreeComplex> {
    let ring = n.ring();
    let mut terms = Vec::with_capacity(res.len() + 1);
    for k in 0..=res.len() {
        terms.push(hom_free_into(&res.twists(k), n)?);
    }
    let diffs = res
        .maps()
        .iter()
        .map(|d| Ok(hom_map_into(d, n)?.matrix().clone()))
        .collect::<Result<Vec<_>>>()?;
    FreeComplex::new(ring, 0, terms, diffs)
}

/// Chain map `G• → F•` over the identity of the common cyclic cover, where
/// `G•` resolves `R/J` and `F•` resolves `R/I` with `J ⊆ I`.
pub(crate) fn compare_resolutions(g: &Resolution, f: &Resolution) -> Result<Vec<Matrix>> {
    let ring = g.module().ring();
    let mut phi = Matrix::zero(ring, f.twists(0), g.twists(0));
    for j in 0..g.twists(0).len().min(f.twists(0).len()) {
        phi.set_entry(j, j, Polynomial::one(ring));
    }
    let mut out = vec![phi];
    for k in 1..=g.len() {
        let dg = &g.maps()[k - 1];
        let prev = &out[k - 1];
        let images = prev.mul(dg)?;
        let next = if k > f.len() {
            if !images.is_zero() {
                return Err(Error::LiftFailure(format!("comparison map does not vanish in degree {k}")));
            }
            Matrix::zero(ring, Vec::new(), g.twists(k))
        } else {
            let df = &f.maps()[k - 1];
            let lift = LiftGb::from_matrix(df)?;
            let mut cols = Vec::with_capacity(dg.ncols());
            for c in images.columns() {
                let mut a = lift
                    .lift(c)?
                    .ok_or_else(|| Error::LiftFailure(format!("comparison map does not lift in degree {k}")))?;
                a.truncate(df.ncols());
                cols.push(a);
            }
            Matrix::new(ring, f.twists(k), g.twists(k), cols)?
        };
        out.push(next);
    }
    Ok(out)
}

/// The stages `Hom(F•(R/Iⁿ), M)` for `n = 1..=n_max`, resolved far enough for
/// `Ext^i`, with the maps induced by `R/I^{n+1} ↠ R/Iⁿ`.
pub(crate) struct ExtTower {
    pub stages: Vec<Arc<FreeComplex>>,
    pub transitions: Vec<ComplexMap>,
}

pub(crate) fn ext_tower(t: &[Polynomial], m: &FpModule, i: usize, n_max: u32) -> Result<ExtTower> {
    let ring = m.ring();
    let ideal = Ideal::new(ring, t.to_vec())?;
    let mut resolutions = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let q = FpModule::cyclic(&ideal.power(n)?)?;
        resolutions.push(free_resolution(&q, i + 1)?);
    }
    let stages: Vec<Arc<FreeComplex>> = resolutions
        .iter()
        .map(|r| hom_of_resolution(r, m).map(Arc::new))
        .collect::<Result<_>>()?;
    let mut transitions = Vec::new();
    for k in 1..resolutions.len() {
        let (f, g) = (&resolutions[k - 1], &resolutions[k]);
        let phi = compare_resolutions(g, f)?;
        let src = &stages[k - 1];
        let tgt = &stages[k];
        let mut comps = Vec::with_capacity(src.terms().len());
        for d in src.degrees() {
            let comp = match phi.get(d as usize) {
                Some(p) if (d as usize) <= g.len() => hom_map_into(p, m)?.matrix().clone(),
                _ => Matrix::zero(ring, tgt.twists(d), src.twists(d)),
            };
            comps.push(comp);
        }
        transitions.push(ComplexMap::new(src.clone(), tgt.clone(), comps)?);
    }
    Ok(ExtTower { stages, transitions })
}
