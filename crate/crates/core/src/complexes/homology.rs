use crate::error::{Error, Result};
use crate::groebner::{LiftGb, Matrix, SubmoduleGb};
use crate::modcat::ModuleMap;

use super::map::ComplexMap;

/// `ker g = im f` for `X →f Y →g Z`.
pub fn exact_at(f: &ModuleMap, g: &ModuleMap) -> Result<bool> {
    if !g.compose(f)?.is_zero()? {
        return Ok(false);
    }
    let y = f.target();
    let mut span = f.matrix().columns().to_vec();
    span.extend(y.relations().columns().iter().cloned());
    let gb = SubmoduleGb::new(y.ring(), y.twists(), &span)?;
    for k in g.kernel_generators()? {
        if !gb.contains(&k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One spot of a long exact sequence and whether it is exact there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessSpot {
    pub label: String,
    pub exact: bool,
}

/// The connecting map `H^n(C) → H^{n+1}(A)` of `0 → A →i B →p C → 0`.
pub fn connecting_map(i: &ComplexMap, p: &ComplexMap, n: i64) -> Result<ModuleMap> {
    let (a, b, c) = (i.source(), i.target(), p.target());
    let hc = c.homology(n)?;
    let ha = a.homology(n + 1)?;
    let ring = a.ring();
    let Some(zc) = c.homology_subquotient(n)? else {
        return Ok(ModuleMap::zero(&hc, &ha));
    };
    let za = a.homology_subquotient(n + 1)?;
    // lift through p (modulo relations of C^n)
    let pm = p.component(n);
    let mut pcols = pm.columns().to_vec();
    pcols.extend(c.term_or_zero(n).relations().columns().iter().cloned());
    let mut ptw = pm.col_twists().to_vec();
    ptw.extend_from_slice(c.term_or_zero(n).relations().col_twists());
    let plift = LiftGb::new(ring, pm.row_twists(), &ptw, &pcols)?;
    let im = i.component(n + 1);
    let bt = b.term_or_zero(n + 1);
    let mut icols = im.columns().to_vec();
    icols.extend(bt.relations().columns().iter().cloned());
    let mut itw = im.col_twists().to_vec();
    itw.extend_from_slice(bt.relations().col_twists());
    let ilift = LiftGb::new(ring, im.row_twists(), &itw, &icols)?;
    let db = b.differential(n);
    let mut cols = Vec::with_capacity(hc.rank());
    for z in zc.generators() {
        let mut x = plift
            .lift(z)?
            .ok_or_else(|| Error::LiftFailure("p is not surjective".into()))?;
        x.truncate(pm.ncols());
        let y = db.apply(&x)?;
        let mut w = ilift
            .lift(&y)?
            .ok_or_else(|| Error::LiftFailure("boundary does not come from A".into()))?;
        w.truncate(im.ncols());
        let col = match za {
            None => Vec::new(),
            Some(h) => h
                .express(&w)?
                .ok_or_else(|| Error::LiftFailure("connecting image is not a cycle".into()))?,
        };
        cols.push(col);
    }
    let m = Matrix::new(ring, ha.twists().to_vec(), hc.twists().to_vec(), cols)?;
    ModuleMap::new(hc, ha, m)
}

/// Exactness of the homology sequence of `0 → A → B → C → 0` at every spot
/// `H^n(A), H^n(B), H^n(C)` for `n` across the supports.
pub fn long_exact_sequence(i: &ComplexMap, p: &ComplexMap) -> Result<Vec<ExactnessSpot>> {
    if *i.target() != *p.source() {
        return Err(Error::InvalidMap("maps do not form a sequence".into()));
    }
    let (a, b, c) = (i.source(), i.target(), p.target());
    // degreewise short exactness
    for n in b.degrees() {
        let pi = p.component(n).mul(&i.component(n))?;
        for col in pi.columns() {
            if let Some(t) = c.term(n) {
                if !t.element_is_zero(col)? {
                    return Err(Error::InvalidMap(format!("p∘i ≠ 0 in degree {n}")));
                }
            }
        }
    }
    let lo = a.lo().min(b.lo()).min(c.lo()) - 1;
    let hi = a.hi().max(b.hi()).max(c.hi()) + 1;
    let mut out = Vec::new();
    for n in lo..=hi {
        let i_n = i.induced_homology_map(n)?;
        let p_n = p.induced_homology_map(n)?;
        let d_prev = connecting_map(i, p, n - 1)?;
        let d_n = connecting_map(i, p, n)?;
        out.push(ExactnessSpot {
            label: format!("H^{n}(A)"),
            exact: exact_at(&d_prev, &i_n)?,
        });
        out.push(ExactnessSpot {
            label: format!("H^{n}(B)"),
            exact: exact_at(&i_n, &p_n)?,
        });
        out.push(ExactnessSpot {
            label: format!("H^{n}(C)"),
            exact: exact_at(&p_n, &d_n)?,
        });
    }
    Ok(out)
}
