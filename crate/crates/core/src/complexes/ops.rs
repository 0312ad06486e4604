use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::Matrix;
use crate::modcat::{hom_free_into, FpModule};
use crate::polyring::Polynomial;

use super::complex::FreeComplex;
use super::map::ComplexMap;

/// A basis element `a ⊗ b` of `(C ⊗ D)^n`: `(p, a, q, b)` with `a ∈ C^p`, `b ∈ D^q`.
pub type TensorIndex = (i64, usize, i64, usize);

/// A basis element of `Hom(C, D)^n`: `(p, i, t)` sending generator `i` of
/// `C^p` to generator `t` of `D^{p+n}`.
pub type HomIndex = (i64, usize, usize);

/// Basis of each degree of `C ⊗ D`, ordered by concatenated keys.
pub fn tensor_layout(c: &FreeComplex, d: &FreeComplex) -> (i64, Vec<Vec<TensorIndex>>) {
    if c.is_empty() || d.is_empty() {
        return (0, Vec::new());
    }
    let lo = c.lo() + d.lo();
    let hi = c.hi() + d.hi();
    let mut out = Vec::new();
    for n in lo..=hi {
        let mut items: Vec<(Vec<u32>, TensorIndex)> = Vec::new();
        for p in c.degrees() {
            let q = n - p;
            if q < d.lo() || q > d.hi() {
                continue;
            }
            for (a, ka) in c.keys(p).iter().enumerate() {
                for (b, kb) in d.keys(q).iter().enumerate() {
                    let mut k = ka.clone();
                    k.extend_from_slice(kb);
                    items.push((k, (p, a, q, b)));
                }
            }
        }
        items.sort();
        out.push(items.into_iter().map(|(_, i)| i).collect());
    }
    (lo, out)
}

fn tensor_keys(c: &FreeComplex, d: &FreeComplex, layout: &[Vec<TensorIndex>]) -> Vec<Vec<Vec<u32>>> {
    layout
        .iter()
        .map(|deg| {
            deg.iter()
                .map(|&(p, a, q, b)| {
                    let mut k = c.keys(p)[a].clone();
                    k.extend_from_slice(&d.keys(q)[b]);
                    k
                })
                .collect()
        })
        .collect()
}

/// Total tensor complex with `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`.
pub fn tensor_complexes(c: &FreeComplex, d: &FreeComplex) -> Result<FreeComplex> {
    if !c.ring().same(d.ring()) {
        return Err(Error::MixedRings);
    }
    let ring = c.ring();
    let (lo, layout) = tensor_layout(c, d);
    if layout.is_empty() {
        return Ok(FreeComplex::zero(ring));
    }
    let index: Vec<HashMap<TensorIndex, usize>> = layout
        .iter()
        .map(|deg| deg.iter().enumerate().map(|(k, &i)| (i, k)).collect())
        .collect();
    let k = ring.field();
    let mut terms = Vec::with_capacity(layout.len());
    for deg in &layout {
        let twists: Vec<i64> = deg
            .iter()
            .map(|&(p, a, q, b)| c.twists(p)[a] + d.twists(q)[b])
            .collect();
        let mut rels: Vec<Vec<Polynomial>> = Vec::new();
        let pos: HashMap<TensorIndex, usize> = deg.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        for &(p, a, q, b) in deg {
            // relations of C^p ⊗ b, once per b; and a ⊗ relations of D^q, once per a
            if a == 0 {
                for rel in c.term(p).unwrap().relations().columns() {
                    let mut col = vec![Polynomial::zero(ring); deg.len()];
                    for (u, e) in rel.iter().enumerate() {
                        col[pos[&(p, u, q, b)]] = e.clone();
                    }
                    rels.push(col);
                }
            }
            if b == 0 {
                for rel in d.term(q).unwrap().relations().columns() {
                    let mut col = vec![Polynomial::zero(ring); deg.len()];
                    for (v, e) in rel.iter().enumerate() {
                        col[pos[&(p, a, q, v)]] = e.clone();
                    }
                    rels.push(col);
                }
            }
        }
        terms.push(FpModule::from_columns(ring, twists, rels)?);
    }
    let mut diffs = Vec::new();
    for (t, deg) in layout.iter().enumerate().take(layout.len().saturating_sub(1)) {
        let next = &index[t + 1];
        let nrows = layout[t + 1].len();
        let mut cols = Vec::with_capacity(deg.len());
        for &(p, a, q, b) in deg {
            let mut col = vec![Polynomial::zero(ring); nrows];
            let dc = c.differential(p);
            for u in 0..c.rank(p + 1) {
                let e = dc.entry(u, a);
                if !e.is_zero() {
                    let r = next[&(p + 1, u, q, b)];
                    col[r] = col[r].add(e);
                }
            }
            let dd = d.differential(q);
            let sign = if p.rem_euclid(2) == 0 { k.one() } else { k.neg(&k.one()) };
            for v in 0..d.rank(q + 1) {
                let e = dd.entry(v, b);
                if !e.is_zero() {
                    let r = next[&(p, a, q + 1, v)];
                    col[r] = col[r].add(&e.scale(&sign));
                }
            }
            cols.push(col);
        }
        diffs.push(Matrix::new(ring, terms[t + 1].twists().to_vec(), terms[t].twists().to_vec(), cols)?);
    }
    let keys = tensor_keys(c, d, &layout);
    FreeComplex::with_keys(ring, lo, terms, diffs, keys)
}

/// Basis of each degree of `Hom(C, D)`: blocks by ascending `p`, then `i`, then `t`.
pub fn hom_layout(c: &FreeComplex, d: &FreeComplex) -> (i64, Vec<Vec<HomIndex>>) {
    if c.is_empty() || d.is_empty() {
        return (0, Vec::new());
    }
    let lo = d.lo() - c.hi();
    let hi = d.hi() - c.lo();
    let mut out = Vec::new();
    for n in lo..=hi {
        let mut items = Vec::new();
        for p in c.degrees() {
            let r = d.rank(p + n);
            for i in 0..c.rank(p) {
                for t in 0..r {
                    items.push((p, i, t));
                }
            }
        }
        out.push(items);
    }
    (lo, out)
}

/// `Hom^n = ⊕_p Hom(C^p, D^{p+n})` with `df = d∘f - (-1)^n f∘d`.
/// The contravariant argument must have free terms.
pub fn hom_complex(c: &FreeComplex, d: &FreeComplex) -> Result<FreeComplex> {
    if !c.ring().same(d.ring()) {
        return Err(Error::MixedRings);
    }
    if !c.is_free() {
        return Err(Error::InvalidComplex("Hom needs free terms in its first argument".into()));
    }
    let ring = c.ring();
    let (lo, layout) = hom_layout(c, d);
    if layout.is_empty() {
        return Ok(FreeComplex::zero(ring));
    }
    let k = ring.field();
    let mut terms = Vec::with_capacity(layout.len());
    for (t, _) in layout.iter().enumerate() {
        let n = lo + t as i64;
        let parts: Vec<FpModule> = c
            .degrees()
            .map(|p| hom_free_into(&c.twists(p), &d.term_or_zero(p + n)))
            .collect::<Result<_>>()?;
        let refs: Vec<&FpModule> = parts.iter().collect();
        terms.push(FpModule::direct_sum(&refs)?);
    }
    let index: Vec<HashMap<HomIndex, usize>> = layout
        .iter()
        .map(|deg| deg.iter().enumerate().map(|(k, &i)| (i, k)).collect())
        .collect();
    let mut diffs = Vec::new();
    for (t, deg) in layout.iter().enumerate().take(layout.len().saturating_sub(1)) {
        let n = lo + t as i64;
        let next = &index[t + 1];
        let nrows = layout[t + 1].len();
        // −(−1)^n
        let sign = if n.rem_euclid(2) == 0 { k.neg(&k.one()) } else { k.one() };
        let mut cols = Vec::with_capacity(deg.len());
        for &(p, i, tt) in deg {
            let mut col = vec![Polynomial::zero(ring); nrows];
            // d_D ∘ φ
            let dd = d.differential(p + n);
            for u in 0..d.rank(p + n + 1) {
                let e = dd.entry(u, tt);
                if !e.is_zero() {
                    let r = next[&(p, i, u)];
                    col[r] = col[r].add(e);
                }
            }
            // φ ∘ d_C lands in the block p − 1
            if p > c.lo() {
                let dc = c.differential(p - 1);
                for j in 0..c.rank(p - 1) {
                    let e = dc.entry(i, j);
                    if !e.is_zero() {
                        let r = next[&(p - 1, j, tt)];
                        col[r] = col[r].add(&e.scale(&sign));
                    }
                }
            }
            cols.push(col);
        }
        diffs.push(Matrix::new(ring, terms[t + 1].twists().to_vec(), terms[t].twists().to_vec(), cols)?);
    }
    FreeComplex::new(ring, lo, terms, diffs)
}

/// `Cone(f)^n = C^{n+1} ⊕ D^n`, `d(c, d) = (-d_C c, f(c) + d_D d)`.
pub fn cone(f: &ComplexMap) -> Result<FreeComplex> {
    let (c, d) = (f.source(), f.target());
    let ring = c.ring();
    if c.is_empty() && d.is_empty() {
        return Ok(FreeComplex::zero(ring));
    }
    let (lo, hi) = match (c.is_empty(), d.is_empty()) {
        (true, _) => (d.lo(), d.hi()),
        (_, true) => (c.lo() - 1, c.hi() - 1),
        _ => ((c.lo() - 1).min(d.lo()), (c.hi() - 1).max(d.hi())),
    };
    let mut terms = Vec::new();
    for n in lo..=hi {
        terms.push(FpModule::direct_sum(&[&c.term_or_zero(n + 1), &d.term_or_zero(n)])?);
    }
    let mut diffs = Vec::new();
    for n in lo..hi {
        let (rc, rd) = (c.rank(n + 1), d.rank(n));
        let (rc2, rd2) = (c.rank(n + 2), d.rank(n + 1));
        let dc = c.differential(n + 1);
        let dd = d.differential(n);
        let fm = f.component(n + 1);
        let mut cols = Vec::with_capacity(rc + rd);
        for j in 0..rc {
            let mut col = vec![Polynomial::zero(ring); rc2 + rd2];
            for i in 0..rc2 {
                col[i] = dc.entry(i, j).neg();
            }
            for i in 0..rd2 {
                col[rc2 + i] = fm.entry(i, j).clone();
            }
            cols.push(col);
        }
        for j in 0..rd {
            let mut col = vec![Polynomial::zero(ring); rc2 + rd2];
            for i in 0..rd2 {
                col[rc2 + i] = dd.entry(i, j).clone();
            }
            cols.push(col);
        }
        let t = (n - lo) as usize;
        diffs.push(Matrix::new(ring, terms[t + 1].twists().to_vec(), terms[t].twists().to_vec(), cols)?);
    }
    FreeComplex::new(ring, lo, terms, diffs)
}
