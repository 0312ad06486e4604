//! Buchberger's algorithm for submodules of free modules.
//!
//! Elements are sparse vectors of `(component, monomial, coefficient)` terms.
//! The module order is term-over-position, refined by generator degrees
//! ("twists"). An optional block split makes components `< split` dominate
//! all others, which turns the same routine into a syzygy/lifting engine.

use std::cmp::Ordering;

use crate::error::Result;
use crate::field::{Field, FieldElem};
use crate::polyring::{Monomial, MonomialOrder, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub comp: u32,
    /// Weighted degree of `mono` plus the twist of `comp`.
    pub deg: i64,
    pub mono: Monomial,
    pub coeff: FieldElem,
}

pub(crate) type Vector = Vec<VTerm>;

pub(crate) struct Engine<'a> {
    pub ring: &'a Ring,
    pub twists: &'a [i64],
    /// Components `< split` form the dominant block.
    pub split: u32,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
    deg: i64,
    sugar: i64,
}

impl<'a> Engine<'a> {
    pub fn new(ring: &'a Ring, twists: &'a [i64]) -> Self {
        Engine {
            ring,
            twists,
            split: u32::MAX,
        }
    }

    pub fn with_split(ring: &'a Ring, twists: &'a [i64], split: usize) -> Self {
        Engine {
            ring,
            twists,
            split: split as u32,
        }
    }

    fn field(&self) -> &Field {
        self.ring.field()
    }

    #[inline]
    pub fn cmp_key(&self, ca: u32, da: i64, ma: &Monomial, cb: u32, db: i64, mb: &Monomial) -> Ordering {
        let (ta, tb) = (ca < self.split, cb < self.split);
        if ta != tb {
            return if ta { Ordering::Greater } else { Ordering::Less };
        }
        match self.ring.order() {
            MonomialOrder::GRevLex => da
                .cmp(&db)
                .then_with(|| self.ring.cmp_mono(ma, mb))
                .then_with(|| cb.cmp(&ca)),
            MonomialOrder::Lex => self.ring.cmp_mono(ma, mb).then_with(|| cb.cmp(&ca)),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &VTerm, b: &VTerm) -> Ordering {
        self.cmp_key(a.comp, a.deg, &a.mono, b.comp, b.deg, &b.mono)
    }

    pub fn term(&self, comp: usize, mono: Monomial, coeff: FieldElem) -> VTerm {
        VTerm {
            comp: comp as u32,
            deg: self.ring.degree_of(&mono) + self.twists[comp],
            mono,
            coeff,
        }
    }

    pub fn sort(&self, v: &mut Vector) {
        v.sort_by(|a, b| self.cmp(b, a));
        let k = self.field();
        let mut out: Vector = Vec::with_capacity(v.len());
        for t in v.drain(..) {
            match out.last_mut() {
                Some(l) if l.comp == t.comp && l.mono == t.mono => l.coeff = k.add(&l.coeff, &t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !k.is_zero(&t.coeff));
        *v = out;
    }

    /// `f + c·m·g`, both inputs sorted.
    pub fn add_mul(&self, f: &[VTerm], c: &FieldElem, m: &Monomial, g: &[VTerm]) -> Result<Vector> {
        let k = self.field();
        let dm = self.ring.degree_of(m);
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut gi = g.iter().peekable();
        let mut fi = f.iter().peekable();
        let mut pending: Option<VTerm> = None;
        loop {
            if pending.is_none() {
                if let Some(t) = gi.next() {
                    pending = Some(VTerm {
                        comp: t.comp,
                        deg: t.deg + dm,
                        mono: t.mono.mul(m)?,
                        coeff: k.mul(&t.coeff, c),
                    });
                }
            }
            match (fi.peek(), pending.as_ref()) {
                (None, None) => break,
                (Some(_), None) => out.push(fi.next().unwrap().clone()),
                (None, Some(_)) => out.push(pending.take().unwrap()),
                (Some(a), Some(b)) => match self.cmp(a, b) {
                    Ordering::Greater => out.push(fi.next().unwrap().clone()),
                    Ordering::Less => out.push(pending.take().unwrap()),
                    Ordering::Equal => {
                        let a = fi.next().unwrap();
                        let b = pending.take().unwrap();
                        let s = k.add(&a.coeff, &b.coeff);
                        if !k.is_zero(&s) {
                            out.push(VTerm { coeff: s, ..b });
                        }
                    }
                },
            }
        }
        Ok(out)
    }

    pub fn scale(&self, v: &mut Vector, c: &FieldElem) {
        let k = self.field();
        for t in v.iter_mut() {
            t.coeff = k.mul(&t.coeff, c);
        }
    }

    pub fn make_monic(&self, v: &mut Vector) {
        if let Some(t) = v.first() {
            if !self.field().is_one(&t.coeff) {
                let inv = self.field().inv(&t.coeff).expect("nonzero");
                self.scale(v, &inv);
            }
        }
    }

    fn find_reducer<'b>(&self, t: &VTerm, basis: &'b [Vector], skip: Option<usize>) -> Option<(usize, &'b Vector)> {
        basis.iter().enumerate().find(|(idx, g)| {
            Some(*idx) != skip && {
                let lt = &g[0];
                lt.comp == t.comp && lt.mono.divides(&t.mono)
            }
        })
    }

    /// Reduce `f` by `basis` (each nonempty and with known leading terms).
    /// With `full` the tail is reduced too; otherwise only the head. With
    /// `top_only`, reduction stops at the first term outside the dominant block.
    pub fn reduce(&self, f: Vector, basis: &[Vector], full: bool, top_only: bool, skip: Option<usize>) -> Result<Vector> {
        let k = self.field();
        let mut done: Vector = Vec::new();
        let mut p = f;
        let mut start = 0;
        while start < p.len() {
            let t = &p[start];
            if top_only && t.comp >= self.split {
                break;
            }
            match self.find_reducer(t, basis, skip) {
                Some((_, g)) => {
                    let lt = &g[0];
                    let c = k.neg(&k.div(&t.coeff, &lt.coeff)?);
                    let m = lt.mono.quotient_of(&t.mono);
                    p = self.add_mul(&p[start..], &c, &m, g)?;
                    start = 0;
                }
                None => {
                    if !full {
                        break;
                    }
                    done.push(p[start].clone());
                    start += 1;
                }
            }
        }
        done.extend(p.drain(start..));
        Ok(done)
    }

    fn sugar(&self, v: &[VTerm]) -> i64 {
        v.iter().map(|t| t.deg).max().unwrap_or(i64::MIN)
    }

    fn spoly(&self, f: &[VTerm], g: &[VTerm], lcm: &Monomial) -> Result<Vector> {
        let k = self.field();
        let (lf, lg) = (&f[0], &g[0]);
        let mf = lf.mono.quotient_of(lcm);
        let mg = lg.mono.quotient_of(lcm);
        let cf = k.inv(&lf.coeff)?;
        let cg = k.neg(&k.inv(&lg.coeff)?);
        let a = self.add_mul(&[], &cf, &mf, f)?;
        self.add_mul(&a, &cg, &mg, g)
    }

    /// Reduced Gröbner basis of the submodule generated by `gens`, sorted by
    /// leading term ascending.
    pub fn groebner(&self, gens: Vec<Vector>, product_criterion: bool) -> Result<Vec<Vector>> {
        let mut basis: Vec<Vector> = Vec::new();
        let mut sugars: Vec<i64> = Vec::new();
        let mut live: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let mut pending: Vec<Vector> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        // Generators enter in ascending order so small elements reduce the rest.
        pending.sort_by(|a, b| self.cmp(&a[0], &b[0]));
        for g in pending {
            let s = self.sugar(&g);
            let h = self.reduce(g, &basis, false, false, None)?;
            if h.is_empty() {
                continue;
            }
            self.insert(&mut basis, &mut sugars, &mut live, &mut pairs, h, s, product_criterion);
        }

        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (p, q) = (&pairs[a], &pairs[b]);
                    self.cmp_key(p.comp, p.deg, &p.lcm, q.comp, q.deg, &q.lcm)
                        .then(p.sugar.cmp(&q.sugar))
                        .then((p.i, p.j).cmp(&(q.i, q.j)))
                })
                .unwrap();
            let pair = pairs.swap_remove(best);
            let s = self.spoly(&basis[pair.i], &basis[pair.j], &pair.lcm)?;
            let h = self.reduce(s, &basis, false, false, None)?;
            if h.is_empty() {
                continue;
            }
            self.insert(&mut basis, &mut sugars, &mut live, &mut pairs, h, pair.sugar, product_criterion);
        }

        self.interreduce(basis)
    }

    #[allow(clippy::too_many_arguments)]
    fn insert(
        &self,
        basis: &mut Vec<Vector>,
        sugars: &mut Vec<i64>,
        live: &mut Vec<bool>,
        pairs: &mut Vec<Pair>,
        mut h: Vector,
        sugar: i64,
        product_criterion: bool,
    ) {
        self.make_monic(&mut h);
        let k_idx = basis.len();
        let lh = h[0].clone();

        // Chain criterion on existing pairs.
        pairs.retain(|p| {
            if p.comp != lh.comp || !lh.mono.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i][0].mono.lcm(&lh.mono);
            let lj = basis[p.j][0].mono.lcm(&lh.mono);
            li == p.lcm || lj == p.lcm
        });

        let mut cands: Vec<(Pair, bool)> = Vec::new();
        for i in 0..k_idx {
            if !live[i] || basis[i][0].comp != lh.comp {
                continue;
            }
            let gi = &basis[i][0];
            let lcm = gi.mono.lcm(&lh.mono);
            let deg = self.ring.degree_of(&lcm) + self.twists[lh.comp as usize];
            let s = (sugars[i] + self.ring.degree_of(&gi.mono.quotient_of(&lcm)))
                .max(sugar + self.ring.degree_of(&lh.mono.quotient_of(&lcm)));
            let coprime = product_criterion && gi.mono.gcd_is_one(&lh.mono);
            cands.push((
                Pair {
                    i,
                    j: k_idx,
                    comp: lh.comp,
                    lcm,
                    deg,
                    sugar: s,
                },
                coprime,
            ));
        }
        // Drop pairs whose lcm is a proper multiple of another new pair's lcm;
        // among equal lcms keep one, and none if any of them is coprime.
        let mut keep: Vec<Pair> = Vec::new();
        for (idx, (p, _)) in cands.iter().enumerate() {
            let dominated = cands
                .iter()
                .any(|(q, _)| q.lcm != p.lcm && q.lcm.divides(&p.lcm));
            if dominated {
                continue;
            }
            let group: Vec<usize> = (0..cands.len()).filter(|&t| cands[t].0.lcm == p.lcm).collect();
            if group[0] != idx {
                continue;
            }
            if group.iter().any(|&t| cands[t].1) {
                continue;
            }
            keep.push(p.clone());
        }
        pairs.extend(keep);

        for i in 0..k_idx {
            if live[i] && basis[i][0].comp == lh.comp && lh.mono.divides(&basis[i][0].mono) {
                live[i] = false;
            }
        }
        basis.push(h);
        sugars.push(sugar);
        live.push(true);
    }

    /// Minimal, fully reduced, monic; sorted by leading term ascending.
    pub fn interreduce(&self, basis: Vec<Vector>) -> Result<Vec<Vector>> {
        let mut b: Vec<Vector> = basis.into_iter().filter(|v| !v.is_empty()).collect();
        b.sort_by(|x, y| self.cmp(&x[0], &y[0]));
        let mut minimal: Vec<Vector> = Vec::new();
        for v in b {
            let redundant = minimal
                .iter()
                .any(|g| g[0].comp == v[0].comp && g[0].mono.divides(&v[0].mono));
            if !redundant {
                minimal.push(v);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let mut r = self.reduce(minimal[i].clone(), &minimal, true, false, Some(i))?;
            // head is irreducible by the others, so only the tail can change
            self.make_monic(&mut r);
            out.push(r);
        }
        Ok(out)
    }
}
