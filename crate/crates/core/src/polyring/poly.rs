use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::polyring::monomial::Monomial;
use crate::polyring::ring::{Ring, Terms};

/// A sparse polynomial: terms sorted strictly descending in the ring's
/// monomial order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Terms,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring.same(&other.ring)
    }
}
impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn format_terms(ring: &Ring, terms: &[(Monomial, FieldElem)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let k = ring.field();
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let neg = k.is_negative_repr(c);
        let abs = if neg { k.neg(c) } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let cs = k.to_signed_string(&abs);
        if m.is_one() {
            out.push_str(&cs);
        } else {
            if !k.is_one(&abs) {
                out.push_str(&cs);
                out.push('*');
            }
            out.push_str(&ring.format_monomial(m));
        }
    }
    out
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElem) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn from_i64(ring: &Arc<Ring>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: FieldElem) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Terms) -> Self {
        terms.sort_by(|a, b| ring.cmp_mono(&b.0, &a.0));
        let k = ring.field();
        let mut out: Terms = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = k.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if k.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if k.is_zero(lc) {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Terms) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_mono(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Same terms, reinterpreted over another ring with the same variables and order.
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: self.terms.clone(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<FieldElem> {
        if self.is_zero() {
            Some(self.ring.field().zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(Monomial, FieldElem)> {
        self.terms.first().cloned()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Weighted degree of the leading monomial; `None` stands for −∞ (zero polynomial).
    pub fn degree(&self) -> Option<i64> {
        self.leading_monomial().map(|m| self.ring.degree_of(m))
    }

    /// Largest weighted degree among all terms.
    pub fn max_degree(&self) -> Option<i64> {
        self.terms.iter().map(|(m, _)| self.ring.degree_of(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.degree_of(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.sub(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        debug_assert!(self.ring.same(&other.ring));
        let k = self.ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.ring.cmp_mono(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { k.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        k.sub(&a[i].1, &b[j].1)
                    } else {
                        k.add(&a[i].1, &b[j].1)
                    };
                    if !k.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { k.neg(&t.1) } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        let k = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, k.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let k = self.ring.field();
        if k.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, k.mul(a, c))).collect(),
        }
    }

    /// Multiply by a single term `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Result<Self> {
        let k = self.ring.field();
        if k.is_zero(c) {
            return Ok(Self::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (a, b) in &self.terms {
            terms.push((a.mul(m)?, k.mul(b, c)));
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let k = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2)?, k.mul(c1, c2)));
            }
        }
        Ok(Self::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        if e > 0 && self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(Self::monomial(
                &self.ring,
                m.pow(e)?,
                self.ring.field().pow(c, e as u64),
            ));
        }
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Divide every coefficient by the leading one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if self.ring.field().is_one(c) => self.clone(),
            Some(c) => {
                let inv = self.ring.field().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Homogeneous component of weighted degree `d`.
    pub fn component(&self, d: i64) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.degree_of(m) == d)
                .cloned()
                .collect(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElem {
        self.terms
            .iter()
            .find(|(a, _)| a == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.ring, &self.terms))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
