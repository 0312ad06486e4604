use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::polyring::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::polyring::poly::Polynomial;

pub(crate) type Terms = Vec<(Monomial, FieldElem)>;

/// A polynomial ring k[x₁..xₙ] with a monomial order and positive variable
/// weights, optionally carrying a quotient ideal J (stored as its reduced
/// Gröbner basis) so that it stands for k[x₁..xₙ]/J.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    weights: Vec<u32>,
    quotient: Vec<Terms>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S], order: MonomialOrder) -> Result<Arc<Ring>> {
        let weights = vec![1; vars.len()];
        Self::with_weights(field, vars, order, &weights)
    }

    pub fn with_weights<S: AsRef<str>>(
        field: Field,
        vars: &[S],
        order: MonomialOrder,
        weights: &[u32],
    ) -> Result<Arc<Ring>> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables")));
        }
        if weights.len() != vars.len() || weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidRing("one positive weight per variable".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring {
            field,
            vars,
            order,
            weights: weights.to_vec(),
            quotient: Vec::new(),
        }))
    }

    /// The ring modulo the ideal generated by `gens` (on top of any existing quotient).
    pub fn quotient_by(self: &Arc<Ring>, gens: &[Polynomial]) -> Result<Arc<Ring>> {
        for g in gens {
            if !self.same(g.ring()) {
                return Err(Error::MixedRings);
            }
        }
        let base = self.base();
        let mut all: Vec<Polynomial> = self.quotient_polys(&base);
        all.extend(gens.iter().map(|g| g.with_ring(&base)));
        let gb = crate::groebner::ideal_gb(&base, &all)?;
        if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Err(Error::InvalidRing("quotient by the unit ideal".into()));
        }
        let mut r = (**self).clone();
        r.quotient = gb.into_iter().map(|g| g.into_terms()).collect();
        Ok(Arc::new(r))
    }

    /// The ambient polynomial ring (quotient dropped).
    pub fn base(self: &Arc<Ring>) -> Arc<Ring> {
        if self.quotient.is_empty() {
            return self.clone();
        }
        let mut r = (**self).clone();
        r.quotient.clear();
        Arc::new(r)
    }

    pub fn has_quotient(&self) -> bool {
        !self.quotient.is_empty()
    }

    /// Reduced Gröbner basis of the quotient ideal, as polynomials over `ring`.
    pub fn quotient_polys(&self, ring: &Arc<Ring>) -> Vec<Polynomial> {
        self.quotient
            .iter()
            .map(|t| Polynomial::from_sorted_terms(ring, t.clone()))
            .collect()
    }

    pub fn same(&self, other: &Ring) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, &self.weights)
    }

    #[inline]
    pub fn degree_of(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, v) in self.vars.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(v.clone()),
                e => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn poly(self: &Arc<Ring>, text: &str) -> Result<Polynomial> {
        crate::polyring::parse::parse_polynomial(text, self)
    }

    pub fn var(self: &Arc<Ring>, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(i), self.field.one())
    }

    pub fn vars_as_polys(self: &Arc<Ring>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            if self.weights[i] != 1 {
                write!(f, ":{}", self.weights[i])?;
            }
        }
        write!(f, "]")?;
        if !self.quotient.is_empty() {
            let parts: Vec<String> = self
                .quotient
                .iter()
                .map(|t| crate::polyring::poly::format_terms(self, t))
                .collect();
            write!(f, "/({})", parts.join(", "))?;
        }
        if self.order == MonomialOrder::Lex {
            write!(f, ":lex")?;
        }
        Ok(())
    }
}
