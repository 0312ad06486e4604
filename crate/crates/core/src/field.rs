//! Exact coefficient fields: the rationals and prime fields 𝔽ₚ with p < 2⁶².
//!
//! Elements are plain values ([`FieldElem`]) in canonical form; all arithmetic
//! goes through the owning [`Field`], which knows the characteristic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime characteristic (exclusive).
pub const MAX_PRIME: u64 = 1 << 62;

/// Default characteristic used by the command line front end.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// An immutable coefficient field descriptor.
#[derive(Clone, Debug)]
pub struct Field {
    kind: FieldKind,
    p: u64,
    // Montgomery constants for odd p: -p^{-1} mod 2^64 and 2^128 mod p.
    n_prime: u64,
    r2: u64,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.p == other.p
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.p.hash(state);
    }
}

/// A field element in canonical form: a residue in `[0, p)` or a reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Mod(u64),
    Rat(BigRational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field {
    pub fn rationals() -> Self {
        Field {
            kind: FieldKind::Rationals,
            p: 0,
            n_prime: 0,
            r2: 0,
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidRing(format!(
                "characteristic {p} is not a prime below 2^62"
            )));
        }
        let (n_prime, r2) = if p % 2 == 1 {
            // Newton iteration for p^{-1} mod 2^64.
            let mut inv = 1u64;
            for _ in 0..6 {
                inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
            }
            let r = ((1u128 << 64) % p as u128) as u64;
            let r2 = ((r as u128 * r as u128) % p as u128) as u64;
            (inv.wrapping_neg(), r2)
        } else {
            (0, 0)
        };
        Ok(Field {
            kind: FieldKind::PrimeField,
            p,
            n_prime,
            r2,
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// 0 for the rationals, p for 𝔽ₚ.
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn is_prime_field(&self) -> bool {
        self.kind == FieldKind::PrimeField
    }

    pub fn zero(&self) -> FieldElem {
        match self.kind {
            FieldKind::PrimeField => FieldElem::Mod(0),
            FieldKind::Rationals => FieldElem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self.kind {
            FieldKind::PrimeField => FieldElem::Mod(1 % self.p),
            FieldKind::Rationals => FieldElem::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self.kind {
            FieldKind::PrimeField => FieldElem::Mod(n.rem_euclid(self.p as i64) as u64),
            FieldKind::Rationals => FieldElem::Rat(BigRational::from_integer(n.into())),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self.kind {
            FieldKind::PrimeField => {
                let r = n.mod_floor(&BigInt::from(self.p));
                FieldElem::Mod(r.to_u64().expect("residue fits"))
            }
            FieldKind::Rationals => FieldElem::Rat(BigRational::from_integer(n.clone())),
        }
    }

    /// `num / den`, failing when the denominator vanishes in this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        self.div(&n, &d)
    }

    /// Whether `a` is a canonical element of this field.
    pub fn contains(&self, a: &FieldElem) -> bool {
        match (self.kind, a) {
            (FieldKind::PrimeField, FieldElem::Mod(v)) => *v < self.p,
            (FieldKind::Rationals, FieldElem::Rat(_)) => true,
            _ => false,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.n_prime);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        if self.p & 1 == 1 {
            let t = self.redc(a as u128 * b as u128);
            self.redc(t as u128 * self.r2 as u128)
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    fn inv_mod(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(s0.rem_euclid(self.p as i128) as u64)
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Mod(v) => *v == 0,
            FieldElem::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Mod(v) => *v == 1,
            FieldElem::Rat(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Mod(x), FieldElem::Mod(y)) => {
                let s = x + y;
                FieldElem::Mod(if s >= self.p { s - self.p } else { s })
            }
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x + y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Mod(x), FieldElem::Mod(y)) => {
                FieldElem::Mod(if x >= y { x - y } else { x + self.p - y })
            }
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x - y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match a {
            FieldElem::Mod(0) => FieldElem::Mod(0),
            FieldElem::Mod(x) => FieldElem::Mod(self.p - x),
            FieldElem::Rat(x) => FieldElem::Rat(-x),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (a, b) {
            (FieldElem::Mod(x), FieldElem::Mod(y)) => FieldElem::Mod(self.mul_mod(*x, *y)),
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(x * y),
            _ => panic!("mixed field elements"),
        }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        match a {
            FieldElem::Mod(x) => self.inv_mod(*x).map(FieldElem::Mod).ok_or(Error::DivisionByZero),
            FieldElem::Rat(x) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElem::Rat(x.recip()))
                }
            }
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, &bi))
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Checked binary operation; rejects elements foreign to this field.
    pub fn apply(&self, op: FieldOp, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::MixedFields);
        }
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.div(a, b)?,
        })
    }

    /// Symmetric integer representative for prime fields, the fraction itself over ℚ.
    pub fn to_signed_string(&self, a: &FieldElem) -> String {
        match a {
            FieldElem::Mod(v) => {
                if *v > self.p / 2 {
                    format!("-{}", self.p - v)
                } else {
                    v.to_string()
                }
            }
            FieldElem::Rat(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
        }
    }

    /// Whether the printed form starts with a minus sign.
    pub fn is_negative_repr(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Mod(v) => *v > self.p / 2,
            FieldElem::Rat(q) => q.is_negative(),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField => write!(f, "F{}", self.p),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "Q" {
            return Ok(Field::rationals());
        }
        let p = s
            .strip_prefix('F')
            .and_then(|r| r.parse::<u64>().ok())
            .ok_or_else(|| serde::de::Error::custom(format!("bad field `{s}`")))?;
        Field::prime(p).map_err(serde::de::Error::custom)
    }
}
