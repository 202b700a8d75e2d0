//! Ground fields: the rationals and prime fields `F_p` with `p >= 5`.
//!
//! Scalars are stored untyped in [`Scalar`]; arithmetic always goes through
//! the owning [`FieldSpec`], which knows the modulus. Hot loops use the typed
//! [`Arith`] kernels instead.

use std::fmt;
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::natural::Natural;
use malachite_q::Rational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is below the supported minimum 5")]
    ModulusTooSmall(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("{0} is not invertible modulo {1}")]
    NotReducible(String, u64),
}

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// A field element. The `Fp` payload is the canonical representative in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        if p < 5 {
            return Err(FieldError::ModulusTooSmall(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Rational::from(v)),
            FieldSpec::Prime(p) => Scalar::Fp(Fa(*p).from_i64(v)),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => *q == Rational::ZERO,
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => *q == Rational::ONE,
            Scalar::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(Fa(*p).add(x, y)),
            _ => mismatch(),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x - y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(Fa(*p).sub(x, y)),
            _ => mismatch(),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(Fa(*p).mul(x, y)),
            _ => mismatch(),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(Fa(*p).neg(x)),
            _ => mismatch(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Q(x)) => Scalar::Q(x.reciprocal()),
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(Fa(*p).inv(x)),
            _ => mismatch(),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Scalar, mut e: u32) -> Scalar {
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

    /// Parses `"a"`, `"a/b"` over the rationals, or an integer (reduced) over `F_p`.
    pub fn parse(&self, s: &str) -> Result<Scalar, FieldError> {
        let s = s.trim();
        match self {
            FieldSpec::Rationals => Rational::from_str(s)
                .map(Scalar::Q)
                .map_err(|_| FieldError::Parse(s.to_string())),
            FieldSpec::Prime(p) => {
                let v: i128 = s.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
                Ok(Scalar::Fp(v.rem_euclid(*p as i128) as u64))
            }
        }
    }

    /// Canonical text form: `"a"` or `"a/b"` for rationals, `0..p` for `F_p`.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Q(q) => q.to_string(),
            Scalar::Fp(v) => v.to_string(),
        }
    }

    /// Image of a rational in `F_p`; `None` when `p` divides the denominator.
    pub fn reduce_rational(p: u64, q: &Rational) -> Option<u64> {
        let pn = Natural::from(p);
        let den = u64::try_from(&(q.denominator_ref() % &pn)).ok()?;
        if den == 0 {
            return None;
        }
        let num = u64::try_from(&(q.numerator_ref() % &pn)).ok()?;
        let f = Fa(p);
        let mut v = f.mul(&num, &f.inv(&den));
        if *q < Rational::ZERO {
            v = f.neg(&v);
        }
        Some(v)
    }

    /// Maps a scalar of `self` into `target`. Rationals reduce modulo `p`
    /// (failing when `p` divides a denominator); `F_p` lifts to `0..p` in `Q`.
    pub fn convert(&self, a: &Scalar, target: FieldSpec) -> Result<Scalar, FieldError> {
        match (a, target) {
            (Scalar::Q(q), FieldSpec::Rationals) => Ok(Scalar::Q(q.clone())),
            (Scalar::Q(q), FieldSpec::Prime(p)) => FieldSpec::reduce_rational(p, q)
                .map(Scalar::Fp)
                .ok_or_else(|| FieldError::NotReducible(q.to_string(), p)),
            (Scalar::Fp(v), FieldSpec::Rationals) => Ok(Scalar::Q(Rational::from(*v))),
            (Scalar::Fp(v), FieldSpec::Prime(p)) => {
                if Some(p) == self.modulus() {
                    Ok(Scalar::Fp(*v))
                } else {
                    Ok(Scalar::Fp(v % p))
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Q(q) => s.serialize_str(&q.to_string()),
            Scalar::Fp(v) => s.serialize_u64(*v),
        }
    }
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp(_) => None,
        }
    }
}

#[cold]
fn mismatch() -> ! {
    panic!("scalar does not belong to the field in use")
}

/// Typed field arithmetic used by the matrix and sparse kernels.
pub trait Arith: Copy + Send + Sync {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn zero(self) -> Self::E;
    fn one(self) -> Self::E;
    fn from_i64(self, v: i64) -> Self::E;
    fn is_zero(self, a: &Self::E) -> bool;
    fn add(self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(self, a: &Self::E) -> Self::E;
    fn inv(self, a: &Self::E) -> Self::E;
    /// `a -= f * b`
    fn sub_mul_assign(self, a: &mut Self::E, f: &Self::E, b: &Self::E);
    /// `a += f * b`
    fn add_mul_assign(self, a: &mut Self::E, f: &Self::E, b: &Self::E);
    fn to_scalar(self, a: &Self::E) -> Scalar;
    fn from_scalar(self, s: &Scalar) -> Self::E;
}

/// Rational arithmetic.
#[derive(Clone, Copy, Debug)]
pub struct Qa;

/// Arithmetic modulo the contained prime.
#[derive(Clone, Copy, Debug)]
pub struct Fa(pub u64);

impl Arith for Qa {
    type E = Rational;
    fn zero(self) -> Rational {
        Rational::ZERO
    }
    fn one(self) -> Rational {
        Rational::ONE
    }
    fn from_i64(self, v: i64) -> Rational {
        Rational::from(v)
    }
    fn is_zero(self, a: &Rational) -> bool {
        *a == Rational::ZERO
    }
    fn add(self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(self, a: &Rational) -> Rational {
        -a
    }
    fn inv(self, a: &Rational) -> Rational {
        a.reciprocal()
    }
    fn sub_mul_assign(self, a: &mut Rational, f: &Rational, b: &Rational) {
        *a -= f * b;
    }
    fn add_mul_assign(self, a: &mut Rational, f: &Rational, b: &Rational) {
        *a += f * b;
    }
    fn to_scalar(self, a: &Rational) -> Scalar {
        Scalar::Q(a.clone())
    }
    fn from_scalar(self, s: &Scalar) -> Rational {
        match s {
            Scalar::Q(q) => q.clone(),
            Scalar::Fp(_) => mismatch(),
        }
    }
}

impl Arith for Fa {
    type E = u64;
    fn zero(self) -> u64 {
        0
    }
    fn one(self) -> u64 {
        1
    }
    fn from_i64(self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.0 as i128) as u64
    }
    fn is_zero(self, a: &u64) -> bool {
        *a == 0
    }
    fn add(self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn mul(self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(self, a: &u64) -> u64 {
        // Extended Euclid on signed 128-bit values.
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.0 as i128, *a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        assert!(r == 1, "inverse of zero modulo {}", self.0);
        t.rem_euclid(self.0 as i128) as u64
    }
    fn sub_mul_assign(self, a: &mut u64, f: &u64, b: &u64) {
        *a = self.sub(a, &self.mul(f, b));
    }
    fn add_mul_assign(self, a: &mut u64, f: &u64, b: &u64) {
        *a = self.add(a, &self.mul(f, b));
    }
    fn to_scalar(self, a: &u64) -> Scalar {
        Scalar::Fp(*a)
    }
    fn from_scalar(self, s: &Scalar) -> u64 {
        match s {
            Scalar::Fp(v) => *v,
            Scalar::Q(_) => mismatch(),
        }
    }
}
