//! Univariate and multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use malachite_base::num::arithmetic::traits::{Gcd, Lcm};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::rounding_modes::RoundingMode;
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
use malachite_q::Rational;

use super::field::{Arith, Fa, Qa};

/// Dense univariate polynomial over a typed field, coefficients from degree
/// 0 upward, trimmed.
#[derive(Clone)]
pub struct UniPoly<A: Arith = Qa> {
    a: A,
    coeffs: Vec<A::E>,
}

impl<A: Arith> PartialEq for UniPoly<A> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl<A: Arith> Eq for UniPoly<A> {}

impl<A: Arith> UniPoly<A> {
    pub fn zero_in(a: A) -> Self {
        UniPoly { a, coeffs: Vec::new() }
    }

    pub fn constant_in(a: A, c: A::E) -> Self {
        UniPoly::from_coeffs_in(a, vec![c])
    }

    pub fn one_in(a: A) -> Self {
        UniPoly::constant_in(a, a.one())
    }

    /// The polynomial `t`.
    pub fn t_in(a: A) -> Self {
        UniPoly::from_coeffs_in(a, vec![a.zero(), a.one()])
    }

    pub fn from_coeffs_in(a: A, mut coeffs: Vec<A::E>) -> Self {
        while coeffs.last().is_some_and(|c| a.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { a, coeffs }
    }

    pub fn arith(&self) -> A {
        self.a
    }

    pub fn coeffs(&self) -> &[A::E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn lead(&self) -> Option<&A::E> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let a = self.a;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = a.zero();
        UniPoly::from_coeffs_in(
            a,
            (0..n)
                .map(|i| a.add(self.coeffs.get(i).unwrap_or(&z), o.coeffs.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly { a: self.a, coeffs: self.coeffs.iter().map(|c| self.a.neg(c)).collect() }
    }

    pub fn scale(&self, c: &A::E) -> Self {
        UniPoly::from_coeffs_in(self.a, self.coeffs.iter().map(|x| self.a.mul(x, c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = self.a;
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero_in(a);
        }
        let mut out = vec![a.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if a.is_zero(x) {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                a.add_mul_assign(&mut out[i + j], x, y);
            }
        }
        UniPoly::from_coeffs_in(a, out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let a = self.a;
        let dd = d.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (UniPoly::zero_in(a), self.clone());
        }
        let lead_inv = a.inv(d.lead().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quo = vec![a.zero(); rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = a.mul(&rem[k + dd], &lead_inv);
            if !a.is_zero(&c) {
                for (j, b) in d.coeffs.iter().enumerate() {
                    a.sub_mul_assign(&mut rem[k + j], &c, b);
                }
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::from_coeffs_in(a, quo), UniPoly::from_coeffs_in(a, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.a.inv(l)),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut x, mut y) = (self.monic(), o.monic());
        while !y.is_zero() {
            let r = x.rem(&y).monic();
            x = y;
            y = r;
        }
        x
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let a = self.a;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UniPoly::one_in(a), UniPoly::zero_in(a));
        let (mut t0, mut t1) = (UniPoly::zero_in(a), UniPoly::one_in(a));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = a.inv(&l);
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let a = self.a;
        UniPoly::from_coeffs_in(
            a,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| a.mul(c, &a.from_i64(i as i64)))
                .collect(),
        )
    }

    /// Product of the distinct irreducible factors, monic. Also correct in
    /// positive characteristic over a prime field.
    pub fn squarefree(&self) -> Self {
        let a = self.a;
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let d = self.derivative();
        if d.is_zero() {
            // self = h(t^p) = h(t)^p over F_p.
            let p = self.characteristic_step();
            let h: Vec<A::E> = self.coeffs.iter().step_by(p).cloned().collect();
            return UniPoly::from_coeffs_in(a, h).squarefree();
        }
        let g = self.gcd(&d);
        let h = self.div_exact(&g).monic();
        let rg = g.squarefree();
        h.mul(&rg).div_exact(&h.gcd(&rg)).monic()
    }

    /// Smallest `k ≥ 1` with `k = 0` in the field, for a nonconstant
    /// polynomial with vanishing derivative.
    fn characteristic_step(&self) -> usize {
        let a = self.a;
        (2..).find(|&k| a.is_zero(&a.from_i64(k as i64))).expect("positive characteristic")
    }

    pub fn eval(&self, x: &A::E) -> A::E {
        let a = self.a;
        let mut acc = a.zero();
        for c in self.coeffs.iter().rev() {
            acc = a.add(&a.mul(&acc, x), c);
        }
        acc
    }

    /// Unique polynomial of degree < xs.len() through the given values.
    pub fn interpolate_in(a: A, xs: &[A::E], ys: &[A::E]) -> Self {
        assert_eq!(xs.len(), ys.len(), "interpolation data length");
        // Newton divided differences.
        let n = xs.len();
        let mut dd = ys.to_vec();
        for k in 1..n {
            for i in (k..n).rev() {
                let num = a.sub(&dd[i], &dd[i - 1]);
                let den = a.sub(&xs[i], &xs[i - k]);
                dd[i] = a.mul(&num, &a.inv(&den));
            }
        }
        let mut p = UniPoly::zero_in(a);
        for i in (0..n).rev() {
            p = p.mul(&UniPoly::from_coeffs_in(a, vec![a.neg(&xs[i]), a.one()]));
            p = p.add(&UniPoly::constant_in(a, dd[i].clone()));
        }
        p
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let a = self.a;
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = a.to_scalar(c).to_string();
            let term = if mono.is_empty() {
                cs
            } else if *c == a.one() {
                mono
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl UniPoly<Qa> {
    pub fn zero() -> Self {
        UniPoly::zero_in(Qa)
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::constant_in(Qa, c)
    }

    pub fn t() -> Self {
        UniPoly::t_in(Qa)
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        UniPoly::from_coeffs_in(Qa, coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Self {
        UniPoly::interpolate_in(Qa, xs, ys)
    }

    /// Primitive integer polynomial proportional to `self`.
    pub fn integer_coeffs(&self) -> Vec<Integer> {
        let den = self
            .coeffs
            .iter()
            .fold(Natural::ONE, |acc, c| acc.lcm(c.to_denominator()));
        let d = Rational::from(den);
        let ints: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| Integer::rounding_from(c * &d, RoundingMode::Exact).0)
            .collect();
        let g = ints.iter().fold(Natural::ZERO, |acc, x| gcd_nat(acc, x.unsigned_abs_ref().clone()));
        if g == 0u32 {
            return ints;
        }
        let gi = Integer::from(g);
        ints.into_iter().map(|x| x / &gi).collect()
    }

    /// Distinct rational roots, ascending. Returns `None` when a coefficient
    /// is too large for trial-division factoring.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let sf = self.squarefree();
        if sf.degree().unwrap_or(0) == 0 {
            return Some(Vec::new());
        }
        let mut roots = Vec::new();
        let mut p = sf;
        if p.coeffs[0] == 0u32 {
            roots.push(Rational::ZERO);
            p = UniPoly::from_coeffs(p.coeffs[1..].to_vec());
        }
        if p.degree().unwrap_or(0) > 0 {
            let ints = p.integer_coeffs();
            let a0 = ints[0].unsigned_abs_ref().clone();
            let an = ints.last().unwrap().unsigned_abs_ref().clone();
            let num_divs = divisors(&a0)?;
            let den_divs = divisors(&an)?;
            for d in &num_divs {
                for e in &den_divs {
                    for sign in [1i64, -1] {
                        let cand = Rational::from(sign) * Rational::from(d.clone()) / Rational::from(e.clone());
                        if p.eval(&cand) == 0u32 && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

impl UniPoly<Fa> {
    /// Roots in the prime field by exhaustive evaluation.
    pub fn prime_field_roots(&self) -> Vec<u64> {
        (0..self.a.0).filter(|x| self.a.is_zero(&self.eval(x))).collect()
    }
}

impl<A: Arith> fmt::Display for UniPoly<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl<A: Arith> fmt::Debug for UniPoly<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

fn gcd_nat(a: Natural, b: Natural) -> Natural {
    a.gcd(b)
}

const DIVISOR_LIMIT: u64 = 1 << 40;

/// Positive divisors by trial division; `None` if `x` is too large.
fn divisors(x: &Natural) -> Option<Vec<Natural>> {
    let v = u64::try_from(x).ok()?;
    if v == 0 || v > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(Natural::from(d));
            if d * d != v {
                out.push(Natural::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Exponent vector ordered by degree reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Mono {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Mono {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        Mono(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^k`, k ≥ 1.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut nz = self.0.iter().enumerate().filter(|(_, e)| **e > 0);
        let first = nz.next()?;
        nz.next().is_none().then_some(first.0)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0).rev() {
                if a != b {
                    // Smaller exponent in the last differing variable wins.
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> MultiPoly {
        MultiPoly::term(Mono::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::term(Mono::var(nvars, i), Rational::ONE)
    }

    pub fn term(m: Mono, c: Rational) -> MultiPoly {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if c != 0u32 {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(Mono(e), c);
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> MultiPoly {
        let n = coeffs.len();
        MultiPoly::from_terms(n, coeffs.iter().enumerate().map(|(i, c)| (Mono::var(n, i).0, c.clone())))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c == 0u32 {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if *v == 0u32 {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if *c == 0u32 {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Mono, c: &Rational) -> MultiPoly {
        if *c == 0u32 {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        let mut p = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                p.add_term(m.mul(n), c * d);
            }
        }
        p
    }

    /// `self -= c·mono·o` in place.
    pub fn sub_mul_term_assign(&mut self, mono: &Mono, c: &Rational, o: &MultiPoly) {
        for (m, x) in &o.terms {
            self.add_term(m.mul(mono), -(c * x));
        }
    }

    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Rational::ONE / c)),
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.nvars, "evaluation point length");
        let mut acc = Rational::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, e) in x.iter().zip(&m.0) {
                for _ in 0..*e {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading().expect("division by zero polynomial");
        let (dm, dc_inv) = (dm.clone(), Rational::ONE / dc);
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = c * &dc_inv;
            rem.sub_mul_term_assign(&qm, &qc, d);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Restriction to `x_last = 1` as a univariate polynomial in `x_0`;
    /// only meaningful for two variables.
    pub fn dehomogenize_first(&self) -> UniPoly {
        assert_eq!(self.nvars, 2, "two variables expected");
        let mut c = Vec::new();
        for (m, x) in &self.terms {
            let d = m.0[1] as usize;
            if c.len() <= d {
                c.resize(d + 1, Rational::ZERO);
            }
            c[d] += x;
        }
        UniPoly::from_coeffs(c)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { format!("a{}", i + 1) } else { format!("a{}^{}", i + 1, e) })
                .collect();
            let neg = *c < 0u32;
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (vars.is_empty(), mag == 1u32) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// Determinant of a square matrix of polynomials by fraction-free elimination.
pub fn multi_det(nvars: usize, m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::constant(nvars, Rational::ONE);
    }
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut sign = false;
    let mut prev = MultiPoly::constant(nvars, Rational::ONE);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return MultiPoly::zero(nvars);
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("fraction-free elimination divides exactly");
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}
