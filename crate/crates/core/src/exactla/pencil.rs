//! Rank conditions on matrices whose entries are forms in parameters α.
//!
//! A [`FormMatrix`] is `Σ_e α^e C_e` over monomials `e` of a fixed degree.
//! The questions asked are whether the rank stays at least `target` for every
//! nonzero α over the algebraic closure, and what the generic rank is.

use std::collections::HashSet;

use malachite_q::Rational;
use serde::Serialize;

use super::field::{Arith, FieldError, FieldSpec, Scalar};
use super::groebner::{BudgetExceeded, Groebner};
use super::mat::{with_arith, Mat, Store};
use super::poly::{multi_det, Mono, MultiPoly, UniPoly};

/// A point where a rank condition fails, or a description of one when no
/// rational point is available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Point(Vec<Scalar>),
    Algebraic(String),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Point(v) => {
                let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            Witness::Algebraic(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankCheck {
    Holds,
    Fails(Witness),
}

impl RankCheck {
    pub fn holds(&self) -> bool {
        matches!(self, RankCheck::Holds)
    }
}

/// Limits for the multivariate minor certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertBudget {
    pub spolys: usize,
    pub minors: usize,
    /// Largest minor size (hence form degree) for which minors are expanded.
    pub max_minor_size: usize,
}

impl Default for CertBudget {
    fn default() -> Self {
        CertBudget { spolys: 2000, minors: 400, max_minor_size: 10 }
    }
}

/// Matrix of homogeneous forms of one degree in `nvars` parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    field: FieldSpec,
    nvars: usize,
    degree: u32,
    rows: usize,
    cols: usize,
    terms: Vec<(Mono, Mat)>,
}

impl FormMatrix {
    /// The identity as a degree-0 form.
    pub fn identity(field: FieldSpec, nvars: usize, n: usize) -> FormMatrix {
        FormMatrix {
            field,
            nvars,
            degree: 0,
            rows: n,
            cols: n,
            terms: vec![(Mono::one(nvars), Mat::identity(field, n))],
        }
    }

    /// `Σ_s α_s · mats[s]`.
    pub fn linear(mats: &[Mat]) -> FormMatrix {
        let first = mats.first().expect("at least one coefficient matrix");
        let nvars = mats.len();
        for m in mats {
            assert_eq!(m.shape(), first.shape(), "coefficient shapes differ");
        }
        FormMatrix {
            field: first.field(),
            nvars,
            degree: 1,
            rows: first.rows(),
            cols: first.cols(),
            terms: mats.iter().enumerate().map(|(s, m)| (Mono::var(nvars, s), m.clone())).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn terms(&self) -> &[(Mono, Mat)] {
        &self.terms
    }

    /// Matrix product `self · o`; degrees add.
    pub fn mul(&self, o: &FormMatrix) -> FormMatrix {
        assert_eq!(self.cols, o.rows, "form matrix product shape");
        assert_eq!(self.nvars, o.nvars, "parameter count");
        let mut acc: Vec<(Mono, Mat)> = Vec::new();
        for (m, a) in &self.terms {
            for (n, b) in &o.terms {
                let mono = m.mul(n);
                let prod = a.mul(b);
                match acc.iter_mut().find(|(k, _)| *k == mono) {
                    Some((_, c)) => *c = c.add(&prod),
                    None => acc.push((mono, prod)),
                }
            }
        }
        acc.retain(|(_, c)| !c.is_zero());
        acc.sort_by(|x, y| y.0.cmp(&x.0));
        FormMatrix {
            field: self.field,
            nvars: self.nvars,
            degree: self.degree + o.degree,
            rows: self.rows,
            cols: o.cols,
            terms: acc,
        }
    }

    pub fn eval(&self, alpha: &[Scalar]) -> Mat {
        assert_eq!(alpha.len(), self.nvars, "parameter vector length");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, self.cols);
        for (m, c) in &self.terms {
            let mut w = f.one();
            for (x, e) in alpha.iter().zip(&m.0) {
                w = f.mul(&w, &f.pow(x, *e));
            }
            if !f.is_zero(&w) {
                out = out.add(&c.scale(&w));
            }
        }
        out
    }

    pub fn convert(&self, target: FieldSpec) -> Result<FormMatrix, FieldError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.convert(target)?)))
            .collect::<Result<Vec<_>, FieldError>>()?;
        Ok(FormMatrix { field: target, terms, ..self.clone() })
    }

    /// For two parameters: coefficient matrices of `t^k` in `self(1, t)`.
    fn dehomogenized(&self) -> Vec<Mat> {
        assert_eq!(self.nvars, 2, "two parameters expected");
        let d = self.degree as usize;
        let mut out = vec![Mat::zeros(self.field, self.rows, self.cols); d + 1];
        for (m, c) in &self.terms {
            out[m.0[1] as usize] = c.clone();
        }
        out
    }

    /// Entry `(i, j)` as a rational polynomial.
    fn entry_poly(&self, i: usize, j: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Scalar::Q(x) = c.get(i, j) {
                p = p.add(&MultiPoly::term(m.clone(), x));
            } else {
                panic!("polynomial entries require rational coefficients");
            }
        }
        p
    }
}

fn poly_matrix<A: Store>(a: A, coeffs: &[Mat], rows: usize, cols: usize) -> Vec<Vec<UniPoly<A>>> {
    let typed: Vec<&[A::E]> = coeffs.iter().map(|c| c.typed(a)).collect();
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| UniPoly::from_coeffs_in(a, typed.iter().map(|c| c[i * cols + j].clone()).collect()))
                .collect()
        })
        .collect()
}

/// Fraction-free elimination over `A[t]` with full pivoting. Returns the
/// pivots; pivot `k` is, up to sign, a `(k+1)`-minor of the input.
/// `rot` perturbs the tie-breaking so repeated calls find different minors.
fn bareiss_pivots<A: Arith>(mut m: Vec<Vec<UniPoly<A>>>, stop_at: usize, rot: usize) -> Vec<UniPoly<A>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots: Vec<UniPoly<A>> = Vec::new();
    let mut prev: Option<UniPoly<A>> = None;
    for k in 0..stop_at.min(rows).min(cols) {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if let Some(d) = m[i][j].degree() {
                    let key = ((i + rot) % rows, (j + rot.wrapping_mul(7)) % cols);
                    let cand = (d, key.0 * cols + key.1, i, j);
                    if best.map_or(true, |b| (cand.0, cand.1) < (b.0, b.1)) {
                        best = Some(cand);
                    }
                }
            }
        }
        let Some((_, _, pi, pj)) = best else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = match &prev {
                    Some(p) => num.div_exact(p),
                    None => num,
                };
            }
        }
        prev = Some(m[k][k].clone());
        pivots.push(m[k][k].clone());
    }
    pivots
}

/// Rank of `m` over `A[t]/(f)` for squarefree `f`, split into coprime pieces
/// of `f` on whose roots the rank is constant.
fn rank_pieces<A: Arith>(m: &[Vec<UniPoly<A>>], f: UniPoly<A>) -> Vec<(UniPoly<A>, usize)> {
    let mut work = vec![f];
    let mut out = Vec::new();
    while let Some(f) = work.pop() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        match rank_mod(m, &f) {
            Ok(r) => out.push((f, r)),
            Err(g) => {
                let h = f.div_exact(&g).monic();
                work.push(g);
                work.push(h);
            }
        }
    }
    out
}

/// Gaussian elimination modulo `f`; `Err` carries a proper factor of `f`
/// exposed by a zero divisor.
fn rank_mod<A: Arith>(m: &[Vec<UniPoly<A>>], f: &UniPoly<A>) -> Result<usize, UniPoly<A>> {
    let mut w: Vec<Vec<UniPoly<A>>> = m.iter().map(|r| r.iter().map(|e| e.rem(f)).collect()).collect();
    let rows = w.len();
    let cols = w.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !w[i][c].is_zero()) else {
            continue;
        };
        let (g, s, _) = w[p][c].ext_gcd(f);
        if !g.is_unit() {
            return Err(g);
        }
        w.swap(rank, p);
        let inv = s.rem(f);
        for j in c..cols {
            w[rank][j] = w[rank][j].mul(&inv).rem(f);
        }
        for i in rank + 1..rows {
            if w[i][c].is_zero() {
                continue;
            }
            let factor = w[i][c].clone();
            for j in c..cols {
                let sub = factor.mul(&w[rank][j]);
                w[i][j] = w[i][j].sub(&sub).rem(f);
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// A point `(1, t)` with `f(t) = 0`, rational when possible.
fn witness_from_piece<A: Store>(f: &UniPoly<A>) -> Witness {
    let a = f.arith();
    if f.degree() == Some(1) {
        let c = f.coeffs();
        let t = a.neg(&a.mul(&c[0], &a.inv(&c[1])));
        return Witness::Point(vec![a.to_scalar(&a.one()), a.to_scalar(&t)]);
    }
    let roots: Vec<Scalar> = match a.to_scalar(&a.one()) {
        Scalar::Q(_) => {
            let q = UniPoly::from_coeffs(f.coeffs().iter().map(|c| a.to_scalar(c).as_rational().unwrap().clone()).collect());
            q.rational_roots().unwrap_or_default().into_iter().map(Scalar::Q).collect()
        }
        Scalar::Fp(_) => {
            let p = match a.to_scalar(&a.neg(&a.one())) {
                Scalar::Fp(x) => x + 1,
                Scalar::Q(_) => unreachable!(),
            };
            (0..p).filter(|x| a.is_zero(&f.eval(&a.from_i64(*x as i64)))).map(Scalar::Fp).collect()
        }
    };
    match roots.into_iter().next() {
        Some(t) => Witness::Point(vec![a.to_scalar(&a.one()), t]),
        None => Witness::Algebraic(format!("alpha = (1, t) with {} = 0", f.to_string_in("t"))),
    }
}

/// Number of additional pivot-selected minors tried before splitting.
const EXTRA_MINORS: usize = 6;

/// Exact decision for two parameters: is the rank at least `target` at every
/// nonzero α over the algebraic closure of the field?
///
/// All finite rank drops of `M(1, t)` are roots of the gcd of its
/// `target`-minors. Minors found by pivoting are folded into a running gcd
/// that usually becomes constant after one or two. Otherwise the remaining
/// candidate roots are resolved by elimination modulo the gcd, splitting it
/// whenever a zero divisor shows up. The point `(0, 1)` is checked directly.
pub fn full_rank_r2(fm: &FormMatrix, target: usize) -> RankCheck {
    assert_eq!(fm.nvars, 2, "two parameters expected");
    let f = fm.field;
    if target == 0 {
        return RankCheck::Holds;
    }
    if target > fm.rows.min(fm.cols) {
        return RankCheck::Fails(Witness::Point(vec![f.one(), f.zero()]));
    }
    let coeffs = fm.dehomogenized();
    if coeffs[fm.degree as usize].rank() < target {
        return RankCheck::Fails(Witness::Point(vec![f.zero(), f.one()]));
    }
    with_arith!(f, a => {
        let m = poly_matrix(a, &coeffs, fm.rows, fm.cols);
        let piv = bareiss_pivots(m.clone(), target, 0);
        if piv.len() < target {
            // Generic rank is too small, so every point fails.
            return RankCheck::Fails(Witness::Point(vec![f.one(), f.zero()]));
        }
        let mut g = piv[target - 1].monic();
        let mut rot = 1;
        while !g.is_unit() && rot <= EXTRA_MINORS {
            let p = bareiss_pivots(m.clone(), target, rot);
            g = g.gcd(&p[target - 1]);
            rot += 1;
        }
        if g.is_unit() {
            return RankCheck::Holds;
        }
        for (piece, r) in rank_pieces(&m, g.squarefree()) {
            if r < target {
                return RankCheck::Fails(witness_from_piece(&piece));
            }
        }
        RankCheck::Holds
    })
}

/// `rank(α·a + β·b) ≥ target` for every nonzero `(α, β)` over the closure.
pub fn pencil_full_rank_r2(a: &Mat, b: &Mat, target: usize) -> bool {
    full_rank_r2(&FormMatrix::linear(&[a.clone(), b.clone()]), target).holds()
}

/// Rank over the field of rational functions in α.
///
/// For two parameters this is exact over any field. For more, the maximum
/// over a grid large enough that no nonzero minor can vanish on all of it;
/// the boolean reports whether the grid fit in the field.
pub fn generic_rank(fm: &FormMatrix) -> (usize, bool) {
    let f = fm.field;
    let full = fm.rows.min(fm.cols);
    if full == 0 || fm.terms.is_empty() {
        return (0, true);
    }
    if fm.nvars == 1 {
        return (fm.terms[0].1.rank(), true);
    }
    if fm.nvars == 2 {
        return with_arith!(f, a => {
            let m = poly_matrix(a, &fm.dehomogenized(), fm.rows, fm.cols);
            (bareiss_pivots(m, full, 0).len(), true)
        });
    }
    // Dehomogenize at α_1 = 1 and sweep a grid S^(r-1), |S| = bound + 1.
    let bound = fm.degree as usize * full;
    let size = bound + 1;
    let exact = f.modulus().map_or(true, |p| p as usize >= size);
    let size = f.modulus().map_or(size, |p| size.min(p as usize));
    let k = fm.nvars - 1;
    let mut best = 0;
    let mut idx = vec![0usize; k];
    loop {
        let mut alpha = vec![f.one()];
        alpha.extend(idx.iter().map(|&x| f.from_i64(x as i64)));
        best = best.max(fm.eval(&alpha).rank());
        if best == full {
            return (best, true);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return (best, exact);
            }
            idx[pos] += 1;
            if idx[pos] < size {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Next k-subset of 0..n in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Certificate over the rationals via the ideal of `target`-minors: `Ok(true)`
/// if its zero set is only the origin, `Ok(false)` if a nonzero common zero
/// exists over the closure.
pub fn full_rank_groebner(fm: &FormMatrix, target: usize, budget: CertBudget) -> Result<bool, BudgetExceeded> {
    assert!(fm.field.is_rational(), "minor certificates need rational coefficients");
    if target == 0 {
        return Ok(true);
    }
    if target > fm.rows.min(fm.cols) {
        return Ok(false);
    }
    if target > budget.max_minor_size {
        return Err(BudgetExceeded { what: "rows in a minor", limit: budget.max_minor_size });
    }
    let entries: Vec<Vec<MultiPoly>> =
        (0..fm.rows).map(|i| (0..fm.cols).map(|j| fm.entry_poly(i, j)).collect()).collect();
    let minor = |rs: &[usize], cs: &[usize]| -> MultiPoly {
        let sub: Vec<Vec<MultiPoly>> = rs.iter().map(|&i| cs.iter().map(|&j| entries[i][j].clone()).collect()).collect();
        multi_det(fm.nvars, &sub)
    };
    // Seed with minors that are nonzero at a few sample points.
    let mut seeds = Vec::new();
    for s in 0..4i64 {
        let alpha: Vec<Scalar> = (0..fm.nvars as i64).map(|i| Scalar::Q(Rational::from(1 + (i + s) % fm.nvars as i64 + s * i))).collect();
        let m = fm.eval(&alpha);
        let (_, cols) = m.rref();
        let (_, rows) = m.transpose().rref();
        if cols.len() >= target {
            seeds.push((rows[..target].to_vec(), cols[..target].to_vec()));
        }
    }
    let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    let mut gb = Groebner::new(fm.nvars, budget.spolys);
    let mut used = 0;
    let mut feed = |rs: Vec<usize>, cs: Vec<usize>, gb: &mut Groebner| -> Result<Option<bool>, BudgetExceeded> {
        if !seen.insert((rs.clone(), cs.clone())) {
            return Ok(None);
        }
        if used == budget.minors {
            return Err(BudgetExceeded { what: "minors", limit: budget.minors });
        }
        used += 1;
        let p = minor(&rs, &cs);
        if !p.is_zero() && gb.add(&p) && gb.complete_until(Groebner::has_pure_powers)? {
            return Ok(Some(true));
        }
        Ok(None)
    };
    for (rs, cs) in seeds {
        if let Some(v) = feed(rs, cs, &mut gb)? {
            return Ok(v);
        }
    }
    let mut rs: Vec<usize> = (0..target).collect();
    loop {
        let mut cs: Vec<usize> = (0..target).collect();
        loop {
            if let Some(v) = feed(rs.clone(), cs.clone(), &mut gb)? {
                return Ok(v);
            }
            if !next_combination(&mut cs, fm.cols) {
                break;
            }
        }
        if !next_combination(&mut rs, fm.rows) {
            break;
        }
    }
    gb.complete()?;
    Ok(gb.has_pure_powers())
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn spec_pencils() {
        let a = Mat::from_rows(Q, &[vec![1, 0]]);
        let b = Mat::from_rows(Q, &[vec![0, 1]]);
        assert!(pencil_full_rank_r2(&a, &b, 1));
        let a = Mat::from_rows(Q, &[vec![1, 0], vec![0, 0]]);
        let b = Mat::from_rows(Q, &[vec![0, 0], vec![0, 1]]);
        assert!(!pencil_full_rank_r2(&a, &b, 2));
        let a = Mat::identity(Q, 2);
        let b = Mat::from_rows(Q, &[vec![0, 1], vec![0, 0]]);
        assert!(!pencil_full_rank_r2(&a, &b, 2));
    }

    #[test]
    fn irrational_drop_is_found() {
        // det(αI + βJ) = α² + 2β² has no rational zero but complex ones.
        let a = Mat::identity(Q, 2);
        let b = Mat::from_rows(Q, &[vec![0, -2], vec![1, 0]]);
        match full_rank_r2(&FormMatrix::linear(&[a.clone(), b.clone()]), 2) {
            RankCheck::Fails(Witness::Algebraic(s)) => assert!(s.contains("t^2")),
            other => panic!("unexpected {other:?}"),
        }
        // Over F_11, 1 + 2t² vanishes at t = 4.
        let f = FieldSpec::Prime(11);
        let fm = FormMatrix::linear(&[a.convert(f).unwrap(), b.convert(f).unwrap()]);
        assert!(matches!(full_rank_r2(&fm, 2), RankCheck::Fails(Witness::Point(_))));
    }

    #[test]
    fn kronecker_type_pencil_holds() {
        // Multiplication by αx + βy from degree 1 to degree 2 in two variables.
        let a = Mat::from_rows(Q, &[vec![1, 0], vec![0, 1], vec![0, 0]]);
        let b = Mat::from_rows(Q, &[vec![0, 0], vec![1, 0], vec![0, 1]]);
        let fm = FormMatrix::linear(&[a, b]);
        assert_eq!(full_rank_r2(&fm, 2), RankCheck::Holds);
        assert!(full_rank_groebner(&fm, 2, CertBudget::default()).unwrap());
        assert_eq!(generic_rank(&fm), (2, true));
    }

    #[test]
    fn groebner_detects_drop() {
        let a = Mat::from_rows(Q, &[vec![1, 0], vec![0, 0]]);
        let b = Mat::from_rows(Q, &[vec![0, 0], vec![0, 1]]);
        let c = Mat::zeros(Q, 2, 2);
        let fm = FormMatrix::linear(&[a, b, c]);
        assert!(!full_rank_groebner(&fm, 2, CertBudget::default()).unwrap());
        assert_eq!(generic_rank(&fm), (2, true));
    }

    #[test]
    fn products_of_forms() {
        let a = Mat::from_rows(Q, &[vec![1], vec![0]]);
        let b = Mat::from_rows(Q, &[vec![0], vec![1]]);
        let l0 = FormMatrix::linear(&[a, b]);
        let c = Mat::from_rows(Q, &[vec![1, 0]]);
        let d = Mat::from_rows(Q, &[vec![0, 1]]);
        let l1 = FormMatrix::linear(&[c, d]);
        // α² + β² as a 1x1 degree-2 form.
        let sq = l1.mul(&l0);
        assert_eq!(sq.degree(), 2);
        assert!(!full_rank_r2(&sq, 1).holds());
        let alpha = [Q.from_i64(2), Q.from_i64(3)];
        assert_eq!(sq.eval(&alpha).get(0, 0), Q.from_i64(13));
    }
}
