//! Dense exact matrices.

use std::fmt;

use malachite_q::Rational;

use super::field::{Arith, Fa, FieldError, FieldSpec, Qa, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Q(Vec<Rational>),
    Fp(u64, Vec<u64>),
}

/// Typed access to [`Entries`] for a given arithmetic.
pub(crate) trait Store: Arith {
    fn slice(self, e: &Entries) -> &[Self::E];
    fn take(self, e: Entries) -> Vec<Self::E>;
    fn wrap(self, v: Vec<Self::E>) -> Entries;
}

impl Store for Qa {
    fn slice(self, e: &Entries) -> &[Rational] {
        match e {
            Entries::Q(v) => v,
            Entries::Fp(..) => panic!("expected rational entries"),
        }
    }
    fn take(self, e: Entries) -> Vec<Rational> {
        match e {
            Entries::Q(v) => v,
            Entries::Fp(..) => panic!("expected rational entries"),
        }
    }
    fn wrap(self, v: Vec<Rational>) -> Entries {
        Entries::Q(v)
    }
}

impl Store for Fa {
    fn slice(self, e: &Entries) -> &[u64] {
        match e {
            Entries::Fp(p, v) if *p == self.0 => v,
            _ => panic!("expected entries modulo {}", self.0),
        }
    }
    fn take(self, e: Entries) -> Vec<u64> {
        match e {
            Entries::Fp(p, v) if p == self.0 => v,
            _ => panic!("expected entries modulo {}", self.0),
        }
    }
    fn wrap(self, v: Vec<u64>) -> Entries {
        Entries::Fp(self.0, v)
    }
}

/// Runs `$body` with `$a` bound to the typed arithmetic of `$field`.
macro_rules! with_arith {
    ($field:expr, $a:ident => $body:expr) => {
        match $field {
            $crate::exactla::field::FieldSpec::Rationals => {
                let $a = $crate::exactla::field::Qa;
                $body
            }
            $crate::exactla::field::FieldSpec::Prime(p) => {
                let $a = $crate::exactla::field::Fa(p);
                $body
            }
        }
    };
}
pub(crate) use with_arith;

/// Dense row-major matrix over a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Entries,
}

impl Mat {
    pub(crate) fn from_typed<A: Store>(a: A, rows: usize, cols: usize, v: Vec<A::E>) -> Mat {
        debug_assert_eq!(v.len(), rows * cols);
        Mat {
            rows,
            cols,
            data: a.wrap(v),
        }
    }

    pub(crate) fn typed<A: Store>(&self, a: A) -> &[A::E] {
        a.slice(&self.data)
    }

    pub(crate) fn into_typed<A: Store>(self, a: A) -> Vec<A::E> {
        a.take(self.data)
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        with_arith!(field, a => Mat::from_typed(a, rows, cols, vec![a.zero(); rows * cols]))
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        with_arith!(field, a => {
            let mut v = vec![a.zero(); n * n];
            for i in 0..n {
                v[i * n + i] = a.one();
            }
            Mat::from_typed(a, n, n, v)
        })
    }

    /// Builds a matrix from row-major integer entries.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count");
        with_arith!(field, a => Mat::from_typed(a, rows, cols, entries.iter().map(|&x| a.from_i64(x)).collect()))
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<i64> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().copied()
            })
            .collect();
        Mat::from_i64(field, rows.len(), cols, &flat)
    }

    pub fn from_scalars(field: FieldSpec, rows: usize, cols: usize, entries: &[Scalar]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count");
        with_arith!(field, a => Mat::from_typed(a, rows, cols, entries.iter().map(|s| a.from_scalar(s)).collect()))
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut v = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                v.push(f(i, j));
            }
        }
        Mat::from_scalars(field, rows, cols, &v)
    }

    pub fn field(&self) -> FieldSpec {
        match &self.data {
            Entries::Q(_) => FieldSpec::Rationals,
            Entries::Fp(p, _) => FieldSpec::Prime(*p),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        with_arith!(self.field(), a => a.to_scalar(&self.typed(a)[i * self.cols + j]))
    }

    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        let idx = i * self.cols + j;
        match (&mut self.data, s) {
            (Entries::Q(v), Scalar::Q(q)) => v[idx] = q.clone(),
            (Entries::Fp(_, v), Scalar::Fp(x)) => v[idx] = *x,
            _ => panic!("scalar does not belong to the matrix field"),
        }
    }

    pub fn is_zero(&self) -> bool {
        with_arith!(self.field(), a => self.typed(a).iter().all(|x| a.is_zero(x)))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        with_arith!(self.field(), a => {
            let v = self.typed(a);
            let mut out = Vec::with_capacity(v.len());
            for j in 0..self.cols {
                for i in 0..self.rows {
                    out.push(v[i * self.cols + j].clone());
                }
            }
            Mat::from_typed(a, self.cols, self.rows, out)
        })
    }

    fn same_field(&self, other: &Mat) {
        assert_eq!(self.field(), other.field(), "field mismatch");
    }

    /// Matrix product. Panics on shape or field mismatch.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "product shape {:?} * {:?}", self.shape(), other.shape());
        self.same_field(other);
        with_arith!(self.field(), a => {
            let x = self.typed(a);
            let y = other.typed(a);
            let (n, k, m) = (self.rows, self.cols, other.cols);
            let mut out = vec![a.zero(); n * m];
            for i in 0..n {
                for l in 0..k {
                    let f = &x[i * k + l];
                    if a.is_zero(f) {
                        continue;
                    }
                    for j in 0..m {
                        let g = &y[l * m + j];
                        if !a.is_zero(g) {
                            a.add_mul_assign(&mut out[i * m + j], f, g);
                        }
                    }
                }
            }
            Mat::from_typed(a, n, m, out)
        })
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip(other, true)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip(other, false)
    }

    fn zip(&self, other: &Mat, add: bool) -> Mat {
        assert_eq!(self.shape(), other.shape(), "elementwise shape mismatch");
        self.same_field(other);
        with_arith!(self.field(), a => {
            let out = self
                .typed(a)
                .iter()
                .zip(other.typed(a))
                .map(|(x, y)| if add { a.add(x, y) } else { a.sub(x, y) })
                .collect();
            Mat::from_typed(a, self.rows, self.cols, out)
        })
    }

    pub fn neg(&self) -> Mat {
        with_arith!(self.field(), a => Mat::from_typed(a, self.rows, self.cols, self.typed(a).iter().map(|x| a.neg(x)).collect()))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        with_arith!(self.field(), a => {
            let f = a.from_scalar(s);
            Mat::from_typed(a, self.rows, self.cols, self.typed(a).iter().map(|x| a.mul(&f, x)).collect())
        })
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Column vector from scalars.
    pub fn column(field: FieldSpec, v: &[Scalar]) -> Mat {
        Mat::from_scalars(field, v.len(), 1, v)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, s) in c.iter().enumerate() {
                m.set(i, j, s);
            }
        }
        m
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        self.same_field(other);
        with_arith!(self.field(), a => {
            let (x, y) = (self.typed(a), other.typed(a));
            let mut out = Vec::with_capacity(x.len() + y.len());
            for i in 0..self.rows {
                out.extend_from_slice(&x[i * self.cols..(i + 1) * self.cols]);
                out.extend_from_slice(&y[i * other.cols..(i + 1) * other.cols]);
            }
            Mat::from_typed(a, self.rows, self.cols + other.cols, out)
        })
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        self.same_field(other);
        with_arith!(self.field(), a => {
            let mut out = self.typed(a).to_vec();
            out.extend_from_slice(other.typed(a));
            Mat::from_typed(a, self.rows + other.rows, self.cols, out)
        })
    }

    /// Stacks blocks vertically; `cols` fixes the width when the list is empty.
    pub fn vstack_all(field: FieldSpec, cols: usize, blocks: &[Mat]) -> Mat {
        blocks.iter().fold(Mat::zeros(field, 0, cols), |acc, b| acc.vstack(b))
    }

    pub fn hstack_all(field: FieldSpec, rows: usize, blocks: &[Mat]) -> Mat {
        blocks.iter().fold(Mat::zeros(field, rows, 0), |acc, b| acc.hstack(b))
    }

    pub fn block_diag(field: FieldSpec, blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of bounds");
        self.same_field(b);
        let cols = self.cols;
        match (&mut self.data, &b.data) {
            (Entries::Q(v), Entries::Q(w)) => {
                for i in 0..b.rows {
                    v[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + b.cols].clone_from_slice(&w[i * b.cols..(i + 1) * b.cols]);
                }
            }
            (Entries::Fp(_, v), Entries::Fp(_, w)) => {
                for i in 0..b.rows {
                    v[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + b.cols].copy_from_slice(&w[i * b.cols..(i + 1) * b.cols]);
                }
            }
            _ => unreachable!(),
        }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols, "submatrix out of bounds");
        let rows: Vec<usize> = (r0..r1).collect();
        let cols: Vec<usize> = (c0..c1).collect();
        self.select(&rows, &cols)
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        with_arith!(self.field(), a => {
            let v = self.typed(a);
            let mut out = Vec::with_capacity(rows.len() * cols.len());
            for &i in rows {
                for &j in cols {
                    out.push(v[i * self.cols + j].clone());
                }
            }
            Mat::from_typed(a, rows.len(), cols.len(), out)
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        with_arith!(self.field(), a => {
            let mut v = self.typed(a).to_vec();
            let piv = rref_in_place(a, &mut v, self.rows, self.cols);
            (Mat::from_typed(a, self.rows, self.cols, v), piv)
        })
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter side.
        let m = if self.rows < self.cols { self.transpose() } else { self.clone() };
        with_arith!(m.field(), a => {
            let mut v = m.into_typed(a);
            let (r, c) = if self.rows < self.cols { (self.cols, self.rows) } else { (self.rows, self.cols) };
            echelon_rank(a, &mut v, r, c)
        })
    }

    /// Columns form a basis of the right kernel.
    pub fn kernel(&self) -> Mat {
        with_arith!(self.field(), a => {
            let mut v = self.typed(a).to_vec();
            let piv = rref_in_place(a, &mut v, self.rows, self.cols);
            Mat::from_typed(a, self.cols, self.cols - piv.len(), kernel_from_rref(a, &v, self.cols, &piv))
        })
    }

    /// Columns form a basis of the left kernel, as column vectors.
    pub fn left_kernel(&self) -> Mat {
        self.transpose().kernel()
    }

    /// Pivot columns of `self`, a basis of the column space.
    pub fn column_space(&self) -> Mat {
        let (_, piv) = self.rref();
        self.select_cols(&piv)
    }

    /// Some `X` with `self * X = b`, if one exists.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "solve row mismatch");
        self.same_field(b);
        let aug = self.hstack(b);
        let (r, piv) = aug.rref();
        if piv.last().is_some_and(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field(), self.cols, b.cols);
        for (k, &p) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, &r.get(k, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let (r, piv) = self.hstack(&Mat::identity(self.field(), n)).rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, 2 * n))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        with_arith!(self.field(), a => {
            let n = self.rows;
            let mut v = self.typed(a).to_vec();
            let mut d = a.one();
            for c in 0..n {
                let Some(p) = (c..n).find(|&i| !a.is_zero(&v[i * n + c])) else {
                    return a.to_scalar(&a.zero());
                };
                if p != c {
                    for j in 0..n {
                        v.swap(p * n + j, c * n + j);
                    }
                    d = a.neg(&d);
                }
                let piv = v[c * n + c].clone();
                d = a.mul(&d, &piv);
                let inv = a.inv(&piv);
                let nz: Vec<usize> = (c + 1..n).filter(|&j| !a.is_zero(&v[c * n + j])).collect();
                for i in c + 1..n {
                    if a.is_zero(&v[i * n + c]) {
                        continue;
                    }
                    let f = a.mul(&v[i * n + c], &inv);
                    for &j in &nz {
                        let (lo, hi) = v.split_at_mut(i * n);
                        a.sub_mul_assign(&mut hi[j], &f, &lo[c * n + j]);
                    }
                }
            }
            a.to_scalar(&d)
        })
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of non-square matrix");
        with_arith!(self.field(), a => {
            let v = self.typed(a);
            let mut t = a.zero();
            for i in 0..self.rows {
                t = a.add(&t, &v[i * self.cols + i]);
            }
            a.to_scalar(&t)
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.field(), self.rows)
    }

    /// Entrywise conversion, e.g. reduction of a rational matrix modulo a prime.
    pub fn convert(&self, target: FieldSpec) -> Result<Mat, FieldError> {
        if target == self.field() {
            return Ok(self.clone());
        }
        let f = self.field();
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(f.convert(&self.get(i, j), target)?);
            }
        }
        Ok(Mat::from_scalars(target, self.rows, self.cols, &out))
    }

    /// Row-major scalar entries.
    pub fn entries(&self) -> Vec<Scalar> {
        with_arith!(self.field(), a => self.typed(a).iter().map(|x| a.to_scalar(x)).collect())
    }
}

/// Gauss-Jordan elimination on a row-major buffer. Returns pivot columns.
pub(crate) fn rref_in_place<A: Arith>(a: A, v: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.is_zero(&v[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                v.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.inv(&v[r * cols + c]);
        let mut nz = Vec::new();
        for j in c..cols {
            if !a.is_zero(&v[r * cols + j]) {
                v[r * cols + j] = a.mul(&v[r * cols + j], &inv);
                nz.push(j);
            }
        }
        let prow: Vec<A::E> = nz.iter().map(|&j| v[r * cols + j].clone()).collect();
        for i in 0..rows {
            if i == r || a.is_zero(&v[i * cols + c]) {
                continue;
            }
            let f = v[i * cols + c].clone();
            for (k, &j) in nz.iter().enumerate() {
                a.sub_mul_assign(&mut v[i * cols + j], &f, &prow[k]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Forward elimination only; returns the rank.
pub(crate) fn echelon_rank<A: Arith>(a: A, v: &mut [A::E], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.is_zero(&v[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                v.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.inv(&v[r * cols + c]);
        let nz: Vec<usize> = (c + 1..cols).filter(|&j| !a.is_zero(&v[r * cols + j])).collect();
        let prow: Vec<A::E> = nz.iter().map(|&j| v[r * cols + j].clone()).collect();
        for i in r + 1..rows {
            if a.is_zero(&v[i * cols + c]) {
                continue;
            }
            let f = a.mul(&v[i * cols + c], &inv);
            v[i * cols + c] = a.zero();
            for (k, &j) in nz.iter().enumerate() {
                a.sub_mul_assign(&mut v[i * cols + j], &f, &prow[k]);
            }
        }
        r += 1;
    }
    r
}

/// Kernel basis (as a `cols x free` row-major buffer) from a reduced echelon form.
pub(crate) fn kernel_from_rref<A: Arith>(a: A, v: &[A::E], cols: usize, piv: &[usize]) -> Vec<A::E> {
    let mut is_piv = vec![false; cols];
    for &p in piv {
        is_piv[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&j| !is_piv[j]).collect();
    let k = free.len();
    let mut out = vec![a.zero(); cols * k];
    for (t, &f) in free.iter().enumerate() {
        out[f * k + t] = a.one();
        for (r, &p) in piv.iter().enumerate() {
            let x = &v[r * cols + f];
            if !a.is_zero(x) {
                out[p * k + t] = a.neg(x);
            }
        }
    }
    out
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} over {}]", self.rows, self.cols, self.field())?;
        for i in 0..self.rows {
            write!(f, "\n  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
