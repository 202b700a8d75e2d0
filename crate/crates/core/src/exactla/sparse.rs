//! Incremental sparse elimination for large homogeneous systems.
//!
//! Rows are reduced against the pivots seen so far as they arrive, so the
//! system never has to be materialized densely.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::{Arith, FieldSpec, Scalar};
use super::mat::{with_arith, Mat, Store};

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Semi-echelon form: every stored row has a normalized leading entry and
/// vanishes at every pivot column left of its own.
pub(crate) struct Echelon<A: Arith> {
    a: A,
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseRow<A::E>>,
    // Dense scratch accumulator and its occupancy mask.
    acc: Vec<A::E>,
    live: Vec<bool>,
}

impl<A: Arith> Echelon<A> {
    pub(crate) fn new(a: A, ncols: usize) -> Self {
        Echelon {
            a,
            ncols,
            pivot_row: vec![None; ncols],
            rows: Vec::new(),
            acc: vec![a.zero(); ncols],
            live: vec![false; ncols],
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` and stores it if it is independent. Returns whether it was.
    pub(crate) fn push(&mut self, row: SparseRow<A::E>) -> bool {
        let a = self.a;
        let mut heap = BinaryHeap::new();
        for (c, v) in row {
            if a.is_zero(&v) {
                continue;
            }
            if self.live[c] {
                self.acc[c] = a.add(&self.acc[c], &v);
            } else {
                self.live[c] = true;
                self.acc[c] = v;
                heap.push(Reverse(c));
            }
        }
        let mut out: SparseRow<A::E> = Vec::new();
        while let Some(Reverse(c)) = heap.pop() {
            if !self.live[c] {
                continue;
            }
            self.live[c] = false;
            let v = std::mem::replace(&mut self.acc[c], a.zero());
            if a.is_zero(&v) {
                continue;
            }
            match self.pivot_row[c] {
                Some(k) if out.is_empty() => {
                    let prow = &self.rows[k];
                    for (j, w) in prow.iter().skip(1) {
                        if self.live[*j] {
                            a.sub_mul_assign(&mut self.acc[*j], &v, w);
                        } else {
                            self.live[*j] = true;
                            self.acc[*j] = a.neg(&a.mul(&v, w));
                            heap.push(Reverse(*j));
                        }
                    }
                }
                _ => out.push((c, v)),
            }
        }
        // Once a non-pivot leading column is found, later pivot columns are
        // left in place; back substitution in `kernel` clears them.
        if out.is_empty() {
            return false;
        }
        let inv = a.inv(&out[0].1);
        for e in out.iter_mut() {
            e.1 = a.mul(&e.1, &inv);
        }
        self.pivot_row[out[0].0] = Some(self.rows.len());
        self.rows.push(out);
        true
    }

    /// Columns without a pivot, in increasing order. The `t`-th kernel vector
    /// is 1 at the `t`-th free column and 0 at the others.
    pub(crate) fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Kernel basis as dense vectors, one per free column, in column order.
    pub(crate) fn kernel(&self) -> Vec<Vec<A::E>> {
        let a = self.a;
        // Fully reduce rows in decreasing pivot order.
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| Reverse(self.rows[k][0].0));
        let mut reduced: Vec<Option<Vec<(usize, A::E)>>> = vec![None; self.rows.len()];
        let mut acc = vec![a.zero(); self.ncols];
        let mut live = vec![false; self.ncols];
        for &k in &order {
            let row = &self.rows[k];
            let lead = row[0].0;
            let mut heap = BinaryHeap::new();
            for (c, v) in row.iter().skip(1) {
                acc[*c] = v.clone();
                live[*c] = true;
                heap.push(Reverse(*c));
            }
            let mut out = Vec::new();
            while let Some(Reverse(c)) = heap.pop() {
                if !live[c] {
                    continue;
                }
                live[c] = false;
                let v = std::mem::replace(&mut acc[c], a.zero());
                if a.is_zero(&v) {
                    continue;
                }
                match self.pivot_row[c] {
                    Some(pk) => {
                        let prow = reduced[pk].as_ref().expect("pivot rows reduced in decreasing order");
                        for (j, w) in prow {
                            if live[*j] {
                                a.sub_mul_assign(&mut acc[*j], &v, w);
                            } else {
                                live[*j] = true;
                                acc[*j] = a.neg(&a.mul(&v, w));
                                heap.push(Reverse(*j));
                            }
                        }
                    }
                    None => out.push((c, v)),
                }
            }
            debug_assert!(out.iter().all(|(c, _)| *c > lead));
            reduced[k] = Some(out);
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect();
        let mut index_of_free = vec![usize::MAX; self.ncols];
        for (t, &f) in free.iter().enumerate() {
            index_of_free[f] = t;
        }
        let mut basis = vec![vec![a.zero(); self.ncols]; free.len()];
        for (t, &f) in free.iter().enumerate() {
            basis[t][f] = a.one();
        }
        for (k, row) in reduced.iter().enumerate() {
            let lead = self.rows[k][0].0;
            for (c, v) in row.as_ref().expect("all rows reduced") {
                basis[index_of_free[*c]][lead] = a.neg(v);
            }
        }
        basis
    }
}

/// Kernel of a sparse system given by scalar rows; columns of the result
/// span the solution space.
pub fn sparse_kernel(field: FieldSpec, ncols: usize, rows: &[Vec<(usize, Scalar)>]) -> Mat {
    with_arith!(field, a => {
        let mut ech = Echelon::new(a, ncols);
        for r in rows {
            ech.push(r.iter().map(|(c, s)| (*c, a.from_scalar(s))).collect());
        }
        kernel_mat(a, ncols, ech.kernel())
    })
}

pub(crate) fn kernel_mat<A: Store>(a: A, ncols: usize, basis: Vec<Vec<A::E>>) -> Mat {
    let k = basis.len();
    let mut v = vec![a.zero(); ncols * k];
    for (t, b) in basis.into_iter().enumerate() {
        for (i, x) in b.into_iter().enumerate() {
            v[i * k + t] = x;
        }
    }
    Mat::from_typed(a, ncols, k, v)
}
