//! The algebra B(n, r): a linear quiver on vertices 0..n-1 with r arrows
//! between consecutive vertices, modulo commutativity.
//!
//! Paths from `i` to `j` modulo the relations are the commutative monomials of
//! degree `j - i` in r variables, one variable per arrow label.

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Mat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraData {
    n: usize,
    r: usize,
}

impl AlgebraData {
    pub fn new(n: usize, r: usize) -> Result<AlgebraData> {
        if n < 2 || r < 2 {
            return Err(Error::InvalidParameters(format!("B(n, r) needs n >= 2 and r >= 2, got n = {n}, r = {r}")));
        }
        Ok(AlgebraData { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }
}

/// A path modulo commutativity: its source vertex and exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathBasisElt {
    pub source: usize,
    pub exponent: Vec<u32>,
}

impl PathBasisElt {
    pub fn degree(&self) -> usize {
        self.exponent.iter().sum::<u32>() as usize
    }

    pub fn target(&self) -> usize {
        self.source + self.degree()
    }
}

/// Exponent vectors of all degree-`d` monomials in `r` variables, in
/// decreasing lexicographic order (`x1^d` first).
pub fn monomials(r: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(r: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == r {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(r, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(r, d as u32, &mut Vec::with_capacity(r), &mut out);
    out
}

/// Position of `e` in a list produced by [`monomials`].
pub fn monomial_index(list: &[Vec<u32>], e: &[u32]) -> Option<usize> {
    list.binary_search_by(|x| e.cmp(x.as_slice())).ok()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of degree-`d` monomials in `r` variables.
pub fn monomial_count(r: usize, d: usize) -> usize {
    binomial(d + r - 1, r - 1)
}

/// Basis of `e_j B e_i`, the paths from `i` to `j`.
pub fn path_basis(a: &AlgebraData, i: usize, j: usize) -> Result<Vec<PathBasisElt>> {
    a.check_vertex(i)?;
    a.check_vertex(j)?;
    if j < i {
        return Ok(Vec::new());
    }
    Ok(monomials(a.r, j - i)
        .into_iter()
        .map(|exponent| PathBasisElt { source: i, exponent })
        .collect())
}

/// The composite `u ∘ v` (first `v`, then `u`), or `None` when it is zero.
pub fn multiply(a: &AlgebraData, u: &PathBasisElt, v: &PathBasisElt) -> Option<PathBasisElt> {
    if v.target() != u.source || u.exponent.len() != a.r || v.exponent.len() != a.r {
        return None;
    }
    let p = PathBasisElt {
        source: v.source,
        exponent: u.exponent.iter().zip(&v.exponent).map(|(x, y)| x + y).collect(),
    };
    (p.target() < a.n).then_some(p)
}

/// Entry `(j, i)` is `dim e_j B e_i`.
pub fn cartan_matrix(a: &AlgebraData) -> Mat {
    let n = a.n;
    let mut v = vec![0i64; n * n];
    for j in 0..n {
        for i in 0..=j {
            v[j * n + i] = monomial_count(a.r, j - i) as i64;
        }
    }
    Mat::from_i64(FieldSpec::Rationals, n, n, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: usize, r: usize) -> AlgebraData {
        AlgebraData::new(n, r).unwrap()
    }

    #[test]
    fn path_basis_examples() {
        let got = path_basis(&b(3, 2), 0, 2).unwrap();
        let exps: Vec<Vec<u32>> = got.iter().map(|p| p.exponent.clone()).collect();
        assert_eq!(exps, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert!(path_basis(&b(3, 2), 1, 0).unwrap().is_empty());
        assert_eq!(path_basis(&b(2, 3), 0, 1).unwrap().len(), 3);
        assert!(matches!(path_basis(&b(2, 2), 0, 2), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn lex_order_three_variables() {
        assert_eq!(
            monomials(3, 2),
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
        );
        let l = monomials(3, 2);
        assert_eq!(monomial_index(&l, &[0, 1, 1]), Some(4));
    }

    #[test]
    fn multiply_examples() {
        let a = b(3, 2);
        let u = PathBasisElt { source: 1, exponent: vec![1, 0] };
        let v = PathBasisElt { source: 0, exponent: vec![0, 1] };
        assert_eq!(multiply(&a, &u, &v), Some(PathBasisElt { source: 0, exponent: vec![1, 1] }));
        assert_eq!(multiply(&a, &v, &u), None);
        let w = PathBasisElt { source: 1, exponent: vec![2, 0] };
        assert_eq!(multiply(&a, &w, &v), None);
    }

    #[test]
    fn cartan_examples() {
        let q = FieldSpec::Rationals;
        assert_eq!(cartan_matrix(&b(2, 2)), Mat::from_rows(q, &[vec![1, 0], vec![2, 1]]));
        assert_eq!(cartan_matrix(&b(3, 2)), Mat::from_rows(q, &[vec![1, 0, 0], vec![2, 1, 0], vec![3, 2, 1]]));
        assert_eq!(cartan_matrix(&b(2, 3)), Mat::from_rows(q, &[vec![1, 0], vec![3, 1]]));
    }

    #[test]
    fn invariants_exhaustive() {
        for n in 2..=4 {
            for r in 2..=3 {
                let a = b(n, r);
                let all: Vec<PathBasisElt> = (0..n)
                    .flat_map(|i| (i..n).flat_map(move |j| path_basis(&a, i, j).unwrap()))
                    .collect();
                for i in 0..n {
                    for j in i..n {
                        assert_eq!(path_basis(&a, i, j).unwrap().len(), binomial(j - i + r - 1, r - 1));
                    }
                }
                for x in &all {
                    for y in &all {
                        for z in &all {
                            let l = multiply(&a, x, y).and_then(|xy| multiply(&a, &xy, z));
                            let r_ = multiply(&a, y, z).and_then(|yz| multiply(&a, x, &yz));
                            assert_eq!(l, r_);
                        }
                    }
                }
                let c = cartan_matrix(&a);
                assert_eq!(c.det(), FieldSpec::Rationals.one());
            }
        }
    }
}
