//! Named modules: graded monomial slices, projectives, injectives, simples,
//! the duality and the one-point-extension embedding.

use crate::algebra::{monomial_index, monomials, multiply, path_basis, AlgebraData, PathBasisElt};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Mat};
use crate::rep::Rep;

/// Consecutive homogeneous components of the polynomial ring in `r`
/// variables, each with its lex-ordered monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlice {
    pub r: usize,
    pub degrees: Vec<usize>,
    pub bases: Vec<Vec<Vec<u32>>>,
}

impl GradedSlice {
    /// Degrees `lowest .. lowest + count`.
    pub fn new(r: usize, lowest: usize, count: usize) -> GradedSlice {
        let degrees: Vec<usize> = (lowest..lowest + count).collect();
        let bases = degrees.iter().map(|&d| monomials(r, d)).collect();
        GradedSlice { r, degrees, bases }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Multiplication by the `s`-th variable from degree slot `i` to `i + 1`.
    pub fn multiplication(&self, field: FieldSpec, s: usize, i: usize) -> Mat {
        let (src, dst) = (&self.bases[i], &self.bases[i + 1]);
        let mut m = Mat::zeros(field, dst.len(), src.len());
        let one = field.one();
        for (b, e) in src.iter().enumerate() {
            let mut t = e.clone();
            t[s] += 1;
            let a = monomial_index(dst, &t).expect("product lies in the next degree");
            m.set(a, b, &one);
        }
        m
    }

    /// The slice as a representation of B(len, r).
    pub fn to_rep(&self, field: FieldSpec) -> Result<Rep> {
        let alg = AlgebraData::new(self.degrees.len(), self.r)?;
        let maps = (0..self.r)
            .map(|s| (0..self.degrees.len() - 1).map(|i| self.multiplication(field, s, i)).collect())
            .collect();
        Rep::new(alg, field, self.dims(), maps)
    }
}

/// The graded module carrying degrees `m − n .. m − 1` on vertices `0 .. n − 1`.
/// For `m < n` this is the `m = n` module.
pub fn m_module(m: usize, n: usize, r: usize, field: FieldSpec) -> Result<Rep> {
    if n < 2 || r < 2 {
        return Err(Error::InvalidParameters(format!("need n >= 2 and r >= 2, got n = {n}, r = {r}")));
    }
    let m = m.max(n);
    GradedSlice::new(r, m - n, n).to_rep(field)
}

/// Dual of [`m_module`].
pub fn w_module(m: usize, n: usize, r: usize, field: FieldSpec) -> Result<Rep> {
    Ok(dual(&m_module(m, n, r, field)?))
}

/// Linear dual with vertices relabelled in reverse order.
pub fn dual(m: &Rep) -> Rep {
    let alg = m.algebra();
    let n = alg.n();
    let dims: Vec<usize> = m.dims().iter().rev().copied().collect();
    let maps = (0..alg.r())
        .map(|s| (0..n - 1).map(|l| m.map(s, n - 2 - l).transpose()).collect())
        .collect();
    Rep::new_unchecked(alg, m.field(), dims, maps)
}

pub fn simple(alg: AlgebraData, field: FieldSpec, i: usize) -> Result<Rep> {
    alg.check_vertex(i)?;
    let mut dims = vec![0; alg.n()];
    dims[i] = 1;
    Ok(Rep::with_dims_zero_maps(alg, field, dims))
}

/// `B e_i`: vertex `j` carries the paths from `i` to `j`, arrows act by
/// composition.
pub fn projective(alg: AlgebraData, field: FieldSpec, i: usize) -> Result<Rep> {
    alg.check_vertex(i)?;
    let (n, r) = (alg.n(), alg.r());
    let paths: Vec<Vec<PathBasisElt>> = (0..n).map(|j| path_basis(&alg, i, j)).collect::<Result<_>>()?;
    let dims: Vec<usize> = paths.iter().map(Vec::len).collect();
    let one = field.one();
    let maps = (0..r)
        .map(|s| {
            (0..n - 1)
                .map(|j| {
                    let mut m = Mat::zeros(field, dims[j + 1], dims[j]);
                    let mut e = vec![0; r];
                    e[s] = 1;
                    let arrow = PathBasisElt { source: j, exponent: e };
                    let targets: Vec<Vec<u32>> = paths[j + 1].iter().map(|p| p.exponent.clone()).collect();
                    for (b, p) in paths[j].iter().enumerate() {
                        let q = multiply(&alg, &arrow, p).expect("arrow extends a path below the sink");
                        m.set(monomial_index(&targets, &q.exponent).unwrap(), b, &one);
                    }
                    m
                })
                .collect()
        })
        .collect();
    Rep::new(alg, field, dims, maps)
}

pub fn injective(alg: AlgebraData, field: FieldSpec, i: usize) -> Result<Rep> {
    alg.check_vertex(i)?;
    Ok(dual(&projective(alg, field, alg.n() - 1 - i)?))
}

/// Extension by zero at a new source vertex: B(n − 1, r) to B(n, r).
pub fn iota(m: &Rep) -> Result<Rep> {
    let small = m.algebra();
    let alg = AlgebraData::new(small.n() + 1, small.r())?;
    let f = m.field();
    let mut dims = vec![0];
    dims.extend_from_slice(m.dims());
    let maps = (0..alg.r())
        .map(|s| {
            let mut per = vec![Mat::zeros(f, dims[1], 0)];
            per.extend(m.maps()[s].iter().cloned());
            per
        })
        .collect();
    Rep::new(alg, f, dims, maps)
}

/// Restriction to vertices `1 .. n − 1`. Needs `n ≥ 3` since the result
/// must again have at least two vertices.
pub fn delete_source(m: &Rep) -> Result<Rep> {
    let big = m.algebra();
    if big.n() < 3 {
        return Err(Error::InvalidParameters("deleting the source needs at least three vertices".into()));
    }
    let alg = AlgebraData::new(big.n() - 1, big.r())?;
    let dims = m.dims()[1..].to_vec();
    let maps = m.maps().iter().map(|per| per[1..].to_vec()).collect();
    Rep::new(alg, m.field(), dims, maps)
}
