//! Finite-dimensional representations of B(n, r) and their morphisms.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraData, PathBasisElt};
use crate::error::{Error, Result};
use crate::exactla::mat::{with_arith, Store};
use crate::exactla::poly::{multi_det, MultiPoly, UniPoly};
use crate::exactla::sparse::Echelon;
use crate::exactla::{FieldSpec, Mat, Scalar};

/// A representation: one space per vertex, one matrix per arrow and layer.
/// `maps[s][i]` is the action of arrow `s` (0-based) from vertex `i` to `i + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rep {
    alg: AlgebraData,
    field: FieldSpec,
    dims: Vec<usize>,
    maps: Vec<Vec<Mat>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Arrow numbers are 1-based.
    Shape { arrow: usize, layer: usize, expected: (usize, usize), found: (usize, usize) },
    Relation { layer: usize, s: usize, t: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape { arrow, layer, expected, found } => write!(
                f,
                "arrow {arrow} at layer {layer}: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Violation::Relation { layer, s, t } => {
                write!(f, "commutativity fails at layer {layer} for arrows {s} and {t}")
            }
        }
    }
}

impl Rep {
    /// Builds a representation after checking matrix shapes and fields.
    /// Relations are checked separately by [`validate`].
    pub fn new(alg: AlgebraData, field: FieldSpec, dims: Vec<usize>, maps: Vec<Vec<Mat>>) -> Result<Rep> {
        if dims.len() != alg.n() {
            return Err(Error::Shape(format!("{} dimensions for {} vertices", dims.len(), alg.n())));
        }
        if maps.len() != alg.r() || maps.iter().any(|m| m.len() != alg.n() - 1) {
            return Err(Error::Shape(format!("expected {} arrows with {} layers each", alg.r(), alg.n() - 1)));
        }
        for (s, per) in maps.iter().enumerate() {
            for (i, m) in per.iter().enumerate() {
                if m.shape() != (dims[i + 1], dims[i]) {
                    return Err(Error::Shape(format!(
                        "arrow {} at layer {i}: expected {}x{}, found {}x{}",
                        s + 1,
                        dims[i + 1],
                        dims[i],
                        m.rows(),
                        m.cols()
                    )));
                }
                if m.field() != field {
                    return Err(Error::FieldMismatch(field, m.field()));
                }
            }
        }
        Ok(Rep { alg, field, dims, maps })
    }

    pub(crate) fn new_unchecked(alg: AlgebraData, field: FieldSpec, dims: Vec<usize>, maps: Vec<Vec<Mat>>) -> Rep {
        debug_assert!(Rep::new(alg, field, dims.clone(), maps.clone()).is_ok());
        Rep { alg, field, dims, maps }
    }

    pub fn zero(alg: AlgebraData, field: FieldSpec) -> Rep {
        Rep::with_dims_zero_maps(alg, field, vec![0; alg.n()])
    }

    /// All arrows act as zero.
    pub fn with_dims_zero_maps(alg: AlgebraData, field: FieldSpec, dims: Vec<usize>) -> Rep {
        let maps = (0..alg.r())
            .map(|_| (0..alg.n() - 1).map(|i| Mat::zeros(field, dims[i + 1], dims[i])).collect())
            .collect();
        Rep { alg, field, dims, maps }
    }

    pub fn algebra(&self) -> AlgebraData {
        self.alg
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Arrow `s` (0-based) at layer `i`.
    pub fn map(&self, s: usize, i: usize) -> &Mat {
        &self.maps[s][i]
    }

    pub fn maps(&self) -> &[Vec<Mat>] {
        &self.maps
    }

    /// Offset of vertex `i` in the concatenation of all vertex spaces.
    pub fn offset(&self, i: usize) -> usize {
        self.dims[..i].iter().sum()
    }

    /// Action of a path on the space at its source.
    pub fn path_matrix(&self, p: &PathBasisElt) -> Mat {
        let mut v = p.source;
        let mut m = Mat::identity(self.field, self.dims[v]);
        for (s, e) in p.exponent.iter().enumerate() {
            for _ in 0..*e {
                m = self.maps[s][v].mul(&m);
                v += 1;
            }
        }
        m
    }

    pub fn convert(&self, target: FieldSpec) -> Result<Rep> {
        let maps = self
            .maps
            .iter()
            .map(|per| per.iter().map(|m| m.convert(target)).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Rep { alg: self.alg, field: target, dims: self.dims.clone(), maps })
    }

    fn same_category(&self, o: &Rep) -> Result<()> {
        if self.alg != o.alg {
            return Err(Error::AlgebraMismatch(self.alg.n(), self.alg.r(), o.alg.n(), o.alg.r()));
        }
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field, o.field));
        }
        Ok(())
    }
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep over B({},{}) / {}, dims {:?}", self.alg.n(), self.alg.r(), self.field, self.dims)?;
        if f.alternate() {
            for (s, per) in self.maps.iter().enumerate() {
                for (i, m) in per.iter().enumerate() {
                    write!(f, "\n g{}_{}: {:?}", s + 1, i, m)?;
                }
            }
        }
        Ok(())
    }
}

/// Checks shapes and the commutativity relations.
pub fn validate(m: &Rep) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    for (s, per) in m.maps.iter().enumerate() {
        for (i, x) in per.iter().enumerate() {
            let expected = (m.dims[i + 1], m.dims[i]);
            if x.shape() != expected {
                out.push(Violation::Shape { arrow: s + 1, layer: i, expected, found: x.shape() });
            }
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    let (n, r) = (m.alg.n(), m.alg.r());
    for i in 0..n.saturating_sub(2) {
        for s in 0..r {
            for t in s + 1..r {
                if m.maps[t][i + 1].mul(&m.maps[s][i]) != m.maps[s][i + 1].mul(&m.maps[t][i]) {
                    out.push(Violation::Relation { layer: i, s: s + 1, t: t + 1 });
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// A vertexwise linear map intertwining the arrow actions.
#[derive(Clone, PartialEq, Eq)]
pub struct RepMorphism {
    source: Arc<Rep>,
    target: Arc<Rep>,
    blocks: Vec<Mat>,
}

impl fmt::Debug for RepMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMorphism {:?} -> {:?}", self.source.dims, self.target.dims)
    }
}

impl RepMorphism {
    /// Checks shapes and intertwining.
    pub fn new(source: Arc<Rep>, target: Arc<Rep>, blocks: Vec<Mat>) -> Result<RepMorphism> {
        source.same_category(&target)?;
        if blocks.len() != source.alg.n() {
            return Err(Error::Shape(format!("{} blocks for {} vertices", blocks.len(), source.alg.n())));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dims[i], source.dims[i]) {
                return Err(Error::Shape(format!("block {i} has shape {:?}", b.shape())));
            }
        }
        let f = RepMorphism { source, target, blocks };
        if !f.intertwines() {
            return Err(Error::Precondition("blocks do not intertwine the arrow actions".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Arc<Rep>, target: Arc<Rep>, blocks: Vec<Mat>) -> RepMorphism {
        let f = RepMorphism { source, target, blocks };
        debug_assert!(f.intertwines());
        f
    }

    pub fn identity(m: &Arc<Rep>) -> RepMorphism {
        let blocks = m.dims.iter().map(|&d| Mat::identity(m.field, d)).collect();
        RepMorphism { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn zero(source: &Arc<Rep>, target: &Arc<Rep>) -> RepMorphism {
        let blocks = (0..source.alg.n())
            .map(|i| Mat::zeros(source.field, target.dims[i], source.dims[i]))
            .collect();
        RepMorphism { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn intertwines(&self) -> bool {
        let (m, n) = (&self.source, &self.target);
        (0..m.alg.r()).all(|s| {
            (0..m.alg.n() - 1).all(|i| self.blocks[i + 1].mul(&m.maps[s][i]) == n.maps[s][i].mul(&self.blocks[i]))
        })
    }

    pub fn source(&self) -> &Arc<Rep> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Rep> {
        &self.target
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Mat {
        &self.blocks[i]
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &RepMorphism) -> RepMorphism {
        assert_eq!(g.target.dims, self.source.dims, "composition mismatch");
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect();
        RepMorphism { source: g.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn add(&self, o: &RepMorphism) -> RepMorphism {
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn scale(&self, c: &Scalar) -> RepMorphism {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows())
    }

    /// Sum of the traces of the vertex blocks of an endomorphism.
    pub fn trace(&self) -> Scalar {
        let f = self.source.field;
        self.blocks.iter().fold(f.zero(), |acc, b| f.add(&acc, &b.trace()))
    }
}

/// Solution space of the intertwining system, with the free coordinates
/// that identify each basis element.
pub(crate) struct HomSpace {
    pub basis: Vec<Vec<Mat>>,
    /// `(vertex, row, col)` of the free variable of each basis element.
    pub free: Vec<(usize, usize, usize)>,
}

impl HomSpace {
    /// Coordinates of a morphism (given by blocks) in the basis.
    pub fn coords(&self, blocks: &[Mat]) -> Vec<Scalar> {
        self.free.iter().map(|&(v, a, b)| blocks[v].get(a, b)).collect()
    }

    pub fn combine(&self, field: FieldSpec, c: &[Scalar]) -> Vec<Mat> {
        let mut out: Vec<Mat> = self.basis[0].iter().map(|b| Mat::zeros(field, b.rows(), b.cols())).collect();
        for (k, coef) in c.iter().enumerate() {
            if field.is_zero(coef) {
                continue;
            }
            for (o, b) in out.iter_mut().zip(&self.basis[k]) {
                *o = o.add(&b.scale(coef));
            }
        }
        out
    }
}

fn hom_solver<A: Store>(a: A, m: &Rep, n: &Rep, want_basis: bool) -> (usize, Option<HomSpace>) {
    let nv = m.alg.n();
    let mut off = vec![0usize; nv + 1];
    for i in 0..nv {
        off[i + 1] = off[i] + n.dims[i] * m.dims[i];
    }
    let ncols = off[nv];
    let mut ech = Echelon::new(a, ncols);
    for s in 0..m.alg.r() {
        for i in 0..nv - 1 {
            let ms = m.maps[s][i].typed(a);
            let ns = n.maps[s][i].typed(a);
            let (dm0, dm1, dn0, dn1) = (m.dims[i], m.dims[i + 1], n.dims[i], n.dims[i + 1]);
            // Nonzeros of each column of M_s and each row of N_s.
            let mcols: Vec<Vec<(usize, A::E)>> = (0..dm0)
                .map(|b| (0..dm1).filter_map(|c| {
                    let x = &ms[c * dm0 + b];
                    (!a.is_zero(x)).then(|| (c, x.clone()))
                }).collect())
                .collect();
            let nrows: Vec<Vec<(usize, A::E)>> = (0..dn1)
                .map(|r| (0..dn0).filter_map(|c| {
                    let x = &ns[r * dn0 + c];
                    (!a.is_zero(x)).then(|| (c, x.clone()))
                }).collect())
                .collect();
            for r in 0..dn1 {
                for b in 0..dm0 {
                    let mut row: Vec<(usize, A::E)> = Vec::with_capacity(mcols[b].len() + nrows[r].len());
                    for (c, x) in &mcols[b] {
                        row.push((off[i + 1] + r * dm1 + c, x.clone()));
                    }
                    for (c, x) in &nrows[r] {
                        row.push((off[i] + c * dm0 + b, a.neg(x)));
                    }
                    if row.is_empty() {
                        continue;
                    }
                    row.sort_by_key(|e| e.0);
                    ech.push(row);
                }
            }
        }
    }
    let dim = ncols - ech.rank();
    if !want_basis {
        return (dim, None);
    }
    let free = ech
        .free_columns()
        .into_iter()
        .map(|c| {
            let i = (0..nv).find(|&i| c < off[i + 1]).unwrap();
            let local = c - off[i];
            (i, local / m.dims[i], local % m.dims[i])
        })
        .collect();
    let basis = ech
        .kernel()
        .into_iter()
        .map(|v| {
            (0..nv)
                .map(|i| Mat::from_typed(a, n.dims[i], m.dims[i], v[off[i]..off[i + 1]].to_vec()))
                .collect()
        })
        .collect();
    (dim, Some(HomSpace { basis, free }))
}

pub(crate) fn hom_space_raw(m: &Rep, n: &Rep) -> Result<HomSpace> {
    m.same_category(n)?;
    Ok(with_arith!(m.field, a => hom_solver(a, m, n, true).1.unwrap()))
}

/// A basis of Hom(M, N).
pub fn hom_space(m: &Rep, n: &Rep) -> Result<Vec<RepMorphism>> {
    let h = hom_space_raw(m, n)?;
    let (ma, na) = (Arc::new(m.clone()), Arc::new(n.clone()));
    Ok(h.basis
        .into_iter()
        .map(|b| RepMorphism::new_unchecked(ma.clone(), na.clone(), b))
        .collect())
}

/// `dim Hom(M, N)` without building a basis.
pub fn hom_dim(m: &Rep, n: &Rep) -> Result<usize> {
    m.same_category(n)?;
    Ok(with_arith!(m.field, a => hom_solver(a, m, n, false).0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic,
    NotIsomorphic,
    /// No isomorphism found in the given number of random trials and no
    /// symbolic certificate was available.
    ProbablyNotIsomorphic { trials: usize },
}

impl IsoOutcome {
    pub fn is_iso(self) -> bool {
        self == IsoOutcome::Isomorphic
    }
}

pub const DEFAULT_ISO_TRIALS: usize = 20;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Isomorphism test: random combinations of a Hom basis, then exact fallbacks.
pub fn iso(m: &Rep, n: &Rep) -> Result<bool> {
    Ok(iso_outcome(m, n, DEFAULT_ISO_TRIALS, DEFAULT_SEED)?.is_iso())
}

pub fn iso_outcome(m: &Rep, n: &Rep, trials: usize, seed: u64) -> Result<IsoOutcome> {
    m.same_category(n)?;
    if m.dims != n.dims {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    if m.is_zero() {
        return Ok(IsoOutcome::Isomorphic);
    }
    if m == n {
        return Ok(IsoOutcome::Isomorphic);
    }
    let h = hom_space_raw(m, n)?;
    if h.basis.is_empty() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let f = m.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let invertible = |blocks: &[Mat]| blocks.iter().all(|b| b.rank() == b.rows());
    if h.basis.len() == 1 {
        return Ok(if invertible(&h.basis[0]) { IsoOutcome::Isomorphic } else { IsoOutcome::NotIsomorphic });
    }
    for _ in 0..trials {
        let c: Vec<Scalar> = (0..h.basis.len()).map(|_| f.from_i64(rng.gen_range(-1000..=1000))).collect();
        if invertible(&h.combine(f, &c)) {
            return Ok(IsoOutcome::Isomorphic);
        }
    }
    if let Some(found) = symbolic_iso(&h, f) {
        return Ok(if found { IsoOutcome::Isomorphic } else { IsoOutcome::NotIsomorphic });
    }
    if let Some(found) = local_iso(m, n, &h)? {
        return Ok(if found { IsoOutcome::Isomorphic } else { IsoOutcome::NotIsomorphic });
    }
    Ok(IsoOutcome::ProbablyNotIsomorphic { trials })
}

const SYMBOLIC_BASIS_LIMIT: usize = 4;
const SYMBOLIC_BLOCK_LIMIT: usize = 8;

/// Whether some vertex determinant of a generic combination vanishes
/// identically. Only attempted for small bases and blocks over Q.
fn symbolic_iso(h: &HomSpace, f: FieldSpec) -> Option<bool> {
    let k = h.basis.len();
    if k > SYMBOLIC_BASIS_LIMIT || !f.is_rational() {
        return None;
    }
    let nv = h.basis[0].len();
    if (0..nv).any(|i| h.basis[0][i].rows() > SYMBOLIC_BLOCK_LIMIT) {
        return None;
    }
    for i in 0..nv {
        let (r, c) = h.basis[0][i].shape();
        if r == 0 {
            continue;
        }
        let entries: Vec<Vec<MultiPoly>> = (0..r)
            .map(|a| {
                (0..c)
                    .map(|b| {
                        let coeffs: Vec<_> = (0..k)
                            .map(|t| h.basis[t][i].get(a, b).as_rational().unwrap().clone())
                            .collect();
                        MultiPoly::linear(&coeffs)
                    })
                    .collect()
            })
            .collect();
        if multi_det(k, &entries).is_zero() {
            return Some(false);
        }
    }
    // Every vertex determinant is a nonzero polynomial, so their product is
    // nonzero and an invertible combination exists over Q.
    Some(true)
}

/// Exact test when `m` has a local endomorphism ring over Q: an isomorphism
/// exists iff some composite `g ∘ f` with `f: M → N`, `g: N → M` from the
/// bases lies outside the radical of End(M).
fn local_iso(m: &Rep, n: &Rep, h: &HomSpace) -> Result<Option<bool>> {
    if !m.field.is_rational() {
        return Ok(None);
    }
    let e = endo_algebra(m)?;
    if e.dim - e.rad_dim != 1 {
        return Ok(None);
    }
    let back = hom_space_raw(n, m)?;
    for f in &h.basis {
        for g in &back.basis {
            let comp: Vec<Mat> = g.iter().zip(f).map(|(x, y)| x.mul(y)).collect();
            if !e.in_radical(&comp) {
                return Ok(Some(true));
            }
        }
    }
    Ok(Some(false))
}

/// Subrepresentation spanned vertexwise by the columns of `bases`, which
/// must be stable under all arrows and have full column rank.
pub fn subrep(m: &Rep, bases: Vec<Mat>) -> (Rep, RepMorphism) {
    let (n, r) = (m.alg.n(), m.alg.r());
    let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
    let maps: Vec<Vec<Mat>> = (0..r)
        .map(|s| {
            (0..n - 1)
                .map(|i| {
                    let img = m.maps[s][i].mul(&bases[i]);
                    bases[i + 1].solve(&img).expect("subspace is stable under the arrows")
                })
                .collect()
        })
        .collect();
    let sub = Arc::new(Rep::new_unchecked(m.alg, m.field, dims, maps));
    let incl = RepMorphism::new_unchecked(sub.clone(), Arc::new(m.clone()), bases);
    (Arc::unwrap_or_clone(sub.clone()), incl)
}

/// Quotient by the subrepresentation spanned by the columns of `bases`.
pub fn quotient(m: &Rep, bases: &[Mat]) -> (Rep, RepMorphism) {
    let (n, r) = (m.alg.n(), m.alg.r());
    // Projections with kernel exactly the subspace, and right inverses.
    let proj: Vec<Mat> = bases.iter().map(|b| b.left_kernel().transpose()).collect();
    let sections: Vec<Mat> = proj
        .iter()
        .map(|p| p.solve(&Mat::identity(m.field, p.rows())).expect("projection has full row rank"))
        .collect();
    let dims: Vec<usize> = proj.iter().map(Mat::rows).collect();
    let maps: Vec<Vec<Mat>> = (0..r)
        .map(|s| (0..n - 1).map(|i| proj[i + 1].mul(&m.maps[s][i]).mul(&sections[i])).collect())
        .collect();
    let q = Arc::new(Rep::new_unchecked(m.alg, m.field, dims, maps));
    let pi = RepMorphism::new_unchecked(Arc::new(m.clone()), q.clone(), proj);
    (Arc::unwrap_or_clone(q), pi)
}

/// Vertexwise basis of the radical: the sum of arrow images.
pub fn radical_bases(m: &Rep) -> Vec<Mat> {
    (0..m.alg.n())
        .map(|i| {
            if i == 0 {
                return Mat::zeros(m.field, m.dims[0], 0);
            }
            let imgs: Vec<Mat> = (0..m.alg.r()).map(|s| m.maps[s][i - 1].clone()).collect();
            Mat::hstack_all(m.field, m.dims[i], &imgs).column_space()
        })
        .collect()
}

pub fn radical_rep(m: &Rep) -> (Rep, RepMorphism) {
    subrep(m, radical_bases(m))
}

/// `M / rad M` with its projection.
pub fn top(m: &Rep) -> (Rep, RepMorphism) {
    quotient(m, &radical_bases(m))
}

/// Elements killed by every arrow, with the inclusion.
pub fn socle(m: &Rep) -> (Rep, RepMorphism) {
    let n = m.alg.n();
    let bases = (0..n)
        .map(|i| {
            if i == n - 1 {
                return Mat::identity(m.field, m.dims[i]);
            }
            let stacked: Vec<Mat> = (0..m.alg.r()).map(|s| m.maps[s][i].clone()).collect();
            Mat::vstack_all(m.field, m.dims[i], &stacked).kernel()
        })
        .collect();
    subrep(m, bases)
}

pub fn direct_sum(a: &Rep, b: &Rep) -> Result<Rep> {
    a.same_category(b)?;
    let dims = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
    let maps = a
        .maps
        .iter()
        .zip(&b.maps)
        .map(|(pa, pb)| pa.iter().zip(pb).map(|(x, y)| Mat::block_diag(a.field, &[x.clone(), y.clone()])).collect())
        .collect();
    Ok(Rep::new_unchecked(a.alg, a.field, dims, maps))
}

pub fn direct_sum_all(alg: AlgebraData, field: FieldSpec, parts: &[Rep]) -> Result<Rep> {
    parts.iter().try_fold(Rep::zero(alg, field), |acc, p| direct_sum(&acc, p))
}

pub fn kernel_of(f: &RepMorphism) -> (Rep, RepMorphism) {
    subrep(&f.source, f.blocks.iter().map(Mat::kernel).collect())
}

pub fn image_bases(f: &RepMorphism) -> Vec<Mat> {
    f.blocks.iter().map(Mat::column_space).collect()
}

pub fn cokernel_of(f: &RepMorphism) -> (Rep, RepMorphism) {
    quotient(&f.target, &image_bases(f))
}

/// Pushout of `f: K → P` and `g: K → N`, with legs `P → E` and `N → E`.
pub fn pushout(f: &RepMorphism, g: &RepMorphism) -> Result<(Rep, RepMorphism, RepMorphism)> {
    if f.source.dims != g.source.dims {
        return Err(Error::Shape("pushout legs need a common source".into()));
    }
    let (p, n) = (&f.target, &g.target);
    let sum = Arc::new(direct_sum(p, n)?);
    let blocks: Vec<Mat> = f.blocks.iter().zip(&g.blocks).map(|(x, y)| x.vstack(&y.neg())).collect();
    let into = RepMorphism::new_unchecked(f.source.clone(), sum.clone(), blocks);
    let (e, pi) = cokernel_of(&into);
    let e = Arc::new(e);
    let leg = |from: &Arc<Rep>, start: usize| {
        let blocks = (0..from.alg.n())
            .map(|i| {
                let d = sum.dims[i];
                let mut incl = Mat::zeros(from.field, d, from.dims[i]);
                let off = if start == 0 { 0 } else { p.dims[i] };
                incl.set_block(off, 0, &Mat::identity(from.field, from.dims[i]));
                pi.blocks[i].mul(&incl)
            })
            .collect();
        RepMorphism::new_unchecked(from.clone(), e.clone(), blocks)
    };
    let lp = leg(p, 0);
    let ln = leg(n, 1);
    Ok((Arc::unwrap_or_clone(e), lp, ln))
}

/// End(M) with its radical, computed over Q from the trace form.
pub struct EndAlgebra {
    pub(crate) rep: Arc<Rep>,
    pub(crate) space: HomSpace,
    pub dim: usize,
    pub rad_dim: usize,
    /// Columns span the radical, in basis coordinates.
    pub(crate) rad: Mat,
}

impl EndAlgebra {
    pub fn semisimple_dim(&self) -> usize {
        self.dim - self.rad_dim
    }

    pub fn basis(&self) -> Vec<RepMorphism> {
        self.space
            .basis
            .iter()
            .map(|b| RepMorphism::new_unchecked(self.rep.clone(), self.rep.clone(), b.clone()))
            .collect()
    }

    fn coords_mat(&self, blocks: &[Mat]) -> Mat {
        Mat::column(self.rep.field, &self.space.coords(blocks))
    }

    pub fn in_radical(&self, blocks: &[Mat]) -> bool {
        let v = self.coords_mat(blocks);
        v.is_zero() || self.rad.solve(&v).is_some()
    }

    /// Structure constants: `products[i][j]` are the coordinates of `b_i ∘ b_j`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let b = &self.space.basis;
        b.iter()
            .map(|x| {
                b.iter()
                    .map(|y| {
                        let p: Vec<Mat> = x.iter().zip(y).map(|(u, v)| u.mul(v)).collect();
                        self.space.coords(&p)
                    })
                    .collect()
            })
            .collect()
    }
}

fn mul_blocks(x: &[Mat], y: &[Mat]) -> Vec<Mat> {
    x.iter().zip(y).map(|(u, v)| u.mul(v)).collect()
}

fn trace_blocks(f: FieldSpec, x: &[Mat]) -> Scalar {
    x.iter().fold(f.zero(), |acc, b| f.add(&acc, &b.trace()))
}

/// End(M): dimension, radical and semisimple quotient dimension. Over prime
/// fields the trace criterion is unsound, so the operation is refused.
pub fn endo_algebra(m: &Rep) -> Result<EndAlgebra> {
    if !m.field.is_rational() {
        return Err(Error::Unsupported(m.field, "radical of End via the trace form; lift to Q".into()));
    }
    let space = hom_space_raw(m, m)?;
    let d = space.basis.len();
    let f = m.field;
    let mut gram = Mat::zeros(f, d, d);
    for i in 0..d {
        for j in i..d {
            let t = trace_blocks(f, &mul_blocks(&space.basis[i], &space.basis[j]));
            gram.set(i, j, &t);
            gram.set(j, i, &t);
        }
    }
    let rad = gram.kernel();
    Ok(EndAlgebra { rep: Arc::new(m.clone()), dim: d, rad_dim: rad.cols(), rad, space })
}

pub fn is_indecomposable(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let e = endo_algebra(m)?;
    Ok(e.semisimple_dim() == 1)
}

/// End(M) ≅ k.
pub fn is_brick(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(hom_dim(m, m)? == 1)
}

/// Element of the semisimple quotient that is neither zero nor a unit.
fn find_zero_divisor(e: &EndAlgebra, seed: u64) -> Option<Vec<Mat>> {
    let f = e.rep.field;
    let b = &e.space.basis;
    let d = b.len();
    let mut cands: Vec<Vec<Mat>> = b.clone();
    for i in 0..d {
        for j in i + 1..d {
            cands.push(b[i].iter().zip(&b[j]).map(|(x, y)| x.sub(y)).collect());
        }
    }
    for i in 0..d.min(8) {
        for j in 0..d.min(8) {
            cands.push(mul_blocks(&b[i], &b[j]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let c: Vec<Scalar> = (0..d).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
        cands.push(e.space.combine(f, &c));
    }
    for x in cands {
        if e.in_radical(&x) {
            continue;
        }
        if !is_unit_mod_rad(e, &x) {
            return Some(x);
        }
        if let Some(z) = zero_divisor_from_minpoly(e, &x) {
            return Some(z);
        }
    }
    None
}

/// Left multiplication by `x` on End/rad is invertible.
fn is_unit_mod_rad(e: &EndAlgebra, x: &[Mat]) -> bool {
    let f = e.rep.field;
    let cols: Vec<Vec<Scalar>> = e.space.basis.iter().map(|b| e.space.coords(&mul_blocks(x, b))).collect();
    let lx = Mat::from_columns(f, e.dim, &cols).hstack(&e.rad);
    lx.rank() == e.dim
}

/// Minimal polynomial of `x` modulo the radical; a nonconstant proper factor
/// evaluated at `x` is a zero divisor. Only factors found without full
/// factorization are used: repeated factors and rational roots.
fn zero_divisor_from_minpoly(e: &EndAlgebra, x: &[Mat]) -> Option<Vec<Mat>> {
    let f = e.rep.field;
    let one: Vec<Mat> = x.iter().map(|b| Mat::identity(f, b.rows())).collect();
    let mut powers = vec![one];
    let mut span = e.rad.clone();
    let minpoly = loop {
        let p = powers.last().unwrap();
        let v = Mat::column(f, &e.space.coords(p));
        if let Some(sol) = span.solve(&v) {
            let k = powers.len() - 1;
            let mut c: Vec<_> = (0..k).map(|t| -sol.get(e.rad_dim + t, 0).as_rational().unwrap().clone()).collect();
            c.push(malachite_q::Rational::from(1));
            break UniPoly::from_coeffs(c);
        }
        span = span.hstack(&v);
        let next = mul_blocks(p, x);
        powers.push(next);
    };
    let eval = |p: &UniPoly| -> Vec<Mat> {
        let mut acc: Vec<Mat> = x.iter().map(|b| Mat::zeros(f, b.rows(), b.cols())).collect();
        for (k, c) in p.coeffs().iter().enumerate() {
            let s = Scalar::Q(c.clone());
            acc = acc.iter().zip(&powers[k]).map(|(a, b)| a.add(&b.scale(&s))).collect();
        }
        acc
    };
    let deg = minpoly.degree()?;
    if deg <= 1 {
        return None;
    }
    let sf = minpoly.squarefree();
    if sf.degree() != Some(deg) {
        return Some(eval(&sf));
    }
    let root = minpoly.rational_roots()?.into_iter().next()?;
    Some(eval(&UniPoly::from_coeffs(vec![-root, malachite_q::Rational::from(1)])))
}

/// Idempotent of End(M) from a zero divisor `a` modulo the radical.
fn idempotent_from(e: &EndAlgebra, a: &[Mat]) -> Vec<Mat> {
    let f = e.rep.field;
    let d = e.dim;
    // Solve a y a ≡ a (mod rad).
    let cols: Vec<Vec<Scalar>> = e
        .space
        .basis
        .iter()
        .map(|b| e.space.coords(&mul_blocks(&mul_blocks(a, b), a)))
        .collect();
    let sys = Mat::from_columns(f, d, &cols).hstack(&e.rad);
    let rhs = Mat::column(f, &e.space.coords(a));
    let sol = sys.solve(&rhs).expect("semisimple quotients are von Neumann regular");
    let y = e.space.combine(f, &(0..d).map(|k| sol.get(k, 0)).collect::<Vec<_>>());
    let mut x = mul_blocks(&y, a);
    // Lift modulo the radical: x ← 3x² − 2x³.
    loop {
        let x2 = mul_blocks(&x, &x);
        if x2 == x {
            return x;
        }
        let x3 = mul_blocks(&x2, &x);
        x = x2
            .iter()
            .zip(&x3)
            .map(|(p, q)| p.scale(&f.from_i64(3)).sub(&q.scale(&f.from_i64(2))))
            .collect();
    }
}

fn split_indecomposables(m: &Rep, out: &mut Vec<Rep>, seed: u64) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let e = endo_algebra(m)?;
    if e.semisimple_dim() == 1 {
        out.push(m.clone());
        return Ok(());
    }
    let Some(a) = find_zero_divisor(&e, seed) else {
        return Err(Error::NonSplitQuotient(format!(
            "End/rad has dimension {} but no zero divisor was found",
            e.semisimple_dim()
        )));
    };
    let idem = idempotent_from(&e, &a);
    let f = m.field;
    let im: Vec<Mat> = idem.iter().map(Mat::column_space).collect();
    let complement: Vec<Mat> = idem
        .iter()
        .map(|x| Mat::identity(f, x.rows()).sub(x).column_space())
        .collect();
    split_indecomposables(&subrep(m, im).0, out, seed)?;
    split_indecomposables(&subrep(m, complement).0, out, seed)
}

/// Krull-Schmidt decomposition over Q, summands grouped up to isomorphism.
pub fn decompose(m: &Rep) -> Result<Vec<(Rep, usize)>> {
    let mut parts = Vec::new();
    split_indecomposables(m, &mut parts, DEFAULT_SEED)?;
    let mut groups: Vec<(Rep, usize)> = Vec::new();
    'next: for p in parts {
        for (g, k) in groups.iter_mut() {
            if iso(g, &p)? {
                *k += 1;
                continue 'next;
            }
        }
        groups.push((p, 1));
    }
    Ok(groups)
}
