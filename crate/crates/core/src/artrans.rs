//! Auslander-Reiten translation, Ext¹ and almost split sequences.
//!
//! `τM` is computed from a minimal projective presentation `P1 → P0 → M`
//! as the kernel of `νP1 → νP0`, where `ν` sends `P(i)` to `I(i)`; `τ⁻¹` is
//! `DτD`. Morphisms between indecomposable projectives are right
//! multiplications by algebra elements, stored as coefficient vectors over
//! the path basis.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{monomial_index, monomials, multiply, path_basis, AlgebraData, PathBasisElt};
use crate::construct::{dual, injective, projective};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Mat, Scalar};
use crate::jordan::{check_cjt, check_eip, check_ekp, sweep_primes, PropertyReport, Strategy, Verdict};
use crate::rep::{direct_sum_all, hom_dim, hom_space_raw, is_indecomposable, kernel_of, pushout, radical_bases, Rep, RepMorphism};

/// Images of `v ∈ M_i` under all paths starting at `i`: at vertex `j` a
/// matrix whose columns follow `path_basis(i, j)`.
pub fn path_images(m: &Rep, i: usize, v: &Mat) -> Vec<Mat> {
    let (n, r) = (m.algebra().n(), m.algebra().r());
    let f = m.field();
    let mut out: Vec<Mat> = (0..n).map(|j| Mat::zeros(f, m.dims()[j], 0)).collect();
    if i >= n {
        return out;
    }
    out[i] = v.clone();
    for j in i + 1..n {
        let prev = monomials(r, j - 1 - i);
        let cols: Vec<Vec<Scalar>> = monomials(r, j - i)
            .into_iter()
            .map(|mut e| {
                let s = e.iter().position(|&x| x > 0).unwrap();
                e[s] -= 1;
                let k = monomial_index(&prev, &e).unwrap();
                m.map(s, j - 1).mul(&out[j - 1].select_cols(&[k])).col(0)
            })
            .collect();
        out[j] = Mat::from_columns(f, m.dims()[j], &cols);
    }
    out
}

/// Vertexwise complements of the radical, spanned by unit vectors: a
/// minimal generating set.
fn generators(m: &Rep) -> Vec<(usize, Mat)> {
    let f = m.field();
    let mut out = Vec::new();
    for (i, rad) in radical_bases(m).into_iter().enumerate() {
        let d = m.dims()[i];
        let (_, piv) = rad.hstack(&Mat::identity(f, d)).rref();
        for c in piv.into_iter().filter(|&c| c >= rad.cols()) {
            let mut v = Mat::zeros(f, d, 1);
            v.set(c - rad.cols(), 0, &f.one());
            out.push((i, v));
        }
    }
    out
}

pub fn projective_sum(alg: AlgebraData, field: FieldSpec, vertices: &[usize]) -> Result<Rep> {
    let parts: Vec<Rep> = vertices.iter().map(|&v| projective(alg, field, v)).collect::<Result<_>>()?;
    direct_sum_all(alg, field, &parts)
}

pub fn injective_sum(alg: AlgebraData, field: FieldSpec, vertices: &[usize]) -> Result<Rep> {
    let parts: Vec<Rep> = vertices.iter().map(|&v| injective(alg, field, v)).collect::<Result<_>>()?;
    direct_sum_all(alg, field, &parts)
}

/// `P0 → M` sending the generator of each summand `P(i)` to the given vector.
fn map_from_projectives(m: &Arc<Rep>, p0: &Arc<Rep>, gens: &[(usize, Mat)]) -> RepMorphism {
    let n = m.algebra().n();
    let images: Vec<Vec<Mat>> = gens.iter().map(|(i, v)| path_images(m, *i, v)).collect();
    let blocks = (0..n)
        .map(|j| Mat::hstack_all(m.field(), m.dims()[j], &images.iter().map(|im| im[j].clone()).collect::<Vec<_>>()))
        .collect();
    RepMorphism::new_unchecked(p0.clone(), m.clone(), blocks)
}

/// Run-length form of a sorted vertex list.
pub fn multiplicities(vertices: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &v in vertices {
        match out.last_mut() {
            Some((w, k)) if *w == v => *k += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// `P1 → P0 → M → 0` with `P0 → M` a projective cover and `P1 → K` a
/// projective cover of its kernel.
#[derive(Clone, Debug)]
pub struct ProjPresentation {
    pub module: Arc<Rep>,
    /// Vertex of each indecomposable summand of `P0`, ascending.
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    /// `p[k][l]`: coefficients over `path_basis(p0[l], p1[k])` of the
    /// algebra element by which summand `k` of `P1` maps into summand `l`.
    pub p: Vec<Vec<Vec<Scalar>>>,
    pub cover: RepMorphism,
    /// Inclusion of the kernel `K` of the cover into `P0`.
    pub kernel: RepMorphism,
}

pub fn min_proj_presentation(m: &Rep) -> Result<ProjPresentation> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let alg = m.algebra();
    let f = m.field();
    let ma = Arc::new(m.clone());
    let gens = generators(m);
    let p0: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let p0_rep = Arc::new(projective_sum(alg, f, &p0)?);
    let cover = map_from_projectives(&ma, &p0_rep, &gens);
    let (k, kernel) = kernel_of(&cover);
    let kgens = generators(&k);
    // Summand offsets inside P0 at each vertex.
    let offsets: Vec<Vec<usize>> = (0..alg.n())
        .map(|j| {
            let mut acc = 0;
            p0.iter()
                .map(|&b| {
                    let o = acc;
                    acc += if j >= b { path_basis(&alg, b, j).map_or(0, |v| v.len()) } else { 0 };
                    o
                })
                .collect()
        })
        .collect();
    let mut p1 = Vec::new();
    let mut p = Vec::new();
    for (a, v) in &kgens {
        let img = kernel.block(*a).mul(v).col(0);
        let row: Vec<Vec<Scalar>> = p0
            .iter()
            .enumerate()
            .map(|(l, &b)| {
                let len = if *a >= b { path_basis(&alg, b, *a)?.len() } else { 0 };
                Ok(img[offsets[*a][l]..offsets[*a][l] + len].to_vec())
            })
            .collect::<Result<_>>()?;
        p1.push(*a);
        p.push(row);
    }
    debug_assert!(kernel.blocks().iter().zip(radical_bases(&p0_rep)).all(|(kb, rb)| rb.hstack(kb).rank() == rb.rank()));
    Ok(ProjPresentation { module: ma, p0, p1, p, cover, kernel })
}

impl ProjPresentation {
    /// The presentation map `P1 → P0` as a morphism of representations.
    pub fn presentation_map(&self) -> Result<RepMorphism> {
        let m = &self.module;
        let (alg, f) = (m.algebra(), m.field());
        let p0 = Arc::new(projective_sum(alg, f, &self.p0)?);
        let p1 = Arc::new(projective_sum(alg, f, &self.p1)?);
        let gens: Vec<(usize, Mat)> = self
            .p
            .iter()
            .zip(&self.p1)
            .map(|(row, &a)| (a, Mat::column(f, &row.concat())))
            .collect();
        Ok(map_from_projectives(&p0, &p1, &gens))
    }
}

/// `ν` of the map `⊕ P(p1[k]) → ⊕ P(p0[l])` given by path-basis coefficients:
/// a morphism `⊕ I(p1[k]) → ⊕ I(p0[l])`.
pub fn nakayama_of(
    alg: AlgebraData,
    field: FieldSpec,
    p: &[Vec<Vec<Scalar>>],
    p1: &[usize],
    p0: &[usize],
) -> Result<RepMorphism> {
    if p.len() != p1.len() {
        return Err(Error::Shape(format!("{} rows for {} summands", p.len(), p1.len())));
    }
    for (row, &a) in p.iter().zip(p1) {
        alg.check_vertex(a)?;
        if row.len() != p0.len() {
            return Err(Error::Shape(format!("row of length {} for {} summands", row.len(), p0.len())));
        }
        for (u, &b) in row.iter().zip(p0) {
            alg.check_vertex(b)?;
            let expected = path_basis(&alg, b, a)?.len();
            if u.len() != expected {
                return Err(Error::Shape(format!("entry from {a} to {b} has {} coefficients, expected {expected}", u.len())));
            }
        }
    }
    let src = Arc::new(injective_sum(alg, field, p1)?);
    let dst = Arc::new(injective_sum(alg, field, p0)?);
    let n = alg.n();
    let blocks = (0..n)
        .map(|j| {
            // Dual bases at vertex j: paths from j into each summand vertex.
            let rows_of: Vec<Vec<PathBasisElt>> = p0.iter().map(|&b| paths_into(&alg, j, b)).collect();
            let cols_of: Vec<Vec<PathBasisElt>> = p1.iter().map(|&a| paths_into(&alg, j, a)).collect();
            let mut out = Mat::zeros(field, dst.dims()[j], src.dims()[j]);
            let mut c0 = 0;
            for (k, &a) in p1.iter().enumerate() {
                let mut r0 = 0;
                for (l, &b) in p0.iter().enumerate() {
                    let ubasis = path_basis(&alg, b, a).unwrap();
                    for (t, coef) in p[k][l].iter().enumerate() {
                        if field.is_zero(coef) {
                            continue;
                        }
                        for (yi, y) in rows_of[l].iter().enumerate() {
                            let Some(prod) = multiply(&alg, &ubasis[t], y) else { continue };
                            let xi = cols_of[k].iter().position(|x| x.exponent == prod.exponent).unwrap();
                            let cur = out.get(r0 + yi, c0 + xi);
                            out.set(r0 + yi, c0 + xi, &field.add(&cur, coef));
                        }
                    }
                    r0 += rows_of[l].len();
                }
                c0 += cols_of[k].len();
            }
            out
        })
        .collect();
    Ok(RepMorphism::new_unchecked(src, dst, blocks))
}

fn paths_into(alg: &AlgebraData, j: usize, a: usize) -> Vec<PathBasisElt> {
    if j > a {
        Vec::new()
    } else {
        path_basis(alg, j, a).unwrap()
    }
}

/// Auslander-Reiten translate; zero on projectives.
pub fn tau(m: &Rep) -> Result<Rep> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    let pres = min_proj_presentation(m)?;
    let nu = nakayama_of(m.algebra(), m.field(), &pres.p, &pres.p1, &pres.p0)?;
    Ok(kernel_of(&nu).0)
}

/// Inverse translate `DτD`; zero on injectives.
pub fn tau_inverse(m: &Rep) -> Result<Rep> {
    Ok(dual(&tau(&dual(m))?))
}

/// Coordinates of the image of `Hom(P0, N) → Hom(K, N)` and a basis of
/// `Hom(K, N)`.
fn restriction_image(pres: &ProjPresentation, n: &Rep) -> Result<(crate::rep::HomSpace, Mat)> {
    let k = pres.kernel.source();
    let f = n.field();
    let space = hom_space_raw(k, n)?;
    let na = Arc::new(n.clone());
    let p0 = pres.kernel.target();
    let mut cols = Vec::new();
    // Yoneda: a morphism P(b) → N is determined by the image of e_b in N_b.
    for (l, &b) in pres.p0.iter().enumerate() {
        for c in 0..n.dims()[b] {
            let mut v = Mat::zeros(f, n.dims()[b], 1);
            v.set(c, 0, &f.one());
            let gens: Vec<(usize, Mat)> = pres
                .p0
                .iter()
                .enumerate()
                .map(|(l2, &b2)| if l2 == l { (b2, v.clone()) } else { (b2, Mat::zeros(f, n.dims()[b2], 1)) })
                .collect();
            let g = map_from_projectives(&na, p0, &gens);
            cols.push(space.coords(g.compose(&pres.kernel).blocks()));
        }
    }
    let img = Mat::from_columns(f, space.basis.len(), &cols);
    Ok((space, img))
}

pub fn ext1_dim(m: &Rep, n: &Rep) -> Result<usize> {
    if m.algebra() != n.algebra() || m.field() != n.field() {
        return Err(Error::AlgebraMismatch(m.algebra().n(), m.algebra().r(), n.algebra().n(), n.algebra().r()));
    }
    if m.is_zero() || n.is_zero() {
        return Ok(0);
    }
    let pres = min_proj_presentation(m)?;
    let (space, img) = restriction_image(&pres, n)?;
    Ok(space.basis.len() - img.rank())
}

/// Cocycles `K → N` whose classes form a basis of `Ext¹(M, N)`, where `K`
/// is the kernel in `pres`.
pub fn ext1_basis_with(pres: &ProjPresentation, n: &Rep) -> Result<Vec<RepMorphism>> {
    let (space, img) = restriction_image(pres, n)?;
    let f = n.field();
    let d = space.basis.len();
    let (_, piv) = img.hstack(&Mat::identity(f, d)).rref();
    let k = pres.kernel.source().clone();
    let na = Arc::new(n.clone());
    Ok(piv
        .into_iter()
        .filter(|&c| c >= img.cols())
        .map(|c| RepMorphism::new_unchecked(k.clone(), na.clone(), space.basis[c - img.cols()].clone()))
        .collect())
}

pub fn ext1_basis(m: &Rep, n: &Rep) -> Result<(ProjPresentation, Vec<RepMorphism>)> {
    let pres = min_proj_presentation(m)?;
    let b = ext1_basis_with(&pres, n)?;
    Ok((pres, b))
}

/// A short exact sequence `0 → N → E → M → 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Rep,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

/// The extension of `M` by `N` classified by the cocycle `xi: K → N`.
pub fn extension_rep(xi: &RepMorphism, pres: &ProjPresentation) -> Result<Extension> {
    if xi.source().dims() != pres.kernel.source().dims() {
        return Err(Error::Shape("cocycle must start at the kernel of the presentation".into()));
    }
    let (e, from_p0, from_n) = pushout(&pres.kernel, xi)?;
    let m = &pres.module;
    let ea = Arc::new(e.clone());
    // E → M induced by (cover, 0) on P0 ⊕ N.
    let blocks = (0..m.algebra().n())
        .map(|j| {
            let legs = from_p0.block(j).hstack(from_n.block(j));
            let rhs = pres.cover.block(j).hstack(&Mat::zeros(m.field(), m.dims()[j], xi.target().dims()[j]));
            legs.transpose().solve(&rhs.transpose()).expect("cover factors through the pushout").transpose()
        })
        .collect();
    let projection = RepMorphism::new_unchecked(ea.clone(), m.clone(), blocks);
    let inclusion = RepMorphism::new_unchecked(xi.target().clone(), ea, from_n.blocks().to_vec());
    Ok(Extension { middle: e, inclusion, projection })
}

/// `0 → M → E → τ⁻¹M → 0`.
#[derive(Clone, Debug)]
pub struct ArSequence {
    pub left: Rep,
    pub middle: Rep,
    pub right: Rep,
    pub extension: Extension,
}

/// The almost split sequence starting at a brick `M` with one-dimensional
/// `Ext¹(τ⁻¹M, M)`.
pub fn ar_sequence_from(m: &Rep) -> Result<ArSequence> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let end = hom_dim(m, m)?;
    if end != 1 {
        return Err(Error::Precondition(format!("not a brick: dim End = {end}")));
    }
    let right = tau_inverse(m)?;
    if right.is_zero() {
        return Err(Error::Precondition("module is injective".into()));
    }
    let (pres, basis) = ext1_basis(&right, m)?;
    if basis.len() != 1 {
        return Err(Error::Precondition(format!("Ext¹(τ⁻¹M, M) has dimension {}, expected 1", basis.len())));
    }
    let extension = extension_rep(&basis[0], &pres)?;
    Ok(ArSequence { left: m.clone(), middle: extension.middle.clone(), right, extension })
}

/// Whether the middle term of the almost split sequence at `m` is
/// indecomposable.
pub fn is_quasi_simple(m: &Rep) -> Result<bool> {
    let s = ar_sequence_from(m)?;
    is_indecomposable(&s.middle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Eip,
    Ekp,
    Neither,
    /// The translate vanished: the previous module was projective.
    ProjectiveHit,
    /// The inverse translate vanished: the previous module was injective.
    InjectiveHit,
    /// A rank check was inconclusive.
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    /// `ℓ` in `τ^ℓ W`.
    pub offset: i64,
    pub dims: Vec<usize>,
    pub class: Classification,
    pub eip: Option<PropertyReport>,
    pub ekp: Option<PropertyReport>,
    pub cjt: Option<PropertyReport>,
    pub note: Option<String>,
    #[serde(skip)]
    pub rep: Option<Rep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeEntry {
    pub offset: i64,
    pub quasi_length: usize,
    pub dims: Vec<usize>,
    pub cjt: Option<PropertyReport>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub orbit: Vec<OrbitEntry>,
    pub cone: Vec<ConeEntry>,
    /// Quasi-simples between the two cones satisfying neither property;
    /// present only when both cones were reached.
    pub wc_count: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct WindowOptions {
    pub radius: usize,
    pub quasi_length: usize,
    pub strategy: Strategy,
    /// Translates and cone modules are not built beyond this total
    /// dimension; orbit modules above it are only checked by a sweep.
    pub size_cap: usize,
}

impl Default for WindowOptions {
    fn default() -> Self {
        WindowOptions { radius: 2, quasi_length: 2, strategy: Strategy::Auto, size_cap: 200 }
    }
}

fn in_cone(rep: &Option<PropertyReport>) -> Option<bool> {
    match rep.as_ref().map(|r| r.verdict) {
        Some(Verdict::Holds | Verdict::HoldsOverSampledPoints) => Some(true),
        Some(Verdict::Fails) => Some(false),
        _ => None,
    }
}

fn classify(rep: Rep, offset: i64, opts: &WindowOptions) -> OrbitEntry {
    let dims = rep.dims().to_vec();
    let mut entry = OrbitEntry { offset, dims, class: Classification::Undetermined, eip: None, ekp: None, cjt: None, note: None, rep: None };
    let mut notes = Vec::new();
    let sampled = Strategy::Sweep(sweep_primes());
    let strategy = if rep.total_dim() > opts.size_cap {
        notes.push(format!("sampled only: dimension {} exceeds the cap {}", rep.total_dim(), opts.size_cap));
        &sampled
    } else {
        &opts.strategy
    };
    let run = |f: fn(&Rep, &Strategy) -> Result<PropertyReport>| f(&rep, strategy);
    let (eip, ekp, cjt) = (run(check_eip), run(check_ekp), run(check_cjt));
    for res in [&eip, &ekp, &cjt] {
        if let Err(e) = res {
            notes.push(e.to_string());
        }
    }
    entry.eip = eip.ok();
    entry.ekp = ekp.ok();
    entry.cjt = cjt.ok();
    entry.class = match (in_cone(&entry.eip), in_cone(&entry.ekp)) {
        (Some(true), _) => Classification::Eip,
        (_, Some(true)) => Classification::Ekp,
        (Some(false), Some(false)) => Classification::Neither,
        _ => Classification::Undetermined,
    };
    if !notes.is_empty() {
        entry.note = Some(notes.join("; "));
    }
    entry.rep = Some(rep);
    entry
}

/// The τ-orbit of `W = w_module(m, n, r)` within the given radius,
/// classified, together with modules of small quasi-length above it.
pub fn component_window(n: usize, r: usize, m: usize, opts: &WindowOptions) -> Result<ComponentReport> {
    if m <= n {
        return Err(Error::InvalidParameters(format!("need m > n, got m = {m}, n = {n}")));
    }
    let w = crate::construct::w_module(m, n, r, FieldSpec::Rationals)?;
    // (offset, module or the kind of vanishing)
    let mut orbit: Vec<(i64, std::result::Result<Rep, Classification>)> = vec![(0, Ok(w.clone()))];
    for (dir, hit) in [(1i64, Classification::ProjectiveHit), (-1, Classification::InjectiveHit)] {
        let mut cur = w.clone();
        for step in 1..=opts.radius as i64 {
            if cur.total_dim() > opts.size_cap {
                break;
            }
            cur = if dir > 0 { tau(&cur)? } else { tau_inverse(&cur)? };
            if cur.is_zero() {
                orbit.push((dir * step, Err(hit)));
                break;
            }
            orbit.push((dir * step, Ok(cur.clone())));
        }
    }
    orbit.sort_by_key(|e| e.0);
    let entries: Vec<OrbitEntry> = orbit
        .into_par_iter()
        .map(|(offset, rep)| match rep {
            Ok(rep) => classify(rep, offset, opts),
            Err(class) => OrbitEntry { offset, dims: vec![0; n], class, eip: None, ekp: None, cjt: None, note: None, rep: None },
        })
        .collect();
    let cone = cone_entries(&entries, opts);
    Ok(ComponentReport { n, r, m, wc_count: wedge_count(&entries), orbit: entries, cone })
}

/// Number of "neither" entries strictly between the last EKP entry and the
/// first EIP entry, when the EKP side precedes the EIP side in `ℓ`-order.
fn wedge_count(entries: &[OrbitEntry]) -> Option<usize> {
    let first_eip = entries.iter().position(|e| e.class == Classification::Eip)?;
    let last_ekp = entries.iter().rposition(|e| e.class == Classification::Ekp)?;
    if last_ekp >= first_eip {
        return None;
    }
    let between = &entries[last_ekp + 1..first_eip];
    if between.iter().any(|e| e.class != Classification::Neither) {
        return None;
    }
    Some(between.len())
}

/// `X[len]` on the ray starting at the quasi-simple `X`, given its
/// factors `X, τ⁻¹X, …, τ^{1−len}X`. Length 2 is the middle of the almost
/// split sequence at `X`; beyond that `X[len]` is the nonsplit extension
/// `0 → X → X[len] → (τ⁻¹X)[len − 1] → 0`, required to be unique.
pub fn ray_module_from(factors: &[Rep]) -> Result<Rep> {
    match factors.len() {
        0 => Err(Error::InvalidParameters("quasi-length starts at 1".into())),
        1 => Ok(factors[0].clone()),
        _ => {
            let upper = ray_module_from(&factors[1..])?;
            extend_ray(&factors[0], &upper, factors.len())
        }
    }
}

fn extend_ray(x: &Rep, upper: &Rep, len: usize) -> Result<Rep> {
    if len == 2 {
        let end = hom_dim(x, x)?;
        if end != 1 {
            return Err(Error::Precondition(format!("not a brick: dim End = {end}")));
        }
    }
    let (pres, basis) = ext1_basis(upper, x)?;
    if basis.len() != 1 {
        return Err(Error::Precondition(format!("Ext¹ into the quasi-socle has dimension {}, expected 1", basis.len())));
    }
    Ok(extension_rep(&basis[0], &pres)?.middle)
}

/// `X[len]`, computing the factors by repeated inverse translation.
pub fn ray_module(x: &Rep, len: usize) -> Result<Rep> {
    let mut factors = vec![x.clone()];
    while factors.len() < len {
        let next = tau_inverse(factors.last().unwrap())?;
        if next.is_zero() {
            return Err(Error::Precondition("module is injective".into()));
        }
        factors.push(next);
    }
    ray_module_from(&factors)
}

/// Modules `X[len]` above each orbit vertex whose quasi-simple factors all
/// lie in the analysed part of the orbit. `X[len]` at offset `ℓ` is built
/// from `X[len − 1]` at offset `ℓ − 1`.
fn cone_entries(orbit: &[OrbitEntry], opts: &WindowOptions) -> Vec<ConeEntry> {
    use std::collections::BTreeMap;
    let reps: BTreeMap<i64, &Rep> = orbit
        .iter()
        .filter_map(|e| e.rep.as_ref().map(|r| (e.offset, r)))
        .collect();
    let mut out = Vec::new();
    let mut prev: BTreeMap<i64, Rep> = reps.iter().map(|(&l, &r)| (l, r.clone())).collect();
    for len in 2..=opts.quasi_length {
        let jobs: Vec<(i64, &Rep, &Rep)> = reps
            .iter()
            .filter_map(|(&l, &x)| prev.get(&(l - 1)).map(|upper| (l, x, upper)))
            .collect();
        let built: Vec<(i64, std::result::Result<Rep, String>)> = jobs
            .into_par_iter()
            .map(|(l, x, upper)| {
                let total = x.total_dim() + upper.total_dim();
                if total > opts.size_cap {
                    return (l, Err(format!("skipped: dimension {total} exceeds the cap {}", opts.size_cap)));
                }
                (l, extend_ray(x, upper, len).map_err(|e| e.to_string()))
            })
            .collect();
        let mut next = BTreeMap::new();
        let checked: Vec<ConeEntry> = built
            .par_iter()
            .map(|(l, res)| match res {
                Ok(x) => {
                    let (cjt, note) = match check_cjt(x, &opts.strategy) {
                        Ok(r) => (Some(r), None),
                        Err(e) => (None, Some(e.to_string())),
                    };
                    ConeEntry { offset: *l, quasi_length: len, dims: x.dims().to_vec(), cjt, note }
                }
                Err(e) => ConeEntry { offset: *l, quasi_length: len, dims: vec![], cjt: None, note: Some(e.clone()) },
            })
            .collect();
        for (l, res) in built {
            if let Ok(x) = res {
                next.insert(l, x);
            }
        }
        out.extend(checked);
        prev = next;
    }
    out
}
