//! Inverse translate computed from an injective copresentation and
//! `Hom(DB, −)`, without going through the duality.

use std::sync::Arc;

use beilinson::algebra::monomials;
use beilinson::construct::injective;
use beilinson::exactla::{FieldSpec, Mat};
use beilinson::rep::{cokernel_of, direct_sum_all, hom_space, kernel_of, socle, Rep, RepMorphism};
use beilinson::AlgebraData;

/// Right multiplication by the `s`-th arrow out of `j`, as a map
/// `I(j + 1) → I(j)` on the dual monomial bases: `δ_f ↦ δ_{f − e_s}`.
fn right_arrow(alg: AlgebraData, field: FieldSpec, j: usize, s: usize) -> RepMorphism {
    let src = Arc::new(injective(alg, field, j + 1).unwrap());
    let dst = Arc::new(injective(alg, field, j).unwrap());
    let blocks = (0..alg.n())
        .map(|v| {
            let mut b = Mat::zeros(field, dst.dims()[v], src.dims()[v]);
            if v <= j {
                let from = monomials(alg.r(), j + 1 - v);
                let to = monomials(alg.r(), j - v);
                for (c, f) in from.iter().enumerate() {
                    if f[s] > 0 {
                        let mut g = f.clone();
                        g[s] -= 1;
                        let row = to.iter().position(|t| *t == g).unwrap();
                        b.set(row, c, &field.one());
                    }
                }
            }
            b
        })
        .collect();
    RepMorphism::new(src, dst, blocks).expect("right multiplication is a morphism")
}

fn flatten(blocks: &[Mat]) -> Vec<beilinson::exactla::Scalar> {
    blocks.iter().flat_map(|b| (0..b.rows()).flat_map(move |i| (0..b.cols()).map(move |k| b.get(i, k)))).collect()
}

/// Coordinates of `g` in the basis `basis` of a Hom space.
fn coords(field: FieldSpec, basis: &[RepMorphism], g: &RepMorphism) -> Vec<beilinson::exactla::Scalar> {
    let vecs: Vec<_> = basis.iter().map(|b| flatten(b.blocks())).collect();
    let len = flatten(g.blocks()).len();
    let a = Mat::from_columns(field, len, &vecs);
    let rhs = Mat::column(field, &flatten(g.blocks()));
    let x = a.solve(&rhs).expect("lies in the Hom space");
    x.col(0)
}

/// `Hom(DB, X)` with its Hom bases at each vertex.
struct NuInverse {
    rep: Rep,
    bases: Vec<Vec<RepMorphism>>,
}

fn nu_inverse(x: &Rep) -> NuInverse {
    let (alg, f) = (x.algebra(), x.field());
    let n = alg.n();
    let bases: Vec<Vec<RepMorphism>> =
        (0..n).map(|j| hom_space(&injective(alg, f, j).unwrap(), x).unwrap()).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let maps = (0..alg.r())
        .map(|s| {
            (0..n - 1)
                .map(|j| {
                    let rho = right_arrow(alg, f, j, s);
                    let cols: Vec<_> = bases[j].iter().map(|g| coords(f, &bases[j + 1], &g.compose(&rho))).collect();
                    Mat::from_columns(f, dims[j + 1], &cols)
                })
                .collect()
        })
        .collect();
    NuInverse { rep: Rep::new(alg, f, dims, maps).unwrap(), bases }
}

fn nu_inverse_map(f: &RepMorphism, src: &NuInverse, dst: &NuInverse) -> RepMorphism {
    let field = f.source().field();
    let blocks = (0..src.bases.len())
        .map(|j| {
            let cols: Vec<_> = src.bases[j].iter().map(|g| coords(field, &dst.bases[j], &f.compose(g))).collect();
            Mat::from_columns(field, dst.bases[j].len(), &cols)
        })
        .collect();
    RepMorphism::new(Arc::new(src.rep.clone()), Arc::new(dst.rep.clone()), blocks).unwrap()
}

/// Injective envelope `M → ⊕ I(j)^{dim soc_j}`.
fn envelope(m: &Rep) -> RepMorphism {
    let (alg, f) = (m.algebra(), m.field());
    let (soc, inc) = socle(m);
    let mut parts = Vec::new();
    let mut pieces: Vec<RepMorphism> = Vec::new();
    for j in 0..alg.n() {
        let k = soc.dims()[j];
        if k == 0 {
            continue;
        }
        // Functionals on M_j that are dual to the socle basis.
        let s = inc.block(j);
        let lambda = s.transpose().solve(&Mat::identity(f, k)).unwrap().transpose();
        let target = injective(alg, f, j).unwrap();
        let homs = hom_space(m, &target).unwrap();
        // A map M → I(j) is determined by its functional at vertex j.
        let at_j: Vec<_> = homs.iter().map(|h| h.block(j).row(0)).collect();
        let a = Mat::from_columns(f, m.dims()[j], &at_j);
        for t in 0..k {
            let c = a.solve(&Mat::column(f, &lambda.row(t))).unwrap().col(0);
            let mut g = RepMorphism::zero(homs[0].source(), homs[0].target());
            for (h, ci) in homs.iter().zip(&c) {
                g = g.add(&h.scale(ci));
            }
            pieces.push(g);
            parts.push(target.clone());
        }
    }
    let e = Arc::new(direct_sum_all(alg, f, &parts).unwrap());
    let blocks = (0..alg.n())
        .map(|j| Mat::vstack_all(f, m.dims()[j], &pieces.iter().map(|g| g.block(j).clone()).collect::<Vec<_>>()))
        .collect();
    RepMorphism::new(Arc::new(m.clone()), e, blocks).unwrap()
}

/// `τ⁻¹ M = coker(ν⁻¹ E0 → ν⁻¹ E1)` for the minimal copresentation
/// `0 → M → E0 → E1`.
pub fn tau_inverse_via_copresentation(m: &Rep) -> Rep {
    if m.is_zero() {
        return m.clone();
    }
    let iota = envelope(m);
    assert!(kernel_of(&iota).0.is_zero(), "envelope must be injective");
    let (c, pi) = cokernel_of(&iota);
    let e1 = if c.is_zero() { None } else { Some(envelope(&c)) };
    let nu0 = nu_inverse(iota.target());
    match e1 {
        None => Rep::zero(m.algebra(), m.field()),
        Some(j) => {
            let f = j.compose(&pi);
            let nu1 = nu_inverse(f.target());
            cokernel_of(&nu_inverse_map(&f, &nu0, &nu1)).0
        }
    }
}
