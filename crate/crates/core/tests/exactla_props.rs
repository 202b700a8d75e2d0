use beilinson::exactla::groebner::zero_locus_is_origin;
use beilinson::exactla::pencil::pencil_full_rank_r2;
use beilinson::exactla::poly::MultiPoly;
use beilinson::exactla::{FieldSpec, Mat};
use malachite_q::Rational;
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;
const BUDGET: usize = 2000;

fn matrix(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Mat {
    Mat::from_i64(field, rows, cols, &entries[..rows * cols])
}

fn entries() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..7, 1usize..7, prop::collection::vec(-3i64..=3, 36))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_transpose_invariant((r, c, v) in entries(), p in prop::sample::select(vec![2u64, 5, 7])) {
        for f in [Q, FieldSpec::Prime(p)] {
            let m = matrix(f, r, c, &v);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn kernel_is_annihilated_and_complementary((r, c, v) in entries(), p in prop::sample::select(vec![3u64, 11])) {
        for f in [Q, FieldSpec::Prime(p)] {
            let m = matrix(f, r, c, &v);
            let k = m.kernel();
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
            prop_assert_eq!(m.rank() + k.cols(), c);
        }
    }
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

fn linear(coeffs: &[i64]) -> MultiPoly {
    MultiPoly::linear(&coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>())
}

fn pow(p: &MultiPoly, e: u32) -> MultiPoly {
    (0..e).fold(MultiPoly::constant(p.nvars(), int(1)), |acc, _| acc.mul(p))
}

/// Random homogeneous form of the given degree with small integer coefficients.
fn form(nvars: usize, degree: u32, coeffs: &[i64]) -> MultiPoly {
    let monos = all_monomials(nvars, degree);
    let terms = monos.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, int(c)));
    MultiPoly::from_terms(nvars, terms)
}

fn all_monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![degree]];
    }
    (0..=degree)
        .rev()
        .flat_map(|a| {
            all_monomials(nvars - 1, degree - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

/// Nonzero points of `F_p^r` up to scaling, as integer representatives.
fn projective_points(p: u64, r: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        for code in 0..(p as usize).pow(free as u32) {
            let mut v = vec![0i64; r];
            v[lead] = 1;
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (c % p as usize) as i64;
                c /= p as usize;
            }
            out.push(v);
        }
    }
    out
}

fn vanishes_mod(g: &MultiPoly, x: &[i64], p: u64) -> bool {
    let v = g.eval(&x.iter().map(|&a| int(a)).collect::<Vec<_>>());
    FieldSpec::reduce_rational(p, &v) == Some(0)
}

fn has_nonzero_fp_zero(gens: &[MultiPoly], r: usize, p: u64) -> bool {
    projective_points(p, r).iter().any(|x| gens.iter().all(|g| vanishes_mod(g, x, p)))
}

/// Applies the unimodular upper triangular change of variables with the
/// given above-diagonal entries.
fn unimodular_change(r: usize, upper: &[i64]) -> Vec<MultiPoly> {
    let mut k = 0;
    (0..r)
        .map(|i| {
            let mut c = vec![0i64; r];
            c[i] = 1;
            for slot in c.iter_mut().skip(i + 1) {
                *slot = upper[k % upper.len()];
                k += 1;
            }
            linear(&c)
        })
        .collect()
}

fn ideal_case() -> impl Strategy<Value = (usize, Vec<u32>, Vec<i64>, Vec<i64>, u32)> {
    (
        2usize..=3,
        prop::collection::vec(1u32..=2, 3),
        prop::collection::vec(-2i64..=2, 6),
        prop::collection::vec(-2i64..=2, 10),
        1u32..=2,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Pure powers in unimodular coordinates vanish only at the origin over
    /// every field, so both sides must report "origin only".
    #[test]
    fn origin_only_agrees_with_enumeration((r, degs, upper, extra, d) in ideal_case()) {
        let coords = unimodular_change(r, &upper);
        let mut gens: Vec<MultiPoly> = coords.iter().zip(&degs).map(|(l, &e)| pow(l, e)).collect();
        gens.push(form(r, d, &extra));
        gens.retain(|g| !g.is_zero());
        prop_assert!(zero_locus_is_origin(&gens, BUDGET).unwrap());
        for p in [5, 7] {
            prop_assert!(!has_nonzero_fp_zero(&gens, r, p));
        }
    }

    /// Generators through a primitive integer point: both sides see it.
    #[test]
    fn common_point_agrees_with_enumeration(
        (r, _, point, extra, d) in ideal_case(),
        k in 1usize..=3,
    ) {
        let v: Vec<i64> = point[..r].to_vec();
        prop_assume!(v.iter().any(|&x| x != 0));
        let mut gens = Vec::new();
        for t in 0..k {
            // v_b x_a − v_a x_b vanishes at v
            let (a, b) = (t % r, (t + 1) % r);
            let mut c = vec![0i64; r];
            c[a] += v[b];
            c[b] -= v[a];
            let l = linear(&c);
            let g = if d == 1 { l } else { l.mul(&form(r, d - 1, &extra[t..])) };
            if !g.is_zero() {
                gens.push(g);
            }
        }
        prop_assume!(!gens.is_empty());
        prop_assert!(!zero_locus_is_origin(&gens, BUDGET).unwrap());
        for p in [5, 7] {
            prop_assert!(has_nonzero_fp_zero(&gens, r, p));
        }
    }

    /// For arbitrary ideals only the sound direction over Q is checked: an
    /// origin certificate excludes nonzero integer zeros.
    #[test]
    fn origin_certificate_excludes_integer_points(
        r in 2usize..=3,
        coeffs in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 1..=3),
        degs in prop::collection::vec(1u32..=2, 3),
    ) {
        let gens: Vec<MultiPoly> = coeffs.iter().zip(&degs).map(|(c, &d)| form(r, d, c)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        if zero_locus_is_origin(&gens, BUDGET).unwrap() {
            let grid: Vec<i64> = (-2..=2).collect();
            for x in grid_points(&grid, r) {
                if x.iter().any(|&a| a != 0) {
                    let xs: Vec<Rational> = x.iter().map(|&a| int(a)).collect();
                    prop_assert!(gens.iter().any(|g| g.eval(&xs) != int(0)), "common zero {x:?}");
                }
            }
        }
    }
}

fn grid_points(values: &[i64], r: usize) -> Vec<Vec<i64>> {
    (0..r).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|v| values.iter().map(move |&x| {
                let mut w = v.clone();
                w.push(x);
                w
            }))
            .collect()
    })
}

fn fp_rank_drop_on_line(a: &Mat, b: &Mat, target: usize, p: u64) -> bool {
    let f = FieldSpec::Prime(p);
    let at = |s: i64, t: i64| a.scale(&f.from_i64(s)).add(&b.scale(&f.from_i64(t))).rank() < target;
    at(0, 1) || (0..p as i64).any(|t| at(1, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Over F_p the pencil check speaks about the closure and the sweep about
    /// rational points: a holding certificate forbids rational drops, and a
    /// rational drop forces failure.
    #[test]
    fn pencil_agrees_with_projective_line_sweep(
        rows in 1usize..=4,
        cols in 1usize..=4,
        a in prop::collection::vec(-3i64..=3, 16),
        b in prop::collection::vec(-3i64..=3, 16),
        cut in 0usize..=1,
        p in prop::sample::select(vec![5u64, 7, 11, 13]),
    ) {
        let f = FieldSpec::Prime(p);
        let (ma, mb) = (matrix(f, rows, cols, &a), matrix(f, rows, cols, &b));
        let target = rows.min(cols).saturating_sub(cut).max(1);
        let exact = pencil_full_rank_r2(&ma, &mb, target);
        let dropped = fp_rank_drop_on_line(&ma, &mb, target, p);
        prop_assert!(!(exact && dropped), "certificate holds but a rational point drops");
    }
}

#[test]
fn pencil_failure_at_rational_point_is_seen_by_sweep() {
    // det = x² − 2y² has no root in F_5 but two in F_7
    let a = Mat::from_rows(Q, &[vec![1, 0], vec![0, 1]]);
    let b = Mat::from_rows(Q, &[vec![0, 2], vec![1, 0]]);
    for (p, drops) in [(5, false), (7, true)] {
        let f = FieldSpec::Prime(p);
        let (ma, mb) = (a.convert(f).unwrap(), b.convert(f).unwrap());
        assert!(!pencil_full_rank_r2(&ma, &mb, 2));
        assert_eq!(fp_rank_drop_on_line(&ma, &mb, 2, p), drops);
    }
}
