mod common;

use beilinson::artrans::{tau, tau_inverse};
use beilinson::construct::{dual, iota, m_module, projective, w_module};
use beilinson::jordan::layer_map;
use beilinson::rep::{
    cokernel_of, decompose, direct_sum, direct_sum_all, hom_dim, hom_space, iso, kernel_of, radical_rep, socle, top,
    validate, Rep,
};
use beilinson::exactla::FieldSpec;
use common::{alg, corpus, graded, Q};
use proptest::prelude::*;

const F7: FieldSpec = FieldSpec::Prime(7);

fn assert_valid(what: &str, m: &Rep) {
    if let Err(v) = validate(m) {
        panic!("{what}: {}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "));
    }
}

#[test]
fn every_construction_validates() {
    for (name, m) in corpus(Q).into_iter().chain(corpus(F7)) {
        assert_valid(&name, &m);
        assert_valid(&format!("D {name}"), &dual(&m));
        assert_valid(&format!("rad {name}"), &radical_rep(&m).0);
        assert_valid(&format!("top {name}"), &top(&m).0);
        assert_valid(&format!("soc {name}"), &socle(&m).0);
        if m.algebra().n() < 4 {
            assert_valid(&format!("iota {name}"), &iota(&m).unwrap());
        }
        if m.field() == Q {
            assert_valid(&format!("tau {name}"), &tau(&m).unwrap());
            assert_valid(&format!("tau^-1 {name}"), &tau_inverse(&m).unwrap());
        }
    }
}

#[test]
fn kernels_and_cokernels_of_homs_validate() {
    for (n, r) in [(2, 3), (3, 2)] {
        let ms = graded(n, r, 2, Q);
        for (a, x) in &ms {
            for (b, y) in &ms {
                for f in hom_space(x, y).unwrap().into_iter().take(3) {
                    assert!(f.intertwines(), "{a} -> {b}");
                    assert_valid(&format!("ker {a} -> {b}"), &kernel_of(&f).0);
                    assert_valid(&format!("coker {a} -> {b}"), &cokernel_of(&f).0);
                }
            }
        }
    }
}

#[test]
fn yoneda_dimensions() {
    for (name, m) in corpus(Q) {
        let a = m.algebra();
        for i in 0..a.n() {
            let p = projective(a, Q, i).unwrap();
            assert_eq!(hom_dim(&p, &m).unwrap(), m.dims()[i], "Hom(P{i}, {name})");
        }
    }
}

#[test]
fn iso_is_reflexive_symmetric_and_respects_dims() {
    let c = corpus(Q);
    for (name, m) in &c {
        assert!(iso(m, m).unwrap(), "{name}");
    }
    for (a, x) in &c {
        for (b, y) in &c {
            if x.algebra() != y.algebra() {
                continue;
            }
            let fw = iso(x, y).unwrap();
            if fw {
                assert_eq!(x.dims(), y.dims(), "{a} ≅ {b}");
            }
            if x.dims() == y.dims() {
                assert_eq!(fw, iso(y, x).unwrap(), "{a}, {b}");
            }
        }
    }
}

#[test]
fn dual_is_an_involution_and_swaps_families() {
    for (name, m) in corpus(Q) {
        assert_eq!(dual(&dual(&m)), m, "{name}");
    }
    for (n, r) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        for m in n..=n + 3 {
            assert_eq!(dual(&w_module(m, n, r, Q).unwrap()), m_module(m, n, r, Q).unwrap());
        }
    }
}

#[test]
fn hom_vanishes_from_equal_images_to_equal_kernels() {
    for n in 2..=4 {
        for r in 2..=3 {
            if n == 4 && r == 3 {
                continue;
            }
            for m in n + 1..=n + 2 {
                let x = w_module(m, n, r, Q).unwrap();
                for m2 in n..=n + 2 {
                    let y = m_module(m2, n, r, Q).unwrap();
                    assert_eq!(hom_dim(&x, &y).unwrap(), 0, "Hom(W({m},{n},{r}), M({m2},{n},{r}))");
                }
            }
        }
    }
}

#[test]
fn kronecker_preinjectives_have_expected_shape() {
    let alpha = [Q.from_i64(3), Q.from_i64(-5)];
    for m in 2..=8 {
        let w = w_module(m, 2, 2, Q).unwrap();
        assert_eq!(w.dims(), &[m, m - 1]);
        assert_eq!(layer_map(&w, &alpha, 0).rank(), m - 1, "m = {m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_reassembles(picks in prop::collection::vec(0usize..8, 1..=3), (n, r) in prop::sample::select(vec![(2usize, 2usize), (3, 2), (2, 3)])) {
        let pool: Vec<Rep> = graded(n, r, 1, Q)
            .into_iter()
            .chain(common::pointlike(n, r, Q))
            .map(|(_, m)| m)
            .filter(|m| m.total_dim() <= 12)
            .collect();
        let parts: Vec<Rep> = picks.iter().map(|&k| pool[k % pool.len()].clone()).collect();
        let input = direct_sum_all(alg(n, r), Q, &parts).unwrap();
        let pieces = decompose(&input).unwrap();
        let count: usize = pieces.iter().map(|(_, k)| k).sum();
        prop_assert_eq!(count, parts.len());
        let mut back = Rep::zero(alg(n, r), Q);
        for (piece, k) in &pieces {
            assert_valid("summand", piece);
            for _ in 0..*k {
                back = direct_sum(&back, piece).unwrap();
            }
        }
        prop_assert!(iso(&back, &input).unwrap());
    }
}
