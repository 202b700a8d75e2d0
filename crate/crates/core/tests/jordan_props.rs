mod common;

use beilinson::artrans::tau;
use beilinson::construct::{dual, m_module, w_module};
use beilinson::jordan::{
    alpha_operator, check_cjt, check_eip, check_ekp, j_rank, jordan_type, AlphaVector, Strategy, Verdict,
};
use beilinson::rep::Rep;
use common::{corpus, graded, Q};
use proptest::prelude::*;

fn sweep() -> Strategy {
    Strategy::Sweep(vec![5, 7])
}

fn sample_points(r: usize) -> Vec<AlphaVector> {
    let raw: Vec<Vec<i64>> = match r {
        2 => vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, -3], vec![5, 7]],
        _ => vec![vec![1, 0, 0], vec![0, 0, 1], vec![1, 1, 1], vec![2, -1, 3], vec![0, 4, -5]],
    };
    raw.iter().map(|c| AlphaVector::from_i64(Q, c).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jordan_type_partitions_the_dimension(k in 0usize..200, coords in prop::collection::vec(-4i64..=4, 3)) {
        let c = corpus(Q);
        let (name, m) = &c[k % c.len()];
        let r = m.algebra().r();
        prop_assume!(coords[..r].iter().any(|&x| x != 0));
        let alpha = AlphaVector::from_i64(Q, &coords[..r]).unwrap();
        let jt = jordan_type(m, &alpha).unwrap();
        prop_assert_eq!(jt.iter().sum::<usize>(), m.total_dim(), "{}", name);
        prop_assert!(jt.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(jt.iter().all(|&b| b <= m.algebra().n()));
        let op = alpha_operator(m, &alpha).unwrap();
        let rank1 = op.rank();
        prop_assert_eq!(rank1, j_rank(m, &alpha, 1).unwrap());
        prop_assert_eq!(jt.len(), m.total_dim() - rank1);
    }
}

#[test]
fn jordan_type_is_constant_exactly_when_ranks_are() {
    for (name, m) in corpus(Q) {
        let pts = sample_points(m.algebra().r());
        let n = m.algebra().n();
        let types: Vec<Vec<usize>> = pts.iter().map(|a| jordan_type(&m, a).unwrap()).collect();
        let ranks: Vec<Vec<usize>> = pts.iter().map(|a| (1..n).map(|j| j_rank(&m, a, j).unwrap()).collect()).collect();
        let same_types = types.windows(2).all(|w| w[0] == w[1]);
        let same_ranks = ranks.windows(2).all(|w| w[0] == w[1]);
        assert_eq!(same_types, same_ranks, "{name}");
    }
}

#[test]
fn equal_images_means_full_image_at_sampled_points() {
    for (name, m) in corpus(Q) {
        let report = check_eip(&m, &Strategy::Auto).unwrap();
        if !report.holds() && report.verdict != Verdict::HoldsOverSampledPoints {
            continue;
        }
        let upper: usize = m.dims()[1..].iter().sum();
        for a in sample_points(m.algebra().r()) {
            assert_eq!(alpha_operator(&m, &a).unwrap().rank(), upper, "{name}");
        }
    }
}

#[test]
fn duality_exchanges_verdicts() {
    let mut mods: Vec<(String, Rep)> = corpus(Q);
    for (n, r) in [(2, 2), (3, 2), (2, 3)] {
        for m in n + 1..=n + 2 {
            let t = tau(&m_module(m, n, r, Q).unwrap()).unwrap();
            mods.push((format!("tau M({m},{n},{r})"), t));
        }
    }
    for (name, m) in mods {
        let strategy = if m.algebra().r() == 2 { Strategy::ExactR2 } else { sweep() };
        let a = check_eip(&m, &strategy).unwrap();
        let b = check_ekp(&dual(&m), &strategy).unwrap();
        assert_eq!(a.verdict, b.verdict, "{name}");
        let a = check_ekp(&m, &strategy).unwrap();
        let b = check_eip(&dual(&m), &strategy).unwrap();
        assert_eq!(a.verdict, b.verdict, "{name}");
    }
}

#[test]
fn sweep_never_contradicts_exact_pencils() {
    let mut mods: Vec<(String, Rep)> = corpus(Q).into_iter().filter(|(_, m)| m.algebra().r() == 2).collect();
    for n in 2..=4 {
        for m in n + 1..=n + 3 {
            mods.push((format!("tau M({m},{n},2)"), tau(&m_module(m, n, 2, Q).unwrap()).unwrap()));
            mods.push((format!("tau W({m},{n},2)"), tau(&w_module(m, n, 2, Q).unwrap()).unwrap()));
        }
    }
    let checks: [fn(&Rep, &Strategy) -> beilinson::Result<beilinson::jordan::PropertyReport>; 3] =
        [check_eip, check_ekp, check_cjt];
    for (name, m) in mods {
        for check in checks {
            let exact = check(&m, &Strategy::ExactR2).unwrap();
            let sampled = check(&m, &sweep()).unwrap();
            assert_ne!(exact.verdict, Verdict::Inconclusive, "{name}");
            if exact.holds() {
                assert!(sampled.verdict >= Verdict::HoldsOverSampledPoints, "{name}: {sampled}");
            }
            if sampled.verdict == Verdict::Fails {
                assert_eq!(exact.verdict, Verdict::Fails, "{name}: {exact}");
            }
        }
    }
}

#[test]
fn graded_families_have_constant_jordan_type() {
    for (n, r) in [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)] {
        for (name, m) in graded(n, r, 2, Q) {
            let report = check_cjt(&m, &Strategy::Auto).unwrap();
            let want = if r == 2 { Verdict::Holds } else { Verdict::HoldsOverSampledPoints };
            assert!(report.verdict >= want, "{name}: {report}");
        }
    }
}
