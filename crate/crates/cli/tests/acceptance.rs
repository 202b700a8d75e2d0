//! Acceptance criteria 1 to 13, each with its time limit. Prints one line
//! per criterion and exits nonzero if any fails.

#[path = "../../core/tests/common/copresentation.rs"]
mod copresentation;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use beilinson::artrans::{ar_sequence_from, component_window, tau, tau_inverse, Classification, ComponentReport};
use beilinson::construct::{delete_source, dual, injective, iota, m_module, projective, simple, w_module};
use beilinson::exactla::pencil::Witness;
use beilinson::exactla::FieldSpec;
use beilinson::jordan::{
    check_cjt, check_eip, check_ekp, layer_map, sweep_primes, Certificate, PropertyReport, Strategy, Verdict,
};
use beilinson::rep::{direct_sum, hom_dim, iso, radical_rep, socle, top, validate, Rep};
use beilinson::AlgebraData;
use beilinson_cli::modfile::{read_rep, write_rep, ModuleFile};
use beilinson_cli::verify::{translate_corpus, window_options, window_params};
use copresentation::tau_inverse_via_copresentation;

const Q: FieldSpec = FieldSpec::Rationals;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn alg(n: usize, r: usize) -> AlgebraData {
    AlgebraData::new(n, r).unwrap()
}

fn is_iso(a: &Rep, b: &Rep) -> bool {
    iso(a, b).unwrap()
}

fn figure() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/m_3_2_3.json");
    let text = std::fs::read_to_string(golden).map_err(|e| e.to_string())?;
    let m = m_module(3, 2, 3, Q).unwrap();
    ensure!(m.dims() == [3, 6], "dims {:?}", m.dims());
    ensure!(write_rep(&m) == text, "serialization differs from the golden file");
    ensure!(read_rep(&text).unwrap() == m, "golden file parses to a different module");
    // arrow s sends x_j to x_s x_j; degree-two basis x1², x1x2, x1x3, x2², x2x3, x3²
    let products = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];
    let file = ModuleFile::parse(&text).unwrap();
    for (s, row) in products.iter().enumerate() {
        let map = &file.maps[&format!("g{}_0", s + 1)];
        ensure!(map.len() == 6, "arrow {} has {} rows", s + 1, map.len());
        for (j, &target) in row.iter().enumerate() {
            for (i, line) in map.iter().enumerate() {
                let want = if i == target { "1" } else { "0" };
                ensure!(line[j] == want, "arrow {} on x{}: row {i} is {}", s + 1, j + 1, line[j]);
            }
        }
    }
    Ok("6 arrow matrices match".into())
}

fn top_is_projective() -> Outcome {
    for n in 2..=4 {
        for r in 2..=3 {
            ensure!(is_iso(&m_module(n, n, r, Q).unwrap(), &projective(alg(n, r), Q, 0).unwrap()), "M({n},{n},{r}) ≇ P(0)");
        }
    }
    Ok("6 isomorphisms".into())
}

fn radical_restricts() -> Outcome {
    for n in 3..=4 {
        for r in 2..=3 {
            let p = projective(alg(n, r), Q, 0).unwrap();
            let rad = delete_source(&radical_rep(&p).0).unwrap();
            ensure!(is_iso(&rad, &m_module(n, n - 1, r, Q).unwrap()), "n={n}, r={r}");
        }
    }
    Ok("4 isomorphisms".into())
}

fn translate_to_simple() -> Outcome {
    for n in 3..=5 {
        let t = tau(&m_module(n + 1, n, 2, Q).unwrap()).unwrap();
        ensure!(is_iso(&t, &simple(alg(n, 2), Q, 1).unwrap()), "τM({},{n},2) = {:?}", n + 1, t.dims());
    }
    Ok("n = 3, 4, 5".into())
}

fn source_embedding() -> Outcome {
    let mut count = 0;
    for r in 2..=3 {
        for n in 3..=4 {
            for m in n + 1..=n + 4 {
                let lhs = iota(&tau_inverse(&m_module(m, n - 1, r, Q).unwrap()).unwrap()).unwrap();
                let rhs = tau_inverse(&m_module(m, n, r, Q).unwrap()).unwrap();
                ensure!(is_iso(&lhs, &rhs), "(i) m={m}, n={n}, r={r}");
                let lhs = iota(&tau_inverse(&w_module(m, n - 1, r, Q).unwrap()).unwrap()).unwrap();
                let rhs = tau_inverse(&w_module(m + 1, n, r, Q).unwrap()).unwrap();
                ensure!(is_iso(&lhs, &rhs), "(ii) m={m}, n={n}, r={r}");
                count += 2;
            }
        }
    }
    Ok(format!("{count} identities"))
}

fn kronecker() -> Outcome {
    for m in 5..=8 {
        let w = w_module(m, 2, 2, Q).unwrap();
        let prev = w_module(m - 1, 2, 2, Q).unwrap();
        let seq = ar_sequence_from(&w).unwrap();
        ensure!(is_iso(&seq.middle, &direct_sum(&prev, &prev).unwrap()), "middle term at m={m}: {:?}", seq.middle.dims());
        ensure!(is_iso(&tau_inverse(&w).unwrap(), &w_module(m - 2, 2, 2, Q).unwrap()), "τ⁻¹W({m},2,2)");
    }
    Ok("m = 5..8".into())
}

fn certified(rep: &PropertyReport, r: usize) -> Result<bool, String> {
    match (&rep.verdict, &rep.certificate) {
        (Verdict::Holds, Certificate::ExactR2Pencil) if r == 2 => Ok(true),
        (Verdict::Holds, Certificate::ExactGroebner) if r > 2 => Ok(true),
        (Verdict::HoldsOverSampledPoints, Certificate::Sweep { primes, .. }) if r > 2 => {
            if *primes != sweep_primes() {
                return Err(format!("swept {primes:?}"));
            }
            Ok(false)
        }
        _ => Err(rep.to_string()),
    }
}

fn membership() -> Outcome {
    let (mut exact, mut sampled) = (0, 0);
    for r in 2..=3 {
        for n in 2..=4 {
            for m in n..=n + 3 {
                let mm = m_module(m, n, r, Q).unwrap();
                let ww = w_module(m, n, r, Q).unwrap();
                for (label, rep) in [("M in EKP", check_ekp(&mm, &Strategy::Auto)), ("W in EIP", check_eip(&ww, &Strategy::Auto))] {
                    let rep = rep.map_err(|e| format!("{label} ({m},{n},{r}): {e}"))?;
                    match certified(&rep, r) {
                        Ok(true) => exact += 1,
                        Ok(false) => sampled += 1,
                        Err(e) => return Err(format!("{label} ({m},{n},{r}): {e}")),
                    }
                }
            }
        }
    }
    Ok(format!("{exact} exact, {sampled} swept over {:?}", sweep_primes()))
}

fn class_at(rep: &ComponentReport, offset: i64) -> Option<Classification> {
    rep.orbit.iter().find(|e| e.offset == offset).map(|e| e.class)
}

fn windows(reports: &mut Vec<ComponentReport>) -> Outcome {
    for (n, r, m) in window_params() {
        let rep = component_window(n, r, m, &window_options()).map_err(|e| format!("({n},{r},{m}): {e}"))?;
        if r == 2 {
            ensure!(rep.wc_count == Some(1), "({n},{r},{m}): wedge count {:?}", rep.wc_count);
            ensure!(class_at(&rep, -1) == Some(Classification::Neither), "({n},{r},{m}): τ⁻¹W is {:?}", class_at(&rep, -1));
            ensure!(class_at(&rep, -2) == Some(Classification::Ekp), "({n},{r},{m}): τ⁻²W is {:?}", class_at(&rep, -2));
        } else {
            ensure!(rep.wc_count == Some(0), "({n},{r},{m}): wedge count {:?}", rep.wc_count);
        }
        reports.push(rep);
    }
    Ok(format!("{} windows", reports.len()))
}

fn window_jordan_types(reports: &[ComponentReport]) -> Outcome {
    let (mut checked, mut unbuilt) = (0, 0);
    for rep in reports {
        let want = if rep.r == 2 { Verdict::Holds } else { Verdict::HoldsOverSampledPoints };
        let tag = format!("({},{},{})", rep.n, rep.r, rep.m);
        for e in &rep.orbit {
            if matches!(e.class, Classification::ProjectiveHit | Classification::InjectiveHit) {
                continue;
            }
            let cjt = e.cjt.as_ref().ok_or_else(|| format!("{tag} ℓ={}: {:?}", e.offset, e.note))?;
            ensure!(cjt.verdict >= want, "{tag} ℓ={}: {cjt}", e.offset);
            checked += 1;
        }
        for c in &rep.cone {
            match &c.cjt {
                Some(cjt) => {
                    ensure!(cjt.verdict >= want, "{tag} ℓ={} len={}: {cjt}", c.offset, c.quasi_length);
                    checked += 1;
                }
                None => {
                    let note = c.note.clone().unwrap_or_default();
                    ensure!(note.starts_with("skipped"), "{tag} ℓ={} len={}: {note}", c.offset, c.quasi_length);
                    unbuilt += 1;
                }
            }
        }
    }
    Ok(format!("{checked} modules; {unbuilt} cone modules above the size cap not built"))
}

fn hom_vanishing() -> Outcome {
    let mut pairs = 0;
    for r in 2..=3 {
        for n in 2..=4 {
            for m in n..=n + 3 {
                let w = w_module(m, n, r, Q).unwrap();
                for m2 in n..=n + 3 {
                    let d = hom_dim(&w, &m_module(m2, n, r, Q).unwrap()).unwrap();
                    ensure!(d == 0, "dim Hom(W({m},{n},{r}), M({m2},{n},{r})) = {d}");
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn duality() -> Outcome {
    let corpus = translate_corpus();
    ensure!(corpus.len() == 20, "corpus has {} modules", corpus.len());
    for (name, m) in &corpus {
        let lhs = dual(&tau(m).unwrap());
        let rhs = tau_inverse_via_copresentation(&dual(m));
        ensure!(is_iso(&lhs, &rhs), "{name}: D τ {:?} vs τ⁻¹ D {:?}", lhs.dims(), rhs.dims());
        ensure!(is_iso(&tau(&lhs).unwrap(), &dual(m)), "{name}: τ D τ ≇ D");
    }
    Ok("20 modules against the copresentation route".into())
}

fn witness_drops(m: &Rep, rep: &PropertyReport, kernel_side: bool) -> bool {
    let Some(Witness::Point(alpha)) = &rep.witness else { return false };
    (0..m.algebra().n() - 1).any(|i| {
        let rank = layer_map(m, alpha, i).rank();
        rank < if kernel_side { m.dims()[i] } else { m.dims()[i + 1] }
    })
}

fn no_source_support() -> Outcome {
    let mut count = 0;
    for r in 2..=3 {
        for n in 3..=4 {
            let small = alg(n - 1, r);
            let mut eip: Vec<Rep> = (n - 1..=n + 1).map(|m| w_module(m, n - 1, r, Q).unwrap()).collect();
            eip.push(injective(small, Q, 0).unwrap());
            for x in &eip {
                ensure!(check_eip(x, &Strategy::Auto).unwrap().verdict >= Verdict::HoldsOverSampledPoints, "{:?} is not EIP", x.dims());
                let big = iota(x).unwrap();
                let rep = check_eip(&big, &Strategy::Auto).unwrap();
                ensure!(rep.verdict == Verdict::Fails && witness_drops(&big, &rep, false), "ι {:?}: {rep}", x.dims());
                count += 1;
            }
            let mut ekp: Vec<Rep> = (n - 1..=n + 1).map(|m| m_module(m, n - 1, r, Q).unwrap()).collect();
            ekp.push(projective(small, Q, n - 2).unwrap());
            for y in &ekp {
                ensure!(check_ekp(y, &Strategy::Auto).unwrap().verdict >= Verdict::HoldsOverSampledPoints, "{:?} is not EKP", y.dims());
                let big = dual(&iota(&dual(y)).unwrap());
                ensure!(big.dims()[n - 1] == 0, "sink support {:?}", big.dims());
                let rep = check_ekp(&big, &Strategy::Auto).unwrap();
                ensure!(rep.verdict == Verdict::Fails && witness_drops(&big, &rep, true), "sink extension {:?}: {rep}", y.dims());
                count += 1;
            }
        }
    }
    Ok(format!("{count} modules refuted with witnesses"))
}

fn invariants() -> Outcome {
    let mut checks = 0;
    let mut corpus = translate_corpus();
    for (n, r) in [(2, 2), (3, 2), (2, 3), (4, 2)] {
        for i in 0..n {
            corpus.push((format!("P{i}/B({n},{r})"), projective(alg(n, r), Q, i).unwrap()));
            corpus.push((format!("I{i}/B({n},{r})"), injective(alg(n, r), Q, i).unwrap()));
        }
    }
    for (name, m) in &corpus {
        let a = m.algebra();
        for f in [FieldSpec::Rationals, FieldSpec::Prime(7)] {
            let x = m.convert(f).unwrap();
            ensure!(read_rep(&write_rep(&x)).unwrap() == x, "{name}: file round trip over {f}");
        }
        ensure!(dual(&dual(m)) == *m, "{name}: D D");
        let t = tau(m).unwrap();
        let s = tau_inverse(m).unwrap();
        for (what, x) in [("D", dual(m)), ("τ", t.clone()), ("τ⁻¹", s.clone()), ("rad", radical_rep(m).0), ("top", top(m).0), ("soc", socle(m).0)] {
            ensure!(validate(&x).is_ok(), "{what} {name} invalid");
        }
        if !t.is_zero() {
            ensure!(is_iso(&tau_inverse(&t).unwrap(), m), "τ⁻¹τ {name}");
        }
        if !s.is_zero() {
            ensure!(is_iso(&tau(&s).unwrap(), m), "τ τ⁻¹ {name}");
        }
        for i in 0..a.n() {
            ensure!(hom_dim(&projective(a, Q, i).unwrap(), m).unwrap() == m.dims()[i], "Hom(P{i}, {name})");
            ensure!(hom_dim(m, &injective(a, Q, i).unwrap()).unwrap() == m.dims()[i], "Hom({name}, I{i})");
        }
        if a.r() == 2 {
            for check in [check_eip, check_ekp, check_cjt] {
                let e = check(m, &Strategy::ExactR2).unwrap();
                let s = check(m, &Strategy::Sweep(vec![5, 7, 11])).unwrap();
                ensure!(e.verdict != Verdict::Inconclusive, "{name}: {e}");
                ensure!(!e.holds() || s.verdict >= Verdict::HoldsOverSampledPoints, "{name}: {e} but {s}");
                ensure!(s.verdict != Verdict::Fails || e.verdict == Verdict::Fails, "{name}: {s} but {e}");
            }
        }
        checks += 1;
    }
    Ok(format!("{checks} modules"))
}

fn main() {
    let mut reports = Vec::new();
    let mut failed = 0;
    let mut report = |id: &str, limit: Duration, run: &mut dyn FnMut() -> Outcome| -> Duration {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(d) if took > limit => Err(format!("{d}; over the limit")),
            other => other,
        };
        match &res {
            Ok(d) => println!("criterion {id}: PASS ({:.2}s, limit {:.0}s) {d}", took.as_secs_f64(), limit.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {id}: FAIL ({:.2}s, limit {:.0}s) {e}", took.as_secs_f64(), limit.as_secs_f64());
            }
        }
        took
    };
    let secs = Duration::from_secs;
    report("1", secs(1), &mut figure);
    report("2", secs(5), &mut top_is_projective);
    report("3", secs(5), &mut radical_restricts);
    report("4", secs(10), &mut translate_to_simple);
    report("5", secs(60), &mut source_embedding);
    report("6", secs(30), &mut kronecker);
    report("7", secs(180), &mut membership);
    // criteria 8 and 9 share one budget
    let shared = secs(180);
    let took = report("8", shared, &mut || windows(&mut reports));
    report("9", shared.saturating_sub(took), &mut || window_jordan_types(&reports));
    report("10", secs(30), &mut hom_vanishing);
    report("11", secs(30), &mut duality);
    report("12", secs(10), &mut no_source_support);
    report("13", secs(300), &mut invariants);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
