//! The claims behind `beilinson verify`.

use std::fmt;
use std::time::{Duration, Instant};

use beilinson::artrans::{ar_sequence_from, component_window, tau, tau_inverse, Classification, ComponentReport, WindowOptions};
use beilinson::construct::{delete_source, dual, injective, iota, m_module, projective, simple, w_module};
use beilinson::exactla::pencil::Witness;
use beilinson::exactla::FieldSpec;
use beilinson::jordan::{check_cjt, check_eip, check_ekp, layer_map, PropertyReport, Strategy, Verdict};
use beilinson::rep::{direct_sum, hom_dim, iso, radical_rep, validate, Rep};
use beilinson::{AlgebraData, Result};
use serde::Serialize;

const Q: FieldSpec = FieldSpec::Rationals;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Quick,
    Paper,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub suite: Suite,
    /// Upper bound on `m` in every grid.
    pub max_m: Option<usize>,
    /// Upper bound on `n` in every grid.
    pub grid: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { suite: Suite::Paper, max_m: None, grid: 4 }
    }
}

impl VerifyOptions {
    fn ms(&self, range: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = usize> {
        let cap = self.max_m.unwrap_or(usize::MAX);
        range.filter(move |&m| m <= cap)
    }

    fn ns(&self, range: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = usize> {
        let cap = self.grid;
        range.filter(move |&n| n <= cap)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Some check ended without a verdict; nothing was refuted.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: u32,
    pub title: &'static str,
    pub status: Status,
    pub checks: usize,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for ClaimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        write!(f, "{:>2} {:<13} {:<52} {:>4} checks {:>8.2}s  {}", self.id, tag, self.title, self.checks, self.seconds, self.detail)
    }
}

/// Accumulates the checks of one claim.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    open: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn result(&mut self, res: Result<bool>, what: impl FnOnce() -> String) {
        match res {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
            }
        }
    }

    fn undecided(&mut self, what: String) {
        self.checks += 1;
        self.open.push(what);
    }

    fn finish(self, id: u32, title: &'static str, elapsed: Duration) -> ClaimResult {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.open.is_empty() {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        let mut parts = Vec::new();
        if !self.failures.is_empty() {
            parts.push(format!("failed: {}", self.failures.join("; ")));
        }
        if !self.open.is_empty() {
            parts.push(format!("open: {}", self.open.join("; ")));
        }
        parts.extend(self.notes);
        ClaimResult { id, title, status, checks: self.checks, detail: parts.join(" | "), seconds: elapsed.as_secs_f64() }
    }
}

fn alg(n: usize, r: usize) -> AlgebraData {
    AlgebraData::new(n, r).expect("valid algebra")
}

fn is_iso(a: Result<Rep>, b: Result<Rep>) -> Result<bool> {
    iso(&a?, &b?)
}

/// Arrow actions read off the figure of `M(3,2,3)`: `(arrow, source, target)`
/// on the bases `x1, x2, x3` and `x1², x1x2, x1x3, x2², x2x3, x3²`.
pub const FIGURE_ARROWS: [(usize, usize, usize); 9] =
    [(0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1), (1, 1, 3), (1, 2, 4), (2, 0, 2), (2, 1, 4), (2, 2, 5)];

fn figure(t: &mut Tally, _: &VerifyOptions) {
    let m = m_module(3, 2, 3, Q).expect("figure module");
    t.check(m.dims() == [3, 6], || format!("dims {:?}", m.dims()));
    for s in 0..3 {
        let a = m.map(s, 0);
        for row in 0..6 {
            for col in 0..3 {
                let want = FIGURE_ARROWS.contains(&(s, col, row));
                let got = a.get(row, col);
                t.check(got == if want { Q.one() } else { Q.zero() }, || format!("arrow {} entry ({row},{col})", s + 1));
            }
        }
    }
}

fn top_is_projective(t: &mut Tally, o: &VerifyOptions) {
    for n in o.ns(2..=4) {
        for r in 2..=3 {
            let p = projective(alg(n, r), Q, 0);
            t.result(is_iso(m_module(n, n, r, Q), p), || format!("M({n},{n},{r})"));
        }
    }
}

fn radical_restricts(t: &mut Tally, o: &VerifyOptions) {
    for n in o.ns(3..=4) {
        for r in 2..=3 {
            let rad = projective(alg(n, r), Q, 0).and_then(|p| delete_source(&radical_rep(&p).0));
            t.result(is_iso(rad, m_module(n, n - 1, r, Q)), || format!("n={n}, r={r}"));
        }
    }
}

fn translate_to_simple(t: &mut Tally, o: &VerifyOptions) {
    for n in 3..=5 {
        if o.max_m.is_some_and(|c| n + 1 > c) {
            continue;
        }
        let tm = m_module(n + 1, n, 2, Q).and_then(|m| tau(&m));
        t.result(is_iso(tm, simple(alg(n, 2), Q, 1)), || format!("n={n}"));
    }
}

fn source_embedding(t: &mut Tally, o: &VerifyOptions) {
    for r in 2..=3 {
        for n in o.ns(3..=4) {
            for m in o.ms(n + 1..=n + 4) {
                let lhs = m_module(m, n - 1, r, Q).and_then(|x| tau_inverse(&x)).and_then(|x| iota(&x));
                let rhs = m_module(m, n, r, Q).and_then(|x| tau_inverse(&x));
                t.result(is_iso(lhs, rhs), || format!("(i) m={m}, n={n}, r={r}"));
                let lhs = w_module(m, n - 1, r, Q).and_then(|x| tau_inverse(&x)).and_then(|x| iota(&x));
                let rhs = w_module(m + 1, n, r, Q).and_then(|x| tau_inverse(&x));
                t.result(is_iso(lhs, rhs), || format!("(ii) m={m}, n={n}, r={r}"));
            }
        }
    }
}

fn kronecker(t: &mut Tally, o: &VerifyOptions) {
    for m in o.ms(5..=8) {
        let res = (|| -> Result<(bool, bool)> {
            let w = w_module(m, 2, 2, Q)?;
            let prev = w_module(m - 1, 2, 2, Q)?;
            let seq = ar_sequence_from(&w)?;
            let middle = iso(&seq.middle, &direct_sum(&prev, &prev)?)?;
            let inv = iso(&tau_inverse(&w)?, &w_module(m - 2, 2, 2, Q)?)?;
            Ok((middle, inv))
        })();
        match res {
            Ok((a, b)) => {
                t.check(a, || format!("middle term at m={m}"));
                t.check(b, || format!("inverse translate at m={m}"));
            }
            Err(e) => t.check(false, || format!("m={m}: {e}")),
        }
    }
}

/// Records a verdict; with `exact` a sampled certificate leaves the check open.
fn judge(t: &mut Tally, rep: Result<PropertyReport>, exact: bool, what: impl Fn() -> String) {
    match rep {
        Ok(rep) => match rep.verdict {
            Verdict::Holds => t.check(true, String::new),
            Verdict::HoldsOverSampledPoints if !exact => t.check(true, String::new),
            Verdict::HoldsOverSampledPoints => t.undecided(format!("{}: only sampled", what())),
            Verdict::Inconclusive => t.undecided(format!("{}: {rep}", what())),
            Verdict::Fails => t.check(false, || format!("{}: {rep}", what())),
        },
        Err(e) => t.check(false, || format!("{}: {e}", what())),
    }
}

fn membership(t: &mut Tally, o: &VerifyOptions) {
    let mut sampled = 0;
    for r in 2..=3 {
        for n in o.ns(2..=4) {
            for m in o.ms(n..=n + 3) {
                let mm = m_module(m, n, r, Q).expect("graded module");
                let ww = dual(&mm);
                for (rep, label) in [(check_ekp(&mm, &Strategy::Auto), "M in EKP"), (check_eip(&ww, &Strategy::Auto), "W in EIP")] {
                    if let Ok(p) = &rep {
                        if p.verdict == Verdict::HoldsOverSampledPoints {
                            sampled += 1;
                        }
                    }
                    judge(t, rep, r == 2, || format!("{label} ({m},{n},{r})"));
                }
            }
        }
    }
    t.notes.push(format!("{sampled} certified by sweep only"));
}

/// The windows of the component claims.
pub fn window_params() -> Vec<(usize, usize, usize)> {
    let mut v: Vec<(usize, usize, usize)> = (4..=7).map(|m| (3, 2, m)).collect();
    v.extend([(2, 3, 3), (2, 3, 4), (3, 3, 4), (3, 3, 5)]);
    v
}

pub fn window_options() -> WindowOptions {
    WindowOptions { radius: 2, quasi_length: 3, size_cap: 250, ..WindowOptions::default() }
}

fn class_at(rep: &ComponentReport, offset: i64) -> Option<Classification> {
    rep.orbit.iter().find(|e| e.offset == offset).map(|e| e.class)
}

fn windows(t: &mut Tally, o: &VerifyOptions, reports: &mut Vec<ComponentReport>) {
    for (n, r, m) in window_params() {
        if o.max_m.is_some_and(|c| m > c) || n > o.grid {
            continue;
        }
        match component_window(n, r, m, &window_options()) {
            Ok(rep) => {
                if r == 2 {
                    t.check(rep.wc_count == Some(1), || format!("({n},{r},{m}): wedge count {:?}", rep.wc_count));
                    t.check(class_at(&rep, -1) == Some(Classification::Neither), || format!("({n},{r},{m}): τ⁻¹W"));
                    t.check(class_at(&rep, -2) == Some(Classification::Ekp), || format!("({n},{r},{m}): τ⁻²W"));
                } else {
                    t.check(rep.wc_count == Some(0), || format!("({n},{r},{m}): wedge count {:?}", rep.wc_count));
                }
                reports.push(rep);
            }
            Err(e) => t.check(false, || format!("({n},{r},{m}): {e}")),
        }
    }
}

fn window_jordan_types(t: &mut Tally, reports: &[ComponentReport]) {
    let mut skipped = 0;
    for rep in reports {
        let exact = rep.r == 2;
        let tag = |off: i64, len: usize| format!("({},{},{}) ℓ={off} len={len}", rep.n, rep.r, rep.m);
        for e in &rep.orbit {
            match e.class {
                Classification::ProjectiveHit | Classification::InjectiveHit => {}
                _ => judge(t, e.cjt.clone().ok_or_else(|| missing(&e.note)), exact, || tag(e.offset, 1)),
            }
        }
        for c in &rep.cone {
            match (&c.cjt, &c.note) {
                (None, Some(note)) if note.starts_with("skipped") => skipped += 1,
                _ => judge(t, c.cjt.clone().ok_or_else(|| missing(&c.note)), exact, || tag(c.offset, c.quasi_length)),
            }
        }
    }
    t.notes.push(format!("{skipped} modules above the size cap"));
}

fn missing(note: &Option<String>) -> beilinson::Error {
    beilinson::Error::Precondition(note.clone().unwrap_or_else(|| "no report".into()))
}

fn hom_vanishing(t: &mut Tally, o: &VerifyOptions) {
    for r in 2..=3 {
        for n in o.ns(2..=4) {
            for m in o.ms(n..=n + 3) {
                let x = w_module(m, n, r, Q).expect("graded module");
                for m2 in o.ms(n..=n + 3) {
                    let y = m_module(m2, n, r, Q).expect("graded module");
                    t.result(hom_dim(&x, &y).map(|d| d == 0), || format!("W({m},{n},{r}) → M({m2},{n},{r})"));
                }
            }
        }
    }
}

/// Indecomposable, non-projective modules from the constructors.
pub fn translate_corpus() -> Vec<(String, Rep)> {
    let mut out = Vec::new();
    for (n, r) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for m in n + 1..=n + 2 {
            out.push((format!("M({m},{n},{r})"), m_module(m, n, r, Q).expect("graded module")));
            out.push((format!("W({m},{n},{r})"), w_module(m, n, r, Q).expect("graded module")));
        }
        out.push((format!("S0/B({n},{r})"), simple(alg(n, r), Q, 0).expect("simple")));
    }
    out.truncate(20);
    out
}

/// `D τ M` is a τ-preimage of `D M`, as `D τ ≅ τ⁻¹ D` demands.
fn duality(t: &mut Tally, _: &VerifyOptions) {
    for (name, m) in translate_corpus() {
        let res = (|| -> Result<bool> {
            let x = dual(&tau(&m)?);
            iso(&tau(&x)?, &dual(&m))
        })();
        t.result(res, || name.clone());
    }
}

fn witness_drops(m: &Rep, rep: &PropertyReport, injective_side: bool) -> bool {
    let Some(Witness::Point(alpha)) = &rep.witness else { return false };
    let n = m.algebra().n();
    (0..n - 1).any(|i| {
        let rank = layer_map(m, alpha, i).rank();
        if injective_side {
            rank < m.dims()[i]
        } else {
            rank < m.dims()[i + 1]
        }
    })
}

fn no_source_support(t: &mut Tally, o: &VerifyOptions) {
    for r in 2..=3 {
        for n in o.ns(3..=4) {
            for m in o.ms(n..=n + 1) {
                let x = w_module(m, n - 1, r, Q).expect("graded module");
                let big = iota(&x).expect("embedding");
                match check_eip(&big, &Strategy::Auto) {
                    Ok(rep) => t.check(rep.verdict == Verdict::Fails && witness_drops(&big, &rep, false), || {
                        format!("ι W({m},{},{r}): {rep}", n - 1)
                    }),
                    Err(e) => t.check(false, || format!("ι W({m},{},{r}): {e}", n - 1)),
                }
                let y = m_module(m, n - 1, r, Q).expect("graded module");
                let big = dual(&iota(&dual(&y)).expect("embedding"));
                match check_ekp(&big, &Strategy::Auto) {
                    Ok(rep) => t.check(rep.verdict == Verdict::Fails && witness_drops(&big, &rep, true), || {
                        format!("sink extension of M({m},{},{r}): {rep}", n - 1)
                    }),
                    Err(e) => t.check(false, || format!("sink extension of M({m},{},{r}): {e}", n - 1)),
                }
            }
        }
    }
}

fn invariants(t: &mut Tally, _: &VerifyOptions) {
    for (name, m) in translate_corpus() {
        let a = m.algebra();
        t.check(validate(&m).is_ok(), || format!("{name} invalid"));
        let tm = tau(&m);
        t.result(tm.as_ref().map(|x| validate(x).is_ok()).map_err(Clone::clone), || format!("τ {name} invalid"));
        if let Ok(x) = tm {
            if !x.is_zero() {
                t.result(tau_inverse(&x).and_then(|y| iso(&y, &m)), || format!("τ⁻¹τ {name}"));
            }
        }
        for i in 0..a.n() {
            let p = projective(a, Q, i).expect("projective");
            t.result(hom_dim(&p, &m).map(|d| d == m.dims()[i]), || format!("Hom(P{i}, {name})"));
            let inj = injective(a, Q, i).expect("injective");
            t.result(hom_dim(&m, &inj).map(|d| d == m.dims()[i]), || format!("Hom({name}, I{i})"));
        }
        if a.r() == 2 {
            for check in [check_eip, check_ekp, check_cjt] {
                let (e, s) = (check(&m, &Strategy::ExactR2), check(&m, &Strategy::Sweep(vec![5, 7, 11])));
                if let (Ok(e), Ok(s)) = (e, s) {
                    let agree = (!e.holds() || s.verdict >= Verdict::HoldsOverSampledPoints)
                        && (s.verdict != Verdict::Fails || e.verdict == Verdict::Fails);
                    t.check(agree, || format!("{name}: {e} vs {s}"));
                }
            }
        }
    }
}

type Runner = fn(&mut Tally, &VerifyOptions);

const CLAIMS: [(u32, &str, Option<Runner>); 13] = [
    (1, "figure module M(3,2,3)", Some(figure)),
    (2, "M(n,n) is the projective cover of the source", Some(top_is_projective)),
    (3, "radical of P(0) restricted is M(n,n-1)", Some(radical_restricts)),
    (4, "translate of M(n+1,n) over two parameters is S(1)", Some(translate_to_simple)),
    (5, "inverse translates commute with the source embedding", Some(source_embedding)),
    (6, "Kronecker almost split sequences", Some(kronecker)),
    (7, "M in EKP and W in EIP", Some(membership)),
    (8, "component windows and wedge counts", None),
    (9, "constant Jordan type across the windows", None),
    (10, "no maps from W modules to M modules", Some(hom_vanishing)),
    (11, "duality exchanges the translates", Some(duality)),
    (12, "modules without source support fail", Some(no_source_support)),
    (13, "property invariants", Some(invariants)),
];

/// Runs the claims of the selected suite, reporting each as it finishes.
pub fn run(opts: &VerifyOptions, mut each: impl FnMut(&ClaimResult)) -> Vec<ClaimResult> {
    let last = match opts.suite {
        Suite::Quick => 6,
        Suite::Paper => 13,
    };
    let mut out = Vec::new();
    let mut reports = Vec::new();
    for (id, title, runner) in CLAIMS.iter().take(last) {
        let start = Instant::now();
        let mut t = Tally::default();
        match (id, runner) {
            (8, _) => windows(&mut t, opts, &mut reports),
            (9, _) => window_jordan_types(&mut t, &reports),
            (_, Some(f)) => f(&mut t, opts),
            (_, None) => unreachable!("claims without a runner are handled above"),
        }
        let res = t.finish(*id, title, start.elapsed());
        each(&res);
        out.push(res);
    }
    out
}
