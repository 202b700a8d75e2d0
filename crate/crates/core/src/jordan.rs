//! The α-operator of a representation and decisions for equal images,
//! equal kernels, constant j-rank and constant Jordan type.
//!
//! Every property reduces to rank conditions on form matrices: "for every
//! nonzero α, rank F(α) ≥ t". For the α-operator the relevant matrices are
//! the layer maps `L_i(α) = Σ α_s γ_s` and their consecutive products, since
//! the powers of the operator are block-subdiagonal.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::pencil::{full_rank_groebner, full_rank_r2, generic_rank, CertBudget, FormMatrix, RankCheck, Witness};
use crate::exactla::{FieldSpec, Mat, Scalar};
use crate::rep::Rep;

/// A nonzero parameter vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaVector(Vec<Scalar>);

impl AlphaVector {
    pub fn new(field: FieldSpec, coords: Vec<Scalar>) -> Result<AlphaVector> {
        if coords.iter().all(|c| field.is_zero(c)) {
            return Err(Error::InvalidParameters("alpha must be nonzero".into()));
        }
        Ok(AlphaVector(coords))
    }

    pub fn from_i64(field: FieldSpec, coords: &[i64]) -> Result<AlphaVector> {
        AlphaVector::new(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }
}

fn check_alpha(m: &Rep, alpha: &AlphaVector) -> Result<()> {
    if alpha.0.len() != m.algebra().r() {
        return Err(Error::Shape(format!("alpha has {} coordinates, expected {}", alpha.0.len(), m.algebra().r())));
    }
    Ok(())
}

/// `Σ α_s γ_s` from vertex `i` to `i + 1`.
pub fn layer_map(m: &Rep, alpha: &[Scalar], i: usize) -> Mat {
    let f = m.field();
    let mut out = Mat::zeros(f, m.dims()[i + 1], m.dims()[i]);
    for (s, a) in alpha.iter().enumerate() {
        if !f.is_zero(a) {
            out = out.add(&m.map(s, i).scale(a));
        }
    }
    out
}

/// The nilpotent operator on the total space, vertex 0 first.
pub fn alpha_operator(m: &Rep, alpha: &AlphaVector) -> Result<Mat> {
    check_alpha(m, alpha)?;
    let total = m.total_dim();
    let mut out = Mat::zeros(m.field(), total, total);
    for i in 0..m.algebra().n() - 1 {
        out.set_block(m.offset(i + 1), m.offset(i), &layer_map(m, &alpha.0, i));
    }
    Ok(out)
}

/// Ranks of the blocks of the `j`-th power, one per starting vertex.
fn power_block_ranks(layers: &[Mat], j: usize) -> Vec<usize> {
    let n = layers.len() + 1;
    (0..n.saturating_sub(j))
        .map(|i| {
            let mut acc = layers[i].clone();
            for l in &layers[i + 1..i + j] {
                acc = l.mul(&acc);
            }
            acc.rank()
        })
        .collect()
}

/// Rank of the `j`-th power of the α-operator.
pub fn j_rank(m: &Rep, alpha: &AlphaVector, j: usize) -> Result<usize> {
    check_alpha(m, alpha)?;
    let n = m.algebra().n();
    if j == 0 {
        return Ok(m.total_dim());
    }
    if j >= n {
        return Ok(0);
    }
    let layers: Vec<Mat> = (0..n - 1).map(|i| layer_map(m, &alpha.0, i)).collect();
    Ok(power_block_ranks(&layers, j).iter().sum())
}

/// All ranks `rk^0 = dim M, rk^1, …, rk^n = 0`.
fn rank_sequence(m: &Rep, alpha: &[Scalar]) -> Vec<usize> {
    let n = m.algebra().n();
    let layers: Vec<Mat> = (0..n - 1).map(|i| layer_map(m, alpha, i)).collect();
    let mut out = vec![m.total_dim()];
    out.extend((1..n).map(|j| power_block_ranks(&layers, j).iter().sum::<usize>()));
    out.push(0);
    out
}

/// Block sizes from rank differences, weakly decreasing.
pub fn partition_from_ranks(ranks: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for j in (1..ranks.len()).rev() {
        let next = ranks.get(j + 1).copied().unwrap_or(0);
        let mult = ranks[j - 1] + next - 2 * ranks[j];
        out.extend(std::iter::repeat(j).take(mult));
    }
    out
}

pub fn jordan_type(m: &Rep, alpha: &AlphaVector) -> Result<Vec<usize>> {
    check_alpha(m, alpha)?;
    Ok(partition_from_ranks(&rank_sequence(m, &alpha.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Eip,
    Ekp,
    ConstantRank(usize),
    Cjt,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Eip => f.write_str("EIP"),
            Property::Ekp => f.write_str("EKP"),
            Property::ConstantRank(j) => write!(f, "CR^{j}"),
            Property::Cjt => f.write_str("CJT"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// A nonzero α with a rank drop is known.
    Fails,
    /// A drop was seen modulo a prime but did not survive lifting.
    Inconclusive,
    HoldsOverSampledPoints,
    /// Certified for every nonzero α over the algebraic closure.
    Holds,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
            Verdict::HoldsOverSampledPoints => "holds-over-sampled-points",
            Verdict::Holds => "holds",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    ExactR2Pencil,
    ExactGroebner,
    Sweep { primes: Vec<u64>, points: usize },
    Randomized { trials: usize, seed: u64 },
    /// Nothing to check, e.g. only zero-size conditions.
    Trivial,
}

impl Certificate {
    fn is_exact(&self) -> bool {
        matches!(self, Certificate::ExactR2Pencil | Certificate::ExactGroebner | Certificate::Trivial)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ExactR2Pencil => f.write_str("exact-r2-pencil"),
            Certificate::ExactGroebner => f.write_str("exact-groebner"),
            Certificate::Sweep { primes, points } => write!(f, "sweep(F_p for p in {primes:?}, {points} points)"),
            Certificate::Randomized { trials, seed } => write!(f, "randomized({trials} trials, seed {seed})"),
            Certificate::Trivial => f.write_str("trivial"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub witness: Option<Witness>,
    /// Generic ranks `c_j` of the powers, where relevant.
    pub generic_ranks: Vec<usize>,
    pub notes: Vec<String>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} [{}]", self.property, self.verdict, self.certificate)?;
        if let Some(w) = &self.witness {
            write!(f, " witness {w}")?;
        }
        if !self.generic_ranks.is_empty() {
            write!(f, " generic ranks {:?}", self.generic_ranks)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Exact for two parameters, Gröbner otherwise, falling back to a sweep
    /// when the certificate budget runs out.
    Auto,
    ExactR2,
    Groebner(CertBudget),
    Sweep(Vec<u64>),
    Randomized { trials: usize, seed: u64 },
}

pub const SWEEP_PRIMES_VAR: &str = "BEILINSON_SWEEP_PRIMES";
pub const DEFAULT_SWEEP_PRIMES: [u64; 3] = [5, 7, 11];

/// Sweep primes from `BEILINSON_SWEEP_PRIMES` (comma separated), else 5, 7, 11.
pub fn sweep_primes() -> Vec<u64> {
    std::env::var(SWEEP_PRIMES_VAR)
        .ok()
        .and_then(|v| v.split(',').map(|p| p.trim().parse().ok()).collect::<Option<Vec<u64>>>())
        .filter(|v| !v.is_empty())
        .unwrap_or_else(|| DEFAULT_SWEEP_PRIMES.to_vec())
}

impl Strategy {
    /// Parses the CLI names `auto`, `exact-r2`, `groebner`, `sweep`, `randomized`.
    pub fn parse(name: &str) -> Result<Strategy> {
        Ok(match name {
            "auto" => Strategy::Auto,
            "exact-r2" => Strategy::ExactR2,
            "groebner" => Strategy::Groebner(CertBudget::default()),
            "sweep" => Strategy::Sweep(sweep_primes()),
            "randomized" => Strategy::Randomized { trials: 64, seed: crate::rep::DEFAULT_SEED },
            _ => return Err(Error::InvalidParameters(format!("unknown strategy {name:?}"))),
        })
    }
}

/// "rank ≥ target for all nonzero α".
struct Condition {
    fm: FormMatrix,
    target: usize,
}

struct Decision {
    verdict: Verdict,
    certificate: Certificate,
    witness: Option<Witness>,
    notes: Vec<String>,
}

fn layer_forms(m: &Rep) -> Vec<FormMatrix> {
    let r = m.algebra().r();
    (0..m.algebra().n() - 1)
        .map(|i| FormMatrix::linear(&(0..r).map(|s| m.map(s, i).clone()).collect::<Vec<_>>()))
        .collect()
}

fn holds_at(conds: &[Condition], alpha: &[Scalar]) -> bool {
    conds.iter().all(|c| c.fm.eval(alpha).rank() >= c.target)
}

/// Normalized representatives of projective space over F_p, in a fixed order.
fn projective_points(p: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        let count = (p as usize).pow(free as u32);
        for mut k in 0..count {
            let mut v = vec![0u64; r];
            v[lead] = 1;
            for x in v.iter_mut().skip(lead + 1) {
                *x = (k % p as usize) as u64;
                k /= p as usize;
            }
            out.push(v);
        }
    }
    out
}

/// Looks for a rational point with a rank drop among coordinate vectors and
/// a small integer grid.
fn rational_witness(conds: &[Condition], r: usize) -> Option<Vec<Scalar>> {
    let q = FieldSpec::Rationals;
    for v in projective_points(5, r) {
        // Symmetric representatives -2..2.
        let alpha: Vec<Scalar> = v.iter().map(|&x| q.from_i64(if x > 2 { x as i64 - 5 } else { x as i64 })).collect();
        if !holds_at(conds, &alpha) {
            return Some(alpha);
        }
    }
    None
}

fn decide_exact_r2(conds: &[Condition]) -> Decision {
    for c in conds {
        if let RankCheck::Fails(w) = full_rank_r2(&c.fm, c.target) {
            return Decision { verdict: Verdict::Fails, certificate: Certificate::ExactR2Pencil, witness: Some(w), notes: vec![] };
        }
    }
    Decision { verdict: Verdict::Holds, certificate: Certificate::ExactR2Pencil, witness: None, notes: vec![] }
}

fn decide_groebner(conds: &[Condition], field: FieldSpec, r: usize, budget: CertBudget) -> Result<Decision> {
    if !field.is_rational() {
        return Err(Error::Unsupported(field, "minor-ideal certificates".into()));
    }
    for c in conds {
        if !full_rank_groebner(&c.fm, c.target, budget)? {
            let witness = match rational_witness(conds, r) {
                Some(p) => Witness::Point(p),
                None => Witness::Algebraic(format!(
                    "nonzero common zero over the algebraic closure of the {}-minors of a {}x{} form matrix",
                    c.target,
                    c.fm.shape().0,
                    c.fm.shape().1
                )),
            };
            return Ok(Decision {
                verdict: Verdict::Fails,
                certificate: Certificate::ExactGroebner,
                witness: Some(witness),
                notes: vec![],
            });
        }
    }
    Ok(Decision { verdict: Verdict::Holds, certificate: Certificate::ExactGroebner, witness: None, notes: vec![] })
}

fn decide_sweep(conds: &[Condition], field: FieldSpec, r: usize, primes: &[u64]) -> Decision {
    let mut notes = Vec::new();
    let primes: Vec<u64> = match field {
        FieldSpec::Prime(p) => {
            notes.push(format!("module is defined over F_{p}; sweeping that field only"));
            vec![p]
        }
        FieldSpec::Rationals => primes.to_vec(),
    };
    let mut used = Vec::new();
    let mut points = 0;
    let mut inconclusive = false;
    for &p in &primes {
        let fp = FieldSpec::Prime(p);
        let reduced: Option<Vec<Condition>> = conds
            .iter()
            .map(|c| c.fm.convert(fp).ok().map(|fm| Condition { fm, target: c.target }))
            .collect();
        let Some(reduced) = reduced else {
            notes.push(format!("skipped p = {p}: a coefficient has p in its denominator"));
            continue;
        };
        let grid = projective_points(p, r);
        points += grid.len();
        used.push(p);
        let bad = grid.par_iter().find_first(|v| {
            let alpha: Vec<Scalar> = v.iter().map(|&x| Scalar::Fp(x)).collect();
            !holds_at(&reduced, &alpha)
        });
        let Some(v) = bad else { continue };
        if !field.is_rational() {
            let w = Witness::Point(v.iter().map(|&x| Scalar::Fp(x)).collect());
            return Decision { verdict: Verdict::Fails, certificate: Certificate::Sweep { primes: used, points }, witness: Some(w), notes };
        }
        // Lift with nonnegative and with symmetric representatives.
        let q = FieldSpec::Rationals;
        let lifts = [
            v.iter().map(|&x| q.from_i64(x as i64)).collect::<Vec<_>>(),
            v.iter().map(|&x| q.from_i64(if 2 * x > p { x as i64 - p as i64 } else { x as i64 })).collect(),
        ];
        if let Some(alpha) = lifts.into_iter().find(|a| !holds_at(conds, a)) {
            return Decision {
                verdict: Verdict::Fails,
                certificate: Certificate::Sweep { primes: used, points },
                witness: Some(Witness::Point(alpha)),
                notes,
            };
        }
        notes.push(format!("rank drop at {v:?} over F_{p} does not lift to Q"));
        inconclusive = true;
    }
    let verdict = if inconclusive { Verdict::Inconclusive } else { Verdict::HoldsOverSampledPoints };
    Decision { verdict, certificate: Certificate::Sweep { primes: used, points }, witness: None, notes }
}

fn decide_randomized(conds: &[Condition], field: FieldSpec, r: usize, trials: usize, seed: u64) -> Decision {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = field.modulus().map_or(1000, |p| p as i64);
    for _ in 0..trials {
        let alpha: Vec<Scalar> = loop {
            let a: Vec<Scalar> = (0..r).map(|_| field.from_i64(rng.gen_range(-bound..=bound))).collect();
            if a.iter().any(|x| !field.is_zero(x)) {
                break a;
            }
        };
        if !holds_at(conds, &alpha) {
            return Decision {
                verdict: Verdict::Fails,
                certificate: Certificate::Randomized { trials, seed },
                witness: Some(Witness::Point(alpha)),
                notes: vec![],
            };
        }
    }
    Decision { verdict: Verdict::HoldsOverSampledPoints, certificate: Certificate::Randomized { trials, seed }, witness: None, notes: vec![] }
}

fn decide(conds: Vec<Condition>, field: FieldSpec, r: usize, strategy: &Strategy) -> Result<Decision> {
    let conds: Vec<Condition> = conds.into_iter().filter(|c| c.target > 0).collect();
    if conds.is_empty() {
        return Ok(Decision { verdict: Verdict::Holds, certificate: Certificate::Trivial, witness: None, notes: vec![] });
    }
    match strategy {
        Strategy::ExactR2 if r != 2 => Err(Error::InvalidParameters(format!("exact-r2 needs r = 2, got r = {r}"))),
        Strategy::ExactR2 => Ok(decide_exact_r2(&conds)),
        Strategy::Groebner(b) => decide_groebner(&conds, field, r, *b),
        Strategy::Sweep(primes) => Ok(decide_sweep(&conds, field, r, primes)),
        Strategy::Randomized { trials, seed } => Ok(decide_randomized(&conds, field, r, *trials, *seed)),
        Strategy::Auto if r == 2 => Ok(decide_exact_r2(&conds)),
        Strategy::Auto if !field.is_rational() => Ok(decide_sweep(&conds, field, r, &sweep_primes())),
        Strategy::Auto => match decide_groebner(&conds, field, r, CertBudget::default()) {
            Err(Error::Budget(e)) => {
                let mut d = decide_sweep(&conds, field, r, &sweep_primes());
                d.notes.insert(0, format!("{e}; fell back to a sweep"));
                Ok(d)
            }
            other => other,
        },
    }
}

fn report(property: Property, d: Decision, generic_ranks: Vec<usize>) -> PropertyReport {
    debug_assert!(d.verdict != Verdict::Holds || d.certificate.is_exact());
    debug_assert!(d.verdict != Verdict::Fails || d.witness.is_some());
    PropertyReport { property, verdict: d.verdict, certificate: d.certificate, witness: d.witness, generic_ranks, notes: d.notes }
}

/// Every layer map `L_i(α)` is surjective.
pub fn check_eip(m: &Rep, strategy: &Strategy) -> Result<PropertyReport> {
    let conds = layer_forms(m)
        .into_iter()
        .map(|fm| {
            let target = fm.shape().0;
            Condition { fm, target }
        })
        .collect();
    Ok(report(Property::Eip, decide(conds, m.field(), m.algebra().r(), strategy)?, vec![]))
}

/// Every layer map `L_i(α)` is injective.
pub fn check_ekp(m: &Rep, strategy: &Strategy) -> Result<PropertyReport> {
    let conds = layer_forms(m)
        .into_iter()
        .map(|fm| {
            let target = fm.shape().1;
            Condition { fm, target }
        })
        .collect();
    Ok(report(Property::Ekp, decide(conds, m.field(), m.algebra().r(), strategy)?, vec![]))
}

/// Blocks of the `j`-th power as form matrices of degree `j`.
fn power_forms(m: &Rep, j: usize) -> Vec<FormMatrix> {
    let layers = layer_forms(m);
    let n = m.algebra().n();
    (0..n.saturating_sub(j))
        .map(|i| {
            let mut acc = layers[i].clone();
            for l in &layers[i + 1..i + j] {
                acc = l.mul(&acc);
            }
            acc
        })
        .collect()
}

/// Generic rank of the `j`-th power: `(c_j, exact)`.
pub fn generic_j_rank(m: &Rep, j: usize) -> (usize, bool) {
    if j == 0 {
        return (m.total_dim(), true);
    }
    power_forms(m, j).iter().map(generic_rank).fold((0, true), |(s, e), (g, x)| (s + g, e && x))
}

fn constant_rank_decision(m: &Rep, j: usize, strategy: &Strategy) -> Result<(Decision, usize)> {
    let n = m.algebra().n();
    if j == 0 || j >= n {
        let note = format!("the power {j} of the operator is {}", if j == 0 { "the identity" } else { "zero" });
        let rank = if j == 0 { m.total_dim() } else { 0 };
        return Ok((Decision { verdict: Verdict::Holds, certificate: Certificate::Trivial, witness: None, notes: vec![note] }, rank));
    }
    // The total rank is a sum of block ranks, each bounded by its generic
    // value, so it is constant iff every block keeps its generic rank.
    let mut conds = Vec::new();
    let mut total = 0;
    let mut exact = true;
    for fm in power_forms(m, j) {
        let (g, e) = generic_rank(&fm);
        exact &= e;
        total += g;
        conds.push(Condition { fm, target: g });
    }
    let mut d = decide(conds, m.field(), m.algebra().r(), strategy)?;
    if !exact {
        d.notes.push("generic rank estimated on a grid too large for the field".into());
        if d.verdict == Verdict::Holds {
            d.verdict = Verdict::HoldsOverSampledPoints;
        }
    }
    Ok((d, total))
}

pub fn check_constant_j_rank(m: &Rep, j: usize, strategy: &Strategy) -> Result<PropertyReport> {
    let (d, c) = constant_rank_decision(m, j, strategy)?;
    Ok(report(Property::ConstantRank(j), d, vec![c]))
}

/// Constant j-rank for `j = 1 .. n − 1`; the power `n` vanishes identically.
pub fn check_cjt(m: &Rep, strategy: &Strategy) -> Result<PropertyReport> {
    let n = m.algebra().n();
    let mut ranks = Vec::new();
    let mut worst: Option<Decision> = None;
    let mut notes = Vec::new();
    for j in 1..n {
        let (d, c) = constant_rank_decision(m, j, strategy)?;
        ranks.push(c);
        notes.extend(d.notes.iter().map(|s| format!("j = {j}: {s}")));
        let replace = match &worst {
            None => true,
            Some(w) => d.verdict < w.verdict || (d.verdict == w.verdict && !d.certificate.is_exact()),
        };
        let failed = d.verdict == Verdict::Fails;
        if replace {
            worst = Some(d);
        }
        if failed {
            notes.push(format!("constant rank fails for j = {j}"));
            break;
        }
    }
    notes.push(format!("j = {n}: the operator is nilpotent of order at most {n}, so this rank is constantly 0"));
    let mut d = worst.unwrap_or(Decision { verdict: Verdict::Holds, certificate: Certificate::Trivial, witness: None, notes: vec![] });
    d.notes = notes;
    Ok(report(Property::Cjt, d, ranks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraData;
    use crate::construct::{dual, iota, m_module, projective, simple, w_module};
    use crate::rep::direct_sum;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn alpha(c: &[i64]) -> AlphaVector {
        AlphaVector::from_i64(Q, c).unwrap()
    }

    #[test]
    fn operator_and_ranks() {
        let a22 = AlgebraData::new(2, 2).unwrap();
        let s0 = simple(a22, Q, 0).unwrap();
        assert!(alpha_operator(&s0, &alpha(&[1, 2])).unwrap().is_zero());
        assert_eq!(jordan_type(&s0, &alpha(&[1, 2])).unwrap(), vec![1]);
        let m = m_module(2, 2, 2, Q).unwrap();
        assert_eq!(alpha_operator(&m, &alpha(&[1, 0])).unwrap().rank(), 1);
        let p0 = projective(a22, Q, 0).unwrap();
        assert_eq!(j_rank(&p0, &alpha(&[3, -1]), 1).unwrap(), 1);
        assert_eq!(j_rank(&p0, &alpha(&[3, -1]), 2).unwrap(), 0);
        assert_eq!(jordan_type(&p0, &alpha(&[0, 1])).unwrap(), vec![2, 1]);
        let m323 = m_module(3, 2, 3, Q).unwrap();
        assert_eq!(jordan_type(&m323, &alpha(&[1, 1, 0])).unwrap(), vec![2, 2, 2, 1, 1, 1]);
        assert!(AlphaVector::from_i64(Q, &[0, 0]).is_err());
    }

    #[test]
    fn operator_is_nilpotent() {
        let m = m_module(5, 4, 2, Q).unwrap();
        let a = alpha_operator(&m, &alpha(&[2, 7])).unwrap();
        let mut p = a.clone();
        for _ in 1..4 {
            p = p.mul(&a);
        }
        assert!(p.is_zero());
    }

    #[test]
    fn figure_module_has_equal_kernels() {
        let m = m_module(3, 2, 3, Q).unwrap();
        assert_eq!(check_ekp(&m, &Strategy::Groebner(CertBudget::default())).unwrap().verdict, Verdict::Holds);
        let sweep = check_ekp(&m, &Strategy::Sweep(vec![5, 7, 11])).unwrap();
        assert_eq!(sweep.verdict, Verdict::HoldsOverSampledPoints);
        assert_eq!(sweep.certificate, Certificate::Sweep { primes: vec![5, 7, 11], points: 31 + 57 + 133 });
        assert!(matches!(check_ekp(&m, &Strategy::ExactR2), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn simple_failures() {
        let a32 = AlgebraData::new(3, 2).unwrap();
        let s1 = simple(a32, Q, 1).unwrap();
        let eip = check_eip(&s1, &Strategy::ExactR2).unwrap();
        assert_eq!(eip.verdict, Verdict::Fails);
        assert!(eip.witness.is_some());
        assert_eq!(check_ekp(&s1, &Strategy::ExactR2).unwrap().verdict, Verdict::Fails);
        let e = iota(&w_module(2, 2, 2, Q).unwrap()).unwrap();
        assert_eq!(check_eip(&e, &Strategy::Auto).unwrap().verdict, Verdict::Fails);
    }

    #[test]
    fn constant_rank_drop() {
        // dims (1,1,1): layer 0 = (1, 0), layer 1 = (1, 0).
        let a32 = AlgebraData::new(3, 2).unwrap();
        let one = Mat::from_i64(Q, 1, 1, &[1]);
        let zero = Mat::from_i64(Q, 1, 1, &[0]);
        let m = Rep::new(a32, Q, vec![1, 1, 1], vec![vec![one.clone(), one], vec![zero.clone(), zero]]).unwrap();
        let rep = check_constant_j_rank(&m, 1, &Strategy::ExactR2).unwrap();
        assert_eq!(rep.verdict, Verdict::Fails);
        assert_eq!(rep.generic_ranks, vec![2]);
        let Some(Witness::Point(w)) = rep.witness else { panic!("expected a point") };
        assert!(Q.is_zero(&w[0]));
        let sum = direct_sum(&simple(AlgebraData::new(2, 2).unwrap(), Q, 0).unwrap(), &projective(AlgebraData::new(2, 2).unwrap(), Q, 0).unwrap()).unwrap();
        let cjt = check_cjt(&sum, &Strategy::Auto).unwrap();
        assert!(cjt.holds());
        assert_eq!(jordan_type(&sum, &alpha(&[1, 4])).unwrap(), vec![2, 1, 1]);
    }

    #[test]
    fn strategies_agree_on_small_corpus() {
        for (m, n) in [(2, 2), (3, 2), (4, 2), (3, 3), (4, 3), (5, 3)] {
            let mm = m_module(m, n, 2, Q).unwrap();
            for x in [mm.clone(), dual(&mm)] {
                let exact = check_eip(&x, &Strategy::ExactR2).unwrap();
                let gb = check_eip(&x, &Strategy::Groebner(CertBudget::default())).unwrap();
                let sw = check_eip(&x, &Strategy::Sweep(vec![5, 7])).unwrap();
                assert_eq!(exact.verdict == Verdict::Holds, gb.verdict == Verdict::Holds);
                assert_eq!(exact.verdict == Verdict::Holds, sw.verdict == Verdict::HoldsOverSampledPoints);
                assert!(check_cjt(&x, &Strategy::Auto).unwrap().holds());
            }
        }
    }

    #[test]
    fn partitions() {
        assert_eq!(partition_from_ranks(&[3, 1, 0]), vec![2, 1]);
        assert_eq!(partition_from_ranks(&[9, 3, 0]), vec![2, 2, 2, 1, 1, 1]);
        assert_eq!(projective_points(5, 2).len(), 6);
        assert_eq!(projective_points(11, 3).len(), 133);
    }
}
