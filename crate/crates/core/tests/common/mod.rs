#![allow(dead_code)]

pub mod copresentation;

use beilinson::construct::{injective, m_module, projective, simple, w_module};
use beilinson::exactla::FieldSpec;
use beilinson::rep::Rep;
use beilinson::AlgebraData;

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn alg(n: usize, r: usize) -> AlgebraData {
    AlgebraData::new(n, r).unwrap()
}

/// Graded modules of both families, `m` from `n` to `n + extra`.
pub fn graded(n: usize, r: usize, extra: usize, field: FieldSpec) -> Vec<(String, Rep)> {
    let mut out = Vec::new();
    for m in n..=n + extra {
        out.push((format!("M({m},{n},{r})"), m_module(m, n, r, field).unwrap()));
        out.push((format!("W({m},{n},{r})"), w_module(m, n, r, field).unwrap()));
    }
    out
}

pub fn pointlike(n: usize, r: usize, field: FieldSpec) -> Vec<(String, Rep)> {
    let a = alg(n, r);
    let mut out = Vec::new();
    for i in 0..n {
        out.push((format!("S{i}/B({n},{r})"), simple(a, field, i).unwrap()));
        out.push((format!("P{i}/B({n},{r})"), projective(a, field, i).unwrap()));
        out.push((format!("I{i}/B({n},{r})"), injective(a, field, i).unwrap()));
    }
    out
}

/// Named modules over small algebras; every member is indecomposable.
pub fn corpus(field: FieldSpec) -> Vec<(String, Rep)> {
    let mut out = Vec::new();
    for (n, r) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        out.extend(graded(n, r, 2, field));
        out.extend(pointlike(n, r, field));
    }
    out.extend(graded(4, 2, 1, field));
    out.extend(pointlike(4, 2, field));
    out
}
