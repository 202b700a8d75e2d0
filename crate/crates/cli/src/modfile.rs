//! JSON module files.
//!
//! ```json
//! {"n": 2, "r": 3, "field": {"type": "Q"}, "dims": [3, 6],
//!  "maps": {"g1_0": [["1", "0", "0"], ...], ...}}
//! ```
//!
//! `g<s>_<i>` is arrow `s` (1-based) on layer `i`, row-major with
//! `dims[i + 1]` rows of `dims[i]` entries. Rationals are strings, prime
//! field elements are integers in `0..p`.

use std::collections::BTreeMap;
use std::fmt;

use beilinson::exactla::{FieldSpec, Mat, Scalar};
use beilinson::rep::{validate, Rep};
use beilinson::AlgebraData;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldJson {
    Q,
    Fp { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub n: usize,
    pub r: usize,
    pub field: FieldJson,
    pub dims: Vec<usize>,
    pub maps: BTreeMap<String, Vec<Vec<Value>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

fn bad(msg: impl Into<String>) -> FormatError {
    FormatError(msg.into())
}

pub fn map_key(s: usize, i: usize) -> String {
    format!("g{}_{}", s + 1, i)
}

impl FieldJson {
    pub fn spec(&self) -> Result<FieldSpec, FormatError> {
        match self {
            FieldJson::Q => Ok(FieldSpec::Rationals),
            FieldJson::Fp { p } => FieldSpec::prime(*p).map_err(|e| bad(e.to_string())),
        }
    }

    pub fn of(field: FieldSpec) -> FieldJson {
        match field {
            FieldSpec::Rationals => FieldJson::Q,
            FieldSpec::Prime(p) => FieldJson::Fp { p },
        }
    }
}

fn entry_to_json(field: FieldSpec, x: &Scalar) -> Value {
    match x {
        Scalar::Fp(v) => Value::from(*v),
        Scalar::Q(_) => Value::String(field.format(x)),
    }
}

fn entry_from_json(field: FieldSpec, v: &Value) -> Result<Scalar, FormatError> {
    match (field, v) {
        (FieldSpec::Rationals, Value::String(s)) => field.parse(s).map_err(|e| bad(e.to_string())),
        (FieldSpec::Rationals, Value::Number(n)) if n.is_i64() => Ok(field.from_i64(n.as_i64().unwrap())),
        (FieldSpec::Prime(p), Value::Number(n)) => match n.as_u64() {
            Some(x) if x < p => Ok(Scalar::Fp(x)),
            _ => Err(bad(format!("entry {n} is not a representative in 0..{p}"))),
        },
        _ => Err(bad(format!("entry {v} does not belong to {field}"))),
    }
}

impl ModuleFile {
    pub fn from_rep(m: &Rep) -> ModuleFile {
        let alg = m.algebra();
        let field = m.field();
        let mut maps = BTreeMap::new();
        for s in 0..alg.r() {
            for i in 0..alg.n() - 1 {
                let a = m.map(s, i);
                let rows = (0..a.rows()).map(|x| (0..a.cols()).map(|y| entry_to_json(field, &a.get(x, y))).collect()).collect();
                maps.insert(map_key(s, i), rows);
            }
        }
        ModuleFile { n: alg.n(), r: alg.r(), field: FieldJson::of(field), dims: m.dims().to_vec(), maps }
    }

    /// Checks keys, shapes, entries and the commutativity relations.
    pub fn to_rep(&self) -> Result<Rep, FormatError> {
        let alg = AlgebraData::new(self.n, self.r).map_err(|e| bad(e.to_string()))?;
        let field = self.field.spec()?;
        if self.dims.len() != self.n {
            return Err(bad(format!("dims has {} entries for n = {}", self.dims.len(), self.n)));
        }
        let mut maps = Vec::with_capacity(self.r);
        for s in 0..self.r {
            let mut per = Vec::with_capacity(self.n - 1);
            for i in 0..self.n - 1 {
                let key = map_key(s, i);
                let rows = self.maps.get(&key).ok_or_else(|| bad(format!("missing map {key}")))?;
                let (h, w) = (self.dims[i + 1], self.dims[i]);
                if rows.len() != h || rows.iter().any(|row| row.len() != w) {
                    return Err(bad(format!("{key} must be {h}×{w}")));
                }
                let entries = rows.iter().flatten().map(|v| entry_from_json(field, v)).collect::<Result<Vec<_>, _>>()?;
                per.push(Mat::from_scalars(field, h, w, &entries));
            }
            maps.push(per);
        }
        if self.maps.len() != self.r * (self.n - 1) {
            let known: Vec<String> = (0..self.r).flat_map(|s| (0..self.n - 1).map(move |i| map_key(s, i))).collect();
            let extra: Vec<&String> = self.maps.keys().filter(|k| !known.contains(k)).collect();
            return Err(bad(format!("unexpected maps {extra:?}")));
        }
        let rep = Rep::new(alg, field, self.dims.clone(), maps).map_err(|e| bad(e.to_string()))?;
        validate(&rep).map_err(|v| bad(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")))?;
        Ok(rep)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("module files serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<ModuleFile, FormatError> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }
}

pub fn write_rep(m: &Rep) -> String {
    ModuleFile::from_rep(m).to_json()
}

pub fn read_rep(text: &str) -> Result<Rep, FormatError> {
    ModuleFile::parse(text)?.to_rep()
}
