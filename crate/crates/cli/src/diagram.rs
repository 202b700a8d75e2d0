//! DOT and text renderings of a component window.
//!
//! `X[len]` at offset `ℓ` sits at column `len − 1 − 2ℓ`, so translation runs
//! right to left and quasi-simples form the bottom row.

use std::fmt::Write;

use beilinson::artrans::{Classification, ComponentReport};
use beilinson::jordan::Verdict;

struct Node {
    offset: i64,
    len: usize,
    dims: Vec<usize>,
    /// Orbit classification; cone entries have none.
    class: Option<Classification>,
    cjt: Option<Verdict>,
    note: Option<String>,
}

fn nodes(report: &ComponentReport) -> Vec<Node> {
    let mut out: Vec<Node> = report
        .orbit
        .iter()
        .map(|e| Node {
            offset: e.offset,
            len: 1,
            dims: e.dims.clone(),
            class: Some(e.class),
            cjt: e.cjt.as_ref().map(|c| c.verdict),
            note: e.note.clone(),
        })
        .collect();
    out.extend(report.cone.iter().map(|e| Node {
        offset: e.offset,
        len: e.quasi_length,
        dims: e.dims.clone(),
        class: None,
        cjt: e.cjt.as_ref().map(|c| c.verdict),
        note: e.note.clone(),
    }));
    out
}

fn dims_label(dims: &[usize]) -> String {
    if dims.is_empty() {
        return "?".into();
    }
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn id(len: usize, offset: i64) -> String {
    format!("\"x{len}_{offset}\"")
}

fn class_name(c: Classification) -> &'static str {
    match c {
        Classification::Eip => "EIP",
        Classification::Ekp => "EKP",
        Classification::Neither => "neither",
        Classification::ProjectiveHit => "projective",
        Classification::InjectiveHit => "injective",
        Classification::Undetermined => "undetermined",
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(report: &ComponentReport) -> String {
    let ns = nodes(report);
    let mut s = String::new();
    writeln!(s, "digraph component {{").unwrap();
    writeln!(s, "  label=\"W({},{},{}) window\";", report.m, report.n, report.r).unwrap();
    writeln!(s, "  rankdir=RL;").unwrap();
    writeln!(s, "  node [shape=circle, style=filled, fontsize=10];").unwrap();
    for nd in &ns {
        let (fill, font, extra) = match nd.class {
            Some(Classification::Eip) => ("gray", "black", ""),
            Some(Classification::Ekp) => ("black", "white", ""),
            Some(Classification::Neither) => ("white", "black", ""),
            Some(_) => ("white", "black", ", style=\"filled,dotted\""),
            None => ("white", "black", ", style=\"filled,dashed\""),
        };
        let mut tip = match nd.class {
            Some(c) => class_name(c).to_string(),
            None => format!("quasi-length {}", nd.len),
        };
        if let Some(v) = nd.cjt {
            write!(tip, "; CJT {v}").unwrap();
        }
        if let Some(note) = &nd.note {
            write!(tip, "; {note}").unwrap();
        }
        writeln!(
            s,
            "  {} [label=\"{}\", fillcolor={fill}, fontcolor={font}, tooltip=\"{}\"{extra}];",
            id(nd.len, nd.offset),
            dims_label(&nd.dims),
            escape(&tip)
        )
        .unwrap();
    }
    let present = |len: usize, off: i64| ns.iter().any(|n| n.len == len && n.offset == off);
    for nd in &ns {
        let (len, off) = (nd.len, nd.offset);
        if present(len + 1, off) {
            writeln!(s, "  {} -> {} [constraint=false];", id(len, off), id(len + 1, off)).unwrap();
        }
        if len > 1 && present(len - 1, off - 1) {
            writeln!(s, "  {} -> {} [constraint=false];", id(len, off), id(len - 1, off - 1)).unwrap();
        }
        if present(len, off + 1) {
            writeln!(s, "  {} -> {} [style=dashed];", id(len, off), id(len, off + 1)).unwrap();
        }
    }
    writeln!(s, "}}").unwrap();
    s
}

fn marker(nd: &Node) -> char {
    match nd.class {
        Some(Classification::Eip) => 'g',
        Some(Classification::Ekp) => 'b',
        Some(Classification::Neither) => 'w',
        Some(Classification::ProjectiveHit) => 'P',
        Some(Classification::InjectiveHit) => 'I',
        Some(Classification::Undetermined) => '?',
        None => match nd.cjt {
            Some(Verdict::Holds | Verdict::HoldsOverSampledPoints) => 'c',
            Some(Verdict::Fails) => 'x',
            _ => '.',
        },
    }
}

fn put(line: &mut Vec<char>, at: usize, text: &str) {
    let chars: Vec<char> = text.chars().collect();
    if line.len() < at + chars.len() {
        line.resize(at + chars.len(), ' ');
    }
    line[at..at + chars.len()].copy_from_slice(&chars);
}

pub fn to_ascii(report: &ComponentReport) -> String {
    let ns = nodes(report);
    let col = |nd: &Node| nd.len as i64 - 1 - 2 * nd.offset;
    let min_col = ns.iter().map(col).min().unwrap_or(0);
    let labels: Vec<String> = ns.iter().map(|nd| format!("{}({})", marker(nd), dims_label(&nd.dims))).collect();
    let widest = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let half = widest / 2 + 1;
    let center = |nd: &Node| half + (col(nd) - min_col) as usize * half;
    let top = ns.iter().map(|n| n.len).max().unwrap_or(1);

    let mut out = String::new();
    writeln!(out, "component window of W({},{},{}) over B({},{})", report.m, report.n, report.r, report.n, report.r).unwrap();
    for len in (1..=top).rev() {
        let mut line = Vec::new();
        for (nd, label) in ns.iter().zip(&labels).filter(|(n, _)| n.len == len) {
            let w = label.chars().count();
            put(&mut line, center(nd).saturating_sub(w / 2), label);
        }
        out.extend(line.iter());
        out.push('\n');
        if len > 1 {
            let mut link = Vec::new();
            for nd in ns.iter().filter(|n| n.len == len) {
                let c = center(nd);
                if ns.iter().any(|m| m.len == len - 1 && m.offset == nd.offset) {
                    put(&mut link, c - half / 2, "/");
                }
                if ns.iter().any(|m| m.len == len - 1 && m.offset == nd.offset - 1) {
                    put(&mut link, c + half / 2, "\\");
                }
            }
            out.extend(link.iter());
            out.push('\n');
        }
    }
    let mut axis = Vec::new();
    for nd in ns.iter().filter(|n| n.len == 1) {
        let tag = match nd.offset {
            0 => "W".to_string(),
            l => format!("t^{l}W"),
        };
        put(&mut axis, center(nd).saturating_sub(tag.len() / 2), &tag);
    }
    out.extend(axis.iter());
    out.push('\n');
    match report.wc_count {
        Some(k) => writeln!(out, "wedge count: {k}").unwrap(),
        None => writeln!(out, "wedge count: undetermined in this window").unwrap(),
    }
    writeln!(
        out,
        "legend: g EIP (gray)  b EKP (black)  w neither (white)  P/I translate vanished  ? undetermined\n        c CJT holds  x CJT fails  . not built or not checked; translation runs right to left"
    )
    .unwrap();
    out
}
