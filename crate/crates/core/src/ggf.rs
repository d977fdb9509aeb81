//! Plain-text gain graph files.
//!
//! ```text
//! # comment lines start with '#'
//! gaingraph 3
//! 0 1 1 0
//! 0 2 1 0
//! 1 2 -1 0
//! ```
//!
//! The header gives the vertex count, every following line one edge
//! `u v re im` with the gain of the orientation `u -> v`.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{GainError, Result};
use crate::graph::GainGraph;

pub fn parse(text: &str) -> Result<GainGraph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| GainError::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 2 || fields[0] != "gaingraph" {
                    return Err(err(format!("expected `gaingraph <n>`, found `{line}`")));
                }
                n = Some(
                    fields[1]
                        .parse::<usize>()
                        .map_err(|e| err(format!("bad vertex count: {e}")))?,
                );
            }
            Some(_) => {
                if fields.len() != 4 {
                    return Err(err(format!("expected `u v re im`, found `{line}`")));
                }
                let u = fields[0]
                    .parse::<usize>()
                    .map_err(|e| err(format!("bad vertex: {e}")))?;
                let v = fields[1]
                    .parse::<usize>()
                    .map_err(|e| err(format!("bad vertex: {e}")))?;
                let re = fields[2]
                    .parse::<f64>()
                    .map_err(|e| err(format!("bad real part: {e}")))?;
                let im = fields[3]
                    .parse::<f64>()
                    .map_err(|e| err(format!("bad imag part: {e}")))?;
                edges.push((u, v, Complex64::new(re, im)));
            }
        }
    }
    let n = n.ok_or(GainError::Parse {
        line: 0,
        msg: "missing `gaingraph <n>` header".into(),
    })?;
    GainGraph::new(n, edges)
}

/// Serializes with 17 significant digits so gains round-trip exactly.
pub fn write(g: &GainGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "gaingraph {}", g.n());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {:.16e} {:.16e}", e.u, e.v, e.gain.re, e.gain.im);
    }
    out
}

pub fn load(path: impl AsRef<Path>) -> Result<GainGraph> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn save(g: &GainGraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write(g))?;
    Ok(())
}
