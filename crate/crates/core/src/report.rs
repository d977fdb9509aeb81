//! Bound comparison tables with soundness checks and md/csv/json rendering.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds_max::{classic_max_bounds, scan_k_min_bound, RecurrenceKind};
use crate::bounds_min::{
    bipartite_optimal_bound, chromatic_gamma_theta_bound, chromatic_optimal_complex_bound, degree_pair_bounds,
    exact_chi, oriented_a_theta, path_bounds, triangle_bounds, SOUNDNESS_SLACK,
};
use crate::eig::{eigenvalues, power_bound_sequence};
use crate::error::{GainError, Result};
use crate::graph::GainGraph;

/// What a row's value is, and what it is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Reference,
    Statistic,
    UpperLambda1,
    UpperLambdaN,
    LowerLambdaN,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub name: String,
    pub tag: String,
    pub kind: RowKind,
    /// `None` when the bound does not apply; `note` then says why.
    pub value: Option<f64>,
    pub k_used: Option<usize>,
    pub note: Option<String>,
    /// Tightest value among rows of the same kind.
    pub best: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reference {
    pub lambda1: f64,
    pub lambda_n: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub label: String,
    pub rows: Vec<BoundRow>,
    pub reference: Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

struct Builder {
    rows: Vec<BoundRow>,
}

impl Builder {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn push(&mut self, name: &str, tag: &str, kind: RowKind, value: Result<f64>, k_used: Option<usize>) {
        let (value, note) = match value {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        self.rows.push(BoundRow {
            name: name.into(),
            tag: tag.into(),
            kind,
            value,
            k_used: if value.is_some() { k_used } else { None },
            note,
            best: false,
        });
    }

    fn value(&mut self, name: &str, tag: &str, kind: RowKind, value: f64) {
        self.push(name, tag, kind, Ok(value), None);
    }

    fn finish(self, label: &str, reference: Reference) -> Result<BoundReport> {
        let mut report = BoundReport {
            label: label.into(),
            rows: self.rows,
            reference,
        };
        report.validate()?;
        report.mark_best();
        Ok(report)
    }
}

fn reference(g: &GainGraph) -> Result<Reference> {
    if g.n() == 0 {
        return Err(GainError::EmptyGraph);
    }
    let s = eigenvalues(&g.laplacian())?;
    Ok(Reference {
        lambda1: s.lambda_min(),
        lambda_n: s.lambda_max(),
    })
}

/// λ₁ against the bipartite bounds, for both `θ = 0` and `θ = −π/2`. Gain
/// statistics read every edge from `parts.0` to `parts.1`.
pub fn bipartite_table(g: &GainGraph, label: &str, parts: (&[usize], &[usize])) -> Result<BoundReport> {
    // rejects a bad bipartition up front
    bipartite_optimal_bound(g, parts, 0.0)?;
    let r = reference(g)?;
    let s = g.gain_stats()?;
    let density = 2.0 * g.m() as f64 / g.n() as f64;
    let mut b = Builder::new();
    b.value("λ₁", "lambda1", RowKind::Reference, r.lambda1);
    b.value("a(Φ)", "a", RowKind::Statistic, s.a);
    b.value("(2m/n)·a(Φ)", "density-a", RowKind::UpperLambda1, density * s.a);
    b.push(
        "bipartite optimum, θ = 0",
        "bipartite-opt-a",
        RowKind::UpperLambda1,
        bipartite_optimal_bound(g, parts, 0.0),
        None,
    );
    // b(Φ) with every edge read from V₁ to V₂, which is what the bounds use
    let sb = oriented_a_theta(g, parts.0, -FRAC_PI_2)?;
    b.value("b(Φ)", "b", RowKind::Statistic, sb);
    b.value("(2m/n)·b(Φ)", "density-b", RowKind::UpperLambda1, density * sb);
    if (sb - s.b).abs() > 1e-12 {
        let note = format!("edges oriented V₁ → V₂; canonical b(Φ) = {:.3}", s.b);
        for row in b.rows.iter_mut().rev().take(2) {
            row.note = Some(note.clone());
        }
    }
    b.push(
        "bipartite optimum, θ = −π/2",
        "bipartite-opt-b",
        RowKind::UpperLambda1,
        bipartite_optimal_bound(g, parts, -FRAC_PI_2),
        None,
    );
    b.finish(label, r)
}

/// λ₁ against the chromatic, degree-pair, triangle and path bounds. `chi`
/// overrides the exact chromatic number (any upper bound on it is sound).
pub fn lambda1_table(g: &GainGraph, label: &str, chi: Option<usize>) -> Result<BoundReport> {
    let r = reference(g)?;
    let stats = g.gain_stats();
    let chi = match chi {
        Some(c) => Ok(c),
        None => exact_chi(g),
    };
    let mut b = Builder::new();
    b.value("λ₁", "lambda1", RowKind::Reference, r.lambda1);
    b.push("a(Φ)", "a", RowKind::Statistic, stats.clone().map(|s| s.a), None);
    b.push("b(Φ)", "b", RowKind::Statistic, stats.map(|s| s.b), None);
    // γ = 1, θ = 0 of the chromatic family, which does not depend on χ
    b.push(
        "(2m/n)·a(Φ)",
        "density-a",
        RowKind::UpperLambda1,
        chromatic_gamma_theta_bound(g, 2, 1.0, 0.0),
        None,
    );
    b.push(
        "chromatic optimum",
        "chromatic-opt",
        RowKind::UpperLambda1,
        chi.and_then(|c| chromatic_optimal_complex_bound(g, c)),
        None,
    );
    let dp = degree_pair_bounds(g);
    b.push(
        "degree pair (i)",
        "degree-pair-1",
        RowKind::UpperLambda1,
        dp.clone().map(|x| x.0),
        None,
    );
    b.push(
        "degree pair (ii)",
        "degree-pair-2",
        RowKind::UpperLambda1,
        dp.map(|x| x.1),
        None,
    );
    let tri = triangle_bounds(g);
    let path = path_bounds(g);
    for i in 0..4 {
        let name = format!("triangle {}", i + 1);
        b.push(
            &name,
            &format!("triangle-{}", i + 1),
            RowKind::UpperLambda1,
            tri.clone().map(|t| t[i]),
            None,
        );
    }
    for i in 0..4 {
        let name = format!("path {}", i + 1);
        b.push(
            &name,
            &format!("path-{}", i + 1),
            RowKind::UpperLambda1,
            path.clone().map(|t| t[i]),
            None,
        );
    }
    b.finish(label, r)
}

/// Picks the first `k` whose value exceeds `floor`, or else the largest value.
fn first_beating(values: impl Iterator<Item = (u32, f64)>, floor: f64) -> Option<(u32, f64)> {
    let mut best: Option<(u32, f64)> = None;
    for (k, v) in values {
        if v > floor {
            return Some((k, v));
        }
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((k, v));
        }
    }
    best
}

/// λₙ against degree-based upper bounds and power-based lower bounds.
pub fn lambda_n_table(g: &GainGraph, label: &str, r_shift: f64, kmax: usize) -> Result<BoundReport> {
    if kmax == 0 {
        return Err(GainError::InvalidParameter("kmax must be at least 1".into()));
    }
    let r = reference(g)?;
    let lap = g.laplacian();
    let delta1 = if g.m() == 0 {
        Err(GainError::EmptyGraph)
    } else {
        Ok(g.max_degree() as f64 + 1.0)
    };
    let kmax_u32 = u32::try_from(kmax).map_err(|_| GainError::InvalidParameter("kmax too large".into()))?;
    let seq = power_bound_sequence(&lap, kmax_u32)?;
    let floor = delta1.clone().unwrap_or(0.0);

    let mut b = Builder::new();
    b.push("Δ+1", "max-degree-plus-one", RowKind::LowerLambdaN, delta1, None);
    let diag = first_beating(seq.iter().map(|p| (p.k, p.diag)), floor).expect("kmax >= 1");
    b.push(
        "max diag Lᵏ",
        "diag-power",
        RowKind::LowerLambdaN,
        Ok(diag.1),
        Some(diag.0 as usize),
    );
    let trace = first_beating(seq.iter().filter_map(|p| p.trace.map(|t| (p.k, t))), floor)
        .ok_or_else(|| GainError::InvalidParameter("trace bound needs n >= 2".into()));
    b.push(
        "trace moments of Lᵏ",
        "trace-power",
        RowKind::LowerLambdaN,
        trace.clone().map(|t| t.1),
        trace.ok().map(|t| t.0 as usize),
    );
    b.value("λₙ", "lambda-n", RowKind::Reference, r.lambda_n);
    b.push(
        "λₙ(−)",
        "signless",
        RowKind::UpperLambdaN,
        eigenvalues(&g.signless().laplacian()).map(|s| s.lambda_max()),
        None,
    );
    let classic = classic_max_bounds(g);
    b.push(
        "2Δ",
        "twice-max-degree",
        RowKind::UpperLambdaN,
        classic.clone().map(|c| c.0),
        None,
    );
    b.push(
        "max dᵢ+dⱼ",
        "edge-degree-sum",
        RowKind::UpperLambdaN,
        classic.clone().map(|c| c.2),
        None,
    );
    b.push(
        "max dᵢ+mᵢ",
        "average-2-degree",
        RowKind::UpperLambdaN,
        classic.clone().map(|c| c.1),
        None,
    );
    let kinds = [
        ("max dᵢ+mᵢᵏ".to_string(), RecurrenceKind::M),
        (format!("max dᵢ+nᵢᵏ (r = {r_shift})"), RecurrenceKind::N(r_shift)),
        ("max dᵢ+lᵢᵏ".to_string(), RecurrenceKind::L),
    ];
    for (name, kind) in kinds {
        let scan = scan_k_min_bound(g, kind, kmax);
        let tag = format!("generalized-{}", kind.label());
        b.push(
            &name,
            &tag,
            RowKind::UpperLambdaN,
            scan.clone().map(|s| s.1),
            scan.ok().map(|s| s.0),
        );
    }
    b.push(
        "degree ratio",
        "degree-ratio",
        RowKind::UpperLambdaN,
        classic.map(|c| c.3),
        None,
    );
    b.finish(label, r)
}

impl BoundReport {
    /// Checks every bound against the reference eigenvalues.
    pub fn validate(&self) -> Result<()> {
        for row in &self.rows {
            let Some(v) = row.value else { continue };
            let (ok, reference) = match row.kind {
                RowKind::UpperLambda1 => (v >= self.reference.lambda1 - SOUNDNESS_SLACK, self.reference.lambda1),
                RowKind::UpperLambdaN => (v >= self.reference.lambda_n - SOUNDNESS_SLACK, self.reference.lambda_n),
                RowKind::LowerLambdaN => (v <= self.reference.lambda_n + SOUNDNESS_SLACK, self.reference.lambda_n),
                RowKind::Reference | RowKind::Statistic => continue,
            };
            if !ok {
                return Err(GainError::Soundness {
                    row: row.name.clone(),
                    value: v,
                    reference,
                });
            }
        }
        Ok(())
    }

    fn mark_best(&mut self) {
        for kind in [RowKind::UpperLambda1, RowKind::UpperLambdaN, RowKind::LowerLambdaN] {
            let lower = kind == RowKind::LowerLambdaN;
            let values = self.rows.iter().filter(|r| r.kind == kind).filter_map(|r| r.value);
            let target = if lower {
                values.fold(f64::NEG_INFINITY, f64::max)
            } else {
                values.fold(f64::INFINITY, f64::min)
            };
            if !target.is_finite() {
                continue;
            }
            for row in self.rows.iter_mut().filter(|r| r.kind == kind) {
                row.best = row
                    .value
                    .is_some_and(|v| (v - target).abs() <= 1e-12 * target.abs().max(1.0));
            }
        }
    }

    pub fn row(&self, tag: &str) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.tag == tag)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.to_markdown(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Three decimals; `*` marks the tightest bound of each kind.
    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "### {}\n\n| Bound | Tag | Value | k | Note |\n|---|---|---:|---:|---|\n",
            self.label
        );
        for row in &self.rows {
            let value = match row.value {
                Some(v) => format!("{v:.3}{}", if row.best { "*" } else { "" }),
                None => "n/a".into(),
            };
            let k = row.k_used.map(|k| k.to_string()).unwrap_or_default();
            let note = row.note.as_deref().unwrap_or("").replace('|', "\\|");
            let _ = writeln!(out, "| {} | `{}` | {} | {} | {} |", row.name, row.tag, value, k, note);
        }
        out.push_str("\n`*` tightest bound of its kind\n");
        out
    }

    /// Twelve decimals, one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("graph,bound,tag,kind,value,k,best,note\n");
        for row in &self.rows {
            let kind = serde_json::to_value(row.kind)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default();
            let value = row.value.map(|v| format!("{v:.12}")).unwrap_or_else(|| "n/a".into());
            let k = row.k_used.map(|k| k.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                csv_field(&self.label),
                csv_field(&row.name),
                row.tag,
                kind,
                value,
                k,
                row.best,
                csv_field(row.note.as_deref().unwrap_or(""))
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
