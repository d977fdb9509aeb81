//! Upper bounds for the largest Laplacian eigenvalue `λₙ`.
//!
//! Everything here depends on the underlying graph only; gains never enter.

use num_complex::Complex64;

use crate::error::{GainError, Result};
use crate::graph::GainGraph;

/// Default `r` for the shifted recurrence.
pub const DEFAULT_R: f64 = 0.99;
/// Default largest `k` tried by [`scan_k_min_bound`].
pub const DEFAULT_KMAX: usize = 100;

/// Degrees and average 2-degrees `m_i = (Σ_{j~i} d_j) / d_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    pub d: Vec<usize>,
    /// `None` for isolated vertices.
    pub m2: Vec<Option<f64>>,
}

impl DegreeProfile {
    pub fn new(g: &GainGraph) -> Self {
        let d = g.degrees();
        let m2 = (0..g.n())
            .map(|i| (d[i] > 0).then(|| g.neighbors(i).map(|j| d[j] as f64).sum::<f64>() / d[i] as f64))
            .collect();
        Self { d, m2 }
    }

    pub fn max_degree(&self) -> usize {
        self.d.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.d.iter().copied().min().unwrap_or(0)
    }
}

/// The classical bounds `(2Δ, max d_i + m_i, max_{i~j} d_i + d_j, ratio bound)`.
pub fn classic_max_bounds(g: &GainGraph) -> Result<(f64, f64, f64, f64)> {
    if g.m() == 0 {
        return Err(GainError::EmptyGraph);
    }
    let p = DegreeProfile::new(g);
    let d = |i: usize| p.d[i] as f64;
    let dm = |i: usize| d(i) + p.m2[i].unwrap();
    let c1 = 2.0 * p.max_degree() as f64;
    let c2 = (0..g.n())
        .filter(|&i| p.d[i] > 0)
        .map(dm)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut c3 = f64::NEG_INFINITY;
    let mut c4 = f64::NEG_INFINITY;
    for e in g.edges() {
        let (i, j) = (e.u, e.v);
        c3 = c3.max(d(i) + d(j));
        c4 = c4.max((d(i) * dm(i) + d(j) * dm(j)) / (d(i) + d(j)));
    }
    Ok((c1, c2, c3, c4))
}

fn require_connected(g: &GainGraph) -> Result<()> {
    if g.m() == 0 {
        return Err(GainError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(GainError::Hypothesis(
            "largest-eigenvalue bound requires a connected graph".into(),
        ));
    }
    Ok(())
}

/// Gershgorin bound for `C⁻¹ L C` with `C = diag(c)`.
pub fn gershgorin_diag_bound(g: &GainGraph, c: &[Complex64]) -> Result<f64> {
    require_connected(g)?;
    if c.len() != g.n() {
        return Err(GainError::DimensionMismatch {
            expected: g.n(),
            got: c.len(),
        });
    }
    if let Some(i) = c.iter().position(|z| z.norm() == 0.0 || !z.norm().is_finite()) {
        return Err(GainError::InvalidParameter(format!(
            "diagonal entry c[{i}] must be nonzero and finite"
        )));
    }
    Ok((0..g.n())
        .map(|i| g.degree(i) as f64 + g.neighbors(i).map(|j| c[j].norm()).sum::<f64>() / c[i].norm())
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Which generalized 2-degree recurrence to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RecurrenceKind {
    /// `m_iᵏ`, starting from `m⁰ = 0`.
    M,
    /// `n_iᵏ` with shift `r ∈ (0, 1)`, starting from `n⁰ = 0`.
    N(f64),
    /// `l_iᵏ`, starting from `l⁰ = 0`, `l¹ = m_i`.
    L,
}

impl RecurrenceKind {
    pub fn label(&self) -> &'static str {
        match self {
            RecurrenceKind::M => "m",
            RecurrenceKind::N(_) => "n",
            RecurrenceKind::L => "l",
        }
    }
}

/// Per-vertex values of a generalized 2-degree at depth `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedDegrees {
    pub kind: RecurrenceKind,
    pub k: usize,
    pub values: Vec<f64>,
}

/// State of a generalized 2-degree recurrence; `prev` holds depth `k`.
struct Recurrence<'a> {
    g: &'a GainGraph,
    kind: RecurrenceKind,
    d: Vec<f64>,
    prev: Vec<f64>,
    prev2: Vec<f64>,
    k: usize,
}

impl<'a> Recurrence<'a> {
    fn new(g: &'a GainGraph, kind: RecurrenceKind) -> Result<Self> {
        require_connected(g)?;
        if let RecurrenceKind::N(r) = kind {
            if !(r > 0.0 && r < 1.0) {
                return Err(GainError::InvalidParameter(format!("r must lie in (0, 1), got {r}")));
            }
        }
        let d: Vec<f64> = g.degrees().into_iter().map(|x| x as f64).collect();
        let zero = vec![0.0; g.n()];
        Ok(Self {
            g,
            kind,
            d,
            prev: zero.clone(),
            prev2: zero,
            k: 0,
        })
    }

    /// Advances to depth `k + 1`. Fails if some diagonal weight of the
    /// underlying similarity is not positive.
    fn step(&mut self) -> Result<()> {
        let n = self.g.n();
        let k = self.k + 1;
        let weights: Vec<f64> = match self.kind {
            RecurrenceKind::M => (0..n).map(|i| self.d[i] + self.prev[i]).collect(),
            RecurrenceKind::N(r) => (0..n).map(|i| self.d[i] + self.prev[i] - r).collect(),
            // l¹ = m_i is the plain average 2-degree, i.e. weights d_i
            RecurrenceKind::L if k == 1 => self.d.clone(),
            RecurrenceKind::L => (0..n).map(|i| self.d[i] + self.prev[i] - self.prev2[i]).collect(),
        };
        if let Some(vertex) = weights.iter().position(|&w| w <= 0.0 || w.is_nan()) {
            return Err(GainError::RecurrenceBreakdown { k, vertex });
        }
        let next: Vec<f64> = (0..n)
            .map(|i| self.g.neighbors(i).map(|j| weights[j]).sum::<f64>() / weights[i])
            .collect();
        self.prev2 = std::mem::replace(&mut self.prev, next);
        self.k = k;
        Ok(())
    }

    fn bound(&self) -> f64 {
        self.d
            .iter()
            .zip(&self.prev)
            .map(|(d, x)| d + x)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Values of the chosen recurrence at depth `k ≥ 1`.
pub fn generalized_degrees(g: &GainGraph, kind: RecurrenceKind, k: usize) -> Result<GeneralizedDegrees> {
    if k == 0 {
        return Err(GainError::InvalidParameter("k must be at least 1".into()));
    }
    let mut rec = Recurrence::new(g, kind)?;
    for _ in 0..k {
        rec.step()?;
    }
    Ok(GeneralizedDegrees {
        kind,
        k,
        values: rec.prev,
    })
}

/// `max_i d_i + x_iᵏ` for the chosen recurrence.
pub fn generalized_degree_bound(g: &GainGraph, kind: RecurrenceKind, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(GainError::InvalidParameter("k must be at least 1".into()));
    }
    let mut rec = Recurrence::new(g, kind)?;
    for _ in 0..k {
        rec.step()?;
    }
    Ok(rec.bound())
}

/// Smallest [`generalized_degree_bound`] over `k = 1..=kmax` as `(k, value)`,
/// ties going to the smaller `k`. A breakdown ends the scan, since every
/// later depth depends on the broken one.
pub fn scan_k_min_bound(g: &GainGraph, kind: RecurrenceKind, kmax: usize) -> Result<(usize, f64)> {
    if kmax == 0 {
        return Err(GainError::InvalidParameter("kmax must be at least 1".into()));
    }
    let mut rec = Recurrence::new(g, kind)?;
    let mut best: Option<(usize, f64)> = None;
    for k in 1..=kmax {
        if rec.step().is_err() {
            break;
        }
        let v = rec.bound();
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((k, v));
        }
    }
    best.ok_or(GainError::NoValidK(kmax))
}
