//! Upper bounds for the smallest Laplacian eigenvalue `λ₁`.

use num_complex::Complex64;

use crate::coloring::chromatic_number;
use crate::eig::eigenvalues;
use crate::error::{GainError, Result};
use crate::frustration::{frustration_index, frustration_number, FrustrationOptions};
use crate::graph::GainGraph;

/// Slack used when comparing a bound against an eigenvalue.
pub const SOUNDNESS_SLACK: f64 = 1e-8;
/// `a_θ` this close to 1 takes the degenerate branch of [`bipartite_optimal_bound`].
pub const UNIT_A_THETA_TOL: f64 = 1e-12;

fn check_chromatic(g: &GainGraph, chi: usize) -> Result<()> {
    if g.m() == 0 {
        return Err(GainError::EmptyGraph);
    }
    // a graph with an edge needs two colors; smaller values would divide by zero
    if chi < 2 {
        return Err(GainError::InvalidParameter(format!(
            "chromatic number must be at least 2 for a graph with edges, got {chi}"
        )));
    }
    Ok(())
}

fn density(g: &GainGraph) -> f64 {
    2.0 * g.m() as f64 / g.n() as f64
}

/// `1 + cos θ (a − 1)`: the average of `a_θ` over both orientations of every
/// edge. Summing the Rayleigh quotients over the color classes visits each
/// edge between two classes once from either side, so the imaginary parts of
/// the gains cancel and only this symmetrized value enters the bound.
fn symmetric_a_theta(a: f64, theta: f64) -> f64 {
    1.0 + theta.cos() * (a - 1.0)
}

/// Parametric chromatic bound, valid for every real `gamma` and angle `theta`.
///
/// `chi` must be at least the chromatic number; the bound stays sound for any
/// larger value.
pub fn chromatic_gamma_theta_bound(g: &GainGraph, chi: usize, gamma: f64, theta: f64) -> Result<f64> {
    check_chromatic(g, chi)?;
    let a = g.gain_stats()?.a;
    let at = symmetric_a_theta(a, theta);
    let chi = chi as f64;
    let num = (a - 1.0) * (gamma * gamma + 1.0) - 2.0 * gamma * (at - 1.0);
    Ok(density(g) * (a - num / (chi + gamma * gamma - 1.0)))
}

/// Minimum of the parametric chromatic bound over `gamma` at `theta = 0`.
pub fn chromatic_optimal_real_bound(g: &GainGraph, chi: usize) -> Result<f64> {
    check_chromatic(g, chi)?;
    let a = g.gain_stats()?.a;
    Ok(if a <= 1.0 {
        density(g) * a
    } else {
        density(g) * (1.0 - (a - 1.0) / (chi as f64 - 1.0))
    })
}

/// Minimum of the parametric chromatic bound over both `gamma` and `theta`.
///
/// This is the closed form `(m/n)(a + 1 − (a−1)/(χ−1) − √(χ²(a−1)² + 4(χ−1)(b'−1)²)/(χ−1))`
/// with `b' = 1`, since `b` drops out of the symmetrized family. It therefore
/// coincides with [`chromatic_optimal_real_bound`]. Plugging in the actual
/// `b(Φ)` is not sound in general.
pub fn chromatic_optimal_complex_bound(g: &GainGraph, chi: usize) -> Result<f64> {
    check_chromatic(g, chi)?;
    let a = g.gain_stats()?.a;
    let b_eff: f64 = 1.0;
    let c = chi as f64;
    let root = (c * c * (a - 1.0).powi(2) + 4.0 * (c - 1.0) * (b_eff - 1.0).powi(2)).sqrt();
    let m_over_n = g.m() as f64 / g.n() as f64;
    Ok(m_over_n * (a + 1.0 - (a - 1.0) / (c - 1.0) - root / (c - 1.0)))
}

fn check_parts(g: &GainGraph, v1: &[usize], v2: &[usize]) -> Result<()> {
    if g.m() == 0 {
        return Err(GainError::EmptyGraph);
    }
    let n = g.n();
    let mut side = vec![0u8; n];
    for (mark, part) in [(1u8, v1), (2u8, v2)] {
        for &v in part {
            if v >= n {
                return Err(GainError::InvalidBipartition(format!("vertex {v} out of range")));
            }
            if side[v] != 0 {
                return Err(GainError::InvalidBipartition(format!("vertex {v} listed twice")));
            }
            side[v] = mark;
        }
    }
    if let Some(v) = side.iter().position(|&s| s == 0) {
        return Err(GainError::InvalidBipartition(format!("vertex {v} in neither part")));
    }
    if let Some(e) = g.edges().iter().find(|e| side[e.u] == side[e.v]) {
        return Err(GainError::InvalidBipartition(format!(
            "edge {}-{} inside a part",
            e.u, e.v
        )));
    }
    Ok(())
}

/// `a_θ` with every edge oriented from `v1` to `v2`, which is the orientation
/// the bipartite test vector sees. Equals the canonical `a_θ` when every
/// vertex of `v1` precedes every vertex of `v2`.
pub fn oriented_a_theta(g: &GainGraph, v1: &[usize], theta: f64) -> Result<f64> {
    if g.m() == 0 {
        return Err(GainError::EmptyGraph);
    }
    let mut first = vec![false; g.n()];
    for &v in v1 {
        if v < g.n() {
            first[v] = true;
        }
    }
    let rot = Complex64::from_polar(1.0, theta);
    let s: f64 = g
        .edges()
        .iter()
        .map(|e| 1.0 - (if first[e.u] { e.gain } else { e.gain.conj() } * rot).re)
        .sum();
    Ok(s / g.m() as f64)
}

/// Parametric bipartite bound with `v1` as the first part.
pub fn bipartite_gamma_bound(g: &GainGraph, parts: (&[usize], &[usize]), gamma: f64, theta: f64) -> Result<f64> {
    let (v1, v2) = parts;
    check_parts(g, v1, v2)?;
    let at = oriented_a_theta(g, v1, theta)?;
    let (n1, n2) = (v1.len() as f64, v2.len() as f64);
    Ok(g.m() as f64 / n1 * ((gamma - 1.0).powi(2) + 2.0 * gamma * at) / (gamma * gamma + n2 / n1))
}

fn bipartite_optimum(m: f64, n1: f64, n2: f64, at: f64) -> f64 {
    if (at - 1.0).abs() <= UNIT_A_THETA_TOL {
        return m / n2;
    }
    let n = n1 + n2;
    let disc = (n * n - 4.0 * at * (2.0 - at) * n1 * n2).max(0.0);
    0.5 * m * (n - disc.sqrt()) / (n1 * n2)
}

/// Minimum of the parametric bipartite bound over `gamma`, taken over both
/// orderings of the parts.
pub fn bipartite_optimal_bound(g: &GainGraph, parts: (&[usize], &[usize]), theta: f64) -> Result<f64> {
    let (v1, v2) = parts;
    check_parts(g, v1, v2)?;
    let m = g.m() as f64;
    let (n1, n2) = (v1.len() as f64, v2.len() as f64);
    let forward = bipartite_optimum(m, n1, n2, oriented_a_theta(g, v1, theta)?);
    let backward = bipartite_optimum(m, n2, n1, oriented_a_theta(g, v2, theta)?);
    Ok(forward.min(backward))
}

fn require_connected(g: &GainGraph, what: &str) -> Result<()> {
    if g.m() == 0 {
        return Err(GainError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(GainError::Hypothesis(format!("{what} requires a connected graph")));
    }
    Ok(())
}

/// The three degree-pair bounds `(b1, b2, b3)`.
pub fn degree_pair_bounds(g: &GainGraph) -> Result<(f64, f64, f64)> {
    require_connected(g, "degree-pair bound")?;
    let d = g.degrees();
    let mut b1 = f64::INFINITY;
    let mut b2 = f64::INFINITY;
    for e in g.edges() {
        let (ds, dt) = (d[e.u] as f64, d[e.v] as f64);
        b1 = b1.min((ds + dt - 2.0) / 2.0);
        b2 = b2.min((ds + dt - ((ds - dt).powi(2) + 4.0).sqrt()) / 2.0);
    }
    let delta = g.min_degree() as f64;
    let n1 = g.n() as f64 - 1.0;
    let b3 = (delta + n1 - ((n1 - delta).powi(2) + 4.0).sqrt()) / 2.0;
    Ok((b1, b2, b3))
}

/// A triangle `s < t < r` with the real part of its cycle gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleTriple {
    pub s: usize,
    pub t: usize,
    pub r: usize,
    pub cos_theta: f64,
}

/// An induced path `t ~ s ~ r` with `t` and `r` not adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathTriple {
    pub s: usize,
    pub t: usize,
    pub r: usize,
}

pub fn triangles(g: &GainGraph) -> Vec<TriangleTriple> {
    let mut out = Vec::new();
    for s in 0..g.n() {
        for t in g.neighbors(s).filter(|&t| t > s) {
            for r in g.neighbors(t).filter(|&r| r > t && g.has_edge(s, r)) {
                let z = g.gain(s, t).unwrap() * g.gain(t, r).unwrap() * g.gain(r, s).unwrap();
                out.push(TriangleTriple {
                    s,
                    t,
                    r,
                    cos_theta: z.re.clamp(-1.0, 1.0),
                });
            }
        }
    }
    out
}

/// Ordered pairs `(t, r)` of non-adjacent neighbours around every centre `s`.
pub fn path_triples(g: &GainGraph) -> Vec<PathTriple> {
    let mut out = Vec::new();
    for s in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(s).collect();
        for &t in &nb {
            for &r in &nb {
                if t != r && !g.has_edge(t, r) {
                    out.push(PathTriple { s, t, r });
                }
            }
        }
    }
    out
}

/// Minima of the Rayleigh quotient of `x = (a, b φ̄_st, c φ̄_sr)` on the
/// triple under `a = b = c`, `a = b`, `a = c` and `b = c` respectively.
fn triple_values(ds: f64, dt: f64, dr: f64, cos: f64) -> [f64; 4] {
    let c1 = cos + 1.0;
    [
        (ds + dt + dr - 2.0 * cos - 4.0) / 3.0,
        (ds + dt + 2.0 * dr - 2.0 - ((ds + dt - 2.0 * dr - 2.0).powi(2) + 8.0 * c1 * c1).sqrt()) / 4.0,
        (ds + 2.0 * dt + dr - 2.0 - ((ds + dr - 2.0 * dt - 2.0).powi(2) + 8.0 * c1 * c1).sqrt()) / 4.0,
        (2.0 * ds + dt + dr - 2.0 * cos - ((dt + dr - 2.0 * ds - 2.0 * cos).powi(2) + 32.0).sqrt()) / 4.0,
    ]
}

fn minimize<I: Iterator<Item = (usize, usize, usize, f64)>>(g: &GainGraph, triples: I) -> [f64; 4] {
    let d = g.degrees();
    let mut best = [f64::INFINITY; 4];
    for (s, t, r, cos) in triples {
        let v = triple_values(d[s] as f64, d[t] as f64, d[r] as f64, cos);
        for (b, x) in best.iter_mut().zip(v) {
            *b = b.min(x);
        }
    }
    best
}

/// The four triangle bounds, each minimized over all triangles.
pub fn triangle_bounds(g: &GainGraph) -> Result<[f64; 4]> {
    require_connected(g, "triangle bound")?;
    let tris = triangles(g);
    if tris.is_empty() {
        return Err(GainError::NoTriangle);
    }
    Ok(minimize(g, tris.iter().map(|x| (x.s, x.t, x.r, x.cos_theta))))
}

/// The triangle formulas with `cos θ = 0`, minimized over induced 2-paths.
pub fn path_bounds(g: &GainGraph) -> Result<[f64; 4]> {
    require_connected(g, "path bound")?;
    let paths = path_triples(g);
    if paths.is_empty() {
        return Err(GainError::NoPathTriple);
    }
    Ok(minimize(g, paths.iter().map(|p| (p.s, p.t, p.r, 0.0))))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrustrationCheck {
    pub lambda1: f64,
    pub nu: usize,
    pub eps: usize,
    pub ok: bool,
}

/// Computes `λ₁`, the frustration number and the frustration index and checks
/// `λ₁ ≤ ν ≤ ε`.
pub fn algebraic_frustration_check(g: &GainGraph, opts: FrustrationOptions) -> Result<FrustrationCheck> {
    let lambda1 = if g.n() == 0 {
        0.0
    } else {
        eigenvalues(&g.laplacian())?.lambda_min()
    };
    let nu = frustration_number(g, opts)?.value;
    let eps = frustration_index(g, opts)?.value;
    let ok = lambda1 <= nu as f64 + SOUNDNESS_SLACK && lambda1 <= eps as f64 + SOUNDNESS_SLACK && nu <= eps;
    Ok(FrustrationCheck { lambda1, nu, eps, ok })
}

/// Chromatic number for the bounds above, from an exact coloring.
pub fn exact_chi(g: &GainGraph) -> Result<usize> {
    Ok(chromatic_number(g)?.chi)
}
