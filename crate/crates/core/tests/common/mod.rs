#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, TAU};

use gainspec::bounds_max::{
    classic_max_bounds, generalized_degree_bound, gershgorin_diag_bound, scan_k_min_bound, RecurrenceKind,
};
use gainspec::bounds_min::{
    bipartite_gamma_bound, bipartite_optimal_bound, chromatic_gamma_theta_bound, chromatic_optimal_complex_bound,
    chromatic_optimal_real_bound, degree_pair_bounds, path_bounds, triangle_bounds,
};
use gainspec::coloring::{bipartition, chromatic_number};
use gainspec::eig::{diag_power_bound, eigenvalues, inverse_diag_power_bound, trace_power_bound};
use gainspec::frustration::{frustration_index, frustration_number, FrustrationOptions, MAX_INDEX_EDGES};
use gainspec::gen::{erdos_renyi, random_unit_gains, Seed, SplitMix64};
use gainspec::{Complex64, GainGraph};

pub const SLACK: f64 = 1e-8;

/// Random gain graph with `n ∈ [4, 10]`, `p ∈ [0.3, 0.8]`, random unit gains.
pub fn sweep_graph(seed: u64) -> GainGraph {
    let mut rng = SplitMix64::new(Seed(seed));
    let n = 4 + (rng.next_u64() % 7) as usize;
    let p = 0.3 + 0.5 * rng.next_f64();
    let g = erdos_renyi(n, p, Seed(seed)).unwrap();
    random_unit_gains(&g, Seed(seed ^ 0xA5A5_A5A5_A5A5_A5A5))
}

pub fn unit(rng: &mut SplitMix64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * rng.next_f64())
}

pub fn random_vector(rng: &mut SplitMix64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0))
        .collect()
}

/// Every implemented upper bound on `λ₁` that applies to `g`.
pub fn lambda1_upper_bounds(g: &GainGraph) -> Vec<(String, f64)> {
    let mut out = Vec::new();
    if g.m() == 0 {
        return out;
    }
    let chi = chromatic_number(g).unwrap().chi;
    for gamma in [-4.0, -1.5, -0.5, 0.0, 0.5, 1.0, 2.0, 7.0] {
        for theta in [0.0, 1.0, 2.5, -FRAC_PI_2] {
            out.push((
                format!("chromatic γ={gamma} θ={theta}"),
                chromatic_gamma_theta_bound(g, chi, gamma, theta).unwrap(),
            ));
        }
    }
    out.push((
        "chromatic real optimum".into(),
        chromatic_optimal_real_bound(g, chi).unwrap(),
    ));
    out.push((
        "chromatic complex optimum".into(),
        chromatic_optimal_complex_bound(g, chi).unwrap(),
    ));
    if let Some((v1, v2)) = bipartition(g) {
        let parts = (v1.as_slice(), v2.as_slice());
        for theta in [0.0, 1.3, -FRAC_PI_2] {
            out.push((
                format!("bipartite optimum θ={theta}"),
                bipartite_optimal_bound(g, parts, theta).unwrap(),
            ));
            for gamma in [-2.0, 0.3, 1.0, 3.0] {
                out.push((
                    format!("bipartite γ={gamma} θ={theta}"),
                    bipartite_gamma_bound(g, parts, gamma, theta).unwrap(),
                ));
            }
        }
    }
    if g.is_connected() {
        let (b1, b2, b3) = degree_pair_bounds(g).unwrap();
        out.extend([
            ("degree pair i".into(), b1),
            ("degree pair ii".into(), b2),
            ("degree pair iii".into(), b3),
        ]);
        if let Ok(t) = triangle_bounds(g) {
            out.extend(t.iter().enumerate().map(|(i, &v)| (format!("triangle {}", i + 1), v)));
        }
        if let Ok(p) = path_bounds(g) {
            out.extend(p.iter().enumerate().map(|(i, &v)| (format!("path {}", i + 1), v)));
        }
    }
    let opts = FrustrationOptions::default();
    out.push((
        "frustration number".into(),
        frustration_number(g, opts).unwrap().value as f64,
    ));
    if g.m() <= MAX_INDEX_EDGES {
        out.push((
            "frustration index".into(),
            frustration_index(g, opts).unwrap().value as f64,
        ));
    }
    let l = g.laplacian();
    for k in [1, 2, 8, 64] {
        if let Ok(v) = inverse_diag_power_bound(&l, k) {
            out.push((format!("inverse diagonal power k={k}"), v));
        }
    }
    out
}

/// Every implemented upper bound on `λₙ` that applies to `g`.
pub fn lambda_n_upper_bounds(g: &GainGraph, rng: &mut SplitMix64) -> Vec<(String, f64)> {
    let mut out = Vec::new();
    if g.m() == 0 {
        return out;
    }
    let (c1, c2, c3, c4) = classic_max_bounds(g).unwrap();
    out.extend([
        ("2Δ".into(), c1),
        ("max d+m".into(), c2),
        ("max d_i+d_j".into(), c3),
        ("ratio".into(), c4),
    ]);
    out.push((
        "signless".into(),
        eigenvalues(&g.signless().laplacian()).unwrap().lambda_max(),
    ));
    if g.is_connected() {
        for _ in 0..3 {
            let c: Vec<Complex64> = (0..g.n()).map(|_| unit(rng) * (0.1 + 5.0 * rng.next_f64())).collect();
            out.push(("gershgorin random c".into(), gershgorin_diag_bound(g, &c).unwrap()));
        }
        for kind in [
            RecurrenceKind::M,
            RecurrenceKind::N(0.99),
            RecurrenceKind::N(0.5),
            RecurrenceKind::L,
        ] {
            for k in 1..=6 {
                if let Ok(v) = generalized_degree_bound(g, kind, k) {
                    out.push((format!("{kind:?} k={k}"), v));
                }
            }
            if let Ok((k, v)) = scan_k_min_bound(g, kind, 100) {
                out.push((format!("{kind:?} scan k={k}"), v));
            }
        }
    }
    out
}

/// Every implemented lower bound on `λₙ` that applies to `g`.
pub fn lambda_n_lower_bounds(g: &GainGraph) -> Vec<(String, f64)> {
    let mut out = Vec::new();
    if g.m() == 0 {
        return out;
    }
    out.push(("Δ+1".into(), g.max_degree() as f64 + 1.0));
    let l = g.laplacian();
    for k in [1, 2, 5, 50] {
        out.push((format!("diag power k={k}"), diag_power_bound(&l, k).unwrap()));
        out.push((format!("trace power k={k}"), trace_power_bound(&l, k).unwrap()));
    }
    out
}

/// Removes the listed vertices' edges.
pub fn without_vertices(g: &GainGraph, vertices: &[usize]) -> GainGraph {
    g.filter_edges(|k| {
        let e = &g.edges()[k];
        !vertices.contains(&e.u) && !vertices.contains(&e.v)
    })
}

pub fn without_edges(g: &GainGraph, edges: &[usize]) -> GainGraph {
    g.filter_edges(|k| !edges.contains(&k))
}
