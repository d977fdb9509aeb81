//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always show.

mod common;

use std::f64::consts::{FRAC_PI_2, TAU};
use std::time::{Duration, Instant};

use gainspec::bounds_max::classic_max_bounds;
use gainspec::bounds_min::{
    bipartite_gamma_bound, bipartite_optimal_bound, chromatic_gamma_theta_bound, chromatic_optimal_complex_bound,
    chromatic_optimal_real_bound, degree_pair_bounds, triangle_bounds,
};
use gainspec::coloring::{bipartition, chromatic_number};
use gainspec::eig::{diag_power_bound, eigenvalues, inverse_diag_power_bound, trace_power_bound};
use gainspec::frustration::{frustration_index, frustration_number, FrustrationOptions};
use gainspec::gen::{bipartite_erdos_renyi, erdos_renyi, random_unit_gains, signed_k5_15, Seed, SplitMix64};
use gainspec::report::bipartite_table;
use gainspec::{Complex64, GainGraph, SwitchingFunction};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

// written as a negation so that NaN fails
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lambda_min(g: &GainGraph) -> f64 {
    eigenvalues(&g.laplacian()).unwrap().lambda_min()
}

fn lambda_max(g: &GainGraph) -> f64 {
    eigenvalues(&g.laplacian()).unwrap().lambda_max()
}

fn c1_k5_15() -> Outcome {
    let g = signed_k5_15();
    let (v1, v2) = bipartition(&g).ok_or("K5,15 not bipartite")?;
    let r = bipartite_table(&g, "K5,15", (&v1, &v2)).map_err(|e| e.to_string())?;
    let v: Vec<f64> = r.rows.iter().map(|x| x.value.unwrap_or(f64::NAN)).collect();
    let targets = [3.597, 0.613, 4.600, 3.982, 1.000, 7.500, 5.000];
    for (i, (&got, want)) in v.iter().zip(targets).enumerate() {
        ensure!(
            (got - want).abs() <= 1e-3,
            "row {} = {got}, expected {want}",
            r.rows[i].name
        );
    }
    ensure!(v[4] == 1.0, "b = {} is not exactly 1", v[4]);
    ensure!(v[5] == 7.5, "(2m/n)b = {} is not exactly 7.5", v[5]);
    Ok(format!(
        "column {:?}",
        v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>()
    ))
}

fn c2_equality() -> Outcome {
    let one = Complex64::new(1.0, 0.0);
    let t = GainGraph::new(3, [(0, 1, one), (0, 2, one), (1, 2, -one)]).unwrap();
    let opts = FrustrationOptions::default();
    let l1 = lambda_min(&t);
    let nu = frustration_number(&t, opts).unwrap().value;
    let eps = frustration_index(&t, opts).unwrap().value;
    ensure!(
        (l1 - 1.0).abs() <= 1e-9 && nu == 1 && eps == 1,
        "λ₁={l1}, ν={nu}, ε={eps}"
    );
    let (_, b2, _) = degree_pair_bounds(&t).unwrap();
    ensure!((b2 - 1.0).abs() <= 1e-12, "degree pair (ii) = {b2}");
    let t4 = triangle_bounds(&t).unwrap()[3];
    ensure!((t4 - 1.0).abs() <= 1e-12, "triangle bound 4 = {t4}");

    let k3 = GainGraph::with_uniform_gain(3, &[(0, 1), (0, 2), (1, 2)], -one).unwrap();
    let real = chromatic_optimal_real_bound(&k3, 3).unwrap();
    let l1 = lambda_min(&k3);
    ensure!(
        (real - 1.0).abs() <= 1e-12 && (l1 - 1.0).abs() <= 1e-9,
        "K3-: real optimum {real}, λ₁ {l1}"
    );
    let twice = classic_max_bounds(&k3).unwrap().0;
    let ln = lambda_max(&k3);
    ensure!(twice == 4.0 && (ln - 4.0).abs() <= 1e-9, "K3-: 2Δ {twice}, λₙ {ln}");
    Ok("triangle λ₁=ν=ε=b2=t4=1; K3- real optimum=λ₁=1, 2Δ=λₙ=4".into())
}

fn c3_soundness() -> Outcome {
    let mut checked = 0usize;
    let mut rng = SplitMix64::new(Seed(77));
    for seed in 1..=500u64 {
        let g = sweep_graph(seed);
        let spectrum = eigenvalues(&g.laplacian()).unwrap();
        let (l1, ln) = (spectrum.lambda_min(), spectrum.lambda_max());
        ensure!(l1 >= -1e-9, "seed {seed}: λ₁ = {l1}");
        for (name, v) in lambda1_upper_bounds(&g) {
            ensure!(v >= l1 - SLACK, "seed {seed}: {name} = {v} < λ₁ = {l1}");
            checked += 1;
        }
        for (name, v) in lambda_n_upper_bounds(&g, &mut rng) {
            ensure!(v >= ln - SLACK, "seed {seed}: {name} = {v} < λₙ = {ln}");
            checked += 1;
        }
        for (name, v) in lambda_n_lower_bounds(&g) {
            ensure!(v <= ln + SLACK, "seed {seed}: {name} = {v} > λₙ = {ln}");
            checked += 1;
        }
        if g.m() > 0 {
            let signless = eigenvalues(&g.signless().laplacian()).unwrap().lambda_max();
            ensure!(ln <= signless + SLACK, "seed {seed}: λₙ = {ln} > λₙ(−) = {signless}");
            ensure!(
                g.max_degree() as f64 + 1.0 <= ln + SLACK,
                "seed {seed}: Δ+1 > λₙ = {ln}"
            );
        }
    }
    Ok(format!("500 graphs, {checked} bound evaluations"))
}

fn c4_frustration() -> Outcome {
    let opts = FrustrationOptions::default();
    let mut count = 0usize;
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for subset in 0u32..1 << pairs.len() {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| subset >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let m = chosen.len();
            for signs in 0u32..1 << m {
                let edges = chosen
                    .iter()
                    .enumerate()
                    .map(|(i, &(u, v))| (u, v, Complex64::new(if signs >> i & 1 == 1 { -1.0 } else { 1.0 }, 0.0)));
                let g = GainGraph::new(n, edges).unwrap();
                let nu = frustration_number(&g, opts).unwrap();
                let eps = frustration_index(&g, opts).unwrap();
                let l1 = lambda_min(&g);
                let tag = format!("n={n} edges={chosen:?} signs={signs:b}");
                ensure!(l1 <= nu.value as f64 + SLACK, "{tag}: λ₁ = {l1} > ν = {}", nu.value);
                ensure!(nu.value <= eps.value, "{tag}: ν = {} > ε = {}", nu.value, eps.value);
                let balanced = g.is_balanced().balanced;
                ensure!(
                    (eps.value == 0) == balanced,
                    "{tag}: ε = {} but balanced = {balanced}",
                    eps.value
                );
                ensure!(
                    (nu.value == 0) == balanced,
                    "{tag}: ν = {} but balanced = {balanced}",
                    nu.value
                );
                ensure!(
                    nu.witness.len() == nu.value && eps.witness.len() == eps.value,
                    "{tag}: witness size"
                );
                ensure!(
                    without_vertices(&g, &nu.witness).is_balanced().balanced,
                    "{tag}: ν witness fails"
                );
                ensure!(
                    without_edges(&g, &eps.witness).is_balanced().balanced,
                    "{tag}: ε witness fails"
                );
                count += 1;
            }
        }
    }
    Ok(format!("{count} signed graphs on at most 5 vertices"))
}

fn within(v: f64, target: f64, rel: f64) -> bool {
    v.is_finite() && (v - target).abs() <= rel * target.abs()
}

fn c5_convergence() -> Outcome {
    let mut found = 0;
    let mut inverse_cases = 0;
    let mut seed = 0u64;
    while found < 20 {
        seed += 1;
        let n = 5 + (seed % 8) as usize;
        let g = random_unit_gains(&erdos_renyi(n, 0.5, Seed(seed)).unwrap(), Seed(seed + 1000));
        if g.m() == 0 || !g.is_connected() {
            continue;
        }
        found += 1;
        let l = g.laplacian();
        let spectrum = eigenvalues(&l).unwrap();
        let (l1, ln) = (spectrum.lambda_min(), spectrum.lambda_max());
        let d = diag_power_bound(&l, 256).unwrap();
        let t = trace_power_bound(&l, 256).unwrap();
        ensure!(within(d, ln, 0.02), "seed {seed}: diag power {d} vs λₙ {ln}");
        ensure!(within(t, ln, 0.02), "seed {seed}: trace power {t} vs λₙ {ln}");
        if !g.is_balanced().balanced {
            let inv = inverse_diag_power_bound(&l, 256).unwrap();
            ensure!(within(inv, l1, 0.02), "seed {seed}: inverse power {inv} vs λ₁ {l1}");
            inverse_cases += 1;
        }
    }
    Ok(format!("20 connected graphs, {inverse_cases} unbalanced, k = 256"))
}

fn c6_optimality() -> Outcome {
    let mut rng = SplitMix64::new(Seed(6));
    let mut graphs = 0;
    let mut seed = 1000u64;
    while graphs < 50 {
        seed += 1;
        let g = sweep_graph(seed);
        if g.m() == 0 {
            continue;
        }
        graphs += 1;
        let chi = chromatic_number(&g).unwrap().chi;
        let real = chromatic_optimal_real_bound(&g, chi).unwrap();
        for _ in 0..200 {
            let gamma = -10.0 + 20.0 * rng.next_f64();
            let fam = chromatic_gamma_theta_bound(&g, chi, gamma, 0.0).unwrap();
            ensure!(
                real <= fam + 1e-9,
                "seed {seed}: real optimum {real} > family {fam} at γ={gamma}"
            );
        }
        let complex = chromatic_optimal_complex_bound(&g, chi).unwrap();
        ensure!(complex <= real + 1e-12, "seed {seed}: complex {complex} > real {real}");
        let mut grid = f64::INFINITY;
        for gi in 0..=200 {
            let gamma = -10.0 + 0.1 * gi as f64;
            for ti in 0..180 {
                let theta = TAU * ti as f64 / 180.0;
                grid = grid.min(chromatic_gamma_theta_bound(&g, chi, gamma, theta).unwrap());
            }
        }
        ensure!(
            complex <= grid + 1e-6,
            "seed {seed}: complex optimum {complex} > grid {grid}"
        );
    }

    let mut bip = 0;
    let mut seed = 0u64;
    while bip < 50 {
        seed += 1;
        let n1 = 1 + (seed % 5) as usize;
        let n2 = 1 + (seed / 5 % 6) as usize;
        let g = random_unit_gains(&bipartite_erdos_renyi(n1, n2, 0.7, Seed(seed)).unwrap(), Seed(seed + 7));
        if g.m() == 0 {
            continue;
        }
        bip += 1;
        let (v1, v2) = bipartition(&g).unwrap();
        let parts = (v1.as_slice(), v2.as_slice());
        for theta in [0.0, -FRAC_PI_2, TAU * rng.next_f64()] {
            let opt = bipartite_optimal_bound(&g, parts, theta).unwrap();
            let mut grid = f64::INFINITY;
            for gi in 0..=4000 {
                let gamma = -20.0 + 0.01 * gi as f64;
                grid = grid.min(bipartite_gamma_bound(&g, parts, gamma, theta).unwrap());
            }
            ensure!(
                opt <= grid + 1e-6,
                "seed {seed}: bipartite optimum {opt} > grid {grid} at θ={theta}"
            );
        }
    }
    Ok("50 graphs for the chromatic optima, 50 bipartite graphs".into())
}

fn c7_identities() -> Outcome {
    let mut rng = SplitMix64::new(Seed(7));
    for seed in 1..=30u64 {
        let g = sweep_graph(seed + 5000);
        let l = g.laplacian();
        for _ in 0..100 {
            let x = random_vector(&mut rng, g.n());
            let a = g.quadratic_form(&x).unwrap();
            let b = l.quadratic_form(&x).unwrap();
            ensure!(
                (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0),
                "seed {seed}: edge sum {a} vs x*Lx {b}"
            );
        }
        if g.m() > 0 {
            let s = g.gain_stats().unwrap();
            for _ in 0..20 {
                let theta = TAU * rng.next_f64() - std::f64::consts::PI;
                let direct = g.a_theta(theta).unwrap();
                let via = s.a_theta(theta);
                ensure!(
                    (direct - via).abs() <= 1e-12,
                    "seed {seed}: a_θ {direct} vs identity {via}"
                );
            }
        }
        let zeta = SwitchingFunction::new((0..g.n()).map(|_| unit(&mut rng)).collect()).unwrap();
        let before = eigenvalues(&l).unwrap();
        let after = eigenvalues(&g.switch(&zeta).unwrap().laplacian()).unwrap();
        for (a, b) in before.values().iter().zip(after.values()) {
            ensure!((a - b).abs() <= 1e-9, "seed {seed}: switched spectrum {a} vs {b}");
        }
    }
    Ok("30 graphs: quadratic form, a_θ identity, switching invariance".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("signed K5,15 bipartite column", c1_k5_15, Duration::from_secs(1)),
        ("equality witnesses", c2_equality, Duration::from_secs(60)),
        ("soundness sweep", c3_soundness, Duration::from_secs(60)),
        ("frustration oracle", c4_frustration, Duration::from_secs(120)),
        ("power convergence", c5_convergence, Duration::from_secs(30)),
        ("closed-form optimality", c6_optimality, Duration::from_secs(60)),
        ("algebraic identities", c7_identities, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
