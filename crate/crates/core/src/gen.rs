//! Deterministic random and named gain graph instances.
//!
//! All randomness comes from SplitMix64 so that instances can be regenerated
//! bit-for-bit from `(arguments, seed)` in any language.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{GainError, Result};
use crate::graph::GainGraph;

/// Seed for the SplitMix64 stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

/// SplitMix64 with the standard finalizer constants.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: Seed) -> Self {
        Self { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GainError::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )))
    }
}

/// `G(n, p)` with all gains 1. Pairs `i < j` are visited in lexicographic
/// order; a pair is an edge iff the next uniform draw is below `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: Seed) -> Result<GainGraph> {
    check_p(p)?;
    let mut rng = SplitMix64::new(seed);
    let one = Complex64::new(1.0, 0.0);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_f64() < p {
                edges.push((i, j, one));
            }
        }
    }
    GainGraph::new(n, edges)
}

/// Random bipartite graph on parts `0..n1` and `n1..n1+n2`, all gains 1.
pub fn bipartite_erdos_renyi(n1: usize, n2: usize, p: f64, seed: Seed) -> Result<GainGraph> {
    check_p(p)?;
    let mut rng = SplitMix64::new(seed);
    let one = Complex64::new(1.0, 0.0);
    let mut edges = Vec::new();
    for i in 0..n1 {
        for j in n1..n1 + n2 {
            if rng.next_f64() < p {
                edges.push((i, j, one));
            }
        }
    }
    GainGraph::new(n1 + n2, edges)
}

/// Replaces every gain with `e^{2πiu}`, one uniform `u` per edge in canonical
/// edge order.
pub fn random_unit_gains(g: &GainGraph, seed: Seed) -> GainGraph {
    let mut rng = SplitMix64::new(seed);
    let edges: Vec<_> = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, Complex64::from_polar(1.0, TAU * rng.next_f64())))
        .collect();
    GainGraph::new(g.n(), edges).expect("same simple edge set")
}

/// Sign pattern of the 5 x 15 biadjacency block of the signed `K_{5,15}`.
const K5_15_SIGNS: [[i8; 15]; 5] = [
    [1, -1, 1, 1, 1, 1, -1, -1, -1, -1, 1, 1, 1, 1, 1],
    [1, 1, -1, 1, 1, 1, -1, 1, 1, 1, -1, -1, -1, 1, 1],
    [1, 1, 1, -1, 1, 1, 1, -1, 1, 1, -1, 1, 1, -1, -1],
    [1, 1, 1, 1, -1, 1, 1, 1, -1, 1, 1, -1, 1, -1, 1],
    [1, 1, 1, 1, 1, -1, 1, 1, 1, -1, 1, 1, -1, 1, -1],
];

/// Signed complete bipartite graph `K_{5,15}`: vertices `0..5` against
/// `5..20`, 75 edges, 23 of them negative.
pub fn signed_k5_15() -> GainGraph {
    let edges = K5_15_SIGNS.iter().enumerate().flat_map(|(i, row)| {
        row.iter()
            .enumerate()
            .map(move |(j, &s)| (i, 5 + j, Complex64::new(s as f64, 0.0)))
    });
    GainGraph::new(20, edges).expect("fixed instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggf;

    #[test]
    fn splitmix_reference_stream() {
        // reference outputs of SplitMix64 seeded with 0
        let mut r = SplitMix64::new(Seed(0));
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
        let u = SplitMix64::new(Seed(42)).next_f64();
        assert!((0.0..1.0).contains(&u));
    }

    #[test]
    fn extreme_probabilities() {
        assert_eq!(erdos_renyi(6, 0.0, Seed(1)).unwrap().m(), 0);
        assert_eq!(erdos_renyi(6, 1.0, Seed(1)).unwrap().m(), 15);
        assert_eq!(bipartite_erdos_renyi(3, 4, 1.0, Seed(9)).unwrap().m(), 12);
        assert_eq!(bipartite_erdos_renyi(3, 4, 0.0, Seed(9)).unwrap().m(), 0);
        assert!(erdos_renyi(3, 1.5, Seed(0)).is_err());
        assert!(bipartite_erdos_renyi(3, 3, -0.1, Seed(0)).is_err());
    }

    #[test]
    fn deterministic_instances() {
        let a = random_unit_gains(&erdos_renyi(10, 0.5, Seed(7)).unwrap(), Seed(3));
        let b = random_unit_gains(&erdos_renyi(10, 0.5, Seed(7)).unwrap(), Seed(3));
        assert_eq!(ggf::write(&a), ggf::write(&b));
        let c = random_unit_gains(&a, Seed(4));
        assert_eq!(c.m(), a.m());
        assert!(c.edges().iter().zip(a.edges()).all(|(x, y)| (x.u, x.v) == (y.u, y.v)));
        assert_ne!(c.gain_stats().unwrap().a, a.gain_stats().unwrap().a);
        for e in c.edges() {
            assert!((e.gain.norm() - 1.0).abs() < 1e-12);
        }
        assert_eq!(random_unit_gains(&GainGraph::empty(4), Seed(1)).m(), 0);
    }

    #[test]
    fn edge_count_concentrates() {
        let g = erdos_renyi(200, 0.3, Seed(2024)).unwrap();
        let pairs = 200.0 * 199.0 / 2.0;
        let mean = 0.3 * pairs;
        let sd = (pairs * 0.3 * 0.7f64).sqrt();
        assert!((g.m() as f64 - mean).abs() <= 5.0 * sd, "m = {}", g.m());
    }

    #[test]
    fn k5_15_structure() {
        let g = signed_k5_15();
        assert_eq!((g.n(), g.m()), (20, 75));
        let neg = g.edges().iter().filter(|e| e.gain.re < 0.0).count();
        assert_eq!(neg, 23);
        let s = g.gain_stats().unwrap();
        assert!((s.a - 46.0 / 75.0).abs() < 1e-15);
        assert_eq!(s.b, 1.0);
    }
}
