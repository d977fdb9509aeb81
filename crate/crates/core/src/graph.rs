//! Complex unit gain graphs: construction, gain matrices, switching, balance
//! and the edge-averaged gain statistics.

use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;

use crate::error::{GainError, Result};
use crate::matrix::HermitianMatrix;

/// A cycle is neutral iff its gain is within this distance of 1.
pub const NEUTRAL_TOL: f64 = 1e-9;
/// Gains further than this from the unit circle are rejected, closer ones are
/// projected onto it.
pub const NORMALIZE_TOL: f64 = 1e-6;

/// Project `z` onto the unit circle if it is already close to it.
pub(crate) fn normalize_unit(z: Complex64) -> Option<Complex64> {
    let r = z.norm();
    // leave already-unit values bit-identical so serialization round-trips
    if (r - 1.0).abs() <= 4.0 * f64::EPSILON {
        Some(z)
    } else if r.is_finite() && (r - 1.0).abs() <= NORMALIZE_TOL {
        Some(z / r)
    } else {
        None
    }
}

/// One undirected edge in canonical orientation `u < v`. The gain of `v -> u`
/// is `gain.conj()`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub gain: Complex64,
}

/// A simple graph on vertices `0..n` whose oriented edges carry unit complex
/// gains, with the reverse orientation carrying the conjugate.
#[derive(Debug, Clone)]
pub struct GainGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

impl PartialEq for GainGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl GainGraph {
    /// Builds a gain graph from `(u, v, gain)` triples where `gain` is the gain
    /// of the orientation `u -> v`. Edges are stored sorted, in canonical
    /// orientation.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Complex64)>,
    {
        let mut canon = Vec::new();
        for (u, v, gain) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GainError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GainError::SelfLoop(u));
            }
            let gain = normalize_unit(gain).ok_or(GainError::NonUnitGain {
                u,
                v,
                modulus: gain.norm(),
            })?;
            canon.push(if u < v {
                Edge { u, v, gain }
            } else {
                Edge {
                    u: v,
                    v: u,
                    gain: gain.conj(),
                }
            });
        }
        canon.sort_by_key(|e| (e.u, e.v));
        for w in canon.windows(2) {
            if (w[0].u, w[0].v) == (w[1].u, w[1].v) {
                return Err(GainError::DuplicateEdge(w[0].u, w[0].v));
            }
        }
        Ok(Self::from_sorted(n, canon))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, k));
            adj[e.v].push((e.u, k));
            index.insert((e.u, e.v), k);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { n, edges, adj, index }
    }

    /// Every pair in `pairs` gets the same gain on its listed orientation.
    pub fn with_uniform_gain(n: usize, pairs: &[(usize, usize)], gain: Complex64) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| (u, v, gain)))
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// `(neighbor, edge index)` pairs of `v`.
    pub(crate) fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Gain of the orientation `u -> v`, if the edge exists.
    pub fn gain(&self, u: usize, v: usize) -> Option<Complex64> {
        let e = &self.edges[self.edge_index(u, v)?];
        Some(if e.u == u { e.gain } else { e.gain.conj() })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for w in self.neighbors(x) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Same vertex set, keeping only edges whose index satisfies `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(k, _)| keep(*k))
            .map(|(_, e)| *e)
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Same underlying graph with every gain replaced by `gain`.
    pub fn regauged(&self, gain: Complex64) -> Result<Self> {
        let gain = normalize_unit(gain).ok_or(GainError::NonUnitGain {
            u: 0,
            v: 0,
            modulus: gain.norm(),
        })?;
        Ok(Self::from_sorted(
            self.n,
            self.edges.iter().map(|e| Edge { gain, ..*e }).collect(),
        ))
    }

    /// `(G, -)`: all gains `-1`, whose Laplacian is the signless Laplacian of `G`.
    pub fn signless(&self) -> Self {
        self.regauged(Complex64::new(-1.0, 0.0)).expect("-1 is a unit")
    }

    /// Gain adjacency matrix `A(Φ)`.
    pub fn adjacency_matrix(&self) -> HermitianMatrix {
        let mut a = HermitianMatrix::zeros(self.n);
        for e in &self.edges {
            a.set(e.u, e.v, e.gain);
            a.set(e.v, e.u, e.gain.conj());
        }
        a
    }

    /// Gain Laplacian `L(Φ) = D(G) - A(Φ)`.
    pub fn laplacian(&self) -> HermitianMatrix {
        let mut l = HermitianMatrix::zeros(self.n);
        for v in 0..self.n {
            l.set(v, v, Complex64::new(self.degree(v) as f64, 0.0));
        }
        for e in &self.edges {
            l.set(e.u, e.v, -e.gain);
            l.set(e.v, e.u, -e.gain.conj());
        }
        l
    }

    /// `Σ_{i~j, i<j} |x_i - a_ij x_j|²`, which equals `x* L(Φ) x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(GainError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.edges.iter().map(|e| (x[e.u] - e.gain * x[e.v]).norm_sqr()).sum())
    }

    /// Switch by `zeta`: the gain of `u -> v` becomes `conj(ζ(u)) φ(u,v) ζ(v)`.
    pub fn switch(&self, zeta: &SwitchingFunction) -> Result<Self> {
        let z = zeta.values();
        if z.len() != self.n {
            return Err(GainError::DimensionMismatch {
                expected: self.n,
                got: z.len(),
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let g = z[e.u].conj() * e.gain * z[e.v];
                Edge {
                    gain: g / g.norm(),
                    ..*e
                }
            })
            .collect();
        Ok(Self::from_sorted(self.n, edges))
    }

    /// Product of the oriented gains along `cycle`. The closing edge back to
    /// the first vertex is implied; a repeated first vertex at the end is
    /// accepted as well.
    pub fn cycle_gain(&self, cycle: &[usize]) -> Result<Complex64> {
        let walk = match cycle {
            [first, .., last] if first == last => &cycle[..cycle.len() - 1],
            _ => cycle,
        };
        if walk.len() < 3 {
            return Err(GainError::InvalidCycle(format!(
                "a cycle needs at least 3 vertices, got {}",
                walk.len()
            )));
        }
        let mut prod = Complex64::new(1.0, 0.0);
        for (k, &u) in walk.iter().enumerate() {
            let v = walk[(k + 1) % walk.len()];
            if u >= self.n || v >= self.n {
                return Err(GainError::InvalidCycle(format!("vertex out of range in {u}-{v}")));
            }
            let g = self
                .gain(u, v)
                .ok_or_else(|| GainError::InvalidCycle(format!("{u}-{v} is not an edge")))?;
            prod *= g;
        }
        Ok(prod)
    }

    /// Balance test with the default neutrality tolerance.
    pub fn is_balanced(&self) -> Balance {
        self.is_balanced_with_tol(NEUTRAL_TOL)
    }

    /// Spanning-forest potentials followed by a check of every edge. On
    /// success the witness switches the graph to all-ones gains.
    pub fn is_balanced_with_tol(&self, tol: f64) -> Balance {
        let one = Complex64::new(1.0, 0.0);
        let mut zeta: Vec<Option<Complex64>> = vec![None; self.n];
        for root in 0..self.n {
            if zeta[root].is_some() {
                continue;
            }
            zeta[root] = Some(one);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let zu = zeta[u].unwrap();
                for &(w, _) in &self.adj[u] {
                    if zeta[w].is_none() {
                        // conj(ζu) φ(u,w) ζw = 1
                        let g = self.gain(u, w).unwrap();
                        let zw = zu * g.conj();
                        zeta[w] = Some(zw / zw.norm());
                        queue.push_back(w);
                    }
                }
            }
        }
        let zeta: Vec<Complex64> = zeta.into_iter().map(Option::unwrap).collect();
        let ok = self
            .edges
            .iter()
            .all(|e| (zeta[e.u].conj() * e.gain * zeta[e.v] - one).norm() <= tol);
        Balance {
            balanced: ok,
            witness: ok.then_some(SwitchingFunction { values: zeta }),
        }
    }

    /// `a(Φ)`, `b(Φ)` and the edge count.
    pub fn gain_stats(&self) -> Result<GainStats> {
        let m = self.m();
        if m == 0 {
            return Err(GainError::EmptyGraph);
        }
        let (sa, sb) = self
            .edges
            .iter()
            .fold((0.0, 0.0), |(sa, sb), e| (sa + 1.0 - e.gain.re, sb + 1.0 - e.gain.im));
        Ok(GainStats {
            a: sa / m as f64,
            b: sb / m as f64,
            m,
        })
    }

    /// `a_θ(Φ) = (1/m) Σ (1 - Re(a_ij e^{iθ}))` over canonically oriented edges.
    pub fn a_theta(&self, theta: f64) -> Result<f64> {
        let m = self.m();
        if m == 0 {
            return Err(GainError::EmptyGraph);
        }
        let rot = Complex64::from_polar(1.0, theta);
        let s: f64 = self.edges.iter().map(|e| 1.0 - (e.gain * rot).re).sum();
        Ok(s / m as f64)
    }
}

/// Result of a balance test.
#[derive(Debug, Clone, PartialEq)]
pub struct Balance {
    pub balanced: bool,
    pub witness: Option<SwitchingFunction>,
}

/// Vertex function into the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingFunction {
    values: Vec<Complex64>,
}

impl SwitchingFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, z)| {
                normalize_unit(z).ok_or(GainError::InvalidParameter(format!(
                    "switching value {i} has modulus {}",
                    z.norm()
                )))
            })
            .collect::<Result<_>>()?;
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Edge-averaged gain deviations: `a = a_0`, `b = a_{-π/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainStats {
    pub a: f64,
    pub b: f64,
    pub m: usize,
}

impl GainStats {
    /// `a_θ` from `a` and `b` alone: `a_θ - 1 = cos θ (a - 1) - sin θ (b - 1)`.
    pub fn a_theta(&self, theta: f64) -> f64 {
        1.0 + theta.cos() * (self.a - 1.0) - theta.sin() * (self.b - 1.0)
    }
}
