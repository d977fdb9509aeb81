//! Exact frustration index (edge deletions) and frustration number (vertex
//! deletions) by cardinality-ordered search.
//!
//! A deletion set balances the graph exactly when it meets every unbalanced
//! cycle. The search takes an unbalanced cycle of the current remainder and
//! branches on which of its elements to delete, with a budget raised from 0
//! until a balancing set exists. The witness is then fixed element by element,
//! always taking the smallest index that can still be completed within the
//! budget, which gives the lexicographically smallest minimum witness.

use std::collections::VecDeque;

use num_complex::Complex64;

use crate::error::{GainError, Result};
use crate::graph::{GainGraph, NEUTRAL_TOL};

/// Default cap on the edge count for [`frustration_index`].
pub const MAX_INDEX_EDGES: usize = 24;
/// Default cap on the vertex count for [`frustration_number`].
pub const MAX_NUMBER_VERTICES: usize = 16;
/// Subsets are bitmasks; nothing larger is representable even with `force`.
pub const HARD_LIMIT: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrustrationOptions {
    /// Ignore the default size caps (up to [`HARD_LIMIT`]).
    pub force: bool,
    /// Neutrality tolerance for cycle gains.
    pub tol: f64,
}

impl Default for FrustrationOptions {
    fn default() -> Self {
        Self {
            force: false,
            tol: NEUTRAL_TOL,
        }
    }
}

/// Minimum deletion set. `witness` holds edge indices (into
/// [`GainGraph::edges`]) for the index and vertex ids for the number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrustrationResult {
    pub value: usize,
    pub witness: Vec<usize>,
}

/// Disjoint sets carrying unit-circle potentials. `rel[v]` is `ζ(v)/ζ(parent)`.
struct PotentialForest {
    parent: Vec<usize>,
    size: Vec<usize>,
    rel: Vec<Complex64>,
}

impl PotentialForest {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            rel: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    /// Root of `v` and `ζ(v)/ζ(root)`, compressing the path.
    fn find(&mut self, v: usize) -> (usize, Complex64) {
        let mut path = Vec::new();
        let mut x = v;
        while self.parent[x] != x {
            path.push(x);
            x = self.parent[x];
        }
        let root = x;
        // walk back from the node nearest the root
        let mut acc = Complex64::new(1.0, 0.0);
        for &y in path.iter().rev() {
            acc *= self.rel[y];
            self.rel[y] = acc;
            self.parent[y] = root;
        }
        (
            root,
            if v == root {
                Complex64::new(1.0, 0.0)
            } else {
                self.rel[v]
            },
        )
    }

    /// Imposes `ζ(u) conj(ζ(v)) = gain`. Returns `false` if that contradicts the
    /// potentials already fixed.
    fn relate(&mut self, u: usize, v: usize, gain: Complex64, tol: f64) -> bool {
        let (ru, wu) = self.find(u);
        let (rv, wv) = self.find(v);
        if ru == rv {
            return (wu * wv.conj() - gain).norm() <= tol;
        }
        // ζ(rv)/ζ(ru) = conj(gain) wu conj(wv)
        let link = gain.conj() * wu * wv.conj();
        let link = link / link.norm();
        if self.size[ru] >= self.size[rv] {
            self.parent[rv] = ru;
            self.rel[rv] = link;
            self.size[ru] += self.size[rv];
        } else {
            self.parent[ru] = rv;
            self.rel[ru] = link.conj();
            self.size[rv] += self.size[ru];
        }
        true
    }
}

fn balanced_without(g: &GainGraph, removed: impl Fn(usize) -> bool, tol: f64) -> bool {
    let mut forest = PotentialForest::new(g.n());
    g.edges()
        .iter()
        .enumerate()
        .filter(|(k, _)| !removed(*k))
        .all(|(_, e)| forest.relate(e.u, e.v, e.gain, tol))
}

/// Is `g` balanced once the edges with the given indices are removed?
pub fn balance_oracle(g: &GainGraph, removed_edges: &[usize]) -> Result<bool> {
    balance_oracle_with_tol(g, removed_edges, NEUTRAL_TOL)
}

pub fn balance_oracle_with_tol(g: &GainGraph, removed_edges: &[usize], tol: f64) -> Result<bool> {
    let mut mask = vec![false; g.m()];
    for &k in removed_edges {
        *mask
            .get_mut(k)
            .ok_or_else(|| GainError::InvalidParameter(format!("edge index {k} out of range")))? = true;
    }
    Ok(balanced_without(g, |k| mask[k], tol))
}

/// Edge mask of some unbalanced cycle in `g` minus `removed`, found from a BFS
/// forest and one violated non-tree edge.
fn unbalanced_cycle(g: &GainGraph, removed: u128, tol: f64) -> Option<u128> {
    let n = g.n();
    let one = Complex64::new(1.0, 0.0);
    let mut zeta: Vec<Option<Complex64>> = vec![None; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if zeta[root].is_some() {
            continue;
        }
        zeta[root] = Some(one);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, k) in g.incident(u) {
                if removed >> k & 1 == 1 || zeta[w].is_some() {
                    continue;
                }
                let z = zeta[u].unwrap() * g.gain(u, w).unwrap().conj();
                zeta[w] = Some(z / z.norm());
                parent[w] = u;
                parent_edge[w] = k;
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    for (k, e) in g.edges().iter().enumerate() {
        if removed >> k & 1 == 1 {
            continue;
        }
        let (zu, zv) = (zeta[e.u].unwrap(), zeta[e.v].unwrap());
        if (zu.conj() * e.gain * zv - one).norm() <= tol {
            continue;
        }
        let mut mask = 1u128 << k;
        let (mut a, mut b) = (e.u, e.v);
        while a != b {
            if depth[a] >= depth[b] {
                mask |= 1 << parent_edge[a];
                a = parent[a];
            } else {
                mask |= 1 << parent_edge[b];
                b = parent[b];
            }
        }
        return Some(mask);
    }
    None
}

fn low_bits(k: usize) -> u128 {
    if k >= 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

fn bits(mask: u128) -> Vec<usize> {
    (0..128).filter(|&k| mask >> k & 1 == 1).collect()
}

/// Hitting-set search over deletable elements, either edges or vertices.
struct Search<'a> {
    g: &'a GainGraph,
    tol: f64,
    /// Edges removed when the given elements are deleted.
    removed: &'a dyn Fn(u128) -> u128,
    /// Elements that lie on the given edge set.
    touched: &'a dyn Fn(u128) -> u128,
}

impl Search<'_> {
    /// Whether at most `budget` more elements, none in `fixed`, balance the
    /// graph after deleting `deleted`.
    fn completes(&self, deleted: u128, fixed: u128, budget: usize) -> bool {
        let Some(cycle) = unbalanced_cycle(self.g, (self.removed)(deleted), self.tol) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        let mut fixed = fixed;
        let mut candidates = (self.touched)(cycle) & !fixed & !deleted;
        while candidates != 0 {
            let bit = candidates & candidates.wrapping_neg();
            if self.completes(deleted | bit, fixed, budget - 1) {
                return true;
            }
            // later branches keep this element
            fixed |= bit;
            candidates &= !bit;
        }
        false
    }

    fn minimum(&self, size: usize) -> FrustrationResult {
        let t = (0..=size)
            .find(|&t| self.completes(0, 0, t))
            .expect("deleting everything balances");
        let mut chosen = 0u128;
        let mut next = 0;
        for slot in 0..t {
            let k = (next..size)
                .find(|&k| {
                    let bit = 1u128 << k;
                    self.completes(chosen | bit, low_bits(k + 1) & !(chosen | bit), t - slot - 1)
                })
                .expect("a minimum completion exists");
            chosen |= 1 << k;
            next = k + 1;
        }
        FrustrationResult {
            value: t,
            witness: bits(chosen),
        }
    }
}

/// Minimum number of edges whose removal balances `g`.
pub fn frustration_index(g: &GainGraph, opts: FrustrationOptions) -> Result<FrustrationResult> {
    let m = g.m();
    let cap = if opts.force { HARD_LIMIT } else { MAX_INDEX_EDGES };
    if m > cap {
        return Err(GainError::SizeCap(format!(
            "exact frustration index supports m <= {cap}, got {m}; \
             the smallest Laplacian eigenvalue is a certified lower bound"
        )));
    }
    let same = |mask: u128| mask;
    let search = Search {
        g,
        tol: opts.tol,
        removed: &same,
        touched: &same,
    };
    Ok(search.minimum(m))
}

/// Minimum number of vertices whose removal balances `g`.
pub fn frustration_number(g: &GainGraph, opts: FrustrationOptions) -> Result<FrustrationResult> {
    let n = g.n();
    let cap = if opts.force { HARD_LIMIT } else { MAX_NUMBER_VERTICES };
    if n > cap || g.m() > HARD_LIMIT {
        return Err(GainError::SizeCap(format!(
            "exact frustration number supports n <= {cap}, got {n}; \
             the smallest Laplacian eigenvalue is a certified lower bound"
        )));
    }
    let edges_at = |vertices: u128| -> u128 {
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| vertices >> e.u & 1 == 1 || vertices >> e.v & 1 == 1)
            .fold(0u128, |m, (k, _)| m | 1 << k)
    };
    let ends_of = |edges: u128| -> u128 {
        g.edges()
            .iter()
            .enumerate()
            .filter(|(k, _)| edges >> k & 1 == 1)
            .fold(0u128, |m, (_, e)| m | 1 << e.u | 1 << e.v)
    };
    let search = Search {
        g,
        tol: opts.tol,
        removed: &edges_at,
        touched: &ends_of,
    };
    Ok(search.minimum(n))
}
