//! Exact vertex coloring and bipartition detection.

use std::collections::VecDeque;

use crate::error::{GainError, Result};
use crate::graph::GainGraph;

/// Largest vertex count accepted by [`chromatic_number`].
pub const MAX_COLORING_VERTICES: usize = 30;

/// A minimum proper coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub chi: usize,
    /// Color of each vertex, in `0..chi`.
    pub colors: Vec<usize>,
    /// `classes[c]` lists the vertices of color `c` in ascending order.
    pub classes: Vec<Vec<usize>>,
}

impl Coloring {
    fn from_colors(chi: usize, colors: Vec<usize>) -> Self {
        let mut classes = vec![Vec::new(); chi];
        for (v, &c) in colors.iter().enumerate() {
            classes[c].push(v);
        }
        Self { chi, colors, classes }
    }
}

/// Chromatic number with the lexicographically least optimal color vector.
///
/// `χ` is found by iterative deepening with DSATUR-ordered backtracking; the
/// returned classes come from a second, natural-order search at that `χ`.
pub fn chromatic_number(g: &GainGraph) -> Result<Coloring> {
    let n = g.n();
    if n > MAX_COLORING_VERTICES {
        return Err(GainError::SizeCap(format!(
            "exact coloring supports n <= {MAX_COLORING_VERTICES}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Coloring {
            chi: 0,
            colors: Vec::new(),
            classes: Vec::new(),
        });
    }
    let nbr: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0u32, |m, w| m | (1 << w))).collect();

    let lower = if g.m() > 0 { 2 } else { 1 };
    let mut chi = lower;
    loop {
        let mut colors = vec![usize::MAX; n];
        if dsatur_colorable(&nbr, chi, &mut colors, 0, 0) {
            break;
        }
        chi += 1;
    }

    let mut colors = vec![usize::MAX; n];
    let mut forbidden = vec![0u32; n];
    let found = least_coloring(&nbr, chi, 0, 0, &mut colors, &mut forbidden);
    debug_assert!(found, "a {chi}-coloring exists");
    Ok(Coloring::from_colors(chi, colors))
}

fn dsatur_colorable(nbr: &[u32], k: usize, colors: &mut [usize], colored: usize, used: usize) -> bool {
    let n = nbr.len();
    if colored == n {
        return true;
    }
    // pick the uncolored vertex with the most distinct neighbor colors,
    // breaking ties by uncolored degree and then index
    let mut best = usize::MAX;
    let mut best_key = (0usize, 0usize);
    let mut best_mask = 0u32;
    for v in 0..n {
        if colors[v] != usize::MAX {
            continue;
        }
        let mut mask = 0u32;
        let mut free_deg = 0;
        let mut rest = nbr[v];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if colors[w] == usize::MAX {
                free_deg += 1;
            } else {
                mask |= 1 << colors[w];
            }
        }
        let key = (mask.count_ones() as usize, free_deg);
        if best == usize::MAX || key > best_key {
            best = v;
            best_key = key;
            best_mask = mask;
        }
    }
    let limit = k.min(used + 1);
    for c in 0..limit {
        if best_mask & (1 << c) != 0 {
            continue;
        }
        colors[best] = c;
        if dsatur_colorable(nbr, k, colors, colored + 1, used.max(c + 1)) {
            return true;
        }
    }
    colors[best] = usize::MAX;
    false
}

fn least_coloring(nbr: &[u32], k: usize, v: usize, used: usize, colors: &mut [usize], forbidden: &mut [u32]) -> bool {
    let n = nbr.len();
    if v == n {
        return true;
    }
    let full = if k >= 32 { u32::MAX } else { (1u32 << k) - 1 };
    for c in 0..k.min(used + 1) {
        if forbidden[v] & (1 << c) != 0 {
            continue;
        }
        colors[v] = c;
        let saved: Vec<u32> = forbidden.to_vec();
        let mut dead = false;
        let mut rest = nbr[v] & !((1u32 << (v + 1)) - 1);
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            forbidden[w] |= 1 << c;
            if forbidden[w] & full == full {
                dead = true;
            }
        }
        if !dead && least_coloring(nbr, k, v + 1, used.max(c + 1), colors, forbidden) {
            return true;
        }
        forbidden.copy_from_slice(&saved);
    }
    colors[v] = usize::MAX;
    false
}

/// The 2-coloring of a bipartite graph, with the smallest vertex of every
/// component in the first part. `None` if some cycle is odd.
pub fn bipartition(g: &GainGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (mut v1, mut v2) = (Vec::new(), Vec::new());
    for (v, s) in side.into_iter().enumerate() {
        if s == Some(true) {
            v2.push(v)
        } else {
            v1.push(v)
        }
    }
    Some((v1, v2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn graph(n: usize, pairs: &[(usize, usize)]) -> GainGraph {
        GainGraph::with_uniform_gain(n, pairs, Complex64::new(1.0, 0.0)).unwrap()
    }

    fn complete(n: usize) -> GainGraph {
        let pairs: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        graph(n, &pairs)
    }

    fn cycle(n: usize) -> GainGraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        graph(n, &pairs)
    }

    fn petersen() -> GainGraph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        graph(10, &pairs)
    }

    fn assert_proper(g: &GainGraph, c: &Coloring) {
        for e in g.edges() {
            assert_ne!(c.colors[e.u], c.colors[e.v]);
        }
        let mut all: Vec<usize> = c.classes.concat();
        all.sort_unstable();
        assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        assert!(c.classes.iter().all(|cl| !cl.is_empty()));
    }

    #[test]
    fn complete_graphs() {
        for n in 1..=7 {
            let g = complete(n);
            let c = chromatic_number(&g).unwrap();
            assert_eq!(c.chi, n);
            assert_proper(&g, &c);
        }
    }

    #[test]
    fn odd_cycles_and_petersen() {
        assert_eq!(chromatic_number(&cycle(5)).unwrap().chi, 3);
        assert_eq!(chromatic_number(&cycle(6)).unwrap().chi, 2);
        let p = petersen();
        let c = chromatic_number(&p).unwrap();
        assert_eq!(c.chi, 3);
        assert_proper(&p, &c);
    }

    #[test]
    fn lexicographically_least_assignment() {
        let c = chromatic_number(&cycle(5)).unwrap();
        assert_eq!(c.colors, vec![0, 1, 0, 1, 2]);
        assert_eq!(c.classes, vec![vec![0, 2], vec![1, 3], vec![4]]);
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), c);
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(chromatic_number(&GainGraph::empty(0)).unwrap().chi, 0);
        let c = chromatic_number(&GainGraph::empty(4)).unwrap();
        assert_eq!(c.chi, 1);
        assert_eq!(c.classes, vec![vec![0, 1, 2, 3]]);
        assert!(matches!(
            chromatic_number(&GainGraph::empty(31)),
            Err(GainError::SizeCap(_))
        ));
    }

    #[test]
    fn bipartitions() {
        assert_eq!(
            bipartition(&graph(4, &[(0, 1), (1, 2), (2, 3)])),
            Some((vec![0, 2], vec![1, 3]))
        );
        assert_eq!(bipartition(&complete(3)), None);
        // second component's smallest vertex (3) goes to the first part
        assert_eq!(
            bipartition(&graph(5, &[(0, 1), (4, 3)])),
            Some((vec![0, 2, 3], vec![1, 4]))
        );
        let kb: Vec<_> = (0..5).flat_map(|i| (5..20).map(move |j| (i, j))).collect();
        let (a, b) = bipartition(&graph(20, &kb)).unwrap();
        assert_eq!((a.len(), b.len()), (5, 15));
    }
}
