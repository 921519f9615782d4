//! Common blue neighborhoods of few leftover vertices on an extracted cycle.
//!
//! For `w ∈ W` let `Z_w` be its red neighbors on `C^(i)` and `Z_w + 1` their
//! successors along the stored cycle order. Maximality of `C^(i)` forces `w`
//! to have no red neighbor in `Z_w + 1` (else insert `w`), and any other
//! `w′` to have at most one (else reroute through both). Summing over a set
//! of `t` vertices gives a common blue neighborhood of at least
//! `(c_i − t(t−1))/2 ≥ (c_i − Δ²)/2` vertices.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{precondition, Result};
use crate::graph::Vertex;
use crate::two_coloring::TwoColoring;

use super::decomposition::CycleDecomposition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NeighborhoodViolation {
    /// `w` is red to consecutive cycle vertices `y`, `y+1`.
    Insertion { w: Vertex, cycle: usize, at: Vertex, next: Vertex },
    /// `other` has two red neighbors among the successors of `w`'s red neighbors.
    Reroute { w: Vertex, other: Vertex, cycle: usize, hits: [Vertex; 2] },
    /// Fewer than `(c_i − Δ²)/2` common blue neighbors.
    Bound { ws: Vec<Vertex>, cycle: usize, size: usize, c: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborhoodReport {
    /// Vertices of `C^(i)` blue to every vertex of `ws`, in cycle order.
    pub common: Vec<Vertex>,
    pub violations: Vec<NeighborhoodViolation>,
}

/// The common blue neighborhood of `ws` inside `V(C^(cycle))`, together
/// with every violated consequence of maximality (checked whatever the
/// certification status; the caller decides how to treat them).
pub fn common_blue_neighborhood(
    col: &TwoColoring,
    decomp: &CycleDecomposition,
    ws: &[Vertex],
    cycle: usize,
    delta: usize,
) -> Result<NeighborhoodReport> {
    if ws.len() > delta {
        return Err(precondition(format!("at most Δ = {delta} vertices, got {}", ws.len())));
    }
    if ws.iter().any(|w| decomp.w.binary_search(w).is_err()) {
        return Err(precondition("all vertices must lie in W"));
    }
    let c = decomp
        .cycles
        .get(cycle)
        .ok_or_else(|| precondition(format!("no cycle with index {cycle}")))?;
    let len = c.len();
    let common: Vec<Vertex> = c
        .iter()
        .copied()
        .filter(|&y| ws.iter().all(|&w| col.is_blue(w, y)))
        .collect();
    let mut violations = Vec::new();
    for &w in ws {
        let succ: Vec<Vertex> = (0..len)
            .filter(|&p| !col.is_blue(w, c[p]))
            .map(|p| c[(p + 1) % len])
            .collect();
        if let Some(&next) = succ.iter().find(|&&y| !col.is_blue(w, y)) {
            let p = c.iter().position(|&v| v == next).expect("on cycle");
            violations.push(NeighborhoodViolation::Insertion {
                w,
                cycle,
                at: c[(p + len - 1) % len],
                next,
            });
        }
        for &other in ws.iter().filter(|&&o| o != w) {
            let hits: Vec<Vertex> = succ.iter().copied().filter(|&y| !col.is_blue(other, y)).collect();
            if hits.len() >= 2 {
                violations.push(NeighborhoodViolation::Reroute {
                    w,
                    other,
                    cycle,
                    hits: [hits[0], hits[1]],
                });
            }
        }
    }
    if 2 * common.len() + delta * delta < len {
        violations.push(NeighborhoodViolation::Bound {
            ws: ws.to_vec(),
            cycle,
            size: common.len(),
            c: len,
        });
    }
    Ok(NeighborhoodReport { common, violations })
}

/// The subsets of `w` of size `1..=delta` to test: all of them when `|W| ≤ 12`,
/// otherwise `samples` random ones (sizes uniform) from a seeded stream.
pub fn test_subsets(w: &[Vertex], delta: usize, samples: usize, seed: u64) -> Vec<Vec<Vertex>> {
    let top = delta.min(w.len());
    if w.len() <= 12 {
        let mut out = Vec::new();
        for mask in 1u32..(1 << w.len()) {
            if (mask.count_ones() as usize) <= top {
                out.push((0..w.len()).filter(|&i| mask >> i & 1 == 1).map(|i| w[i]).collect());
            }
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|x| {
            let size = 1 + x % top;
            let mut s: Vec<Vertex> = sample(&mut rng, w.len(), size).into_iter().map(|i| w[i]).collect();
            s.sort_unstable();
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::families::complete;
    use crate::graph::Graph;
    use crate::pipeline::decomposition::extract_longest_cycles;

    #[test]
    fn disjoint_cliques_give_full_neighborhood() {
        let red = Graph::disjoint_union(&[&complete(7), &Graph::empty(3)]);
        let col = TwoColoring::from_red(red);
        let d = extract_longest_cycles(col.red(), 3, &mut Budget::default(), false).unwrap();
        let rep = common_blue_neighborhood(&col, &d, &[7, 8, 9], 0, 3).unwrap();
        assert_eq!(rep.common.len(), 7);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn single_vertex_loses_its_red_neighbors() {
        let mut red = Graph::disjoint_union(&[&complete(7), &Graph::empty(1)]);
        // a second red neighbor on a clique would put 7 on a longer cycle
        red.add_edge(7, 2);
        let col = TwoColoring::from_red(red);
        let d = extract_longest_cycles(col.red(), 3, &mut Budget::default(), false).unwrap();
        assert_eq!(d.w, vec![7]);
        let rep = common_blue_neighborhood(&col, &d, &[7], 0, 3).unwrap();
        assert_eq!(rep.common.len(), 6);
        assert!(rep.violations.is_empty());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(test_subsets(&[4, 5, 6], 2, 0, 0).len(), 6);
        let big: Vec<Vertex> = (0..20).collect();
        let s = test_subsets(&big, 4, 100, 1);
        assert_eq!(s.len(), 100);
        assert_eq!(s, test_subsets(&big, 4, 100, 1));
        assert!(s.iter().all(|x| !x.is_empty() && x.len() <= 4));
    }
}
