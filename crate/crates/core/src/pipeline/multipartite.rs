//! Nearly complete blue multipartite structure between the extracted cycles.
//!
//! Each cycle is cut into consecutive segments of `⌈c_r/2⌉` vertices
//! (starting at index 0 of the stored cycle; the last segment may be
//! shorter). Between a segment `S` of `C^(i)` and a segment `T` of `C^(j)`,
//! `i < j`, two independent red edges would reroute `C^(i)` through
//! `C^(j)` into a longer cycle; so on a certified decomposition the red
//! edges between them form a star, and deleting its center (for a single
//! edge: its endpoint on the later cycle) leaves `S` and `T` completely blue.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::two_coloring::TwoColoring;

use super::decomposition::CycleDecomposition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultipartiteWitness {
    /// `V_i ⊆ V(C^(i))`, ascending.
    pub parts: Vec<Vec<Vertex>>,
    /// Vertices of `C^(i)` left out of `V_i`, ascending.
    pub ignored: Vec<Vec<Vertex>>,
    /// Independent red edge pairs met on an uncertified decomposition
    /// (informational; their endpoints were removed instead).
    pub notes: Vec<MaximalityViolation>,
}

impl MultipartiteWitness {
    pub fn removals(&self) -> Vec<usize> {
        self.ignored.iter().map(Vec::len).collect()
    }
}

/// Two independent red edges between segments of `C^(i)` and `C^(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityViolation {
    pub cycles: (usize, usize),
    pub edges: [(Vertex, Vertex); 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MultipartiteFailure {
    Maximality(MaximalityViolation),
    BetaExceeded { removals: Vec<usize>, beta: String },
}

fn segments(cycle: &[Vertex], len: usize) -> impl Iterator<Item = &[Vertex]> {
    cycle.chunks(len)
}

fn independent_pair(edges: &[(Vertex, Vertex)]) -> Option<[(Vertex, Vertex); 2]> {
    for (x, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[x + 1..] {
            if a != c && b != d {
                return Some([(a, b), (c, d)]);
            }
        }
    }
    None
}

/// Runs the segment procedure. On an uncertified decomposition two
/// independent red edges are recorded in `notes` and handled by deleting
/// the later-cycle endpoint of every remaining red edge.
pub fn blue_multipartite(
    col: &TwoColoring,
    decomp: &CycleDecomposition,
    beta: &num_bigint::BigUint,
) -> Result<std::result::Result<MultipartiteWitness, MultipartiteFailure>> {
    let r = decomp.r();
    let n = col.order();
    let mut removed = vec![false; n];
    let mut notes = Vec::new();
    if r > 0 {
        let seg_len = decomp.cycles[r - 1].len().div_ceil(2);
        for i in 0..r {
            for j in i + 1..r {
                for s in segments(&decomp.cycles[i], seg_len) {
                    for t in segments(&decomp.cycles[j], seg_len) {
                        let all: Vec<(Vertex, Vertex)> = s
                            .iter()
                            .flat_map(|&a| t.iter().map(move |&b| (a, b)))
                            .filter(|&(a, b)| !col.is_blue(a, b))
                            .collect();
                        if let Some(edges) = independent_pair(&all) {
                            let v = MaximalityViolation { cycles: (i, j), edges };
                            if decomp.certified {
                                return Ok(Err(MultipartiteFailure::Maximality(v)));
                            }
                            notes.push(v);
                            for &(_, b) in &all {
                                removed[b] = true;
                            }
                            continue;
                        }
                        let live: Vec<(Vertex, Vertex)> =
                            all.into_iter().filter(|&(a, b)| !removed[a] && !removed[b]).collect();
                        match live.as_slice() {
                            [] => {}
                            [(_, b)] => removed[*b] = true,
                            [(a0, b0), (a1, _), ..] => {
                                // a star with at least two edges: its center is shared
                                if a0 == a1 {
                                    removed[*a0] = true;
                                } else {
                                    removed[*b0] = true;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut parts = Vec::with_capacity(r);
    let mut ignored = Vec::with_capacity(r);
    for c in &decomp.cycles {
        let (mut out, mut keep): (Vec<Vertex>, Vec<Vertex>) = c.iter().partition(|&&v| removed[v]);
        out.sort_unstable();
        keep.sort_unstable();
        parts.push(keep);
        ignored.push(out);
    }
    // independent quadratic check of cross-part blueness
    for i in 0..r {
        for j in i + 1..r {
            for &a in &parts[i] {
                if let Some(&b) = parts[j].iter().find(|&&b| !col.is_blue(a, b)) {
                    return Err(Error::Internal(format!("parts {i} and {j} keep the red edge {a}-{b}")));
                }
            }
        }
    }
    let w = MultipartiteWitness { parts, ignored, notes };
    let removals = w.removals();
    if removals.iter().any(|&x| num_bigint::BigUint::from(x) > *beta) {
        return Ok(Err(MultipartiteFailure::BetaExceeded {
            removals,
            beta: beta.to_string(),
        }));
    }
    Ok(Ok(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::families::complete;
    use crate::graph::Graph;
    use crate::pipeline::decomposition::extract_longest_cycles;
    use num_bigint::BigUint;

    fn run(red: Graph, beta: u32) -> std::result::Result<MultipartiteWitness, MultipartiteFailure> {
        let col = TwoColoring::from_red(red);
        let d = extract_longest_cycles(col.red(), 3, &mut Budget::default(), false).unwrap();
        blue_multipartite(&col, &d, &BigUint::from(beta)).unwrap()
    }

    #[test]
    fn disjoint_cliques_need_no_removal() {
        let w = run(Graph::disjoint_union(&[&complete(8), &complete(6)]), 0).unwrap();
        assert_eq!(w.removals(), vec![0, 0]);
        assert_eq!(w.parts[0].len(), 8);
    }

    #[test]
    fn single_cross_edge_loses_one_vertex() {
        let mut red = Graph::disjoint_union(&[&complete(8), &complete(6)]);
        red.add_edge(3, 10);
        let w = run(red, 1).unwrap();
        assert_eq!(w.removals(), vec![0, 1]);
        assert_eq!(w.ignored[1], vec![10]);
    }

    #[test]
    fn independent_cross_edges_violate_maximality() {
        // planted after extraction: the decomposition of the clean graph is
        // reused on the modified coloring
        let clean = Graph::disjoint_union(&[&complete(8), &complete(6)]);
        let d = extract_longest_cycles(&clean, 3, &mut Budget::default(), false).unwrap();
        let mut red = clean;
        red.add_edge(0, 8);
        red.add_edge(1, 9);
        let col = TwoColoring::from_red(red);
        let out = blue_multipartite(&col, &d, &BigUint::from(5u32)).unwrap();
        assert!(matches!(out, Err(MultipartiteFailure::Maximality(_))));
    }

    #[test]
    fn beta_exceeded_reports_counts() {
        let mut red = Graph::disjoint_union(&[&complete(8), &complete(6)]);
        red.add_edge(3, 10);
        assert!(matches!(run(red, 0), Err(MultipartiteFailure::BetaExceeded { .. })));
    }
}
