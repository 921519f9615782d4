//! Ordered disjoint longest red cycles, the long-cycle/edge-count dichotomy,
//! and heavy-red pruning of the leftover set.

use fixedbitset::FixedBitSet;
use num_rational::BigRational;
use serde::Serialize;

use crate::budget::{Budget, Verdict};
use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::invariants::cycles::{heuristic_long_cycle, longest_cycle_inner};

use super::params::ratio;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    /// `C^(1..r)`, each as a vertex sequence of the host.
    pub cycles: Vec<Vec<Vertex>>,
    /// Host vertices outside every cycle, ascending.
    pub w: Vec<Vertex>,
    pub min_len: usize,
    /// Every cycle was proven longest in its residual graph, and the final
    /// residual was proven to have no cycle of length `min_len`.
    pub certified: bool,
}

impl CycleDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn r(&self) -> usize {
        self.cycles.len()
    }

    /// Index of the cycle containing each host vertex.
    pub fn owner(&self, n: usize) -> Vec<Option<usize>> {
        let mut o = vec![None; n];
        for (i, c) in self.cycles.iter().enumerate() {
            c.iter().for_each(|&v| o[v] = Some(i));
        }
        o
    }
}

/// Greedy extraction: repeatedly take a longest cycle of the residual red
/// graph while it has at least `min_len` vertices. With `fallback`, an
/// exhausted exact search is replaced by the rotation-extension heuristic
/// and the result is marked uncertified; without it the decomposition
/// found so far is returned uncertified.
pub fn extract_longest_cycles(
    red: &Graph,
    min_len: usize,
    budget: &mut Budget,
    fallback: bool,
) -> Result<CycleDecomposition> {
    if min_len < 3 {
        return Err(precondition("the cycle length threshold must be at least 3"));
    }
    let n = red.order();
    let mut left: Vec<Vertex> = (0..n).collect();
    let mut cycles = Vec::new();
    let mut certified = true;
    loop {
        let h = red.induced(&left);
        let found = if certified {
            match longest_cycle_inner(&h, budget) {
                Ok(c) => c,
                Err(_) if fallback => {
                    certified = false;
                    heuristic_long_cycle(&h, &h.vertex_set(), 4 * h.order())
                }
                Err(_) => {
                    certified = false;
                    None
                }
            }
        } else if fallback {
            heuristic_long_cycle(&h, &h.vertex_set(), 4 * h.order())
        } else {
            None
        };
        let Some(c) = found.filter(|c| c.len() >= min_len) else {
            break;
        };
        let cyc: Vec<Vertex> = c.iter().map(|&i| left[i]).collect();
        let mut on = FixedBitSet::with_capacity(n);
        cyc.iter().for_each(|&v| on.insert(v));
        left.retain(|&v| !on.contains(v));
        cycles.push(cyc);
    }
    Ok(CycleDecomposition {
        cycles,
        w: left,
        min_len,
        certified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum EgOutcome {
    /// A cycle with at least `c` vertices.
    LongCycle { cycle: Vec<Vertex> },
    /// No such cycle, and `e(H) < (c−1)(|H|−1)/2 + 1`.
    EdgeBound { edges: usize, bound: String },
}

/// Either a cycle of length at least `c` or the edge bound; both the cycle
/// search and the count are exact. An absent long cycle with the edge bound
/// violated is reported as an internal error.
pub fn erdos_gallai(h: &Graph, c: usize, budget: &mut Budget) -> Result<Verdict<EgOutcome>> {
    if c < 3 || c > h.order() {
        return Err(precondition(format!("need 3 ≤ c ≤ |H| = {}, got c = {c}", h.order())));
    }
    let longest = match longest_cycle_inner(h, budget) {
        Ok(l) => l,
        Err(e) => return Ok(Verdict::Undecided(e)),
    };
    if let Some(cycle) = longest.filter(|cy| cy.len() >= c) {
        return Ok(Verdict::Decided(EgOutcome::LongCycle { cycle }));
    }
    let e = h.edge_count();
    // e < (c−1)(|H|−1)/2 + 1  ⇔  2e < (c−1)(|H|−1) + 2
    if 2 * e >= (c - 1) * (h.order() - 1) + 2 {
        return Err(Error::Internal(format!(
            "graph with {e} edges on {} vertices has no cycle of length {c}",
            h.order()
        )));
    }
    let bound = ratio((c - 1) * (h.order() - 1) + 2) / ratio(2);
    let bound = if bound.is_integer() {
        bound.to_integer().to_string()
    } else {
        format!("{}/{}", bound.numer(), bound.denom())
    };
    Ok(Verdict::Decided(EgOutcome::EdgeBound { edges: e, bound }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeavyRedSplit {
    pub w_prime: Vec<Vertex>,
    pub w0: Vec<Vertex>,
    pub threshold: usize,
    /// `|W′| ≥ (1−ε)|W|`.
    pub guarantee_holds: bool,
}

/// Splits `w` into the vertices with at least `threshold` red neighbors
/// inside `w` (`W0`) and the rest (`W′`).
pub fn prune_heavy_red(red: &Graph, w: &[Vertex], threshold: usize, eps: &BigRational) -> Result<HeavyRedSplit> {
    crate::graph::check_vertices(red.order(), w)?;
    let mut inside = FixedBitSet::with_capacity(red.order());
    w.iter().for_each(|&v| inside.insert(v));
    let (w0, w_prime): (Vec<Vertex>, Vec<Vertex>) = w
        .iter()
        .partition(|&&v| red.neighbors(v).intersection_count(&inside) >= threshold);
    let guarantee_holds = ratio(w_prime.len()) >= (ratio(1) - eps) * ratio(w.len());
    Ok(HeavyRedSplit {
        w_prime,
        w0,
        threshold,
        guarantee_holds,
    })
}
