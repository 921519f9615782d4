//! Greedy blue embedding of `G` class by class into the planned targets.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, ProperColoring, Vertex};
use crate::two_coloring::TwoColoring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmbedFailure {
    /// No admissible host for `vertex` of class `class` (1-based);
    /// `free` unused hosts were left in its target.
    NoHost { vertex: Vertex, class: usize, free: usize },
    /// Backtracking exceeded the placement budget.
    EmbeddingBudget { placements: u64 },
}

struct Search<'a> {
    col: &'a TwoColoring,
    g: &'a Graph,
    order: Vec<Vertex>,
    class_of: Vec<usize>,
    targets: Vec<FixedBitSet>,
    map: Vec<Option<Vertex>>,
    used: FixedBitSet,
    placements: u64,
    limit: u64,
    /// Deepest failure seen, for diagnostics.
    stuck: Option<(usize, Vertex, usize)>,
}

impl Search<'_> {
    fn candidates(&self, v: Vertex) -> Vec<Vertex> {
        let mut cand = self.targets[self.class_of[v]].clone();
        cand.difference_with(&self.used);
        for u in self.g.neighbors(v).ones() {
            if let Some(hu) = self.map[u] {
                cand.difference_with(self.col.red().neighbors(hu));
            }
        }
        cand.ones().collect()
    }

    /// Every unplaced neighbor of `v` still has some host once `v ↦ x`.
    fn forward_ok(&self, v: Vertex) -> bool {
        self.g.neighbors(v).ones().all(|u| self.map[u].is_some() || !self.candidates(u).is_empty())
    }

    fn go(&mut self, depth: usize) -> std::result::Result<bool, ()> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        let cand = self.candidates(v);
        if cand.is_empty() && self.stuck.is_none_or(|(d, _, _)| depth >= d) {
            let free = self.targets[self.class_of[v]].difference_count(&self.used);
            self.stuck = Some((depth, v, free));
        }
        for x in cand {
            self.placements += 1;
            if self.placements > self.limit {
                return Err(());
            }
            self.map[v] = Some(x);
            self.used.insert(x);
            if self.forward_ok(v) && self.go(depth + 1)? {
                return Ok(true);
            }
            self.map[v] = None;
            self.used.set(x, false);
        }
        Ok(false)
    }
}

/// Embeds `g` so that the vertices of class `i` land in `targets[i]` and
/// every edge is blue. Classes are placed last to first; inside a class by
/// descending degree, then index. Hosts are tried smallest first.
pub fn embed_blue(
    col: &TwoColoring,
    g: &Graph,
    classes: &ProperColoring,
    targets: &[Vec<Vertex>],
    limit: u64,
) -> Result<std::result::Result<Vec<Vertex>, EmbedFailure>> {
    let k = classes.k();
    if targets.len() != k {
        return Err(crate::error::precondition(format!("{k} classes but {} targets", targets.len())));
    }
    let n = col.order();
    let mut class_of = vec![0; g.order()];
    let mut order = Vec::with_capacity(g.order());
    for (i, class) in classes.classes().iter().enumerate().rev() {
        let mut cl = class.clone();
        cl.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        for &v in &cl {
            class_of[v] = i;
        }
        order.extend(cl);
    }
    let target_sets = targets
        .iter()
        .map(|t| {
            crate::graph::check_vertices(n, t)?;
            let mut s = FixedBitSet::with_capacity(n);
            t.iter().for_each(|&v| s.insert(v));
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut s = Search {
        col,
        g,
        order,
        class_of,
        targets: target_sets,
        map: vec![None; g.order()],
        used: FixedBitSet::with_capacity(n),
        placements: 0,
        limit,
        stuck: None,
    };
    match s.go(0) {
        Err(()) => Ok(Err(EmbedFailure::EmbeddingBudget { placements: s.placements })),
        Ok(false) => {
            let (_, vertex, free) = s.stuck.unwrap_or((0, s.order.first().copied().unwrap_or(0), 0));
            Ok(Err(EmbedFailure::NoHost {
                vertex,
                class: s.class_of.get(vertex).map_or(0, |c| c + 1),
                free,
            }))
        }
        Ok(true) => {
            let map: Vec<Vertex> = s.map.iter().map(|x| x.expect("complete")).collect();
            verify(col, g, classes, targets, &map)?;
            Ok(Ok(map))
        }
    }
}

fn verify(col: &TwoColoring, g: &Graph, classes: &ProperColoring, targets: &[Vec<Vertex>], map: &[Vertex]) -> Result<()> {
    let mut seen = FixedBitSet::with_capacity(col.order());
    for &x in map {
        if seen.put(x) {
            return Err(Error::Internal(format!("host {x} used twice")));
        }
    }
    for (u, v) in g.edges() {
        if !col.is_blue(map[u], map[v]) {
            return Err(Error::Internal(format!("edge {u}-{v} mapped onto a red edge")));
        }
    }
    for (i, class) in classes.classes().iter().enumerate() {
        if let Some(&v) = class.iter().find(|&&v| targets[i].binary_search(&map[v]).is_err()) {
            return Err(Error::Internal(format!("vertex {v} placed outside its target")));
        }
    }
    Ok(())
}
