//! Subgraph (not necessarily induced) containment by backtracking.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::budget::{Budget, Exhausted, Verdict};
use crate::graph::{Graph, Vertex};

/// Pattern vertices whose transpositions are automorphisms: vertices with
/// equal open neighborhoods, or equal closed neighborhoods. Returns for
/// each vertex the previous member of its class (in search order), if any.
fn twin_predecessor(p: &Graph, order: &[Vertex]) -> Vec<Option<Vertex>> {
    let n = p.order();
    let mut prev = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        for &u in order[..i].iter().rev() {
            let mut nu = p.neighbors(u).clone();
            let mut nv = p.neighbors(v).clone();
            nu.set(v, false);
            nv.set(u, false);
            if nu == nv {
                prev[v] = Some(u);
                break;
            }
        }
    }
    prev
}

/// Host twin classes: vertices with equal open neighborhoods share a class;
/// the rest are grouped by closed neighborhood. Swapping two twins is an
/// automorphism fixing everything else.
fn twin_classes(h: &Graph) -> Vec<usize> {
    let n = h.order();
    let mut class = vec![usize::MAX; n];
    let mut open: HashMap<&FixedBitSet, Vec<Vertex>> = HashMap::new();
    for v in 0..n {
        open.entry(h.neighbors(v)).or_default().push(v);
    }
    let mut next = 0;
    for members in open.values().filter(|m| m.len() > 1) {
        members.iter().for_each(|&v| class[v] = next);
        next += 1;
    }
    let mut closed: HashMap<FixedBitSet, usize> = HashMap::new();
    for v in 0..n {
        if class[v] != usize::MAX {
            continue;
        }
        let mut nb = h.neighbors(v).clone();
        nb.insert(v);
        class[v] = *closed.entry(nb).or_insert_with(|| {
            next += 1;
            next - 1
        });
    }
    class
}

/// Greedy search order: always the vertex with the most already-ordered
/// neighbors, then highest degree, then smallest index.
fn search_order(p: &Graph) -> Vec<Vertex> {
    let n = p.order();
    let mut done = FixedBitSet::with_capacity(n);
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done.contains(v))
            .max_by_key(|&v| {
                (
                    p.neighbors(v).intersection_count(&done),
                    p.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("vertices remain");
        done.insert(v);
        order.push(v);
    }
    order
}

struct Matcher<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: Vec<Vertex>,
    twin_prev: Vec<Option<Vertex>>,
    /// size of the pattern component containing each pattern vertex
    pattern_comp: Vec<usize>,
    host_comp: Vec<usize>,
    host_twin: Vec<usize>,
    /// position in `order` from which every pattern vertex is isolated
    isolated_from: usize,
    map: Vec<Vertex>,
    used: FixedBitSet,
}

impl Matcher<'_> {
    fn go(&mut self, i: usize, budget: &mut Budget) -> Result<bool, Exhausted> {
        budget.tick()?;
        if i == self.isolated_from {
            let rest = self.order.len() - i;
            let free: Vec<Vertex> = (0..self.host.order()).filter(|&h| !self.used.contains(h)).take(rest).collect();
            if free.len() < rest {
                return Ok(false);
            }
            for (&v, h) in self.order[i..].iter().zip(free) {
                self.map[v] = h;
            }
            return Ok(true);
        }
        let v = self.order[i];
        let mut cand = FixedBitSet::with_capacity(self.host.order());
        let mut anchored = false;
        for u in self.pattern.neighbors(v).ones() {
            if self.map[u] == usize::MAX {
                continue;
            }
            if anchored {
                cand.intersect_with(self.host.neighbors(self.map[u]));
            } else {
                cand = self.host.neighbors(self.map[u]).clone();
                anchored = true;
            }
        }
        if !anchored {
            cand.insert_range(..);
        }
        cand.difference_with(&self.used);
        let floor = self.twin_prev[v].map_or(0, |u| self.map[u] + 1);
        let need_deg = self.pattern.degree(v);
        // unused host twins are interchangeable: try the smallest of each class
        let mut twins_seen = std::collections::HashSet::new();
        let candidates: Vec<Vertex> = cand
            .ones()
            .filter(|&h| h >= floor)
            .filter(|&h| self.host.degree(h) >= need_deg)
            .filter(|&h| anchored || self.host_comp[h] >= self.pattern_comp[v])
            .filter(|&h| twins_seen.insert(self.host_twin[h]))
            .collect();
        for h in candidates {
            self.map[v] = h;
            self.used.insert(h);
            if self.go(i + 1, budget)? {
                return Ok(true);
            }
            self.used.set(h, false);
            self.map[v] = usize::MAX;
        }
        Ok(false)
    }
}

/// An injective map from pattern vertices to host vertices sending edges to
/// edges, if one exists.
pub fn find_subgraph(pattern: &Graph, host: &Graph, budget: &mut Budget) -> Verdict<Option<Vec<Vertex>>> {
    find_subgraph_inner(pattern, host, budget).into()
}

pub(crate) fn find_subgraph_inner(
    pattern: &Graph,
    host: &Graph,
    budget: &mut Budget,
) -> Result<Option<Vec<Vertex>>, Exhausted> {
    let (np, nh) = (pattern.order(), host.order());
    if np > nh || pattern.edge_count() > host.edge_count() || pattern.max_degree() > host.max_degree() {
        return Ok(None);
    }
    let pattern_components = pattern.components();
    if pattern_components.len() > 1 {
        // every component has to fit on its own; this refutes e.g. 3K4 in a
        // K4-free host without searching all the ways to place the first copy
        let mut seen: Vec<Graph> = Vec::new();
        for c in pattern_components.iter().filter(|c| c.len() > 1) {
            let part = pattern.induced(c);
            if seen.contains(&part) {
                continue;
            }
            if find_subgraph_inner(&part, host, budget)?.is_none() {
                return Ok(None);
            }
            seen.push(part);
        }
    }
    let order = search_order(pattern);
    let twin_prev = twin_predecessor(pattern, &order);
    let mut pattern_comp = vec![0; np];
    for c in &pattern_components {
        c.iter().for_each(|&v| pattern_comp[v] = c.len());
    }
    let mut host_comp = vec![0; nh];
    for c in host.components() {
        c.iter().for_each(|&v| host_comp[v] = c.len());
    }
    let isolated_from = order.iter().position(|&v| pattern.degree(v) == 0).unwrap_or(np);
    let mut m = Matcher {
        pattern,
        host,
        order,
        twin_prev,
        pattern_comp,
        host_comp,
        host_twin: twin_classes(host),
        isolated_from,
        map: vec![usize::MAX; np],
        used: FixedBitSet::with_capacity(nh),
    };
    Ok(m.go(0, budget)?.then_some(m.map))
}

pub fn contains_subgraph(pattern: &Graph, host: &Graph, budget: &mut Budget) -> Verdict<bool> {
    find_subgraph(pattern, host, budget).map(|m| m.is_some())
}

/// True iff `map` is an injective edge-preserving map of `pattern` into `host`.
pub fn is_embedding(pattern: &Graph, host: &Graph, map: &[Vertex]) -> bool {
    if map.len() != pattern.order() {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(host.order());
    if map.iter().any(|&h| h >= host.order() || seen.put(h)) {
        return false;
    }
    pattern.edges().all(|(u, v)| host.has_edge(map[u], map[v]))
}
