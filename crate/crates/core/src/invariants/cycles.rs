//! Longest cycles and long paths.
//!
//! The exact longest-cycle search works block by block (a cycle always lies
//! inside one biconnected component) and tries lengths from the largest
//! block size downward. For each length the depth-first search visits
//! vertices in increasing order from the cycle's smallest vertex, so the
//! first cycle found is the lexicographically smallest vertex sequence of
//! that length.

use fixedbitset::FixedBitSet;

use crate::budget::{Budget, Exhausted, Verdict};
use crate::graph::{Graph, Vertex};

/// Vertex sets of the biconnected components with at least one edge
/// (bridges give two-vertex blocks). Each set is sorted.
pub fn blocks(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.order();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();

    struct Frame {
        v: Vertex,
        parent: Vertex,
        nbrs: Vec<Vertex>,
        next: usize,
    }

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut stack = vec![Frame {
            v: root,
            parent: UNSEEN,
            nbrs: g.neighbors(root).ones().collect(),
            next: 0,
        }];
        while let Some(top) = stack.last_mut() {
            let v = top.v;
            if top.next < top.nbrs.len() {
                let w = top.nbrs[top.next];
                top.next += 1;
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push(Frame {
                        v: w,
                        parent: v,
                        nbrs: g.neighbors(w).ones().collect(),
                        next: 0,
                    });
                } else if w != top.parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            let parent = top.parent;
            stack.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut verts = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    verts.push(a);
                    verts.push(b);
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                verts.sort_unstable();
                verts.dedup();
                out.push(verts);
            }
        }
    }
    out.sort();
    out
}

fn to_set(n: usize, vs: &[Vertex]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    vs.iter().for_each(|&v| s.insert(v));
    s
}

/// Vertices reachable from `from` through `open` (not counting `from`).
fn reach(g: &Graph, from: Vertex, open: &FixedBitSet) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(g.order());
    let mut frontier = vec![from];
    while let Some(u) = frontier.pop() {
        for w in g.neighbors(u).ones() {
            if open.contains(w) && !seen.contains(w) {
                seen.insert(w);
                frontier.push(w);
            }
        }
    }
    seen
}

/// Lexicographically first cycle of exactly `len` vertices starting at
/// `start` and otherwise using only vertices of `allowed`.
fn cycle_of_length(
    g: &Graph,
    start: Vertex,
    allowed: &FixedBitSet,
    len: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<Vertex>>, Exhausted> {
    fn go(
        g: &Graph,
        start: Vertex,
        open: &mut FixedBitSet,
        path: &mut Vec<Vertex>,
        len: usize,
        budget: &mut Budget,
    ) -> Result<bool, Exhausted> {
        budget.tick()?;
        let end = *path.last().expect("path holds start");
        if path.len() == len {
            return Ok(g.has_edge(end, start));
        }
        let need = len - path.len();
        let r = reach(g, end, open);
        if r.count_ones(..) < need || r.intersection_count(g.neighbors(start)) == 0 {
            return Ok(false);
        }
        let next: Vec<Vertex> = g.neighbors(end).intersection(open).collect();
        for w in next {
            open.set(w, false);
            path.push(w);
            if go(g, start, open, path, len, budget)? {
                return Ok(true);
            }
            path.pop();
            open.insert(w);
        }
        Ok(false)
    }
    let mut open = allowed.clone();
    open.set(start, false);
    let mut path = vec![start];
    Ok(go(g, start, &mut open, &mut path, len, budget)?.then_some(path))
}

/// A longest cycle as a vertex sequence (smallest vertex first, then its
/// smaller cycle neighbor), or `None` for a forest.
pub fn longest_cycle(g: &Graph, budget: &mut Budget) -> Verdict<Option<Vec<Vertex>>> {
    longest_cycle_inner(g, budget).into()
}

pub(crate) fn longest_cycle_inner(
    g: &Graph,
    budget: &mut Budget,
) -> Result<Option<Vec<Vertex>>, Exhausted> {
    let n = g.order();
    let blocks: Vec<Vec<Vertex>> = blocks(g).into_iter().filter(|b| b.len() >= 3).collect();
    let Some(upper) = blocks.iter().map(Vec::len).max() else {
        return Ok(None);
    };
    let sets: Vec<FixedBitSet> = blocks.iter().map(|b| to_set(n, b)).collect();
    for len in (3..=upper).rev() {
        for s in 0..n {
            let mut best: Option<Vec<Vertex>> = None;
            for (b, set) in blocks.iter().zip(&sets) {
                if !set.contains(s) {
                    continue;
                }
                let above = b.iter().filter(|&&v| v >= s).count();
                if above < len {
                    continue;
                }
                let mut allowed = set.clone();
                allowed.remove_range(..s + 1);
                if let Some(c) = cycle_of_length(g, s, &allowed, len, budget)? {
                    if best.as_ref().is_none_or(|b| c < *b) {
                        best = Some(c);
                    }
                }
            }
            if best.is_some() {
                return Ok(best);
            }
        }
    }
    unreachable!("a block with three or more vertices contains a cycle")
}

/// Length of a longest cycle, 0 for forests.
pub fn circumference(g: &Graph, budget: &mut Budget) -> Verdict<usize> {
    longest_cycle(g, budget).map(|c| c.map_or(0, |c| c.len()))
}

/// A path on `m` vertices (as a subgraph), lexicographically first, if any.
pub fn has_path(g: &Graph, m: usize, budget: &mut Budget) -> Verdict<Option<Vec<Vertex>>> {
    has_path_inner(g, m, budget).into()
}

fn has_path_inner(g: &Graph, m: usize, budget: &mut Budget) -> Result<Option<Vec<Vertex>>, Exhausted> {
    assert!(m >= 1, "paths have at least one vertex");
    fn go(
        g: &Graph,
        open: &mut FixedBitSet,
        path: &mut Vec<Vertex>,
        m: usize,
        budget: &mut Budget,
    ) -> Result<bool, Exhausted> {
        budget.tick()?;
        if path.len() == m {
            return Ok(true);
        }
        let end = *path.last().expect("nonempty path");
        if reach(g, end, open).count_ones(..) < m - path.len() {
            return Ok(false);
        }
        let next: Vec<Vertex> = g.neighbors(end).intersection(open).collect();
        for w in next {
            open.set(w, false);
            path.push(w);
            if go(g, open, path, m, budget)? {
                return Ok(true);
            }
            path.pop();
            open.insert(w);
        }
        Ok(false)
    }
    let mut starts: Vec<(Vertex, FixedBitSet)> = Vec::new();
    for comp in g.components() {
        if comp.len() >= m {
            let set = to_set(g.order(), &comp);
            starts.extend(comp.iter().map(|&s| (s, set.clone())));
        }
    }
    starts.sort_by_key(|(s, _)| *s);
    for (s, comp) in starts {
        let mut open = comp;
        open.set(s, false);
        let mut path = vec![s];
        if go(g, &mut open, &mut path, m, budget)? {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

/// Longest path found by greedy extension with Pósa rotations, closed into
/// the longest cycle it contains. Not certified.
pub fn heuristic_long_cycle(g: &Graph, allowed: &FixedBitSet, max_rotations: usize) -> Option<Vec<Vertex>> {
    let mut best: Option<Vec<Vertex>> = None;
    for start in allowed.ones() {
        let mut path = vec![start];
        let mut on_path = FixedBitSet::with_capacity(g.order());
        on_path.insert(start);
        let mut rotations = 0;
        loop {
            let end = *path.last().expect("nonempty");
            let free = |v: Vertex, on_path: &FixedBitSet| {
                g.neighbors(v)
                    .ones()
                    .filter(|&w| allowed.contains(w) && !on_path.contains(w))
                    .count()
            };
            let ext = g
                .neighbors(end)
                .ones()
                .filter(|&w| allowed.contains(w) && !on_path.contains(w))
                .min_by_key(|&w| (free(w, &on_path), w));
            if let Some(w) = ext {
                path.push(w);
                on_path.insert(w);
                continue;
            }
            if rotations >= max_rotations || path.len() < 3 {
                break;
            }
            // rotate at a path neighbor whose successor can be extended
            let k = path.len();
            let pivot = (0..k - 2)
                .find(|&i| g.has_edge(end, path[i]) && free(path[i + 1], &on_path) > 0);
            match pivot {
                Some(i) => {
                    path[i + 1..].reverse();
                    rotations += 1;
                }
                None => break,
            }
        }
        let end = *path.last().expect("nonempty");
        if let Some(i) = (0..path.len().saturating_sub(2)).find(|&i| g.has_edge(end, path[i])) {
            let mut cyc = path[i..].to_vec();
            let m = cyc.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap_or(0);
            cyc.rotate_left(m);
            if cyc.len() > 2 && cyc[1] > cyc[cyc.len() - 1] {
                cyc[1..].reverse();
            }
            if best.as_ref().is_none_or(|b| cyc.len() > b.len()) {
                best = Some(cyc);
            }
        }
    }
    best
}

/// True iff `cyc` lists at least three distinct vertices forming a cycle of `g`.
pub fn is_cycle_of(g: &Graph, cyc: &[Vertex]) -> bool {
    if cyc.len() < 3 || cyc.iter().any(|&v| v >= g.order()) {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(g.order());
    if cyc.iter().any(|&v| seen.put(v)) {
        return false;
    }
    (0..cyc.len()).all(|i| g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]))
}

/// True iff `p` lists distinct vertices forming a path of `g`.
pub fn is_path_of(g: &Graph, p: &[Vertex]) -> bool {
    let mut seen = FixedBitSet::with_capacity(g.order());
    if p.iter().any(|&v| v >= g.order() || seen.put(v)) {
        return false;
    }
    p.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, path, petersen, star};

    fn lc(g: &Graph) -> Option<Vec<Vertex>> {
        longest_cycle(g, &mut Budget::default()).expect_decided("longest cycle")
    }

    #[test]
    fn longest_cycle_examples() {
        assert_eq!(lc(&complete(4)), Some(vec![0, 1, 2, 3]));
        assert_eq!(lc(&path(7)), None);
        assert_eq!(lc(&star(5)), None);
        let p = lc(&petersen()).unwrap();
        assert_eq!(p.len(), 9);
        assert!(is_cycle_of(&petersen(), &p));
        assert_eq!(lc(&cycle(6)), Some(vec![0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn blocks_of_two_triangles_sharing_a_vertex() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(blocks(&g), vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(lc(&g), Some(vec![0, 1, 2]));
    }

    #[test]
    fn path_examples() {
        let mut b = Budget::default();
        let k3k1 = Graph::disjoint_union(&[&complete(3), &Graph::empty(1)]);
        assert_eq!(has_path(&k3k1, 4, &mut b).expect_decided("p"), None);
        let p6 = path(6);
        let found = has_path(&p6, 6, &mut b).expect_decided("p").unwrap();
        assert!(is_path_of(&p6, &found));
        assert_eq!(has_path(&Graph::empty(1), 1, &mut b).expect_decided("p"), Some(vec![0]));
    }

    #[test]
    fn heuristic_finds_hamilton_cycle_of_clique() {
        let g = complete(7);
        let c = heuristic_long_cycle(&g, &g.vertex_set(), 50).unwrap();
        assert_eq!(c.len(), 7);
        assert!(is_cycle_of(&g, &c));
    }
}
