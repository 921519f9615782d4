//! Canonical labeling of small graphs (at most 64 vertices) by
//! individualization-refinement, and isomorph-free generation.
//!
//! Graphs are handled as neighbor masks, `adj[v]` holding bit `u` for each
//! neighbor `u`. The canonical form is the lexicographically smallest
//! relabeled mask vector over all leaves of the refinement tree.

use std::collections::BTreeSet;

use crate::graph::Graph;

type Cells = Vec<Vec<usize>>;

/// Splits cells by neighbor counts into every cell until stable. The order
/// of the resulting cells depends only on the partition structure.
fn refine(adj: &[u64], cells: &mut Cells) {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect();
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks.iter().map(|m| (adj[v] & m).count_ones()).collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    let mut part: Vec<usize> = keyed[start..i].iter().map(|x| x.1).collect();
                    part.sort_unstable();
                    next.push(part);
                    start = i;
                }
            }
        }
        // splitting only ever adds cells
        if next.len() == cells.len() {
            return;
        }
        *cells = next;
    }
}

#[inline]
fn twins(adj: &[u64], u: usize, v: usize) -> bool {
    (adj[u] & !(1u64 << v)) == (adj[v] & !(1u64 << u))
}

fn relabel(adj: &[u64], cells: &Cells) -> Vec<u64> {
    let n = adj.len();
    let mut pos = vec![0usize; n];
    for (i, c) in cells.iter().enumerate() {
        pos[c[0]] = i;
    }
    let mut out = vec![0u64; n];
    for u in 0..n {
        let mut bits = adj[u];
        let mut row = 0u64;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            row |= 1u64 << pos[v];
        }
        out[pos[u]] = row;
    }
    out
}

fn search(adj: &[u64], cells: Cells, best: &mut Option<Vec<u64>>) {
    let Some(target) = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
    else {
        let form = relabel(adj, &cells);
        if best.as_ref().is_none_or(|b| form < *b) {
            *best = Some(form);
        }
        return;
    };
    let cell = &cells[target];
    let all_twins = cell.iter().all(|&u| twins(adj, cell[0], u));
    let branch: Vec<usize> = if all_twins { vec![cell[0]] } else { cell.clone() };
    for v in branch {
        let mut next: Cells = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cells[target].iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        refine(adj, &mut next);
        search(adj, next, best);
    }
}

/// Canonical neighbor masks: isomorphic inputs give identical outputs.
pub fn canonical_masks(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    assert!(n <= 64, "canonical labeling supports at most 64 vertices");
    if n == 0 {
        return Vec::new();
    }
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(adj, &mut cells);
    let mut best = None;
    search(adj, cells, &mut best);
    best.expect("search visits at least one leaf")
}

/// Canonical representative of the isomorphism class of `g` (order <= 64).
pub fn canonical_form(g: &Graph) -> Graph {
    let masks = g.to_masks().expect("canonical form needs at most 64 vertices");
    Graph::from_masks(&canonical_masks(&masks))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

/// All graphs on `n` vertices up to isomorphism, in canonical form, built by
/// one-vertex extension with canonical-form rejection.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 12, "exhaustive catalogue is limited to 12 vertices");
    let mut level: BTreeSet<Vec<u64>> = BTreeSet::new();
    level.insert(Vec::new());
    for m in 1..=n {
        let mut next = BTreeSet::new();
        for g in &level {
            for s in 0u64..(1u64 << (m - 1)) {
                let mut adj = g.clone();
                for (u, row) in adj.iter_mut().enumerate() {
                    if s >> u & 1 == 1 {
                        *row |= 1u64 << (m - 1);
                    }
                }
                adj.push(s);
                next.insert(canonical_masks(&adj));
            }
        }
        level = next;
    }
    level.iter().map(|m| Graph::from_masks(m)).collect()
}

/// Connected graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}
