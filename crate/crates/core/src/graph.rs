//! Simple undirected graphs on vertices `0..n` and proper vertex colorings.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{precondition, Error, Result};

pub type Vertex = usize;

/// A finite simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(precondition(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(precondition(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Panics on out-of-range vertices; self-loops are a debug assertion.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) {
        debug_assert_ne!(u, v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    /// Builds from per-vertex neighbor masks (`n <= 64`). Bits are symmetrized.
    pub fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        assert!(n <= 64);
        let mut g = Graph::empty(n);
        for (u, &m) in masks.iter().enumerate() {
            let mut bits = m & !(1u64 << u);
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if v < n {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Neighbor masks, one `u64` per vertex; `None` above 64 vertices.
    pub fn to_masks(&self) -> Option<Vec<u64>> {
        if self.order() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|nb| nb.ones().fold(0u64, |m, v| m | (1u64 << v)))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|nb| nb.count_ones(..)).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n);
        for u in 0..n {
            let mut nb = self.adj[u].clone();
            nb.toggle_range(..);
            nb.set(u, false);
            g.adj[u] = nb;
        }
        g
    }

    /// Induced subgraph on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Full vertex set as a bitset.
    pub fn vertex_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.order());
        s.insert_range(..);
        s
    }

    /// Connected components restricted to `within`, each sorted ascending,
    /// ordered by smallest vertex.
    pub fn components_within(&self, within: &FixedBitSet) -> Vec<Vec<Vertex>> {
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut out = Vec::new();
        for s in within.ones() {
            if seen.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for v in self.adj[u].ones() {
                    if within.contains(v) && !seen.contains(v) {
                        seen.insert(v);
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_within(&self.vertex_set())
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    /// Disjoint union; vertices of `parts[i]` follow those of `parts[i-1]`.
    pub fn disjoint_union(parts: &[&Graph]) -> Graph {
        let n = parts.iter().map(|g| g.order()).sum();
        let mut g = Graph::empty(n);
        let mut offset = 0;
        for p in parts {
            for (u, v) in p.edges() {
                g.add_edge(offset + u, offset + v);
            }
            offset += p.order();
        }
        g
    }

    /// True iff the graph is a disjoint union of complete graphs, all of the
    /// same order. The graph on zero vertices qualifies vacuously.
    pub fn is_equal_clique_union(&self) -> bool {
        let comps = self.components();
        let Some(first) = comps.first() else {
            return true;
        };
        let size = first.len();
        comps.iter().all(|c| {
            c.len() == size && c.iter().all(|&v| self.degree(v) == size - 1)
        })
    }

    /// Relabels with `perm[old] = new`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let mut g = Graph::empty(self.order());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.order())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// A partition of the vertex set into nonempty independent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperColoring {
    classes: Vec<Vec<Vertex>>,
}

impl ProperColoring {
    /// Validates that `classes` partitions `0..g.order()` into nonempty
    /// independent sets. Classes are kept in the given order, each sorted.
    pub fn new(g: &Graph, mut classes: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = g.order();
        let mut seen = FixedBitSet::with_capacity(n);
        for class in &mut classes {
            if class.is_empty() {
                return Err(precondition("empty color class"));
            }
            class.sort_unstable();
            for (i, &u) in class.iter().enumerate() {
                if u >= n {
                    return Err(precondition(format!("vertex {u} out of range")));
                }
                if seen.put(u) {
                    return Err(precondition(format!("vertex {u} colored twice")));
                }
                if let Some(&v) = class[i + 1..].iter().find(|&&v| g.has_edge(u, v)) {
                    return Err(precondition(format!(
                        "edge {u}-{v} inside a color class"
                    )));
                }
            }
        }
        if seen.count_ones(..) != n {
            return Err(precondition("coloring does not cover every vertex"));
        }
        Ok(ProperColoring { classes })
    }

    /// Builds from a color vector `colors[v] in 0..k`, all `k` colors used.
    pub fn from_colors(g: &Graph, colors: &[usize], k: usize) -> Result<Self> {
        if colors.len() != g.order() {
            return Err(precondition("color vector length differs from order"));
        }
        let mut classes = vec![Vec::new(); k];
        for (v, &c) in colors.iter().enumerate() {
            if c >= k {
                return Err(precondition(format!("color {c} out of range")));
            }
            classes[c].push(v);
        }
        ProperColoring::new(g, classes)
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn min_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Sorts classes by size descending, ties by smallest vertex.
    pub fn sorted_by_size(mut self) -> Self {
        self.classes
            .sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
        self
    }

    pub fn color_of(&self, v: Vertex) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&v).is_ok())
    }
}

impl From<ProperColoring> for Vec<Vec<Vertex>> {
    fn from(c: ProperColoring) -> Self {
        c.classes
    }
}

pub(crate) fn check_vertices(n: usize, vs: &[Vertex]) -> Result<(), Error> {
    match vs.iter().find(|&&v| v >= n) {
        Some(v) => Err(precondition(format!("vertex {v} out of range for order {n}"))),
        None => Ok(()),
    }
}
