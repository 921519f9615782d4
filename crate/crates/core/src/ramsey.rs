//! Exact arrowing `K_N -> (F, G)` and small Ramsey numbers.
//!
//! Two exhaustive searches are available:
//!
//! * **edge DFS** colors the edges of `K_N` in lexicographic order. Vertex 0
//!   is taken to have maximum red degree `d` with red neighbors `1..=d`,
//!   so every other vertex is capped at red degree `d`. After each edge only
//!   the copies of `F` (red) or `G` (blue) through that edge are searched.
//!   The first free edges split the tree into independent subtrees that run
//!   in parallel.
//! * **vertex extension** keeps every avoiding coloring of `K_m` up to
//!   isomorphism and extends each by one vertex in all `2^m` ways; `K_N`
//!   arrows iff level `N` is empty.
//!
//! Every returned witness is re-verified with the general subgraph search.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{Budget, Exhausted, SharedBudget, Verdict, DEFAULT_NODE_LIMIT};
use crate::canon::canonical_masks;
use crate::error::{precondition, Error, Result};
use crate::graph::Graph;
use crate::two_coloring::{burr_parameters, burr_witness, find_red_or_blue, TwoColoring};

/// Largest `N` the mask-based searches handle.
pub const MAX_ARROW_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Edge DFS below 8 vertices, vertex extension from 8 on.
    Auto,
    Dfs,
    Canonical,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Number of leading free edges whose colorings form parallel subtrees.
    pub split_bits: usize,
    pub node_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Auto,
            split_bits: 8,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

impl SearchOptions {
    fn canonical_for(&self, n: usize) -> bool {
        match self.mode {
            SearchMode::Auto => n >= 8,
            SearchMode::Dfs => false,
            SearchMode::Canonical => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowVerdict {
    /// Every coloring of `K_N` contains a red `F` or a blue `G`.
    Arrows,
    /// A coloring avoiding both.
    Witness(TwoColoring),
    Undecided(Exhausted),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowResult {
    pub n: usize,
    pub verdict: ArrowVerdict,
    pub nodes: u64,
}

// ---------------------------------------------------------------------------
// seeded pattern search on u64 masks

/// A search order for a pattern with its first one or two vertices pinned.
#[derive(Debug)]
struct Seeded {
    seeds: usize,
    order: Vec<usize>,
    /// for each position, the earlier positions adjacent to it
    back: Vec<Vec<usize>>,
    /// for each position, an earlier twin position whose image must be smaller
    twin: Vec<Option<usize>>,
    deg: Vec<u32>,
}

impl Seeded {
    fn new(adj: &[u64], seeds: &[usize]) -> Self {
        let n = adj.len();
        let mut done: u64 = 0;
        let mut order: Vec<usize> = seeds.to_vec();
        seeds.iter().for_each(|&s| done |= 1 << s);
        while order.len() < n {
            let v = (0..n)
                .filter(|&v| done >> v & 1 == 0)
                .max_by_key(|&v| {
                    ((adj[v] & done).count_ones(), adj[v].count_ones(), std::cmp::Reverse(v))
                })
                .expect("vertices remain");
            done |= 1 << v;
            order.push(v);
        }
        let twins = |u: usize, v: usize| (adj[u] & !(1u64 << v)) == (adj[v] & !(1u64 << u));
        let back = (0..n)
            .map(|i| (0..i).filter(|&j| adj[order[i]] >> order[j] & 1 == 1).collect())
            .collect();
        let twin = (0..n)
            .map(|i| {
                if i < seeds.len() {
                    return None;
                }
                (seeds.len()..i).rev().find(|&j| twins(order[i], order[j]))
            })
            .collect();
        let deg = order.iter().map(|&v| adj[v].count_ones()).collect();
        Seeded {
            seeds: seeds.len(),
            order,
            back,
            twin,
            deg,
        }
    }

    fn extend(&self, host: &[u64], all: u64, map: &mut [usize], used: u64, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let mut cand = all & !used;
        for &j in &self.back[i] {
            cand &= host[map[j]];
        }
        if let Some(t) = self.twin[i] {
            cand &= u64::MAX.checked_shl(map[t] as u32 + 1).unwrap_or(0);
        }
        while cand != 0 {
            let c = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if host[c].count_ones() < self.deg[i] {
                continue;
            }
            map[i] = c;
            if self.extend(host, all, map, used | 1 << c, i + 1) {
                return true;
            }
        }
        false
    }

    /// Search with the seeds mapped to `pins`.
    fn run(&self, host: &[u64], all: u64, pins: &[usize]) -> bool {
        debug_assert_eq!(pins.len(), self.seeds);
        let mut used = 0u64;
        let mut map = [0usize; MAX_ARROW_ORDER];
        for (i, &p) in pins.iter().enumerate() {
            if host[p].count_ones() < self.deg[i] || used >> p & 1 == 1 {
                return false;
            }
            if self.back[i].iter().any(|&j| host[map[j]] >> p & 1 == 0) {
                return false;
            }
            map[i] = p;
            used |= 1 << p;
        }
        self.extend(host, all, &mut map, used, pins.len())
    }
}

/// A pattern with precomputed searches from every vertex orbit and every
/// oriented-edge orbit of its automorphism group.
#[derive(Debug)]
struct MaskPattern {
    n: usize,
    vertex_seeds: Vec<Seeded>,
    edge_seeds: Vec<Seeded>,
}

impl MaskPattern {
    fn new(p: &Graph) -> Result<Self> {
        let adj = p
            .to_masks()
            .ok_or_else(|| precondition("patterns are limited to 64 vertices"))?;
        let all = full_mask(p.order());
        // an injective edge-preserving self-map is an automorphism, so a
        // seeded search of the pattern in itself decides orbit membership
        let mut vertex_seeds: Vec<Seeded> = Vec::new();
        for v in 0..p.order() {
            if !vertex_seeds.iter().any(|s| s.run(&adj, all, &[v])) {
                vertex_seeds.push(Seeded::new(&adj, &[v]));
            }
        }
        let mut edge_seeds: Vec<Seeded> = Vec::new();
        for (a, b) in p.edges().flat_map(|(u, v)| [(u, v), (v, u)]) {
            if !edge_seeds.iter().any(|s| s.run(&adj, all, &[a, b])) {
                edge_seeds.push(Seeded::new(&adj, &[a, b]));
            }
        }
        Ok(MaskPattern {
            n: p.order(),
            vertex_seeds,
            edge_seeds,
        })
    }

    fn through_edge(&self, host: &[u64], all: u64, u: usize, v: usize) -> bool {
        self.edge_seeds.iter().any(|s| s.run(host, all, &[u, v]))
    }

    fn through_vertex(&self, host: &[u64], all: u64, v: usize) -> bool {
        self.n <= (all.count_ones() as usize) && self.vertex_seeds.iter().any(|s| s.run(host, all, &[v]))
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn coloring_from_masks(red: &[u64]) -> TwoColoring {
    TwoColoring::from_red(Graph::from_masks(red))
}

/// Batches ticks against a shared budget.
struct Ticker<'a> {
    shared: &'a SharedBudget,
    local: u64,
}

impl Ticker<'_> {
    const BATCH: u64 = 1024;

    #[inline]
    fn tick(&mut self) -> Result<(), Exhausted> {
        self.local += 1;
        if self.local == Self::BATCH {
            self.local = 0;
            self.shared.charge(Self::BATCH)?;
        }
        Ok(())
    }
}

impl Drop for Ticker<'_> {
    fn drop(&mut self) {
        let _ = self.shared.charge(self.local);
    }
}

// ---------------------------------------------------------------------------
// edge DFS

struct EdgeDfs<'a> {
    n: usize,
    all: u64,
    f: &'a MaskPattern,
    g: &'a MaskPattern,
    /// edges not incident to vertex 0, lexicographic
    edges: Vec<(usize, usize)>,
}

#[derive(Clone)]
struct DfsState {
    red: Vec<u64>,
    blue: Vec<u64>,
    cap: u32,
}

impl EdgeDfs<'_> {
    /// Colors `uv`; false (and the state untouched) if that is forbidden.
    fn place(&self, st: &mut DfsState, u: usize, v: usize, red: bool) -> bool {
        if red {
            if st.red[u].count_ones() >= st.cap || st.red[v].count_ones() >= st.cap {
                return false;
            }
            st.red[u] |= 1 << v;
            st.red[v] |= 1 << u;
            if self.f.through_edge(&st.red, self.all, u, v) {
                st.red[u] &= !(1 << v);
                st.red[v] &= !(1 << u);
                return false;
            }
        } else {
            st.blue[u] |= 1 << v;
            st.blue[v] |= 1 << u;
            if self.g.through_edge(&st.blue, self.all, u, v) {
                st.blue[u] &= !(1 << v);
                st.blue[v] &= !(1 << u);
                return false;
            }
        }
        true
    }

    fn unplace(st: &mut DfsState, u: usize, v: usize, red: bool) {
        let m = if red { &mut st.red } else { &mut st.blue };
        m[u] &= !(1 << v);
        m[v] &= !(1 << u);
    }

    fn go(&self, st: &mut DfsState, i: usize, t: &mut Ticker) -> Result<bool, Exhausted> {
        t.tick()?;
        if i == self.edges.len() {
            return Ok(true);
        }
        let (u, v) = self.edges[i];
        for red in [true, false] {
            if self.place(st, u, v, red) {
                if self.go(st, i + 1, t)? {
                    return Ok(true);
                }
                Self::unplace(st, u, v, red);
            }
        }
        Ok(false)
    }

    /// State with vertex 0 of red degree `d` and red neighbors `1..=d`.
    fn root(&self, d: usize) -> Option<DfsState> {
        let mut st = DfsState {
            red: vec![0; self.n],
            blue: vec![0; self.n],
            cap: d as u32,
        };
        for w in 1..self.n {
            if !self.place(&mut st, 0, w, w <= d) {
                return None;
            }
        }
        Some(st)
    }

    /// Subtree `(d, bits)`: the first `b` free edges colored by `bits`, most
    /// significant bit first, 0 meaning red (the order the DFS tries them).
    fn subtree(&self, d: usize, bits: u64, b: usize, t: &mut Ticker) -> Result<Option<DfsState>, Exhausted> {
        let Some(mut st) = self.root(d) else {
            return Ok(None);
        };
        for i in 0..b {
            t.tick()?;
            let (u, v) = self.edges[i];
            let red = bits >> (b - 1 - i) & 1 == 0;
            if !self.place(&mut st, u, v, red) {
                return Ok(None);
            }
        }
        Ok(self.go(&mut st, b, t)?.then_some(st))
    }
}

fn dfs_witness(
    n: usize,
    f: &MaskPattern,
    g: &MaskPattern,
    split_bits: usize,
    shared: &SharedBudget,
) -> Result<Option<Vec<u64>>, Exhausted> {
    let dfs = EdgeDfs {
        n,
        all: full_mask(n),
        f,
        g,
        edges: (1..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
    };
    let b = split_bits.min(dfs.edges.len()).min(20);
    // when vertex 0 has red degree d the maximum red degree is d, so
    // smaller d first explores the sparser red graphs first
    let tasks: Vec<(usize, u64)> = (0..n).flat_map(|d| (0..1u64 << b).map(move |bits| (d, bits))).collect();
    let found = tasks.par_iter().find_map_first(|&(d, bits)| {
        let mut t = Ticker { shared, local: 0 };
        match dfs.subtree(d, bits, b, &mut t) {
            Ok(Some(st)) => Some(Ok(st.red)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.transpose()
}

// ---------------------------------------------------------------------------
// vertex extension

/// Avoiding colorings up to isomorphism, level by level.
struct Levels<'a> {
    f: &'a MaskPattern,
    g: &'a MaskPattern,
    /// canonical red masks of the avoiding colorings of `K_m`, sorted
    levels: Vec<Vec<Vec<u64>>>,
}

impl<'a> Levels<'a> {
    fn new(f: &'a MaskPattern, g: &'a MaskPattern) -> Self {
        Levels {
            f,
            g,
            levels: vec![vec![Vec::new()]],
        }
    }

    fn extend_to(&mut self, n: usize, shared: &SharedBudget) -> Result<&[Vec<u64>], Exhausted> {
        while self.levels.len() <= n {
            let m = self.levels.len();
            let prev = self.levels.last().expect("level 0 exists");
            let v = m - 1;
            let all = full_mask(m);
            let parts: Vec<Result<Vec<Vec<u64>>, Exhausted>> = prev
                .par_iter()
                .map(|base| {
                    let mut t = Ticker { shared, local: 0 };
                    let mut out = Vec::new();
                    for s in 0..1u64 << v {
                        t.tick()?;
                        let mut red = base.clone();
                        red.push(s);
                        for (u, row) in red.iter_mut().enumerate().take(v) {
                            if s >> u & 1 == 1 {
                                *row |= 1 << v;
                            }
                        }
                        if self.f.through_vertex(&red, all, v) {
                            continue;
                        }
                        let blue: Vec<u64> = red.iter().enumerate().map(|(u, &r)| !r & all & !(1 << u)).collect();
                        if self.g.through_vertex(&blue, all, v) {
                            continue;
                        }
                        out.push(canonical_masks(&red));
                    }
                    Ok(out)
                })
                .collect();
            let mut next = BTreeSet::new();
            for p in parts {
                next.extend(p?);
            }
            self.levels.push(next.into_iter().collect());
        }
        Ok(&self.levels[n])
    }
}

// ---------------------------------------------------------------------------

/// Answers that need no search when a pattern has no edges.
fn trivial_arrow(n: usize, f: &Graph, g: &Graph) -> Option<ArrowVerdict> {
    let f_edgeless = f.edge_count() == 0;
    let g_edgeless = g.edge_count() == 0;
    if (f_edgeless && n >= f.order()) || (g_edgeless && n >= g.order()) {
        return Some(ArrowVerdict::Arrows);
    }
    if f_edgeless || f.order() > n {
        // no red copy can exist; all red has no blue edge at all (or G is too big)
        if !g_edgeless || g.order() > n {
            return Some(ArrowVerdict::Witness(TwoColoring::from_red(crate::families::complete(n))));
        }
    }
    if g_edgeless || g.order() > n {
        return Some(ArrowVerdict::Witness(TwoColoring::all_blue(n)));
    }
    None
}

fn verify_witness(col: &TwoColoring, f: &Graph, g: &Graph) -> Result<()> {
    match find_red_or_blue(col, f, g, &mut Budget::unlimited()) {
        Ok(None) => Ok(()),
        Ok(Some(m)) => Err(Error::Internal(format!(
            "search witness on {} vertices contains a {} target",
            col.order(),
            m.color
        ))),
        Err(_) => unreachable!("unlimited budget"),
    }
}

struct Prepared {
    f: MaskPattern,
    g: MaskPattern,
}

fn prepare(f: &Graph, g: &Graph) -> Result<Prepared> {
    Ok(Prepared {
        f: MaskPattern::new(f)?,
        g: MaskPattern::new(g)?,
    })
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(precondition("N must be at least 1"));
    }
    if n > MAX_ARROW_ORDER {
        return Err(precondition(format!("N is limited to {MAX_ARROW_ORDER}")));
    }
    Ok(())
}

/// Decides whether every red/blue coloring of `K_n` contains a red `f` or a
/// blue `g`.
pub fn arrows(n: usize, f: &Graph, g: &Graph, opts: &SearchOptions) -> Result<ArrowResult> {
    check_order(n)?;
    let shared = SharedBudget::new(opts.node_limit);
    let verdict = match trivial_arrow(n, f, g) {
        Some(v) => v,
        None => {
            let p = prepare(f, g)?;
            let found = if opts.canonical_for(n) {
                let mut levels = Levels::new(&p.f, &p.g);
                levels.extend_to(n, &shared).map(|l| l.first().cloned())
            } else {
                dfs_witness(n, &p.f, &p.g, opts.split_bits, &shared)
            };
            match found {
                Ok(Some(red)) => ArrowVerdict::Witness(coloring_from_masks(&red)),
                Ok(None) => ArrowVerdict::Arrows,
                Err(e) => ArrowVerdict::Undecided(e),
            }
        }
    };
    if let ArrowVerdict::Witness(col) = &verdict {
        verify_witness(col, f, g)?;
    }
    Ok(ArrowResult {
        n,
        verdict,
        nodes: shared.used(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseySearch {
    /// `R(F,G)` when decided.
    pub value: Option<usize>,
    /// Where the upward search started (the Burr bound when it applies).
    pub start: usize,
    /// Largest `N` for which an avoiding coloring was exhibited.
    pub largest_witness: Option<usize>,
    /// Set when the node budget, rather than the cap, stopped the search.
    pub exhausted: Option<Exhausted>,
    pub nodes: u64,
}

/// Smallest `N <= cap` with `K_N -> (F, G)`, searching upward from the
/// Burr bound when `F` is connected and `|F| >= sigma(G)`, else from 1.
pub fn ramsey_number(f: &Graph, g: &Graph, cap: usize, opts: &SearchOptions) -> Result<RamseySearch> {
    if cap == 0 {
        return Err(precondition("cap must be at least 1"));
    }
    let cap = cap.min(MAX_ARROW_ORDER);
    let shared = SharedBudget::new(opts.node_limit);
    let mut budget = Budget::new(opts.node_limit);
    let mut start = 1;
    let mut largest_witness = None;
    if f.order() > 0 && f.is_connected() {
        if let Ok(Verdict::Decided((bound, _, _))) = burr_parameters(f, g, &mut budget) {
            if bound > 1 {
                if let Verdict::Decided(w) = burr_witness(f, g, &mut budget)? {
                    largest_witness = Some(w.order());
                    start = bound;
                }
            }
        }
    }
    let done = |value, largest_witness, exhausted, shared: &SharedBudget| RamseySearch {
        value,
        start,
        largest_witness,
        exhausted,
        nodes: shared.used() + budget.used(),
    };
    let prepared = prepare(f, g)?;
    let mut levels = Levels::new(&prepared.f, &prepared.g);
    for n in start..=cap {
        let found = if let Some(v) = trivial_arrow(n, f, g) {
            match v {
                ArrowVerdict::Arrows => Ok(None),
                ArrowVerdict::Witness(c) => Ok(Some(c)),
                ArrowVerdict::Undecided(e) => Err(e),
            }
        } else if opts.canonical_for(n) {
            levels
                .extend_to(n, &shared)
                .map(|l| l.first().map(|red| coloring_from_masks(red)))
        } else {
            dfs_witness(n, &prepared.f, &prepared.g, opts.split_bits, &shared)
                .map(|w| w.map(|red| coloring_from_masks(&red)))
        };
        match found {
            Ok(Some(col)) => {
                verify_witness(&col, f, g)?;
                largest_witness = Some(n);
            }
            Ok(None) => return Ok(done(Some(n), largest_witness, None, &shared)),
            Err(e) => return Ok(done(None, largest_witness, Some(e), &shared)),
        }
    }
    Ok(done(None, largest_witness, None, &shared))
}

/// `(χ(G)−1)(|F|−1)+σ(G)`.
pub fn burr_bound(f: &Graph, g: &Graph, budget: &mut Budget) -> Result<Verdict<usize>> {
    Ok(burr_parameters(f, g, budget)?.map(|(b, _, _)| b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodnessReport {
    pub burr_bound: usize,
    pub chi: usize,
    pub sigma: usize,
    pub exact: RamseySearch,
    /// `Some(R == bound)` once `R` is decided.
    pub is_good: Option<bool>,
}

pub fn goodness_check(f: &Graph, g: &Graph, cap: usize, opts: &SearchOptions) -> Result<Verdict<GoodnessReport>> {
    let mut budget = Budget::new(opts.node_limit);
    let (bound, chi, sigma) = match burr_parameters(f, g, &mut budget)? {
        Verdict::Decided(p) => p,
        Verdict::Undecided(e) => return Ok(Verdict::Undecided(e)),
    };
    let exact = ramsey_number(f, g, cap, opts)?;
    if let Some(r) = exact.value {
        if r < bound {
            return Err(Error::Internal(format!("R = {r} below the lower bound {bound}")));
        }
    }
    Ok(Verdict::Decided(GoodnessReport {
        burr_bound: bound,
        chi,
        sigma,
        is_good: exact.value.map(|r| r == bound),
        exact,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, copies, cycle, path, path_power};

    fn opts(mode: SearchMode) -> SearchOptions {
        SearchOptions {
            mode,
            ..SearchOptions::default()
        }
    }

    #[test]
    fn small_arrowing() {
        for mode in [SearchMode::Dfs, SearchMode::Canonical] {
            let o = opts(mode);
            let r = arrows(3, &path(3), &path(3), &o).unwrap();
            assert_eq!(r.verdict, ArrowVerdict::Arrows);
            let r = arrows(2, &path(3), &path(3), &o).unwrap();
            assert!(matches!(r.verdict, ArrowVerdict::Witness(_)));
            let r = arrows(6, &path(4), &complete(3), &o).unwrap();
            let ArrowVerdict::Witness(w) = r.verdict else { panic!("expected a witness") };
            assert_eq!(w.red().components().len(), 2);
        }
    }

    #[test]
    fn ramsey_small_values() {
        for mode in [SearchMode::Dfs, SearchMode::Canonical] {
            let o = opts(mode);
            let r = |f: &Graph, g: &Graph| ramsey_number(f, g, 12, &o).unwrap().value;
            assert_eq!(r(&path(3), &path(3)), Some(3));
            assert_eq!(r(&path(3), &path(4)), Some(4));
            assert_eq!(r(&path(4), &path(4)), Some(5));
            assert_eq!(r(&path(4), &complete(3)), Some(7));
            assert_eq!(r(&cycle(4), &cycle(4)), Some(6));
        }
    }

    #[test]
    fn goodness_examples() {
        let o = SearchOptions::default();
        let rep = goodness_check(&path(4), &path_power(4, 2), 10, &o).unwrap().expect_decided("g");
        assert_eq!((rep.burr_bound, rep.exact.value, rep.is_good), (7, Some(7), Some(true)));
        let rep = goodness_check(&cycle(4), &cycle(4), 10, &o).unwrap().expect_decided("g");
        assert_eq!((rep.burr_bound, rep.exact.value, rep.is_good), (5, Some(6), Some(false)));
    }

    #[test]
    fn edgeless_and_disconnected_patterns() {
        let o = SearchOptions::default();
        assert_eq!(ramsey_number(&Graph::empty(3), &complete(3), 10, &o).unwrap().value, Some(3));
        assert_eq!(ramsey_number(&copies(&complete(2), 2), &complete(2), 10, &o).unwrap().value, Some(4));
    }

    #[test]
    fn cap_too_small_is_undecided() {
        let r = ramsey_number(&path(4), &path(4), 4, &SearchOptions::default()).unwrap();
        assert_eq!(r.value, None);
        assert_eq!(r.largest_witness, Some(4));
        assert_eq!(r.exhausted, None);
    }
}
