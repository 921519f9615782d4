use fixedbitset::FixedBitSet;

use crate::budget::{Budget, Exhausted, Verdict};
use crate::graph::{Graph, Vertex};

/// Number of cliques in a greedy clique cover of `cand`: an upper bound on
/// the independence number of the induced subgraph.
fn clique_cover_bound(g: &Graph, cand: &FixedBitSet) -> usize {
    let mut left = cand.clone();
    let mut cliques = 0;
    while let Some(v) = left.ones().next() {
        cliques += 1;
        left.set(v, false);
        let mut grow = left.clone();
        grow.intersect_with(g.neighbors(v));
        while let Some(u) = grow.ones().next() {
            left.set(u, false);
            grow.set(u, false);
            grow.intersect_with(g.neighbors(u));
        }
    }
    cliques
}

struct Search<'a> {
    g: &'a Graph,
    best: Vec<Vertex>,
    current: Vec<Vertex>,
}

impl Search<'_> {
    fn go(&mut self, cand: FixedBitSet, budget: &mut Budget) -> Result<(), Exhausted> {
        budget.tick()?;
        let left = cand.count_ones(..);
        if left == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return Ok(());
        }
        if self.current.len() + left <= self.best.len()
            || self.current.len() + clique_cover_bound(self.g, &cand) <= self.best.len()
        {
            return Ok(());
        }
        // a vertex of degree <= 1 inside `cand` belongs to some maximum set
        let deg = |v: Vertex| self.g.neighbors(v).intersection_count(&cand);
        if let Some(v) = cand.ones().find(|&v| deg(v) <= 1) {
            return self.include(v, &cand, budget);
        }
        let v = cand
            .ones()
            .max_by_key(|&v| (deg(v), std::cmp::Reverse(v)))
            .expect("nonempty candidates");
        self.include(v, &cand, budget)?;
        let mut without = cand;
        without.set(v, false);
        self.go(without, budget)
    }

    fn include(&mut self, v: Vertex, cand: &FixedBitSet, budget: &mut Budget) -> Result<(), Exhausted> {
        let mut next = cand.clone();
        next.difference_with(self.g.neighbors(v));
        next.set(v, false);
        self.current.push(v);
        let r = self.go(next, budget);
        self.current.pop();
        r
    }
}

/// A maximum independent set, sorted ascending.
pub fn maximum_independent_set(g: &Graph, budget: &mut Budget) -> Verdict<Vec<Vertex>> {
    let mut s = Search {
        g,
        best: Vec::new(),
        current: Vec::new(),
    };
    let r = s.go(g.vertex_set(), budget);
    r.map(|()| {
        let mut best = s.best;
        best.sort_unstable();
        best
    })
    .into()
}

/// Exact independence number.
pub fn independence_number(g: &Graph, budget: &mut Budget) -> Verdict<usize> {
    maximum_independent_set(g, budget).map(|s| s.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, copies, cycle, path, petersen};

    fn alpha(g: &Graph) -> usize {
        independence_number(g, &mut Budget::default()).expect_decided("alpha")
    }

    #[test]
    fn examples() {
        assert_eq!(alpha(&cycle(5)), 2);
        assert_eq!(alpha(&path(6)), 3);
        assert_eq!(alpha(&copies(&complete(4), 3)), 3);
        assert_eq!(alpha(&petersen()), 4);
        assert_eq!(alpha(&Graph::empty(0)), 0);
        assert_eq!(alpha(&Graph::empty(5)), 5);
    }

    #[test]
    fn returned_set_is_independent() {
        let g = petersen();
        let s = maximum_independent_set(&g, &mut Budget::default()).expect_decided("mis");
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                assert!(!g.has_edge(u, v));
            }
        }
    }
}
