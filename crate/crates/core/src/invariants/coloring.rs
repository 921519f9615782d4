//! Chromatic number, `sigma` (the smallest possible color class over all
//! optimal colorings) and an optimal coloring realizing it.

use crate::budget::{Budget, Exhausted, Verdict};
use crate::graph::{Graph, ProperColoring, Vertex};

/// Size of a clique grown greedily from every start vertex; a lower bound on
/// the chromatic number.
fn greedy_clique_bound(g: &Graph) -> usize {
    let n = g.order();
    let mut best = usize::from(n > 0);
    for s in 0..n {
        let mut cand = g.neighbors(s).clone();
        let mut size = 1;
        while let Some(v) = cand
            .ones()
            .max_by_key(|&v| (g.neighbors(v).intersection_count(&cand), std::cmp::Reverse(v)))
        {
            size += 1;
            cand.intersect_with(g.neighbors(v));
        }
        best = best.max(size);
    }
    best
}

/// DSATUR greedy coloring; returns the color vector and number of colors.
fn dsatur_greedy(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.order();
    let mut color = vec![usize::MAX; n];
    let mut used = 0;
    for _ in 0..n {
        let v = pick_dsatur(g, &color).expect("uncolored vertex remains");
        let mut c = 0;
        while g.neighbors(v).ones().any(|u| color[u] == c) {
            c += 1;
        }
        color[v] = c;
        used = used.max(c + 1);
    }
    (color, used)
}

/// Uncolored vertex of maximum saturation, then maximum uncolored degree,
/// then smallest index.
fn pick_dsatur(g: &Graph, color: &[usize]) -> Option<Vertex> {
    let mut best: Option<(usize, usize, Vertex)> = None;
    for v in 0..g.order() {
        if color[v] != usize::MAX {
            continue;
        }
        let mut seen: Vec<usize> = g
            .neighbors(v)
            .ones()
            .filter_map(|u| (color[u] != usize::MAX).then_some(color[u]))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        let sat = seen.len();
        let free_deg = g.neighbors(v).ones().filter(|&u| color[u] == usize::MAX).count();
        let better = match best {
            None => true,
            Some((bs, bd, _)) => (sat, free_deg) > (bs, bd),
        };
        if better {
            best = Some((sat, free_deg, v));
        }
    }
    best.map(|(_, _, v)| v)
}

/// Backtracking test for a proper coloring with at most `k` colors.
fn colorable(g: &Graph, k: usize, budget: &mut Budget) -> Result<Option<Vec<usize>>, Exhausted> {
    fn go(
        g: &Graph,
        k: usize,
        color: &mut Vec<usize>,
        used: usize,
        left: usize,
        budget: &mut Budget,
    ) -> Result<bool, Exhausted> {
        if left == 0 {
            return Ok(true);
        }
        budget.tick()?;
        let v = pick_dsatur(g, color).expect("uncolored vertex remains");
        // colors beyond `used` are interchangeable, try only the first fresh one
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).ones().any(|u| color[u] == c) {
                continue;
            }
            color[v] = c;
            if go(g, k, color, used.max(c + 1), left - 1, budget)? {
                return Ok(true);
            }
            color[v] = usize::MAX;
        }
        Ok(false)
    }
    let mut color = vec![usize::MAX; g.order()];
    Ok(go(g, k, &mut color, 0, g.order(), budget)?.then_some(color))
}

/// Exact chromatic number by DSATUR branch-and-bound between the greedy
/// clique bound and the greedy coloring.
pub fn chromatic_number(g: &Graph, budget: &mut Budget) -> Verdict<usize> {
    chromatic_inner(g, budget).into()
}

fn chromatic_inner(g: &Graph, budget: &mut Budget) -> Result<usize, Exhausted> {
    if g.order() == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let lower = greedy_clique_bound(g);
    let (_, upper) = dsatur_greedy(g);
    for k in lower..upper {
        if colorable(g, k, budget)?.is_some() {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Enumerates all proper colorings using exactly `k` colors (colors in order
/// of first use along the vertex order) and keeps one with the smallest
/// minimum class. The first coloring reaching the optimum is returned.
fn min_class_coloring(g: &Graph, k: usize, budget: &mut Budget) -> Result<Vec<usize>, Exhausted> {
    struct State<'a> {
        g: &'a Graph,
        k: usize,
        color: Vec<usize>,
        sizes: Vec<usize>,
        best: usize,
        best_color: Option<Vec<usize>>,
    }

    fn go(st: &mut State, v: usize, used: usize, budget: &mut Budget) -> Result<(), Exhausted> {
        if st.best == 1 {
            return Ok(());
        }
        let n = st.g.order();
        if v == n {
            if used == st.k {
                let m = *st.sizes.iter().min().expect("k >= 1");
                if m < st.best {
                    st.best = m;
                    st.best_color = Some(st.color.clone());
                }
            }
            return Ok(());
        }
        budget.tick()?;
        // every still-unused color needs at least one of the remaining vertices
        if st.k - used > n - v {
            return Ok(());
        }
        // classes only grow, so the final minimum is at least the current one
        if used == st.k && st.sizes.iter().min().copied().unwrap_or(0) >= st.best {
            return Ok(());
        }
        for c in 0..st.k.min(used + 1) {
            if st.g.neighbors(v).ones().any(|u| u < v && st.color[u] == c) {
                continue;
            }
            st.color[v] = c;
            st.sizes[c] += 1;
            go(st, v + 1, used.max(c + 1), budget)?;
            st.sizes[c] -= 1;
            st.color[v] = usize::MAX;
        }
        Ok(())
    }

    let mut st = State {
        g,
        k,
        color: vec![usize::MAX; g.order()],
        sizes: vec![0; k],
        best: usize::MAX,
        best_color: None,
    };
    go(&mut st, 0, 0, budget)?;
    Ok(st.best_color.expect("a k-coloring exists when k is the chromatic number"))
}

/// A proper coloring with exactly `chi(G)` colors whose smallest class is as
/// small as possible, classes sorted by size (largest first).
pub fn optimal_coloring_min_class(g: &Graph, budget: &mut Budget) -> Verdict<ProperColoring> {
    let run = |budget: &mut Budget| -> Result<ProperColoring, Exhausted> {
        let k = chromatic_inner(g, budget)?;
        if k == 0 {
            return Ok(ProperColoring::new(g, Vec::new()).expect("empty coloring"));
        }
        let colors = min_class_coloring(g, k, budget)?;
        Ok(ProperColoring::from_colors(g, &colors, k)
            .expect("enumerated coloring is proper")
            .sorted_by_size())
    };
    run(budget).into()
}

/// Minimum size of a color class over all proper colorings with exactly
/// `chi(G)` colors (0 for the graph on no vertices).
pub fn sigma(g: &Graph, budget: &mut Budget) -> Verdict<usize> {
    optimal_coloring_min_class(g, budget).map(|c| c.min_class_size())
}
