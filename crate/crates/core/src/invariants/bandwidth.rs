//! Exact bandwidth: the least `k` admitting a linear order in which every
//! edge joins vertices at distance at most `k`.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::budget::{Budget, Exhausted, Verdict};
use crate::graph::{Graph, Vertex};

/// Failed-state memo entries kept per feasibility test.
const MEMO_CAP: usize = 1 << 20;

fn eccentricity(g: &Graph, s: Vertex) -> usize {
    let mut dist = vec![usize::MAX; g.order()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    let mut far = 0;
    while let Some(u) = q.pop_front() {
        far = far.max(dist[u]);
        for w in g.neighbors(u).ones() {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    far
}

struct Layout<'a> {
    g: &'a Graph,
    k: usize,
    n: usize,
    pos: Vec<usize>,
    order: Vec<Vertex>,
    placed: FixedBitSet,
    failed: HashSet<(Vec<u32>, Vec<Vertex>)>,
}

impl Layout<'_> {
    fn deadlines_ok(&self) -> bool {
        let p = self.order.len();
        // vertices older than the window must have no unplaced neighbors left;
        // by induction only the one that just left the window needs a look
        let lo = p.saturating_sub(self.k + 1);
        let mut deadlines: Vec<usize> = Vec::new();
        let mut seen = FixedBitSet::with_capacity(self.g.order());
        for &u in &self.order[lo..] {
            for w in self.g.neighbors(u).ones() {
                if !self.placed.contains(w) && !seen.put(w) {
                    let d = self
                        .g
                        .neighbors(w)
                        .ones()
                        .filter(|&x| self.placed.contains(x))
                        .map(|x| self.pos[x] + self.k)
                        .min()
                        .expect("w has a placed neighbor");
                    deadlines.push(d);
                }
            }
        }
        deadlines.sort_unstable();
        deadlines.iter().enumerate().all(|(i, &d)| d >= p + i)
    }

    fn key(&self) -> (Vec<u32>, Vec<Vertex>) {
        let lo = self.order.len().saturating_sub(self.k);
        (self.placed.as_slice().iter().map(|&b| b as u32).collect(), self.order[lo..].to_vec())
    }

    fn go(&mut self, comp: &[Vertex], budget: &mut Budget) -> Result<bool, Exhausted> {
        budget.tick()?;
        if self.order.len() == self.n {
            return Ok(true);
        }
        if !self.deadlines_ok() {
            return Ok(false);
        }
        let key = self.key();
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let p = self.order.len();
        for &v in comp {
            if self.placed.contains(v) {
                continue;
            }
            self.placed.insert(v);
            self.pos[v] = p;
            self.order.push(v);
            let ok = self.go(comp, budget)?;
            if ok {
                return Ok(true);
            }
            self.order.pop();
            self.placed.set(v, false);
        }
        if self.failed.len() < MEMO_CAP {
            self.failed.insert(key);
        }
        Ok(false)
    }
}

/// A layout of the component `comp` with bandwidth at most `k`.
fn layout_within(
    g: &Graph,
    comp: &[Vertex],
    k: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<Vertex>>, Exhausted> {
    let mut l = Layout {
        g,
        k,
        n: comp.len(),
        pos: vec![0; g.order()],
        order: Vec::with_capacity(comp.len()),
        placed: FixedBitSet::with_capacity(g.order()),
        failed: HashSet::new(),
    };
    Ok(l.go(comp, budget)?.then_some(l.order))
}

/// Bandwidth together with an optimal layout (`layout[i]` is the vertex
/// at position `i`).
pub fn bandwidth_layout(g: &Graph, budget: &mut Budget) -> Verdict<(usize, Vec<Vertex>)> {
    let run = |budget: &mut Budget| -> Result<(usize, Vec<Vertex>), Exhausted> {
        let mut width = 0;
        let mut layout = Vec::with_capacity(g.order());
        for comp in g.components() {
            if comp.len() == 1 {
                layout.push(comp[0]);
                continue;
            }
            let max_deg = comp.iter().map(|&v| g.degree(v)).max().unwrap_or(0);
            let diam = comp.iter().map(|&v| eccentricity(g, v)).max().unwrap_or(1).max(1);
            let lower = max_deg.div_ceil(2).max((comp.len() - 1).div_ceil(diam)).max(width);
            let mut k = lower;
            loop {
                if let Some(order) = layout_within(g, &comp, k, budget)? {
                    width = k;
                    layout.extend(order);
                    break;
                }
                k += 1;
            }
        }
        Ok((width, layout))
    };
    run(budget).into()
}

pub fn bandwidth(g: &Graph, budget: &mut Budget) -> Verdict<usize> {
    bandwidth_layout(g, budget).map(|(k, _)| k)
}

/// Largest distance between the positions of adjacent vertices.
pub fn layout_width(g: &Graph, layout: &[Vertex]) -> usize {
    let mut pos = vec![0; g.order()];
    for (i, &v) in layout.iter().enumerate() {
        pos[v] = i;
    }
    g.edges().map(|(u, v)| pos[u].abs_diff(pos[v])).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, copies, cycle, path, path_power, petersen, star};

    fn bw(g: &Graph) -> usize {
        let (k, layout) = bandwidth_layout(g, &mut Budget::default()).expect_decided("bandwidth");
        assert_eq!(layout.len(), g.order());
        assert!(layout_width(g, &layout) <= k);
        k
    }

    #[test]
    fn examples() {
        assert_eq!(bw(&Graph::empty(4)), 0);
        assert_eq!(bw(&path(1)), 0);
        assert_eq!(bw(&path(7)), 1);
        assert_eq!(bw(&cycle(6)), 2);
        assert_eq!(bw(&complete(5)), 4);
        assert_eq!(bw(&star(6)), 3);
        assert_eq!(bw(&path_power(9, 3)), 3);
        assert_eq!(bw(&copies(&complete(4), 3)), 3);
        assert_eq!(bw(&petersen()), 5);
    }
}
