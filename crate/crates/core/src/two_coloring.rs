//! Red/blue colorings of complete graphs, monochromatic containment, and the
//! blocked-clique lower-bound construction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Exhausted, Verdict};
use crate::error::{precondition, Error, Result};
use crate::families::{complete, copies};
use crate::graph::{Graph, Vertex};
use crate::graph6;
use crate::invariants::coloring::optimal_coloring_min_class;
use crate::subgraph::{find_subgraph_inner, is_embedding};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// A 2-coloring of the edges of `K_N`, stored as its red graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoColoring {
    red: Graph,
}

impl TwoColoring {
    pub fn from_red(red: Graph) -> Self {
        TwoColoring { red }
    }

    pub fn all_blue(n: usize) -> Self {
        TwoColoring { red: Graph::empty(n) }
    }

    /// The order `N` of the underlying complete graph.
    pub fn order(&self) -> usize {
        self.red.order()
    }

    pub fn red(&self) -> &Graph {
        &self.red
    }

    pub fn blue_graph(&self) -> Graph {
        self.red.complement()
    }

    pub fn graph_of(&self, color: Color) -> Graph {
        match color {
            Color::Red => self.red.clone(),
            Color::Blue => self.blue_graph(),
        }
    }

    pub fn color_of(&self, u: Vertex, v: Vertex) -> Color {
        assert!(u != v, "no color on a loop");
        if self.red.has_edge(u, v) {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn is_blue(&self, u: Vertex, v: Vertex) -> bool {
        u != v && !self.red.has_edge(u, v)
    }

    /// Red and blue swapped.
    pub fn swapped(&self) -> Self {
        TwoColoring { red: self.blue_graph() }
    }

    /// Line-oriented text form: `N <n>` then one sorted `u v` line per red edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("N {}\n", self.order());
        for (u, v) in self.red.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// The red graph in graph6 (which carries `N` as its order).
    pub fn to_graph6(&self) -> String {
        graph6::encode(&self.red)
    }

    /// Parses [`to_text`](Self::to_text) output (blank lines and `#` comments
    /// allowed, edges in any order) or a single graph6 line for the red graph.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, msg: &str| Error::ColoringFormat { line, msg: msg.to_string() };
        let Some((first_no, first)) = lines.next() else {
            return Err(bad(0, "empty coloring"));
        };
        // a graph6 line may itself start with `N` (order 15) but has no spaces
        let Some(rest) = first.strip_prefix("N").filter(|r| r.starts_with(char::is_whitespace)) else {
            if let Some((no, _)) = lines.next() {
                return Err(bad(no, "trailing content after graph6 line"));
            }
            return Ok(TwoColoring { red: graph6::decode(first)? });
        };
        let n: usize = rest
            .trim()
            .parse()
            .map_err(|_| bad(first_no, "expected `N <order>`"))?;
        if n > crate::families::MAX_FAMILY_ORDER {
            return Err(bad(first_no, "order too large"));
        }
        let mut red = Graph::empty(n);
        for (no, line) in lines {
            let mut parts = line.split_whitespace();
            let mut num = || -> Result<usize> {
                parts
                    .next()
                    .ok_or_else(|| bad(no, "expected `u v`"))?
                    .parse()
                    .map_err(|_| bad(no, "vertex is not a nonnegative integer"))
            };
            let (u, v) = (num()?, num()?);
            if parts.next().is_some() {
                return Err(bad(no, "expected exactly two vertices"));
            }
            if u >= n || v >= n {
                return Err(bad(no, "vertex out of range"));
            }
            if u == v {
                return Err(bad(no, "self-loop"));
            }
            if red.has_edge(u, v) {
                return Err(bad(no, "duplicate edge"));
            }
            red.add_edge(u, v);
        }
        Ok(TwoColoring { red })
    }
}

/// Certificate that a coloring contains `pattern` in one color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoEmbedding {
    pub pattern: Graph,
    pub color: Color,
    pub map: Vec<Vertex>,
}

impl MonoEmbedding {
    pub fn is_valid_for(&self, col: &TwoColoring) -> bool {
        is_embedding(&self.pattern, &col.graph_of(self.color), &self.map)
    }
}

pub(crate) fn find_mono(
    col: &TwoColoring,
    pattern: &Graph,
    color: Color,
    budget: &mut Budget,
) -> Result<Option<MonoEmbedding>, Exhausted> {
    let host = col.graph_of(color);
    Ok(find_subgraph_inner(pattern, &host, budget)?.map(|map| MonoEmbedding {
        pattern: pattern.clone(),
        color,
        map,
    }))
}

/// A copy of `pattern` all of whose edges have color `color`, if any.
pub fn contains_mono(
    col: &TwoColoring,
    pattern: &Graph,
    color: Color,
    budget: &mut Budget,
) -> Result<Verdict<Option<MonoEmbedding>>> {
    if pattern.order() > col.order() {
        return Err(precondition(format!(
            "pattern has {} vertices but the coloring only {}",
            pattern.order(),
            col.order()
        )));
    }
    Ok(find_mono(col, pattern, color, budget).into())
}

/// `Some(embedding)` if the coloring contains a red `f` or a blue `g`
/// (red is checked first), `None` if it avoids both.
pub fn find_red_or_blue(
    col: &TwoColoring,
    f: &Graph,
    g: &Graph,
    budget: &mut Budget,
) -> Result<Option<MonoEmbedding>, Exhausted> {
    if let Some(m) = find_mono(col, f, Color::Red, budget)? {
        return Ok(Some(m));
    }
    find_mono(col, g, Color::Blue, budget)
}

/// `(χ(G)−1)(|F|−1)+σ(G)` along with χ and σ, after checking that `F` is
/// connected and `|F| ≥ σ(G)`.
pub(crate) fn burr_parameters(f: &Graph, g: &Graph, budget: &mut Budget) -> Result<Verdict<(usize, usize, usize)>> {
    if f.order() == 0 || !f.is_connected() {
        return Err(precondition("F must be a connected graph on at least one vertex"));
    }
    if g.order() == 0 {
        return Err(precondition("G must have at least one vertex"));
    }
    let coloring = match optimal_coloring_min_class(g, budget) {
        Verdict::Decided(c) => c,
        Verdict::Undecided(e) => return Ok(Verdict::Undecided(e)),
    };
    let (chi, sigma) = (coloring.k(), coloring.min_class_size());
    if f.order() < sigma {
        return Err(precondition(format!("|F| = {} is below sigma(G) = {sigma}", f.order())));
    }
    Ok(Verdict::Decided(((chi - 1) * (f.order() - 1) + sigma, chi, sigma)))
}

/// The blocked-clique coloring on one vertex fewer than the Burr bound: red
/// is `(χ(G)−1)` disjoint copies of `K_{|F|−1}` plus one `K_{σ(G)−1}`.
/// It is checked to contain no red `F` and no blue `G` before it is returned.
pub fn burr_witness(f: &Graph, g: &Graph, budget: &mut Budget) -> Result<Verdict<TwoColoring>> {
    let (_, chi, sigma) = match burr_parameters(f, g, budget)? {
        Verdict::Decided(p) => p,
        Verdict::Undecided(e) => return Ok(Verdict::Undecided(e)),
    };
    let blocks = copies(&complete(f.order() - 1), chi - 1);
    let red = Graph::disjoint_union(&[&blocks, &complete(sigma - 1)]);
    let col = TwoColoring::from_red(red);
    match find_red_or_blue(&col, f, g, budget) {
        Ok(None) => Ok(Verdict::Decided(col)),
        Ok(Some(m)) => Err(Error::Internal(format!(
            "blocked-clique coloring on {} vertices contains a {} copy of the pattern",
            col.order(),
            m.color
        ))),
        Err(e) => Ok(Verdict::Undecided(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, path};

    #[test]
    fn burr_examples() {
        let mut b = Budget::default();
        let w = burr_witness(&path(4), &path(4), &mut b).unwrap().expect_decided("w");
        assert_eq!(w.order(), 4);
        assert_eq!(w.red().edge_count(), 3);
        let w = burr_witness(&path(4), &complete(3), &mut b).unwrap().expect_decided("w");
        assert_eq!(w.order(), 6);
        assert_eq!(w.red(), &copies(&complete(3), 2));
        let w = burr_witness(&path(5), &cycle(5), &mut b).unwrap().expect_decided("w");
        assert_eq!(w.order(), 8);
        assert_eq!(w.red(), &copies(&complete(4), 2));
    }

    #[test]
    fn burr_preconditions() {
        let mut b = Budget::default();
        let disconnected = Graph::empty(2);
        assert!(matches!(burr_witness(&disconnected, &path(3), &mut b), Err(Error::Precondition(_))));
        // sigma(empty graph on 4) = 4 > |P_3|
        assert!(matches!(burr_witness(&path(3), &Graph::empty(4), &mut b), Err(Error::Precondition(_))));
    }

    #[test]
    fn text_round_trip_and_strictness() {
        let col = TwoColoring::from_red(cycle(5));
        assert_eq!(TwoColoring::parse(&col.to_text()).unwrap(), col);
        assert_eq!(TwoColoring::parse(&col.to_graph6()).unwrap(), col);
        let fifteen = TwoColoring::from_red(path(15));
        assert!(fifteen.to_graph6().starts_with('N'));
        assert_eq!(TwoColoring::parse(&fifteen.to_graph6()).unwrap(), fifteen);
        assert_eq!(TwoColoring::parse("# c\nN 3\n2 1 # red\n\n").unwrap().red().edge_count(), 1);
        for bad in ["", "N x", "N 3\n0 3", "N 3\n1 1", "N 3\n0 1\n1 0", "N 3\n0", "N 3\n0 1 2", "N 3\n-1 2"] {
            assert!(TwoColoring::parse(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn mono_containment_examples() {
        let mut b = Budget::default();
        let col = TwoColoring::from_red(Graph::disjoint_union(&[&complete(3), &Graph::empty(1)]));
        assert_eq!(contains_mono(&col, &path(4), Color::Red, &mut b).unwrap().expect_decided("r"), None);
        assert_eq!(contains_mono(&col, &path(4), Color::Blue, &mut b).unwrap().expect_decided("b"), None);
        let m = contains_mono(&col, &path(3), Color::Blue, &mut b).unwrap().expect_decided("b").unwrap();
        assert!(m.is_valid_for(&col));
        assert!(contains_mono(&col, &path(5), Color::Red, &mut b).is_err());
    }
}
