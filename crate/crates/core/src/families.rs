//! Named graph families and the textual family-spec syntax used by the CLI.
//!
//! A spec is a `+`-separated disjoint union of terms, each `[count*]name[:args]`:
//!
//! ```text
//! path:6            P_6
//! 3*complete:4      three disjoint K_4
//! complete:3+complete:2
//! multipartite:3,1  K_{3,1}
//! pathpower:4,2     P_4^2
//! random:20,3,7     degree-capped random graph, n=20, cap 3, seed 7
//! gnp:10,0.5,1      G(n=10, p=0.5), seed 1
//! petersen:
//! ```

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Upper bound on the order of any graph built from a spec.
pub const MAX_FAMILY_ORDER: usize = 4096;

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

/// `C_n` for `n >= 3`; smaller `n` gives the path on `n` vertices.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    path_power(n, n.saturating_sub(1).max(1))
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
}

/// `K_{n_1,...,n_r}`; part `i` occupies a contiguous index block.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut owner = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        owner.extend(std::iter::repeat(i).take(p));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if owner[u] != owner[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// `P_n^k`: `{i, j}` is an edge iff `0 < |i - j| <= k`.
pub fn path_power(n: usize, k: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n.min(i + k + 1) {
            g.add_edge(i, j);
        }
    }
    g
}

pub fn petersen() -> Graph {
    Graph::from_edges(
        10,
        [
            (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
        ],
    )
    .expect("valid Petersen graph")
}

pub fn copies(g: &Graph, count: usize) -> Graph {
    Graph::disjoint_union(&vec![g; count])
}

/// Random graph with maximum degree at most `cap`: candidate pairs are
/// visited in a seeded random order and each is kept with probability `p`
/// when both endpoints still have spare degree.
pub fn random_degree_capped(n: usize, cap: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut deg = vec![0usize; n];
    let mut g = Graph::empty(n);
    for (u, v) in pairs {
        let keep = rng.gen_bool(p.clamp(0.0, 1.0));
        if keep && deg[u] < cap && deg[v] < cap {
            g.add_edge(u, v);
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    g
}

/// Erdős–Rényi `G(n, p)` from a seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Empty(usize),
    Star(usize),
    Multipartite(Vec<usize>),
    PathPower(usize, usize),
    Petersen,
    Random { n: usize, cap: usize, seed: u64 },
    Gnp { n: usize, p: f64, seed: u64 },
}

impl Family {
    pub fn order(&self) -> usize {
        match self {
            Family::Path(n)
            | Family::Cycle(n)
            | Family::Complete(n)
            | Family::Empty(n)
            | Family::PathPower(n, _) => *n,
            Family::Star(l) => l + 1,
            Family::Multipartite(parts) => parts.iter().sum(),
            Family::Petersen => 10,
            Family::Random { n, .. } | Family::Gnp { n, .. } => *n,
        }
    }

    pub fn build(&self) -> Graph {
        match self {
            Family::Path(n) => path(*n),
            Family::Cycle(n) => cycle(*n),
            Family::Complete(n) => complete(*n),
            Family::Empty(n) => Graph::empty(*n),
            Family::Star(l) => star(*l),
            Family::Multipartite(parts) => complete_multipartite(parts),
            Family::PathPower(n, k) => path_power(*n, *k),
            Family::Petersen => petersen(),
            Family::Random { n, cap, seed } => random_degree_capped(*n, *cap, 1.0, *seed),
            Family::Gnp { n, p, seed } => gnp(*n, *p, *seed),
        }
    }
}

/// A parsed family spec: a disjoint union of `(count, family)` terms.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub terms: Vec<(usize, Family)>,
}

impl FamilySpec {
    pub fn order(&self) -> usize {
        self.terms.iter().map(|(c, f)| c * f.order()).sum()
    }

    pub fn build(&self) -> Graph {
        let mut parts = Vec::new();
        for (count, fam) in &self.terms {
            let g = fam.build();
            parts.extend(std::iter::repeat(g).take(*count));
        }
        Graph::disjoint_union(&parts.iter().collect::<Vec<_>>())
    }
}

impl std::str::FromStr for FamilySpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let err = |msg: String| Error::FamilySpec {
            spec: spec.to_string(),
            msg,
        };
        let mut terms = Vec::new();
        for raw in spec.trim().split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(err("empty term".into()));
            }
            let (count, rest) = match term.split_once('*') {
                Some((c, rest)) => (parse_usize(c.trim()).map_err(|m| err(m))?, rest.trim()),
                None => (1, term),
            };
            let (name, args) = match rest.split_once(':') {
                Some((name, args)) => (name.trim(), args.trim()),
                None => (rest, ""),
            };
            let args: Vec<&str> = if args.is_empty() {
                Vec::new()
            } else {
                args.split(',').map(str::trim).collect()
            };
            let fam = parse_family(name, &args).map_err(err)?;
            terms.push((count, fam));
        }
        let mut total = 0usize;
        for (count, fam) in &terms {
            total = count
                .checked_mul(fam.order())
                .and_then(|x| x.checked_add(total))
                .filter(|&t| t <= MAX_FAMILY_ORDER)
                .ok_or_else(|| err(format!("order exceeds {MAX_FAMILY_ORDER}")))?;
        }
        Ok(FamilySpec { terms })
    }
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.parse::<usize>()
        .map_err(|_| format!("`{s}` is not a nonnegative integer"))
}

fn parse_family(name: &str, args: &[&str]) -> Result<Family, String> {
    let ints = || args.iter().map(|a| parse_usize(a)).collect::<Result<Vec<_>, _>>();
    let arity = |want: usize| {
        if args.len() == want {
            Ok(())
        } else {
            Err(format!("`{name}` takes {want} argument(s), got {}", args.len()))
        }
    };
    let cap = |n: usize| {
        if n > MAX_FAMILY_ORDER {
            Err(format!("order {n} exceeds {MAX_FAMILY_ORDER}"))
        } else {
            Ok(n)
        }
    };
    Ok(match name {
        "path" | "P" => {
            arity(1)?;
            Family::Path(cap(ints()?[0])?)
        }
        "cycle" | "C" => {
            arity(1)?;
            let n = cap(ints()?[0])?;
            if n < 3 {
                return Err("cycle needs at least 3 vertices".into());
            }
            Family::Cycle(n)
        }
        "complete" | "K" => {
            arity(1)?;
            Family::Complete(cap(ints()?[0])?)
        }
        "empty" => {
            arity(1)?;
            Family::Empty(cap(ints()?[0])?)
        }
        "star" => {
            arity(1)?;
            Family::Star(cap(ints()?[0])?)
        }
        "multipartite" => {
            if args.is_empty() {
                return Err("multipartite needs at least one part".into());
            }
            let parts = ints()?;
            let mut total = 0usize;
            for &p in &parts {
                total = cap(total.saturating_add(p))?;
            }
            Family::Multipartite(parts)
        }
        "pathpower" => {
            arity(2)?;
            let v = ints()?;
            if v[1] == 0 {
                return Err("pathpower needs k >= 1".into());
            }
            Family::PathPower(cap(v[0])?, v[1])
        }
        "petersen" => {
            arity(0)?;
            Family::Petersen
        }
        "random" => {
            arity(3)?;
            let n = cap(parse_usize(args[0])?)?;
            let c = parse_usize(args[1])?;
            let seed = args[2]
                .parse::<u64>()
                .map_err(|_| format!("bad seed `{}`", args[2]))?;
            Family::Random { n, cap: c, seed }
        }
        "gnp" => {
            arity(3)?;
            let n = cap(parse_usize(args[0])?)?;
            let p = args[1]
                .parse::<f64>()
                .ok()
                .filter(|p| (0.0..=1.0).contains(p))
                .ok_or_else(|| format!("bad probability `{}`", args[1]))?;
            let seed = args[2]
                .parse::<u64>()
                .map_err(|_| format!("bad seed `{}`", args[2]))?;
            Family::Gnp { n, p, seed }
        }
        other => return Err(format!("unknown family `{other}`")),
    })
}
