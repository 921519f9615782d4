mod common;

use proptest::prelude::*;
use ramsey_goodness::canon::{all_graphs, is_isomorphic};
use ramsey_goodness::families::{complete, path, path_power};
use ramsey_goodness::invariants::{bandwidth, chromatic_number, independence_number, sigma};
use ramsey_goodness::pipeline::{
    blue_multipartite, extract_longest_cycles, make_params, parse_ratio, partition_plan, prune_heavy_red, ParamSpec,
    PlanInput,
};
use ramsey_goodness::ramsey::{arrows, burr_bound, ArrowVerdict, SearchOptions};
use ramsey_goodness::two_coloring::contains_mono;
use ramsey_goodness::{graph6, Budget, Color, Graph, TwoColoring};

fn b() -> Budget {
    Budget::default()
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
            Graph::from_edges(n, edges.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Red graph: a few disjoint cliques plus sparse noise, on at most 14 vertices.
fn clustered(max_n: usize) -> impl Strategy<Value = Graph> {
    (prop::collection::vec(3usize..7, 1..4), 0usize..4, prop::collection::vec((0usize..64, 0usize..64), 0..6)).prop_map(
        move |(sizes, extra, noise)| {
            let parts: Vec<Graph> = sizes.iter().map(|&s| complete(s)).collect();
            let refs: Vec<&Graph> = parts.iter().collect();
            let mut g = Graph::disjoint_union(&[&Graph::disjoint_union(&refs), &Graph::empty(extra)]);
            let n = g.order();
            if n > max_n {
                g = g.induced(&(0..max_n).collect::<Vec<_>>());
            }
            let n = g.order().min(n);
            for (u, v) in noise {
                let (u, v) = (u % n, v % n);
                if u != v {
                    g.add_edge(u, v);
                }
            }
            g
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips(g in graph(12)) {
        let s = graph6::encode(&g);
        let h = graph6::decode(&s).unwrap();
        prop_assert_eq!(&h, &g);
        prop_assert_eq!(graph6::encode(&h), s);
    }

    #[test]
    fn coloring_files_round_trip(g in graph(12)) {
        let col = TwoColoring::from_red(g);
        prop_assert_eq!(&TwoColoring::parse(&col.to_text()).unwrap(), &col);
        prop_assert_eq!(&TwoColoring::parse(&col.to_graph6()).unwrap(), &col);
    }

    #[test]
    fn complement_is_an_involution(g in graph(10)) {
        prop_assert_eq!(&g.complement().complement(), &g);
        let col = TwoColoring::from_red(g);
        prop_assert_eq!(&col.swapped().swapped(), &col);
        let swapped = col.swapped();
        prop_assert_eq!(swapped.red(), &col.blue_graph());
    }

    #[test]
    fn class_sizes_sandwich(g in graph(8)) {
        prop_assume!(g.order() > 0);
        let n = g.order();
        let chi = chromatic_number(&g, &mut b()).expect_decided("chi");
        let s = sigma(&g, &mut b()).expect_decided("sigma");
        let a = independence_number(&g, &mut b()).expect_decided("alpha");
        // σ ≤ n/χ ≤ α, in integers
        prop_assert!(s * chi <= n);
        prop_assert!(n <= a * chi);
    }

    #[test]
    fn alpha_floor_iff_equal_cliques(g in graph(8)) {
        prop_assume!(g.order() > 0);
        let a = independence_number(&g, &mut b()).expect_decided("alpha");
        let tight = a * (g.max_degree() + 1) == g.order();
        prop_assert_eq!(tight, g.is_equal_clique_union());
    }

    #[test]
    fn red_embeddings_survive_more_red(g in graph(8), extra in prop::collection::vec((0usize..8, 0usize..8), 0..8)) {
        let col = TwoColoring::from_red(g.clone());
        let pattern = path(3);
        prop_assume!(g.order() >= 3);
        let before = contains_mono(&col, &pattern, Color::Red, &mut b()).unwrap().expect_decided("mono");
        let mut more = g.clone();
        for (u, v) in extra {
            let (u, v) = (u % g.order(), v % g.order());
            if u != v { more.add_edge(u, v); }
        }
        let after = contains_mono(&TwoColoring::from_red(more), &pattern, Color::Red, &mut b()).unwrap().expect_decided("mono");
        prop_assert!(before.is_none() || after.is_some());
    }

    #[test]
    fn canonical_form_respects_isomorphism(g in graph(8), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert!(is_isomorphic(&g, &g.permuted(&perm)));
    }

    #[test]
    fn decomposition_invariants(red in clustered(14), eps in 1u32..20) {
        let n_host = red.order();
        let col = TwoColoring::from_red(red.clone());
        let d = extract_longest_cycles(&red, 3, &mut b(), false).unwrap();
        prop_assert!(d.certified);
        let mut seen = vec![false; n_host];
        let mut residual: Vec<usize> = (0..n_host).collect();
        for (i, c) in d.cycles.iter().enumerate() {
            prop_assert!(common::is_cycle(&red, c));
            prop_assert!(c.len() >= d.min_len);
            if i > 0 { prop_assert!(d.cycles[i - 1].len() >= c.len()); }
            // longest in the residual graph, by the subset oracle
            let h = red.induced(&residual);
            prop_assert_eq!(common::circumference(&h), c.len());
            for &v in c {
                prop_assert!(!std::mem::replace(&mut seen[v], true));
            }
            residual.retain(|v| !c.contains(v));
        }
        prop_assert!(common::circumference(&red.induced(&residual)) < d.min_len);
        let w: Vec<usize> = (0..n_host).filter(|&v| !seen[v]).collect();
        prop_assert_eq!(&d.w, &w);

        let eps = parse_ratio(&format!("{eps}/100")).unwrap();
        let split = prune_heavy_red(&red, &d.w, 1, &eps).unwrap();
        let mut both = split.w0.clone();
        both.extend(&split.w_prime);
        both.sort_unstable();
        prop_assert_eq!(&both, &d.w);

        // removals ≤ β per cycle and full cross-blueness
        let beta = num_bigint::BigUint::from(n_host);
        let wit = blue_multipartite(&col, &d, &beta).unwrap().unwrap();
        for i in 0..wit.parts.len() {
            for j in i + 1..wit.parts.len() {
                for &x in &wit.parts[i] {
                    for &y in &wit.parts[j] {
                        prop_assert!(col.is_blue(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn plans_keep_q_sets_apart(sizes in prop::collection::vec(4usize..9, 2..4), extra in 0usize..8, beta in 0u32..3) {
        // red: cliques of the given sizes plus isolated vertices; G: copies of K_3
        let parts: Vec<Graph> = sizes.iter().map(|&s| complete(s)).collect();
        let refs: Vec<&Graph> = parts.iter().collect();
        let red = Graph::disjoint_union(&[&Graph::disjoint_union(&refs), &Graph::empty(extra)]);
        let col = TwoColoring::from_red(red.clone());
        let g = ramsey_goodness::families::copies(&complete(3), 2);
        let mut budget = b();
        let classes = ramsey_goodness::invariants::optimal_coloring_min_class(&g, &mut budget).expect_decided("classes");
        let params = make_params(&ParamSpec {
            delta: 2, eps: parse_ratio("0.01").unwrap(), n: 6, k: 3, sigma: 2, strict: false,
            beta: Some(beta.into()), big_n: Some(red.order()),
        }).unwrap();
        let d = extract_longest_cycles(&red, 3, &mut budget, false).unwrap();
        let split = prune_heavy_red(&red, &d.w, params.ceil_eps_n(1), &params.eps).unwrap();
        let wit = blue_multipartite(&col, &d, &params.beta).unwrap().unwrap();
        let input = PlanInput { col: &col, decomp: &d, witness: &wit, split: &split, classes: &classes, params: &params, alpha: Some(2) };
        if let Ok(plan) = partition_plan(&input, &mut budget).unwrap().expect_decided("plan") {
            for j in &plan.gamma {
                prop_assert!(plan.lambda.contains(j));
            }
            let mut all: Vec<usize> = plan.q.iter().flatten().copied().collect();
            let len = all.len();
            all.sort_unstable();
            all.dedup();
            prop_assert_eq!(all.len(), len);
            prop_assert!(plan.checks.iter().all(|c| c.holds));
            for (t, &a) in plan.targets.iter().zip(&plan.class_sizes) {
                prop_assert!(t.len() >= a);
            }
        }
    }

    #[test]
    fn strict_beta_is_ceiling_of_inverse_seventh_power(m in 32u32..400) {
        let p = make_params(&ParamSpec {
            delta: 2, eps: parse_ratio(&format!("1/{m}")).unwrap(), n: 10, k: 2, sigma: 5, strict: true,
            beta: None, big_n: None,
        }).unwrap();
        prop_assert_eq!(p.beta, num_bigint::BigUint::from(m).pow(7));
    }
}

#[test]
fn sandwich_and_clique_union_exhaustive_to_eight() {
    for n in 1..=8 {
        for g in all_graphs(n) {
            let chi = chromatic_number(&g, &mut b()).expect_decided("chi");
            let s = sigma(&g, &mut b()).expect_decided("sigma");
            let a = independence_number(&g, &mut b()).expect_decided("alpha");
            assert!(s * chi <= n && n <= a * chi, "{g:?}");
            assert_eq!(a * (g.max_degree() + 1) == n, g.is_equal_clique_union(), "{g:?}");
        }
    }
}

#[test]
fn path_power_bandwidth() {
    for n in 2..=8 {
        for k in 1..n {
            assert_eq!(bandwidth(&path_power(n, k), &mut b()).expect_decided("bw"), k);
        }
    }
}

#[test]
fn arrowing_is_monotone_and_witnesses_verify() {
    let opts = SearchOptions::default();
    let pairs = [(path(3), path(4)), (path(4), complete(3)), (path(4), path(4)), (complete(3), complete(3))];
    for (f, g) in &pairs {
        let mut arrowed = false;
        for n in 1..=8 {
            let res = arrows(n, f, g, &opts).unwrap();
            match res.verdict {
                ArrowVerdict::Arrows => arrowed = true,
                ArrowVerdict::Witness(col) => {
                    assert!(!arrowed, "arrowing not monotone at n={n}");
                    for (pat, color) in [(f, Color::Red), (g, Color::Blue)] {
                        if pat.order() <= n {
                            assert!(contains_mono(&col, pat, color, &mut b()).unwrap().expect_decided("mono").is_none());
                        }
                    }
                }
                ArrowVerdict::Undecided(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn ramsey_numbers_respect_the_lower_bound() {
    let opts = SearchOptions::default();
    for nf in 2..=4 {
        for f in ramsey_goodness::canon::connected_graphs(nf) {
            for ng in 1..=3 {
                for g in all_graphs(ng) {
                    let bound = burr_bound(&f, &g, &mut b());
                    let Ok(bound) = bound else { continue };
                    let bound = bound.expect_decided("bound");
                    let r = ramsey_goodness::ramsey::ramsey_number(&f, &g, 12, &opts).unwrap();
                    if let Some(r) = r.value {
                        assert!(r >= bound, "{f:?} {g:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn trees_are_clique_good() {
    let opts = SearchOptions::default();
    for nt in 2..=5 {
        for t in ramsey_goodness::canon::connected_graphs(nt).into_iter().filter(|t| t.edge_count() == nt - 1) {
            for p in [3, 4] {
                let want = (p - 1) * (nt - 1) + 1;
                let r = ramsey_goodness::ramsey::ramsey_number(&t, &complete(p), 16, &opts).unwrap();
                assert_eq!(r.value, Some(want), "tree {t:?} p={p}");
            }
        }
    }
}
