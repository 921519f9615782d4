use num_bigint::BigUint;
use ramsey_goodness::families::{complete, copies, path};
use ramsey_goodness::pipeline::{
    make_params, parse_ratio, run_pipeline, ParamSpec, PipelineOptions, PipelineOutcome, PipelineParams, PlanCase, Stage,
};
use ramsey_goodness::two_coloring::burr_witness;
use ramsey_goodness::{Budget, Graph, TwoColoring};

fn params(g: &Graph, delta: usize, eps: &str, beta: u32, big_n: usize) -> PipelineParams {
    let mut b = Budget::default();
    let chi = ramsey_goodness::invariants::chromatic_number(g, &mut b).expect_decided("chi");
    let sigma = ramsey_goodness::invariants::sigma(g, &mut b).expect_decided("sigma");
    make_params(&ParamSpec {
        delta,
        eps: parse_ratio(eps).unwrap(),
        n: g.order(),
        k: chi,
        sigma,
        strict: false,
        beta: Some(BigUint::from(beta)),
        big_n: Some(big_n),
    })
    .unwrap()
}

fn cliques_plus_isolated(clique: usize, count: usize, isolated: usize) -> TwoColoring {
    TwoColoring::from_red(Graph::disjoint_union(&[&copies(&complete(clique), count), &Graph::empty(isolated)]))
}

fn check_embedding(col: &TwoColoring, g: &Graph, out: &PipelineOutcome) -> PlanCase {
    let e = out.embedding().unwrap_or_else(|| panic!("expected an embedding, got {out:?}"));
    let mut seen = vec![false; col.order()];
    for &x in &e.map {
        assert!(!std::mem::replace(&mut seen[x], true));
    }
    for (u, v) in g.edges() {
        assert!(col.is_blue(e.map[u], e.map[v]));
    }
    e.case
}

#[test]
fn three_k4_embeds_through_case_two() {
    let g = copies(&complete(4), 3);
    let col = cliques_plus_isolated(11, 3, 4);
    let p = params(&g, 3, "0.01", 3, 37);
    let res = run_pipeline(&col, &g, &p, &PipelineOptions::default()).unwrap();
    assert_eq!(check_embedding(&col, &g, &res.outcome), PlanCase::Case2);
    let plan = res.plan.unwrap();
    assert_eq!(plan.lambda, vec![1, 2, 3]);
    assert!(plan.gamma.is_empty());
    assert_eq!(plan.h, Some(1));
    assert_eq!(res.burr_bound, 36);
    assert_eq!(res.rounded_bound, 39);
    let stages: Vec<Stage> = res.trace.records.iter().map(|r| r.stage).collect();
    assert_eq!(stages.first(), Some(&Stage::Parameters));
    assert_eq!(stages.last(), Some(&Stage::Embedding));
    assert!(res.trace.records.iter().all(|r| r.certified && r.input_hash.len() == 64));
}

#[test]
fn triangle_unions_embed() {
    for (g, col, beta) in [
        (copies(&complete(3), 2), cliques_plus_isolated(5, 2, 3), 1),
        (copies(&complete(3), 3), cliques_plus_isolated(8, 2, 4), 2),
    ] {
        let p = params(&g, 2, "0.01", beta, col.order());
        let res = run_pipeline(&col, &g, &p, &PipelineOptions::default()).unwrap();
        check_embedding(&col, &g, &res.outcome);
    }
}

#[test]
fn no_leftover_slack_falls_into_case_one_and_fails() {
    // |W| = σ: Case 1, but U = W leaves nothing for Q_k
    let g = copies(&complete(4), 3);
    let col = cliques_plus_isolated(11, 3, 3);
    let p = params(&g, 3, "0.01", 3, 36);
    let res = run_pipeline(&col, &g, &p, &PipelineOptions::default()).unwrap();
    assert!(matches!(res.outcome, PipelineOutcome::Diagnostic { stage: Stage::PartitionPlan, .. }), "{:?}", res.outcome);
}

#[test]
fn red_forest_takes_the_shortcut() {
    let g = copies(&complete(4), 3);
    let paths: Vec<Graph> = (0..3).map(|_| path(9)).collect();
    let refs: Vec<&Graph> = paths.iter().collect();
    let col = TwoColoring::from_red(Graph::disjoint_union(&refs));
    let p = params(&g, 3, "0.2", 1, 27);
    let res = run_pipeline(&col, &g, &p, &PipelineOptions::default()).unwrap();
    assert_eq!(check_embedding(&col, &g, &res.outcome), PlanCase::Shortcut);
    assert_eq!(res.decomposition.unwrap().r(), 0);
}

#[test]
fn complete_red_graph_returns_a_red_path() {
    let g = copies(&complete(3), 2);
    let col = TwoColoring::from_red(complete(13));
    let p = params(&g, 2, "0.01", 1, 13);
    let res = run_pipeline(&col, &g, &p, &PipelineOptions::default()).unwrap();
    match res.outcome {
        PipelineOutcome::RedPath { path } => assert_eq!(path.len(), 6),
        other => panic!("{other:?}"),
    }
}

#[test]
fn burr_witness_is_never_embedded() {
    let g = copies(&complete(3), 2);
    let col = burr_witness(&path(6), &g, &mut Budget::default()).unwrap().expect_decided("witness");
    assert_eq!(col.order(), 11);
    let p = params(&g, 2, "0.01", 1, 11);
    let res = run_pipeline(&col, &g, &p, &PipelineOptions::default()).unwrap();
    assert!(res.outcome.embedding().is_none());
    assert!(matches!(res.outcome, PipelineOutcome::Diagnostic { .. }));
}

#[test]
fn mismatched_parameters_are_rejected() {
    let g = copies(&complete(3), 2);
    let col = cliques_plus_isolated(5, 2, 3);
    let p = params(&g, 2, "0.01", 1, 12);
    assert!(run_pipeline(&col, &g, &p, &PipelineOptions::default()).is_err());
    let p = params(&complete(3), 2, "0.01", 1, 13);
    assert!(run_pipeline(&col, &g, &p, &PipelineOptions::default()).is_err());
}

#[test]
fn runs_are_deterministic() {
    let g = copies(&complete(4), 3);
    let col = cliques_plus_isolated(11, 3, 4);
    let p = params(&g, 3, "0.01", 3, 37);
    let a = run_pipeline(&col, &g, &p, &PipelineOptions::default()).unwrap();
    let b = run_pipeline(&col, &g, &p, &PipelineOptions::default()).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
