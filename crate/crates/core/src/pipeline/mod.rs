//! Constructive blue embedding of a bounded-degree graph `G` in a coloring
//! whose red graph has no long path.
//!
//! Stages run in data-dependency order: red path check → ordered longest red
//! cycles → long-cycle/edge-count dichotomy on the leftover → heavy-red
//! pruning → blue multipartite structure → common blue neighborhoods →
//! partition plan → embedding. Each stage appends a [`trace::StageRecord`];
//! the first stage that cannot proceed ends the run with a diagnostic.

pub mod decomposition;
pub mod embed;
pub mod multipartite;
pub mod neighborhood;
pub mod params;
pub mod plan;
pub mod trace;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::{Budget, Exhausted};
use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::invariants::{has_path, independence_number, optimal_coloring_min_class};
use crate::two_coloring::TwoColoring;

pub use decomposition::{erdos_gallai, extract_longest_cycles, prune_heavy_red, CycleDecomposition, EgOutcome, HeavyRedSplit};
pub use embed::{embed_blue, EmbedFailure};
pub use multipartite::{blue_multipartite, MaximalityViolation, MultipartiteFailure, MultipartiteWitness};
pub use neighborhood::{common_blue_neighborhood, test_subsets, NeighborhoodReport, NeighborhoodViolation};
pub use params::{host_order_formula, make_params, parse_ratio, ParamSpec, PipelineParams, Requirement};
pub use plan::{partition_plan, Inequality, PartitionPlan, PlanCase, PlanFailure, PlanInput};
pub use trace::{Stage, StageRecord, Trace};

pub const DEFAULT_EMBED_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Node budget shared by the exact solvers of one run.
    pub node_limit: u64,
    /// Placement budget of the embedding search.
    pub embed_limit: u64,
    /// Seed for sampled neighborhood subsets.
    pub seed: u64,
    /// Subsets sampled per cycle when `|W| > 12`.
    pub samples: usize,
    /// Fall back to the heuristic cycle finder when the exact one runs out.
    pub fallback: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            node_limit: crate::budget::DEFAULT_NODE_LIMIT,
            embed_limit: DEFAULT_EMBED_LIMIT,
            seed: 0,
            samples: 1000,
            fallback: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    /// `map[v]` is the host vertex of `v ∈ V(G)`.
    pub map: Vec<Vertex>,
    /// Host set of each class `A_1 … A_k`.
    pub class_targets: Vec<Vec<Vertex>>,
    pub case: PlanCase,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PipelineOutcome {
    /// The red graph contains `P_n`.
    RedPath { path: Vec<Vertex> },
    Embedding(Embedding),
    /// The first stage that could not proceed, with its details.
    Diagnostic { stage: Stage, detail: Value },
    Undecided { stage: Stage, exhausted: Exhausted },
}

impl PipelineOutcome {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            PipelineOutcome::Embedding(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineResult {
    pub params: PipelineParams,
    pub outcome: PipelineOutcome,
    pub trace: Trace,
    /// `(k−1)(n−1) + σ`, the exact lower bound.
    pub burr_bound: usize,
    /// `(k−1)n + σ`, the form the asymptotic statement uses.
    pub rounded_bound: usize,
    pub decomposition: Option<CycleDecomposition>,
    pub witness: Option<MultipartiteWitness>,
    pub plan: Option<PartitionPlan>,
    /// Neighborhood subsets examined, and violations found.
    pub neighborhood_checks: usize,
    pub neighborhood_violations: Vec<NeighborhoodViolation>,
    pub nodes_used: u64,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Runs every stage on `col` for the target graph `g`.
pub fn run_pipeline(col: &TwoColoring, g: &Graph, params: &PipelineParams, opts: &PipelineOptions) -> Result<PipelineResult> {
    let big_n = col.order();
    let n = g.order();
    if n != params.n {
        return Err(precondition(format!("|G| = {n} but the parameters say n = {}", params.n)));
    }
    if big_n != params.big_n {
        return Err(precondition(format!(
            "coloring has order {big_n} but the parameters say N = {}",
            params.big_n
        )));
    }
    if g.max_degree() > params.delta {
        return Err(precondition(format!("Δ(G) = {} exceeds Δ = {}", g.max_degree(), params.delta)));
    }
    let mut budget = Budget::new(opts.node_limit);
    let mut trace = Trace::default();
    let mut res = PipelineResult {
        params: params.clone(),
        outcome: PipelineOutcome::Diagnostic {
            stage: Stage::Parameters,
            detail: Value::Null,
        },
        trace: Trace::default(),
        burr_bound: 0,
        rounded_bound: 0,
        decomposition: None,
        witness: None,
        plan: None,
        neighborhood_checks: 0,
        neighborhood_violations: Vec::new(),
        nodes_used: 0,
    };
    macro_rules! finish {
        ($outcome:expr) => {{
            res.outcome = $outcome;
            res.trace = trace;
            res.nodes_used = budget.used();
            return Ok(res);
        }};
    }
    macro_rules! exact {
        ($stage:expr, $v:expr) => {
            match $v {
                crate::budget::Verdict::Decided(x) => x,
                crate::budget::Verdict::Undecided(e) => {
                    trace.push($stage, &(), false, [], "budget exhausted");
                    finish!(PipelineOutcome::Undecided { stage: $stage, exhausted: e })
                }
            }
        };
    }

    // parameters: k and σ are recomputed from G
    let classes = exact!(Stage::Parameters, optimal_coloring_min_class(g, &mut budget));
    let (k, sigma) = (classes.k(), classes.min_class_size());
    if (k, sigma) != (params.k, params.sigma) {
        return Err(precondition(format!(
            "G has k = {k}, σ = {sigma} but the parameters say k = {}, σ = {}",
            params.k, params.sigma
        )));
    }
    let alpha = independence_number(g, &mut budget).decided();
    res.burr_bound = (k.max(1) - 1) * n.saturating_sub(1) + sigma;
    res.rounded_bound = (k.max(1) - 1) * n + sigma;
    trace.push(
        Stage::Parameters,
        &(crate::graph6::encode(g), params.to_string()),
        true,
        [
            ("k", json!(k)),
            ("sigma", json!(sigma)),
            ("alpha", json!(alpha)),
            ("burr_bound", json!(res.burr_bound)),
            ("rounded_bound", json!(res.rounded_bound)),
        ],
        params.to_string(),
    );
    let col_hash = trace::hash_of(&col.to_graph6());

    // red P_n
    if n >= 1 {
        let path = exact!(Stage::RedPath, has_path(col.red(), n, &mut budget));
        let outcome = if path.is_some() { "red path found" } else { "no red path" };
        trace.push(Stage::RedPath, &col_hash, true, [("n", json!(n))], outcome);
        if let Some(path) = path {
            finish!(PipelineOutcome::RedPath { path });
        }
    }

    // ordered longest cycles
    let min_len = params.min_cycle_len();
    let decomp = extract_longest_cycles(col.red(), min_len, &mut budget, opts.fallback)?;
    trace.push(
        Stage::CycleExtraction,
        &(&col_hash, min_len),
        decomp.certified,
        [
            ("min_len", json!(min_len)),
            ("c", json!(decomp.lengths())),
            ("r", json!(decomp.r())),
            ("W", json!(decomp.w.len())),
        ],
        format!("{} cycles", decomp.r()),
    );
    res.decomposition = Some(decomp.clone());
    if !decomp.certified && !opts.fallback {
        let e = Exhausted { limit: budget.limit() };
        finish!(PipelineOutcome::Undecided {
            stage: Stage::CycleExtraction,
            exhausted: e
        });
    }

    // dichotomy on red[W]
    if min_len <= decomp.w.len() {
        let h = col.red().induced(&decomp.w);
        let eg = exact!(Stage::ErdosGallai, erdos_gallai(&h, min_len, &mut budget)?);
        let long = matches!(eg, EgOutcome::LongCycle { .. });
        trace.push(
            Stage::ErdosGallai,
            &(&col_hash, &decomp.w, min_len),
            decomp.certified,
            [("W", json!(decomp.w.len())), ("c", json!(min_len)), ("edges", json!(h.edge_count()))],
            to_value(&eg).to_string(),
        );
        if long && decomp.certified {
            return Err(Error::Internal("a certified leftover set contains a long red cycle".into()));
        }
    }

    // heavy-red pruning
    let threshold = params.ceil_eps_n(1);
    let split = prune_heavy_red(col.red(), &decomp.w, threshold, &params.eps)?;
    trace.push(
        Stage::HeavyRedPruning,
        &(&col_hash, &decomp.w, threshold),
        decomp.certified,
        [
            ("threshold", json!(threshold)),
            ("W", json!(decomp.w.len())),
            ("W_prime", json!(split.w_prime.len())),
            ("W0", json!(split.w0.len())),
            ("guarantee_holds", json!(split.guarantee_holds)),
        ],
        if split.guarantee_holds { "|W′| ≥ (1−ε)|W|" } else { "|W′| < (1−ε)|W|" },
    );

    // blue multipartite structure
    let witness = match blue_multipartite(col, &decomp, &params.beta)? {
        Ok(w) => w,
        Err(f) => {
            trace.push(Stage::BlueMultipartite, &(&col_hash, decomp.lengths()), decomp.certified, [], "failed");
            finish!(PipelineOutcome::Diagnostic {
                stage: Stage::BlueMultipartite,
                detail: to_value(&f)
            });
        }
    };
    trace.push(
        Stage::BlueMultipartite,
        &(&col_hash, decomp.lengths(), params.beta.to_string()),
        decomp.certified,
        [
            ("V", json!(witness.parts.iter().map(Vec::len).collect::<Vec<_>>())),
            ("removed", json!(witness.removals())),
            ("notes", json!(witness.notes.len())),
        ],
        "complete blue multipartite between parts",
    );
    res.witness = Some(witness.clone());

    // common blue neighborhoods
    if !decomp.w.is_empty() && decomp.r() > 0 {
        let subsets = test_subsets(&decomp.w, params.delta, opts.samples, opts.seed);
        let jobs: Vec<(usize, &Vec<Vertex>)> = (0..decomp.r()).flat_map(|i| subsets.iter().map(move |s| (i, s))).collect();
        let reports = jobs
            .par_iter()
            .map(|&(i, s)| common_blue_neighborhood(col, &decomp, s, i, params.delta))
            .collect::<Result<Vec<_>>>()?;
        res.neighborhood_checks = reports.len();
        res.neighborhood_violations = reports.into_iter().flat_map(|r| r.violations).collect();
        let bad = res.neighborhood_violations.len();
        trace.push(
            Stage::CommonNeighborhood,
            &(&col_hash, &decomp.w, opts.seed),
            decomp.certified,
            [("subsets", json!(subsets.len())), ("checks", json!(res.neighborhood_checks)), ("violations", json!(bad))],
            format!("{bad} violations"),
        );
        if bad > 0 && decomp.certified {
            finish!(PipelineOutcome::Diagnostic {
                stage: Stage::CommonNeighborhood,
                detail: to_value(&res.neighborhood_violations[0])
            });
        }
    }

    // partition plan
    let input = PlanInput {
        col,
        decomp: &decomp,
        witness: &witness,
        split: &split,
        classes: &classes,
        params,
        alpha,
    };
    let plan = match exact!(Stage::PartitionPlan, partition_plan(&input, &mut budget)?) {
        Ok(p) => p,
        Err(f) => {
            trace.push(Stage::PartitionPlan, &(&col_hash, params.to_string()), decomp.certified, [], "infeasible");
            finish!(PipelineOutcome::Diagnostic {
                stage: Stage::PartitionPlan,
                detail: to_value(&f)
            });
        }
    };
    trace.push(
        Stage::PartitionPlan,
        &(&col_hash, params.to_string()),
        decomp.certified,
        [
            ("case", to_value(&plan.case)),
            ("U", json!(plan.u.len())),
            ("cbar", json!(plan.cbar)),
            ("Lambda", json!(plan.lambda)),
            ("Gamma", json!(plan.gamma)),
            ("h", json!(plan.h)),
            ("Q", json!(plan.q.iter().map(Vec::len).collect::<Vec<_>>())),
            ("W0", json!(plan.w0.len())),
            ("W_prime", json!(plan.w_prime.len())),
        ],
        format!("{} inequalities hold", plan.checks.len()),
    );
    res.plan = Some(plan.clone());

    // embedding
    match embed_blue(col, g, &classes, &plan.targets, opts.embed_limit)? {
        Ok(map) => {
            trace.push(
                Stage::Embedding,
                &(&col_hash, &plan.targets),
                true,
                [("n", json!(n))],
                "verified blue embedding",
            );
            finish!(PipelineOutcome::Embedding(Embedding {
                map,
                class_targets: plan.targets.clone(),
                case: plan.case,
            }));
        }
        Err(f) => {
            trace.push(Stage::Embedding, &(&col_hash, &plan.targets), true, [], "failed");
            finish!(PipelineOutcome::Diagnostic {
                stage: Stage::Embedding,
                detail: to_value(&f)
            });
        }
    }
}
