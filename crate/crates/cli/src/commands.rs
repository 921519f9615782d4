use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use ramsey_goodness::families::FamilySpec;
use ramsey_goodness::invariants::{
    bandwidth, chromatic_number, has_path, independence_number, longest_cycle, optimal_coloring_min_class, sigma,
};
use ramsey_goodness::pipeline::{
    erdos_gallai, make_params, parse_ratio, run_pipeline, EgOutcome, ParamSpec, PipelineOptions, PipelineOutcome,
};
use ramsey_goodness::ramsey::{goodness_check, ramsey_number, SearchMode, SearchOptions};
use ramsey_goodness::two_coloring::burr_witness;
use ramsey_goodness::{graph6, Budget, Error, Graph, TwoColoring, Verdict, Vertex};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{Builder, Failure, Report, DECIDED, NEGATIVE, UNDECIDED};
use crate::{Cli, Command, Mode};

/// A family spec when the argument contains `:` (never a graph6 byte),
/// otherwise graph6.
pub fn load_graph(arg: &str) -> Result<Graph, Error> {
    if arg.contains(':') {
        Ok(FamilySpec::from_str(arg)?.build())
    } else {
        Ok(graph6::decode(arg)?)
    }
}

fn graph_input(b: &mut Builder, key: &str, arg: &str) -> Result<Graph, Failure> {
    let g = load_graph(arg)?;
    b.input(key, json!({ "arg": arg, "graph6": graph6::encode(&g), "order": g.order() }));
    Ok(g)
}

fn verdict_json<T: Serialize>(v: &Verdict<T>) -> Value {
    match v {
        Verdict::Decided(x) => json!(x),
        Verdict::Undecided(e) => json!({ "undecided": e }),
    }
}

fn search_options(mode: Mode, limit: u64) -> SearchOptions {
    SearchOptions {
        mode: match mode {
            Mode::Auto => SearchMode::Auto,
            Mode::Dfs => SearchMode::Dfs,
            Mode::Canonical => SearchMode::Canonical,
        },
        node_limit: limit,
        ..SearchOptions::default()
    }
}

/// A longest path, trying lengths from the largest component down.
fn longest_path(g: &Graph, budget: &mut Budget) -> Verdict<Option<Vec<Vertex>>> {
    let top = g.components().iter().map(Vec::len).max().unwrap_or(0);
    for m in (1..=top).rev() {
        match has_path(g, m, budget) {
            Verdict::Decided(Some(p)) => return Verdict::Decided(Some(p)),
            Verdict::Decided(None) => {}
            Verdict::Undecided(e) => return Verdict::Undecided(e),
        }
    }
    Verdict::Decided(None)
}

pub fn run(cli: &Cli, argv: Vec<String>) -> Result<Report, Failure> {
    let limit = cli.budget;
    let mut b = Builder::new(argv, limit);
    match &cli.cmd {
        Command::Invariants { graph } => {
            let g = graph_input(&mut b, "graph", graph)?;
            let mut used = 0;
            let mut all = true;
            let mut solve = |f: &mut dyn FnMut(&mut Budget) -> Value| {
                let mut budget = Budget::new(limit);
                let v = f(&mut budget);
                used += budget.used();
                all &= v.get("undecided").is_none();
                v
            };
            let chi = solve(&mut |bu| verdict_json(&chromatic_number(&g, bu)));
            let sig = solve(&mut |bu| verdict_json(&sigma(&g, bu)));
            let alpha = solve(&mut |bu| verdict_json(&independence_number(&g, bu)));
            let bw = solve(&mut |bu| verdict_json(&bandwidth(&g, bu)));
            let cyc = solve(&mut |bu| verdict_json(&longest_cycle(&g, bu)));
            let path = solve(&mut |bu| verdict_json(&longest_path(&g, bu)));
            let data = json!({
                "n": g.order(),
                "e": g.edge_count(),
                "max_degree": g.max_degree(),
                "min_degree": g.min_degree(),
                "chi": chi,
                "sigma": sig,
                "alpha": alpha,
                "bandwidth": bw,
                "longest_cycle": cyc,
                "longest_path": path,
                "equal_clique_union": g.is_equal_clique_union(),
            });
            let (verdict, code) = if all { ("decided", DECIDED) } else { ("undecided", UNDECIDED) };
            Ok(b.finish(verdict, code, used, data))
        }
        Command::Ramsey { f, g, cap, mode } => {
            let f = graph_input(&mut b, "F", f)?;
            let g = graph_input(&mut b, "G", g)?;
            b.input("cap", json!(cap));
            let res = ramsey_number(&f, &g, *cap, &search_options(*mode, limit))?;
            let (verdict, code) = match (res.value, res.exhausted) {
                (Some(_), _) => ("decided", DECIDED),
                (None, Some(_)) => ("undecided", UNDECIDED),
                (None, None) => ("above_cap", UNDECIDED),
            };
            let used = res.nodes;
            Ok(b.finish(verdict, code, used, json!(res)))
        }
        Command::Goodness { f, g, cap, mode } => {
            let f = graph_input(&mut b, "F", f)?;
            let g = graph_input(&mut b, "G", g)?;
            b.input("cap", json!(cap));
            match goodness_check(&f, &g, *cap, &search_options(*mode, limit))? {
                Verdict::Undecided(e) => Ok(b.finish("undecided", UNDECIDED, e.limit, json!({ "undecided": e }))),
                Verdict::Decided(rep) => {
                    let (verdict, code) = match rep.is_good {
                        Some(true) => ("good", DECIDED),
                        Some(false) => ("not_good", NEGATIVE),
                        None => ("undecided", UNDECIDED),
                    };
                    let summary = match rep.exact.value {
                        Some(r) => format!("{}, R={r}, bound={}", verdict.replace('_', " "), rep.burr_bound),
                        None => format!("undecided, R>{}, bound={}", rep.exact.largest_witness.unwrap_or(0), rep.burr_bound),
                    };
                    let used = rep.exact.nodes;
                    let mut data = json!(rep);
                    data["summary"] = json!(summary);
                    Ok(b.finish(verdict, code, used, data))
                }
            }
        }
        Command::Witness { f, g, out } => {
            let f = graph_input(&mut b, "F", f)?;
            let g = graph_input(&mut b, "G", g)?;
            let mut budget = Budget::new(limit);
            match burr_witness(&f, &g, &mut budget)? {
                Verdict::Undecided(e) => Ok(b.finish("undecided", UNDECIDED, budget.used(), json!({ "undecided": e }))),
                Verdict::Decided(col) => {
                    let text = col.to_text();
                    if let Some(path) = out {
                        std::fs::write(path, &text).map_err(|e| Failure::io(path, e))?;
                    }
                    let data = json!({
                        "order": col.order(),
                        "red_graph6": graph6::encode(col.red()),
                        "red_edges": col.red().edge_count(),
                        "coloring": text,
                    });
                    Ok(b.finish("witness", DECIDED, budget.used(), data))
                }
            }
        }
        Command::EgCheck { h, c } => {
            let h = graph_input(&mut b, "H", h)?;
            b.input("c", json!(c));
            let mut budget = Budget::new(limit);
            match erdos_gallai(&h, *c, &mut budget)? {
                Verdict::Undecided(e) => Ok(b.finish("undecided", UNDECIDED, budget.used(), json!({ "undecided": e }))),
                Verdict::Decided(out) => {
                    let verdict = match out {
                        EgOutcome::LongCycle { .. } => "long_cycle",
                        EgOutcome::EdgeBound { .. } => "edge_bound",
                    };
                    Ok(b.finish(verdict, DECIDED, budget.used(), json!(out)))
                }
            }
        }
        Command::Pipeline {
            coloring,
            g,
            eps,
            beta,
            delta,
            strict,
            host_order,
            seed,
            embed_limit,
            fallback,
            trace,
            out,
        } => {
            let text = if coloring == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::io(Path::new("-"), e))?;
                s
            } else {
                std::fs::read_to_string(coloring).map_err(|e| Failure::io(Path::new(coloring), e))?
            };
            let col = TwoColoring::parse(&text)?;
            b.input(
                "coloring",
                json!({ "path": coloring, "order": col.order(), "graph6": col.to_graph6() }),
            );
            let g = graph_input(&mut b, "G", g)?;
            let mut budget = Budget::new(limit);
            let classes = match optimal_coloring_min_class(&g, &mut budget) {
                Verdict::Decided(c) => c,
                Verdict::Undecided(e) => {
                    return Ok(b.finish("undecided", UNDECIDED, budget.used(), json!({ "undecided": e })));
                }
            };
            let beta = beta
                .as_deref()
                .map(|s| s.trim().parse::<num_bigint::BigUint>().map_err(|_| Error::Number(s.to_string())))
                .transpose()?;
            let spec = ParamSpec {
                delta: delta.unwrap_or(g.max_degree().max(2)),
                eps: parse_ratio(eps)?,
                n: g.order(),
                k: classes.k(),
                sigma: classes.min_class_size(),
                strict: *strict,
                beta,
                big_n: if *strict { *host_order } else { Some(host_order.unwrap_or(col.order())) },
            };
            b.input(
                "params",
                json!({ "eps": eps, "beta": spec.beta.as_ref().map(ToString::to_string), "delta": spec.delta,
                        "strict": strict, "N": spec.big_n, "seed": seed, "embed_limit": embed_limit, "fallback": fallback }),
            );
            let params = make_params(&spec)?;
            let opts = PipelineOptions {
                node_limit: limit,
                embed_limit: *embed_limit,
                seed: *seed,
                fallback: *fallback,
                ..PipelineOptions::default()
            };
            let res = run_pipeline(&col, &g, &params, &opts)?;
            if let Some(path) = trace {
                let t = serde_json::to_string_pretty(&res.trace).expect("trace serializes");
                std::fs::write(path, t + "\n").map_err(|e| Failure::io(path, e))?;
            }
            let (verdict, code) = match &res.outcome {
                PipelineOutcome::Embedding(e) => {
                    if let Some(path) = out {
                        let mut table = String::from("# vertex host\n");
                        for (v, h) in e.map.iter().enumerate() {
                            table.push_str(&format!("{v} {h}\n"));
                        }
                        std::fs::write(path, table).map_err(|e| Failure::io(path, e))?;
                    }
                    ("embedding", DECIDED)
                }
                PipelineOutcome::RedPath { .. } => ("red_path", NEGATIVE),
                PipelineOutcome::Diagnostic { .. } => ("diagnostic", NEGATIVE),
                PipelineOutcome::Undecided { .. } => ("undecided", UNDECIDED),
            };
            let used = res.nodes_used + budget.used();
            Ok(b.finish(verdict, code, used, json!(res)))
        }
    }
}
