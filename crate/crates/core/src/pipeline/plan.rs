//! Assignment of the color classes of `G` to target vertex sets.
//!
//! Classes are `A_1, …, A_k` with `a_1 ≥ … ≥ a_k = σ`. Class `A_i`, `i < k`,
//! is hosted in `V_i ∪ Q_i` and `A_k` in `Q_k`, where the `Q` sets are carved
//! out of `U` (everything outside `C^(1..k−1)`), whole cycles among
//! `C^(k..r)` at a time, so that no two `Q` sets share one of those cycles.
//! Every inequality the chosen case relies on is evaluated exactly and
//! recorded; the first one that fails aborts the plan.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::budget::{Budget, Verdict};
use crate::error::{Error, Result};
use crate::graph::{ProperColoring, Vertex};
use crate::invariants::cycles::longest_cycle_inner;
use crate::two_coloring::TwoColoring;

use super::decomposition::{CycleDecomposition, HeavyRedSplit};
use super::multipartite::MultipartiteWitness;
use super::params::{floor_half, ratio, PipelineParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanCase {
    /// `|W| ≥ n + 2Δεn`: all of `G` goes into `W′`.
    Shortcut,
    /// `Λ = ∅`: `A_i → V_i`, `A_k → U`.
    Trivial,
    /// `|W| < σ + 2Δεn`.
    Case1,
    /// `|W| ≥ σ + 2Δεn`.
    Case2,
}

/// `lhs ≥ rhs` (or `lhs > rhs` when `relation` says so), evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub holds: bool,
}

fn show(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        let f = x.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
            / x.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        format!("{}/{} (≈{f:.4})", x.numer(), x.denom())
    }
}

fn ineq(name: impl Into<String>, lhs: &BigRational, rhs: &BigRational) -> Inequality {
    Inequality {
        name: name.into(),
        lhs: show(lhs),
        relation: ">=",
        rhs: show(rhs),
        holds: lhs >= rhs,
    }
}

fn ineq_strict(name: impl Into<String>, lhs: &BigRational, rhs: &BigRational) -> Inequality {
    Inequality {
        relation: ">",
        holds: lhs > rhs,
        ..ineq(name, lhs, rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionPlan {
    pub case: PlanCase,
    /// `a_1 ≥ … ≥ a_k`.
    pub class_sizes: Vec<usize>,
    /// `η_i = ⌊(c_i − 2β)/2⌋` for each cycle.
    pub eta: Vec<String>,
    /// 1-based indices `j ≤ k−1` with `a_j > η_j`.
    pub lambda: Vec<usize>,
    /// 1-based indices `j ≤ k−1` with `a_j > c_j − β`.
    pub gamma: Vec<usize>,
    /// Case 2 pivot, 1-based.
    pub h: Option<usize>,
    /// `Q_1 … Q_k`, each ascending.
    pub q: Vec<Vec<Vertex>>,
    pub u: Vec<Vertex>,
    pub w0: Vec<Vertex>,
    pub w_prime: Vec<Vertex>,
    /// Length of a longest red cycle inside `U` (0 if none).
    pub cbar: usize,
    /// Host set for each class (index `i` is `A_{i+1}`), ascending.
    pub targets: Vec<Vec<Vertex>>,
    /// Every inequality evaluated, in order; all hold.
    pub checks: Vec<Inequality>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlanFailure {
    /// Fewer than `k−1` long cycles although `|W| < n + 2Δεn`.
    SmallW { r: usize, k: usize },
    Capacity {
        violated: Inequality,
        /// `α(G) > n/4`: the plan's arithmetic assumes otherwise.
        outside_hypothesis: bool,
        checked: Vec<Inequality>,
    },
}

pub struct PlanInput<'a> {
    pub col: &'a TwoColoring,
    pub decomp: &'a CycleDecomposition,
    pub witness: &'a MultipartiteWitness,
    pub split: &'a HeavyRedSplit,
    pub classes: &'a ProperColoring,
    pub params: &'a PipelineParams,
    /// `α(G)` when known; otherwise the largest class is used as a lower bound.
    pub alpha: Option<usize>,
}

struct Builder {
    checks: Vec<Inequality>,
    outside: bool,
}

impl Builder {
    /// Records the inequality; `Err` with the failure if it does not hold.
    fn need(&mut self, name: impl Into<String>, lhs: &BigRational, rhs: &BigRational) -> std::result::Result<(), PlanFailure> {
        let i = ineq(name, lhs, rhs);
        let holds = i.holds;
        if !holds {
            return Err(PlanFailure::Capacity {
                violated: i,
                outside_hypothesis: self.outside,
                checked: std::mem::take(&mut self.checks),
            });
        }
        self.checks.push(i);
        Ok(())
    }
}

fn big(x: usize) -> BigRational {
    ratio(x)
}

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v
}

/// Builds the plan. `Ok(Verdict::Undecided)` only when computing `c̄` runs
/// out of budget.
pub fn partition_plan(inp: &PlanInput, budget: &mut Budget) -> Result<Verdict<std::result::Result<PartitionPlan, PlanFailure>>> {
    let p = inp.params;
    let n_host = inp.col.order();
    let (n, k, delta) = (p.n, inp.classes.k(), p.delta);
    let a = inp.classes.sizes();
    if a.windows(2).any(|w| w[0] < w[1]) {
        return Err(crate::error::precondition("classes must be sorted by size, largest first"));
    }
    let sigma = *a.last().unwrap_or(&0);
    let cycles = &inp.decomp.cycles;
    let r = cycles.len();
    let c: Vec<usize> = inp.decomp.lengths();
    let w = &inp.decomp.w;
    let w_prime = inp.split.w_prime.clone();
    let w0 = inp.split.w0.clone();
    let alpha_lb = inp.alpha.unwrap_or(a.first().copied().unwrap_or(0));
    let mut b = Builder {
        checks: Vec::new(),
        outside: 4 * alpha_lb > n,
    };
    let beta = BigRational::from_integer(p.beta_int());
    let beta_int = p.beta_int();
    let eta: Vec<BigInt> = c.iter().map(|&ci| floor_half(&(BigInt::from(ci) - 2 * &beta_int))).collect();
    let base = |case, h, q: Vec<Vec<Vertex>>, u: Vec<Vertex>, cbar, targets, lambda, gamma, checks| PartitionPlan {
        case,
        class_sizes: a.clone(),
        eta: eta.iter().map(ToString::to_string).collect(),
        lambda,
        gamma,
        h,
        q,
        u,
        w0: w0.clone(),
        w_prime: w_prime.clone(),
        cbar,
        targets,
        checks,
    };

    // shortcut
    let shortcut_rhs = big(n) + p.eps_n(2 * delta);
    if big(w.len()) >= shortcut_rhs {
        b.checks.push(ineq("|W| ≥ n + 2Δεn", &big(w.len()), &shortcut_rhs));
        if let Err(f) = b.need("|W′| ≥ n", &big(w_prime.len()), &big(n)) {
            return Ok(Verdict::Decided(Err(f)));
        }
        let targets = vec![w_prime.clone(); k];
        let plan = base(PlanCase::Shortcut, None, vec![Vec::new(); k], Vec::new(), 0, targets, vec![], vec![], b.checks);
        return Ok(Verdict::Decided(Ok(plan)));
    }
    b.checks.push(ineq_strict("n + 2Δεn > |W|", &shortcut_rhs, &big(w.len())));
    if r + 1 < k {
        return Ok(Verdict::Decided(Err(PlanFailure::SmallW { r, k })));
    }

    // U, c̄, Λ, Γ (1-based class / cycle indices j = 1..k−1)
    let mut in_first = FixedBitSet::with_capacity(n_host);
    for cyc in &cycles[..k - 1] {
        cyc.iter().for_each(|&v| in_first.insert(v));
    }
    let u: Vec<Vertex> = (0..n_host).filter(|&v| !in_first.contains(v)).collect();
    let cbar = if r >= k {
        c[k - 1]
    } else {
        match longest_cycle_inner(&inp.col.red().induced(&u), budget) {
            Ok(l) => l.map_or(0, |l| l.len()),
            Err(e) => return Ok(Verdict::Undecided(e)),
        }
    };
    let lambda: Vec<usize> = (1..k).filter(|&j| BigInt::from(a[j - 1]) > eta[j - 1]).collect();
    let gamma: Vec<usize> = (1..k)
        .filter(|&j| BigInt::from(a[j - 1]) > BigInt::from(c[j - 1]) - &beta_int)
        .collect();
    let parts = &inp.witness.parts;
    let vlen = |j: usize| parts[j - 1].len();

    let mut in_w = FixedBitSet::with_capacity(n_host);
    w.iter().for_each(|&v| in_w.insert(v));
    let mut in_w0 = FixedBitSet::with_capacity(n_host);
    w0.iter().for_each(|&v| in_w0.insert(v));
    let u_minus_w: Vec<Vertex> = u.iter().copied().filter(|&v| !in_w.contains(v)).collect();
    let u_minus_w0: Vec<Vertex> = u.iter().copied().filter(|&v| !in_w0.contains(v)).collect();
    let mut q: Vec<Vec<Vertex>> = vec![Vec::new(); k];
    let mut next_cycle = k - 1; // 0-based index of C^(k)
    let big_n = big(p.big_n);
    let rbeta = big(r) * &beta;

    let outcome = (|| -> std::result::Result<(PlanCase, Option<usize>), PlanFailure> {
        if lambda.is_empty() {
            q[k - 1] = u.clone();
            return Ok((PlanCase::Trivial, None));
        }
        let case1_rhs = big(sigma) + p.eps_n(2 * delta);
        if big(w.len()) < case1_rhs {
            b.checks.push(ineq_strict("σ + 2Δεn > |W|", &case1_rhs, &big(w.len())));
            let g = gamma.len();
            let sum_v: usize = gamma.iter().map(|&j| vlen(j)).sum();
            let mid = &big_n - big(k - 1 - g) * big(n) - &case1_rhs - &rbeta;
            b.need("|U∖W| + Σ_Γ|V_i| ≥ N − (k−1−γ)n − (σ+2Δεn) − rβ", &big(u_minus_w.len() + sum_v), &mid)?;
            let low = big(g) * big(n) + p.eps_n(2);
            b.need("N − (k−1−γ)n − (σ+2Δεn) − rβ ≥ γn + 2εn", &mid, &low)?;
            let sum_a: usize = gamma.iter().map(|&j| a[j - 1] + cbar).sum();
            b.need("γn + 2εn ≥ Σ_Γ(a_i + c̄) + σ + εn", &low, &(big(sum_a + sigma) + p.eps_n(1)))?;
            for &i in &gamma {
                let goal = big(a[i - 1]) + &rbeta;
                while big(vlen(i) + q[i - 1].len()) < goal {
                    if next_cycle >= r {
                        b.need(format!("|V_{i} ∪ Q_{i}| ≥ a_{i} + rβ (cycles exhausted)"), &big(vlen(i) + q[i - 1].len()), &goal)?;
                    }
                    q[i - 1].extend(&cycles[next_cycle]);
                    next_cycle += 1;
                }
                b.need(format!("|V_{i} ∪ Q_{i}| ≥ a_{i} + rβ"), &big(vlen(i) + q[i - 1].len()), &goal)?;
            }
            let mut taken = FixedBitSet::with_capacity(n_host);
            q.iter().flatten().for_each(|&v| taken.insert(v));
            q[k - 1] = u_minus_w.iter().copied().filter(|&v| !taken.contains(v)).collect();
            b.need("|Q_k| ≥ σ + rβ", &big(q[k - 1].len()), &(big(sigma) + &rbeta))?;
            return Ok((PlanCase::Case1, None));
        }

        b.checks.push(ineq("|W| ≥ σ + 2Δεn", &big(w.len()), &case1_rhs));
        let l = lambda.len();
        let sum_v: usize = lambda.iter().map(|&j| vlen(j)).sum();
        let top = &big_n - big(k - 1 - l) * big(n);
        b.need("|U∖W0| + Σ_Λ|V_i| ≥ N − (k−1−λ)n", &big(u_minus_w0.len() + sum_v), &top)?;
        let sum_a: usize = lambda.iter().map(|&j| 2 * a[j - 1] + cbar).sum();
        let rhs = big(sum_a + sigma) + big(l) * p.eps_n(2 * delta);
        b.need("N − (k−1−λ)n ≥ Σ_Λ(2a_i + c̄ + 2Δεn) + σ", &top, &rhs)?;

        let qk_size = sigma + p.ceil_eps_n(delta);
        b.need("|W′| ≥ σ + Δεn", &big(w_prime.len()), &(big(sigma) + p.eps_n(delta)))?;
        if w_prime.len() < qk_size {
            b.need("|W′| ≥ σ + ⌈Δεn⌉", &big(w_prime.len()), &big(qk_size))?;
        }
        let mut pool = w_prime.iter().copied();
        q[k - 1] = pool.by_ref().take(qk_size).collect();

        let pivot_rhs = |h: usize| -> BigRational {
            let s: BigRational = lambda
                .iter()
                .filter(|&&j| j > h && j < k)
                .map(|&j| BigRational::from_integer(BigInt::from(2 * a[j - 1]) - BigInt::from(vlen(j))))
                .sum();
            s + big(sigma) + big(k - h) * p.eps_n(delta)
        };
        let Some(h) = (1..k).find(|&h| big(w_prime.len()) >= pivot_rhs(h)) else {
            b.need(
                "|W′| ≥ Σ_{Λ, h<j<k}(2a_j − |V_j|) + σ + (k−h)Δεn for h = k−1",
                &big(w_prime.len()),
                &pivot_rhs(k - 1),
            )?;
            unreachable!("the last pivot inequality fails when no pivot exists");
        };
        b.checks.push(ineq(
            format!("|W′| ≥ Σ_{{Λ, h<j<k}}(2a_j − |V_j|) + σ + (k−h)Δεn for h = {h}"),
            &big(w_prime.len()),
            &pivot_rhs(h),
        ));
        for &i in lambda.iter().filter(|&&i| i > h && i < k) {
            let want = BigRational::from_integer(BigInt::from(2 * a[i - 1]) - BigInt::from(vlen(i))) + p.eps_n(delta);
            let size = super::params::ceil_nonneg(&want);
            let size: usize = size.try_into().unwrap_or(usize::MAX);
            let got: Vec<Vertex> = pool.by_ref().take(size).collect();
            b.need(format!("W′ left for Q_{i}: 2a_{i} − |V_{i}| + Δεn"), &big(got.len()), &want)?;
            q[i - 1] = got;
        }
        for &i in lambda.iter().filter(|&&i| i < h) {
            let goal = big(2 * a[i - 1]) + p.eps_n(2 * delta);
            while big(vlen(i) + q[i - 1].len()) < goal {
                if next_cycle >= r {
                    b.need(format!("|V_{i} ∪ Q_{i}| ≥ 2a_{i} + 2Δεn (cycles exhausted)"), &big(vlen(i) + q[i - 1].len()), &goal)?;
                }
                q[i - 1].extend(&cycles[next_cycle]);
                next_cycle += 1;
            }
            b.need(format!("|V_{i} ∪ Q_{i}| ≥ 2a_{i} + 2Δεn"), &big(vlen(i) + q[i - 1].len()), &goal)?;
        }
        let mut taken = FixedBitSet::with_capacity(n_host);
        q.iter().flatten().for_each(|&v| taken.insert(v));
        q[h - 1] = u_minus_w0.iter().copied().filter(|&v| !taken.contains(v)).collect();
        b.need(
            format!("|V_{h} ∪ Q_{h}| ≥ 2a_{h} + 2Δεn"),
            &big(vlen(h) + q[h - 1].len()),
            &(big(2 * a[h - 1]) + p.eps_n(2 * delta)),
        )?;
        Ok((PlanCase::Case2, Some(h)))
    })();

    let (case, h) = match outcome {
        Ok(x) => x,
        Err(f) => return Ok(Verdict::Decided(Err(f))),
    };
    let q: Vec<Vec<Vertex>> = q.into_iter().map(sorted).collect();
    let mut targets = Vec::with_capacity(k);
    for i in 1..k {
        targets.push(sorted(parts[i - 1].iter().chain(&q[i - 1]).copied().collect()));
    }
    targets.push(q[k - 1].clone());
    for (i, t) in targets.iter().enumerate() {
        let name = if i + 1 == k {
            "|Q_k| ≥ a_k".to_string()
        } else {
            format!("|V_{0} ∪ Q_{0}| ≥ a_{0}", i + 1)
        };
        if let Err(f) = b.need(name, &big(t.len()), &big(a[i])) {
            return Ok(Verdict::Decided(Err(f)));
        }
    }
    check_structure(&q, inp.decomp, k, n_host)?;
    let plan = base(case, h, q, u, cbar, targets, lambda, gamma, b.checks);
    Ok(Verdict::Decided(Ok(plan)))
}

/// `Q` sets pairwise disjoint, and each cycle among `C^(k..r)` meets at most one.
fn check_structure(q: &[Vec<Vertex>], decomp: &CycleDecomposition, k: usize, n: usize) -> Result<()> {
    let mut owner = vec![usize::MAX; n];
    for (i, s) in q.iter().enumerate() {
        for &v in s {
            if owner[v] != usize::MAX {
                return Err(Error::Internal(format!("vertex {v} in Q_{} and Q_{}", owner[v] + 1, i + 1)));
            }
            owner[v] = i;
        }
    }
    for (ci, cyc) in decomp.cycles.iter().enumerate().skip(k.saturating_sub(1)) {
        let mut touching: Vec<usize> = cyc.iter().map(|&v| owner[v]).filter(|&o| o != usize::MAX).collect();
        touching.sort_unstable();
        touching.dedup();
        if touching.len() > 1 {
            return Err(Error::Internal(format!("cycle {} shared by several Q sets", ci + 1)));
        }
    }
    Ok(())
}
