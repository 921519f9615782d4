//! Pipeline parameters with exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{precondition, Error, Result};

/// Parses a positive rational from `"1/243"`, `"0.05"`, `"3"` or `"2.5e-3"`.
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::Number(s.to_string());
    let t = s.trim();
    if t.is_empty() || t.len() > 200 {
        return Err(bad());
    }
    if t.contains('/') {
        let (a, b) = t.split_once('/').ok_or_else(bad)?;
        let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
        let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    if exp.abs() > 60 {
        return Err(bad());
    }
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| bad())?;
    let num = if neg { -num } else { num };
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10u32);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * ten.pow(scale as u32))
    } else {
        BigRational::new(num, ten.pow((-scale) as u32))
    })
}

pub(crate) fn ceil_nonneg(x: &BigRational) -> BigUint {
    x.ceil().to_integer().max(BigInt::zero()).to_biguint().expect("nonnegative")
}

pub(crate) fn ratio(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_usize(x: &BigUint, what: &str) -> Result<usize> {
    x.to_usize().ok_or_else(|| precondition(format!("{what} = {x} does not fit a machine word")))
}

fn show(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A guarantee of the structural argument that depends on the parameters,
/// evaluated for the actual `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Requirement {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineParams {
    pub delta: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub eps: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub beta: BigUint,
    pub n: usize,
    pub k: usize,
    pub sigma: usize,
    /// Host order.
    #[serde(rename = "N")]
    pub big_n: usize,
    pub strict: bool,
    /// Values the user supplied instead of the formulas.
    pub overrides: Vec<String>,
    pub requirements: Vec<Requirement>,
}

fn ser_ratio<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&show(x))
}

fn ser_display<S: serde::Serializer, T: fmt::Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Inputs for [`make_params`].
#[derive(Clone, Debug)]
pub struct ParamSpec {
    pub delta: usize,
    pub eps: BigRational,
    pub n: usize,
    pub k: usize,
    pub sigma: usize,
    pub strict: bool,
    /// Relaxed mode only; defaults to 0.
    pub beta: Option<BigUint>,
    /// Relaxed mode only; defaults to the formula.
    pub big_n: Option<usize>,
}

/// `N = (k−1)n + σ + ⌈Δ⁴εn⌉`.
pub fn host_order_formula(delta: usize, eps: &BigRational, n: usize, k: usize, sigma: usize) -> Result<usize> {
    let slack = ceil_nonneg(&(ratio(delta.pow(4)) * eps * ratio(n)));
    let slack = to_usize(&slack, "⌈Δ⁴εn⌉")?;
    k.saturating_sub(1)
        .checked_mul(n)
        .and_then(|x| x.checked_add(sigma))
        .and_then(|x| x.checked_add(slack))
        .ok_or_else(|| precondition("host order overflows"))
}

pub fn make_params(spec: &ParamSpec) -> Result<PipelineParams> {
    let ParamSpec {
        delta,
        ref eps,
        n,
        k,
        sigma,
        strict,
        ..
    } = *spec;
    if delta < 2 {
        return Err(precondition("Δ must be at least 2"));
    }
    if !eps.is_positive() {
        return Err(precondition("ε must be positive"));
    }
    if n == 0 {
        return Err(precondition("n must be at least 1"));
    }
    let eps_cap = BigRational::new(BigInt::one(), BigInt::from(delta).pow(5));
    let mut overrides = Vec::new();
    let (beta, big_n) = if strict {
        if *eps > eps_cap {
            return Err(precondition(format!(
                "strict mode needs ε ≤ 1/Δ⁵ = {}, got ε = {}",
                show(&eps_cap),
                show(eps)
            )));
        }
        if spec.beta.is_some() || spec.big_n.is_some() {
            return Err(precondition("strict mode computes β and N; overrides are not accepted"));
        }
        let beta = ceil_nonneg(&eps.recip().pow(7));
        (beta, host_order_formula(delta, eps, n, k, sigma)?)
    } else {
        let beta = match &spec.beta {
            Some(b) => {
                overrides.push(format!("beta={b}"));
                b.clone()
            }
            None => BigUint::zero(),
        };
        let big_n = match spec.big_n {
            Some(m) => {
                overrides.push(format!("N={m}"));
                m
            }
            None => host_order_formula(delta, eps, n, k, sigma)?,
        };
        (beta, big_n)
    };
    let requirements = requirements(delta, eps, &eps_cap, &beta, n, k);
    Ok(PipelineParams {
        delta,
        eps: eps.clone(),
        beta,
        n,
        k,
        sigma,
        big_n,
        strict,
        overrides,
        requirements,
    })
}

fn requirements(delta: usize, eps: &BigRational, eps_cap: &BigRational, beta: &BigUint, n: usize, k: usize) -> Vec<Requirement> {
    let beta_q = BigRational::from_integer(BigInt::from(beta.clone()));
    let eps2 = eps * eps;
    let mut out = vec![Requirement {
        name: "eps_at_most_inverse_delta_pow5",
        holds: eps <= eps_cap,
        detail: format!("ε = {}, 1/Δ⁵ = {}", show(eps), show(eps_cap)),
    }];
    // the cycle threshold ε²n should itself be a real cycle length
    let min_n = ceil_nonneg(&(ratio(3) / &eps2));
    out.push(Requirement {
        name: "cycle_threshold_at_least_3",
        holds: BigUint::from(n) >= min_n,
        detail: format!("needs n ≥ 3/ε² = {min_n}"),
    });
    // per-cycle removals of the segment procedure are at most 9r/ε⁴ with r < k/ε²
    let removal = ratio(9 * k) / eps2.pow(3);
    out.push(Requirement {
        name: "beta_covers_segment_removals",
        holds: beta_q >= removal,
        detail: format!("needs β ≥ 9k/ε⁶ = {}", ceil_nonneg(&removal)),
    });
    // η_i < (c_i − Δ² − β)/2 needs β > Δ²
    out.push(Requirement {
        name: "beta_exceeds_delta_squared",
        holds: *beta > BigUint::from(delta * delta),
        detail: format!("needs β > Δ² = {}", delta * delta),
    });
    // Case 1 slack: εn(Δ⁴ − 2Δ − 2) ≥ rβ with r < k/ε²
    let d = delta as i64;
    let coeff = d.pow(4) - 2 * d - 2;
    let need = ratio(k) * &beta_q / (eps2 * eps * BigRational::from_integer(BigInt::from(coeff)));
    let min_n = ceil_nonneg(&need);
    out.push(Requirement {
        name: "host_slack_absorbs_removals",
        holds: BigUint::from(n) >= min_n,
        detail: format!("needs n ≥ kβ/(ε³(Δ⁴−2Δ−2)) = {min_n}"),
    });
    out
}

impl PipelineParams {
    /// `mult · ε · n` exactly.
    pub fn eps_n(&self, mult: usize) -> BigRational {
        ratio(mult) * &self.eps * ratio(self.n)
    }

    /// `⌈mult · ε · n⌉`.
    pub fn ceil_eps_n(&self, mult: usize) -> usize {
        ceil_nonneg(&self.eps_n(mult)).to_usize().unwrap_or(usize::MAX)
    }

    /// Cycle length threshold `max(3, ⌈ε²n⌉)`.
    pub fn min_cycle_len(&self) -> usize {
        let t = ceil_nonneg(&(&self.eps * &self.eps * ratio(self.n)));
        t.to_usize().unwrap_or(usize::MAX).max(3)
    }

    pub fn beta_int(&self) -> BigInt {
        BigInt::from(self.beta.clone())
    }

    pub fn eps_string(&self) -> String {
        show(&self.eps)
    }
}

impl fmt::Display for PipelineParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Δ={} ε={} β={} n={} k={} σ={} N={}{}",
            self.delta,
            show(&self.eps),
            self.beta,
            self.n,
            self.k,
            self.sigma,
            self.big_n,
            if self.strict { " strict" } else { "" }
        )
    }
}

/// `⌊x/2⌋` for possibly negative `x`.
pub(crate) fn floor_half(x: &BigInt) -> BigInt {
    x.div_floor(&BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(delta: usize, eps: &str, n: usize, k: usize, sigma: usize, strict: bool) -> ParamSpec {
        ParamSpec {
            delta,
            eps: parse_ratio(eps).unwrap(),
            n,
            k,
            sigma,
            strict,
            beta: None,
            big_n: None,
        }
    }

    #[test]
    fn parses_numbers() {
        let q = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(parse_ratio("1/243").unwrap(), q(1, 243));
        assert_eq!(parse_ratio("0.05").unwrap(), q(1, 20));
        assert_eq!(parse_ratio("5e-2").unwrap(), q(1, 20));
        assert_eq!(parse_ratio(".5").unwrap(), q(1, 2));
        assert_eq!(parse_ratio("3").unwrap(), q(3, 1));
        for bad in ["", "1/0", "abc", "0.0.1", "1e", "1e999", "--1", "."] {
            assert!(parse_ratio(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn strict_beta_for_delta_3() {
        let p = make_params(&spec(3, "1/243", 10, 2, 1, true)).unwrap();
        assert_eq!(p.beta, BigUint::from(50031545098999707u64));
        assert_eq!(p.beta, BigUint::from(3u32).pow(35));
    }

    #[test]
    fn relaxed_host_order() {
        let mut s = spec(3, "0.05", 100, 3, 10, false);
        s.beta = Some(BigUint::from(5u32));
        let p = make_params(&s).unwrap();
        assert_eq!(p.big_n, 615);
        assert_eq!(p.overrides, vec!["beta=5".to_string()]);
    }

    #[test]
    fn strict_rejects_large_eps() {
        assert!(matches!(make_params(&spec(2, "0.5", 10, 2, 1, true)), Err(Error::Precondition(_))));
        assert!(make_params(&spec(2, "1/32", 10, 2, 1, true)).is_ok());
    }

    #[test]
    fn thresholds() {
        let p = make_params(&spec(3, "0.01", 12, 4, 3, false)).unwrap();
        assert_eq!(p.min_cycle_len(), 3);
        assert_eq!(p.ceil_eps_n(1), 1);
        assert_eq!(p.ceil_eps_n(3), 1);
        assert_eq!(floor_half(&BigInt::from(-3)), BigInt::from(-2));
    }
}
