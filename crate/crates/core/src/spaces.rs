//! Finite-horizon diagnostics for the sequence classes `bv^F(u,v)`, `l_p^F`,
//! `l_∞^F`, `S_0^F(Δ)` and Cesàro convergence.
//!
//! Every "the series is finite" statement is turned into a [`SeriesVerdict`] at an
//! explicit horizon and policy. Reports keep the per-index tables so they can be
//! inspected or plotted externally.

use serde::{Deserialize, Serialize};

use crate::classify::{classify_series, Policy, SeriesVerdict, Verdict};
use crate::error::{Error, Result};
use crate::fuzzy::{metric_d, FuzzyNumber};
use crate::sequence::{same_start, FuzzySequence};
use crate::weights::WeightScheme;

/// The truncated variation `V_K = Σ_{k≤K} |u_k Σ_{i≤k} v_i d(ΔX_i, 0̄)|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationReport {
    pub start: usize,
    pub horizon: usize,
    /// `d_k = d(ΔX_k, 0̄)`.
    pub distances: Vec<f64>,
    /// `Σ_{i≤k} v_i d_i`.
    pub inner: Vec<f64>,
    /// `t_k = |u_k · inner_k|`.
    pub terms: Vec<f64>,
    /// `V_k = Σ_{j≤k} t_j`.
    pub partial: Vec<f64>,
    pub total: f64,
    pub verdict: SeriesVerdict,
}

impl VariationReport {
    /// `t_k` for an absolute index `k`.
    pub fn term(&self, k: usize) -> f64 {
        self.terms[k - self.start]
    }
}

fn check_scheme(x: &FuzzySequence, s: &WeightScheme) -> Result<()> {
    if x.start != s.start {
        return Err(Error::config(
            "scheme.start",
            format!(
                "sequence starts at {} but the weight scheme starts at {}",
                x.start, s.start
            ),
        ));
    }
    Ok(())
}

/// Builds a variation report from precomputed distances `d_k`, `k ∈ [start, horizon]`.
pub fn variation_from_distances(
    distances: Vec<f64>,
    s: &WeightScheme,
    horizon: usize,
    policy: &Policy,
) -> Result<VariationReport> {
    s.check_index(horizon)?;
    let n = horizon - s.start + 1;
    if distances.len() != n {
        return Err(Error::InvalidArgument(format!(
            "expected {n} distances for the horizon, got {}",
            distances.len()
        )));
    }
    let mut rows = s.rows();
    let mut inner = Vec::with_capacity(n);
    let mut terms = Vec::with_capacity(n);
    let mut partial = Vec::with_capacity(n);
    let mut acc = 0.0;
    for &d in &distances {
        let (_, sum, y) = rows.push(d)?;
        let t = y.abs();
        acc += t;
        inner.push(sum);
        terms.push(t);
        partial.push(acc);
    }
    let verdict = classify_series(&terms, s.start, policy)?;
    Ok(VariationReport {
        start: s.start,
        horizon,
        distances,
        inner,
        terms,
        partial,
        total: acc,
        verdict,
    })
}

pub fn variation_report(
    x: &FuzzySequence,
    s: &WeightScheme,
    horizon: usize,
    policy: &Policy,
) -> Result<VariationReport> {
    check_scheme(x, s)?;
    variation_from_distances(x.delta_distances(horizon)?, s, horizon, policy)
}

/// Variation of the midpoint sequence `(X_{M,k})`, with `d(ΔX_{M,k}, 0̄) = sup_α |X_{M,k}(α) - X_{M,k+1}(α)|`.
pub fn midpoint_variation_report(
    x: &FuzzySequence,
    s: &WeightScheme,
    horizon: usize,
    policy: &Policy,
) -> Result<VariationReport> {
    check_scheme(x, s)?;
    variation_from_distances(x.midpoint_delta_distances(horizon)?, s, horizon, policy)
}

/// The truncated metric `D(X, Y) = |u_s v_s d(X_s, Y_s)| + Σ_{k≤K} |u_k Σ_{i≤k} v_i d(ΔX_i, ΔY_i)|`,
/// where `s` is the common start index.
pub fn bv_metric_d(x: &FuzzySequence, y: &FuzzySequence, s: &WeightScheme, horizon: usize) -> Result<f64> {
    same_start(x, y)?;
    check_scheme(x, s)?;
    let head = metric_d(&x.at(x.start)?, &y.at(y.start)?);
    let lead = (s.u_at(s.start)? * s.v_at(s.start)? * head).abs();
    let gaps = x.delta_gaps(y, horizon)?;
    let mut rows = s.rows();
    let mut tail = 0.0;
    for g in gaps {
        tail += rows.push(g)?.2.abs();
    }
    Ok(lead + tail)
}

/// `ρ(X, Y) = d(X_s, Y_s) + max_{i≤K} d(ΔX_i, ΔY_i)`.
pub fn c_delta_metric_rho(x: &FuzzySequence, y: &FuzzySequence, horizon: usize) -> Result<f64> {
    same_start(x, y)?;
    let head = metric_d(&x.at(x.start)?, &y.at(y.start)?);
    let sup = x.delta_gaps(y, horizon)?.into_iter().fold(0.0, f64::max);
    Ok(head + sup)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpReport {
    pub p: f64,
    /// `Σ_{k≤K} d(X_k, 0̄)^p`.
    pub partial_sum: f64,
    pub verdict: SeriesVerdict,
}

pub fn lp_partial(x: &FuzzySequence, p: f64, horizon: usize, policy: &Policy) -> Result<LpReport> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "exponent p must be finite and at least 1, got {p}"
        )));
    }
    x.check_index(horizon)?;
    let terms = (x.start..=horizon)
        .map(|k| Ok(x.at(k)?.norm().powf(p)))
        .collect::<Result<Vec<f64>>>()?;
    let verdict = classify_series(&terms, x.start, policy)?;
    Ok(LpReport {
        p,
        partial_sum: terms.iter().sum(),
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    Bounded,
    Growing,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupNormReport {
    pub sup: f64,
    pub argmax: usize,
    pub growth: Growth,
    /// Classification of the running-maximum increments; absent for a single-term horizon.
    pub evidence: Option<SeriesVerdict>,
}

/// `max_{k≤K} d(X_k, 0̄)`, with growth judged from the increments of the running maximum.
pub fn sup_norm_partial(x: &FuzzySequence, horizon: usize, policy: &Policy) -> Result<SupNormReport> {
    x.check_index(horizon)?;
    let mut sup = f64::NEG_INFINITY;
    let mut argmax = x.start;
    let mut increments = Vec::with_capacity(horizon - x.start);
    for k in x.start..=horizon {
        let d = x.at(k)?.norm();
        if k > x.start {
            increments.push((d - sup).max(0.0));
        }
        if d > sup {
            sup = d;
            argmax = k;
        }
    }
    let (growth, evidence) = if increments.is_empty() {
        (Growth::Inconclusive, None)
    } else {
        let v = classify_series(&increments, x.start + 1, policy)?;
        let g = match v.verdict {
            Verdict::Convergent => Growth::Bounded,
            Verdict::Divergent => Growth::Growing,
            Verdict::Inconclusive => Growth::Inconclusive,
        };
        (g, Some(v))
    };
    Ok(SupNormReport {
        sup,
        argmax,
        growth,
        evidence,
    })
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub n: usize,
    pub count: usize,
    pub density: f64,
}

/// `|{k ∈ [start, n] : d(ΔX_k, 0̄) ≥ eps}| / (n - start + 1)` for every `n` up to the horizon.
pub fn density_table(x: &FuzzySequence, eps: f64, horizon: usize) -> Result<Vec<DensityRow>> {
    check_eps(eps)?;
    let d = x.delta_distances(horizon)?;
    let mut count = 0;
    Ok(d.iter()
        .enumerate()
        .map(|(j, &dk)| {
            if dk >= eps {
                count += 1;
            }
            DensityRow {
                n: x.start + j,
                count,
                density: count as f64 / (j + 1) as f64,
            }
        })
        .collect())
}

pub fn statistical_density(x: &FuzzySequence, eps: f64, n: usize) -> Result<f64> {
    check_eps(eps)?;
    let d = x.delta_distances(n)?;
    let count = d.iter().filter(|&&dk| dk >= eps).count();
    Ok(count as f64 / d.len() as f64)
}

/// Running Cesàro means `(1/(k - start + 1)) Σ_{i=start}^{k} d(X_i, L)` for `k ∈ [start, horizon]`.
pub fn cesaro_means(x: &FuzzySequence, limit: &FuzzyNumber, horizon: usize) -> Result<Vec<f64>> {
    x.check_index(horizon)?;
    let mut acc = 0.0;
    (x.start..=horizon)
        .map(|k| {
            acc += metric_d(&x.at(k)?, limit);
            Ok(acc / (k - x.start + 1) as f64)
        })
        .collect()
}

pub fn cesaro_distance(x: &FuzzySequence, limit: &FuzzyNumber, k: usize) -> Result<f64> {
    Ok(*cesaro_means(x, limit, k)?.last().expect("non-empty range"))
}
