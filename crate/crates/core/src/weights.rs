//! Weight schemes `(u, v)` and the factorable matrix `G(u, v)`.
//!
//! Row `k` of `G(u, v)` carries the entries `u_k v_i` for `start ≤ i ≤ k`, so the
//! row sum is `u_k Σ_{i≤k} v_i` and applying the matrix to `x` gives
//! `y_k = u_k Σ_{i≤k} v_i x_i`. All of these are evaluated with one running prefix.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::classify::{classify_series, Policy, SeriesVerdict};
use crate::error::{Error, Result};
use crate::real::RealSequence;
use crate::scaled::Scaled;

/// Memo of `Σ_{i=start}^{k} v_i`, indexed by `k - start`.
#[derive(Debug, Default)]
struct PrefixCache(Mutex<Vec<Scaled>>);

impl Clone for PrefixCache {
    fn clone(&self) -> Self {
        PrefixCache::default()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightScheme {
    pub u: RealSequence,
    pub v: RealSequence,
    #[serde(default)]
    pub start: usize,
    #[serde(skip)]
    cache: PrefixCache,
}

impl PartialEq for WeightScheme {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.v == other.v && self.start == other.start
    }
}

/// Running evaluation of `u_k Σ_{i≤k} v_i x_i` for consecutive `k`.
pub(crate) struct FactorableRows<'a> {
    scheme: &'a WeightScheme,
    next: usize,
    prefix: Scaled,
}

impl FactorableRows<'_> {
    /// Feeds `x_k` for the next index and returns `(k, Σ_{i≤k} v_i x_i, u_k · that sum)`.
    pub(crate) fn push(&mut self, x: f64) -> Result<(usize, f64, f64)> {
        let k = self.next;
        let v = self.scheme.v_scaled(k)?;
        self.prefix = self.prefix + v * Scaled::from_f64(x);
        let u = self.scheme.u_scaled(k)?;
        self.next += 1;
        Ok((k, self.prefix.to_f64(), (u * self.prefix).to_f64()))
    }
}

impl WeightScheme {
    pub fn new(u: RealSequence, v: RealSequence, start: usize) -> Self {
        WeightScheme {
            u,
            v,
            start,
            cache: PrefixCache::default(),
        }
    }

    fn admissible(which: &'static str, k: usize, value: Scaled) -> Result<Scaled> {
        if value.is_zero() || !value.is_finite() {
            return Err(Error::Weight {
                which,
                index: k,
                value: value.to_f64(),
            });
        }
        Ok(value)
    }

    pub(crate) fn u_scaled(&self, k: usize) -> Result<Scaled> {
        Self::admissible("u", k, self.u.eval_scaled(k)?)
    }

    pub(crate) fn v_scaled(&self, k: usize) -> Result<Scaled> {
        Self::admissible("v", k, self.v.eval_scaled(k)?)
    }

    /// `u_k`, checked to be a nonzero finite weight.
    pub fn u_at(&self, k: usize) -> Result<f64> {
        Ok(self.u_scaled(k)?.to_f64())
    }

    pub fn v_at(&self, k: usize) -> Result<f64> {
        Ok(self.v_scaled(k)?.to_f64())
    }

    pub(crate) fn check_index(&self, k: usize) -> Result<()> {
        if k < self.start {
            return Err(Error::Index {
                index: k,
                start: self.start,
            });
        }
        Ok(())
    }

    /// Verifies that every weight on `[start, horizon]` lies in U.
    pub fn check_admissible(&self, horizon: usize) -> Result<()> {
        self.check_index(horizon)?;
        for k in self.start..=horizon {
            self.u_scaled(k)?;
            self.v_scaled(k)?;
        }
        Ok(())
    }

    pub(crate) fn rows(&self) -> FactorableRows<'_> {
        FactorableRows {
            scheme: self,
            next: self.start,
            prefix: Scaled::ZERO,
        }
    }

    /// `u_k Σ_{i=start}^{k} v_i`.
    pub fn row_sum(&self, k: usize) -> Result<f64> {
        self.check_index(k)?;
        let j = k - self.start;
        let prefix = {
            let mut cache = self.cache.0.lock().unwrap_or_else(|e| e.into_inner());
            while cache.len() <= j {
                let i = self.start + cache.len();
                let next = cache.last().copied().unwrap_or(Scaled::ZERO) + self.v_scaled(i)?;
                cache.push(next);
            }
            cache[j]
        };
        Ok((self.u_scaled(k)? * prefix).to_f64())
    }

    /// Row sums over `[start, horizon]` with their l₁ and infimum diagnostics.
    pub fn row_sum_diagnostic(&self, horizon: usize, policy: &Policy) -> Result<RowSumDiagnostic> {
        self.check_index(horizon)?;
        let mut rows = self.rows();
        let mut row_sums = Vec::with_capacity(horizon - self.start + 1);
        let mut abs_partial = Vec::with_capacity(horizon - self.start + 1);
        let mut acc = 0.0;
        for _ in self.start..=horizon {
            let (_, _, r) = rows.push(1.0)?;
            acc += r.abs();
            row_sums.push(r);
            abs_partial.push(acc);
        }
        let (inf_k, inf_abs) = row_sums
            .iter()
            .enumerate()
            .map(|(j, r)| (self.start + j, r.abs()))
            .fold(
                (self.start, f64::INFINITY),
                |best, cur| if cur.1 < best.1 { cur } else { best },
            );
        let abs_terms: Vec<f64> = row_sums.iter().map(|r| r.abs()).collect();
        let verdict = classify_series(&abs_terms, self.start, policy)?;
        Ok(RowSumDiagnostic {
            start: self.start,
            horizon,
            row_sums,
            abs_partial,
            abs_sum: acc,
            inf_abs,
            inf_index: inf_k,
            verdict,
        })
    }

    /// The scheme `(u′, v)` with `u′_k = k·u_k`.
    pub fn uprime(&self) -> Result<WeightScheme> {
        if self.start == 0 {
            return Err(Error::Weight {
                which: "u'",
                index: 0,
                value: 0.0,
            });
        }
        Ok(WeightScheme::new(
            RealSequence::index_times(self.u.clone()),
            self.v.clone(),
            self.start,
        ))
    }

    /// `y_k = u_k Σ_{i=start}^{k} v_i x_i` for `k ∈ [start, horizon]`; `x[j]` is the value at `start + j`.
    pub fn apply_factorable(&self, x: &[f64], horizon: usize) -> Result<Vec<f64>> {
        self.check_index(horizon)?;
        let n = horizon - self.start + 1;
        if x.len() < n {
            return Err(Error::InvalidArgument(format!(
                "sequence covers {} indices but the horizon needs {n}",
                x.len()
            )));
        }
        let mut rows = self.rows();
        x[..n].iter().map(|&xi| rows.push(xi).map(|(_, _, y)| y)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowSumDiagnostic {
    pub start: usize,
    pub horizon: usize,
    /// `r_k` for `k ∈ [start, horizon]`.
    pub row_sums: Vec<f64>,
    /// `Σ_{i≤k} |r_i|`.
    pub abs_partial: Vec<f64>,
    pub abs_sum: f64,
    pub inf_abs: f64,
    pub inf_index: usize,
    /// Classification of `Σ |r_k|` (membership of the row sums in l₁).
    pub verdict: SeriesVerdict,
}
