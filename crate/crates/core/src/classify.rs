//! Finite-horizon convergence classification for series of non-negative terms.
//!
//! A series is judged from its last window of terms: a least-squares slope of
//! `ln t_k` against `ln k`, the window tail sum, and whether the terms are still
//! shrinking. The verdict is evidence at a horizon, not a proof.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Policy {
    /// Fraction of the horizon (counted from the end) used as the fitting window.
    pub window: f64,
    /// Margin around the critical log-log slope −1.
    pub slope_margin: f64,
    /// A window tail sum below this counts as converged.
    pub tail_tol: f64,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            window: 0.5,
            slope_margin: 0.1,
            tail_tol: 1e-8,
        }
    }
}

impl Policy {
    pub fn validate(&self) -> Result<()> {
        if !(self.window > 0.0 && self.window <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "window fraction must lie in (0, 1], got {}",
                self.window
            )));
        }
        if !(self.slope_margin > 0.0 && self.slope_margin.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "slope margin must be positive, got {}",
                self.slope_margin
            )));
        }
        if !(self.tail_tol >= 0.0 && self.tail_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tail tolerance must be non-negative, got {}",
                self.tail_tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Convergent,
    Divergent,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesVerdict {
    pub verdict: Verdict,
    /// Fitted log-log slope over the window; absent when fewer than two positive terms.
    pub slope: Option<f64>,
    pub tail_sum: f64,
    /// Mean of the last tenth of the window.
    pub term_limit: f64,
    /// Mean of the first tenth of the window.
    pub window_head: f64,
    pub window_start: usize,
    pub horizon: usize,
    pub policy: Policy,
}

impl SeriesVerdict {
    pub fn is_convergent(&self) -> bool {
        self.verdict == Verdict::Convergent
    }

    pub fn is_divergent(&self) -> bool {
        self.verdict == Verdict::Divergent
    }
}

fn log_log_slope(points: impl Iterator<Item = (usize, f64)>) -> Option<f64> {
    let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (k, t) in points {
        if k == 0 || t <= 0.0 {
            continue;
        }
        let x = (k as f64).ln();
        let y = t.ln();
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = n * sxx - sx * sx;
    if n < 2.0 || denom <= 0.0 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Classifies `Σ terms`, where `terms[j]` is the term at index `start + j`.
pub fn classify_series(terms: &[f64], start: usize, policy: &Policy) -> Result<SeriesVerdict> {
    policy.validate()?;
    if let Some(t) = terms.iter().find(|t| !t.is_finite() || **t < 0.0) {
        return Err(Error::InvalidArgument(format!(
            "series terms must be finite and non-negative, got {t}"
        )));
    }
    let len = ((terms.len() as f64) * policy.window).ceil() as usize;
    let len = len.min(terms.len());
    if len == 0 {
        return Err(Error::InvalidArgument("classification window is empty".into()));
    }
    let offset = terms.len() - len;
    let window = &terms[offset..];
    let window_start = start + offset;
    let horizon = start + terms.len() - 1;

    let tail_sum: f64 = window.iter().sum();
    let edge = len.div_ceil(10);
    let window_head = window[..edge].iter().sum::<f64>() / edge as f64;
    let term_limit = window[len - edge..].iter().sum::<f64>() / edge as f64;
    let slope = log_log_slope(window.iter().enumerate().map(|(j, &t)| (window_start + j, t)));

    let verdict = if tail_sum == 0.0 {
        Verdict::Convergent
    } else {
        let still_large = term_limit > 0.0 && term_limit >= window_head;
        let slow = slope.is_some_and(|s| s > -1.0 + policy.slope_margin);
        let fast = slope.is_some_and(|s| s < -1.0 - policy.slope_margin);
        if still_large || slow {
            Verdict::Divergent
        } else if fast || tail_sum < policy.tail_tol {
            Verdict::Convergent
        } else {
            Verdict::Inconclusive
        }
    };

    Ok(SeriesVerdict {
        verdict,
        slope,
        tail_sum,
        term_limit,
        window_head,
        window_start,
        horizon,
        policy: *policy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(k_max: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (1..=k_max).map(|k| f(k as f64)).collect()
    }

    #[test]
    fn p_series() {
        let p = Policy::default();
        let v = classify_series(&terms(10_000, |k| 1.0 / (k * k)), 1, &p).unwrap();
        assert_eq!(v.verdict, Verdict::Convergent);
        assert!((v.slope.unwrap() + 2.0).abs() < 1e-9);
        assert_eq!(v.horizon, 10_000);
        assert_eq!(v.window_start, 5_001);

        let v = classify_series(&terms(10_000, |k| 1.0 / k), 1, &p).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);

        let v = classify_series(&terms(10_000, |_| 1.0), 1, &p).unwrap();
        assert_eq!(v.verdict, Verdict::Divergent);
    }

    #[test]
    fn zero_and_tiny_tails() {
        let p = Policy::default();
        assert_eq!(classify_series(&[0.0; 50], 0, &p).unwrap().verdict, Verdict::Convergent);
        let geometric: Vec<f64> = (0..2000).map(|k| 0.5f64.powi(k)).collect();
        assert_eq!(classify_series(&geometric, 0, &p).unwrap().verdict, Verdict::Convergent);
    }

    #[test]
    fn oscillating_increments_diverge() {
        let inc: Vec<f64> = (1..1000).map(|k| if k % 2 == 1 { 2.0 } else { 0.0 }).collect();
        assert_eq!(
            classify_series(&inc, 1, &Policy::default()).unwrap().verdict,
            Verdict::Divergent
        );
    }

    #[test]
    fn rejects_bad_input() {
        let p = Policy::default();
        assert!(classify_series(&[], 0, &p).is_err());
        assert!(classify_series(&[1.0, -1.0], 0, &p).is_err());
        assert!(classify_series(&[f64::NAN], 0, &p).is_err());
        let bad = Policy { window: 0.0, ..p };
        assert!(classify_series(&[1.0], 0, &bad).is_err());
        let bad = Policy { slope_margin: 0.0, ..p };
        assert!(classify_series(&[1.0], 0, &bad).is_err());
    }

    #[test]
    fn deterministic() {
        let t = terms(777, |k| (k.sin().abs() + 0.1) / (k * k));
        let p = Policy::default();
        assert_eq!(classify_series(&t, 1, &p).unwrap(), classify_series(&t, 1, &p).unwrap());
    }
}
