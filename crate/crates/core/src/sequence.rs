//! Sequences of fuzzy numbers `k ↦ X_k` and the difference operator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{metric_d, FuzzyNumber};
use crate::real::RealSequence;

/// How the terms of a [`FuzzySequence`] are generated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    /// `X_k = f(k)` embedded as a crisp number.
    Crisp { value: RealSequence },
    /// Triangular `(a(k), b(k), c(k))`.
    Triangular {
        a: RealSequence,
        b: RealSequence,
        c: RealSequence,
    },
    /// Trapezoidal `(a(k), b(k), c(k), d(k))`.
    Trapezoidal {
        a: RealSequence,
        b: RealSequence,
        c: RealSequence,
        d: RealSequence,
    },
    /// `even` at even indices, `odd` at odd indices.
    Alternating { even: Box<Family>, odd: Box<Family> },
    /// `base_k + by_k`.
    Perturbed { base: Box<Family>, by: Box<Family> },
    /// `of_k - of_{k+1}`.
    Delta { of: Box<Family> },
    /// `values[k - first]`.
    Table {
        values: Vec<FuzzyNumber>,
        #[serde(default)]
        first: usize,
    },
}

impl Family {
    pub fn crisp(value: RealSequence) -> Self {
        Family::Crisp { value }
    }

    pub fn zero() -> Self {
        Family::crisp(RealSequence::constant(0.0))
    }

    pub fn triangular(a: RealSequence, b: RealSequence, c: RealSequence) -> Self {
        Family::Triangular { a, b, c }
    }

    /// The constant sequence `triangular(-w, 0, w)`.
    pub fn symmetric_triangle(w: f64) -> Self {
        Family::triangular(
            RealSequence::constant(-w),
            RealSequence::constant(0.0),
            RealSequence::constant(w),
        )
    }

    pub fn alternating(even: Family, odd: Family) -> Self {
        Family::Alternating {
            even: Box::new(even),
            odd: Box::new(odd),
        }
    }

    pub fn perturbed(base: Family, by: Family) -> Self {
        Family::Perturbed {
            base: Box::new(base),
            by: Box::new(by),
        }
    }

    pub fn at(&self, k: usize) -> Result<FuzzyNumber> {
        match self {
            Family::Crisp { value } => FuzzyNumber::from_crisp(value.at(k)?),
            Family::Triangular { a, b, c } => FuzzyNumber::from_triangular(a.at(k)?, b.at(k)?, c.at(k)?),
            Family::Trapezoidal { a, b, c, d } => FuzzyNumber::from_trapezoidal(a.at(k)?, b.at(k)?, c.at(k)?, d.at(k)?),
            Family::Alternating { even, odd } => {
                if k.is_multiple_of(2) {
                    even.at(k)
                } else {
                    odd.at(k)
                }
            }
            Family::Perturbed { base, by } => Ok(&base.at(k)? + &by.at(k)?),
            Family::Delta { of } => Ok(&of.at(k)? - &of.at(k + 1)?),
            Family::Table { values, first } => {
                k.checked_sub(*first)
                    .and_then(|j| values.get(j))
                    .cloned()
                    .ok_or(Error::TableExhausted {
                        index: k,
                        first: *first,
                        end: first + values.len(),
                    })
            }
        }
    }
}

/// A sequence of fuzzy numbers indexed from `start`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzySequence {
    #[serde(default)]
    pub start: usize,
    pub family: Family,
}

impl FuzzySequence {
    pub fn new(family: Family, start: usize) -> Self {
        FuzzySequence { start, family }
    }

    pub fn at(&self, k: usize) -> Result<FuzzyNumber> {
        self.check_index(k)?;
        self.family.at(k)
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

    /// `ΔX_k = X_k - X_{k+1}`, generated lazily.
    pub fn delta(&self) -> FuzzySequence {
        FuzzySequence {
            start: self.start,
            family: Family::Delta {
                of: Box::new(self.family.clone()),
            },
        }
    }

    /// `k ↦ X_k + Y_k` on the same start index.
    pub fn perturbed(&self, by: Family) -> FuzzySequence {
        FuzzySequence {
            start: self.start,
            family: Family::perturbed(self.family.clone(), by),
        }
    }

    /// `d(ΔX_k, 0̄)`.
    pub fn delta_distance(&self, k: usize) -> Result<f64> {
        self.check_index(k)?;
        Ok((&self.family.at(k)? - &self.family.at(k + 1)?).norm())
    }

    /// Terms `X_start ..= X_{horizon + 1}`, each generated once.
    pub fn terms_through(&self, horizon: usize) -> Result<Vec<FuzzyNumber>> {
        self.check_index(horizon)?;
        (self.start..=horizon + 1).map(|k| self.family.at(k)).collect()
    }

    /// `d(ΔX_k, 0̄)` for `k ∈ [start, horizon]`.
    pub fn delta_distances(&self, horizon: usize) -> Result<Vec<f64>> {
        let terms = self.terms_through(horizon)?;
        Ok(terms.windows(2).map(|w| (&w[0] - &w[1]).norm()).collect())
    }

    /// `sup_α |(ΔX_k)_M(α)|` computed from the midpoint sequence, `X_{M,k} - X_{M,k+1}`.
    pub fn midpoint_delta_distances(&self, horizon: usize) -> Result<Vec<f64>> {
        let mids: Vec<_> = self
            .terms_through(horizon)?
            .iter()
            .map(FuzzyNumber::midpoint_profile)
            .collect();
        Ok(mids.windows(2).map(|w| (&w[0] - &w[1]).sup_abs()).collect())
    }

    /// `d(ΔX_k, ΔY_k)` for `k ∈ [start, horizon]`.
    pub fn delta_gaps(&self, other: &FuzzySequence, horizon: usize) -> Result<Vec<f64>> {
        same_start(self, other)?;
        let xs = self.terms_through(horizon)?;
        let ys = other.terms_through(horizon)?;
        Ok(xs
            .windows(2)
            .zip(ys.windows(2))
            .map(|(x, y)| metric_d(&(&x[0] - &x[1]), &(&y[0] - &y[1])))
            .collect())
    }
}

pub(crate) fn same_start(x: &FuzzySequence, y: &FuzzySequence) -> Result<()> {
    if x.start != y.start {
        return Err(Error::config(
            "start",
            format!("sequences start at {} and {}", x.start, y.start),
        ));
    }
    Ok(())
}

/// `X_k = k̄` for odd `k`, `0̄` for even `k`.
pub fn alternating_crisp_ramp() -> Family {
    Family::alternating(Family::zero(), Family::crisp(RealSequence::linear(0.0, 1.0)))
}

/// `X_k = triangular(-k, 0, k)`.
pub fn widening_triangles() -> Family {
    Family::triangular(
        RealSequence::linear(0.0, -1.0),
        RealSequence::constant(0.0),
        RealSequence::linear(0.0, 1.0),
    )
}
