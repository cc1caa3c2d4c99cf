//! Fuzzy real numbers in their α-cut representation.
//!
//! A [`FuzzyNumber`] is stored as two continuous piecewise-linear envelopes over a
//! grid of α levels: `lower(α)` is non-decreasing, `upper(α)` is non-increasing, and
//! the α-cut at every level is the closed interval `[lower(α), upper(α)]`. The
//! 0-cut is the closure of the support.
//!
//! Arithmetic is level-wise interval arithmetic on the union of the operand grids.
//! Because the difference of two piecewise-linear functions on a common grid attains
//! its extrema at grid points, the supremum metric [`metric_d`] is exact: it is a
//! maximum over finitely many breakpoints.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for the symmetry and equivalence predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A closed bounded interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidValue(format!(
                "interval bounds must be finite, got [{lo}, {hi}]"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidValue(format!(
                "interval lower bound {lo} exceeds upper bound {hi}"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// The representation condition an envelope violates.
///
/// `I` to `IV` follow the classical characterization of α-cut envelopes;
/// `Grid` covers malformed level grids and jumps, which this representation
/// cannot hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Grid,
    /// (i) lower envelope bounded and non-decreasing.
    I,
    /// (ii) upper envelope bounded and non-increasing.
    II,
    /// (iii) envelopes right continuous at α = 0.
    III,
    /// (iv) lower(1) ≤ upper(1).
    IV,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Grid => "grid",
            Condition::I => "(i)",
            Condition::II => "(ii)",
            Condition::III => "(iii)",
            Condition::IV => "(iv)",
        };
        f.write_str(s)
    }
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Validation {
    Valid,
    Invalid { condition: Condition, detail: String },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid)
    }

    pub fn condition(&self) -> Option<Condition> {
        match self {
            Validation::Valid => None,
            Validation::Invalid { condition, .. } => Some(*condition),
        }
    }

    fn into_result(self) -> Result<()> {
        match self {
            Validation::Valid => Ok(()),
            Validation::Invalid { condition, detail } => Err(Error::InvalidShape { condition, detail }),
        }
    }
}

fn invalid(condition: Condition, detail: impl Into<String>) -> Validation {
    Validation::Invalid {
        condition,
        detail: detail.into(),
    }
}

/// Checks raw envelope data and reports the first violated condition.
///
/// Repeated α levels are accepted when their bounds agree (they collapse on
/// construction). A repeated level with differing bounds is a jump: at α = 0 that
/// breaks right continuity (iii); anywhere else it is a grid error.
pub fn validate(levels: &[f64], lower: &[f64], upper: &[f64]) -> Validation {
    if levels.len() != lower.len() || levels.len() != upper.len() {
        return invalid(
            Condition::Grid,
            format!(
                "length mismatch: {} levels, {} lower, {} upper",
                levels.len(),
                lower.len(),
                upper.len()
            ),
        );
    }
    if levels.len() < 2 {
        return invalid(Condition::Grid, "at least the levels 0 and 1 are required");
    }
    if let Some(a) = levels.iter().find(|a| !a.is_finite()) {
        return invalid(Condition::Grid, format!("non-finite level {a}"));
    }
    if levels[0] != 0.0 {
        return invalid(Condition::Grid, format!("first level must be 0, got {}", levels[0]));
    }
    if levels[levels.len() - 1] != 1.0 {
        return invalid(
            Condition::Grid,
            format!("last level must be 1, got {}", levels[levels.len() - 1]),
        );
    }
    for j in 1..levels.len() {
        if levels[j] < levels[j - 1] {
            return invalid(
                Condition::Grid,
                format!("levels must increase: {} follows {}", levels[j], levels[j - 1]),
            );
        }
    }
    if let Some(j) = lower.iter().position(|v| !v.is_finite()) {
        return invalid(
            Condition::I,
            format!("lower bound at level {} is not finite", levels[j]),
        );
    }
    if let Some(j) = upper.iter().position(|v| !v.is_finite()) {
        return invalid(
            Condition::II,
            format!("upper bound at level {} is not finite", levels[j]),
        );
    }
    for j in 1..levels.len() {
        if levels[j] == levels[j - 1] && (lower[j] != lower[j - 1] || upper[j] != upper[j - 1]) {
            if levels[j] == 0.0 {
                return invalid(Condition::III, "envelope jumps at level 0");
            }
            return invalid(
                Condition::Grid,
                format!(
                    "envelope jumps at level {}; only continuous envelopes are representable",
                    levels[j]
                ),
            );
        }
    }
    for j in 1..levels.len() {
        if lower[j] < lower[j - 1] {
            return invalid(
                Condition::I,
                format!(
                    "lower bound decreases from {} to {} between levels {} and {}",
                    lower[j - 1],
                    lower[j],
                    levels[j - 1],
                    levels[j]
                ),
            );
        }
    }
    for j in 1..levels.len() {
        if upper[j] > upper[j - 1] {
            return invalid(
                Condition::II,
                format!(
                    "upper bound increases from {} to {} between levels {} and {}",
                    upper[j - 1],
                    upper[j],
                    levels[j - 1],
                    levels[j]
                ),
            );
        }
    }
    let top = levels.len() - 1;
    if lower[top] > upper[top] {
        return invalid(
            Condition::IV,
            format!(
                "lower bound {} exceeds upper bound {} at level 1",
                lower[top], upper[top]
            ),
        );
    }
    Validation::Valid
}

/// Linear interpolation of a breakpoint table at `alpha`, clamped to the bracketing values.
fn interpolate(levels: &[f64], values: &[f64], alpha: f64) -> f64 {
    let j = levels.partition_point(|&l| l <= alpha);
    if j == 0 {
        return values[0];
    }
    if j == levels.len() {
        return values[levels.len() - 1];
    }
    let (a0, a1) = (levels[j - 1], levels[j]);
    let (v0, v1) = (values[j - 1], values[j]);
    if alpha == a0 {
        return v0;
    }
    let t = (alpha - a0) / (a1 - a0);
    let v = v0 + t * (v1 - v0);
    v.clamp(v0.min(v1), v0.max(v1))
}

/// Sorted union of two level grids.
fn union_grid(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawEnvelope {
    levels: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

/// A fuzzy real number given by piecewise-linear α-cut envelopes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEnvelope", into = "RawEnvelope")]
pub struct FuzzyNumber {
    levels: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl TryFrom<RawEnvelope> for FuzzyNumber {
    type Error = Error;

    fn try_from(raw: RawEnvelope) -> Result<Self> {
        FuzzyNumber::new(raw.levels, raw.lower, raw.upper)
    }
}

impl From<FuzzyNumber> for RawEnvelope {
    fn from(x: FuzzyNumber) -> Self {
        RawEnvelope {
            levels: x.levels,
            lower: x.lower,
            upper: x.upper,
        }
    }
}

impl FuzzyNumber {
    /// Builds a fuzzy number from breakpoint data, collapsing repeated levels.
    pub fn new(levels: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        validate(&levels, &lower, &upper).into_result()?;
        let mut x = FuzzyNumber {
            levels: Vec::with_capacity(levels.len()),
            lower: Vec::with_capacity(levels.len()),
            upper: Vec::with_capacity(levels.len()),
        };
        for j in 0..levels.len() {
            if j > 0 && levels[j] == levels[j - 1] {
                continue;
            }
            x.levels.push(levels[j]);
            x.lower.push(lower[j]);
            x.upper.push(upper[j]);
        }
        Ok(x)
    }

    fn from_parts(levels: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        debug_assert!(validate(&levels, &lower, &upper).is_valid());
        FuzzyNumber { levels, lower, upper }
    }

    /// The embedding `r ↦ r̄`: every α-cut is the singleton `[r, r]`.
    pub fn from_crisp(r: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::InvalidValue(format!("crisp value must be finite, got {r}")));
        }
        Ok(Self::from_parts(vec![0.0, 1.0], vec![r, r], vec![r, r]))
    }

    pub fn zero() -> Self {
        Self::from_parts(vec![0.0, 1.0], vec![0.0, 0.0], vec![0.0, 0.0])
    }

    /// Triangular number with support `[a, c]` and peak `b`.
    pub fn from_triangular(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::from_trapezoidal(a, b, b, c)
    }

    /// Trapezoidal number with support `[a, d]` and core `[b, c]`.
    pub fn from_trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidValue(format!(
                "shape parameters must be finite, got ({a}, {b}, {c}, {d})"
            )));
        }
        if !(a <= b && b <= c && c <= d) {
            return Err(Error::InvalidShape {
                condition: Condition::IV,
                detail: format!("shape parameters must be ordered, got ({a}, {b}, {c}, {d})"),
            });
        }
        Ok(Self::from_parts(vec![0.0, 1.0], vec![a, b], vec![d, c]))
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn lower_at(&self, alpha: f64) -> f64 {
        interpolate(&self.levels, &self.lower, alpha)
    }

    pub fn upper_at(&self, alpha: f64) -> f64 {
        interpolate(&self.levels, &self.upper, alpha)
    }

    /// The α-cut `[lower(α), upper(α)]`; α is clamped to `[0, 1]`.
    pub fn cut(&self, alpha: f64) -> Interval {
        let alpha = alpha.clamp(0.0, 1.0);
        Interval {
            lo: self.lower_at(alpha),
            hi: self.upper_at(alpha),
        }
    }

    /// The 0-cut, i.e. the closed support.
    pub fn support(&self) -> Interval {
        Interval {
            lo: self.lower[0],
            hi: self.upper[0],
        }
    }

    pub fn is_crisp(&self) -> bool {
        self.lower.iter().zip(&self.upper).all(|(l, u)| l == u)
    }

    /// Re-expresses the envelopes on `grid`, which must contain `0` and `1` and be increasing.
    fn resample(&self, grid: &[f64]) -> FuzzyNumber {
        if grid == self.levels.as_slice() {
            return self.clone();
        }
        let lower = grid.iter().map(|&a| self.lower_at(a)).collect();
        let upper = grid.iter().map(|&a| self.upper_at(a)).collect();
        Self::from_parts(grid.to_vec(), lower, upper)
    }

    /// Level-wise combination on the merged grid.
    fn zip_with(&self, other: &FuzzyNumber, f: impl Fn(f64, f64, f64, f64) -> (f64, f64)) -> FuzzyNumber {
        let grid = union_grid(&self.levels, &other.levels);
        let mut lower = Vec::with_capacity(grid.len());
        let mut upper = Vec::with_capacity(grid.len());
        for &a in &grid {
            let (lo, hi) = f(self.lower_at(a), self.upper_at(a), other.lower_at(a), other.upper_at(a));
            lower.push(lo);
            upper.push(hi);
        }
        Self::from_parts(grid, lower, upper)
    }

    /// Multiplication by a real scalar; a negative factor swaps the bounds.
    pub fn scale(&self, c: f64) -> Result<FuzzyNumber> {
        if !c.is_finite() {
            return Err(Error::InvalidValue(format!("scale factor must be finite, got {c}")));
        }
        let (lower, upper) = if c >= 0.0 {
            (
                self.lower.iter().map(|v| c * v).collect(),
                self.upper.iter().map(|v| c * v).collect(),
            )
        } else {
            (
                self.upper.iter().map(|v| c * v).collect(),
                self.lower.iter().map(|v| c * v).collect(),
            )
        };
        Ok(Self::from_parts(self.levels.clone(), lower, upper))
    }

    /// `d(X, 0̄)`.
    pub fn norm(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| l.abs().max(u.abs()))
            .fold(0.0, f64::max)
    }

    pub fn midpoint_profile(&self) -> MidpointProfile {
        midpoint_profile(self)
    }

    /// The symmetric part `[-(upper - lower)/2, (upper - lower)/2]`, i.e. the number
    /// re-centred so that its midpoint profile vanishes.
    pub fn spread(&self) -> FuzzyNumber {
        let half: Vec<f64> = self.lower.iter().zip(&self.upper).map(|(l, u)| (u - l) / 2.0).collect();
        let lower = half.iter().map(|h| -h).collect();
        Self::from_parts(self.levels.clone(), lower, half)
    }
}

/// Both numbers re-expressed on the union of their level grids.
pub fn merge_grids(x: &FuzzyNumber, y: &FuzzyNumber) -> (FuzzyNumber, FuzzyNumber) {
    let grid = union_grid(&x.levels, &y.levels);
    (x.resample(&grid), y.resample(&grid))
}

impl Add for &FuzzyNumber {
    type Output = FuzzyNumber;

    fn add(self, rhs: &FuzzyNumber) -> FuzzyNumber {
        self.zip_with(rhs, |xl, xu, yl, yu| (xl + yl, xu + yu))
    }
}

impl Add for FuzzyNumber {
    type Output = FuzzyNumber;

    fn add(self, rhs: FuzzyNumber) -> FuzzyNumber {
        &self + &rhs
    }
}

impl Neg for &FuzzyNumber {
    type Output = FuzzyNumber;

    fn neg(self) -> FuzzyNumber {
        FuzzyNumber::from_parts(
            self.levels.clone(),
            self.upper.iter().map(|v| -v).collect(),
            self.lower.iter().map(|v| -v).collect(),
        )
    }
}

impl Neg for FuzzyNumber {
    type Output = FuzzyNumber;

    fn neg(self) -> FuzzyNumber {
        -&self
    }
}

/// `X - Y = X + (-Y)`, i.e. `[X̲ - Ȳ, X̄ - Y̲]` at every level.
impl Sub for &FuzzyNumber {
    type Output = FuzzyNumber;

    fn sub(self, rhs: &FuzzyNumber) -> FuzzyNumber {
        self.zip_with(rhs, |xl, xu, yl, yu| (xl - yu, xu - yl))
    }
}

impl Sub for FuzzyNumber {
    type Output = FuzzyNumber;

    fn sub(self, rhs: FuzzyNumber) -> FuzzyNumber {
        &self - &rhs
    }
}

/// The supremum metric `sup_α max(|X̲ - Y̲|, |X̄ - Ȳ|)`, evaluated at the merged breakpoints.
pub fn metric_d(x: &FuzzyNumber, y: &FuzzyNumber) -> f64 {
    let grid = union_grid(&x.levels, &y.levels);
    grid.iter()
        .map(|&a| {
            let dl = (x.lower_at(a) - y.lower_at(a)).abs();
            let du = (x.upper_at(a) - y.upper_at(a)).abs();
            dl.max(du)
        })
        .fold(0.0, f64::max)
}

/// `α ↦ (X̲(α) + X̄(α)) / 2` over the grid of the source number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MidpointProfile {
    levels: Vec<f64>,
    mids: Vec<f64>,
}

impl MidpointProfile {
    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(r: f64) -> Self {
        MidpointProfile {
            levels: vec![0.0, 1.0],
            mids: vec![r, r],
        }
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn mids(&self) -> &[f64] {
        &self.mids
    }

    pub fn at(&self, alpha: f64) -> f64 {
        interpolate(&self.levels, &self.mids, alpha.clamp(0.0, 1.0))
    }

    /// `sup_α |P(α)|`.
    pub fn sup_abs(&self) -> f64 {
        self.mids.iter().map(|m| m.abs()).fold(0.0, f64::max)
    }
}

/// Pointwise difference of two profiles on their merged grid.
impl Sub for &MidpointProfile {
    type Output = MidpointProfile;

    fn sub(self, rhs: &MidpointProfile) -> MidpointProfile {
        let levels = union_grid(&self.levels, &rhs.levels);
        let mids = levels.iter().map(|&a| self.at(a) - rhs.at(a)).collect();
        MidpointProfile { levels, mids }
    }
}

pub fn midpoint_profile(x: &FuzzyNumber) -> MidpointProfile {
    MidpointProfile {
        levels: x.levels.clone(),
        mids: x.lower.iter().zip(&x.upper).map(|(l, u)| (l + u) / 2.0).collect(),
    }
}

/// `sup_α |P(α) - Q(α)|` over the merged grid.
pub fn profile_sup_distance(p: &MidpointProfile, q: &MidpointProfile) -> f64 {
    let grid = union_grid(&p.levels, &q.levels);
    grid.iter().map(|&a| (p.at(a) - q.at(a)).abs()).fold(0.0, f64::max)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be non-negative, got {tol}"
        )));
    }
    Ok(())
}

/// `X = -X`, decided as a vanishing midpoint profile.
pub fn is_symmetric(x: &FuzzyNumber, tol: f64) -> Result<bool> {
    check_tol(tol)?;
    Ok(midpoint_profile(x).sup_abs() <= tol)
}

/// `X ~ Y`, decided by comparing midpoint profiles.
///
/// Equal midpoints are also sufficient here: with `S₁ = Y.spread()` and
/// `S₂ = X.spread()` both sides of `X + S₁ = Y + S₂` have the cuts
/// `[m - hx - hy, m + hx + hy]`; see [`equivalence_witness`].
pub fn are_equivalent(x: &FuzzyNumber, y: &FuzzyNumber, tol: f64) -> Result<bool> {
    check_tol(tol)?;
    Ok(profile_sup_distance(&midpoint_profile(x), &midpoint_profile(y)) <= tol)
}

/// Symmetric numbers `(S₁, S₂)` with `X + S₁ = Y + S₂`, when `X ~ Y` within `tol`.
pub fn equivalence_witness(x: &FuzzyNumber, y: &FuzzyNumber, tol: f64) -> Result<Option<(FuzzyNumber, FuzzyNumber)>> {
    if !are_equivalent(x, y, tol)? {
        return Ok(None);
    }
    Ok(Some((y.spread(), x.spread())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri(a: f64, b: f64, c: f64) -> FuzzyNumber {
        FuzzyNumber::from_triangular(a, b, c).unwrap()
    }

    fn crisp(r: f64) -> FuzzyNumber {
        FuzzyNumber::from_crisp(r).unwrap()
    }

    #[test]
    fn triangular_cut_at_half() {
        let x = tri(-2.0, 0.0, 2.0);
        assert_eq!(x.cut(0.5), Interval { lo: -1.0, hi: 1.0 });
    }

    #[test]
    fn degenerate_triangle_is_crisp() {
        for r in [-3.5, 0.0, 7.25] {
            let x = tri(r, r, r);
            assert!(x.is_crisp());
            assert_eq!(x, crisp(r));
        }
    }

    #[test]
    fn triangular_shape_errors() {
        assert!(matches!(
            FuzzyNumber::from_triangular(1.0, 0.0, 2.0),
            Err(Error::InvalidShape { .. })
        ));
        assert!(FuzzyNumber::from_triangular(0.0, 3.0, 2.0).is_err());
        assert!(FuzzyNumber::from_triangular(f64::NAN, 0.0, 2.0).is_err());
    }

    #[test]
    fn crisp_embedding() {
        assert_eq!(crisp(0.0), FuzzyNumber::zero());
        assert_eq!(crisp(5.0).cut(0.3), Interval { lo: 5.0, hi: 5.0 });
        for k in 0..20 {
            assert_eq!(metric_d(&crisp(k as f64), &FuzzyNumber::zero()), k as f64);
        }
        assert!(matches!(
            FuzzyNumber::from_crisp(f64::INFINITY),
            Err(Error::InvalidValue(_))
        ));
    }

    #[test]
    fn validate_reports_condition() {
        assert!(validate(&[0.0, 1.0], &[0.0, 1.0], &[2.0, 1.0]).is_valid());
        assert_eq!(
            validate(&[0.0, 1.0], &[0.0, -1.0], &[2.0, 1.0]).condition(),
            Some(Condition::I)
        );
        assert_eq!(
            validate(&[0.0, 1.0], &[0.0, 0.0], &[2.0, 3.0]).condition(),
            Some(Condition::II)
        );
        assert_eq!(
            validate(&[0.0, 1.0], &[0.0, 1.5], &[2.0, 1.0]).condition(),
            Some(Condition::IV)
        );
        assert_eq!(
            validate(&[0.0, 0.0, 1.0], &[-1.0, 0.0, 0.0], &[1.0, 0.5, 0.0]).condition(),
            Some(Condition::III)
        );
        assert_eq!(
            validate(&[0.0, 0.5, 0.5, 1.0], &[0.0, 0.1, 0.2, 0.5], &[1.0, 1.0, 1.0, 0.5]).condition(),
            Some(Condition::Grid)
        );
        assert_eq!(
            validate(&[0.1, 1.0], &[0.0, 0.0], &[0.0, 0.0]).condition(),
            Some(Condition::Grid)
        );
        assert_eq!(
            validate(&[0.0, 0.9], &[0.0, 0.0], &[0.0, 0.0]).condition(),
            Some(Condition::Grid)
        );
        assert_eq!(
            validate(&[0.0, 1.0], &[0.0], &[0.0, 0.0]).condition(),
            Some(Condition::Grid)
        );
        assert_eq!(
            validate(&[0.0, 1.0], &[f64::NEG_INFINITY, 0.0], &[0.0, 0.0]).condition(),
            Some(Condition::I)
        );
    }

    #[test]
    fn duplicate_levels_collapse() {
        let x = FuzzyNumber::new(
            vec![0.0, 0.5, 0.5, 1.0],
            vec![0.0, 1.0, 1.0, 2.0],
            vec![4.0, 3.0, 3.0, 2.0],
        )
        .unwrap();
        assert_eq!(x.levels(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn merge_onto_finer_grid() {
        let x = tri(0.0, 1.0, 2.0);
        let y = FuzzyNumber::new(vec![0.0, 0.5, 1.0], vec![0.0, 0.25, 1.0], vec![3.0, 2.0, 1.0]).unwrap();
        let (xm, ym) = merge_grids(&x, &y);
        assert_eq!(xm.levels(), &[0.0, 0.5, 1.0]);
        assert_eq!(ym, y);
        assert_eq!(xm.cut(0.5), Interval { lo: 0.5, hi: 1.5 });
        let (a, b) = merge_grids(&x, &x);
        assert_eq!(a, x);
        assert_eq!(b, x);
    }

    #[test]
    fn merged_triangular_matches_closed_form() {
        let x = tri(-1.3, 0.4, 2.9);
        let grid: Vec<f64> = (0..=16).map(|j| j as f64 / 16.0).collect();
        let y = FuzzyNumber::new(grid.clone(), grid.clone(), grid.iter().map(|a| 3.0 - a).collect()).unwrap();
        let (xm, _) = merge_grids(&x, &y);
        for (j, &a) in xm.levels().iter().enumerate() {
            assert!((xm.lower()[j] - (-1.3 + a * 1.7)).abs() < 1e-12);
            assert!((xm.upper()[j] - (2.9 - a * 2.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn widening_triangles_difference() {
        for k in 0..50 {
            let k = k as f64;
            let d = &tri(-k, 0.0, k) - &tri(-k - 1.0, 0.0, k + 1.0);
            assert_eq!(d, tri(-2.0 * k - 1.0, 0.0, 2.0 * k + 1.0));
            assert_eq!(metric_d(&d, &FuzzyNumber::zero()), 2.0 * k + 1.0);
            assert_eq!(midpoint_profile(&tri(-k, 0.0, k)).sup_abs(), 0.0);
        }
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&crisp(2.5) + &crisp(-4.0), crisp(-1.5));
        assert_eq!(&tri(1.0, 2.0, 3.0) - &tri(0.0, 1.0, 2.0), tri(-1.0, 1.0, 3.0));
        assert_eq!(tri(1.0, 2.0, 3.0).scale(-2.0).unwrap(), tri(-6.0, -4.0, -2.0));
        assert_eq!(-tri(1.0, 2.0, 3.0), tri(-3.0, -2.0, -1.0));
        assert!(tri(0.0, 1.0, 2.0).scale(f64::NAN).is_err());
    }

    #[test]
    fn metric_examples() {
        assert_eq!(metric_d(&crisp(3.0), &crisp(-1.5)), 4.5);
        assert_eq!(metric_d(&tri(0.0, 1.0, 2.0), &tri(1.0, 2.0, 3.0)), 1.0);
    }

    #[test]
    fn midpoint_examples() {
        assert_eq!(midpoint_profile(&crisp(3.0)), MidpointProfile::constant(3.0));
        let p = midpoint_profile(&tri(0.0, 1.0, 4.0));
        for j in 0..=100 {
            let a = j as f64 / 100.0;
            assert!((p.at(a) - (2.0 - a)).abs() < 1e-15);
        }
        assert_eq!(profile_sup_distance(&p, &MidpointProfile::zero()), 2.0);
        assert_eq!(
            profile_sup_distance(&MidpointProfile::constant(1.5), &MidpointProfile::constant(-2.0)),
            3.5
        );
    }

    #[test]
    fn symmetry_and_equivalence() {
        assert!(is_symmetric(&tri(-1.0, 0.0, 1.0), DEFAULT_TOL).unwrap());
        assert!(is_symmetric(&crisp(0.0), DEFAULT_TOL).unwrap());
        assert!(!is_symmetric(&tri(0.0, 1.0, 2.0), DEFAULT_TOL).unwrap());
        assert!(is_symmetric(&crisp(0.0), -1.0).is_err());

        let x = tri(0.0, 1.0, 2.0);
        assert!(are_equivalent(&x, &x, 0.0).unwrap());
        assert!(are_equivalent(&tri(-1.0, 0.0, 1.0), &crisp(0.0), DEFAULT_TOL).unwrap());
        assert!(are_equivalent(&x, &crisp(1.0), DEFAULT_TOL).unwrap());
        assert!(!are_equivalent(&x, &crisp(0.0), DEFAULT_TOL).unwrap());
        assert!(are_equivalent(&x, &x, f64::NAN).is_err());
    }

    #[test]
    fn witness_balances_sums() {
        let x = tri(0.0, 1.0, 2.0);
        let y = FuzzyNumber::from_trapezoidal(-3.0, 0.5, 1.5, 5.0).unwrap();
        let (s1, s2) = equivalence_witness(&x, &y, DEFAULT_TOL).unwrap().unwrap();
        assert!(is_symmetric(&s1, 0.0).unwrap());
        assert!(is_symmetric(&s2, 0.0).unwrap());
        assert!(metric_d(&(&x + &s1), &(&y + &s2)) < 1e-12);
        assert!(equivalence_witness(&x, &crisp(0.0), DEFAULT_TOL).unwrap().is_none());
    }

    #[test]
    fn serde_rejects_invalid_envelope() {
        let ok: FuzzyNumber = serde_json::from_str(r#"{"levels":[0,1],"lower":[0,1],"upper":[2,1]}"#).unwrap();
        assert_eq!(ok, tri(0.0, 1.0, 2.0));
        assert!(serde_json::from_str::<FuzzyNumber>(r#"{"levels":[0,1],"lower":[0,-1],"upper":[2,1]}"#).is_err());
        assert!(serde_json::from_str::<FuzzyNumber>(r#"{"levels":[0,1],"lower":[0,0],"upper":[0,0],"x":1}"#).is_err());
    }

    fn arb_number() -> impl Strategy<Value = FuzzyNumber> {
        let dyadic = prop::collection::btree_set(1u32..16, 0..4);
        (
            -50.0..50.0f64,
            prop::collection::vec(0.0..5.0f64, 20),
            prop::collection::vec(0.0..5.0f64, 20),
            0.0..3.0f64,
            dyadic,
        )
            .prop_map(|(centre, lsteps, usteps, core, interior)| {
                let mut levels = vec![0.0];
                levels.extend(interior.iter().map(|&j| j as f64 / 16.0));
                levels.push(1.0);
                let n = levels.len();
                // build from the top level outward so the envelopes stay monotone
                let mut lower = vec![0.0; n];
                let mut upper = vec![0.0; n];
                lower[n - 1] = centre - core;
                upper[n - 1] = centre + core;
                for j in (0..n - 1).rev() {
                    lower[j] = lower[j + 1] - lsteps[j];
                    upper[j] = upper[j + 1] + usteps[j];
                }
                FuzzyNumber::new(levels, lower, upper).unwrap()
            })
    }

    proptest! {
        #[test]
        fn metric_axioms(x in arb_number(), y in arb_number(), z in arb_number()) {
            prop_assert_eq!(metric_d(&x, &y), metric_d(&y, &x));
            prop_assert_eq!(metric_d(&x, &x), 0.0);
            prop_assert!(metric_d(&x, &z) <= metric_d(&x, &y) + metric_d(&y, &z) + 1e-12);
        }

        #[test]
        fn translation_invariance(x in arb_number(), y in arb_number(), z in arb_number()) {
            let lhs = metric_d(&(&x + &z), &(&y + &z));
            prop_assert!((lhs - metric_d(&x, &y)).abs() <= 1e-12 * (1.0 + x.norm() + y.norm() + z.norm()));
        }

        #[test]
        fn arithmetic_closure(x in arb_number(), y in arb_number(), c in -4.0..4.0f64) {
            for r in [&x + &y, &x - &y, -&x, x.scale(c).unwrap()] {
                prop_assert!(validate(r.levels(), r.lower(), r.upper()).is_valid());
            }
            prop_assert_eq!(-(-&x), x.clone());
            prop_assert!(is_symmetric(&(&x - &x), 1e-12).unwrap());
        }

        #[test]
        fn midpoint_bounded_by_norm(x in arb_number()) {
            prop_assert!(profile_sup_distance(&midpoint_profile(&x), &MidpointProfile::zero()) <= metric_d(&x, &FuzzyNumber::zero()));
        }

        #[test]
        fn midpoint_is_linear_under_difference(x in arb_number(), y in arb_number()) {
            let lhs = midpoint_profile(&(&x - &y));
            let rhs = &midpoint_profile(&x) - &midpoint_profile(&y);
            prop_assert!(profile_sup_distance(&lhs, &rhs) <= 1e-12 * (1.0 + x.norm() + y.norm()));
        }
    }
}
