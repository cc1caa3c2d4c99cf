//! Numerical scenarios for the inclusion, preservation and midpoint results on
//! `bv^F(u, v)`.
//!
//! Each [`Scenario`] carries its full parameter record, so a serialized scenario
//! re-runs to the same [`ScenarioReport`]. Randomized scenarios draw from a seeded
//! ChaCha stream and record the seed.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_series, Policy, Verdict};
use crate::error::{Error, Result};
use crate::fuzzy::{are_equivalent, is_symmetric, metric_d, FuzzyNumber, DEFAULT_TOL};
use crate::real::RealSequence;
use crate::scaled::Scaled;
use crate::sequence::{alternating_crisp_ramp, widening_triangles, Family, FuzzySequence};
use crate::spaces::{
    bv_metric_d, c_delta_metric_rho, cesaro_means, lp_partial, midpoint_variation_report, statistical_density,
    sup_norm_partial, variation_from_distances, variation_report, Growth,
};
use crate::weights::WeightScheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioName {
    #[serde(rename = "T2_INCLUSION")]
    T2Inclusion,
    #[serde(rename = "T2_STRICT_EX1")]
    T2StrictEx1,
    #[serde(rename = "T3_LIMIT_PRESERVE")]
    T3LimitPreserve,
    #[serde(rename = "T4_STAT_NULL")]
    T4StatNull,
    #[serde(rename = "T5_CESARO")]
    T5Cesaro,
    #[serde(rename = "T6_EQUIVALENCE")]
    T6Equivalence,
    #[serde(rename = "T7_MIDPOINT")]
    T7Midpoint,
    #[serde(rename = "R2_CONVERSE")]
    R2Converse,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 8] = [
        ScenarioName::T2Inclusion,
        ScenarioName::T2StrictEx1,
        ScenarioName::T3LimitPreserve,
        ScenarioName::T4StatNull,
        ScenarioName::T5Cesaro,
        ScenarioName::T6Equivalence,
        ScenarioName::T7Midpoint,
        ScenarioName::R2Converse,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioName::T2Inclusion => "T2_INCLUSION",
            ScenarioName::T2StrictEx1 => "T2_STRICT_EX1",
            ScenarioName::T3LimitPreserve => "T3_LIMIT_PRESERVE",
            ScenarioName::T4StatNull => "T4_STAT_NULL",
            ScenarioName::T5Cesaro => "T5_CESARO",
            ScenarioName::T6Equivalence => "T6_EQUIVALENCE",
            ScenarioName::T7Midpoint => "T7_MIDPOINT",
            ScenarioName::R2Converse => "R2_CONVERSE",
        }
    }
}

/// One sub-case of the equivalence scenario: a base sequence `Z`, its scheme, and the
/// verdict both `Z + S′` and `Z + S` are expected to share.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceCase {
    pub base: FuzzySequence,
    pub scheme: WeightScheme,
    pub expected: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", deny_unknown_fields)]
pub enum Scenario {
    /// `l_p^F ⊂ bv^F(u, v)` for `u ∈ l₁`, `v ∈ l_q`, on a witness sequence in `l_p^F`.
    #[serde(rename = "T2_INCLUSION")]
    T2Inclusion {
        sequence: FuzzySequence,
        scheme: WeightScheme,
        exponents: Vec<f64>,
        horizon: usize,
        policy: Policy,
    },
    /// The alternating crisp ramp lies in `bv^F(u, v)` but not in `l_∞^F`.
    #[serde(rename = "T2_STRICT_EX1")]
    T2StrictEx1 {
        sequence: FuzzySequence,
        scheme: WeightScheme,
        horizon: usize,
        /// Reference value of `Σ k⁻³`.
        zeta3: f64,
        zeta_tol: f64,
        /// `t_k·k²` is averaged over `[band_from, horizon]`.
        band_from: usize,
        band: (f64, f64),
        row_sum_samples: Vec<usize>,
        policy: Policy,
    },
    /// Convergence in `ρ` carries over to `D` when the row sums are summable.
    #[serde(rename = "T3_LIMIT_PRESERVE")]
    T3LimitPreserve {
        base: FuzzySequence,
        scheme: WeightScheme,
        horizon: usize,
        /// Perturbation sizes `n`; the perturbation is `triangular(-1/n, 0, 1/n)`.
        perturbations: Vec<f64>,
        rel_slack: f64,
        min_decade_factor: f64,
        policy: Policy,
    },
    /// `bv^F(u, v) ⊂ S_0^F(Δ)` when the row sums are bounded away from zero.
    #[serde(rename = "T4_STAT_NULL")]
    T4StatNull {
        sequence: FuzzySequence,
        scheme: WeightScheme,
        horizon: usize,
        eps: f64,
        density_max: f64,
        chain_eps: Vec<f64>,
        policy: Policy,
    },
    /// A Cesàro-convergent sequence lies in `bv^F(u, v)` when `G(u′, v)` has summable row sums.
    #[serde(rename = "T5_CESARO")]
    T5Cesaro {
        sequence: FuzzySequence,
        limit: FuzzyNumber,
        scheme: WeightScheme,
        horizon: usize,
        eps: f64,
        policy: Policy,
    },
    /// Equivalent sequences with bounded symmetric witnesses share `bv^F(u, v)` membership.
    #[serde(rename = "T6_EQUIVALENCE")]
    T6Equivalence {
        cases: Vec<EquivalenceCase>,
        horizon: usize,
        spread_bound: f64,
        seed: u64,
        policy: Policy,
    },
    /// Midpoint sequences of `bv^F(u, v)` members are members, termwise.
    #[serde(rename = "T7_MIDPOINT")]
    T7Midpoint {
        samples: usize,
        horizon: usize,
        seed: u64,
        policy: Policy,
    },
    /// The midpoint sequence can be in `bv^F(u, v)` while the sequence is not.
    #[serde(rename = "R2_CONVERSE")]
    R2Converse {
        sequence: FuzzySequence,
        scheme: WeightScheme,
        horizon: usize,
        policy: Policy,
    },
}

pub fn inverse_quartic_scheme() -> WeightScheme {
    WeightScheme::new(RealSequence::power(1.0, 0.0, -4.0), RealSequence::constant(1.0), 1)
}

pub fn unit_scheme(start: usize) -> WeightScheme {
    WeightScheme::new(RealSequence::constant(1.0), RealSequence::constant(1.0), start)
}

/// `u_k = 2^{-k}`, `v_i = 2^i`, with row sums `2 - 2^{-k}`.
pub fn dyadic_scheme() -> WeightScheme {
    WeightScheme::new(RealSequence::geometric(1.0, 0.5), RealSequence::geometric(1.0, 2.0), 0)
}

impl Scenario {
    pub fn name(&self) -> ScenarioName {
        match self {
            Scenario::T2Inclusion { .. } => ScenarioName::T2Inclusion,
            Scenario::T2StrictEx1 { .. } => ScenarioName::T2StrictEx1,
            Scenario::T3LimitPreserve { .. } => ScenarioName::T3LimitPreserve,
            Scenario::T4StatNull { .. } => ScenarioName::T4StatNull,
            Scenario::T5Cesaro { .. } => ScenarioName::T5Cesaro,
            Scenario::T6Equivalence { .. } => ScenarioName::T6Equivalence,
            Scenario::T7Midpoint { .. } => ScenarioName::T7Midpoint,
            Scenario::R2Converse { .. } => ScenarioName::R2Converse,
        }
    }

    /// Default parameters, with horizons multiplied by `scale`.
    pub fn default_for(name: ScenarioName, seed: u64, scale: usize) -> Result<Scenario> {
        if scale == 0 {
            return Err(Error::config("scale", "horizon scale factor must be at least 1"));
        }
        let policy = Policy::default();
        Ok(match name {
            ScenarioName::T2Inclusion => Scenario::T2Inclusion {
                sequence: FuzzySequence::new(Family::crisp(RealSequence::geometric(1.0, 0.9)), 0),
                scheme: WeightScheme::new(
                    RealSequence::power(1.0, 1.0, -2.0),
                    RealSequence::power(1.0, 1.0, -1.0),
                    0,
                ),
                exponents: vec![1.5, 2.0, 4.0],
                horizon: 2_000 * scale,
                policy,
            },
            ScenarioName::T2StrictEx1 => Scenario::T2StrictEx1 {
                sequence: FuzzySequence::new(alternating_crisp_ramp(), 1),
                scheme: inverse_quartic_scheme(),
                horizon: 10_000 * scale,
                zeta3: 1.2020569,
                zeta_tol: 1e-6,
                band_from: 1_000,
                band: (0.45, 0.55),
                row_sum_samples: vec![1, 2, 3, 10, 100, 1_000, 5_000, 10_000],
                policy,
            },
            ScenarioName::T3LimitPreserve => Scenario::T3LimitPreserve {
                base: FuzzySequence::new(
                    Family::triangular(
                        RealSequence::Sum {
                            terms: vec![RealSequence::constant(1.0), RealSequence::power(-1.0, 0.0, -1.0)],
                        },
                        RealSequence::constant(1.0),
                        RealSequence::Sum {
                            terms: vec![RealSequence::constant(1.0), RealSequence::power(1.0, 0.0, -1.0)],
                        },
                    ),
                    1,
                ),
                scheme: inverse_quartic_scheme(),
                horizon: 10_000 * scale,
                perturbations: vec![10.0, 100.0, 1_000.0, 10_000.0],
                rel_slack: DEFAULT_TOL,
                min_decade_factor: 9.0,
                policy,
            },
            ScenarioName::T4StatNull => Scenario::T4StatNull {
                sequence: FuzzySequence::new(Family::crisp(RealSequence::geometric(4.0 / 3.0, 0.25)), 0),
                scheme: dyadic_scheme(),
                horizon: 10_000 * scale,
                eps: 0.01,
                density_max: 5e-4,
                chain_eps: vec![1e-3, 1e-2, 0.1, 0.5],
                policy,
            },
            ScenarioName::T5Cesaro => Scenario::T5Cesaro {
                sequence: FuzzySequence::new(
                    Family::crisp(RealSequence::Sum {
                        terms: vec![
                            RealSequence::constant(5.0),
                            RealSequence::alternating(
                                RealSequence::power(1.0, 1.0, -0.5),
                                RealSequence::power(-1.0, 1.0, -0.5),
                            ),
                        ],
                    }),
                    1,
                ),
                limit: FuzzyNumber::from_crisp(5.0)?,
                scheme: inverse_quartic_scheme(),
                horizon: 1_000 * scale,
                eps: 0.1,
                policy,
            },
            ScenarioName::T6Equivalence => Scenario::T6Equivalence {
                cases: vec![
                    EquivalenceCase {
                        base: FuzzySequence::new(alternating_crisp_ramp(), 1),
                        scheme: inverse_quartic_scheme(),
                        expected: Verdict::Convergent,
                    },
                    EquivalenceCase {
                        base: FuzzySequence::new(widening_triangles(), 1),
                        scheme: WeightScheme::new(RealSequence::power(1.0, 0.0, -2.5), RealSequence::constant(1.0), 1),
                        expected: Verdict::Divergent,
                    },
                ],
                horizon: 1_000 * scale,
                spread_bound: 1.0,
                seed,
                policy,
            },
            ScenarioName::T7Midpoint => Scenario::T7Midpoint {
                samples: 100,
                horizon: 1_000 * scale,
                seed,
                policy,
            },
            ScenarioName::R2Converse => Scenario::R2Converse {
                sequence: FuzzySequence::new(widening_triangles(), 0),
                scheme: unit_scheme(0),
                horizon: 1_000 * scale,
                policy,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "==")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub measured: f64,
    pub relation: Relation,
    pub threshold: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: ScenarioName,
    pub scenario: Scenario,
    pub assertions: Vec<Assertion>,
    pub passed: bool,
    /// Not serialized, so that reports of identical runs are byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl ScenarioReport {
    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }
}

#[derive(Default)]
struct Checks(Vec<Assertion>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, measured: f64, relation: Relation, threshold: f64, detail: String) {
        let pass = match relation {
            Relation::Le => measured <= threshold,
            Relation::Ge => measured >= threshold,
            Relation::Gt => measured > threshold,
            Relation::Eq => measured == threshold,
        };
        self.0.push(Assertion {
            name: name.into(),
            measured,
            relation,
            threshold,
            pass,
            detail,
        });
    }

    fn le(&mut self, name: impl Into<String>, measured: f64, threshold: f64) {
        self.push(name, measured, Relation::Le, threshold, String::new());
    }

    fn ge(&mut self, name: impl Into<String>, measured: f64, threshold: f64) {
        self.push(name, measured, Relation::Ge, threshold, String::new());
    }

    fn gt(&mut self, name: impl Into<String>, measured: f64, threshold: f64) {
        self.push(name, measured, Relation::Gt, threshold, String::new());
    }

    fn eq(&mut self, name: impl Into<String>, measured: f64, threshold: f64) {
        self.push(name, measured, Relation::Eq, threshold, String::new());
    }

    fn holds(&mut self, name: impl Into<String>, ok: bool, detail: String) {
        self.push(name, if ok { 1.0 } else { 0.0 }, Relation::Eq, 1.0, detail);
    }

    fn verdict(&mut self, name: impl Into<String>, got: Verdict, want: Verdict, slope: Option<f64>) {
        let detail = match slope {
            Some(s) => format!("{got:?} (log-log slope {s:.4})"),
            None => format!("{got:?}"),
        };
        self.holds(name, got == want, detail);
    }
}

fn check_horizon(s: &WeightScheme, horizon: usize) -> Result<()> {
    if horizon < s.start {
        return Err(Error::config(
            "horizon",
            format!("horizon {horizon} is below the start index {}", s.start),
        ));
    }
    s.check_admissible(horizon)
        .map_err(|e| Error::config("scheme", e.to_string()))
}

fn max_ratio(pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    pairs
        .map(|(lhs, rhs)| if lhs == 0.0 { 0.0 } else { lhs / rhs })
        .fold(0.0, f64::max)
}

pub fn run_scenario(sc: &Scenario) -> Result<ScenarioReport> {
    let started = Instant::now();
    let mut c = Checks::default();
    match sc {
        Scenario::T2Inclusion {
            sequence,
            scheme,
            exponents,
            horizon,
            policy,
        } => run_inclusion(&mut c, sequence, scheme, exponents, *horizon, policy)?,
        Scenario::T2StrictEx1 {
            sequence,
            scheme,
            horizon,
            zeta3,
            zeta_tol,
            band_from,
            band,
            row_sum_samples,
            policy,
        } => {
            check_horizon(scheme, *horizon)?;
            let mut worst = 0.0f64;
            for &k in row_sum_samples.iter().filter(|&&k| k >= scheme.start && k <= *horizon) {
                let exact = 1.0 / (k as f64).powi(3);
                worst = worst.max((scheme.row_sum(k)? - exact).abs() / exact);
            }
            c.le("row_sum(k) = 1/k^3, max relative error", worst, 4.0 * f64::EPSILON);
            let rows = scheme.row_sum_diagnostic(*horizon, policy)?;
            c.le("|sum |r_k| - zeta(3)|", (rows.abs_sum - zeta3).abs(), *zeta_tol);
            c.verdict(
                "row sums in l1",
                rows.verdict.verdict,
                Verdict::Convergent,
                rows.verdict.slope,
            );
            let sup = sup_norm_partial(sequence, *horizon, policy)?;
            c.holds(
                "sequence not in l_inf (sup norm growing)",
                sup.growth == Growth::Growing,
                format!("{:?}, sup {}", sup.growth, sup.sup),
            );
            let var = variation_report(sequence, scheme, *horizon, policy)?;
            c.verdict(
                "sequence in bv(u,v)",
                var.verdict.verdict,
                Verdict::Convergent,
                var.verdict.slope,
            );
            let from = (*band_from).max(scheme.start).min(*horizon);
            let scaled: Vec<f64> = (from..=*horizon)
                .map(|k| var.term(k) * (k as f64) * (k as f64))
                .collect();
            let mean = scaled.iter().sum::<f64>() / scaled.len() as f64;
            c.ge("mean t_k k^2 (lower band)", mean, band.0);
            c.le("mean t_k k^2 (upper band)", mean, band.1);
        }
        Scenario::T3LimitPreserve {
            base,
            scheme,
            horizon,
            perturbations,
            rel_slack,
            min_decade_factor,
            policy,
        } => {
            check_horizon(scheme, *horizon)?;
            let rows = scheme.row_sum_diagnostic(*horizon, policy)?;
            c.verdict(
                "row sums in l1",
                rows.verdict.verdict,
                Verdict::Convergent,
                rows.verdict.slope,
            );
            let lead = (scheme.u_at(scheme.start)? * scheme.v_at(scheme.start)?).abs();
            let mut previous: Option<f64> = None;
            for &n in perturbations {
                let perturbed = base.perturbed(Family::symmetric_triangle(1.0 / n));
                let d = bv_metric_d(&perturbed, base, scheme, *horizon)?;
                let rho = c_delta_metric_rho(&perturbed, base, *horizon)?;
                let bound = (lead + 2.0 * rows.abs_sum) / n;
                c.le(
                    format!("n={n}: D <= (|u v| + 2 sum|r|)/n"),
                    d,
                    bound * (1.0 + rel_slack),
                );
                c.le(format!("n={n}: rho <= 3/n"), rho, 3.0 / n * (1.0 + rel_slack));
                c.le(
                    format!("n={n}: D / rho <= sum|r| + |u v|"),
                    d / rho,
                    rows.abs_sum + lead,
                );
                if let Some(prev) = previous {
                    c.ge(format!("n={n}: D decay factor per step"), prev / d, *min_decade_factor);
                }
                previous = Some(d);
            }
        }
        Scenario::T4StatNull {
            sequence,
            scheme,
            horizon,
            eps,
            density_max,
            chain_eps,
            policy,
        } => {
            check_horizon(scheme, *horizon)?;
            let positive = (scheme.start..=*horizon).try_fold(true, |ok, k| {
                Ok::<_, Error>(ok && scheme.u_scaled(k)? > Scaled::ZERO && scheme.v_scaled(k)? > Scaled::ZERO)
            })?;
            c.holds("scheme is positive", positive, String::new());
            let rows = scheme.row_sum_diagnostic(*horizon, policy)?;
            c.gt("inf |r_k|", rows.inf_abs, 0.0);
            let var = variation_report(sequence, scheme, *horizon, policy)?;
            c.verdict(
                "sequence in bv(u,v)",
                var.verdict.verdict,
                Verdict::Convergent,
                var.verdict.slope,
            );
            let density = statistical_density(sequence, *eps, *horizon)?;
            c.le(format!("density of d(dX_k) >= {eps}"), density, *density_max);
            for &e in chain_eps {
                let count = var.distances.iter().filter(|&&d| d >= e / rows.inf_abs).count();
                c.le(
                    format!("eps={e}: eps * #{{d_k >= eps/m}} <= V_n"),
                    e * count as f64,
                    var.total,
                );
            }
        }
        Scenario::T5Cesaro {
            sequence,
            limit,
            scheme,
            horizon,
            eps,
            policy,
        } => {
            check_horizon(scheme, *horizon)?;
            let prime = scheme.uprime()?;
            let rows = prime.row_sum_diagnostic(*horizon, policy)?;
            c.verdict(
                "row sums of G(u',v) in l1",
                rows.verdict.verdict,
                Verdict::Convergent,
                rows.verdict.slope,
            );
            let means = cesaro_means(sequence, limit, *horizon)?;
            c.le("Cesaro distance at horizon", *means.last().expect("non-empty"), *eps);
            let k0 = means.iter().position(|m| m <= eps).map(|j| sequence.start + j);
            c.holds("k0 found", k0.is_some(), format!("k0 = {k0:?}"));
            let var = variation_report(sequence, scheme, *horizon, policy)?;
            c.verdict(
                "sequence in bv(u,v)",
                var.verdict.verdict,
                Verdict::Convergent,
                var.verdict.slope,
            );
            let dl = limit.norm();
            let mut v_sum = 0.0;
            let mut pairs = Vec::new();
            for k in scheme.start..=*horizon {
                v_sum += scheme.v_at(k)?;
                if k0.is_some_and(|k0| k >= k0) {
                    let bound = 2.0 * (eps + dl) * (k as f64 * scheme.u_at(k)?).abs() * v_sum.abs();
                    pairs.push((var.term(k), bound));
                }
            }
            c.le(
                "max_k>=k0 t_k / (2(eps + d(L,0)) |k u_k| |sum v_i|)",
                max_ratio(pairs.into_iter()),
                1.0,
            );
        }
        Scenario::T6Equivalence {
            cases,
            horizon,
            spread_bound,
            seed,
            policy,
        } => run_equivalence(&mut c, cases, *horizon, *spread_bound, *seed, policy)?,
        Scenario::T7Midpoint {
            samples,
            horizon,
            seed,
            policy,
        } => run_midpoint(&mut c, *samples, *horizon, *seed, policy)?,
        Scenario::R2Converse {
            sequence,
            scheme,
            horizon,
            policy,
        } => {
            check_horizon(scheme, *horizon)?;
            let mid = midpoint_variation_report(sequence, scheme, *horizon, policy)?;
            c.eq("midpoint sequence V_K", mid.total, 0.0);
            c.verdict(
                "midpoint sequence in bv(u,v)",
                mid.verdict.verdict,
                Verdict::Convergent,
                mid.verdict.slope,
            );
            let var = variation_report(sequence, scheme, *horizon, policy)?;
            c.verdict(
                "sequence in bv(u,v)",
                var.verdict.verdict,
                Verdict::Divergent,
                var.verdict.slope,
            );
            let worst = (scheme.start..=*horizon)
                .map(|k| (var.term(k) - ((k + 1) * (k + 1)) as f64).abs())
                .fold(0.0, f64::max);
            c.eq("max |t_k - (k+1)^2|", worst, 0.0);
        }
    }
    let assertions = c.0;
    Ok(ScenarioReport {
        name: sc.name(),
        scenario: sc.clone(),
        passed: assertions.iter().all(|a| a.pass),
        assertions,
        wall_time: started.elapsed(),
    })
}

fn run_inclusion(
    c: &mut Checks,
    sequence: &FuzzySequence,
    scheme: &WeightScheme,
    exponents: &[f64],
    horizon: usize,
    policy: &Policy,
) -> Result<()> {
    check_horizon(scheme, horizon)?;
    let u_abs = (scheme.start..=horizon)
        .map(|k| Ok(scheme.u_at(k)?.abs()))
        .collect::<Result<Vec<f64>>>()?;
    let v_abs = (scheme.start..=horizon)
        .map(|k| Ok(scheme.v_at(k)?.abs()))
        .collect::<Result<Vec<f64>>>()?;
    let u_class = classify_series(&u_abs, scheme.start, policy)?;
    c.verdict("u in l1", u_class.verdict, Verdict::Convergent, u_class.slope);
    let var = variation_report(sequence, scheme, horizon, policy)?;
    c.verdict(
        "sequence in bv(u,v)",
        var.verdict.verdict,
        Verdict::Convergent,
        var.verdict.slope,
    );
    for &p in exponents {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::config("exponents", format!("exponent {p} must lie in (1, inf)")));
        }
        let q = p / (p - 1.0);
        let lp = lp_partial(sequence, p, horizon + 1, policy)?;
        c.verdict(
            format!("p={p}: sequence in l_p"),
            lp.verdict.verdict,
            Verdict::Convergent,
            lp.verdict.slope,
        );
        let vq: Vec<f64> = v_abs.iter().map(|v| v.powf(q)).collect();
        let v_class = classify_series(&vq, scheme.start, policy)?;
        c.verdict(
            format!("p={p}: v in l_q (q={q:.4})"),
            v_class.verdict,
            Verdict::Convergent,
            v_class.slope,
        );
        let m_root = 2.0 * lp.partial_sum.powf(1.0 / p);
        let mut vq_sum = 0.0;
        let pairs = vq.iter().enumerate().map(|(j, vq_k)| {
            vq_sum += vq_k;
            (var.terms[j], u_abs[j] * vq_sum.powf(1.0 / q) * m_root)
        });
        c.le(
            format!("p={p}: max t_k / (|u_k| (sum|v_i|^q)^(1/q) 2 M^(1/p))"),
            max_ratio(pairs),
            1.0,
        );
    }
    Ok(())
}

/// Seeded symmetric triangles `triangular(-b, 0, b)` with `b ∈ [0, bound]`.
fn symmetric_table(rng: &mut ChaCha8Rng, start: usize, len: usize, bound: f64) -> Result<Family> {
    let values = (0..len)
        .map(|_| {
            let b = rng.random_range(0.0..=bound);
            FuzzyNumber::from_triangular(-b, 0.0, b)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Family::Table { values, first: start })
}

fn run_equivalence(
    c: &mut Checks,
    cases: &[EquivalenceCase],
    horizon: usize,
    spread_bound: f64,
    seed: u64,
    policy: &Policy,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (idx, case) in cases.iter().enumerate() {
        let tag = format!("case {idx}");
        let scheme = &case.scheme;
        check_horizon(scheme, horizon)?;
        let start = case.base.start;
        let len = horizon - start + 2;
        let s = FuzzySequence::new(symmetric_table(&mut rng, start, len, spread_bound)?, start);
        let s_prime = FuzzySequence::new(symmetric_table(&mut rng, start, len, spread_bound)?, start);
        // X = Z + S′ and Y = Z + S, so X + S = Y + S′
        let x = case.base.perturbed(s_prime.family.clone());
        let y = case.base.perturbed(s.family.clone());

        let rows = scheme.row_sum_diagnostic(horizon, policy)?;
        c.verdict(
            format!("{tag}: row sums in l1"),
            rows.verdict.verdict,
            Verdict::Convergent,
            rows.verdict.slope,
        );
        for (label, w) in [("S", &s), ("S'", &s_prime)] {
            let sup = sup_norm_partial(w, horizon, policy)?;
            c.le(format!("{tag}: sup d({label}_i, 0)"), sup.sup, spread_bound);
        }

        let xs = x.terms_through(horizon)?;
        let ys = y.terms_through(horizon)?;
        let ss = s.terms_through(horizon)?;
        let sps = s_prime.terms_through(horizon)?;
        let mut symmetric = true;
        let mut equivalent = true;
        let mut identity_gap = 0.0f64;
        for j in 0..xs.len() {
            symmetric &= is_symmetric(&ss[j], 0.0)? && is_symmetric(&sps[j], 0.0)?;
            equivalent &= are_equivalent(&xs[j], &ys[j], DEFAULT_TOL)?;
            identity_gap = identity_gap.max(metric_d(&(&xs[j] + &ss[j]), &(&ys[j] + &sps[j])));
        }
        c.holds(format!("{tag}: witnesses symmetric"), symmetric, String::new());
        c.holds(format!("{tag}: X_i ~ Y_i for all i"), equivalent, String::new());
        c.le(
            format!("{tag}: max d(X_i + S_i, Y_i + S'_i)"),
            identity_gap,
            DEFAULT_TOL,
        );

        let vx = variation_report(&x, scheme, horizon, policy)?;
        let vy = variation_report(&y, scheme, horizon, policy)?;
        c.verdict(
            format!("{tag}: X verdict"),
            vx.verdict.verdict,
            case.expected,
            vx.verdict.slope,
        );
        c.verdict(
            format!("{tag}: Y verdict"),
            vy.verdict.verdict,
            case.expected,
            vy.verdict.slope,
        );

        // |Σ u_k v_i d(ΔY_i, 0)| ≤ |Σ u_k v_i d(0, ΔS′_i)| + |Σ u_k v_i d(Δ(Y_i + S′_i), 0)|, and with X, S swapped
        for (label, seq, wit, wit_terms) in [("Y", &vy, &sps, &s_prime), ("X", &vx, &ss, &s)] {
            let shifted: Vec<f64> = if label == "Y" {
                ys.iter().zip(wit).map(|(a, b)| a + b).collect::<Vec<_>>()
            } else {
                xs.iter().zip(wit).map(|(a, b)| a + b).collect::<Vec<_>>()
            }
            .windows(2)
            .map(|w| (&w[0] - &w[1]).norm())
            .collect();
            let wit_var = variation_from_distances(wit_terms.delta_distances(horizon)?, scheme, horizon, policy)?;
            let shifted_var = variation_from_distances(shifted, scheme, horizon, policy)?;
            let pairs = (0..seq.terms.len()).map(|j| (seq.terms[j], wit_var.terms[j] + shifted_var.terms[j]));
            c.le(
                format!("{tag}: max {label} domination-chain ratio"),
                max_ratio(pairs),
                1.0,
            );
        }
    }
    Ok(())
}

/// A random trapezoidal sequence whose centre and widths move by `O(1/k²)` per step.
pub fn random_decaying_sequence(rng: &mut ChaCha8Rng, start: usize, len: usize) -> Result<FuzzySequence> {
    let mut centre = rng.random_range(-5.0..5.0);
    let mut core = rng.random_range(0.0..1.0);
    let mut left = rng.random_range(0.0..2.0);
    let mut right = rng.random_range(0.0..2.0);
    let mut values = Vec::with_capacity(len);
    for j in 0..len {
        let step = 1.0 / ((j + 1) as f64).powi(2);
        centre += rng.random_range(-3.0..3.0) * step;
        core *= 1.0 + rng.random_range(-0.5..0.5) * step;
        left *= 1.0 + rng.random_range(-0.5..0.5) * step;
        right *= 1.0 + rng.random_range(-0.5..0.5) * step;
        values.push(FuzzyNumber::from_trapezoidal(
            centre - core - left,
            centre - core,
            centre + core,
            centre + core + right,
        )?);
    }
    Ok(FuzzySequence::new(Family::Table { values, first: start }, start))
}

/// A random positive scheme with summable row sums.
pub fn random_positive_scheme(rng: &mut ChaCha8Rng, start: usize) -> WeightScheme {
    let u = RealSequence::power(rng.random_range(0.5..2.0), 1.0, rng.random_range(-4.0..-2.5));
    let v = if rng.random_bool(0.5) {
        RealSequence::constant(rng.random_range(0.5..2.0))
    } else {
        RealSequence::geometric(rng.random_range(0.5..2.0), rng.random_range(0.95..1.0))
    };
    WeightScheme::new(u, v, start)
}

fn run_midpoint(c: &mut Checks, samples: usize, horizon: usize, seed: u64, policy: &Policy) -> Result<()> {
    if samples == 0 {
        return Err(Error::config("samples", "at least one sample is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut termwise_violations = 0usize;
    let mut total_violations = 0usize;
    let mut non_members = 0usize;
    let mut midpoint_non_members = 0usize;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let scheme = random_positive_scheme(&mut rng, 0);
        let x = random_decaying_sequence(&mut rng, 0, horizon + 2)?;
        let var = variation_report(&x, &scheme, horizon, policy)?;
        let mid = midpoint_variation_report(&x, &scheme, horizon, policy)?;
        for (m, t) in mid.terms.iter().zip(&var.terms) {
            if m > t {
                termwise_violations += 1;
            }
            if *t > 0.0 {
                worst = worst.max(m / t);
            }
        }
        if mid.total > var.total {
            total_violations += 1;
        }
        if var.verdict.verdict != Verdict::Convergent {
            non_members += 1;
        }
        if mid.verdict.verdict != Verdict::Convergent {
            midpoint_non_members += 1;
        }
    }
    c.eq("samples outside bv(u,v)", non_members as f64, 0.0);
    c.eq("termwise contraction violations", termwise_violations as f64, 0.0);
    c.eq("V_K(midpoint) > V_K(X) violations", total_violations as f64, 0.0);
    c.eq("midpoint sequences outside bv(u,v)", midpoint_non_members as f64, 0.0);
    c.le("max termwise ratio midpoint / original", worst, 1.0);
    Ok(())
}

/// Runs every registered scenario with default parameters; scenarios run in parallel
/// and reports come back in registry order.
pub fn run_all(seed: u64, scale: usize) -> Result<Vec<ScenarioReport>> {
    let scenarios = ScenarioName::ALL
        .iter()
        .map(|&n| Scenario::default_for(n, seed, scale))
        .collect::<Result<Vec<_>>>()?;
    scenarios.par_iter().map(run_scenario).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_zero_rejected() {
        assert!(matches!(run_all(1, 0), Err(Error::Config { .. })));
    }

    #[test]
    fn converse_scenario_passes() {
        let sc = Scenario::default_for(ScenarioName::R2Converse, 1, 1).unwrap();
        let r = run_scenario(&sc).unwrap();
        assert!(r.passed, "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn failing_assertion_is_reported() {
        // with a summable scheme the widening triangles are a member, so the
        // scenario's divergence claim must fail
        let sc = Scenario::R2Converse {
            sequence: FuzzySequence::new(widening_triangles(), 1),
            scheme: inverse_quartic_scheme(),
            horizon: 200,
            policy: Policy::default(),
        };
        let r = run_scenario(&sc).unwrap();
        assert!(!r.passed);
        assert!(r.failures().any(|a| a.name == "sequence in bv(u,v)"));
    }

    #[test]
    fn invalid_parameters_name_the_field() {
        let sc = Scenario::R2Converse {
            sequence: FuzzySequence::new(widening_triangles(), 0),
            scheme: WeightScheme::new(RealSequence::constant(1.0), RealSequence::constant(0.0), 0),
            horizon: 10,
            policy: Policy::default(),
        };
        assert!(matches!(run_scenario(&sc), Err(Error::Config { field, .. }) if field == "scheme"));
    }

    #[test]
    fn scenario_record_round_trips() {
        for name in ScenarioName::ALL {
            let sc = Scenario::default_for(name, 7, 1).unwrap();
            let json = serde_json::to_string(&sc).unwrap();
            let back: Scenario = serde_json::from_str(&json).unwrap();
            assert_eq!(back, sc);
            assert_eq!(back.name(), name);
            assert!(json.contains(name.as_str()));
        }
    }
}
