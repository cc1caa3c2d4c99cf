//! Fuzzy-number arithmetic, factorable weighted-mean matrices and bounded-variation
//! diagnostics for sequences of fuzzy numbers.
//!
//! - [`fuzzy`]: fuzzy numbers as α-cut envelopes, arithmetic, the supremum metric,
//!   midpoint profiles, symmetry and equivalence.
//! - [`weights`]: weight schemes `(u, v)`, row sums of `G(u, v)`, the `u′_k = k·u_k` transform.
//! - [`sequence`] and [`spaces`]: fuzzy sequences, the difference operator and the
//!   `bv^F(u, v)`, `l_p^F`, `l_∞^F`, statistical-density and Cesàro diagnostics.
//! - [`classify`]: finite-horizon convergence verdicts.
//! - [`harness`]: numerical scenarios for the inclusion and preservation results.
//! - [`config`] and [`report`]: JSON run configurations and report envelopes used by the CLI.
//!
//! ```
//! use fuzzy_bv::sequence::alternating_crisp_ramp;
//! use fuzzy_bv::{metric_d, variation_report, FuzzyNumber, FuzzySequence, Policy, RealSequence, Verdict, WeightScheme};
//!
//! let x = FuzzyNumber::from_triangular(1.0, 2.0, 4.0)?;
//! let y = FuzzyNumber::from_trapezoidal(-1.0, 0.0, 1.0, 3.0)?;
//! assert_eq!(metric_d(&x, &y), 2.0);
//!
//! // X_k = k̄ for odd k, 0̄ for even k; u_k = k^-4, v_i = 1, from k = 1
//! let seq = FuzzySequence::new(alternating_crisp_ramp(), 1);
//! let scheme = WeightScheme::new(RealSequence::power(1.0, 0.0, -4.0), RealSequence::constant(1.0), 1);
//! let report = variation_report(&seq, &scheme, 10_000, &Policy::default())?;
//! assert_eq!(report.verdict.verdict, Verdict::Convergent);
//! # Ok::<(), fuzzy_bv::Error>(())
//! ```

pub mod classify;
pub mod config;
pub mod error;
pub mod fuzzy;
pub mod harness;
pub mod real;
pub mod report;
mod scaled;
pub mod sequence;
pub mod spaces;
pub mod weights;

pub use classify::{classify_series, Policy, SeriesVerdict, Verdict};
pub use error::{Error, Result};
pub use fuzzy::{
    are_equivalent, equivalence_witness, is_symmetric, merge_grids, metric_d, midpoint_profile, profile_sup_distance,
    validate, Condition, FuzzyNumber, Interval, MidpointProfile, Validation,
};
pub use real::RealSequence;
pub use sequence::{Family, FuzzySequence};
pub use spaces::{
    bv_metric_d, c_delta_metric_rho, cesaro_distance, cesaro_means, density_table, lp_partial,
    midpoint_variation_report, statistical_density, sup_norm_partial, variation_report, Growth, LpReport,
    SupNormReport, VariationReport,
};
pub use weights::{RowSumDiagnostic, WeightScheme};
