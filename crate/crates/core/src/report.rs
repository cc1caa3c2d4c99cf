//! Report envelopes and their JSON and CSV renderings.
//!
//! The payload hash is the SHA-256 of the compact JSON payload. Timestamps and
//! timings sit outside the payload, so identical configs give identical hashes.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::classify::SeriesVerdict;
use crate::config::{Command, Format, RunConfig};
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyNumber;
use crate::harness::{run_all, run_scenario, ScenarioReport};
use crate::spaces::{
    bv_metric_d, c_delta_metric_rho, cesaro_means, density_table, lp_partial, midpoint_variation_report,
    statistical_density, sup_norm_partial, variation_report, DensityRow, LpReport, SupNormReport, VariationReport,
};
use crate::weights::RowSumDiagnostic;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub horizon: usize,
    /// `bv^F(u, v)` verdict and the totals behind it.
    pub variation_total: f64,
    pub bv: SeriesVerdict,
    pub midpoint_variation_total: f64,
    pub midpoint_bv: SeriesVerdict,
    pub sup_norm: SupNormReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp: Option<LpReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityPoint {
    pub eps: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub eps: f64,
    pub rows: Vec<DensityRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CesaroReport {
    pub limit: FuzzyNumber,
    /// Means are normalized by the number of terms, `k - start + 1`.
    pub start: usize,
    pub means: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// First index whose running mean is at most `eps`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_within_eps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricReport {
    pub horizon: usize,
    #[serde(rename = "D")]
    pub d: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
// built once per run, so variant size does not matter
#[allow(clippy::large_enum_variant)]
#[serde(untagged)]
pub enum Payload {
    Membership(MembershipReport),
    Variation(VariationReport),
    RowSums(RowSumDiagnostic),
    Density(DensityReport),
    Cesaro(CesaroReport),
    Metric(MetricReport),
    Scenarios(Vec<ScenarioReport>),
}

impl Payload {
    /// False when any scenario assertion failed.
    pub fn passed(&self) -> bool {
        match self {
            Payload::Scenarios(rs) => rs.iter().all(|r| r.passed),
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub command: Command,
    pub config: RunConfig,
    pub payload: Payload,
    pub payload_hash: String,
    pub generated_at_unix: u64,
    /// Wall times in seconds.
    pub timings: BTreeMap<String, f64>,
}

impl ReportEnvelope {
    pub fn passed(&self) -> bool {
        self.payload.passed()
    }

    pub fn payload_scenarios(&self) -> &[ScenarioReport] {
        match &self.payload {
            Payload::Scenarios(rs) => rs,
            _ => &[],
        }
    }

    /// Exit status for the CLI: 0 on success, 1 when an assertion failed.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

pub fn payload_hash(payload: &Payload) -> Result<String> {
    let bytes = serde_json::to_vec(payload)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

pub fn compute_payload(cfg: &RunConfig, timings: &mut BTreeMap<String, f64>) -> Result<Payload> {
    let policy = &cfg.policy;
    Ok(match cfg.command {
        Command::Membership => {
            let (x, s, k) = (cfg.sequence()?, cfg.scheme()?, cfg.horizon()?);
            let var = variation_report(x, s, k, policy)?;
            let mid = midpoint_variation_report(x, s, k, policy)?;
            let lp = cfg.p.map(|p| lp_partial(x, p, k, policy)).transpose()?;
            let density = cfg
                .eps
                .map(|eps| statistical_density(x, eps, k).map(|density| DensityPoint { eps, density }))
                .transpose()?;
            Payload::Membership(MembershipReport {
                horizon: k,
                variation_total: var.total,
                bv: var.verdict,
                midpoint_variation_total: mid.total,
                midpoint_bv: mid.verdict,
                sup_norm: sup_norm_partial(x, k, policy)?,
                lp,
                density,
            })
        }
        Command::Variation => Payload::Variation(variation_report(
            cfg.sequence()?,
            cfg.scheme()?,
            cfg.horizon()?,
            policy,
        )?),
        Command::Rowsums => Payload::RowSums(cfg.scheme()?.row_sum_diagnostic(cfg.horizon()?, policy)?),
        Command::Density => {
            let eps = cfg
                .eps
                .ok_or_else(|| Error::config("eps", "required by command `density`"))?;
            Payload::Density(DensityReport {
                eps,
                rows: density_table(cfg.sequence()?, eps, cfg.horizon()?)?,
            })
        }
        Command::Cesaro => {
            let x = cfg.sequence()?;
            let limit = cfg
                .limit
                .clone()
                .ok_or_else(|| Error::config("limit", "required by command `cesaro`"))?;
            let means = cesaro_means(x, &limit, cfg.horizon()?)?;
            let first_within_eps = cfg
                .eps
                .and_then(|eps| means.iter().position(|m| *m <= eps))
                .map(|j| x.start + j);
            Payload::Cesaro(CesaroReport {
                limit,
                start: x.start,
                means,
                eps: cfg.eps,
                first_within_eps,
            })
        }
        Command::MetricD => {
            let (x, s, k) = (cfg.sequence()?, cfg.scheme()?, cfg.horizon()?);
            let y = cfg
                .other
                .as_ref()
                .ok_or_else(|| Error::config("other", "required by command `metric-d`"))?;
            Payload::Metric(MetricReport {
                horizon: k,
                d: bv_metric_d(x, y, s, k)?,
                rho: c_delta_metric_rho(x, y, k)?,
            })
        }
        Command::Scenario => {
            let report = run_scenario(&cfg.resolved_scenario()?)?;
            timings.insert(report.name.as_str().to_string(), report.wall_time.as_secs_f64());
            Payload::Scenarios(vec![report])
        }
        Command::AllScenarios => {
            let reports = run_all(cfg.seed, cfg.scale)?;
            for r in &reports {
                timings.insert(r.name.as_str().to_string(), r.wall_time.as_secs_f64());
            }
            Payload::Scenarios(reports)
        }
    })
}

/// Runs the configured command and wraps the result in an envelope.
pub fn execute(cfg: &RunConfig) -> Result<ReportEnvelope> {
    let started = Instant::now();
    let mut timings = BTreeMap::new();
    let payload = compute_payload(cfg, &mut timings)?;
    timings.insert("total".to_string(), started.elapsed().as_secs_f64());
    Ok(ReportEnvelope {
        tool_version: TOOL_VERSION.to_string(),
        command: cfg.command,
        config: cfg.clone(),
        payload_hash: payload_hash(&payload)?,
        payload,
        generated_at_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        timings,
    })
}

/// Shortest representation that parses back to the same `f64`.
fn num(x: f64) -> String {
    format!("{x:e}")
}

/// Writes the payload as CSV, one row per index (or per assertion for scenarios).
pub fn write_csv<W: Write>(payload: &Payload, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match payload {
        Payload::Variation(r) => {
            w.write_record(["k", "d_k", "inner_k", "t_k", "V_k"])?;
            for j in 0..r.terms.len() {
                w.write_record([
                    (r.start + j).to_string(),
                    num(r.distances[j]),
                    num(r.inner[j]),
                    num(r.terms[j]),
                    num(r.partial[j]),
                ])?;
            }
        }
        Payload::RowSums(r) => {
            w.write_record(["k", "r_k", "sum_abs_r"])?;
            for j in 0..r.row_sums.len() {
                w.write_record([(r.start + j).to_string(), num(r.row_sums[j]), num(r.abs_partial[j])])?;
            }
        }
        Payload::Density(r) => {
            w.write_record(["n", "count", "density"])?;
            for row in &r.rows {
                w.write_record([row.n.to_string(), row.count.to_string(), num(row.density)])?;
            }
        }
        Payload::Cesaro(r) => {
            w.write_record(["k", "mean_distance"])?;
            for (j, m) in r.means.iter().enumerate() {
                w.write_record([(r.start + j).to_string(), num(*m)])?;
            }
        }
        Payload::Metric(r) => {
            w.write_record(["K", "D", "rho"])?;
            w.write_record([r.horizon.to_string(), num(r.d), num(r.rho)])?;
        }
        Payload::Membership(r) => {
            w.write_record(["quantity", "value", "verdict"])?;
            let verdict = |v: &SeriesVerdict| format!("{:?}", v.verdict).to_lowercase();
            w.write_record(["variation_total".into(), num(r.variation_total), verdict(&r.bv)])?;
            w.write_record([
                "midpoint_variation_total".into(),
                num(r.midpoint_variation_total),
                verdict(&r.midpoint_bv),
            ])?;
            w.write_record([
                "sup_norm".into(),
                num(r.sup_norm.sup),
                format!("{:?}", r.sup_norm.growth).to_lowercase(),
            ])?;
            if let Some(lp) = &r.lp {
                w.write_record([
                    format!("lp_partial(p={})", num(lp.p)),
                    num(lp.partial_sum),
                    verdict(&lp.verdict),
                ])?;
            }
            if let Some(d) = &r.density {
                w.write_record([format!("density(eps={})", num(d.eps)), num(d.density), String::new()])?;
            }
        }
        Payload::Scenarios(rs) => {
            w.write_record([
                "scenario",
                "assertion",
                "measured",
                "relation",
                "threshold",
                "pass",
                "detail",
            ])?;
            for r in rs {
                for a in &r.assertions {
                    let rel = serde_json::to_value(a.relation)?;
                    w.write_record([
                        r.name.as_str().to_string(),
                        a.name.clone(),
                        num(a.measured),
                        rel.as_str().unwrap_or_default().to_string(),
                        num(a.threshold),
                        a.pass.to_string(),
                        a.detail.clone(),
                    ])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(env: &ReportEnvelope, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, env)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_report<W: Write>(env: &ReportEnvelope, format: Format, out: W) -> Result<()> {
    match format {
        Format::Json => write_json(env, out),
        Format::Csv => write_csv(&env.payload, out),
    }
}

/// Writes the envelope to the configured path, or to `stdout` when none is set.
pub fn emit(env: &ReportEnvelope) -> Result<()> {
    match &env.config.out {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            write_report(env, env.config.format, std::io::BufWriter::new(file))
        }
        None => write_report(env, env.config.format, std::io::stdout().lock()),
    }
}
