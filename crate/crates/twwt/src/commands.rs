//! Subcommand implementations. Each [`Invocation`] maps one input document
//! to one payload string; the binary only parses flags and routes output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use twwt_core::{
    batw_jamming, batw_region, bin_entropy, decode_error, exact_equivocation, gtw_region_closure,
    jamming_advice, jamming_oracle_gap_bound, jamming_rate, optimal_jamming,
    optimal_jamming_oracle, optimal_power, optimal_power_oracle, oracle_gap_bound, pos_part,
    standardize, DecodeErrors, JammingAdvice, PowerAllocation, PowerPoint, SecrecyReport, User,
};

use crate::error::{CliError, Result};
use crate::formats::{
    parse_raw_channel, region_csv, region_json, sweep_csv, Channel, ChannelDoc, SchemeDoc,
    RATE_UNIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sum,
    Jam,
}

/// A fully resolved command line. Manifests record this verbatim so a run
/// can be replayed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Invocation {
    Standardize {
        input: PathBuf,
    },
    Region {
        channel: PathBuf,
        grid: usize,
        format: Format,
    },
    Optimize {
        channel: PathBuf,
        mode: Mode,
        oracle_grid: Option<usize>,
    },
    JamSweep {
        channel: PathBuf,
        points: usize,
    },
    Verify {
        scheme: PathBuf,
        eps_w: f64,
        eps_self: Option<f64>,
        seed: Option<u64>,
        budget: Option<u64>,
        format: Format,
    },
    BatwJam {
        channel: PathBuf,
    },
}

impl Invocation {
    pub fn name(&self) -> &'static str {
        match self {
            Invocation::Standardize { .. } => "standardize",
            Invocation::Region { .. } => "region",
            Invocation::Optimize { .. } => "optimize",
            Invocation::JamSweep { .. } => "jam-sweep",
            Invocation::Verify { .. } => "verify",
            Invocation::BatwJam { .. } => "batw-jam",
        }
    }

    pub fn input_path(&self) -> &Path {
        match self {
            Invocation::Standardize { input } => input,
            Invocation::Region { channel, .. }
            | Invocation::Optimize { channel, .. }
            | Invocation::JamSweep { channel, .. }
            | Invocation::BatwJam { channel } => channel,
            Invocation::Verify { scheme, .. } => scheme,
        }
    }

    /// Computes the payload from the input document's text.
    pub fn run_on(&self, input: &str) -> Result<String> {
        match self {
            Invocation::Standardize { .. } => standardize_cmd(input),
            Invocation::Region { grid, format, .. } => region_cmd(input, *grid, *format),
            Invocation::Optimize {
                mode, oracle_grid, ..
            } => optimize_cmd(input, *mode, *oracle_grid),
            Invocation::JamSweep { points, .. } => jam_sweep_cmd(input, *points),
            Invocation::Verify {
                eps_w,
                eps_self,
                seed,
                budget,
                format,
                ..
            } => verify_cmd(input, *eps_w, *eps_self, *seed, *budget, *format),
            Invocation::BatwJam { .. } => batw_jam_cmd(input),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn standardize_cmd(input: &str) -> Result<String> {
    let raw = parse_raw_channel(input)?;
    Ok(to_json(&ChannelDoc::Gaussian(standardize(&raw)?)))
}

fn region_cmd(input: &str, grid: usize, format: Format) -> Result<String> {
    let (region, grid) = match Channel::from_json(input)? {
        Channel::Gaussian(ch) => {
            if grid < 2 {
                return Err(CliError::Input(format!(
                    "--grid must be at least 2, got {grid}"
                )));
            }
            (gtw_region_closure(&ch, grid)?, Some(grid))
        }
        Channel::Batw(ch) => (batw_region(&ch)?, None),
    };
    match format {
        Format::Csv => Ok(region_csv(&region)),
        Format::Json => Ok(region_json(&region, grid)),
        Format::Table => Err(CliError::Input("region supports csv or json output".into())),
    }
}

/// Optimizer report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllocationReport {
    pub allocation: [f64; 2],
    pub case: String,
    pub objective_bits: f64,
    /// Closed-form objective minus lattice-oracle objective.
    pub oracle_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_gap_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub advisory: Option<JammingAdvice>,
}

impl AllocationReport {
    fn new(a: &PowerAllocation) -> Self {
        AllocationReport {
            allocation: [a.p.p_1, a.p.p_2],
            case: a.case_label.as_str().to_string(),
            objective_bits: a.objective_value,
            oracle_gap: None,
            oracle_gap_bound: None,
            advisory: None,
        }
    }
}

fn optimize_cmd(input: &str, mode: Mode, oracle_grid: Option<usize>) -> Result<String> {
    let ch = Channel::from_json(input)?.gaussian("optimize")?;
    let report = match mode {
        Mode::Sum => {
            let closed = optimal_power(&ch);
            let mut report = AllocationReport::new(&closed);
            if let Some(grid) = oracle_grid {
                let oracle = optimal_power_oracle(&ch, grid)?;
                report.oracle_gap = Some(closed.objective_value - oracle.objective_value);
                report.oracle_gap_bound = Some(oracle_gap_bound(&ch, grid));
            }
            report
        }
        Mode::Jam => {
            let closed = optimal_jamming(&ch);
            let mut report = AllocationReport::new(&closed);
            if let Some(grid) = oracle_grid {
                let oracle = optimal_jamming_oracle(&ch, grid)?;
                report.oracle_gap = Some(closed.objective_value - oracle.objective_value);
                report.oracle_gap_bound = Some(jamming_oracle_gap_bound(&ch, grid));
            }
            report.advisory = Some(jamming_advice(&ch));
            report
        }
    };
    Ok(to_json(&report))
}

/// User 1's clamped jamming rate at full power as user 2's jamming power
/// sweeps `[0, pmax_2]`.
pub fn jam_sweep_rows(ch: &twwt_core::StandardGtwChannel, points: usize) -> Vec<(f64, f64)> {
    (0..points)
        .map(|i| {
            let p_2 = match points {
                1 => 0.0,
                _ if i + 1 == points => ch.pmax_2,
                _ => ch.pmax_2 * i as f64 / (points - 1) as f64,
            };
            let rate = jamming_rate(ch, PowerPoint::new(ch.pmax_1, p_2))
                .expect("sweep stays inside the power box");
            (p_2, pos_part(rate))
        })
        .collect()
}

fn jam_sweep_cmd(input: &str, points: usize) -> Result<String> {
    let ch = Channel::from_json(input)?.gaussian("jam-sweep")?;
    if points == 0 {
        return Err(CliError::Input("--points must be at least 1".into()));
    }
    Ok(sweep_csv(&jam_sweep_rows(&ch, points)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeRates {
    pub r_1: f64,
    pub r_2: f64,
    /// Randomization rates, usable as extra non-secret rate.
    pub rx_1: f64,
    pub rx_2: f64,
    pub c_w: f64,
    /// `rx_1 + rx_2 - c_w`; zero is the design target.
    pub rate_target_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub unit: String,
    pub config: twwt_core::SchemeConfig,
    pub rates: SchemeRates,
    pub warning: Option<String>,
    pub report: SecrecyReport,
    pub decode_error: Option<DecodeErrors>,
    pub eps_self: Option<f64>,
}

fn verify_cmd(
    input: &str,
    eps_w: f64,
    eps_self: Option<f64>,
    seed: Option<u64>,
    budget: Option<u64>,
    format: Format,
) -> Result<String> {
    let doc = SchemeDoc::from_json(input)?;
    let scheme = doc.build(seed, budget)?;
    let config = *scheme.config();
    let report = exact_equivocation(&scheme, eps_w)?;
    let decode = eps_self.map(|e| decode_error(&scheme, e)).transpose()?;
    let (r_1, r_2) = config.secret_rates();
    let (rx_1, rx_2) = config.randomization_rates();
    let gap = config.rate_target_gap(eps_w)?;
    let warning = (gap.abs() > 1e-9).then(|| {
        format!(
            "randomization rates sum to {:.6}, eavesdropper capacity is {:.6}",
            rx_1 + rx_2,
            rx_1 + rx_2 - gap
        )
    });
    let out = VerifyReport {
        unit: "bits".into(),
        config,
        rates: SchemeRates {
            r_1,
            r_2,
            rx_1,
            rx_2,
            c_w: 1.0 - bin_entropy(eps_w)?,
            rate_target_gap: gap,
        },
        warning,
        report,
        decode_error: decode,
        eps_self,
    };
    match format {
        Format::Json => Ok(to_json(&out)),
        Format::Table => Ok(verify_table(&out)),
        Format::Csv => Err(CliError::Input(
            "verify supports json or table output".into(),
        )),
    }
}

fn verify_table(v: &VerifyReport) -> String {
    let c = &v.config;
    let r = &v.report;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "scheme  n={} m=({}, {}) mx=({}, {}) seed={}",
        c.n, c.m_1, c.m_2, c.mx_1, c.mx_2, c.seed
    );
    let rows: Vec<(&str, f64)> = vec![
        ("R_1 (bits/use)", v.rates.r_1),
        ("R_2 (bits/use)", v.rates.r_2),
        ("R~_1 (bits/use)", v.rates.rx_1),
        ("R~_2 (bits/use)", v.rates.rx_2),
        ("C_W (bits/use)", v.rates.c_w),
        ("eps_w", r.eps_w),
        ("H(W) (bits)", r.h_w),
        ("H(W|Z) (bits)", r.h_w_given_z),
        ("H(W|Z)/H(W)", r.ratio),
        ("I(W;Z) (bits)", r.i_w_z),
        ("I(X_sum;Z) (bits)", r.i_xsum_z),
        ("H(X_sum|W) (bits)", r.h_xsum_given_w),
        ("H(X_sum|W,Z) (bits)", r.h_xsum_given_w_z),
        ("H(W_1|Z)/H(W_1)", r.per_user_ratios[0]),
        ("H(W_2|Z)/H(W_2)", r.per_user_ratios[1]),
    ];
    for (label, value) in rows {
        let _ = writeln!(s, "{label:<22}{value:>14.9}");
    }
    if let (Some(d), Some(e)) = (v.decode_error, v.eps_self) {
        let _ = writeln!(s, "{:<22}{:>14.9}", "eps_self", e);
        let _ = writeln!(s, "{:<22}{:>14.9}", "P_err user 1", d.user_1);
        let _ = writeln!(s, "{:<22}{:>14.9}", "P_err user 2", d.user_2);
    }
    if let Some(w) = &v.warning {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatwJamReport {
    pub unit: String,
    pub rate: f64,
    pub jamming_needed: bool,
    /// 1 or 2: the user that sends while the other jams.
    pub sender: u8,
}

fn batw_jam_cmd(input: &str) -> Result<String> {
    let ch = Channel::from_json(input)?.batw("batw-jam")?;
    let j = batw_jamming(&ch)?;
    Ok(to_json(&BatwJamReport {
        unit: RATE_UNIT.into(),
        rate: j.rate,
        jamming_needed: j.jamming_needed,
        sender: match j.sender {
            User::One => 1,
            User::Two => 2,
        },
    }))
}
