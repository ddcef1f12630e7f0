//! JSON and CSV formats.
//!
//! Channel documents carry exactly one top-level key:
//!
//! ```json
//! {"gaussian":     {"pmax_1": 5, "pmax_2": 2, "h_1": 0.5, "h_2": 1.5}}
//! {"gaussian_raw": {"gain_main_1": 1, ..., "pmax_2": 2}}
//! {"batw":         {"eps_1": 0.1, "eps_2": 0.1, "eps_w": 0.3}}
//! ```
//!
//! `alpha_1`/`alpha_2` are optional in `gaussian` and default to 1. Raw
//! channels are standardized on load.

use serde::{Deserialize, Serialize};
use twwt_core::{
    standardize, validate_batw, BatwChannel, BinaryScheme, Codeword, RawGtwChannel, RegionPolytope,
    SchemeConfig, StandardGtwChannel, DEFAULT_BUDGET,
};

use crate::error::{CliError, Result};

pub const RATE_UNIT: &str = "bits per channel use";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelDoc {
    Gaussian(StandardGtwChannel),
    GaussianRaw(RawGtwChannel),
    Batw(BatwChannel),
}

/// A validated channel, Gaussian ones in standard form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Channel {
    Gaussian(StandardGtwChannel),
    Batw(BatwChannel),
}

impl Channel {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ChannelDoc = serde_json::from_str(text)?;
        Ok(match doc {
            ChannelDoc::Gaussian(ch) => {
                ch.validate()?;
                Channel::Gaussian(ch)
            }
            ChannelDoc::GaussianRaw(raw) => Channel::Gaussian(standardize(&raw)?),
            ChannelDoc::Batw(ch) => Channel::Batw(validate_batw(ch)?),
        })
    }

    pub fn gaussian(self, command: &str) -> Result<StandardGtwChannel> {
        match self {
            Channel::Gaussian(ch) => Ok(ch),
            Channel::Batw(_) => Err(CliError::Input(format!(
                "`{command}` needs a Gaussian channel, got a binary one"
            ))),
        }
    }

    pub fn batw(self, command: &str) -> Result<BatwChannel> {
        match self {
            Channel::Batw(ch) => Ok(ch),
            Channel::Gaussian(_) => Err(CliError::Input(format!(
                "`{command}` needs a binary channel, got a Gaussian one"
            ))),
        }
    }
}

/// Input of `standardize`: a bare raw channel or a `gaussian_raw` document.
pub fn parse_raw_channel(text: &str) -> Result<RawGtwChannel> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum RawInput {
        Tagged { gaussian_raw: RawGtwChannel },
        Bare(RawGtwChannel),
    }
    let raw = match serde_json::from_str::<RawInput>(text) {
        Ok(RawInput::Tagged { gaussian_raw }) => gaussian_raw,
        Ok(RawInput::Bare(raw)) => raw,
        // untagged errors are vague; report the bare-form error instead
        Err(_) => serde_json::from_str::<RawGtwChannel>(text)?,
    };
    raw.validate()?;
    Ok(raw)
}

/// Codebooks as bit strings; character `i` is symbol `i`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BooksDoc {
    pub secret_1: Vec<String>,
    pub secret_2: Vec<String>,
    pub rand_1: Vec<String>,
    pub rand_2: Vec<String>,
}

/// Scheme configuration. Without `books` the codebooks are drawn from
/// `seed`; with `books` they are taken as given.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeDoc {
    pub n: u32,
    pub m_1: usize,
    pub m_2: usize,
    pub mx_1: usize,
    pub mx_2: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub books: Option<BooksDoc>,
}

fn parse_word(text: &str, n: u32) -> Result<Codeword> {
    if text.len() != n as usize {
        return Err(CliError::Input(format!(
            "codeword `{text}` has {} symbols, block length is {n}",
            text.len()
        )));
    }
    let bits = text
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(CliError::Input(format!(
                "codeword `{text}` has a non-binary symbol"
            ))),
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(Codeword::from_bits(&bits)?)
}

pub fn format_word(word: Codeword, n: u32) -> String {
    word.to_bits(n)
        .iter()
        .map(|b| if *b == 1 { '1' } else { '0' })
        .collect()
}

impl SchemeDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn config(&self, seed: Option<u64>, budget: Option<u64>) -> SchemeConfig {
        SchemeConfig {
            n: self.n,
            m_1: self.m_1,
            m_2: self.m_2,
            mx_1: self.mx_1,
            mx_2: self.mx_2,
            seed: seed.unwrap_or(self.seed),
            budget: budget.or(self.budget).unwrap_or(DEFAULT_BUDGET),
        }
    }

    pub fn build(&self, seed: Option<u64>, budget: Option<u64>) -> Result<BinaryScheme> {
        let config = self.config(seed, budget);
        config.validate()?;
        let Some(books) = &self.books else {
            return Ok(twwt_core::build_scheme(config)?);
        };
        let parse = |list: &[String]| -> Result<Vec<Codeword>> {
            list.iter().map(|w| parse_word(w, config.n)).collect()
        };
        Ok(BinaryScheme::from_books(
            config,
            [parse(&books.secret_1)?, parse(&books.secret_2)?],
            [parse(&books.rand_1)?, parse(&books.rand_2)?],
        )?)
    }
}

/// At most 12 significant digits, `.` decimal point, trailing zeros trimmed.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 300) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn write_csv(header: [&str; 2], rows: impl IntoIterator<Item = (f64, f64)>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for (a, b) in rows {
        w.write_record([sig12(a), sig12(b)])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Region vertices, counterclockwise from the origin.
pub fn region_csv(region: &RegionPolytope) -> String {
    write_csv(
        ["r1_bits_per_use", "r2_bits_per_use"],
        region.vertices().iter().map(|v| (v.r_1, v.r_2)),
    )
}

#[derive(Debug, Serialize)]
struct RegionJson {
    unit: &'static str,
    shape: String,
    vertices: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<usize>,
}

pub fn region_json(region: &RegionPolytope, grid: Option<usize>) -> String {
    let doc = RegionJson {
        unit: RATE_UNIT,
        shape: format!("{:?}", region.shape()),
        vertices: region.vertices().iter().map(|v| [v.r_1, v.r_2]).collect(),
        grid,
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

pub fn sweep_csv(rows: &[(f64, f64)]) -> String {
    write_csv(
        ["p2_snr", "jamming_rate_bits_per_use"],
        rows.iter().copied(),
    )
}
