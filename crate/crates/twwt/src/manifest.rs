//! Run manifests written next to every output file.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::commands::Invocation;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// `sha256:` of the input re-serialized with sorted keys and no
    /// whitespace, so formatting changes do not alter it.
    pub input_digest: String,
    pub parameters: Invocation,
    pub tool_version: String,
    pub wall_clock_seconds: f64,
}

pub fn input_digest(input: &str) -> Result<String> {
    let value: serde_json::Value = serde_json::from_str(input)?;
    let canonical = serde_json::to_string(&value)?;
    let hash = Sha256::digest(canonical.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    Ok(format!("sha256:{hex}"))
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| {
        // a missing input is an input error, not an I/O fault of ours
        CliError::Input(format!("cannot read {}: {source}", path.display()))
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Runs `inv`; with `out` set, writes the payload there plus a manifest next
/// to it and returns `None`, otherwise returns the payload.
pub fn execute(inv: &Invocation, out: Option<&Path>) -> Result<Option<String>> {
    let started = Instant::now();
    let input = read(inv.input_path())?;
    let payload = inv.run_on(&input)?;
    let Some(out) = out else {
        return Ok(Some(payload));
    };
    write(out, &payload)?;
    let manifest = RunManifest {
        command: inv.name().to_string(),
        input_digest: input_digest(&input)?,
        parameters: inv.clone(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    write(&manifest_path(out), &text)?;
    Ok(None)
}
