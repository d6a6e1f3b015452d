pub mod enumerate;
pub mod export;
pub mod query;

use pfc_core::diagram::{identity, parse_diagram};
use pfc_core::partition::Partition;

use crate::error::{CliError, CliResult};

/// Parse a diagram operand; `k` fixes the number of columns when known.
pub fn operand(name: &str, text: Option<&str>, k: Option<usize>) -> CliResult<Partition> {
    let text = text.ok_or_else(|| CliError::Usage(format!("missing --{name}")))?;
    Ok(parse_diagram(text, k)?)
}

pub fn base_or_identity(text: Option<&str>, k: usize) -> CliResult<Partition> {
    match text {
        Some(t) => Ok(parse_diagram(t, Some(k))?),
        None => Ok(identity(k)),
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad JSON in {}: {e}", path.display())))
}
