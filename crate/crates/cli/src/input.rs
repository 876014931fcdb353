use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

use crate::error::CliError;

/// Reads a file argument: inline JSON when it starts with `{` or `[`, a path otherwise.
/// Returns a label for error messages alongside the text.
pub fn read_source(arg: &str) -> Result<(String, String), CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(("<inline>".into(), arg.to_string()));
    }
    read_path(Path::new(arg))
}

pub fn read_path(path: &Path) -> Result<(String, String), CliError> {
    let label = path.display().to_string();
    match fs::read_to_string(path) {
        Ok(text) => Ok((label, text)),
        Err(e) => Err(CliError::Io { path: label, source: e }),
    }
}

pub fn load<T: DeserializeOwned>(arg: &str) -> Result<T, CliError> {
    let (label, text) = read_source(arg)?;
    serde_json::from_str(&text).map_err(|e| {
        let mut msg = e.to_string();
        if let Some(i) = msg.rfind(" at line ") {
            msg.truncate(i);
        }
        CliError::Parse {
            path: label,
            line: e.line(),
            col: e.column(),
            msg,
        }
    })
}
