//! Spec files, reports and the command-line front end for the `cogrowth`
//! crate.

pub mod args;
pub mod commands;
pub mod input;
pub mod report;
pub mod spec;

use std::path::Path;

use anyhow::{Context, Result};

pub use args::{Cli, Command};
pub use commands::{run, Output};

/// Exit status for a failed run: 3 when the element cap was hit, 1 for
/// failures writing output, 2 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(cogrowth::Error::Resource { .. }) = cause.downcast_ref::<cogrowth::Error>() {
            return 3;
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 1;
        }
    }
    2
}

/// Writes the report files into `out`, or returns the primary report for
/// standard output.
pub fn emit(output: &Output, out: Option<&Path>) -> Result<Option<String>> {
    let Some(dir) = out else {
        return Ok(Some(output.primary().to_string()));
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, text) in &output.files {
        let path = dir.join(name);
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(None)
}
