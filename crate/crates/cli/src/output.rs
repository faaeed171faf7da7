//! Numeric formatting and atomic file writes.

use std::io::Write;
use std::path::Path;

use crate::CliError;

/// Format with a fixed number of significant digits, dot decimal separator.
pub fn fmt_sig(v: f64, sig: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.prec$}", prec = sig - 1);
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..sig as i32).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.prec$e}", prec = sig - 1)
    }
}

pub fn fmt_point(x: f64, y: f64, sig: usize) -> String {
    format!("({}, {})", fmt_sig(x, sig), fmt_sig(y, sig))
}

/// Write a file atomically: write-then-rename within the target directory.
pub fn write_atomic(
    path: &Path,
    write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), CliError> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new("."))).map_err(|e| {
        CliError::Input(format!(
            "cannot create temporary file near {}: {e}",
            path.display()
        ))
    })?;
    write(tmp.as_file_mut())
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    tmp.persist(path)
        .map_err(|e| CliError::Input(format!("cannot persist {}: {e}", path.display())))?;
    Ok(())
}
