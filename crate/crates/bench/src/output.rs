use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{BenchError, Result};

pub const TOOL: &str = "gols-bench";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// First line of every output file.
pub fn header_line(config_hash: &str) -> String {
    format!("# {TOOL} {VERSION} config={config_hash} mse=||x-x_hat||^2/m")
}

pub(crate) fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| BenchError::io(dir, e))
}

/// Writes `header` followed by CSV `rows` (the first row is the column
/// header).
pub(crate) fn write_csv(path: &Path, header: &str, rows: &[Vec<String>]) -> Result<()> {
    let file = File::create(path).map_err(|e| BenchError::io(path, e))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "{header}").map_err(|e| BenchError::io(path, e))?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.write_record(row)
            .map_err(|e| BenchError::io(path, std::io::Error::other(e)))?;
    }
    w.flush().map_err(|e| BenchError::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| BenchError::io(path, e))
}
