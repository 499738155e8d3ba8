//! CSV emission and parsing with an embedded run manifest.
//!
//! Every CSV the tool writes starts with `#`-prefixed manifest lines (tool
//! version, constants hash, material, command line, timestamp), one header
//! row of column names, then comma-separated data rows at full f64
//! round-trip precision (17 significant digits).

use std::fmt::Write as _;
use std::path::Path;

use excidec::materials::Material;
use sha2::{Digest, Sha256};

/// Reproducibility header embedded in every output file.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub tool_version: &'static str,
    pub constants_hash: String,
    pub material: Option<Material>,
    pub command_line: String,
    pub timestamp_utc: String,
}

impl RunManifest {
    pub fn new(material: Option<Material>) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION"),
            constants_hash: constants_hash(),
            material,
            command_line: std::env::args().collect::<Vec<_>>().join(" "),
            timestamp_utc: chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string(),
        }
    }

    /// Manifest as `#`-prefixed comment lines.
    pub fn header(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# excidec {}", self.tool_version);
        let _ = writeln!(s, "# constants_sha256 = {}", self.constants_hash);
        match &self.material {
            Some(m) => {
                let _ = writeln!(
                    s,
                    "# material = {} {{ E_g_eV = {}, E_b_exc_eV = {}, a_B_angstrom = {}, \
                     dipole_ratio_meV = {}, epsilon = {}, m_e = {}, m_h = {} }}",
                    m.name,
                    m.e_gap,
                    m.e_bind,
                    m.a_bohr,
                    m.dipole_ratio * 1e3,
                    m.epsilon,
                    m.m_e,
                    m.m_h
                );
            }
            None => {
                let _ = writeln!(s, "# material = none");
            }
        }
        let _ = writeln!(s, "# command = {}", self.command_line);
        let _ = writeln!(s, "# generated_utc = {}", self.timestamp_utc);
        s
    }
}

/// First 16 hex characters of the SHA-256 of the constants table.
pub fn constants_hash() -> String {
    let digest = Sha256::digest(excidec::CONSTANTS.canonical_string().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Format a value at full f64 round-trip precision.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// Assemble a complete CSV document.
pub fn render_csv(
    manifest: &RunManifest,
    extra_comments: &[String],
    headers: &[String],
    rows: &[Vec<f64>],
) -> String {
    let mut s = manifest.header();
    for line in extra_comments {
        let _ = writeln!(s, "# {line}");
    }
    let _ = writeln!(s, "{}", headers.join(","));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| format_value(x)).collect();
        let _ = writeln!(s, "{}", cells.join(","));
    }
    s
}

/// A parsed CSV: column names plus numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// Parse a CSV document in the tool's own format.
pub fn parse_csv(text: &str) -> Result<CsvTable, String> {
    let mut lines = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header_line = lines.next().ok_or("no header row found")?;
    let headers: Vec<String> = header_line.split(',').map(|h| h.trim().to_string()).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != headers.len() {
            return Err(format!(
                "data row {} has {} fields, expected {}",
                i + 1,
                cells.len(),
                headers.len()
            ));
        }
        let mut row = Vec::with_capacity(cells.len());
        for cell in cells {
            row.push(
                cell.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("cannot parse `{cell}` in data row {}", i + 1))?,
            );
        }
        rows.push(row);
    }
    Ok(CsvTable { headers, rows })
}

/// Read and parse a CSV file.
pub fn read_csv(path: &Path) -> Result<CsvTable, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_csv(&text)
}
