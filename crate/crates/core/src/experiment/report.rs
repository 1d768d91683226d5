//! Writing sweep reports as CSV or JSON.
//!
//! Three files can be produced in the output directory:
//!
//! | file | columns |
//! |---|---|
//! | `table.{csv,json}` | dataset, model, error, percentage (maxima) |
//! | `cells.{csv,json}` | dataset, model, alpha, error, percentage |
//! | `plot_data.csv` | dataset, model, alpha, error, percentage |
//!
//! Reals are rounded to 6 significant digits.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::sweep::SweepReport;
use crate::error::{Error, Result};

pub const TABLE_HEADER: [&str; 4] = ["dataset", "model", "error", "percentage"];
pub const CELLS_HEADER: [&str; 5] = ["dataset", "model", "alpha", "error", "percentage"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::InvalidParameter(format!(
                "unknown report format '{s}'"
            ))),
        }
    }
}

/// Rounds to 6 significant digits.
pub fn round6(v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    if !v.is_finite() {
        return v;
    }
    format!("{v:.5e}").parse().unwrap_or(v)
}

/// Shortest decimal of the 6-significant-digit rounding, e.g. `0.01`, `1.0`.
pub fn format6(v: f64) -> String {
    format!("{:?}", round6(v))
}

#[derive(Serialize)]
struct TableRow<'a> {
    dataset: &'a str,
    model: String,
    error: f64,
    percentage: f64,
}

#[derive(Serialize)]
struct CellRow<'a> {
    dataset: &'a str,
    model: String,
    alpha: f64,
    error: f64,
    percentage: f64,
}

fn table_rows(report: &SweepReport) -> Vec<(String, String, f64, f64)> {
    report
        .maxima()
        .into_iter()
        .map(|m| (m.dataset, m.model, m.error, m.percentage))
        .collect()
}

fn cell_rows(report: &SweepReport) -> Vec<CellRow<'_>> {
    report
        .cells
        .iter()
        .map(|c| CellRow {
            dataset: &c.dataset,
            model: c.label(),
            alpha: round6(c.alpha),
            error: round6(c.error),
            percentage: round6(c.percentage),
        })
        .collect()
}

fn csv_text(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// The maxima table (one `all` row and one row per model, per dataset).
pub fn render_table(report: &SweepReport, format: ReportFormat) -> Result<String> {
    let rows = table_rows(report);
    match format {
        ReportFormat::Csv => Ok(csv_text(
            &TABLE_HEADER,
            rows.into_iter()
                .map(|(d, m, e, p)| vec![d, m, format6(e), format6(p)]),
        )),
        ReportFormat::Json => {
            let rows: Vec<TableRow> = rows
                .iter()
                .map(|(d, m, e, p)| TableRow {
                    dataset: d,
                    model: m.clone(),
                    error: round6(*e),
                    percentage: round6(*p),
                })
                .collect();
            Ok(serde_json::to_string_pretty(&rows)? + "\n")
        }
    }
}

/// One row per (dataset, model, α) cell.
pub fn render_cells(report: &SweepReport, format: ReportFormat) -> Result<String> {
    let rows = cell_rows(report);
    match format {
        ReportFormat::Csv => Ok(csv_text(
            &CELLS_HEADER,
            rows.iter().map(|r| {
                vec![
                    r.dataset.to_string(),
                    r.model.clone(),
                    format!("{:?}", r.alpha),
                    format!("{:?}", r.error),
                    format!("{:?}", r.percentage),
                ]
            }),
        )),
        ReportFormat::Json => Ok(serde_json::to_string_pretty(&rows)? + "\n"),
    }
}

fn file_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::File {
        path: path.display().to_string(),
        source,
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    let mut file = fs::File::create(path).map_err(file_error(path))?;
    file.write_all(text.as_bytes()).map_err(file_error(path))
}

/// Writes the report files into `dir`, creating it if needed, and returns
/// their paths.
pub fn emit_report(
    report: &SweepReport,
    dir: impl AsRef<Path>,
    format: ReportFormat,
    plot_data: bool,
) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(file_error(dir))?;
    let ext = format.extension();
    let mut written = Vec::new();

    let table = dir.join(format!("table.{ext}"));
    write_file(&table, &render_table(report, format)?)?;
    written.push(table);

    let cells = dir.join(format!("cells.{ext}"));
    write_file(&cells, &render_cells(report, format)?)?;
    written.push(cells);

    if plot_data {
        let plot = dir.join("plot_data.csv");
        write_file(&plot, &render_cells(report, ReportFormat::Csv)?)?;
        written.push(plot);
    }
    Ok(written)
}
