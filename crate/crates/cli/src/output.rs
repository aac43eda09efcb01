//! Table and report emission: CSV with locale-independent '.' decimals and
//! 17 significant digits, or pretty JSON; both to a file or stdout.

use std::io::Write;
use std::path::Path;

/// 17 significant digits round-trip any f64 exactly.
fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn open_sink(path: Option<&Path>) -> std::io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

pub fn write_rows_csv(
    header: &[&str],
    rows: &[Vec<f64>],
    path: Option<&Path>,
) -> std::io::Result<()> {
    let mut sink = open_sink(path)?;
    writeln!(sink, "{}", header.join(","))?;
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let cells: Vec<String> = row.iter().copied().map(format_float).collect();
        writeln!(sink, "{}", cells.join(","))?;
    }
    sink.flush()
}

pub fn write_rows_json<T: serde::Serialize>(
    rows: &[T],
    path: Option<&Path>,
) -> std::io::Result<()> {
    let mut sink = open_sink(path)?;
    serde_json::to_writer_pretty(&mut sink, rows)?;
    writeln!(sink)?;
    sink.flush()
}

pub fn write_json<T: serde::Serialize>(value: &T, path: Option<&Path>) -> std::io::Result<()> {
    let mut sink = open_sink(path)?;
    serde_json::to_writer_pretty(&mut sink, value)?;
    writeln!(sink)?;
    sink.flush()
}
