//! CSV traces. Floats are written with 17 significant digits so that reading a
//! trace back reproduces the records bit for bit.

use std::path::Path;
use std::time::Duration;

use dsogda::IterationRecord;

use crate::error::{HarnessError, Result};
use crate::io::{read_to_string, write_atomic};

pub const HEADER: [&str; 8] = ["t", "f_val", "gap", "gs_x", "gs_y", "os_res", "lyapunov", "elapsed_ms"];

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(float).unwrap_or_default()
}

/// Milliseconds with nanosecond resolution, e.g. `12.000345`.
fn millis(d: Duration) -> String {
    let ns = d.as_nanos();
    format!("{}.{:06}", ns / 1_000_000, ns % 1_000_000)
}

fn parse_millis(s: &str) -> Result<Duration> {
    let bad = || HarnessError::Trace(format!("bad elapsed_ms '{s}'"));
    let (whole, frac) = s.split_once('.').ok_or_else(bad)?;
    if frac.len() != 6 {
        return Err(bad());
    }
    let whole: u64 = whole.parse().map_err(|_| bad())?;
    let frac: u64 = frac.parse().map_err(|_| bad())?;
    Ok(Duration::from_nanos(whole * 1_000_000 + frac))
}

/// Renders the trace. Without `timing` the `elapsed_ms` column stays empty.
pub fn render(records: &[IterationRecord], timing: bool) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for r in records {
        let row = [
            r.t.to_string(),
            float(r.f_val),
            opt(r.gap),
            opt(r.gs_x),
            opt(r.gs_y),
            opt(r.os_res),
            opt(r.lyapunov),
            if timing { millis(r.elapsed) } else { String::new() },
        ];
        w.write_record(&row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn write_trace(path: &Path, records: &[IterationRecord], timing: bool) -> Result<()> {
    write_atomic(path, &render(records, timing))
}

/// Parses a trace; an empty `elapsed_ms` reads as zero.
pub fn parse(text: &str) -> Result<Vec<IterationRecord>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = rd.headers().map_err(|e| HarnessError::Trace(e.to_string()))?;
    if header.iter().ne(HEADER) {
        return Err(HarnessError::Trace(format!("unexpected header {:?}", header.iter().collect::<Vec<_>>())));
    }
    let mut out = Vec::new();
    for (line, row) in rd.records().enumerate() {
        let row = row.map_err(|e| HarnessError::Trace(e.to_string()))?;
        let field = |i: usize| -> Result<Option<f64>> {
            let s = &row[i];
            if s.is_empty() {
                return Ok(None);
            }
            s.parse()
                .map(Some)
                .map_err(|_| HarnessError::Trace(format!("row {}: bad {} '{s}'", line + 1, HEADER[i])))
        };
        let t = row[0].parse().map_err(|_| HarnessError::Trace(format!("row {}: bad t '{}'", line + 1, &row[0])))?;
        let f_val = field(1)?.ok_or_else(|| HarnessError::Trace(format!("row {}: missing f_val", line + 1)))?;
        let elapsed = if row[7].is_empty() { Duration::ZERO } else { parse_millis(&row[7])? };
        out.push(IterationRecord {
            t,
            f_val,
            gap: field(2)?,
            gs_x: field(3)?,
            gs_y: field(4)?,
            os_res: field(5)?,
            lyapunov: field(6)?,
            elapsed,
        });
    }
    Ok(out)
}

pub fn read_trace(path: &Path) -> Result<Vec<IterationRecord>> {
    parse(&read_to_string(path)?)
}
