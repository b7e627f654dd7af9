//! Byte-exact file formats: PPM images, field and orbit CSV, JSON reports.

use std::io::{self, BufRead, Write};

use escset_core::orbit::AbsorptionRule;
use escset_core::{Classification, EscapeField, ExtendedPoint, OrbitRecord, StripMarks, VerificationReport, Window};

/// Formats `x` like C's `%.17g`: 17 significant digits, trailing zeros
/// removed, exponent form outside `1e-4 ≤ |x| < 1e17`.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

pub fn parse_g17(s: &str) -> Option<f64> {
    s.trim().parse().ok()
}

pub const WHITE: [u8; 3] = [255, 255, 255];

pub fn palette(c: &Classification) -> [u8; 3] {
    match *c {
        Classification::Escaping { step } => [(8 + 4 * step as u64).min(255) as u8, 0, 64],
        Classification::NonEscapingProven { .. } => [0, 0, 0],
        Classification::BoundedAtBudget => [0, 48, 0],
        Classification::Undetermined { .. } => [128, 128, 128],
    }
}

/// Binary P6 image, rows top to bottom; marked cells are painted white.
pub fn render_ppm<W: Write + ?Sized>(field: &EscapeField, marks: Option<&StripMarks>, out: &mut W) -> io::Result<()> {
    write!(out, "P6\n{} {}\n255\n", field.nx, field.ny)?;
    let mut buf = Vec::with_capacity(field.cells.len() * 3);
    for (idx, cell) in field.cells.iter().enumerate() {
        let marked = marks.is_some_and(|m| m.marks[idx]);
        buf.extend_from_slice(&if marked { WHITE } else { palette(&cell.classification) });
    }
    out.write_all(&buf)
}

pub fn class_letter(c: &Classification) -> char {
    match c {
        Classification::Escaping { .. } => 'E',
        Classification::NonEscapingProven { .. } => 'P',
        Classification::BoundedAtBudget => 'B',
        Classification::Undetermined { .. } => 'U',
    }
}

pub const FIELD_CSV_HEADER: &str = "i,j,re,im,class,step";

pub fn write_field_csv<W: Write + ?Sized>(field: &EscapeField, out: &mut W) -> io::Result<()> {
    writeln!(out, "{FIELD_CSV_HEADER}")?;
    for (i, j, z, cell) in field.iter() {
        let c = &cell.classification;
        let step = c.step().map(|s| s.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{i},{j},{},{},{},{step}",
            fmt_g17(z.re),
            fmt_g17(z.im),
            class_letter(c)
        )?;
    }
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Details the field CSV does not carry, supplied when reading it back.
#[derive(Clone, Copy, Debug)]
pub struct CsvDefaults {
    pub window: Window,
    /// Rule assigned to `P` cells.
    pub rule: AbsorptionRule,
    /// Reason assigned to `U` cells.
    pub reason: &'static str,
}

/// Reads a field written by [`write_field_csv`]. The grid size comes from
/// the largest indices; every cell must appear exactly once.
pub fn read_field_csv<R: BufRead>(input: R, defaults: CsvDefaults) -> Result<EscapeField, CsvError> {
    let bad = |line: usize, message: &str| CsvError::Malformed {
        line,
        message: message.to_string(),
    };
    let mut rows = Vec::new();
    let mut lines = input.lines();
    let header = lines.next().transpose()?;
    if header.as_deref().map(str::trim_end) != Some(FIELD_CSV_HEADER) {
        return Err(bad(1, "missing header"));
    }
    for (n, line) in lines.enumerate() {
        let line = line?;
        let lineno = n + 2;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.trim_end().split(',').collect();
        if cols.len() != 6 {
            return Err(bad(lineno, "expected 6 columns"));
        }
        let i: usize = cols[0].parse().map_err(|_| bad(lineno, "bad i"))?;
        let j: usize = cols[1].parse().map_err(|_| bad(lineno, "bad j"))?;
        let step = if cols[5].is_empty() {
            None
        } else {
            Some(cols[5].parse::<u32>().map_err(|_| bad(lineno, "bad step"))?)
        };
        let c = match (cols[4], step) {
            ("E", Some(step)) => Classification::Escaping { step },
            ("P", Some(step)) => Classification::NonEscapingProven {
                rule: defaults.rule,
                step,
            },
            ("B", None) => Classification::BoundedAtBudget,
            ("U", None) => Classification::Undetermined {
                reason: defaults.reason,
            },
            _ => return Err(bad(lineno, "bad class/step")),
        };
        rows.push((i, j, c));
    }
    let nx = rows.iter().map(|r| r.0 + 1).max().unwrap_or(0);
    let ny = rows.iter().map(|r| r.1 + 1).max().unwrap_or(0);
    if nx * ny != rows.len() {
        return Err(bad(0, "cells missing or repeated"));
    }
    let mut field = EscapeField::filled(defaults.window, nx, ny, Classification::BoundedAtBudget);
    let mut seen = vec![false; nx * ny];
    for (i, j, c) in rows {
        if std::mem::replace(&mut seen[j * nx + i], true) {
            return Err(bad(0, "cells missing or repeated"));
        }
        field.set(i, j, c);
    }
    Ok(field)
}

pub fn write_orbit_csv<W: Write + ?Sized>(record: &OrbitRecord, out: &mut W) -> io::Result<()> {
    writeln!(out, "n,kind,a,b")?;
    for (n, p) in record.points.iter().flatten().enumerate() {
        let (kind, a, b) = match *p {
            ExtendedPoint::Finite { re, im } => ('F', re, im),
            ExtendedPoint::Directed { log_modulus, angle } => ('D', log_modulus, angle),
        };
        writeln!(out, "{n},{kind},{},{}", fmt_g17(a), fmt_g17(b))?;
    }
    let step = record.classification.step().unwrap_or(record.steps_taken);
    writeln!(
        out,
        "# classification={},step={step}",
        record.classification.variant_name()
    )
}

/// One-line JSON object for a report.
pub fn report_json(report: &VerificationReport) -> String {
    let violations: Vec<serde_json::Value> = report
        .violations
        .iter()
        .map(|v| {
            serde_json::json!({
                "index": v.index,
                "input": v.input,
                "expected": v.expected,
                "observed": v.observed,
            })
        })
        .collect();
    serde_json::json!({
        "suite_name": report.suite_name,
        "total": report.total,
        "skipped": report.skipped_undetermined,
        "violations": violations,
        "verdict": report.verdict.as_str(),
    })
    .to_string()
}
