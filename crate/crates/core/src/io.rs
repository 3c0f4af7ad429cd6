//! CSV readers and writers for points, rectangles and result tables.
//!
//! Files start with a `# format_version: N` comment and a header row. Readers skip
//! `#` comments and the header; numbers may be decimals or `p/q` rationals.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Point, Rect};
use crate::setsystem::FORMAT_VERSION;

/// Parses a decimal or a `p/q` rational.
pub fn parse_number(field: &str) -> Result<f64> {
    let field = field.trim();
    let value = match field.split_once('/') {
        Some((p, q)) => {
            let (p, q): (f64, f64) = (parse_plain(p)?, parse_plain(q)?);
            if q == 0.0 {
                return Err(Error::Parse(format!("zero denominator in '{field}'")));
            }
            p / q
        }
        None => parse_plain(field)?,
    };
    if !value.is_finite() {
        return Err(Error::Parse(format!("'{field}' is not a finite number")));
    }
    Ok(value)
}

fn parse_plain(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("'{s}' is not a number")))
}

fn read_rows(text: &str, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if i == 0 && record.iter().eq(header.iter().copied()) {
            continue;
        }
        if record.len() != header.len() {
            let line = record.position().map_or(0, |p| p.line());
            return Err(Error::Parse(format!("line {line}: expected {} fields, got {}", header.len(), record.len())));
        }
        rows.push(record.iter().map(parse_number).collect::<Result<Vec<f64>>>()?);
    }
    Ok(rows)
}

pub fn read_points(text: &str) -> Result<Vec<Point>> {
    Ok(read_rows(text, &["x", "y"])?.into_iter().map(|r| Point::new(r[0], r[1])).collect())
}

pub fn read_rects(text: &str) -> Result<Vec<Rect>> {
    read_rows(text, &["x_lo", "y_lo", "x_hi", "y_hi"])?
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            if r[0] > r[2] || r[1] > r[3] {
                return Err(Error::Parse(format!("rectangle {i} has lower corner above upper corner")));
            }
            Ok(Rect::new(r[0], r[1], r[2], r[3]))
        })
        .collect()
}

fn preamble() -> String {
    format!("# format_version: {FORMAT_VERSION}\n")
}

pub fn write_points(points: &[Point]) -> String {
    let mut out = preamble() + "x,y\n";
    for p in points {
        out += &format!("{},{}\n", p.x, p.y);
    }
    out
}

pub fn write_rects(rects: &[Rect]) -> String {
    let mut out = preamble() + "x_lo,y_lo,x_hi,y_hi\n";
    for r in rects {
        out += &format!("{},{},{},{}\n", r.x_lo, r.y_lo, r.x_hi, r.y_hi);
    }
    out
}

/// Serializes rows with a header taken from the field names.
pub fn write_table<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(preamble() + &String::from_utf8(bytes).expect("csv output is utf-8"))
}
