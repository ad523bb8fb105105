//! Sample-set files: CSV with a `x0,...,x{d-1}` header, one point per row in
//! generation order, and SVG scatter plots of a 2D projection.

use std::fmt::Write as _;
use std::io::{Read, Write};

use crate::adapt::RecordSource;
use crate::domain::{Domain, SampleSet};
use crate::error::{Error, Result};

/// Formats `x` with 17 significant digits, dropping trailing zeros. Parsing
/// the result gives back `x` exactly.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".to_string() } else { x.to_string() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_header(dim: usize) -> String {
    (0..dim).map(|k| format!("x{k}")).collect::<Vec<_>>().join(",")
}

pub fn write_csv<W: Write>(set: &SampleSet, mut out: W) -> Result<()> {
    let mut text = csv_header(set.dim());
    text.push('\n');
    for p in set.points() {
        for (k, &x) in p.iter().enumerate() {
            if k > 0 {
                text.push(',');
            }
            text.push_str(&format_f64(x));
        }
        text.push('\n');
    }
    out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

pub fn to_csv_string(set: &SampleSet) -> String {
    let mut buf = Vec::new();
    write_csv(set, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("ascii output")
}

/// Streaming CSV reader yielding one validated row at a time. The first line
/// is a header and fixes the dimension; its names are not checked.
pub struct CsvRecords<R: Read> {
    reader: csv::Reader<R>,
    dim: usize,
    record: csv::StringRecord,
    total_bytes: Option<u64>,
    /// 1-based line number of the last row returned.
    line: usize,
}

impl<R: Read> CsvRecords<R> {
    /// `total_bytes`, when known, lets the reader report progress.
    pub fn new(input: R, total_bytes: Option<u64>) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(input);
        let headers = reader.headers().map_err(|e| parse_err(1, e))?.clone();
        if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
            return Err(Error::Parse {
                line: 1,
                message: "missing header row".into(),
            });
        }
        Ok(Self {
            reader,
            dim: headers.len(),
            record: csv::StringRecord::new(),
            total_bytes,
            line: 1,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn line(&self) -> usize {
        self.line
    }

    fn next_row(&mut self) -> Option<Result<Vec<f64>>> {
        match self.reader.read_record(&mut self.record) {
            Ok(false) => None,
            Err(e) => Some(Err(parse_err(self.line + 1, e))),
            Ok(true) => {
                self.line = self.record.position().map_or(self.line + 1, |p| p.line() as usize);
                Some(parse_row(&self.record, self.dim, self.line))
            }
        }
    }
}

fn parse_err(line: usize, e: csv::Error) -> Error {
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn parse_row(rec: &csv::StringRecord, dim: usize, line: usize) -> Result<Vec<f64>> {
    if rec.len() != dim {
        return Err(Error::Parse {
            line,
            message: format!("expected {dim} fields, found {}", rec.len()),
        });
    }
    rec.iter()
        .map(|cell| {
            let x: f64 = cell.parse().map_err(|_| Error::Parse {
                line,
                message: format!("not a number: {cell:?}"),
            })?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(Error::Parse {
                    line,
                    message: format!("non-finite value {cell:?}"),
                })
            }
        })
        .collect()
}

impl<R: Read> Iterator for CsvRecords<R> {
    type Item = Result<Vec<f64>>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_row()
    }
}

impl<R: Read> RecordSource for CsvRecords<R> {
    fn next_record(&mut self) -> Option<Result<Vec<f64>>> {
        self.next_row()
    }

    fn fraction_consumed(&self) -> Option<f64> {
        let total = self.total_bytes?;
        if total == 0 {
            return Some(1.0);
        }
        Some((self.reader.position().byte() as f64 / total as f64).min(1.0))
    }
}

/// Reads every row, returning the dimension and row-major coordinates.
pub fn read_rows<R: Read>(input: R) -> Result<(usize, Vec<f64>)> {
    let mut rows = CsvRecords::new(input, None)?;
    let mut coords = Vec::new();
    while let Some(r) = rows.next_row() {
        coords.extend(r?);
    }
    Ok((rows.dim(), coords))
}

/// Reads a CSV sample file into `domain`; `None` means the unit cube of the
/// file's dimension. Points outside the domain are reported by line.
pub fn read_csv<R: Read>(input: R, domain: Option<&Domain>) -> Result<SampleSet> {
    let (dim, coords) = read_rows(input)?;
    let domain = match domain {
        Some(d) if d.dim() != dim => {
            return Err(Error::DimensionMismatch {
                expected: d.dim(),
                got: dim,
            })
        }
        Some(d) => d.clone(),
        None => Domain::unit(dim),
    };
    SampleSet::from_flat(domain, coords).map_err(|e| match e {
        // Row i is on line i + 2, after the header.
        Error::PointOutsideDomain { index } => Error::Parse {
            line: index + 2,
            message: "point is outside the domain".into(),
        },
        other => other,
    })
}

/// Palette for points before and after the split index.
pub const SPLIT_COLORS: [&str; 2] = ["#1f77b4", "#d62728"];

const SVG_SIZE: f64 = 400.0;
const SVG_MARGIN: f64 = 20.0;

/// Standalone SVG scatter of dimensions `dims.0` (horizontal) and `dims.1`
/// (vertical), scaled to the set's domain. Points with index `< split` use
/// the first color, the rest the second.
pub fn scatter_svg(set: &SampleSet, dims: (usize, usize), split: Option<usize>) -> Result<String> {
    let d = set.dim();
    let (i, j) = dims;
    if d < 2 || i >= d || j >= d || i == j {
        return Err(Error::InvalidArgument(format!(
            "cannot plot dimensions {i},{j} of a {d}-dimensional set"
        )));
    }
    let unit = set.scale_to_unit();
    let side = SVG_SIZE - 2.0 * SVG_MARGIN;
    let total = SVG_SIZE;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{SVG_MARGIN}" y="{SVG_MARGIN}" width="{side}" height="{side}" fill="white" stroke="black"/>"#
    );
    let split = split.unwrap_or(usize::MAX);
    for (n, p) in unit.points().enumerate() {
        let cx = SVG_MARGIN + p[i] * side;
        // SVG y grows downwards.
        let cy = SVG_MARGIN + (1.0 - p[j]) * side;
        let color = SPLIT_COLORS[usize::from(n >= split)];
        let _ = writeln!(s, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="2.5" fill="{color}"/>"#);
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">x{i}</text>"#,
        total / 2.0,
        total - 4.0
    );
    let _ = writeln!(
        s,
        r#"<text x="12" y="{}" font-size="12" text-anchor="middle" transform="rotate(-90 12 {})">x{j}</text>"#,
        total / 2.0,
        total / 2.0
    );
    s.push_str("</svg>\n");
    Ok(s)
}
