use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use super::CliError;
use crate::estimator::{QuadratureSamples, SampleRecord};

/// A CSV table with optional `#` comment lines before the header.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            comments: Vec::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Column parsed as numbers.
    pub fn numbers(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.column(name)?;
        self.rows.iter().map(|r| r[c].parse().ok()).collect()
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        for c in &self.comments {
            writeln!(out, "# {c}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    /// Parse text produced by [`Table::write_to`].
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let comments = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.trim_start_matches('#').trim_start().to_string())
            .collect();
        let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let header = rdr
            .headers()
            .map_err(|e| CliError::parse(0, e.to_string()))?
            .iter()
            .map(String::from)
            .collect();
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| CliError::parse(i + 2, e.to_string()))?;
            rows.push(rec.iter().map(String::from).collect());
        }
        Ok(Self { comments, header, rows })
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn num(v: f64) -> String {
    format!("{v}")
}

/// Write to `path`, or stdout when `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut f = File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            f.write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// Samples as an `angle,value` CSV.
pub fn samples_to_csv(samples: &QuadratureSamples) -> String {
    let mut t = Table::new(&["angle", "value"]);
    for r in samples.records() {
        let a = num(r.angle);
        for v in &r.values {
            t.push(vec![a.clone(), num(*v)]);
        }
    }
    t.to_csv_string()
}

/// Read an `angle,value` sample file. Errors carry 1-based line numbers.
pub fn read_samples(path: &Path) -> Result<QuadratureSamples, CliError> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_samples(&text)
}

pub fn parse_samples(text: &str) -> Result<QuadratureSamples, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .has_headers(false)
        .from_reader(text.as_bytes());
    let mut records = rdr.records();
    let header = match records.next() {
        None => return Err(CliError::parse(1, "empty sample file; expected header `angle,value`")),
        Some(Err(e)) => return Err(CliError::parse(line_of(&e).unwrap_or(1), e.to_string())),
        Some(Ok(h)) => h,
    };
    let header_line = header.position().map_or(1, |p| p.line() as usize);
    if header.len() != 2 || &header[0] != "angle" || &header[1] != "value" {
        return Err(CliError::parse(
            header_line,
            format!("expected header `angle,value`, found `{}`", header.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut grouped: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut n = 0usize;
    for rec in records {
        let rec = rec.map_err(|e| CliError::parse(line_of(&e).unwrap_or(0), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 2 {
            return Err(CliError::parse(line, format!("expected 2 fields, found {}", rec.len())));
        }
        let field = |i: usize, name: &str| -> Result<f64, CliError> {
            let v: f64 = rec[i]
                .parse()
                .map_err(|_| CliError::parse(line, format!("{name} `{}` is not a number", &rec[i])))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::parse(line, format!("{name} `{}` is not finite", &rec[i])))
            }
        };
        let (angle, value) = (field(0, "angle")?, field(1, "value")?);
        match grouped.iter_mut().find(|g| g.0 == angle) {
            Some(g) => g.1.push(value),
            None => grouped.push((angle, vec![value])),
        }
        n += 1;
    }
    if n == 0 {
        return Err(CliError::parse(header_line + 1, "no samples after header"));
    }
    QuadratureSamples::new(
        grouped
            .into_iter()
            .map(|(angle, values)| SampleRecord { angle, values })
            .collect(),
    )
    .map_err(CliError::Lib)
}

fn line_of(e: &csv::Error) -> Option<usize> {
    e.position().map(|p| p.line() as usize)
}
