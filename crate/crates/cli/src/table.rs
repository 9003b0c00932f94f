//! Tabular output shared by every subcommand.
//!
//! CSV: comma-delimited, header first, LF endings, `#` comments only before
//! the header, floats as `%.17g` (lossless for binary64). Human output uses
//! the shortest round-trip representation and aligned columns.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Human,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl Cell {
    fn render(&self, format: OutputFormat) -> String {
        match (self, format) {
            (Cell::Num(v), OutputFormat::Csv) => fmt_g17(*v),
            (Cell::Num(v), OutputFormat::Human) => fmt_human(*v),
            (Cell::Int(v), _) => v.to_string(),
            (Cell::Bool(v), _) => v.to_string(),
            (Cell::Text(s), _) => s.clone(),
            (Cell::Empty, _) => String::new(),
        }
    }
}

/// Shortest round-trip digits, in exponent form outside `[1e-4, 1e16)`.
pub fn fmt_human(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// C-style `%.17g`.
pub fn fmt_g17(v: f64) -> String {
    const PRECISION: i32 = 17;
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (PRECISION - 1 - exp) as usize, v);
        trim_fraction(&fixed).to_owned()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    comments: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.render(format)).collect())
            .collect();
        match format {
            OutputFormat::Csv => {
                out.push_str(&self.header.join(","));
                out.push('\n');
                for row in &cells {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
            }
            OutputFormat::Human => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|i| {
                        cells
                            .iter()
                            .map(|r| r[i].len())
                            .chain(std::iter::once(self.header[i].len()))
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |items: Vec<&str>| {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                out.push_str(&line(self.header.iter().map(String::as_str).collect()));
                out.push('\n');
                for row in &cells {
                    out.push_str(&line(row.iter().map(String::as_str).collect()));
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// `name value` pairs for single-result reports.
pub fn key_values(pairs: &[(&str, Cell)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let header: Vec<&str> = pairs.iter().map(|(k, _)| *k).collect();
            let mut t = Table::new(&header);
            t.push(pairs.iter().map(|(_, v)| v.clone()).collect());
            t.render(format)
        }
        OutputFormat::Human => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            pairs
                .iter()
                .map(|(k, v)| format!("{k:<width$}  {}\n", v.render(format)))
                .collect()
        }
    }
}
