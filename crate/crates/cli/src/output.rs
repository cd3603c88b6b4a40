use std::io::{self, Write};

use clap::ValueEnum;
use etale::Cyclo;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A titled table; every command reports through these.
#[derive(Debug, Default)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table { title: title.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> =
                    self.headers.iter().cloned().zip(r.iter().map(|c| Value::String(c.clone()))).collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "title": self.title, "rows": rows })
    }
}

/// Exact value followed by a 4-place decimal when irrational.
pub fn scalar(x: &Cyclo) -> String {
    if x.is_rational() {
        x.to_string()
    } else {
        format!("{x} (≈{:.4})", x.to_f64())
    }
}

pub fn render(tables: &[Table], format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Text => {
            for (k, t) in tables.iter().enumerate() {
                if k > 0 {
                    writeln!(out)?;
                }
                write_text(&mut out, t)?;
            }
        }
        Format::Csv => {
            for (k, t) in tables.iter().enumerate() {
                if k > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "# {}", t.title)?;
                let mut w = csv::Writer::from_writer(&mut out);
                w.write_record(&t.headers)?;
                for r in &t.rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
        }
        Format::Json => {
            let value = Value::Array(tables.iter().map(Table::to_json).collect());
            serde_json::to_writer_pretty(&mut out, &value)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_text(out: &mut impl Write, t: &Table) -> io::Result<()> {
    if !t.title.is_empty() {
        writeln!(out, "{}", t.title)?;
    }
    let cols = t.headers.len();
    let width = |c: usize| {
        std::iter::once(&t.headers[c]).chain(t.rows.iter().map(|r| &r[c])).map(|s| s.chars().count()).max().unwrap_or(0)
    };
    let widths: Vec<usize> = (0..cols).map(width).collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(&t.headers))?;
    writeln!(out, "{}", widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "))?;
    for r in &t.rows {
        writeln!(out, "{}", line(r))?;
    }
    Ok(())
}
