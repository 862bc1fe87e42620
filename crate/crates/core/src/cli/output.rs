//! Rendering of command results as JSON, CSV or an aligned table.

use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::Result;
use crate::subset::{IndexSubset, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub enum Cell {
    Word(Word),
    Words(Vec<Word>),
    Set(IndexSubset),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        let join = |v: Vec<usize>| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            Cell::Word(w) => join(w.labels()),
            Cell::Words(ws) => ws.iter().map(|w| join(w.labels())).collect::<Vec<_>>().join(";"),
            Cell::Set(s) => join(s.labels()),
            Cell::Text(t) => t.clone(),
        }
    }

    fn pretty(&self) -> String {
        match self {
            Cell::Word(w) => w.to_string(),
            Cell::Words(ws) => ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" | "),
            Cell::Set(s) => s.to_string(),
            Cell::Text(t) => t.clone(),
        }
    }
}

/// A command result: the JSON document plus a flat table view of it.
pub struct Output {
    pub json: serde_json::Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Output {
    pub fn new<T: Serialize>(doc: &T, headers: Vec<&'static str>, rows: Vec<Vec<Cell>>) -> Result<Self> {
        Ok(Output { json: serde_json::to_value(doc)?, headers, rows })
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)?;
            }
            Format::Csv => {
                writeln!(out, "{}", self.headers.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Pretty => {
                let body: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::pretty).collect()).collect();
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for row in &body {
                    for (w, c) in widths.iter_mut().zip(row) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| -> String {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                        .collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(out, "{}", line(self.headers.clone()))?;
                let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
                writeln!(out, "{}", rule.join("  "))?;
                for row in &body {
                    writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
                }
            }
        }
        Ok(())
    }
}
