use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub nodes: Option<u64>,
    /// Excluded from the table so tables compare byte for byte.
    pub wall_clock_secs: f64,
    pub version: String,
}

impl RunReport {
    pub fn new(command: String, columns: &[&str]) -> Self {
        RunReport {
            command,
            inputs: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            nodes: None,
            wall_clock_secs: 0.0,
            version: format!("ramsey {}", env!("CARGO_PKG_VERSION")),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn add_nodes(&mut self, n: u64) {
        self.nodes = Some(self.nodes.unwrap_or(0) + n);
    }

    /// Aligned text table.
    pub fn table(&self) -> String {
        let mut width: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &self.rows {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |cells: &[String], out: &mut String| {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(&width).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    write!(s, "{cell:<w$}  ").unwrap();
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        line(&self.columns, &mut out);
        for r in &self.rows {
            line(r, &mut out);
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// `.csv` writes the table; anything else writes the whole report as JSON.
    pub fn write_to(&self, path: &Path) -> Result<()> {
        let text = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            self.to_csv()?
        } else {
            serde_json::to_string_pretty(self)? + "\n"
        };
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        let mut r = RunReport::new("anum --target P4".into(), &["N", "outcome"]);
        r.input("p", 1);
        r.row(vec!["4".into(), "Draw".into()]);
        r.row(vec!["5".into(), "AliceWin".into()]);
        r.add_nodes(7);
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: RunReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn table_and_csv() {
        let r = sample();
        assert_eq!(r.table(), "N  outcome\n4  Draw\n5  AliceWin\n");
        assert_eq!(r.to_csv().unwrap(), "N,outcome\n4,Draw\n5,AliceWin\n");
    }
}
