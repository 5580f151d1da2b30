use std::fmt;
use std::str::FromStr;

use nmhh::exactla::FinAbGroup;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            _ => Err(format!("unknown format `{s}` (json, csv, latex)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Latex => "latex",
        })
    }
}

/// Rectangular view of a result, for CSV and LaTeX.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: ToString>(headers: impl IntoIterator<Item = S>) -> Self {
        Table { headers: headers.into_iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }

    /// Pivots (row key, column key, cell) triples; missing cells become "0".
    pub fn pivot<R: Ord + Clone + ToString, C: Ord + Clone + ToString>(
        corner: &str,
        cells: impl IntoIterator<Item = (R, C, String)>,
    ) -> Self {
        let cells: Vec<(R, C, String)> = cells.into_iter().collect();
        let mut rows: Vec<R> = cells.iter().map(|c| c.0.clone()).collect();
        let mut cols: Vec<C> = cells.iter().map(|c| c.1.clone()).collect();
        rows.sort();
        rows.dedup();
        cols.sort();
        cols.dedup();
        let mut t = Table::new(std::iter::once(corner.to_string()).chain(cols.iter().map(|c| c.to_string())));
        for r in &rows {
            let mut line = vec![r.to_string()];
            for c in &cols {
                let v = cells.iter().find(|x| &x.0 == r && &x.1 == c).map_or("0".to_string(), |x| x.2.clone());
                line.push(v);
            }
            t.rows.push(line);
        }
        t
    }
}

/// What a command produced, before serialization.
#[derive(Clone, Debug)]
pub struct Output {
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub table: Table,
    /// Exit status: 0, or 1 for a failed verification.
    pub status: i32,
}

pub fn group_json(g: &FinAbGroup) -> Value {
    json!({ "free_rank": g.free_rank, "torsion": g.torsion_u64() })
}

fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            _ => out.push(ch),
        }
    }
    out
}

pub fn to_latex(t: &Table) -> String {
    let cols = t.headers.len().max(1);
    let mut s = format!("\\begin{{tabular}}{{c|{}}}\n", "c".repeat(cols - 1));
    let line = |cells: &[String]| cells.iter().map(|c| latex_escape(c)).collect::<Vec<_>>().join(" & ");
    s.push_str(&line(&t.headers));
    s.push_str(" \\\\\n\\hline\n");
    for r in &t.rows {
        s.push_str(&line(r));
        s.push_str(" \\\\\n");
    }
    s.push_str("\\end{tabular}\n");
    s
}

pub fn to_csv(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers).expect("write to memory");
    for r in &t.rows {
        w.write_record(r).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

pub fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({ "command": out.command, "params": out.params, "result": out.result });
            let mut s = serde_json::to_string_pretty(&v).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(&out.table),
        Format::Latex => to_latex(&out.table),
    }
}
