//! Row encodings shared by the CLI and the FFI layer.
//!
//! Every number is written as a full decimal string. TSV rows have no header
//! and tab-separated columns in the order listed below; JSON-lines rows carry the
//! same strings under the column names.
//!
//! | record  | columns                 |
//! |---------|-------------------------|
//! | triplet | `n x y z`               |
//! | hit     | `x y z delta`           |
//! | check   | `n residual closed_form status` |

use std::fmt::Display;
use std::str::FromStr;

use serde::Serializer;

use crate::search::SearchHit;
use crate::sequences::{IndexCheck, Triplet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Tsv,
    Jsonl,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tsv" => Ok(OutputFormat::Tsv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            other => Err(format!("unknown format {other:?} (expected tsv or jsonl)")),
        }
    }
}

pub(crate) fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// A record with a fixed, ordered set of named decimal-string columns.
pub trait Row {
    fn columns(&self) -> Vec<(&'static str, String)>;
}

impl Row for Triplet {
    fn columns(&self) -> Vec<(&'static str, String)> {
        vec![
            ("n", self.n.to_string()),
            ("x", self.x.to_string()),
            ("y", self.y.to_string()),
            ("z", self.z.to_string()),
        ]
    }
}

impl Row for SearchHit {
    fn columns(&self) -> Vec<(&'static str, String)> {
        vec![
            ("x", self.x.to_string()),
            ("y", self.y.to_string()),
            ("z", self.z.to_string()),
            ("delta", self.delta.to_string()),
        ]
    }
}

impl Row for IndexCheck {
    fn columns(&self) -> Vec<(&'static str, String)> {
        let closed = match (&self.closed_form_error, self.closed_form_agrees) {
            (Some(_), _) => "error",
            (None, true) => "agree",
            (None, false) => "differ",
        };
        vec![
            ("n", self.n.to_string()),
            ("residual", self.residual.to_string()),
            ("closed_form", closed.to_string()),
            ("status", if self.passed() { "ok" } else { "FAIL" }.to_string()),
        ]
    }
}

/// One encoded line, without the trailing newline.
pub fn render(row: &dyn Row, format: OutputFormat) -> String {
    let cols = row.columns();
    match format {
        OutputFormat::Tsv => cols.into_iter().map(|(_, v)| v).collect::<Vec<_>>().join("\t"),
        OutputFormat::Jsonl => {
            let body = cols
                .iter()
                .map(|(k, v)| format!("{}:{}", json_string(k), json_string(v)))
                .collect::<Vec<_>>()
                .join(",");
            format!("{{{body}}}")
        }
    }
}

pub fn render_all<'a, R: Row + 'a>(rows: impl IntoIterator<Item = &'a R>, format: OutputFormat) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&render(r, format));
        out.push('\n');
    }
    out
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization cannot fail")
}
