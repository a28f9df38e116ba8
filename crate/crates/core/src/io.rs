//! Plain-text hypergraph files (hMETIS-style, unweighted) and JSON results.

use std::collections::BTreeMap;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{BuildOptions, Hypergraph};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn read_hgr<R: BufRead>(reader: R) -> Result<Hypergraph> {
    read_hgr_with(reader, BuildOptions::default())
}

/// Parses `m n` followed by `m` lines of 1-based vertex ids. Lines starting
/// with `%` and blank lines are skipped. A third header field, if present, must be `0`.
pub fn read_hgr_with<R: BufRead>(reader: R, opts: BuildOptions) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = line.map_err(|e| parse_err(lineno, e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((m, n)) = header else {
            if fields.len() < 2 || fields.len() > 3 {
                return Err(parse_err(
                    lineno,
                    "header must be `m n` with an optional format field",
                ));
            }
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("bad count `{s}`")))
            };
            let (m, n) = (num(fields[0])?, num(fields[1])?);
            if fields.len() == 3 && fields[2] != "0" {
                return Err(parse_err(lineno, "weighted formats are not supported"));
            }
            header = Some((m, n));
            edges.reserve(m);
            continue;
        };
        if edges.len() == m {
            return Err(Error::CountMismatch {
                expected: m,
                found: m + 1,
            });
        }
        let mut edge = Vec::with_capacity(fields.len());
        for f in fields {
            let id: usize = f
                .parse()
                .map_err(|_| parse_err(lineno, format!("bad vertex id `{f}`")))?;
            if id == 0 || id > n {
                return Err(parse_err(lineno, format!("vertex id {id} outside 1..={n}")));
            }
            edge.push(id - 1);
        }
        edges.push(edge);
    }
    let Some((m, n)) = header else {
        return Err(parse_err(last_line.max(1), "missing header"));
    };
    if edges.len() != m {
        return Err(Error::CountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    Hypergraph::build_with(n, edges, opts)
}

pub fn write_hgr(g: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", g.m(), g.n());
    for e in g.edges() {
        let ids: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

/// Output of one solver run. Fields are declared in lexicographic order so
/// the JSON key order is stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub algorithm: String,
    pub lambda: usize,
    pub params: BTreeMap<String, serde_json::Value>,
    pub seed: Option<u64>,
    pub side: Vec<usize>,
    pub wall_ms: Option<u64>,
}

pub fn write_result(record: &ResultRecord) -> String {
    serde_json::to_string_pretty(record).expect("result records always serialize")
}
