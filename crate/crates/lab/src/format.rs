//! Text formats for colorings and triple systems.
//!
//! ```text
//! rainbow-coloring v1
//! p=<p> n=<n> colors=<k>
//! <v1> ... <vp> <color>        one line per edge, colex order
//! ```
//!
//! ```text
//! triple-system v1 n=<n> blocks=<b>
//! <a> <b> <c>                  one line per block
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rainbow_core::designs::TripleSystem;
use rainbow_core::hypercore::{binomial, edges, Coloring, MAX_DENSE_EDGES, MAX_VERTICES};
use thiserror::Error;

pub const COLORING_MAGIC: &str = "rainbow-coloring v1";
pub const TRIPLE_SYSTEM_MAGIC: &str = "triple-system v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed header: {0}")]
    Header(String),
    #[error("edge count mismatch: expected {expected} edge lines, found {found}")]
    EdgeCountMismatch { expected: u64, found: u64 },
    #[error("line {line}: vertices must be strictly ascending and below n")]
    NotAscending { line: usize },
    #[error("line {line}: edge out of colex order")]
    EdgeOrder { line: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("color surjectivity violated: header declares {declared} colors, ids used {used:?}")]
    Surjectivity { declared: u32, used: Vec<u32> },
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub fn render_coloring(c: &Coloring) -> String {
    let mut out = String::with_capacity(c.edge_count() * (2 * c.p() + 4) + 48);
    out.push_str(COLORING_MAGIC);
    out.push('\n');
    let _ = writeln!(out, "p={} n={} colors={}", c.p(), c.n(), c.k());
    for (e, col) in c.iter() {
        for v in e.vertices() {
            let _ = write!(out, "{v} ");
        }
        let _ = writeln!(out, "{col}");
    }
    out
}

fn header_field(token: Option<&str>, key: &str, line: &str) -> Result<u64, FormatError> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| FormatError::Header(format!("expected `{key}=<int>` in {line:?}")))
}

pub fn parse_coloring(text: &str) -> Result<Coloring, FormatError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(l) if l.trim_end() == COLORING_MAGIC => {}
        other => return Err(FormatError::Header(format!("expected {COLORING_MAGIC:?}, found {other:?}"))),
    }
    let head = lines
        .next()
        .ok_or_else(|| FormatError::Header("missing `p= n= colors=` line".into()))?;
    let mut tok = head.split_whitespace();
    let p = header_field(tok.next(), "p", head)? as usize;
    let n = header_field(tok.next(), "n", head)? as usize;
    let k = header_field(tok.next(), "colors", head)?;
    if tok.next().is_some() {
        return Err(FormatError::Header(format!("trailing fields in {head:?}")));
    }
    if p == 0 || n < p || n > MAX_VERTICES {
        return Err(FormatError::Header(format!("need 1 <= p <= n <= {MAX_VERTICES}")));
    }
    let expected = binomial(n, p);
    if expected > MAX_DENSE_EDGES {
        return Err(FormatError::Header(format!("C({n},{p}) is too large")));
    }

    let body: Vec<(usize, &str)> = lines
        .enumerate()
        .map(|(i, l)| (i + 3, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if body.len() as u64 != expected {
        return Err(FormatError::EdgeCountMismatch {
            expected,
            found: body.len() as u64,
        });
    }

    let mut assign = Vec::with_capacity(expected as usize);
    let mut used = vec![false; k as usize];
    let mut out_of_range = Vec::new();
    for ((line, text), edge) in body.into_iter().zip(edges(n, p)) {
        let nums: Vec<u64> = text
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|e| FormatError::Syntax {
                line,
                msg: e.to_string(),
            })?;
        if nums.len() != p + 1 {
            return Err(FormatError::Syntax {
                line,
                msg: format!("expected {} fields, found {}", p + 1, nums.len()),
            });
        }
        let verts = &nums[..p];
        if verts.windows(2).any(|w| w[0] >= w[1]) || verts[p - 1] >= n as u64 {
            return Err(FormatError::NotAscending { line });
        }
        if verts.iter().zip(edge.vertices()).any(|(&a, b)| a != b as u64) {
            return Err(FormatError::EdgeOrder { line });
        }
        let col = nums[p];
        match used.get_mut(col as usize) {
            Some(slot) if col < k => *slot = true,
            _ => out_of_range.push(col as u32),
        }
        assign.push(col as u32);
    }
    if !out_of_range.is_empty() || used.iter().any(|u| !u) {
        let mut ids: Vec<u32> = assign.clone();
        ids.sort_unstable();
        ids.dedup();
        return Err(FormatError::Surjectivity {
            declared: k as u32,
            used: ids,
        });
    }
    Coloring::new(n, p, &assign).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn render_triple_system(t: &TripleSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{TRIPLE_SYSTEM_MAGIC} n={} blocks={}", t.n, t.len());
    for b in &t.blocks {
        let _ = writeln!(out, "{} {} {}", b[0], b[1], b[2]);
    }
    out
}

pub fn parse_triple_system(text: &str) -> Result<TripleSystem, FormatError> {
    let mut lines = text.lines();
    let head = lines.next().unwrap_or_default();
    let rest = head
        .strip_prefix(TRIPLE_SYSTEM_MAGIC)
        .ok_or_else(|| FormatError::Header(format!("expected {TRIPLE_SYSTEM_MAGIC:?}, found {head:?}")))?;
    let mut tok = rest.split_whitespace();
    let n = header_field(tok.next(), "n", head)? as usize;
    let b = header_field(tok.next(), "blocks", head)?;
    let body: Vec<(usize, &str)> = lines
        .enumerate()
        .map(|(i, l)| (i + 2, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if body.len() as u64 != b {
        return Err(FormatError::EdgeCountMismatch {
            expected: b,
            found: body.len() as u64,
        });
    }
    let mut blocks = Vec::with_capacity(body.len());
    for (line, text) in body {
        let v: Vec<usize> = text
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| FormatError::Syntax {
                line,
                msg: e.to_string(),
            })?;
        if v.len() != 3 {
            return Err(FormatError::Syntax {
                line,
                msg: format!("expected 3 vertices, found {}", v.len()),
            });
        }
        if v[0] >= v[1] || v[1] >= v[2] || v[2] >= n {
            return Err(FormatError::NotAscending { line });
        }
        blocks.push([v[0], v[1], v[2]]);
    }
    Ok(TripleSystem::new(n, blocks))
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_coloring(path: &Path) -> Result<Coloring, FormatError> {
    parse_coloring(&read(path)?)
}

pub fn save_coloring(path: &Path, c: &Coloring) -> Result<(), FormatError> {
    write(path, &render_coloring(c))
}

pub fn load_triple_system(path: &Path) -> Result<TripleSystem, FormatError> {
    parse_triple_system(&read(path)?)
}

pub fn save_triple_system(path: &Path, t: &TripleSystem) -> Result<(), FormatError> {
    write(path, &render_triple_system(t))
}
