//! Text formats.
//!
//! Complex files:
//!
//! ```text
//! cubecomplex v1
//! vertex a
//! edge a b
//! square a b c d   # cyclic order
//! ```
//!
//! Action files list generators, each followed by its vertex map:
//!
//! ```text
//! cubeaction v1
//! gen r
//! map a b
//! ```
//!
//! `#` starts a comment and blank lines are ignored in both.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::actions::{validate_automorphism, Automorphism};
use crate::complex::{is_token, ComplexDescription, CubeComplex};
use crate::error::{BuildError, Decl, Error};

pub const COMPLEX_HEADER: &str = "cubecomplex v1";
pub const ACTION_HEADER: &str = "cubeaction v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    BadHeader { expected: &'static str },
    Malformed(String),
    UnknownVertex(String),
    Duplicate(String),
    Invalid(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::BadHeader { expected } => write!(f, "expected header `{expected}`"),
            ParseErrorKind::Malformed(line) => write!(f, "malformed line `{line}`"),
            ParseErrorKind::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            ParseErrorKind::Duplicate(what) => write!(f, "duplicate declaration: {what}"),
            ParseErrorKind::Invalid(msg) => f.write_str(msg),
        }
    }
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-blank lines with comments stripped, tokenised, with 1-based numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn expect_header<'a>(
    records: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    expected: &'static str,
) -> Result<usize, ParseError> {
    match records.next() {
        Some((line, tokens)) if tokens.join(" ") == expected => Ok(line),
        Some((line, _)) => Err(err(line, ParseErrorKind::BadHeader { expected })),
        None => Err(err(1, ParseErrorKind::BadHeader { expected })),
    }
}

pub fn parse_complex(text: &str) -> Result<CubeComplex, ParseError> {
    let mut recs = records(text);
    let header_line = expect_header(&mut recs, COMPLEX_HEADER)?;

    let mut desc = ComplexDescription::new();
    let (mut vertex_lines, mut edge_lines, mut square_lines) = (Vec::new(), Vec::new(), Vec::new());
    for (line, tokens) in recs {
        match tokens.as_slice() {
            ["vertex", v] => {
                desc.vertex(*v);
                vertex_lines.push(line);
            }
            ["edge", u, v] => {
                desc.edge(*u, *v);
                edge_lines.push(line);
            }
            ["square", a, b, c, d] => {
                desc.square(*a, *b, *c, *d);
                square_lines.push(line);
            }
            _ => return Err(err(line, ParseErrorKind::Malformed(tokens.join(" ")))),
        }
    }

    CubeComplex::build(&desc).map_err(|e| {
        let line = match e.decl() {
            Some(Decl::Vertex(i)) => vertex_lines[i],
            Some(Decl::Edge(i)) => edge_lines[i],
            Some(Decl::Square(i)) => square_lines[i],
            None => header_line,
        };
        let kind = match &e {
            BuildError::UnknownVertex { name, .. } => ParseErrorKind::UnknownVertex(name.clone()),
            BuildError::DuplicateVertex { .. }
            | BuildError::DuplicateEdge { .. }
            | BuildError::DuplicateSquare { .. } => ParseErrorKind::Duplicate(e.to_string()),
            _ => ParseErrorKind::Invalid(e.to_string()),
        };
        err(line, kind)
    })
}

/// Header, then vertex, edge and square lines, each group sorted.
pub fn serialize_complex(complex: &CubeComplex) -> String {
    let desc = complex.description();
    let mut out = String::new();
    writeln!(out, "{COMPLEX_HEADER}").unwrap();
    for v in &desc.vertices {
        writeln!(out, "vertex {v}").unwrap();
    }
    for (u, v) in &desc.edges {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    for [a, b, c, d] in &desc.squares {
        writeln!(out, "square {a} {b} {c} {d}").unwrap();
    }
    out
}

/// Declaration line, name and `map` pairs of a generator being read.
type PendingGenerator = (usize, String, Vec<(String, String)>);

/// Parses an action file and validates every generator against `complex`.
pub fn parse_action(text: &str, complex: &CubeComplex) -> Result<Vec<(String, Automorphism)>, ParseError> {
    let mut recs = records(text);
    expect_header(&mut recs, ACTION_HEADER)?;

    let mut gens: Vec<PendingGenerator> = Vec::new();
    for (line, tokens) in recs {
        match tokens.as_slice() {
            ["gen", name] if is_token(name) => {
                if gens.iter().any(|(_, n, _)| n == name) {
                    return Err(err(line, ParseErrorKind::Duplicate(format!("generator {name}"))));
                }
                gens.push((line, name.to_string(), Vec::new()));
            }
            ["map", from, to] if !gens.is_empty() => {
                for v in [from, to] {
                    if complex.index_of(v).is_err() {
                        return Err(err(line, ParseErrorKind::UnknownVertex(v.to_string())));
                    }
                }
                gens.last_mut()
                    .unwrap()
                    .2
                    .push((from.to_string(), to.to_string()));
            }
            _ => return Err(err(line, ParseErrorKind::Malformed(tokens.join(" ")))),
        }
    }

    gens.into_iter()
        .map(|(line, name, pairs)| {
            validate_automorphism(complex, pairs)
                .map(|g| (name, g))
                .map_err(|e: Error| err(line, ParseErrorKind::Invalid(e.to_string())))
        })
        .collect()
}

pub fn serialize_action(complex: &CubeComplex, generators: &[(String, Automorphism)]) -> String {
    let mut out = String::new();
    writeln!(out, "{ACTION_HEADER}").unwrap();
    for (name, g) in generators {
        writeln!(out, "gen {name}").unwrap();
        for (v, &w) in g.images().iter().enumerate() {
            writeln!(out, "map {} {}", complex.name(v), complex.name(w)).unwrap();
        }
    }
    out
}
