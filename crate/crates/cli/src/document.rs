//! The canonical geometry text format.
//!
//! ```text
//! geometry v1
//! points 9
//! line: 0 1 2
//! line: 0 3 6
//! perp: 0 1
//! label point 0 origin
//! label line 1 vertical
//! ```
//!
//! The format is line-oriented with explicit integer indices so documents
//! diff cleanly and counterexamples can be written by hand. Blank lines and
//! `#` comments are accepted on input and never emitted. A document with no
//! `perp:` entries describes a geometry without a perpendicularity relation.
//! Labels are optional decoration; they survive document round-trips but are
//! not part of the geometry itself.
//!
//! Emission is canonical: parsing a canonical document and emitting it again
//! reproduces the input byte for byte.

use std::collections::BTreeMap;
use std::fmt;

use brucknet::{Geometry, GeometryError};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// In-memory form of a geometry document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryDocument {
    pub format_version: u32,
    pub num_points: usize,
    pub lines: Vec<Vec<usize>>,
    pub perp: Option<Vec<(usize, usize)>>,
    pub point_labels: BTreeMap<usize, String>,
    pub line_labels: BTreeMap<usize, String>,
}

/// One whitespace-separated token with its 1-based column.
fn tokens(raw: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in raw.split_inclusive(char::is_whitespace) {
        let token = piece.trim_end_matches(char::is_whitespace);
        if !token.is_empty() {
            out.push((token, offset + 1));
        }
        offset += piece.len();
    }
    out
}

fn parse_index(token: &str, line: usize, column: usize, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, column, format!("expected {what}, got `{token}`")))
}

impl GeometryDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut num_points: Option<usize> = None;
        let mut lines: Vec<Vec<usize>> = Vec::new();
        let mut perp: Vec<(usize, usize)> = Vec::new();
        let mut saw_perp = false;
        let mut perp_positions: Vec<(usize, usize)> = Vec::new();
        let mut point_labels = BTreeMap::new();
        let mut line_labels = BTreeMap::new();
        let mut label_positions: Vec<(bool, usize, usize, usize)> = Vec::new();
        let mut saw_header = false;

        for (line_no, raw) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let raw = raw.strip_suffix('\r').unwrap_or(raw);
            let toks = tokens(raw);
            if toks.is_empty() || toks[0].0.starts_with('#') {
                continue;
            }
            if !saw_header {
                if toks.len() != 2 || toks[0].0 != "geometry" || toks[1].0 != "v1" {
                    return Err(ParseError::new(
                        line_no,
                        toks[0].1,
                        "expected header `geometry v1`",
                    ));
                }
                saw_header = true;
                continue;
            }
            match toks[0].0 {
                "points" => {
                    if num_points.is_some() {
                        return Err(ParseError::new(
                            line_no,
                            toks[0].1,
                            "duplicate `points` line",
                        ));
                    }
                    if toks.len() != 2 {
                        return Err(ParseError::new(line_no, toks[0].1, "expected `points N`"));
                    }
                    num_points = Some(parse_index(toks[1].0, line_no, toks[1].1, "a point count")?);
                }
                "line:" => {
                    let v = num_points.ok_or_else(|| {
                        ParseError::new(line_no, toks[0].1, "`line:` before `points`")
                    })?;
                    let mut line = Vec::with_capacity(toks.len() - 1);
                    for &(tok, col) in &toks[1..] {
                        let p = parse_index(tok, line_no, col, "a point index")?;
                        if p >= v {
                            return Err(ParseError::new(
                                line_no,
                                col,
                                format!("point {p} out of bounds ({v} points)"),
                            ));
                        }
                        line.push(p);
                    }
                    lines.push(line);
                }
                "perp:" => {
                    if toks.len() != 3 {
                        return Err(ParseError::new(line_no, toks[0].1, "expected `perp: i j`"));
                    }
                    let a = parse_index(toks[1].0, line_no, toks[1].1, "a line index")?;
                    let b = parse_index(toks[2].0, line_no, toks[2].1, "a line index")?;
                    saw_perp = true;
                    perp.push((a, b));
                    perp_positions.push((line_no, toks[1].1));
                }
                "label" => {
                    if toks.len() < 4 {
                        return Err(ParseError::new(
                            line_no,
                            toks[0].1,
                            "expected `label point|line <index> <text>`",
                        ));
                    }
                    let is_point = match toks[1].0 {
                        "point" => true,
                        "line" => false,
                        other => {
                            return Err(ParseError::new(
                                line_no,
                                toks[1].1,
                                format!("expected `point` or `line`, got `{other}`"),
                            ))
                        }
                    };
                    let index = parse_index(toks[2].0, line_no, toks[2].1, "an index")?;
                    let text_start = toks[3].1 - 1;
                    let text = raw[text_start..].to_string();
                    let map = if is_point {
                        &mut point_labels
                    } else {
                        &mut line_labels
                    };
                    if map.insert(index, text).is_some() {
                        return Err(ParseError::new(
                            line_no,
                            toks[2].1,
                            format!("duplicate label for index {index}"),
                        ));
                    }
                    label_positions.push((is_point, index, line_no, toks[2].1));
                }
                other => {
                    return Err(ParseError::new(
                        line_no,
                        toks[0].1,
                        format!("unknown directive `{other}`"),
                    ));
                }
            }
        }

        if !saw_header {
            return Err(ParseError::new(1, 1, "missing header `geometry v1`"));
        }
        let num_points =
            num_points.ok_or_else(|| ParseError::new(1, 1, "missing `points` line"))?;

        for ((a, b), (line_no, col)) in perp.iter().zip(&perp_positions) {
            for &x in &[*a, *b] {
                if x >= lines.len() {
                    return Err(ParseError::new(
                        *line_no,
                        *col,
                        format!("perp refers to line {x}, but only {} lines", lines.len()),
                    ));
                }
            }
        }
        for &(is_point, index, line_no, col) in &label_positions {
            let bound = if is_point { num_points } else { lines.len() };
            if index >= bound {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("label index {index} out of bounds ({bound})"),
                ));
            }
        }

        Ok(GeometryDocument {
            format_version: FORMAT_VERSION,
            num_points,
            lines,
            perp: saw_perp.then_some(perp),
            point_labels,
            line_labels,
        })
    }

    /// Canonical text form: lines in order, perpendicular pairs normalized,
    /// deduplicated and ascending, labels ascending by index.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str("geometry v1\n");
        out.push_str(&format!("points {}\n", self.num_points));
        for line in &self.lines {
            out.push_str("line:");
            for p in line {
                out.push_str(&format!(" {p}"));
            }
            out.push('\n');
        }
        if let Some(pairs) = &self.perp {
            let mut canonical: Vec<(usize, usize)> =
                pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            canonical.sort_unstable();
            canonical.dedup();
            for (a, b) in canonical {
                out.push_str(&format!("perp: {a} {b}\n"));
            }
        }
        for (index, text) in &self.point_labels {
            out.push_str(&format!("label point {index} {text}\n"));
        }
        for (index, text) in &self.line_labels {
            out.push_str(&format!("label line {index} {text}\n"));
        }
        out
    }

    /// Validates the document into a geometry. Labels are not carried over.
    pub fn to_geometry(&self) -> Result<Geometry, GeometryError> {
        match &self.perp {
            Some(pairs) => Geometry::with_perp(self.num_points, self.lines.clone(), pairs.clone()),
            None => Geometry::new(self.num_points, self.lines.clone()),
        }
    }

    pub fn from_geometry(g: &Geometry) -> Self {
        GeometryDocument {
            format_version: FORMAT_VERSION,
            num_points: g.num_points(),
            lines: g.lines().to_vec(),
            perp: g.perp_pairs().map(|set| set.iter().copied().collect()),
            point_labels: BTreeMap::new(),
            line_labels: BTreeMap::new(),
        }
    }
}

impl fmt::Display for GeometryDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.emit())
    }
}
