//! The line-oriented algebra description format.
//!
//! ```text
//! dim 4                      # first non-comment line, exactly once
//! basis X Y Z W              # exactly dim names
//! params theta1 theta2 z2    # optional parameter declarations
//! metric orthonormal         # required; the only supported metric
//! bracket Z X = -2*z2*W      # zero or more; [X,Z] is implied by antisymmetry
//! vertical Z W               # optional vertical distribution
//! ```
//!
//! Unlisted brackets are zero. Listing a pair twice, in either order, is an
//! error: the reverse value is already forced by antisymmetry.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::ParseError;
use crate::expr::parse_bracket_value_at;
use crate::lie::{LieAlgebraSpec, Vector};
use crate::poly::{is_identifier, ParameterTable, Polynomial};

/// One `bracket A B = value` line.
#[derive(Debug, Clone)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<Polynomial>,
    /// Source line for diagnostics; ignored by equality.
    pub line: usize,
}

impl PartialEq for BracketEntry {
    fn eq(&self, other: &Self) -> bool {
        self.i == other.i && self.j == other.j && self.value == other.value
    }
}

impl Eq for BracketEntry {}

/// A parsed and validated algebra description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub dim: usize,
    pub basis: Vec<String>,
    pub params: Arc<ParameterTable>,
    pub brackets: Vec<BracketEntry>,
    pub vertical: Option<Vec<usize>>,
}

impl AlgebraDocument {
    /// Builds the structure tensor, with the reverse of each listed bracket
    /// implied as the negation.
    pub fn to_spec(&self) -> Result<LieAlgebraSpec, ParseError> {
        let zero = Polynomial::zero(&self.params);
        let mut c = vec![vec![vec![zero; self.dim]; self.dim]; self.dim];
        for entry in &self.brackets {
            for (k, coeff) in entry.value.iter().enumerate() {
                c[entry.i][entry.j][k] = coeff.clone();
                c[entry.j][entry.i][k] = coeff.negate();
            }
        }
        LieAlgebraSpec::new(
            self.basis.clone(),
            Arc::clone(&self.params),
            c,
            self.vertical.clone(),
        )
        .map_err(|e| ParseError::new(1, 1, e.to_string()))
    }

    /// Renders back to the file format. Parsing the output yields an equal
    /// document (up to source positions).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dim {}", self.dim);
        let _ = writeln!(out, "basis {}", self.basis.join(" "));
        if !self.params.is_empty() {
            let _ = writeln!(out, "params {}", self.params.names().join(" "));
        }
        let _ = writeln!(out, "metric orthonormal");
        for entry in &self.brackets {
            let _ = writeln!(
                out,
                "bracket {} {} = {}",
                self.basis[entry.i],
                self.basis[entry.j],
                Vector::new(entry.value.clone()).render(&self.basis)
            );
        }
        if let Some(vertical) = &self.vertical {
            let names: Vec<&str> = vertical.iter().map(|&i| self.basis[i].as_str()).collect();
            let _ = writeln!(out, "vertical {}", names.join(" "));
        }
        out
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Parses the algebra file format.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraDocument, ParseError> {
    let mut dim: Option<usize> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut params: Option<Arc<ParameterTable>> = None;
    let mut metric_seen = false;
    let mut vertical: Option<Vec<usize>> = None;
    let mut brackets: Vec<BracketEntry> = Vec::new();
    let mut pairs_seen: Vec<(usize, usize)> = Vec::new();

    for (line_idx, raw_line) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let line = strip_comment(raw_line);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut words = trimmed.split_whitespace();
        let keyword = words.next().expect("nonempty line");
        let col = raw_line.find(keyword).map(|p| p + 1).unwrap_or(1);

        if dim.is_none() && keyword != "dim" {
            return Err(ParseError::new(
                line_no,
                col,
                "the first directive must be `dim <n>`",
            ));
        }

        match keyword {
            "dim" => {
                if dim.is_some() {
                    return Err(ParseError::new(line_no, col, "duplicate `dim` directive"));
                }
                let value = words
                    .next()
                    .ok_or_else(|| ParseError::new(line_no, col, "expected `dim <n>`"))?;
                let n: usize = value.parse().map_err(|_| {
                    ParseError::new(line_no, col, format!("not a dimension: `{value}`"))
                })?;
                if n == 0 {
                    return Err(ParseError::new(line_no, col, "dimension must be positive"));
                }
                if words.next().is_some() {
                    return Err(ParseError::new(line_no, col, "trailing input after `dim`"));
                }
                dim = Some(n);
            }
            "basis" => {
                if basis.is_some() {
                    return Err(ParseError::new(line_no, col, "duplicate `basis` directive"));
                }
                let names: Vec<String> = words.map(str::to_string).collect();
                let n = dim.expect("dim parsed first");
                if names.len() != n {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        format!("expected {} basis names, got {}", n, names.len()),
                    ));
                }
                for name in &names {
                    if !is_identifier(name) {
                        return Err(ParseError::new(
                            line_no,
                            col,
                            format!("invalid basis name `{name}`"),
                        ));
                    }
                }
                for (i, name) in names.iter().enumerate() {
                    if names[..i].contains(name) {
                        return Err(ParseError::new(
                            line_no,
                            col,
                            format!("duplicate basis name `{name}`"),
                        ));
                    }
                }
                basis = Some(names);
            }
            "params" => {
                if params.is_some() {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        "duplicate `params` directive",
                    ));
                }
                let names: Vec<String> = words.map(str::to_string).collect();
                let table = ParameterTable::new(names)
                    .map_err(|e| ParseError::new(line_no, col, e.to_string()))?;
                params = Some(table);
            }
            "metric" => {
                if metric_seen {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        "duplicate `metric` directive",
                    ));
                }
                let value = words.next().ok_or_else(|| {
                    ParseError::new(line_no, col, "expected `metric orthonormal`")
                })?;
                if value != "orthonormal" {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        format!("unsupported metric `{value}`; only `orthonormal` is supported"),
                    ));
                }
                metric_seen = true;
            }
            "bracket" => {
                let basis = basis
                    .as_ref()
                    .ok_or_else(|| ParseError::new(line_no, col, "`bracket` before `basis`"))?;
                let table = params.clone().unwrap_or_else(ParameterTable::empty);
                let a = words.next().ok_or_else(|| {
                    ParseError::new(line_no, col, "expected `bracket <A> <B> = ...`")
                })?;
                let b = words.next().ok_or_else(|| {
                    ParseError::new(line_no, col, "expected `bracket <A> <B> = ...`")
                })?;
                let i = basis.iter().position(|n| n == a).ok_or_else(|| {
                    ParseError::new(line_no, col, format!("unknown basis vector `{a}`"))
                })?;
                let j = basis.iter().position(|n| n == b).ok_or_else(|| {
                    ParseError::new(line_no, col, format!("unknown basis vector `{b}`"))
                })?;
                if i == j {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        format!(
                            "diagonal bracket [{a},{a}] is identically zero and may not be listed"
                        ),
                    ));
                }
                let eq_pos = line.find('=').ok_or_else(|| {
                    ParseError::new(line_no, col, "expected `=` in bracket directive")
                })?;
                let rhs = &line[eq_pos + 1..];
                let value = parse_bracket_value_at(rhs, basis, &table, line_no, eq_pos + 2)?;

                if pairs_seen.contains(&(i, j)) {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        format!("duplicate bracket pair [{a},{b}]"),
                    ));
                }
                if pairs_seen.contains(&(j, i)) {
                    // the reverse listing is never accepted: either it
                    // contradicts antisymmetry or it is redundant
                    let prior = brackets
                        .iter()
                        .find(|e| e.i == j && e.j == i)
                        .expect("recorded pair");
                    let negated: Vec<Polynomial> =
                        prior.value.iter().map(Polynomial::negate).collect();
                    let message = if negated == value {
                        format!("bracket pair [{a},{b}] already listed as [{b},{a}]")
                    } else {
                        format!("inconsistent antisymmetric pair: [{a},{b}] contradicts [{b},{a}]")
                    };
                    return Err(ParseError::new(line_no, col, message));
                }
                pairs_seen.push((i, j));
                brackets.push(BracketEntry {
                    i,
                    j,
                    value,
                    line: line_no,
                });
            }
            "vertical" => {
                if vertical.is_some() {
                    return Err(ParseError::new(
                        line_no,
                        col,
                        "duplicate `vertical` directive",
                    ));
                }
                let basis = basis
                    .as_ref()
                    .ok_or_else(|| ParseError::new(line_no, col, "`vertical` before `basis`"))?;
                let mut indices = Vec::new();
                for name in words {
                    let idx = basis.iter().position(|n| n == name).ok_or_else(|| {
                        ParseError::new(line_no, col, format!("unknown basis vector `{name}`"))
                    })?;
                    if indices.contains(&idx) {
                        return Err(ParseError::new(
                            line_no,
                            col,
                            format!("repeated vertical vector `{name}`"),
                        ));
                    }
                    indices.push(idx);
                }
                if indices.is_empty() {
                    return Err(ParseError::new(line_no, col, "empty `vertical` directive"));
                }
                indices.sort_unstable();
                vertical = Some(indices);
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }

    let dim = dim.ok_or_else(|| ParseError::new(1, 1, "missing `dim` directive"))?;
    let basis = basis.ok_or_else(|| ParseError::new(1, 1, "missing `basis` directive"))?;
    if !metric_seen {
        return Err(ParseError::new(
            1,
            1,
            "missing `metric orthonormal` directive",
        ));
    }
    let params = params.unwrap_or_else(ParameterTable::empty);
    for name in &basis {
        if params.index_of(name).is_some() {
            return Err(ParseError::new(
                1,
                1,
                format!("`{name}` is declared both as basis vector and parameter"),
            ));
        }
    }
    Ok(AlgebraDocument {
        dim,
        basis,
        params,
        brackets,
        vertical,
    })
}
