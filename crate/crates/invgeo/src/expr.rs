//! Parser for coefficient expressions and bracket values.
//!
//! Grammar (whitespace insignificant, `#` comments to end of line):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Exponents must be nonnegative integer literals. `/` occurs only inside
//! rational literals; the grammar has no division.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::ParseError;
use crate::poly::{Monomial, ParameterTable, Polynomial};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Slash => "`/`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

/// Tokenizes `text`, reporting positions relative to (`line`, `col`) of the
/// first character.
fn lex(text: &str, start_line: usize, start_col: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = start_line;
    let mut col = start_col;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_whitespace() => advance(1, &mut i, &mut col),
            '+' => {
                out.push(Spanned {
                    tok: Tok::Plus,
                    line: tline,
                    col: tcol,
                });
                advance(1, &mut i, &mut col);
            }
            '-' => {
                out.push(Spanned {
                    tok: Tok::Minus,
                    line: tline,
                    col: tcol,
                });
                advance(1, &mut i, &mut col);
            }
            '*' => {
                out.push(Spanned {
                    tok: Tok::Star,
                    line: tline,
                    col: tcol,
                });
                advance(1, &mut i, &mut col);
            }
            '^' => {
                out.push(Spanned {
                    tok: Tok::Caret,
                    line: tline,
                    col: tcol,
                });
                advance(1, &mut i, &mut col);
            }
            '/' => {
                out.push(Spanned {
                    tok: Tok::Slash,
                    line: tline,
                    col: tcol,
                });
                advance(1, &mut i, &mut col);
            }
            '(' => {
                out.push(Spanned {
                    tok: Tok::LParen,
                    line: tline,
                    col: tcol,
                });
                advance(1, &mut i, &mut col);
            }
            ')' => {
                out.push(Spanned {
                    tok: Tok::RParen,
                    line: tline,
                    col: tcol,
                });
                advance(1, &mut i, &mut col);
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = BigInt::from_str(&digits)
                    .map_err(|_| ParseError::new(tline, tcol, "invalid integer literal"))?;
                out.push(Spanned {
                    tok: Tok::Int(n),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                    col += 1;
                }
                let name: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    line: tline,
                    col: tcol,
                });
            }
            other => {
                return Err(ParseError::new(
                    tline,
                    tcol,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    table: &'a Arc<ParameterTable>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Plus => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            if t.tok == Tok::Star {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if let Some(t) = self.peek() {
            if t.tok == Tok::Minus {
                self.pos += 1;
                return Ok(self.factor()?.negate());
            }
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(t) = self.peek() {
            if t.tok == Tok::Caret {
                self.pos += 1;
                let exp = match self.next() {
                    Some(Spanned {
                        tok: Tok::Int(n),
                        line,
                        col,
                    }) => u32::try_from(&n)
                        .map_err(|_| ParseError::new(line, col, "exponent too large"))?,
                    other => {
                        let (line, col, what) = match &other {
                            Some(s) => (s.line, s.col, describe(&s.tok)),
                            None => (self.end.0, self.end.1, "end of input".into()),
                        };
                        return Err(ParseError::new(
                            line,
                            col,
                            format!("exponent must be a nonnegative integer literal, found {what}"),
                        ));
                    }
                };
                return Ok(base.pow(exp));
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Int(n), ..
            }) => {
                // optional `/ INT` forms an exact rational literal
                if matches!(self.peek(), Some(t) if t.tok == Tok::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Spanned {
                            tok: Tok::Int(d),
                            line,
                            col,
                        }) => {
                            let value = Rational::from_big(n, d)
                                .map_err(|_| ParseError::new(line, col, "zero denominator"))?;
                            Ok(Polynomial::constant(self.table, value))
                        }
                        other => {
                            let (line, col) = match &other {
                                Some(s) => (s.line, s.col),
                                None => self.end,
                            };
                            Err(ParseError::new(line, col, "expected integer denominator"))
                        }
                    }
                } else {
                    Ok(Polynomial::constant(
                        self.table,
                        Rational::from_big(n, BigInt::from(1)).unwrap(),
                    ))
                }
            }
            Some(Spanned {
                tok: Tok::Ident(name),
                line,
                col,
            }) => Polynomial::parameter(self.table, &name)
                .map_err(|_| ParseError::new(line, col, format!("unknown identifier `{name}`"))),
            Some(Spanned {
                tok: Tok::LParen, ..
            }) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Spanned {
                        tok: Tok::RParen, ..
                    }) => Ok(inner),
                    other => {
                        let (line, col) = match &other {
                            Some(s) => (s.line, s.col),
                            None => self.end,
                        };
                        Err(ParseError::new(line, col, "expected `)`"))
                    }
                }
            }
            Some(s) => Err(ParseError::new(
                s.line,
                s.col,
                format!("unexpected {}", describe(&s.tok)),
            )),
            None => Err(ParseError::new(
                self.end.0,
                self.end.1,
                "unexpected end of input",
            )),
        }
    }
}

fn end_position(text: &str, start_line: usize, start_col: usize) -> (usize, usize) {
    let mut line = start_line;
    let mut col = start_col;
    for c in text.chars() {
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

fn parse_with(
    text: &str,
    table: &Arc<ParameterTable>,
    start_line: usize,
    start_col: usize,
) -> Result<Polynomial, ParseError> {
    let toks = lex(text, start_line, start_col)?;
    let end = end_position(text, start_line, start_col);
    if toks.is_empty() {
        return Err(ParseError::new(start_line, start_col, "empty expression"));
    }
    let mut parser = Parser {
        toks,
        pos: 0,
        table,
        end,
    };
    let poly = parser.expr()?;
    if let Some(t) = parser.peek() {
        return Err(ParseError::new(
            t.line,
            t.col,
            format!("unexpected {}", describe(&t.tok)),
        ));
    }
    Ok(poly)
}

/// Parses a scalar expression over the given parameters into canonical form.
pub fn parse_expression(text: &str, table: &Arc<ParameterTable>) -> Result<Polynomial, ParseError> {
    parse_with(text, table, 1, 1)
}

/// Parses a bracket value: `0` or a sum of terms, each linear in exactly one
/// basis vector, e.g. `2*z2*X + theta1*Z + theta2*W` or `(2*z1 - z4)*W`.
///
/// Returns one coefficient polynomial per basis vector.
pub fn parse_bracket_value(
    text: &str,
    basis: &[String],
    params: &Arc<ParameterTable>,
) -> Result<Vec<Polynomial>, ParseError> {
    parse_bracket_value_at(text, basis, params, 1, 1)
}

/// As [`parse_bracket_value`], with positions offset for embedding in a file.
pub fn parse_bracket_value_at(
    text: &str,
    basis: &[String],
    params: &Arc<ParameterTable>,
    start_line: usize,
    start_col: usize,
) -> Result<Vec<Polynomial>, ParseError> {
    // Parse over an extended table holding parameters then basis names, then
    // demand every term be degree one in the basis part.
    let mut names: Vec<String> = params.names().to_vec();
    names.extend(basis.iter().cloned());
    let ext = ParameterTable::new(names)
        .map_err(|e| ParseError::new(start_line, start_col, format!("bad symbol set: {e}")))?;
    let expanded = parse_with(text, &ext, start_line, start_col)?;

    let n_params = params.len();
    let mut components = vec![Polynomial::zero(params); basis.len()];
    for (mono, coeff) in expanded.terms() {
        let mut basis_idx = None;
        let mut param_part = Vec::new();
        let mut basis_degree = 0u32;
        for (idx, e) in mono.exponents() {
            if idx < n_params {
                param_part.push((idx, e));
            } else {
                basis_degree += e;
                basis_idx = Some(idx - n_params);
                if e > 1 {
                    return Err(ParseError::new(
                        start_line,
                        start_col,
                        format!("basis vector `{}` used nonlinearly", basis[idx - n_params]),
                    ));
                }
            }
        }
        match (basis_idx, basis_degree) {
            (Some(b), 1) => {
                let add = Polynomial::from_terms(
                    params,
                    [(Monomial::from_exponents(param_part), coeff.clone())],
                );
                components[b] = &components[b] + &add;
            }
            (_, d) if d > 1 => {
                return Err(ParseError::new(
                    start_line,
                    start_col,
                    "product of basis vectors is not a bracket value",
                ));
            }
            _ => {
                return Err(ParseError::new(
                    start_line,
                    start_col,
                    "term without a basis vector factor",
                ));
            }
        }
    }
    Ok(components)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Arc<ParameterTable> {
        ParameterTable::new([
            "lambda", "alpha", "beta", "a", "b", "r", "z1", "z2", "z3", "z4", "w1", "w2", "theta1",
            "theta2",
        ])
        .unwrap()
    }

    fn basis() -> Vec<String> {
        ["X", "Y", "Z", "W"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn simple_terms() {
        let t = params();
        let p = parse_expression("-2*z2", &t).unwrap();
        assert_eq!(p.to_string(), "-2*z2");
        let q = parse_expression("(2*z1 - z4)", &t).unwrap();
        assert_eq!(q.to_string(), "2*z1 - z4");
        assert_eq!(
            parse_expression("1/2*theta1", &t).unwrap().to_string(),
            "1/2*theta1"
        );
        assert_eq!(parse_expression("z2^2", &t).unwrap().degree(), 2);
        assert_eq!(parse_expression("0", &t).unwrap().to_string(), "0");
        assert_eq!(
            parse_expression("z1 * (z1 + 1) - z1^2", &t)
                .unwrap()
                .to_string(),
            "z1"
        );
    }

    #[test]
    fn double_star_is_an_error() {
        let t = params();
        let err = parse_expression("2**x", &t).unwrap_err();
        assert_eq!((err.line, err.col), (1, 3));
    }

    #[test]
    fn error_positions() {
        let t = params();
        let err = parse_expression("z1 + ", &t).unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_expression("z1 + nope", &t).unwrap_err();
        assert!(err.message.contains("unknown identifier"));
        assert_eq!((err.line, err.col), (1, 6));
        let err = parse_expression("z1^-2", &t).unwrap_err();
        assert!(err.message.contains("exponent"));
        let err = parse_expression("z1^theta1", &t).unwrap_err();
        assert!(err.message.contains("exponent"));
        let err = parse_expression("1/0", &t).unwrap_err();
        assert!(err.message.contains("zero denominator"));
        assert!(parse_expression("", &t).is_err());
        assert!(parse_expression("(z1", &t).is_err());
        assert!(parse_expression("z1 z2", &t).is_err());
    }

    #[test]
    fn unary_minus() {
        let t = params();
        assert_eq!(parse_expression("-z1^2", &t).unwrap().to_string(), "-z1^2");
        assert_eq!(parse_expression("--z1", &t).unwrap().to_string(), "z1");
        assert_eq!(parse_expression("2 - -3", &t).unwrap().to_string(), "5");
    }

    #[test]
    fn bracket_values() {
        let t = params();
        let b = basis();
        let v = parse_bracket_value("z2*Z + (2*z1 - z4)*W", &b, &t).unwrap();
        assert_eq!(v[0].to_string(), "0");
        assert_eq!(v[1].to_string(), "0");
        assert_eq!(v[2].to_string(), "z2");
        assert_eq!(v[3].to_string(), "2*z1 - z4");

        let zero = parse_bracket_value("0", &b, &t).unwrap();
        assert!(zero.iter().all(|p| p.is_zero()));

        let v = parse_bracket_value("2*z2*X + theta1*Z + theta2*W", &b, &t).unwrap();
        assert_eq!(v[0].to_string(), "2*z2");
        assert_eq!(v[1].to_string(), "0");
        assert_eq!(v[2].to_string(), "theta1");
        assert_eq!(v[3].to_string(), "theta2");

        let v = parse_bracket_value("W", &b, &t).unwrap();
        assert_eq!(v[3].to_string(), "1");
        let v = parse_bracket_value("-W", &b, &t).unwrap();
        assert_eq!(v[3].to_string(), "-1");
    }

    #[test]
    fn bracket_value_errors() {
        let t = params();
        let b = basis();
        assert!(parse_bracket_value("X*Y", &b, &t)
            .unwrap_err()
            .message
            .contains("basis"));
        assert!(parse_bracket_value("X^2", &b, &t)
            .unwrap_err()
            .message
            .contains("nonlinearly"));
        assert!(parse_bracket_value("z2", &b, &t)
            .unwrap_err()
            .message
            .contains("without a basis vector"));
        assert!(parse_bracket_value("z2*Q", &b, &t)
            .unwrap_err()
            .message
            .contains("unknown identifier"));
        assert!(parse_bracket_value("", &b, &t).is_err());
        // cancellation to zero is fine
        let v = parse_bracket_value("z2*Z - z2*Z", &b, &t).unwrap();
        assert!(v.iter().all(|p| p.is_zero()));
    }
}
