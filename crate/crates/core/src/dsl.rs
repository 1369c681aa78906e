//! Line-oriented structure-equation files.
//!
//! ```text
//! # Iwasawa
//! algebra iwasawa dim 3
//! d a3 = (-1)*a1^a2
//! ```
//!
//! A term is `(<scalar>) * <factor> ^ <factor>` with factors `a<j>` or `~a<j>`.
//! Omitted `d`-lines mean the generator is closed.

use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraSpec;
use crate::form::{BasisForm, Form, MAX_DIM};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    MissingHeader,
    IndexOutOfRange {
        index: usize,
        n: usize,
    },
    DuplicateLine {
        generator: usize,
    },
    /// A `~a^~a` term: not allowed in `dα_i`.
    BidegreeZeroTwo,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::MissingHeader => write!(f, "missing `algebra <name> dim <n>` header"),
            ParseErrorKind::IndexOutOfRange { index, n } => write!(f, "index {index} out of range 1..={n}"),
            ParseErrorKind::DuplicateLine { generator } => write!(f, "duplicate d-line for a{generator}"),
            ParseErrorKind::BidegreeZeroTwo => write!(f, "term of bidegree (0,2) is not allowed"),
        }
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line }
    }

    fn syntax_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: pos + 1, kind: ParseErrorKind::Syntax(msg.into()) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.column(), kind }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.syntax(format!("expected `{c}`, found `{got}`"))),
            None => Err(self.syntax(format!("expected `{c}`, found end of line"))),
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        if text.is_empty() {
            self.pos = start;
            return Err(self.syntax("expected a number"));
        }
        text.parse().map_err(|_| self.syntax_at(start, "number too large"))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// `a<j>` or `~a<j>`; returns (index, conjugated).
    fn factor(&mut self, n: usize) -> Result<(usize, bool), ParseError> {
        let bar = if self.peek() == Some('~') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.expect('a')?;
        let col = self.column();
        if self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            return Err(self.syntax("expected generator index directly after `a`"));
        }
        let idx = self.number()?;
        if idx == 0 || idx > n {
            return Err(ParseError {
                line: self.line,
                column: col,
                kind: ParseErrorKind::IndexOutOfRange { index: idx, n },
            });
        }
        Ok((idx, bar))
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

/// Parses a structure file into an [`AlgebraSpec`].
pub fn parse_structure_file(text: &str) -> Result<AlgebraSpec, ParseError> {
    let mut header: Option<(String, usize)> = None;
    let mut gens: Vec<Option<Form>> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(body, line_no);
        let Some((_, n)) = header.as_ref().map(|(a, b)| (a.clone(), *b)) else {
            header = Some(parse_header(&mut cur)?);
            gens = vec![None; header.as_ref().unwrap().1];
            continue;
        };
        let (generator, form) = parse_d_line(&mut cur, n)?;
        if gens[generator - 1].is_some() {
            return Err(ParseError { line: line_no, column: 1, kind: ParseErrorKind::DuplicateLine { generator } });
        }
        gens[generator - 1] = Some(form);
    }

    let (name, n) = header.ok_or(ParseError { line: 1, column: 1, kind: ParseErrorKind::MissingHeader })?;
    let forms = gens.into_iter().map(|g| g.unwrap_or_else(|| Form::zero(n))).collect();
    Ok(AlgebraSpec::new(name, n, forms).expect("parser only produces well-shaped generators"))
}

fn parse_header(cur: &mut Cursor) -> Result<(String, usize), ParseError> {
    let kw_col = {
        cur.skip_ws();
        cur.column()
    };
    if cur.word() != "algebra" {
        return Err(ParseError { line: cur.line, column: kw_col, kind: ParseErrorKind::MissingHeader });
    }
    let name = cur.word();
    if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
        return Err(cur.syntax("expected algebra name"));
    }
    if cur.word() != "dim" {
        return Err(cur.syntax("expected `dim`"));
    }
    cur.skip_ws();
    let col = cur.column();
    let n = cur.number()?;
    if n == 0 || n > MAX_DIM {
        return Err(ParseError {
            line: cur.line,
            column: col,
            kind: ParseErrorKind::Syntax(format!("dimension must be in 1..={MAX_DIM}")),
        });
    }
    if !cur.at_end() {
        return Err(cur.syntax("unexpected text after header"));
    }
    Ok((name, n))
}

fn parse_d_line(cur: &mut Cursor, n: usize) -> Result<(usize, Form), ParseError> {
    cur.expect('d')?;
    if !cur.chars.get(cur.pos).is_some_and(|c| c.is_whitespace()) {
        return Err(cur.syntax("expected `d a<i> = …`"));
    }
    let (generator, bar) = cur.factor(n)?;
    if bar {
        return Err(cur.syntax("left-hand side must be a holomorphic generator `a<i>`"));
    }
    cur.expect('=')?;

    let mut form = Form::zero(n);
    if cur.peek() == Some('0') {
        cur.pos += 1;
        if !cur.at_end() {
            return Err(cur.syntax("unexpected text after `0`"));
        }
        return Ok((generator, form));
    }
    loop {
        let (basis, coeff) = parse_term(cur, n)?;
        if let Some(b) = basis {
            form.add_term(b, coeff);
        }
        match cur.peek() {
            None => break,
            Some('+') => cur.pos += 1,
            Some(c) => return Err(cur.syntax(format!("expected `+` or end of line, found `{c}`"))),
        }
    }
    Ok((generator, form))
}

fn parse_term(cur: &mut Cursor, n: usize) -> Result<(Option<BasisForm>, GaussianRational), ParseError> {
    cur.expect('(')?;
    let start = cur.pos;
    let close = cur.chars[start..].iter().position(|&c| c == ')').map(|k| start + k);
    let Some(close) = close else {
        return Err(cur.syntax("unclosed `(`"));
    };
    let text: String = cur.chars[start..close].iter().collect();
    let mut coeff: GaussianRational = text.parse().map_err(|msg: String| cur.syntax_at(start, msg))?;
    cur.pos = close + 1;
    cur.expect('*')?;
    let term_col = {
        cur.skip_ws();
        cur.column()
    };
    let (i, bar_i) = cur.factor(n)?;
    cur.expect('^')?;
    let (j, bar_j) = cur.factor(n)?;

    let basis = match (bar_i, bar_j) {
        (false, false) => {
            if i == j {
                None
            } else {
                if i > j {
                    coeff = -coeff;
                }
                BasisForm::new(&sorted(i, j), &[])
            }
        }
        (false, true) => BasisForm::new(&[i], &[j]),
        (true, false) => {
            coeff = -coeff;
            BasisForm::new(&[j], &[i])
        }
        (true, true) => {
            return Err(ParseError { line: cur.line, column: term_col, kind: ParseErrorKind::BidegreeZeroTwo });
        }
    };
    Ok((basis, coeff))
}

fn sorted(i: usize, j: usize) -> [usize; 2] {
    if i < j {
        [i, j]
    } else {
        [j, i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_header_only() {
        let spec = parse_structure_file("algebra torus1 dim 1").unwrap();
        assert_eq!(spec.n(), 1);
        assert!(spec.is_abelian());
        assert_eq!(spec.name(), "torus1");
    }

    #[test]
    fn iwasawa() {
        let spec = parse_structure_file("algebra iwasawa dim 3\nd a3 = (-1)*a1^a2\n").unwrap();
        assert!(spec.d_generator(1).is_zero() && spec.d_generator(2).is_zero());
        let expected = Form::monomial(3, BasisForm::new(&[1, 2], &[]).unwrap(), GaussianRational::from_int(-1, 0));
        assert_eq!(spec.d_generator(3), &expected);
    }

    #[test]
    fn index_out_of_range() {
        let err = parse_structure_file("algebra x dim 2\nd a2 = (1)*a1^~a3").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::IndexOutOfRange { index: 3, n: 2 });
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 17);
    }

    #[test]
    fn duplicate_line() {
        let err = parse_structure_file("algebra x dim 2\nd a2 = (1)*a1^~a1\nd a2 = (1)*a1^~a1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateLine { generator: 2 });
        assert_eq!(err.line, 3);
    }

    #[test]
    fn zero_two_term_rejected() {
        let err = parse_structure_file("algebra x dim 3\nd a3 = (1)*~a1^~a2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BidegreeZeroTwo);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_structure_file("algebra x dim 2\nd a2 = 1*a1^a2").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        assert_eq!((err.line, err.column), (2, 8));
        let err = parse_structure_file("# nothing\n\nd a1 = (1)*a1^a2").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingHeader);
        assert_eq!(err.line, 3);
        assert!(parse_structure_file("").is_err());
        assert!(parse_structure_file("algebra x dim 0").is_err());
        assert!(parse_structure_file("algebra x dim 2\nd a2 = (1 + )*a1^a2").is_err());
    }

    #[test]
    fn factor_order_and_term_order_normalize() {
        let a = parse_structure_file("algebra k dim 3\nd a3 = (2 - i)*a1^a2 + (1/2)*a2^~a1").unwrap();
        let b = parse_structure_file("algebra k dim 3\nd a3 = (-1/2)*~a1^a2 + (-2 + 1 i)*a2^a1 # swapped").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn repeated_terms_accumulate() {
        let a = parse_structure_file("algebra k dim 2\nd a2 = (1)*a1^~a1 + (1)*a1^~a1 + (3)*a1^a1").unwrap();
        let expected = Form::monomial(2, BasisForm::new(&[1], &[1]).unwrap(), GaussianRational::from_int(2, 0));
        assert_eq!(a.d_generator(2), &expected);
    }

    #[test]
    fn pretty_print_round_trip() {
        let text = "algebra q dim 3\nd a2 = (1/3 + 2 i)*a1^~a1\nd a3 = (i)*a1^a2 + (-1)*a2^~a1 + (5)*a1^~a2\n";
        let spec = parse_structure_file(text).unwrap();
        assert_eq!(parse_structure_file(&spec.to_dsl()).unwrap(), spec);
    }
}
