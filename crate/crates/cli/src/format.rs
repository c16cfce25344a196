//! Line-oriented input documents.
//!
//! ```text
//! format_version = 1
//! kind = laurent_matrix, n = 2
//! x, 1
//! 0, x^-1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Entries are sums of
//! terms `c`, `c*x^e`, `x^e` with `c` an integer or fraction and `e` a signed
//! integer; `z` is accepted as a synonym for `x`. Rational-function entries
//! are written `(num) / (den)`. Points are rationals or `inf`.

use std::fmt::{self, Write as _};

use birkhoff::{Matrix, QLaurentMatrix, QLaurentPoly, QMatrix, QPoint, QRatFunc, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: dimension mismatch: {message}")]
    DimensionMismatch { line: usize, message: String },
}

impl FormatError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        FormatError::Parse { line, column, message: message.into() }
    }

    fn dims(line: usize, message: impl Into<String>) -> Self {
        FormatError::DimensionMismatch { line, message: message.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    LaurentMatrix,
    RatMatrixList,
    FuchsianSystem,
    ScalarOde,
    MonodromyRep,
    RatfuncMatrix,
}

impl Kind {
    pub const ALL: [Kind; 6] =
        [Kind::LaurentMatrix, Kind::RatMatrixList, Kind::FuchsianSystem, Kind::ScalarOde, Kind::MonodromyRep, Kind::RatfuncMatrix];

    pub fn name(self) -> &'static str {
        match self {
            Kind::LaurentMatrix => "laurent_matrix",
            Kind::RatMatrixList => "rat_matrix_list",
            Kind::FuchsianSystem => "fuchsian_system",
            Kind::ScalarOde => "scalar_ode",
            Kind::MonodromyRep => "monodromy_rep",
            Kind::RatfuncMatrix => "ratfunc_matrix",
        }
    }

    fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A parsed input document.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    LaurentMatrix(QLaurentMatrix),
    RatMatrixList { n: usize, matrices: Vec<QMatrix> },
    /// Marked points with their residues; an `inf` entry overrides the
    /// residue at infinity.
    FuchsianSystem { n: usize, blocks: Vec<(QPoint, QMatrix)> },
    /// `coeffs[i]` multiplies `w^(i)`; the order is `coeffs.len()`.
    ScalarOde(Vec<QRatFunc>),
    MonodromyRep { n: usize, matrices: Vec<QMatrix> },
    RatfuncMatrix(Matrix<QRatFunc>),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::LaurentMatrix(_) => Kind::LaurentMatrix,
            Document::RatMatrixList { .. } => Kind::RatMatrixList,
            Document::FuchsianSystem { .. } => Kind::FuchsianSystem,
            Document::ScalarOde(_) => Kind::ScalarOde,
            Document::MonodromyRep { .. } => Kind::MonodromyRep,
            Document::RatfuncMatrix(_) => Kind::RatfuncMatrix,
        }
    }

    fn size(&self) -> usize {
        match self {
            Document::LaurentMatrix(m) => m.nrows(),
            Document::RatfuncMatrix(m) => m.nrows(),
            Document::ScalarOde(c) => c.len(),
            Document::RatMatrixList { n, .. } | Document::FuchsianSystem { n, .. } | Document::MonodromyRep { n, .. } => *n,
        }
    }
}

/// Canonical text of a document; `parse(emit(d)) == d`.
pub fn emit(doc: &Document) -> String {
    let mut out = String::new();
    writeln!(out, "format_version = {FORMAT_VERSION}").unwrap();
    writeln!(out, "kind = {}, n = {}", doc.kind(), doc.size()).unwrap();
    match doc {
        Document::LaurentMatrix(m) => emit_rows(&mut out, m),
        Document::RatfuncMatrix(m) => emit_rows(&mut out, m),
        Document::RatMatrixList { matrices, .. } | Document::MonodromyRep { matrices, .. } => {
            for m in matrices {
                out.push_str("matrix\n");
                emit_rows(&mut out, m);
            }
        }
        Document::FuchsianSystem { blocks, .. } => {
            for (p, r) in blocks {
                writeln!(out, "at {p}").unwrap();
                emit_rows(&mut out, r);
            }
        }
        Document::ScalarOde(coeffs) => {
            for (i, c) in coeffs.iter().enumerate() {
                writeln!(out, "a{i} = {c}").unwrap();
            }
        }
    }
    out
}

fn emit_rows<T: fmt::Display>(out: &mut String, m: &Matrix<T>) {
    for row in m.rows_iter() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(", "));
        out.push('\n');
    }
}

/// Parses a document of any kind.
pub fn parse(text: &str) -> Result<Document, FormatError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    let mut rest = &lines[..];
    let Some(&(first_no, first)) = rest.first() else {
        return Err(FormatError::at(1, 1, "empty document"));
    };
    if first.trim_start().starts_with("format_version") {
        let mut c = Cursor::new(first_no, first);
        c.keyword("format_version")?;
        c.expect('=')?;
        let v = c.unsigned()?;
        c.end()?;
        if v != FORMAT_VERSION as usize {
            return Err(FormatError::at(first_no, 1, format!("unsupported format_version {v}")));
        }
        rest = &rest[1..];
    }
    let Some(&(header_no, header)) = rest.first() else {
        return Err(FormatError::at(first_no + 1, 1, "missing header `kind = ..., n = ...`"));
    };
    let (kind, n) = parse_header(header_no, header)?;
    let body = &rest[1..];
    let end_line = lines.last().map_or(1, |l| l.0);
    match kind {
        Kind::LaurentMatrix => {
            let rows = take_rows(body, n, n, end_line, |c| c.laurent())?;
            ensure_consumed(&body[n..])?;
            Ok(Document::LaurentMatrix(rows))
        }
        Kind::RatfuncMatrix => {
            let rows = take_rows(body, n, n, end_line, |c| c.ratfunc())?;
            ensure_consumed(&body[n..])?;
            Ok(Document::RatfuncMatrix(rows))
        }
        Kind::RatMatrixList | Kind::MonodromyRep => {
            let mut matrices = Vec::new();
            let mut i = 0;
            while i < body.len() {
                let (no, line) = body[i];
                let mut c = Cursor::new(no, line);
                c.keyword("matrix")?;
                c.end()?;
                matrices.push(take_rows(&body[i + 1..], n, n, end_line, |c| c.rational())?);
                i += n + 1;
            }
            if matrices.is_empty() {
                return Err(FormatError::at(end_line, 1, "expected at least one `matrix` block"));
            }
            Ok(if kind == Kind::MonodromyRep {
                Document::MonodromyRep { n, matrices }
            } else {
                Document::RatMatrixList { n, matrices }
            })
        }
        Kind::FuchsianSystem => {
            let mut blocks: Vec<(QPoint, QMatrix)> = Vec::new();
            let mut i = 0;
            while i < body.len() {
                let (no, line) = body[i];
                let mut c = Cursor::new(no, line);
                c.keyword("at")?;
                let col = c.column();
                let p = c.point()?;
                c.end()?;
                if blocks.iter().any(|(q, _)| *q == p) {
                    return Err(FormatError::at(no, col, format!("point {p} is listed twice")));
                }
                blocks.push((p, take_rows(&body[i + 1..], n, n, end_line, |c| c.rational())?));
                i += n + 1;
            }
            Ok(Document::FuchsianSystem { n, blocks })
        }
        Kind::ScalarOde => {
            let mut coeffs: Vec<Option<QRatFunc>> = vec![None; n];
            for &(no, line) in body {
                let mut c = Cursor::new(no, line);
                c.skip_ws();
                let col = c.column();
                if !c.eat('a') {
                    return Err(FormatError::at(no, col, "expected a coefficient line `aK = ...`"));
                }
                let idx = c.unsigned()?;
                if idx >= n {
                    return Err(FormatError::dims(no, format!("a{idx} in an equation of order {n}")));
                }
                if coeffs[idx].is_some() {
                    return Err(FormatError::at(no, col, format!("a{idx} given twice")));
                }
                c.expect('=')?;
                coeffs[idx] = Some(c.ratfunc()?);
                c.end()?;
            }
            Ok(Document::ScalarOde(coeffs.into_iter().map(|c| c.unwrap_or_else(QRatFunc::zero)).collect()))
        }
    }
}

fn parse_header(no: usize, line: &str) -> Result<(Kind, usize), FormatError> {
    let mut c = Cursor::new(no, line);
    c.keyword("kind")?;
    c.expect('=')?;
    c.skip_ws();
    let col = c.column();
    let name = c.ident();
    let kind = Kind::from_name(name).ok_or_else(|| {
        let known: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
        FormatError::at(no, col, format!("unknown kind `{name}`, expected one of {}", known.join(", ")))
    })?;
    c.expect(',')?;
    c.keyword("n")?;
    c.expect('=')?;
    c.skip_ws();
    let col = c.column();
    let n = c.unsigned()?;
    c.end()?;
    if n == 0 {
        return Err(FormatError::at(no, col, "n must be positive"));
    }
    Ok((kind, n))
}

fn take_rows<T>(
    body: &[(usize, &str)],
    rows: usize,
    cols: usize,
    end_line: usize,
    mut cell: impl FnMut(&mut Cursor) -> Result<T, FormatError>,
) -> Result<Matrix<T>, FormatError> {
    if body.len() < rows {
        return Err(FormatError::dims(end_line, format!("expected {rows} rows, found {}", body.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for &(no, line) in &body[..rows] {
        let mut c = Cursor::new(no, line);
        let mut row = vec![cell(&mut c)?];
        c.skip_ws();
        while c.eat(',') {
            row.push(cell(&mut c)?);
            c.skip_ws();
        }
        c.end()?;
        if row.len() != cols {
            return Err(FormatError::dims(no, format!("expected {cols} entries, found {}", row.len())));
        }
        out.push(row);
    }
    Ok(Matrix::from_rows(out).expect("rows have equal length"))
}

fn ensure_consumed(extra: &[(usize, &str)]) -> Result<(), FormatError> {
    match extra.first() {
        Some(&(no, _)) => Err(FormatError::dims(no, "more rows than n")),
        None => Ok(()),
    }
}

/// Parses a single Laurent polynomial entry such as `x^-1 + 3/2*x^2`.
pub fn parse_laurent(text: &str) -> Result<QLaurentPoly, FormatError> {
    let mut c = Cursor::new(1, text);
    let p = c.laurent()?;
    c.end()?;
    Ok(p)
}

/// Parses `num` or `(num) / (den)`.
pub fn parse_ratfunc(text: &str) -> Result<QRatFunc, FormatError> {
    let mut c = Cursor::new(1, text);
    let f = c.ratfunc()?;
    c.end()?;
    Ok(f)
}

/// Parses a rational point or `inf`.
pub fn parse_point(text: &str) -> Result<QPoint, FormatError> {
    let mut c = Cursor::new(1, text);
    let p = c.point()?;
    c.end()?;
    Ok(p)
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Cursor { line, text, pos: 0 }
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> FormatError {
        FormatError::at(self.line, self.column(), message)
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), FormatError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{ch}`, found {}", self.found())))
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of line".into(),
        }
    }

    fn end(&mut self) -> Result<(), FormatError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn keyword(&mut self, word: &str) -> Result<(), FormatError> {
        self.skip_ws();
        let save = self.pos;
        if self.ident() == word {
            Ok(())
        } else {
            self.pos = save;
            Err(self.error(format!("expected `{word}`")))
        }
    }

    fn digits(&mut self) -> Result<&'a str, FormatError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            Err(self.error(format!("expected a digit, found {}", self.found())))
        } else {
            Ok(&self.text[start..self.pos])
        }
    }

    fn unsigned(&mut self) -> Result<usize, FormatError> {
        self.skip_ws();
        let col = self.column();
        self.digits()?.parse().map_err(|_| FormatError::at(self.line, col, "integer out of range"))
    }

    fn exponent(&mut self) -> Result<i64, FormatError> {
        let col = self.column();
        let negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        self.skip_ws();
        let digits = self.digits()?;
        let value: i64 = digits.parse().map_err(|_| FormatError::at(self.line, col, "exponent out of range"))?;
        Ok(if negative { -value } else { value })
    }

    /// `INT ("/" INT)?`, unsigned.
    fn magnitude(&mut self) -> Result<Rat, FormatError> {
        let num: BigInt = self.digits()?.parse().expect("digit string");
        if !self.eat('/') {
            return Ok(Rat::from_integer(num));
        }
        self.skip_ws();
        let col = self.column();
        let den: BigInt = self.digits()?.parse().expect("digit string");
        if den.is_zero() {
            return Err(FormatError::at(self.line, col, "zero denominator"));
        }
        Ok(Rat::new(num, den))
    }

    fn rational(&mut self) -> Result<Rat, FormatError> {
        self.skip_ws();
        let negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        self.skip_ws();
        let m = self.magnitude()?;
        Ok(if negative { -m } else { m })
    }

    fn point(&mut self) -> Result<QPoint, FormatError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with("inf") {
            self.pos += 3;
            return Ok(QPoint::Infinity);
        }
        Ok(QPoint::Finite(self.rational()?))
    }

    fn variable(&mut self) -> bool {
        self.skip_ws();
        if matches!(self.peek(), Some('x' | 'z')) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// `coeff ("*" x ("^" SINT)?)? | x ("^" SINT)?`, returning `(exponent, coefficient)`.
    fn term(&mut self) -> Result<(i64, Rat), FormatError> {
        self.skip_ws();
        let coeff = if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let c = self.magnitude()?;
            if !self.eat('*') {
                return Ok((0, c));
            }
            if !self.variable() {
                return Err(self.error(format!("expected `x` after `*`, found {}", self.found())));
            }
            c
        } else if self.variable() {
            Rat::one()
        } else {
            return Err(self.error(format!("expected a term, found {}", self.found())));
        };
        let exp = if self.eat('^') { self.exponent()? } else { 1 };
        Ok((exp, coeff))
    }

    fn laurent(&mut self) -> Result<QLaurentPoly, FormatError> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        loop {
            let (e, c) = self.term()?;
            terms.push((e, if negative { -c } else { c }));
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(QLaurentPoly::from_terms(terms))
    }

    fn ratfunc(&mut self) -> Result<QRatFunc, FormatError> {
        if !self.eat('(') {
            return Ok(QRatFunc::from_poly(self.laurent()?));
        }
        let num = self.laurent()?;
        self.expect(')')?;
        if !self.eat('/') {
            return Ok(QRatFunc::from_poly(num));
        }
        self.expect('(')?;
        let col = self.column();
        let den = self.laurent()?;
        self.expect(')')?;
        if den.is_zero() {
            return Err(FormatError::at(self.line, col, "zero denominator"));
        }
        Ok(QRatFunc::new(num, den))
    }
}
