//! The problem file format.
//!
//! ```text
//! # comments start with '#'
//! vars x1 x2 y1
//! weight 1 0
//! weight 0 1
//! gen y1^2 - x1*x2
//! opt max_terms 4
//! ```
//!
//! The first `N` names of `vars` are the parameters `x`, the rest are the
//! unknowns `y`. `N` is the width of the `weight` rows; without any
//! `weight` line it is the number of leading names starting with `x`, and
//! the weight is the identity. Exponents of `x` may be negative or
//! rational (`x1^(-3/2)`); exponents of `y` must be nonnegative integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::expansion::ExpandOptions;
use crate::numeric::{parse_rat, Rat, WeightMatrix};
use crate::poly::{LPoly, Term, VarNames};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub names: VarNames,
    pub weight: WeightMatrix,
    pub gens: Vec<LPoly>,
    /// Generator text as written in the file.
    pub gen_sources: Vec<String>,
    pub options: ExpandOptions,
}

impl ProblemSpec {
    pub fn nx(&self) -> usize {
        self.names.x.len()
    }

    pub fn ny(&self) -> usize {
        self.names.y.len()
    }
}

struct Line<'a> {
    no: usize,
    /// Column of `rest` within the original line, 1-based.
    col: usize,
    keyword: &'a str,
    rest: &'a str,
}

fn split_lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let lead = content.len() - trimmed.len();
        let kw_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let (keyword, rest) = trimmed.split_at(kw_len);
        let rest_trim = rest.trim_start();
        out.push(Line {
            no: i + 1,
            col: lead + kw_len + (rest.len() - rest_trim.len()) + 1,
            keyword,
            rest: rest_trim.trim_end(),
        });
    }
    out
}

/// Words of `rest` with their 1-based columns.
fn words<'a>(line: &Line<'a>) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for w in line.rest.split_whitespace() {
        let pos = line.rest[offset..].find(w).unwrap() + offset;
        out.push((line.col + pos, w));
        offset = pos + w.len();
    }
    out
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec, ParseError> {
    let lines = split_lines(text);
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut weight_rows: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut gen_lines: Vec<&Line> = Vec::new();
    let mut options = ExpandOptions::default();

    for line in &lines {
        match line.keyword {
            "vars" => {
                if vars.is_some() {
                    return Err(ParseError::new(line.no, 1, "duplicate 'vars' line"));
                }
                let names: Vec<String> = words(line).iter().map(|(_, w)| w.to_string()).collect();
                for (col, w) in words(line) {
                    let ok = w.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                        && w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok {
                        return Err(ParseError::new(line.no, col, format!("invalid variable name '{w}'")));
                    }
                    if names.iter().filter(|n| *n == w).count() > 1 {
                        return Err(ParseError::new(line.no, col, format!("duplicate variable '{w}'")));
                    }
                }
                vars = Some((line.no, names));
            }
            "weight" => {
                let mut row = Vec::new();
                for (col, w) in words(line) {
                    let v = parse_rat(w)
                        .ok_or_else(|| ParseError::new(line.no, col, format!("invalid rational '{w}'")))?;
                    row.push(v);
                }
                weight_rows.push((line.no, row));
            }
            "gen" => gen_lines.push(line),
            "opt" => parse_option(line, &mut options)?,
            other => {
                return Err(ParseError::new(line.no, 1, format!("unknown keyword '{other}'")));
            }
        }
    }

    let Some((vars_line, all_names)) = vars else {
        return Err(ParseError::new(1, 1, "missing 'vars' line"));
    };
    let nx = match weight_rows.first() {
        Some((_, row)) => row.len(),
        None => all_names.iter().take_while(|n| n.starts_with('x')).count(),
    };
    if nx > all_names.len() {
        let line = weight_rows.first().map_or(vars_line, |(l, _)| *l);
        return Err(ParseError::new(line, 1, "weight rows are wider than the variable list"));
    }
    let weight = if weight_rows.is_empty() {
        WeightMatrix::identity(nx)
    } else {
        if let Some((l, row)) = weight_rows.iter().find(|(_, r)| r.len() != nx) {
            return Err(ParseError::new(
                *l,
                1,
                format!("weight row has {} entries, expected {nx}", row.len()),
            ));
        }
        let rows = weight_rows.iter().map(|(_, r)| r.clone()).collect();
        WeightMatrix::new(rows).map_err(|e| ParseError::new(weight_rows[0].0, 1, e.to_string()))?
    };
    let names = VarNames {
        x: all_names[..nx].to_vec(),
        y: all_names[nx..].to_vec(),
    };
    if names.y.is_empty() {
        return Err(ParseError::new(vars_line, 1, "no unknowns: every variable is a parameter"));
    }

    let mut gens = Vec::new();
    let mut gen_sources = Vec::new();
    for line in gen_lines {
        let p = ExprParser::new(line, &names).parse()?;
        if p.is_zero() {
            return Err(ParseError::new(line.no, line.col, "generator is zero"));
        }
        gens.push(p);
        gen_sources.push(line.rest.to_string());
    }
    if gens.is_empty() {
        return Err(ParseError::new(lines.last().map_or(1, |l| l.no), 1, "no 'gen' lines"));
    }
    Ok(ProblemSpec {
        names,
        weight,
        gens,
        gen_sources,
        options,
    })
}

fn parse_option(line: &Line, options: &mut ExpandOptions) -> Result<(), ParseError> {
    let ws = words(line);
    let [(kcol, key), (vcol, value)] = ws[..] else {
        return Err(ParseError::new(line.no, line.col, "expected 'opt <name> <value>'"));
    };
    let bad = |what: &str| ParseError::new(line.no, vcol, format!("invalid {what} '{value}'"));
    match key {
        "max_terms" => options.max_terms = value.parse().map_err(|_| bad("integer"))?,
        "max_branches" => options.max_branches = value.parse().map_err(|_| bad("integer"))?,
        "positive_only" => options.positive_only = value.parse().map_err(|_| bad("boolean"))?,
        _ => return Err(ParseError::new(line.no, kcol, format!("unknown option '{key}'"))),
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct ExprParser<'a> {
    line: usize,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
    names: &'a VarNames,
}

impl<'a> ExprParser<'a> {
    fn new(line: &Line, names: &'a VarNames) -> Self {
        let mut toks = Vec::new();
        let chars: Vec<char> = line.rest.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = line.col + i;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((col, Tok::Num(s.parse().unwrap())));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((col, Tok::Ident(chars[start..i].iter().collect())));
            } else {
                toks.push((col, Tok::Sym(c)));
                i += 1;
            }
        }
        ExprParser {
            line: line.no,
            toks,
            pos: 0,
            end_col: line.col + chars.len(),
            names,
        }
    }

    fn err(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, col, msg)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.0)
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Sym(s))) if *s == c)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(self.col(), format!("expected '{c}'")))
        }
    }

    fn nx(&self) -> usize {
        self.names.x.len()
    }

    fn ny(&self) -> usize {
        self.names.y.len()
    }

    fn parse(mut self) -> Result<LPoly, ParseError> {
        let p = self.expr()?;
        if self.pos < self.toks.len() {
            return Err(self.err(self.col(), "unexpected input"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<LPoly, ParseError> {
        let mut acc = self.product()?;
        loop {
            if self.peek_sym('+') {
                self.pos += 1;
                acc = &acc + &self.product()?;
            } else if self.peek_sym('-') {
                self.pos += 1;
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<LPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_sym('*') {
                self.pos += 1;
                acc = &acc * &self.unary()?;
            } else if self.peek_sym('/') {
                self.pos += 1;
                let col = self.col();
                let d = self.unary()?;
                let inv = self.invert_monomial(&d, col)?;
                acc = &acc * &inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LPoly, ParseError> {
        if self.peek_sym('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek_sym('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LPoly, ParseError> {
        let base_col = self.col();
        let base = self.atom()?;
        if !self.peek_sym('^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp_col = self.col();
        let e = self.exponent()?;
        if e.is_integer() && !e.is_negative() {
            let k: u32 = e
                .to_integer()
                .try_into()
                .map_err(|_| self.err(exp_col, "exponent too large"))?;
            return Ok(base.pow(k));
        }
        self.monomial_power(&base, &e, base_col)
    }

    /// An integer, `-integer`, or a parenthesized rational `(-p/q)`.
    fn exponent(&mut self) -> Result<Rat, ParseError> {
        let col = self.col();
        if self.peek_sym('(') {
            self.pos += 1;
            let neg = self.peek_sym('-');
            if neg {
                self.pos += 1;
            }
            let num = self.integer()?;
            let den = if self.peek_sym('/') {
                self.pos += 1;
                self.integer()?
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(self.err(col, "zero denominator in exponent"));
            }
            self.expect_sym(')')?;
            let r = Rat::new(num, den);
            return Ok(if neg { -r } else { r });
        }
        let neg = self.peek_sym('-');
        if neg {
            self.pos += 1;
        }
        let n = Rat::from_integer(self.integer()?);
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Num(n))) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err(self.col(), "expected an integer")),
        }
    }

    fn atom(&mut self) -> Result<LPoly, ParseError> {
        let (nx, ny) = (self.nx(), self.ny());
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                Ok(LPoly::constant(Rat::from_integer(n), nx, ny))
            }
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                if let Some(i) = self.names.x.iter().position(|n| *n == name) {
                    Ok(LPoly::x_var(i, nx, ny))
                } else if let Some(i) = self.names.y.iter().position(|n| *n == name) {
                    Ok(LPoly::y_var(i, nx, ny))
                } else {
                    Err(self.err(col, format!("unknown variable '{name}'")))
                }
            }
            Some((_, Tok::Sym('('))) => {
                self.pos += 1;
                let p = self.expr()?;
                self.expect_sym(')')?;
                Ok(p)
            }
            Some((_, Tok::Sym(c))) => Err(self.err(col, format!("unexpected '{c}'"))),
            None => Err(self.err(col, "unexpected end of expression")),
        }
    }

    /// `(c x^α y^β)^e` for a single term; `y` degrees must stay integral.
    fn monomial_power(&self, base: &LPoly, e: &Rat, col: usize) -> Result<LPoly, ParseError> {
        let Some(t) = single_term(base) else {
            return Err(self.err(col, "only a single term can be raised to a negative or fractional power"));
        };
        let coeff = if t.coeff.is_one() {
            Rat::one()
        } else if e.is_integer() {
            let k: i32 = e
                .to_integer()
                .try_into()
                .map_err(|_| self.err(col, "exponent too large"))?;
            num_traits::pow::Pow::pow(&t.coeff, k)
        } else {
            return Err(self.err(col, "fractional power of a coefficient other than 1"));
        };
        let mut ydeg = Vec::with_capacity(t.ydeg.len());
        for &b in &t.ydeg {
            let v = Rat::from_integer(b.into()) * e;
            if !v.is_integer() || v.is_negative() {
                return Err(self.err(col, "unknowns must keep nonnegative integer exponents"));
            }
            ydeg.push(v.to_integer().try_into().map_err(|_| self.err(col, "exponent too large"))?);
        }
        let xexp = t.xexp.iter().map(|a| a * e).collect();
        Ok(LPoly::from_terms(self.nx(), self.ny(), [Term { coeff, xexp, ydeg }]))
    }

    fn invert_monomial(&self, d: &LPoly, col: usize) -> Result<LPoly, ParseError> {
        match single_term(d) {
            Some(t) if t.ydeg.iter().all(|&b| b == 0) => {
                let xexp = t.xexp.iter().map(|a| -a).collect();
                let coeff = Rat::one() / t.coeff;
                Ok(LPoly::from_terms(self.nx(), self.ny(), [Term { coeff, xexp, ydeg: t.ydeg }]))
            }
            _ => Err(self.err(col, "can only divide by a nonzero monomial in the parameters")),
        }
    }
}

fn single_term(p: &LPoly) -> Option<Term> {
    if p.is_monomial() {
        p.to_terms().pop()
    } else {
        None
    }
}
