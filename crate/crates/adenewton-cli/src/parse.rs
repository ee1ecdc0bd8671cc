//! Recursive-descent parser for differential polynomials, series literals,
//! and asymptotic differential equations.
//!
//! Grammar:
//!   poly     := term (('+'|'-') term)*
//!   term     := factor ('*' factor)*
//!   factor   := 'Y' quote* ['^' nat]
//!             | 't' ['^' srational]
//!             | 'z'
//!             | rational
//!             | '(' poly ')' ['^' nat]
//!   rational := nat ['/' nat]        (sign comes from the +/- structure)
//!   srational:= ['-'] rational | '(' ['-'] rational ')'

use adenewton_core::diffpoly::{DiffPoly, MultiIndex};
use adenewton_core::dominant::EConstraint;
use adenewton_core::series::{FieldPreset, PresetKind, ResidueElem, Series};
use adenewton_core::valgroup::GroupElement;
use adenewton_core::{parse_rat, Error, Rat};

pub struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    preset: FieldPreset,
    max_order: usize,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str, preset: FieldPreset, max_order: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
            preset,
            max_order,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn nat(&mut self) -> Result<String, Error> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn rational(&mut self) -> Result<Rat, Error> {
        let n = self.nat()?;
        let text = if self.eat('/') {
            format!("{n}/{}", self.nat()?)
        } else {
            n
        };
        parse_rat(&text).map_err(|_| self.err(format!("malformed rational `{text}`")))
    }

    /// A possibly negative rational, optionally parenthesized (exponents).
    fn signed_rational(&mut self) -> Result<Rat, Error> {
        self.skip_ws();
        if self.eat('(') {
            let neg = self.eat('-');
            let r = self.rational()?;
            self.expect(')')?;
            return Ok(if neg { -r } else { r });
        }
        let neg = self.eat('-');
        let r = self.rational()?;
        Ok(if neg { -r } else { r })
    }

    fn nat_usize(&mut self) -> Result<u32, Error> {
        let n = self.nat()?;
        n.parse().map_err(|_| self.err("exponent too large"))
    }

    pub fn poly(&mut self) -> Result<DiffPoly, Error> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<DiffPoly, Error> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DiffPoly, Error> {
        self.skip_ws();
        match self.peek() {
            Some('Y') => {
                self.bump();
                let mut order = 0usize;
                while self.peek() == Some('\'') {
                    self.bump();
                    order += 1;
                }
                if order > self.max_order {
                    return Err(self.err(format!(
                        "derivative order {order} exceeds the configured bound {}",
                        self.max_order
                    )));
                }
                let e = if self.eat('^') { self.nat_usize()? } else { 1 };
                let mut idx = vec![0u32; order + 1];
                idx[order] = e;
                Ok(DiffPoly::from_terms(
                    self.preset,
                    [(MultiIndex::new(idx), Series::one(self.preset))],
                ))
            }
            Some('t') => {
                self.bump();
                let q = if self.eat('^') {
                    self.signed_rational()?
                } else {
                    Rat::from_integer(1.into())
                };
                // exponent (q, 0, ..., 0) in the preset's group dimension
                let mut coords = vec![q];
                coords.resize(self.preset.dim, Rat::from_integer(0.into()));
                Ok(DiffPoly::constant(Series::monomial(
                    self.preset,
                    ResidueElem::one(self.preset.kind),
                    GroupElement::new(coords),
                )))
            }
            Some('z') => {
                self.bump();
                if self.preset.kind != PresetKind::Monotone {
                    return Err(self.err("`z` lives in the monotone preset's residue field"));
                }
                let e = if self.eat('^') { self.nat_usize()? } else { 1 };
                Ok(DiffPoly::constant(Series::constant(
                    self.preset,
                    ResidueElem::Fz(adenewton_core::ratfunc::RatFunc::var().pow(e)),
                )))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(DiffPoly::constant(Series::constant(
                    self.preset,
                    ResidueElem::from_rat(self.preset.kind, r),
                )))
            }
            Some('(') => {
                self.bump();
                let inner = self.poly()?;
                self.expect(')')?;
                if self.eat('^') {
                    let e = self.nat_usize()?;
                    let mut acc = DiffPoly::constant(Series::one(self.preset));
                    for _ in 0..e {
                        acc = acc.mul(&inner)?;
                    }
                    Ok(acc)
                } else {
                    Ok(inner)
                }
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }
}

/// Parses a differential polynomial.
pub fn parse_poly(src: &str, preset: FieldPreset, max_order: usize) -> Result<DiffPoly, Error> {
    let mut p = Parser::new(src, preset, max_order);
    let poly = p.poly()?;
    if !p.at_end() {
        return Err(p.err("trailing input after polynomial"));
    }
    Ok(poly)
}

/// Parses a Y-free polynomial as a series literal.
pub fn parse_series(src: &str, preset: FieldPreset, max_order: usize) -> Result<Series, Error> {
    let poly = parse_poly(src, preset, max_order)?;
    let mut constant = Series::zero(preset);
    for (idx, c) in poly.terms() {
        if !idx.is_empty() {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "expected a series (no Y allowed here)".into(),
            });
        }
        constant = constant.add(c)?;
    }
    Ok(constant)
}

/// Parses the asymptotic constraint: `Y prec <bound>`, `Y preceq <bound>`
/// (unicode ≺/≼ accepted), or `Y in K*`.
pub fn parse_constraint(
    src: &str,
    preset: FieldPreset,
    max_order: usize,
) -> Result<EConstraint, Error> {
    let s = src.trim();
    let bad = |msg: &str| Error::Parse {
        line: 1,
        col: 1,
        msg: msg.into(),
    };
    let rest = s
        .strip_prefix('Y')
        .ok_or_else(|| bad("constraint must start with `Y`"))?
        .trim_start();
    if let Some(r) = rest.strip_prefix("in") {
        let r = r.trim();
        if r == "K*" || r == "K^*" {
            return Ok(EConstraint::All);
        }
        return Err(bad("expected `K*` after `in`"));
    }
    let (strict, bound_src) = if let Some(r) = rest.strip_prefix("preceq") {
        (false, r)
    } else if let Some(r) = rest.strip_prefix("prec") {
        (true, r)
    } else if let Some(r) = rest.strip_prefix('≼') {
        (false, r)
    } else if let Some(r) = rest.strip_prefix('≺') {
        (true, r)
    } else {
        return Err(bad("expected `prec`, `preceq`, or `in K*`"));
    };
    let bound = parse_series(bound_src, preset, max_order)?;
    let v = bound.val().map_err(|_| bad("constraint bound must be nonzero"))?;
    Ok(if strict {
        EConstraint::ValGT(v)
    } else {
        EConstraint::ValGE(v)
    })
}

/// Parses an asymptotic differential equation:
/// `[P =] <poly> [= 0] [;] where <constraint>`.
pub fn parse_ade(
    src: &str,
    preset: FieldPreset,
    max_order: usize,
) -> Result<(DiffPoly, EConstraint), Error> {
    let (lhs, rhs) = match src.split_once("where") {
        Some((l, r)) => (l, Some(r)),
        None => (src, None),
    };
    let mut lhs = lhs.trim();
    if let Some(r) = lhs.strip_prefix("P =") {
        lhs = r.trim();
    }
    if let Some(r) = lhs.strip_suffix(';') {
        lhs = r.trim();
    }
    if let Some(r) = lhs.strip_suffix("= 0") {
        lhs = r.trim();
    } else if let Some(r) = lhs.strip_suffix("=0") {
        lhs = r.trim();
    }
    let poly = parse_poly(lhs, preset, max_order)?;
    let constraint = match rhs {
        Some(r) => parse_constraint(r, preset, max_order)?,
        None => EConstraint::All,
    };
    Ok((poly, constraint))
}

/// Parses a semicolon-separated chain of series literals.
pub fn parse_chain(
    src: &str,
    preset: FieldPreset,
    max_order: usize,
) -> Result<Vec<Series>, Error> {
    src.split(';')
        .map(|part| parse_series(part, preset, max_order))
        .collect()
}

/// Group element from a "p/q" literal (rank 1).
pub fn parse_exponent(src: &str) -> Result<GroupElement, Error> {
    Ok(GroupElement::rank1(adenewton_core::parse_rat(src)?))
}
