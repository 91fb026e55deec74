//! Text form of polynomials.
//!
//! ```text
//! poly     ::= [sign] term { sign term }
//! term     ::= rational | [rational "*"] factor { "*" factor }
//! factor   ::= "x" index [ "^" exponent ]
//! rational ::= integer [ "/" positive-integer ]
//! ```
//!
//! Whitespace is insignificant. Exponents are positive integers; a leading
//! `-` on an exponent is accepted only in Laurent mode. Rendering lists terms
//! in descending graded-lexicographic order with `x1 > x2 > x3`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{format_rational, ExponentVector, PolyError, Polynomial, Result};

/// Parses an ordinary polynomial in `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Polynomial> {
    Parser::new(text, nvars, false).parse()
}

/// Parses a Laurent polynomial: exponents may be negative (`x3^-1`).
pub fn parse_laurent(text: &str, nvars: usize) -> Result<Polynomial> {
    Parser::new(text, nvars, true).parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    laurent: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize, laurent: bool) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            nvars,
            laurent,
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        if self.peek().is_none() {
            return self.error("empty input");
        }
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (e, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((e, c));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(other) => {
                    return self.error(format!("unexpected character '{}'", other as char))
                }
            }
        }
        if self.laurent {
            Ok(Polynomial::from_laurent_terms(self.nvars, terms)?.into_laurent())
        } else {
            Polynomial::from_terms(self.nvars, terms)
        }
    }

    fn term(&mut self) -> Result<(ExponentVector, BigRational)> {
        let mut exps = vec![0i32; self.nvars];
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = self.rational()?;
                if !self.eat(b'*') {
                    return Ok((ExponentVector::from(exps), c));
                }
                c
            }
            Some(b'x') => BigRational::one(),
            Some(other) => {
                return self.error(format!("expected a term, found '{}'", other as char))
            }
            None => return self.error("expected a term, found end of input"),
        };
        loop {
            let start = self.pos;
            let (index, exponent) = self.factor()?;
            exps[index] = exps[index]
                .checked_add(exponent)
                .ok_or(PolyError::ExponentOverflow { pos: start })?;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((ExponentVector::from(exps), coeff))
    }

    fn factor(&mut self) -> Result<(usize, i32)> {
        if !self.eat(b'x') {
            return self.error("expected a variable 'x<index>'");
        }
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.error("expected a variable index after 'x'");
        }
        let index: usize = digits.parse().unwrap_or(usize::MAX);
        if index == 0 || index > self.nvars {
            return Err(PolyError::VariableOutOfRange {
                index,
                nvars: self.nvars,
                pos: start,
            });
        }
        let mut exponent = 1i32;
        if self.eat(b'^') {
            let negative = self.eat(b'-');
            if negative && !self.laurent {
                return self.error("negative exponent outside Laurent mode");
            }
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.error("expected an exponent after '^'");
            }
            let value: i32 = digits
                .parse()
                .map_err(|_| PolyError::ExponentOverflow { pos: at })?;
            if value == 0 {
                self.pos = at;
                return self.error("exponent must be positive");
            }
            exponent = if negative { -value } else { value };
        }
        Ok((index - 1, exponent))
    }

    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let num: BigInt = self.digits().parse().expect("caller checked a digit");
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.error("expected a denominator after '/'");
            }
            let den: BigInt = digits.parse().expect("digits");
            if den.is_zero() {
                self.pos = at;
                return self.error("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }
}

pub(super) fn render(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in f.terms().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        let factors = render_monomial(e);
        if factors.is_empty() {
            out.push_str(&format_rational(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&factors);
        } else {
            let _ = write!(out, "{}*{}", format_rational(&magnitude), factors);
        }
    }
    out
}

fn render_monomial(e: &ExponentVector) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.entries().iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, a)),
        }
    }
    parts.join("*")
}
