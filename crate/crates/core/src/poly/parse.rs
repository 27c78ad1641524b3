//! Text form of polynomials, e.g. `(1/2+3i)*z1^2*z3 - z2^3`.
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff ('*' varpow)* | varpow+
//! coeff  := rational | '(' rational ('+'|'-') rational 'i' ')'
//! varpow := ('z'|'w') index ('^' exponent)?
//! ```
//! A leading sign is accepted, and `w` variables stand for the conjugated block.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, GQ};

/// Parses a polynomial in `z1..zn` (and `w1..wn` when `two_blocks`).
pub fn parse_polynomial(text: &str, n: usize, two_blocks: bool) -> Result<Polynomial> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, line: 1, col: 1, n, two_blocks };
    p.poly()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    n: usize,
    two_blocks: bool,
}

impl Parser {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.col, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if !c.is_whitespace() {
                break;
            }
            self.bump();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.err(format!("expected `{want}`, found end of input"))),
        }
    }

    fn nvars(&self) -> usize {
        if self.two_blocks {
            2 * self.n
        } else {
            self.n
        }
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let nw = if self.two_blocks { self.n } else { 0 };
        let mut out = Polynomial::zero(self.n, nw);
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                self.bump();
                negate = true;
            }
            Some('+') => {
                self.bump();
            }
            None => return Err(self.err("empty polynomial")),
            _ => {}
        }
        loop {
            let (exps, mut c) = self.term()?;
            if negate {
                c = -c;
            }
            out.add_term(Monomial::new(exps), &c);
            match self.peek() {
                None => break,
                Some('+') => {
                    self.bump();
                    negate = false;
                }
                Some('-') => {
                    self.bump();
                    negate = true;
                }
                Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Vec<u32>, GQ)> {
        let mut exps = vec![0u32; self.nvars()];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => {
                let c = self.coeff()?;
                if self.peek() == Some('*') {
                    self.bump();
                    self.varpow(&mut exps)?;
                }
                c
            }
            Some('z' | 'w') => {
                self.varpow(&mut exps)?;
                GQ::one()
            }
            Some(c) => return Err(self.err(format!("expected a term, found `{c}`"))),
            None => return Err(self.err("expected a term, found end of input")),
        };
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    self.varpow(&mut exps)?;
                }
                Some('z' | 'w') => self.varpow(&mut exps)?,
                _ => break,
            }
        }
        Ok((exps, coeff))
    }

    fn coeff(&mut self) -> Result<GQ> {
        if self.peek() == Some('(') {
            self.bump();
            let neg_re = if self.peek() == Some('-') {
                self.bump();
                true
            } else {
                false
            };
            let mut re = self.rational()?;
            if neg_re {
                re = -re;
            }
            let neg_im = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                _ => return Err(self.err("expected `+` or `-` in complex coefficient")),
            };
            self.bump();
            // `(a+i)` is shorthand for `(a+1i)`.
            let mut im = if self.peek() == Some('i') { BigRational::one() } else { self.rational()? };
            if neg_im {
                im = -im;
            }
            self.expect('i')?;
            self.expect(')')?;
            Ok(GQ::new(re, im))
        } else {
            Ok(GQ::from_real(self.rational()?))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        if self.peek() == Some('/') {
            self.bump();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let v = self.integer()?;
        u32::try_from(v).map_err(|_| self.err(format!("{what} too large")))
    }

    fn varpow(&mut self, exps: &mut [u32]) -> Result<()> {
        let block = match self.peek() {
            Some(c @ ('z' | 'w')) => {
                self.bump();
                c
            }
            _ => return Err(self.err("expected a variable `z<k>` or `w<k>`")),
        };
        if block == 'w' && !self.two_blocks {
            return Err(self.err("`w` variables are not allowed here"));
        }
        let idx = self.small("variable index")? as usize;
        if idx == 0 || idx > self.n {
            return Err(self.err(format!("variable index {idx} outside 1..={}", self.n)));
        }
        let e = if self.peek() == Some('^') {
            self.bump();
            self.small("exponent")?
        } else {
            1
        };
        let slot = if block == 'z' { idx - 1 } else { self.n + idx - 1 };
        exps[slot] += e;
        Ok(())
    }
}

fn write_monomial(m: &Monomial, nz: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (v, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        let (c, idx) = if v < nz { ('z', v + 1) } else { ('w', v - nz + 1) };
        if e == 1 {
            write!(f, "{c}{idx}")?;
        } else {
            write!(f, "{c}{idx}^{e}")?;
        }
    }
    Ok(())
}

pub(super) fn write_polynomial(p: &Polynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().enumerate() {
        // Real coefficients carry their sign into the separator; complex ones stay bracketed.
        let (neg, mag) = if c.is_real() && c.re.is_negative() { (true, -c) } else { (false, c.clone()) };
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let constant = m.degree() == 0;
        if mag.is_one() && !constant {
            write_monomial(m, p.nz(), f)?;
        } else {
            if mag.is_real() {
                f.write_str(&format_rational(&mag.re))?;
            } else {
                write!(f, "{mag}")?;
            }
            if !constant {
                f.write_str("*")?;
                write_monomial(m, p.nz(), f)?;
            }
        }
    }
    Ok(())
}
