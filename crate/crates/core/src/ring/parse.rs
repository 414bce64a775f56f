//! Textual polynomials.
//!
//! Grammar: `term = [coef][*]var[^exp](*var[^exp])*`, a polynomial is a
//! sequence of terms joined by `+` or `-`. Whitespace is ignored between
//! tokens. Integer coefficients of any size are reduced mod p while reading.

use std::fmt::Write;

use super::monomial::Monomial;
use super::poly::{Poly, Ring, Term};
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
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

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&[char]> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.chars[start..self.pos])
    }

    fn coefficient(&mut self) -> Option<u32> {
        let p = self.ring.p() as u64;
        self.digits().map(|ds| {
            ds.iter()
                .fold(0u64, |acc, d| (acc * 10 + d.to_digit(10).unwrap() as u64) % p) as u32
        })
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        match self.digits() {
            Some(ds) => {
                let s: String = ds.iter().collect();
                s.parse::<u32>().or_else(|_| {
                    self.pos = start;
                    self.err("exponent too large")
                })
            }
            None => self.err("expected exponent"),
        }
    }

    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_alphabetic() || c == '_' {
                self.pos += 1;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
            }
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let start = self.pos;
        let Some(name) = self.identifier() else {
            return self.err("expected variable");
        };
        let Some(i) = self.ring.var_index(&name) else {
            self.pos = start;
            self.skip_ws();
            return self.err(format!("unknown variable {name:?}"));
        };
        let e = if self.eat('^') { self.exponent()? } else { 1 };
        exps[i] = exps[i]
            .checked_add(e)
            .ok_or_else(|| Error::Parse {
                column: start + 1,
                message: "exponent overflow".into(),
            })?;
        Ok(())
    }

    fn term(&mut self) -> Result<Term> {
        let mut exps = vec![0u32; self.ring.nvars()];
        let coef = self.coefficient();
        let has_vars = match coef {
            Some(_) => {
                let starred = self.eat('*');
                let next_is_var = matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_');
                if starred && !next_is_var {
                    return self.err("expected variable after '*'");
                }
                next_is_var
            }
            None => true,
        };
        if has_vars {
            self.factor(&mut exps)?;
            while self.eat('*') {
                self.factor(&mut exps)?;
            }
        }
        Ok(Term {
            mono: Monomial::from_exps(&exps),
            coef: coef.unwrap_or(1),
        })
    }

    fn polynomial(&mut self) -> Result<Poly> {
        let f = self.ring.field();
        let mut terms = Vec::new();
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        loop {
            let mut t = self.term()?;
            if negate {
                t.coef = f.neg(t.coef);
            }
            terms.push(t);
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err(format!("unexpected character {:?}", self.chars[self.pos]));
        }
        Ok(self.ring.from_terms(terms))
    }
}

impl Ring {
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let mut c = Cursor {
            chars: text.chars().collect(),
            pos: 0,
            ring: self,
        };
        if c.peek().is_none() {
            return c.err("empty polynomial");
        }
        c.polynomial()
    }

    /// Canonical text: terms in decreasing order, coefficients in `1..p`,
    /// explicit `*` and `^`, joined by ` + `.
    pub fn format(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, t) in f.terms().iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            self.write_term(&mut out, t);
        }
        out
    }

    fn write_term(&self, out: &mut String, t: &Term) {
        if t.mono.is_one() {
            write!(out, "{}", t.coef).unwrap();
            return;
        }
        let mut first = true;
        if t.coef != 1 {
            write!(out, "{}", t.coef).unwrap();
            first = false;
        }
        for (i, &e) in t.mono.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&self.names()[i]);
            if e > 1 {
                write!(out, "^{e}").unwrap();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn ring(p: u64) -> Ring {
        Ring::new(p, &["x", "y"], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert!(ring(2).parse("x + x").unwrap().is_zero());
        let r3 = ring(3);
        assert_eq!(r3.format(&r3.parse("x + x + x^2").unwrap()), "x^2 + 2*x");
        let r5 = ring(5);
        assert_eq!(r5.format(&r5.parse("7*x*y").unwrap()), "2*x*y");
        assert_eq!(r5.format(&r5.parse("-1").unwrap()), "4");
        assert_eq!(r5.format(&r5.parse("3x^2 - y").unwrap()), "3*x^2 + 4*y");
        assert_eq!(r5.format(&r5.parse("0").unwrap()), "0");
        // coefficients wider than 64 bits reduce digit by digit
        assert!(r5.parse("123456789012345678901234567890*x").unwrap().is_zero());
        assert_eq!(r5.format(&r5.parse("123456789012345678901234567891*y").unwrap()), "y");
    }

    #[test]
    fn parse_errors_carry_columns() {
        let r = ring(2);
        match r.parse("x + z") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(r.parse("x +"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse(""), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("x^"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("x y"), Err(Error::Parse { .. })));
    }

    #[test]
    fn format_parse_round_trip() {
        let r = ring(7);
        let f = r.parse("3*x^3*y + 6*y^2 + x + 5").unwrap();
        let text = r.format(&f);
        assert_eq!(text, "3*x^3*y + 6*y^2 + x + 5");
        assert_eq!(r.parse(&text).unwrap(), f);
    }
}
