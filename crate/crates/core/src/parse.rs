//! Text input: polynomial expressions and matrix files.
//!
//! Grammar: identifiers are variables, `+ - * ^` and parentheses; integer and
//! rational (`a/b`) literals; whitespace insignificant. Matrix files have one
//! row per line with comma-separated entries; `#` starts a comment line.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::ring::{Coef, Poly, PolyRing};

pub fn parse_poly(text: &str, ring: &PolyRing) -> Result<Poly> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0, ring };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

/// One row per non-comment line, entries separated by commas.
pub fn parse_matrix(text: &str, ring: &PolyRing) -> Result<PolyMatrix> {
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row = trimmed
            .split(',')
            .map(|entry| parse_poly(entry, ring))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Invalid("matrix file has no rows".into()));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Invalid("matrix rows have unequal lengths".into()));
    }
    Ok(PolyMatrix::from_rows(ring.clone(), rows))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ring: &'a PolyRing,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        self.skip_ws();
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.uint()?;
            if e > u32::MAX as u64 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                self.skip_ws();
                if self.eat(b'/') {
                    self.skip_ws();
                    let den_pos = self.pos;
                    let den = self.uint()?;
                    if den == 0 {
                        return Err(Error::Parse { pos: den_pos, msg: "zero denominator".into() });
                    }
                    let c: Coef = BigRational::new(BigInt::from(num), BigInt::from(den));
                    Ok(self.ring.constant(c))
                } else {
                    Ok(self.ring.constant(BigRational::from_integer(BigInt::from(num))))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .map(|b| b.is_ascii_alphanumeric() || b == b'_')
                    .unwrap_or(false)
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                match self.ring.var_named(name) {
                    Some(v) => Ok(v),
                    None => Err(Error::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            _ => Err(self.err("expected a variable, literal or `(`")),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().map(|b| b.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| Error::Parse { pos: start, msg: "integer literal too large".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::coef_int;

    #[test]
    fn basic_expressions() {
        let r = PolyRing::new(&["x", "y", "z"]);
        let p = parse_poly("x*y - z^2", &r).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p, r.var(0).mul(&r.var(1)).sub(&r.var(2).pow(2)));

        assert!(parse_poly("0", &r).unwrap().is_zero());

        let twisted = parse_poly("x*z-y^2", &r).unwrap();
        assert_eq!(twisted, r.var(0).mul(&r.var(2)).sub(&r.var(1).pow(2)));

        let q = parse_poly("1/2*x + (y - 2)*(y + 2)", &r).unwrap();
        let expected = r
            .var(0)
            .scale(&crate::ring::coef_ratio(1, 2))
            .add(&r.var(1).pow(2))
            .sub(&r.constant(coef_int(4)));
        assert_eq!(q, expected);

        // unary minus
        assert_eq!(parse_poly("-x", &r).unwrap(), r.var(0).neg());
    }

    #[test]
    fn error_positions() {
        let r = PolyRing::new(&["x", "y"]);
        match parse_poly("x + w", &r) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, 4);
            }
            other => panic!("expected unknown variable, got {other:?}"),
        }
        assert!(matches!(parse_poly("x + ", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x y", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn print_parse_round_trip() {
        let r = PolyRing::new(&["x", "y", "z"]);
        for text in ["x*y - z^2", "-x + 3/4", "x^2*y^3 - 2*z + 1", "0", "x"] {
            let p = parse_poly(text, &r).unwrap();
            let reparsed = parse_poly(&format!("{p}"), &r).unwrap();
            assert_eq!(p, reparsed);
        }
    }

    #[test]
    fn matrix_files() {
        let r = PolyRing::new(&["x", "y"]);
        let m = parse_matrix("# comment\n x, y\n -y, x^2\n", &r).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(*m.entry(1, 0), r.var(1).neg());
        assert!(parse_matrix("x, y\nx\n", &r).is_err());
    }
}
