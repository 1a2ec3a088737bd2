//! Recursive-descent parser for integer polynomials in `x`.
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := power ('*'? power)*
//! power   := primary ('^' integer)?
//! primary := integer | 'x' | '(' expr ')'
//! ```
//! Juxtaposition multiplies, so `12x^2` and `3(x+1)` are accepted.

use std::fmt;

use num_bigint::BigInt;

const MAX_EXPONENT: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Zero-based character offset.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Dense polynomial, constant term first.
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(|c| c == &BigInt::from(0)) {
        p.pop();
    }
    p
}

fn add(a: &Poly, b: &Poly, sign: i32) -> Poly {
    let n = a.len().max(b.len());
    let z = BigInt::from(0);
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).unwrap_or(&z);
            let y = b.get(i).unwrap_or(&z);
            if sign < 0 {
                x - y
            } else {
                x + y
            }
        })
        .collect();
    trim(out)
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.chars.len() && self.chars[self.i].1.is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|c| c.1)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.src.chars().count(), |c| c.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.chars.len() && self.chars[self.i].1.is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected an integer");
        }
        let s: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.i += 1;
            }
            Some('+') => self.i += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if sign < 0 { add(&vec![BigInt::from(0)], &first, -1) } else { first };
        loop {
            match self.peek() {
                Some('+') => {
                    self.i += 1;
                    let t = self.term()?;
                    acc = add(&acc, &t, 1);
                }
                Some('-') => {
                    self.i += 1;
                    let t = self.term()?;
                    acc = add(&acc, &t, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.i += 1;
                    let p = self.power()?;
                    acc = mul(&acc, &p);
                }
                Some(c) if c == 'x' || c == '(' || c.is_ascii_digit() => {
                    let p = self.power()?;
                    acc = mul(&acc, &p);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.primary()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.i += 1;
        self.skip_ws();
        let at = self.pos();
        let e = self.integer()?;
        let e: u64 = match u64::try_from(&e) {
            Ok(v) if v <= MAX_EXPONENT => v,
            _ => return Err(ParseError { pos: at, msg: format!("exponent larger than {MAX_EXPONENT}") }),
        };
        let mut out = vec![BigInt::from(1)];
        for _ in 0..e {
            out = mul(&out, &base);
        }
        Ok(out)
    }

    fn primary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('x') => {
                self.i += 1;
                Ok(vec![BigInt::from(0), BigInt::from(1)])
            }
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(vec![self.integer()?]),
            Some(c) => self.err(format!("unexpected character '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial; returns coefficients with the constant term first.
pub fn parse_poly(src: &str) -> Result<Vec<BigInt>, ParseError> {
    let mut p = Parser { chars: src.chars().enumerate().collect(), i: 0, src };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &str) -> Vec<i64> {
        parse_poly(s).unwrap().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn basic_forms() {
        assert_eq!(coeffs("x^2+521951"), vec![521951, 0, 1]);
        assert_eq!(coeffs("x^4 + 13x^2 - 12*x + 52"), vec![52, -12, 13, 0, 1]);
        assert_eq!(coeffs("(x^2+1)(x^2-2)"), vec![-2, 0, -1, 0, 1]);
        assert_eq!(coeffs("-x + x^2"), vec![0, -1, 1]);
        assert_eq!(coeffs("3(x+1)^2"), vec![3, 6, 3]);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x^2 + y").unwrap_err();
        assert_eq!(e.pos, 6);
        let e = parse_poly("x^^2").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_poly("(x+1").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x 2 )").is_err());
    }
}
