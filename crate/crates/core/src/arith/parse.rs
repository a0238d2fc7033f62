//! Text grammar for polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := integer ['/' integer] | name ['^' integer]
//! ```
//! Variable names are matched greedily against the declared names, so `x1x2` parses as
//! `x1*x2` when `x1` and `x2` are declared.

use num_bigint::BigInt;

use super::field::Field;
use super::monomial::Monomial;
use super::poly::Polynomial;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: 1, col: self.pos + 1, msg: msg.into() }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }
}

pub fn parse_polynomial(src: &str, names: &[String], field: Field) -> Result<Polynomial> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(names[i].len()));
    let mut cur = Cursor { src: src.as_bytes(), pos: 0 };
    let nvars = names.len();
    let mut out = Polynomial::zero(field, nvars);
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return Err(cur.err("empty polynomial")),
            None => break,
            Some(b'+') => cur.pos += 1,
            Some(b'-') => {
                negative = true;
                cur.pos += 1;
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.err(format!("unexpected '{}'", c as char))),
        }
        first = false;
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        let mut exps = vec![0u16; nvars];
        let mut nfactors = 0;
        loop {
            match cur.peek() {
                Some(b'*') if nfactors > 0 => {
                    cur.pos += 1;
                    continue;
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = cur.integer()?;
                    let mut d = BigInt::from(1);
                    if cur.peek() == Some(b'/') {
                        cur.pos += 1;
                        d = cur.integer()?;
                    }
                    num *= n;
                    den *= d;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let rest = &cur.src[cur.pos..];
                    let hit = order.iter().copied().find(|&i| rest.starts_with(names[i].as_bytes()));
                    let Some(v) = hit else {
                        return Err(cur.err("unknown variable"));
                    };
                    cur.pos += names[v].len();
                    let mut e = 1u16;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        let n = cur.integer()?;
                        e = u16::try_from(n).map_err(|_| cur.err("exponent too large"))?;
                    }
                    exps[v] += e;
                }
                _ => break,
            }
            nfactors += 1;
        }
        if nfactors == 0 {
            return Err(cur.err("expected a term"));
        }
        if negative {
            num = -num;
        }
        let c = field.from_ratio(&num, &den).map_err(|e| cur.err(e.to_string()))?;
        out.add_term(Monomial::from_exponents(exps), &c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grammar() {
        let n = names(&["x1", "x2", "x"]);
        let f = Field::DEFAULT;
        let p = parse_polynomial("x1x2 + 2 x^2 - x1*x2", &n, f).unwrap();
        assert_eq!(p.to_string_with(&n), "2*x^2");
        let q = parse_polynomial("-x1^2 + 1/2 x2", &n, f).unwrap();
        assert_eq!(q.to_string_with(&n), "-x1^2 - 50*x2");
        let r = parse_polynomial("3/4*x", &n, Field::Rational).unwrap();
        assert_eq!(r.to_string_with(&n), "3/4*x");
        assert!(parse_polynomial("0", &n, f).unwrap().is_zero());
    }

    #[test]
    fn errors_carry_column() {
        let n = names(&["x", "y"]);
        match parse_polynomial("x + q", &n, Field::DEFAULT) {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("", &n, Field::DEFAULT).is_err());
        assert!(parse_polynomial("x +", &n, Field::DEFAULT).is_err());
        assert!(parse_polynomial("1/0 x", &n, Field::Rational).is_err());
    }
}
