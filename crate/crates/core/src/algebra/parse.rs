//! Recursive-descent parser for the polynomial and point text formats.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'i' | variable | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication: `2x` is a syntax error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::mpoly::{Poly, Vars};
use crate::algebra::scalar::Scalar;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            let n: BigInt = text[start..k].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                k += 1;
            }
            out.push((start, Tok::Ident(text[start..k].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((k, Tok::Op(c)));
            k += 1;
        } else {
            return Err(Error::Syntax {
                pos: k,
                msg: format!(
                    "unexpected character `{}`",
                    text[k..].chars().next().unwrap()
                ),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    k: usize,
    end: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.k).map_or(self.end, |(p, _)| *p)
    }

    fn syntax<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.k += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .or_else(|_| self.syntax("exponent too large"))?;
                    self.k += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.syntax("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.k += 1;
                let mut value = BigRational::from_integer(n);
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.k += 1;
                            if d.is_zero() {
                                return Err(Error::DivisionByZero);
                            }
                            value /= BigRational::from_integer(d);
                        }
                        _ => return self.syntax("`/` is only allowed between integer literals"),
                    }
                }
                let c = GaussianRational::new(value, BigRational::zero());
                Ok(Poly::constant(self.vars, c))
            }
            Some(Tok::Ident(name)) => {
                self.k += 1;
                if name == "i" {
                    return Ok(Poly::constant(self.vars, GaussianRational::i()));
                }
                match self.vars.index_of(&name) {
                    Some(v) => Ok(Poly::var(self.vars, v)),
                    None => Err(Error::UnknownVariable { name, pos }),
                }
            }
            Some(Tok::Op('(')) => {
                self.k += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.syntax("expected `)`");
                }
                Ok(e)
            }
            Some(_) => self.syntax("expected a number, variable or `(`"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parse a polynomial over Q(i) in the given variables.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<Poly> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        k: 0,
        end: text.len(),
        vars,
    };
    if p.peek().is_none() {
        return p.syntax("empty input");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.syntax("unexpected trailing input (implicit multiplication is not allowed)");
    }
    Ok(e)
}

/// Parse a Gaussian-rational constant such as `3/2`, `-i`, `1+2*i`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let p = parse_poly(text, &Vars::new(&[]))?;
    Ok(p.constant_term())
}

/// Parse a projective triple written `[a:b:c]`.
pub fn parse_point(text: &str) -> Result<[GaussianRational; 3]> {
    let t = text.trim();
    let offset = text.len() - text.trim_start().len();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(Error::Syntax {
            pos: offset,
            msg: "expected `[a:b:c]`".into(),
        })?;
    let parts: Vec<&str> = inner.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Syntax {
            pos: offset,
            msg: "expected three coordinates".into(),
        });
    }
    let mut out: [GaussianRational; 3] = Default::default();
    let mut base = offset + 1;
    for (k, part) in parts.iter().enumerate() {
        out[k] = parse_scalar(part).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos: pos + base,
                msg,
            },
            Error::UnknownVariable { name, pos } => Error::UnknownVariable {
                name,
                pos: pos + base,
            },
            other => other,
        })?;
        base += part.len() + 1;
    }
    if out.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidInput(
            "the zero triple is not a projective point".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz(s: &str) -> Result<Poly> {
        parse_poly(s, &Vars::xyz())
    }

    #[test]
    fn examples() {
        let c = xyz("x^2+y^2-z^2").unwrap();
        assert_eq!(c.num_terms(), 3);
        assert!(c.is_homogeneous());
        assert_eq!(c.total_degree(), Some(2));
        let cusp = xyz("y^2*z - x^3").unwrap();
        assert_eq!(cusp.total_degree(), Some(3));
        assert!(cusp.is_homogeneous());
        let l = xyz("(1+i)*x - i*z").unwrap();
        assert_eq!(l.to_string(), "(1+i)*x-i*z");
    }

    #[test]
    fn errors() {
        assert!(matches!(xyz("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(
            xyz("x+q"),
            Err(Error::UnknownVariable { pos: 2, .. })
        ));
        assert!(matches!(xyz("u+x"), Err(Error::UnknownVariable { .. })));
        assert!(matches!(xyz("1/0*x"), Err(Error::DivisionByZero)));
        assert!(matches!(xyz("(x+y"), Err(Error::Syntax { .. })));
        assert!(matches!(xyz("x^y"), Err(Error::Syntax { .. })));
        assert!(matches!(xyz(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn precedence() {
        assert_eq!(xyz("-x^2").unwrap(), xyz("-(x^2)").unwrap());
        assert_eq!(xyz("2*x+3*x*y^2").unwrap(), xyz("x*(2+3*y*y)").unwrap());
        assert_eq!(xyz("1/2*x").unwrap(), xyz("x*1/2").unwrap());
    }

    #[test]
    fn round_trip() {
        for s in [
            "x^2+y^2-z^2",
            "(1+i)*x-i*z",
            "1/2*i*x^3-3/7*y*z^2+(2-5/3*i)",
            "-i*y",
        ] {
            let p = xyz(s).unwrap();
            assert_eq!(xyz(&p.to_string()).unwrap(), p, "{s} -> {p}");
        }
    }

    #[test]
    fn points() {
        let p = parse_point("[2:1:1]").unwrap();
        assert_eq!(p[0], GaussianRational::from_int(2));
        let q = parse_point(" [1 : -i : 0]").unwrap();
        assert_eq!(q[1], GaussianRational::from_parts(0, -1));
        assert!(parse_point("[1:2]").is_err());
        assert!(parse_point("[0:0:0]").is_err());
        assert!(matches!(
            parse_point("[1:2x:3]"),
            Err(Error::Syntax { pos: 4, .. })
        ));
    }
}
