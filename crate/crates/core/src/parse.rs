//! Polynomial expression parser.
//!
//! Grammar: integers, declared variables, `+ - * ^` and parentheses.
//! Exponents are non-negative integers. Coefficients are reduced mod p.

use crate::error::{Error, Result};
use crate::poly::{Poly, RingRef};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((
                    pos,
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                ));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let mut v: u64 = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].1 as u64 - '0' as u64))
                        .ok_or_else(|| Error::Parse {
                            pos,
                            msg: "integer literal too large".into(),
                        })?;
                    i += 1;
                }
                out.push((pos, Tok::Num(v)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while i < chars.len() {
                    let c = chars[i].1;
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        name.push(c);
                        i += 1;
                    } else {
                        break;
                    }
                }
                out.push((pos, Tok::Ident(name)));
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a RingRef,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.factor()?;
                }
                // implicit multiplication: `2x`, `x(y+1)`
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    self.at += 1;
                    let e = u32::try_from(e).or_else(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.at += 1;
                let p = self.ring.modulus();
                Ok(Poly::constant(self.ring, (v % p) as i64))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.at += 1;
                    Ok(Poly::var(self.ring, i))
                }
                None => self.err(&format!("unknown variable {name:?}")),
            },
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(-self.factor()?)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_poly(ring: &RingRef, s: &str) -> Result<Poly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        ring,
        toks,
        at: 0,
        end: s.len(),
    };
    let f = parser.expr()?;
    if parser.at != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn parses_and_reduces() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let f = parse_poly(&r, "7*x^2 - (y + 1)*(y - 1)").unwrap();
        assert_eq!(f.to_string(), "2*x^2 - y^2 + 1");
        assert_eq!(parse_poly(&r, "2x y").unwrap().to_string(), "2*x*y");
    }

    #[test]
    fn round_trips_display() {
        let r = Ring::new(7, &["u", "v"]).unwrap();
        let f = parse_poly(&r, "3*u^3*v - u + 6").unwrap();
        assert_eq!(parse_poly(&r, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn rejects_garbage() {
        let r = Ring::new(5, &["x"]).unwrap();
        for bad in ["", "x +", "z", "x^y", "(x", "x $ 1", "x)"] {
            assert!(matches!(parse_poly(&r, bad), Err(Error::Parse { .. })), "{bad}");
        }
    }
}
