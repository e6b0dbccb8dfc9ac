//! Operator expressions such as `y1*dy1 + 1/2*x1^2*dx2`. Products are
//! compositions, so `dy1*y1` is `y1*dy1 + 1`.

use std::str::FromStr;
use std::sync::Arc;

use fdq::ring::{Poly, Rational};
use fdq::{DiffOp, Space};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(CliError::Input(format!("unexpected character {c:?} in operator expression")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    space: &'a Arc<Space>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<DiffOp, CliError> {
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

    fn term(&mut self) -> Result<DiffOp, CliError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.compose(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DiffOp, CliError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(s)) => {
                self.pos += 1;
                let q = Rational::from_str(&s).map_err(|_| CliError::Input(format!("bad rational {s}")))?;
                DiffOp::identity(self.space).scale(&q)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.atom(&name)?
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(CliError::Input("missing ')' in operator expression".into()));
                }
                inner
            }
            other => return Err(CliError::Input(format!("unexpected {other:?} in operator expression"))),
        };
        if self.eat('^') {
            let Some(Token::Num(e)) = self.tokens.get(self.pos).cloned() else {
                return Err(CliError::Input("expected an exponent after '^'".into()));
            };
            self.pos += 1;
            let e: u32 = e.parse().map_err(|_| CliError::Input(format!("bad exponent {e}")))?;
            let mut out = DiffOp::identity(self.space);
            for _ in 0..e {
                out = out.compose(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&self, name: &str) -> Result<DiffOp, CliError> {
        let s = self.space;
        let index = |prefix: &str, bound: usize| -> Option<usize> {
            let i: usize = name.strip_prefix(prefix)?.parse().ok()?;
            (1..=bound).contains(&i).then_some(i - 1)
        };
        if let Some(i) = index("dx", s.n()) {
            return Ok(DiffOp::dx(s, i));
        }
        if let Some(j) = index("dy", s.k()) {
            return Ok(DiffOp::dy(s, j));
        }
        if let Some(i) = index("x", s.n()) {
            return Ok(DiffOp::mult(s, &s.x(i)));
        }
        if let Some(j) = index("y", s.k()) {
            return Ok(DiffOp::mult(s, &s.y(j)));
        }
        Err(CliError::Input(format!("unknown symbol {name} for vars x:{} y:{}", s.n(), s.k())))
    }
}

pub fn parse_op(space: &Arc<Space>, src: &str) -> Result<DiffOp, CliError> {
    let mut p = Parser { tokens: tokenize(src)?, pos: 0, space };
    let op = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(CliError::Input(format!("trailing input in operator expression {src:?}")));
    }
    Ok(op)
}

/// Function expressions use the same grammar and must not contain derivatives.
pub fn parse_poly(space: &Arc<Space>, src: &str) -> Result<Poly, CliError> {
    let op = parse_op(space, src)?;
    if !op.terms().all(|(i, _)| i.order() == 0) {
        return Err(CliError::Input(format!("{src:?} is not a function")));
    }
    Ok(op.apply(&Poly::one(space.total())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trip() {
        let s = Space::new(2, 1).unwrap();
        let d = parse_op(&s, "dy1*y1 - 1/2*x1^2*dx2 + (x2 + y1)*dy1^2").unwrap();
        assert_eq!(parse_op(&s, &d.to_string()).unwrap(), d);
        assert_eq!(parse_op(&s, "dy1*y1").unwrap(), parse_op(&s, "y1*dy1 + 1").unwrap());
        assert!(parse_op(&s, "dz1").is_err());
        assert!(parse_op(&s, "x3").is_err());
        assert!(parse_poly(&s, "dx1").is_err());
    }
}
