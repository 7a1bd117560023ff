//! Polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' nat)?
//! base   := number | rational | ident | '(' expr ')'
//! ```
//!
//! A leading minus applies to the whole power, so `-x^2` is `-(x^2)`.
//! Positions in errors are 1-based character columns.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::WeightedRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(BigRational),
    Var { name: String, pos: usize },
    Neg(Box<Expr>),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let st = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[st..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let num: BigInt = digits(&mut i).parse().expect("digits");
                let mut q = BigRational::from_integer(num);
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let den = digits(&mut i);
                    if den.is_empty() {
                        return Err(Error::Syntax {
                            pos: i + 1,
                            msg: "expected a denominator after '/'".into(),
                        });
                    }
                    let den: BigInt = den.parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(Error::Syntax {
                            pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    q /= BigRational::from_integer(den);
                }
                out.push((Tok::Num(q), pos));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let st = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[st..i].iter().collect()), pos));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((tok, pos));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut parts = vec![(true, self.term()?)];
        loop {
            let positive = match self.peek() {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => break,
            };
            self.bump();
            parts.push((positive, self.term()?));
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part").1
        } else {
            Expr::Sum(parts)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Expr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Num(q) if q.is_integer() => {
                let e: u32 = q
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                Ok(Expr::Power(Box::new(base), e))
            }
            Tok::Num(_) => Err(Error::Syntax {
                pos,
                msg: "exponents must be natural numbers".into(),
            }),
            Tok::Minus => Err(Error::NegativeExponent(pos)),
            _ => Err(Error::Syntax {
                pos,
                msg: "expected an exponent".into(),
            }),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(q) => Ok(Expr::Number(q)),
            Tok::Ident(name) => Ok(Expr::Var { name, pos }),
            Tok::LParen => {
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                pos,
                msg: format!("unexpected {}", describe(&t)),
            }),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::End => "end of input",
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        let t = p.peek().clone();
        return p.fail(format!("unexpected {}", describe(&t)));
    }
    Ok(e)
}

pub fn evaluate(e: &Expr, ring: &Arc<WeightedRing>) -> Result<Polynomial> {
    Ok(match e {
        Expr::Number(q) => Polynomial::constant(ring, &ring.field().element(q)?),
        Expr::Var { name, .. } => Polynomial::var_named(ring, name)?,
        Expr::Neg(inner) => -evaluate(inner, ring)?,
        Expr::Sum(parts) => {
            let mut acc = Polynomial::zero(ring);
            for (positive, p) in parts {
                let v = evaluate(p, ring)?;
                acc = if *positive { &acc + &v } else { &acc - &v };
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = Polynomial::one(ring);
            for f in fs {
                acc = &acc * &evaluate(f, ring)?;
            }
            acc
        }
        Expr::Power(b, k) => evaluate(b, ring)?.pow(*k),
    })
}

/// Parses `text` as a polynomial over `ring`.
pub fn parse_poly(text: &str, ring: &Arc<WeightedRing>) -> Result<Polynomial> {
    evaluate(&parse_expr(text)?, ring)
}

/// Variable names referenced by an expression, in order of appearance.
pub fn variables_of(e: &Expr) -> Vec<String> {
    fn go(e: &Expr, out: &mut Vec<String>) {
        match e {
            Expr::Number(_) => {}
            Expr::Var { name, .. } => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Expr::Neg(i) | Expr::Power(i, _) => go(i, out),
            Expr::Sum(ps) => ps.iter().for_each(|(_, p)| go(p, out)),
            Expr::Product(fs) => fs.iter().for_each(|f| go(f, out)),
        }
    }
    let mut out = Vec::new();
    go(e, &mut out);
    out
}
