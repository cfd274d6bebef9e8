//! Expression grammar, AST, and normalization into rational expressions.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := factor (("*"|"/") factor)*
//! factor   := base ("^" natural)?
//! base     := "x" | "ln" "(" expr ")" | constant | "(" expr ")" | name
//! constant := rational | "i" | "@" name
//! rational := "-"? digits ("/" digits)?
//! ```
//!
//! Bare names are only admitted in generic mode, where they must resolve to
//! declared tower symbols. Inside `ln(...)` the argument must normalize to
//! (iterated log) + constant; anything else is rejected after parsing.

use crate::constfield::Const;
use crate::error::{Error, Result};
use crate::poly::{MPoly, RatExpr};
use crate::symbol::{LogSym, SymId};
use num_bigint::BigInt;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    X,
    Num(Const),
    Sym(String),
    Ln(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseMode {
    IterLog,
    Generic,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Digits(String),
    Ident(String),
    AtSign,
    I,
    X,
    Ln,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '@' => {
                out.push((i, Tok::AtSign));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Digits(text[start..i].to_string())));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "x" => Tok::X,
                    "i" => Tok::I,
                    "ln" => Tok::Ln,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((start, tok));
            }
            other => {
                return Err(Error::SyntaxError {
                    pos: i,
                    msg: format!("unexpected character {:?}", other),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    mode: ParseMode,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::SyntaxError {
                pos: self.here(),
                msg: format!("expected {}", what),
            })
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let pos = self.here();
            match self.bump() {
                Some(Tok::Digits(d)) => {
                    let n: u32 = d.parse().map_err(|_| Error::SyntaxError {
                        pos,
                        msg: "exponent out of range".to_string(),
                    })?;
                    return Ok(ExprAst::Pow(Box::new(base), n));
                }
                _ => {
                    return Err(Error::SyntaxError {
                        pos,
                        msg: "expected a natural-number exponent".to_string(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<ExprAst> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::X) => Ok(ExprAst::X),
            Some(Tok::I) => Ok(ExprAst::Num(Const::i())),
            Some(Tok::Digits(d)) => self.rational(d, false, pos),
            Some(Tok::Minus) => {
                let pos2 = self.here();
                match self.bump() {
                    Some(Tok::Digits(d)) => self.rational(d, true, pos2),
                    _ => Err(Error::SyntaxError {
                        pos: pos2,
                        msg: "a leading '-' must start a negative rational".to_string(),
                    }),
                }
            }
            Some(Tok::AtSign) => {
                let pos2 = self.here();
                match self.bump() {
                    Some(Tok::Ident(name)) => Ok(ExprAst::Num(
                        Const::atom(&name).map_err(|e| Error::SyntaxError {
                            pos: pos2,
                            msg: e.to_string(),
                        })?,
                    )),
                    Some(Tok::X) | Some(Tok::I) | Some(Tok::Ln) => Err(Error::SyntaxError {
                        pos: pos2,
                        msg: "reserved name cannot be an atom".to_string(),
                    }),
                    _ => Err(Error::SyntaxError {
                        pos: pos2,
                        msg: "expected an atom name after '@'".to_string(),
                    }),
                }
            }
            Some(Tok::Ln) => {
                self.expect(Tok::LParen, "'(' after ln")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(ExprAst::Ln(Box::new(inner)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                if self.mode == ParseMode::Generic {
                    Ok(ExprAst::Sym(name))
                } else {
                    Err(Error::SyntaxError {
                        pos,
                        msg: format!("unknown name {:?} (iterlog mode admits only x, ln, constants)", name),
                    })
                }
            }
            _ => Err(Error::SyntaxError {
                pos,
                msg: "expected an expression".to_string(),
            }),
        }
    }

    fn rational(&mut self, digits: String, negative: bool, pos: usize) -> Result<ExprAst> {
        let n: BigInt = digits.parse().map_err(|_| Error::SyntaxError {
            pos,
            msg: "bad integer".to_string(),
        })?;
        let n = if negative { -n } else { n };
        // a '/' directly after digits, followed by digits, is a rational
        // literal; otherwise leave the '/' to the term parser
        if self.peek() == Some(&Tok::Slash) {
            if let Some((_, Tok::Digits(d))) = self.toks.get(self.pos + 1) {
                let den: BigInt = d.parse().map_err(|_| Error::SyntaxError {
                    pos,
                    msg: "bad denominator".to_string(),
                })?;
                if den == BigInt::from(0) {
                    return Err(Error::SyntaxError {
                        pos,
                        msg: "zero denominator in rational literal".to_string(),
                    });
                }
                self.pos += 2;
                let g = crate::gauss::GaussRat::new(
                    num_rational::BigRational::new(n, den),
                    num_rational::BigRational::new(BigInt::from(0), BigInt::from(1)),
                );
                return Ok(ExprAst::Num(Const::from_gauss(g)));
            }
        }
        let g = crate::gauss::GaussRat::new(
            num_rational::BigRational::from_integer(n),
            num_rational::BigRational::new(BigInt::from(0), BigInt::from(1)),
        );
        Ok(ExprAst::Num(Const::from_gauss(g)))
    }
}

/// Parse `text` under the grammar. Generic mode admits bare names.
pub fn parse(text: &str, mode: ParseMode) -> Result<ExprAst> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        mode,
        end: text.len(),
    };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::SyntaxError {
            pos: p.here(),
            msg: "trailing input".to_string(),
        });
    }
    Ok(ast)
}

/// Match a normalized ln-argument against the shape (iterated log) + constant.
fn shift_shape(arg: &RatExpr) -> Result<LogSym> {
    let describe = || crate::poly::rat_to_text(arg);
    if !arg.is_poly() {
        return Err(Error::NotIterLog(describe()));
    }
    let p = arg.num();
    let mut symbol: Option<LogSym> = None;
    let mut shift = Const::zero();
    for (m, c) in p.terms() {
        if m.is_unit() {
            shift = c.clone();
            continue;
        }
        if m.total_degree() != 1 || symbol.is_some() || !c.is_one() {
            return Err(Error::NotIterLog(describe()));
        }
        let v = m.vars().next().unwrap();
        match v.as_log() {
            Some(l) => symbol = Some(l.clone()),
            None => return Err(Error::NotIterLog(describe())),
        }
    }
    match symbol {
        Some(l) => Ok(l.raise(shift)),
        None => Err(Error::NotIterLog(describe())),
    }
}

/// Evaluate an AST into a reduced rational expression. `symbols` resolves
/// bare names (generic mode); ln-subtrees are normalized into iterated-log
/// symbols.
pub fn to_ratexpr(ast: &ExprAst, symbols: &BTreeMap<String, SymId>) -> Result<RatExpr> {
    match ast {
        ExprAst::X => Ok(RatExpr::var(SymId::x())),
        ExprAst::Num(c) => Ok(RatExpr::constant(c.clone())),
        ExprAst::Sym(name) => symbols
            .get(name)
            .map(|s| RatExpr::var(s.clone()))
            .ok_or_else(|| Error::UnknownSymbol(name.clone())),
        ExprAst::Ln(inner) => {
            let arg = to_ratexpr(inner, symbols)?;
            let sym = shift_shape(&arg)?;
            Ok(RatExpr::var(SymId::log(sym)))
        }
        ExprAst::Add(a, b) => Ok(to_ratexpr(a, symbols)?.add(&to_ratexpr(b, symbols)?)),
        ExprAst::Sub(a, b) => Ok(to_ratexpr(a, symbols)?.sub(&to_ratexpr(b, symbols)?)),
        ExprAst::Mul(a, b) => Ok(to_ratexpr(a, symbols)?.mul(&to_ratexpr(b, symbols)?)),
        ExprAst::Div(a, b) => {
            let num = to_ratexpr(a, symbols)?;
            let den = to_ratexpr(b, symbols)?;
            num.checked_div(&den).ok_or(Error::DivisionByZero)
        }
        ExprAst::Pow(a, n) => Ok(to_ratexpr(a, symbols)?.pow(*n)),
    }
}

/// Parse and normalize in iterated-log mode.
pub fn parse_iterlog(text: &str) -> Result<RatExpr> {
    let ast = parse(text, ParseMode::IterLog)?;
    to_ratexpr(&ast, &BTreeMap::new())
}

/// Parse a polynomial (fractions rejected) over declared symbols.
pub fn parse_poly(text: &str, symbols: &BTreeMap<String, SymId>) -> Result<MPoly> {
    let ast = parse(text, ParseMode::Generic)?;
    let r = to_ratexpr(&ast, symbols)?;
    if !r.is_poly() {
        return Err(Error::Domain(format!(
            "expected a polynomial, got a proper fraction: {}",
            crate::poly::rat_to_text(&r)
        )));
    }
    Ok(r.num().clone())
}
