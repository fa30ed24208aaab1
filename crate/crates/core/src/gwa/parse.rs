//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' ['-'] integer)?
//! atom   := integer | ident | '(' expr ')'
//! ```
//!
//! Division is only by nonzero scalars; negative exponents only on units.

use super::{Gwa, GwaElement};
use crate::field::{Field, FieldElement};
use crate::ring::{Ring, RingElement};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

const MAX_EXPONENT: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownIdentifier(String),
    NegativeExponent(String),
    ExponentTooLarge,
    DivisionByNonScalar,
    DivisionByZero,
    NotARingElement,
    NotAScalar,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected token {t:?}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnknownIdentifier(s) => write!(f, "unknown identifier {s:?}"),
            ParseErrorKind::NegativeExponent(s) => {
                write!(f, "negative exponent on non-invertible {s}")
            }
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent exceeds {MAX_EXPONENT}"),
            ParseErrorKind::DivisionByNonScalar => {
                write!(f, "division is only allowed by nonzero scalars")
            }
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
            ParseErrorKind::NotARingElement => write!(f, "expression involves X or Y"),
            ParseErrorKind::NotAScalar => write!(f, "expression is not a scalar"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at column {}: {kind}", .pos + 1)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

fn err<T>(pos: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { pos, kind })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|x| x.1).collect();
            out.push((pos, Tok::Int(text.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[start..i].iter().map(|x| x.1).collect()),
            ));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return err(pos, ParseErrorKind::UnexpectedChar(c));
        }
    }
    Ok(out)
}

#[derive(Debug)]
enum Expr {
    Int(BigInt),
    Ident(usize, String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(usize, Box<Expr>, Box<Expr>),
    Pow(usize, Box<Expr>, i64),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn unexpected<T>(&self) -> Result<T, ParseError> {
        match self.toks.get(self.i) {
            Some((p, t)) => err(
                *p,
                ParseErrorKind::UnexpectedToken(match t {
                    Tok::Int(n) => n.to_string(),
                    Tok::Ident(s) => s.clone(),
                    Tok::Sym(c) => c.to_string(),
                }),
            ),
            None => err(self.end, ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.i += 1;
                acc = Expr::Div(pos, Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Sym('^')) {
            return Ok(base);
        }
        let pos = self.pos();
        self.i += 1;
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                let v: i64 = match i64::try_from(&n) {
                    Ok(v) if v <= MAX_EXPONENT => v,
                    _ => return err(pos, ParseErrorKind::ExponentTooLarge),
                };
                Ok(Expr::Pow(pos, Box::new(base), if neg { -v } else { v }))
            }
            _ => self.unexpected(),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                Ok(Expr::Ident(pos, s))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.unexpected();
                }
                Ok(e)
            }
            _ => self.unexpected(),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.unexpected();
    }
    Ok(e)
}

/// Operations the evaluator needs from a target algebra.
trait Target: Sized + Clone {
    fn from_int(&self, n: &BigInt) -> Self;
    fn ident(&self, name: &str) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn one_like(&self) -> Self;
    fn as_scalar(&self) -> Option<FieldElement>;
    fn scale(&self, c: &FieldElement) -> Self;
    fn inverse(&self) -> Option<Self>;
}

fn lookup_scalar(
    field: &Field,
    params: &BTreeMap<String, FieldElement>,
    name: &str,
) -> Option<FieldElement> {
    if field.generator_name().as_deref() == Some(name) {
        return field.generator();
    }
    params.get(name).cloned()
}

#[derive(Clone)]
struct RingCtx<'a> {
    value: RingElement,
    params: &'a BTreeMap<String, FieldElement>,
}

impl Target for RingCtx<'_> {
    fn from_int(&self, n: &BigInt) -> Self {
        let r = self.value.ring();
        RingCtx {
            value: r.scalar(r.field().from_bigint(n)),
            params: self.params,
        }
    }
    fn ident(&self, name: &str) -> Option<Self> {
        let r = self.value.ring();
        let v = r
            .var_named(name)
            .or_else(|| lookup_scalar(r.field(), self.params, name).map(|c| r.scalar(c)))?;
        Some(RingCtx {
            value: v,
            params: self.params,
        })
    }
    fn add(&self, o: &Self) -> Self {
        RingCtx {
            value: &self.value + &o.value,
            params: self.params,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        RingCtx {
            value: &self.value - &o.value,
            params: self.params,
        }
    }
    fn neg(&self) -> Self {
        RingCtx {
            value: -&self.value,
            params: self.params,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        RingCtx {
            value: &self.value * &o.value,
            params: self.params,
        }
    }
    fn one_like(&self) -> Self {
        RingCtx {
            value: self.value.ring().one(),
            params: self.params,
        }
    }
    fn as_scalar(&self) -> Option<FieldElement> {
        self.value.constant_value()
    }
    fn scale(&self, c: &FieldElement) -> Self {
        RingCtx {
            value: self.value.scale(c),
            params: self.params,
        }
    }
    fn inverse(&self) -> Option<Self> {
        self.value.inverse().ok().map(|v| RingCtx {
            value: v,
            params: self.params,
        })
    }
}

impl Target for GwaElement {
    fn from_int(&self, n: &BigInt) -> Self {
        let g = self.gwa();
        g.scalar(g.field().from_bigint(n))
    }
    fn ident(&self, name: &str) -> Option<Self> {
        let g = self.gwa();
        for i in 0..g.rank() {
            let candidates = |x: bool| {
                let mut v = vec![g.generator_name(i, x)];
                if g.rank() == 1 {
                    v.push(format!("{}1", if x { "X" } else { "Y" }));
                }
                v
            };
            if candidates(true).iter().any(|c| c == name) {
                return Some(g.x(i));
            }
            if candidates(false).iter().any(|c| c == name) {
                return Some(g.y(i));
            }
        }
        if let Some(v) = g.ring().var_named(name) {
            return Some(g.from_ring(v));
        }
        lookup_scalar(g.field(), g.parameters(), name).map(|c| g.scalar(c))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn one_like(&self) -> Self {
        self.gwa().one()
    }
    fn as_scalar(&self) -> Option<FieldElement> {
        self.ring_part().and_then(|r| r.constant_value())
    }
    fn scale(&self, c: &FieldElement) -> Self {
        GwaElement::scale(self, c)
    }
    fn inverse(&self) -> Option<Self> {
        let r = self.ring_part()?;
        r.inverse().ok().map(|v| self.gwa().from_ring(v))
    }
}

fn eval<T: Target>(e: &Expr, proto: &T) -> Result<T, ParseError> {
    Ok(match e {
        Expr::Int(n) => proto.from_int(n),
        Expr::Ident(pos, s) => match proto.ident(s) {
            Some(v) => v,
            None => return err(*pos, ParseErrorKind::UnknownIdentifier(s.clone())),
        },
        Expr::Add(a, b) => eval(a, proto)?.add(&eval(b, proto)?),
        Expr::Sub(a, b) => eval(a, proto)?.sub(&eval(b, proto)?),
        Expr::Neg(a) => eval(a, proto)?.neg(),
        Expr::Mul(a, b) => eval(a, proto)?.mul(&eval(b, proto)?),
        Expr::Div(pos, a, b) => {
            let num = eval(a, proto)?;
            let Some(d) = eval(b, proto)?.as_scalar() else {
                return err(*pos, ParseErrorKind::DivisionByNonScalar);
            };
            match d.inv() {
                Ok(inv) => num.scale(&inv),
                Err(_) => return err(*pos, ParseErrorKind::DivisionByZero),
            }
        }
        Expr::Pow(pos, a, k) => {
            let base = eval(a, proto)?;
            let base = if *k < 0 {
                match base.inverse() {
                    Some(b) => b,
                    None => return err(*pos, ParseErrorKind::NegativeExponent(describe(a))),
                }
            } else {
                base
            };
            let mut acc = base.one_like();
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(&base);
            }
            acc
        }
    })
}

fn describe(e: &Expr) -> String {
    match e {
        Expr::Ident(_, s) => s.clone(),
        Expr::Int(n) => n.to_string(),
        _ => "expression".into(),
    }
}

pub(super) fn parse_element(gwa: &Gwa, text: &str) -> Result<GwaElement, ParseError> {
    eval(&parse_expr(text)?, &gwa.zero())
}

/// Parses a base-ring element; `params` names additional scalars.
pub fn parse_ring_element(
    ring: &Ring,
    params: &BTreeMap<String, FieldElement>,
    text: &str,
) -> Result<RingElement, ParseError> {
    let ast = parse_expr(text)?;
    Ok(eval(
        &ast,
        &RingCtx {
            value: ring.zero(),
            params,
        },
    )?
    .value)
}

/// Parses a field element such as `3/7`, `zeta3^2+1` or `q^2/(q-1)`.
pub fn parse_scalar(
    field: &Field,
    params: &BTreeMap<String, FieldElement>,
    text: &str,
) -> Result<FieldElement, ParseError> {
    let ring = Ring::new(field.clone(), vec![], vec![]).expect("empty ring is valid");
    let r = parse_ring_element(&ring, params, text)?;
    r.constant_value().ok_or(ParseError {
        pos: 0,
        kind: ParseErrorKind::NotAScalar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Automorphism;

    fn qweyl() -> Gwa {
        let f = Field::rational_functions("q").unwrap();
        let r = Ring::polynomial(f.clone(), &["t"]).unwrap();
        let t = r.var(0);
        let qi = r.scalar(f.generator().unwrap().inv().unwrap());
        let phi = Automorphism::new(&r, vec![&qi * &(&t - &r.one())]).unwrap();
        Gwa::new(r, vec![phi], vec![t]).unwrap()
    }

    #[test]
    fn parses_and_round_trips() {
        let a = qweyl();
        for s in [
            "Y*X",
            "X*Y",
            "(t+1)*X^2 - 3/2*Y",
            "q^2/(q-1)*t*Y^3",
            "-t",
            "1/2/q*X",
        ] {
            let e = a.parse(s).unwrap();
            let back = a.parse(&e.to_string()).unwrap();
            assert_eq!(e, back, "{s} -> {e}");
        }
        assert_eq!(a.parse("Y*X").unwrap().to_string(), "t");
    }

    #[test]
    fn rejects_bad_input() {
        let a = qweyl();
        assert!(matches!(
            a.parse("X^-1").unwrap_err().kind,
            ParseErrorKind::NegativeExponent(_)
        ));
        assert!(matches!(
            a.parse("t/X").unwrap_err().kind,
            ParseErrorKind::DivisionByNonScalar
        ));
        assert!(matches!(
            a.parse("1/0").unwrap_err().kind,
            ParseErrorKind::DivisionByZero
        ));
        assert!(matches!(
            a.parse("s+1").unwrap_err().kind,
            ParseErrorKind::UnknownIdentifier(_)
        ));
        assert!(matches!(
            a.parse("t+").unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        ));
        assert!(matches!(
            a.parse("t)").unwrap_err().kind,
            ParseErrorKind::UnexpectedToken(_)
        ));
        assert!(matches!(
            a.parse("t#").unwrap_err().kind,
            ParseErrorKind::UnexpectedChar('#')
        ));
        assert_eq!(a.parse("(t").unwrap_err().pos, 2);
    }

    #[test]
    fn scalars_and_laurent_ring() {
        let f = Field::cyclotomic(6).unwrap();
        let params = BTreeMap::from([("q".to_string(), f.generator().unwrap())]);
        let r = Ring::new(f.clone(), vec!["c".into(), "K".into()], vec![false, true]).unwrap();
        let e = parse_ring_element(&r, &params, "q^-2*K + K^-1").unwrap();
        let back = parse_ring_element(&r, &params, &e.to_string()).unwrap();
        assert_eq!(e, back);
        let z = parse_scalar(&f, &params, "zeta6^2").unwrap();
        assert_eq!(z, f.generator().unwrap().pow(2).unwrap());
        assert!(parse_ring_element(&r, &params, "c^-1").is_err());
    }
}
