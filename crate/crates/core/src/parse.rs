//! Expression grammar for polynomials, rational functions and 1-forms.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | 'd' variable | 'd(' expr ')' | '(' expr ')'
//! ```
//!
//! `*` is mandatory between factors. A differential is written `d<var>`; the
//! spelling is only read as a differential when it is not itself a declared
//! variable. Products of two differentials are rejected.

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{FieldSpec, MultiPoly, RatFunc};
use crate::exterior::{PolyForm, RatForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("expression is not a 1-form")]
    NotGradeOne,
    #[error("expression is not a polynomial")]
    NotPolynomial,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::SyntaxError { pos, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Int(s.parse().expect("digits"))));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                out.push((pos, Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect())));
            }
            _ => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
                };
                out.push((pos, t));
                i += 1;
            }
        }
    }
    Ok(out)
}

/// Intermediate value: a function or a rational 1-form.
#[derive(Clone, Debug)]
enum Value {
    Func(RatFunc),
    Form(RatForm),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
    field: FieldSpec,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (Tok::Plus | Tok::Minus)) = self.peek().cloned() {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.term()?;
            let rhs = if op == Tok::Minus { negate(rhs) } else { rhs };
            acc = match (acc, rhs) {
                (Value::Func(a), Value::Func(b)) => Value::Func(&a + &b),
                (Value::Form(a), Value::Form(b)) => Value::Form(a.add(&b).expect("same shape")),
                _ => return Err(syntax(pos, "cannot add a function and a differential")),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ (Tok::Star | Tok::Slash)) = self.peek().cloned() {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.unary()?;
            acc = match (op, acc, rhs) {
                (Tok::Star, Value::Func(a), Value::Func(b)) => Value::Func(&a * &b),
                (Tok::Star, Value::Func(a), Value::Form(w)) | (Tok::Star, Value::Form(w), Value::Func(a)) => {
                    Value::Form(w.mul_fn(&a))
                }
                (Tok::Star, Value::Form(_), Value::Form(_)) => {
                    return Err(syntax(pos, "product of differentials is not a 1-form"))
                }
                (_, Value::Func(a), Value::Func(b)) => {
                    Value::Func(a.checked_div(&b).map_err(|_| ParseError::DivisionByZero)?)
                }
                (_, Value::Form(w), Value::Func(b)) => {
                    let inv = b.inverse().map_err(|_| ParseError::DivisionByZero)?;
                    Value::Form(w.mul_fn(&inv))
                }
                (_, _, Value::Form(_)) => return Err(syntax(pos, "cannot divide by a differential")),
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(negate(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        self.at += 1;
        let exp = match self.toks.get(self.at) {
            Some((_, Tok::Int(k))) => u32::try_from(k).map_err(|_| syntax(self.pos(), "exponent too large"))?,
            _ => return Err(syntax(self.pos(), "expected a non-negative integer exponent")),
        };
        self.at += 1;
        match base {
            Value::Func(f) => Ok(Value::Func(f.pow(exp))),
            Value::Form(_) => Err(syntax(pos, "cannot raise a differential to a power")),
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else { return Err(syntax(pos, "unexpected end of input")) };
        self.at += 1;
        match tok {
            Tok::Int(k) => Ok(Value::Func(RatFunc::constant(self.field, self.n(), self.field.from_bigint(&k)))),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect_rparen()?;
                Ok(v)
            }
            Tok::Ident(name) => {
                if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    return Ok(Value::Func(RatFunc::from_poly(MultiPoly::var(self.field, self.n(), i))));
                }
                if name == "d" && self.peek() == Some(&Tok::LParen) {
                    self.at += 1;
                    let inner = self.expr()?;
                    self.expect_rparen()?;
                    return match inner {
                        Value::Func(f) => Ok(Value::Form(RatForm::exact(&f))),
                        Value::Form(_) => Err(syntax(pos, "differential of a differential")),
                    };
                }
                if let Some(rest) = name.strip_prefix('d') {
                    if let Some(i) = self.vars.iter().position(|v| v == rest) {
                        return Ok(Value::Form(RatForm::dz(self.field, self.n(), i)));
                    }
                }
                Err(ParseError::UnknownVariable(name))
            }
            other => Err(syntax(pos, format!("unexpected token {other:?}"))),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::RParen) {
            self.at += 1;
            Ok(())
        } else {
            Err(syntax(self.pos(), "expected `)`"))
        }
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Func(f) => Value::Func(-&f),
        Value::Form(w) => Value::Form(w.neg()),
    }
}

fn parse_value(text: &str, vars: &[String], field: FieldSpec) -> Result<Value, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), vars, field };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse_ratfunc(text: &str, vars: &[String], field: FieldSpec) -> Result<RatFunc, ParseError> {
    match parse_value(text, vars, field)? {
        Value::Func(f) => Ok(f),
        Value::Form(_) => Err(syntax(0, "expected a function, found a differential form")),
    }
}

pub fn parse_poly(text: &str, vars: &[String], field: FieldSpec) -> Result<MultiPoly, ParseError> {
    parse_ratfunc(text, vars, field)?.as_poly().cloned().ok_or(ParseError::NotPolynomial)
}

/// A 1-form with rational coefficients.
pub fn parse_rat_form(text: &str, vars: &[String], field: FieldSpec) -> Result<RatForm, ParseError> {
    match parse_value(text, vars, field)? {
        Value::Form(w) => Ok(w),
        Value::Func(f) if f.is_zero() => Ok(RatForm::zero(field, vars.len(), 1)),
        Value::Func(_) => Err(ParseError::NotGradeOne),
    }
}

pub fn parse_form(text: &str, vars: &[String], field: FieldSpec) -> Result<PolyForm, ParseError> {
    parse_rat_form(text, vars, field)?.to_poly().map_err(|_| ParseError::NotPolynomial)
}

/// Parses `q` or `fp:<prime>`.
pub fn parse_field(text: &str) -> Result<FieldSpec, String> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let p = t
        .strip_prefix("fp:")
        .ok_or_else(|| format!("field must be `q` or `fp:<prime>`, got `{t}`"))?
        .parse::<u64>()
        .map_err(|e| format!("bad characteristic in `{t}`: {e}"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

/// Splits a comma-separated variable list, rejecting duplicates and bad names.
pub fn parse_vars(text: &str) -> Result<Vec<String>, String> {
    let vars: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    for (i, v) in vars.iter().enumerate() {
        let mut chars = v.chars();
        let ok = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && chars.all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(format!("invalid variable name `{v}`"));
        }
        if vars[..i].contains(v) {
            return Err(format!("duplicate variable `{v}`"));
        }
    }
    Ok(vars)
}
