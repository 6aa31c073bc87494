//! Recursive-descent parser for the scalar / rational-function grammar.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := ('+' | '-') unary | power
//! power    := atom ('^' exponent)?
//! exponent := ['+' | '-'] integer | '(' ['+' | '-'] integer ')'
//! atom     := integer | 'z' | 't' | '(' expr ')'
//! ```
//!
//! `z` is zeta_n for the active conductor; `t` is the function variable and is
//! only accepted when parsing rational functions. The Unicode minus sign is
//! accepted as `-`.

use num::{BigInt, BigRational};

use crate::cyclofield::Cyc;
use crate::error::{Error, Result};
use crate::ratfunc::RatFn;

pub(crate) trait ExprValue: Sized {
    fn constant(value: BigRational, conductor: u32) -> Self;
    fn zeta(conductor: u32) -> Self;
    fn variable(conductor: u32) -> Option<Self>;
    fn add(&self, rhs: &Self) -> Result<Self>;
    fn sub(&self, rhs: &Self) -> Result<Self>;
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn pow(&self, exp: i64) -> Result<Self>;
}

impl ExprValue for Cyc {
    fn constant(value: BigRational, conductor: u32) -> Self {
        Cyc::from_rational(value, conductor)
    }
    fn zeta(conductor: u32) -> Self {
        Cyc::zeta(conductor)
    }
    fn variable(_: u32) -> Option<Self> {
        None
    }
    fn add(&self, rhs: &Self) -> Result<Self> {
        self.try_add(rhs)
    }
    fn sub(&self, rhs: &Self) -> Result<Self> {
        self.try_sub(rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        self.try_div(rhs)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, exp: i64) -> Result<Self> {
        Cyc::pow(self, exp)
    }
}

impl ExprValue for RatFn {
    fn constant(value: BigRational, conductor: u32) -> Self {
        RatFn::constant(Cyc::from_rational(value, conductor))
    }
    fn zeta(conductor: u32) -> Self {
        RatFn::constant(Cyc::zeta(conductor))
    }
    fn variable(conductor: u32) -> Option<Self> {
        Some(RatFn::t(conductor))
    }
    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(RatFn::add(self, rhs))
    }
    fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(RatFn::sub(self, rhs))
    }
    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(RatFn::mul(self, rhs))
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        RatFn::div(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFn::neg(self)
    }
    fn pow(&self, exp: i64) -> Result<Self> {
        RatFn::pow(self, exp)
    }
}

pub(crate) fn parse_scalar(src: &str, conductor: u32) -> Result<Cyc> {
    Parser::new(src, conductor).parse_all()
}

pub(crate) fn parse_ratfn(src: &str, conductor: u32) -> Result<RatFn> {
    Parser::new(src, conductor).parse_all()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    conductor: u32,
}

impl Parser {
    fn new(src: &str, conductor: u32) -> Parser {
        let chars = src
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        Parser {
            chars,
            pos: 0,
            conductor,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all<V: ExprValue>(mut self) -> Result<V> {
        if self.peek().is_none() {
            return self.error("empty expression");
        }
        let v = self.expr()?;
        match self.peek() {
            None => Ok(v),
            Some(c) => self.error(format!("unexpected character '{c}'")),
        }
    }

    fn expr<V: ExprValue>(&mut self) -> Result<V> {
        let mut acc: V = self.term()?;
        loop {
            if self.eat('+') {
                acc = ExprValue::add(&acc, &self.term()?)?;
            } else if self.eat('-') {
                acc = ExprValue::sub(&acc, &self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<V: ExprValue>(&mut self) -> Result<V> {
        let mut acc: V = self.unary()?;
        loop {
            if self.eat('*') {
                acc = ExprValue::mul(&acc, &self.unary()?)?;
            } else if self.eat('/') {
                acc = ExprValue::div(&acc, &self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<V: ExprValue>(&mut self) -> Result<V> {
        if self.eat('-') {
            Ok(ExprValue::neg(&self.unary::<V>()?))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power<V: ExprValue>(&mut self) -> Result<V> {
        let base: V = self.atom()?;
        if self.eat('^') {
            let exp = self.exponent()?;
            ExprValue::pow(&base, exp)
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.error("expected integer exponent");
        }
        let value: i64 = match digits.parse() {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.error("exponent out of range");
            }
        };
        if paren && !self.eat(')') {
            return self.error("expected ')'");
        }
        Ok(if negative { -value } else { value })
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.chars.get(self.pos).copied().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn atom<V: ExprValue>(&mut self) -> Result<V> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let value: BigInt = digits.parse().expect("ascii digits");
                Ok(V::constant(BigRational::from_integer(value), self.conductor))
            }
            Some('z') => {
                self.pos += 1;
                Ok(V::zeta(self.conductor))
            }
            Some('t') => match V::variable(self.conductor) {
                Some(v) => {
                    self.pos += 1;
                    Ok(v)
                }
                None => self.error("variable 't' is not allowed in a scalar expression"),
            },
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(v)
            }
            Some(c) => self.error(format!("unexpected character '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }
}
