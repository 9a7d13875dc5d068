//! Exact evaluation of the parameter formulas stored in the catalog.
//!
//! The grammar covers rational literals, named parameters, `+ - * /`, integer
//! powers `^`, parentheses and the functions `sqrt(·)` (principal square root
//! of a rational) and `lam(·)` (the normalized ratio of the roots of
//! `μ² = μ + α`).  Values are elements of a quadratic field ([`Surd`]).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::classify::{lam, Surd};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Parameter values by name.
pub type Env = BTreeMap<String, Rational>;

/// A parsed formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Rational literal.
    Num(Rational),
    /// Named parameter.
    Var(String),
    /// Negation.
    Neg(Box<Expr>),
    /// Binary operation.
    Bin(char, Box<Expr>, Box<Expr>),
    /// Integer power.
    Pow(Box<Expr>, i32),
    /// Function application.
    Call(String, Box<Expr>),
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("expression '{}': {msg} at position {}", self.src, self.pos))
    }

    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
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

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            self.peek();
            let start = self.pos;
            while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: i32 = digits.parse().map_err(|_| self.err("expected an integer exponent"))?;
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: num_bigint::BigInt = digits.parse().map_err(|_| self.err("bad number"))?;
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if self.eat('(') {
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.err("expected ')'"));
                    }
                    return Ok(Expr::Call(name, Box::new(arg)));
                }
                Ok(Expr::Var(name))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s,
            chars: s.chars().collect(),
            pos: 0,
        };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Bin(op, a, b) => write!(f, "({a}{op}{b})"),
            Expr::Pow(a, e) => write!(f, "({a})^{e}"),
            Expr::Call(name, a) => write!(f, "{name}({a})"),
        }
    }
}

fn same_field(a: &Surd, b: &Surd) -> Result<()> {
    if !a.is_rational() && !b.is_rational() && a.radicand() != b.radicand() {
        return Err(Error::Parse(format!(
            "cannot combine {a} and {b}: different quadratic fields"
        )));
    }
    Ok(())
}

fn rational_arg(name: &str, v: &Surd) -> Result<Rational> {
    v.as_rational()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("{name}() needs a rational argument, got {v}")))
}

impl Expr {
    /// Evaluate exactly.
    pub fn eval(&self, env: &Env) -> Result<Surd> {
        Ok(match self {
            Expr::Num(n) => Surd::rational(n.clone()),
            Expr::Var(v) => Surd::rational(
                env.get(v)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("unbound parameter '{v}'")))?,
            ),
            Expr::Neg(e) => -&e.eval(env)?,
            Expr::Bin(op, a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                same_field(&x, &y)?;
                match op {
                    '+' => &x + &y,
                    '-' => &x - &y,
                    '*' => &x * &y,
                    _ => {
                        let inv = y
                            .inv()
                            .ok_or_else(|| Error::Parse(format!("division by zero in {self}")))?;
                        &x * &inv
                    }
                }
            }
            Expr::Pow(a, e) => {
                let x = a.eval(env)?;
                let base = if *e < 0 {
                    x.inv()
                        .ok_or_else(|| Error::Parse(format!("zero to a negative power in {self}")))?
                } else {
                    x
                };
                (0..e.unsigned_abs()).fold(Surd::one(), |acc, _| &acc * &base)
            }
            Expr::Call(name, a) => {
                let x = a.eval(env)?;
                match name.as_str() {
                    "sqrt" => Surd::sqrt(&rational_arg(name, &x)?),
                    "lam" => lam(&rational_arg(name, &x)?)?.lam,
                    _ => return Err(Error::Parse(format!("unknown function '{name}'"))),
                }
            }
        })
    }

    /// Evaluate, requiring a rational result.
    pub fn eval_rational(&self, env: &Env) -> Result<Rational> {
        let v = self.eval(env)?;
        v.as_rational()
            .cloned()
            .ok_or_else(|| Error::Parse(format!("{self} is irrational ({v}) where a rational is required")))
    }
}

/// Parse and evaluate in one step.
pub fn eval(src: &str, env: &Env) -> Result<Surd> {
    src.parse::<Expr>()?.eval(env)
}

/// Parse and evaluate to a rational.
pub fn eval_rational(src: &str, env: &Env) -> Result<Rational> {
    src.parse::<Expr>()?.eval_rational(env)
}

/// Environment binding `a` (the catalog's family parameter).
pub fn env_a(a: &Rational) -> Env {
    let mut e = Env::new();
    e.insert("a".to_string(), a.clone());
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_and_precedence() {
        let e = env_a(&q(2));
        assert_eq!(eval_rational("-2*(a+1)/(a+3)^2", &e).unwrap(), qf(-6, 25));
        assert_eq!(eval_rational("4*a/(27*(a+1)^2)", &e).unwrap(), qf(8, 243));
        assert_eq!(eval_rational("-2*(a^2+4*a+1)/(9*(a+1)^2)", &e).unwrap(), qf(-26, 81));
        assert_eq!(eval_rational("2^-2 - -1", &e).unwrap(), qf(5, 4));
        assert_eq!(eval_rational("1/2/2", &e).unwrap(), qf(1, 4));
    }

    #[test]
    fn surds_and_functions() {
        let e = Env::new();
        assert_eq!(eval_rational("lam(-3/16)", &e).unwrap(), qf(1, 3));
        assert_eq!(eval_rational("lam(-2/9)", &e).unwrap(), qf(1, 2));
        let s = eval("sqrt(2)*sqrt(2)", &e).unwrap();
        assert_eq!(s, Surd::rational(q(2)));
        assert!(eval("sqrt(2)+sqrt(3)", &e).is_err());
        assert!(eval_rational("sqrt(2)", &e).is_err());
    }

    #[test]
    fn errors_are_reported() {
        let e = Env::new();
        for bad in ["", "1+", "(1", "a", "1/0", "foo(1)", "2^x", "1 2"] {
            assert!(eval(bad, &e).is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn polynomial_identity(n in -50i64..50, d in 1i64..20) {
            let a = qf(n, d);
            let e = env_a(&a);
            let lhs = eval_rational("(a+1)^2 - (a^2 + 2*a + 1)", &e).unwrap();
            prop_assert!(lhs.is_zero());
            prop_assert_eq!(eval_rational("a*a*a", &e).unwrap(), eval_rational("a^3", &e).unwrap());
        }
    }
}
