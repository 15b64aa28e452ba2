// SPDX-License-Identifier: Apache-2.0

//! Expression trees over `1`, `+`, `*` and `-`.
//!
//! Every complexity value produced elsewhere in the crate comes with an
//! [`Expression`] witness that can be evaluated and counted independently.
//! Binary nodes are rendered fully parenthesized, so the text form is
//! `expr := "1" | "(" expr op expr ")"` with `op` one of `+ * -`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Operation set an expression may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `{1, +, *}`
    PlusTimes,
    /// `{1, +, *, -}`
    PlusTimesMinus,
}

impl Basis {
    /// Byte tag used by the table file format.
    pub fn code(self) -> u8 {
        match self {
            Basis::PlusTimes => 0,
            Basis::PlusTimesMinus => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Basis> {
        match code {
            0 => Some(Basis::PlusTimes),
            1 => Some(Basis::PlusTimesMinus),
            _ => None,
        }
    }

    pub fn allows_subtraction(self) -> bool {
        matches!(self, Basis::PlusTimesMinus)
    }

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Basis::PlusTimes => "plus",
            Basis::PlusTimesMinus => "minus",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" | "plus-times" => Ok(Basis::PlusTimes),
            "minus" | "plus-times-minus" => Ok(Basis::PlusTimesMinus),
            other => Err(format!("unknown basis `{other}` (expected plus or minus)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("subtraction produced a non-positive value ({minuend} - {subtrahend})")]
    NonPositiveSubterm { minuend: u64, subtrahend: u64 },
    #[error("value exceeds the 64-bit unsigned range")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input at byte {0}")]
    UnexpectedEnd(usize),
    #[error("unexpected character `{found}` at byte {at}")]
    Unexpected { found: char, at: usize },
    #[error("trailing input at byte {0}")]
    Trailing(usize),
}

/// A binary expression tree. Children are owned; the tree is immutable once
/// built and is `Send + Sync`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expression {
    One,
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
}

impl Expression {
    pub fn add(left: Expression, right: Expression) -> Expression {
        Expression::Add(Box::new(left), Box::new(right))
    }

    pub fn sub(left: Expression, right: Expression) -> Expression {
        Expression::Sub(Box::new(left), Box::new(right))
    }

    pub fn mul(left: Expression, right: Expression) -> Expression {
        Expression::Mul(Box::new(left), Box::new(right))
    }

    /// `1+(1+(...+1))` with `count` ones, right-nested. `count` must be positive.
    pub fn ones(count: u64) -> Expression {
        assert!(count > 0, "an expression needs at least one 1");
        let mut e = Expression::One;
        for _ in 1..count {
            e = Expression::add(Expression::One, e);
        }
        e
    }

    /// Arithmetic value. Fails on non-positive differences and on overflow.
    pub fn evaluate(&self) -> Result<u64, ExprError> {
        match self {
            Expression::One => Ok(1),
            Expression::Add(l, r) => l
                .evaluate()?
                .checked_add(r.evaluate()?)
                .ok_or(ExprError::Overflow),
            Expression::Mul(l, r) => l
                .evaluate()?
                .checked_mul(r.evaluate()?)
                .ok_or(ExprError::Overflow),
            Expression::Sub(l, r) => {
                let (a, b) = (l.evaluate()?, r.evaluate()?);
                if a <= b {
                    Err(ExprError::NonPositiveSubterm {
                        minuend: a,
                        subtrahend: b,
                    })
                } else {
                    Ok(a - b)
                }
            }
        }
    }

    /// Number of `One` leaves.
    pub fn count_ones(&self) -> u64 {
        match self {
            Expression::One => 1,
            Expression::Add(l, r) | Expression::Sub(l, r) | Expression::Mul(l, r) => {
                l.count_ones() + r.count_ones()
            }
        }
    }

    pub fn contains_subtraction(&self) -> bool {
        match self {
            Expression::One => false,
            Expression::Sub(..) => true,
            Expression::Add(l, r) | Expression::Mul(l, r) => {
                l.contains_subtraction() || r.contains_subtraction()
            }
        }
    }

    /// True iff no node is forbidden by `basis` and every subterm evaluates
    /// to a positive 64-bit integer.
    pub fn validate(&self, basis: Basis) -> bool {
        if !basis.allows_subtraction() && self.contains_subtraction() {
            return false;
        }
        self.evaluate().is_ok()
    }

    /// Fully parenthesized infix text.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Expression, ParseError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let e = parse_at(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(ParseError::Trailing(pos));
        }
        Ok(e)
    }
}

fn parse_at(bytes: &[u8], pos: &mut usize) -> Result<Expression, ParseError> {
    match bytes.get(*pos) {
        None => Err(ParseError::UnexpectedEnd(*pos)),
        Some(b'1') => {
            *pos += 1;
            Ok(Expression::One)
        }
        Some(b'(') => {
            *pos += 1;
            let left = parse_at(bytes, pos)?;
            let op = *bytes.get(*pos).ok_or(ParseError::UnexpectedEnd(*pos))?;
            if !matches!(op, b'+' | b'*' | b'-') {
                return Err(ParseError::Unexpected {
                    found: op as char,
                    at: *pos,
                });
            }
            *pos += 1;
            let right = parse_at(bytes, pos)?;
            match bytes.get(*pos) {
                Some(b')') => *pos += 1,
                Some(&c) => {
                    return Err(ParseError::Unexpected {
                        found: c as char,
                        at: *pos,
                    })
                }
                None => return Err(ParseError::UnexpectedEnd(*pos)),
            }
            Ok(match op {
                b'+' => Expression::add(left, right),
                b'*' => Expression::mul(left, right),
                _ => Expression::sub(left, right),
            })
        }
        Some(&c) => Err(ParseError::Unexpected {
            found: c as char,
            at: *pos,
        }),
    }
}

impl FromStr for Expression {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expression::parse(s)
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, op, r) = match self {
            Expression::One => return f.write_str("1"),
            Expression::Add(l, r) => (l, '+', r),
            Expression::Sub(l, r) => (l, '-', r),
            Expression::Mul(l, r) => (l, '*', r),
        };
        write!(f, "({l}{op}{r})")
    }
}
