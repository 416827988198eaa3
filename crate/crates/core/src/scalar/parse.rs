//! Recursive-descent parser for scalar expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' nonneg-integer)?
//! atom   := integer | variable | '(' expr ')' | '-' atom
//! ```
//!
//! Whitespace is insignificant. Integers are unbounded. Variables must be
//! declared by the field descriptor; parsing into a rational or prime field
//! admits no variables at all.

use num::BigInt;

use super::{FieldDescriptor, Scalar, ScalarError};

/// Parses `input` as a scalar of `field`. Errors carry byte positions.
pub fn parse_scalar(input: &str, field: &FieldDescriptor) -> Result<Scalar, ScalarError> {
    let mut parser = Parser { bytes: input.as_bytes(), pos: 0, field };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    field: &'a FieldDescriptor,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> ScalarError {
        ScalarError::Parse { position: self.pos, message: message.to_string() }
    }

    fn error_at(&self, position: usize, message: String) -> ScalarError {
        ScalarError::Parse { position, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut value = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    value = value.add(&rhs).expect("same field");
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    value = value.sub(&rhs).expect("same field");
                }
                _ => return Ok(value),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut value = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    value = value.mul(&rhs).expect("same field");
                }
                Some(b'/') => {
                    let op_pos = self.pos;
                    self.pos += 1;
                    let rhs = self.factor()?;
                    value = value
                        .div(&rhs)
                        .map_err(|_| self.error_at(op_pos, "division by zero".to_string()))?;
                }
                _ => return Ok(value),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        let value = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
            let exp: u32 = digits
                .parse()
                .map_err(|_| self.error_at(start, "exponent too large".to_string()))?;
            return Ok(value.pow(exp));
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            Some(b'(') => {
                self.pos += 1;
                let value = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(value)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let n = BigInt::parse_bytes(digits.as_bytes(), 10)
                    .expect("digits form an integer");
                Ok(Scalar::from_bigint(&n, self.field))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_lowercase()
                        || self.bytes[self.pos].is_ascii_digit())
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                Scalar::variable(name, self.field)
                    .map_err(|_| self.error_at(start, format!("unknown variable `{name}`")))
            }
            _ => Err(self.error("expected an integer, variable, `(` or `-`")),
        }
    }
}
