use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use super::{Expr, Func};
use crate::error::ParseError;

const MAX_DEPTH: usize = 200;

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(vec!["operator", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError { offset: self.pos, expected }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, name: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(vec![name]))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(vec!["shallower nesting"]));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.power()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.power()?;
                lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
            } else if self.eat(b'/') {
                let rhs = self.power()?;
                lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.unary()?;
        if self.eat(b'^') {
            let n = self.int()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            self.enter()?;
            let e = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(e)));
        }
        self.primary()
    }

    fn int(&mut self) -> Result<i32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error(vec!["integer exponent"]));
        }
        if self.pos < self.src.len() && matches!(self.src[self.pos], b'.' | b'e' | b'E') {
            return Err(self.error(vec!["integer exponent"]));
        }
        let text = core::str::from_utf8(&self.src[digits..self.pos]).unwrap_or("");
        let n: i32 = text.parse().map_err(|_| ParseError {
            offset: start,
            expected: vec!["integer exponent in range"],
        })?;
        Ok(if negative { -n } else { n })
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let bytes = self.src;
        let mut i = self.pos;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            let exp_digits = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j == exp_digits {
                self.pos = j;
                return Err(self.error(vec!["exponent digits"]));
            }
            i = j;
        }
        self.pos = i;
        let text = core::str::from_utf8(&bytes[start..i]).unwrap_or("");
        let value: f64 = text
            .parse()
            .map_err(|_| ParseError { offset: start, expected: vec!["number"] })?;
        if !value.is_finite() {
            return Err(ParseError { offset: start, expected: vec!["finite number"] });
        }
        Ok(Expr::Lit(value))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let expected_primary = vec!["number", "u", "pi", "function", "("];
        let Some(c) = self.peek() else {
            return Err(self.error(expected_primary));
        };
        if c.is_ascii_digit() || c == b'.' {
            return self.number();
        }
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')', ")")?;
            return Ok(e);
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            match name {
                "u" => return Ok(Expr::Var),
                "pi" => return Ok(Expr::Lit(core::f64::consts::PI)),
                "pow" => {
                    self.expect(b'(', "(")?;
                    let base = self.expr()?;
                    self.expect(b',', ",")?;
                    let n = self.int()?;
                    self.expect(b')', ")")?;
                    return Ok(Expr::Pow(Box::new(base), n));
                }
                _ => {}
            }
            if let Some(f) = Func::from_name(name) {
                self.expect(b'(', "(")?;
                let arg = self.expr()?;
                self.expect(b')', ")")?;
                return Ok(Expr::Call(f, Box::new(arg)));
            }
            self.pos = start;
            return Err(self.error(expected_primary));
        }
        Err(self.error(expected_primary))
    }
}
