//! Recursive-descent parser for quantum-plane expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' nat]
//! atom   := nat | 'q' | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! `/` divides by a nonzero scalar subexpression; `^` takes a nonnegative
//! decimal exponent.  Products are normalized through the commutation rule
//! as they are built, so `x*y` parses to `q*y*x`.  The canonical printers
//! emit strings inside this grammar, and print -> parse -> print is the
//! identity on their output.

use qplane::{FieldMode, QElem};

/// Syntax or semantic error at a byte offset into the source.
#[derive(Debug)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub fn parse_expr(src: &str, mode: FieldMode) -> Result<QElem, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, mode };
    p.skip_ws();
    let e = p.expr()?;
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mode: FieldMode,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Consumes `b` plus trailing whitespace when it is next.
    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QElem, ParseError> {
        let mut acc = if self.eat(b'-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QElem, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let rhs = self.factor()?;
                acc = div_scalar(&acc, &rhs).ok_or(ParseError {
                    pos: at,
                    msg: "division is only defined by nonzero scalar factors".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<QElem, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            Ok(base.pow(self.nat()?))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QElem, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'q') => self.leaf(QElem::scalar(self.mode, self.mode.q())),
            Some(b'x') => self.leaf(QElem::var_x(self.mode)),
            Some(b'y') => self.leaf(QElem::var_y(self.mode)),
            Some(b) if b.is_ascii_digit() => {
                let v = self.digits::<i64>("integer literal out of range")?;
                Ok(QElem::scalar(self.mode, self.mode.integer(v)))
            }
            _ => Err(self.err("expected a number, 'q', 'x', 'y', or '('")),
        }
    }

    fn leaf(&mut self, e: QElem) -> Result<QElem, ParseError> {
        self.pos += 1;
        self.skip_ws();
        Ok(e)
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        self.digits::<u32>("exponent out of range")
    }

    fn digits<T: std::str::FromStr>(&mut self, overflow: &str) -> Result<T, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a decimal number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v = s.parse().map_err(|_| ParseError { pos: start, msg: overflow.to_string() })?;
        self.skip_ws();
        Ok(v)
    }
}

/// Quotient by an x- and y-degree-zero element; `None` when the divisor has
/// positive degree or is zero.
fn div_scalar(lhs: &QElem, rhs: &QElem) -> Option<QElem> {
    let mut c = None;
    for (i, j, v) in rhs.terms() {
        if (i, j) != (0, 0) {
            return None;
        }
        c = Some(v.clone());
    }
    Some(lhs.scalar_mul(&c?.inv().ok()?))
}
