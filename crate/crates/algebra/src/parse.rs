//! Small recursive-descent reader for rational-function literals such as
//! `(a5 + a9)/2` or `w1^-2*(a1^2 + a2^2)`. `I` denotes the imaginary unit unless
//! the table declares a symbol of that name.

use num_bigint::BigInt;

use crate::{AlgebraError, BigRat, GaussRat, RatFn, SymbolTable};

pub fn parse_ratfn(text: &str, table: &SymbolTable) -> Result<RatFn, AlgebraError> {
    let mut p = Reader { src: text.as_bytes(), pos: 0, table };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a SymbolTable,
}

impl Reader<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { col: self.pos + 1, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<RatFn, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| AlgebraError::Parse { col: at + 1, msg: "division by zero".into() })?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFn, AlgebraError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFn, AlgebraError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let mut negative = false;
        let mut paren = false;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            paren = true;
        }
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negative = true;
        }
        self.skip_ws();
        let e = self.integer()?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected `)`"));
            }
            self.pos += 1;
        }
        let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
        let v = base.pow(e);
        if negative {
            v.inv().map_err(|_| self.err("negative power of zero"))
        } else {
            Ok(v)
        }
    }

    fn integer(&mut self) -> Result<u64, AlgebraError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<RatFn, AlgebraError> {
        let n = self.table.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let value: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RatFn::constant(n, GaussRat::real(BigRat::from_integer(value))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.table.index_of(name) {
                    Some(idx) => Ok(RatFn::var(n, idx)),
                    None if name == "I" => Ok(RatFn::constant(n, GaussRat::i())),
                    None => Err(AlgebraError::Parse { col: start + 1, msg: format!("unknown symbol `{name}`") }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SymbolKind;

    fn table() -> SymbolTable {
        SymbolTable::from_names(&[("w1", SymbolKind::Frequency), ("a5", SymbolKind::Coefficient), ("a9", SymbolKind::Coefficient)])
            .unwrap()
    }

    #[test]
    fn reads_rational_expressions() {
        let t = table();
        let v = parse_ratfn("(a5 + a9)/2", &t).unwrap();
        let w = parse_ratfn("a5/2 + a9*1/2", &t).unwrap();
        assert_eq!(v, w);
        let x = parse_ratfn("w1^-2 * w1^(2)", &t).unwrap();
        assert!(x.is_one());
        assert_eq!(parse_ratfn("I*I", &t).unwrap(), RatFn::from_int(3, -1));
    }

    #[test]
    fn reports_positions() {
        let t = table();
        match parse_ratfn("a5 + b", &t) {
            Err(AlgebraError::Parse { col, .. }) => assert_eq!(col, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_ratfn("(a5", &t).is_err());
        assert!(parse_ratfn("a5/0", &t).is_err());
    }
}
