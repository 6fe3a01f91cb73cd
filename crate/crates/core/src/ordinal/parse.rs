use super::{Ordinal, OrdinalError, DEFAULT_NESTING_LIMIT};

/// Parses an ordinal literal such as `w^2*3 + w + 5` or `w^(w^w)`.
///
/// Terms may appear in any order; the result is the ordinal sum, so
/// `1 + w` parses to `w`.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, OrdinalError> {
    parse_ordinal_with_limit(text, DEFAULT_NESTING_LIMIT)
}

pub fn parse_ordinal_with_limit(text: &str, limit: usize) -> Result<Ordinal, OrdinalError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        limit,
    };
    let value = p.expr(0)?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    limit: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> OrdinalError {
        OrdinalError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self, depth: usize) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term(depth)?;
        while self.eat(b'+') {
            let t = self.term(depth)?;
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    fn term(&mut self, depth: usize) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') {
                    if depth + 1 > self.limit {
                        return Err(OrdinalError::NestingTooDeep { limit: self.limit });
                    }
                    if self.eat(b'(') {
                        let e = self.expr(depth + 1)?;
                        if !self.eat(b')') {
                            return Err(self.err("expected ')'"));
                        }
                        e
                    } else {
                        self.atom()?
                    }
                } else {
                    Ordinal::one()
                };
                let coeff = if self.eat(b'*') { self.nat()? } else { 1 };
                Ok(Ordinal::omega_pow_mul(exp, coeff))
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(_) => Err(self.err("expected 'w' or a natural number")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            _ => Err(self.err("expected exponent: 'w', a natural, or '('")),
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse::<u64>().map_err(|_| OrdinalError::Syntax {
            pos: start,
            msg: "natural number out of range".into(),
        })
    }
}
