//! Recursive-descent parser for group specs.
//!
//! ```text
//! spec := item ("," item)*
//! item := term ("^" int)?
//! term := "c(" int ")" | "sd(" int ")" | "wr(" term "," int ")" | "prod(" item ("," item)* ")"
//! ```
//!
//! A spec with more than one item, or with an exponent, is an implicit
//! product. Whitespace is ignored.

use super::{GroupError, GroupSpec};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, GroupError> {
        Err(GroupError::Syntax { offset, message: message.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), GroupError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(self.pos, format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(self.pos, format!("expected '{}', found end of input", c as char)),
        }
    }

    fn int(&mut self) -> Result<(u64, usize), GroupError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<u64>() {
            Ok(v) => Ok((v, start)),
            Err(_) => self.err(start, "integer out of range"),
        }
    }

    fn ident(&mut self) -> Result<(&'a str, usize), GroupError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected c, sd, wr or prod");
        }
        Ok((std::str::from_utf8(&self.src[start..self.pos]).expect("ascii letters"), start))
    }

    fn term(&mut self) -> Result<GroupSpec, GroupError> {
        let (name, at) = self.ident()?;
        self.expect(b'(')?;
        let g = match name {
            "c" => {
                let (n, at) = self.int()?;
                if n == 0 {
                    return Err(GroupError::Semantic(format!("c(0) at byte {at}: order must be at least 1")));
                }
                GroupSpec::Cyclic(n)
            }
            "sd" => {
                let (n, at) = self.int()?;
                if !n.is_power_of_two() || n < 16 {
                    return Err(GroupError::Semantic(format!(
                        "sd({n}) at byte {at}: order must be 2^(atilde+2) with atilde >= 2"
                    )));
                }
                GroupSpec::SemiDihedral { atilde: n.trailing_zeros() - 2 }
            }
            "wr" => {
                let base = self.term()?;
                self.expect(b',')?;
                let (p, at) = self.int()?;
                if p != 2 && p != 3 {
                    return Err(GroupError::Semantic(format!(
                        "wreath prime {p} at byte {at}: only 2 and 3 are supported"
                    )));
                }
                GroupSpec::Wreath(Box::new(base), p as u32)
            }
            "prod" => {
                let mut items = vec![self.item()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.item()?);
                }
                GroupSpec::Product(items)
            }
            other => return self.err(at, format!("unknown constructor '{other}'")),
        };
        self.expect(b')')?;
        Ok(g)
    }

    fn item(&mut self) -> Result<(GroupSpec, u32), GroupError> {
        let g = self.term()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let (m, at) = self.int()?;
            if m == 0 {
                return Err(GroupError::Semantic(format!("multiplicity 0 at byte {at}")));
            }
            let m = u32::try_from(m).map_err(|_| GroupError::Syntax {
                offset: at,
                message: "multiplicity out of range".into(),
            })?;
            return Ok((g, m));
        }
        Ok((g, 1))
    }
}

/// Parses the grammar in the module docs.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, GroupError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut items = vec![p.item()?];
    while p.peek() == Some(b',') {
        p.pos += 1;
        items.push(p.item()?);
    }
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected '{}'", c as char));
    }
    if items.len() == 1 && items[0].1 == 1 {
        Ok(items.pop().expect("one item").0)
    } else {
        Ok(GroupSpec::Product(items))
    }
}
