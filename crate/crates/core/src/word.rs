//! Words in the generators, e.g. `ab^2`, `(ab)^3`, `A b`, `(a b^-1)^-2`.
//!
//! Letters `a`, `b` are the generators, `A`, `B` their inverses and `1` the
//! identity. Juxtaposition multiplies, `^k` raises a letter or parenthesised
//! group to an integer power. Whitespace is ignored.

use crate::error::{Error, Result};
use crate::ggs::{make_a, make_b, DefiningVector};
use crate::portrait::{Portrait, TreeShape};

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
    a: Portrait,
    b: Portrait,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn product(&mut self) -> Result<Portrait> {
        let mut acc = Portrait::identity(self.a.shape());
        while let Some(c) = self.peek() {
            if c == b')' {
                break;
            }
            let factor = self.factor()?;
            acc = acc.compose(&factor)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Portrait> {
        let base = match self.peek() {
            Some(b'a') => self.a.clone(),
            Some(b'b') => self.b.clone(),
            Some(b'A') => self.a.inverse(),
            Some(b'B') => self.b.inverse(),
            Some(b'1') => Portrait::identity(self.a.shape()),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.product()?;
                if self.peek() != Some(b')') {
                    return self.fail("expected ')'");
                }
                inner
            }
            Some(c) => return self.fail(format!("unexpected character '{}'", c as char)),
            None => return self.fail("unexpected end of input"),
        };
        self.pos += 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.exponent()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.fail("expected an integer exponent");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().or_else(|_| {
            self.pos = start;
            self.fail("exponent out of range")
        })
    }
}

/// Evaluates `s` as an element of `G_n` at the depth of `shape`.
pub fn parse_word(s: &str, v: &DefiningVector, shape: TreeShape) -> Result<Portrait> {
    let mut parser = Parser {
        src: s.as_bytes(),
        pos: 0,
        a: make_a(shape),
        b: make_b(v, shape)?,
    };
    let value = parser.product()?;
    if parser.peek().is_some() {
        return parser.fail("unbalanced ')'");
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (DefiningVector, TreeShape, Portrait, Portrait) {
        let v = DefiningVector::new(3, &[1, -1]).unwrap();
        let shape = TreeShape::new(3, 3).unwrap();
        let a = make_a(shape);
        let b = make_b(&v, shape).unwrap();
        (v, shape, a, b)
    }

    #[test]
    fn evaluates_words() {
        let (v, shape, a, b) = setup();
        let w = |s| parse_word(s, &v, shape).unwrap();
        assert_eq!(w("ab^2"), a.compose(&b.pow(2)).unwrap());
        assert_eq!(w("(ab)^3"), a.compose(&b).unwrap().pow(3));
        assert_eq!(w("A b"), a.inverse().compose(&b).unwrap());
        assert_eq!(w("A b").order(), 9);
        assert_eq!(w(""), Portrait::identity(shape));
        assert_eq!(w("1"), Portrait::identity(shape));
        assert_eq!(w("a^-1"), w("A"));
        assert_eq!(w("(a b^-1)^-2"), w("(b a^-1)^2"));
        assert_eq!(w("B^ 2"), b.pow(-2));
        assert_eq!(w("((ab)(ba))"), w("abba"));
    }

    #[test]
    fn inverse_of_a_inverse_b() {
        // (a^{-1}b)^{-1} = (ab^{-1})^b
        let (v, shape, ..) = setup();
        let w = |s| parse_word(s, &v, shape).unwrap();
        assert_eq!(w("(Ab)^-1"), w("B(aB)b"));
    }

    #[test]
    fn reports_positions() {
        let (v, shape, ..) = setup();
        let err = |s| parse_word(s, &v, shape).unwrap_err();
        assert_eq!(err("abx"), Error::Parse { pos: 2, msg: "unexpected character 'x'".into() });
        assert!(matches!(err("(ab"), Error::Parse { pos: 3, .. }));
        assert!(matches!(err("ab)"), Error::Parse { pos: 2, .. }));
        assert!(matches!(err("a^"), Error::Parse { pos: 2, .. }));
        assert!(matches!(err("a^-"), Error::Parse { pos: 2, .. }));
        assert!(matches!(err("^2"), Error::Parse { pos: 0, .. }));
    }
}
