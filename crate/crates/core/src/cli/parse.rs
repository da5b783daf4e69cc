//! Group expressions: `Z`, `Z^r`, `Z/n` and `0`, joined by `+`.
//! Whitespace is ignored everywhere.

use crate::abgroup::{canonicalize, FgAbGroup};
use crate::error::{Error, Result};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("number {text} is too large"),
        })
    }
}

/// Parses an expression such as `Z^2 + Z/6 + Z/4` into canonical form.
pub fn parse_group(expr: &str) -> Result<FgAbGroup> {
    let mut cur = Cursor {
        bytes: expr.as_bytes(),
        pos: 0,
    };
    let mut orders = Vec::new();
    let mut rank = 0usize;
    loop {
        match cur.peek() {
            Some(b'Z') => {
                cur.pos += 1;
                if cur.eat(b'^') {
                    let r = cur.number()?;
                    rank += usize::try_from(r).or_else(|_| cur.err("rank too large"))?;
                } else if cur.eat(b'/') {
                    let n = cur.number()?;
                    if n == 0 {
                        return Err(Error::Domain("Z/0 is not a finite cyclic group; write Z".into()));
                    }
                    orders.push(n);
                } else {
                    rank += 1;
                }
            }
            Some(b'0') => {
                if cur.number()? != 0 {
                    return cur.err("only 0 may appear as a bare number");
                }
            }
            Some(c) => return cur.err(format!("unexpected '{}'", c as char)),
            None => return cur.err("expected a term"),
        }
        match cur.peek() {
            None => break,
            Some(b'+') => cur.pos += 1,
            Some(c) => return cur.err(format!("expected '+', found '{}'", c as char)),
        }
    }
    canonicalize(&orders, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(orders: &[u64], rank: usize) -> FgAbGroup {
        canonicalize(orders, rank).unwrap()
    }

    #[test]
    fn accepts_grammar() {
        assert_eq!(parse_group("Z/2 + Z/4").unwrap(), canon(&[2, 4], 0));
        assert_eq!(parse_group("Z^2 + Z/6").unwrap(), canon(&[6], 2));
        assert_eq!(parse_group("Z").unwrap(), FgAbGroup::free(1));
        assert_eq!(parse_group("  Z /2+Z/ 3 ").unwrap(), canon(&[6], 0));
        assert_eq!(parse_group("Z + Z + Z/1").unwrap(), FgAbGroup::free(2));
        assert_eq!(parse_group("0").unwrap(), FgAbGroup::trivial());
        assert_eq!(parse_group("Z^0").unwrap(), FgAbGroup::trivial());
        assert_eq!(parse_group("Z/4+Z/4").unwrap(), canon(&[4, 4], 0));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "Z/", "Z +", "Q", "Z/2 Z/4", "2", "Z^x", "Z/99999999999999999999999"] {
            assert!(
                matches!(parse_group(bad), Err(Error::Parse { .. })),
                "{bad:?} should not parse"
            );
        }
        assert!(matches!(parse_group("Z/0"), Err(Error::Domain(_))));
    }

    #[test]
    fn canonical_strings_reparse() {
        for g in crate::abgroup::enumerate_groups(64) {
            assert_eq!(parse_group(&g.to_string()).unwrap(), g);
        }
        let g = canon(&[2, 6, 12], 3);
        assert_eq!(parse_group(&g.to_string()).unwrap(), g);
    }
}
