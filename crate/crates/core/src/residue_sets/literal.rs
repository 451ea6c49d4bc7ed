//! The set-literal text format: `{0,5,6,11} mod 12` for a residue set,
//! `{0,4,8,9,13,17}` for a set of integers. Whitespace is ignored.

use std::fmt;
use std::str::FromStr;

use super::{IntegerSet, ResidueSet};
use crate::error::{Error, Result};

/// A parsed literal, with or without a modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetLiteral {
    pub elements: Vec<u64>,
    pub modulus: Option<u64>,
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Self { chars, pos: 0, src }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |(i, _)| *i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(Error::parse(self.offset(), format!("expected '{want}', found '{c}'"))),
            None => Err(Error::parse(self.offset(), format!("expected '{want}', found end of input"))),
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.offset();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(Error::parse(start, "expected a decimal number"));
        }
        digits.parse().map_err(|_| Error::parse(start, format!("number {digits} out of range")))
    }
}

impl FromStr for SetLiteral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.expect('{')?;
        let mut elements = Vec::new();
        if cur.peek() != Some('}') {
            loop {
                elements.push(cur.number()?);
                match cur.peek() {
                    Some(',') => cur.pos += 1,
                    _ => break,
                }
            }
        }
        cur.expect('}')?;
        let modulus = if cur.peek().is_some() {
            for c in ['m', 'o', 'd'] {
                cur.expect(c)?;
            }
            let at = cur.offset();
            let n = cur.number()?;
            if n == 0 {
                return Err(Error::parse(at, "modulus must be positive"));
            }
            Some(n)
        } else {
            None
        };
        if let Some(c) = cur.peek() {
            return Err(Error::parse(cur.offset(), format!("unexpected trailing '{c}'")));
        }
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::parse(0, format!("duplicate element {}", w[0])));
        }
        Ok(SetLiteral { elements, modulus })
    }
}

impl SetLiteral {
    /// Interprets the literal as a residue set. An explicit `fallback`
    /// modulus is used when the literal carries none; if both are present
    /// they must agree.
    pub fn into_residue_set(self, fallback: Option<u64>) -> Result<ResidueSet> {
        let modulus = match (self.modulus, fallback) {
            (Some(a), Some(b)) if a != b => return Err(Error::ModulusMismatch { left: a, right: b }),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::parse(0, "a modulus is required (\"{...} mod N\")")),
        };
        ResidueSet::new(modulus, self.elements)
    }

    pub fn into_integer_set(self) -> IntegerSet {
        IntegerSet::new(self.elements)
    }
}

impl FromStr for IntegerSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lit: SetLiteral = s.parse()?;
        if lit.modulus.is_some() {
            return Err(Error::parse(0, "integer sets carry no modulus"));
        }
        Ok(lit.into_integer_set())
    }
}

impl FromStr for ResidueSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<SetLiteral>()?.into_residue_set(None)
    }
}

fn write_elements(f: &mut fmt::Formatter<'_>, elements: &[u64]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, e) in elements.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_elements(f, self.elements())
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_elements(f, self.elements())?;
        write!(f, " mod {}", self.modulus())
    }
}
