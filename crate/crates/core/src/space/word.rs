use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest binary string a [`Word`] can hold.
pub const MAX_WORD_LEN: usize = 64;

/// A finite binary string naming the cylinder `[s]` of Cantor space.
///
/// Characters are packed most-significant-bit first, so the derived
/// ordering on `(bits, len)` is the lexicographic order on strings with a
/// prefix sorting before its extensions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    bits: u64,
    len: u8,
}

impl Word {
    /// The empty string; its cylinder is the whole space.
    pub const ROOT: Word = Word { bits: 0, len: 0 };

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// Character at position `i` (0 or 1).
    pub fn bit(self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.bits >> (63 - i)) & 1) as u8
    }

    /// Appends one character. Panics past [`MAX_WORD_LEN`].
    pub fn child(self, b: u8) -> Word {
        assert!(self.len() < MAX_WORD_LEN, "word too long");
        let bits = if b == 0 {
            self.bits
        } else {
            self.bits | (1u64 << (63 - self.len()))
        };
        Word {
            bits,
            len: self.len + 1,
        }
    }

    pub fn try_child(self, b: u8) -> Result<Word> {
        if self.len() >= MAX_WORD_LEN {
            return Err(Error::Unsupported(format!(
                "binary strings longer than {MAX_WORD_LEN}"
            )));
        }
        Ok(self.child(b))
    }

    fn mask(len: usize) -> u64 {
        if len == 0 {
            0
        } else {
            u64::MAX << (64 - len)
        }
    }

    /// Prefix of length `n` (clamped to the word length).
    pub fn prefix(self, n: usize) -> Word {
        let n = n.min(self.len());
        Word {
            bits: self.bits & Self::mask(n),
            len: n as u8,
        }
    }

    /// Drops the first `n` characters.
    pub fn suffix_from(self, n: usize) -> Word {
        let n = n.min(self.len());
        Word {
            bits: if n == 64 { 0 } else { self.bits << n },
            len: self.len - n as u8,
        }
    }

    pub fn is_prefix_of(self, other: Word) -> bool {
        self.len <= other.len && other.bits & Self::mask(self.len()) == self.bits
    }

    /// True when the two cylinders intersect, i.e. one word extends the other.
    pub fn comparable(self, other: Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn concat(self, other: Word) -> Result<Word> {
        if self.len() + other.len() > MAX_WORD_LEN {
            return Err(Error::Unsupported(format!(
                "binary strings longer than {MAX_WORD_LEN}"
            )));
        }
        let bits = if self.len() == 64 {
            self.bits
        } else {
            self.bits | (other.bits >> self.len())
        };
        Ok(Word {
            bits,
            len: self.len + other.len,
        })
    }

    /// `1^k`.
    pub fn ones(k: usize) -> Word {
        assert!(k <= MAX_WORD_LEN);
        Word {
            bits: Self::mask(k),
            len: k as u8,
        }
    }

    /// Number of leading ones.
    pub fn leading_ones(self) -> usize {
        (self.bits.leading_ones() as usize).min(self.len())
    }

    /// True if every character is 0.
    pub fn all_zero(self) -> bool {
        self.bits == 0
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < 64);
        (0u64..(1u64 << n)).map(move |v| Word {
            bits: if n == 0 { 0 } else { v << (64 - n) },
            len: n as u8,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut w = Word::ROOT;
        for c in s.chars() {
            let b = match c {
                '0' => 0,
                '1' => 1,
                _ => return Err(Error::Parse(format!("invalid binary string {s:?}"))),
            };
            w = w.try_child(b)?;
        }
        Ok(w)
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a word literal; panics on malformed input. Test and fixture helper.
pub fn w(s: &str) -> Word {
    s.parse().expect("binary string literal")
}
