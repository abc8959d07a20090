//! Strings over small runtime alphabets, edit distance, scored global
//! alignment and subsequence utilities.

mod align;
mod lcs;
mod score;

pub use align::{edit_distance, edit_distance_within, global_alignment, global_alignment_score, Alignment};
pub use lcs::{is_subsequence, lcs_multi, subsequence_edit_identity, LCS_MAX_FIRST_LEN, LCS_MAX_STRINGS};
pub use score::{Score, ScoringScheme};

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Character written for a gap column.
pub const GAP_CHAR: char = '-';

/// A symbol code; indexes into an [`Alphabet`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Symbol(pub u8);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One entry of a gapped row; `None` is the gap symbol.
pub type Gapped = Option<Symbol>;

/// An ordered, possibly empty sequence of symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Str(Vec<Symbol>);

impl Str {
    pub fn new() -> Self {
        Str(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        Str(symbols)
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &[Symbol]) {
        self.0.extend_from_slice(other);
    }

    /// 1-based access, `S[j]` for `j = 1..=len`.
    pub fn at(&self, j: usize) -> Option<Symbol> {
        j.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn concat<'a, I: IntoIterator<Item = &'a Str>>(parts: I) -> Str {
        let mut out = Str::new();
        for p in parts {
            out.extend_from(p);
        }
        out
    }

    pub fn repeat(&self, times: usize) -> Str {
        Str(self.0.repeat(times))
    }
}

impl Deref for Str {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Str {
    fn from(v: Vec<Symbol>) -> Self {
        Str(v)
    }
}

impl FromIterator<Symbol> for Str {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Str(iter.into_iter().collect())
    }
}

impl fmt::Debug for Str {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<u8> = self.0.iter().map(|s| s.0).collect();
        write!(f, "Str{codes:?}")
    }
}

/// A finite alphabet mapping printable characters to dense symbol codes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from its characters, in code order.
    pub fn new(chars: &str) -> Result<Self> {
        let chars: Vec<char> = chars.chars().collect();
        if chars.len() > u8::MAX as usize {
            return Err(Error::InvalidAlphabet("more than 255 symbols".into()));
        }
        for (i, &c) in chars.iter().enumerate() {
            if c == GAP_CHAR || c == '"' || c.is_whitespace() || c.is_control() {
                return Err(Error::InvalidAlphabet(format!("character {c:?} is reserved")));
            }
            if chars[..i].contains(&c) {
                return Err(Error::InvalidAlphabet(format!("duplicate character {c:?}")));
            }
        }
        Ok(Alphabet { chars })
    }

    /// Sorted, deduplicated alphabet of the given characters.
    pub fn from_chars<I: IntoIterator<Item = char>>(chars: I) -> Result<Self> {
        let mut v: Vec<char> = chars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Alphabet::new(&v.into_iter().collect::<String>())
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet { chars: vec!['0', '1'] }
    }

    /// `{0, 1, d, t}`: binary characters plus the separator-run and tab markers.
    pub fn corollary() -> Self {
        Alphabet {
            chars: vec!['0', '1', 'd', 't'],
        }
    }

    pub fn size(&self) -> usize {
        self.chars.len()
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn symbol(&self, c: char) -> Option<Symbol> {
        self.chars.iter().position(|&x| x == c).map(|i| Symbol(i as u8))
    }

    pub fn char_of(&self, s: Symbol) -> char {
        self.chars[s.index()]
    }

    pub fn parse(&self, text: &str) -> Result<Str> {
        text.chars()
            .map(|c| self.symbol(c).ok_or(Error::UnknownSymbol(c)))
            .collect()
    }

    /// Parses a gapped row; `-` becomes a gap.
    pub fn parse_gapped(&self, text: &str) -> Result<Vec<Gapped>> {
        text.chars()
            .map(|c| {
                if c == GAP_CHAR {
                    Ok(None)
                } else {
                    self.symbol(c).map(Some).ok_or(Error::UnknownSymbol(c))
                }
            })
            .collect()
    }

    pub fn render(&self, s: &[Symbol]) -> String {
        s.iter().map(|&x| self.char_of(x)).collect()
    }

    pub fn render_gapped(&self, row: &[Gapped]) -> String {
        row.iter().map(|g| g.map_or(GAP_CHAR, |s| self.char_of(s))).collect()
    }

    /// Re-encodes `s` (over `self`) into `target`, by character.
    pub fn translate(&self, s: &[Symbol], target: &Alphabet) -> Result<Str> {
        s.iter()
            .map(|&x| {
                let c = self.char_of(x);
                target.symbol(c).ok_or(Error::UnknownSymbol(c))
            })
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.chars {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_reserved_and_duplicates() {
        assert!(Alphabet::new("0-1").is_err());
        assert!(Alphabet::new("00").is_err());
        assert!(Alphabet::new("a b").is_err());
        assert!(Alphabet::new("").is_ok());
    }

    #[test]
    fn parse_and_render_round_trip() {
        let a = Alphabet::corollary();
        let s = a.parse("0d1t").unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(a.render(&s), "0d1t");
        assert!(matches!(a.parse("0x"), Err(Error::UnknownSymbol('x'))));
        let row = a.parse_gapped("-0-t").unwrap();
        assert_eq!(a.render_gapped(&row), "-0-t");
    }

    #[test]
    fn one_based_access() {
        let a = Alphabet::binary();
        let s = a.parse("01").unwrap();
        assert_eq!(s.at(0), None);
        assert_eq!(s.at(1), a.symbol('0'));
        assert_eq!(s.at(2), a.symbol('1'));
        assert_eq!(s.at(3), None);
    }

    #[test]
    fn translate_between_alphabets() {
        let bin = Alphabet::binary();
        let cor = Alphabet::corollary();
        let s = bin.parse("10").unwrap();
        assert_eq!(cor.render(&bin.translate(&s, &cor).unwrap()), "10");
        let t = cor.parse("t").unwrap();
        assert!(cor.translate(&t, &bin).is_err());
    }
}
