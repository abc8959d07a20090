use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use super::{Alphabet, Gapped, Symbol, GAP_CHAR};
use crate::error::{Error, Result};

/// An alignment score: an integer or negative infinity.
///
/// `NegInf` absorbs addition and compares below every finite value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Score {
    NegInf,
    Finite(i64),
}

impl Score {
    pub const ZERO: Score = Score::Finite(0);

    pub fn finite(self) -> Option<i64> {
        match self {
            Score::Finite(v) => Some(v),
            Score::NegInf => None,
        }
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, Score::NegInf)
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Score::NegInf, Score::NegInf) => Ordering::Equal,
            (Score::NegInf, _) => Ordering::Less,
            (_, Score::NegInf) => Ordering::Greater,
            (Score::Finite(a), Score::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Score {
    type Output = Score;
    fn add(self, rhs: Score) -> Score {
        match (self, rhs) {
            (Score::Finite(a), Score::Finite(b)) => Score::Finite(a + b),
            _ => Score::NegInf,
        }
    }
}

impl From<i64> for Score {
    fn from(v: i64) -> Self {
        Score::Finite(v)
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::NegInf => write!(f, "-inf"),
            Score::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// Symbol-pair score table over an alphabet extended with the gap.
///
/// Row/column index `k = alphabet.size()` stands for the gap.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScoringScheme {
    alphabet: Alphabet,
    table: Vec<Score>,
}

impl ScoringScheme {
    pub fn from_fn(alphabet: Alphabet, f: impl Fn(Gapped, Gapped) -> Score) -> Self {
        let k = alphabet.size();
        let entry = |i: usize| (i < k).then(|| Symbol(i as u8));
        let mut table = Vec::with_capacity((k + 1) * (k + 1));
        for r in 0..=k {
            for c in 0..=k {
                table.push(f(entry(r), entry(c)));
            }
        }
        ScoringScheme { alphabet, table }
    }

    /// Match 0, mismatch -1, indel -1; its optimum is minus the edit distance.
    pub fn unit(alphabet: Alphabet) -> Self {
        ScoringScheme::from_fn(alphabet, |a, b| if a == b { Score::ZERO } else { Score::Finite(-1) })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn index(&self, g: Gapped) -> usize {
        g.map_or(self.alphabet.size(), Symbol::index)
    }

    pub fn score(&self, a: Gapped, b: Gapped) -> Score {
        let w = self.alphabet.size() + 1;
        self.table[self.index(a) * w + self.index(b)]
    }

    pub fn set(&mut self, a: Gapped, b: Gapped, s: Score) {
        let w = self.alphabet.size() + 1;
        let i = self.index(a) * w + self.index(b);
        self.table[i] = s;
    }

    /// Text form: `scheme <chars>` followed by one row per symbol and a
    /// final row for the gap; entries are integers or `-inf`.
    pub fn to_text(&self) -> String {
        let k = self.alphabet.size();
        let mut out = format!("scheme {}\n", self.alphabet);
        for r in 0..=k {
            let row: Vec<String> = (0..=k).map(|c| self.table[r * (k + 1) + c].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `scheme` header"))?;
        let chars = header
            .strip_prefix("scheme ")
            .ok_or_else(|| Error::parse(ln + 1, "expected `scheme <chars>`"))?;
        let alphabet = Alphabet::new(chars.trim())?;
        let k = alphabet.size();
        let mut table = Vec::with_capacity((k + 1) * (k + 1));
        for r in 0..=k {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln + 2 + r, "missing score row"))?;
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != k + 1 {
                return Err(Error::parse(ln + 1, format!("expected {} entries", k + 1)));
            }
            for e in row {
                table.push(match e {
                    "-inf" => Score::NegInf,
                    v => Score::Finite(
                        v.parse()
                            .map_err(|_| Error::parse(ln + 1, format!("bad score {v:?}")))?,
                    ),
                });
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln + 1, "trailing content"));
        }
        Ok(ScoringScheme { alphabet, table })
    }

    /// Renders a symbol-or-gap for diagnostics.
    pub fn render(&self, g: Gapped) -> char {
        g.map_or(GAP_CHAR, |s| self.alphabet.char_of(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_inf_is_absorbing_and_least() {
        assert_eq!(Score::NegInf + Score::Finite(5), Score::NegInf);
        assert_eq!(Score::Finite(-3) + Score::NegInf, Score::NegInf);
        assert_eq!(Score::Finite(2) + Score::Finite(-5), Score::Finite(-3));
        assert!(Score::NegInf < Score::Finite(i64::MIN));
        assert_eq!(Score::NegInf.max(Score::Finite(-100)), Score::Finite(-100));
    }

    #[test]
    fn unit_scheme_entries() {
        let s = ScoringScheme::unit(Alphabet::binary());
        let z = Some(Symbol(0));
        let o = Some(Symbol(1));
        assert_eq!(s.score(z, z), Score::ZERO);
        assert_eq!(s.score(z, o), Score::Finite(-1));
        assert_eq!(s.score(None, o), Score::Finite(-1));
        assert_eq!(s.score(o, None), Score::Finite(-1));
        assert_eq!(s.score(None, None), Score::ZERO);
    }

    #[test]
    fn text_round_trip() {
        let mut s = ScoringScheme::unit(Alphabet::binary());
        s.set(Some(Symbol(0)), Some(Symbol(1)), Score::NegInf);
        let text = s.to_text();
        assert_eq!(text, "scheme 01\n0 -inf -1\n-1 0 -1\n-1 -1 0\n");
        assert_eq!(ScoringScheme::from_text(&text).unwrap(), s);
        assert!(ScoringScheme::from_text("scheme 01\n0 0\n").is_err());
    }
}
