use super::{edit_distance, Str, Symbol};
use crate::error::{Error, Result};

/// `lcs_multi` refuses a first string longer than this.
pub const LCS_MAX_FIRST_LEN: usize = 20;
/// `lcs_multi` refuses more strings than this.
pub const LCS_MAX_STRINGS: usize = 6;

pub fn is_subsequence(sub: &[Symbol], sup: &[Symbol]) -> bool {
    let mut it = sup.iter();
    sub.iter().all(|c| it.any(|x| x == c))
}

/// `|sup| - |sub|`, which for a subsequence is also the edit distance.
pub fn subsequence_edit_identity(sub: &[Symbol], sup: &[Symbol]) -> Result<usize> {
    if !is_subsequence(sub, sup) {
        return Err(Error::NotASubsequence);
    }
    let gap = sup.len() - sub.len();
    assert_eq!(gap, edit_distance(sub, sup), "subsequence edit identity violated");
    Ok(gap)
}

/// Exhaustive longest common subsequence of all `strings`.
///
/// Every subsequence of the first string is tried, so this is only an
/// oracle for tiny inputs. Among longest candidates the lexicographically
/// least (by symbol code) is returned.
pub fn lcs_multi(strings: &[Str]) -> Result<Str> {
    let first = strings.first().ok_or(Error::EmptyInput("lcs_multi needs a string"))?;
    if first.len() > LCS_MAX_FIRST_LEN || strings.len() > LCS_MAX_STRINGS {
        return Err(Error::InstanceTooLarge(format!(
            "lcs_multi accepts at most {LCS_MAX_STRINGS} strings with a first string of length <= {LCS_MAX_FIRST_LEN}"
        )));
    }
    let n = first.len();
    let mut best: Option<Vec<Symbol>> = None;
    let mut cand = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << n) {
        let len = mask.count_ones() as usize;
        if best.as_ref().is_some_and(|b| b.len() > len) {
            continue;
        }
        cand.clear();
        cand.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| first[i]));
        if !strings[1..].iter().all(|s| is_subsequence(&cand, s)) {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => cand.len() > b.len() || (cand.len() == b.len() && cand < *b),
        };
        if better {
            best = Some(cand.clone());
        }
    }
    Ok(Str::from_symbols(best.unwrap_or_default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::Alphabet;

    fn bin(s: &str) -> Str {
        Alphabet::binary().parse(s).unwrap()
    }

    #[test]
    fn subsequence_examples() {
        assert!(is_subsequence(&bin(""), &bin("0101")));
        assert!(is_subsequence(&bin("11"), &bin("0101")));
        assert!(!is_subsequence(&bin("10"), &bin("01")));
        assert!(!is_subsequence(&bin("0"), &bin("")));
    }

    #[test]
    fn edit_identity_examples() {
        assert_eq!(subsequence_edit_identity(&bin(""), &bin("01")).unwrap(), 2);
        assert_eq!(subsequence_edit_identity(&bin("01"), &bin("01")).unwrap(), 0);
        assert_eq!(subsequence_edit_identity(&bin("10"), &bin("0110")).unwrap(), 2);
        assert!(matches!(
            subsequence_edit_identity(&bin("10"), &bin("01")),
            Err(Error::NotASubsequence)
        ));
    }

    #[test]
    fn lcs_examples() {
        assert_eq!(lcs_multi(&[bin("01")]).unwrap(), bin("01"));
        // Length 3; "010" < "101" lexicographically.
        assert_eq!(lcs_multi(&[bin("0101"), bin("1010")]).unwrap(), bin("010"));
        assert_eq!(lcs_multi(&[bin("01"), bin("10")]).unwrap(), bin("0"));
        assert_eq!(lcs_multi(&[bin("00"), bin("11")]).unwrap(), bin(""));
    }

    #[test]
    fn lcs_guards() {
        assert!(matches!(lcs_multi(&[]), Err(Error::EmptyInput(_))));
        let long = bin(&"01".repeat(11));
        assert!(lcs_multi(&[long]).unwrap_err().is_guard());
        let seven = vec![bin("01"); 7];
        assert!(lcs_multi(&seven).unwrap_err().is_guard());
    }
}
