//! Pairwise alignments viewed as diploid chromosomes, recombination, and an
//! exhaustive solver for the diploid alignment problem.
//!
//! Any series of recombinations is represented by a [`SwapMask`]: composing
//! suffix swaps at points `i1, .., ik` exchanges column `j` iff an odd number
//! of points lie at or before `j`, and every mask is produced by placing
//! points at its change positions.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::strings::{global_alignment_score, Alphabet, Gapped, Score, ScoringScheme, Str, Symbol};

/// Default column limit for [`reachable_recombinations`].
pub const RECOMBINATION_GUARD: usize = 16;
/// Default column limit for [`solve_diploid_bruteforce`].
pub const DIPLOID_GUARD: usize = 12;

/// Two equal-length gapped rows.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PairwiseAlignment {
    row_a: Vec<Gapped>,
    row_b: Vec<Gapped>,
}

impl PairwiseAlignment {
    pub fn new(row_a: Vec<Gapped>, row_b: Vec<Gapped>) -> Result<Self> {
        if row_a.len() != row_b.len() {
            return Err(Error::LengthMismatch {
                expected: row_a.len(),
                found: row_b.len(),
            });
        }
        Ok(PairwiseAlignment { row_a, row_b })
    }

    pub fn parse(alphabet: &Alphabet, a: &str, b: &str) -> Result<Self> {
        PairwiseAlignment::new(alphabet.parse_gapped(a)?, alphabet.parse_gapped(b)?)
    }

    pub fn len(&self) -> usize {
        self.row_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.row_a.is_empty()
    }

    pub fn row_a(&self) -> &[Gapped] {
        &self.row_a
    }

    pub fn row_b(&self) -> &[Gapped] {
        &self.row_b
    }

    pub fn render(&self, alphabet: &Alphabet) -> (String, String) {
        (alphabet.render_gapped(&self.row_a), alphabet.render_gapped(&self.row_b))
    }

    /// Both rows with gaps removed.
    pub fn ungapped(&self) -> (Str, Str) {
        (remove_gaps(&self.row_a), remove_gaps(&self.row_b))
    }

    pub fn swapped(&self) -> Self {
        PairwiseAlignment {
            row_a: self.row_b.clone(),
            row_b: self.row_a.clone(),
        }
    }
}

/// Per-column exchange pattern; `true` swaps that column's two entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SwapMask(pub Vec<bool>);

impl SwapMask {
    pub fn none(len: usize) -> Self {
        SwapMask(vec![false; len])
    }

    pub fn all(len: usize) -> Self {
        SwapMask(vec![true; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The mask of the `index`-th value in lexicographic order (column 0 is
    /// the most significant bit).
    fn from_rank(rank: u64, len: usize) -> Self {
        SwapMask((0..len).map(|i| rank >> (len - 1 - i) & 1 == 1).collect())
    }

    /// Crossover points of a recombination series realizing this mask.
    pub fn crossover_points(&self) -> Vec<usize> {
        let mut points = Vec::new();
        let mut prev = false;
        for (i, &b) in self.0.iter().enumerate() {
            if b != prev {
                points.push(i);
                prev = b;
            }
        }
        points
    }

    pub fn complement(&self) -> Self {
        SwapMask(self.0.iter().map(|b| !b).collect())
    }
}

/// Exchanges the suffixes of the two rows after column `i` (`0 <= i <= L`).
pub fn recombine(a: &PairwiseAlignment, i: usize) -> Result<PairwiseAlignment> {
    if i > a.len() {
        return Err(Error::IndexOutOfRange { index: i, len: a.len() });
    }
    let mut row_a = a.row_a[..i].to_vec();
    row_a.extend_from_slice(&a.row_b[i..]);
    let mut row_b = a.row_b[..i].to_vec();
    row_b.extend_from_slice(&a.row_a[i..]);
    Ok(PairwiseAlignment { row_a, row_b })
}

pub fn remove_gaps(row: &[Gapped]) -> Str {
    row.iter().flatten().copied().collect()
}

pub fn apply_mask(a: &PairwiseAlignment, m: &SwapMask) -> Result<PairwiseAlignment> {
    if m.len() != a.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: m.len(),
        });
    }
    let (row_a, row_b) = a
        .row_a
        .iter()
        .zip(&a.row_b)
        .zip(&m.0)
        .map(|((&x, &y), &swap)| if swap { (y, x) } else { (x, y) })
        .unzip();
    Ok(PairwiseAlignment { row_a, row_b })
}

/// Every alignment reachable by a series of recombinations.
pub fn reachable_recombinations(a: &PairwiseAlignment) -> Result<BTreeSet<PairwiseAlignment>> {
    reachable_recombinations_with_guard(a, RECOMBINATION_GUARD)
}

pub fn reachable_recombinations_with_guard(
    a: &PairwiseAlignment,
    max_len: usize,
) -> Result<BTreeSet<PairwiseAlignment>> {
    if a.len() > max_len {
        return Err(Error::InstanceTooLarge(format!(
            "alignment has {} columns, recombination enumeration limit is {max_len}",
            a.len()
        )));
    }
    let l = a.len();
    (0..1u64 << l)
        .map(|rank| apply_mask(a, &SwapMask::from_rank(rank, l)))
        .collect()
}

/// `true` iff the rows are gapped versions of `a` and `b`.
pub fn validate_alignment(aln: &PairwiseAlignment, a: &[Symbol], b: &[Symbol]) -> bool {
    let l = aln.len();
    let gaps_a = aln.row_a.iter().filter(|g| g.is_none()).count();
    let gaps_b = aln.row_b.iter().filter(|g| g.is_none()).count();
    *remove_gaps(&aln.row_a) == *a
        && *remove_gaps(&aln.row_b) == *b
        && l >= a.len()
        && l >= b.len()
        && gaps_a == l - a.len()
        && gaps_b == l - b.len()
}

#[derive(Clone, Debug)]
pub struct DiploidInstance {
    pub first: PairwiseAlignment,
    pub second: PairwiseAlignment,
    pub scheme: ScoringScheme,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiploidSolution {
    pub mask_first: SwapMask,
    pub mask_second: SwapMask,
    pub value: Score,
}

/// `S(r(A''), r(C'')) + S(r(B''), r(D''))` for the given masks.
pub fn diploid_objective(inst: &DiploidInstance, mask_first: &SwapMask, mask_second: &SwapMask) -> Result<Score> {
    let (a, b) = apply_mask(&inst.first, mask_first)?.ungapped();
    let (c, d) = apply_mask(&inst.second, mask_second)?.ungapped();
    Ok(global_alignment_score(&a, &c, &inst.scheme) + global_alignment_score(&b, &d, &inst.scheme))
}

/// Limits for the exhaustive diploid solver.
#[derive(Clone, Copy, Debug)]
pub struct DiploidGuard {
    /// Maximum columns per alignment.
    pub max_len: usize,
    /// Maximum number of distinct (first, second) recombination outcome pairs scored.
    pub max_outcome_pairs: u64,
}

impl Default for DiploidGuard {
    fn default() -> Self {
        DiploidGuard {
            max_len: DIPLOID_GUARD,
            max_outcome_pairs: 1 << 24,
        }
    }
}

pub fn solve_diploid_bruteforce(inst: &DiploidInstance) -> Result<DiploidSolution> {
    solve_diploid_bruteforce_with(inst, DiploidGuard::default())
}

/// Distinct gap-free outcomes of all masks, each tagged with its least mask
/// rank; listed in increasing rank.
fn distinct_outcomes(a: &PairwiseAlignment) -> Vec<(u64, Str, Str)> {
    let l = a.len();
    let mut seen: HashMap<(Str, Str), ()> = HashMap::new();
    let mut out = Vec::new();
    for rank in 0..1u64 << l {
        let mask = SwapMask::from_rank(rank, l);
        let (x, y) = apply_mask(a, &mask).expect("mask length matches").ungapped();
        if seen.insert((x.clone(), y.clone()), ()).is_none() {
            out.push((rank, x, y));
        }
    }
    out
}

/// Maximizes the diploid objective over all mask pairs.
///
/// Mask pairs yielding identical gap-free strings score identically, so each
/// side is reduced to its distinct outcomes (keeping the least mask); the
/// reported witness is the lexicographically least optimal mask pair.
pub fn solve_diploid_bruteforce_with(inst: &DiploidInstance, guard: DiploidGuard) -> Result<DiploidSolution> {
    for aln in [&inst.first, &inst.second] {
        if aln.len() > guard.max_len {
            return Err(Error::InstanceTooLarge(format!(
                "alignment has {} columns, diploid solver limit is {} (this search may not terminate soon beyond it)",
                aln.len(),
                guard.max_len
            )));
        }
    }
    let first = distinct_outcomes(&inst.first);
    let second = distinct_outcomes(&inst.second);
    let pairs = first.len() as u64 * second.len() as u64;
    if pairs > guard.max_outcome_pairs {
        return Err(Error::InstanceTooLarge(format!(
            "{pairs} recombination outcome pairs exceed the limit {}",
            guard.max_outcome_pairs
        )));
    }
    let mut memo: HashMap<(Str, Str), Score> = HashMap::new();
    let mut score = |x: &Str, y: &Str| -> Score {
        *memo
            .entry((x.clone(), y.clone()))
            .or_insert_with(|| global_alignment_score(x, y, &inst.scheme))
    };
    let mut best: Option<(Score, u64, u64)> = None;
    for (ra, a, b) in &first {
        for (rc, c, d) in &second {
            let v = score(a, c) + score(b, d);
            if best.is_none_or(|(bv, _, _)| v > bv) {
                best = Some((v, *ra, *rc));
            }
        }
    }
    let (value, ra, rc) = best.expect("at least the identity mask exists");
    Ok(DiploidSolution {
        mask_first: SwapMask::from_rank(ra, inst.first.len()),
        mask_second: SwapMask::from_rank(rc, inst.second.len()),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dna() -> Alphabet {
        Alphabet::new("acgt").unwrap()
    }

    fn aln(a: &str, b: &str) -> PairwiseAlignment {
        PairwiseAlignment::parse(&dna(), a, b).unwrap()
    }

    #[test]
    fn recombine_examples() {
        let x = aln("ac-", "-cg");
        assert_eq!(recombine(&x, 1).unwrap(), aln("acg", "-c-"));
        assert_eq!(recombine(&x, 3).unwrap(), x);
        assert_eq!(recombine(&x, 0).unwrap(), x.swapped());
        assert!(matches!(
            recombine(&x, 4),
            Err(Error::IndexOutOfRange { index: 4, len: 3 })
        ));
    }

    #[test]
    fn remove_gaps_examples() {
        let a = dna();
        assert_eq!(remove_gaps(&a.parse_gapped("-a-c-").unwrap()), a.parse("ac").unwrap());
        assert!(remove_gaps(&a.parse_gapped("---").unwrap()).is_empty());
        assert_eq!(remove_gaps(&a.parse_gapped("gt").unwrap()), a.parse("gt").unwrap());
    }

    #[test]
    fn apply_mask_examples() {
        let x = aln("ac-", "-cg");
        assert_eq!(apply_mask(&x, &SwapMask::none(3)).unwrap(), x);
        assert_eq!(apply_mask(&x, &SwapMask::all(3)).unwrap(), recombine(&x, 0).unwrap());
        let m = SwapMask(vec![false, true, true]);
        assert_eq!(apply_mask(&x, &m).unwrap(), recombine(&x, 1).unwrap());
        assert_eq!(m.crossover_points(), vec![1]);
        assert!(matches!(
            apply_mask(&x, &SwapMask::none(2)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn reachable_small_cases() {
        let empty = aln("", "");
        assert_eq!(reachable_recombinations(&empty).unwrap().len(), 1);
        assert_eq!(reachable_recombinations(&aln("a", "c")).unwrap().len(), 2);
        assert_eq!(reachable_recombinations(&aln("a", "a")).unwrap().len(), 1);
        let long = PairwiseAlignment::new(vec![None; 17], vec![None; 17]).unwrap();
        assert!(reachable_recombinations(&long).unwrap_err().is_guard());
    }

    #[test]
    fn validate_examples() {
        let a = dna();
        let p = |s: &str| a.parse(s).unwrap();
        assert!(validate_alignment(&aln("a-", "-c"), &p("a"), &p("c")));
        assert!(!validate_alignment(&aln("ac", "a-"), &p("ac"), &p("ac")));
        assert!(validate_alignment(&aln("ac-", "-cg"), &p("ac"), &p("cg")));
    }

    #[test]
    fn diploid_identical_rows_score_zero() {
        let x = aln("acg", "acg");
        let inst = DiploidInstance {
            first: x.clone(),
            second: x,
            scheme: ScoringScheme::unit(dna()),
        };
        let sol = solve_diploid_bruteforce(&inst).unwrap();
        assert_eq!(sol.value, Score::ZERO);
        assert_eq!(sol.mask_first, SwapMask::none(3));
        assert_eq!(sol.mask_second, SwapMask::none(3));
    }

    #[test]
    fn diploid_crossed_rows_score_zero() {
        let inst = DiploidInstance {
            first: aln("ac", "gt"),
            second: aln("gt", "ac"),
            scheme: ScoringScheme::unit(dna()),
        };
        let sol = solve_diploid_bruteforce(&inst).unwrap();
        assert_eq!(sol.value, Score::ZERO);
        assert_eq!(
            diploid_objective(&inst, &sol.mask_first, &sol.mask_second).unwrap(),
            Score::ZERO
        );
        // Least optimal pair: leave the first alone, swap every column of the second.
        assert_eq!(sol.mask_first, SwapMask::none(2));
        assert_eq!(sol.mask_second, SwapMask::all(2));
    }

    #[test]
    fn diploid_guard() {
        let x = PairwiseAlignment::new(vec![None; 13], vec![None; 13]).unwrap();
        let inst = DiploidInstance {
            first: x.clone(),
            second: x,
            scheme: ScoringScheme::unit(dna()),
        };
        assert!(solve_diploid_bruteforce(&inst).unwrap_err().is_guard());
    }
}
