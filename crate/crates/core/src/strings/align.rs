use super::{Gapped, Score, ScoringScheme, Symbol};

/// Unit-cost edit distance (insertions, deletions, substitutions).
pub fn edit_distance(s: &[Symbol], t: &[Symbol]) -> usize {
    let (s, t) = if s.len() < t.len() { (t, s) } else { (s, t) };
    let mut prev: Vec<usize> = (0..=t.len()).collect();
    let mut cur = vec![0; t.len() + 1];
    for (i, &a) in s.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &b) in t.iter().enumerate() {
            let sub = prev[j] + usize::from(a != b);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[t.len()]
}

/// Edit distance if it is at most `cap`, else `None`. Runs in `O(cap * len)`.
pub fn edit_distance_within(s: &[Symbol], t: &[Symbol], cap: usize) -> Option<usize> {
    let (n, m) = (s.len(), t.len());
    if n.abs_diff(m) > cap {
        return None;
    }
    const INF: usize = usize::MAX / 2;
    let mut prev = vec![INF; m + 2];
    let mut cur = vec![INF; m + 2];
    for (j, p) in prev.iter_mut().enumerate().take(m.min(cap) + 1) {
        *p = j;
    }
    for i in 1..=n {
        let lo = i.saturating_sub(cap);
        let hi = (i + cap).min(m);
        if lo > 0 {
            cur[lo - 1] = INF;
        }
        let mut row_min = INF;
        for j in lo..=hi {
            let v = if j == 0 {
                i
            } else {
                let sub = prev[j - 1] + usize::from(s[i - 1] != t[j - 1]);
                sub.min(prev[j] + 1).min(cur[j - 1] + 1)
            };
            cur[j] = v;
            row_min = row_min.min(v);
        }
        cur[hi + 1] = INF;
        if row_min > cap {
            return None;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Some(prev[m]).filter(|&d| d <= cap)
}

/// Maximum column-score sum over all pairwise alignments of `s` and `t`.
///
/// Double-gap columns are never used.
pub fn global_alignment_score(s: &[Symbol], t: &[Symbol], scheme: &ScoringScheme) -> Score {
    let del = |a: Symbol| scheme.score(Some(a), None);
    let ins = |b: Symbol| scheme.score(None, Some(b));
    let mut prev = Vec::with_capacity(t.len() + 1);
    prev.push(Score::ZERO);
    for &b in t {
        let last = *prev.last().unwrap();
        prev.push(last + ins(b));
    }
    let mut cur = vec![Score::ZERO; t.len() + 1];
    for &a in s {
        cur[0] = prev[0] + del(a);
        for (j, &b) in t.iter().enumerate() {
            let diag = prev[j] + scheme.score(Some(a), Some(b));
            cur[j + 1] = diag.max(prev[j + 1] + del(a)).max(cur[j] + ins(b));
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[t.len()]
}

/// An optimal global alignment with its score.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alignment {
    pub score: Score,
    pub columns: Vec<(Gapped, Gapped)>,
}

impl Alignment {
    pub fn rows(&self) -> (Vec<Gapped>, Vec<Gapped>) {
        self.columns.iter().copied().unzip()
    }
}

/// Like [`global_alignment_score`] but keeps the full table for a traceback.
/// Ties prefer substitution, then deletion, then insertion.
pub fn global_alignment(s: &[Symbol], t: &[Symbol], scheme: &ScoringScheme) -> Alignment {
    let (n, m) = (s.len(), t.len());
    let w = m + 1;
    let mut dp = vec![Score::NegInf; (n + 1) * w];
    dp[0] = Score::ZERO;
    for i in 0..=n {
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            let mut best = Score::NegInf;
            if i > 0 && j > 0 {
                best = best.max(dp[(i - 1) * w + j - 1] + scheme.score(Some(s[i - 1]), Some(t[j - 1])));
            }
            if i > 0 {
                best = best.max(dp[(i - 1) * w + j] + scheme.score(Some(s[i - 1]), None));
            }
            if j > 0 {
                best = best.max(dp[i * w + j - 1] + scheme.score(None, Some(t[j - 1])));
            }
            dp[i * w + j] = best;
        }
    }
    let score = dp[n * w + m];
    let mut columns = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = dp[i * w + j];
        if i > 0 && j > 0 && dp[(i - 1) * w + j - 1] + scheme.score(Some(s[i - 1]), Some(t[j - 1])) == here {
            columns.push((Some(s[i - 1]), Some(t[j - 1])));
            i -= 1;
            j -= 1;
        } else if i > 0 && (j == 0 || dp[(i - 1) * w + j] + scheme.score(Some(s[i - 1]), None) == here) {
            columns.push((Some(s[i - 1]), None));
            i -= 1;
        } else {
            columns.push((None, Some(t[j - 1])));
            j -= 1;
        }
    }
    columns.reverse();
    Alignment { score, columns }
}
