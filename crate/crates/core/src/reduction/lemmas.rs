use super::{Layout, ReductionInstance};
use crate::cover::{CoverSolution, ObjectiveValue};
use crate::dag::{jointly_cover, read, CoverPair, DagPath, Expansion, LabeledDag};
use crate::error::{Error, Result};
use crate::strings::{edit_distance, is_subsequence, Str};

/// Disjoint covering pairs of `A` and `B` built from a common subsequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessPaths {
    pub a_red: DagPath,
    pub a_green: DagPath,
    pub b_red: DagPath,
    pub b_green: DagPath,
    /// `ℓ - |S'|`.
    pub delta: usize,
}

impl WitnessPaths {
    /// The witness as a solution on `A` and `B` with value `2δ`.
    pub fn to_solution(&self) -> CoverSolution {
        CoverSolution {
            r1: self.a_red.clone(),
            g1: self.a_green.clone(),
            r2: self.b_red.clone(),
            g2: self.b_green.clone(),
            value: ObjectiveValue::Scalar(2 * self.delta as u64),
        }
    }
}

/// Leftmost embedding of `sub` in `s` as a green mask over positions of `s`.
fn greedy_green(sub: &[crate::strings::Symbol], s: &[crate::strings::Symbol]) -> Vec<bool> {
    let mut green = vec![false; s.len()];
    let mut k = 0;
    for (j, &c) in s.iter().enumerate() {
        if k < sub.len() && sub[k] == c {
            green[j] = true;
            k += 1;
        }
    }
    green
}

fn mismatch(what: &str) -> Error {
    Error::ConstructionMismatch(what.to_string())
}

fn checked_read(d: &LabeledDag, p: &DagPath, name: &str) -> Result<Str> {
    read(d, p).map_err(|e| mismatch(&format!("{name} is not a path: {e}")))
}

/// Red strands run through every tab of the lane they start in and every
/// separator; green strands pick up the embedded copy of `S'` in each stage,
/// starting at the head of `A` and ending at the tail of `B`. The read
/// identities, disjointness and joint cover are all checked.
pub fn lemma1_witness(ri: &ReductionInstance, s_prime: &[crate::strings::Symbol]) -> Result<WitnessPaths> {
    let strings = ri.lcs.strings();
    if !strings.iter().all(|s| is_subsequence(s_prime, s)) {
        return Err(Error::NotCommonSubsequence);
    }
    let colorings: Vec<Vec<bool>> = strings.iter().map(|s| greedy_green(s_prime, s)).collect();
    let (la, lb) = (&ri.layout_a, &ri.layout_b);
    let big_n = ri.params.big_n;

    let mut a_red = vec![la.source, la.tabs[0][0]];
    let mut a_green = vec![la.side, la.tabs[0][1]];
    for (i, g) in la.stages.iter().enumerate() {
        let (r, gr) = g.strands(&colorings[g.residue]);
        a_red.extend(r);
        a_green.extend(gr);
        let next = &la.tabs[i + 1];
        a_red.push(next[0]);
        if i + 1 < big_n {
            a_green.push(next[1]);
        }
    }
    a_red.push(la.sink);

    let mut b_red = vec![lb.source, lb.tabs[0][0]];
    let mut b_green = Vec::new();
    for (i, g) in lb.stages.iter().enumerate() {
        let (r, gr) = g.strands(&colorings[g.residue]);
        b_red.extend(r);
        b_green.extend(gr);
        b_red.push(lb.tabs[i + 1][0]);
        b_green.push(lb.tabs[i + 1][1]);
    }
    b_red.push(lb.sink);
    b_green.push(lb.side);

    let w = WitnessPaths {
        a_red: DagPath::new(a_red)?,
        a_green: DagPath::new(a_green)?,
        b_red: DagPath::new(b_red)?,
        b_green: DagPath::new(b_green)?,
        delta: ri.params.ell - s_prime.len(),
    };

    let ar = checked_read(&ri.dag_a, &w.a_red, "A red")?;
    let ag = checked_read(&ri.dag_a, &w.a_green, "A green")?;
    let br = checked_read(&ri.dag_b, &w.b_red, "B red")?;
    let bg = checked_read(&ri.dag_b, &w.b_green, "B green")?;
    for (d, red, green, name) in [
        (&ri.dag_a, &w.a_red, &w.a_green, "A"),
        (&ri.dag_b, &w.b_red, &w.b_green, "B"),
    ] {
        if red.intersects(green).is_some() {
            return Err(mismatch(&format!("{name} strands share a node")));
        }
        let pair = CoverPair {
            red: red.clone(),
            green: green.clone(),
        };
        if !jointly_cover(d, &pair)? {
            return Err(mismatch(&format!("{name} strands leave a node uncovered")));
        }
    }
    if ar != br {
        return Err(mismatch("red reads of A and B differ"));
    }
    let s_prime = Str::from_symbols(s_prime.to_vec());
    let unit_a = Str::concat([&ri.tab, &s_prime]);
    let unit_b = Str::concat([&s_prime, &ri.tab]);
    if ag != Str::concat([&strings[0], &unit_a.repeat(big_n)]) {
        return Err(mismatch("green read of A is not S_0 (T S')^N"));
    }
    if bg != Str::concat([&unit_b.repeat(big_n), &strings[1]]) {
        return Err(mismatch("green read of B is not (S' T)^N S_1"));
    }
    Ok(w)
}

/// Original nodes visited by a path of an expansion.
fn visited(exp: &Expansion, p: &DagPath, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    for &v in p.nodes() {
        seen[exp.owner[v]] = true;
    }
    seen
}

/// Characters a path picks up in each gadget stage, or `None` for stages it
/// does not traverse from entry to exit.
fn stage_strings(d: &LabeledDag, layout: &Layout, seen: &[bool]) -> Vec<Option<Str>> {
    layout
        .stages
        .iter()
        .map(|g| {
            let full = g.x.iter().zip(&g.e).all(|(&x, &e)| seen[x] || seen[e]);
            full.then(|| Str::concat(g.x.iter().filter(|&&x| seen[x]).map(|&x| d.label(x))))
        })
        .collect()
}

/// Longest string shared by `n` consecutive stages; earliest on ties.
fn constant_window(strings: &[Option<Str>], n: usize) -> Option<Str> {
    let mut best: Option<Str> = None;
    for w in strings.windows(n) {
        let Some(first) = &w[0] else { continue };
        if w.iter().all(|s| s.as_ref() == Some(first)) && best.as_ref().is_none_or(|b| first.len() > b.len()) {
            best = Some(first.clone());
        }
    }
    best
}

/// Recovers a common subsequence from covering paths of the expanded DAGs.
///
/// Strands are first oriented so that the green strand of `A` is the one
/// through the head. A window of `n` consecutive stages in which a green
/// strand picks up the same string in every stage spells a subsequence of
/// every input; the longest such string is returned. Red strands are
/// consulted only when no green window exists.
pub fn lemma2_extract(ri: &ReductionInstance, sol: &CoverSolution) -> Result<Str> {
    let (exp_a, exp_b) = ri.expansions();
    for (exp, p) in [
        (&exp_a, &sol.r1),
        (&exp_a, &sol.g1),
        (&exp_b, &sol.r2),
        (&exp_b, &sol.g2),
    ] {
        exp.dag.validate_path(p)?;
    }
    let (na, nb) = (ri.dag_a.node_count(), ri.dag_b.node_count());
    let mut r1 = visited(&exp_a, &sol.r1, na);
    let mut g1 = visited(&exp_a, &sol.g1, na);
    let mut r2 = visited(&exp_b, &sol.r2, nb);
    let mut g2 = visited(&exp_b, &sol.g2, nb);
    let head = ri.layout_a.side;
    if r1[head] && !g1[head] {
        std::mem::swap(&mut r1, &mut g1);
        std::mem::swap(&mut r2, &mut g2);
    }
    let n = ri.params.n;
    let pick = |a: &[bool], b: &[bool]| {
        let wa = constant_window(&stage_strings(&ri.dag_a, &ri.layout_a, a), n);
        let wb = constant_window(&stage_strings(&ri.dag_b, &ri.layout_b, b), n);
        match (wa, wb) {
            (Some(x), Some(y)) => Some(if y.len() > x.len() { y } else { x }),
            (x, y) => x.or(y),
        }
    };
    let found = pick(&g1, &g2)
        .or_else(|| pick(&r1, &r2))
        .ok_or(Error::NoCanonicalInterval)?;
    debug_assert!(ri.lcs.strings().iter().all(|s| is_subsequence(&found, s)));
    Ok(found)
}

/// `(d_red, d_green)` of a witness, recomputed from its reads.
pub fn witness_distances(ri: &ReductionInstance, w: &WitnessPaths) -> Result<(usize, usize)> {
    let ar = read(&ri.dag_a, &w.a_red)?;
    let br = read(&ri.dag_b, &w.b_red)?;
    let ag = read(&ri.dag_a, &w.a_green)?;
    let bg = read(&ri.dag_b, &w.b_green)?;
    Ok((edit_distance(&ar, &br), edit_distance(&ag, &bg)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{evaluate_solution, SolverOptions};
    use crate::reduction::tests::{bin, instance};
    use crate::reduction::{build_instance, default_params, lift_solution, Scale};
    use crate::strings::lcs_multi;

    fn desk(strings: &[&str], seed: u64) -> ReductionInstance {
        let inst = instance(strings);
        let mut p = default_params(&inst, Scale::Desk);
        p.seed = seed;
        build_instance(&inst, &p).unwrap()
    }

    #[test]
    fn witness_from_lcs() {
        let ri = desk(&["01", "10"], 7);
        let lcs = lcs_multi(ri.lcs.strings()).unwrap();
        assert_eq!(lcs.len(), 1);
        let w = lemma1_witness(&ri, &lcs).unwrap();
        assert_eq!(w.delta, 1);
        assert_eq!(witness_distances(&ri, &w).unwrap(), (0, 2));
        let opts = SolverOptions {
            disjoint_d1: true,
            disjoint_d2: true,
            ..Default::default()
        };
        assert_eq!(
            evaluate_solution(&ri.dag_a, &ri.dag_b, &w.to_solution(), &opts).unwrap(),
            ObjectiveValue::Scalar(2)
        );
    }

    #[test]
    fn empty_subsequence_costs_two_ell() {
        let ri = desk(&["011", "110"], 3);
        let w = lemma1_witness(&ri, &[]).unwrap();
        assert_eq!(w.delta, 3);
        assert_eq!(witness_distances(&ri, &w).unwrap(), (0, 6));
    }

    #[test]
    fn rejects_non_subsequence() {
        let ri = desk(&["01", "10"], 7);
        assert!(matches!(
            lemma1_witness(&ri, &bin("00")),
            Err(Error::NotCommonSubsequence)
        ));
    }

    #[test]
    fn extraction_round_trip() {
        for (strings, seed) in [(&["01", "10"][..], 1), (&["011", "101", "110"][..], 2)] {
            let ri = desk(strings, seed);
            let (ea, eb) = ri.expansions();
            let lcs = lcs_multi(ri.lcs.strings()).unwrap();
            for k in 0..=lcs.len() {
                let sp = Str::from_symbols(lcs[..k].to_vec());
                let w = lemma1_witness(&ri, &sp).unwrap();
                let sol = lift_solution(&ea, &eb, &w.to_solution());
                assert_eq!(lemma2_extract(&ri, &sol).unwrap(), sp);
                // Swapping the strands changes nothing.
                assert_eq!(lemma2_extract(&ri, &sol.strands_swapped()).unwrap(), sp);
            }
        }
    }

    #[test]
    fn too_few_stages_have_no_window() {
        let inst = instance(&["011", "101", "110"]);
        let mut p = default_params(&inst, Scale::Desk);
        p.big_n = 2;
        let ri = build_instance(&inst, &p).unwrap();
        let (ea, eb) = ri.expansions();
        let w = lemma1_witness(&ri, &[]).unwrap();
        let sol = lift_solution(&ea, &eb, &w.to_solution());
        assert!(matches!(lemma2_extract(&ri, &sol), Err(Error::NoCanonicalInterval)));
    }
}
