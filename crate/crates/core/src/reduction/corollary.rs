use super::{Column, ReductionInstance, Role};
use crate::cover::{solve_bruteforce, ObjectiveValue, SolverOptions};
use crate::dag::{expand, LabeledDag};
use crate::diploid::{solve_diploid_bruteforce_with, DiploidGuard, DiploidInstance, PairwiseAlignment};
use crate::error::{Error, Result};
use crate::strings::{lcs_multi, Alphabet, Gapped, Score, ScoringScheme, Symbol};

const SEP: Symbol = Symbol(2);
const TAB: Symbol = Symbol(3);

/// Scores over `{0, 1, d, t}`: matches score 0, binary mismatches and
/// binary indels -1, anything pairing `d` with a non-`d` symbol `-d_len`,
/// and anything pairing `t` with a non-`t` symbol -inf.
pub fn corollary_scheme(d_len: usize) -> ScoringScheme {
    let d = -(d_len as i64);
    ScoringScheme::from_fn(Alphabet::corollary(), |a: Gapped, b: Gapped| {
        if a == b {
            Score::ZERO
        } else if a == Some(TAB) || b == Some(TAB) {
            Score::NegInf
        } else if a == Some(SEP) || b == Some(SEP) {
            Score::Finite(d)
        } else {
            Score::Finite(-1)
        }
    })
}

/// The label of `v` over `{0, 1, d, t}`: tabs become `t`, separator runs
/// `d`, and other labels keep their binary characters.
fn symbolize(dag: &LabeledDag, v: usize, role: Role) -> Vec<Symbol> {
    match role {
        Role::Tab => vec![TAB],
        Role::Dsep => vec![SEP],
        _ => dag.label(v).iter().copied().collect(),
    }
}

/// Alignment blocks for a column sequence, left to right.
///
/// Two tabs give `(t, t)`; a node beside an ε node gives its label over a
/// gap; a lone separator gives `(d, -)`; a lone head or tail gives each of
/// its characters in both rows; a lone tab gives `(t, -)`; the ε source and
/// sink give nothing.
pub fn column_blocks(dag: &LabeledDag, columns: &[Column]) -> Result<Vec<(Gapped, Gapped)>> {
    if columns.is_empty() {
        return Err(Error::MissingColumnMetadata("no columns".into()));
    }
    let mut blocks = Vec::new();
    for (i, Column(nodes)) in columns.iter().enumerate() {
        let roles: Vec<Role> = nodes.iter().map(|&(_, r)| r).collect();
        match roles[..] {
            [Role::Tab, Role::Tab] => blocks.push((Some(TAB), Some(TAB))),
            [_, _] => {
                let Some(&(v, role)) = nodes.iter().find(|&&(v, _)| !dag.label(v).is_empty()) else {
                    return Err(Error::MissingColumnMetadata(format!("column {i} has two ε nodes")));
                };
                if nodes.iter().all(|&(w, _)| !dag.label(w).is_empty()) {
                    return Err(Error::MissingColumnMetadata(format!(
                        "column {i} pairs two non-ε nodes that are not tabs"
                    )));
                }
                blocks.extend(symbolize(dag, v, role).into_iter().map(|c| (Some(c), None)));
            }
            [Role::Dsep] => blocks.push((Some(SEP), None)),
            [Role::Head] | [Role::Tail] => {
                let (v, _) = nodes[0];
                blocks.extend(dag.label(v).iter().map(|&c| (Some(c), Some(c))));
            }
            [Role::Tab] => blocks.push((Some(TAB), None)),
            [Role::End] => {}
            _ => {
                return Err(Error::MissingColumnMetadata(format!(
                    "column {i} has no encoding for roles {roles:?}"
                )))
            }
        }
    }
    Ok(blocks)
}

fn to_alignment(blocks: Vec<(Gapped, Gapped)>) -> Result<PairwiseAlignment> {
    let (a, b): (Vec<Gapped>, Vec<Gapped>) = blocks.into_iter().unzip();
    PairwiseAlignment::new(a, b)
}

/// Casts `A` and `B` as a diploid instance `((A', B'), (C', D'))`.
pub fn corollary_encode(ri: &ReductionInstance) -> Result<DiploidInstance> {
    Ok(DiploidInstance {
        first: to_alignment(column_blocks(&ri.dag_a, &ri.layout_a.columns)?)?,
        second: to_alignment(column_blocks(&ri.dag_b, &ri.layout_b.columns)?)?,
        scheme: corollary_scheme(ri.params.d),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    /// Negated diploid optimum minus `2ℓ`.
    pub v1: i64,
    /// Covering-alignment optimum of the expanded DAGs (sum objective).
    pub v2: u64,
    pub lcs_len: usize,
    /// `2(ℓ - |LCS|)`.
    pub bound: u64,
    pub columns_a: usize,
    pub columns_b: usize,
}

impl CorollaryReport {
    pub fn equal(&self) -> bool {
        self.v1 == self.v2 as i64
    }

    pub fn bound_holds(&self) -> bool {
        self.v2 <= self.bound
    }
}

/// Runs the diploid and covering-alignment oracles side by side.
pub fn corollary_verify(ri: &ReductionInstance, guard: DiploidGuard, max_pairs: usize) -> Result<CorollaryReport> {
    let inst = corollary_encode(ri)?;
    let opts = SolverOptions {
        max_pairs,
        ..Default::default()
    };
    let (diploid, cover) = std::thread::scope(|s| {
        let diploid = s.spawn(|| solve_diploid_bruteforce_with(&inst, guard));
        let cover = solve_bruteforce(&expand(&ri.dag_a), &expand(&ri.dag_b), &opts);
        (diploid.join().expect("diploid solver panicked"), cover)
    });
    let diploid = diploid?;
    let cover = cover?;
    let Score::Finite(best) = diploid.value else {
        return Err(Error::ConstructionMismatch("diploid optimum is -inf".into()));
    };
    let ObjectiveValue::Scalar(v2) = cover.value else {
        unreachable!("sum objective yields a scalar")
    };
    let ell = ri.params.ell;
    let lcs = lcs_multi(ri.lcs.strings())?;
    Ok(CorollaryReport {
        v1: -best - 2 * ell as i64,
        v2,
        lcs_len: lcs.len(),
        bound: 2 * (ell - lcs.len()) as u64,
        columns_a: inst.first.len(),
        columns_b: inst.second.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::tests::instance;
    use crate::reduction::{build_instance, default_params, Scale};

    #[test]
    fn scheme_table() {
        const NI: Option<i64> = None;
        let d = 5;
        // Rows and columns in the order 0, 1, d, t, gap; None is -inf.
        let table: [[Option<i64>; 5]; 5] = [
            [Some(0), Some(-1), Some(-d), NI, Some(-1)],
            [Some(-1), Some(0), Some(-d), NI, Some(-1)],
            [Some(-d), Some(-d), Some(0), NI, Some(-d)],
            [NI, NI, NI, Some(0), NI],
            [Some(-1), Some(-1), Some(-d), NI, Some(0)],
        ];
        let s = corollary_scheme(d as usize);
        let sym = |i: usize| (i < 4).then_some(Symbol(i as u8));
        for (i, row) in table.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                let want = want.map_or(Score::NegInf, Score::Finite);
                assert_eq!(s.score(sym(i), sym(j)), want, "({i}, {j})");
            }
        }
    }

    #[test]
    fn blocks_follow_column_roles() {
        let inst = instance(&["01", "10"]);
        let mut p = default_params(&inst, Scale::Desk);
        p.big_n = 2;
        let ri = build_instance(&inst, &p).unwrap();
        let enc = corollary_encode(&ri).unwrap();
        let ab = Alphabet::corollary();
        // head 01, tab pair, stage 1 (string 10), tab pair, stage 2 (string 01), lone tab.
        assert_eq!(enc.first.render(&ab), ("01t1d0dt0d1dt".into(), "01t----t-----".into()));
        // lone tab, stage 1, tab pair, stage 2, tab pair, tail 10.
        assert_eq!(enc.second.render(&ab), ("t1d0dt0d1dt10".into(), "-----t----t10".into()));
        assert_eq!(enc.scheme, corollary_scheme(5));
    }

    #[test]
    fn missing_metadata() {
        let inst = instance(&["01", "10"]);
        let ri = build_instance(&inst, &default_params(&inst, Scale::Desk)).unwrap();
        assert!(matches!(
            column_blocks(&ri.dag_a, &[]),
            Err(Error::MissingColumnMetadata(_))
        ));
        let bogus = [Column(vec![(0, Role::Char)])];
        assert!(matches!(
            column_blocks(&ri.dag_a, &bogus),
            Err(Error::MissingColumnMetadata(_))
        ));
    }
}
