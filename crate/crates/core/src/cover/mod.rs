//! Exact solvers for choosing two covering paths in each of two labeled
//! DAGs so that the edit distances between corresponding reads are small.
//!
//! [`solve_bruteforce`] handles every variant by exhaustive search;
//! [`solve_relaxed_dp`] is a polynomial dynamic program for the variant in
//! which the second DAG need not be covered.

mod brute;
mod relaxed;

pub use brute::{covering_pairs, solve_bruteforce};
pub use relaxed::solve_relaxed_dp;

use std::fmt;
use std::str::FromStr;

use crate::dag::{jointly_cover, read, CoverPair, DagPath, LabeledDag};
use crate::error::{Error, Result};
use crate::strings::edit_distance;

/// How the red and green distances are folded into one value.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Objective {
    #[default]
    Sum,
    Weighted {
        red: u64,
        green: u64,
    },
    /// Minimize the red distance first, then the green one.
    Lexicographic,
    MaxOfTwo,
}

/// An objective value; `Pair` only arises from [`Objective::Lexicographic`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ObjectiveValue {
    Scalar(u64),
    Pair(u64, u64),
}

impl Objective {
    pub fn weighted(red: u64, green: u64) -> Result<Self> {
        if red == 0 && green == 0 {
            return Err(Error::UnsupportedOptions("weights must not both be zero".into()));
        }
        Ok(Objective::Weighted { red, green })
    }

    pub fn fold(self, red: u64, green: u64) -> ObjectiveValue {
        match self {
            Objective::Sum => ObjectiveValue::Scalar(red + green),
            Objective::Weighted { red: a, green: b } => ObjectiveValue::Scalar(a * red + b * green),
            Objective::Lexicographic => ObjectiveValue::Pair(red, green),
            Objective::MaxOfTwo => ObjectiveValue::Scalar(red.max(green)),
        }
    }

    /// Strand weights when the objective is a weighted sum.
    pub(crate) fn linear_weights(self) -> Option<(u64, u64)> {
        match self {
            Objective::Sum => Some((1, 1)),
            Objective::Weighted { red, green } => Some((red, green)),
            _ => None,
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Sum => write!(f, "sum"),
            Objective::Weighted { red, green } => write!(f, "weighted:{red},{green}"),
            Objective::Lexicographic => write!(f, "lex"),
            Objective::MaxOfTwo => write!(f, "max"),
        }
    }
}

impl FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedOptions(format!("unknown objective {s:?}"));
        match s {
            "sum" => Ok(Objective::Sum),
            "lex" => Ok(Objective::Lexicographic),
            "max" => Ok(Objective::MaxOfTwo),
            _ => {
                let w = s.strip_prefix("weighted:").ok_or_else(bad)?;
                let (r, g) = w.split_once(',').ok_or_else(bad)?;
                Objective::weighted(r.parse().map_err(|_| bad())?, g.parse().map_err(|_| bad())?)
            }
        }
    }
}

impl fmt::Display for ObjectiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveValue::Scalar(v) => write!(f, "{v}"),
            ObjectiveValue::Pair(r, g) => write!(f, "{r},{g}"),
        }
    }
}

impl FromStr for ObjectiveValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::parse(0, format!("bad objective value {s:?}")))
        };
        match s.split_once(',') {
            Some((r, g)) => Ok(ObjectiveValue::Pair(num(r)?, num(g)?)),
            None => Ok(ObjectiveValue::Scalar(num(s)?)),
        }
    }
}

/// Default limit on enumerated path pairs per DAG.
pub const PAIR_GUARD: usize = 1_000_000;

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub objective: Objective,
    /// Red and green paths of the first DAG may not share nodes.
    pub disjoint_d1: bool,
    pub disjoint_d2: bool,
    /// Restrict every path to start at a source and end at a sink.
    pub source_to_sink_only: bool,
    pub require_cover_d2: bool,
    /// Guard on path pairs enumerated per DAG by the brute-force solver.
    pub max_pairs: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            objective: Objective::Sum,
            disjoint_d1: false,
            disjoint_d2: false,
            source_to_sink_only: false,
            require_cover_d2: true,
            max_pairs: PAIR_GUARD,
        }
    }
}

/// Red and green paths in both DAGs plus the objective value they attain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverSolution {
    pub r1: DagPath,
    pub g1: DagPath,
    pub r2: DagPath,
    pub g2: DagPath,
    pub value: ObjectiveValue,
}

impl CoverSolution {
    pub fn first(&self) -> CoverPair {
        CoverPair {
            red: self.r1.clone(),
            green: self.g1.clone(),
        }
    }

    pub fn second(&self) -> CoverPair {
        CoverPair {
            red: self.r2.clone(),
            green: self.g2.clone(),
        }
    }

    /// Red and green strands exchanged in both DAGs.
    pub fn strands_swapped(&self) -> Self {
        CoverSolution {
            r1: self.g1.clone(),
            g1: self.r1.clone(),
            r2: self.g2.clone(),
            g2: self.r2.clone(),
            value: self.value,
        }
    }

    /// `value <v>` followed by `path r1|g1|r2|g2 <ids...>` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("value {}\n", self.value);
        for (name, p) in [("r1", &self.r1), ("g1", &self.g1), ("r2", &self.r2), ("g2", &self.g2)] {
            out.push_str("path ");
            out.push_str(name);
            for v in p.nodes() {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or_else(|| Error::parse(1, "empty solution"))?;
        let value = first
            .strip_prefix("value ")
            .ok_or_else(|| Error::parse(1, "expected `value <v>`"))?
            .trim()
            .parse()?;
        let mut paths = Vec::new();
        for name in ["r1", "g1", "r2", "g2"] {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("missing path {name}")))?;
            let mut it = line.split_whitespace();
            if it.next() != Some("path") || it.next() != Some(name) {
                return Err(Error::parse(ln + 1, format!("expected `path {name} ...`")));
            }
            let nodes = it
                .map(|t| t.parse().map_err(|_| Error::parse(ln + 1, "bad node id")))
                .collect::<Result<Vec<_>>>()?;
            paths.push(DagPath::new(nodes)?);
        }
        let mut paths = paths.into_iter();
        let mut next = || paths.next().unwrap();
        Ok(CoverSolution {
            r1: next(),
            g1: next(),
            r2: next(),
            g2: next(),
            value,
        })
    }
}

/// `(d(r(R1), r(R2)), d(r(G1), r(G2)))`.
pub fn strand_distances(d1: &LabeledDag, d2: &LabeledDag, sol: &CoverSolution) -> Result<(u64, u64)> {
    let red = edit_distance(&read(d1, &sol.r1)?, &read(d2, &sol.r2)?);
    let green = edit_distance(&read(d1, &sol.g1)?, &read(d2, &sol.g2)?);
    Ok((red as u64, green as u64))
}

/// Recomputes the objective of `sol` after checking every constraint in `opts`.
pub fn evaluate_solution(
    d1: &LabeledDag,
    d2: &LabeledDag,
    sol: &CoverSolution,
    opts: &SolverOptions,
) -> Result<ObjectiveValue> {
    for (d, pair) in [(d1, sol.first()), (d2, sol.second())] {
        for p in [&pair.red, &pair.green] {
            d.validate_path(p)?;
            if opts.source_to_sink_only && !(d.is_source(p.first()) && d.is_sink(p.last())) {
                return Err(Error::InvalidPath("path is not source-to-sink".into()));
            }
        }
    }
    if !jointly_cover(d1, &sol.first())? {
        return Err(Error::CoverViolated);
    }
    if opts.require_cover_d2 && !jointly_cover(d2, &sol.second())? {
        return Err(Error::CoverViolated);
    }
    if opts.disjoint_d1 {
        if let Some(v) = sol.r1.intersects(&sol.g1) {
            return Err(Error::DisjointnessViolated(v));
        }
    }
    if opts.disjoint_d2 {
        if let Some(v) = sol.r2.intersects(&sol.g2) {
            return Err(Error::DisjointnessViolated(v));
        }
    }
    let (red, green) = strand_distances(d1, d2, sol)?;
    Ok(opts.objective.fold(red, green))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objective_parsing() {
        assert_eq!("sum".parse::<Objective>().unwrap(), Objective::Sum);
        assert_eq!("lex".parse::<Objective>().unwrap(), Objective::Lexicographic);
        assert_eq!("max".parse::<Objective>().unwrap(), Objective::MaxOfTwo);
        assert_eq!(
            "weighted:2,3".parse::<Objective>().unwrap(),
            Objective::Weighted { red: 2, green: 3 }
        );
        assert!("weighted:0,0".parse::<Objective>().is_err());
        assert!("weighted:1".parse::<Objective>().is_err());
        assert!("min".parse::<Objective>().is_err());
        for o in ["sum", "lex", "max", "weighted:1,4"] {
            assert_eq!(o.parse::<Objective>().unwrap().to_string(), o);
        }
    }

    #[test]
    fn folding() {
        assert_eq!(Objective::Sum.fold(2, 3), ObjectiveValue::Scalar(5));
        assert_eq!(
            Objective::Weighted { red: 2, green: 0 }.fold(2, 3),
            ObjectiveValue::Scalar(4)
        );
        assert_eq!(Objective::Lexicographic.fold(0, 3), ObjectiveValue::Pair(0, 3));
        assert_eq!(Objective::MaxOfTwo.fold(2, 3), ObjectiveValue::Scalar(3));
        assert!(ObjectiveValue::Pair(0, 9) < ObjectiveValue::Pair(1, 0));
    }

    #[test]
    fn solution_text_round_trip() {
        let sol = CoverSolution {
            r1: DagPath::new(vec![0, 1]).unwrap(),
            g1: DagPath::single(2),
            r2: DagPath::new(vec![0, 2, 3]).unwrap(),
            g2: DagPath::single(1),
            value: ObjectiveValue::Pair(0, 4),
        };
        let text = sol.to_text();
        assert_eq!(text, "value 0,4\npath r1 0 1\npath g1 2\npath r2 0 2 3\npath g2 1\n");
        assert_eq!(CoverSolution::from_text(&text).unwrap(), sol);
        assert!(CoverSolution::from_text("value 1\npath r1 0\n").is_err());
        assert!(CoverSolution::from_text("value 1\npath r1\npath g1 0\npath r2 0\npath g2 0\n").is_err());
    }
}
