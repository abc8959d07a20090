//! Node-labeled DAGs, path reads and the structural operations used by the
//! covering solvers.

mod cover;
mod encode;
mod io;

pub use cover::{min_chain_cover_size, two_path_cover, two_path_coverable};
pub use encode::encode_diploid;
pub use io::{parse_dag, write_dag, RawDag};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::strings::Str;

pub type NodeId = usize;

/// Default limit on the number of paths produced by [`enumerate_paths`].
pub const PATH_GUARD: usize = 1_000_000;

/// Which label strings a DAG admits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    /// Exactly one character per node.
    Sigma,
    /// At most one character per node.
    SigmaEps,
    /// Any string.
    SigmaStar,
    /// Any non-empty string.
    SigmaPlus,
}

impl Flavor {
    pub fn admits(self, label_len: usize) -> bool {
        match self {
            Flavor::Sigma => label_len == 1,
            Flavor::SigmaEps => label_len <= 1,
            Flavor::SigmaStar => true,
            Flavor::SigmaPlus => label_len >= 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Sigma => "sigma",
            Flavor::SigmaEps => "sigma-eps",
            Flavor::SigmaStar => "sigma-star",
            Flavor::SigmaPlus => "sigma-plus",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sigma" => Flavor::Sigma,
            "sigma-eps" => Flavor::SigmaEps,
            "sigma-star" => Flavor::SigmaStar,
            "sigma-plus" => Flavor::SigmaPlus,
            _ => return Err(Error::InvalidDag(format!("unknown flavor {s:?}"))),
        })
    }
}

/// A non-empty DAG with one string label per node.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledDag {
    flavor: Flavor,
    labels: Vec<Str>,
    succ: Vec<Vec<NodeId>>,
    pred: Vec<Vec<NodeId>>,
    topo: Vec<NodeId>,
}

impl LabeledDag {
    /// Validates node ids, acyclicity and the flavor's label constraint.
    /// Duplicate arcs are merged.
    pub fn new(flavor: Flavor, labels: Vec<Str>, arcs: &[(NodeId, NodeId)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidDag("a DAG needs at least one node".into()));
        }
        for (v, l) in labels.iter().enumerate() {
            if !flavor.admits(l.len()) {
                return Err(Error::InvalidDag(format!(
                    "node {v} has a label of length {} not allowed in a {flavor} DAG",
                    l.len()
                )));
            }
        }
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidDag(format!("arc ({u},{v}) names a missing node")));
            }
            if u == v {
                return Err(Error::InvalidDag(format!("self-loop at node {u}")));
            }
            succ[u].push(v);
            pred[v].push(u);
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        let topo = topological_order(&succ, &pred).ok_or_else(|| Error::InvalidDag("arcs contain a cycle".into()))?;
        Ok(LabeledDag {
            flavor,
            labels,
            succ,
            pred,
            topo,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn label(&self, v: NodeId) -> &Str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[Str] {
        &self.labels
    }

    pub fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: NodeId) -> &[NodeId] {
        &self.pred[v]
    }

    pub fn has_arc(&self, u: NodeId, v: NodeId) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    /// All arcs in `(u, v)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// A topological order, ties broken by smallest node id.
    pub fn topo_order(&self) -> &[NodeId] {
        &self.topo
    }

    pub fn sources(&self) -> Vec<NodeId> {
        (0..self.node_count()).filter(|&v| self.pred[v].is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<NodeId> {
        (0..self.node_count()).filter(|&v| self.succ[v].is_empty()).collect()
    }

    pub fn is_source(&self, v: NodeId) -> bool {
        self.pred[v].is_empty()
    }

    pub fn is_sink(&self, v: NodeId) -> bool {
        self.succ[v].is_empty()
    }

    pub fn unique_source(&self) -> Result<NodeId> {
        match self.sources().as_slice() {
            [s] => Ok(*s),
            _ => Err(Error::NonUniqueSource),
        }
    }

    pub fn unique_sink(&self) -> Result<NodeId> {
        match self.sinks().as_slice() {
            [t] => Ok(*t),
            _ => Err(Error::NonUniqueSink),
        }
    }

    /// Same DAG with another flavor; fails if a label violates it.
    pub fn with_flavor(&self, flavor: Flavor) -> Result<Self> {
        let arcs: Vec<_> = self.arcs().collect();
        LabeledDag::new(flavor, self.labels.clone(), &arcs)
    }

    /// `reach[u][v]` iff there is a non-trivial directed path from `u` to `v`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.node_count();
        let mut reach = vec![vec![false; n]; n];
        for &u in self.topo.iter().rev() {
            for &v in &self.succ[u] {
                reach[u][v] = true;
                let (row_u, row_v) = if u < v {
                    let (lo, hi) = reach.split_at_mut(v);
                    (&mut lo[u], &hi[0])
                } else {
                    let (lo, hi) = reach.split_at_mut(u);
                    (&mut hi[0], &lo[v])
                };
                for (a, &b) in row_u.iter_mut().zip(row_v.iter()) {
                    *a |= b;
                }
            }
        }
        reach
    }

    /// Checks that `p` is a directed path of this DAG.
    pub fn validate_path(&self, p: &DagPath) -> Result<()> {
        for &v in &p.0 {
            if v >= self.node_count() {
                return Err(Error::InvalidPath(format!("node {v} does not exist")));
            }
        }
        for w in p.0.windows(2) {
            if !self.has_arc(w[0], w[1]) {
                return Err(Error::InvalidPath(format!("no arc ({},{})", w[0], w[1])));
            }
        }
        Ok(())
    }

    /// A canonical form for isomorphism checks: nodes relabeled by
    /// (longest-path depth, label, in-degree, out-degree), arcs sorted.
    #[allow(clippy::type_complexity)]
    pub fn canonical_form(&self) -> (Flavor, Vec<(Str, usize, usize)>, Vec<(usize, usize)>) {
        let n = self.node_count();
        let mut depth = vec![0usize; n];
        for &u in &self.topo {
            for &v in &self.succ[u] {
                depth[v] = depth[v].max(depth[u] + 1);
            }
        }
        let mut order: Vec<NodeId> = (0..n).collect();
        order.sort_by(|&a, &b| {
            (depth[a], &self.labels[a], self.pred[a].len(), self.succ[a].len())
                .cmp(&(depth[b], &self.labels[b], self.pred[b].len(), self.succ[b].len()))
                .then(a.cmp(&b))
        });
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let nodes = order
            .iter()
            .map(|&v| (self.labels[v].clone(), self.pred[v].len(), self.succ[v].len()))
            .collect();
        let mut arcs: Vec<_> = self.arcs().map(|(u, v)| (rank[u], rank[v])).collect();
        arcs.sort_unstable();
        (self.flavor, nodes, arcs)
    }
}

fn topological_order(succ: &[Vec<NodeId>], pred: &[Vec<NodeId>]) -> Option<Vec<NodeId>> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let n = succ.len();
    let mut indeg: Vec<usize> = pred.iter().map(Vec::len).collect();
    let mut ready: BinaryHeap<Reverse<NodeId>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(u)) = ready.pop() {
        order.push(u);
        for &v in &succ[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(Reverse(v));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// A non-empty node sequence; validity against a DAG is checked separately.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DagPath(Vec<NodeId>);

impl DagPath {
    pub fn new(nodes: Vec<NodeId>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidPath("a path has at least one node".into()));
        }
        Ok(DagPath(nodes))
    }

    pub fn single(v: NodeId) -> Self {
        DagPath(vec![v])
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn first(&self) -> NodeId {
        self.0[0]
    }

    pub fn last(&self) -> NodeId {
        *self.0.last().expect("paths are non-empty")
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether the two paths share a node.
    pub fn intersects(&self, other: &DagPath) -> Option<NodeId> {
        self.0.iter().copied().find(|v| other.0.contains(v))
    }
}

/// A red and a green path in the same DAG.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverPair {
    pub red: DagPath,
    pub green: DagPath,
}

/// Concatenation of node labels along `p`.
pub fn read(d: &LabeledDag, p: &DagPath) -> Result<Str> {
    d.validate_path(p)?;
    Ok(read_unchecked(d, p.nodes()))
}

pub(crate) fn read_unchecked(d: &LabeledDag, nodes: &[NodeId]) -> Str {
    Str::concat(nodes.iter().map(|&v| d.label(v)))
}

/// The width-1 DAG spelling `s`, one node per character.
pub fn line_dag(s: &[crate::strings::Symbol]) -> Result<LabeledDag> {
    if s.is_empty() {
        return Err(Error::EmptyString);
    }
    let labels = s.iter().map(|&c| Str::from_symbols(vec![c])).collect();
    let arcs: Vec<_> = (1..s.len()).map(|i| (i - 1, i)).collect();
    LabeledDag::new(Flavor::Sigma, labels, &arcs)
}

/// Like [`line_dag`] but with every forward arc `(v_i, v_j)`, `i < j`.
pub fn transitive_closure_dag(s: &[crate::strings::Symbol]) -> Result<LabeledDag> {
    if s.is_empty() {
        return Err(Error::EmptyString);
    }
    let labels = s.iter().map(|&c| Str::from_symbols(vec![c])).collect();
    let arcs: Vec<_> = (0..s.len())
        .flat_map(|i| (i + 1..s.len()).map(move |j| (i, j)))
        .collect();
    LabeledDag::new(Flavor::Sigma, labels, &arcs)
}

/// Disjoint union of `d1` and `d2` plus the arc from `d1`'s sink to `d2`'s
/// source. Nodes of `d2` are shifted by `d1.node_count()`.
pub fn concat(d1: &LabeledDag, d2: &LabeledDag) -> Result<LabeledDag> {
    let t1 = d1.unique_sink()?;
    let s2 = d2.unique_source()?;
    let off = d1.node_count();
    let mut labels = d1.labels.clone();
    labels.extend(d2.labels.iter().cloned());
    let mut arcs: Vec<_> = d1.arcs().collect();
    arcs.extend(d2.arcs().map(|(u, v)| (u + off, v + off)));
    arcs.push((t1, s2 + off));
    let flavor = if d1.flavor == d2.flavor {
        d1.flavor
    } else {
        Flavor::SigmaStar
    };
    LabeledDag::new(flavor, labels, &arcs)
}

/// Result of [`expand_with_map`]: the expanded DAG and where each original
/// node went.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub dag: LabeledDag,
    /// `span[v] = (head, tail)` of the chain replacing original node `v`.
    pub span: Vec<(NodeId, NodeId)>,
    /// Original node owning each expanded node.
    pub owner: Vec<NodeId>,
}

impl Expansion {
    /// Maps a path of the original DAG onto the expanded one.
    pub fn lift_path(&self, p: &DagPath) -> DagPath {
        let nodes = p
            .nodes()
            .iter()
            .flat_map(|&v| {
                let (h, t) = self.span[v];
                h..=t
            })
            .collect();
        DagPath(nodes)
    }
}

/// Replaces every node labeled with `k >= 2` characters by a chain of `k`
/// single-character nodes; empty labels stay as single ε nodes.
pub fn expand(d: &LabeledDag) -> LabeledDag {
    expand_with_map(d).dag
}

pub fn expand_with_map(d: &LabeledDag) -> Expansion {
    let mut labels = Vec::new();
    let mut span = Vec::with_capacity(d.node_count());
    let mut owner = Vec::new();
    let mut arcs = Vec::new();
    for (v, l) in d.labels.iter().enumerate() {
        let head = labels.len();
        if l.is_empty() {
            labels.push(Str::new());
            owner.push(v);
        } else {
            for (i, &c) in l.iter().enumerate() {
                if i > 0 {
                    arcs.push((labels.len() - 1, labels.len()));
                }
                labels.push(Str::from_symbols(vec![c]));
                owner.push(v);
            }
        }
        span.push((head, labels.len() - 1));
    }
    arcs.extend(d.arcs().map(|(u, v)| (span[u].1, span[v].0)));
    let flavor = if labels.iter().any(|l| l.is_empty()) {
        Flavor::SigmaEps
    } else {
        Flavor::Sigma
    };
    let dag = LabeledDag::new(flavor, labels, &arcs).expect("expansion preserves acyclicity");
    Expansion { dag, span, owner }
}

/// Every node lies on `c.red` or `c.green`.
pub fn jointly_cover(d: &LabeledDag, c: &CoverPair) -> Result<bool> {
    d.validate_path(&c.red)?;
    d.validate_path(&c.green)?;
    let mut seen = vec![false; d.node_count()];
    for &v in c.red.nodes().iter().chain(c.green.nodes()) {
        seen[v] = true;
    }
    Ok(seen.into_iter().all(|b| b))
}

/// All directed paths (or only source-to-sink ones), in lexicographic order
/// of their node sequences.
pub fn enumerate_paths(d: &LabeledDag, source_to_sink_only: bool) -> Result<Vec<DagPath>> {
    enumerate_paths_with_guard(d, source_to_sink_only, PATH_GUARD)
}

pub fn enumerate_paths_with_guard(d: &LabeledDag, source_to_sink_only: bool, max_paths: usize) -> Result<Vec<DagPath>> {
    fn walk(d: &LabeledDag, s2s: bool, max: usize, stack: &mut Vec<NodeId>, out: &mut Vec<DagPath>) -> Result<()> {
        let v = *stack.last().unwrap();
        if !s2s || d.is_sink(v) {
            if out.len() == max {
                return Err(Error::InstanceTooLarge(format!("more than {max} paths")));
            }
            out.push(DagPath(stack.clone()));
        }
        for &w in d.successors(v) {
            stack.push(w);
            walk(d, s2s, max, stack, out)?;
            stack.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..d.node_count() {
        if source_to_sink_only && !d.is_source(s) {
            continue;
        }
        stack.push(s);
        walk(d, source_to_sink_only, max_paths, &mut stack, &mut out)?;
        stack.pop();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::Alphabet;

    fn bin(s: &str) -> Str {
        Alphabet::binary().parse(s).unwrap()
    }

    fn diamond() -> LabeledDag {
        // s -> a, s -> b, a -> t, b -> t
        let labels = ["0", "1", "0", "1"].iter().map(|s| bin(s)).collect();
        LabeledDag::new(Flavor::Sigma, labels, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(LabeledDag::new(Flavor::Sigma, vec![], &[]).is_err());
        assert!(LabeledDag::new(Flavor::Sigma, vec![bin("0"), bin("1")], &[(0, 1), (1, 0)]).is_err());
        assert!(LabeledDag::new(Flavor::Sigma, vec![bin("0")], &[(0, 3)]).is_err());
        assert!(LabeledDag::new(Flavor::Sigma, vec![bin("")], &[]).is_err());
        assert!(LabeledDag::new(Flavor::SigmaEps, vec![bin("01")], &[]).is_err());
        assert!(LabeledDag::new(Flavor::SigmaPlus, vec![bin("")], &[]).is_err());
        assert!(LabeledDag::new(Flavor::SigmaStar, vec![bin(""), bin("0110")], &[(0, 1)]).is_ok());
    }

    #[test]
    fn read_examples() {
        let a = Alphabet::new("abc").unwrap();
        let labels = vec![a.parse("ab").unwrap(), Str::new(), a.parse("c").unwrap()];
        let d = LabeledDag::new(Flavor::SigmaStar, labels, &[(0, 1), (1, 2)]).unwrap();
        let p = DagPath::new(vec![0, 1, 2]).unwrap();
        assert_eq!(read(&d, &p).unwrap(), a.parse("abc").unwrap());
        let eps = LabeledDag::new(Flavor::SigmaEps, vec![Str::new()], &[]).unwrap();
        assert!(read(&eps, &DagPath::single(0)).unwrap().is_empty());
        let line = line_dag(&bin("010")).unwrap();
        assert_eq!(read(&line, &DagPath::new(vec![0, 1, 2]).unwrap()).unwrap(), bin("010"));
        assert!(matches!(
            read(&line, &DagPath::new(vec![0, 2]).unwrap()),
            Err(Error::InvalidPath(_))
        ));
        assert!(DagPath::new(vec![]).is_err());
    }

    #[test]
    fn line_and_closure_shapes() {
        for (s, arcs) in [("0", 0), ("01", 1), ("010", 2)] {
            let d = line_dag(&bin(s)).unwrap();
            assert_eq!((d.node_count(), d.arc_count()), (s.len(), arcs));
            assert_eq!(d.unique_source().unwrap(), 0);
            assert_eq!(d.unique_sink().unwrap(), s.len() - 1);
        }
        assert!(matches!(line_dag(&bin("")), Err(Error::EmptyString)));
        assert_eq!(transitive_closure_dag(&bin("0")).unwrap().arc_count(), 0);
        assert_eq!(
            transitive_closure_dag(&bin("01")).unwrap(),
            line_dag(&bin("01")).unwrap()
        );
        assert_eq!(transitive_closure_dag(&bin("010")).unwrap().arc_count(), 3);
        assert!(matches!(transitive_closure_dag(&bin("")), Err(Error::EmptyString)));
    }

    #[test]
    fn concat_examples() {
        let d = concat(&line_dag(&bin("0")).unwrap(), &line_dag(&bin("1")).unwrap()).unwrap();
        assert_eq!(d.canonical_form(), line_dag(&bin("01")).unwrap().canonical_form());
        assert_eq!((d.node_count(), d.arc_count()), (2, 1));
        let a = Alphabet::new("abc").unwrap();
        let d = concat(
            &line_dag(&a.parse("ab").unwrap()).unwrap(),
            &line_dag(&a.parse("c").unwrap()).unwrap(),
        )
        .unwrap();
        let full = DagPath::new(vec![0, 1, 2]).unwrap();
        assert_eq!(read(&d, &full).unwrap(), a.parse("abc").unwrap());
        assert!(matches!(
            concat(&diamond(), &three_isolated()),
            Err(Error::NonUniqueSource)
        ));
        assert!(matches!(
            concat(&three_isolated(), &diamond()),
            Err(Error::NonUniqueSink)
        ));
    }

    fn three_isolated() -> LabeledDag {
        LabeledDag::new(Flavor::Sigma, vec![bin("0"), bin("1"), bin("0")], &[]).unwrap()
    }

    #[test]
    fn expand_examples() {
        let d = LabeledDag::new(
            Flavor::SigmaStar,
            vec![bin("1"), bin("01"), bin("0")],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        let e = expand_with_map(&d);
        assert_eq!(e.dag.flavor(), Flavor::Sigma);
        assert_eq!(e.dag.node_count(), 4);
        assert_eq!(e.span[1], (1, 2));
        assert!(e.dag.has_arc(0, 1) && e.dag.has_arc(1, 2) && e.dag.has_arc(2, 3));
        assert_eq!(e.dag.arc_count(), 3);
        assert_eq!(e.owner, vec![0, 1, 1, 2]);

        let single = line_dag(&bin("0110")).unwrap();
        assert_eq!(expand(&single), single);

        let eps = LabeledDag::new(Flavor::SigmaStar, vec![Str::new(), bin("00")], &[(0, 1)]).unwrap();
        let e = expand(&eps);
        assert_eq!(e.flavor(), Flavor::SigmaEps);
        assert_eq!(e.node_count(), 3);
        assert!(e.label(0).is_empty());
    }

    #[test]
    fn jointly_cover_examples() {
        let line = line_dag(&bin("010")).unwrap();
        let full = DagPath::new(vec![0, 1, 2]).unwrap();
        let c = CoverPair {
            red: full,
            green: DagPath::single(1),
        };
        assert!(jointly_cover(&line, &c).unwrap());
        let d = diamond();
        let sat = DagPath::new(vec![0, 1, 3]).unwrap();
        let sbt = DagPath::new(vec![0, 2, 3]).unwrap();
        assert!(jointly_cover(
            &d,
            &CoverPair {
                red: sat.clone(),
                green: sbt
            }
        )
        .unwrap());
        assert!(!jointly_cover(
            &d,
            &CoverPair {
                red: sat.clone(),
                green: sat
            }
        )
        .unwrap());
        let bad = CoverPair {
            red: DagPath::single(9),
            green: DagPath::single(0),
        };
        assert!(jointly_cover(&d, &bad).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let line = line_dag(&bin("010")).unwrap();
        let all = enumerate_paths(&line, false).unwrap();
        let got: Vec<Vec<usize>> = all.iter().map(|p| p.nodes().to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![0], vec![0, 1], vec![0, 1, 2], vec![1], vec![1, 2], vec![2]]
        );
        assert_eq!(enumerate_paths(&line, true).unwrap().len(), 1);
        assert_eq!(enumerate_paths(&diamond(), true).unwrap().len(), 2);
        assert!(enumerate_paths_with_guard(&line, false, 5).unwrap_err().is_guard());
    }

    #[test]
    fn reachability_matches_closure() {
        let d = diamond();
        let r = d.reachability();
        assert!(r[0][3] && r[0][1] && r[1][3]);
        assert!(!r[1][2] && !r[2][1] && !r[3][0]);
    }
}
