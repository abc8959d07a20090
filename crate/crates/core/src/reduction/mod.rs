//! Reduction from longest common subsequence of equal-length binary strings
//! to covering alignment, and from there to diploid alignment.
//!
//! [`build_instance`] produces two DAGs `A` and `B` in which tab-labeled
//! nodes separate consecutive copies of a per-string gadget. A common
//! subsequence of length `ℓ - δ` yields covering paths at total distance
//! `2δ` ([`lemma1_witness`]); conversely [`lemma2_extract`] recovers a
//! common subsequence from covering paths.

mod bundle;
mod corollary;
mod lemmas;
mod tab;

pub use bundle::{load_bundle, write_bundle, BundleFiles, BUNDLE_FILES};
pub use corollary::{column_blocks, corollary_encode, corollary_scheme, corollary_verify, CorollaryReport};
pub use lemmas::{lemma1_witness, lemma2_extract, witness_distances, WitnessPaths};
pub use tab::{gen_tab, tab_feasible, verify_distinct_substrings, TAB_ATTEMPTS};

use std::fmt;
use std::str::FromStr;

use crate::cover::CoverSolution;
use crate::dag::{expand_with_map, Expansion, Flavor, LabeledDag, NodeId};
use crate::error::{Error, Result};
use crate::strings::{Alphabet, Str, Symbol};

/// `n >= 2` binary strings of a common length `ℓ >= 1`, each containing
/// both symbols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LcsInstance {
    strings: Vec<Str>,
}

impl LcsInstance {
    pub fn new(strings: Vec<Str>) -> Result<Self> {
        if strings.len() < 2 {
            return Err(Error::InvalidInstance("at least two strings are required".into()));
        }
        let ell = strings[0].len();
        if ell == 0 {
            return Err(Error::InvalidInstance("strings must be non-empty".into()));
        }
        for (i, s) in strings.iter().enumerate() {
            if s.len() != ell {
                return Err(Error::InvalidInstance(format!(
                    "string {i} has length {}, expected {ell}",
                    s.len()
                )));
            }
            if s.iter().any(|c| c.0 > 1) {
                return Err(Error::InvalidInstance(format!("string {i} is not binary")));
            }
            if !(s.contains(&Symbol(0)) && s.contains(&Symbol(1))) {
                return Err(Error::InvalidInstance(format!("string {i} lacks a 0 or a 1")));
            }
        }
        Ok(LcsInstance { strings })
    }

    pub fn strings(&self) -> &[Str] {
        &self.strings
    }

    pub fn n(&self) -> usize {
        self.strings.len()
    }

    pub fn ell(&self) -> usize {
        self.strings[0].len()
    }

    /// `alphabet 01` followed by one string per line.
    pub fn to_text(&self) -> String {
        let ab = Alphabet::binary();
        let mut out = String::from("alphabet 01\n");
        for s in &self.strings {
            out.push_str(&ab.render(s));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, l)) if l.trim() == "alphabet 01" => {}
            Some((i, _)) => return Err(Error::parse(i + 1, "expected `alphabet 01`")),
            None => return Err(Error::EmptyInput("LCS instance")),
        }
        let ab = Alphabet::binary();
        let strings = lines
            .map(|(i, l)| ab.parse(l.trim()).map_err(|e| Error::parse(i + 1, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        LcsInstance::new(strings)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scale {
    /// Lengths from the asymptotic analysis; astronomically large tabs.
    Paper,
    /// Same structure with short tabs, small enough for exhaustive checks.
    Desk,
}

impl FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Scale::Paper),
            "desk" => Ok(Scale::Desk),
            _ => Err(Error::InvalidInstance(format!("unknown scale {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ReductionParams {
    pub n: usize,
    pub ell: usize,
    /// Length of the `0` runs separating gadget positions.
    pub d: usize,
    /// Number of gadget stages.
    pub big_n: usize,
    /// Bound on the material between two tabs that a tab must dominate.
    pub m: usize,
    pub tab_length: usize,
    /// Window length whose substrings of the tab must be pairwise distinct.
    pub tab_k: usize,
    pub seed: u64,
}

fn ceil_log2(x: f64) -> usize {
    x.log2().ceil() as usize
}

pub fn default_params(inst: &LcsInstance, scale: Scale) -> ReductionParams {
    let (n, ell) = (inst.n(), inst.ell());
    let big_n = n * n;
    let m = (2 * ell + 1).max(4 * ell * ell);
    let (tab_length, tab_k) = match scale {
        Scale::Paper => {
            let q = (2 * big_n + 1) as f64;
            let m = m as f64;
            let len = (q * m * (q * m).log2() + q * m * m).ceil() as usize;
            (len, (2.0 * (len as f64).log2()).ceil() as usize)
        }
        Scale::Desk => {
            let len = 4 * ell;
            (len, ceil_log2(len as f64).max(1))
        }
    };
    ReductionParams {
        n,
        ell,
        d: 2 * ell + 1,
        big_n,
        m,
        tab_length,
        tab_k,
        seed: 0,
    }
}

impl ReductionParams {
    pub fn check(&self, inst: &LcsInstance) -> Result<()> {
        let bad = |m: String| Err(Error::ParameterMismatch(m));
        if self.n != inst.n() || self.ell != inst.ell() {
            return bad(format!(
                "parameters are for n={}, ℓ={} but the instance has n={}, ℓ={}",
                self.n,
                self.ell,
                inst.n(),
                inst.ell()
            ));
        }
        if self.d == 0 || self.big_n == 0 {
            return bad("D and N must be at least 1".into());
        }
        if self.tab_k == 0 || self.tab_length < self.tab_k {
            return bad(format!("need tab length {} >= k {} >= 1", self.tab_length, self.tab_k));
        }
        Ok(())
    }

    /// Total label length of both DAGs.
    pub fn label_chars(&self) -> usize {
        let gadgets = self.big_n * self.ell * (1 + self.d);
        2 * ((2 * self.big_n + 1) * self.tab_length + gadgets + self.ell)
    }

    /// Whether a tab has distinct windows and dominates the inter-tab material.
    pub fn tab_adequate(&self, tab: &[Symbol]) -> bool {
        tab.len() >= self.m && verify_distinct_substrings(tab, self.tab_k)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Role {
    Tab,
    /// A gadget position's character.
    Char,
    /// The ε alternative to a gadget character.
    Eps,
    /// A `0^D` separator run.
    Dsep,
    Head,
    Tail,
    /// The ε source or sink.
    End,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Tab => "tab",
            Role::Char => "char",
            Role::Eps => "eps",
            Role::Dsep => "dsep",
            Role::Head => "head",
            Role::Tail => "tail",
            Role::End => "end",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Role {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [
            Role::Tab,
            Role::Char,
            Role::Eps,
            Role::Dsep,
            Role::Head,
            Role::Tail,
            Role::End,
        ]
        .into_iter()
        .find(|r| r.name() == s)
        .ok_or_else(|| Error::MissingColumnMetadata(format!("unknown role {s:?}")))
    }
}

/// One or two nodes drawn side by side; columns are listed left to right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Column(pub Vec<(NodeId, Role)>);

/// Node ids of one gadget copy; position `j` has character node `x[j]`,
/// its ε alternative `e[j]` and separator `z[j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gadget {
    pub residue: usize,
    pub x: Vec<NodeId>,
    pub e: Vec<NodeId>,
    pub z: Vec<NodeId>,
}

impl Gadget {
    pub fn entries(&self) -> [NodeId; 2] {
        [self.x[0], self.e[0]]
    }

    pub fn exits(&self) -> [NodeId; 3] {
        let j = self.x.len() - 1;
        [self.x[j], self.e[j], self.z[j]]
    }

    /// Red and green strands for a coloring (`green[j]` puts position `j`
    /// on the green strand). Red takes every separator.
    pub fn strands(&self, green: &[bool]) -> (Vec<NodeId>, Vec<NodeId>) {
        let mut red = Vec::new();
        let mut grn = Vec::new();
        for (j, &g) in green.iter().enumerate() {
            if g {
                grn.push(self.x[j]);
                red.push(self.e[j]);
            } else {
                red.push(self.x[j]);
                grn.push(self.e[j]);
            }
            red.push(self.z[j]);
        }
        (red, grn)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Layout {
    pub source: NodeId,
    pub sink: NodeId,
    /// The head (`S_0`) in `A`, the tail (`S_1`) in `B`.
    pub side: NodeId,
    /// `tabs[i]` lists the tab nodes at depth `i + 1`.
    pub tabs: Vec<Vec<NodeId>>,
    /// `stages[i]` is the gadget of stage `i + 1`, built from string `(i + 1) mod n`.
    pub stages: Vec<Gadget>,
    pub columns: Vec<Column>,
}

#[derive(Default)]
struct Builder {
    labels: Vec<Str>,
    arcs: Vec<(NodeId, NodeId)>,
    columns: Vec<Column>,
}

impl Builder {
    fn column(&mut self, nodes: &[(Str, Role)]) -> Vec<NodeId> {
        let mut ids = Vec::new();
        let mut col = Vec::new();
        for (label, role) in nodes {
            let id = self.labels.len();
            self.labels.push(label.clone());
            ids.push(id);
            col.push((id, *role));
        }
        self.columns.push(Column(col));
        ids
    }

    fn single(&mut self, label: Str, role: Role) -> NodeId {
        self.column(&[(label, role)])[0]
    }

    fn connect(&mut self, from: &[NodeId], to: &[NodeId]) {
        for &u in from {
            for &v in to {
                self.arcs.push((u, v));
            }
        }
    }

    fn gadget(&mut self, si: &[Symbol], d: usize, residue: usize) -> Gadget {
        let run: Str = std::iter::repeat_n(Symbol(0), d).collect();
        let mut g = Gadget {
            residue,
            x: Vec::new(),
            e: Vec::new(),
            z: Vec::new(),
        };
        for &c in si {
            let xe = self.column(&[(Str::from_symbols(vec![c]), Role::Char), (Str::new(), Role::Eps)]);
            if let Some(&z) = g.z.last() {
                let prev = [*g.x.last().unwrap(), *g.e.last().unwrap(), z];
                self.connect(&prev, &xe);
            }
            let z = self.single(run.clone(), Role::Dsep);
            self.connect(&xe, &[z]);
            g.x.push(xe[0]);
            g.e.push(xe[1]);
            g.z.push(z);
        }
        g
    }

    fn finish(self) -> Result<(LabeledDag, Vec<Column>)> {
        Ok((
            LabeledDag::new(Flavor::SigmaStar, self.labels, &self.arcs)?,
            self.columns,
        ))
    }
}

/// A standalone gadget for one string.
#[derive(Clone, Debug)]
pub struct GadgetDag {
    pub dag: LabeledDag,
    pub nodes: Gadget,
    pub columns: Vec<Column>,
}

/// Per position, a column holding the character and an ε node, followed by
/// a `0^d` node reachable from both; all three feed the next position.
pub fn build_gadget(si: &[Symbol], d: usize) -> Result<GadgetDag> {
    if si.is_empty() {
        return Err(Error::EmptyString);
    }
    if d == 0 {
        return Err(Error::ImpossibleParameters("separator runs need D >= 1".into()));
    }
    let mut b = Builder::default();
    let nodes = b.gadget(si, d, 0);
    let (dag, columns) = b.finish()?;
    Ok(GadgetDag { dag, nodes, columns })
}

#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub lcs: LcsInstance,
    pub params: ReductionParams,
    pub tab: Str,
    pub dag_a: LabeledDag,
    pub dag_b: LabeledDag,
    pub layout_a: Layout,
    pub layout_b: Layout,
}

impl ReductionInstance {
    pub fn tab_adequate(&self) -> bool {
        self.params.tab_adequate(&self.tab)
    }

    /// Single-character expansions of `A` and `B`.
    pub fn expansions(&self) -> (Expansion, Expansion) {
        (expand_with_map(&self.dag_a), expand_with_map(&self.dag_b))
    }

    /// Stage residues `1 mod n, 2 mod n, ..., N mod n`.
    pub fn residues(&self) -> Vec<usize> {
        (1..=self.params.big_n).map(|i| i % self.params.n).collect()
    }
}

/// Maps a solution on `A` and `B` onto their expansions.
pub fn lift_solution(exp_a: &Expansion, exp_b: &Expansion, sol: &CoverSolution) -> CoverSolution {
    CoverSolution {
        r1: exp_a.lift_path(&sol.r1),
        g1: exp_a.lift_path(&sol.g1),
        r2: exp_b.lift_path(&sol.r2),
        g2: exp_b.lift_path(&sol.g2),
        value: sol.value,
    }
}

fn build_a(inst: &LcsInstance, p: &ReductionParams, tab: &Str) -> Result<(LabeledDag, Layout)> {
    let s = inst.strings();
    let mut b = Builder::default();
    let source = b.single(Str::new(), Role::End);
    let head = b.single(s[0].clone(), Role::Head);
    b.connect(&[source], &[head]);
    let first = b.column(&[(tab.clone(), Role::Tab), (tab.clone(), Role::Tab)]);
    b.connect(&[source, head], &first);
    let mut tabs = vec![first];
    let mut stages = Vec::new();
    for i in 1..=p.big_n {
        let g = b.gadget(&s[i % p.n], p.d, i % p.n);
        b.connect(tabs.last().unwrap(), &g.entries());
        let next = if i < p.big_n {
            b.column(&[(tab.clone(), Role::Tab), (tab.clone(), Role::Tab)])
        } else {
            vec![b.single(tab.clone(), Role::Tab)]
        };
        b.connect(&g.exits(), &next);
        tabs.push(next);
        stages.push(g);
    }
    let sink = b.single(Str::new(), Role::End);
    b.connect(tabs.last().unwrap(), &[sink]);
    let (dag, columns) = b.finish()?;
    Ok((
        dag,
        Layout {
            source,
            sink,
            side: head,
            tabs,
            stages,
            columns,
        },
    ))
}

fn build_b(inst: &LcsInstance, p: &ReductionParams, tab: &Str) -> Result<(LabeledDag, Layout)> {
    let s = inst.strings();
    let mut b = Builder::default();
    let source = b.single(Str::new(), Role::End);
    let first = b.single(tab.clone(), Role::Tab);
    b.connect(&[source], &[first]);
    let mut tabs = vec![vec![first]];
    let mut stages = Vec::new();
    for i in 1..=p.big_n {
        let g = b.gadget(&s[i % p.n], p.d, i % p.n);
        b.connect(tabs.last().unwrap(), &g.entries());
        let next = b.column(&[(tab.clone(), Role::Tab), (tab.clone(), Role::Tab)]);
        b.connect(&g.exits(), &next);
        tabs.push(next);
        stages.push(g);
    }
    let last = tabs.last().unwrap().clone();
    let tail = b.single(s[1].clone(), Role::Tail);
    b.connect(&last, &[tail]);
    let sink = b.single(Str::new(), Role::End);
    b.connect(&last, &[sink]);
    b.connect(&[tail], &[sink]);
    let (dag, columns) = b.finish()?;
    Ok((
        dag,
        Layout {
            source,
            sink,
            side: tail,
            tabs,
            stages,
            columns,
        },
    ))
}

/// Builds `A` and `B`, drawing the tab from `params.seed`.
///
/// `A`: ε source, head `S_0`, then tab pairs at depths `1..=N` alternating
/// with gadget stages, a single tab at depth `N + 1` and the ε sink. `B`:
/// ε source, a single tab at depth 1, gadget stages alternating with tab
/// pairs at depths `2..=N + 1`, tail `S_1` and the ε sink.
pub fn build_instance(inst: &LcsInstance, params: &ReductionParams) -> Result<ReductionInstance> {
    params.check(inst)?;
    let tab = gen_tab(params.tab_length, params.tab_k, params.seed)?;
    let (dag_a, layout_a) = build_a(inst, params, &tab)?;
    let (dag_b, layout_b) = build_b(inst, params, &tab)?;
    Ok(ReductionInstance {
        lcs: inst.clone(),
        params: *params,
        tab,
        dag_a,
        dag_b,
        layout_a,
        layout_b,
    })
}
