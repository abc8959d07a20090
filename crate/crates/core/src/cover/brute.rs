use std::collections::HashMap;

use super::{CoverSolution, Objective, ObjectiveValue, SolverOptions};
use crate::dag::{
    enumerate_paths_with_guard, read_unchecked, two_path_coverable, CoverPair, DagPath, LabeledDag, NodeId,
};
use crate::error::{Error, Result};
use crate::strings::{edit_distance_within, Str};

/// Depth-first walk over the topological order deciding, node by node,
/// whether the red path, the green path or both take it. Every covering
/// pair is produced exactly once.
struct PairWalk<'a, F> {
    d: &'a LabeledDag,
    disjoint: bool,
    s2s: bool,
    max: usize,
    count: usize,
    red: Vec<NodeId>,
    green: Vec<NodeId>,
    emit: F,
}

impl<F: FnMut(&[NodeId], &[NodeId])> PairWalk<'_, F> {
    fn can_take(&self, path: &[NodeId], w: NodeId) -> bool {
        match path.last() {
            None => !self.s2s || self.d.is_source(w),
            Some(&u) => self.d.has_arc(u, w),
        }
    }

    fn step(&mut self, k: usize) -> Result<()> {
        let topo = self.d.topo_order();
        if k == topo.len() {
            let (Some(&r), Some(&g)) = (self.red.last(), self.green.last()) else {
                return Ok(());
            };
            if self.s2s && !(self.d.is_sink(r) && self.d.is_sink(g)) {
                return Ok(());
            }
            self.count += 1;
            if self.count > self.max {
                return Err(Error::InstanceTooLarge(format!(
                    "more than {} covering path pairs",
                    self.max
                )));
            }
            (self.emit)(&self.red, &self.green);
            return Ok(());
        }
        let w = topo[k];
        let r = self.can_take(&self.red, w);
        let g = self.can_take(&self.green, w);
        if r {
            self.red.push(w);
            self.step(k + 1)?;
            self.red.pop();
        }
        if g {
            self.green.push(w);
            self.step(k + 1)?;
            self.green.pop();
        }
        if r && g && !self.disjoint {
            self.red.push(w);
            self.green.push(w);
            self.step(k + 1)?;
            self.red.pop();
            self.green.pop();
        }
        Ok(())
    }
}

fn for_each_cover_pair(
    d: &LabeledDag,
    disjoint: bool,
    s2s: bool,
    max: usize,
    emit: impl FnMut(&[NodeId], &[NodeId]),
) -> Result<()> {
    let mut walk = PairWalk {
        d,
        disjoint,
        s2s,
        max,
        count: 0,
        red: Vec::new(),
        green: Vec::new(),
        emit,
    };
    walk.step(0)
}

/// Every ordered pair of paths jointly covering `d`, sorted by node sequences.
pub fn covering_pairs(
    d: &LabeledDag,
    disjoint: bool,
    source_to_sink_only: bool,
    max_pairs: usize,
) -> Result<Vec<CoverPair>> {
    let mut out = Vec::new();
    for_each_cover_pair(d, disjoint, source_to_sink_only, max_pairs, |r, g| {
        out.push((r.to_vec(), g.to_vec()));
    })?;
    out.sort();
    Ok(out
        .into_iter()
        .map(|(r, g)| CoverPair {
            red: DagPath::new(r).unwrap(),
            green: DagPath::new(g).unwrap(),
        })
        .collect())
}

#[derive(Default)]
struct Interner {
    ids: HashMap<Str, usize>,
    strings: Vec<Str>,
}

impl Interner {
    fn intern(&mut self, s: Str) -> usize {
        if let Some(&id) = self.ids.get(&s) {
            return id;
        }
        let id = self.strings.len();
        self.ids.insert(s.clone(), id);
        self.strings.push(s);
        id
    }
}

struct Group {
    red: usize,
    green: usize,
    rep: (Vec<NodeId>, Vec<NodeId>),
}

/// Candidate path pairs of one DAG, grouped by their pair of reads. Only the
/// lexicographically least pair of each group matters to the search.
struct Side {
    reds: Vec<Str>,
    greens: Vec<Str>,
    groups: Vec<Group>,
}

impl Side {
    fn from_groups(reds: Interner, greens: Interner, mut groups: Vec<Group>) -> Self {
        groups.sort_by(|a, b| a.rep.cmp(&b.rep));
        Side {
            reds: reds.strings,
            greens: greens.strings,
            groups,
        }
    }

    fn covering(d: &LabeledDag, disjoint: bool, s2s: bool, max: usize) -> Result<Self> {
        let mut reds = Interner::default();
        let mut greens = Interner::default();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut groups: Vec<Group> = Vec::new();
        for_each_cover_pair(d, disjoint, s2s, max, |r, g| {
            let key = (reds.intern(read_unchecked(d, r)), greens.intern(read_unchecked(d, g)));
            match index.get(&key) {
                Some(&i) => {
                    let rep = &mut groups[i].rep;
                    if (r, g) < (rep.0.as_slice(), rep.1.as_slice()) {
                        *rep = (r.to_vec(), g.to_vec());
                    }
                }
                None => {
                    index.insert(key, groups.len());
                    groups.push(Group {
                        red: key.0,
                        green: key.1,
                        rep: (r.to_vec(), g.to_vec()),
                    });
                }
            }
        })?;
        Ok(Side::from_groups(reds, greens, groups))
    }

    /// All ordered path pairs, coverage not required.
    fn unconstrained(d: &LabeledDag, disjoint: bool, s2s: bool, max: usize) -> Result<Self> {
        let paths = enumerate_paths_with_guard(d, s2s, max)?;
        let mut reds = Interner::default();
        let mut greens = Interner::default();
        let mut red_ids = Vec::with_capacity(paths.len());
        let mut green_ids = Vec::with_capacity(paths.len());
        for p in &paths {
            let s = read_unchecked(d, p.nodes());
            red_ids.push(reds.intern(s.clone()));
            green_ids.push(greens.intern(s));
        }
        let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
        let mut groups = Vec::new();
        let mut count = 0usize;
        // Paths are already sorted, so the first pair of each group is its least.
        for (i, r) in paths.iter().enumerate() {
            for (j, g) in paths.iter().enumerate() {
                if disjoint && r.intersects(g).is_some() {
                    continue;
                }
                count += 1;
                if count > max {
                    return Err(Error::InstanceTooLarge(format!("more than {max} path pairs")));
                }
                let key = (red_ids[i], green_ids[j]);
                if seen.insert(key, ()).is_none() {
                    groups.push(Group {
                        red: key.0,
                        green: key.1,
                        rep: (r.nodes().to_vec(), g.nodes().to_vec()),
                    });
                }
            }
        }
        Ok(Side::from_groups(reds, greens, groups))
    }
}

#[derive(Clone, Copy)]
enum Known {
    Exact(usize),
    Above(usize),
}

/// Edit distances between interned strings, computed lazily under a cap.
struct DistanceCache<'a> {
    left: &'a [Str],
    right: &'a [Str],
    left_counts: Vec<Vec<u32>>,
    right_counts: Vec<Vec<u32>>,
    memo: HashMap<(usize, usize), Known>,
}

fn symbol_counts(strings: &[Str], sigma: usize) -> Vec<Vec<u32>> {
    strings
        .iter()
        .map(|s| {
            let mut c = vec![0u32; sigma];
            for x in s.iter() {
                c[x.index()] += 1;
            }
            c
        })
        .collect()
}

impl<'a> DistanceCache<'a> {
    fn new(left: &'a [Str], right: &'a [Str]) -> Self {
        let sigma = left
            .iter()
            .chain(right)
            .flat_map(|s| s.iter().map(|x| x.index() + 1))
            .max()
            .unwrap_or(0);
        DistanceCache {
            left,
            right,
            left_counts: symbol_counts(left, sigma),
            right_counts: symbol_counts(right, sigma),
            memo: HashMap::new(),
        }
    }

    /// Each edit operation raises at most one symbol count and lowers at
    /// most one, so the larger total surplus bounds the distance from below.
    fn lower_bound(&self, i: usize, j: usize) -> usize {
        let (mut up, mut down) = (0u32, 0u32);
        for (a, b) in self.left_counts[i].iter().zip(&self.right_counts[j]) {
            if a > b {
                down += a - b;
            } else {
                up += b - a;
            }
        }
        up.max(down) as usize
    }

    fn max_len(&self, i: usize, j: usize) -> usize {
        self.left[i].len().max(self.right[j].len())
    }

    fn within(&mut self, i: usize, j: usize, cap: usize) -> Option<usize> {
        match self.memo.get(&(i, j)) {
            Some(Known::Exact(d)) => return Some(*d).filter(|&d| d <= cap),
            Some(Known::Above(c)) if *c >= cap => return None,
            _ => {}
        }
        let found = edit_distance_within(&self.left[i], &self.right[j], cap);
        self.memo.insert(
            (i, j),
            match found {
                Some(d) => Known::Exact(d),
                None => Known::Above(cap),
            },
        );
        found
    }
}

/// Largest `c <= hi` with `ok(c)`, given `ok` is monotone and `ok(0)` holds.
fn largest_ok(hi: usize, ok: impl Fn(usize) -> bool) -> usize {
    if ok(hi) {
        return hi;
    }
    let (mut lo, mut hi) = (0, hi);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

struct Best {
    value: ObjectiveValue,
    a: usize,
    b: usize,
}

/// Scans first-DAG groups in order and, for each, the second-DAG groups
/// that could still beat the incumbent. The result is the lexicographically
/// least optimal `(a, b)` group pair.
fn search(a: &Side, b: &Side, objective: Objective) -> Option<Best> {
    let mut red = DistanceCache::new(&a.reds, &b.reds);
    let mut green = DistanceCache::new(&a.greens, &b.greens);
    let mut by_red: Vec<Vec<(usize, usize)>> = vec![Vec::new(); b.reds.len()];
    for (idx, g) in b.groups.iter().enumerate() {
        by_red[g.red].push((g.green, idx));
    }
    let mut global: Option<Best> = None;
    for (ai, ga) in a.groups.iter().enumerate() {
        let mut local: Option<(ObjectiveValue, usize)> = None;
        for (rb, list) in by_red.iter().enumerate() {
            if list.is_empty() {
                continue;
            }
            let promising = |v: ObjectiveValue, local: &Option<(ObjectiveValue, usize)>| {
                global.as_ref().is_none_or(|g| v < g.value) && local.is_none_or(|(l, _)| v <= l)
            };
            if !promising(objective.fold(red.lower_bound(ga.red, rb) as u64, 0), &local) {
                continue;
            }
            let cap = largest_ok(red.max_len(ga.red, rb), |c| {
                promising(objective.fold(c as u64, 0), &local)
            });
            let Some(dr) = red.within(ga.red, rb, cap) else {
                continue;
            };
            let dr = dr as u64;
            for &(gb, bi) in list {
                if !promising(objective.fold(dr, green.lower_bound(ga.green, gb) as u64), &local) {
                    continue;
                }
                let cap = largest_ok(green.max_len(ga.green, gb), |c| {
                    promising(objective.fold(dr, c as u64), &local)
                });
                let Some(dg) = green.within(ga.green, gb, cap) else {
                    continue;
                };
                let v = objective.fold(dr, dg as u64);
                if promising(v, &local) && local.is_none_or(|(l, li)| (v, bi) < (l, li)) {
                    local = Some((v, bi));
                }
            }
        }
        if let Some((v, bi)) = local {
            if global.as_ref().is_none_or(|g| v < g.value) {
                global = Some(Best { value: v, a: ai, b: bi });
            }
        }
    }
    global
}

/// Exhaustive solver for every option combination.
///
/// Path pairs with identical reads are interchangeable, so the search runs
/// over distinct read pairs; the witness returned is the lexicographically
/// least optimal `(r1, g1, r2, g2)`.
pub fn solve_bruteforce(d1: &LabeledDag, d2: &LabeledDag, opts: &SolverOptions) -> Result<CoverSolution> {
    if !two_path_coverable(d1) || (opts.require_cover_d2 && !two_path_coverable(d2)) {
        return Err(Error::NotCoverable);
    }
    let s2s = opts.source_to_sink_only;
    let a = Side::covering(d1, opts.disjoint_d1, s2s, opts.max_pairs)?;
    let b = if opts.require_cover_d2 {
        Side::covering(d2, opts.disjoint_d2, s2s, opts.max_pairs)?
    } else {
        Side::unconstrained(d2, opts.disjoint_d2, s2s, opts.max_pairs)?
    };
    let best = search(&a, &b, opts.objective).ok_or(Error::NotCoverable)?;
    let (r1, g1) = &a.groups[best.a].rep;
    let (r2, g2) = &b.groups[best.b].rep;
    Ok(CoverSolution {
        r1: DagPath::new(r1.clone())?,
        g1: DagPath::new(g1.clone())?,
        r2: DagPath::new(r2.clone())?,
        g2: DagPath::new(g2.clone())?,
        value: best.value,
    })
}
