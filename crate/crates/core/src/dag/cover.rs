use std::collections::VecDeque;

use super::{CoverPair, DagPath, LabeledDag, NodeId};

/// Maximum matching in the bipartite graph `u -> v` for `reach[u][v]`;
/// `mate[v]` is the left endpoint matched to `v`.
fn closure_matching(reach: &[Vec<bool>]) -> Vec<Option<NodeId>> {
    fn augment(u: NodeId, reach: &[Vec<bool>], seen: &mut [bool], mate: &mut [Option<NodeId>]) -> bool {
        for v in 0..reach.len() {
            if reach[u][v] && !seen[v] {
                seen[v] = true;
                if mate[v].is_none_or(|w| augment(w, reach, seen, mate)) {
                    mate[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let n = reach.len();
    let mut mate = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(u, reach, &mut seen, &mut mate);
    }
    mate
}

/// Minimum number of chains covering the reachability order, i.e. the
/// width of the DAG.
pub fn min_chain_cover_size(d: &LabeledDag) -> usize {
    let mate = closure_matching(&d.reachability());
    d.node_count() - mate.iter().flatten().count()
}

/// Whether two paths can jointly cover `d`.
pub fn two_path_coverable(d: &LabeledDag) -> bool {
    min_chain_cover_size(d) <= 2
}

/// Two jointly covering paths, if they exist. Chains of the reachability
/// order are turned into paths by filling each gap with a shortest
/// connecting path. A width-1 DAG yields the same path twice.
pub fn two_path_cover(d: &LabeledDag) -> Option<CoverPair> {
    let reach = d.reachability();
    let mate = closure_matching(&reach);
    let n = d.node_count();
    if n - mate.iter().flatten().count() > 2 {
        return None;
    }
    let mut next = vec![None; n];
    for (v, m) in mate.iter().enumerate() {
        if let Some(u) = *m {
            next[u] = Some(v);
        }
    }
    let mut paths = Vec::new();
    for start in (0..n).filter(|&v| mate[v].is_none()) {
        let mut nodes = vec![start];
        let mut cur = start;
        while let Some(v) = next[cur] {
            nodes.extend(shortest_path(d, cur, v).into_iter().skip(1));
            cur = v;
        }
        paths.push(DagPath(nodes));
    }
    let red = paths[0].clone();
    let green = paths.get(1).cloned().unwrap_or_else(|| red.clone());
    Some(CoverPair { red, green })
}

fn shortest_path(d: &LabeledDag, from: NodeId, to: NodeId) -> Vec<NodeId> {
    let mut prev = vec![None; d.node_count()];
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &w in d.successors(u) {
            if prev[w].is_none() && w != from {
                prev[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur].expect("chain successors are reachable");
        path.push(cur);
    }
    path.reverse();
    path
}
