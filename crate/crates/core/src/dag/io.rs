//! DAG text format:
//!
//! ```text
//! dag <flavor> <node-count>
//! node <id> "<label>"
//! edge <u> <v>
//! ```
//!
//! Node lines come first, in id order; edges follow in `(u, v)` order.

use std::fmt::Write as _;

use super::{Flavor, LabeledDag, NodeId};
use crate::error::{Error, Result};
use crate::strings::Alphabet;

pub fn write_dag(d: &LabeledDag, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    writeln!(out, "dag {} {}", d.flavor(), d.node_count()).unwrap();
    for v in 0..d.node_count() {
        writeln!(out, "node {v} \"{}\"", alphabet.render(d.label(v))).unwrap();
    }
    for (u, v) in d.arcs() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    out
}

/// A parsed DAG file whose labels are not yet bound to an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDag {
    pub flavor: Flavor,
    pub labels: Vec<String>,
    pub arcs: Vec<(NodeId, NodeId)>,
}

impl RawDag {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty DAG file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [tag, flavor, count] = fields[..] else {
            return Err(Error::parse(ln, "expected `dag <flavor> <node-count>`"));
        };
        if tag != "dag" {
            return Err(Error::parse(ln, "expected `dag <flavor> <node-count>`"));
        }
        let flavor: Flavor = flavor.parse().map_err(|e: Error| Error::parse(ln, e.to_string()))?;
        let n: usize = count
            .parse()
            .map_err(|_| Error::parse(ln, format!("bad node count {count:?}")))?;
        let mut labels = Vec::with_capacity(n);
        let mut arcs = Vec::new();
        for (ln, line) in lines {
            if let Some(rest) = line.strip_prefix("node ") {
                let (id, label) = rest
                    .split_once(' ')
                    .ok_or_else(|| Error::parse(ln, "expected `node <id> \"<label>\"`"))?;
                let id: usize = id.parse().map_err(|_| Error::parse(ln, "bad node id"))?;
                if id != labels.len() || !arcs.is_empty() {
                    return Err(Error::parse(ln, format!("node {id} out of order")));
                }
                let label = label
                    .strip_prefix('"')
                    .and_then(|l| l.strip_suffix('"'))
                    .filter(|l| !l.contains('"'))
                    .ok_or_else(|| Error::parse(ln, "label must be a quoted string"))?;
                labels.push(label.to_string());
            } else if let Some(rest) = line.strip_prefix("edge ") {
                let mut it = rest.split_whitespace().map(str::parse::<usize>);
                match (it.next(), it.next(), it.next()) {
                    (Some(Ok(u)), Some(Ok(v)), None) => {
                        if u >= n || v >= n {
                            return Err(Error::parse(ln, format!("edge ({u},{v}) names a missing node")));
                        }
                        arcs.push((u, v));
                    }
                    _ => return Err(Error::parse(ln, "expected `edge <u> <v>`")),
                }
            } else {
                return Err(Error::parse(ln, format!("unexpected line {line:?}")));
            }
        }
        if labels.len() != n {
            return Err(Error::parse(
                ln,
                format!("header declares {n} nodes, found {}", labels.len()),
            ));
        }
        Ok(RawDag { flavor, labels, arcs })
    }

    /// Characters used by the labels.
    pub fn label_chars(&self) -> impl Iterator<Item = char> + '_ {
        self.labels.iter().flat_map(|l| l.chars())
    }

    pub fn build(&self, alphabet: &Alphabet) -> Result<LabeledDag> {
        let labels = self
            .labels
            .iter()
            .map(|l| alphabet.parse(l))
            .collect::<Result<Vec<_>>>()?;
        LabeledDag::new(self.flavor, labels, &self.arcs)
    }
}

pub fn parse_dag(text: &str, alphabet: &Alphabet) -> Result<LabeledDag> {
    RawDag::parse(text)?.build(alphabet)
}
