//! A reduction bundle is a directory with `a.dag`, `b.dag`, `instance.lcs`
//! and `meta.txt`. The meta file lists the parameters as `key value` lines,
//! the tab, and one `col <idx> <roles> <node ids>` line per column of each
//! DAG (roles joined by `+`), each table introduced by `columns a|b <count>`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{build_instance, Column, LcsInstance, ReductionInstance, ReductionParams};
use crate::dag::{parse_dag, write_dag};
use crate::error::{Error, Result};
use crate::strings::Alphabet;

pub const BUNDLE_FILES: [&str; 4] = ["a.dag", "b.dag", "instance.lcs", "meta.txt"];

/// File contents of a bundle, in [`BUNDLE_FILES`] order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BundleFiles(pub [String; 4]);

fn column_table(out: &mut String, name: &str, columns: &[Column]) {
    writeln!(out, "columns {name} {}", columns.len()).unwrap();
    for (i, Column(nodes)) in columns.iter().enumerate() {
        let roles: Vec<&str> = nodes.iter().map(|(_, r)| r.name()).collect();
        write!(out, "col {i} {}", roles.join("+")).unwrap();
        for (v, _) in nodes {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
}

fn meta_text(ri: &ReductionInstance) -> String {
    let p = &ri.params;
    let mut out = String::new();
    for (k, v) in [
        ("n", p.n as u64),
        ("ell", p.ell as u64),
        ("D", p.d as u64),
        ("N", p.big_n as u64),
        ("M", p.m as u64),
        ("tab_length", p.tab_length as u64),
        ("tab_k", p.tab_k as u64),
        ("seed", p.seed),
    ] {
        writeln!(out, "{k} {v}").unwrap();
    }
    writeln!(out, "tab {}", Alphabet::binary().render(&ri.tab)).unwrap();
    writeln!(out, "tab_adequate {}", ri.tab_adequate()).unwrap();
    column_table(&mut out, "a", &ri.layout_a.columns);
    column_table(&mut out, "b", &ri.layout_b.columns);
    out
}

impl BundleFiles {
    pub fn render(ri: &ReductionInstance) -> Self {
        let ab = Alphabet::binary();
        BundleFiles([
            write_dag(&ri.dag_a, &ab),
            write_dag(&ri.dag_b, &ab),
            ri.lcs.to_text(),
            meta_text(ri),
        ])
    }
}

pub fn write_bundle(ri: &ReductionInstance, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let files = BundleFiles::render(ri);
    for (name, text) in BUNDLE_FILES.iter().zip(&files.0) {
        fs::write(dir.join(name), text)?;
    }
    Ok(())
}

fn parse_params(meta: &str) -> Result<ReductionParams> {
    let get = |key: &str| -> Result<u64> {
        let (ln, line) = meta
            .lines()
            .enumerate()
            .find(|(_, l)| l.split_whitespace().next() == Some(key))
            .ok_or_else(|| Error::parse(0, format!("meta.txt lacks `{key}`")))?;
        line.split_whitespace()
            .nth(1)
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::parse(ln + 1, format!("bad value for `{key}`")))
    };
    Ok(ReductionParams {
        n: get("n")? as usize,
        ell: get("ell")? as usize,
        d: get("D")? as usize,
        big_n: get("N")? as usize,
        m: get("M")? as usize,
        tab_length: get("tab_length")? as usize,
        tab_k: get("tab_k")? as usize,
        seed: get("seed")?,
    })
}

/// Reads a bundle and checks that every file equals what the instance and
/// parameters regenerate.
pub fn load_bundle(dir: &Path) -> Result<ReductionInstance> {
    let mut texts = Vec::new();
    for name in BUNDLE_FILES {
        texts.push(fs::read_to_string(dir.join(name))?);
    }
    let ab = Alphabet::binary();
    parse_dag(&texts[0], &ab)?;
    parse_dag(&texts[1], &ab)?;
    let inst = LcsInstance::from_text(&texts[2])?;
    let params = parse_params(&texts[3])?;
    let ri = build_instance(&inst, &params)?;
    let rebuilt = BundleFiles::render(&ri);
    for ((name, stored), fresh) in BUNDLE_FILES.iter().zip(&texts).zip(&rebuilt.0) {
        if stored != fresh {
            return Err(Error::InvalidInstance(format!(
                "{name} does not match the instance rebuilt from instance.lcs and meta.txt"
            )));
        }
    }
    Ok(ri)
}
