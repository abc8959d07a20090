//! Text formats read and written by the command line, plus atomic file output.
//!
//! String file: `alphabet <chars>` then one line holding the string.
//! Alignment file: `alphabet <chars>` then two gapped rows; further
//! alignments follow after a blank line.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use covalign::diploid::PairwiseAlignment;
use covalign::strings::{Alphabet, Str};
use covalign::{Error, Result};

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Splits off the `alphabet <chars>` header; returns the alphabet and the
/// remaining lines numbered from 2.
fn header(text: &str) -> Result<(Alphabet, Vec<(usize, &str)>)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (_, first) = lines.next().ok_or_else(|| parse_error(1, "empty file"))?;
    let chars = first
        .strip_prefix("alphabet ")
        .ok_or_else(|| parse_error(1, "expected `alphabet <chars>`"))?;
    let alphabet = Alphabet::new(chars.trim())?;
    Ok((alphabet, lines.collect()))
}

pub fn parse_string_file(text: &str) -> Result<(Alphabet, Str)> {
    let (alphabet, rest) = header(text)?;
    let body: Vec<(usize, &str)> = rest.into_iter().filter(|(_, l)| !l.is_empty()).collect();
    match body[..] {
        [] => Ok((alphabet, Str::new())),
        [(_, line)] => Ok((alphabet.clone(), alphabet.parse(line)?)),
        [_, (ln, _), ..] => Err(parse_error(ln, "a string file holds a single line")),
    }
}

pub fn parse_alignment_file(text: &str) -> Result<(Alphabet, Vec<PairwiseAlignment>)> {
    let (alphabet, rest) = header(text)?;
    let mut out = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let mut flush = |block: &mut Vec<(usize, &str)>| -> Result<()> {
        match block[..] {
            [] => {}
            [(_, a), (ln, b)] => {
                if a.chars().count() != b.chars().count() {
                    return Err(parse_error(ln, "alignment rows differ in length"));
                }
                out.push(PairwiseAlignment::parse(&alphabet, a, b)?);
            }
            [(ln, _)] | [_, _, (ln, _), ..] => {
                return Err(parse_error(ln, "an alignment is exactly two rows"));
            }
        }
        block.clear();
        Ok(())
    };
    for (ln, line) in rest {
        if line.is_empty() {
            flush(&mut block)?;
        } else {
            block.push((ln, line));
        }
    }
    flush(&mut block)?;
    if out.is_empty() {
        return Err(parse_error(1, "no alignment rows"));
    }
    Ok((alphabet, out))
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::Io(std::io::Error::other(format!("{} is not a file path", path.display()))))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}
