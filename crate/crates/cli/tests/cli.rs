use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn covalign(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covalign"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

fn workspace(files: &[(&str, &str)]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in files {
        fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn align_reports_distance_and_score() {
    let w = workspace(&[
        ("a.txt", "alphabet 01\n01\n"),
        ("b.txt", "alphabet 01\n10\n"),
        ("bad.txt", "alphabet 01\n0a\n"),
    ]);
    let o = covalign(w.path(), &["align", "--a", "a.txt", "--b", "a.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "distance"), Some("0"));

    let o = covalign(w.path(), &["align", "--a", "a.txt", "--b", "b.txt", "--witness"]);
    let out = stdout(&o);
    assert_eq!(field(&out, "distance"), Some("2"));
    assert_eq!(field(&out, "score"), Some("-2"));
    assert_eq!(field(&out, "row_a").unwrap().len(), field(&out, "row_b").unwrap().len());

    let o = covalign(w.path(), &["align", "--a", "a.txt", "--b", "bad.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

const LINE_01: &str = "dag sigma 2\nnode 0 \"0\"\nnode 1 \"1\"\nedge 0 1\n";
const LINE_0: &str = "dag sigma 1\nnode 0 \"0\"\n";

#[test]
fn cover_align_examples() {
    let w = workspace(&[("l01.dag", LINE_01), ("l0.dag", LINE_0)]);
    let o = covalign(w.path(), &["cover-align", "--d1", "l01.dag", "--d2", "l01.dag"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\nvalue 0\n"));

    let o = covalign(
        w.path(),
        &["cover-align", "--d1", "l01.dag", "--d2", "l0.dag", "--out", "sol.txt"],
    );
    assert_eq!(o.status.code(), Some(0));
    let sol = fs::read_to_string(w.path().join("sol.txt")).unwrap();
    assert!(sol.starts_with("value 1\npath r1 "));
    assert!(stdout(&o).ends_with(&sol));

    let o = covalign(
        w.path(),
        &["cover-align", "--d1", "l01.dag", "--d2", "l0.dag", "--engine", "dp"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    let o = covalign(
        w.path(),
        &[
            "cover-align",
            "--d1",
            "l01.dag",
            "--d2",
            "l0.dag",
            "--engine",
            "dp",
            "--no-cover-d2",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\nvalue 1\n"));
}

#[test]
fn cover_align_exit_codes() {
    let antichain = "dag sigma 3\nnode 0 \"0\"\nnode 1 \"1\"\nnode 2 \"0\"\n";
    let w = workspace(&[
        ("l01.dag", LINE_01),
        ("anti.dag", antichain),
        ("broken.dag", "dag sigma 2\n"),
    ]);
    let o = covalign(w.path(), &["cover-align", "--d1", "anti.dag", "--d2", "l01.dag"]);
    assert_eq!(o.status.code(), Some(2));
    let o = covalign(w.path(), &["cover-align", "--d1", "broken.dag", "--d2", "l01.dag"]);
    assert_eq!(o.status.code(), Some(2));
    let o = covalign(
        w.path(),
        &["cover-align", "--d1", "l01.dag", "--d2", "l01.dag", "--max-pairs", "1"],
    );
    assert_eq!(o.status.code(), Some(3));
    let o = covalign(
        w.path(),
        &[
            "cover-align",
            "--d1",
            "l01.dag",
            "--d2",
            "l01.dag",
            "--engine",
            "dp",
            "--no-cover-d2",
            "--objective",
            "lex",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn encode_diploid_outputs() {
    let w = workspace(&[
        ("two.txt", "alphabet ab\na-\n-b\n"),
        ("one.txt", "alphabet ab\na\nb\n"),
        ("empty.txt", ""),
    ]);
    let o = covalign(w.path(), &["encode-diploid", "--alignment", "two.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "dag sigma-eps 6\nnode 0 \"\"\nnode 1 \"a\"\nnode 2 \"\"\nnode 3 \"\"\nnode 4 \"b\"\nnode 5 \"\"\n\
         edge 0 1\nedge 0 2\nedge 1 3\nedge 1 4\nedge 2 3\nedge 2 4\nedge 3 5\nedge 4 5\n"
    );
    let o = covalign(w.path(), &["encode-diploid", "--alignment", "one.txt"]);
    assert!(stdout(&o).starts_with("dag sigma-eps 4\n"));
    let o = covalign(w.path(), &["encode-diploid", "--alignment", "empty.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_writes_reproducible_bundles() {
    let w = workspace(&[
        ("i.lcs", "alphabet 01\n01\n10\n"),
        ("zeros.lcs", "alphabet 01\n00\n10\n"),
        ("big.lcs", "alphabet 01\n0110\n1010\n0011\n"),
    ]);
    let args = ["reduce", "--lcs", "i.lcs", "--out", "b", "--seed", "7"];
    let first = covalign(w.path(), &args);
    assert_eq!(first.status.code(), Some(0));
    let out = stdout(&first);
    assert_eq!(field(&out, "tab_verified"), Some("true"));
    assert_eq!(field(&out, "N"), Some("4"));
    let files: Vec<Vec<u8>> = ["a.dag", "b.dag", "instance.lcs", "meta.txt"]
        .iter()
        .map(|f| fs::read(w.path().join("b").join(f)).unwrap())
        .collect();
    let again = covalign(w.path(), &args);
    assert_eq!(again.stdout, first.stdout);
    for (f, bytes) in ["a.dag", "b.dag", "instance.lcs", "meta.txt"].iter().zip(&files) {
        assert_eq!(&fs::read(w.path().join("b").join(f)).unwrap(), bytes, "{f}");
    }

    let o = covalign(w.path(), &["reduce", "--lcs", "zeros.lcs", "--out", "z"]);
    assert_eq!(o.status.code(), Some(2));
    let o = covalign(
        w.path(),
        &["reduce", "--lcs", "big.lcs", "--out", "p", "--scale", "paper"],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(field(&stdout(&o), "tab_length").is_some());
    assert!(!w.path().join("p").exists());
    // Feasible window count, but rejection sampling never finds such a tab.
    let o = covalign(
        w.path(),
        &[
            "reduce",
            "--lcs",
            "i.lcs",
            "--out",
            "r",
            "--tab-length",
            "69",
            "--tab-k",
            "6",
        ],
    );
    assert_eq!(o.status.code(), Some(4));
    let o = covalign(
        w.path(),
        &[
            "reduce",
            "--lcs",
            "i.lcs",
            "--out",
            "r",
            "--tab-length",
            "40",
            "--tab-k",
            "2",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_modes() {
    let w = workspace(&[("i.lcs", "alphabet 01\n01\n10\n")]);
    let o = covalign(
        w.path(),
        &["reduce", "--lcs", "i.lcs", "--out", "b", "--seed", "7", "--N", "2"],
    );
    assert_eq!(o.status.code(), Some(0));

    let o = covalign(w.path(), &["verify", "--bundle", "b", "--mode", "lemma1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "lemma1.delta"), Some("1"));
    assert_eq!(field(&out, "lemma1.d_green"), Some("2"));
    assert_eq!(field(&out, "lemma1"), Some("PASS"));

    let o = covalign(w.path(), &["verify", "--bundle", "b", "--mode", "lemma2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "lemma2.value"), Some("2"));
    assert_eq!(field(&out, "lemma2.extracted"), Some("1"));
    assert_eq!(field(&out, "lemma2"), Some("PASS"));

    let o = covalign(
        w.path(),
        &["verify", "--bundle", "b", "--mode", "lemma2", "--max-pairs", "10"],
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(field(&stdout(&o), "lemma2"), Some("SKIP"));

    let a = w.path().join("b/a.dag");
    let text = fs::read_to_string(&a).unwrap();
    fs::write(&a, format!("{text}edge 0 999\n")).unwrap();
    let o = covalign(w.path(), &["verify", "--bundle", "b", "--mode", "lemma1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_checks_a_supplied_solution() {
    let w = workspace(&[("i.lcs", "alphabet 01\n01\n10\n")]);
    covalign(
        w.path(),
        &["reduce", "--lcs", "i.lcs", "--out", "b", "--seed", "7", "--N", "2"],
    );
    // Only the source and head nodes of the expanded DAG A: not a cover.
    fs::write(
        w.path().join("sol.txt"),
        "value 0\npath r1 0\npath g1 1\npath r2 0\npath g2 1\n",
    )
    .unwrap();
    let o = covalign(
        w.path(),
        &["verify", "--bundle", "b", "--mode", "lemma2", "--solution", "sol.txt"],
    );
    assert_eq!(o.status.code(), Some(2));
}
