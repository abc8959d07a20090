mod formats;

use std::fmt::{self, Display, Write as _};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use covalign::cover::{
    evaluate_solution, solve_bruteforce, solve_relaxed_dp, strand_distances, CoverSolution, Objective, ObjectiveValue,
    SolverOptions, PAIR_GUARD,
};
use covalign::dag::{encode_diploid, write_dag, RawDag};
use covalign::diploid::DiploidGuard;
use covalign::reduction::{
    build_instance, corollary_encode, corollary_scheme, corollary_verify, default_params, lemma1_witness,
    lemma2_extract, load_bundle, verify_distinct_substrings, witness_distances, BundleFiles, LcsInstance,
    ReductionInstance, Scale, BUNDLE_FILES,
};
use covalign::strings::{
    edit_distance, global_alignment, global_alignment_score, is_subsequence, lcs_multi, Alphabet, ScoringScheme,
};
use covalign::Error;

#[derive(Parser)]
#[command(
    name = "covalign",
    version,
    about = "Covering alignment of labeled DAGs and an LCS hardness-reduction toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Edit distance and scored global alignment of two strings
    Align(AlignArgs),
    /// Optimal covering alignment of two labeled DAGs
    CoverAlign(CoverArgs),
    /// Encode a pairwise alignment as an ε-labeled DAG (printed on stdout)
    EncodeDiploid(EncodeArgs),
    /// Build a reduction bundle from a binary LCS instance
    Reduce(ReduceArgs),
    /// Check a reduction bundle
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AlignArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// `unit`, `corollary`, or the path of a scheme file
    #[arg(long, default_value = "unit")]
    scheme: String,
    /// Separator penalty used by the corollary scheme
    #[arg(long, default_value_t = 1)]
    dsep: usize,
    /// Print one optimal alignment
    #[arg(long)]
    witness: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Brute,
    Dp,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long)]
    d1: PathBuf,
    #[arg(long)]
    d2: PathBuf,
    /// sum, weighted:<red>,<green>, lex or max
    #[arg(long, default_value = "sum")]
    objective: Objective,
    /// Red and green paths of d1 may not share nodes
    #[arg(long)]
    disjoint1: bool,
    /// Red and green paths of d2 may not share nodes
    #[arg(long)]
    disjoint2: bool,
    /// Only d1 has to be covered
    #[arg(long)]
    no_cover_d2: bool,
    /// Paths run from a source to a sink
    #[arg(long)]
    source_sink: bool,
    /// dp needs --no-cover-d2 and a sum or weighted objective
    #[arg(long, value_enum, default_value_t = Engine::Brute, requires_if("dp", "no_cover_d2"))]
    engine: Engine,
    /// Limit on enumerated path pairs per DAG
    #[arg(long, default_value_t = PAIR_GUARD)]
    max_pairs: usize,
    /// Also write the solution to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EncodeArgs {
    #[arg(long)]
    alignment: PathBuf,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    lcs: PathBuf,
    /// Bundle directory
    #[arg(long)]
    out: PathBuf,
    /// paper or desk
    #[arg(long, default_value = "desk")]
    scale: Scale,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of gadget stages
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long)]
    tab_length: Option<usize>,
    #[arg(long)]
    tab_k: Option<usize>,
    /// Refuse bundles whose DAG labels hold more characters than this
    #[arg(long, default_value_t = 1_000_000)]
    max_label_chars: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Lemma1,
    Lemma2,
    Corollary,
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    bundle: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Full)]
    mode: Mode,
    /// Limit on enumerated path pairs per expanded DAG
    #[arg(long, default_value_t = 4 * PAIR_GUARD)]
    max_pairs: usize,
    /// Let the two strands of a DAG share nodes in the lemma2 search
    #[arg(long)]
    overlap: bool,
    /// Check this solution on the expanded DAGs instead of searching
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Column limit of the diploid solver
    #[arg(long, default_value_t = 16)]
    diploid_max_len: usize,
    /// Limit on recombination outcome pairs scored by the diploid solver
    #[arg(long, default_value_t = 1 << 26)]
    diploid_max_outcomes: u64,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Guard(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Guard(_) => 3,
            Failure::Check(_) => 4,
        }
    }

    /// Precedence when several checks fail.
    fn rank(&self) -> u8 {
        match self {
            Failure::Guard(_) => 0,
            Failure::Input(_) => 1,
            Failure::Check(_) => 2,
        }
    }

    fn verdict(&self) -> &'static str {
        match self {
            Failure::Input(_) => "ERROR",
            Failure::Guard(_) => "SKIP",
            Failure::Check(_) => "FAIL",
        }
    }
}

impl Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Guard(m) | Failure::Check(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_guard() => Failure::Guard(e.to_string()),
            Error::RetriesExhausted(_) | Error::ConstructionMismatch(_) | Error::NoCanonicalInterval => {
                Failure::Check(e.to_string())
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

#[derive(Default)]
struct Report(String);

impl Report {
    fn kv(&mut self, key: &str, value: impl Display) {
        writeln!(self.0, "{key}: {value}").unwrap();
    }

    fn raw(&mut self, text: &str) {
        self.0.push_str(text);
    }
}

fn with_path<T>(path: &Path, r: covalign::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        f => f,
    })
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> covalign::Result<T>) -> Result<T, Failure> {
    let text = with_path(path, fs::read_to_string(path).map_err(Error::from))?;
    with_path(path, parse(&text))
}

fn cmd_align(args: &AlignArgs, out: &mut Report) -> Outcome {
    let (ab, a) = load(&args.a, formats::parse_string_file)?;
    let (ab_b, b) = load(&args.b, formats::parse_string_file)?;
    if ab != ab_b {
        return Err(Failure::Input(format!(
            "{} and {} declare different alphabets",
            args.a.display(),
            args.b.display()
        )));
    }
    let scheme = match args.scheme.as_str() {
        "unit" => ScoringScheme::unit(ab.clone()),
        "corollary" => corollary_scheme(args.dsep),
        path => load(Path::new(path), ScoringScheme::from_text)?,
    };
    let target = scheme.alphabet();
    let sa = with_path(&args.a, ab.translate(&a, target))?;
    let sb = with_path(&args.b, ab.translate(&b, target))?;
    out.kv("length_a", a.len());
    out.kv("length_b", b.len());
    out.kv("distance", edit_distance(&a, &b));
    out.kv("score", global_alignment_score(&sa, &sb, &scheme));
    if args.witness {
        let (ra, rb) = global_alignment(&sa, &sb, &scheme).rows();
        out.kv("row_a", target.render_gapped(&ra));
        out.kv("row_b", target.render_gapped(&rb));
    }
    Ok(())
}

fn cmd_cover_align(args: &CoverArgs, out: &mut Report) -> Outcome {
    let raw1 = load(&args.d1, RawDag::parse)?;
    let raw2 = load(&args.d2, RawDag::parse)?;
    let alphabet = Alphabet::from_chars(raw1.label_chars().chain(raw2.label_chars()))?;
    let d1 = with_path(&args.d1, raw1.build(&alphabet))?;
    let d2 = with_path(&args.d2, raw2.build(&alphabet))?;
    let opts = SolverOptions {
        objective: args.objective,
        disjoint_d1: args.disjoint1,
        disjoint_d2: args.disjoint2,
        source_to_sink_only: args.source_sink,
        require_cover_d2: !args.no_cover_d2,
        max_pairs: args.max_pairs,
    };
    let sol = match args.engine {
        Engine::Brute => solve_bruteforce(&d1, &d2, &opts)?,
        Engine::Dp => solve_relaxed_dp(&d1, &d2, &opts)?,
    };
    let (red, green) = strand_distances(&d1, &d2, &sol)?;
    let engine = match args.engine {
        Engine::Brute => "brute",
        Engine::Dp => "dp",
    };
    out.kv("engine", engine);
    out.kv("objective", args.objective);
    out.kv("red_distance", red);
    out.kv("green_distance", green);
    let text = sol.to_text();
    out.raw(&text);
    if let Some(path) = &args.out {
        with_path(path, formats::write_atomic(path, &text))?;
    }
    Ok(())
}

fn cmd_encode_diploid(args: &EncodeArgs, out: &mut Report) -> Outcome {
    let (ab, alns) = load(&args.alignment, formats::parse_alignment_file)?;
    let [aln] = &alns[..] else {
        return Err(Failure::Input(format!(
            "{}: expected one alignment, found {}",
            args.alignment.display(),
            alns.len()
        )));
    };
    let dag = with_path(&args.alignment, encode_diploid(aln))?;
    out.raw(&write_dag(&dag, &ab));
    Ok(())
}

fn cmd_reduce(args: &ReduceArgs, out: &mut Report) -> Outcome {
    let inst = load(&args.lcs, LcsInstance::from_text)?;
    let mut p = default_params(&inst, args.scale);
    p.seed = args.seed;
    if let Some(v) = args.big_n {
        p.big_n = v;
    }
    if let Some(v) = args.tab_length {
        p.tab_length = v;
    }
    if let Some(v) = args.tab_k {
        p.tab_k = v;
    }
    out.kv(
        "scale",
        match args.scale {
            Scale::Paper => "paper",
            Scale::Desk => "desk",
        },
    );
    for (k, v) in [
        ("n", p.n),
        ("ell", p.ell),
        ("D", p.d),
        ("N", p.big_n),
        ("M", p.m),
        ("tab_length", p.tab_length),
        ("tab_k", p.tab_k),
    ] {
        out.kv(k, v);
    }
    out.kv("seed", p.seed);
    p.check(&inst)?;
    out.kv("label_chars", p.label_chars());
    if p.label_chars() > args.max_label_chars {
        return Err(Failure::Guard(format!(
            "the DAGs would hold {} label characters, above --max-label-chars {}",
            p.label_chars(),
            args.max_label_chars
        )));
    }
    let ri = build_instance(&inst, &p)?;
    out.kv("tab_verified", verify_distinct_substrings(&ri.tab, p.tab_k));
    out.kv("tab_adequate", ri.tab_adequate());
    out.kv("nodes_a", ri.dag_a.node_count());
    out.kv("nodes_b", ri.dag_b.node_count());
    with_path(&args.out, fs::create_dir_all(&args.out).map_err(Error::from))?;
    for (name, text) in BUNDLE_FILES.iter().zip(&BundleFiles::render(&ri).0) {
        let path = args.out.join(name);
        with_path(&path, formats::write_atomic(&path, text))?;
    }
    out.kv("bundle", args.out.display());
    Ok(())
}

fn lemma1(ri: &ReductionInstance, out: &mut Report) -> Outcome {
    let ab = Alphabet::binary();
    let lcs = lcs_multi(ri.lcs.strings())?;
    let w = lemma1_witness(ri, &lcs)?;
    let (d_red, d_green) = witness_distances(ri, &w)?;
    out.kv("lemma1.lcs", ab.render(&lcs));
    out.kv("lemma1.delta", w.delta);
    out.kv("lemma1.d_red", d_red);
    out.kv("lemma1.d_green", d_green);
    if d_red != 0 || d_green != 2 * w.delta {
        return Err(Failure::Check(format!(
            "lemma1: expected distances (0, {}), got ({d_red}, {d_green})",
            2 * w.delta
        )));
    }
    Ok(())
}

fn lemma2(ri: &ReductionInstance, args: &VerifyArgs, out: &mut Report) -> Outcome {
    let ab = Alphabet::binary();
    let ell = ri.params.ell;
    let (ea, eb) = ri.expansions();
    let opts = SolverOptions {
        disjoint_d1: !args.overlap,
        disjoint_d2: !args.overlap,
        max_pairs: args.max_pairs,
        ..Default::default()
    };
    out.kv("lemma2.variant", if args.overlap { "overlap" } else { "disjoint" });
    let sol = match &args.solution {
        Some(path) => {
            let sol = load(path, CoverSolution::from_text)?;
            let value = with_path(path, evaluate_solution(&ea.dag, &eb.dag, &sol, &opts))?;
            if value != sol.value {
                return Err(Failure::Input(format!(
                    "{}: stored value {} but the paths score {value}",
                    path.display(),
                    sol.value
                )));
            }
            sol
        }
        None => solve_bruteforce(&ea.dag, &eb.dag, &opts)?,
    };
    let ObjectiveValue::Scalar(value) = sol.value else {
        return Err(Failure::Input("lemma2 needs a sum-objective solution".into()));
    };
    out.kv("lemma2.value", value);
    let lcs_optimum = 2 * (ell - lcs_multi(ri.lcs.strings())?.len()) as u64;
    out.kv("lemma2.lcs_optimum", lcs_optimum);
    let mut failures = Vec::new();
    if args.solution.is_none() {
        let asserted = ri.tab_adequate();
        out.kv("lemma2.optimum_matches_lcs", value == lcs_optimum);
        out.kv("lemma2.optimum_asserted", asserted);
        if asserted && value != lcs_optimum {
            failures.push(format!("optimum {value} differs from 2(ℓ - |LCS|) = {lcs_optimum}"));
        }
    }
    match lemma2_extract(ri, &sol) {
        Ok(s) => {
            let common = ri.lcs.strings().iter().all(|t| is_subsequence(&s, t));
            let bound = 2 * ell.saturating_sub(s.len()) as u64 <= value;
            out.kv("lemma2.extracted", ab.render(&s));
            out.kv("lemma2.common_subsequence", common);
            out.kv("lemma2.bound_holds", bound);
            if !common {
                failures.push("extracted string is not a common subsequence".into());
            }
            if !bound {
                failures.push(format!("ℓ - |S'| = {} exceeds value/2", ell - s.len()));
            }
        }
        Err(e) => {
            out.kv("lemma2.extracted", "none");
            failures.push(e.to_string());
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("lemma2: {}", failures.join("; "))))
    }
}

fn corollary(ri: &ReductionInstance, args: &VerifyArgs, out: &mut Report) -> Outcome {
    let ab = Alphabet::corollary();
    let enc = corollary_encode(ri)?;
    for (name, aln) in [("first", &enc.first), ("second", &enc.second)] {
        let (x, y) = aln.render(&ab);
        out.kv(&format!("corollary.{name}_row_a"), x);
        out.kv(&format!("corollary.{name}_row_b"), y);
    }
    let guard = DiploidGuard {
        max_len: args.diploid_max_len,
        max_outcome_pairs: args.diploid_max_outcomes,
    };
    let r = corollary_verify(ri, guard, args.max_pairs)?;
    out.kv("corollary.v1", r.v1);
    out.kv("corollary.v2", r.v2);
    out.kv("corollary.equal", r.equal());
    out.kv("corollary.bound", r.bound);
    out.kv("corollary.bound_holds", r.bound_holds());
    if !r.bound_holds() {
        return Err(Failure::Check(format!("corollary: V2 = {} exceeds {}", r.v2, r.bound)));
    }
    Ok(())
}

/// Runs one check and records its verdict.
fn run_check(name: &str, out: &mut Report, check: impl FnOnce(&mut Report) -> Outcome) -> Outcome {
    let r = check(out);
    match &r {
        Ok(()) => out.kv(name, "PASS"),
        Err(f) => {
            out.kv(&format!("{name}.reason"), f);
            out.kv(name, f.verdict());
        }
    }
    r
}

fn cmd_verify(args: &VerifyArgs, out: &mut Report) -> Outcome {
    let ri = with_path(&args.bundle, load_bundle(&args.bundle))?;
    out.kv("n", ri.params.n);
    out.kv("ell", ri.params.ell);
    out.kv("N", ri.params.big_n);
    out.kv("tab_adequate", ri.tab_adequate());
    let modes = match args.mode {
        Mode::Full => vec![Mode::Lemma1, Mode::Lemma2, Mode::Corollary],
        m => vec![m],
    };
    let mut failures = Vec::new();
    for mode in modes {
        let r = match mode {
            Mode::Lemma1 => run_check("lemma1", out, |o| lemma1(&ri, o)),
            Mode::Lemma2 => run_check("lemma2", out, |o| lemma2(&ri, args, o)),
            Mode::Corollary => run_check("corollary", out, |o| corollary(&ri, args, o)),
            Mode::Full => unreachable!(),
        };
        failures.extend(r.err());
    }
    match failures.into_iter().max_by_key(Failure::rank) {
        None => {
            out.kv("verdict", "PASS");
            Ok(())
        }
        Some(f) => {
            out.kv("verdict", f.verdict());
            Err(f)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Report::default();
    let result = match &cli.command {
        Command::Align(a) => cmd_align(a, &mut out),
        Command::CoverAlign(a) => cmd_cover_align(a, &mut out),
        Command::EncodeDiploid(a) => cmd_encode_diploid(a, &mut out),
        Command::Reduce(a) => cmd_reduce(a, &mut out),
        Command::Verify(a) => cmd_verify(a, &mut out),
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.0.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
