use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use dihedral::algebraic::{tensor_closure_probe, Budget, ProbeOptions};
use dihedral::decomp::{decompose_with, DecomposeOptions};
use dihedral::klein::{klein_decompose, signature_of};
use dihedral::module::{band_module, heller, induce, regular_module, string_module, Restricted};
use dihedral::quiver::sweep_component;
use dihedral::suite::{run_suite, suite_names, Bounds};
use dihedral::word::{apply_l_pow, apply_r_pow, omega2_word};
use dihedral::{BitMatrix, KleinRep, QParam, Rep, SubgroupId, Word};

#[derive(Parser)]
#[command(name = "dihedral", version, about = "Modules for dihedral 2-groups over GF(2)")]
struct Cli {
    /// Group parameter: the group is dihedral of order 4q.
    #[arg(long, global = true, default_value_t = 2)]
    q: usize,
    /// Seed for randomised steps.
    #[arg(long, global = true, env = "DIHEDRAL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Operations on words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Build or transform modules.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Krull–Schmidt decomposition.
    Decompose(Source),
    /// Signature of an even-dimensional non-periodic module.
    Signature(Source),
    /// Auslander–Reiten quiver tools.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Tensor-closure probes.
    #[command(subcommand)]
    Algebraic(AlgebraicCmd),
    /// Run a named property suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct WordArg {
    /// Letters separated by spaces, e.g. "a b- a".
    #[arg(long, allow_hyphen_values = true)]
    word: String,
}

#[derive(Subcommand)]
enum WordCmd {
    Validate(WordArg),
    Invert(WordArg),
    Lq {
        #[command(flatten)]
        word: WordArg,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        power: i64,
    },
    Rq {
        #[command(flatten)]
        word: WordArg,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        power: i64,
    },
    Omega2(WordArg),
}

/// A module given by a word or a JSON file.
#[derive(Args)]
struct Source {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    word: Option<String>,
    /// Module JSON as written by `module build-*`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Subgroup {
    X,
    Y,
    KleinX,
    KleinY,
}

impl From<Subgroup> for SubgroupId {
    fn from(s: Subgroup) -> Self {
        match s {
            Subgroup::X => SubgroupId::GenX,
            Subgroup::Y => SubgroupId::GenY,
            Subgroup::KleinX => SubgroupId::KleinX,
            Subgroup::KleinY => SubgroupId::KleinY,
        }
    }
}

#[derive(Subcommand)]
enum ModuleCmd {
    BuildString(WordArg),
    BuildBand {
        #[command(flatten)]
        word: WordArg,
        /// Rows of the automorphism, comma separated, e.g. "01,11".
        #[arg(long, default_value = "1")]
        phi: String,
    },
    Regular,
    /// Induce a Klein-four module (JSON with g1, g2) or the trivial one.
    Induce {
        #[arg(long, value_enum)]
        subgroup: Subgroup,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    Restrict {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        subgroup: Subgroup,
    },
    Dual(Source),
    Tensor {
        #[arg(long, num_args = 2, required = true)]
        input: Vec<PathBuf>,
    },
    /// Heller translate: Ω^n for n > 0, Ω^{-|n|} for n < 0.
    Omega {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n: i64,
    },
}

#[derive(Subcommand)]
enum QuiverCmd {
    Sweep {
        #[command(flatten)]
        word: WordArg,
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeSeed {
    Trivial,
    InducedTrivial,
    InducedOmega,
}

#[derive(Subcommand)]
enum AlgebraicCmd {
    Probe {
        #[arg(long, value_enum, conflicts_with_all = ["word", "input"])]
        module: Option<ProbeSeed>,
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 256)]
        max_dim: usize,
        #[arg(long, default_value_t = 64)]
        max_classes: usize,
        #[arg(long, default_value_t = 8)]
        max_rounds: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long)]
    suite: String,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    radius: Option<i64>,
    #[arg(long = "seed-word", allow_hyphen_values = true)]
    seed_words: Vec<String>,
    #[arg(long)]
    samples: Option<usize>,
}

/// What a command produced.
struct Output {
    text: String,
    json: serde_json::Value,
    dot: Option<String>,
    ok: bool,
}

impl Output {
    fn new<T: Serialize>(text: String, value: &T) -> anyhow::Result<Self> {
        Ok(Output { text, json: serde_json::to_value(value)?, dot: None, ok: true })
    }
}

enum Failure {
    Usage(anyhow::Error),
    Io(anyhow::Error),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match emit(&cli, &out) {
        Ok(()) => ExitCode::from(if out.ok { 0 } else { 1 }),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Text => out.text.clone(),
        Format::Json => serde_json::to_string_pretty(&out.json).map_err(|e| Failure::Io(e.into()))? + "\n",
        Format::Dot => match &out.dot {
            Some(d) => d.clone(),
            None => return Err(Failure::Usage(anyhow::anyhow!("--format dot is only supported by `quiver sweep`"))),
        },
    };
    match &cli.out {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())).map_err(Failure::Io),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(|e| Failure::Io(e.into())),
    }
}

fn parse_word(s: &str) -> anyhow::Result<Word> {
    s.parse::<Word>().with_context(|| format!("invalid word {s:?}"))
}

fn read_rep(path: &PathBuf) -> anyhow::Result<Rep> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rep: Rep = serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))?;
    rep.check()?;
    Ok(rep)
}

fn load(src: &Source, q: QParam) -> anyhow::Result<Rep> {
    match (&src.word, &src.input) {
        (Some(w), None) => Ok(string_module(&parse_word(w)?, q)?),
        (None, Some(p)) => {
            let rep = read_rep(p)?;
            if rep.q() != q {
                bail!("module has q = {} but --q is {}", rep.q().get(), q.get());
            }
            Ok(rep)
        }
        _ => bail!("give exactly one of --word or --input"),
    }
}

fn rep_text(m: &Rep) -> String {
    let mut s = format!("q = {}, dim {}\n", m.q().get(), m.dim());
    for (name, g) in [("x", m.x()), ("y", m.y())] {
        s += &format!("{name}:\n");
        for r in g.row_strings() {
            s += &format!("  {r}\n");
        }
    }
    s
}

fn rep_output(m: &Rep) -> anyhow::Result<Output> {
    Output::new(rep_text(m), m)
}

fn word_output(w: &Word) -> anyhow::Result<Output> {
    Output::new(format!("{w}\n"), &json!({ "word": w }))
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let q = QParam::new(cli.q)?;
    match &cli.cmd {
        Cmd::Word(c) => run_word(c, q),
        Cmd::Module(c) => run_module(c, q),
        Cmd::Decompose(src) => {
            let m = load(src, q)?;
            let r = decompose_with(&m, DecomposeOptions { seed: cli.seed, ..DecomposeOptions::default() });
            let mut text = format!("dim {} = ", r.dim);
            let parts: Vec<String> = r
                .summands
                .iter()
                .map(|s| if s.multiplicity > 1 { format!("{}·{}", s.multiplicity, s.tag) } else { s.tag.to_string() })
                .collect();
            text += &parts.join(" ⊕ ");
            text += &format!("\ncertified: {}\n", r.all_certified());
            Output::new(text, &r)
        }
        Cmd::Signature(src) => {
            let m = load(src, q)?;
            let (s, h) = signature_of(&m)?;
            Output::new(format!("{s} on {h:?}\n"), &json!({ "signature": s, "subgroup": h }))
        }
        Cmd::Quiver(QuiverCmd::Sweep { word, radius }) => {
            let r = sweep_component(&parse_word(&word.word)?, *radius, q)?;
            let mut text = String::new();
            for j in (-radius..=*radius).rev() {
                let row: Vec<String> = (-radius..=*radius)
                    .map(|i| {
                        let c = dihedral::quiver::Coordinate::new(i, j);
                        format!("{:>9}", r.signature(c).map(|s| s.to_string()).unwrap_or_else(|| "-".into()))
                    })
                    .collect();
                text += &format!("j={j:>3} {}\n", row.join(""));
            }
            text += &format!(
                "pattern: {}\nzero signatures: {}\ndiamonds pass: {}\n",
                r.pattern.map(|p| p.label()).unwrap_or("none"),
                r.zero_signatures,
                r.diamonds_pass()
            );
            let mut out = Output::new(text, &r)?;
            out.dot = Some(r.to_dot());
            Ok(out)
        }
        Cmd::Algebraic(AlgebraicCmd::Probe { module, source, max_dim, max_classes, max_rounds }) => {
            let seed_module = match module {
                Some(ProbeSeed::Trivial) => dihedral::module::trivial(q),
                Some(ProbeSeed::InducedTrivial) => induce(&KleinRep::trivial(), SubgroupId::KleinY, q)?,
                Some(ProbeSeed::InducedOmega) => {
                    heller(&induce(&KleinRep::trivial(), SubgroupId::KleinY, q)?, -1)
                }
                None => load(source, q)?,
            };
            let budget = Budget { max_dim: *max_dim, max_classes: *max_classes, max_rounds: *max_rounds };
            let r = tensor_closure_probe(&seed_module, ProbeOptions { budget, seed: cli.seed, ..Default::default() });
            let mut text = format!("verdict: {:?}\nrounds: {}\nclasses:\n", r.verdict, r.rounds);
            for c in &r.classes {
                let sig = c.signature.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
                text += &format!("  dim {:>3}  {}  {}\n", c.dim, c.tag, sig);
            }
            for t in &r.trace {
                text += &format!("round {}: {} new, dims {:?}\n", t.round, t.new_classes, t.new_dims);
            }
            Output::new(text, &r)
        }
        Cmd::Verify(v) => run_verify(v, q, cli.seed),
    }
}

fn run_word(c: &WordCmd, q: QParam) -> anyhow::Result<Output> {
    match c {
        WordCmd::Validate(w) => {
            let word = parse_word(&w.word)?;
            let valid = word.is_valid(q);
            let mut out = Output::new(
                format!("{}\n", if valid { "valid" } else { "invalid" }),
                &json!({ "word": word, "valid": valid }),
            )?;
            out.ok = valid;
            Ok(out)
        }
        WordCmd::Invert(w) => word_output(&parse_word(&w.word)?.inverse()),
        WordCmd::Lq { word, power } => word_output(&apply_l_pow(&parse_word(&word.word)?, *power, q)?),
        WordCmd::Rq { word, power } => word_output(&apply_r_pow(&parse_word(&word.word)?, *power, q)?),
        WordCmd::Omega2(w) => word_output(&omega2_word(&parse_word(&w.word)?, q)?),
    }
}

fn parse_phi(s: &str) -> anyhow::Result<BitMatrix> {
    let rows: Vec<&str> = s.split(',').map(str::trim).collect();
    Ok(BitMatrix::from_row_strings(&rows)?)
}

fn run_module(c: &ModuleCmd, q: QParam) -> anyhow::Result<Output> {
    match c {
        ModuleCmd::BuildString(w) => rep_output(&string_module(&parse_word(&w.word)?, q)?),
        ModuleCmd::BuildBand { word, phi } => {
            rep_output(&band_module(&parse_word(&word.word)?, &parse_phi(phi)?, q)?)
        }
        ModuleCmd::Regular => rep_output(&regular_module(q)),
        ModuleCmd::Induce { subgroup, input } => {
            let k = match input {
                Some(p) => {
                    let raw = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                    let k: KleinRep = serde_json::from_str(&raw)?;
                    KleinRep::new(k.g1, k.g2)?
                }
                None => KleinRep::trivial(),
            };
            rep_output(&induce(&k, (*subgroup).into(), q)?)
        }
        ModuleCmd::Restrict { source, subgroup } => {
            let m = load(source, q)?;
            match m.restrict((*subgroup).into()) {
                Restricted::Klein(k) => {
                    let d = klein_decompose(&k);
                    Output::new(format!("{d}\n"), &json!({ "module": k, "decomposition": d }))
                }
                Restricted::Cyclic(g) => {
                    let (free, triv) = dihedral::module::cyclic_decomposition(&g);
                    Output::new(
                        format!("{free} free ⊕ {triv} trivial\n"),
                        &json!({ "matrix": g, "free": free, "trivial": triv }),
                    )
                }
            }
        }
        ModuleCmd::Dual(src) => rep_output(&load(src, q)?.dual()),
        ModuleCmd::Tensor { input } => {
            let a = read_rep(&input[0])?;
            let b = read_rep(&input[1])?;
            rep_output(&a.tensor(&b)?)
        }
        ModuleCmd::Omega { source, n } => rep_output(&heller(&load(source, q)?, -*n)),
    }
}

fn run_verify(v: &VerifyArgs, q: QParam, seed: u64) -> anyhow::Result<Output> {
    let seeds = v.seed_words.iter().map(|s| parse_word(s)).collect::<anyhow::Result<Vec<_>>>()?;
    let bounds = Bounds { max_len: v.max_len, radius: v.radius, seeds, samples: v.samples };
    let names: Vec<&str> = if v.suite == "all" { suite_names() } else { vec![v.suite.as_str()] };
    let mut reports = Vec::new();
    for name in names {
        reports.push(run_suite(name, q, &bounds, seed)?);
    }
    let mut text = String::new();
    for r in &reports {
        text += &format!(
            "{} {:<14} {} cases, {} failures\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.suite,
            r.cases,
            r.failures.len()
        );
        for f in r.failures.iter().take(5) {
            text += &format!("     {} :: {}\n", f.case, f.detail);
        }
    }
    let ok = reports.iter().all(|r| r.passed);
    let mut out = if reports.len() == 1 {
        Output::new(text, &reports[0])?
    } else {
        Output::new(text, &reports)?
    };
    out.ok = ok;
    Ok(out)
}
