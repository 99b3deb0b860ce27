//! `indepbound`: lower bounds on hypergraph independence numbers.
//!
//! Subcommands load a hypergraph from a `.hg` file or generate a built-in
//! family, then compute degree-sequence and weighted-degree lower bounds, run
//! the seeded random-permutation selection pipeline, compute exact
//! independence numbers on small instances, or re-derive the closed-form
//! probabilities behind the pipeline from scratch.
//!
//! Exit codes: 0 success (and, for `verify`, all checks passed), 1 a
//! verification check failed, 2 usage or input error, 3 an enumeration cap
//! was exceeded.

mod suites;

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use indepbound_core::alpha::exact_alpha;
use indepbound_core::bounds::{compare_bounds, threshold_from_epsilon, ReportConfig};
use indepbound_core::construct::FamilySpec;
use indepbound_core::exact::{rat, rat_to_string, Rat};
use indepbound_core::perm::run_trials;
use indepbound_core::precise::{decimal_string, parse_decimal};
use indepbound_core::{Caps, Error, Hypergraph};

#[derive(Parser)]
#[command(
    name = "indepbound",
    version,
    about = "Lower bounds on the independence number of k-uniform hypergraphs",
    long_about = "Computes degree-sequence lower bounds on the independence number of \
k-uniform hypergraphs, runs the seeded random-permutation selection pipeline those \
bounds are built on, and verifies the closed-form probabilities behind it by full \
enumeration."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every applicable lower bound for one hypergraph.
    Bounds(BoundsArgs),
    /// Bounds plus seeded trials, an expectation cross-check, and the exact
    /// independence number when the instance is small enough.
    Report(ReportArgs),
    /// Run the random-permutation selection pipeline and print the best
    /// independent set found.
    Greedy(GreedyArgs),
    /// Exact independence number (exponential search; capped), cross-checked
    /// against every certified bound.
    Alpha(AlphaArgs),
    /// Generate a built-in family and write it in .hg format.
    Construct(ConstructArgs),
    /// Re-derive the closed-form probabilities and counting identities from
    /// scratch and report any disagreement.
    Verify(VerifyArgs),
}

/// Where the hypergraph comes from: a `.hg` file or a named family.
#[derive(Args)]
struct InputArgs {
    /// Path to a .hg hypergraph file.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["family", "n", "k", "i", "w"])]
    input: Option<PathBuf>,
    /// Built-in family: bipartite-tower, i-unit, family-h, pendant-bipartite.
    #[arg(long, value_name = "NAME")]
    family: Option<String>,
    /// Size parameter (levels for tower/family-h, vertices for pendant-bipartite).
    #[arg(long, value_name = "N")]
    n: Option<u32>,
    /// Edge size, for families that take one.
    #[arg(long, value_name = "K")]
    k: Option<u32>,
    /// Recursion depth, for i-unit.
    #[arg(long, value_name = "I")]
    i: Option<u32>,
    /// Weight multiplier, for family-h.
    #[arg(long, value_name = "W")]
    w: Option<u32>,
}

impl InputArgs {
    fn load(&self) -> Result<Hypergraph, Error> {
        match (&self.input, &self.family) {
            (Some(path), _) => {
                let file = File::open(path)?;
                Hypergraph::load_hg(BufReader::new(file))
            }
            (None, Some(name)) => FamilySpec::parse(name, self.n, self.k, self.i, self.w)?.build(),
            (None, None) => Err(Error::invalid("provide --input PATH or --family NAME")),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Truncation exponent in [0, 1): a decimal like 0.5 or a fraction like 1/2.
    #[arg(long, default_value = "1/2", value_name = "F")]
    epsilon: String,
    /// Backward-edge threshold override; wins over --epsilon when both given.
    #[arg(long = "A", value_name = "N")]
    threshold: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Truncation exponent in [0, 1): a decimal like 0.5 or a fraction like 1/2.
    #[arg(long, default_value = "1/2", value_name = "F")]
    epsilon: String,
    /// Backward-edge threshold override; wins over --epsilon when both given.
    #[arg(long = "A", value_name = "N")]
    threshold: Option<u64>,
    /// Seed for the trial pipeline.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of permutation trials.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GreedyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Backward-edge threshold; when absent, derived as ceil(D^epsilon).
    #[arg(long = "A", value_name = "N")]
    threshold: Option<u64>,
    /// Truncation exponent used to derive the threshold when --A is absent.
    #[arg(long, default_value = "1/2", value_name = "F")]
    epsilon: String,
    /// Seed for the trial pipeline.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of permutation trials.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlphaArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Raise the exact-search vertex cap for this run.
    #[arg(long, value_name = "N")]
    max_n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Built-in family: bipartite-tower, i-unit, family-h, pendant-bipartite.
    #[arg(long, value_name = "NAME")]
    family: String,
    /// Size parameter (levels for tower/family-h, vertices for pendant-bipartite).
    #[arg(long, value_name = "N")]
    n: Option<u32>,
    /// Edge size, for families that take one.
    #[arg(long, value_name = "K")]
    k: Option<u32>,
    /// Recursion depth, for i-unit.
    #[arg(long, value_name = "I")]
    i: Option<u32>,
    /// Weight multiplier, for family-h.
    #[arg(long, value_name = "W")]
    w: Option<u32>,
    /// Write the .hg file here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Probability,
    Mpie,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which checks to run.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Cap on t*d for the permutation-enumeration grid.
    #[arg(long, default_value_t = 10, value_name = "N")]
    max_td: usize,
    /// Number of random set systems for the at-least-a count comparison.
    #[arg(long, default_value_t = 1000, value_name = "N")]
    random: usize,
    /// Seed for the random set systems.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// Output of `greedy`: batch statistics plus the best independent set found.
#[derive(Serialize)]
struct GreedyReport {
    schema: &'static str,
    seed: u64,
    threshold_a: u64,
    trials: usize,
    k: usize,
    n: usize,
    m: usize,
    mean_selection: String,
    mean_selection_exact: String,
    mean_final: String,
    best_size: usize,
    best_set: Vec<u32>,
}

impl GreedyReport {
    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    fn to_csv(&self) -> String {
        let set = self
            .best_set
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let mut out = String::from("field,value\n");
        out.push_str(&format!("schema,{}\n", self.schema));
        out.push_str(&format!("seed,{}\n", self.seed));
        out.push_str(&format!("threshold_a,{}\n", self.threshold_a));
        out.push_str(&format!("trials,{}\n", self.trials));
        out.push_str(&format!("k,{}\n", self.k));
        out.push_str(&format!("n,{}\n", self.n));
        out.push_str(&format!("m,{}\n", self.m));
        out.push_str(&format!("mean_selection,{}\n", self.mean_selection));
        out.push_str(&format!("mean_selection_exact,{}\n", self.mean_selection_exact));
        out.push_str(&format!("mean_final,{}\n", self.mean_final));
        out.push_str(&format!("best_size,{}\n", self.best_size));
        out.push_str(&format!("best_set,{set}\n"));
        out
    }

    fn to_text(&self) -> String {
        let set = self
            .best_set
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "greedy: k={} n={} m={} A={} seed={} trials={}\n\
             mean selection {} ({}), mean final {}\n\
             best independent set (size {}): {}\n",
            self.k,
            self.n,
            self.m,
            self.threshold_a,
            self.seed,
            self.trials,
            self.mean_selection,
            self.mean_selection_exact,
            self.mean_final,
            self.best_size,
            set
        )
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Capacity { .. } => {
                    eprintln!(
                        "hint: raise the cap with INDEPBOUND_CAPS (keys alpha, enum, td, r, \
                         e.g. INDEPBOUND_CAPS=alpha=40) or the matching --max-* flag"
                    );
                    3
                }
                _ => 2,
            }
        }
    };
    process::exit(code);
}

fn run(cli: Cli) -> Result<i32, Error> {
    let caps = caps_from_env()?;
    match cli.command {
        Command::Bounds(args) => cmd_bounds(args, &caps),
        Command::Report(args) => cmd_report(args, &caps),
        Command::Greedy(args) => cmd_greedy(args),
        Command::Alpha(args) => cmd_alpha(args, caps),
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args, &caps),
    }
}

fn caps_from_env() -> Result<Caps, Error> {
    match std::env::var("INDEPBOUND_CAPS") {
        Ok(spec) => Caps::parse_overrides(&spec),
        Err(_) => Ok(Caps::default()),
    }
}

/// Accepts either a decimal ("0.5") or a fraction of integers ("1/2").
fn parse_epsilon(s: &str) -> Result<Rat, Error> {
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("epsilon numerator `{p}` is not an integer")))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("epsilon denominator `{q}` is not an integer")))?;
        if q == 0 {
            return Err(Error::invalid("epsilon denominator must be nonzero"));
        }
        Ok(rat(p, q))
    } else {
        parse_decimal(s)
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_bounds(args: BoundsArgs, caps: &Caps) -> Result<i32, Error> {
    let h = args.input.load()?;
    let cfg = ReportConfig {
        epsilon: parse_epsilon(&args.epsilon)?,
        a_override: args.threshold,
        seed: 0,
        trials: 0,
    };
    let report = compare_bounds(&h, &cfg, caps)?;
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    emit(&text, &args.out)?;
    Ok(0)
}

fn cmd_report(args: ReportArgs, caps: &Caps) -> Result<i32, Error> {
    let h = args.input.load()?;
    let cfg = ReportConfig {
        epsilon: parse_epsilon(&args.epsilon)?,
        a_override: args.threshold,
        seed: args.seed,
        trials: args.trials,
    };
    let report = compare_bounds(&h, &cfg, caps)?;
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    emit(&text, &args.out)?;
    Ok(0)
}

fn cmd_greedy(args: GreedyArgs) -> Result<i32, Error> {
    let h = args.input.load()?;
    let threshold = match args.threshold {
        Some(a) if a >= 1 => a,
        Some(_) => return Err(Error::invalid("--A must be >= 1")),
        None => threshold_from_epsilon(&h, &parse_epsilon(&args.epsilon)?)?,
    };
    let batch = run_trials(&h, threshold, args.trials, args.seed)?;
    // Belt-and-braces gate: never print a set the instance itself rejects.
    assert!(
        h.is_independent(&batch.best_set)?,
        "internal error: selected set is not independent"
    );
    let report = GreedyReport {
        schema: "indepbound/1",
        seed: batch.seed,
        threshold_a: batch.threshold,
        trials: batch.trials(),
        k: h.k(),
        n: h.n(),
        m: h.m(),
        mean_selection: decimal_string(&batch.mean_low_backward(), 12),
        mean_selection_exact: rat_to_string(&batch.mean_low_backward()),
        mean_final: decimal_string(&batch.mean_final(), 12),
        best_size: batch.best_size(),
        best_set: batch.best_set.clone(),
    };
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    emit(&text, &args.out)?;
    Ok(0)
}

fn cmd_alpha(args: AlphaArgs, mut caps: Caps) -> Result<i32, Error> {
    if let Some(max_n) = args.max_n {
        caps.alpha_n = max_n;
    }
    let h = args.input.load()?;
    let cfg = ReportConfig::default();
    let report = compare_bounds(&h, &cfg, &caps)?;
    if report.alpha.is_none() {
        // Surface the precise capacity error (vertex cap or bitmask width).
        exact_alpha(&h, &caps)?;
        unreachable!("exact_alpha must fail when the report omits alpha");
    }
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    emit(&text, &args.out)?;
    Ok(0)
}

fn cmd_construct(args: ConstructArgs) -> Result<i32, Error> {
    let spec = FamilySpec::parse(&args.family, args.n, args.k, args.i, args.w)?;
    let h = spec.build()?;
    match &args.out {
        Some(path) => {
            let file = File::create(path)?;
            h.write_hg(io::BufWriter::new(file))?;
        }
        None => {
            let stdout = io::stdout();
            h.write_hg(stdout.lock())?;
        }
    }
    Ok(0)
}


fn cmd_verify(args: VerifyArgs, caps: &Caps) -> Result<i32, Error> {
    let mut checks = Vec::new();
    if matches!(args.suite, Suite::Identities | Suite::All) {
        checks.extend(suites::run_identities()?);
    }
    if matches!(args.suite, Suite::Probability | Suite::All) {
        checks.extend(suites::run_probability(args.max_td, caps)?);
    }
    if matches!(args.suite, Suite::Mpie | Suite::All) {
        checks.extend(suites::run_mpie(args.random, args.seed)?);
    }
    let suite_name = match args.suite {
        Suite::Identities => "identities",
        Suite::Probability => "probability",
        Suite::Mpie => "mpie",
        Suite::All => "all",
    };
    let report = suites::VerifySuiteReport::assemble(
        suite_name,
        args.seed,
        args.max_td,
        args.random,
        checks,
    );
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    emit(&text, &args.out)?;
    Ok(if report.all_passed { 0 } else { 1 })
}
