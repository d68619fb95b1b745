use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use branchpair::analysis;
use branchpair::digraph::DiGraph;
use branchpair::error::Error;
use branchpair::families;
use branchpair::io;
use branchpair::oracle::{self, Budget, Certificate};
use branchpair::search::{
    conjecture_search, cross_validate, probe_conjecture, sweep, Conjecture, Filters, PairPredicate,
    SweepMode, SweepTask, ValidatedOp,
};
use branchpair::solvers::{self, SolveReport, Strategy};

use branchpair_cli::{
    claim_summary, parse_family, resolve_root, run_claim, ClaimConfig, Status, CLAIM_IDS,
    FAMILY_NAMES,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_REFUTED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Good-pair workbench: verification suite, enumeration engine,
/// cross-validation, conjecture search, and one-shot solving.
#[derive(Parser)]
#[command(name = "branchpair", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the registered verification claims.
    VerifyPaper(VerifyArgs),
    /// Stream digraphs of a given order through filters and a predicate.
    Enumerate(EnumerateArgs),
    /// Compare a constructive solver against the oracle on random
    /// instances.
    CrossValidate(CrossValidateArgs),
    /// Gather evidence for (or find counterexamples to) an open
    /// conjecture.
    ConjectureSearch(ConjectureArgs),
    /// Decide one digraph, printing a certificate transcript.
    Solve(SolveArgs),
    /// Emit a named digraph family.
    Family(FamilyArgs),
    /// Print structural parameters of a digraph.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct CommonRunArgs {
    /// Seed for all randomized work.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Wall-clock budget in seconds (env BRANCHPAIR_BUDGET_SECS supplies a
    /// default).
    #[arg(long)]
    budget_secs: Option<u64>,
    /// Worker threads (requires the parallel build; 0 = rayon default).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

impl CommonRunArgs {
    fn budget_secs(&self) -> Option<u64> {
        self.budget_secs.or_else(|| {
            std::env::var("BRANCHPAIR_BUDGET_SECS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
    }

    fn deadline(&self) -> Option<Instant> {
        self.budget_secs()
            .map(|s| Instant::now() + std::time::Duration::from_secs(s))
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    run: CommonRunArgs,
    /// Comma-separated claim ids (default: all).
    #[arg(long, value_delimiter = ',')]
    claims: Vec<String>,
    /// Instance cap for the sampled/randomized claims.
    #[arg(long)]
    budget_instances: Option<u64>,
    /// Use the full isomorph-reduced enumeration where a sampled default
    /// exists (long run).
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    run: CommonRunArgs,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    lambda_min: Option<u32>,
    #[arg(long)]
    delta0_min: Option<u32>,
    #[arg(long)]
    alpha_max: Option<u32>,
    #[arg(long)]
    alpha_eq: Option<u32>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Sample count for sampled mode.
    #[arg(long, default_value_t = 100_000)]
    count: u64,
    #[arg(long, value_enum, default_value_t = PredicateArg::HasGoodPair)]
    predicate: PredicateArg,
    /// Stop at the first counterexample instead of completing the sweep.
    #[arg(long)]
    halt: bool,
    /// Counterexamples to keep in the report.
    #[arg(long, default_value_t = 16)]
    max_failures: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Canonical,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum PredicateArg {
    HasGoodPair,
    AllSameRoot,
}

#[derive(Args)]
struct CrossValidateArgs {
    #[command(flatten)]
    run: CommonRunArgs,
    /// Operation under test: alpha2, semicomplete, semicomplete-rooted,
    /// cobipartite, small.
    #[arg(long)]
    op: String,
    #[arg(long, default_value_t = 1000)]
    count: u64,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    /// Largest order that still gets an oracle cross-check.
    #[arg(long, default_value_t = 10)]
    oracle_max_n: usize,
}

#[derive(Args)]
struct ConjectureArgs {
    #[command(flatten)]
    run: CommonRunArgs,
    /// same-root-alpha2 or prescribed-roots-3arc.
    #[arg(long)]
    conjecture: String,
    #[arg(long, default_value_t = 500)]
    count: u64,
    #[arg(long, default_value_t = 6)]
    n_min: usize,
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    /// Test one digraph from a file instead of sampling.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    run: CommonRunArgs,
    /// Input file in the text format, or `-` for stdin.
    input: String,
    /// In-branching root (label or index).
    #[arg(long)]
    root_in: Option<String>,
    /// Out-branching root (label or index).
    #[arg(long)]
    root_out: Option<String>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Oracle,
    Small,
    Semicomplete,
    Cobipartite,
    Alpha2,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Dot,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name; see `family --list`.
    #[arg(default_value = "")]
    name: String,
    /// List available families.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    satellite: Option<usize>,
    #[arg(long)]
    variant: Option<u8>,
    /// Include the optional arc d->c (four-exception only).
    #[arg(long)]
    dc: bool,
    /// Include the optional arc c->b (four-exception only).
    #[arg(long)]
    cb: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input file in the text format, or `-` for stdin.
    input: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let benign = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if benign {
                ExitCode::from(EXIT_OK)
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    let code = match cli.command {
        Command::VerifyPaper(args) => cmd_verify(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::CrossValidate(args) => cmd_cross_validate(args),
        Command::ConjectureSearch(args) => cmd_conjecture(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Family(args) => cmd_family(args),
        Command::Analyze(args) => cmd_analyze(args),
    };
    match code {
        Ok(code) => ExitCode::from(code),
        Err(Error::BudgetExceeded(stats)) => {
            eprintln!(
                "error: budget exceeded after {} branchings",
                stats.branchings
            );
            ExitCode::from(EXIT_BUDGET)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn init_jobs(jobs: usize) {
    #[cfg(feature = "parallel")]
    if jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    if jobs > 1 {
        eprintln!("note: built without the parallel feature; running sequentially");
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Error> {
    init_jobs(args.run.jobs);
    let ids: Vec<String> = if args.claims.is_empty() {
        CLAIM_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        args.claims.clone()
    };
    for id in &ids {
        if claim_summary(id).is_none() {
            return Err(Error::UnknownClaim(id.clone()));
        }
    }
    let cfg = ClaimConfig {
        seed: args.run.seed,
        budget_secs: args.run.budget_secs(),
        instances: args.budget_instances,
        exhaustive: args.exhaustive,
    };
    let mut refuted = false;
    let mut budget = false;
    for id in &ids {
        println!("CLAIM {id} {}", claim_summary(id).expect("validated above"));
        let outcome = run_claim(id, &cfg)?;
        for line in &outcome.lines {
            println!("{line}");
        }
        println!("STATUS {}", outcome.status.word());
        refuted |= outcome.status == Status::Refuted;
        budget |= outcome.status == Status::BudgetExceeded;
    }
    Ok(if refuted {
        EXIT_REFUTED
    } else if budget {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<u8, Error> {
    init_jobs(args.run.jobs);
    let mode = match args.mode {
        ModeArg::Exhaustive => SweepMode::Exhaustive,
        ModeArg::Canonical => SweepMode::Canonical,
        ModeArg::Sampled => SweepMode::Sampled {
            count: args.count,
            seed: args.run.seed,
        },
    };
    let predicate = match args.predicate {
        PredicateArg::HasGoodPair => PairPredicate::HasGoodPair,
        PredicateArg::AllSameRoot => PairPredicate::AllSameRootPairs,
    };
    let mut task = SweepTask::new(
        args.n,
        Filters {
            lambda_min: args.lambda_min,
            delta0_min: args.delta0_min,
            alpha_max: args.alpha_max,
            alpha_eq: args.alpha_eq,
        },
        mode,
        predicate,
    );
    task.deadline = args.run.deadline();
    task.halt_on_failure = args.halt;
    task.max_failures = args.max_failures;
    let summary = sweep(&task)?;
    println!(
        "STAT n={} seed={} examined={} qualified={} satisfied={} failed={}",
        args.n,
        args.run.seed,
        summary.examined,
        summary.qualified,
        summary.satisfied,
        summary.failed()
    );
    for failure in &summary.failures {
        println!("CERT counterexample {}", failure.detail);
        for line in io::emit_text(&failure.digraph).lines() {
            println!("CERT input {line}");
        }
    }
    if summary.failed() > 0 {
        Ok(EXIT_REFUTED)
    } else if summary.budget_hit {
        println!("STAT budget-exceeded partial=true");
        Ok(EXIT_BUDGET)
    } else {
        Ok(EXIT_OK)
    }
}

fn cmd_cross_validate(args: CrossValidateArgs) -> Result<u8, Error> {
    init_jobs(args.run.jobs);
    let op = ValidatedOp::parse(&args.op)
        .ok_or_else(|| Error::PreconditionViolated(format!("unknown op `{}`", args.op)))?;
    let cv = cross_validate(
        op,
        args.count,
        args.run.seed,
        (args.n_min, args.n_max),
        args.oracle_max_n,
    )?;
    println!(
        "STAT op={} seed={} instances={} produced={} skipped={} oracle-checked={} exceptions={} mismatches={}",
        op.name(),
        args.run.seed,
        cv.requested,
        cv.produced,
        cv.skipped,
        cv.oracle_checked,
        cv.exceptions,
        cv.mismatches.len()
    );
    for m in &cv.mismatches {
        print!("{m}");
    }
    Ok(if cv.clean() { EXIT_OK } else { EXIT_REFUTED })
}

fn cmd_conjecture(args: ConjectureArgs) -> Result<u8, Error> {
    init_jobs(args.run.jobs);
    let conjecture = Conjecture::parse(&args.conjecture).ok_or_else(|| {
        Error::PreconditionViolated(format!("unknown conjecture `{}`", args.conjecture))
    })?;
    if let Some(path) = &args.input {
        let (d, labels) = read_digraph(path)?;
        let probe = probe_conjecture(conjecture, &d)?;
        println!(
            "STAT conjecture={} hypotheses-met={} multi={} lambda={} alpha={} root-pairs={} failing={}",
            conjecture.name(),
            probe.hypotheses_met,
            probe.is_multi,
            probe.lambda,
            probe.alpha,
            probe.root_pairs_checked,
            probe.failing.len()
        );
        let name = |v: usize| {
            labels
                .as_ref()
                .and_then(|l| l.get(v).filter(|s| !s.is_empty()).cloned())
                .unwrap_or_else(|| v.to_string())
        };
        for (s, t) in &probe.failing {
            println!("CERT failing-roots s={} t={}", name(*s), name(*t));
        }
        return Ok(if probe.hypotheses_met && !probe.failing.is_empty() {
            EXIT_REFUTED
        } else {
            EXIT_OK
        });
    }
    let summary = conjecture_search(
        conjecture,
        args.count,
        args.run.seed,
        (args.n_min, args.n_max),
        args.run.deadline(),
    )?;
    println!(
        "STAT conjecture={} seed={} instances={} produced={} skipped={} root-pairs={} counterexamples={}",
        conjecture.name(),
        args.run.seed,
        summary.requested,
        summary.produced,
        summary.skipped,
        summary.root_pairs_checked,
        summary.counterexamples.len()
    );
    for c in &summary.counterexamples {
        print!("{c}");
    }
    if !summary.counterexamples.is_empty() {
        Ok(EXIT_REFUTED)
    } else if summary.budget_hit {
        println!("STAT budget-exceeded partial=true");
        Ok(EXIT_BUDGET)
    } else {
        Ok(EXIT_OK)
    }
}

enum SolveOutcome {
    Cert(Certificate),
    Report(SolveReport),
}

fn cmd_solve(args: SolveArgs) -> Result<u8, Error> {
    init_jobs(args.run.jobs);
    let (d, labels) = read_digraph(&args.input)?;
    let n = d.vertex_count();
    let root_in = args
        .root_in
        .as_deref()
        .map(|s| resolve_root(s, labels.as_deref(), n))
        .transpose()
        .map_err(Error::PreconditionViolated)?;
    let root_out = args
        .root_out
        .as_deref()
        .map(|s| resolve_root(s, labels.as_deref(), n))
        .transpose()
        .map_err(Error::PreconditionViolated)?;
    let budget = args
        .run
        .budget_secs()
        .map(Budget::with_seconds)
        .unwrap_or_default();

    let rooted = root_in.is_some() || root_out.is_some();
    let outcome = match (args.strategy, rooted) {
        (StrategyArg::Oracle, _) | (StrategyArg::Auto, true) => {
            SolveOutcome::Cert(oracle::good_pair(&d, root_in, root_out, &budget)?)
        }
        (StrategyArg::Small, false) => SolveOutcome::Cert(solvers::small_good_pair(&d)?),
        (StrategyArg::Semicomplete, _) => match root_in {
            Some(r) => SolveOutcome::Cert(solvers::semicomplete_good_r_pair(&d, r)?),
            None => SolveOutcome::Report(SolveReport {
                strategy: Strategy::ExceptionTheorem,
                pair: solvers::semicomplete_good_pair(&d)?,
                validated: true,
            }),
        },
        (StrategyArg::Cobipartite, false) => {
            SolveOutcome::Report(solvers::cobipartite_good_pair_report(&d)?)
        }
        (StrategyArg::Alpha2, false) => SolveOutcome::Report(solvers::alpha2_good_pair(&d)?),
        (StrategyArg::Auto, false) => auto_solve(&d, &budget)?,
        (_, true) => {
            return Err(Error::PreconditionViolated(
                "root constraints need --strategy oracle, semicomplete, or auto".into(),
            ))
        }
    };
    let (transcript, pair) = match &outcome {
        SolveOutcome::Cert(cert) => (cert.to_string(), cert.pair().cloned()),
        SolveOutcome::Report(report) => (report.to_string(), Some(report.pair.clone())),
    };
    match args.format {
        FormatArg::Text => println!("{transcript}"),
        FormatArg::Dot => {
            println!("{transcript}");
            print!("{}", io::emit_dot(&d, pair.as_ref(), labels.as_deref()));
        }
    }
    Ok(EXIT_OK)
}

/// Strategy choice for unconstrained solving: the cheapest solver whose
/// preconditions hold, the oracle otherwise.
fn auto_solve(d: &DiGraph, budget: &Budget) -> Result<SolveOutcome, Error> {
    let n = d.vertex_count();
    if n <= 6 {
        return Ok(SolveOutcome::Cert(solvers::small_good_pair(d)?));
    }
    if analysis::is_semicomplete(d) {
        return Ok(SolveOutcome::Report(SolveReport {
            strategy: Strategy::ExceptionTheorem,
            pair: solvers::semicomplete_good_pair(d)?,
            validated: true,
        }));
    }
    let lambda_ok = n >= 2 && analysis::arc_connectivity(d)? >= 2;
    if lambda_ok && n <= analysis::EXACT_SEARCH_LIMIT {
        let (alpha, _) = analysis::independence_number(d)?;
        if alpha <= 2 {
            return Ok(SolveOutcome::Report(solvers::alpha2_good_pair(d)?));
        }
    }
    if lambda_ok && analysis::co_bipartition(d).is_some() {
        return Ok(SolveOutcome::Report(solvers::cobipartite_good_pair_report(
            d,
        )?));
    }
    Ok(SolveOutcome::Cert(oracle::good_pair(
        d, None, None, budget,
    )?))
}

fn read_digraph(path: &str) -> Result<(DiGraph, Option<Vec<String>>), Error> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::PreconditionViolated(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::PreconditionViolated(format!("{path}: {e}")))?
    };
    io::parse_labeled_text(&text)
}

fn cmd_family(args: FamilyArgs) -> Result<u8, Error> {
    if args.list || args.name.is_empty() {
        for name in FAMILY_NAMES {
            println!("{name}");
        }
        return Ok(EXIT_OK);
    }
    let family = parse_family(
        &args.name,
        args.n,
        args.k,
        args.r,
        args.satellite,
        args.variant,
        args.dc,
        args.cb,
    )
    .map_err(Error::PreconditionViolated)?;
    let generated = families::generate(&family)?;
    match args.format {
        FormatArg::Text => print!(
            "{}",
            io::emit_labeled_text(&generated.digraph, Some(&generated.labels))
        ),
        FormatArg::Dot => print!(
            "{}",
            io::emit_dot(&generated.digraph, None, Some(&generated.labels))
        ),
    }
    Ok(EXIT_OK)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8, Error> {
    let (d, labels) = read_digraph(&args.input)?;
    let n = d.vertex_count();
    println!("STAT n={} arcs={} multi={}", n, d.arc_count(), d.is_multi());
    let scc = analysis::strong_components(&d);
    println!(
        "STAT scc-count={} initial={} terminal={}",
        scc.count(),
        scc.initial.len(),
        scc.terminal.len()
    );
    if n >= 2 {
        println!("STAT lambda={}", analysis::arc_connectivity(&d)?);
    }
    println!("STAT delta0={}", analysis::min_semidegree(&d));
    if n <= analysis::EXACT_SEARCH_LIMIT {
        let (alpha, witness) = analysis::independence_number(&d)?;
        let name = |v: usize| {
            labels
                .as_ref()
                .and_then(|l| l.get(v).filter(|s| !s.is_empty()).cloned())
                .unwrap_or_else(|| v.to_string())
        };
        let witness: Vec<String> = witness.into_iter().map(name).collect();
        println!("STAT alpha={} witness={}", alpha, witness.join(","));
    }
    println!(
        "STAT semicomplete={} tournament={}",
        analysis::is_semicomplete(&d),
        analysis::is_tournament(&d)
    );
    match analysis::co_bipartition(&d) {
        Some(cb) => println!(
            "STAT co-bipartite=true side1={} side2={}",
            cb.v1.len(),
            cb.v2.len()
        ),
        None => println!("STAT co-bipartite=false"),
    }
    let ins = analysis::in_generators(&d);
    let outs = analysis::out_generators(&d);
    println!("STAT in-generators={}", ins.len());
    println!("STAT out-generators={}", outs.len());
    Ok(EXIT_OK)
}
