//! Claim registry and runners behind the `branchpair` binary. Each claim
//! checks one verifiable statement about good pairs in the library's
//! digraph families or instance classes and reports CLAIM/STATUS/CERT/STAT
//! transcript lines.

use std::fmt::Write as _;
use std::time::Instant;

use branchpair::analysis;
use branchpair::branching::validate_good_pair;
use branchpair::digraph::DiGraph;
use branchpair::error::{Error, Result};
use branchpair::families::{self, Family};
use branchpair::io;
use branchpair::oracle::{self, Budget, Certificate};
use branchpair::search::{
    cross_validate, sweep, Filters, PairPredicate, SweepMode, SweepSummary, SweepTask, ValidatedOp,
};
use branchpair::solvers;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Confirmed,
    Refuted,
    BudgetExceeded,
}

impl Status {
    pub fn word(&self) -> &'static str {
        match self {
            Status::Confirmed => "confirmed",
            Status::Refuted => "refuted",
            Status::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClaimOutcome {
    pub id: &'static str,
    pub status: Status,
    pub lines: Vec<String>,
}

impl ClaimOutcome {
    fn new(id: &'static str) -> Self {
        ClaimOutcome {
            id,
            status: Status::Confirmed,
            lines: Vec::new(),
        }
    }

    fn stat(&mut self, line: impl Into<String>) {
        self.lines.push(format!("STAT {}", line.into()));
    }

    fn cert_block(&mut self, text: &str) {
        for line in text.lines() {
            self.lines.push(line.to_string());
        }
    }

    fn refute(&mut self, line: impl Into<String>) {
        self.status = Status::Refuted;
        self.lines.push(format!("CERT refutation {}", line.into()));
    }
}

/// Run configuration shared by the claims.
#[derive(Debug, Clone, Default)]
pub struct ClaimConfig {
    pub seed: u64,
    pub budget_secs: Option<u64>,
    pub instances: Option<u64>,
    pub exhaustive: bool,
}

impl ClaimConfig {
    fn deadline(&self) -> Option<Instant> {
        self.budget_secs
            .map(|s| Instant::now() + std::time::Duration::from_secs(s))
    }
}

pub const CLAIM_IDS: &[&str] = &[
    "e4-f4",
    "order4-rooted",
    "w-rooted",
    "h4",
    "small-le5",
    "n6-lambda2",
    "alpha2-random",
    "cobipartite-random",
    "families",
    "wprime-boundary",
    "badmulti",
];

pub fn claim_summary(id: &str) -> Option<&'static str> {
    Some(match id {
        "e4-f4" => "E4 admits no good pair while F4 does",
        "order4-rooted" => {
            "on every order-4 semicomplete digraph the rooted solver agrees with the oracle"
        }
        "w-rooted" => "W has no pair out of c2 / into c1, yet an unrestricted pair exists",
        "h4" => "H4 (2-arc-strong, independence 4) has no good pair for any roots",
        "small-le5" => "every digraph with at most 5 vertices and min semidegree 2 has a good pair",
        "n6-lambda2" => "every 2-arc-strong digraph on 6 vertices has a good pair",
        "alpha2-random" => {
            "random independence-2, 2-arc-strong digraphs always get a validated constructive pair"
        }
        "cobipartite-random" => {
            "random 2-arc-strong co-bipartite digraphs always get a validated constructive pair"
        }
        "families" => "generated family parameters match their declared values",
        "wprime-boundary" => {
            "the 9-vertex augmented-W member is only 1-arc-strong; from 10 vertices the family is 2-arc-strong"
        }
        "badmulti" => "the doubled-arc multidigraph has no pair rooted at s on both sides",
        _ => return None,
    })
}

pub fn run_claim(id: &str, cfg: &ClaimConfig) -> Result<ClaimOutcome> {
    match id {
        "e4-f4" => claim_e4_f4(),
        "order4-rooted" => claim_order4_rooted(),
        "w-rooted" => claim_w_rooted(),
        "h4" => claim_h4(),
        "small-le5" => claim_small_le5(cfg),
        "n6-lambda2" => claim_n6_lambda2(cfg),
        "alpha2-random" => claim_alpha2_random(cfg),
        "cobipartite-random" => claim_cobipartite_random(cfg),
        "families" => claim_families(),
        "wprime-boundary" => claim_wprime_boundary(),
        "badmulti" => claim_badmulti(),
        other => Err(Error::UnknownClaim(other.to_string())),
    }
}

fn claim_e4_f4() -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("e4-f4");
    let budget = Budget::default();
    let e4 = families::generate(&Family::E4)?.digraph;
    match oracle::good_pair(&e4, None, None, &budget)? {
        Certificate::ExhaustedSearch { stats } => {
            out.stat(format!("e4 exhausted branchings={}", stats.branchings));
        }
        other => out.refute(format!("e4 unexpectedly produced {other}")),
    }
    let f4 = families::generate(&Family::F4)?.digraph;
    match oracle::good_pair(&f4, None, None, &budget)? {
        Certificate::PairFound { pair, .. } => {
            if let Err(e) = validate_good_pair(&f4, &pair) {
                out.refute(format!("f4 pair failed validation: {e}"));
            } else {
                out.stat(format!(
                    "f4 pair root-in={} root-out={}",
                    pair.in_root(),
                    pair.out_root()
                ));
            }
        }
        other => out.refute(format!("f4 has a pair but oracle said {other}")),
    }
    Ok(out)
}

fn claim_order4_rooted() -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("order4-rooted");
    let budget = Budget::default();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut swept = 0u64;
    let mut rooted = 0u64;
    let mut exceptions = 0u64;
    for code in 0..3u32.pow(6) {
        let mut arcs = Vec::new();
        let mut c = code;
        for &(u, v) in &pairs {
            match c % 3 {
                0 => arcs.push((u, v)),
                1 => arcs.push((v, u)),
                _ => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
            }
            c /= 3;
        }
        let d = DiGraph::build(4, &arcs)?;
        swept += 1;
        for r in analysis::in_generators(&d) {
            rooted += 1;
            let cert = solvers::semicomplete_good_r_pair(&d, r)?;
            let oracle_found = oracle::good_pair(&d, Some(r), None, &budget)?.found();
            match &cert {
                Certificate::PairFound { pair, .. } => {
                    if !oracle_found {
                        out.refute(format!("code {code} root {r}: solver pair, oracle refusal"));
                    }
                    if pair.in_root() != r {
                        out.refute(format!("code {code}: pair rooted at {}", pair.in_root()));
                    }
                    if let Err(e) = validate_good_pair(&d, pair) {
                        out.refute(format!("code {code} root {r}: {e}"));
                    }
                }
                Certificate::Exception { .. } => {
                    exceptions += 1;
                    if oracle_found {
                        out.refute(format!("code {code} root {r}: exception but oracle pair"));
                    }
                }
                other => out.refute(format!("code {code} root {r}: {other}")),
            }
        }
    }
    // The strong tournament: root a refuses, roots b, c, d succeed.
    let st4 = families::generate(&Family::St4)?.digraph;
    match solvers::semicomplete_good_r_pair(&st4, 0)? {
        Certificate::Exception { r, y, z } => {
            out.stat(format!("st4 root=a exception y={y} z={z} r={r}"));
        }
        other => out.refute(format!("st4 rooted a should be the exception, got {other}")),
    }
    for r in [1, 2, 3] {
        match solvers::semicomplete_good_r_pair(&st4, r)? {
            Certificate::PairFound { .. } => {}
            other => out.refute(format!("st4 rooted {r} should have a pair, got {other}")),
        }
    }
    out.stat(format!(
        "semicomplete-order4 digraphs={swept} rooted-instances={rooted} exceptions={exceptions}"
    ));
    Ok(out)
}

fn claim_w_rooted() -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("w-rooted");
    let w = families::generate(&Family::W)?;
    let c1 = w.vertex("c1").expect("W labels c1");
    let c2 = w.vertex("c2").expect("W labels c2");
    match oracle::good_pair(&w.digraph, Some(c1), Some(c2), &Budget::default())? {
        Certificate::ExhaustedSearch { stats } => {
            out.stat(format!(
                "w rooted out=c2 in=c1 exhausted branchings={} roots-tried={} side={}",
                stats.branchings, stats.roots_tried, stats.side
            ));
        }
        other => out.refute(format!("rooted query came back {other}")),
    }
    let report = solvers::alpha2_good_pair(&w.digraph)?;
    if let Err(e) = validate_good_pair(&w.digraph, &report.pair) {
        out.refute(format!("unrestricted pair invalid: {e}"));
    } else {
        out.stat(format!(
            "w unrestricted pair strategy={} root-in={} root-out={}",
            report.strategy,
            report.pair.in_root(),
            report.pair.out_root()
        ));
    }
    Ok(out)
}

fn claim_h4() -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("h4");
    let h4 = families::generate(&Family::H4)?.digraph;
    out.stat(format!(
        "h4 n={} arcs={}",
        h4.vertex_count(),
        h4.arc_count()
    ));
    let lambda = analysis::arc_connectivity(&h4)?;
    let (alpha, _) = analysis::independence_number(&h4)?;
    if (lambda, alpha) != (2, 4) {
        out.refute(format!("h4 parameters lambda={lambda} alpha={alpha}"));
    }
    match oracle::good_pair(&h4, None, None, &Budget::default())? {
        Certificate::ExhaustedSearch { stats } => {
            out.stat(format!(
                "h4 exhausted branchings={} roots-tried={} side={}",
                stats.branchings, stats.roots_tried, stats.side
            ));
        }
        other => out.refute(format!("h4 query came back {other}")),
    }
    Ok(out)
}

fn claim_small_le5(cfg: &ClaimConfig) -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("small-le5");
    for n in 3..=5 {
        let mut task = SweepTask::new(
            n,
            Filters {
                delta0_min: Some(2),
                ..Filters::default()
            },
            SweepMode::Exhaustive,
            PairPredicate::HasGoodPair,
        );
        task.deadline = cfg.deadline();
        let summary = sweep(&task)?;
        report_sweep(&mut out, &format!("n={n}"), &summary);
        if summary.budget_hit {
            out.status = Status::BudgetExceeded;
        }
    }
    Ok(out)
}

fn claim_n6_lambda2(cfg: &ClaimConfig) -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("n6-lambda2");
    let mode = if cfg.exhaustive {
        SweepMode::Canonical
    } else {
        SweepMode::Sampled {
            count: cfg.instances.unwrap_or(1_000_000),
            seed: cfg.seed,
        }
    };
    let mut task = SweepTask::new(
        6,
        Filters {
            lambda_min: Some(2),
            ..Filters::default()
        },
        mode,
        PairPredicate::HasGoodPair,
    );
    task.deadline = cfg.deadline();
    let summary = sweep(&task)?;
    let label = if cfg.exhaustive {
        "canonical"
    } else {
        "sampled"
    };
    report_sweep(&mut out, label, &summary);
    if summary.budget_hit && out.status == Status::Confirmed {
        out.status = Status::BudgetExceeded;
    }
    Ok(out)
}

fn report_sweep(out: &mut ClaimOutcome, label: &str, summary: &SweepSummary) {
    out.stat(format!(
        "{label} examined={} qualified={} satisfied={} failed={}",
        summary.examined,
        summary.qualified,
        summary.satisfied,
        summary.failed()
    ));
    for failure in &summary.failures {
        out.refute(failure.detail.clone());
        for line in io::emit_text(&failure.digraph).lines() {
            out.lines.push(format!("CERT input {line}"));
        }
    }
    if summary.failed() > 0 && summary.failures.is_empty() {
        out.refute(format!("{} unrecorded failures", summary.failed()));
    }
}

fn claim_alpha2_random(cfg: &ClaimConfig) -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("alpha2-random");
    let count = cfg.instances.unwrap_or(1000);
    let cv = cross_validate(ValidatedOp::Alpha2GoodPair, count, cfg.seed, (7, 12), 10)?;
    out.stat(format!(
        "instances={} produced={} skipped={} oracle-checked={}",
        cv.requested, cv.produced, cv.skipped, cv.oracle_checked
    ));
    for m in &cv.mismatches {
        out.refute(m.detail.clone());
        out.cert_block(&m.to_string());
    }
    if cv.skipped > 0 {
        out.stat(format!("sampler-starved={}", cv.skipped));
    }
    Ok(out)
}

fn claim_cobipartite_random(cfg: &ClaimConfig) -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("cobipartite-random");
    let count = cfg.instances.unwrap_or(500);
    let cv = cross_validate(
        ValidatedOp::CobipartiteGoodPair,
        count,
        cfg.seed,
        (6, 10),
        10,
    )?;
    out.stat(format!(
        "instances={} produced={} skipped={} oracle-checked={}",
        cv.requested, cv.produced, cv.skipped, cv.oracle_checked
    ));
    for m in &cv.mismatches {
        out.refute(m.detail.clone());
        out.cert_block(&m.to_string());
    }
    Ok(out)
}

/// Family parameter battery. The 9-vertex augmented-W boundary member is
/// covered by its own claim.
fn claim_families() -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("families");
    let specs = [
        Family::St4,
        Family::Tt4,
        Family::E4,
        Family::F4,
        Family::W,
        Family::H4,
        Family::WPrime { n: 10 },
        Family::TripleW { satellite: 2 },
        Family::HighSemidegree { k: 1 },
        Family::GluedTriple { r: 2 },
        Family::BadMulti,
        Family::ThreeTwoCycles { variant: 1 },
        Family::ThreeTwoCycles { variant: 2 },
        Family::CoBipSix { variant: 1 },
        Family::CoBipSix { variant: 2 },
        Family::CoBipSix { variant: 3 },
    ];
    for spec in specs {
        let report = families::sanity(&spec)?;
        let mut line = format!("family={}", report.family);
        for check in &report.checks {
            let rel = match check.relation {
                families::Relation::Eq => "=",
                families::Relation::Ge => ">=",
            };
            let _ = write!(
                line,
                " {}{}{}:{}",
                check.parameter,
                rel,
                check.expected,
                if check.ok() { "ok" } else { "MISMATCH" }
            );
            if !check.ok() {
                out.refute(format!(
                    "family {} {} expected {}{} computed {}",
                    report.family, check.parameter, rel, check.expected, check.actual
                ));
            }
        }
        out.stat(line);
    }
    Ok(out)
}

/// Documents the verified boundary defects of the declared 2-arc-strong
/// families: the smallest augmented-W member (9 vertices: one satellite
/// with a single arc out) and the triple-W with a single core vertex (each
/// W copy keeps one exit arc) both have arc-connectivity 1. One step up,
/// the declared parameters hold.
fn claim_wprime_boundary() -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("wprime-boundary");
    let nine = families::generate(&Family::WPrime { n: 9 })?.digraph;
    let lambda9 = analysis::arc_connectivity(&nine)?;
    let alpha9 = analysis::independence_number(&nine)?.0;
    out.stat(format!(
        "wprime(9) lambda={lambda9} alpha={alpha9} (declared lambda 2)"
    ));
    if lambda9 != 1 || alpha9 != 3 {
        out.refute(format!(
            "expected boundary values lambda=1 alpha=3, computed lambda={lambda9} alpha={alpha9}"
        ));
    }
    let ten = families::generate(&Family::WPrime { n: 10 })?.digraph;
    let lambda10 = analysis::arc_connectivity(&ten)?;
    out.stat(format!("wprime(10) lambda={lambda10}"));
    if lambda10 != 2 {
        out.refute(format!(
            "wprime(10) should be 2-arc-strong, computed {lambda10}"
        ));
    }
    let tw1 = families::generate(&Family::TripleW { satellite: 1 })?.digraph;
    let tw1_lambda = analysis::arc_connectivity(&tw1)?;
    let tw1_alpha = analysis::independence_number(&tw1)?.0;
    out.stat(format!(
        "triple-w(1) lambda={tw1_lambda} alpha={tw1_alpha} (declared lambda 2)"
    ));
    if tw1_lambda != 1 || tw1_alpha != 7 {
        out.refute(format!(
            "expected boundary values lambda=1 alpha=7, computed lambda={tw1_lambda} alpha={tw1_alpha}"
        ));
    }
    Ok(out)
}

fn claim_badmulti() -> Result<ClaimOutcome> {
    let mut out = ClaimOutcome::new("badmulti");
    let bad = families::generate(&Family::BadMulti)?;
    let s = bad.vertex("s").expect("badmulti labels s");
    match oracle::good_pair(&bad.digraph, Some(s), Some(s), &Budget::default())? {
        Certificate::ExhaustedSearch { stats } => {
            out.stat(format!(
                "badmulti rooted s exhausted branchings={}",
                stats.branchings
            ));
        }
        other => out.refute(format!("rooted multidigraph query came back {other}")),
    }
    Ok(out)
}

/// Resolves a root given as a label (when the input carried labels) or as
/// a numeric index.
pub fn resolve_root(
    spec: &str,
    labels: Option<&[String]>,
    n: usize,
) -> std::result::Result<usize, String> {
    if let Some(labels) = labels {
        if let Some(i) = labels.iter().position(|l| l == spec) {
            return Ok(i);
        }
    }
    match spec.parse::<usize>() {
        Ok(i) if i < n => Ok(i),
        Ok(i) => Err(format!("vertex {i} out of range (n = {n})")),
        Err(_) => Err(format!("unknown vertex `{spec}`")),
    }
}

/// Parses a family name with its parameters as used by the `family`
/// subcommand.
#[allow(clippy::too_many_arguments)]
pub fn parse_family(
    name: &str,
    n: Option<usize>,
    k: Option<u32>,
    r: Option<usize>,
    satellite: Option<usize>,
    variant: Option<u8>,
    dc: bool,
    cb: bool,
) -> std::result::Result<Family, String> {
    Ok(match name {
        "st4" => Family::St4,
        "four-exception" => Family::FourException { dc, cb },
        "tt4" => Family::Tt4,
        "3cycle-source" => Family::ThreeCyclePlusSource,
        "3cycle-sink" => Family::ThreeCyclePlusSink,
        "e4" => Family::E4,
        "f4" => Family::F4,
        "w" => Family::W,
        "h4" => Family::H4,
        "wprime" => Family::WPrime {
            n: n.ok_or("wprime needs --n")?,
        },
        "triple-w" => Family::TripleW {
            satellite: satellite.unwrap_or(2),
        },
        "high-semidegree" => Family::HighSemidegree { k: k.unwrap_or(1) },
        "glued-triple" => Family::GluedTriple { r: r.unwrap_or(2) },
        "badmulti" => Family::BadMulti,
        "three-2cycles" => Family::ThreeTwoCycles {
            variant: variant.unwrap_or(1),
        },
        "cobip6" => Family::CoBipSix {
            variant: variant.unwrap_or(1),
        },
        other => return Err(format!("unknown family `{other}`")),
    })
}

pub const FAMILY_NAMES: &[&str] = &[
    "st4",
    "four-exception",
    "tt4",
    "3cycle-source",
    "3cycle-sink",
    "e4",
    "f4",
    "w",
    "h4",
    "wprime",
    "triple-w",
    "high-semidegree",
    "glued-triple",
    "badmulti",
    "three-2cycles",
    "cobip6",
];
