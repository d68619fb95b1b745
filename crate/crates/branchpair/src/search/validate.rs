//! Randomized cross-validation of the constructive solvers against the
//! oracle, and evidence gathering for the open same-root / prescribed-root
//! conjectures.

use std::fmt;
use std::time::Instant;

use crate::analysis::{arc_connectivity, in_generators, independence_number};
use crate::branching::validate_good_pair;
use crate::digraph::{DiGraph, Vertex};
use crate::error::{Error, Result};
use crate::io::emit_text;
use crate::oracle::{self, Budget};
use crate::search::random::{
    random_alpha2_lambda2, random_alpha2_lambda3, random_cobipartite_lambda2, random_digraph,
    random_semicomplete, Rng,
};
use crate::solvers;

/// Constructive operations with oracle cross-checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidatedOp {
    Alpha2GoodPair,
    SemicompleteGoodRPair,
    SemicompleteGoodPair,
    CobipartiteGoodPair,
    SmallGoodPair,
}

impl ValidatedOp {
    pub fn parse(name: &str) -> Option<ValidatedOp> {
        Some(match name {
            "alpha2_good_pair" | "alpha2" => ValidatedOp::Alpha2GoodPair,
            "semicomplete_good_r_pair" | "semicomplete-rooted" => {
                ValidatedOp::SemicompleteGoodRPair
            }
            "semicomplete_good_pair" | "semicomplete" => ValidatedOp::SemicompleteGoodPair,
            "cobipartite_good_pair" | "cobipartite" => ValidatedOp::CobipartiteGoodPair,
            "small_good_pair" | "small" => ValidatedOp::SmallGoodPair,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ValidatedOp::Alpha2GoodPair => "alpha2_good_pair",
            ValidatedOp::SemicompleteGoodRPair => "semicomplete_good_r_pair",
            ValidatedOp::SemicompleteGoodPair => "semicomplete_good_pair",
            ValidatedOp::CobipartiteGoodPair => "cobipartite_good_pair",
            ValidatedOp::SmallGoodPair => "small_good_pair",
        }
    }

    /// Smallest instance order the op accepts.
    fn min_n(&self) -> usize {
        match self {
            ValidatedOp::Alpha2GoodPair => 2,
            ValidatedOp::SemicompleteGoodRPair | ValidatedOp::SemicompleteGoodPair => 4,
            ValidatedOp::CobipartiteGoodPair => 2,
            ValidatedOp::SmallGoodPair => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub instance: u64,
    pub detail: String,
    pub digraph_text: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "CERT mismatch instance={} {}",
            self.instance, self.detail
        )?;
        for line in self.digraph_text.lines() {
            writeln!(f, "CERT input {line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub op: ValidatedOp,
    pub requested: u64,
    pub produced: u64,
    pub skipped: u64,
    pub oracle_checked: u64,
    pub exceptions: u64,
    pub mismatches: Vec<Mismatch>,
}

impl CrossValidation {
    pub fn clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Runs `count` random instances of the op's precondition class, compares
/// constructive existence with the oracle up to `oracle_max_n`, and
/// validates every produced pair. Instance `i` is generated from
/// `splitmix(seed, i)` alone, so results are independent of scheduling.
pub fn cross_validate(
    op: ValidatedOp,
    count: u64,
    seed: u64,
    n_range: (usize, usize),
    oracle_max_n: usize,
) -> Result<CrossValidation> {
    let (lo, hi) = normalize_range(op, n_range)?;
    let shards = 64u64.min(count.max(1));
    let outcomes: Vec<Result<CrossValidation>> = map_shards(shards, |shard| {
        let mut local = CrossValidation {
            op,
            requested: 0,
            produced: 0,
            skipped: 0,
            oracle_checked: 0,
            exceptions: 0,
            mismatches: Vec::new(),
        };
        let mut i = shard;
        while i < count {
            local.requested += 1;
            let mut rng = Rng::new(seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
            let n = lo + rng.below((hi - lo + 1) as u64) as usize;
            run_instance(op, i, n, &mut rng, oracle_max_n, &mut local)?;
            i += shards;
        }
        Ok(local)
    });
    let mut total = CrossValidation {
        op,
        requested: 0,
        produced: 0,
        skipped: 0,
        oracle_checked: 0,
        exceptions: 0,
        mismatches: Vec::new(),
    };
    for outcome in outcomes {
        let o = outcome?;
        total.requested += o.requested;
        total.produced += o.produced;
        total.skipped += o.skipped;
        total.oracle_checked += o.oracle_checked;
        total.exceptions += o.exceptions;
        for m in o.mismatches {
            if total.mismatches.len() < 32 {
                total.mismatches.push(m);
            }
        }
    }
    total.mismatches.sort_by_key(|m| m.instance);
    Ok(total)
}

fn normalize_range(op: ValidatedOp, (lo, hi): (usize, usize)) -> Result<(usize, usize)> {
    let lo = lo.max(op.min_n());
    if hi < lo || hi > crate::digraph::MAX_VERTICES {
        return Err(Error::PreconditionViolated(format!(
            "bad order range [{lo}, {hi}] for {}",
            op.name()
        )));
    }
    Ok((lo, hi))
}

#[cfg(feature = "parallel")]
fn map_shards<T: Send>(shards: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..shards).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_shards<T>(shards: u64, f: impl Fn(u64) -> T) -> Vec<T> {
    (0..shards).map(f).collect()
}

fn run_instance(
    op: ValidatedOp,
    index: u64,
    n: usize,
    rng: &mut Rng,
    oracle_max_n: usize,
    acc: &mut CrossValidation,
) -> Result<()> {
    let budget = Budget::default();
    let mismatch = |detail: String, d: &DiGraph| Mismatch {
        instance: index,
        detail,
        digraph_text: emit_text(d),
    };
    match op {
        ValidatedOp::Alpha2GoodPair => {
            let Some(d) = random_alpha2_lambda2(rng, n, 300)? else {
                acc.skipped += 1;
                return Ok(());
            };
            acc.produced += 1;
            let report = solvers::alpha2_good_pair(&d);
            let constructed = match &report {
                Ok(r) => {
                    if let Err(e) = validate_good_pair(&d, &r.pair) {
                        acc.mismatches
                            .push(mismatch(format!("invalid pair: {e}"), &d));
                    }
                    true
                }
                Err(e) => {
                    acc.mismatches
                        .push(mismatch(format!("solver refused: {e}"), &d));
                    false
                }
            };
            if n <= oracle_max_n {
                acc.oracle_checked += 1;
                let oracle_found = oracle::good_pair(&d, None, None, &budget)?.found();
                if oracle_found != constructed {
                    acc.mismatches.push(mismatch(
                        format!("oracle={oracle_found} constructive={constructed}"),
                        &d,
                    ));
                }
            }
        }
        ValidatedOp::SemicompleteGoodRPair => {
            let d = random_semicomplete(rng, n);
            let ins = in_generators(&d);
            let r = ins[rng.below(ins.len() as u64) as usize];
            acc.produced += 1;
            let cert = solvers::semicomplete_good_r_pair(&d, r)?;
            let constructed = match &cert {
                oracle::Certificate::PairFound { pair, .. } => {
                    if pair.in_root() != r {
                        acc.mismatches
                            .push(mismatch(format!("in-root {} != {r}", pair.in_root()), &d));
                    }
                    if let Err(e) = validate_good_pair(&d, pair) {
                        acc.mismatches
                            .push(mismatch(format!("invalid pair: {e}"), &d));
                    }
                    true
                }
                oracle::Certificate::Exception { .. } => {
                    acc.exceptions += 1;
                    false
                }
                other => {
                    acc.mismatches
                        .push(mismatch(format!("unexpected certificate {other}"), &d));
                    false
                }
            };
            if n <= oracle_max_n {
                acc.oracle_checked += 1;
                let oracle_found = oracle::good_pair(&d, Some(r), None, &budget)?.found();
                if oracle_found != constructed {
                    acc.mismatches.push(mismatch(
                        format!("root {r}: oracle={oracle_found} constructive={constructed}"),
                        &d,
                    ));
                }
            }
        }
        ValidatedOp::SemicompleteGoodPair => {
            let d = random_semicomplete(rng, n);
            acc.produced += 1;
            match solvers::semicomplete_good_pair(&d) {
                Ok(pair) => {
                    if let Err(e) = validate_good_pair(&d, &pair) {
                        acc.mismatches
                            .push(mismatch(format!("invalid pair: {e}"), &d));
                    }
                }
                Err(e) => {
                    acc.mismatches
                        .push(mismatch(format!("solver refused: {e}"), &d));
                }
            }
            if n <= oracle_max_n {
                acc.oracle_checked += 1;
                if !oracle::good_pair(&d, None, None, &budget)?.found() {
                    acc.mismatches
                        .push(mismatch("oracle found no pair on order >= 4".into(), &d));
                }
            }
        }
        ValidatedOp::CobipartiteGoodPair => {
            let Some(d) = random_cobipartite_lambda2(rng, n, 300)? else {
                acc.skipped += 1;
                return Ok(());
            };
            acc.produced += 1;
            let constructed = match solvers::cobipartite_good_pair(&d) {
                Ok(pair) => {
                    if let Err(e) = validate_good_pair(&d, &pair) {
                        acc.mismatches
                            .push(mismatch(format!("invalid pair: {e}"), &d));
                    }
                    true
                }
                Err(e) => {
                    acc.mismatches
                        .push(mismatch(format!("solver refused: {e}"), &d));
                    false
                }
            };
            if n <= oracle_max_n {
                acc.oracle_checked += 1;
                let oracle_found = oracle::good_pair(&d, None, None, &budget)?.found();
                if oracle_found != constructed {
                    acc.mismatches.push(mismatch(
                        format!("oracle={oracle_found} constructive={constructed}"),
                        &d,
                    ));
                }
            }
        }
        ValidatedOp::SmallGoodPair => {
            let d = random_digraph(rng, n.min(6), 50);
            acc.produced += 1;
            let cert = solvers::small_good_pair(&d)?;
            if let Some(pair) = cert.pair() {
                if let Err(e) = validate_good_pair(&d, pair) {
                    acc.mismatches
                        .push(mismatch(format!("invalid pair: {e}"), &d));
                }
            }
            acc.oracle_checked += 1;
            let oracle_found = oracle::good_pair(&d, None, None, &budget)?.found();
            if oracle_found != cert.found() {
                acc.mismatches.push(mismatch(
                    format!("oracle={} constructive={}", oracle_found, cert.found()),
                    &d,
                ));
            }
        }
    }
    Ok(())
}

/// The two open questions the harness gathers evidence for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjecture {
    /// Every 2-arc-strong digraph with independence number at most 2 has
    /// arc-disjoint branchings out of s and into s for every vertex s.
    SameRootAlpha2,
    /// Every 3-arc-strong digraph with independence number at most 2 has
    /// arc-disjoint branchings out of s and into t for every choice (s, t).
    PrescribedRoots3Arc,
}

impl Conjecture {
    pub fn parse(name: &str) -> Option<Conjecture> {
        Some(match name {
            "same-root-alpha2" => Conjecture::SameRootAlpha2,
            "prescribed-roots-3arc" => Conjecture::PrescribedRoots3Arc,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Conjecture::SameRootAlpha2 => "same-root-alpha2",
            Conjecture::PrescribedRoots3Arc => "prescribed-roots-3arc",
        }
    }

    fn lambda_required(&self) -> u32 {
        match self {
            Conjecture::SameRootAlpha2 => 2,
            Conjecture::PrescribedRoots3Arc => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConjectureSummary {
    pub conjecture: Conjecture,
    pub requested: u64,
    pub produced: u64,
    pub skipped: u64,
    pub root_pairs_checked: u64,
    /// Genuine counterexamples: hypotheses verified, conclusion failed.
    pub counterexamples: Vec<Mismatch>,
    pub budget_hit: bool,
}

/// Samples digraphs meeting the conjecture's hypotheses and tests every
/// required rooted pair through the oracle.
pub fn conjecture_search(
    conjecture: Conjecture,
    count: u64,
    seed: u64,
    n_range: (usize, usize),
    deadline: Option<Instant>,
) -> Result<ConjectureSummary> {
    let (lo, hi) = n_range;
    if lo < 2 || hi < lo || hi > oracle::ENUMERATION_LIMIT {
        return Err(Error::PreconditionViolated(format!(
            "bad order range [{lo}, {hi}]"
        )));
    }
    let shards = 64u64.min(count.max(1));
    let outcomes: Vec<Result<ConjectureSummary>> = map_shards(shards, |shard| {
        let mut local = ConjectureSummary {
            conjecture,
            requested: 0,
            produced: 0,
            skipped: 0,
            root_pairs_checked: 0,
            counterexamples: Vec::new(),
            budget_hit: false,
        };
        let mut i = shard;
        while i < count {
            if let Some(deadline) = deadline {
                if Instant::now() > deadline {
                    local.budget_hit = true;
                    break;
                }
            }
            local.requested += 1;
            let mut rng = Rng::new(seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
            let n = lo + rng.below((hi - lo + 1) as u64) as usize;
            let sample = match conjecture {
                Conjecture::SameRootAlpha2 => random_alpha2_lambda2(&mut rng, n, 300)?,
                Conjecture::PrescribedRoots3Arc => random_alpha2_lambda3(&mut rng, n, 300)?,
            };
            let Some(d) = sample else {
                local.skipped += 1;
                i += shards;
                continue;
            };
            local.produced += 1;
            let probe = probe_conjecture(conjecture, &d)?;
            local.root_pairs_checked += probe.root_pairs_checked;
            if !probe.failing.is_empty() {
                debug_assert!(probe.hypotheses_met);
                let failing = probe
                    .failing
                    .iter()
                    .map(|(s, t)| format!("(s={s},t={t})"))
                    .collect::<Vec<_>>()
                    .join(" ");
                if local.counterexamples.len() < 8 {
                    local.counterexamples.push(Mismatch {
                        instance: i,
                        detail: format!("refuted at roots {failing}"),
                        digraph_text: emit_text(&d),
                    });
                }
            }
            i += shards;
        }
        Ok(local)
    });
    let mut total = ConjectureSummary {
        conjecture,
        requested: 0,
        produced: 0,
        skipped: 0,
        root_pairs_checked: 0,
        counterexamples: Vec::new(),
        budget_hit: false,
    };
    for outcome in outcomes {
        let o = outcome?;
        total.requested += o.requested;
        total.produced += o.produced;
        total.skipped += o.skipped;
        total.root_pairs_checked += o.root_pairs_checked;
        total.budget_hit |= o.budget_hit;
        for c in o.counterexamples {
            if total.counterexamples.len() < 8 {
                total.counterexamples.push(c);
            }
        }
    }
    total.counterexamples.sort_by_key(|m| m.instance);
    Ok(total)
}

#[derive(Debug, Clone)]
pub struct ConjectureProbe {
    pub hypotheses_met: bool,
    pub is_multi: bool,
    pub lambda: u32,
    pub alpha: u32,
    pub root_pairs_checked: u64,
    /// Root choices (s, t) with no arc-disjoint pair out of s and into t.
    pub failing: Vec<(Vertex, Vertex)>,
}

/// Tests a single digraph against the conjecture's conclusion. The
/// conjectures are stated for simple digraphs; the multidigraph flag and
/// hypothesis parameters are reported so a failure outside the hypotheses
/// can be told apart from a refutation.
pub fn probe_conjecture(conjecture: Conjecture, d: &DiGraph) -> Result<ConjectureProbe> {
    let lambda = arc_connectivity(d)?;
    let alpha = independence_number(d)?.0;
    let hypotheses_met = !d.is_multi() && alpha <= 2 && lambda >= conjecture.lambda_required();
    let budget = Budget::default();
    let mut failing = Vec::new();
    let mut checked = 0u64;
    match conjecture {
        Conjecture::SameRootAlpha2 => {
            for s in d.vertices() {
                checked += 1;
                if !oracle::good_pair(d, Some(s), Some(s), &budget)?.found() {
                    failing.push((s, s));
                }
            }
        }
        Conjecture::PrescribedRoots3Arc => {
            for s in d.vertices() {
                for t in d.vertices() {
                    checked += 1;
                    if !oracle::good_pair(d, Some(t), Some(s), &budget)?.found() {
                        failing.push((s, t));
                    }
                }
            }
        }
    }
    Ok(ConjectureProbe {
        hypotheses_met,
        is_multi: d.is_multi(),
        lambda,
        alpha,
        root_pairs_checked: checked,
        failing,
    })
}
