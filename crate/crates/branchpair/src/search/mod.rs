//! Sweep engine over digraph spaces: exhaustive row-by-row generation with
//! degree pruning, isomorph-reduced canonical mode, and seeded sampling.
//! Work is sharded by adjacency-row prefix and merged in shard order, so
//! completed sweeps report identically with and without parallelism.

mod random;
mod validate;

pub use random::{
    random_alpha2_lambda2, random_alpha2_lambda3, random_cobipartite_lambda2, random_digraph,
    random_semicomplete, random_tournament, Rng,
};
pub use validate::{
    conjecture_search, cross_validate, probe_conjecture, Conjecture, ConjectureProbe,
    ConjectureSummary, CrossValidation, Mismatch, ValidatedOp,
};

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use crate::analysis;
use crate::digraph::DiGraph;
use crate::error::{Error, Result};
use crate::oracle::{self, Budget};

/// Structural filters applied before the predicate.
#[derive(Debug, Clone, Default)]
pub struct Filters {
    pub lambda_min: Option<u32>,
    pub delta0_min: Option<u32>,
    pub alpha_max: Option<u32>,
    pub alpha_eq: Option<u32>,
}

impl Filters {
    pub fn accepts(&self, d: &DiGraph) -> Result<bool> {
        if let Some(min) = self.delta0_min {
            if analysis::min_semidegree(d) < min {
                return Ok(false);
            }
        }
        if let Some(min) = self.lambda_min {
            if d.vertex_count() < 2 || analysis::arc_connectivity(d)? < min {
                return Ok(false);
            }
        }
        if self.alpha_max.is_some() || self.alpha_eq.is_some() {
            let (alpha, _) = analysis::independence_number(d)?;
            if self.alpha_max.is_some_and(|max| alpha > max) {
                return Ok(false);
            }
            if self.alpha_eq.is_some_and(|eq| alpha != eq) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Every labeled digraph. Allowed for n <= 5.
    Exhaustive,
    /// One representative per isomorphism class (lexicographically minimal
    /// adjacency matrix). Allowed for n <= 6.
    Canonical,
    /// Seeded random digraphs, each arc present with probability one half,
    /// counted after the filters accept them.
    Sampled { count: u64, seed: u64 },
}

/// What the sweep checks on each qualifying digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPredicate {
    /// Some good pair exists.
    HasGoodPair,
    /// For every vertex s there are arc-disjoint branchings out of s and
    /// into s.
    AllSameRootPairs,
}

impl PairPredicate {
    pub fn test(&self, d: &DiGraph, budget: &Budget) -> Result<bool> {
        match self {
            PairPredicate::HasGoodPair => Ok(oracle::good_pair(d, None, None, budget)?.found()),
            PairPredicate::AllSameRootPairs => {
                for s in d.vertices() {
                    if !oracle::good_pair(d, Some(s), Some(s), budget)?.found() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepTask {
    pub n: usize,
    pub filters: Filters,
    pub mode: SweepMode,
    pub predicate: PairPredicate,
    /// Counterexamples kept in the summary.
    pub max_failures: usize,
    pub deadline: Option<Instant>,
    /// Stop scanning as soon as one counterexample is recorded.
    pub halt_on_failure: bool,
}

impl SweepTask {
    pub fn new(n: usize, filters: Filters, mode: SweepMode, predicate: PairPredicate) -> Self {
        SweepTask {
            n,
            filters,
            mode,
            predicate,
            max_failures: 16,
            deadline: None,
            halt_on_failure: false,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepSummary {
    /// Raw candidates decoded (labeled digraphs or samples drawn).
    pub examined: u64,
    /// Survivors of the structural filters that were handed to the
    /// predicate.
    pub qualified: u64,
    /// Qualifying digraphs satisfying the predicate.
    pub satisfied: u64,
    /// Counterexamples, capped at the task's limit.
    pub failures: Vec<FailureRecord>,
    pub budget_hit: bool,
}

impl SweepSummary {
    pub fn failed(&self) -> u64 {
        self.qualified - self.satisfied
    }

    fn merge(mut self, other: SweepSummary, cap: usize) -> SweepSummary {
        self.examined += other.examined;
        self.qualified += other.qualified;
        self.satisfied += other.satisfied;
        self.budget_hit |= other.budget_hit;
        for f in other.failures {
            if self.failures.len() < cap {
                self.failures.push(f);
            }
        }
        self
    }
}

#[derive(Debug, Clone)]
pub struct FailureRecord {
    pub digraph: DiGraph,
    pub detail: String,
}

/// Runs the sweep, in parallel when the `parallel` feature is enabled.
pub fn sweep(task: &SweepTask) -> Result<SweepSummary> {
    run_sweep(task, true)
}

/// Sequential fallback: identical semantics on one thread, always
/// available. The criterion benches compare the two directly.
pub fn sweep_seq(task: &SweepTask) -> Result<SweepSummary> {
    run_sweep(task, false)
}

fn run_sweep(task: &SweepTask, parallel: bool) -> Result<SweepSummary> {
    let n = task.n;
    match task.mode {
        SweepMode::Exhaustive => {
            if !(2..=5).contains(&n) {
                return Err(Error::PreconditionViolated(format!(
                    "exhaustive mode covers 2..=5 vertices, got {n}"
                )));
            }
        }
        SweepMode::Canonical => {
            if !(2..=6).contains(&n) {
                return Err(Error::PreconditionViolated(format!(
                    "canonical mode covers 2..=6 vertices, got {n}"
                )));
            }
        }
        SweepMode::Sampled { .. } => {
            if !(2..=oracle::ENUMERATION_LIMIT).contains(&n) {
                return Err(Error::PreconditionViolated(format!(
                    "sampled mode covers 2..={} vertices, got {n}",
                    oracle::ENUMERATION_LIMIT
                )));
            }
        }
    }
    let stop = AtomicBool::new(false);
    let summaries: Vec<Result<SweepSummary>> = match task.mode {
        SweepMode::Exhaustive | SweepMode::Canonical => {
            let canonical = task.mode == SweepMode::Canonical;
            let prefix_rows = 2.min(n - 1);
            let chunks = 1u64 << (prefix_rows * (n - 1));
            map_chunks(parallel, chunks, |chunk| {
                scan_rows_chunk(task, chunk, prefix_rows, canonical, &stop)
            })
        }
        SweepMode::Sampled { count, seed } => {
            let shards = 64u64.min(count.max(1));
            map_chunks(parallel, shards, |shard| {
                let quota = count / shards + u64::from(shard < count % shards);
                scan_sampled_shard(task, seed, shard, quota, &stop)
            })
        }
    };
    let mut total = SweepSummary::default();
    for s in summaries {
        total = total.merge(s?, task.max_failures);
    }
    Ok(total)
}

#[cfg(feature = "parallel")]
fn map_chunks<T: Send>(parallel: bool, chunks: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    if parallel {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(f).collect()
    } else {
        (0..chunks).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn map_chunks<T>(_parallel: bool, chunks: u64, f: impl Fn(u64) -> T) -> Vec<T> {
    (0..chunks).map(f).collect()
}

fn scan_rows_chunk(
    task: &SweepTask,
    chunk: u64,
    prefix_rows: usize,
    canonical: bool,
    stop: &AtomicBool,
) -> Result<SweepSummary> {
    let mut summary = SweepSummary::default();
    if stop.load(Ordering::Relaxed) {
        summary.budget_hit = true;
        return Ok(summary);
    }
    let n = task.n;
    let row_bits = n - 1;
    let row_mask = (1u64 << row_bits) - 1;
    let mut rows = vec![0u64; n];
    for (r, row) in rows.iter_mut().enumerate().take(prefix_rows) {
        let packed = chunk >> (r * row_bits) & row_mask;
        *row = unpack_row(packed, r);
    }
    // Degree lower bound for early pruning; arc-connectivity k forces
    // minimum semidegree k, so a lambda filter prunes rows too.
    let need = task
        .filters
        .delta0_min
        .unwrap_or(0)
        .max(task.filters.lambda_min.unwrap_or(0));
    if rows[..prefix_rows]
        .iter()
        .any(|row| row.count_ones() < need)
    {
        return Ok(summary);
    }
    let perms = canonical.then(|| permutations(n));
    scan_rows_rec(
        task,
        &mut rows,
        prefix_rows,
        need,
        perms.as_deref(),
        stop,
        &mut summary,
    )?;
    Ok(summary)
}

fn unpack_row(packed: u64, row: usize) -> u64 {
    // Row bits skip the diagonal: bit j covers column j for j < row and
    // column j+1 for j >= row.
    let mut out = 0u64;
    for j in 0..63 {
        if packed >> j & 1 == 1 {
            let col = if j < row { j } else { j + 1 };
            out |= 1 << col;
        }
    }
    out
}

fn scan_rows_rec(
    task: &SweepTask,
    rows: &mut Vec<u64>,
    depth: usize,
    need: u32,
    perms: Option<&[Vec<usize>]>,
    stop: &AtomicBool,
    summary: &mut SweepSummary,
) -> Result<()> {
    let n = task.n;
    if depth == n {
        if stop.load(Ordering::Relaxed) {
            summary.budget_hit = true;
            return Ok(());
        }
        summary.examined += 1;
        if task.deadline.is_some()
            && summary.examined.is_multiple_of(4096)
            && Instant::now() > task.deadline.unwrap()
        {
            stop.store(true, Ordering::Relaxed);
            summary.budget_hit = true;
            return Ok(());
        }
        // In-degree bound before building anything.
        if need > 0 {
            for col in 0..n {
                let indeg: u32 = (0..n).map(|r| (rows[r] >> col & 1) as u32).sum();
                if indeg < need {
                    return Ok(());
                }
            }
        }
        let d = DiGraph::from_out_rows(n, rows);
        if !task.filters.accepts(&d)? {
            return Ok(());
        }
        if let Some(perms) = perms {
            if !is_canonical(&d, perms) {
                return Ok(());
            }
        }
        summary.qualified += 1;
        let budget = Budget {
            max_branchings: u64::MAX,
            deadline: task.deadline,
        };
        match task.predicate.test(&d, &budget) {
            Ok(true) => summary.satisfied += 1,
            Ok(false) => {
                if summary.failures.len() < task.max_failures {
                    summary.failures.push(FailureRecord {
                        digraph: d,
                        detail: "predicate failed".into(),
                    });
                }
                if task.halt_on_failure {
                    stop.store(true, Ordering::Relaxed);
                }
            }
            Err(Error::BudgetExceeded(_)) => summary.budget_hit = true,
            Err(e) => return Err(e),
        }
        return Ok(());
    }
    let row_bits = n - 1;
    for packed in 0..1u64 << row_bits {
        if stop.load(Ordering::Relaxed) {
            break;
        }
        let row = unpack_row(packed, depth);
        if row.count_ones() < need {
            continue;
        }
        // Columns must still be fillable to the degree bound by the
        // remaining rows.
        if need > 0 {
            let remaining = (n - depth - 1) as u32;
            let feasible = (0..n).all(|col| {
                let have: u32 = (0..=depth)
                    .map(|r| {
                        let bits = if r == depth { row } else { rows[r] };
                        (bits >> col & 1) as u32
                    })
                    .sum();
                have + remaining >= need
            });
            if !feasible {
                continue;
            }
        }
        rows[depth] = row;
        scan_rows_rec(task, rows, depth + 1, need, perms, stop, summary)?;
    }
    rows[depth] = 0;
    Ok(())
}

fn scan_sampled_shard(
    task: &SweepTask,
    seed: u64,
    shard: u64,
    quota: u64,
    stop: &AtomicBool,
) -> Result<SweepSummary> {
    let mut summary = SweepSummary::default();
    let mut rng = Rng::new(seed ^ shard.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let budget = Budget {
        max_branchings: u64::MAX,
        deadline: task.deadline,
    };
    while summary.qualified < quota {
        if stop.load(Ordering::Relaxed) {
            summary.budget_hit = true;
            return Ok(summary);
        }
        if let Some(deadline) = task.deadline {
            if Instant::now() > deadline {
                stop.store(true, Ordering::Relaxed);
                summary.budget_hit = true;
                return Ok(summary);
            }
        }
        summary.examined += 1;
        let d = random_digraph(&mut rng, task.n, 50);
        if !task.filters.accepts(&d)? {
            continue;
        }
        summary.qualified += 1;
        match task.predicate.test(&d, &budget) {
            Ok(true) => summary.satisfied += 1,
            Ok(false) => {
                if summary.failures.len() < task.max_failures {
                    summary.failures.push(FailureRecord {
                        digraph: d,
                        detail: "predicate failed".into(),
                    });
                }
                if task.halt_on_failure {
                    stop.store(true, Ordering::Relaxed);
                }
            }
            Err(Error::BudgetExceeded(_)) => summary.budget_hit = true,
            Err(e) => return Err(e),
        }
    }
    Ok(summary)
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_lex(&mut out, &mut current, 0);
    out.sort();
    out
}

fn heap_lex(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, k: usize) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        heap_lex(out, current, k + 1);
        current.swap(k, i);
    }
}

/// Compares the digraph's adjacency matrix against each relabeling; true
/// when none is lexicographically smaller.
pub fn is_canonical(d: &DiGraph, perms: &[Vec<usize>]) -> bool {
    let n = d.vertex_count();
    for perm in perms {
        let mut smaller = false;
        'cmp: for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let orig = d.has_arc(i, j);
                let permuted = d.has_arc(perm[i], perm[j]);
                if permuted != orig {
                    smaller = !permuted & orig;
                    break 'cmp;
                }
            }
        }
        if smaller {
            return false;
        }
    }
    true
}

/// The lexicographically minimal adjacency matrix over all relabelings,
/// packed as a mask. Equal exactly for isomorphic digraphs.
pub fn canonical_key(d: &DiGraph, perms: &[Vec<usize>]) -> u64 {
    let n = d.vertex_count();
    let mut best = u64::MAX;
    for perm in perms {
        let mut mask = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if d.has_arc(perm[i], perm[j]) {
                    // First matrix entry in the highest bit, so integer
                    // order is lexicographic order.
                    mask |= 1 << (n * (n - 1) - 1 - bit);
                }
                bit += 1;
            }
        }
        best = best.min(mask);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_counts_all_digraphs_on_three() {
        let task = SweepTask::new(
            3,
            Filters::default(),
            SweepMode::Exhaustive,
            PairPredicate::HasGoodPair,
        );
        let summary = sweep(&task).unwrap();
        assert_eq!(summary.examined, 64);
        assert_eq!(summary.qualified, 64);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let task = SweepTask::new(
            4,
            Filters {
                delta0_min: Some(1),
                ..Filters::default()
            },
            SweepMode::Exhaustive,
            PairPredicate::HasGoodPair,
        );
        let a = sweep(&task).unwrap();
        let b = sweep_seq(&task).unwrap();
        assert_eq!(a.examined, b.examined);
        assert_eq!(a.qualified, b.qualified);
        assert_eq!(a.satisfied, b.satisfied);
    }

    #[test]
    fn delta0_pruning_matches_post_filtering() {
        // Count 4-vertex digraphs with minimum semidegree >= 2 two ways.
        let pruned = sweep(&SweepTask::new(
            4,
            Filters {
                delta0_min: Some(2),
                ..Filters::default()
            },
            SweepMode::Exhaustive,
            PairPredicate::HasGoodPair,
        ))
        .unwrap();
        let mut direct = 0u64;
        for mask in 0..1u64 << 12 {
            let d = DiGraph::from_arc_mask(4, mask);
            if analysis::min_semidegree(&d) >= 2 {
                direct += 1;
            }
        }
        assert_eq!(pruned.qualified, direct);
    }

    #[test]
    fn canonical_mode_visits_every_class_on_four() {
        let perms = permutations(4);
        let task = SweepTask::new(
            4,
            Filters::default(),
            SweepMode::Canonical,
            PairPredicate::HasGoodPair,
        );
        let reps = sweep(&task).unwrap();
        // Every labeled digraph's canonical key must appear among the
        // representatives' keys.
        let mut rep_keys = std::collections::HashSet::new();
        for mask in 0..1u64 << 12 {
            let d = DiGraph::from_arc_mask(4, mask);
            if is_canonical(&d, &perms) {
                rep_keys.insert(canonical_key(&d, &perms));
            }
        }
        assert_eq!(rep_keys.len() as u64, reps.qualified);
        for mask in 0..1u64 << 12 {
            let d = DiGraph::from_arc_mask(4, mask);
            assert!(rep_keys.contains(&canonical_key(&d, &perms)), "mask {mask}");
        }
    }

    #[test]
    fn sampled_mode_is_reproducible() {
        let mode = SweepMode::Sampled {
            count: 200,
            seed: 11,
        };
        let task = SweepTask::new(
            5,
            Filters {
                lambda_min: Some(2),
                ..Filters::default()
            },
            mode,
            PairPredicate::HasGoodPair,
        );
        let a = sweep(&task).unwrap();
        let b = sweep(&task).unwrap();
        assert_eq!(a.qualified, 200);
        assert_eq!(a.examined, b.examined);
        assert_eq!(a.satisfied, b.satisfied);
    }

    #[test]
    fn exhaustive_rejects_large_orders() {
        let task = SweepTask::new(
            6,
            Filters::default(),
            SweepMode::Exhaustive,
            PairPredicate::HasGoodPair,
        );
        assert!(matches!(sweep(&task), Err(Error::PreconditionViolated(_))));
    }
}
