//! Exhaustive search over all linear `Q_ℓ`-colorings with a given number of colors.
//!
//! For every abelian group of order `M` (one per isomorphism class) every
//! coefficient matrix, i.e. every sequence of `ℓ+1` columns, is visited in
//! lexicographic order of element indices. The stream is cut into contiguous
//! blocks which are checked in parallel waves; the earliest block that holds a
//! polychromatic coloring wins, so the reported coloring does not depend on the
//! thread count.
//!
//! Pruning skips a matrix when a symmetry maps it to a lexicographically
//! smaller one (column reversal, group automorphisms) or when its columns do
//! not generate the group. All three preserve the verdict, and the first
//! polychromatic matrix is never skipped: every image of it is polychromatic
//! and therefore not smaller.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{groups_of_order, FactoredAbelianGroup, GroupElement};
use crate::bounds::upper_os;
use crate::coloring::LinearColoring;
use crate::error::{Error, Result};
use crate::polycheck::{FastChecker, GroupTables, Layout, XRange, MAX_FAST_ORDER};

pub const CHECKPOINT_SCHEMA: u32 = 1;
pub const DEFAULT_BLOCK_SIZE: u64 = 4096;
pub const DEFAULT_AUTOMORPHISM_LIMIT: usize = 64;
const CHECKPOINT_INTERVAL: Duration = Duration::from_secs(10);

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
    pub range: XRange,
    /// Reversal, generation and automorphism pruning.
    pub prune: bool,
    /// How many automorphisms per group to use for pruning; 0 disables it.
    pub automorphism_limit: usize,
    /// `compute_plin` scans `M = 1, 2, …` instead of descending from the upper bound.
    pub ascending: bool,
    /// Maximum number of counting vectors examined over the whole call. It is
    /// checked between matrices, so the last matrix may overshoot it.
    pub budget: Option<u64>,
    pub checkpoint: Option<PathBuf>,
    pub block_size: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: None,
            range: XRange::Exponent,
            prune: true,
            automorphism_limit: DEFAULT_AUTOMORPHISM_LIMIT,
            ascending: false,
            budget: None,
            checkpoint: None,
            block_size: DEFAULT_BLOCK_SIZE,
        }
    }
}

impl SearchOptions {
    pub fn unpruned() -> Self {
        SearchOptions { prune: false, automorphism_limit: 0, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    NoneExists,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundColoring {
    pub moduli: Vec<u64>,
    pub columns: Vec<GroupElement>,
}

impl FoundColoring {
    pub fn to_coloring(&self, ell: usize) -> Result<LinearColoring> {
        LinearColoring::new(ell, FactoredAbelianGroup::new(self.moduli.clone())?, self.columns.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub ell: usize,
    pub d: usize,
    pub colors: u64,
    pub status: SearchStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<FoundColoring>,
    /// Moduli of every group searched, in search order.
    pub groups: Vec<Vec<u64>>,
    pub matrices_tested: u64,
    pub matrices_pruned: u64,
    pub vectors_checked: u64,
    pub wall_time_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlinResult {
    pub ell: usize,
    pub d: usize,
    pub upper_bound: u64,
    /// Exact `p_lin`, present once every larger `M` has been excluded.
    pub value: Option<u64>,
    /// Largest `M` with a certificate so far.
    pub best_found: Option<u64>,
    pub certificate: Option<FoundColoring>,
    /// One `none_exists` result for each `M` in `(value, upper_bound]`.
    pub exhaustion: Vec<SearchResult>,
    /// Inclusive range of `M` that a budget stop left open.
    pub undecided: Option<(u64, u64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckpointKind {
    Search,
    Plin,
}

/// Resumable search state, written as JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub schema_version: u32,
    pub kind: CheckpointKind,
    pub ell: usize,
    pub d: usize,
    pub range: XRange,
    pub prune: bool,
    pub automorphism_limit: usize,
    pub ascending: bool,
    pub block_size: u64,
    /// `M` currently being searched.
    pub colors: u64,
    pub group_index: usize,
    pub next_block: u64,
    /// Matrices of `next_block` already done.
    #[serde(default)]
    pub block_offset: u64,
    pub matrices_tested: u64,
    pub matrices_pruned: u64,
    pub vectors_checked: u64,
    pub elapsed_secs: f64,
    /// Finished searches (plin runs).
    pub completed: Vec<SearchResult>,
    /// Final outcome once the run is over.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_result: Option<SearchResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plin_result: Option<PlinResult>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Checkpoint> {
        let text = std::fs::read_to_string(path)?;
        let cp: Checkpoint = serde_json::from_str(&text)?;
        if cp.schema_version != CHECKPOINT_SCHEMA {
            return Err(Error::Invalid(format!("checkpoint schema {} is not supported", cp.schema_version)));
        }
        Ok(cp)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(self)?)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    fn matches(&self, kind: CheckpointKind, ell: usize, d: usize, opts: &SearchOptions) -> bool {
        self.kind == kind
            && self.ell == ell
            && self.d == d
            && self.range == opts.range
            && self.prune == opts.prune
            && self.automorphism_limit == opts.automorphism_limit
            && self.block_size == opts.block_size
            && (kind == CheckpointKind::Search || self.ascending == opts.ascending)
    }
}

/// Every sequence of `ℓ+1` group elements, lexicographically; `M^(ℓ+1)` items.
pub fn enumerate_matrices(group: &FactoredAbelianGroup, ell: usize) -> impl Iterator<Item = Vec<GroupElement>> + '_ {
    let m = group.order();
    let total = m.checked_pow(ell as u32 + 1).unwrap_or(u64::MAX);
    (0..total).map(move |idx| {
        decode(idx, m, ell + 1)
            .into_iter()
            .map(|i| group.element_at(i as usize))
            .collect()
    })
}

fn decode(mut idx: u64, m: u64, len: usize) -> Vec<u8> {
    let mut cols = vec![0u8; len];
    for slot in cols.iter_mut().rev() {
        *slot = (idx % m) as u8;
        idx /= m;
    }
    cols
}

fn increment(cols: &mut [u8], m: u8) {
    for slot in cols.iter_mut().rev() {
        *slot += 1;
        if *slot < m {
            return;
        }
        *slot = 0;
    }
}

struct GroupCtx {
    tables: GroupTables,
    // automorphisms other than the identity, as index permutations
    automorphisms: Vec<Vec<u8>>,
    prune: bool,
    range: u64,
    total: u64,
    width: usize,
}

impl GroupCtx {
    fn new(group: &FactoredAbelianGroup, ell: usize, opts: &SearchOptions) -> Result<Self> {
        let tables = GroupTables::new(group)?;
        let automorphisms = if opts.prune && opts.automorphism_limit > 0 {
            group
                .automorphisms(opts.automorphism_limit + 1)
                .into_iter()
                .skip(1)
                .map(|p| p.into_iter().map(|i| i as u8).collect())
                .collect()
        } else {
            Vec::new()
        };
        let total = group
            .order()
            .checked_pow(ell as u32 + 1)
            .ok_or_else(|| Error::Resource("matrix count overflows u64".into()))?;
        let range = match opts.range {
            XRange::Exponent => group.exponent(),
            XRange::Paper => group.order(),
        };
        Ok(GroupCtx { tables, automorphisms, prune: opts.prune, range, total, width: ell + 1 })
    }

    fn generates(&self, cols: &[u8]) -> bool {
        let full = self.tables.full_mask();
        let mut seen: u128 = 1;
        let mut stack = vec![0u8];
        while let Some(e) = stack.pop() {
            for &c in cols {
                let next = self.tables.add(e, c);
                if seen & (1u128 << next) == 0 {
                    seen |= 1u128 << next;
                    stack.push(next);
                }
            }
        }
        seen == full
    }

    fn reversal_minimal(cols: &[u8]) -> bool {
        cols.iter().rev().cmp(cols.iter()) != std::cmp::Ordering::Less
    }

    fn automorphism_minimal(&self, cols: &[u8]) -> bool {
        for phi in &self.automorphisms {
            if cols.iter().map(|&c| phi[c as usize]).cmp(cols.iter().copied()) == std::cmp::Ordering::Less {
                return false;
            }
            if cols.iter().rev().map(|&c| phi[c as usize]).cmp(cols.iter().copied()) == std::cmp::Ordering::Less {
                return false;
            }
        }
        true
    }
}

#[derive(Default)]
struct BlockResult {
    found: Option<Vec<u8>>,
    /// Index of the first matrix left unchecked by a budget stop.
    aborted_at: Option<u64>,
    tested: u64,
    pruned: u64,
    vectors: u64,
}

// The budget is only consulted between matrices, so each call makes progress.
fn process_block(ctx: &GroupCtx, checker: &mut FastChecker, block: u64, skip: u64, block_size: u64, used: &AtomicU64, budget: u64) -> BlockResult {
    let m = ctx.tables.order() as u64;
    let start = block * block_size + skip;
    let end = (start + block_size).min(ctx.total);
    let mut cols = decode(start, m, ctx.width);
    let mut res = BlockResult::default();
    for idx in start..end {
        if idx > start {
            increment(&mut cols, m as u8);
        }
        if used.load(Ordering::Relaxed) >= budget {
            res.aborted_at = Some(idx);
            return res;
        }
        if ctx.prune && (!GroupCtx::reversal_minimal(&cols) || !ctx.generates(&cols)) {
            res.pruned += 1;
            continue;
        }
        res.tested += 1;
        if !checker.passes_zero(&cols) {
            res.vectors += 1;
            used.fetch_add(1, Ordering::Relaxed);
            continue;
        }
        if ctx.prune && !ctx.automorphism_minimal(&cols) {
            res.tested -= 1;
            res.pruned += 1;
            continue;
        }
        let (ok, checked) = checker.scan_after_zero(&cols);
        res.vectors += checked;
        used.fetch_add(checked, Ordering::Relaxed);
        if ok {
            res.found = Some(cols);
            return res;
        }
    }
    res
}

struct Progress {
    group_index: usize,
    next_block: u64,
    block_offset: u64,
    tested: u64,
    pruned: u64,
    vectors: u64,
    elapsed: f64,
}

impl Progress {
    fn fresh() -> Self {
        Progress { group_index: 0, next_block: 0, block_offset: 0, tested: 0, pruned: 0, vectors: 0, elapsed: 0.0 }
    }
}

struct Engine<'o> {
    opts: &'o SearchOptions,
    pool: rayon::ThreadPool,
    used: AtomicU64,
    budget: u64,
    kind: CheckpointKind,
    completed: Vec<SearchResult>,
    last_save: Instant,
}

impl<'o> Engine<'o> {
    fn new(opts: &'o SearchOptions, kind: CheckpointKind) -> Result<Self> {
        if opts.block_size == 0 {
            return Err(Error::Domain("block size must be positive".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads.unwrap_or(0))
            .build()
            .map_err(|e| Error::Resource(e.to_string()))?;
        Ok(Engine {
            opts,
            pool,
            used: AtomicU64::new(0),
            budget: opts.budget.unwrap_or(u64::MAX),
            kind,
            completed: Vec::new(),
            last_save: Instant::now(),
        })
    }

    fn checkpoint(&self, ell: usize, d: usize, colors: u64, p: &Progress) -> Checkpoint {
        Checkpoint {
            schema_version: CHECKPOINT_SCHEMA,
            kind: self.kind,
            ell,
            d,
            range: self.opts.range,
            prune: self.opts.prune,
            automorphism_limit: self.opts.automorphism_limit,
            ascending: self.opts.ascending,
            block_size: self.opts.block_size,
            colors,
            group_index: p.group_index,
            next_block: p.next_block,
            block_offset: p.block_offset,
            matrices_tested: p.tested,
            matrices_pruned: p.pruned,
            vectors_checked: p.vectors,
            elapsed_secs: p.elapsed,
            completed: self.completed.clone(),
            search_result: None,
            plin_result: None,
        }
    }

    fn save(&mut self, cp: &Checkpoint, force: bool) -> Result<()> {
        if let Some(path) = &self.opts.checkpoint {
            if force || self.last_save.elapsed() >= CHECKPOINT_INTERVAL {
                cp.save(path)?;
                self.last_save = Instant::now();
            }
        }
        Ok(())
    }

    fn search(&mut self, ell: usize, d: usize, m: u64, resume: Option<Progress>) -> Result<SearchResult> {
        if ell == 0 || ell > d {
            return Err(Error::Domain(format!("need 1 <= ell <= d, got ell={ell}, d={d}")));
        }
        if m == 0 {
            return Err(Error::Domain("number of colors must be at least 1".into()));
        }
        if m > MAX_FAST_ORDER {
            return Err(Error::Resource(format!("{m} colors exceed the supported maximum {MAX_FAST_ORDER}")));
        }
        let started = Instant::now();
        let groups = groups_of_order(m)?;
        let layout = Layout::new(ell, d)?;
        let mut p = resume.unwrap_or_else(Progress::fresh);
        let prior = p.elapsed;
        let waves = self.pool.current_num_threads().max(1) as u64 * 4;
        let bs = self.opts.block_size;

        let finish = |p: &Progress, status, found| SearchResult {
            ell,
            d,
            colors: m,
            status,
            found,
            groups: groups.iter().map(|g| g.moduli().to_vec()).collect(),
            matrices_tested: p.tested,
            matrices_pruned: p.pruned,
            vectors_checked: p.vectors,
            wall_time_secs: prior + started.elapsed().as_secs_f64(),
        };

        while p.group_index < groups.len() {
            let group = &groups[p.group_index];
            let ctx = GroupCtx::new(group, ell, self.opts)?;
            let blocks = ctx.total.div_ceil(bs);
            while p.next_block < blocks {
                let wave_end = (p.next_block + waves).min(blocks);
                let (used, budget) = (&self.used, self.budget);
                let (ctx_ref, layout_ref) = (&ctx, &layout);
                let (first, offset) = (p.next_block, p.block_offset);
                let results: Vec<BlockResult> = self.pool.install(|| {
                    (p.next_block..wave_end)
                        .into_par_iter()
                        .map_init(
                            || FastChecker::new(&ctx_ref.tables, layout_ref, ctx_ref.range),
                            |checker, b| {
                                let skip = if b == first { offset } else { 0 };
                                process_block(ctx_ref, checker, b, skip, bs, used, budget)
                            },
                        )
                        .collect()
                });
                let mut aborted_at = None;
                let mut found = None;
                for r in results {
                    p.tested += r.tested;
                    p.pruned += r.pruned;
                    p.vectors += r.vectors;
                    if found.is_none() {
                        if let Some(cols) = r.found {
                            found = Some(cols);
                        } else if aborted_at.is_none() {
                            aborted_at = r.aborted_at;
                        }
                    }
                }
                p.elapsed = prior + started.elapsed().as_secs_f64();
                if let Some(cols) = found {
                    let columns = cols.iter().map(|&i| group.element_at(i as usize)).collect();
                    let fc = FoundColoring { moduli: group.moduli().to_vec(), columns };
                    return Ok(finish(&p, SearchStatus::Found, Some(fc)));
                }
                if let Some(idx) = aborted_at {
                    p.next_block = idx / bs;
                    p.block_offset = idx % bs;
                    let cp = self.checkpoint(ell, d, m, &p);
                    self.save(&cp, true)?;
                    return Ok(finish(&p, SearchStatus::Undecided, None));
                }
                p.next_block = wave_end;
                p.block_offset = 0;
                let cp = self.checkpoint(ell, d, m, &p);
                self.save(&cp, false)?;
            }
            p.group_index += 1;
            p.next_block = 0;
            p.block_offset = 0;
        }
        Ok(finish(&p, SearchStatus::NoneExists, None))
    }
}

fn resume_progress(cp: &Checkpoint, m: u64) -> Option<Progress> {
    (cp.colors == m && cp.search_result.is_none() && cp.plin_result.is_none()).then_some(Progress {
        group_index: cp.group_index,
        next_block: cp.next_block,
        block_offset: cp.block_offset,
        tested: cp.matrices_tested,
        pruned: cp.matrices_pruned,
        vectors: cp.vectors_checked,
        elapsed: cp.elapsed_secs,
    })
}

fn load_matching(kind: CheckpointKind, ell: usize, d: usize, opts: &SearchOptions) -> Result<Option<Checkpoint>> {
    let Some(path) = &opts.checkpoint else { return Ok(None) };
    if !path.exists() {
        return Ok(None);
    }
    let cp = Checkpoint::load(path)?;
    if !cp.matches(kind, ell, d, opts) {
        return Err(Error::Invalid(format!(
            "checkpoint {} was written for different search parameters",
            path.display()
        )));
    }
    Ok(Some(cp))
}

/// Looks for a `d`-polychromatic linear `Q_ℓ`-coloring with exactly `m` colors.
pub fn find_coloring(ell: usize, d: usize, m: u64, opts: &SearchOptions) -> Result<SearchResult> {
    let prior = load_matching(CheckpointKind::Search, ell, d, opts)?;
    if let Some(cp) = &prior {
        if cp.colors != m {
            return Err(Error::Invalid(format!("checkpoint is for {} colors, not {m}", cp.colors)));
        }
        if let Some(done) = &cp.search_result {
            return Ok(done.clone());
        }
    }
    let mut engine = Engine::new(opts, CheckpointKind::Search)?;
    let result = engine.search(ell, d, m, prior.as_ref().and_then(|cp| resume_progress(cp, m)))?;
    if result.status != SearchStatus::Undecided {
        let mut cp = engine.checkpoint(ell, d, m, &Progress::fresh());
        cp.search_result = Some(result.clone());
        engine.save(&cp, true)?;
    }
    Ok(result)
}

/// Largest `M <= C(d+1, ℓ+1)` admitting a `d`-polychromatic linear `Q_ℓ`-coloring.
pub fn compute_plin(ell: usize, d: usize, opts: &SearchOptions) -> Result<PlinResult> {
    let upper = upper_os(ell as u64, d as u64)?;
    let prior = load_matching(CheckpointKind::Plin, ell, d, opts)?;
    if let Some(done) = prior.as_ref().and_then(|cp| cp.plin_result.clone()) {
        return Ok(done);
    }
    let mut engine = Engine::new(opts, CheckpointKind::Plin)?;
    if let Some(cp) = &prior {
        engine.completed = cp.completed.clone();
    }

    let order: Vec<u64> = if opts.ascending { (1..=upper).collect() } else { (1..=upper).rev().collect() };
    let mut undecided = None;
    for (pos, &m) in order.iter().enumerate() {
        if engine.completed.iter().any(|r| r.colors == m) {
            continue;
        }
        if !opts.ascending && engine.completed.iter().any(|r| r.status == SearchStatus::Found) {
            break;
        }
        let resume = prior.as_ref().and_then(|cp| resume_progress(cp, m));
        let r = engine.search(ell, d, m, resume)?;
        match r.status {
            SearchStatus::Undecided => {
                let rest = &order[pos..];
                let (lo, hi) = (*rest.iter().min().unwrap(), *rest.iter().max().unwrap());
                undecided = Some(if opts.ascending { (lo, hi) } else { (1, m) });
                break;
            }
            SearchStatus::Found => {
                engine.completed.push(r);
                if !opts.ascending {
                    break;
                }
            }
            SearchStatus::NoneExists => engine.completed.push(r),
        }
        let cp = engine.checkpoint(ell, d, m, &Progress::fresh());
        engine.save(&cp, true)?;
    }

    let best = engine
        .completed
        .iter()
        .filter(|r| r.status == SearchStatus::Found)
        .max_by_key(|r| r.colors);
    let best_found = best.map(|r| r.colors);
    let certificate = best.and_then(|r| r.found.clone());
    let value = if undecided.is_none() { Some(best_found.unwrap_or(0)) } else { None };
    let floor = value.or(best_found).unwrap_or(0);
    let mut exhaustion: Vec<SearchResult> = engine
        .completed
        .iter()
        .filter(|r| r.status == SearchStatus::NoneExists && r.colors > floor)
        .cloned()
        .collect();
    exhaustion.sort_by_key(|r| r.colors);
    let result = PlinResult { ell, d, upper_bound: upper, value, best_found, certificate, exhaustion, undecided };
    if undecided.is_none() {
        let mut cp = engine.checkpoint(ell, d, 0, &Progress::fresh());
        cp.plin_result = Some(result.clone());
        engine.save(&cp, true)?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycheck::is_polychromatic;

    fn verdict(ell: usize, d: usize, m: u64, opts: &SearchOptions) -> SearchStatus {
        find_coloring(ell, d, m, opts).unwrap().status
    }

    #[test]
    fn matrix_stream_counts_and_order() {
        let z2 = FactoredAbelianGroup::new(vec![2]).unwrap();
        assert_eq!(enumerate_matrices(&z2, 1).count(), 4);
        let z3 = FactoredAbelianGroup::new(vec![3]).unwrap();
        let all: Vec<Vec<GroupElement>> = enumerate_matrices(&z3, 2).collect();
        assert_eq!(all.len(), 27);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let z44 = FactoredAbelianGroup::new(vec![4, 4]).unwrap();
        assert_eq!(enumerate_matrices(&z44, 2).count(), 4096);
    }

    #[test]
    fn small_search_examples() {
        let opts = SearchOptions::default();
        assert_eq!(verdict(2, 3, 3, &opts), SearchStatus::NoneExists);
        let r = find_coloring(2, 3, 2, &opts).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        let chi = r.found.unwrap().to_coloring(2).unwrap();
        assert!(is_polychromatic(&chi, 3).unwrap().polychromatic);
        assert_eq!(verdict(1, 1, 1, &opts), SearchStatus::Found);
        assert!(matches!(find_coloring(3, 2, 2, &opts), Err(Error::Domain(_))));
        assert!(matches!(find_coloring(1, 2, 0, &opts), Err(Error::Domain(_))));
    }

    #[test]
    fn pruned_and_unpruned_agree_on_certificates() {
        for (ell, d, m) in [(1, 2, 2), (1, 3, 4), (2, 4, 4), (2, 4, 5), (1, 4, 6), (2, 3, 2)] {
            let a = find_coloring(ell, d, m, &SearchOptions::default()).unwrap();
            let b = find_coloring(ell, d, m, &SearchOptions::unpruned()).unwrap();
            assert_eq!(a.status, b.status, "({ell},{d},{m})");
            assert_eq!(a.found, b.found, "({ell},{d},{m})");
            assert!(a.matrices_tested <= b.matrices_tested);
        }
    }

    #[test]
    fn thread_count_does_not_change_the_winner() {
        let one = SearchOptions { threads: Some(1), block_size: 7, ..Default::default() };
        let four = SearchOptions { threads: Some(4), block_size: 7, ..Default::default() };
        let a = find_coloring(2, 4, 6, &one).unwrap();
        let b = find_coloring(2, 4, 6, &four).unwrap();
        assert_eq!(a.status, SearchStatus::Found);
        assert_eq!(a.found, b.found);
    }

    #[test]
    fn budget_stops_with_undecided_and_resumes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        let opts = SearchOptions { budget: Some(50), checkpoint: Some(path.clone()), block_size: 16, threads: Some(1), ..Default::default() };
        let r = find_coloring(2, 4, 7, &opts).unwrap();
        assert_eq!(r.status, SearchStatus::Undecided);
        let cp = Checkpoint::load(&path).unwrap();
        assert_eq!(cp.colors, 7);

        // resume repeatedly with small budgets until the search completes
        let mut rounds = 0;
        loop {
            let r = find_coloring(2, 4, 7, &opts).unwrap();
            rounds += 1;
            if r.status != SearchStatus::Undecided {
                assert_eq!(r.status, SearchStatus::NoneExists);
                break;
            }
            assert!(rounds < 10_000);
        }
        assert!(rounds > 1);
        let full = find_coloring(2, 4, 7, &SearchOptions::default()).unwrap();
        assert_eq!(full.status, SearchStatus::NoneExists);

        let other = SearchOptions { prune: false, ..opts.clone() };
        assert!(matches!(find_coloring(2, 4, 7, &other), Err(Error::Invalid(_))));
    }

    #[test]
    fn plin_small_cases() {
        let r = compute_plin(1, 3, &SearchOptions::default()).unwrap();
        assert_eq!(r.value, Some(4));
        assert_eq!(r.exhaustion.iter().map(|s| s.colors).collect::<Vec<_>>(), vec![5, 6]);
        let r = compute_plin(2, 3, &SearchOptions::default()).unwrap();
        assert_eq!(r.value, Some(2));
        let asc = compute_plin(2, 3, &SearchOptions { ascending: true, ..Default::default() }).unwrap();
        assert_eq!(asc.value, Some(2));
        assert_eq!(asc.exhaustion.iter().map(|s| s.colors).collect::<Vec<_>>(), vec![3, 4]);
        let tight = compute_plin(2, 4, &SearchOptions { budget: Some(10), ..Default::default() }).unwrap();
        assert_eq!(tight.value, None);
        assert_eq!(tight.undecided, Some((1, 10)));
    }
}
