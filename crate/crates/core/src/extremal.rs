//! Per-order extremal values by exhaustive enumeration of host colourings,
//! plus the closed-form star formula and the star-forest bound.
//!
//! For a host order `n` and pattern `G`, the searches compute the largest
//! `min{|R|,|B|}` over colourings of `K_n` that miss some tone (`ot`) or some
//! colour class (`tot`) of `G`.
//!
//! Colourings are indexed by a binary counter over the edges of `K_n` in
//! lexicographic order, bit `i` set meaning edge `i` is blue. Swapping both
//! colours maps the set of tones (and of classes) of `G` onto itself, so a
//! colouring and its swap are both good or both bad; with symmetry pruning
//! the last edge is therefore fixed red and only the low `E - 1` bits vary.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::embed::{classes_by_tone, CompiledPattern, CoverageLevel, Matcher};
use crate::error::{Error, Result};
use crate::graph::{ColouredHost, Edge, Graph};
use crate::patterns;

/// Default limit on the number of edges of `K_n` to enumerate.
pub const DEFAULT_EDGE_GUARD: usize = 30;
/// Hard limit imposed by the 64-bit colouring index.
pub const MAX_HOST_EDGES: usize = 63;
const MAX_SHARD_BITS: usize = 12;

/// `ot(n, K_{1,k})` for `n >= 4k`:
/// `floor((k-1) n / 2)` for `k <= 3`, and `(k-2) n - k^2/2 + 3k/2 - 1` for `k >= 4`.
pub fn ot_star_formula(n: u64, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("star size k must be positive".into()));
    }
    if n < 4 * k {
        return Err(Error::Domain(format!(
            "formula holds for n >= 4k; got n = {n} < {}",
            4 * k
        )));
    }
    if k <= 3 {
        Ok((k - 1) * n / 2)
    } else {
        // k^2/2 - 3k/2 = k(k-3)/2 is an integer
        Ok((k - 2) * n - k * (k - 3) / 2 - 1)
    }
}

/// `(p_1 + ... + p_q + q - 2) n`, valid for `n >= 4(p_1 + ... + p_q + q - 1)`.
pub fn tot_star_forest_bound(n: u64, parts: &[u64]) -> Result<u64> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::invalid("parts must be a non-empty list of positive sizes"));
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invalid("parts must be sorted non-increasing"));
    }
    let sum: u64 = parts.iter().sum();
    let q = parts.len() as u64;
    let need = 4 * (sum + q - 1);
    if n < need {
        return Err(Error::Domain(format!(
            "bound requires n >= 4(p_1+...+p_q+q-1) = {need}; got n = {n}"
        )));
    }
    Ok((sum + q - 2) * n)
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Lift the default edge guard.
    pub force: bool,
    /// Fix the last edge red (halves the enumeration).
    pub prune_symmetry: bool,
    /// Thread count; the result does not depend on it.
    pub workers: usize,
    pub deadline: Option<Instant>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            force: false,
            prune_symmetry: true,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            deadline: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalResult {
    pub n: usize,
    pub level: CoverageLevel,
    /// Largest `min{|R|,|B|}` over colourings failing coverage.
    pub value: usize,
    /// `value == floor(n(n-1)/4)`: even a balanced colouring fails.
    pub saturated: bool,
    /// Blue-edge mask of the witness in the enumeration order.
    pub witness_index: u64,
    #[serde(skip)]
    pub witness: ColouredHost,
    /// Colourings enumerated (after symmetry pruning).
    pub colourings: u64,
    /// Colourings on which coverage was actually tested.
    pub coverage_checks: u64,
}

/// Target groups; a host covers `G` iff every group has an embeddable member.
struct CoveragePlan {
    groups: Vec<Vec<CompiledPattern>>,
}

impl CoveragePlan {
    fn new(g: &Graph, level: CoverageLevel) -> Result<Self> {
        let classes = patterns::enumerate_pattern_classes(g)?;
        let groups = match level {
            CoverageLevel::Class => classes
                .iter()
                .map(|c| vec![CompiledPattern::new(&c.representative)])
                .collect(),
            CoverageLevel::Tone => classes_by_tone(&classes, g.edge_count())
                .into_iter()
                .map(|(_, group)| group.iter().map(|c| CompiledPattern::new(&c.representative)).collect())
                .collect(),
        };
        Ok(CoveragePlan { groups })
    }

    fn covers(&self, host: &ColouredHost, m: &mut Matcher) -> bool {
        self.groups
            .iter()
            .all(|group| group.iter().any(|plan| m.find(host, plan)))
    }
}

#[derive(Clone, Copy, Default)]
struct ShardOutcome {
    best: Option<(usize, u64)>,
    colourings: u64,
    checks: u64,
}

pub fn ot_exact(n: usize, g: &Graph, opts: &SearchOptions) -> Result<ExtremalResult> {
    extremal_exact(n, g, CoverageLevel::Tone, opts)
}

pub fn tot_exact(n: usize, g: &Graph, opts: &SearchOptions) -> Result<ExtremalResult> {
    extremal_exact(n, g, CoverageLevel::Class, opts)
}

/// Largest `min{|R|,|B|}` over all colourings of `K_n` failing coverage of `g`
/// at `level`, with the first such colouring in enumeration order as witness.
pub fn extremal_exact(n: usize, g: &Graph, level: CoverageLevel, opts: &SearchOptions) -> Result<ExtremalResult> {
    if g.edge_count() == 0 {
        return Err(Error::invalid("pattern graph must have at least one edge"));
    }
    if n < g.order() {
        return Err(Error::invalid(format!(
            "host order {n} is smaller than the pattern order {}",
            g.order()
        )));
    }
    let edges = n * (n - 1) / 2;
    if edges > MAX_HOST_EDGES {
        return Err(Error::SizeLimit {
            guard: "colouring index fits in 64 bits: n(n-1)/2 <= 63",
            limit: MAX_HOST_EDGES,
            actual: edges,
        });
    }
    if edges > DEFAULT_EDGE_GUARD && !opts.force {
        return Err(Error::SizeLimit {
            guard: "exhaustive enumeration: n(n-1)/2 <= 30 (pass --force to override)",
            limit: DEFAULT_EDGE_GUARD,
            actual: edges,
        });
    }
    let plan = CoveragePlan::new(g, level)?;
    let pairs: Vec<Edge> = Graph::complete(n).edges().to_vec();
    let free_bits = if opts.prune_symmetry { edges - 1 } else { edges };
    let shard_bits = free_bits.min(MAX_SHARD_BITS);
    let low_bits = free_bits - shard_bits;

    let run_shard = |shard: u64| -> Result<ShardOutcome> {
        if opts.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Incomplete);
        }
        let mut host = ColouredHost::monochrome(n, crate::graph::Colour::Red);
        let mut matcher = Matcher::default();
        let mut out = ShardOutcome::default();
        let base = shard << low_bits;
        for low in 0..1u64 << low_bits {
            if low & 0xffff == 0xffff && opts.deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(Error::Incomplete);
            }
            let mask = base | low;
            out.colourings += 1;
            let blue = mask.count_ones() as usize;
            let min = blue.min(edges - blue);
            if out.best.is_some_and(|(v, _)| min <= v) {
                continue;
            }
            host.assign_blue_mask(&pairs, mask);
            out.checks += 1;
            if !plan.covers(&host, &mut matcher) {
                out.best = Some((min, mask));
            }
        }
        Ok(out)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let outcomes: Vec<ShardOutcome> = pool.install(|| {
        (0..1u64 << shard_bits)
            .into_par_iter()
            .map(run_shard)
            .collect::<Result<Vec<_>>>()
    })?;

    // highest value wins; among equals the earliest shard, i.e. the first
    // witness in enumeration order
    let mut best: Option<(usize, u64)> = None;
    for o in &outcomes {
        if let Some((v, mask)) = o.best {
            if best.is_none_or(|(bv, _)| v > bv) {
                best = Some((v, mask));
            }
        }
    }
    let (value, mask) =
        best.ok_or_else(|| Error::Internal("no colouring failed coverage, yet monochromatic hosts always do".into()))?;
    let mut witness = ColouredHost::monochrome(n, crate::graph::Colour::Red);
    witness.assign_blue_mask(&pairs, mask);
    Ok(ExtremalResult {
        n,
        level,
        value,
        saturated: value == edges / 2,
        witness_index: mask,
        witness,
        colourings: outcomes.iter().map(|o| o.colourings).sum(),
        coverage_checks: outcomes.iter().map(|o| o.checks).sum(),
    })
}
