//! Desk-scale replication suite: each claim is checked by exhaustive search or
//! by an independent oracle, and reported with its evidence.

use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{self, CanonicalSize};
use crate::catalogue;
use crate::embed::{self, Embedding};
use crate::error::{Error, Result};
use crate::extremal::{self, SearchOptions};
use crate::graph::{Colour, ColouredHost, Graph, PatternColouring};
use crate::patterns;

pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Wall-clock budget; claims not started in time are skipped.
    pub budget: Option<Duration>,
    pub workers: usize,
    /// Run only these claim ids (all when empty).
    pub only: Vec<String>,
    /// Negative control: flip one edge of every canonical host before checking it.
    pub corrupt_canonical: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            budget: None,
            workers: SearchOptions::default().workers,
            only: Vec::new(),
            corrupt_canonical: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// Ran out of budget part-way.
    Incomplete,
    /// Not started: budget exhausted or filtered out.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: &'static str,
    pub claim: &'static str,
    pub status: ClaimStatus,
    pub evidence: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub complete: bool,
    pub passed: bool,
    pub claims: Vec<ClaimResult>,
}

type ClaimFn = fn(&VerifyConfig, Option<Instant>) -> Result<(bool, String)>;

pub const CLAIM_IDS: [&str; 9] = [
    "canonical-family",
    "canonical-obstructions",
    "star-formula",
    "p4-k3-not-totally-omnitonal",
    "stars-totally-omnitonal",
    "non-star-forests-excluded",
    "star-forest-bound",
    "embedding-oracle",
    "class-counts",
];

fn claims() -> [(&'static str, &'static str, ClaimFn); 9] {
    [
        (
            CLAIM_IDS[0],
            "balanced red-clique orders up to 10000 are exactly the Pell solutions",
            claim_canonical_family,
        ),
        (
            CLAIM_IDS[1],
            "balanced red-clique colourings contain no r-b-r P4 and no (2,1)-K3",
            claim_obstructions,
        ),
        (
            CLAIM_IDS[2],
            "ot(8, K_{1,2}) = floor(n/2) = 4 and ot(n, K2) = 0 for n = 4, 5",
            claim_star_formula,
        ),
        (
            CLAIM_IDS[3],
            "P4 and K3 fail class coverage at the balanced colouring of K4",
            claim_p4_k3,
        ),
        (
            CLAIM_IDS[4],
            "tot(n, K_{1,p}) = ot(n, K_{1,p}) for n <= 6, p <= 3",
            claim_stars,
        ),
        (
            CLAIM_IDS[5],
            "every non-star-forest on <= 5 vertices has a witness colouring absent from the balanced K21",
            claim_non_star_forests,
        ),
        (
            CLAIM_IDS[6],
            "greedy embedding finds all 6 classes of K_{1,2} + K_{1,1} in 1000 hosts on 16 vertices with min > 48",
            claim_star_forest_bound,
        ),
        (
            CLAIM_IDS[7],
            "backtracking search agrees with injective-map enumeration on 500 random hosts",
            claim_embedding_oracle,
        ),
        (
            CLAIM_IDS[8],
            "class counts match Burnside for every graph on <= 5 vertices",
            claim_class_counts,
        ),
    ]
}

/// Runs the replication suite.
pub fn verify_theorems(config: &VerifyConfig) -> VerifyReport {
    let deadline = config.budget.map(|b| Instant::now() + b);
    let mut out = Vec::new();
    for (id, claim, run) in claims() {
        let selected = config.only.is_empty() || config.only.iter().any(|o| o == id);
        let expired = deadline.is_some_and(|d| Instant::now() >= d);
        let (status, evidence) = if !selected {
            (ClaimStatus::Skipped, "not selected".to_string())
        } else if expired {
            (ClaimStatus::Skipped, "budget exhausted before start".to_string())
        } else {
            match run(config, deadline) {
                Ok((true, ev)) => (ClaimStatus::Pass, ev),
                Ok((false, ev)) => (ClaimStatus::Fail, ev),
                Err(Error::Incomplete) => (ClaimStatus::Incomplete, "budget exhausted mid-search".into()),
                Err(e) => (ClaimStatus::Fail, format!("error: {e}")),
            }
        };
        out.push(ClaimResult {
            id,
            claim,
            status,
            evidence,
        });
    }
    let selected: Vec<&ClaimResult> = out
        .iter()
        .filter(|c| config.only.is_empty() || config.only.iter().any(|o| o == c.id))
        .collect();
    VerifyReport {
        seed: config.seed,
        complete: selected
            .iter()
            .all(|c| matches!(c.status, ClaimStatus::Pass | ClaimStatus::Fail)),
        passed: selected.iter().all(|c| c.status == ClaimStatus::Pass),
        claims: out,
    }
}

fn search_options(config: &VerifyConfig, deadline: Option<Instant>) -> SearchOptions {
    SearchOptions {
        force: false,
        prune_symmetry: true,
        workers: config.workers,
        deadline,
    }
}

fn claim_canonical_family(_: &VerifyConfig, _: Option<Instant>) -> Result<(bool, String)> {
    const LIMIT: u64 = 10_000;
    let generated: Vec<(u64, u64)> = canonical::canonical_sizes(LIMIT).iter().map(|s| (s.n, s.r)).collect();
    let brute = oracles::balanced_orders(LIMIT);
    let head_ok = generated.starts_with(&[(4, 3), (21, 15), (120, 85), (697, 493)]);
    Ok((
        generated == brute && head_ok,
        format!("recurrence {generated:?}; brute force {brute:?}"),
    ))
}

fn claim_obstructions(config: &VerifyConfig, _: Option<Instant>) -> Result<(bool, String)> {
    let mut ok = true;
    let mut evidence = Vec::new();
    for n in [4, 21, 120] {
        let size = CanonicalSize::for_order(n).expect("balanced order");
        let mut host = canonical::canonical_colouring(size)?;
        if config.corrupt_canonical {
            host = host.with_flipped(0, 1);
        }
        let report = canonical::verify_obstructions(&host);
        let balanced = host.red_count() == host.blue_count();
        ok &= balanced && !report.rbr_p4_found() && !report.k3_two_one_found();
        evidence.push(format!(
            "n={n}: |R|={} |B|={} rbrP4={:?} k3(2,1)={:?}",
            host.red_count(),
            host.blue_count(),
            report.rbr_p4,
            report.k3_two_one
        ));
    }
    Ok((ok, evidence.join("; ")))
}

fn claim_star_formula(config: &VerifyConfig, deadline: Option<Instant>) -> Result<(bool, String)> {
    let opts = search_options(config, deadline);
    let mut ok = true;
    let mut evidence = Vec::new();
    for n in [4, 5] {
        let r = extremal::ot_exact(n, &Graph::path(2), &opts)?;
        ok &= r.value == 0;
        evidence.push(format!("ot({n}, K2) = {}", r.value));
    }
    let formula = extremal::ot_star_formula(8, 2)?;
    let r = extremal::ot_exact(8, &Graph::star(2), &opts)?;
    ok &= r.value == 4 && formula == 4;
    evidence.push(format!(
        "ot(8, K_{{1,2}}) = {} over {} colourings; formula gives {formula}",
        r.value, r.colourings
    ));
    Ok((ok, evidence.join("; ")))
}

fn claim_p4_k3(config: &VerifyConfig, deadline: Option<Instant>) -> Result<(bool, String)> {
    let opts = search_options(config, deadline);
    let canonical = canonical::canonical_colouring(CanonicalSize::new(4, 3)?)?.to_pattern();
    let mut ok = true;
    let mut evidence = Vec::new();
    for (name, g) in [("P4", Graph::path(4)), ("K3", Graph::complete(3))] {
        let r = extremal::tot_exact(4, &g, &opts)?;
        let same = patterns::patterns_equivalent(&r.witness.to_pattern(), &canonical)?;
        ok &= r.value == 3 && r.saturated && same;
        evidence.push(format!(
            "tot(4, {name}) = {} saturated={} witness~canonical(4,3): {same}",
            r.value, r.saturated
        ));
    }
    Ok((ok, evidence.join("; ")))
}

fn claim_stars(config: &VerifyConfig, deadline: Option<Instant>) -> Result<(bool, String)> {
    let opts = search_options(config, deadline);
    let mut ok = true;
    let mut rows = Vec::new();
    for p in 1..=3 {
        for n in (p + 1).max(2)..=6 {
            let g = Graph::star(p);
            let ot = extremal::ot_exact(n, &g, &opts)?.value;
            let tot = extremal::tot_exact(n, &g, &opts)?.value;
            ok &= ot == tot;
            rows.push(format!("(n={n},p={p}): {ot}/{tot}"));
        }
    }
    Ok((ok, format!("ot/tot {}", rows.join(" "))))
}

fn claim_non_star_forests(_: &VerifyConfig, _: Option<Instant>) -> Result<(bool, String)> {
    let host = canonical::canonical_colouring(CanonicalSize::new(21, 15)?)?;
    let mut ok = true;
    let (mut non_forests, mut forests) = (0, 0);
    let mut failures = Vec::new();
    for g in catalogue::catalogue(5)? {
        if g.edge_count() == 0 {
            forests += 1;
            continue;
        }
        let witness = patterns::witness_pattern(&g)?;
        if patterns::is_star_forest(&g) {
            forests += 1;
            if witness.is_some() {
                ok = false;
                failures.push(format!("star forest {:?} got a witness", g.edges()));
            }
            continue;
        }
        non_forests += 1;
        match witness {
            None => {
                ok = false;
                failures.push(format!("{:?} has no witness", g.edges()));
            }
            Some(w) => {
                if let Some(e) = embed::find_embedding(&host, &w)? {
                    ok = false;
                    failures.push(format!("{:?} embeds via {:?}", g.edges(), e.map()));
                }
            }
        }
    }
    Ok((
        ok,
        format!(
            "{non_forests} non-star-forests excluded, {forests} star forests without witness{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {}", failures.join(", "))
            }
        ),
    ))
}

/// Random colouring of `K_n`, each edge red with probability 1/2.
pub fn random_host(n: usize, rng: &mut ChaCha8Rng) -> ColouredHost {
    ColouredHost::from_fn(n, |_, _| {
        if rng.random_bool(0.5) {
            Colour::Red
        } else {
            Colour::Blue
        }
    })
}

fn claim_star_forest_bound(config: &VerifyConfig, deadline: Option<Instant>) -> Result<(bool, String)> {
    const N: usize = 16;
    const HOSTS: usize = 1000;
    let g = Graph::star_forest(&[2, 1])?;
    let bound = extremal::tot_star_forest_bound(N as u64, &[2, 1])? as usize;
    let classes = patterns::enumerate_pattern_classes(&g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut failures = 0;
    let mut rejected = 0;
    let mut accepted = 0;
    while accepted < HOSTS {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Incomplete);
        }
        let host = random_host(N, &mut rng);
        if host.min_colour_count() <= bound {
            rejected += 1;
            continue;
        }
        accepted += 1;
        for class in &classes {
            let target = &class.representative;
            let ok = match embed::greedy_star_forest_embed(&host, target) {
                Ok(e) => e.validate(&host, target).is_ok() && embed::find_embedding(&host, target)?.is_some(),
                Err(_) => false,
            };
            if !ok {
                failures += 1;
            }
        }
    }
    Ok((
        failures == 0 && classes.len() == 6,
        format!(
            "{accepted} hosts (min > {bound}, {rejected} rejected) x {} classes: {failures} failures",
            classes.len()
        ),
    ))
}

fn claim_embedding_oracle(config: &VerifyConfig, deadline: Option<Instant>) -> Result<(bool, String)> {
    const HOSTS: usize = 500;
    let patterns = oracles::coloured_patterns(4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let mut pairs = 0u64;
    let mut disagreements = 0u64;
    for _ in 0..HOSTS {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Incomplete);
        }
        let n = rng.random_range(1..=5);
        let host = random_host(n, &mut rng);
        for p in patterns.iter().filter(|p| p.order() <= n) {
            pairs += 1;
            let fast = embed::find_embedding(&host, p)?;
            let slow = oracles::naive_embedding_exists(&host, p);
            let valid = fast.as_ref().is_none_or(|e| e.validate(&host, p).is_ok());
            if fast.is_some() != slow || !valid {
                disagreements += 1;
            }
        }
    }
    Ok((
        disagreements == 0,
        format!("{pairs} (host, pattern) pairs, {disagreements} disagreements"),
    ))
}

fn claim_class_counts(_: &VerifyConfig, _: Option<Instant>) -> Result<(bool, String)> {
    let mut ok = true;
    let mut checked = 0;
    for g in catalogue::catalogue(5)? {
        let classes = patterns::enumerate_pattern_classes(&g)?;
        let burnside = patterns::burnside_class_count(&g)?;
        let orbit_total: u64 = classes.iter().map(|c| c.orbit_size).sum();
        ok &= classes.len() as u64 == burnside && orbit_total == 1 << g.edge_count();
        checked += 1;
    }
    let named: Vec<(String, usize)> = [
        ("P4", Graph::path(4)),
        ("K3", Graph::complete(3)),
        ("K_{1,3}", Graph::star(3)),
    ]
    .into_iter()
    .map(|(name, g)| Ok((name.to_string(), patterns::enumerate_pattern_classes(&g)?.len())))
    .collect::<Result<_>>()?;
    ok &= named.iter().map(|(_, c)| *c).eq([6, 4, 4]);
    Ok((ok, format!("{checked} graphs match Burnside; {named:?}")))
}

/// Brute-force references kept independent of the search code they check.
pub mod oracles {
    use super::*;

    /// All `(n, r)` with `2 <= r < n <= limit` and `r(r-1)/2 = n(n-1)/4`, by direct scan.
    pub fn balanced_orders(limit: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for n in 2..=limit {
            let target = n * (n - 1);
            // 2r(r-1) is increasing in r
            for r in 2..n {
                let lhs = 2 * r * (r - 1);
                if lhs == target {
                    out.push((n, r));
                }
                if lhs >= target {
                    break;
                }
            }
        }
        out
    }

    /// Tries every injective map from pattern vertices into the host.
    pub fn naive_embedding_exists(host: &ColouredHost, p: &PatternColouring) -> bool {
        fn go(host: &ColouredHost, p: &PatternColouring, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
            if map.len() == p.order() {
                return p.coloured_edges().all(|(u, v, c)| host.colour(map[u], map[v]) == c);
            }
            for h in 0..host.order() {
                if used[h] {
                    continue;
                }
                used[h] = true;
                map.push(h);
                let found = go(host, p, map, used);
                map.pop();
                used[h] = false;
                if found {
                    return true;
                }
            }
            false
        }
        p.order() <= host.order() && go(host, p, &mut Vec::new(), &mut vec![false; host.order()])
    }

    /// Every labelled graph on `1..=max_n` vertices up to isomorphism, in every colouring.
    pub fn coloured_patterns(max_n: usize) -> Result<Vec<PatternColouring>> {
        let mut out = Vec::new();
        for g in catalogue::catalogue(max_n)? {
            for mask in 0..1u64 << g.edge_count() {
                out.push(PatternColouring::from_blue_mask(g.clone(), mask));
            }
        }
        Ok(out)
    }

    /// Naive embedding used where an explicit map is wanted.
    pub fn naive_embedding(host: &ColouredHost, p: &PatternColouring) -> Option<Embedding> {
        let n = host.order();
        let k = p.order();
        if k > n {
            return None;
        }
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let map = &idx[..k];
            if p.coloured_edges().all(|(u, v, c)| host.colour(map[u], map[v]) == c) {
                return Some(Embedding::new(map.to_vec()));
            }
            if !patterns::next_permutation(&mut idx) {
                return None;
            }
        }
    }
}
