//! Colour-exact (non-induced) containment of coloured patterns in hosts.

use serde::Serialize;

use crate::bits::{self, Ones};
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredHost, Graph, PatternColouring, Tone};
use crate::patterns::{self, PatternClass};

/// Injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }

    /// `map()[v]` is the host vertex carrying pattern vertex `v`.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Checks injectivity, range, and that every pattern edge lands on a host
    /// edge of the same colour.
    pub fn validate(&self, host: &ColouredHost, pattern: &PatternColouring) -> Result<()> {
        if self.map.len() != pattern.order() {
            return Err(Error::invalid(format!(
                "map covers {} vertices, pattern has {}",
                self.map.len(),
                pattern.order()
            )));
        }
        let mut used = vec![false; host.order()];
        for (v, &h) in self.map.iter().enumerate() {
            if h >= host.order() {
                return Err(Error::invalid(format!("vertex {v} mapped outside the host")));
            }
            if std::mem::replace(&mut used[h], true) {
                return Err(Error::invalid(format!("host vertex {h} used twice")));
            }
        }
        for (u, v, c) in pattern.coloured_edges() {
            let got = host.colour(self.map[u], self.map[v]);
            if got != c {
                return Err(Error::invalid(format!(
                    "pattern edge {{{u},{v}}} is {c} but host edge {{{},{}}} is {got}",
                    self.map[u], self.map[v]
                )));
            }
        }
        Ok(())
    }
}

/// A pattern prepared for repeated searches.
///
/// Vertices are placed in decreasing-degree order, preferring at each step a
/// vertex with the most already-placed neighbours.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPattern {
    order: Vec<usize>,
    /// Step `k`: (earlier step, colour of the edge to it).
    constraints: Vec<Vec<(usize, Colour)>>,
    /// Step `k`: red and blue edges still to be placed towards later steps.
    later: Vec<(usize, usize)>,
    tone: Tone,
}

impl CompiledPattern {
    pub(crate) fn new(p: &PatternColouring) -> Self {
        let g = p.graph();
        let n = g.order();
        let mut placed = vec![false; n];
        let mut step_of = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let attached = g.neighbours(v).filter(|&w| placed[w]).count();
                    (attached, g.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            placed[v] = true;
            step_of[v] = order.len();
            order.push(v);
        }
        let mut constraints = Vec::with_capacity(n);
        let mut later = Vec::with_capacity(n);
        for (k, &v) in order.iter().enumerate() {
            let mut before = Vec::new();
            let (mut red, mut blue) = (0, 0);
            for w in g.neighbours(v) {
                let c = p.colour_of(v, w).expect("edge");
                if step_of[w] < k {
                    before.push((step_of[w], c));
                } else {
                    match c {
                        Colour::Red => red += 1,
                        Colour::Blue => blue += 1,
                    }
                }
            }
            constraints.push(before);
            later.push((red, blue));
        }
        CompiledPattern {
            order,
            constraints,
            later,
            tone: p.tone(),
        }
    }

    fn steps(&self) -> usize {
        self.order.len()
    }
}

/// Reusable buffers for [`Matcher::find`].
#[derive(Default)]
pub(crate) struct Matcher {
    words: usize,
    candidates: Vec<u64>,
    unused: Vec<u64>,
    images: Vec<usize>,
}

impl Matcher {
    /// Searches for `plan` in `host`; on success the images per step are left
    /// in `self.images`.
    pub(crate) fn find(&mut self, host: &ColouredHost, plan: &CompiledPattern) -> bool {
        let n = host.order();
        if plan.steps() > n || plan.tone.red > host.red_count() || plan.tone.blue > host.blue_count() {
            return false;
        }
        self.words = host.words();
        self.candidates.resize(plan.steps() * self.words, 0);
        self.unused.resize(self.words, 0);
        bits::fill_prefix(&mut self.unused, n);
        self.images.resize(plan.steps(), 0);
        self.extend(host, plan, 0)
    }

    fn extend(&mut self, host: &ColouredHost, plan: &CompiledPattern, k: usize) -> bool {
        if k == plan.steps() {
            return true;
        }
        let w = self.words;
        let (need_red, need_blue) = plan.later[k];
        let cand = &mut self.candidates[k * w..(k + 1) * w];
        cand.copy_from_slice(&self.unused);
        for &(j, colour) in &plan.constraints[k] {
            for (c, r) in cand.iter_mut().zip(host.row(self.images[j], colour)) {
                *c &= r;
            }
        }
        for wi in 0..w {
            let mut word = self.candidates[k * w + wi];
            while word != 0 {
                let v = wi * bits::WORD_BITS + word.trailing_zeros() as usize;
                word &= word - 1;
                if need_red > 0 && count_and(host.row(v, Colour::Red), &self.unused) < need_red {
                    continue;
                }
                if need_blue > 0 && count_and(host.row(v, Colour::Blue), &self.unused) < need_blue {
                    continue;
                }
                bits::clear_bit(&mut self.unused, v);
                self.images[k] = v;
                if self.extend(host, plan, k + 1) {
                    return true;
                }
                bits::set_bit(&mut self.unused, v);
            }
        }
        false
    }

    pub(crate) fn embedding(&self, plan: &CompiledPattern) -> Embedding {
        let mut map = vec![0; plan.steps()];
        for (k, &v) in plan.order.iter().enumerate() {
            map[v] = self.images[k];
        }
        Embedding::new(map)
    }
}

#[inline]
fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Finds a copy of `pattern` in `host` with every edge colour matched.
pub fn find_embedding(host: &ColouredHost, pattern: &PatternColouring) -> Result<Option<Embedding>> {
    if pattern.order() > host.order() {
        return Err(Error::invalid(format!(
            "pattern has {} vertices but the host only {}",
            pattern.order(),
            host.order()
        )));
    }
    let plan = CompiledPattern::new(pattern);
    let mut m = Matcher::default();
    Ok(m.find(host, &plan).then(|| m.embedding(&plan)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverageLevel {
    Tone,
    Class,
}

impl std::str::FromStr for CoverageLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tone" => Ok(CoverageLevel::Tone),
            "class" => Ok(CoverageLevel::Class),
            other => Err(Error::invalid(format!("unknown coverage level {other:?}"))),
        }
    }
}

/// One coverage target and, if found, the class and embedding that covered it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageEntry {
    pub tone: Tone,
    /// Class id for class-level targets; for tone-level targets, the class
    /// whose representative was found.
    pub class_id: Option<usize>,
    pub embedding: Option<Embedding>,
}

impl CoverageEntry {
    pub fn found(&self) -> bool {
        self.embedding.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub level: CoverageLevel,
    pub entries: Vec<CoverageEntry>,
}

impl CoverageReport {
    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(CoverageEntry::found)
    }

    pub fn missing(&self) -> impl Iterator<Item = &CoverageEntry> {
        self.entries.iter().filter(|e| !e.found())
    }

    pub fn missing_tones(&self) -> Vec<Tone> {
        self.missing().map(|e| e.tone).collect()
    }

    pub fn missing_classes(&self) -> Vec<usize> {
        self.missing().filter_map(|e| e.class_id).collect()
    }
}

fn check_coverage_args(host: &ColouredHost, g: &Graph) -> Result<()> {
    if g.edge_count() == 0 {
        return Err(Error::invalid("coverage needs a pattern graph with at least one edge"));
    }
    if g.order() > host.order() {
        return Err(Error::invalid(format!(
            "pattern has {} vertices but the host only {}",
            g.order(),
            host.order()
        )));
    }
    Ok(())
}

/// Class-level targets grouped by tone, red count descending.
pub(crate) fn classes_by_tone(classes: &[PatternClass], edges: usize) -> Vec<(Tone, Vec<&PatternClass>)> {
    Tone::all(edges)
        .map(|t| (t, classes.iter().filter(|c| c.tone == t).collect()))
        .collect()
}

/// For each tone `(r, b)` with `r + b = e(G)`, whether some colouring of `G`
/// with that tone embeds in `host`.
pub fn tone_coverage(host: &ColouredHost, g: &Graph) -> Result<CoverageReport> {
    check_coverage_args(host, g)?;
    let classes = patterns::enumerate_pattern_classes(g)?;
    let mut m = Matcher::default();
    let entries = classes_by_tone(&classes, g.edge_count())
        .into_iter()
        .map(|(tone, group)| {
            let hit = group.iter().find_map(|c| {
                let plan = CompiledPattern::new(&c.representative);
                m.find(host, &plan).then(|| (c.id, m.embedding(&plan)))
            });
            CoverageEntry {
                tone,
                class_id: hit.as_ref().map(|h| h.0),
                embedding: hit.map(|h| h.1),
            }
        })
        .collect();
    Ok(CoverageReport {
        level: CoverageLevel::Tone,
        entries,
    })
}

/// Whether the representative of every colour class of `G` embeds in `host`.
pub fn class_coverage(host: &ColouredHost, g: &Graph) -> Result<CoverageReport> {
    check_coverage_args(host, g)?;
    let classes = patterns::enumerate_pattern_classes(g)?;
    let mut m = Matcher::default();
    let entries = classes
        .iter()
        .map(|c| {
            let plan = CompiledPattern::new(&c.representative);
            CoverageEntry {
                tone: c.tone,
                class_id: Some(c.id),
                embedding: m.find(host, &plan).then(|| m.embedding(&plan)),
            }
        })
        .collect();
    Ok(CoverageReport {
        level: CoverageLevel::Class,
        entries,
    })
}

pub fn coverage(host: &ColouredHost, g: &Graph, level: CoverageLevel) -> Result<CoverageReport> {
    match level {
        CoverageLevel::Tone => tone_coverage(host, g),
        CoverageLevel::Class => class_coverage(host, g),
    }
}

/// A star of the target: centre, then its leaves split by colour.
#[derive(Clone, Debug)]
struct TargetStar {
    centre: usize,
    red_leaves: Vec<usize>,
    blue_leaves: Vec<usize>,
}

impl TargetStar {
    fn size(&self) -> usize {
        self.red_leaves.len() + self.blue_leaves.len()
    }
}

fn decompose_star_forest(target: &PatternColouring) -> Result<(Vec<TargetStar>, Vec<usize>)> {
    let g = target.graph();
    if !patterns::is_star_forest(g) {
        return Err(Error::invalid("target graph is not a star forest"));
    }
    let mut stars = Vec::new();
    let mut isolated = Vec::new();
    for comp in g.components() {
        match comp.len() {
            1 => isolated.push(comp[0]),
            k => {
                let centre = *comp
                    .iter()
                    .find(|&&v| g.degree(v) == k - 1)
                    .expect("star component has a centre");
                let mut star = TargetStar {
                    centre,
                    red_leaves: Vec::new(),
                    blue_leaves: Vec::new(),
                };
                for leaf in g.neighbours(centre) {
                    match target.colour_of(centre, leaf).expect("edge") {
                        Colour::Red => star.red_leaves.push(leaf),
                        Colour::Blue => star.blue_leaves.push(leaf),
                    }
                }
                stars.push(star);
            }
        }
    }
    Ok((stars, isolated))
}

/// Red and blue edge counts of the host restricted to `alive`.
fn alive_counts(host: &ColouredHost, alive: &[u64]) -> (usize, usize) {
    let (mut red, mut blue) = (0, 0);
    for v in Ones::new(alive) {
        red += count_and(host.row(v, Colour::Red), alive);
        blue += count_and(host.row(v, Colour::Blue), alive);
    }
    (red / 2, blue / 2)
}

/// Star-forest feasibility: `n >= 4(sum p + q - 1)` and the colour threshold
/// `(sum p + q - 2) n` (the bound itself is returned).
fn star_forest_threshold(n: usize, part_sum: usize, q: usize) -> Result<usize> {
    let need = 4 * (part_sum + q - 1);
    if n < need {
        return Err(Error::Domain(format!(
            "host order n = {n} is below 4(p_1+...+p_q+q-1) = {need}"
        )));
    }
    Ok((part_sum + q - 2) * n)
}

/// Embeds a coloured star forest one star at a time, smallest star first.
///
/// Each star gets the feasible host centre with the largest
/// `min(red-degree, blue-degree)` among the remaining vertices (lowest index on
/// ties); red leaves take the lowest-indexed remaining red neighbours, then blue
/// leaves likewise. The star's vertices are then deleted and the remaining
/// forest embedded in what is left.
///
/// Preconditions: `n >= 4(sum p + q - 1)` and `min{|R|,|B|} > (sum p + q - 2) n`.
/// Under them the construction cannot fail; an `Internal` error means a bug.
pub fn greedy_star_forest_embed(host: &ColouredHost, target: &PatternColouring) -> Result<Embedding> {
    let (mut stars, isolated) = decompose_star_forest(target)?;
    if stars.is_empty() {
        return Err(Error::invalid("target star forest has no edges"));
    }
    if target.order() > host.order() {
        return Err(Error::invalid(format!(
            "pattern has {} vertices but the host only {}",
            target.order(),
            host.order()
        )));
    }
    let n = host.order();
    let part_sum: usize = stars.iter().map(TargetStar::size).sum();
    let threshold = star_forest_threshold(n, part_sum, stars.len())?;
    if host.min_colour_count() <= threshold {
        return Err(Error::Domain(format!(
            "min{{|R|,|B|}} = {} is not above (p_1+...+p_q+q-2)n = {threshold}",
            host.min_colour_count()
        )));
    }

    // smallest star first; stable so equal sizes keep component order
    stars.sort_by_key(TargetStar::size);
    let mut alive = vec![0u64; host.words()];
    bits::fill_prefix(&mut alive, n);
    let mut map = vec![usize::MAX; target.order()];
    let mut remaining_sum = part_sum;
    let (mut red_left, mut blue_left) = (host.red_count(), host.blue_count());

    for (i, star) in stars.iter().enumerate() {
        let alive_n = bits::count(&alive);
        let (need_red, need_blue) = (star.red_leaves.len(), star.blue_leaves.len());
        let centre = Ones::new(&alive)
            .filter_map(|v| {
                let rd = count_and(host.row(v, Colour::Red), &alive);
                let bd = count_and(host.row(v, Colour::Blue), &alive);
                (rd >= need_red && bd >= need_blue).then_some((v, rd.min(bd)))
            })
            .fold(None, |best: Option<(usize, usize)>, (v, score)| match best {
                Some((_, s)) if s >= score => best,
                _ => Some((v, score)),
            })
            .map(|(v, _)| v)
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no centre with {need_red} red and {need_blue} blue edges among {alive_n} \
                     remaining vertices (star {i})"
                ))
            })?;
        map[star.centre] = centre;
        bits::clear_bit(&mut alive, centre);
        for (leaves, colour) in [(&star.red_leaves, Colour::Red), (&star.blue_leaves, Colour::Blue)] {
            let mut pool = Ones::new(host.row(centre, colour)).filter(|&v| bits::test_bit(&alive, v));
            let picked: Vec<usize> = pool.by_ref().take(leaves.len()).collect();
            for (&leaf, &v) in leaves.iter().zip(&picked) {
                map[leaf] = v;
            }
            for v in picked {
                bits::clear_bit(&mut alive, v);
            }
        }

        // The deletion removes at most C(p+1, 2) + (p+1)(n - p - 1) edges of
        // each colour, and the remaining forest must again meet its preconditions.
        let p = star.size();
        let removed_bound = (p + 1) * p / 2 + (p + 1) * (alive_n - p - 1);
        let (red_now, blue_now) = alive_counts(host, &alive);
        if red_left - red_now > removed_bound || blue_left - blue_now > removed_bound {
            return Err(Error::Internal(format!(
                "deleting star {i} removed more than {removed_bound} edges of one colour"
            )));
        }
        (red_left, blue_left) = (red_now, blue_now);
        remaining_sum -= p;
        let q_left = stars.len() - i - 1;
        if q_left > 0 {
            let n_left = bits::count(&alive);
            let bound = star_forest_threshold(n_left, remaining_sum, q_left)
                .map_err(|e| Error::Internal(format!("after star {i}: {e}")))?;
            if red_now.min(blue_now) <= bound {
                return Err(Error::Internal(format!(
                    "after star {i}: min{{|R|,|B|}} = {} on {n_left} vertices is not above {bound}",
                    red_now.min(blue_now)
                )));
            }
        }
    }
    let mut free = Ones::new(&alive);
    for v in isolated {
        map[v] = free
            .next()
            .ok_or_else(|| Error::invalid("host too small for isolated vertices"))?;
    }
    let embedding = Embedding::new(map);
    embedding
        .validate(host, target)
        .map_err(|e| Error::Internal(format!("greedy embedding is invalid: {e}")))?;
    Ok(embedding)
}
