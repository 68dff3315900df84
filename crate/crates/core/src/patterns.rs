//! Colour-preserving isomorphism and the classes of 2-colourings of a graph.
//!
//! Everything here is brute force over vertex permutations and is guarded to
//! graphs on at most [`MAX_VERTICES`] vertices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Colour, Graph, PatternColouring, Tone};

/// Vertex guard for permutation searches.
pub const MAX_VERTICES: usize = 10;
/// Edge guard for enumerating all `2^e` colourings.
pub const MAX_CLASS_EDGES: usize = 20;

fn guard_vertices(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::SizeLimit {
            guard: "brute-force permutation search: vertices <= 10",
            limit: MAX_VERTICES,
            actual: n,
        });
    }
    Ok(())
}

fn guard_edges(e: usize) -> Result<()> {
    if e > MAX_CLASS_EDGES {
        return Err(Error::SizeLimit {
            guard: "colouring enumeration: edges <= 20",
            limit: MAX_CLASS_EDGES,
            actual: e,
        });
    }
    Ok(())
}

/// A bijection of `0..n`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexPermutation(Vec<usize>);

impl VertexPermutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(VertexPermutation(images))
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation((0..n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    /// `self` after `other`: `v -> self(other(v))`.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        VertexPermutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &i) in self.0.iter().enumerate() {
            inv[i] = v;
        }
        VertexPermutation(inv)
    }

    /// Permutation induced on `g`'s edge indices; `g` must be invariant under `self`.
    pub fn on_edges(&self, g: &Graph) -> Vec<usize> {
        g.edges()
            .iter()
            .map(|&(u, v)| {
                g.edge_index(self.0[u], self.0[v])
                    .expect("permutation is an automorphism")
            })
            .collect()
    }
}

/// All automorphisms of `g`, in lexicographic order of their image arrays.
pub fn automorphisms(g: &Graph) -> Result<Vec<VertexPermutation>> {
    let n = g.order();
    guard_vertices(n)?;
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_automorphism(g, 0, &mut image, &mut used, &mut out);
    Ok(out)
}

fn extend_automorphism(g: &Graph, v: usize, image: &mut [usize], used: &mut [bool], out: &mut Vec<VertexPermutation>) {
    let n = g.order();
    if v == n {
        out.push(VertexPermutation(image.to_vec()));
        return;
    }
    for w in 0..n {
        if used[w] || g.degree(w) != g.degree(v) {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(image[u], w)) {
            continue;
        }
        image[v] = w;
        used[w] = true;
        extend_automorphism(g, v + 1, image, used, out);
        used[w] = false;
    }
}

/// Minimal colour-adjacency code of a coloured graph over all relabellings.
///
/// Pairs are read column by column, `(0,1), (0,2), (1,2), (0,3), ...`, each as
/// 0 (no edge), 1 (red) or 2 (blue). Two colourings are equivalent iff their
/// codes are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalCode {
    pub order: usize,
    pub code: Vec<u8>,
}

fn pair_value(p: &PatternColouring, u: usize, v: usize) -> u8 {
    match p.colour_of(u, v) {
        None => 0,
        Some(Colour::Red) => 1,
        Some(Colour::Blue) => 2,
    }
}

pub fn canonical_code(p: &PatternColouring) -> Result<CanonicalCode> {
    let n = p.order();
    guard_vertices(n)?;
    let mut matrix = vec![0u8; n * n];
    for (u, v, _) in p.coloured_edges() {
        let value = pair_value(p, u, v);
        matrix[u * n + v] = value;
        matrix[v * n + u] = value;
    }
    let mut search = CodeSearch {
        n,
        matrix,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        prefix: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.run();
    Ok(CanonicalCode {
        order: n,
        code: search.best.unwrap_or_default(),
    })
}

struct CodeSearch {
    n: usize,
    matrix: Vec<u8>,
    /// `order[k]` is the original vertex receiving new label `k`.
    order: Vec<usize>,
    used: Vec<bool>,
    prefix: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl CodeSearch {
    fn run(&mut self) {
        let k = self.order.len();
        if k == self.n {
            if self.best.as_ref().is_none_or(|b| self.prefix < *b) {
                self.best = Some(self.prefix.clone());
            }
            return;
        }
        let start = self.prefix.len();
        for v in 0..self.n {
            if self.used[v] {
                continue;
            }
            for &u in &self.order {
                self.prefix.push(self.matrix[u * self.n + v]);
            }
            // The best code may have changed inside an earlier sibling, so
            // the whole prefix is compared, not just the new column.
            let prune = self
                .best
                .as_ref()
                .is_some_and(|b| self.prefix[..] > b[..self.prefix.len()]);
            if !prune {
                self.order.push(v);
                self.used[v] = true;
                self.run();
                self.used[v] = false;
                self.order.pop();
            }
            self.prefix.truncate(start);
        }
    }
}

/// Code of an uncoloured graph (every edge treated as red).
pub fn graph_code(g: &Graph) -> Result<CanonicalCode> {
    canonical_code(&PatternColouring::monochrome(g.clone(), Colour::Red))
}

/// True iff some isomorphism of the underlying graphs preserves every edge colour.
pub fn patterns_equivalent(a: &PatternColouring, b: &PatternColouring) -> Result<bool> {
    guard_vertices(a.order())?;
    guard_vertices(b.order())?;
    if a.order() != b.order() || a.graph().edge_count() != b.graph().edge_count() || a.tone() != b.tone() {
        return Ok(false);
    }
    Ok(canonical_code(a)? == canonical_code(b)?)
}

/// One orbit of edge colourings under the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternClass {
    /// Position in the deterministic class order.
    pub id: usize,
    pub tone: Tone,
    /// Number of labelled colourings in the orbit.
    pub orbit_size: u64,
    /// Bit `i` set iff edge `i` of the representative is blue.
    pub blue_mask: u64,
    #[serde(skip)]
    pub representative: PatternColouring,
}

fn reverse_low_bits(x: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - width)
    }
}

/// The classes of 2-colourings of `g` under colour-preserving isomorphism.
///
/// Ordered by red count descending, then by representative. Each
/// representative is the lexicographically least colour vector (red before
/// blue, in edge order) of its orbit.
pub fn enumerate_pattern_classes(g: &Graph) -> Result<Vec<PatternClass>> {
    guard_vertices(g.order())?;
    let e = g.edge_count();
    guard_edges(e)?;
    let edge_perms: Vec<Vec<usize>> = automorphisms(g)?.iter().map(|a| a.on_edges(g)).collect();

    let total = 1u64 << e;
    let mut visited = vec![false; total as usize];
    let mut classes = Vec::new();
    let mut orbit = Vec::with_capacity(edge_perms.len());
    for rank in 0..total {
        // edge 0 is the most significant position of the colour vector
        let mask = reverse_low_bits(rank, e);
        if visited[mask as usize] {
            continue;
        }
        orbit.clear();
        for perm in &edge_perms {
            let mut image = 0u64;
            for (i, &j) in perm.iter().enumerate() {
                image |= (mask >> i & 1) << j;
            }
            orbit.push(image);
        }
        orbit.sort_unstable();
        orbit.dedup();
        for &m in &orbit {
            visited[m as usize] = true;
        }
        let representative = PatternColouring::from_blue_mask(g.clone(), mask);
        classes.push(PatternClass {
            id: 0,
            tone: representative.tone(),
            orbit_size: orbit.len() as u64,
            blue_mask: mask,
            representative,
        });
    }
    classes.sort_by_key(|c| std::cmp::Reverse(c.tone.red));
    for (i, c) in classes.iter_mut().enumerate() {
        c.id = i;
    }
    Ok(classes)
}

/// Class count by Burnside's lemma, `(1/|Aut|) * sum 2^{cycles on edges}`.
///
/// Recomputes the group by testing every one of the `n!` permutations, so it
/// shares nothing with [`enumerate_pattern_classes`] beyond the graph type.
pub fn burnside_class_count(g: &Graph) -> Result<u64> {
    let n = g.order();
    guard_vertices(n)?;
    guard_edges(g.edge_count())?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut group = 0u64;
    let mut fixed_sum = 0u64;
    loop {
        if g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v])) {
            group += 1;
            fixed_sum += 1 << edge_cycles(g, &perm);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    debug_assert_eq!(fixed_sum % group, 0);
    Ok(fixed_sum / group)
}

fn edge_cycles(g: &Graph, perm: &[usize]) -> u32 {
    let edges = g.edges();
    let mut seen = vec![false; edges.len()];
    let mut cycles = 0;
    for start in 0..edges.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            let (u, v) = edges[i];
            i = g.edge_index(perm[u], perm[v]).expect("automorphism");
        }
    }
    cycles
}

/// Advances to the next permutation in lexicographic order.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// True iff every component is a star (`K_1` and `K_2` included).
pub fn is_star_forest(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let k = comp.len();
        edges + 1 == k && (k <= 2 || comp.iter().any(|&v| g.degree(v) == k - 1))
    })
}

/// An `(e-1, 1)`-colouring of `g` that no red-clique colouring contains, or
/// `None` when `g` is a star forest.
///
/// If `g` has a triangle, one triangle edge is blue; otherwise the middle edge
/// of a `P4` is blue. Everything else is red.
pub fn witness_pattern(g: &Graph) -> Result<Option<PatternColouring>> {
    if g.edge_count() == 0 {
        return Err(Error::invalid("witness pattern needs at least one edge"));
    }
    if is_star_forest(g) {
        return Ok(None);
    }
    let blue = find_triangle_edge(g)
        .or_else(|| find_p4(g).map(|[_, b, c, _]| (b.min(c), b.max(c))))
        .ok_or_else(|| Error::Internal("graph is not a star forest but has neither K3 nor P4".into()))?;
    Ok(Some(PatternColouring::from_fn(g.clone(), |u, v| {
        if (u, v) == blue {
            Colour::Blue
        } else {
            Colour::Red
        }
    })))
}

/// First edge `(u, v)` in lexicographic order lying in a triangle.
fn find_triangle_edge(g: &Graph) -> Option<(usize, usize)> {
    g.edges().iter().copied().find(|&(u, v)| {
        g.adjacency_row(u)
            .iter()
            .zip(g.adjacency_row(v))
            .any(|(a, b)| a & b != 0)
    })
}

/// A path `a-b-c-d` on four distinct vertices, scanning middle edges in order.
pub fn find_p4(g: &Graph) -> Option<[usize; 4]> {
    g.edges().iter().find_map(|&(b, c)| {
        for a in g.neighbours(b).filter(|&a| a != c) {
            if let Some(d) = g.neighbours(c).find(|&d| d != b && d != a) {
                return Some([a, b, c, d]);
            }
        }
        None
    })
}
