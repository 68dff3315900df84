//! Simple graphs, edge colourings and coloured complete hosts.
//!
//! Vertices are `0..n`. Edges are stored once as `(u, v)` with `u < v`, sorted
//! lexicographically, alongside a bit-matrix adjacency used by the searches.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{self, BitMatrix, Ones};
use crate::error::{Error, Result};

pub type Edge = (usize, usize);

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    edges: Vec<Edge>,
    adj: BitMatrix,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            edges: Vec::new(),
            adj: BitMatrix::new(n),
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut adj = BitMatrix::new(n);
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge {{{u},{v}}} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            if adj.get(u, v) {
                return Err(Error::invalid(format!("duplicate edge {{{u},{v}}}")));
            }
            adj.set_pair(u, v);
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        Ok(Graph { edges: list, adj })
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph edges are valid")
    }

    /// Path on `n` vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("a cycle needs at least 3 vertices"));
        }
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// The star `K_{1,p}` with centre 0.
    pub fn star(p: usize) -> Self {
        Self::from_edges(p + 1, (1..=p).map(|v| (0, v))).expect("star edges are valid")
    }

    /// Disjoint union of stars `K_{1,p_1}, ..., K_{1,p_q}`.
    ///
    /// Star `j` occupies a contiguous vertex block whose first vertex is the centre.
    pub fn star_forest(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("star forest needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::invalid("star sizes must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("star sizes must be sorted non-increasing"));
        }
        let n = parts.iter().map(|p| p + 1).sum();
        let mut edges = Vec::new();
        let mut base = 0;
        for &p in parts {
            edges.extend((1..=p).map(|leaf| (base, base + leaf)));
            base += p + 1;
        }
        Self::from_edges(n, edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.order()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj.get(u, v)
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj.degree(v)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        Ones::new(self.adj.row(v))
    }

    pub(crate) fn adjacency_row(&self, v: usize) -> &[u64] {
        self.adj.row(v)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for w in self.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Graph::from_edges(self.order(), self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabelling by a permutation preserves validity")
    }

    /// Disjoint union; `other`'s vertices are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        Graph::from_edges(
            shift + other.order(),
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift))),
        )
        .expect("disjoint union of valid graphs is valid")
    }
}

/// Edge colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Colour {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Colour {
    pub fn swapped(self) -> Colour {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    pub fn token(self) -> char {
        match self {
            Colour::Red => 'R',
            Colour::Blue => 'B',
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// Split of an edge count into red and blue edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tone {
    pub red: usize,
    pub blue: usize,
}

impl Tone {
    pub fn new(red: usize, blue: usize) -> Self {
        Tone { red, blue }
    }

    pub fn swapped(self) -> Tone {
        Tone::new(self.blue, self.red)
    }

    /// Every tone of a graph with `edges` edges, red count descending.
    pub fn all(edges: usize) -> impl Iterator<Item = Tone> {
        (0..=edges).rev().map(move |r| Tone::new(r, edges - r))
    }
}

impl fmt::Display for Tone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.red, self.blue)
    }
}

/// A graph with a red/blue label on every edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternColouring {
    graph: Graph,
    colours: Vec<Colour>,
    tone: Tone,
}

impl PatternColouring {
    /// `colours[i]` colours `graph.edges()[i]`.
    pub fn new(graph: Graph, colours: Vec<Colour>) -> Result<Self> {
        if colours.len() != graph.edge_count() {
            return Err(Error::invalid(format!(
                "{} colours given for {} edges",
                colours.len(),
                graph.edge_count()
            )));
        }
        let red = colours.iter().filter(|&&c| c == Colour::Red).count();
        let tone = Tone::new(red, colours.len() - red);
        Ok(PatternColouring { graph, colours, tone })
    }

    pub fn from_fn(graph: Graph, mut f: impl FnMut(usize, usize) -> Colour) -> Self {
        let colours = graph.edges().iter().map(|&(u, v)| f(u, v)).collect();
        Self::new(graph, colours).expect("one colour per edge")
    }

    pub fn monochrome(graph: Graph, colour: Colour) -> Self {
        Self::from_fn(graph, |_, _| colour)
    }

    /// Colouring whose bit `i` of `blue_mask` marks edge `i` blue.
    pub fn from_blue_mask(graph: Graph, blue_mask: u64) -> Self {
        let colours = (0..graph.edge_count())
            .map(|i| {
                if blue_mask >> i & 1 == 1 {
                    Colour::Blue
                } else {
                    Colour::Red
                }
            })
            .collect();
        Self::new(graph, colours).expect("one colour per edge")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn tone(&self) -> Tone {
        self.tone
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn colour_of(&self, u: usize, v: usize) -> Option<Colour> {
        self.graph.edge_index(u, v).map(|i| self.colours[i])
    }

    /// `(u, v, colour)` for every edge, lexicographic.
    pub fn coloured_edges(&self) -> impl Iterator<Item = (usize, usize, Colour)> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.colours)
            .map(|(&(u, v), &c)| (u, v, c))
    }

    /// Number of edges at `v` of the given colour.
    pub fn colour_degree(&self, v: usize, colour: Colour) -> usize {
        self.coloured_edges()
            .filter(|&(a, b, c)| c == colour && (a == v || b == v))
            .count()
    }

    pub fn swapped(&self) -> PatternColouring {
        PatternColouring {
            graph: self.graph.clone(),
            colours: self.colours.iter().map(|c| c.swapped()).collect(),
            tone: self.tone.swapped(),
        }
    }

    pub fn relabel(&self, perm: &[usize]) -> PatternColouring {
        let mut inverse = vec![0; perm.len()];
        for (v, &image) in perm.iter().enumerate() {
            inverse[image] = v;
        }
        PatternColouring::from_fn(self.graph.relabel(perm), |a, b| {
            self.colour_of(inverse[a], inverse[b]).expect("relabelled edge exists")
        })
    }
}

/// Complete graph `K_n` with every edge coloured.
///
/// Invariant: `red` and `blue` partition the off-diagonal pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredHost {
    red: BitMatrix,
    blue: BitMatrix,
    red_count: usize,
    blue_count: usize,
}

impl ColouredHost {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Colour) -> Self {
        let mut red = BitMatrix::new(n);
        let mut blue = BitMatrix::new(n);
        let mut red_count = 0;
        for u in 0..n {
            for v in u + 1..n {
                match f(u, v) {
                    Colour::Red => {
                        red.set_pair(u, v);
                        red_count += 1;
                    }
                    Colour::Blue => blue.set_pair(u, v),
                }
            }
        }
        ColouredHost {
            red,
            blue,
            red_count,
            blue_count: n * n.saturating_sub(1) / 2 - red_count,
        }
    }

    pub fn monochrome(n: usize, colour: Colour) -> Self {
        Self::from_fn(n, |_, _| colour)
    }

    /// Host whose red graph is `red`; every other pair is blue.
    pub fn from_red_graph(red: &Graph) -> Self {
        Self::from_fn(
            red.order(),
            |u, v| {
                if red.has_edge(u, v) {
                    Colour::Red
                } else {
                    Colour::Blue
                }
            },
        )
    }

    /// Host from the `i`-th edge colouring of `K_n`: bit `i` of `blue_mask` marks
    /// edge `i` (lexicographic order) blue.
    pub fn from_blue_mask(n: usize, blue_mask: u64) -> Self {
        let mut i = 0;
        Self::from_fn(n, |_, _| {
            let c = if blue_mask >> i & 1 == 1 {
                Colour::Blue
            } else {
                Colour::Red
            };
            i += 1;
            c
        })
    }

    /// Recolours in place: edge `pairs[i]` becomes blue iff bit `i` of `blue_mask` is set.
    /// `pairs` must list every pair of the host exactly once.
    pub(crate) fn assign_blue_mask(&mut self, pairs: &[Edge], blue_mask: u64) {
        self.red.clear_all();
        self.blue.clear_all();
        let mut blue = 0;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if blue_mask >> i & 1 == 1 {
                self.blue.set_pair(u, v);
                blue += 1;
            } else {
                self.red.set_pair(u, v);
            }
        }
        self.blue_count = blue;
        self.red_count = pairs.len() - blue;
    }

    /// Interprets a coloured graph as a host; the graph must be complete.
    pub fn from_pattern(p: &PatternColouring) -> Result<Self> {
        let n = p.order();
        if p.graph().edge_count() != n * n.saturating_sub(1) / 2 {
            return Err(Error::invalid(format!(
                "host must colour all {} edges of K_{n}, got {}",
                n * n.saturating_sub(1) / 2,
                p.graph().edge_count()
            )));
        }
        Ok(Self::from_fn(n, |u, v| p.colour_of(u, v).expect("complete")))
    }

    /// The host as a coloured complete graph.
    pub fn to_pattern(&self) -> PatternColouring {
        PatternColouring::from_fn(Graph::complete(self.order()), |u, v| self.colour(u, v))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.red.order()
    }

    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> Colour {
        debug_assert!(u != v);
        if self.red.get(u, v) {
            Colour::Red
        } else {
            Colour::Blue
        }
    }

    pub fn red_count(&self) -> usize {
        self.red_count
    }

    pub fn blue_count(&self) -> usize {
        self.blue_count
    }

    pub fn count(&self, colour: Colour) -> usize {
        match colour {
            Colour::Red => self.red_count,
            Colour::Blue => self.blue_count,
        }
    }

    /// `min{|R|, |B|}`.
    pub fn min_colour_count(&self) -> usize {
        self.red_count.min(self.blue_count)
    }

    pub fn red_degree(&self, v: usize) -> usize {
        self.red.degree(v)
    }

    pub fn blue_degree(&self, v: usize) -> usize {
        self.blue.degree(v)
    }

    pub(crate) fn words(&self) -> usize {
        self.red.words()
    }

    #[inline]
    pub(crate) fn row(&self, v: usize, colour: Colour) -> &[u64] {
        match colour {
            Colour::Red => self.red.row(v),
            Colour::Blue => self.blue.row(v),
        }
    }

    /// Neighbours of `v` joined by an edge of `colour`.
    pub fn neighbours(&self, v: usize, colour: Colour) -> impl Iterator<Item = usize> + '_ {
        Ones::new(self.row(v, colour))
    }

    pub fn swapped(&self) -> ColouredHost {
        ColouredHost {
            red: self.blue.clone(),
            blue: self.red.clone(),
            red_count: self.blue_count,
            blue_count: self.red_count,
        }
    }

    /// Copy with the colour of `{u, v}` reversed.
    pub fn with_flipped(&self, u: usize, v: usize) -> ColouredHost {
        let mut out = self.clone();
        if out.red.get(u, v) {
            out.red.clear_pair(u, v);
            out.blue.set_pair(u, v);
            out.red_count -= 1;
            out.blue_count += 1;
        } else {
            out.blue.clear_pair(u, v);
            out.red.set_pair(u, v);
            out.blue_count -= 1;
            out.red_count += 1;
        }
        out
    }

    /// Recounts both colour classes from the matrices.
    pub fn recount(&self) -> (usize, usize) {
        let n = self.order();
        let red: usize = (0..n).map(|v| self.red.degree(v)).sum();
        let blue: usize = (0..n).map(|v| self.blue.degree(v)).sum();
        (red / 2, blue / 2)
    }

    /// Checks the partition invariant: every off-diagonal pair has exactly one colour.
    pub fn is_well_formed(&self) -> bool {
        let n = self.order();
        let mut full = vec![0u64; self.words()];
        for v in 0..n {
            bits::fill_prefix(&mut full, n);
            bits::clear_bit(&mut full, v);
            let r = self.red.row(v);
            let b = self.blue.row(v);
            let ok = full
                .iter()
                .zip(r.iter().zip(b))
                .all(|(&f, (&r, &b))| r & b == 0 && r | b == f);
            if !ok {
                return false;
            }
        }
        self.recount() == (self.red_count, self.blue_count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_star() {
        let g = Graph::star_forest(&[3]).unwrap();
        assert_eq!((g.order(), g.edge_count()), (4, 3));
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn two_stars() {
        let g = Graph::star_forest(&[2, 1]).unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 3));
        assert_eq!(g.degree_sequence(), vec![2, 1, 1, 1, 1]);
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn matching_forest() {
        let g = Graph::star_forest(&[1, 1]).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges(), &[(0, 1), (2, 3)]);
    }

    #[test]
    fn star_forest_rejects_bad_parts() {
        assert!(matches!(Graph::star_forest(&[]), Err(Error::InvalidArgument(_))));
        assert!(matches!(Graph::star_forest(&[2, 0]), Err(Error::InvalidArgument(_))));
        assert!(matches!(Graph::star_forest(&[1, 2]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn from_edges_rejects_loops_and_duplicates() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn pattern_tone_counts() {
        let p = PatternColouring::new(Graph::path(4), vec![Colour::Red, Colour::Blue, Colour::Red]).unwrap();
        assert_eq!(p.tone(), Tone::new(2, 1));
        assert_eq!(p.swapped().tone(), Tone::new(1, 2));
        assert!(PatternColouring::new(Graph::path(4), vec![Colour::Red]).is_err());
    }

    #[test]
    fn host_counts_and_flip() {
        let h = ColouredHost::monochrome(5, Colour::Red);
        assert_eq!((h.red_count(), h.blue_count()), (10, 0));
        let f = h.with_flipped(1, 3);
        assert_eq!(f.colour(3, 1), Colour::Blue);
        assert_eq!((f.red_count(), f.blue_count()), (9, 1));
        assert!(f.is_well_formed());
        assert_eq!(f.swapped().recount(), (1, 9));
    }

    #[test]
    fn hosts_beyond_one_word() {
        let h = ColouredHost::from_fn(130, |u, v| if (u + v) % 3 == 0 { Colour::Red } else { Colour::Blue });
        assert!(h.is_well_formed());
        assert_eq!(h.red_count() + h.blue_count(), 130 * 129 / 2);
        assert_eq!(h.colour(2, 128), Colour::Blue);
        assert_eq!(h.colour(1, 128), Colour::Red);
    }

    #[test]
    fn pattern_relabel_keeps_colours() {
        let p = PatternColouring::new(Graph::path(4), vec![Colour::Red, Colour::Blue, Colour::Red]).unwrap();
        let q = p.relabel(&[3, 2, 1, 0]);
        assert_eq!(q.colour_of(2, 1), Some(Colour::Blue));
        assert_eq!(q.tone(), p.tone());
    }
}
