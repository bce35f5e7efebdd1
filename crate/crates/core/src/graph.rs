//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! Adjacency is stored as packed bit rows so that neighborhood/subset
//! intersections reduce to word-wise `popcount`. Graphs are immutable once
//! built; every structural operation returns a new graph.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Simple undirected graph with a cached degree sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    degrees: Vec<usize>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// The null graph on `n` vertices (no edges).
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            degrees: vec![0; n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                ));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Builds a graph whose edge set is `{ij : i < j, adjacent(i, j)}`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    fn insert(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            return;
        }
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
        self.degrees[u] += 1;
        self.degrees[v] += 1;
        self.edge_count += 1;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Packed adjacency row of `v`; bit `j` of the row is set iff `vj` is an edge.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    /// Average degree `2|E|/n`; zero for the empty vertex set.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.n as f64
        }
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        match self.degrees.first() {
            None => Some(0),
            Some(&d) if self.degrees.iter().all(|&x| x == d) => Some(d),
            Some(_) => None,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.regular_degree().is_some()
    }

    /// Number of neighbors of `v` inside `set`.
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        debug_assert_eq!(set.universe(), self.n);
        self.row(v)
            .iter()
            .zip(&set.bits)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |i, j| !self.has_edge(i, j))
    }

    /// Line graph with one vertex per edge, numbered in the order of [`Graph::edges`].
    pub fn line_graph(&self) -> Graph {
        self.line_graph_with_edges().0
    }

    /// Line graph together with the edge of `self` that each line-graph vertex stands for.
    pub fn line_graph_with_edges(&self) -> (Graph, Vec<(usize, usize)>) {
        let edges = self.edges();
        let lg = Graph::from_fn(edges.len(), |a, b| {
            let (u1, v1) = edges[a];
            let (u2, v2) = edges[b];
            u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2
        });
        (lg, edges)
    }

    /// Induced subgraph on `vertices`, renumbered in the order given.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.n) {
            return input(format!("vertex {v} outside 0..{}", self.n));
        }
        let mut seen = vec![false; self.n];
        for &v in vertices {
            if std::mem::replace(&mut seen[v], true) {
                return input(format!("vertex {v} listed twice"));
            }
        }
        Ok(Graph::from_fn(vertices.len(), |a, b| {
            self.has_edge(vertices[a], vertices[b])
        }))
    }

    /// `G - v`, with the remaining vertices renumbered preserving order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return input(format!("vertex {v} outside 0..{}", self.n));
        }
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Graphs on zero or one vertex count as connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_of(0).len() == self.n
    }

    /// Vertices reachable from `start`, in BFS order.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = vec![start];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if !std::mem::replace(&mut seen[w], true) {
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.insert(u, v);
        }
        for (u, v) in other.edges() {
            g.insert(u + self.n, v + self.n);
        }
        g
    }

    // Standard families.

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn null(n: usize) -> Graph {
        Graph::empty(n)
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_fn(n, |i, j| j == i + 1)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return input(format!("a cycle needs at least 3 vertices, got {n}"));
        }
        Ok(Graph::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1)))
    }

    /// `K_{p,q}` with the first part on `0..p`.
    pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph> {
        if p == 0 || q == 0 {
            return input(format!("complete bipartite parts must be non-empty, got ({p}, {q})"));
        }
        Ok(Graph::from_fn(p + q, |i, j| i < p && j >= p))
    }

    pub fn petersen() -> Graph {
        // outer 5-cycle 0..5, spokes i -- i+5, inner pentagram on 5..10
        Graph::from_fn(10, |i, j| match (i < 5, j < 5) {
            (true, true) => (j - i) % 5 == 1 || (j - i) % 5 == 4,
            (true, false) => j == i + 5,
            (false, false) => (j - i) % 5 == 2 || (j - i) % 5 == 3,
            (false, true) => unreachable!(),
        })
    }

    /// A `d`-regular circulant on `n` vertices: offsets `1..=d/2`, plus the
    /// antipodal offset `n/2` when `d` is odd.
    pub fn regular_circulant(n: usize, d: usize) -> Result<Graph> {
        if n == 0 || d >= n {
            return input(format!("no {d}-regular graph on {n} vertices"));
        }
        if (n * d) % 2 == 1 {
            return input(format!("n*d must be even for a {d}-regular graph on {n} vertices"));
        }
        let g = Graph::from_fn(n, |i, j| {
            let gap = j - i;
            let dist = gap.min(n - gap);
            (dist >= 1 && dist <= d / 2) || (d % 2 == 1 && 2 * dist == n)
        });
        debug_assert_eq!(g.regular_degree(), Some(d));
        Ok(g)
    }

    pub fn standard(family: Family) -> Result<Graph> {
        match family {
            Family::Complete(n) => Ok(Graph::complete(n)),
            Family::Null(n) => Ok(Graph::null(n)),
            Family::Path(n) => Ok(Graph::path(n)),
            Family::Cycle(n) => Graph::cycle(n),
            Family::CompleteBipartite(p, q) => Graph::complete_bipartite(p, q),
        }
    }
}

/// Named graph families with canonical vertex numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Complete(usize),
    Null(usize),
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
}

/// A subset of `{0..n}` for a fixed universe size `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_indices(n: usize, members: &[usize]) -> Result<Self> {
        let mut s = VertexSet::empty(n);
        for &v in members {
            if v >= n {
                return input(format!("vertex {v} outside 0..{n}"));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Set whose members are the bits of `mask`; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= WORD, "mask construction needs n <= 64");
        assert!(n == WORD || mask >> n == 0, "mask has bits beyond n");
        let mut s = VertexSet::empty(n);
        if n > 0 {
            s.bits[0] = mask;
        }
        s
    }

    fn insert(&mut self, v: usize) {
        self.bits[v / WORD] |= 1 << (v % WORD);
    }

    /// Size of the ambient vertex set.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(&self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `V \ S` within the same universe.
    pub fn complement(&self) -> VertexSet {
        let mut c = VertexSet::full(self.n);
        for (w, b) in c.bits.iter_mut().zip(&self.bits) {
            *w &= !b;
        }
        c
    }

    /// Characteristic vector `x_S` in `{0,1}^n`.
    pub fn characteristic_vector(&self) -> Vec<f64> {
        (0..self.n)
            .map(|v| if self.contains(v) { 1.0 } else { 0.0 })
            .collect()
    }

    /// Members as a bit mask; `None` if the universe exceeds 64.
    pub fn mask(&self) -> Option<u64> {
        match self.bits.len() {
            0 => Some(0),
            1 => Some(self.bits[0]),
            _ => None,
        }
    }
}

struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}
