//! Simple finite graphs with bitset adjacency, plus the join and vertex
//! deletion operators everything else is built on.
//!
//! Vertices are `0..n` with `n <= 62` (the graph6 short form limit). Graphs
//! are immutable after construction, so they can be shared freely across
//! worker threads.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported vertex count (graph6 short form).
pub const MAX_VERTICES: usize = 62;

/// A set of vertices of some graph, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 63);
        VertexSet(if n == 0 { 0 } else { (1u64 << n) - 1 })
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < 64);
        self.0 |= 1u64 << v;
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ascending vertex indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(v)
            }
        })
    }

    /// Compares two sets as ascending vertex sequences, element by element.
    /// This is the order used when a "lexicographically least" set is wanted.
    pub fn lex_cmp(self, other: VertexSet) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                (false, false) => {}
            }
            let (ta, tb) = (a.trailing_zeros(), b.trailing_zeros());
            if ta != tb {
                return ta.cmp(&tb);
            }
            a &= a - 1;
            b &= b - 1;
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// A simple finite graph: vertex count plus a symmetric, irreflexive
/// adjacency relation. The optional label is ignored by equality and
/// hashing; it only decorates reports.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}", self.n)?;
        if let Some(label) = &self.label {
            write!(f, ", label={label:?}")?;
        }
        write!(f, ", edges=[")?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices. `n = 0` is allowed.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::UnsupportedSize { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n], label: None })
    }

    /// Builds a graph from an undirected edge list. Rejects self-loops and
    /// out-of-range endpoints; duplicate edges are harmless.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::Domain(format!("self-loop at vertex {u}")));
            }
            g.adj[u] |= 1u64 << v;
            g.adj[v] |= 1u64 << u;
        }
        Ok(g)
    }

    pub(crate) fn from_adj_unchecked(adj: Vec<u64>) -> Self {
        Graph { n: adj.len(), adj, label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & (1u64 << v) != 0
    }

    /// Neighbor bitmask of `v`.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Mask with one bit per vertex.
    pub fn vertex_mask(&self) -> u64 {
        VertexSet::full(self.n).mask()
    }

    /// Edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet::from_mask(self.adj[u] >> (u + 1))
                .iter()
                .map(move |off| (u, u + 1 + off))
        })
    }

    /// Induced subgraph on `keep`, vertices relabeled to `0..keep.len()`
    /// preserving order. The second component maps new indices to old ones.
    pub fn induced(&self, keep: VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = keep.iter().filter(|&v| v < self.n).collect();
        let mut adj = vec![0u64; old.len()];
        for (i, &u) in old.iter().enumerate() {
            for (j, &v) in old.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    adj[i] |= 1u64 << j;
                    adj[j] |= 1u64 << i;
                }
            }
        }
        (Graph { n: old.len(), adj, label: None }, old)
    }
}

/// The join `g ∇ h`: disjoint union plus every edge between the two sides.
/// `g`'s vertices come first, then `h`'s, so witnesses are reproducible.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n + h.n;
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize { n, max: MAX_VERTICES });
    }
    let g_mask = g.vertex_mask();
    let h_mask = h.vertex_mask() << g.n;
    let mut adj = Vec::with_capacity(n);
    adj.extend(g.adj.iter().map(|&row| row | h_mask));
    adj.extend(h.adj.iter().map(|&row| (row << g.n) | g_mask));
    Ok(Graph { n, adj, label: None })
}

/// The k-fold join `∇^k g` of `k` disjoint copies of `g`, copies laid out in
/// index order. `k = 1` returns `g` itself.
pub fn nabla_k(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Domain("nabla_k requires k >= 1".into()));
    }
    let mut result = g.clone();
    for _ in 1..k {
        result = join(&result, g)?;
    }
    Ok(result)
}

/// Deletes the vertices in `s`, returning the induced subgraph on the rest
/// together with the new-index-to-old-index relabeling map.
pub fn delete_vertices(g: &Graph, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
    if !s.is_subset_of(VertexSet::full(g.n)) {
        return Err(Error::Domain(format!(
            "vertex set {s} not contained in 0..{}",
            g.n
        )));
    }
    Ok(g.induced(VertexSet::full(g.n).difference(s)))
}
