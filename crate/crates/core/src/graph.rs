//! Small simple graphs stored as one adjacency bitset per vertex.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph6;

/// Largest supported vertex count: one machine word per adjacency row.
pub const MAX_VERTICES: usize = 64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline(always)]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertices drawn from `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn prefix(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0, |acc, v| acc | bit(v)))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !bit(v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lexicographic comparison of the ascending vertex lists.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Simple undirected graph on at most [`MAX_VERTICES`] vertices.
///
/// Rows at or beyond `n` are always zero, so the derived equality, hashing and
/// ordering only see the live part of the matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity { requested: n })
    } else {
        Ok(())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = low_bits(n);
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Graph::empty(a)?.join_all(&Graph::empty(b)?)
    }

    /// The star on `k` vertices (`k - 1` leaves), centre 0.
    pub fn star(k: usize) -> Result<Self> {
        let mut g = Graph::empty(k)?;
        for v in 1..k {
            g.add_edge_unchecked(0, v);
        }
        Ok(g)
    }

    /// `s` disjoint edges `{2i, 2i+1}`.
    pub fn matching(s: usize) -> Result<Self> {
        let mut g = Graph::empty(2 * s)?;
        for i in 0..s {
            g.add_edge_unchecked(2 * i, 2 * i + 1);
        }
        Ok(g)
    }

    /// The path on `k` vertices `0-1-..-(k-1)`.
    pub fn path(k: usize) -> Result<Self> {
        let mut g = Graph::empty(k)?;
        for v in 1..k {
            g.add_edge_unchecked(v - 1, v);
        }
        Ok(g)
    }

    /// The cycle `0-1-..-(k-1)-0`; `k` must be 0 or at least 3.
    pub fn cycle(k: usize) -> Result<Self> {
        if k == 1 || k == 2 {
            return Err(Error::InvalidParameter(format!(
                "a cycle needs at least 3 vertices, got {k}"
            )));
        }
        let mut g = Graph::path(k)?;
        if k >= 3 {
            g.add_edge_unchecked(0, k - 1);
        }
        Ok(g)
    }

    /// Hub 0 joined to every vertex of the cycle on `1..=k`.
    pub fn wheel(k: usize) -> Result<Self> {
        Graph::empty(1)?.join_all(&Graph::cycle(k)?)
    }

    /// Balanced complete multipartite graph on `p` vertices with `parts` parts.
    /// Remainder vertices go to the earliest parts; parts are contiguous blocks.
    pub fn turan(p: usize, parts: usize) -> Result<Self> {
        check_capacity(p)?;
        if parts == 0 {
            if p == 0 {
                return Graph::empty(0);
            }
            return Err(Error::InvalidParameter("a Turan graph needs at least one part".into()));
        }
        let mut g = Graph::empty(0)?;
        for i in 0..parts {
            let size = p / parts + usize::from(i < p % parts);
            g = g.join_all(&Graph::empty(size)?)?;
        }
        Ok(g)
    }

    /// Build from an edge list; rejects loops and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from adjacency rows, validating symmetry, loops and range.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        let mut g = Graph::empty(n)?;
        let mask = low_bits(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::InvalidParameter(format!("row {u} has bits beyond vertex {n}")));
            }
            if row & bit(u) != 0 {
                return Err(Error::Loop { vertex: u });
            }
            g.adj[u] = row;
        }
        for u in 0..n {
            for v in VertexSet(g.adj[u]) {
                if g.adj[v] & bit(u) == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency is not symmetric at ({u},{v})"
                    )));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::prefix(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| VertexSet(self.adj[u] & !low_bits(u + 1)).iter().map(move |v| (u, v)))
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::Loop { vertex: u });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        self.remove_edge_unchecked(u, v);
        Ok(())
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = *self;
        g.add_edge(u, v)?;
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = *self;
        g.remove_edge(u, v)?;
        Ok(g)
    }

    #[inline]
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub(crate) fn remove_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// Vertices of `other` are shifted up by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let n = self.n + other.n;
        check_capacity(n)?;
        let mut g = *self;
        g.n = n;
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join_all(&self, other: &Graph) -> Result<Self> {
        let mut g = self.disjoint_union(other)?;
        let left = low_bits(self.n);
        let right = low_bits(g.n) & !left;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// The subgraph induced by `set`, relabelled in ascending vertex order.
    pub fn induced(&self, set: VertexSet) -> Result<Self> {
        if let Some(v) = set.difference(self.vertices()).first() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        let verts = set.to_vec();
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.adj[u] & bit(v) != 0 {
                    g.add_edge_unchecked(i, j);
                }
            }
        }
        Ok(g)
    }

    /// `g - set`: the subgraph induced by the remaining vertices.
    pub fn remove_vertices(&self, set: VertexSet) -> Result<Self> {
        self.induced(self.vertices().difference(set))
    }

    pub fn complement(&self) -> Self {
        let mut g = *self;
        let all = low_bits(self.n);
        for v in 0..self.n {
            g.adj[v] = all & !self.adj[v] & !bit(v);
        }
        g
    }

    /// Relabel so that vertex `v` becomes `perm[v]`; `perm` must be a permutation.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for u in 0..self.n {
            let mut row = 0u64;
            for v in self.neighbors(u) {
                row |= bit(perm[v]);
            }
            g.adj[perm[u]] = row;
        }
        g
    }

    /// Connected components of the subgraph induced by `within`, in order of
    /// their least vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within.0 & low_bits(self.n);
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & rest & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet((0..self.n).filter(|&v| self.adj[v] == 0).fold(0, |a, v| a | bit(v)))
    }

    /// Two-colouring as a bitset of one colour class, if the graph is bipartite.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let mut side = 0u64;
        for comp in self.components() {
            let root = comp.first().expect("components are non-empty");
            let mut colored = bit(root);
            let mut ones = 0u64;
            let mut frontier = bit(root);
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let v_one = ones & bit(v) != 0;
                for w in self.neighbors(v) {
                    if colored & bit(w) != 0 {
                        if (ones & bit(w) != 0) == v_one {
                            return None;
                        }
                    } else {
                        colored |= bit(w);
                        if !v_one {
                            ones |= bit(w);
                        }
                        frontier |= bit(w);
                    }
                }
            }
            side |= ones;
        }
        Some(VertexSet(side))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn from_graph6(text: &str) -> Result<Self> {
        graph6::decode(text)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} {:?})", self.to_graph6(), self.edges().collect::<Vec<_>>())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

/// Graphs serialize as their graph6 string.
impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_graph6())
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        graph6::decode(&text).map_err(serde::de::Error::custom)
    }
}

/// Vertex sets serialize as ascending vertex lists.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = vertices.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(VertexSet::from_vertices(vertices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_serde() {
        let s = VertexSet::from_vertices([4, 1]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, "[1,4]");
        assert_eq!(serde_json::from_str::<VertexSet>(&text).unwrap(), s);
        assert!(serde_json::from_str::<VertexSet>("[64]").is_err());
    }

    #[test]
    fn empty_graphs() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(Graph::empty(0).unwrap().order(), 0);
        assert_eq!(Graph::empty(10).unwrap().edge_count(), 0);
        assert!(matches!(Graph::empty(65), Err(Error::Capacity { requested: 65 })));
        assert!(Graph::empty(64).is_ok());
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::complete(5).unwrap().edge_count(), 10);
        let m = Graph::matching(3).unwrap();
        assert_eq!((m.order(), m.edge_count(), m.max_degree()), (6, 3, 1));
        assert_eq!(Graph::complete_bipartite(2, 4).unwrap().edge_count(), 8);
        assert_eq!(Graph::star(5).unwrap().edge_count(), 4);
        assert_eq!(Graph::cycle(5).unwrap().edge_count(), 5);
        assert_eq!(Graph::path(4).unwrap().edge_count(), 3);
        assert!(Graph::cycle(2).is_err());
        let w = Graph::wheel(5).unwrap();
        assert_eq!((w.order(), w.edge_count()), (6, 10));
        assert!(Graph::complete(65).is_err());
        assert!(Graph::complete_bipartite(40, 30).is_err());
    }

    #[test]
    fn turan_graphs() {
        let t = Graph::turan(5, 2).unwrap();
        assert_eq!(t.edge_count(), 6);
        assert_eq!(t, Graph::complete_bipartite(3, 2).unwrap());
        assert_eq!(Graph::turan(4, 4).unwrap(), Graph::complete(4).unwrap());
        let t73 = Graph::turan(7, 3).unwrap();
        // cross pairs of parts 3,2,2
        assert_eq!(t73.edge_count(), 3 * 2 + 3 * 2 + 2 * 2);
        assert_eq!(t73.degree(0), 4);
        assert_eq!(t73.degree(6), 5);
        assert!(Graph::turan(3, 0).is_err());
    }

    #[test]
    fn union_join_induced() {
        let k2 = Graph::complete(2).unwrap();
        let k1 = Graph::complete(1).unwrap();
        let u = k2.disjoint_union(&k1).unwrap();
        assert_eq!((u.order(), u.edge_count()), (3, 1));
        assert!(u.has_edge(0, 1));

        let c5 = Graph::cycle(5).unwrap();
        let p3 = c5.induced(VertexSet::from_vertices([0, 1, 2])).unwrap();
        assert_eq!(p3, Graph::path(3).unwrap());
        assert_eq!(c5.induced(c5.vertices()).unwrap(), c5);

        let j = Graph::empty(2).unwrap().join_all(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(j, Graph::complete_bipartite(2, 3).unwrap());
        assert!(c5.induced(VertexSet::from_vertices([7])).is_err());
    }

    #[test]
    fn edge_edits_validate_indices() {
        let g = Graph::empty(3).unwrap();
        assert!(matches!(
            g.with_edge(0, 3),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        ));
        assert!(matches!(g.with_edge(1, 1), Err(Error::Loop { vertex: 1 })));
        let h = g.with_edge(0, 2).unwrap();
        assert!(h.has_edge(2, 0));
        assert_eq!(h.without_edge(2, 0).unwrap(), g);
    }

    #[test]
    fn structure_queries() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components().len(), 3);
        assert!(g.is_forest());
        assert!(g.is_bipartite());
        assert!(!Graph::cycle(5).unwrap().is_bipartite());
        assert!(Graph::cycle(6).unwrap().is_bipartite());
        assert_eq!(g.isolated_vertices().to_vec(), vec![5]);
        assert!(Graph::from_rows(&[0b10, 0b00]).is_err());
        assert!(Graph::from_rows(&[0b10, 0b01]).is_ok());
    }
}
