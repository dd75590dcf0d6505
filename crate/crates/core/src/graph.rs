//! Simple undirected graphs with dense vertex ids `0..n`, plus the exact
//! edge-counting primitives the solver is built on.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VertexSet {
    ids: Vec<u32>,
}

impl VertexSet {
    pub fn new(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet { ids }
    }

    pub fn empty() -> Self {
        VertexSet { ids: Vec::new() }
    }

    /// The full vertex set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet {
            ids: (0..n as u32).collect(),
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.ids
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut ids = self.ids.clone();
        ids.extend_from_slice(&other.ids);
        VertexSet::new(ids)
    }

    pub fn intersects(&self, other: &VertexSet) -> Option<u32> {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().find(|&v| large.contains(v))
    }

    /// Members of `{0, .., n-1}` not in this set.
    pub fn complement(&self, n: usize) -> VertexSet {
        let ids = (0..n as u32).filter(|&v| !self.contains(v)).collect();
        VertexSet { ids }
    }

    fn check_range(&self, n: usize) -> Result<()> {
        match self.ids.last() {
            Some(&v) if (v as usize) >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    /// Word-packed membership mask, for fast adjacency intersection.
    fn bitmask(&self, n: usize) -> Vec<u64> {
        let mut words = vec![0u64; n.div_ceil(64)];
        for &v in &self.ids {
            words[v as usize / 64] |= 1 << (v % 64);
        }
        words
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Undirected graph; no self-loops, no parallel edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    bits: Vec<Vec<u64>>,
}

/// Validates and builds a graph from an edge list. Endpoint order within a
/// pair does not matter; `(u,v)` and `(v,u)` count as duplicates.
pub fn build_graph(n: usize, edge_list: &[(u32, u32)]) -> Result<Graph> {
    let words = n.div_ceil(64);
    let mut adj = vec![Vec::new(); n];
    let mut bits = vec![vec![0u64; words]; n];
    let mut edges = Vec::with_capacity(edge_list.len());
    for &(a, b) in edge_list {
        for v in [a, b] {
            if v as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        if bits[u as usize][v as usize / 64] & (1 << (v % 64)) != 0 {
            return Err(Error::DuplicateEdge(u, v));
        }
        bits[u as usize][v as usize / 64] |= 1 << (v % 64);
        bits[v as usize][u as usize / 64] |= 1 << (u % 64);
        adj[u as usize].push(v);
        adj[v as usize].push(u);
        edges.push((u, v));
    }
    edges.sort_unstable();
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph { n, edges, adj, bits })
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.bits[u as usize][v as usize / 64] & (1 << (v % 64)) != 0
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].len()).min().unwrap_or(0)
    }

    /// Number of edges with both endpoints in `x`.
    pub fn induced_edge_count(&self, x: &VertexSet) -> Result<u64> {
        x.check_range(self.n)?;
        let mask = x.bitmask(self.n);
        let mut doubled = 0u64;
        for v in x.iter() {
            doubled += self.adjacency_overlap(v, &mask);
        }
        debug_assert!(doubled.is_multiple_of(2));
        Ok(doubled / 2)
    }

    /// Number of edges with one endpoint in `a` and the other in `b`.
    /// The sets must be disjoint.
    pub fn cross_edge_count(&self, a: &VertexSet, b: &VertexSet) -> Result<u64> {
        a.check_range(self.n)?;
        b.check_range(self.n)?;
        if let Some(v) = a.intersects(b) {
            return Err(Error::OverlappingSets(v));
        }
        let mask = b.bitmask(self.n);
        Ok(a.iter().map(|v| self.adjacency_overlap(v, &mask)).sum())
    }

    /// Word-packed adjacency row of `v`.
    pub(crate) fn adjacency_words(&self, v: u32) -> &[u64] {
        &self.bits[v as usize]
    }

    fn adjacency_overlap(&self, v: u32, mask: &[u64]) -> u64 {
        self.bits[v as usize]
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum()
    }

    /// Exact excess `||X|| - c|X|` and its nonnegative part `T(X)`.
    pub fn surplus(&self, x: &VertexSet, c: &Rational) -> Result<(Rational, Rational)> {
        let edges = self.induced_edge_count(x)?;
        let excess = Rational::from(edges) - c * &Rational::from(x.len());
        let t = excess.clone().max(Rational::zero());
        Ok((excess, t))
    }

    /// Induced subgraph on `x` with vertices renumbered `0..x.len()` in
    /// ascending id order. Returns the new graph and the map from new id to
    /// original id.
    pub fn induced(&self, x: &VertexSet) -> Result<(Graph, Vec<u32>)> {
        x.check_range(self.n)?;
        let map: Vec<u32> = x.iter().collect();
        let index = |v: u32| map.binary_search(&v).unwrap() as u32;
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if x.contains(u) && x.contains(v) {
                edges.push((index(u), index(v)));
            }
        }
        let g = build_graph(map.len(), &edges)?;
        Ok((g, map))
    }
}

/// Complete graph on `n` vertices, used widely in tests.
pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            edges.push((u, v));
        }
    }
    build_graph(n, &edges).expect("complete graph is always valid")
}
