//! Finite simple undirected graphs and the traversal primitives the rest of
//! the crate is built on.
//!
//! Vertices are dense indices `0..vertex_count`. Neighbor lists are kept
//! sorted, so adjacency tests are a binary search and every traversal visits
//! vertices in a fixed order.

mod io;
mod search;

use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::GraphJson;
pub use search::{find_induced_subgraph, find_isomorphism, maximal_cliques};

/// Distance value used for unreachable pairs in raw distance rows.
pub const UNREACHABLE: u32 = u32::MAX;

/// Sorted, duplicate-free set of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn from_mask(mask: &FixedBitSet) -> Self {
        VertexSet(mask.ones().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn to_mask(&self, n: usize) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(n);
        for &v in &self.0 {
            mask.insert(v);
        }
        mask
    }

    /// Fails if any member is not a vertex of `g`.
    pub fn check_in(&self, g: &Graph) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= g.vertex_count() => Err(Error::VertexOutOfRange { vertex: v, count: g.vertex_count() }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

/// A finite simple undirected graph.
///
/// Immutable once built. Labels are decorative; every operation works on
/// indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, count: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
            edge_count += row.len();
        }
        Ok(Graph { adj, edge_count: edge_count / 2, labels: BTreeMap::new() })
    }

    pub fn edgeless(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edge_count: 0, labels: BTreeMap::new() }
    }

    pub fn complete(n: usize) -> Self {
        let adj: Vec<Vec<usize>> = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Graph { adj, edge_count: n * n.saturating_sub(1) / 2, labels: BTreeMap::new() }
    }

    /// Path on `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidPrism(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
            .expect("bipartite edges are valid")
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some((&v, _)) = labels.iter().next_back() {
            if v >= self.vertex_count() {
                return Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count() });
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, row)| row.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, count: self.vertex_count() })
        }
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>> {
        self.check_vertex(source)?;
        Ok(self.bfs_raw(source).into_iter().map(|d| (d != UNREACHABLE).then_some(d as usize)).collect())
    }

    /// BFS distances from `source` with [`UNREACHABLE`] for other components.
    pub fn bfs_raw(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        self.bfs_into(source, &mut dist, &mut VecDeque::new());
        dist
    }

    pub(crate) fn bfs_into(&self, source: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) {
        dist.fill(UNREACHABLE);
        queue.clear();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
    }

    /// Vertices on some geodesic between `u` and `v`.
    pub fn interval(&self, u: usize, v: usize) -> Result<VertexSet> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let du = self.bfs_raw(u);
        let dv = self.bfs_raw(v);
        let d = du[v];
        if d == UNREACHABLE {
            return Err(Error::Disconnected(u, v));
        }
        Ok(self.vertices().filter(|&w| du[w] != UNREACHABLE && dv[w] != UNREACHABLE && du[w] + dv[w] == d).collect())
    }

    /// Connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_avoiding(|_, _| false)
    }

    /// Components of the graph once every edge accepted by `skip` is removed.
    pub(crate) fn components_avoiding(&self, skip: impl Fn(usize, usize) -> bool) -> Vec<VertexSet> {
        let labels = self.component_labels_avoiding(&skip);
        let count = labels.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut parts = vec![Vec::new(); count];
        for (v, &c) in labels.iter().enumerate() {
            parts[c as usize].push(v);
        }
        parts.into_iter().map(VertexSet).collect()
    }

    /// Component index of every vertex; components are numbered by smallest
    /// member.
    pub(crate) fn component_labels_avoiding(&self, skip: impl Fn(usize, usize) -> bool) -> Vec<u32> {
        let n = self.vertex_count();
        let mut label = vec![u32::MAX; n];
        let mut next = 0u32;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != u32::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if label[w] == u32::MAX && !skip(u, w) {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.connected_components().len() == 1
    }

    /// Cartesian product; vertex `(a, b)` gets index `a * h.vertex_count() + b`.
    pub fn cartesian_product(&self, h: &Graph) -> Graph {
        let nh = h.vertex_count();
        let mut edges = Vec::new();
        for a in self.vertices() {
            for (b, b2) in h.edges() {
                edges.push((a * nh + b, a * nh + b2));
            }
        }
        for (a, a2) in self.edges() {
            for b in h.vertices() {
                edges.push((a * nh + b, a2 * nh + b));
            }
        }
        Graph::from_edges(self.vertex_count() * nh, edges).expect("product edges are valid")
    }

    /// Disjoint union; `h`'s vertices are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, h: &Graph) -> Graph {
        let n = self.vertex_count();
        let edges = self.edges().chain(h.edges().map(|(a, b)| (a + n, b + n)));
        Graph::from_edges(n + h.vertex_count(), edges).expect("union edges are valid")
    }

    /// Induced subgraph on `set`; vertex `i` of the result is `set[i]`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        set.check_in(self)?;
        let members = set.as_slice();
        let mut edges = Vec::new();
        for (i, &u) in members.iter().enumerate() {
            for &w in &self.adj[u] {
                if w > u {
                    if let Ok(j) = members.binary_search(&w) {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph::from_edges(members.len(), edges)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        Graph::from_edges(self.vertex_count(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    pub fn to_dot(&self, name: &str) -> String {
        io::to_dot(self, name)
    }
}

/// All-pairs BFS distances, stored row-major as `u32`.
#[derive(Clone, Debug)]
pub struct Distances {
    n: usize,
    data: Vec<u32>,
}

impl Distances {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut data = vec![UNREACHABLE; n * n];
        let mut queue = VecDeque::new();
        for (s, row) in data.chunks_mut(n.max(1)).enumerate().take(n) {
            g.bfs_into(s, row, &mut queue);
        }
        Distances { n, data }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Raw distance, [`UNREACHABLE`] across components.
    #[inline]
    pub fn raw(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        let d = self.raw(u, v);
        (d != UNREACHABLE).then_some(d as usize)
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    #[inline]
    pub fn in_interval(&self, u: usize, w: usize, v: usize) -> bool {
        let d = self.raw(u, v);
        d != UNREACHABLE && self.raw(u, w) as u64 + self.raw(w, v) as u64 == d as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1_plus_k1() -> Graph {
        Graph::edgeless(2)
    }

    #[test]
    fn bfs_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.bfs_distances(0).unwrap(), vec![Some(0), Some(1), Some(1)]);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.bfs_distances(0).unwrap(), vec![Some(0), Some(1), Some(2), Some(1)]);
        assert_eq!(k1_plus_k1().bfs_distances(0).unwrap(), vec![Some(0), None]);
        assert!(matches!(k3.bfs_distances(3), Err(Error::VertexOutOfRange { vertex: 3, count: 3 })));
    }

    #[test]
    fn interval_examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.interval(0, 2).unwrap(), VertexSet::new(0..4));
        let k3 = Graph::complete(3);
        assert_eq!(k3.interval(0, 1).unwrap(), VertexSet::new([0, 1]));
        assert_eq!(k3.interval(2, 2).unwrap(), VertexSet::singleton(2));
        assert_eq!(k1_plus_k1().interval(0, 1), Err(Error::Disconnected(0, 1)));
    }

    #[test]
    fn interval_c6_matches_geodesic_enumeration() {
        // Union of the vertices of every shortest 0 -> 3 walk, by brute force
        // over all walks of length 3.
        let c6 = Graph::cycle(6).unwrap();
        let mut seen = vec![false; 6];
        fn walk(g: &Graph, path: &mut Vec<usize>, target: usize, len: usize, seen: &mut [bool]) {
            if path.len() == len + 1 {
                if *path.last().unwrap() == target {
                    path.iter().for_each(|&v| seen[v] = true);
                }
                return;
            }
            for &w in g.neighbors(*path.last().unwrap()) {
                path.push(w);
                walk(g, path, target, len, seen);
                path.pop();
            }
        }
        walk(&c6, &mut vec![0], 3, 3, &mut seen);
        let expected: VertexSet = (0..6).filter(|&v| seen[v]).collect();
        assert_eq!(expected.len(), 6);
        assert_eq!(c6.interval(0, 3).unwrap(), expected);
    }

    #[test]
    fn components() {
        assert_eq!(Graph::complete(3).connected_components().len(), 1);
        assert_eq!(k1_plus_k1().connected_components(), vec![VertexSet::singleton(0), VertexSet::singleton(1)]);
        assert!(Graph::edgeless(0).connected_components().is_empty());
        let g = Graph::from_edges(5, [(3, 1), (0, 4)]).unwrap();
        assert_eq!(
            g.connected_components(),
            vec![VertexSet::new([0, 4]), VertexSet::new([1, 3]), VertexSet::singleton(2)]
        );
    }

    #[test]
    fn products() {
        let k2 = Graph::complete(2);
        let sq = k2.cartesian_product(&k2);
        assert!(find_isomorphism(&sq, &Graph::cycle(4).unwrap()).is_some());
        let prism = Graph::complete(3).cartesian_product(&k2);
        assert_eq!((prism.vertex_count(), prism.edge_count()), (6, 9));
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(Graph::complete(1).cartesian_product(&c5), c5);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        let g = Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn distances_agree_with_bfs() {
        let g = Graph::cycle(7).unwrap().disjoint_union(&Graph::path(3));
        let d = Distances::new(&g);
        for u in g.vertices() {
            let row = g.bfs_distances(u).unwrap();
            for v in g.vertices() {
                assert_eq!(d.get(u, v), row[v]);
            }
        }
    }
}
