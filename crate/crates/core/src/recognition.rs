//! Recognition of weakly modular, quasi-median and median graphs.
//!
//! Every negative verdict carries a witness that can be replayed against the
//! definition. Witnesses are the lexicographically smallest violating tuple.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{find_induced_subgraph, Distances, Graph, UNREACHABLE};

/// The two graphs excluded as induced subgraphs of quasi-median graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForbiddenPattern {
    K4Minus,
    K32,
}

impl ForbiddenPattern {
    pub const ALL: [ForbiddenPattern; 2] = [ForbiddenPattern::K4Minus, ForbiddenPattern::K32];

    /// Pattern graph, numbered so that every vertex after the first has an
    /// earlier neighbor.
    ///
    /// `K4Minus`: `0` and `1` are the degree-3 spine, `2` and `3` the
    /// non-adjacent pair. `K32`: `{0, 2}` is the side of size two.
    pub fn graph(self) -> Graph {
        match self {
            ForbiddenPattern::K4Minus => Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
            ForbiddenPattern::K32 => Graph::from_edges(5, [(0, 1), (2, 1), (0, 3), (2, 3), (0, 4), (2, 4)]),
        }
        .expect("pattern edges are valid")
    }
}

pub fn find_forbidden_subgraph(g: &Graph, pattern: ForbiddenPattern) -> Option<Vec<usize>> {
    find_induced_subgraph(g, &pattern.graph())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    QuasiMedian,
    Median,
    NotWeaklyModular,
    ForbiddenSubgraph,
    NotMedian,
    Disconnected,
}

impl Status {
    pub fn is_positive(self) -> bool {
        matches!(self, Status::QuasiMedian | Status::Median)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `v`, `w` adjacent at distance `k` from `u`, no common neighbor at
    /// distance `k - 1`.
    Triangle {
        u: usize,
        v: usize,
        w: usize,
    },
    /// `d(u, z) = k`, `v`, `w` neighbors of `z` at distance `k - 1` from `u`,
    /// no common neighbor at distance `k - 2`.
    Quadrangle {
        u: usize,
        z: usize,
        v: usize,
        w: usize,
    },
    Forbidden {
        pattern: ForbiddenPattern,
        embedding: Vec<usize>,
    },
    /// A triple whose three pairwise intervals do not meet in exactly one
    /// vertex.
    Medians {
        triple: [usize; 3],
        medians: Vec<usize>,
    },
    /// `a` and `b` lie in different components.
    Separated {
        a: usize,
        b: usize,
    },
    EmptyGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecognitionVerdict {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl RecognitionVerdict {
    fn positive(status: Status) -> Self {
        RecognitionVerdict { status, witness: None }
    }

    fn negative(status: Status, witness: Witness) -> Self {
        RecognitionVerdict { status, witness: Some(witness) }
    }
}

fn disconnection_witness(g: &Graph) -> Option<Witness> {
    if g.vertex_count() == 0 {
        return Some(Witness::EmptyGraph);
    }
    let d = g.bfs_raw(0);
    d.iter().position(|&x| x == UNREACHABLE).map(|b| Witness::Separated { a: 0, b })
}

fn require_connected(g: &Graph) -> Result<()> {
    match disconnection_witness(g) {
        None => Ok(()),
        Some(_) => Err(Error::GraphDisconnected),
    }
}

/// Returns the smallest `(u, v, w)` (with `v < w`) violating the triangle
/// condition, or `None`.
pub fn check_triangle_condition(g: &Graph) -> Result<Option<(usize, usize, usize)>> {
    require_connected(g)?;
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    for u in g.vertices() {
        g.bfs_into(u, &mut dist, &mut queue);
        if let Some((v, w)) = triangle_violation(g, &dist) {
            return Ok(Some((u, v, w)));
        }
    }
    Ok(None)
}

fn triangle_violation(g: &Graph, dist: &[u32]) -> Option<(usize, usize)> {
    for v in g.vertices() {
        let k = dist[v];
        if k == 0 {
            continue;
        }
        for &w in g.neighbors(v) {
            if w <= v || dist[w] != k {
                continue;
            }
            let found = g.neighbors(v).iter().any(|&x| dist[x] == k - 1 && g.has_edge(x, w));
            if !found {
                return Some((v, w));
            }
        }
    }
    None
}

/// Returns the smallest `(u, z, v, w)` (with `v < w`) violating the
/// quadrangle condition, or `None`.
pub fn check_quadrangle_condition(g: &Graph) -> Result<Option<(usize, usize, usize, usize)>> {
    require_connected(g)?;
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    for u in g.vertices() {
        g.bfs_into(u, &mut dist, &mut queue);
        if let Some((z, v, w)) = quadrangle_violation(g, &dist) {
            return Ok(Some((u, z, v, w)));
        }
    }
    Ok(None)
}

fn quadrangle_violation(g: &Graph, dist: &[u32]) -> Option<(usize, usize, usize)> {
    let mut lower = Vec::new();
    for z in g.vertices() {
        let k = dist[z];
        if k < 2 {
            continue;
        }
        lower.clear();
        lower.extend(g.neighbors(z).iter().copied().filter(|&x| dist[x] == k - 1));
        for (i, &v) in lower.iter().enumerate() {
            for &w in &lower[i + 1..] {
                let found = g.neighbors(v).iter().any(|&x| dist[x] == k - 2 && g.has_edge(x, w));
                if !found {
                    return Some((z, v, w));
                }
            }
        }
    }
    None
}

/// Weak modularity, then the two forbidden induced subgraphs.
pub fn is_quasi_median(g: &Graph) -> RecognitionVerdict {
    if let Some(w) = disconnection_witness(g) {
        return RecognitionVerdict::negative(Status::Disconnected, w);
    }
    if let Some((u, v, w)) = check_triangle_condition(g).expect("connected") {
        return RecognitionVerdict::negative(Status::NotWeaklyModular, Witness::Triangle { u, v, w });
    }
    if let Some((u, z, v, w)) = check_quadrangle_condition(g).expect("connected") {
        return RecognitionVerdict::negative(Status::NotWeaklyModular, Witness::Quadrangle { u, z, v, w });
    }
    for pattern in ForbiddenPattern::ALL {
        if let Some(embedding) = find_forbidden_subgraph(g, pattern) {
            return RecognitionVerdict::negative(Status::ForbiddenSubgraph, Witness::Forbidden { pattern, embedding });
        }
    }
    RecognitionVerdict::positive(Status::QuasiMedian)
}

/// Every triple of vertices has exactly one median.
///
/// Median graphs are exactly the triangle-free quasi-median graphs, which
/// settles the positive case in `O(V E)`. Otherwise the triples are scanned
/// in lexicographic order for the first one without a unique median.
pub fn is_median(g: &Graph) -> RecognitionVerdict {
    if let Some(w) = disconnection_witness(g) {
        return RecognitionVerdict::negative(Status::Disconnected, w);
    }
    if !has_triangle(g) && is_quasi_median(g).status.is_positive() {
        return RecognitionVerdict::positive(Status::Median);
    }
    match first_bad_triple(g) {
        Some((triple, medians)) => {
            RecognitionVerdict::negative(Status::NotMedian, Witness::Medians { triple, medians })
        }
        None => RecognitionVerdict::positive(Status::Median),
    }
}

fn has_triangle(g: &Graph) -> bool {
    g.edges().any(|(u, v)| {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    })
}

/// Triples with a repeated vertex always have exactly one median, so only
/// `u < v < w` are scanned.
pub fn first_bad_triple(g: &Graph) -> Option<([usize; 3], Vec<usize>)> {
    let d = Distances::new(g);
    let n = g.vertex_count();
    let mut uv = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            uv.clear();
            uv.extend((0..n).filter(|&x| d.in_interval(u, x, v)));
            for w in v + 1..n {
                let mut count = 0;
                for &x in &uv {
                    if d.in_interval(v, x, w) && d.in_interval(u, x, w) {
                        count += 1;
                        if count > 1 {
                            break;
                        }
                    }
                }
                if count != 1 {
                    return Some(([u, v, w], medians_of(&d, [u, v, w])));
                }
            }
        }
    }
    None
}

/// `I(a, b) ∩ I(b, c) ∩ I(a, c)`.
pub fn medians_of(d: &Distances, [a, b, c]: [usize; 3]) -> Vec<usize> {
    (0..d.vertex_count())
        .filter(|&x| d.in_interval(a, x, b) && d.in_interval(b, x, c) && d.in_interval(a, x, c))
        .collect()
}

/// Replays a witness against the definitions; `true` if the violation it
/// describes is real.
pub fn witness_holds(g: &Graph, witness: &Witness) -> bool {
    let dist = |s: usize| g.bfs_raw(s);
    match *witness {
        Witness::Triangle { u, v, w } => {
            let d = dist(u);
            let k = d[v];
            g.has_edge(v, w)
                && k == d[w]
                && k > 0
                && k != UNREACHABLE
                && !g.vertices().any(|x| d[x] != UNREACHABLE && d[x] + 1 == k && g.has_edge(x, v) && g.has_edge(x, w))
        }
        Witness::Quadrangle { u, z, v, w } => {
            let d = dist(u);
            let k = d[z];
            k >= 2
                && k != UNREACHABLE
                && v != w
                && g.has_edge(z, v)
                && g.has_edge(z, w)
                && d[v] + 1 == k
                && d[w] + 1 == k
                && !g.vertices().any(|x| d[x] != UNREACHABLE && d[x] + 2 == k && g.has_edge(x, v) && g.has_edge(x, w))
        }
        Witness::Forbidden { pattern, ref embedding } => {
            let p = pattern.graph();
            embedding.len() == p.vertex_count()
                && embedding.iter().all(|&x| x < g.vertex_count())
                && p.vertices().all(|i| {
                    p.vertices().all(|j| {
                        i == j
                            || (embedding[i] != embedding[j]
                                && p.has_edge(i, j) == g.has_edge(embedding[i], embedding[j]))
                    })
                })
        }
        Witness::Medians { triple, .. } => medians_of(&Distances::new(g), triple).len() != 1,
        Witness::Separated { a, b } => dist(a)[b] == UNREACHABLE,
        Witness::EmptyGraph => g.vertex_count() == 0,
    }
}
