//! Hyperplanes of a quasi-median graph: classes of edges under the closure of
//! "opposite sides of a square" and "two sides of a triangle", together with
//! their sectors, carriers and fibers.
//!
//! The decomposition is computed for any graph. Its geometric guarantees
//! (sectors gated, carrier a product, distance equals the number of
//! separating hyperplanes) only hold on quasi-median hosts; elsewhere the
//! verification routines act as refutations.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::union_find::UnionFind;

#[derive(Debug)]
pub struct HyperplaneDecomposition {
    host: Graph,
    /// Edges `(u, v)`, `u < v`, in lexicographic order; the index is the edge id.
    edges: Vec<(usize, usize)>,
    /// `row_start[u] + i` indexes `edge_id_of_slot` for the `i`-th neighbor of `u`.
    row_start: Vec<usize>,
    edge_id_of_slot: Vec<usize>,
    class_of_edge: Vec<usize>,
    classes: Vec<Vec<usize>>,
    transverse: BTreeSet<(usize, usize)>,
    sector_labels: Vec<OnceLock<Vec<u32>>>,
}

/// Calls `f(a, b, d, c)` once per induced 4-cycle `a - b - d - c - a`, with
/// `a` the smallest vertex and `b < c`.
fn for_each_square(g: &Graph, mut f: impl FnMut(usize, usize, usize, usize)) {
    for a in g.vertices() {
        let na = g.neighbors(a);
        for (i, &b) in na.iter().enumerate() {
            if b < a {
                continue;
            }
            for &c in &na[i + 1..] {
                if g.has_edge(b, c) {
                    continue;
                }
                for &d in g.neighbors(b) {
                    if d > a && d != c && g.has_edge(d, c) && !g.has_edge(a, d) {
                        f(a, b, d, c);
                    }
                }
            }
        }
    }
}

impl HyperplaneDecomposition {
    pub fn new(g: &Graph) -> Self {
        let host = g.clone();
        let n = host.vertex_count();
        let edges: Vec<(usize, usize)> = host.edges().collect();
        let mut row_start = Vec::with_capacity(n + 1);
        let mut total = 0;
        for u in host.vertices() {
            row_start.push(total);
            total += host.degree(u);
        }
        row_start.push(total);
        let mut edge_id_of_slot = vec![usize::MAX; total];
        for (id, &(u, v)) in edges.iter().enumerate() {
            let iu = host.neighbors(u).binary_search(&v).expect("edge");
            let iv = host.neighbors(v).binary_search(&u).expect("edge");
            edge_id_of_slot[row_start[u] + iu] = id;
            edge_id_of_slot[row_start[v] + iv] = id;
        }
        let mut this = HyperplaneDecomposition {
            host,
            edges,
            row_start,
            edge_id_of_slot,
            class_of_edge: Vec::new(),
            classes: Vec::new(),
            transverse: BTreeSet::new(),
            sector_labels: Vec::new(),
        };

        let g = &this.host;
        let mut uf = UnionFind::new(this.edges.len());
        for (id, &(u, v)) in this.edges.iter().enumerate() {
            for &w in g.neighbors(u) {
                if w > v && g.has_edge(v, w) {
                    uf.union(id, this.edge_id(u, w).expect("edge"));
                    uf.union(id, this.edge_id(v, w).expect("edge"));
                }
            }
        }
        for_each_square(g, |a, b, d, c| {
            uf.union(this.edge_id(a, b).unwrap(), this.edge_id(c, d).unwrap());
            uf.union(this.edge_id(a, c).unwrap(), this.edge_id(b, d).unwrap());
        });

        // Number classes by their smallest edge.
        let mut class_of_root = vec![usize::MAX; this.edges.len()];
        let mut class_of_edge = vec![0; this.edges.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for id in 0..this.edges.len() {
            let r = uf.find(id);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = classes.len();
                classes.push(Vec::new());
            }
            class_of_edge[id] = class_of_root[r];
            classes[class_of_root[r]].push(id);
        }
        this.class_of_edge = class_of_edge;
        this.classes = classes;

        let mut transverse = BTreeSet::new();
        for_each_square(&this.host, |a, b, d, _c| {
            let p = this.class_of_edge[this.edge_id(a, b).unwrap()];
            let q = this.class_of_edge[this.edge_id(b, d).unwrap()];
            if p != q {
                transverse.insert((p.min(q), p.max(q)));
            }
        });
        this.transverse = transverse;
        this.sector_labels = (0..this.classes.len()).map(|_| OnceLock::new()).collect();
        this
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn hyperplane_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let i = self.host.neighbors(u).binary_search(&v).ok()?;
        Some(self.edge_id_of_slot[self.row_start[u] + i])
    }

    /// Hyperplane containing the edge `{u, v}`, if it is an edge.
    pub fn class_of(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_id(u, v).map(|id| self.class_of_edge[id])
    }

    fn check(&self, j: usize) -> Result<()> {
        if j < self.classes.len() {
            Ok(())
        } else {
            Err(Error::InvalidHyperplane { index: j, count: self.classes.len() })
        }
    }

    /// Edges of hyperplane `j` in lexicographic order.
    pub fn edges_of(&self, j: usize) -> Result<Vec<(usize, usize)>> {
        self.check(j)?;
        Ok(self.classes[j].iter().map(|&id| self.edges[id]).collect())
    }

    /// Sector index of every vertex for hyperplane `j`; sectors are numbered
    /// by smallest member.
    pub fn sector_labels(&self, j: usize) -> Result<&[u32]> {
        self.check(j)?;
        Ok(self.sector_labels[j]
            .get_or_init(|| self.host.component_labels_avoiding(|u, w| self.class_of(u, w) == Some(j))))
    }

    /// Components of the host once the edges of `j` are removed.
    pub fn sectors(&self, j: usize) -> Result<Vec<VertexSet>> {
        let labels = self.sector_labels(j)?;
        let count = labels.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut parts = vec![Vec::new(); count];
        for (v, &c) in labels.iter().enumerate() {
            parts[c as usize].push(v);
        }
        Ok(parts.into_iter().map(VertexSet::new).collect())
    }

    pub fn sector_count(&self, j: usize) -> Result<usize> {
        Ok(self.sector_labels(j)?.iter().map(|&c| c as usize + 1).max().unwrap_or(0))
    }

    /// Vertex set of the carrier `N(J)`: endpoints of the edges of `j`.
    pub fn carrier(&self, j: usize) -> Result<VertexSet> {
        self.check(j)?;
        Ok(self.classes[j]
            .iter()
            .flat_map(|&id| {
                let (u, v) = self.edges[id];
                [u, v]
            })
            .collect())
    }

    /// Components of the carrier after removing the edges of `j`.
    pub fn fibers(&self, j: usize) -> Result<Vec<VertexSet>> {
        let carrier = self.carrier(j)?;
        let sub = self.host.induced_subgraph(&carrier)?;
        let members = carrier.as_slice();
        Ok(sub
            .components_avoiding(|a, b| self.class_of(members[a], members[b]) == Some(j))
            .into_iter()
            .map(|c| c.iter().map(|i| members[i]).collect())
            .collect())
    }

    /// The clique dual to `j` through the first endpoint of its smallest edge.
    pub fn dual_clique(&self, j: usize) -> Result<VertexSet> {
        self.check(j)?;
        let (a, _) = self.edges[self.classes[j][0]];
        Ok(std::iter::once(a)
            .chain(self.host.neighbors(a).iter().copied().filter(|&x| self.class_of(a, x) == Some(j)))
            .collect())
    }

    /// Exhibits the carrier of `j` as `F × C` for the fiber `F` through the
    /// dual clique `C`, or explains why it is not such a product.
    pub fn verify_carrier_decomposition(&self, j: usize) -> Result<CarrierReport> {
        let clique = self.dual_clique(j)?;
        let carrier = self.carrier(j)?;
        let fibers = self.fibers(j)?;
        let mut report = CarrierReport {
            hyperplane: j,
            carrier_size: carrier.len(),
            fiber_count: fibers.len(),
            fiber_size: 0,
            clique_size: clique.len(),
            is_product: false,
            failure: None,
            mapping: Vec::new(),
        };
        let fail = |mut r: CarrierReport, why: String| {
            r.failure = Some(why);
            Ok(r)
        };

        let cs = clique.as_slice();
        for (i, &p) in cs.iter().enumerate() {
            for &q in &cs[i + 1..] {
                if self.class_of(p, q) != Some(j) {
                    return fail(
                        report,
                        format!("dual clique vertices {p} and {q} are not joined by an edge of the hyperplane"),
                    );
                }
            }
        }
        let fiber_of = |v: usize| fibers.iter().position(|f| f.contains(v));
        let clique_fibers: Vec<usize> = cs.iter().map(|&c| fiber_of(c).expect("clique lies in carrier")).collect();
        let distinct: BTreeSet<usize> = clique_fibers.iter().copied().collect();
        if distinct.len() != cs.len() || fibers.len() != cs.len() {
            return fail(report, format!("{} fibers but the dual clique has {} vertices", fibers.len(), cs.len()));
        }
        let base = &fibers[clique_fibers[0]];
        report.fiber_size = base.len();

        // mapping[i][k]: image of (i-th vertex of F, k-th vertex of C).
        let mut mapping = Vec::with_capacity(base.len());
        for f in base.iter() {
            let mut row = Vec::with_capacity(cs.len());
            for (k, &fk) in clique_fibers.iter().enumerate() {
                if k == 0 {
                    row.push(f);
                    continue;
                }
                let hits: Vec<usize> = self
                    .host
                    .neighbors(f)
                    .iter()
                    .copied()
                    .filter(|&y| self.class_of(f, y) == Some(j) && fibers[fk].contains(y))
                    .collect();
                if hits.len() != 1 {
                    return fail(report, format!("vertex {f} has {} hyperplane neighbors in fiber {fk}", hits.len()));
                }
                row.push(hits[0]);
            }
            mapping.push(row);
        }
        let image: BTreeSet<usize> = mapping.iter().flatten().copied().collect();
        if image.len() != carrier.len() || image.len() != base.len() * cs.len() {
            return fail(report, "product map is not a bijection onto the carrier".into());
        }
        // Injective on vertices, edges to edges, equal edge counts: isomorphism.
        let fiber_graph_edges: Vec<(usize, usize)> = base
            .as_slice()
            .iter()
            .enumerate()
            .flat_map(|(a, &u)| {
                base.as_slice()[a + 1..]
                    .iter()
                    .enumerate()
                    .filter(move |&(_, &v)| self.host.has_edge(u, v) && self.class_of(u, v) != Some(j))
                    .map(move |(b, _)| (a, a + 1 + b))
            })
            .collect();
        let q = cs.len();
        let mut product_edges = 0usize;
        for &(a, b) in &fiber_graph_edges {
            for k in 0..q {
                product_edges += 1;
                if !self.host.has_edge(mapping[a][k], mapping[b][k]) {
                    return fail(report, format!("fiber edge ({a}, {b}) is not carried to copy {k}"));
                }
            }
        }
        for row in &mapping {
            for k in 0..q {
                for l in k + 1..q {
                    product_edges += 1;
                    if !self.host.has_edge(row[k], row[l]) {
                        return fail(report, format!("clique copy over {} is broken", row[0]));
                    }
                }
            }
        }
        let carrier_edges = self.host.induced_subgraph(&carrier)?.edge_count();
        if carrier_edges != product_edges {
            return fail(report, format!("carrier has {carrier_edges} edges, product has {product_edges}"));
        }
        report.is_product = true;
        report.mapping = mapping;
        Ok(report)
    }

    /// Hyperplanes whose sectors put `x` and `y` apart.
    pub fn separating_hyperplanes(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        self.host.check_vertex(x)?;
        self.host.check_vertex(y)?;
        let mut out = Vec::new();
        for j in 0..self.classes.len() {
            let l = self.sector_labels(j)?;
            if l[x] != l[y] {
                out.push(j);
            }
        }
        Ok(out)
    }

    /// A path is a geodesic iff it crosses no hyperplane twice.
    pub fn is_geodesic(&self, path: &[usize]) -> Result<GeodesicCheck> {
        if path.is_empty() {
            return Err(Error::EmptyPath);
        }
        for &v in path {
            self.host.check_vertex(v)?;
        }
        let mut first_step = vec![usize::MAX; self.classes.len()];
        for (i, w) in path.windows(2).enumerate() {
            let j = self.class_of(w[0], w[1]).ok_or(Error::NotAPath(w[0], w[1]))?;
            if first_step[j] != usize::MAX {
                return Ok(GeodesicCheck {
                    geodesic: false,
                    repeated: Some(RepeatedCrossing { hyperplane: j, first_step: first_step[j], second_step: i }),
                });
            }
            first_step[j] = i;
        }
        Ok(GeodesicCheck { geodesic: true, repeated: None })
    }

    /// Some square has one pair of opposite sides in each hyperplane.
    pub fn are_transverse(&self, j1: usize, j2: usize) -> Result<bool> {
        self.check(j1)?;
        self.check(j2)?;
        if j1 == j2 {
            return Err(Error::SameHyperplane(j1));
        }
        Ok(self.transverse.contains(&(j1.min(j2), j1.max(j2))))
    }

    /// One vertex per hyperplane, edges between transverse pairs.
    pub fn crossing_graph(&self) -> Graph {
        Graph::from_edges(self.classes.len(), self.transverse.iter().copied()).expect("valid classes")
    }

    pub fn summary(&self) -> HyperplaneSummary {
        let classes = (0..self.classes.len()).map(|j| self.edges_of(j).unwrap()).collect();
        let sectors = (0..self.classes.len()).map(|j| self.sectors(j).unwrap()).collect();
        HyperplaneSummary { classes, sectors, crossing_graph: self.crossing_graph() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierReport {
    pub hyperplane: usize,
    pub carrier_size: usize,
    pub fiber_count: usize,
    pub fiber_size: usize,
    pub clique_size: usize,
    pub is_product: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mapping: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepeatedCrossing {
    pub hyperplane: usize,
    pub first_step: usize,
    pub second_step: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicCheck {
    pub geodesic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repeated: Option<RepeatedCrossing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneSummary {
    pub classes: Vec<Vec<(usize, usize)>>,
    pub sectors: Vec<Vec<VertexSet>>,
    pub crossing_graph: Graph,
}
