//! Large joins, the peripheral collection of a labelled graph, and the
//! relative hyperbolicity verdict for graph products.
//!
//! Subgraphs are vertex-induced and represented as bitmasks, which is why
//! the vertex count is capped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph_product::GraphProduct;
use crate::union_find::UnionFind;

pub const DEFAULT_VERTEX_CAP: usize = 16;
const MAX_ITERATIONS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Finiteness {
    Finite,
    Infinite,
}

/// A graph whose vertices are labelled by groups known only up to
/// finiteness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LabelledGammaJson", into = "LabelledGammaJson")]
pub struct LabelledGamma {
    gamma: Graph,
    finiteness: Vec<Finiteness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelledGammaJson {
    pub gamma: Graph,
    pub finiteness: Vec<Finiteness>,
}

impl TryFrom<LabelledGammaJson> for LabelledGamma {
    type Error = Error;

    fn try_from(j: LabelledGammaJson) -> Result<Self> {
        LabelledGamma::new(j.gamma, j.finiteness)
    }
}

impl From<LabelledGamma> for LabelledGammaJson {
    fn from(l: LabelledGamma) -> Self {
        LabelledGammaJson { gamma: l.gamma, finiteness: l.finiteness }
    }
}

impl LabelledGamma {
    pub fn new(gamma: Graph, finiteness: Vec<Finiteness>) -> Result<Self> {
        if finiteness.len() != gamma.vertex_count() {
            return Err(Error::LabelMismatch { labels: finiteness.len(), vertices: gamma.vertex_count() });
        }
        if gamma.vertex_count() == 0 {
            return Err(Error::InvalidArgument("labelled graph has no vertices".into()));
        }
        Ok(LabelledGamma { gamma, finiteness })
    }

    pub fn uniform(gamma: Graph, f: Finiteness) -> Self {
        let n = gamma.vertex_count();
        Self::new(gamma, vec![f; n]).expect("nonempty graph")
    }

    pub fn from_product(p: &GraphProduct) -> Result<Self> {
        let finiteness =
            p.groups().iter().map(|g| if g.is_finite() { Finiteness::Finite } else { Finiteness::Infinite }).collect();
        Self::new(p.gamma().clone(), finiteness)
    }

    pub fn gamma(&self) -> &Graph {
        &self.gamma
    }

    pub fn finiteness(&self) -> &[Finiteness] {
        &self.finiteness
    }

    /// A subgraph is narrow when it is complete with finite labels only;
    /// the empty subgraph is narrow.
    pub fn is_vast(&self, sub: &VertexSet) -> Result<bool> {
        sub.check_in(&self.gamma)?;
        let narrow = sub.iter().all(|u| self.finiteness[u] == Finiteness::Finite)
            && sub.iter().all(|u| sub.iter().all(|v| u == v || self.gamma.has_edge(u, v)));
        Ok(!narrow)
    }

    /// `sub` together with the vertices whose link meets `sub` in a vast
    /// subgraph.
    pub fn cp(&self, sub: &VertexSet) -> Result<VertexSet> {
        sub.check_in(&self.gamma)?;
        let mut out = sub.as_slice().to_vec();
        for v in self.gamma.vertices() {
            if sub.contains(v) {
                continue;
            }
            let meet: VertexSet = self.gamma.neighbors(v).iter().copied().filter(|&u| sub.contains(u)).collect();
            if self.is_vast(&meet)? {
                out.push(v);
            }
        }
        Ok(VertexSet::new(out))
    }

    fn masks(&self, cap: usize) -> Result<Masks> {
        let n = self.gamma.vertex_count();
        if n > cap || n > 31 {
            return Err(Error::VertexCapExceeded { count: n, cap: cap.min(31) });
        }
        let adj: Vec<u32> = (0..n).map(|v| self.gamma.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
        let finite: u32 = (0..n).filter(|&v| self.finiteness[v] == Finiteness::Finite).fold(0, |m, v| m | 1 << v);
        let mut narrow = vec![false; 1 << n];
        narrow[0] = true;
        for s in 1u32..1 << n {
            let v = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            narrow[s as usize] = finite & (1 << v) != 0 && rest & !adj[v] == 0 && narrow[rest as usize];
        }
        Ok(Masks { n, adj, narrow })
    }

    /// All large joins `(A, B)`: disjoint nonempty vast sets with every
    /// vertex of `A` adjacent to every vertex of `B`, listed once per
    /// unordered pair with `min A < min B`.
    pub fn large_joins(&self, cap: usize) -> Result<Vec<(VertexSet, VertexSet)>> {
        let m = self.masks(cap)?;
        let mut out = Vec::new();
        m.for_each_join(|a, b| out.push((mask_set(a), mask_set(b))));
        Ok(out)
    }

    pub fn compute_j(&self, opts: &JOptions) -> Result<PeripheralCollection> {
        let m = self.masks(opts.vertex_cap)?;
        let full = (1u32 << m.n) - 1;
        let mut is_support = vec![false; 1 << m.n];
        m.for_each_join(|a, b| is_support[(a | b) as usize] = true);
        let mut current: Vec<u32> = (0..1u32 << m.n).filter(|&s| is_support[s as usize]).collect();
        if opts.maximal_joins {
            let all = current.clone();
            current.retain(|&s| !all.iter().any(|&t| t != s && s & t == s));
        }
        let initial_supports = current.len();

        let mut iterations = 0;
        loop {
            let next = m.step(&current);
            if next == current {
                break;
            }
            current = next;
            iterations += 1;
            if iterations > MAX_ITERATIONS {
                return Err(Error::CapExceeded { what: "peripheral iterations", cap: MAX_ITERATIONS });
            }
        }
        let covered = current.iter().fold(0, |acc, &s| acc | s);
        let mut members: Vec<VertexSet> = current.iter().map(|&s| mask_set(s)).collect();
        members.extend((0..m.n).filter(|&v| covered & (1 << v) == 0).map(VertexSet::singleton));
        members.sort();
        Ok(PeripheralCollection { is_whole: current == [full], members, iterations, initial_supports })
    }

    /// Relative hyperbolicity of the graph product: it holds iff the
    /// peripheral collection is not the whole graph.
    pub fn classify(&self, opts: &JOptions) -> Result<Classification> {
        if self.gamma.vertex_count() < 2 {
            return Err(Error::SingleVertex);
        }
        let j = self.compute_j(opts)?;
        let degenerate = !self.is_vast(&self.gamma.vertices().collect())?;
        let verdict = if j.is_whole { Verdict::NotRelativelyHyperbolic } else { Verdict::RelativelyHyperbolic };
        Ok(Classification { verdict, peripherals: j.members, iterations: j.iterations, degenerate })
    }
}

fn mask_set(s: u32) -> VertexSet {
    (0..32).filter(|&v| s & (1 << v) != 0).collect()
}

struct Masks {
    n: usize,
    adj: Vec<u32>,
    narrow: Vec<bool>,
}

impl Masks {
    fn vast(&self, s: u32) -> bool {
        !self.narrow[s as usize]
    }

    fn common_neighbors(&self, a: u32) -> u32 {
        let mut c = (1u32 << self.n) - 1;
        let mut rest = a;
        while rest != 0 {
            c &= self.adj[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        c
    }

    fn for_each_join(&self, mut f: impl FnMut(u32, u32)) {
        for a in 1u32..1 << self.n {
            if !self.vast(a) {
                continue;
            }
            // B ranges over vast submasks of the common neighborhood whose
            // smallest vertex exceeds that of A.
            let low = a.trailing_zeros();
            let pool = self.common_neighbors(a) & !((2u32 << low) - 1);
            let mut b = pool;
            while b != 0 {
                if self.vast(b) {
                    f(a, b);
                }
                b = (b - 1) & pool;
            }
        }
    }

    fn cp(&self, s: u32) -> u32 {
        (0..self.n).fold(s, |acc, v| if self.vast(self.adj[v] & s) { acc | 1 << v } else { acc })
    }

    fn step(&self, members: &[u32]) -> Vec<u32> {
        let mut uf = UnionFind::new(members.len());
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if self.vast(members[i] & members[j]) {
                    uf.union(i, j);
                }
            }
        }
        let mut unions = vec![0u32; members.len()];
        for (i, &s) in members.iter().enumerate() {
            unions[uf.find(i)] |= s;
        }
        let mut next: Vec<u32> = (0..members.len()).filter(|&i| uf.find(i) == i).map(|i| self.cp(unions[i])).collect();
        next.sort_unstable();
        next.dedup();
        next
    }
}

#[derive(Clone, Debug)]
pub struct JOptions {
    pub vertex_cap: usize,
    /// Seed the iteration with inclusion-maximal join supports only.
    pub maximal_joins: bool,
}

impl Default for JOptions {
    fn default() -> Self {
        JOptions { vertex_cap: DEFAULT_VERTEX_CAP, maximal_joins: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeripheralCollection {
    /// Members in sorted order, uncovered vertices added as singletons.
    pub members: Vec<VertexSet>,
    pub is_whole: bool,
    /// Number of merge steps until the collection stopped changing.
    pub iterations: usize,
    pub initial_supports: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    RelativelyHyperbolic,
    NotRelativelyHyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub peripherals: Vec<VertexSet>,
    pub iterations: usize,
    /// The whole graph is narrow, so the product is a finite group.
    pub degenerate: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use Finiteness::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::new(v.iter().copied())
    }

    fn infinite(g: Graph) -> LabelledGamma {
        LabelledGamma::uniform(g, Infinite)
    }

    #[test]
    fn vastness() {
        let lg = LabelledGamma::new(Graph::from_edges(3, [(0, 1)]).unwrap(), vec![Finite, Finite, Infinite]).unwrap();
        assert!(lg.is_vast(&vs(&[2])).unwrap());
        assert!(!lg.is_vast(&vs(&[0, 1])).unwrap());
        assert!(!lg.is_vast(&vs(&[])).unwrap());
        let two = LabelledGamma::uniform(Graph::edgeless(2), Finite);
        assert!(two.is_vast(&vs(&[0, 1])).unwrap());
        assert!(lg.is_vast(&vs(&[5])).is_err());
    }

    #[test]
    fn joins_of_small_graphs() {
        let p3 = infinite(Graph::path(3));
        let joins = p3.large_joins(16).unwrap();
        for want in [(vs(&[0]), vs(&[1])), (vs(&[1]), vs(&[2])), (vs(&[0, 2]), vs(&[1]))] {
            assert!(joins.contains(&want), "{want:?} missing from {joins:?}");
        }
        assert_eq!(joins.len(), 3);
        assert!(infinite(Graph::edgeless(2)).large_joins(16).unwrap().is_empty());
        assert!(LabelledGamma::uniform(Graph::complete(2), Finite).large_joins(16).unwrap().is_empty());
        assert_eq!(infinite(Graph::edgeless(17)).large_joins(16), Err(Error::VertexCapExceeded { count: 17, cap: 16 }));
    }

    #[test]
    fn cp_examples() {
        let star = infinite(Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap());
        assert_eq!(star.cp(&vs(&[1, 2])).unwrap(), vs(&[0, 1, 2]));
        assert_eq!(star.cp(&vs(&[0, 1, 2, 3])).unwrap(), vs(&[0, 1, 2, 3]));
        assert_eq!(star.cp(&vs(&[])).unwrap(), vs(&[]));
        // A single infinite leaf is vast too.
        assert_eq!(star.cp(&vs(&[1])).unwrap(), vs(&[0, 1]));
    }

    #[test]
    fn mask_cp_agrees_with_set_cp() {
        let lg = LabelledGamma::new(
            Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap(),
            vec![Finite, Infinite, Finite, Finite, Infinite],
        )
        .unwrap();
        let m = lg.masks(16).unwrap();
        for s in 0u32..32 {
            assert_eq!(mask_set(m.cp(s)), lg.cp(&mask_set(s)).unwrap());
            assert_eq!(m.vast(s), lg.is_vast(&mask_set(s)).unwrap());
        }
    }

    #[test]
    fn classify_examples() {
        let opts = JOptions::default();
        let k2 = infinite(Graph::complete(2)).classify(&opts).unwrap();
        assert_eq!(k2.verdict, Verdict::NotRelativelyHyperbolic);
        let free = infinite(Graph::edgeless(2)).classify(&opts).unwrap();
        assert_eq!(free.verdict, Verdict::RelativelyHyperbolic);
        assert_eq!(free.peripherals, vec![vs(&[0]), vs(&[1])]);
        let p4 = infinite(Graph::path(4)).classify(&opts).unwrap();
        assert_eq!(p4.verdict, Verdict::NotRelativelyHyperbolic);
        assert_eq!(p4.peripherals, vec![vs(&[0, 1, 2, 3])]);
        let p3 = infinite(Graph::path(3)).compute_j(&opts).unwrap();
        assert!(p3.is_whole);
        assert_eq!(infinite(Graph::complete(1)).classify(&opts), Err(Error::SingleVertex));
        let single = infinite(Graph::complete(1)).compute_j(&opts).unwrap();
        assert_eq!(single.members, vec![vs(&[0])]);
        let finite = LabelledGamma::uniform(Graph::complete(3), Finite).classify(&opts).unwrap();
        assert!(finite.degenerate);
        assert_eq!(finite.verdict, Verdict::RelativelyHyperbolic);
        assert_eq!(finite.peripherals.len(), 3);
    }

    #[test]
    fn pentagon_products() {
        // Infinite labels: edge and P3 supports meet in edges, which are vast.
        let c5 = infinite(Graph::cycle(5).unwrap()).classify(&JOptions::default()).unwrap();
        assert_eq!(c5.verdict, Verdict::NotRelativelyHyperbolic);
        // Finite labels: every join has a narrow side.
        let racg = LabelledGamma::uniform(Graph::cycle(5).unwrap(), Finite).classify(&JOptions::default()).unwrap();
        assert_eq!(racg.verdict, Verdict::RelativelyHyperbolic);
    }

    #[test]
    fn json() {
        let lg: LabelledGamma = serde_json::from_str(
            r#"{"gamma": {"vertices": 2, "edges": [[0, 1]]}, "finiteness": ["finite", "infinite"]}"#,
        )
        .unwrap();
        assert_eq!(lg.finiteness(), &[Finite, Infinite]);
        let c = lg.classify(&JOptions::default()).unwrap();
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"verdict":"relatively_hyperbolic","peripherals":[[0],[1]],"iterations":0,"degenerate":false}"#
        );
    }
}
