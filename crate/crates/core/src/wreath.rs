//! Graphs of wreaths over a finite median host.
//!
//! A wreath is a nonempty convex vertex set of the host together with a
//! coloring of the lamp set by a finite group. Colorings are functions on
//! the whole lamp set; only lamps inside the support can be recolored.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Distances, Graph, VertexSet};
use crate::groups::{FiniteGroup, GroupSpec};
use crate::hyperplanes::HyperplaneDecomposition;
use crate::recognition::is_median;

pub const DEFAULT_CONVEX_CAP: usize = 100_000;
pub const DEFAULT_WREATH_CAP: usize = 200_000;

/// The smallest interval-closed set containing `set`.
pub fn convex_hull(d: &Distances, set: &VertexSet) -> VertexSet {
    let n = d.vertex_count();
    let mut inside = set.to_mask(n);
    let mut members: Vec<usize> = set.iter().collect();
    let mut done = 0;
    // Each new member only needs pairing with the members before it.
    while done < members.len() {
        let u = members[done];
        for i in 0..done {
            let v = members[i];
            for x in 0..n {
                if !inside.contains(x) && d.in_interval(u, x, v) {
                    inside.insert(x);
                    members.push(x);
                }
            }
        }
        done += 1;
    }
    VertexSet::from_mask(&inside)
}

/// All nonempty convex sets of a median graph, sorted by size then
/// lexicographically.
pub fn enumerate_convex_subgraphs(host: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    if !is_median(host).status.is_positive() {
        return Err(Error::NotMedian);
    }
    let d = Distances::new(host);
    let mut found: BTreeSet<VertexSet> = host.vertices().map(VertexSet::singleton).collect();
    let mut stack: Vec<VertexSet> = found.iter().cloned().collect();
    if found.len() > cap {
        return Err(Error::CapExceeded { what: "convex subgraph count", cap });
    }
    // Every convex set is connected, so it grows from any of its vertices
    // by repeatedly adding a neighbor and closing up.
    while let Some(s) = stack.pop() {
        let frontier: BTreeSet<usize> =
            s.iter().flat_map(|v| host.neighbors(v).iter().copied()).filter(|&u| !s.contains(u)).collect();
        for u in frontier {
            let mut grown = s.as_slice().to_vec();
            grown.push(u);
            let h = convex_hull(&d, &VertexSet::new(grown));
            if !found.contains(&h) {
                if found.len() == cap {
                    return Err(Error::CapExceeded { what: "convex subgraph count", cap });
                }
                found.insert(h.clone());
                stack.push(h);
            }
        }
    }
    let mut out: Vec<VertexSet> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct WreathConfig {
    pub host: Graph,
    pub omega: VertexSet,
    pub group: GroupSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Wreath {
    pub support: VertexSet,
    /// Lamp → color, identity colors omitted.
    pub coloring: BTreeMap<usize, usize>,
}

/// A validated configuration with the host's hyperplanes.
pub struct WreathSpace {
    host: Graph,
    omega: VertexSet,
    group: FiniteGroup,
    hyperplanes: HyperplaneDecomposition,
    distances: Distances,
}

impl WreathSpace {
    pub fn new(cfg: &WreathConfig) -> Result<Self> {
        if !is_median(&cfg.host).status.is_positive() {
            return Err(Error::NotMedian);
        }
        if cfg.omega.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        cfg.omega.check_in(&cfg.host)?;
        let GroupSpec::Finite(group) = &cfg.group else {
            return Err(Error::InvalidGroup("lamp group must be finite".into()));
        };
        Ok(WreathSpace {
            host: cfg.host.clone(),
            omega: cfg.omega.clone(),
            group: group.clone(),
            hyperplanes: HyperplaneDecomposition::new(&cfg.host),
            distances: Distances::new(&cfg.host),
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    fn check(&self, w: &Wreath) -> Result<()> {
        let n = self.host.vertex_count();
        let valid_support = !w.support.is_empty()
            && w.support.iter().all(|v| v < n)
            && convex_hull(&self.distances, &w.support) == w.support;
        let valid_coloring = w
            .coloring
            .iter()
            .all(|(&p, &g)| self.omega.contains(p) && g < self.group.order() && g != self.group.identity());
        if valid_support && valid_coloring {
            Ok(())
        } else {
            Err(Error::ConfigMismatch)
        }
    }

    /// Hyperplanes with an edge inside `s`.
    fn incidence(&self, s: &VertexSet) -> BTreeSet<usize> {
        s.iter()
            .flat_map(|u| self.host.neighbors(u).iter().filter(move |&&v| v > u && s.contains(v)).map(move |&v| (u, v)))
            .map(|(u, v)| self.hyperplanes.class_of(u, v).expect("host edge"))
            .collect()
    }

    /// `small` is `big` cut down to one sector of `j`.
    fn is_cut(&self, j: usize, small: &VertexSet, big: &VertexSet) -> bool {
        let labels = self.hyperplanes.sector_labels(j).expect("valid hyperplane");
        let Some(first) = small.min() else { return false };
        let side = labels[first];
        big.iter().filter(|&v| labels[v] == side).eq(small.iter())
    }

    /// Move test on supports. Returns the incidence-only verdict alongside
    /// the full one so callers can report where they differ.
    fn support_move(&self, a: &VertexSet, b: &VertexSet) -> (bool, bool) {
        if a == b {
            return (false, false);
        }
        let (ia, ib) = (self.incidence(a), self.incidence(b));
        let diff: Vec<usize> = ia.symmetric_difference(&ib).copied().collect();
        if diff.len() != 1 {
            return (false, false);
        }
        let j = diff[0];
        let full = if ia.contains(&j) { self.is_cut(j, b, a) } else { self.is_cut(j, a, b) };
        (true, full)
    }

    pub fn wreath_edge(&self, w1: &Wreath, w2: &Wreath) -> Result<bool> {
        self.check(w1)?;
        self.check(w2)?;
        if w1.coloring == w2.coloring {
            return Ok(self.support_move(&w1.support, &w2.support).1);
        }
        if w1.support != w2.support {
            return Ok(false);
        }
        let points: BTreeSet<usize> = w1.coloring.keys().chain(w2.coloring.keys()).copied().collect();
        let differing: Vec<usize> = points.into_iter().filter(|p| w1.coloring.get(p) != w2.coloring.get(p)).collect();
        Ok(differing.len() == 1 && w1.support.contains(differing[0]))
    }

    fn coloring_of(&self, mut index: usize) -> BTreeMap<usize, usize> {
        let q = self.group.order();
        let mut out = BTreeMap::new();
        for p in self.omega.iter() {
            let g = index % q;
            index /= q;
            if g != self.group.identity() {
                out.insert(p, g);
            }
        }
        out
    }

    pub fn build(&self, convex_cap: usize, vertex_cap: usize) -> Result<WreathGraph> {
        let supports = enumerate_convex_subgraphs(&self.host, convex_cap)?;
        let q = self.group.order();
        let lamps = self.omega.len();
        let colorings = (0..lamps)
            .try_fold(1usize, |acc, _| acc.checked_mul(q))
            .filter(|&c| c.checked_mul(supports.len()).is_some_and(|t| t <= vertex_cap))
            .ok_or(Error::CapExceeded { what: "wreath count", cap: vertex_cap })?;
        let id = |s: usize, c: usize| s * colorings + c;

        let mut edges = Vec::new();
        let mut disagreements = 0;
        for a in 0..supports.len() {
            for b in a + 1..supports.len() {
                let (incidence_only, full) = self.support_move(&supports[a], &supports[b]);
                if incidence_only != full {
                    disagreements += 1;
                    log::debug!(
                        "supports {:?} and {:?} differ in one hyperplane but are not a cut",
                        supports[a],
                        supports[b]
                    );
                }
                if full {
                    edges.extend((0..colorings).map(|c| (id(a, c), id(b, c))));
                }
            }
        }
        // Recolorings: lamp k (the k-th point of omega) is digit k of the
        // coloring index.
        let lamp_pos: HashMap<usize, usize> = self.omega.iter().enumerate().map(|(k, p)| (p, k)).collect();
        for (s, support) in supports.iter().enumerate() {
            for p in support.iter().filter(|p| self.omega.contains(*p)) {
                let place = q.pow(lamp_pos[&p] as u32);
                for c in 0..colorings {
                    let digit = (c / place) % q;
                    for g in digit + 1..q {
                        edges.push((id(s, c), id(s, c + (g - digit) * place)));
                    }
                }
            }
        }
        if disagreements > 0 {
            log::info!("{disagreements} support pairs pass the incidence test without being a single-hyperplane cut");
        }
        let graph = Graph::from_edges(supports.len() * colorings, edges)?;
        Ok(WreathGraph { graph, supports, colorings_per_support: colorings, incidence_disagreements: disagreements })
    }

    pub fn wreath(&self, g: &WreathGraph, vertex: usize) -> Wreath {
        Wreath {
            support: g.supports[vertex / g.colorings_per_support].clone(),
            coloring: self.coloring_of(vertex % g.colorings_per_support),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WreathGraph {
    pub graph: Graph,
    /// Vertex `v` has support `supports[v / colorings_per_support]` and
    /// coloring index `v % colorings_per_support`.
    pub supports: Vec<VertexSet>,
    pub colorings_per_support: usize,
    /// Support pairs whose hyperplane incidences differ in exactly one
    /// hyperplane without one being a sector cut of the other.
    pub incidence_disagreements: usize,
}

pub fn build_wreath_graph(cfg: &WreathConfig) -> Result<(WreathSpace, WreathGraph)> {
    let space = WreathSpace::new(cfg)?;
    let g = space.build(DEFAULT_CONVEX_CAP, DEFAULT_WREATH_CAP)?;
    Ok((space, g))
}
