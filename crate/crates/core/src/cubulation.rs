//! The wallspace whose walls are sectors and their complements, and the
//! median graph of its consistent orientations.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Distances, Graph, VertexSet, UNREACHABLE};
use crate::hyperplanes::HyperplaneDecomposition;

pub const DEFAULT_ORIENTATION_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub hyperplane: usize,
    pub sector: VertexSet,
    pub complement: VertexSet,
}

#[derive(Clone, Debug)]
pub struct Wallspace {
    vertex_count: usize,
    walls: Vec<Wall>,
    /// `sides[2 * i]` is the sector of wall `i`, `sides[2 * i + 1]` its
    /// complement.
    sides: Vec<FixedBitSet>,
}

/// One bit per wall; a set bit means the sector side is chosen.
pub type Orientation = FixedBitSet;

/// One wall per sector, except that a hyperplane with exactly two sectors
/// contributes a single wall.
pub fn walls_from_graph(d: &HyperplaneDecomposition) -> Wallspace {
    let g = d.host();
    let n = g.vertex_count();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut walls = Vec::new();
    for j in 0..d.hyperplane_count() {
        for s in d.sectors(j).expect("valid hyperplane") {
            let complement: VertexSet = g.vertices().filter(|&v| !s.contains(v)).collect();
            let key = if s.contains(0) { s.as_slice().to_vec() } else { complement.as_slice().to_vec() };
            if seen.insert(key, ()).is_none() {
                walls.push(Wall { hyperplane: j, sector: s, complement });
            }
        }
    }
    let sides = walls.iter().flat_map(|w| [w.sector.to_mask(n), w.complement.to_mask(n)]).collect();
    Wallspace { vertex_count: n, walls, sides }
}

impl Wallspace {
    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall_count(&self) -> usize {
        self.walls.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn side(&self, wall: usize, sector: bool) -> &FixedBitSet {
        &self.sides[2 * wall + usize::from(!sector)]
    }

    pub fn principal_orientation(&self, x: usize) -> Result<Orientation> {
        if x >= self.vertex_count {
            return Err(Error::VertexOutOfRange { vertex: x, count: self.vertex_count });
        }
        let mut o = FixedBitSet::with_capacity(self.walls.len());
        for i in 0..self.walls.len() {
            o.set(i, self.sides[2 * i].contains(x));
        }
        Ok(o)
    }

    /// Every two chosen sides meet.
    pub fn is_consistent(&self, o: &Orientation) -> bool {
        let w = self.walls.len();
        (0..w).all(|i| (i + 1..w).all(|j| !self.side(i, o[i]).is_disjoint(self.side(j, o[j]))))
    }

    /// Number of walls separating `x` from `y`.
    pub fn separating_walls(&self, x: usize, y: usize) -> usize {
        (0..self.walls.len()).filter(|&i| self.sides[2 * i].contains(x) != self.sides[2 * i].contains(y)).count()
    }
}

#[derive(Clone, Debug)]
pub struct Cubulation {
    pub graph: Graph,
    /// Image of each host vertex: the index of its principal orientation.
    pub vertex_map: Vec<usize>,
    pub orientations: Vec<Orientation>,
}

/// Consistent orientations reachable from principal ones by single flips.
pub fn cubulate(ws: &Wallspace, cap: usize) -> Result<Cubulation> {
    let w = ws.walls.len();
    if ws.vertex_count == 0 {
        return Err(Error::EmptyVertexSet);
    }
    // meets[(2i + a) * 2w + (2j + b)]: side a of wall i meets side b of wall j.
    let m = 2 * w;
    let mut meets = vec![false; m * m];
    for p in 0..m {
        for q in 0..m {
            meets[p * m + q] = !ws.sides[p].is_disjoint(&ws.sides[q]);
        }
    }
    let side_index = |i: usize, sector: bool| 2 * i + usize::from(!sector);

    let mut index: HashMap<Orientation, usize> = HashMap::new();
    let mut orientations = Vec::new();
    let mut queue = VecDeque::new();
    let mut vertex_map = Vec::with_capacity(ws.vertex_count);
    for x in 0..ws.vertex_count {
        let o = ws.principal_orientation(x)?;
        let id = *index.entry(o.clone()).or_insert_with(|| {
            orientations.push(o);
            queue.push_back(orientations.len() - 1);
            orientations.len() - 1
        });
        vertex_map.push(id);
    }
    if orientations.len() > cap {
        return Err(Error::CapExceeded { what: "orientation count", cap });
    }

    let mut edges = Vec::new();
    while let Some(a) = queue.pop_front() {
        for i in 0..w {
            let o = &orientations[a];
            let flipped = side_index(i, !o[i]);
            let ok = (0..w).all(|j| j == i || meets[flipped * m + side_index(j, o[j])]);
            if !ok {
                continue;
            }
            let mut next = o.clone();
            next.toggle(i);
            let b = match index.get(&next) {
                Some(&b) => b,
                None => {
                    if orientations.len() == cap {
                        return Err(Error::CapExceeded { what: "orientation count", cap });
                    }
                    orientations.push(next.clone());
                    index.insert(next, orientations.len() - 1);
                    queue.push_back(orientations.len() - 1);
                    orientations.len() - 1
                }
            };
            if a < b {
                edges.push((a, b));
            }
        }
    }
    Ok(Cubulation { graph: Graph::from_edges(orientations.len(), edges)?, vertex_map, orientations })
}

/// Convenience: hyperplanes, walls and cubulation of a connected graph.
pub fn cubulate_graph(g: &Graph, cap: usize) -> Result<(Wallspace, Cubulation)> {
    if !g.is_connected() {
        return Err(Error::GraphDisconnected);
    }
    let ws = walls_from_graph(&HyperplaneDecomposition::new(g));
    let c = cubulate(&ws, cap)?;
    Ok((ws, c))
}

/// How far the map from the host to its cubulation is from an isometry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuasiIsometryReport {
    /// Largest `|d_C(f x, f y) - d_X(x, y)|`.
    pub max_additive_error: usize,
    /// Smallest `L` with `d / L <= d' <= L d` on distinct pairs, if any.
    pub multiplicative_constant: Option<f64>,
    /// Largest distance from a vertex of the cubulation to the image.
    pub coboundedness: usize,
}

pub fn quasi_isometry_report(g: &Graph, c: &Cubulation) -> Result<QuasiIsometryReport> {
    if !g.is_connected() {
        return Err(Error::GraphDisconnected);
    }
    let dg = Distances::new(g);
    let n = g.vertex_count();
    let mut max_err = 0usize;
    let mut lambda: Option<f64> = Some(1.0);
    for x in 0..n {
        let dc = c.graph.bfs_raw(c.vertex_map[x]);
        for y in x + 1..n {
            let a = dg.raw(x, y) as usize;
            let b = dc[c.vertex_map[y]] as usize;
            max_err = max_err.max(a.abs_diff(b));
            lambda = match lambda {
                Some(_) if b == 0 => None,
                Some(l) => Some(l.max(a as f64 / b as f64).max(b as f64 / a as f64)),
                None => None,
            };
        }
    }
    // Multi-source BFS from the image.
    let mut dist = vec![UNREACHABLE; c.graph.vertex_count()];
    let mut queue = VecDeque::new();
    for &v in &c.vertex_map {
        if dist[v] != 0 {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in c.graph.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let coboundedness = dist.iter().copied().max().unwrap_or(0) as usize;
    Ok(QuasiIsometryReport { max_additive_error: max_err, multiplicative_constant: lambda, coboundedness })
}
