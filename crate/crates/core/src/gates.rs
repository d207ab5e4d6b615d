//! Gates and gated subgraphs.
//!
//! A gate for `x` in `Y` is a vertex `y` of `Y` lying on a geodesic from `x`
//! to every vertex of `Y`. When it exists it is the unique nearest point of
//! `Y`, so the search only ever tests the nearest candidate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Distances, Graph, VertexSet, UNREACHABLE};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GateResult {
    Gated {
        gate: usize,
    },
    /// `nearest` is the smallest vertex of `Y` closest to `vertex`; `blocked`
    /// is a vertex of `Y` with no geodesic from `vertex` through `nearest`.
    NotGated {
        vertex: usize,
        nearest: usize,
        blocked: usize,
    },
}

impl GateResult {
    pub fn gate(&self) -> Option<usize> {
        match *self {
            GateResult::Gated { gate } => Some(gate),
            GateResult::NotGated { .. } => None,
        }
    }
}

fn validate(g: &Graph, ys: &VertexSet) -> Result<()> {
    if ys.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    ys.check_in(g)
}

/// Gate of `x` in `ys`, computed with two BFS runs.
pub fn gate(g: &Graph, ys: &VertexSet, x: usize) -> Result<GateResult> {
    validate(g, ys)?;
    g.check_vertex(x)?;
    let from_x = g.bfs_raw(x);
    let nearest = nearest_in(&from_x, ys, x)?;
    let from_y = g.bfs_raw(nearest);
    Ok(judge(x, nearest, ys, |z| from_x[z], |z| from_y[z]))
}

/// Same as [`gate`], reading distances from a precomputed table.
pub fn gate_with(d: &Distances, ys: &VertexSet, x: usize) -> Result<GateResult> {
    if ys.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let nearest = nearest_in(d.row(x), ys, x)?;
    Ok(judge(x, nearest, ys, |z| d.raw(x, z), |z| d.raw(nearest, z)))
}

fn nearest_in(from_x: &[u32], ys: &VertexSet, x: usize) -> Result<usize> {
    let y = ys.iter().min_by_key(|&y| (from_x[y], y)).expect("nonempty");
    if from_x[y] == UNREACHABLE {
        return Err(Error::Disconnected(x, y));
    }
    Ok(y)
}

fn judge(x: usize, y: usize, ys: &VertexSet, dx: impl Fn(usize) -> u32, dy: impl Fn(usize) -> u32) -> GateResult {
    let base = dx(y) as u64;
    match ys.iter().find(|&z| base + dy(z) as u64 != dx(z) as u64) {
        None => GateResult::Gated { gate: y },
        Some(z) => GateResult::NotGated { vertex: x, nearest: y, blocked: z },
    }
}

/// Every vertex of `g` has a gate in `ys`.
pub fn is_gated(g: &Graph, ys: &VertexSet) -> Result<bool> {
    validate(g, ys)?;
    if !g.is_connected() {
        return Err(Error::GraphDisconnected);
    }
    is_gated_with(&Distances::new(g), ys)
}

pub fn is_gated_with(d: &Distances, ys: &VertexSet) -> Result<bool> {
    first_ungated_with(d, ys).map(|r| r.is_none())
}

/// The first vertex (in index order) lacking a gate in `ys`.
pub fn first_ungated_with(d: &Distances, ys: &VertexSet) -> Result<Option<GateResult>> {
    if ys.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    for x in 0..d.vertex_count() {
        if ys.contains(x) {
            continue;
        }
        let r = gate_with(d, ys, x)?;
        if r.gate().is_none() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}
