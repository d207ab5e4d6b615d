//! Constructors for graphs that are quasi-median by construction: prisms
//! (products of complete graphs) and gated amalgams of them.
//!
//! [`random_quasi_median`] draws from a ChaCha8 stream seeded with
//! `seed_from_u64(seed)`, so a seed names the same graph on every platform.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::is_gated;
use crate::graph::{Graph, VertexSet};

/// Cartesian product `K_{s1} × ... × K_{sk}`. Vertex indices are the
/// mixed-radix numbers of the coordinate tuples, first coordinate most
/// significant.
pub fn prism(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() {
        return Err(Error::InvalidPrism("no factors".into()));
    }
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidPrism(format!("factor {i} has size 0")));
    }
    Ok(sizes.iter().skip(1).fold(Graph::complete(sizes[0]), |g, &s| g.cartesian_product(&Graph::complete(s))))
}

/// The `n`-dimensional hypercube; `Q0` is a single vertex.
pub fn hypercube(n: usize) -> Graph {
    if n == 0 {
        Graph::complete(1)
    } else {
        prism(&vec![2; n]).expect("nonempty factors")
    }
}

/// Two graphs and a bijection `(vertex of g1, vertex of g2)` between the
/// subgraphs to be identified.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmalgamSpec {
    pub g1: Graph,
    pub g2: Graph,
    pub correspondence: Vec<(usize, usize)>,
}

/// Result of a gated amalgam. Vertices of `g1` keep their indices;
/// `right_map[v]` is the new index of vertex `v` of `g2`.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub graph: Graph,
    pub right_map: Vec<usize>,
}

impl AmalgamSpec {
    fn sides(&self) -> (VertexSet, VertexSet) {
        (self.correspondence.iter().map(|&(a, _)| a).collect(), self.correspondence.iter().map(|&(_, b)| b).collect())
    }

    /// Checks that the correspondence is an isomorphism of induced subgraphs
    /// and that both sides are gated.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCorrespondence(m));
        if self.correspondence.is_empty() {
            return bad("empty correspondence".into());
        }
        for &(a, b) in &self.correspondence {
            self.g1.check_vertex(a)?;
            self.g2.check_vertex(b)?;
        }
        let (left, right) = self.sides();
        if left.len() != self.correspondence.len() || right.len() != self.correspondence.len() {
            return bad("correspondence is not injective".into());
        }
        for (i, &(a, b)) in self.correspondence.iter().enumerate() {
            for &(a2, b2) in &self.correspondence[i + 1..] {
                if self.g1.has_edge(a, a2) != self.g2.has_edge(b, b2) {
                    return bad(format!("pairs ({a}, {b}) and ({a2}, {b2}) disagree on adjacency"));
                }
            }
        }
        if !is_gated(&self.g1, &left)? {
            return Err(Error::NotGated { side: 1 });
        }
        if !is_gated(&self.g2, &right)? {
            return Err(Error::NotGated { side: 2 });
        }
        Ok(())
    }
}

/// Glues `g1` and `g2` along their corresponded gated subgraphs.
pub fn gated_amalgam(spec: &AmalgamSpec) -> Result<Graph> {
    gated_amalgam_mapped(spec).map(|a| a.graph)
}

pub fn gated_amalgam_mapped(spec: &AmalgamSpec) -> Result<Amalgam> {
    spec.validate()?;
    let n1 = spec.g1.vertex_count();
    let mut right_map = vec![usize::MAX; spec.g2.vertex_count()];
    for &(a, b) in &spec.correspondence {
        right_map[b] = a;
    }
    let mut next = n1;
    for slot in right_map.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let edges = spec.g1.edges().chain(spec.g2.edges().map(|(u, v)| (right_map[u], right_map[v])));
    let graph = Graph::from_edges(next, edges)?;
    Ok(Amalgam { graph, right_map })
}

/// Knobs for [`random_quasi_median_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomConfig {
    pub steps: usize,
    /// Largest clique factor drawn (at least 2).
    pub max_prism: usize,
    /// Largest number of factors in a freshly drawn prism.
    pub max_factors: usize,
    /// Growth stops before the graph would exceed this many vertices.
    pub max_vertices: usize,
}

impl RandomConfig {
    pub fn new(steps: usize, max_prism: usize) -> Self {
        RandomConfig { steps, max_prism, max_factors: 3, max_vertices: 300 }
    }
}

/// A prism already glued into the graph, with the host vertex of every
/// coordinate tuple.
struct Block {
    sizes: Vec<usize>,
    vertices: Vec<usize>,
}

fn mixed_radix(sizes: &[usize], coords: &[usize]) -> usize {
    sizes.iter().zip(coords).fold(0, |acc, (&s, &c)| acc * s + c)
}

fn decode(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut coords = vec![0; sizes.len()];
    for (c, &s) in coords.iter_mut().zip(sizes).rev() {
        *c = index % s;
        index /= s;
    }
    coords
}

/// Seeded random quasi-median graph with default limits (at most 3 factors
/// per prism, at most 300 vertices).
pub fn random_quasi_median(seed: u64, steps: usize, max_prism: usize) -> Result<Graph> {
    random_quasi_median_with(seed, &RandomConfig::new(steps, max_prism))
}

/// Starts from a random prism, then repeatedly glues a fresh prism along a
/// coordinate sub-prism of one already placed. Sub-prisms of a prism are
/// gated, and gatedness passes from a gated piece to the whole amalgam, so
/// every gluing is a gated amalgam. A sub-prism with no free coordinate is a
/// single vertex; one free coordinate gives a maximal clique.
pub fn random_quasi_median_with(seed: u64, cfg: &RandomConfig) -> Result<Graph> {
    if cfg.steps == 0 {
        return Err(Error::ZeroSteps);
    }
    let max_prism = cfg.max_prism.max(2);
    let max_factors = cfg.max_factors.max(1);
    let budget = cfg.max_vertices.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let factors = rng.random_range(1..=max_factors);
    let mut sizes: Vec<usize> = (0..factors).map(|_| rng.random_range(2..=max_prism)).collect();
    while sizes.iter().product::<usize>() > budget {
        shrink(&mut sizes);
        if sizes.is_empty() {
            return Ok(Graph::complete(1));
        }
    }
    let mut graph = prism(&sizes)?;
    let mut blocks = vec![Block { vertices: graph.vertices().collect(), sizes }];

    for _ in 1..cfg.steps {
        let room = budget.saturating_sub(graph.vertex_count());
        if room == 0 {
            break;
        }
        let block = blocks.choose(&mut rng).expect("at least one block");
        let free: Vec<bool> = block.sizes.iter().map(|_| rng.random_bool(0.5)).collect();
        let fixed: Vec<usize> = block.sizes.iter().map(|&s| rng.random_range(0..s)).collect();
        let mut shared: Vec<usize> = block.sizes.iter().zip(&free).filter(|(_, &f)| f).map(|(&s, _)| s).collect();
        let extra_count = rng.random_range(1..=max_factors);
        let mut extra: Vec<usize> = (0..extra_count).map(|_| rng.random_range(2..=max_prism)).collect();
        // Added vertices: |shared| * (|extra| - 1).
        let added = |shared: &[usize], extra: &[usize]| {
            shared.iter().product::<usize>() * (extra.iter().product::<usize>() - 1)
        };
        while extra.len() > 1 && added(&shared, &extra) > room {
            shrink(&mut extra);
        }
        if added(&shared, &extra) > room {
            extra = vec![2];
        }
        while !shared.is_empty() && added(&shared, &extra) > room {
            shared.pop();
        }
        let free: Vec<bool> = if shared.len() == free.iter().filter(|&&f| f).count() {
            free
        } else {
            // Keep the first `shared.len()` free coordinates.
            let mut left = shared.len();
            free.iter()
                .map(|&f| {
                    let keep = f && left > 0;
                    if keep {
                        left -= 1;
                    }
                    keep
                })
                .collect()
        };

        let mut new_sizes = shared.clone();
        new_sizes.extend(&extra);
        let piece = prism(&new_sizes)?;
        let sub_count: usize = shared.iter().product();
        let mut correspondence = Vec::with_capacity(sub_count);
        for s in 0..sub_count {
            let sub = decode(&shared, s);
            let mut it = sub.iter();
            let coords: Vec<usize> = free
                .iter()
                .zip(&fixed)
                .map(|(&f, &x)| if f { *it.next().expect("free coordinate") } else { x })
                .collect();
            let host_vertex = block.vertices[mixed_radix(&block.sizes, &coords)];
            let mut piece_coords = sub.clone();
            piece_coords.extend(std::iter::repeat_n(0, extra.len()));
            correspondence.push((host_vertex, mixed_radix(&new_sizes, &piece_coords)));
        }
        let spec = AmalgamSpec { g1: graph, g2: piece, correspondence };
        let amalgam = gated_amalgam_mapped(&spec)?;
        graph = amalgam.graph;
        blocks.push(Block { sizes: new_sizes, vertices: amalgam.right_map });
    }
    Ok(graph)
}

/// Drops the largest factor by one, removing factors that reach 1.
fn shrink(sizes: &mut Vec<usize>) {
    if let Some(i) = (0..sizes.len()).max_by_key(|&i| (sizes[i], i)) {
        sizes[i] -= 1;
        if sizes[i] < 2 {
            sizes.remove(i);
        }
    }
}
