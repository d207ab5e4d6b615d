//! Backtracking searches over small patterns: induced subgraph embeddings,
//! isomorphisms and maximal cliques.

use super::{Graph, VertexSet};

/// Finds an induced copy of `pattern` in `host`.
///
/// Returns `embedding[p] = host vertex` for each pattern vertex `p`. Pattern
/// vertices are placed in index order and host candidates are tried in
/// ascending order, so the result is the lexicographically smallest
/// embedding tuple.
pub fn find_induced_subgraph(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let k = pattern.vertex_count();
    if k == 0 {
        return Some(Vec::new());
    }
    if k > host.vertex_count() {
        return None;
    }
    // For each pattern vertex, an earlier neighbor whose image seeds the
    // candidate list.
    let anchor: Vec<Option<usize>> = (0..k).map(|p| pattern.neighbors(p).iter().copied().find(|&q| q < p)).collect();
    let mut image = Vec::with_capacity(k);
    let mut used = vec![false; host.vertex_count()];
    if extend(host, pattern, &anchor, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn extend(host: &Graph, pattern: &Graph, anchor: &[Option<usize>], image: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let p = image.len();
    if p == pattern.vertex_count() {
        return true;
    }
    let need = pattern.degree(p);
    let all: Vec<usize>;
    let candidates: &[usize] = match anchor[p] {
        Some(q) => host.neighbors(image[q]),
        None => {
            all = host.vertices().collect();
            &all
        }
    };
    for &c in candidates {
        if used[c] || host.degree(c) < need {
            continue;
        }
        let consistent = (0..p).all(|q| pattern.has_edge(p, q) == host.has_edge(c, image[q]));
        if !consistent {
            continue;
        }
        image.push(c);
        used[c] = true;
        if extend(host, pattern, anchor, image, used) {
            return true;
        }
        used[c] = false;
        image.pop();
    }
    false
}

/// Finds an isomorphism `g -> h` as `map[v] = image of v`.
///
/// Plain backtracking refined by degree and neighbor-degree profiles; meant
/// for the small instances used in tests and verification reports.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let pg = profiles(g);
    let ph = profiles(h);
    let mut sg = pg.clone();
    let mut sh = ph.clone();
    sg.sort();
    sh.sort();
    if sg != sh {
        return None;
    }
    // Visit g in BFS order so later vertices usually have a mapped neighbor.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut state = IsoState { g, h, pg: &pg, ph: &ph, order: &order, map: &mut map, used: &mut used };
    if state.extend(0) {
        Some(map)
    } else {
        None
    }
}

struct IsoState<'a> {
    g: &'a Graph,
    h: &'a Graph,
    pg: &'a [(usize, Vec<usize>)],
    ph: &'a [(usize, Vec<usize>)],
    order: &'a [usize],
    map: &'a mut [usize],
    used: &'a mut [bool],
}

impl IsoState<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let mapped_neighbor = self.g.neighbors(v).iter().copied().find(|&w| self.map[w] != usize::MAX);
        let candidates: Vec<usize> = match mapped_neighbor {
            Some(w) => self.h.neighbors(self.map[w]).to_vec(),
            None => self.h.vertices().collect(),
        };
        for c in candidates {
            if self.used[c] || self.pg[v] != self.ph[c] {
                continue;
            }
            let ok = self.order[..depth].iter().all(|&u| self.g.has_edge(u, v) == self.h.has_edge(self.map[u], c));
            if !ok {
                continue;
            }
            self.map[v] = c;
            self.used[c] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.map[v] = usize::MAX;
            self.used[c] = false;
        }
        false
    }
}

fn profiles(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    g.vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

/// All maximal cliques (Bron–Kerbosch with pivoting), sorted.
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let p: Vec<usize> = g.vertices().collect();
    bron_kerbosch(g, &mut Vec::new(), p, Vec::new(), &mut out);
    out.sort();
    out
}

fn bron_kerbosch(g: &Graph, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<VertexSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(VertexSet::new(r.iter().copied()));
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&w| g.has_edge(u, w)).count())
        .expect("p is nonempty");
    let mut p = p;
    let mut x = x;
    let branch: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    for v in branch {
        let np = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}
