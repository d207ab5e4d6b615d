use std::collections::BTreeSet;

use proptest::prelude::*;
use quasimedian::relhyp::{Finiteness, JOptions, LabelledGamma};
use quasimedian::{Graph, VertexSet};

fn labelled(n: usize, edge_bits: &[bool], finite_bits: &[bool]) -> LabelledGamma {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if edge_bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    let fin = (0..n).map(|v| if finite_bits[v] { Finiteness::Finite } else { Finiteness::Infinite }).collect();
    LabelledGamma::new(Graph::from_edges(n, edges).unwrap(), fin).unwrap()
}

fn arb_labelled(max: usize) -> impl Strategy<Value = LabelledGamma> {
    (1..=max).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(proptest::bool::weighted(0.5), n * (n - 1) / 2),
            proptest::collection::vec(proptest::bool::ANY, n),
        )
            .prop_map(|(n, e, f)| labelled(n, &e, &f))
    })
}

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&v| m & (1 << v) != 0).collect())
}

/// The definition read literally: joins over all pairs of vertex sets, merge
/// components of the vast-intersection graph, saturate with cp.
fn literal_j(lg: &LabelledGamma) -> Vec<VertexSet> {
    let g = lg.gamma();
    let n = g.vertex_count();
    let all: Vec<VertexSet> = subsets(n).collect();
    let mut current: BTreeSet<VertexSet> = BTreeSet::new();
    for a in &all {
        for b in &all {
            let join = !a.is_empty()
                && !b.is_empty()
                && a.iter().all(|u| !b.contains(u) && b.iter().all(|v| g.has_edge(u, v)));
            if join && lg.is_vast(a).unwrap() && lg.is_vast(b).unwrap() {
                current.insert(a.iter().chain(b.iter()).collect());
            }
        }
    }
    loop {
        let members: Vec<VertexSet> = current.iter().cloned().collect();
        let mut comp: Vec<usize> = (0..members.len()).collect();
        // Relabel to a fixed point; small inputs only.
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..members.len() {
                for j in 0..members.len() {
                    let meet: VertexSet = members[i].iter().filter(|&v| members[j].contains(v)).collect();
                    if lg.is_vast(&meet).unwrap() && comp[j] < comp[i] {
                        comp[i] = comp[j];
                        changed = true;
                    }
                }
            }
        }
        let next: BTreeSet<VertexSet> = comp
            .iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(|&c| {
                let union: VertexSet =
                    (0..members.len()).filter(|&i| comp[i] == c).flat_map(|i| members[i].iter()).collect();
                lg.cp(&union).unwrap()
            })
            .collect();
        if next == current {
            break;
        }
        current = next;
    }
    let covered: BTreeSet<usize> = current.iter().flat_map(|s| s.iter()).collect();
    let mut out: Vec<VertexSet> = current.into_iter().collect();
    out.extend((0..n).filter(|v| !covered.contains(v)).map(VertexSet::singleton));
    out.sort();
    out
}

fn permute(lg: &LabelledGamma, perm: &[usize]) -> LabelledGamma {
    let mut fin = vec![Finiteness::Finite; perm.len()];
    for (v, &p) in perm.iter().enumerate() {
        fin[p] = lg.finiteness()[v];
    }
    LabelledGamma::new(lg.gamma().permuted(perm).unwrap(), fin).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_literal_definition(lg in arb_labelled(6)) {
        let j = lg.compute_j(&JOptions::default()).unwrap();
        prop_assert_eq!(j.members, literal_j(&lg));
    }

    #[test]
    fn maximal_joins_give_the_same_collection(lg in arb_labelled(9)) {
        let full = lg.compute_j(&JOptions::default()).unwrap();
        let pruned = lg.compute_j(&JOptions { maximal_joins: true, ..JOptions::default() }).unwrap();
        prop_assert_eq!(full.members, pruned.members);
        prop_assert!(pruned.initial_supports <= full.initial_supports);
    }

    #[test]
    fn permutation_equivariance(
        (lg, perm) in arb_labelled(9).prop_flat_map(|lg| {
            let n = lg.gamma().vertex_count();
            (Just(lg), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
    ) {
        let j = lg.compute_j(&JOptions::default()).unwrap();
        let mapped: BTreeSet<VertexSet> = j.members.iter().map(|s| s.iter().map(|v| perm[v]).collect()).collect();
        let jp = permute(&lg, &perm).compute_j(&JOptions::default()).unwrap();
        prop_assert_eq!(mapped, jp.members.into_iter().collect::<BTreeSet<_>>());
        prop_assert_eq!(j.is_whole, jp.is_whole);
    }

    #[test]
    fn covering_and_iteration_bound(lg in arb_labelled(10)) {
        let j = lg.compute_j(&JOptions::default()).unwrap();
        let covered: BTreeSet<usize> = j.members.iter().flat_map(|s| s.iter()).collect();
        prop_assert_eq!(covered.len(), lg.gamma().vertex_count());
        prop_assert!(j.members.iter().all(|s| !s.is_empty()));
        prop_assert!(j.iterations <= lg.gamma().vertex_count() + j.initial_supports);
    }
}

#[test]
fn disconnected_gamma_splits() {
    // Two K2 components with infinite labels: each is a large join, the
    // product is hyperbolic relative to the two direct products.
    let lg = LabelledGamma::uniform(Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap(), Finiteness::Infinite);
    let c = lg.classify(&JOptions::default()).unwrap();
    assert_eq!(c.peripherals, vec![VertexSet::new([0, 1]), VertexSet::new([2, 3])]);
}

#[test]
fn sixteen_vertices_is_fast_enough() {
    let lg = LabelledGamma::uniform(Graph::cycle(16).unwrap(), Finiteness::Infinite);
    let start = std::time::Instant::now();
    let j = lg.compute_j(&JOptions::default()).unwrap();
    assert!(j.is_whole);
    assert!(start.elapsed().as_secs() < 30);
}
