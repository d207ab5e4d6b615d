//! Graph products of finite groups: presentations, the syllable normal form
//! and the Cayley graph with respect to the union of the vertex groups.
//!
//! Canonical words are reduced (no identity syllable, no two syllables of the
//! same vertex that could be brought together by commutations) and then put
//! in lexicographic normal form: among the syllables that can be moved to the
//! front, the one with the smallest vertex index goes first.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::groups::{FiniteGroup, GroupSpec};

pub const DEFAULT_BALL_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub vertex: usize,
    pub element: usize,
}

impl Syllable {
    pub fn new(vertex: usize, element: usize) -> Self {
        Syllable { vertex, element }
    }
}

/// A word in canonical form. Only [`GraphProduct`] builds these.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SyllableWord(Vec<Syllable>);

impl SyllableWord {
    pub fn identity() -> Self {
        SyllableWord(Vec::new())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson", into = "PresentationJson")]
pub struct GraphProduct {
    gamma: Graph,
    groups: Vec<GroupSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub gamma: Graph,
    pub groups: Vec<GroupSpec>,
}

impl TryFrom<PresentationJson> for GraphProduct {
    type Error = Error;

    fn try_from(j: PresentationJson) -> Result<Self> {
        GraphProduct::new(j.gamma, j.groups)
    }
}

impl From<GraphProduct> for PresentationJson {
    fn from(p: GraphProduct) -> Self {
        PresentationJson { gamma: p.gamma, groups: p.groups }
    }
}

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub graph: Graph,
    /// Canonical word of each vertex; vertex 0 is the identity.
    pub words: Vec<SyllableWord>,
}

#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub graph: Graph,
    pub words: Vec<SyllableWord>,
    pub radius: usize,
    /// Vertices at distance at most `radius - 2` from the identity.
    pub interior: VertexSet,
}

impl CayleyBall {
    pub fn index_of(&self) -> HashMap<&SyllableWord, usize> {
        self.words.iter().enumerate().map(|(i, w)| (w, i)).collect()
    }
}

/// Default names `a, b, ..., z, aa, ab, ...`.
pub fn default_vertex_name(mut v: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (v % 26) as u8);
        if v < 26 {
            break;
        }
        v = v / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

impl GraphProduct {
    pub fn new(gamma: Graph, groups: Vec<GroupSpec>) -> Result<Self> {
        if groups.len() != gamma.vertex_count() {
            return Err(Error::PresentationMismatch(format!(
                "{} groups for {} vertices",
                groups.len(),
                gamma.vertex_count()
            )));
        }
        for (v, g) in groups.iter().enumerate() {
            if let GroupSpec::Finite(f) = g {
                if f.order() < 2 {
                    return Err(Error::TrivialGroup(v));
                }
            }
        }
        let p = GraphProduct { gamma, groups };
        let names = p.vertex_names();
        let mut seen = HashMap::new();
        for (v, name) in names.iter().enumerate() {
            if name.is_empty() || name.ends_with(|c: char| c.is_ascii_digit()) || name.contains(char::is_whitespace) {
                return Err(Error::PresentationMismatch(format!("vertex name {name:?} is not usable in words")));
            }
            if let Some(u) = seen.insert(name.clone(), v) {
                return Err(Error::PresentationMismatch(format!("vertices {u} and {v} share the name {name:?}")));
            }
        }
        Ok(p)
    }

    /// Every vertex carries `Z/n`.
    pub fn uniform_cyclic(gamma: Graph, n: usize) -> Result<Self> {
        let g = GroupSpec::Finite(FiniteGroup::cyclic(n)?);
        let groups = vec![g; gamma.vertex_count()];
        Self::new(gamma, groups)
    }

    pub fn gamma(&self) -> &Graph {
        &self.gamma
    }

    pub fn groups(&self) -> &[GroupSpec] {
        &self.groups
    }

    /// The group at `v`, or an error if it is only symbolic.
    pub fn group(&self, v: usize) -> Result<&FiniteGroup> {
        match self.groups.get(v) {
            Some(GroupSpec::Finite(f)) => Ok(f),
            Some(GroupSpec::SymbolicInfinite) => Err(Error::SymbolicInfinite(v)),
            None => Err(Error::VertexOutOfRange { vertex: v, count: self.groups.len() }),
        }
    }

    fn require_finite_groups(&self) -> Result<()> {
        (0..self.groups.len()).try_for_each(|v| self.group(v).map(|_| ()))
    }

    /// Names used when parsing and printing words: the gamma label if any,
    /// otherwise the default letter name.
    pub fn vertex_names(&self) -> Vec<String> {
        (0..self.gamma.vertex_count())
            .map(|v| self.gamma.label(v).map(str::to_owned).unwrap_or_else(|| default_vertex_name(v)))
            .collect()
    }

    fn check_syllable(&self, s: Syllable) -> Result<&FiniteGroup> {
        let g = self.group(s.vertex)?;
        if s.element >= g.order() {
            return Err(Error::ElementOutOfRange { vertex: s.vertex, element: s.element, order: g.order() });
        }
        Ok(g)
    }

    /// Appends `s` to a reduced word, keeping it reduced.
    fn push(&self, word: &mut Vec<Syllable>, s: Syllable) {
        let g = self.group(s.vertex).expect("checked");
        if s.element == g.identity() {
            return;
        }
        for i in (0..word.len()).rev() {
            let t = word[i];
            if t.vertex == s.vertex {
                let e = g.mul(t.element, s.element);
                if e == g.identity() {
                    word.remove(i);
                } else {
                    word[i].element = e;
                }
                return;
            }
            if !self.gamma.has_edge(t.vertex, s.vertex) {
                break;
            }
        }
        word.push(s);
    }

    fn normal_order(&self, mut rest: Vec<Syllable>) -> SyllableWord {
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best = 0;
            for i in 1..rest.len() {
                if rest[i].vertex < rest[best].vertex
                    && rest[..i].iter().all(|t| self.gamma.has_edge(t.vertex, rest[i].vertex))
                {
                    best = i;
                }
            }
            out.push(rest.remove(best));
        }
        SyllableWord(out)
    }

    pub fn reduce_word(&self, word: &[Syllable]) -> Result<SyllableWord> {
        let mut acc = Vec::with_capacity(word.len());
        for &s in word {
            self.check_syllable(s)?;
            self.push(&mut acc, s);
        }
        Ok(self.normal_order(acc))
    }

    pub fn word_equal(&self, a: &[Syllable], b: &[Syllable]) -> Result<bool> {
        Ok(self.reduce_word(a)? == self.reduce_word(b)?)
    }

    pub fn syllable_length(&self, word: &[Syllable]) -> Result<usize> {
        Ok(self.reduce_word(word)?.len())
    }

    /// Product of two canonical words.
    pub fn multiply(&self, a: &SyllableWord, b: &SyllableWord) -> SyllableWord {
        let mut acc = a.0.clone();
        for &s in &b.0 {
            self.push(&mut acc, s);
        }
        self.normal_order(acc)
    }

    pub fn inverse(&self, w: &SyllableWord) -> SyllableWord {
        let rev: Vec<Syllable> =
            w.0.iter()
                .rev()
                .map(|s| Syllable::new(s.vertex, self.group(s.vertex).expect("canonical").inv(s.element)))
                .collect();
        self.normal_order(rev)
    }

    fn generators(&self) -> Vec<SyllableWord> {
        (0..self.groups.len())
            .flat_map(|v| {
                let g = self.group(v).expect("checked");
                g.non_identity().map(move |e| SyllableWord(vec![Syllable::new(v, e)]))
            })
            .collect()
    }

    /// The whole Cayley graph; only for finite products.
    pub fn full_cayley_graph(&self) -> Result<CayleyGraph> {
        if let Some(v) = self.groups.iter().position(|g| !g.is_finite()) {
            return Err(Error::InfiniteGroup(format!("vertex {v} carries an infinite group")));
        }
        if self.gamma.edge_count() * 2 != self.gamma.vertex_count() * self.gamma.vertex_count().saturating_sub(1) {
            return Err(Error::InfiniteGroup("gamma is not complete".into()));
        }
        let b = self.ball(usize::MAX, DEFAULT_BALL_CAP)?;
        Ok(CayleyGraph { graph: b.0, words: b.1 })
    }

    /// The ball of the given syllable-length radius around the identity.
    pub fn cayley_ball(&self, radius: usize, cap: usize) -> Result<CayleyBall> {
        self.require_finite_groups()?;
        if radius == 0 {
            return Err(Error::InvalidArgument("radius must be at least 1".into()));
        }
        let (graph, words) = self.ball(radius, cap)?;
        let interior = words.iter().enumerate().filter(|(_, w)| w.len() + 2 <= radius).map(|(i, _)| i).collect();
        Ok(CayleyBall { graph, words, radius, interior })
    }

    fn ball(&self, radius: usize, cap: usize) -> Result<(Graph, Vec<SyllableWord>)> {
        let gens = self.generators();
        let mut index: HashMap<SyllableWord, usize> = HashMap::new();
        let mut words = vec![SyllableWord::identity()];
        index.insert(SyllableWord::identity(), 0);
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let w = self.multiply(&words[i], s);
                let j = match index.get(&w) {
                    Some(&j) => j,
                    None if w.len() <= radius => {
                        if words.len() == cap {
                            return Err(Error::CapExceeded { what: "Cayley ball size", cap });
                        }
                        let j = words.len();
                        index.insert(w.clone(), j);
                        words.push(w);
                        queue.push_back(j);
                        j
                    }
                    None => continue,
                };
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        Ok((Graph::from_edges(words.len(), edges)?, words))
    }

    /// Parses whitespace-separated syllables `<name><element>`, e.g. `u1 v2`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Syllable>> {
        let names: HashMap<String, usize> = self.vertex_names().into_iter().enumerate().map(|(v, n)| (n, v)).collect();
        text.split_whitespace()
            .map(|tok| {
                let split = tok.trim_end_matches(|c: char| c.is_ascii_digit()).len();
                let (name, digits) = tok.split_at(split);
                if digits.is_empty() {
                    return Err(Error::InvalidWord(format!("syllable {tok:?} has no element index")));
                }
                let &vertex =
                    names.get(name).ok_or_else(|| Error::InvalidWord(format!("unknown vertex name {name:?}")))?;
                let element =
                    digits.parse().map_err(|_| Error::InvalidWord(format!("bad element index in {tok:?}")))?;
                let s = Syllable::new(vertex, element);
                self.check_syllable(s)?;
                Ok(s)
            })
            .collect()
    }

    pub fn format_word(&self, w: &[Syllable]) -> String {
        let names = self.vertex_names();
        w.iter().map(|s| format!("{}{}", names[s.vertex], s.element)).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::prism;
    use crate::graph::find_isomorphism;

    fn syl(pairs: &[(usize, usize)]) -> Vec<Syllable> {
        pairs.iter().map(|&(v, e)| Syllable::new(v, e)).collect()
    }

    fn dihedral() -> GraphProduct {
        GraphProduct::uniform_cyclic(Graph::edgeless(2), 2).unwrap()
    }

    #[test]
    fn names() {
        assert_eq!(default_vertex_name(0), "a");
        assert_eq!(default_vertex_name(25), "z");
        assert_eq!(default_vertex_name(26), "aa");
        assert_eq!(default_vertex_name(27), "ab");
        assert_eq!(default_vertex_name(26 + 26 * 26), "aaa");
    }

    #[test]
    fn reduce_examples() {
        let k2 = GraphProduct::uniform_cyclic(Graph::complete(2), 2).unwrap();
        let uvuv = syl(&[(0, 1), (1, 1), (0, 1), (1, 1)]);
        assert!(k2.reduce_word(&uvuv).unwrap().is_empty());
        assert_eq!(k2.syllable_length(&uvuv).unwrap(), 0);
        let d = dihedral();
        assert_eq!(d.reduce_word(&uvuv).unwrap().syllables(), &uvuv[..]);
        assert_eq!(d.syllable_length(&uvuv).unwrap(), 4);
        assert!(d.reduce_word(&syl(&[(0, 0)])).unwrap().is_empty());
        assert!(k2.word_equal(&syl(&[(0, 1), (1, 1)]), &syl(&[(1, 1), (0, 1)])).unwrap());
        assert!(!d.word_equal(&syl(&[(0, 1), (1, 1)]), &syl(&[(1, 1), (0, 1)])).unwrap());
        assert!(d.word_equal(&uvuv, &uvuv).unwrap());
    }

    #[test]
    fn merging_across_commuting_syllables() {
        // P3 with edges 0-1 and 1-2, Z/3 everywhere.
        let p = GraphProduct::uniform_cyclic(Graph::path(3), 3).unwrap();
        let w = p.reduce_word(&syl(&[(0, 1), (1, 1), (0, 1)])).unwrap();
        assert_eq!(w.syllables(), &syl(&[(0, 2), (1, 1)])[..]);
        let w = p.reduce_word(&syl(&[(2, 1), (1, 1), (2, 2)])).unwrap();
        assert_eq!(w.syllables(), &syl(&[(1, 1)])[..]);
        // 0 and 2 do not commute, so nothing merges here.
        let w = p.reduce_word(&syl(&[(2, 1), (0, 1), (2, 2)])).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(p.reduce_word(&syl(&[(1, 1), (0, 1)])).unwrap().syllables(), &syl(&[(0, 1), (1, 1)])[..]);
    }

    #[test]
    fn errors() {
        let d = dihedral();
        assert_eq!(d.reduce_word(&syl(&[(0, 2)])), Err(Error::ElementOutOfRange { vertex: 0, element: 2, order: 2 }));
        assert!(matches!(d.full_cayley_graph(), Err(Error::InfiniteGroup(_))));
        let trivial = GroupSpec::Finite(FiniteGroup::trivial());
        assert_eq!(GraphProduct::new(Graph::complete(1), vec![trivial]), Err(Error::TrivialGroup(0)));
        assert!(GraphProduct::new(Graph::complete(2), vec![]).is_err());
        let sym = GraphProduct::new(Graph::complete(1), vec![GroupSpec::SymbolicInfinite]).unwrap();
        assert_eq!(sym.reduce_word(&syl(&[(0, 1)])), Err(Error::SymbolicInfinite(0)));
        assert!(matches!(sym.full_cayley_graph(), Err(Error::InfiniteGroup(_))));
        assert!(d.cayley_ball(0, 10).is_err());
        assert_eq!(d.cayley_ball(10, 5).unwrap_err(), Error::CapExceeded { what: "Cayley ball size", cap: 5 });
    }

    #[test]
    fn full_cayley_examples() {
        let groups = vec![
            GroupSpec::Finite(FiniteGroup::cyclic(2).unwrap()),
            GroupSpec::Finite(FiniteGroup::cyclic(3).unwrap()),
        ];
        let p = GraphProduct::new(Graph::complete(2), groups).unwrap();
        let c = p.full_cayley_graph().unwrap();
        assert_eq!(c.graph.vertex_count(), 6);
        assert!(find_isomorphism(&c.graph, &prism(&[2, 3]).unwrap()).is_some());
        let k5 = GraphProduct::uniform_cyclic(Graph::complete(1), 5).unwrap().full_cayley_graph().unwrap();
        assert_eq!(k5.graph, Graph::complete(5));
        let ball = p.cayley_ball(2, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(ball.graph.vertex_count(), 6);
    }

    #[test]
    fn ball_examples() {
        let b = dihedral().cayley_ball(3, DEFAULT_BALL_CAP).unwrap();
        assert!(find_isomorphism(&b.graph, &Graph::path(7)).is_some());
        assert_eq!(b.interior.as_slice(), &[0, 1, 2]);
        let z3z3 = GraphProduct::uniform_cyclic(Graph::edgeless(2), 3).unwrap();
        let b = z3z3.cayley_ball(2, DEFAULT_BALL_CAP).unwrap();
        // Canonical words of length at most 2: 1 + 4 + 2 * 2 * 2.
        assert_eq!(b.graph.vertex_count(), 13);
    }

    #[test]
    fn parse_and_format() {
        let gamma = Graph::complete(2).with_labels([(0, "u".to_string()), (1, "v".to_string())].into()).unwrap();
        let p = GraphProduct::uniform_cyclic(gamma, 3).unwrap();
        let w = p.parse_word("u1 v2 u1").unwrap();
        assert_eq!(w, syl(&[(0, 1), (1, 2), (0, 1)]));
        assert_eq!(p.format_word(p.reduce_word(&w).unwrap().syllables()), "u2 v2");
        assert!(matches!(p.parse_word("w1"), Err(Error::InvalidWord(_))));
        assert!(matches!(p.parse_word("u"), Err(Error::InvalidWord(_))));
        assert!(matches!(p.parse_word("u3"), Err(Error::ElementOutOfRange { .. })));
        let d = dihedral();
        assert_eq!(d.parse_word("a1 b1").unwrap(), syl(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn presentation_json() {
        let json = r#"{"gamma": {"vertices": 2, "edges": [[0, 1]]}, "groups": [{"cyclic": 2}, {"cyclic": 3}]}"#;
        let p: GraphProduct = serde_json::from_str(json).unwrap();
        assert_eq!(p.gamma().edge_count(), 1);
        let bad = r#"{"gamma": {"vertices": 2, "edges": []}, "groups": [{"cyclic": 1}, {"cyclic": 3}]}"#;
        assert!(serde_json::from_str::<GraphProduct>(bad).is_err());
    }
}
