//! Finite groups given by multiplication tables, and the per-vertex group
//! specification used by graph products.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Associativity is checked on every triple up to this order, on a fixed
/// sample of random triples above it.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;
const SAMPLED_TRIPLES: usize = 100_000;

/// A finite group on the elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    cyclic: bool,
}

impl FiniteGroup {
    /// `Z/n` with element `k` standing for `k mod n`; identity `0`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        Ok(FiniteGroup {
            order: n,
            table: (0..n * n).map(|i| (i / n + i % n) % n).collect(),
            identity: 0,
            inverse: (0..n).map(|k| (n - k) % n).collect(),
            cyclic: true,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order 1")
    }

    /// Validates a multiplication table `rows[a][b] = a * b`.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let bad = |m: String| Err(Error::InvalidGroup(m));
        if n == 0 {
            return bad("empty table".into());
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return bad(format!("row {i} has {} entries, expected {n}", r.len()));
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        if let Some(&x) = table.iter().find(|&&x| x >= n) {
            return bad(format!("entry {x} out of range"));
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a)) else {
            return bad("no identity element".into());
        };
        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == identity && table[b * n + a] == identity) {
                Some(b) => inverse[a] = b,
                None => return bad(format!("element {a} has no inverse")),
            }
        }
        let g = FiniteGroup { order: n, table, identity, inverse, cyclic: false };
        if let Some((a, b, c)) = g.associativity_failure() {
            return bad(format!("({a} * {b}) * {c} != {a} * ({b} * {c})"));
        }
        Ok(g)
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        let assoc = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
            None
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9_7f4a_7c15);
            (0..SAMPLED_TRIPLES)
                .map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)))
                .find(|&(a, b, c)| !assoc(a, b, c))
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&a| a != self.identity)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

/// Group attached to a vertex of a graph product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupSpecJson", into = "GroupSpecJson")]
pub enum GroupSpec {
    Finite(FiniteGroup),
    /// An infinite group known only by name; usable where only finiteness
    /// matters.
    SymbolicInfinite,
}

impl GroupSpec {
    pub fn is_finite(&self) -> bool {
        matches!(self, GroupSpec::Finite(_))
    }
}

/// `{"cyclic": n}`, `{"table": [[...], ...]}` or `"infinite"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpecJson {
    Cyclic(usize),
    Table(Vec<Vec<usize>>),
    Infinite,
}

impl TryFrom<GroupSpecJson> for GroupSpec {
    type Error = Error;

    fn try_from(j: GroupSpecJson) -> Result<Self> {
        Ok(match j {
            GroupSpecJson::Cyclic(n) => GroupSpec::Finite(FiniteGroup::cyclic(n)?),
            GroupSpecJson::Table(rows) => GroupSpec::Finite(FiniteGroup::from_table(&rows)?),
            GroupSpecJson::Infinite => GroupSpec::SymbolicInfinite,
        })
    }
}

impl From<GroupSpec> for GroupSpecJson {
    fn from(g: GroupSpec) -> Self {
        match g {
            GroupSpec::Finite(f) if f.cyclic => GroupSpecJson::Cyclic(f.order),
            GroupSpec::Finite(f) => GroupSpecJson::Table(f.rows()),
            GroupSpec::SymbolicInfinite => GroupSpecJson::Infinite,
        }
    }
}
