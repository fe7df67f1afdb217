//! Finite complete lattices and maps between them.

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite lattice given by its order. `up[i]` is the set `{j : i ≤ j}`.
///
/// Construction checks that the order is a partial order with a least and a
/// greatest element and all binary meets and joins, which for a finite
/// nonempty poset is the same as completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
    labels: Option<Vec<String>>,
}

fn greatest_in(down: &[BitSet], candidates: &BitSet) -> Option<usize> {
    candidates.iter().find(|&g| candidates.is_subset(&down[g]))
}

fn least_in(up: &[BitSet], candidates: &BitSet) -> Option<usize> {
    candidates.iter().find(|&l| candidates.is_subset(&up[l]))
}

impl FiniteLattice {
    /// Builds from `leq(i, j)` meaning `i ≤ j`.
    pub fn from_fn(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let up = (0..size)
            .map(|i| BitSet::from_indices(size, (0..size).filter(|&j| leq(i, j))))
            .collect();
        Self::new(up)
    }

    /// Builds from rows `up[i] = {j : i ≤ j}`.
    pub fn new(up: Vec<BitSet>) -> Result<Self> {
        let n = up.len();
        if n == 0 {
            return Err(Error::InvalidLattice("a lattice has at least one element".into()));
        }
        for (i, row) in up.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidLattice(format!("order row {i} has the wrong length")));
            }
            if !row.contains(i) {
                return Err(Error::InvalidLattice(format!("order is not reflexive at {i}")));
            }
            for j in row {
                if j != i && up[j].contains(i) {
                    return Err(Error::InvalidLattice(format!(
                        "order is not antisymmetric at {i}, {j}"
                    )));
                }
                if !up[j].is_subset(row) {
                    return Err(Error::InvalidLattice(format!(
                        "order is not transitive through {i} ≤ {j}"
                    )));
                }
            }
        }
        let mut down = vec![BitSet::empty(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row {
                down[j].insert(i);
            }
        }
        let all = BitSet::full(n);
        let top = greatest_in(&down, &all)
            .ok_or_else(|| Error::InvalidLattice("no greatest element".into()))?;
        let bottom = least_in(&up, &all)
            .ok_or_else(|| Error::InvalidLattice("no least element".into()))?;
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let m = greatest_in(&down, &down[a].intersection(&down[b])).ok_or_else(|| {
                    Error::InvalidLattice(format!("elements {a} and {b} have no meet"))
                })?;
                let j = least_in(&up, &up[a].intersection(&up[b])).ok_or_else(|| {
                    Error::InvalidLattice(format!("elements {a} and {b} have no join"))
                })?;
                meet[a][b] = m;
                meet[b][a] = m;
                join[a][b] = j;
                join[b][a] = j;
            }
        }
        Ok(FiniteLattice {
            up,
            down,
            meet,
            join,
            top,
            bottom,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        Error::check_dim("lattice labels", self.size(), labels.len())?;
        self.labels = Some(labels);
        Ok(self)
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| i <= j)
    }

    /// Subsets of a `k`-element set, element `m` being the subset with mask `m`.
    pub fn boolean(k: usize) -> Result<Self> {
        Self::from_fn(1 << k, |i, j| i & !j == 0)
    }

    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    /// `{j : a ≤ j}`.
    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    /// `{j : j ≤ a}`.
    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    /// Rows of the order as `leq[i][j]`.
    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.size())
            .map(|i| (0..self.size()).map(|j| self.leq(i, j)).collect())
            .collect()
    }

    /// Pairs `(i, j)` with `i < j` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for i in 0..n {
            for j in self.up[i].iter().filter(|&j| j != i) {
                let between = self.up[i]
                    .intersection(&self.down[j])
                    .iter()
                    .any(|k| k != i && k != j);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A function between finite lattices as a table indexed by the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    dom: FiniteLattice,
    cod: FiniteLattice,
    table: Vec<usize>,
}

impl LatticeMap {
    /// Checks the table is total, in range, and monotone.
    pub fn new(dom: FiniteLattice, cod: FiniteLattice, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(Error::InvalidLatticeMap(format!(
                "table has {} entries for a domain of {} elements",
                table.len(),
                dom.size()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::InvalidLatticeMap(format!("value {bad} out of range")));
        }
        for a in 0..dom.size() {
            for b in dom.up_set(a) {
                if !cod.leq(table[a], table[b]) {
                    return Err(Error::InvalidLatticeMap(format!(
                        "not monotone: {a} ≤ {b} but images are not ordered"
                    )));
                }
            }
        }
        Ok(LatticeMap { dom, cod, table })
    }

    pub fn identity(l: &FiniteLattice) -> LatticeMap {
        LatticeMap {
            dom: l.clone(),
            cod: l.clone(),
            table: (0..l.size()).collect(),
        }
    }

    pub fn dom(&self) -> &FiniteLattice {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteLattice {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn after(&self, inner: &LatticeMap) -> Result<LatticeMap> {
        if inner.cod != self.dom {
            return Err(Error::InvalidLatticeMap("maps are not composable".into()));
        }
        Ok(LatticeMap {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            table: inner.table.iter().map(|&x| self.table[x]).collect(),
        })
    }

    /// Preserves the top and binary meets, hence all meets.
    pub fn preserves_meets(&self) -> bool {
        let (d, c) = (&self.dom, &self.cod);
        self.apply(d.top()) == c.top()
            && (0..d.size()).all(|a| {
                (a..d.size()).all(|b| self.apply(d.meet(a, b)) == c.meet(self.apply(a), self.apply(b)))
            })
    }

    /// Preserves the bottom and binary joins, hence all joins.
    pub fn preserves_joins(&self) -> bool {
        let (d, c) = (&self.dom, &self.cod);
        self.apply(d.bottom()) == c.bottom()
            && (0..d.size()).all(|a| {
                (a..d.size()).all(|b| self.apply(d.join(a, b)) == c.join(self.apply(a), self.apply(b)))
            })
    }

    /// A bijection whose inverse is also monotone.
    pub fn is_isomorphism(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn inverse(&self) -> Option<LatticeMap> {
        let n = self.dom.size();
        if self.cod.size() != n {
            return None;
        }
        let mut inv = vec![usize::MAX; n];
        for (a, &b) in self.table.iter().enumerate() {
            if inv[b] != usize::MAX {
                return None;
            }
            inv[b] = a;
        }
        LatticeMap::new(self.cod.clone(), self.dom.clone(), inv).ok()
    }
}
