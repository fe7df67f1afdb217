//! Polarities, their Galois maps and closure operators, and enumeration of
//! Galois-closed sets.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::relation::RawRelation;

/// One of the two carriers of a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        })
    }
}

/// A polarity `(A⁻, A⁺; 𝒜)`: two finite carriers and an incidence relation.
///
/// Equality is structural on the incidence alone; labels are display data.
#[derive(Clone)]
pub struct Polarity {
    incidence: RawRelation,
    lower_labels: Option<Vec<String>>,
    upper_labels: Option<Vec<String>>,
}

impl PartialEq for Polarity {
    fn eq(&self, other: &Self) -> bool {
        self.incidence == other.incidence
    }
}

impl Eq for Polarity {}

impl std::hash::Hash for Polarity {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.incidence.hash(state)
    }
}

impl fmt::Debug for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Polarity({}x{}",
            self.lower_size(),
            self.upper_size()
        )?;
        for row in self.incidence.row_sets() {
            write!(f, " {}", row.to_bit_string())?;
        }
        write!(f, ")")
    }
}

fn check_labels(labels: &[String], expected: usize, what: &'static str) -> Result<()> {
    Error::check_dim(what, expected, labels.len())?;
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl Polarity {
    pub fn new(incidence: RawRelation) -> Self {
        Polarity {
            incidence,
            lower_labels: None,
            upper_labels: None,
        }
    }

    pub fn with_labels(
        incidence: RawRelation,
        lower_labels: Option<Vec<String>>,
        upper_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(l) = &lower_labels {
            check_labels(l, incidence.rows(), "lower labels")?;
        }
        if let Some(l) = &upper_labels {
            check_labels(l, incidence.cols(), "upper labels")?;
        }
        Ok(Polarity {
            incidence,
            lower_labels,
            upper_labels,
        })
    }

    pub fn from_pairs(
        lower: usize,
        upper: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Ok(Self::new(RawRelation::from_pairs(lower, upper, pairs)?))
    }

    /// The unit `𝕀 = ({•}, {•}; ∅)`.
    pub fn unit() -> Self {
        Self::new(RawRelation::empty(1, 1))
    }

    /// `P(A) = (A, A; ≠)` on an `n`-element set.
    pub fn inequality(n: usize) -> Self {
        Self::new(RawRelation::from_fn(n, n, |a, b| a != b))
    }

    pub fn lower_size(&self) -> usize {
        self.incidence.rows()
    }

    pub fn upper_size(&self) -> usize {
        self.incidence.cols()
    }

    pub fn size(&self, side: Side) -> usize {
        match side {
            Side::Lower => self.lower_size(),
            Side::Upper => self.upper_size(),
        }
    }

    /// `rel(𝒜)`, the incidence as a raw relation.
    pub fn rel(&self) -> &RawRelation {
        &self.incidence
    }

    pub fn into_rel(self) -> RawRelation {
        self.incidence
    }

    pub fn lower_labels(&self) -> Option<&[String]> {
        self.lower_labels.as_deref()
    }

    pub fn upper_labels(&self) -> Option<&[String]> {
        self.upper_labels.as_deref()
    }

    pub fn labels(&self, side: Side) -> Option<&[String]> {
        match side {
            Side::Lower => self.lower_labels(),
            Side::Upper => self.upper_labels(),
        }
    }

    /// Label of element `i`, or a generated `g{i}` / `m{i}`.
    pub fn label(&self, side: Side, i: usize) -> String {
        match self.labels(side) {
            Some(l) => l[i].clone(),
            None => match side {
                Side::Lower => format!("g{i}"),
                Side::Upper => format!("m{i}"),
            },
        }
    }

    pub fn strip_labels(&self) -> Polarity {
        Polarity::new(self.incidence.clone())
    }

    /// `𝒜∂ = (A⁺, A⁻; 𝒜ᵀ)`.
    pub fn dual(&self) -> Polarity {
        Polarity {
            incidence: self.incidence.transpose(),
            lower_labels: self.upper_labels.clone(),
            upper_labels: self.lower_labels.clone(),
        }
    }

    fn check(&self, side: Side, set: &BitSet) -> Result<()> {
        let what = match side {
            Side::Lower => "lower subset",
            Side::Upper => "upper subset",
        };
        Error::check_dim(what, self.size(side), set.len())
    }

    /// `𝒜↑(X)` for `X ⊆ A⁻`.
    pub fn galois_up(&self, x: &BitSet) -> Result<BitSet> {
        self.check(Side::Lower, x)?;
        Ok(self.incidence.up(x))
    }

    /// `𝒜↓(Y)` for `Y ⊆ A⁺`.
    pub fn galois_down(&self, y: &BitSet) -> Result<BitSet> {
        self.check(Side::Upper, y)?;
        Ok(self.incidence.down(y))
    }

    /// `cl_𝒜 = 𝒜↓𝒜↑` on `A⁻`.
    pub fn cl_lower(&self, x: &BitSet) -> Result<BitSet> {
        self.check(Side::Lower, x)?;
        Ok(self.close_lower(x))
    }

    /// `cl^𝒜 = 𝒜↑𝒜↓` on `A⁺`.
    pub fn cl_upper(&self, y: &BitSet) -> Result<BitSet> {
        self.check(Side::Upper, y)?;
        Ok(self.close_upper(y))
    }

    pub fn closure(&self, side: Side, set: &BitSet) -> Result<BitSet> {
        match side {
            Side::Lower => self.cl_lower(set),
            Side::Upper => self.cl_upper(set),
        }
    }

    #[inline]
    pub(crate) fn close_lower(&self, x: &BitSet) -> BitSet {
        self.incidence.down(&self.incidence.up(x))
    }

    #[inline]
    pub(crate) fn close_upper(&self, y: &BitSet) -> BitSet {
        self.incidence.up(&self.incidence.down(y))
    }

    pub(crate) fn close(&self, side: Side, set: &BitSet) -> BitSet {
        match side {
            Side::Lower => self.close_lower(set),
            Side::Upper => self.close_upper(set),
        }
    }

    pub fn is_closed(&self, side: Side, set: &BitSet) -> Result<bool> {
        Ok(&self.closure(side, set)? == set)
    }

    /// All Galois-closed subsets on one side, using the caps from the
    /// environment.
    pub fn closed_sets(&self, side: Side) -> Result<ClosedFamily> {
        self.closed_sets_capped(side, Caps::current().closed_sets)
    }

    pub fn closed_sets_capped(&self, side: Side, cap: usize) -> Result<ClosedFamily> {
        let n = self.size(side);
        Caps::check("closed-set carrier", n, cap)?;
        Ok(ClosedFamily {
            side,
            members: next_closure(n, |s| self.close(side, s)),
        })
    }
}

/// Enumerates the fixpoints of `close` on subsets of an `n`-element set in
/// increasing numeric order of their bit-strings.
///
/// Successor step: for each element `j`, lowest first, not already in the
/// current set `A`, close `(A ∩ {>j}) ∪ {j}`; the first closure that adds
/// nothing above `j` is the next fixpoint.
pub fn next_closure(n: usize, close: impl Fn(&BitSet) -> BitSet) -> Vec<BitSet> {
    let mut out = Vec::new();
    let mut current = close(&BitSet::empty(n));
    loop {
        out.push(current.clone());
        let mut next = None;
        for j in 0..n {
            if current.contains(j) {
                continue;
            }
            let mut high = current.clone();
            high.retain_above(j);
            let mut seed = high.clone();
            seed.insert(j);
            let candidate = close(&seed);
            let mut candidate_high = candidate.clone();
            candidate_high.retain_above(j);
            if candidate_high == high {
                next = Some(candidate);
                break;
            }
        }
        match next {
            Some(c) => current = c,
            None => return out,
        }
    }
}

/// The Galois-closed subsets of one side, sorted, without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFamily {
    side: Side,
    members: Vec<BitSet>,
}

impl ClosedFamily {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn members(&self) -> &[BitSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> &BitSet {
        &self.members[i]
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.members.binary_search(set).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitSet> {
        self.members.iter()
    }
}

/// `⟨f⟩` from the values of an antitone map on singletons: `a ⟨f⟩ β` iff
/// `a ∈ table[β]`.
pub fn relation_from_singleton_table(table: &[BitSet], cols: usize, rows: usize) -> Result<RawRelation> {
    Error::check_dim("singleton table entries", cols, table.len())?;
    RawRelation::from_cols(rows, table.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `ℬ`: lower {b0,b1}, upper {β0,β1}, incidence {(b0,β0),(b1,β0),(b1,β1)}.
    fn b_example() -> Polarity {
        Polarity::from_pairs(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> BitSet {
        BitSet::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn galois_up_examples() {
        let b = b_example();
        assert_eq!(b.galois_up(&set(2, &[1])).unwrap(), set(2, &[0, 1]));
        assert_eq!(b.galois_up(&set(2, &[0, 1])).unwrap(), set(2, &[0]));
        assert!(b.galois_up(&BitSet::empty(2)).unwrap().is_full());
    }

    #[test]
    fn galois_down_examples() {
        let b = b_example();
        assert_eq!(b.galois_down(&set(2, &[1])).unwrap(), set(2, &[1]));
        assert_eq!(b.galois_down(&set(2, &[0, 1])).unwrap(), set(2, &[1]));
        assert!(b.galois_down(&BitSet::empty(2)).unwrap().is_full());
    }

    #[test]
    fn closure_examples() {
        let b = b_example();
        assert_eq!(b.cl_lower(&BitSet::empty(2)).unwrap(), set(2, &[1]));
        assert_eq!(b.cl_lower(&set(2, &[0])).unwrap(), set(2, &[0, 1]));
        assert_eq!(b.cl_upper(&set(2, &[0])).unwrap(), set(2, &[0]));
        assert_eq!(b.cl_upper(&BitSet::empty(2)).unwrap(), set(2, &[0]));
        let once = b.cl_lower(&set(2, &[0])).unwrap();
        assert_eq!(b.cl_lower(&once).unwrap(), once);
    }

    #[test]
    fn dual_swaps_closures() {
        let b = b_example();
        let d = b.dual();
        for m in 0..4 {
            let s = BitSet::from_mask(2, m);
            assert_eq!(d.cl_upper(&s).unwrap(), b.cl_lower(&s).unwrap());
            assert_eq!(d.cl_lower(&s).unwrap(), b.cl_upper(&s).unwrap());
        }
    }

    #[test]
    fn dimension_errors() {
        let b = b_example();
        assert!(matches!(
            b.galois_up(&BitSet::empty(3)),
            Err(Error::Dimension { .. })
        ));
        assert!(b.galois_down(&BitSet::empty(1)).is_err());
        assert!(b.cl_lower(&BitSet::empty(0)).is_err());
    }

    #[test]
    fn closed_sets_examples() {
        let p = Polarity::inequality(2);
        let fam = p.closed_sets(Side::Lower).unwrap();
        let masks: Vec<u64> = fam.iter().map(BitSet::to_mask).collect();
        assert_eq!(masks, vec![0b00, 0b01, 0b10, 0b11]);

        let full = Polarity::new(RawRelation::full(3, 2));
        let fam = full.closed_sets(Side::Lower).unwrap();
        assert_eq!(fam.members(), &[BitSet::full(3)]);

        let fam = b_example().closed_sets(Side::Lower).unwrap();
        let masks: Vec<u64> = fam.iter().map(BitSet::to_mask).collect();
        assert_eq!(masks, vec![0b10, 0b11]);
    }

    #[test]
    fn closed_sets_cap() {
        let p = Polarity::inequality(5);
        assert!(matches!(
            p.closed_sets_capped(Side::Lower, 4),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn closed_sets_of_empty_carrier() {
        let p = Polarity::new(RawRelation::empty(0, 2));
        let fam = p.closed_sets(Side::Lower).unwrap();
        assert_eq!(fam.len(), 1);
        let fam = p.closed_sets(Side::Upper).unwrap();
        assert_eq!(fam.members(), &[BitSet::full(2)]);
    }

    #[test]
    fn singleton_table_recovers_relation() {
        let b = b_example();
        let table: Vec<BitSet> = (0..2)
            .map(|beta| b.galois_down(&BitSet::singleton(2, beta)).unwrap())
            .collect();
        assert_eq!(relation_from_singleton_table(&table, 2, 2).unwrap(), *b.rel());
        let empty = vec![BitSet::empty(2); 3];
        assert_eq!(
            relation_from_singleton_table(&empty, 3, 2).unwrap(),
            RawRelation::empty(2, 3)
        );
        let full = vec![BitSet::full(2); 3];
        assert_eq!(
            relation_from_singleton_table(&full, 3, 2).unwrap(),
            RawRelation::full(2, 3)
        );
        assert!(relation_from_singleton_table(&full, 2, 2).is_err());
        assert!(relation_from_singleton_table(&[BitSet::empty(3)], 1, 2).is_err());
    }

    #[test]
    fn labels_must_be_unique() {
        let r = RawRelation::empty(2, 1);
        let err = Polarity::with_labels(r.clone(), Some(vec!["a".into(), "a".into()]), None);
        assert!(matches!(err, Err(Error::DuplicateLabel(_))));
        assert!(Polarity::with_labels(r, Some(vec!["a".into()]), None).is_err());
    }
}
