//! Compatible relations as morphisms between polarities.
//!
//! A relation `R ⊆ A⁻ × B⁺` is compatible with `𝒜` on the left when every
//! column `Rᵀ[β]` is `cl_𝒜`-closed, and with `ℬ` on the right when every row
//! `R[a]` is `cl^ℬ`-closed. Since `R↓(Y)` is an intersection of columns and
//! closed sets are closed under intersection, the column test is exactly
//! `cl_𝒜 R↓ ≤ R↓`; the row test is its mirror.

use std::collections::HashMap;

use crate::bitset::{distinct, BitSet};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::polarity::{Polarity, Side};
use crate::relation::RawRelation;

/// A compatible relation `R: 𝒜 → ℬ`.
///
/// Equality compares both endpoints structurally and the relation bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    dom: Polarity,
    cod: Polarity,
    rel: RawRelation,
}

impl std::fmt::Debug for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Morphism")
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .field("rel", &self.rel)
            .finish()
    }
}

fn check_shape(a: &Polarity, b: &Polarity, r: &RawRelation) -> Result<()> {
    Error::check_dim("relation rows (domain lower carrier)", a.lower_size(), r.rows())?;
    Error::check_dim("relation columns (codomain upper carrier)", b.upper_size(), r.cols())
}

/// Left compatibility: `cl_𝒜 R↓ ≤ R↓`, checked on the columns of `R`.
pub fn is_compatible_left(a: &Polarity, r: &RawRelation) -> Result<bool> {
    Error::check_dim("relation rows (lower carrier)", a.lower_size(), r.rows())?;
    Ok(columns_closed(a, r))
}

/// Right compatibility: `cl^ℬ R↑ ≤ R↑`, checked on the rows of `R`.
pub fn is_compatible_right(b: &Polarity, r: &RawRelation) -> Result<bool> {
    Error::check_dim("relation columns (upper carrier)", b.upper_size(), r.cols())?;
    Ok(rows_closed(b, r))
}

pub fn is_compatible(a: &Polarity, b: &Polarity, r: &RawRelation) -> Result<bool> {
    check_shape(a, b, r)?;
    Ok(columns_closed(a, r) && rows_closed(b, r))
}

pub(crate) fn columns_closed(a: &Polarity, r: &RawRelation) -> bool {
    distinct(r.col_sets()).into_iter().all(|c| &a.close_lower(c) == c)
}

pub(crate) fn rows_closed(b: &Polarity, r: &RawRelation) -> bool {
    distinct(r.row_sets()).into_iter().all(|row| &b.close_upper(row) == row)
}

/// `⟨R↓ ℬ↑ S↓⟩`: entry `(a, γ)` is set iff `a ∈ R↓(ℬ↑(S↓{γ}))`.
pub(crate) fn bracket_compose(r: &RawRelation, mid: &RawRelation, s: &RawRelation) -> RawRelation {
    debug_assert_eq!(r.cols(), mid.cols());
    debug_assert_eq!(mid.rows(), s.rows());
    let mut images: HashMap<&BitSet, BitSet> = HashMap::new();
    let cols = s
        .col_sets()
        .iter()
        .map(|col| images.entry(col).or_insert_with(|| r.down(&mid.up(col))).clone())
        .collect();
    RawRelation::from_cols(r.rows(), cols).expect("columns sized to r.rows()")
}

impl Morphism {
    /// Validates shape and compatibility on both sides.
    pub fn new(dom: Polarity, cod: Polarity, rel: RawRelation) -> Result<Self> {
        check_shape(&dom, &cod, &rel)?;
        if !columns_closed(&dom, &rel) {
            return Err(Error::Incompatible(Side::Lower));
        }
        if !rows_closed(&cod, &rel) {
            return Err(Error::Incompatible(Side::Upper));
        }
        Ok(Morphism { dom, cod, rel })
    }

    /// Skips the compatibility check. Only for results that are compatible by
    /// construction and for the test oracles.
    pub(crate) fn new_unchecked(dom: Polarity, cod: Polarity, rel: RawRelation) -> Self {
        debug_assert!(check_shape(&dom, &cod, &rel).is_ok());
        Morphism { dom, cod, rel }
    }

    /// The incidence relation as the identity on `𝒜`.
    pub fn identity(a: &Polarity) -> Morphism {
        Morphism {
            dom: a.clone(),
            cod: a.clone(),
            rel: a.rel().clone(),
        }
    }

    pub fn dom(&self) -> &Polarity {
        &self.dom
    }

    pub fn cod(&self) -> &Polarity {
        &self.cod
    }

    pub fn rel(&self) -> &RawRelation {
        &self.rel
    }

    pub fn into_parts(self) -> (Polarity, Polarity, RawRelation) {
        (self.dom, self.cod, self.rel)
    }

    /// `self ⨟ next`, composing through `self.cod()`.
    pub fn compose(&self, next: &Morphism) -> Result<Morphism> {
        if self.cod != next.dom {
            return Err(Error::EndpointMismatch(format!(
                "codomain {:?} is not the domain {:?}",
                self.cod, next.dom
            )));
        }
        let rel = bracket_compose(&self.rel, self.cod.rel(), &next.rel);
        Morphism::new(self.dom.clone(), next.cod.clone(), rel)
    }

    /// Hom-set order: bitwise inclusion of relations between the same endpoints.
    pub fn is_below(&self, other: &Morphism) -> bool {
        self.same_endpoints(other) && self.rel.is_subset(&other.rel)
    }

    pub fn same_endpoints(&self, other: &Morphism) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    /// `R↓` of the underlying relation.
    pub fn down(&self, y: &BitSet) -> Result<BitSet> {
        Error::check_dim("upper subset of codomain", self.cod.upper_size(), y.len())?;
        Ok(self.rel.down(y))
    }

    /// `R↑` of the underlying relation.
    pub fn up(&self, x: &BitSet) -> Result<BitSet> {
        Error::check_dim("lower subset of domain", self.dom.lower_size(), x.len())?;
        Ok(self.rel.up(x))
    }
}

/// The least compatible relation containing `r`.
///
/// Closing every column under `cl_𝒜` and every row under `cl^ℬ` stays inside
/// the compatibilization (each column and row is a rectangle of `r`), and a
/// relation with closed columns and rows is compatible, so alternating the
/// two passes until nothing changes reaches it exactly.
pub fn compatibilize(a: &Polarity, b: &Polarity, r: &RawRelation) -> Result<Morphism> {
    check_shape(a, b, r)?;
    let rel = compatibilize_unchecked(a, b, r);
    Ok(Morphism::new_unchecked(a.clone(), b.clone(), rel))
}

pub(crate) fn compatibilize_unchecked(a: &Polarity, b: &Polarity, r: &RawRelation) -> RawRelation {
    let mut current = r.clone();
    loop {
        let cols = current.col_sets().iter().map(|c| a.close_lower(c)).collect();
        let step = RawRelation::from_cols(current.rows(), cols).expect("shape preserved");
        let rows = step.row_sets().iter().map(|row| b.close_upper(row)).collect();
        let next = RawRelation::from_rows(current.cols(), rows).expect("shape preserved");
        if next == current {
            return next;
        }
        current = next;
    }
}

/// The bitwise intersection of a nonempty family of parallel morphisms.
pub fn hom_meet(family: &[Morphism]) -> Result<Morphism> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    let mut rel = first.rel.clone();
    for m in rest {
        if !m.same_endpoints(first) {
            return Err(Error::EndpointMismatch(
                "hom_meet over morphisms with different endpoints".into(),
            ));
        }
        rel = rel.intersection(&m.rel);
    }
    Ok(Morphism::new_unchecked(first.dom.clone(), first.cod.clone(), rel))
}

/// The full relation, the top of every hom-set (and the empty meet).
pub fn hom_top(a: &Polarity, b: &Polarity) -> Morphism {
    Morphism::new_unchecked(
        a.clone(),
        b.clone(),
        RawRelation::full(a.lower_size(), b.upper_size()),
    )
}

pub fn hom_enumerate(a: &Polarity, b: &Polarity) -> Result<Vec<Morphism>> {
    hom_enumerate_capped(a, b, Caps::current())
}

/// Every compatible relation `𝒜 → ℬ` exactly once, in increasing order of the
/// row-major bit-string.
///
/// Columns range over the closed sets of `𝒜`; the rows are then filtered for
/// `cl^ℬ`-closedness.
pub fn hom_enumerate_capped(a: &Polarity, b: &Polarity, caps: &Caps) -> Result<Vec<Morphism>> {
    let bits = a.lower_size() * b.upper_size();
    Caps::check("hom-set relation bits", bits, caps.hom_bits)?;
    let ncols = b.upper_size();
    let nrows = a.lower_size();
    if ncols == 0 {
        return Ok(vec![Morphism::new_unchecked(a.clone(), b.clone(), RawRelation::empty(nrows, 0))]);
    }
    // nrows <= bits here, so the hom cap also bounds this enumeration
    let closed = a.closed_sets_capped(Side::Lower, caps.hom_bits)?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; ncols];
    loop {
        let cols = choice.iter().map(|&k| closed.get(k).clone()).collect();
        let rel = RawRelation::from_cols(nrows, cols).expect("closed sets sized to rows");
        if rows_closed(b, &rel) {
            out.push(rel);
        }
        // odometer over column choices
        let mut pos = 0;
        loop {
            if pos == ncols {
                out.sort_by_cached_key(RawRelation::to_row_major);
                return Ok(out
                    .into_iter()
                    .map(|rel| Morphism::new_unchecked(a.clone(), b.clone(), rel))
                    .collect());
            }
            choice[pos] += 1;
            if choice[pos] < closed.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
