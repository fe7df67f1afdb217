//! Duality, monos and epis, factorization, isomorphisms, and the separating
//! and standard representatives of an object.

use crate::bitset::{distinct, BitSet};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::morphism::{bracket_compose, Morphism};
use crate::polarity::Polarity;
use crate::relation::RawRelation;

/// `𝒜∂ = (A⁺, A⁻; 𝒜ᵀ)`.
pub fn dual_object(a: &Polarity) -> Polarity {
    a.dual()
}

/// `R∂ = Rᵀ : ℬ∂ → 𝒜∂`.
pub fn dual_morphism(r: &Morphism) -> Morphism {
    Morphism::new_unchecked(r.cod().dual(), r.dom().dual(), r.rel().transpose())
}

/// `R: ℬ → 𝒞` is monic iff `R↓R↑ ≤ cl_ℬ`.
///
/// `cl_ℬ` is the meet of the columns of `ℬ` above its argument, and `R↓R↑` is
/// monotone, so it suffices that every column of `ℬ` is `R↓R↑`-closed.
pub fn is_mono(r: &Morphism) -> bool {
    let rel = r.rel();
    distinct(r.dom().rel().col_sets())
        .into_iter()
        .all(|col| rel.down(&rel.up(col)).is_subset(col))
}

/// `R: ℬ → 𝒞` is epic iff `R↑R↓ ≤ cl^𝒞`, checked on the rows of `𝒞`.
pub fn is_epi(r: &Morphism) -> bool {
    let rel = r.rel();
    distinct(r.cod().rel().row_sets())
        .into_iter()
        .all(|row| rel.up(&rel.down(row)).is_subset(row))
}

/// `R = epi ⨟_{pol(R)} mono`, both legs carrying the bits of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredMorphism {
    pub epi: Morphism,
    pub mid: Polarity,
    pub mono: Morphism,
}

/// Factors through `pol(R) = (A⁻, B⁺; R)`.
pub fn factor(r: &Morphism) -> FactoredMorphism {
    let mid = Polarity::new(r.rel().clone());
    // Columns of R are cl_𝒜-closed and trivially closed in pol(R); dually for rows.
    let epi = Morphism::new_unchecked(r.dom().clone(), mid.clone(), r.rel().clone());
    let mono = Morphism::new_unchecked(mid.clone(), r.cod().clone(), r.rel().clone());
    FactoredMorphism { epi, mid, mono }
}

/// A morphism together with a two-sided inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    forward: Morphism,
    inverse: Morphism,
}

impl IsoWitness {
    /// Checks that both composites are identities.
    pub fn new(forward: Morphism, inverse: Morphism) -> Result<Self> {
        if forward.dom() != inverse.cod() || forward.cod() != inverse.dom() {
            return Err(Error::EndpointMismatch(
                "inverse does not run between the same objects".into(),
            ));
        }
        let there_and_back = forward.compose(&inverse)?;
        if there_and_back.rel() != forward.dom().rel() {
            return Err(Error::NotIso("forward ⨟ inverse is not the identity".into()));
        }
        let back_and_there = inverse.compose(&forward)?;
        if back_and_there.rel() != forward.cod().rel() {
            return Err(Error::NotIso("inverse ⨟ forward is not the identity".into()));
        }
        Ok(IsoWitness { forward, inverse })
    }

    pub fn forward(&self) -> &Morphism {
        &self.forward
    }

    pub fn inverse(&self) -> &Morphism {
        &self.inverse
    }

    pub fn flip(&self) -> IsoWitness {
        IsoWitness {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    pub fn into_parts(self) -> (Morphism, Morphism) {
        (self.forward, self.inverse)
    }
}

/// Inverts `R: 𝒜 → ℬ` when it is both monic and epic, with candidate inverse
/// `⟨ℬ↓ R↑ 𝒜↓⟩ ⊆ B⁻ × A⁺`.
pub fn try_invert(r: &Morphism) -> Result<IsoWitness> {
    if !is_mono(r) {
        return Err(Error::NotIso("not a monomorphism".into()));
    }
    if !is_epi(r) {
        return Err(Error::NotIso("not an epimorphism".into()));
    }
    let (a, b) = (r.dom(), r.cod());
    let rel = bracket_compose(b.rel(), r.rel(), a.rel());
    let inverse = Morphism::new(b.clone(), a.clone(), rel)?;
    IsoWitness::new(r.clone(), inverse)
}

/// Distinct rows and distinct columns.
pub fn is_separating(a: &Polarity) -> bool {
    all_distinct(a.rel().row_sets()) && all_distinct(a.rel().col_sets())
}

fn all_distinct(sets: &[BitSet]) -> bool {
    let mut seen = std::collections::HashSet::new();
    sets.iter().all(|s| seen.insert(s))
}

/// The least index of each class of equal sets, in increasing order.
fn representatives(sets: &[BitSet]) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    (0..sets.len()).filter(|&i| seen.insert(&sets[i])).collect()
}

fn pick_labels(labels: Option<&[String]>, keep: &[usize]) -> Option<Vec<String>> {
    labels.map(|l| keep.iter().map(|&i| l[i].clone()).collect())
}

/// Identifies elements with equal rows, then elements with equal columns.
/// Each class is represented by its least member.
///
/// The witness runs `𝒜 → 𝒜̂` via the columns of `𝒜` at the kept upper
/// elements, and back via the rows of `𝒜` at the kept lower elements.
pub fn separate(a: &Polarity) -> Result<(Polarity, IsoWitness)> {
    let rows = representatives(a.rel().row_sets());
    let cols = representatives(a.rel().col_sets());
    let incidence = a.rel().select_rows(&rows).select_cols(&cols);
    let sep = Polarity::with_labels(
        incidence,
        pick_labels(a.lower_labels(), &rows),
        pick_labels(a.upper_labels(), &cols),
    )?;
    let forward = Morphism::new(a.clone(), sep.clone(), a.rel().select_cols(&cols))?;
    let inverse = Morphism::new(sep.clone(), a.clone(), a.rel().select_rows(&rows))?;
    let witness = IsoWitness::new(forward, inverse)?;
    Ok((sep, witness))
}

pub fn standardize(a: &Polarity) -> Result<(Polarity, IsoWitness)> {
    standardize_capped(a, Caps::current())
}

/// `𝒜̃ = (A⁻, 𝒫(A⁻); a ∈ cl_𝒜(X))`, the upper element `X` sitting at the
/// index whose bits are `X`.
///
/// The witness is `rel(𝒜̃): 𝒜 → 𝒜̃` with inverse `rel(𝒜): 𝒜̃ → 𝒜`.
pub fn standardize_capped(a: &Polarity, caps: &Caps) -> Result<(Polarity, IsoWitness)> {
    let n = a.lower_size();
    Caps::check("standardization lower carrier", n, caps.standardize)?;
    let cols = (0..1u64 << n)
        .map(|mask| a.close_lower(&BitSet::from_mask(n, mask)))
        .collect();
    let incidence = RawRelation::from_cols(n, cols)?;
    let std = Polarity::with_labels(incidence.clone(), a.lower_labels().map(<[String]>::to_vec), None)?;
    let forward = Morphism::new(a.clone(), std.clone(), incidence)?;
    let inverse = Morphism::new(std.clone(), a.clone(), a.rel().clone())?;
    let witness = IsoWitness::new(forward, inverse)?;
    Ok((std, witness))
}

/// Standardness: upper carrier `𝒫(A⁻)` in mask order with a reflexive and
/// transitive incidence.
///
/// Transitivity (`a 𝒜 X` and `X ⊆ 𝒜ᵀ[X']` imply `a 𝒜 X'`) amounts to
/// `𝒜ᵀ[X] ⊆ 𝒜ᵀ[X']` whenever `X ⊆ 𝒜ᵀ[X']`.
pub fn is_standard(a: &Polarity) -> bool {
    let n = a.lower_size();
    if n >= 64 || a.upper_size() != 1usize << n {
        return false;
    }
    let cols = a.rel().col_sets();
    let subset = |mask: usize| BitSet::from_mask(n, mask as u64);
    let reflexive = (0..cols.len()).all(|x| subset(x).is_subset(&cols[x]));
    reflexive
        && (0..cols.len()).all(|x| {
            let sx = subset(x);
            cols.iter().all(|c2| !sx.is_subset(c2) || cols[x].is_subset(c2))
        })
}
