//! The contravariant functors between polarities and finite complete lattices
//! with meet-preserving maps, their natural isomorphisms, and join
//! preservation.

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::category::{try_invert, IsoWitness};
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, LatticeMap};
use crate::morphism::{bracket_compose, Morphism};
use crate::polarity::{ClosedFamily, Polarity, Side};
use crate::relation::RawRelation;

fn set_label(p: &Polarity, set: &BitSet) -> String {
    let names: Vec<String> = set.iter().map(|i| p.label(Side::Lower, i)).collect();
    format!("{{{}}}", names.join(","))
}

fn lattice_of(p: &Polarity, family: &ClosedFamily) -> Result<FiniteLattice> {
    let members = family.members();
    let lattice = FiniteLattice::from_fn(members.len(), |i, j| members[i].is_subset(&members[j]))?;
    lattice.with_labels(members.iter().map(|m| set_label(p, m)).collect())
}

/// `G⁻(𝒜)`: the closed lower sets, in [`ClosedFamily`] order, under inclusion.
pub fn g_minus_object(a: &Polarity) -> Result<FiniteLattice> {
    lattice_of(a, &a.closed_sets(Side::Lower)?)
}

/// `G⁻(R) = R↓ℬ↑ : G⁻(ℬ) → G⁻(𝒜)` for `R: 𝒜 → ℬ`.
pub fn g_minus_morphism(r: &Morphism) -> Result<LatticeMap> {
    let (a, b) = (r.dom(), r.cod());
    let fa = a.closed_sets(Side::Lower)?;
    let fb = b.closed_sets(Side::Lower)?;
    let table = fb
        .iter()
        .map(|y| {
            let image = r.rel().down(&b.rel().up(y));
            fa.index_of(&image)
                .expect("compatibility makes R↓ land in closed sets")
        })
        .collect();
    LatticeMap::new(lattice_of(b, &fb)?, lattice_of(a, &fa)?, table)
}

/// `C(L) = (L, L; ≤)`.
pub fn c_object(l: &FiniteLattice) -> Result<Polarity> {
    let n = l.size();
    let rel = RawRelation::from_fn(n, n, |i, j| l.leq(i, j));
    let labels = l.labels().map(<[String]>::to_vec);
    Polarity::with_labels(rel, labels.clone(), labels)
}

/// `C(h): C(L) → C(M)` for `h: M → L`, with `a C(h) b` iff `a ≤ h(b)`.
///
/// Compatibility is checked, so this fails exactly when `h` does not preserve
/// meets.
pub fn c_morphism(h: &LatticeMap) -> Result<Morphism> {
    let (m, l) = (h.dom(), h.cod());
    let rel = RawRelation::from_fn(l.size(), m.size(), |a, b| l.leq(a, h.apply(b)));
    Morphism::new(c_object(l)?, c_object(m)?, rel)
}

/// `ε_𝒜 ⊆ A⁻ × G⁻(𝒜)`, membership, as an isomorphism `𝒜 ≅ C(G⁻(𝒜))`.
pub fn epsilon(a: &Polarity) -> Result<IsoWitness> {
    let family = a.closed_sets(Side::Lower)?;
    let target = c_object(&lattice_of(a, &family)?)?;
    let rel = RawRelation::from_cols(a.lower_size(), family.members().to_vec())?;
    try_invert(&Morphism::new(a.clone(), target, rel)?)
}

/// `x ↦ ↓x : L → G⁻(C(L))`, checked to be a lattice isomorphism.
pub fn lattice_unit(l: &FiniteLattice) -> Result<LatticeMap> {
    let c = c_object(l)?;
    let family = c.closed_sets(Side::Lower)?;
    let table = (0..l.size())
        .map(|x| {
            family.index_of(l.down_set(x)).ok_or_else(|| {
                Error::InvalidLattice(format!("principal downset of {x} is not closed"))
            })
        })
        .collect::<Result<_>>()?;
    let map = LatticeMap::new(l.clone(), lattice_of(&c, &family)?, table)?;
    if !map.is_isomorphism() {
        return Err(Error::InvalidLattice("principal downsets are not all the closed sets".into()));
    }
    Ok(map)
}

/// `R_* = ⟨ℬ↓ R↑ 𝒜↓⟩ ⊆ B⁻ × A⁺` for `R: 𝒜 → ℬ`.
pub fn lower_adjoint_relation(r: &Morphism) -> RawRelation {
    bracket_compose(r.cod().rel(), r.rel(), r.dom().rel())
}

pub fn preserves_joins(r: &Morphism) -> Result<bool> {
    preserves_joins_capped(r, Caps::current())
}

/// `R_*↓ = ℬ↓R↑𝒜↓` on every `Z ⊆ A⁺`.
///
/// With `h = ℬ↓R↑`, the right-hand side is `Z ↦ h(⋂_{α∈Z} 𝒜↓{α})` and the
/// left-hand side is `Z ↦ ⋂_{α∈Z} h(𝒜↓{α})`, so the equation says `h` turns
/// every intersection of columns of `𝒜` into the intersection of the images.
/// Since `h(X) = h(cl_𝒜 X)`, induction on the family shows this is the same as
/// `h(A⁻) = B⁻` together with `h(C ∩ 𝒜ᵀ[α]) = h(C) ∩ h(𝒜ᵀ[α])` for every
/// closed `C` and every column.
pub fn preserves_joins_capped(r: &Morphism, caps: &Caps) -> Result<bool> {
    let (a, b) = (r.dom(), r.cod());
    let h = |x: &BitSet| b.rel().down(&r.rel().up(x));
    if !h(&BitSet::full(a.lower_size())).is_full() {
        return Ok(false);
    }
    let closed = a.closed_sets_capped(Side::Lower, caps.closed_sets)?;
    let col_images: Vec<BitSet> = a.rel().col_sets().iter().map(h).collect();
    Ok(closed.iter().all(|c| {
        let hc = h(c);
        a.rel()
            .col_sets()
            .iter()
            .zip(&col_images)
            .all(|(col, hcol)| h(&c.intersection(col)) == hc.intersection(hcol))
    }))
}

/// `⟨ℬ↓R↑𝒜↓⟩↓ = ℬ↓R↑𝒜↓`, the same equation as [`preserves_joins`].
pub fn is_clat_morphism(r: &Morphism) -> Result<bool> {
    preserves_joins(r)
}
