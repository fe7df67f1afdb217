//! Restrictions, products and coproducts, equalizers and coequalizers, and
//! reducedness.

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::category::{dual_morphism, is_epi, is_mono, is_separating};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::polarity::{Polarity, Side};
use crate::relation::RawRelation;

fn pick_labels(labels: Option<&[String]>, keep: &[usize]) -> Option<Vec<String>> {
    labels.map(|l| keep.iter().map(|&i| l[i].clone()).collect())
}

/// `𝒜↾X = (X, A⁺; 𝒜 ∩ (X × A⁺))` with the same bits as a monomorphism into
/// `𝒜`. Elements of `X` keep their relative order.
pub fn restrict_lower(a: &Polarity, x: &BitSet) -> Result<(Polarity, Morphism)> {
    Error::check_dim("restriction subset", a.lower_size(), x.len())?;
    let keep: Vec<usize> = x.iter().collect();
    let rel = a.rel().select_rows(&keep);
    let obj = Polarity::with_labels(
        rel.clone(),
        pick_labels(a.lower_labels(), &keep),
        a.upper_labels().map(<[String]>::to_vec),
    )?;
    // Columns of the restriction are closed in it; rows are rows of 𝒜.
    let incl = Morphism::new_unchecked(obj.clone(), a.clone(), rel);
    Ok((obj, incl))
}

/// `𝒜⇂Ξ = (𝒜∂↾Ξ)∂` with the same bits as an epimorphism out of `𝒜`.
pub fn restrict_upper(a: &Polarity, xi: &BitSet) -> Result<(Polarity, Morphism)> {
    let (obj, incl) = restrict_lower(&a.dual(), xi)?;
    Ok((obj.dual(), dual_morphism(&incl)))
}

/// A product object with its projections, one per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductBundle {
    pub object: Polarity,
    pub projections: Vec<Morphism>,
}

/// A coproduct object with its injections, one per summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoproductBundle {
    pub object: Polarity,
    pub injections: Vec<Morphism>,
}

/// `(j, i)` for every element of the disjoint union of carriers of the given
/// sizes: all of factor 0 first, then factor 1, and so on.
fn tagged(sizes: impl Iterator<Item = usize>) -> Vec<(usize, usize)> {
    sizes
        .enumerate()
        .flat_map(|(j, n)| (0..n).map(move |i| (j, i)))
        .collect()
}

fn union_labels(factors: &[Polarity], side: Side) -> Option<Vec<String>> {
    if factors.iter().all(|f| f.labels(side).is_none()) {
        return None;
    }
    Some(
        factors
            .iter()
            .enumerate()
            .flat_map(|(j, f)| (0..f.size(side)).map(move |i| format!("{}.{}", j, f.label(side, i))))
            .collect(),
    )
}

/// Carriers are disjoint unions, and `ⱼa ~ ₖα` iff `j = k` implies `a 𝒜ₖ α`.
/// The projection `Pₖ` relates `ⱼa` to `α ∈ Aₖ⁺` by the same rule.
///
/// The empty product is the polarity with both carriers empty.
pub fn product(factors: &[Polarity]) -> Result<ProductBundle> {
    let lower = tagged(factors.iter().map(Polarity::lower_size));
    let upper = tagged(factors.iter().map(Polarity::upper_size));
    let incidence = RawRelation::from_fn(lower.len(), upper.len(), |r, c| {
        let ((j, a), (k, alpha)) = (lower[r], upper[c]);
        j != k || factors[k].rel().get(a, alpha)
    });
    let object = Polarity::with_labels(
        incidence,
        union_labels(factors, Side::Lower),
        union_labels(factors, Side::Upper),
    )?;
    let projections = factors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let rel = RawRelation::from_fn(lower.len(), f.upper_size(), |r, alpha| {
                let (j, a) = lower[r];
                j != k || f.rel().get(a, alpha)
            });
            Morphism::new(object.clone(), f.clone(), rel)
        })
        .collect::<Result<_>>()?;
    Ok(ProductBundle {
        object,
        projections,
    })
}

/// The unique `T: ℬ → ∏𝒜ᵢ` with `T ⨟ Pₖ = Rₖ`: `b T ᵢα` iff `b Rᵢ α`.
pub fn tuple(b: &Polarity, legs: &[Morphism], bundle: &ProductBundle) -> Result<Morphism> {
    if legs.len() != bundle.projections.len() {
        return Err(Error::dim("tuple legs", bundle.projections.len(), legs.len()));
    }
    for (k, (leg, proj)) in legs.iter().zip(&bundle.projections).enumerate() {
        if leg.dom() != b || leg.cod() != proj.cod() {
            return Err(Error::EndpointMismatch(format!(
                "leg {k} does not run from the source to factor {k}"
            )));
        }
    }
    let upper = tagged(legs.iter().map(|leg| leg.cod().upper_size()));
    let rel = RawRelation::from_fn(b.lower_size(), upper.len(), |bi, c| {
        let (k, alpha) = upper[c];
        legs[k].rel().get(bi, alpha)
    });
    let t = Morphism::new(b.clone(), bundle.object.clone(), rel)?;
    for (k, (leg, proj)) in legs.iter().zip(&bundle.projections).enumerate() {
        if &t.compose(proj)? != leg {
            return Err(Error::EndpointMismatch(format!(
                "tuple does not reproduce leg {k}"
            )));
        }
    }
    Ok(t)
}

/// `∐𝒜ᵢ = (∏𝒜ᵢ∂)∂`, injections the duals of the projections.
pub fn coproduct(summands: &[Polarity]) -> Result<CoproductBundle> {
    let duals: Vec<Polarity> = summands.iter().map(Polarity::dual).collect();
    let p = product(&duals)?;
    Ok(CoproductBundle {
        object: p.object.dual(),
        injections: p.projections.iter().map(dual_morphism).collect(),
    })
}

/// The unique `T: ∐𝒜ᵢ → 𝒞` with `Iₖ ⨟ T = Rₖ`.
pub fn cotuple(c: &Polarity, legs: &[Morphism], bundle: &CoproductBundle) -> Result<Morphism> {
    let dual_bundle = ProductBundle {
        object: bundle.object.dual(),
        projections: bundle.injections.iter().map(dual_morphism).collect(),
    };
    let dual_legs: Vec<Morphism> = legs.iter().map(dual_morphism).collect();
    Ok(dual_morphism(&tuple(&c.dual(), &dual_legs, &dual_bundle)?))
}

fn check_parallel(r: &Morphism, s: &Morphism) -> Result<()> {
    if r.same_endpoints(s) {
        Ok(())
    } else {
        Err(Error::EndpointMismatch("morphisms are not parallel".into()))
    }
}

/// `{a ∈ A⁻ : R[a] = S[a]}`.
pub fn row_agreement(r: &Morphism, s: &Morphism) -> Result<BitSet> {
    check_parallel(r, s)?;
    let n = r.dom().lower_size();
    Ok(BitSet::from_indices(
        n,
        (0..n).filter(|&a| r.rel().row(a) == s.rel().row(a)),
    ))
}

/// Equalizer of `R, S: 𝒜 → ℬ`.
///
/// A morphism into `𝒜` is determined by which closed sets of `𝒜` its image
/// can reach, and it equalizes `R` and `S` exactly when those closed sets lie
/// in `J = {C ∈ G⁻(𝒜) : R↑(C) = S↑(C)}`, a join-closed family. The
/// equalizer is therefore a polarity whose lower elements generate `J` under
/// joins, with `C` incident to `α` iff `α ∈ 𝒜↑(C)`.
///
/// The lower carrier starts with the points `a` with `R[a] = S[a]` (their
/// closures are in `J`, with rows `𝒜[a]`); any member of `J` not already a
/// join of those is appended, in the order of `G⁻(𝒜)`. When the points
/// suffice the result is exactly `𝒜↾{a : R[a] = S[a]}`. The upper carrier is
/// `A⁺` and the inclusion carries the same bits.
pub fn equalizer(r: &Morphism, s: &Morphism) -> Result<(Polarity, Morphism)> {
    equalizer_capped(r, s, Caps::current())
}

pub fn equalizer_capped(r: &Morphism, s: &Morphism, caps: &Caps) -> Result<(Polarity, Morphism)> {
    let agree = row_agreement(r, s)?;
    let a = r.dom();
    let n = a.lower_size();
    let closed = a.closed_sets_capped(Side::Lower, caps.closed_sets)?;
    let family: Vec<&BitSet> = closed
        .iter()
        .filter(|c| r.rel().up(c) == s.rel().up(c))
        .collect();

    // joins of point closures, grown until stable
    let point_closures: Vec<BitSet> = agree
        .iter()
        .map(|p| a.close_lower(&BitSet::singleton(n, p)))
        .collect();
    let mut generated = vec![a.close_lower(&BitSet::empty(n))];
    let mut i = 0;
    while i < generated.len() {
        for pc in &point_closures {
            let j = a.close_lower(&generated[i].union(pc));
            if !generated.contains(&j) {
                generated.push(j);
            }
        }
        i += 1;
    }
    let extra: Vec<&BitSet> = family
        .into_iter()
        .filter(|c| !generated.contains(c))
        .collect();

    let mut rows: Vec<BitSet> = agree.iter().map(|p| a.rel().row(p).clone()).collect();
    rows.extend(extra.iter().map(|c| a.rel().up(c)));
    let lower_labels = a.lower_labels().map(|_| {
        let mut labels: Vec<String> = agree.iter().map(|p| a.label(Side::Lower, p)).collect();
        labels.extend(extra.iter().map(|c| {
            let names: Vec<String> = c.iter().map(|p| a.label(Side::Lower, p)).collect();
            format!("<{}>", names.join(","))
        }));
        labels
    });
    let rel = RawRelation::from_rows(a.upper_size(), rows)?;
    let obj = Polarity::with_labels(rel.clone(), lower_labels, a.upper_labels().map(<[String]>::to_vec))?;
    let incl = Morphism::new(obj.clone(), a.clone(), rel)?;
    debug_assert!(is_mono(&incl));
    Ok((obj, incl))
}

/// Coequalizer of `R, S: 𝒜 → ℬ`, as the dual of the equalizer of `R∂, S∂`.
pub fn coequalizer(r: &Morphism, s: &Morphism) -> Result<(Polarity, Morphism)> {
    let (obj, incl) = equalizer(&dual_morphism(r), &dual_morphism(s))?;
    Ok((obj.dual(), dual_morphism(&incl)))
}

pub fn is_reduced(a: &Polarity) -> Result<bool> {
    is_reduced_capped(a, Caps::current())
}

/// No proper restriction of either carrier is isomorphic to `𝒜`.
///
/// Closed sets of `𝒜↾X` are the traces `C ∩ X` of closed sets of `𝒜`, so a
/// restriction is isomorphic iff the trace map is injective, which is
/// inherited by every larger `X`. Single-element deletions therefore decide
/// the question; each is tested as an epi check on the (always monic)
/// inclusion, and dually.
pub fn is_reduced_capped(a: &Polarity, caps: &Caps) -> Result<bool> {
    let size = a.lower_size().max(a.upper_size());
    Caps::check("reducedness carrier", size, caps.reduction)?;
    for del in 0..a.lower_size() {
        let mut keep = BitSet::full(a.lower_size());
        keep.remove(del);
        let (_, incl) = restrict_lower(a, &keep)?;
        if is_epi(&incl) {
            return Ok(false);
        }
    }
    for del in 0..a.upper_size() {
        let mut keep = BitSet::full(a.upper_size());
        keep.remove(del);
        let (_, proj) = restrict_upper(a, &keep)?;
        if is_mono(&proj) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Separating and reduced.
pub fn is_rs_frame(a: &Polarity) -> Result<bool> {
    Ok(is_separating(a) && is_reduced(a)?)
}
