//! Stable relations, the tensor product and its coherence isomorphisms, the
//! internal hom, and currying.
//!
//! Pairs `(a, b) ∈ A⁻ × B⁻` are indexed row-major as `a·|B⁻| + b`, and the
//! upper carrier of a tensor is the powerset of that product, the subset `T`
//! sitting at the index whose bits are `T`. With this indexing the two
//! bracketings of a triple product index their lower elements identically.

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::category::{try_invert, IsoWitness};
use crate::error::{Error, Result};
use crate::morphism::{bracket_compose, compatibilize_unchecked, is_compatible, Morphism};
use crate::polarity::{Polarity, Side};
use crate::relation::RawRelation;

/// `T ⊆ A⁻ × B⁻` with `X×Y ⊆ T ⇒ cl_𝒜(X) × cl_ℬ(Y) ⊆ T`, equivalently a
/// compatible relation `𝒜 → ℬ∂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableRelation {
    left: Polarity,
    right: Polarity,
    bits: RawRelation,
}

impl StableRelation {
    pub fn new(left: Polarity, right: Polarity, bits: RawRelation) -> Result<Self> {
        if !is_compatible(&left, &right.dual(), &bits)? {
            return Err(Error::Incompatible(Side::Lower));
        }
        Ok(StableRelation { left, right, bits })
    }

    pub fn left(&self) -> &Polarity {
        &self.left
    }

    pub fn right(&self) -> &Polarity {
        &self.right
    }

    pub fn bits(&self) -> &RawRelation {
        &self.bits
    }

    /// The same bits as a morphism `𝒜 → ℬ∂`.
    pub fn to_morphism(&self) -> Morphism {
        Morphism::new_unchecked(self.left.clone(), self.right.dual(), self.bits.clone())
    }
}

/// `s(T)`, the least stable relation containing `T`.
pub fn stable_closure(a: &Polarity, b: &Polarity, t: &RawRelation) -> Result<StableRelation> {
    Error::check_dim("stable relation rows", a.lower_size(), t.rows())?;
    Error::check_dim("stable relation columns", b.lower_size(), t.cols())?;
    Ok(StableRelation {
        left: a.clone(),
        right: b.clone(),
        bits: compatibilize_unchecked(a, &b.dual(), t),
    })
}

/// Largest factor carrier whose lower closures are tabulated.
const TABLE_LIMIT: usize = 12;

/// Stable closure on pair masks, using tables of `cl_𝒜` and `cl_ℬ` over all
/// subsets of the two lower carriers when they are small enough.
enum PairCloser<'a> {
    Tables { na: usize, nb: usize, cl_a: Vec<u64>, cl_b: Vec<u64> },
    Direct { a: &'a Polarity, bd: Polarity },
}

fn closure_table(p: &Polarity) -> Vec<u64> {
    let n = p.lower_size();
    (0..1u64 << n)
        .map(|x| p.close_lower(&BitSet::from_mask(n, x)).to_mask())
        .collect()
}

impl<'a> PairCloser<'a> {
    fn new(a: &'a Polarity, b: &Polarity) -> Self {
        let (na, nb) = (a.lower_size(), b.lower_size());
        if na <= TABLE_LIMIT && nb <= TABLE_LIMIT {
            PairCloser::Tables { na, nb, cl_a: closure_table(a), cl_b: closure_table(b) }
        } else {
            PairCloser::Direct { a, bd: b.dual() }
        }
    }

    /// `s(T)` as a pair mask.
    fn close(&self, mask: u64) -> u64 {
        match self {
            PairCloser::Tables { na, nb, cl_a, cl_b } => {
                let (na, nb) = (*na, *nb);
                let row_bits = (1u64 << nb) - 1;
                let mut t = mask;
                loop {
                    let mut next = t;
                    for j in 0..nb {
                        let col = (0..na).fold(0u64, |acc, i| acc | (next >> (i * nb + j) & 1) << i);
                        let closed = cl_a[col as usize];
                        for i in 0..na {
                            next |= (closed >> i & 1) << (i * nb + j);
                        }
                    }
                    for i in 0..na {
                        let row = next >> (i * nb) & row_bits;
                        next |= cl_b[row as usize] << (i * nb);
                    }
                    if next == t {
                        return t;
                    }
                    t = next;
                }
            }
            PairCloser::Direct { a, bd } => {
                let (na, nb) = (a.lower_size(), bd.upper_size());
                let t = pair_relation(na, nb, &BitSet::from_mask(na * nb, mask));
                pair_mask(&compatibilize_unchecked(a, bd, &t)).to_mask()
            }
        }
    }
}

fn pair_relation(rows: usize, cols: usize, mask: &BitSet) -> RawRelation {
    RawRelation::from_fn(rows, cols, |a, b| mask.contains(a * cols + b))
}

fn pair_mask(r: &RawRelation) -> BitSet {
    r.to_row_major()
}

fn pair_labels(a: &Polarity, b: &Polarity) -> Option<Vec<String>> {
    if a.lower_labels().is_none() && b.lower_labels().is_none() {
        return None;
    }
    let mut out = Vec::with_capacity(a.lower_size() * b.lower_size());
    for i in 0..a.lower_size() {
        for j in 0..b.lower_size() {
            out.push(format!("({},{})", a.label(Side::Lower, i), b.label(Side::Lower, j)));
        }
    }
    Some(out)
}

fn check_tensor_cap(n: usize, caps: &Caps) -> Result<()> {
    // the upper carrier is indexed by u64 masks
    Caps::check("tensor lower carrier", n, caps.tensor.min(30))
}

pub fn tensor_object(a: &Polarity, b: &Polarity) -> Result<Polarity> {
    tensor_object_capped(a, b, Caps::current())
}

/// `𝒜 ⊗ ℬ = (A⁻ × B⁻, 𝒫(A⁻ × B⁻); (a, b) ∈ s(T))`.
pub fn tensor_object_capped(a: &Polarity, b: &Polarity, caps: &Caps) -> Result<Polarity> {
    let (na, nb) = (a.lower_size(), b.lower_size());
    let n = na * nb;
    check_tensor_cap(n, caps)?;
    let closer = PairCloser::new(a, b);
    let cols = (0..1u64 << n)
        .map(|mask| BitSet::from_mask(n, closer.close(mask)))
        .collect();
    let incidence = RawRelation::from_cols(n, cols)?;
    Polarity::with_labels(incidence, pair_labels(a, b), None)
}

pub fn tensor_morphism(q: &Morphism, s: &Morphism) -> Result<Morphism> {
    tensor_morphism_capped(q, s, Caps::current())
}

/// `Q ⊗ S : 𝒜⊗𝒞 → ℬ⊗𝒟` for `Q: 𝒜 → ℬ`, `S: 𝒞 → 𝒟`, with
/// `(a, c) (Q⊗S) R` iff `a (Q ⨟ s(R) ⨟ S∂) c`.
pub fn tensor_morphism_capped(q: &Morphism, s: &Morphism, caps: &Caps) -> Result<Morphism> {
    let (a, b) = (q.dom(), q.cod());
    let (c, d) = (s.dom(), s.cod());
    let dom = tensor_object_capped(a, c, caps)?;
    let cod = tensor_object_capped(b, d, caps)?;
    let (nb, nd) = (b.lower_size(), d.lower_size());
    let dd = d.dual();
    let s_dual = s.rel().transpose();
    let closer = PairCloser::new(b, d);
    let cols = (0..cod.upper_size())
        .map(|mask| {
            let sr = pair_relation(nb, nd, &BitSet::from_mask(nb * nd, closer.close(mask as u64)));
            let qs = bracket_compose(q.rel(), b.rel(), &sr);
            pair_mask(&bracket_compose(&qs, dd.rel(), &s_dual))
        })
        .collect();
    let rel = RawRelation::from_cols(dom.lower_size(), cols)?;
    Morphism::new(dom, cod, rel)
}

/// `Γ: 𝒜⊗ℬ → ℬ⊗𝒜`, `(a, b) Γ R` iff `(b, a) ∈ s(R)`.
pub fn symmetry(a: &Polarity, b: &Polarity) -> Result<IsoWitness> {
    let ab = tensor_object(a, b)?;
    let ba = tensor_object(b, a)?;
    let (na, nb) = (a.lower_size(), b.lower_size());
    let rel = RawRelation::from_fn(na * nb, ba.upper_size(), |row, col| {
        let (i, j) = (row / nb, row % nb);
        ba.rel().get(j * na + i, col)
    });
    try_invert(&Morphism::new(ab, ba, rel)?)
}

/// Transports the incidence of `target` along a bijection of lower carriers
/// (given as `perm[source index] = target index`) and of upper carriers (the
/// induced map on subsets), yielding a morphism `source → target`.
fn transport(source: &Polarity, target: &Polarity, perm: &[usize]) -> Result<IsoWitness> {
    let n = perm.len();
    Error::check_dim("transport lower carrier", n, source.lower_size())?;
    let rel = RawRelation::from_fn(n, target.upper_size(), |row, col| target.rel().get(perm[row], col));
    try_invert(&Morphism::new(source.clone(), target.clone(), rel)?)
}

/// `(𝒜⊗ℬ)⊗𝒞 ≅ 𝒜⊗(ℬ⊗𝒞)` induced by `((a, b), c) ↦ (a, (b, c))`.
pub fn associator(a: &Polarity, b: &Polarity, c: &Polarity) -> Result<IsoWitness> {
    let left = tensor_object(&tensor_object(a, b)?, c)?;
    let right = tensor_object(a, &tensor_object(b, c)?)?;
    let (na, nb, nc) = (a.lower_size(), b.lower_size(), c.lower_size());
    let perm: Vec<usize> = (0..na * nb * nc)
        .map(|row| {
            let (ab, k) = (row / nc, row % nc);
            let (i, j) = (ab / nb, ab % nb);
            i * (nb * nc) + (j * nc + k)
        })
        .collect();
    transport(&left, &right, &perm)
}

/// `𝕀⊗𝒜 ≅ 𝒜` via `rel(𝒜)`, the lower carrier `{•} × A⁻` read as `A⁻`.
pub fn left_unitor(a: &Polarity) -> Result<IsoWitness> {
    let ia = tensor_object(&Polarity::unit(), a)?;
    try_invert(&Morphism::new(ia, a.clone(), a.rel().clone())?)
}

/// `𝒜⊗𝕀 ≅ 𝒜` via `rel(𝒜)`, the lower carrier `A⁻ × {•}` read as `A⁻`.
pub fn right_unitor(a: &Polarity) -> Result<IsoWitness> {
    let ai = tensor_object(a, &Polarity::unit())?;
    try_invert(&Morphism::new(ai, a.clone(), a.rel().clone())?)
}

/// `𝒜 ⊸ ℬ = (𝒜 ⊗ ℬ∂)∂`.
pub fn internal_hom(a: &Polarity, b: &Polarity) -> Result<Polarity> {
    Ok(tensor_object(a, &b.dual())?.dual())
}

/// `Pol(𝒜⊗ℬ, 𝒞∂) → Pol(𝒜, (ℬ⊗𝒞)∂)`, re-associating
/// `(A⁻ × B⁻) × C⁻ ≅ A⁻ × (B⁻ × C⁻)`.
pub fn linear_curry(r: &Morphism, a: &Polarity, b: &Polarity) -> Result<Morphism> {
    let c = r.cod().dual();
    let ab = tensor_object(a, b)?;
    if r.dom() != &ab {
        return Err(Error::EndpointMismatch("domain is not the tensor of the given factors".into()));
    }
    let (nb, nc) = (b.lower_size(), c.lower_size());
    let bc = tensor_object(b, &c)?;
    let rel = RawRelation::from_fn(a.lower_size(), nb * nc, |i, col| {
        let (j, k) = (col / nc, col % nc);
        r.rel().get(i * nb + j, k)
    });
    Morphism::new(a.clone(), bc.dual(), rel)
}

/// The inverse of [`linear_curry`]: `Pol(𝒜, (ℬ⊗𝒞)∂) → Pol(𝒜⊗ℬ, 𝒞∂)`.
pub fn linear_uncurry(r: &Morphism, b: &Polarity, c: &Polarity) -> Result<Morphism> {
    let a = r.dom();
    let bc = tensor_object(b, c)?;
    if r.cod() != &bc.dual() {
        return Err(Error::EndpointMismatch("codomain is not the dual of the given tensor".into()));
    }
    let (nb, nc) = (b.lower_size(), c.lower_size());
    let ab = tensor_object(a, b)?;
    let rel = RawRelation::from_fn(a.lower_size() * nb, nc, |row, k| {
        let (i, j) = (row / nb, row % nb);
        r.rel().get(i, j * nc + k)
    });
    Morphism::new(ab, c.dual(), rel)
}
