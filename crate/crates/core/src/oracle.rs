//! Brute-force reference implementations.
//!
//! Everything here is evaluated straight from the definitions over all
//! subsets, using plain `u64` masks and loops, and shares no code path with
//! the production routines it is compared against. Carriers must be small
//! (every function enumerates subsets), at most 64 elements per side and in
//! practice far fewer.

use crate::bitset::BitSet;
use crate::morphism::Morphism;
use crate::polarity::{Polarity, Side};
use crate::relation::RawRelation;

/// A relation as one mask per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub rows: usize,
    pub cols: usize,
    pub row_masks: Vec<u64>,
}

fn all(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

fn subsets(n: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 24, "brute force over 2^{n} subsets refused");
    0..(1u64 << n)
}

fn bit(mask: u64, i: usize) -> bool {
    mask >> i & 1 == 1
}

fn is_sub(x: u64, y: u64) -> bool {
    x & !y == 0
}

impl Table {
    pub fn from_rel(r: &RawRelation) -> Table {
        assert!(r.rows() <= 64 && r.cols() <= 64, "oracle tables are limited to 64x64");
        let mut row_masks = vec![0u64; r.rows()];
        for (a, mask) in row_masks.iter_mut().enumerate() {
            for b in 0..r.cols() {
                if r.get(a, b) {
                    *mask |= 1 << b;
                }
            }
        }
        Table {
            rows: r.rows(),
            cols: r.cols(),
            row_masks,
        }
    }

    pub fn from_polarity(p: &Polarity) -> Table {
        Table::from_rel(p.rel())
    }

    pub fn to_rel(&self) -> RawRelation {
        RawRelation::from_fn(self.rows, self.cols, |a, b| self.get(a, b))
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        bit(self.row_masks[a], b)
    }

    pub fn transpose(&self) -> Table {
        let mut row_masks = vec![0u64; self.cols];
        for a in 0..self.rows {
            for (b, mask) in row_masks.iter_mut().enumerate() {
                if self.get(a, b) {
                    *mask |= 1 << a;
                }
            }
        }
        Table {
            rows: self.cols,
            cols: self.rows,
            row_masks,
        }
    }

    /// `R↑(X)`: columns related to every row in `X`.
    pub fn up(&self, x: u64) -> u64 {
        let mut out = 0;
        for b in 0..self.cols {
            if (0..self.rows).all(|a| !bit(x, a) || self.get(a, b)) {
                out |= 1 << b;
            }
        }
        out
    }

    /// `R↓(Y)`: rows related to every column in `Y`.
    pub fn down(&self, y: u64) -> u64 {
        let mut out = 0;
        for a in 0..self.rows {
            if (0..self.cols).all(|b| !bit(y, b) || self.get(a, b)) {
                out |= 1 << a;
            }
        }
        out
    }

    pub fn cl_lower(&self, x: u64) -> u64 {
        self.down(self.up(x))
    }

    pub fn cl_upper(&self, y: u64) -> u64 {
        self.up(self.down(y))
    }

    pub fn rectangle_inside(&self, x: u64, y: u64) -> bool {
        (0..self.rows).all(|a| !bit(x, a) || is_sub(y, self.row_masks[a]))
    }

    fn from_rectangles(rows: usize, cols: usize, rects: &[(u64, u64)]) -> Table {
        let mut row_masks = vec![0u64; rows];
        for &(x, y) in rects {
            for (a, mask) in row_masks.iter_mut().enumerate() {
                if bit(x, a) {
                    *mask |= y;
                }
            }
        }
        Table {
            rows,
            cols,
            row_masks,
        }
    }

    fn is_subset(&self, other: &Table) -> bool {
        self.row_masks
            .iter()
            .zip(&other.row_masks)
            .all(|(&a, &b)| is_sub(a, b))
    }
}

pub fn to_bitset(n: usize, mask: u64) -> BitSet {
    BitSet::from_mask(n, mask)
}

/// All closed subsets on one side, by testing every subset.
pub fn closed_sets(p: &Polarity, side: Side) -> Vec<BitSet> {
    let t = Table::from_polarity(p);
    let n = p.size(side);
    subsets(n)
        .filter(|&s| match side {
            Side::Lower => t.cl_lower(s) == s,
            Side::Upper => t.cl_upper(s) == s,
        })
        .map(|s| to_bitset(n, s))
        .collect()
}

/// The six left-compatibility conditions of `R ⊆ A⁻ × Y` against `𝒜`, each
/// evaluated over all subsets:
///
/// 1. `cl_𝒜 ≤ R↓R↑`
/// 2. `cl_𝒜 R↓ ≤ R↓`
/// 3. `R↑ ≤ R↑ cl_𝒜`
/// 4. `X×Y ⊆ R ⇒ cl_𝒜(X)×Y ⊆ R`
/// 5. `⟨cl_𝒜 R↓⟩ ⊆ R`
/// 6. `cl_𝒜 R↓ = R↓`
pub fn left_conditions(a: &Polarity, r: &RawRelation) -> [bool; 6] {
    let at = Table::from_polarity(a);
    let rt = Table::from_rel(r);
    left_conditions_tables(&at, &rt)
}

fn left_conditions_tables(at: &Table, rt: &Table) -> [bool; 6] {
    let n = at.rows;
    let k = rt.cols;
    let c1 = subsets(n).all(|x| is_sub(at.cl_lower(x), rt.down(rt.up(x))));
    let c2 = subsets(k).all(|y| is_sub(at.cl_lower(rt.down(y)), rt.down(y)));
    let c3 = subsets(n).all(|x| is_sub(rt.up(x), rt.up(at.cl_lower(x))));
    let c4 = subsets(n).all(|x| {
        subsets(k).all(|y| !rt.rectangle_inside(x, y) || rt.rectangle_inside(at.cl_lower(x), y))
    });
    let c5 = (0..k).all(|beta| {
        let image = at.cl_lower(rt.down(1 << beta));
        (0..n).all(|x| !bit(image, x) || rt.get(x, beta))
    });
    let c6 = subsets(k).all(|y| at.cl_lower(rt.down(y)) == rt.down(y));
    [c1, c2, c3, c4, c5, c6]
}

/// The mirrored conditions for `R ⊆ X × B⁺` against `ℬ`, obtained by
/// transposing `R` and `ℬ`.
pub fn right_conditions(b: &Polarity, r: &RawRelation) -> [bool; 6] {
    let bt = Table::from_polarity(b).transpose();
    let rt = Table::from_rel(r).transpose();
    left_conditions_tables(&bt, &rt)
}

/// Compatibility by the rectangle condition on both sides.
pub fn is_compatible(a: &Polarity, b: &Polarity, r: &RawRelation) -> bool {
    let at = Table::from_polarity(a);
    let bt = Table::from_polarity(b);
    let rt = Table::from_rel(r);
    subsets(rt.rows).all(|x| {
        subsets(rt.cols).all(|y| {
            !rt.rectangle_inside(x, y) || rt.rectangle_inside(at.cl_lower(x), bt.cl_upper(y))
        })
    })
}

/// `⟨R↓ ℬ↑ S↓⟩` evaluated entry by entry.
pub fn compose(r: &RawRelation, mid: &Polarity, s: &RawRelation) -> RawRelation {
    let rt = Table::from_rel(r);
    let mt = Table::from_polarity(mid);
    let st = Table::from_rel(s);
    RawRelation::from_fn(r.rows(), s.cols(), |a, gamma| {
        bit(rt.down(mt.up(st.down(1 << gamma))), a)
    })
}

/// One step `c(R) = ⋃_{X×Y⊆R} cl_𝒜(X) × cl^ℬ(Y)` over all rectangles.
pub fn compat_step(a: &Polarity, b: &Polarity, r: &RawRelation) -> RawRelation {
    let at = Table::from_polarity(a);
    let bt = Table::from_polarity(b);
    let rt = Table::from_rel(r);
    let mut rects = Vec::new();
    for x in subsets(rt.rows) {
        for y in subsets(rt.cols) {
            if rt.rectangle_inside(x, y) {
                rects.push((at.cl_lower(x), bt.cl_upper(y)));
            }
        }
    }
    Table::from_rectangles(rt.rows, rt.cols, &rects).to_rel()
}

/// Iterates [`compat_step`] from `r` to its fixpoint.
pub fn compatibilize(a: &Polarity, b: &Polarity, r: &RawRelation) -> RawRelation {
    let mut current = r.clone();
    loop {
        let next = compat_step(a, b, &current);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// The intersection of every compatible superset of `r`, found by scanning
/// all supersets.
pub fn least_compatible_superset(a: &Polarity, b: &Polarity, r: &RawRelation) -> RawRelation {
    let rows = r.rows();
    let cols = r.cols();
    let base = Table::from_rel(r);
    let mut best = Table::from_rel(&RawRelation::full(rows, cols));
    for bits in subsets(rows * cols) {
        let candidate = Table {
            rows,
            cols,
            row_masks: (0..rows)
                .map(|i| bits >> (i * cols) & all(cols))
                .collect(),
        };
        if base.is_subset(&candidate) && is_compatible(a, b, &candidate.to_rel()) {
            for (m, c) in best.row_masks.iter_mut().zip(&candidate.row_masks) {
                *m &= c;
            }
        }
    }
    best.to_rel()
}

/// Every compatible relation `𝒜 → ℬ`, by testing all relations.
pub fn hom_set(a: &Polarity, b: &Polarity) -> Vec<RawRelation> {
    let rows = a.lower_size();
    let cols = b.upper_size();
    subsets(rows * cols)
        .map(|bits| {
            RawRelation::from_fn(rows, cols, |i, j| bit(bits, i * cols + j))
        })
        .filter(|r| is_compatible(a, b, r))
        .collect()
}

/// `R↓R↑ ≤ cl_ℬ` over every subset of the domain's lower carrier.
pub fn is_mono(r: &Morphism) -> bool {
    let bt = Table::from_polarity(r.dom());
    let rt = Table::from_rel(r.rel());
    subsets(bt.rows).all(|y| is_sub(rt.down(rt.up(y)), bt.cl_lower(y)))
}

/// `R↑R↓ ≤ cl^𝒞` over every subset of the codomain's upper carrier.
pub fn is_epi(r: &Morphism) -> bool {
    let ct = Table::from_polarity(r.cod());
    let rt = Table::from_rel(r.rel());
    subsets(ct.cols).all(|z| is_sub(rt.up(rt.down(z)), ct.cl_upper(z)))
}

/// Left cancellation against every pair of morphisms out of each test object.
pub fn mono_by_cancellation(r: &Morphism, test_objects: &[Polarity]) -> bool {
    test_objects.iter().all(|t| {
        let images: Vec<RawRelation> = hom_set(t, r.dom())
            .iter()
            .map(|p| compose(p, r.dom(), r.rel()))
            .collect();
        all_distinct(&images)
    })
}

/// Right cancellation against every pair of morphisms into each test object.
pub fn epi_by_cancellation(r: &Morphism, test_objects: &[Polarity]) -> bool {
    test_objects.iter().all(|t| {
        let images: Vec<RawRelation> = hom_set(r.cod(), t)
            .iter()
            .map(|p| compose(r.rel(), r.cod(), p))
            .collect();
        all_distinct(&images)
    })
}

fn all_distinct(items: &[RawRelation]) -> bool {
    let mut seen = std::collections::HashSet::new();
    items.iter().all(|i| seen.insert(i.clone()))
}

/// Searches the hom-set `ℬ → 𝒜` for a two-sided inverse of `r`.
pub fn find_inverse(r: &Morphism) -> Option<RawRelation> {
    let (a, b) = (r.dom(), r.cod());
    hom_set(b, a).into_iter().find(|s| {
        compose(r.rel(), b, s) == *a.rel() && compose(s, a, r.rel()) == *b.rel()
    })
}

/// Checks the standardness axioms: upper carrier is `𝒫(A⁻)` in mask order,
/// `a ∈ X ⇒ a 𝒜 X`, and `a 𝒜 X ∧ (∀a'∈X. a' 𝒜 X') ⇒ a 𝒜 X'`.
pub fn is_standard(p: &Polarity) -> bool {
    let n = p.lower_size();
    if n > 16 || p.upper_size() != 1 << n {
        return false;
    }
    let t = Table::from_polarity(p).transpose(); // row X = {a : a 𝒜 X}
    let reflexive = (0..1u64 << n).all(|x| is_sub(x, t.row_masks[x as usize]));
    let transitive = (0..1u64 << n).all(|x| {
        (0..1u64 << n).all(|x2| {
            let related = t.row_masks[x as usize];
            !is_sub(x, t.row_masks[x2 as usize]) || is_sub(related, t.row_masks[x2 as usize])
        })
    });
    reflexive && transitive
}

/// An element is dispensable when its row equals the intersection of the
/// rows of all *other* elements whose rows contain it.
pub fn dispensable_lower(p: &Polarity) -> Vec<usize> {
    let t = Table::from_polarity(p);
    (0..t.rows)
        .filter(|&a| {
            let row = t.row_masks[a];
            let meet = (0..t.rows)
                .filter(|&o| o != a && is_sub(row, t.row_masks[o]))
                .fold(all(t.cols), |acc, o| acc & t.row_masks[o]);
            meet == row
        })
        .collect()
}

/// Reducedness via dispensable elements on both sides.
pub fn is_reduced(p: &Polarity) -> bool {
    dispensable_lower(p).is_empty() && dispensable_lower(&p.dual()).is_empty()
}

/// The least set containing `t` and closed under `cl_𝒜 × cl_ℬ` of its
/// rectangles.
pub fn stable_closure(a: &Polarity, b: &Polarity, t: &RawRelation) -> RawRelation {
    compatibilize(a, &b.dual(), t)
}

/// Builds a morphism without checking compatibility, for negative tests.
pub fn unchecked_morphism(dom: Polarity, cod: Polarity, rel: RawRelation) -> Morphism {
    Morphism::new_unchecked(dom, cod, rel)
}

/// The six conditions on `R: 𝒜 → ℬ` characterizing join preservation, each
/// evaluated directly:
///
/// 1. `G⁻(R)` preserves the join of every subset of `G⁻(ℬ)`
/// 2. some `S: ℬ → 𝒜` has `𝒜 ⊆ R⨟S` and `S⨟R ⊆ ℬ`
/// 3. some `S: ℬ → 𝒜` has `R↑𝒜↓ = ℬ↑S↓`
/// 4. `R_*` is compatible and `R↑𝒜↓ = ℬ↑R_*↓`
/// 5. `R_*` is compatible and `ℬ↓R↑ = R_*↓𝒜↑`
/// 6. `R_*↓ = ℬ↓R↑𝒜↓`
///
/// where `R_* = ⟨ℬ↓R↑𝒜↓⟩`.
pub fn adjoint_conditions(r: &Morphism) -> [bool; 6] {
    let (a, b) = (r.dom(), r.cod());
    let at = Table::from_polarity(a);
    let bt = Table::from_polarity(b);
    let rt = Table::from_rel(r.rel());
    let na = a.lower_size();
    let ma = a.upper_size();

    // R_* column by column
    let r_star = Table::from_rel(&RawRelation::from_fn(b.lower_size(), ma, |bi, alpha| {
        bit(bt.down(rt.up(at.down(1 << alpha))), bi)
    }));
    let r_star_rel = r_star.to_rel();
    let r_star_ok = is_compatible(b, a, &r_star_rel);

    let c1 = {
        let fa = closed_sets(a, Side::Lower);
        let fb = closed_sets(b, Side::Lower);
        let leq_a: Vec<Vec<bool>> = fa.iter().map(|x| fa.iter().map(|y| x.is_subset(y)).collect()).collect();
        let leq_b: Vec<Vec<bool>> = fb.iter().map(|x| fb.iter().map(|y| x.is_subset(y)).collect()).collect();
        let image: Vec<usize> = fb
            .iter()
            .map(|y| {
                let img = rt.down(bt.up(y.to_mask()));
                fa.iter().position(|c| c.to_mask() == img).expect("closed image")
            })
            .collect();
        order::all_subsets(fb.len()).iter().all(|family| {
            let j = order::join(&leq_b, family).expect("complete");
            let mapped: Vec<usize> = family.iter().map(|&i| image[i]).collect();
            Some(image[j]) == order::join(&leq_a, &mapped)
        })
    };
    let c2 = hom_set(b, a).iter().any(|s| {
        a.rel().is_subset(&compose(r.rel(), b, s)) && compose(s, a, r.rel()).is_subset(b.rel())
    });
    let c3 = hom_set(b, a).iter().any(|s| {
        let st = Table::from_rel(s);
        subsets(ma).all(|z| rt.up(at.down(z)) == bt.up(st.down(z)))
    });
    let c4 = r_star_ok && subsets(ma).all(|z| rt.up(at.down(z)) == bt.up(r_star.down(z)));
    let c5 = r_star_ok && subsets(na).all(|x| bt.down(rt.up(x)) == r_star.down(at.up(x)));
    let c6 = subsets(ma).all(|z| r_star.down(z) == bt.down(rt.up(at.down(z))));
    [c1, c2, c3, c4, c5, c6]
}

/// Meets and joins of a finite order given by `leq[i][j] = i ≤ j`.
pub mod order {
    /// Greatest lower bound of `set`, if it exists.
    pub fn meet(leq: &[Vec<bool>], set: &[usize]) -> Option<usize> {
        let n = leq.len();
        let lower: Vec<usize> = (0..n).filter(|&x| set.iter().all(|&s| leq[x][s])).collect();
        lower
            .iter()
            .copied()
            .find(|&g| lower.iter().all(|&l| leq[l][g]))
    }

    /// Least upper bound of `set`, if it exists.
    pub fn join(leq: &[Vec<bool>], set: &[usize]) -> Option<usize> {
        let n = leq.len();
        let upper: Vec<usize> = (0..n).filter(|&x| set.iter().all(|&s| leq[s][x])).collect();
        upper
            .iter()
            .copied()
            .find(|&g| upper.iter().all(|&u| leq[g][u]))
    }

    /// All subsets of `{0..n}` as index lists.
    pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
        (0..1u64 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect()
    }
}
