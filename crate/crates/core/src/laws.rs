//! A registry of laws checked on seeded random instances.
//!
//! Each law draws its instances through a [`Case`], which records every
//! generated object so a violation can be reported with a self-contained
//! reproducer. Cases are independent and seeded individually, so running
//! them in parallel gives the same report as running them in order.

use rayon::prelude::*;

use crate::category::{
    dual_morphism, dual_object, factor, is_epi, is_mono, is_separating, is_standard, separate,
    standardize, try_invert,
};
use crate::duality::{c_morphism, epsilon, g_minus_morphism, lattice_unit, preserves_joins};
use crate::error::{Error, Result};
use crate::gen::Gen;
use crate::io::{burmeister, ContextFile};
use crate::lattice::LatticeMap;
use crate::limits::{coequalizer, equalizer, is_reduced, product, tuple};
use crate::morphism::{compatibilize, is_compatible_left, is_compatible_right, Morphism};
use crate::oracle;
use crate::polarity::Polarity;
use crate::relation::RawRelation;
use crate::tensor::{left_unitor, right_unitor, stable_closure, symmetry, tensor_morphism, tensor_object};

/// One random instance of a law, with the data drawn so far.
pub struct Case {
    gen: Gen,
    max: usize,
    repro: String,
}

impl Case {
    fn new(seed: u64, max: usize) -> Self {
        Case {
            gen: Gen::new(seed),
            max,
            repro: String::new(),
        }
    }

    fn record_polarity(&mut self, name: &str, p: &Polarity) {
        self.repro.push_str(&format!("{name} =\n"));
        self.repro.push_str(&burmeister::serialize(&ContextFile::new(p.strip_labels())));
    }

    fn record_relation(&mut self, name: &str, r: &RawRelation) {
        self.repro.push_str(&format!("{name} ({}x{}) =\n{r}", r.rows(), r.cols()));
    }

    pub fn polarity(&mut self, name: &str) -> Polarity {
        let p = self.gen.polarity(self.max);
        self.record_polarity(name, &p);
        p
    }

    pub fn morphism(&mut self, name: &str, a: &Polarity, b: &Polarity) -> Morphism {
        let m = self.gen.morphism(a, b);
        self.record_relation(name, m.rel());
        m
    }

    pub fn relation(&mut self, name: &str, rows: usize, cols: usize) -> RawRelation {
        let r = self.gen.relation(rows, cols);
        self.record_relation(name, &r);
        r
    }

    pub fn reproducer(&self) -> &str {
        &self.repro
    }
}

pub struct Law {
    pub name: &'static str,
    /// Largest carrier this law draws, whatever the requested size.
    pub max_size: usize,
    pub check: fn(&mut Case) -> Result<bool>,
}

fn law(name: &'static str, max_size: usize, check: fn(&mut Case) -> Result<bool>) -> Law {
    Law {
        name,
        max_size,
        check,
    }
}

fn triple(c: &mut Case) -> (Polarity, Polarity, Polarity) {
    (c.polarity("A"), c.polarity("B"), c.polarity("C"))
}

fn identity_laws(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.morphism("R", &a, &b);
    Ok(Morphism::identity(&a).compose(&r)? == r && r.compose(&Morphism::identity(&b))? == r)
}

fn associativity(c: &mut Case) -> Result<bool> {
    let (a, b, cc) = triple(c);
    let d = c.polarity("D");
    let r = c.morphism("R", &a, &b);
    let s = c.morphism("S", &b, &cc);
    let t = c.morphism("T", &cc, &d);
    Ok(r.compose(&s)?.compose(&t)? == r.compose(&s.compose(&t)?)?)
}

fn compatibility_conditions(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.relation("R", a.lower_size(), b.upper_size());
    let left = oracle::left_conditions(&a, &r);
    let right = oracle::right_conditions(&b, &r);
    let (l, rr) = (is_compatible_left(&a, &r)?, is_compatible_right(&b, &r)?);
    Ok(left.iter().all(|&x| x == l) && right.iter().all(|&x| x == rr))
}

fn compatibilize_is_least(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.relation("R", a.lower_size(), b.upper_size());
    let m = compatibilize(&a, &b, &r)?;
    Ok(m.rel() == &oracle::compatibilize(&a, &b, &r) && compatibilize(&a, &b, m.rel())? == m)
}

fn duality_involution(c: &mut Case) -> Result<bool> {
    let (a, b, cc) = triple(c);
    let r = c.morphism("R", &a, &b);
    let s = c.morphism("S", &b, &cc);
    let rs_dual = dual_morphism(&r.compose(&s)?);
    Ok(dual_object(&dual_object(&a)) == a
        && dual_morphism(&dual_morphism(&r)) == r
        && rs_dual == dual_morphism(&s).compose(&dual_morphism(&r))?)
}

fn mono_epi_oracle(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.morphism("R", &a, &b);
    Ok(is_mono(&r) == oracle::is_mono(&r) && is_epi(&r) == oracle::is_epi(&r))
}

fn factorization(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.morphism("R", &a, &b);
    let f = factor(&r);
    Ok(f.epi.compose(&f.mono)? == r && is_epi(&f.epi) && is_mono(&f.mono))
}

fn balanced(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.morphism("R", &a, &b);
    let invertible = try_invert(&r).is_ok();
    Ok(invertible == (is_mono(&r) && is_epi(&r)) && invertible == oracle::find_inverse(&r).is_some())
}

fn representatives(c: &mut Case) -> Result<bool> {
    let a = c.polarity("A");
    let (sep, _) = separate(&a)?;
    let (std, _) = standardize(&a)?;
    Ok(is_separating(&sep) && is_standard(&std) && oracle::is_standard(&std))
}

fn reducedness(c: &mut Case) -> Result<bool> {
    let a = c.polarity("A");
    Ok(is_reduced(&a)? == oracle::is_reduced(&a))
}

fn product_tuples(c: &mut Case) -> Result<bool> {
    let (a, b, t) = triple(c);
    let bundle = product(&[a.clone(), b.clone()])?;
    let legs = [c.morphism("R", &t, &a), c.morphism("S", &t, &b)];
    let tup = tuple(&t, &legs, &bundle)?;
    Ok(tup.compose(&bundle.projections[0])? == legs[0] && tup.compose(&bundle.projections[1])? == legs[1])
}

fn equalizers(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.morphism("R", &a, &b);
    let s = c.morphism("S", &a, &b);
    let (_, e) = equalizer(&r, &s)?;
    let (_, q) = coequalizer(&r, &s)?;
    Ok(is_mono(&e) && e.compose(&r)? == e.compose(&s)? && is_epi(&q) && r.compose(&q)? == s.compose(&q)?)
}

fn g_minus_functor(c: &mut Case) -> Result<bool> {
    let (a, b, cc) = triple(c);
    let r = c.morphism("R", &a, &b);
    let s = c.morphism("S", &b, &cc);
    let (gr, gs) = (g_minus_morphism(&r)?, g_minus_morphism(&s)?);
    let id = g_minus_morphism(&Morphism::identity(&a))?;
    Ok(g_minus_morphism(&r.compose(&s)?)? == gr.after(&gs)?
        && id == LatticeMap::identity(id.dom())
        && gr.preserves_meets())
}

fn c_functor(c: &mut Case) -> Result<bool> {
    let (a, b, cc) = triple(c);
    let r = c.morphism("R", &a, &b);
    let s = c.morphism("S", &b, &cc);
    let (gr, gs) = (g_minus_morphism(&r)?, g_minus_morphism(&s)?);
    // C is contravariant on INF: C(G(R) ∘ G(S)) = C(G(R)) ⨟ C(G(S))
    Ok(c_morphism(&gr.after(&gs)?)? == c_morphism(&gr)?.compose(&c_morphism(&gs)?)?)
}

fn epsilon_natural(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.morphism("R", &a, &b);
    let (ea, eb) = (epsilon(&a)?, epsilon(&b)?);
    let square = r.compose(eb.forward())? == ea.forward().compose(&c_morphism(&g_minus_morphism(&r)?)?)?;
    Ok(square)
}

fn unit_natural(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.morphism("R", &a, &b);
    // h = G⁻(R) : M → L is a meet-preserving map between finite lattices
    let h = g_minus_morphism(&r)?;
    let (eta_m, eta_l) = (lattice_unit(h.dom())?, lattice_unit(h.cod())?);
    let gch = g_minus_morphism(&c_morphism(&h)?)?;
    Ok(eta_l.after(&h)?.table() == gch.after(&eta_m)?.table())
}

fn join_preservation_conditions(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let r = c.morphism("R", &a, &b);
    let p = preserves_joins(&r)?;
    Ok(oracle::adjoint_conditions(&r)[1..].iter().all(|&x| x == p))
}

fn stable_closures(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    let t = c.relation("T", a.lower_size(), b.lower_size());
    Ok(stable_closure(&a, &b, &t)?.bits() == &oracle::stable_closure(&a, &b, &t))
}

fn tensor_coherence(c: &mut Case) -> Result<bool> {
    let (a, b) = (c.polarity("A"), c.polarity("B"));
    symmetry(&a, &b)?;
    left_unitor(&a)?;
    right_unitor(&b)?;
    Ok(true)
}

fn tensor_functor(c: &mut Case) -> Result<bool> {
    let (a, a1, a2) = (c.polarity("A"), c.polarity("A'"), c.polarity("A''"));
    let (b, b1, b2) = (c.polarity("B"), c.polarity("B'"), c.polarity("B''"));
    let (q, q1) = (c.morphism("Q", &a, &a1), c.morphism("Q'", &a1, &a2));
    let (s, s1) = (c.morphism("S", &b, &b1), c.morphism("S'", &b1, &b2));
    let ids = tensor_morphism(&Morphism::identity(&a), &Morphism::identity(&b))?;
    let whole = tensor_morphism(&q.compose(&q1)?, &s.compose(&s1)?)?;
    let parts = tensor_morphism(&q, &s)?.compose(&tensor_morphism(&q1, &s1)?)?;
    Ok(ids == Morphism::identity(&tensor_object(&a, &b)?) && whole == parts)
}

/// The laws run by `verify`, in report order.
pub fn registry() -> Vec<Law> {
    vec![
        law("category.identity", 6, identity_laws),
        law("category.associativity", 5, associativity),
        law("compatibility.conditions", 4, compatibility_conditions),
        law("compatibility.least", 4, compatibilize_is_least),
        law("duality.involution", 5, duality_involution),
        law("category.mono_epi", 4, mono_epi_oracle),
        law("category.factorization", 5, factorization),
        law("category.balanced", 3, balanced),
        law("objects.representatives", 4, representatives),
        law("objects.reduced", 5, reducedness),
        law("limits.product", 3, product_tuples),
        law("limits.equalizer", 4, equalizers),
        law("lattice.g_minus_functor", 4, g_minus_functor),
        law("lattice.c_functor", 4, c_functor),
        law("lattice.epsilon_natural", 4, epsilon_natural),
        law("lattice.unit_natural", 4, unit_natural),
        law("lattice.join_conditions", 3, join_preservation_conditions),
        law("tensor.stable_closure", 4, stable_closures),
        law("tensor.coherence", 3, tensor_coherence),
        law("tensor.functor", 2, tensor_functor),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    /// A cap was exceeded; the case says nothing about the law.
    Skipped,
    Violated { detail: String, reproducer: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub name: &'static str,
    pub held: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub law: &'static str,
    pub case: usize,
    pub case_seed: u64,
    pub detail: String,
    pub reproducer: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub laws: Vec<LawReport>,
    pub counterexample: Option<Counterexample>,
}

/// The seed of one case: distinct per law and case, stable across runs.
pub fn case_seed(seed: u64, law_index: usize, case: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((law_index as u64) << 32 | case as u64)
}

pub fn run_case(law: &Law, seed: u64, max_size: usize) -> Outcome {
    let mut case = Case::new(seed, max_size.min(law.max_size));
    match (law.check)(&mut case) {
        Ok(true) => Outcome::Holds,
        Err(Error::CapExceeded { .. }) => Outcome::Skipped,
        Ok(false) => Outcome::Violated {
            detail: "law does not hold".into(),
            reproducer: case.repro,
        },
        Err(e) => Outcome::Violated {
            detail: format!("unexpected error: {e}"),
            reproducer: case.repro,
        },
    }
}

/// Runs every law on `cases` instances, stopping at the first law with a
/// counterexample (the lowest-numbered failing case of that law).
pub fn verify(seed: u64, cases: usize, max_size: usize) -> VerifyReport {
    verify_with(&registry(), seed, cases, max_size)
}

pub fn verify_with(laws: &[Law], seed: u64, cases: usize, max_size: usize) -> VerifyReport {
    let mut reports = Vec::new();
    for (index, law) in laws.iter().enumerate() {
        let outcomes: Vec<Outcome> = (0..cases)
            .into_par_iter()
            .map(|k| run_case(law, case_seed(seed, index, k), max_size))
            .collect();
        let mut report = LawReport {
            name: law.name,
            held: 0,
            skipped: 0,
        };
        for (k, outcome) in outcomes.into_iter().enumerate() {
            match outcome {
                Outcome::Holds => report.held += 1,
                Outcome::Skipped => report.skipped += 1,
                Outcome::Violated { detail, reproducer } => {
                    reports.push(report);
                    return VerifyReport {
                        laws: reports,
                        counterexample: Some(Counterexample {
                            law: law.name,
                            case: k,
                            case_seed: case_seed(seed, index, k),
                            detail,
                            reproducer,
                        }),
                    };
                }
            }
        }
        reports.push(report);
    }
    VerifyReport {
        laws: reports,
        counterexample: None,
    }
}
