//! Seeded random polarities and morphisms for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::morphism::{compatibilize, hom_enumerate_capped, Morphism};
use crate::polarity::Polarity;
use crate::relation::RawRelation;

/// Below this many relation bits, morphisms are drawn uniformly from the
/// enumerated hom-set.
const UNIFORM_HOM_BITS: usize = 9;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A carrier size in `0..=max`, empty about one time in ten.
    pub fn size(&mut self, max: usize) -> usize {
        if max == 0 || self.rng.gen_bool(0.1) {
            0
        } else {
            self.rng.gen_range(1..=max)
        }
    }

    pub fn relation(&mut self, rows: usize, cols: usize) -> RawRelation {
        let density = [0.2, 0.4, 0.5, 0.6, 0.8][self.rng.gen_range(0..5)];
        let bits: Vec<bool> = (0..rows * cols).map(|_| self.rng.gen_bool(density)).collect();
        RawRelation::from_fn(rows, cols, |r, c| bits[r * cols + c])
    }

    /// A random polarity with both carriers at most `max`.
    pub fn polarity(&mut self, max: usize) -> Polarity {
        let (n, m) = (self.size(max), self.size(max));
        Polarity::new(self.relation(n, m))
    }

    /// A random morphism `a → b`: uniform over the hom-set for small shapes,
    /// otherwise the compatibilization of a sparse relation.
    pub fn morphism(&mut self, a: &Polarity, b: &Polarity) -> Morphism {
        let bits = a.lower_size() * b.upper_size();
        if bits <= UNIFORM_HOM_BITS && self.rng.gen_bool(0.5) {
            let caps = Caps {
                hom_bits: UNIFORM_HOM_BITS,
                ..Caps::default()
            };
            let homs = hom_enumerate_capped(a, b, &caps).expect("within cap");
            let k = self.rng.gen_range(0..homs.len());
            return homs[k].clone();
        }
        let density = [0.0, 0.1, 0.2, 0.35][self.rng.gen_range(0..4)];
        let cols = b.upper_size();
        let bits: Vec<bool> = (0..bits).map(|_| self.rng.gen_bool(density)).collect();
        let raw = RawRelation::from_fn(a.lower_size(), cols, |r, c| bits[r * cols + c]);
        compatibilize(a, b, &raw).expect("shapes match")
    }

    /// Two composable morphisms between three random polarities.
    pub fn composable(&mut self, max: usize) -> (Morphism, Morphism) {
        let (a, b, c) = (self.polarity(max), self.polarity(max), self.polarity(max));
        (self.morphism(&a, &b), self.morphism(&b, &c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut g1 = Gen::new(7);
        let mut g2 = Gen::new(7);
        for _ in 0..20 {
            let (a, b) = (g1.polarity(4), g1.polarity(4));
            assert_eq!(a, g2.polarity(4));
            assert_eq!(b, g2.polarity(4));
            assert_eq!(g1.morphism(&a, &b), g2.morphism(&a, &b));
        }
    }

    #[test]
    fn morphisms_are_compatible() {
        let mut g = Gen::new(1);
        for _ in 0..200 {
            let (a, b) = (g.polarity(4), g.polarity(4));
            let m = g.morphism(&a, &b);
            assert!(crate::oracle::is_compatible(&a, &b, m.rel()));
        }
    }
}
