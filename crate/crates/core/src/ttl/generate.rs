//! Seeded generators for formulas and traces, used by the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Alphabet, LabelSet, Trace, TtlFormula};

/// Shape parameters for random TTL formulas.
#[derive(Clone, Debug)]
pub struct FormulaGenerator {
    pub max_depth: usize,
    /// Probability of stopping at a leaf above the depth bound.
    pub leaf_prob: f64,
    /// Probability that a leaf is negated.
    pub neg_prob: f64,
    pub allow_concurrent: bool,
}

impl FormulaGenerator {
    pub fn new(max_depth: usize) -> Self {
        FormulaGenerator {
            max_depth: max_depth.max(1),
            leaf_prob: 0.3,
            neg_prob: 0.3,
            allow_concurrent: true,
        }
    }

    pub fn without_concurrent(mut self) -> Self {
        self.allow_concurrent = false;
        self
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, alphabet: &Alphabet) -> TtlFormula {
        assert!(!alphabet.is_empty(), "alphabet must be non-empty");
        self.sample_at(rng, alphabet, self.max_depth)
    }

    fn sample_at<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        alphabet: &Alphabet,
        depth: usize,
    ) -> TtlFormula {
        if depth <= 1 || rng.random_bool(self.leaf_prob) {
            let atom = alphabet.as_slice()[rng.random_range(0..alphabet.len())].clone();
            return if rng.random_bool(self.neg_prob) {
                TtlFormula::NegAtom(atom)
            } else {
                TtlFormula::Atom(atom)
            };
        }
        let kinds = if self.allow_concurrent { 3 } else { 2 };
        let op = rng.random_range(0..kinds);
        let lhs = self.sample_at(rng, alphabet, depth - 1);
        let rhs = self.sample_at(rng, alphabet, depth - 1);
        match op {
            0 => TtlFormula::seq(lhs, rhs),
            1 => TtlFormula::choice(lhs, rhs),
            _ => TtlFormula::concurrent(lhs, rhs),
        }
    }
}

/// A formula over `alphabet` with at most `max_depth` levels, Concurrent
/// nodes included. Deterministic in `seed`.
pub fn random_formula(seed: u64, max_depth: usize, alphabet: &Alphabet) -> TtlFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    FormulaGenerator::new(max_depth).sample(&mut rng, alphabet)
}

/// A trace of length `0..=max_len` whose instants hold each atom
/// independently with probability `density`.
pub fn random_trace<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_len: usize,
    density: f64,
) -> Trace {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| {
            alphabet
                .iter()
                .filter(|_| rng.random_bool(density))
                .cloned()
                .collect::<LabelSet>()
        })
        .collect()
}

/// A trace whose instants hold at most one atom, as the gridworld produces.
pub fn random_singleton_trace<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_len: usize,
    idle_prob: f64,
) -> Trace {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| {
            if rng.random_bool(idle_prob) {
                LabelSet::empty()
            } else {
                LabelSet::singleton(
                    alphabet.as_slice()[rng.random_range(0..alphabet.len())].clone(),
                )
            }
        })
        .collect()
}
