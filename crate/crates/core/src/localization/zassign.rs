use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rat, Rational, Ring};

/// Values `z_1, …, z_n` in some coefficient ring.
///
/// [`ZAssignment::new`] enforces pairwise distinctness; [`ZAssignment::unchecked`]
/// exists so that degenerate points can be fed to evaluators, which then
/// report [`Error::ZeroDenominator`].
#[derive(Debug, Clone, PartialEq)]
pub struct ZAssignment<C = Rational> {
    values: Vec<C>,
}

impl<C: Ring> ZAssignment<C> {
    pub fn new(values: Vec<C>) -> Result<Self> {
        let z = ZAssignment { values };
        if let Some((a, b)) = z.first_collision() {
            return Err(Error::ZeroDenominator { a, b });
        }
        Ok(z)
    }

    pub fn unchecked(values: Vec<C>) -> Self {
        ZAssignment { values }
    }

    /// First pair `a < b` with `z_a = z_b`.
    pub fn first_collision(&self) -> Option<(usize, usize)> {
        for a in 0..self.values.len() {
            for b in a + 1..self.values.len() {
                if self.values[a] == self.values[b] {
                    return Some((a + 1, b + 1));
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `z_a`, 1-based.
    pub fn get(&self, a: usize) -> Result<&C> {
        a.checked_sub(1)
            .and_then(|i| self.values.get(i))
            .ok_or(Error::MissingZ(a))
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    /// `z_a` without bounds reporting; panics on a missing index.
    pub(crate) fn at(&self, a: usize) -> C {
        self.values[a - 1].clone()
    }
}

impl ZAssignment<Rational> {
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| rat(v)).collect())
    }

    /// `n` seeded random distinct integers in `[-10^4, 10^4]`.
    pub fn random(n: usize, rng: &mut ChaCha8Rng) -> Self {
        ZAssignment {
            values: random_distinct_rationals(n, rng),
        }
    }
}

/// The crate's single source of randomness.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` pairwise distinct integers drawn uniformly from `[-10^4, 10^4]`.
pub fn random_distinct_rationals(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v: i64 = rng.gen_range(-10_000..=10_000);
        if seen.insert(v) {
            out.push(rat(v));
        }
    }
    out
}
