#![allow(dead_code)]

use confblocks::exact::{rat, YMonomial, YVar};
use confblocks::{Partition, Rational, YPolynomial};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// Every partition with `m` parts and size at most `max_size`.
pub fn partitions(m: usize, max_size: usize) -> Vec<Partition> {
    (0..=max_size).flat_map(|n| Partition::all(m, n)).collect()
}

/// A random element of `V^{⊗n}` for `gl_m`: degree one in each subscript.
pub fn random_tensor(n: usize, m: usize, terms: usize, rng: &mut ChaCha8Rng) -> YPolynomial<Rational> {
    let mut p = YPolynomial::zero();
    for _ in 0..terms {
        let mono = YMonomial::product((1..=n).map(|a| YVar::new(rng.gen_range(1..=m), a)));
        p = p.add(&YPolynomial::monomial(mono, rat(rng.gen_range(-9..=9))));
    }
    p
}
