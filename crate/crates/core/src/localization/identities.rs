use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{partitionings_of, resultant_fraction, Partition};
use crate::error::{Error, Result};
use crate::exact::{elementary_symmetric, rat, LinearFactorFraction, ZMonomial, ZPolynomial};

fn check_symmetric(p: &ZPolynomial, vars: usize, label: &str) -> Result<()> {
    let range: Vec<usize> = (1..=vars).collect();
    if p.max_var() > vars || !p.is_symmetric_in(&range) {
        return Err(Error::NotSymmetric(format!("{label} = {p} in {vars} variables")));
    }
    Ok(())
}

/// `Σ_I Π_j p_j(z_{I_j}) / R(z_{I_1} | … | z_{I_r})` over splittings of
/// `{1, …, Σ sizes}` into blocks of the given sizes.
fn flag_sum(sizes: &[usize], polys: &[ZPolynomial]) -> Result<LinearFactorFraction> {
    assert_eq!(sizes.len(), polys.len(), "one polynomial per block");
    for (j, (p, &k)) in polys.iter().zip(sizes).enumerate() {
        check_symmetric(p, k, &format!("p_{}", j + 1))?;
    }
    let n: usize = sizes.iter().sum();
    let indices: Vec<usize> = (1..=n).collect();
    let terms: Vec<LinearFactorFraction> = partitionings_of(&indices, sizes)
        .into_iter()
        .map(|part| {
            let numerator = part
                .blocks()
                .iter()
                .zip(polys)
                .fold(ZPolynomial::one(), |acc, (block, p)| acc.mul(&p.rename(|v| block[v - 1])));
            resultant_fraction(part.blocks()).mul_poly(&numerator)
        })
        .collect();
    Ok(LinearFactorFraction::sum(terms.iter()))
}

/// `Σ_{|I|=k} p(z_I) q(z_{Ī}) / R(z_I | z_{Ī})`, reduced.
///
/// `p` must be symmetric in `z_1, …, z_k` and `q` in `z_1, …, z_{n-k}`.
pub fn check_lagrange(k: usize, n: usize, p: &ZPolynomial, q: &ZPolynomial) -> Result<LinearFactorFraction> {
    assert!(0 < k && k < n, "need 0 < k < n");
    flag_sum(&[k, n - k], &[p.clone(), q.clone()])
}

/// The flag-variety analogue of [`check_lagrange`]: one symmetric
/// polynomial per block of `λ`. It vanishes whenever the total degree is
/// below `Σ_{i<j} λ_i λ_j`.
pub fn check_flag_vanishing(lambda: &Partition, polys: &[ZPolynomial]) -> Result<LinearFactorFraction> {
    flag_sum(lambda.parts(), polys)
}

/// `Σ_{i<j} λ_i λ_j`.
pub fn flag_threshold(sizes: &[usize]) -> usize {
    let n: usize = sizes.iter().sum();
    (n * n - sizes.iter().map(|s| s * s).sum::<usize>()) / 2
}

/// A random symmetric polynomial in `z_1, …, z_vars` of degree exactly
/// `degree`, built from products of elementary symmetric polynomials with
/// small non-zero integer coefficients. With no variables only degree 0
/// is attainable and a non-zero constant is returned.
pub fn random_symmetric_poly(vars: usize, degree: u32, rng: &mut ChaCha8Rng) -> ZPolynomial {
    let coeff = |rng: &mut ChaCha8Rng| {
        let c: i64 = rng.gen_range(1..=9);
        rat(if rng.gen_bool(0.5) { c } else { -c })
    };
    if vars == 0 || degree == 0 {
        return ZPolynomial::constant(coeff(rng));
    }
    let e: Vec<ZPolynomial> = (0..=vars)
        .map(|i| elementary_symmetric(i as i64, &(1..=vars).collect::<Vec<_>>()))
        .collect();
    let product_of_degree = |d: u32, rng: &mut ChaCha8Rng| {
        let mut left = d as usize;
        let mut acc = ZPolynomial::one();
        while left > 0 {
            let i = rng.gen_range(1..=left.min(vars));
            acc = acc.mul(&e[i]);
            left -= i;
        }
        acc
    };
    loop {
        let mut p = ZPolynomial::zero();
        for _ in 0..rng.gen_range(1..=3) {
            p = p.add(&product_of_degree(degree, rng).scale(&coeff(rng)));
        }
        for _ in 0..rng.gen_range(0..=2) {
            let d = rng.gen_range(0..degree);
            p = p.add(&product_of_degree(d, rng).scale(&coeff(rng)));
        }
        if p.degree() == Some(degree) {
            return p;
        }
    }
}

/// A random polynomial in `z_1, …, z_vars` with up to `terms` monomials of
/// degree at most `max_degree` and small integer coefficients.
pub fn random_polynomial(vars: usize, max_degree: u32, terms: usize, rng: &mut ChaCha8Rng) -> ZPolynomial {
    let mut p = ZPolynomial::zero();
    for _ in 0..terms {
        let mut exps = vec![0u32; vars];
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..vars)] += 1;
        }
        let c: i64 = rng.gen_range(-9..=9);
        p = p.add(&ZPolynomial::from_terms([(ZMonomial::from_exponents(exps), rat(c))]));
    }
    p
}
