mod common;

use confblocks::localization::{
    build_p, build_p_concise, check_flag_vanishing, check_lagrange, divided_difference, flag_threshold,
    random_polynomial, random_symmetric_poly, seeded_rng,
};
use confblocks::{Partition, Ring, ZAssignment, ZPolynomial};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn small_partitions() -> Vec<Partition> {
    (2..=5).flat_map(|m| common::partitions(m, 5)).collect()
}

#[test]
fn concise_form_agrees_at_random_points() {
    let mut rng = seeded_rng(31);
    for l in small_partitions() {
        let concise = build_p_concise(&l);
        let sum = build_p(&l);
        for _ in 0..5 {
            let z = ZAssignment::random(l.size(), &mut rng);
            let c = concise.map_coefficients(|f| f.eval_with(|a| z.values()[a - 1].clone()).expect("distinct z"));
            assert_eq!(c, sum.evaluate(&z).unwrap(), "λ = {l}");
        }
    }
}

#[test]
fn p_is_a_tensor_element() {
    let mut rng = seeded_rng(32);
    for m in 2..=4 {
        for l in common::partitions(m, 6) {
            let z = ZAssignment::random(l.size(), &mut rng);
            assert!(build_p(&l).evaluate(&z).unwrap().is_tensor_element(l.size()), "λ = {l}");
        }
    }
}

fn lagrange_case(rng: &mut ChaCha8Rng, at_bound: bool) -> (usize, usize, ZPolynomial, ZPolynomial) {
    let n = rng.gen_range(2..=6);
    let k = rng.gen_range(1..n);
    let bound = (k * (n - k)) as u32;
    let total = if at_bound { bound } else { rng.gen_range(0..bound) };
    let dp = rng.gen_range(0..=total);
    (k, n, random_symmetric_poly(k, dp, rng), random_symmetric_poly(n - k, total - dp, rng))
}

#[test]
fn lagrange_below_bound_vanishes() {
    let mut rng = seeded_rng(33);
    for _ in 0..100 {
        let (k, n, p, q) = lagrange_case(&mut rng, false);
        assert!(check_lagrange(k, n, &p, &q).unwrap().is_zero(), "k={k} n={n} p={p} q={q}");
    }
}

#[test]
fn lagrange_at_bound_is_generically_non_zero() {
    let mut rng = seeded_rng(34);
    let non_zero = (0..100)
        .filter(|_| {
            let (k, n, p, q) = lagrange_case(&mut rng, true);
            !check_lagrange(k, n, &p, &q).unwrap().is_zero()
        })
        .count();
    assert!(non_zero >= 95, "only {non_zero} of 100 are non-zero");
}

fn flag_polys(l: &Partition, degree: usize, rng: &mut ChaCha8Rng) -> Vec<ZPolynomial> {
    let blocks: Vec<usize> = (0..l.len()).filter(|&j| l.part(j + 1) > 0).collect();
    let mut degrees = vec![0u32; l.len()];
    for _ in 0..degree {
        degrees[blocks[rng.gen_range(0..blocks.len())]] += 1;
    }
    l.parts()
        .iter()
        .zip(degrees)
        .map(|(&k, d)| random_symmetric_poly(k, d, rng))
        .collect()
}

#[test]
fn flag_threshold_is_sharp() {
    let mut rng = seeded_rng(35);
    for l in small_partitions().into_iter().filter(|l| flag_threshold(l.parts()) > 0) {
        let t = flag_threshold(l.parts());
        for _ in 0..2 {
            let polys = flag_polys(&l, t - 1, &mut rng);
            assert!(check_flag_vanishing(&l, &polys).unwrap().is_zero(), "λ = {l} below threshold");
        }
        let survives = (0..5).any(|_| !check_flag_vanishing(&l, &flag_polys(&l, t, &mut rng)).unwrap().is_zero());
        assert!(survives, "λ = {l} vanishes at the threshold {t} every time");
    }
}

#[test]
fn grassmannian_threshold() {
    for n in 2..=7 {
        for k in 1..n {
            assert_eq!(flag_threshold(&[k, n - k]), k * (n - k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn coxeter_relations(seed in any::<u64>(), i in 1usize..=3) {
        let mut rng = seeded_rng(seed);
        let p = random_polynomial(5, 5, 4, &mut rng);
        let d = divided_difference;
        prop_assert!(d(i, &d(i, &p)).is_zero());
        prop_assert_eq!(d(i, &d(i + 1, &d(i, &p))), d(i + 1, &d(i, &d(i + 1, &p))));
        for j in i + 2..=4 {
            prop_assert_eq!(d(i, &d(j, &p)), d(j, &d(i, &p)));
        }
    }

    #[test]
    fn divided_difference_leibniz(seed in any::<u64>(), i in 1usize..=4) {
        let mut rng = seeded_rng(seed);
        let f = random_polynomial(5, 3, 3, &mut rng);
        let g = random_polynomial(5, 3, 3, &mut rng);
        let d = divided_difference;
        let lhs = d(i, &f.mul(&g));
        let rhs = d(i, &f).mul(&g).add(&f.swap(i, i + 1).mul(&d(i, &g)));
        prop_assert_eq!(lhs, rhs);
    }
}
