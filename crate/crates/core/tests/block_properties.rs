mod common;

use std::collections::BTreeSet;

use confblocks::blocks::{
    alpha_exponents, build_p_relabeled, build_q, build_qw, cb_dim_sl2, enumerate_sign_words, enumerate_u_families,
    nested_leading_exponents, nested_limit, pascal_table, validate_u_family,
};
use confblocks::exact::rank_over_rationals;
use confblocks::localization::{build_p, seeded_rng};
use confblocks::operators::is_conformal_block;
use confblocks::{Partition, Rational, Ring, YPolynomial, ZAssignment, ZPolynomial};

/// Walks of `n` unit steps from 0 to `a - b` that stay inside `0..=level`.
fn bounded_walks(a: usize, b: usize, level: usize) -> usize {
    let mut counts = vec![0usize; level + 1];
    counts[0] = 1;
    for _ in 0..a + b {
        let mut next = vec![0usize; level + 1];
        for (h, &c) in counts.iter().enumerate() {
            if h > 0 {
                next[h - 1] += c;
            }
            if h < level {
                next[h + 1] += c;
            }
        }
        counts = next;
    }
    counts.get(a - b).copied().unwrap_or(0)
}

fn two_part(max_size: usize, min_level: usize, max_level: usize) -> Vec<(Partition, usize)> {
    common::partitions(2, max_size)
        .into_iter()
        .flat_map(|l| (l.spread().max(min_level)..=max_level).map(move |level| (l.clone(), level)))
        .collect()
}

#[test]
fn dimension_counts_bounded_walks() {
    for (l, level) in two_part(12, 0, 5) {
        assert_eq!(cb_dim_sl2(&l, level).unwrap(), bounded_walks(l.part(1), l.part(2), level), "{l} level {level}");
    }
}

#[test]
fn pascal_rules() {
    for level in 1..=4 {
        let table = pascal_table(level, 12);
        let dim = |a: usize, b: usize| -> usize {
            table
                .get(a + b)
                .and_then(|row| row.iter().find(|(l, _)| l.part(1) == a && l.part(2) == b))
                .map_or(0, |(_, v)| *v)
        };
        for a in 1..=12usize {
            for b in 1..=a.min(12 - a) {
                let expected = match a - b {
                    0 => dim(a, a - 1),
                    d if d == level => dim(a - 1, b),
                    d if d > level => 0,
                    _ => dim(a - 1, b) + dim(a, b - 1),
                };
                assert_eq!(dim(a, b), expected, "({a},{b}) level {level}");
            }
        }
        for a in 0..=level.min(12) {
            assert_eq!(dim(a, 0), 1);
        }
    }
}

#[test]
fn q_functions_are_blocks() {
    let mut rng = seeded_rng(51);
    for m in 2..=3 {
        for l in common::partitions(m, 6) {
            for level in l.spread().max(1)..=3 {
                for _ in 0..3 {
                    let z = ZAssignment::random(l.size(), &mut rng);
                    for u in enumerate_u_families(&l, level).unwrap() {
                        let q = build_q(&u).unwrap().evaluate(&z).unwrap();
                        assert!(is_conformal_block(&q, &l, level, &z).unwrap(), "Q{u} for {l} level {level}");
                    }
                }
            }
        }
    }
}

#[test]
fn sign_words_count_the_dimension() {
    for (l, level) in two_part(8, 1, 4) {
        assert_eq!(
            enumerate_sign_words(&l, level).unwrap().len(),
            cb_dim_sl2(&l, level).unwrap(),
            "{l} level {level}"
        );
    }
}

#[test]
fn sign_word_sums_are_independent() {
    let mut rng = seeded_rng(52);
    for (l, level) in two_part(6, 1, 3) {
        for _ in 0..3 {
            let z = ZAssignment::random(l.size(), &mut rng);
            let polys: Vec<_> = enumerate_sign_words(&l, level)
                .unwrap()
                .iter()
                .map(|w| build_qw(w, &l, level).unwrap().evaluate(&z).unwrap())
                .collect();
            assert_eq!(rank_over_rationals(&polys), cb_dim_sl2(&l, level).unwrap(), "{l} level {level}");
        }
    }
}

/// Every assignment of the points to `level` labelled parts, up to relabelling.
fn brute_force_families(l: &Partition, level: usize) -> usize {
    let n = l.size();
    let mut seen = BTreeSet::new();
    for code in 0..level.pow(n as u32) {
        let mut parts = vec![Vec::new(); level];
        let mut c = code;
        for a in 1..=n {
            parts[c % level].push(a);
            c /= level;
        }
        if validate_u_family(&parts, l, level) {
            parts.sort();
            seen.insert(parts);
        }
    }
    seen.len()
}

#[test]
fn u_family_enumeration_is_complete() {
    for (parts, level) in [(&[3, 2][..], 2), (&[3, 3][..], 2), (&[2, 2][..], 2), (&[2, 1, 1][..], 2), (&[3, 1][..], 3)] {
        let l = common::part(parts);
        assert_eq!(enumerate_u_families(&l, level).unwrap().len(), brute_force_families(&l, level), "{l}");
    }
    assert_eq!(enumerate_u_families(&common::part(&[3, 3]), 2).unwrap().len(), 16);
}

fn pairing_products(n: usize, z: &ZAssignment) -> Vec<YPolynomial<Rational>> {
    // Pair 1 always lies in V, so each unordered {U, V} appears once.
    (0..1usize << (n - 1))
        .map(|mask| {
            let (mut u, mut v) = (Vec::new(), vec![1, 2]);
            for i in 2..=n {
                let side = if mask >> (i - 2) & 1 == 1 { &mut u } else { &mut v };
                side.extend([2 * i - 1, 2 * i]);
            }
            [u, v]
                .iter()
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let k = s.len() / 2;
                    build_p_relabeled(s, &common::part(&[k, k])).unwrap().evaluate(z).unwrap()
                })
                .fold(YPolynomial::one(), |acc, p| acc.mul(&p))
        })
        .collect()
}

#[test]
fn pairing_products_form_a_basis() {
    let mut rng = seeded_rng(53);
    for n in 2..=3 {
        let l = common::part(&[n, n]);
        for _ in 0..3 {
            let z = ZAssignment::random(2 * n, &mut rng);
            let polys = pairing_products(n, &z);
            assert_eq!(polys.len(), 1 << (n - 1));
            for p in &polys {
                assert!(is_conformal_block(p, &l, 2, &z).unwrap());
            }
            assert_eq!(rank_over_rationals(&polys), 1 << (n - 1), "N = {n}");
        }
    }
}

/// Leading behaviour of `num / den` as `z_1 → 0`, then `z_2 → 0`, and so on:
/// the exponent of each `z_k` and the surviving constant.
fn iterated_leading(num: &ZPolynomial, den: &ZPolynomial, n: usize) -> (Vec<i64>, Rational) {
    let (mut num, mut den) = (num.clone(), den.clone());
    let mut exps = Vec::with_capacity(n);
    for k in 1..=n {
        let (n0, nc) = num.coefficients_in(k).into_iter().next().expect("non-zero numerator");
        let (d0, dc) = den.coefficients_in(k).into_iter().next().expect("non-zero denominator");
        exps.push(n0 as i64 - d0 as i64);
        num = nc;
        den = dc;
    }
    let origin = vec![Rational::zero(); n];
    (exps, num.eval(&origin) / den.eval(&origin))
}

/// The nested limit computed one variable at a time, with its exponent vector.
fn iterated_limit(l: &Partition) -> (Vec<u32>, YPolynomial<Rational>) {
    let n = l.size();
    let leading: Vec<_> = build_p(l)
        .to_symbolic()
        .terms()
        .map(|(mono, f)| {
            let (exps, value) = iterated_leading(f.numerator(), &f.denominator_poly(), n);
            (mono.clone(), exps, value)
        })
        .collect();
    let worst = leading.iter().map(|(_, e, _)| e.clone()).min().expect("P is non-zero");
    let alpha = worst.iter().map(|&e| u32::try_from(-e).expect("non-positive exponent")).collect();
    let limit = YPolynomial::from_terms(
        leading
            .into_iter()
            .filter(|(_, e, _)| *e == worst)
            .map(|(mono, _, v)| (mono, v)),
    );
    (alpha, limit)
}

#[test]
fn nested_limits_match_iterated_limits() {
    let mut rng = seeded_rng(54);
    for m in 2..=3 {
        for l in common::partitions(m, 4).into_iter().filter(|l| l.size() > 0) {
            let (alpha, expected) = iterated_limit(&l);
            let claimed = if m == 2 { alpha_exponents(&l).unwrap() } else { nested_leading_exponents(&l, &mut rng).unwrap() };
            assert_eq!(claimed, alpha, "exponents for {l}");
            assert_eq!(nested_limit(&l, &alpha, &mut rng).unwrap(), expected, "limit for {l}");
        }
    }
}
