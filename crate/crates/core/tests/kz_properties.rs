mod common;

use confblocks::exact::{rat, ratio};
use confblocks::kz::{casimir_apply, dp_dz, dp_dz_symbolic, remark52_check, solve_kz_exponents, verify_kz, verify_kz_with, CasimirKind};
use confblocks::localization::{build_p, seeded_rng};
use confblocks::operators::apply_e;
use confblocks::{Partition, Rational, Ring, YPolynomial, ZAssignment};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

const KINDS: [CasimirKind; 2] = [CasimirKind::Gl, CasimirKind::Sl];

fn point_set(count: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<ZAssignment> {
    (0..count).map(|_| ZAssignment::random(n, rng)).collect()
}

#[test]
fn exponents_do_not_depend_on_z_or_i() {
    let mut rng = seeded_rng(61);
    for (m, n_per) in [(2, 1), (2, 2), (3, 1), (2, 3)] {
        let n = m * n_per;
        for kind in KINDS {
            for i in 1..=n {
                for _ in 0..2 {
                    let points = point_set((n - 1).max(1), n, &mut rng);
                    let a = solve_kz_exponents(m, n_per, i, &points, kind).unwrap();
                    assert_eq!(a.len(), n - 1);
                    assert!(a.iter().all(|x| *x == kind.expected_exponent(m)), "m={m} N={n_per} i={i} {kind}: {a:?}");
                }
            }
        }
    }
}

#[test]
fn expected_exponents() {
    assert_eq!(CasimirKind::Gl.expected_exponent(2), ratio(-2, 3));
    assert_eq!(CasimirKind::Gl.expected_exponent(3), ratio(-3, 4));
    assert_eq!(CasimirKind::Sl.expected_exponent(2), ratio(-1, 2));
    assert_eq!(CasimirKind::Sl.expected_exponent(3), ratio(-2, 3));
}

#[test]
fn kz_holds_for_rectangles() {
    let mut rng = seeded_rng(62);
    for (m, n_per) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)] {
        for kind in KINDS {
            for z in point_set(3, m * n_per, &mut rng) {
                let v = verify_kz(m, n_per, &z, kind).unwrap();
                assert!(v.verified, "m={m} N={n_per} {kind}: {:?}", v.residual);
            }
        }
    }
}

#[test]
fn kz_rejects_wrong_exponent() {
    let mut rng = seeded_rng(63);
    let z = ZAssignment::random(4, &mut rng);
    let v = verify_kz_with(2, 2, &z, CasimirKind::Gl, &ratio(-1, 2)).unwrap();
    assert!(!v.verified);
    assert!(v.residual.is_some());
}

#[test]
fn symbolic_derivative_agrees() {
    let mut rng = seeded_rng(64);
    for m in 2..=3 {
        for l in common::partitions(m, 4).into_iter().filter(|l| l.size() > 0) {
            let s = build_p(&l);
            let z = ZAssignment::random(l.size(), &mut rng);
            for i in 1..=l.size() {
                let symbolic = dp_dz_symbolic(&s, i).map_coefficients(|f| f.eval_with(|a| z.values()[a - 1].clone()).unwrap());
                assert_eq!(symbolic, dp_dz(&s, i, &z).unwrap(), "{l} i={i}");
            }
        }
    }
}

fn shifted(z: &[Rational], i: usize, h: &Rational) -> ZAssignment {
    let mut v = z.to_vec();
    v[i - 1] = v[i - 1].add_ref(h);
    ZAssignment::new(v).unwrap()
}

fn central_error(l: &Partition, z: &[Rational], i: usize, h: &Rational) -> YPolynomial<Rational> {
    let s = build_p(l);
    let plus = s.evaluate(&shifted(z, i, h)).unwrap();
    let minus = s.evaluate(&shifted(z, i, &h.neg_ref())).unwrap();
    let quotient = plus.sub(&minus).scale(&h.add_ref(h).inverse().unwrap());
    quotient.sub(&dp_dz(&s, i, &ZAssignment::new(z.to_vec()).unwrap()).unwrap())
}

#[test]
fn derivative_matches_finite_differences() {
    let (h, half) = (ratio(1, 1000), ratio(1, 2000));
    let (lo, hi) = (ratio(23, 100), ratio(27, 100));
    for parts in [&[1, 1][..], &[2, 1], &[2, 2], &[1, 1, 1], &[2, 1, 1]] {
        let l = common::part(parts);
        let z: Vec<Rational> = (1..=l.size() as i64).map(|a| rat(a * a + a)).collect();
        for i in 1..=l.size() {
            let e1 = central_error(&l, &z, i, &h);
            let e2 = central_error(&l, &z, i, &half);
            for (mono, c1) in e1.terms() {
                let r = e2.coefficient(mono) / c1.clone();
                assert!(lo <= r && r <= hi, "{l} i={i} {mono}: ratio {r}");
            }
            for (mono, _) in e2.terms() {
                assert!(!e1.coefficient(mono).is_zero(), "{l} i={i} {mono}");
            }
        }
    }
}

#[test]
fn companion_identity() {
    for (m, n_per) in [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2)] {
        remark52_check(m, n_per).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn casimir_commutes_with_gl(seed in any::<u64>(), i in 1usize..=4, j in 1usize..=4, k in 1usize..=3, l in 1usize..=3) {
        prop_assume!(i != j);
        let mut rng = seeded_rng(seed);
        let p = common::random_tensor(4, 3, 5, &mut rng);
        for kind in KINDS {
            prop_assert_eq!(
                casimir_apply(kind, 3, i, j, &apply_e(k, l, &p)),
                apply_e(k, l, &casimir_apply(kind, 3, i, j, &p))
            );
        }
    }

    #[test]
    fn gl_casimir_is_an_involution(seed in any::<u64>(), i in 1usize..=4, j in 1usize..=4) {
        prop_assume!(i != j);
        let mut rng = seeded_rng(seed);
        let p = common::random_tensor(4, 2, 5, &mut rng);
        prop_assert_eq!(casimir_apply(CasimirKind::Gl, 2, i, j, &casimir_apply(CasimirKind::Gl, 2, i, j, &p)), p);
    }
}
