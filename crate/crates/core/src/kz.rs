//! The level-one KZ equations for `P_z(N, …, N)`: exact `z`-derivatives,
//! Casimir actions, recovery of the exponents `a_{i,j}`, and a companion
//! rational-function identity.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{ratio, solve, LinearFactorFraction, Rational, Ring, YMonomial, YPolynomial, ZPolynomial};
use crate::localization::{build_p, resultant_fraction, LocalizationSum, Partition, ZAssignment};

/// Which Casimir operator enters the connection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirKind {
    /// `Ω^{(i,j)}` swaps every `y^{(k)}_i ↔ y^{(k)}_j`.
    Gl,
    /// The `gl` swap minus `1/m` times the identity.
    Sl,
}

impl CasimirKind {
    /// The constant `a_{i,j}` expected for `P_z(N, …, N)` with `m` parts.
    pub fn expected_exponent(self, m: usize) -> Rational {
        let m = m as i64;
        match self {
            CasimirKind::Gl => ratio(-m, m + 1),
            CasimirKind::Sl => ratio(-(m - 1), m),
        }
    }
}

impl FromStr for CasimirKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(CasimirKind::Gl),
            "sl" => Ok(CasimirKind::Sl),
            other => Err(Error::Parse(format!("unknown Casimir kind '{other}'"))),
        }
    }
}

impl fmt::Display for CasimirKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CasimirKind::Gl => "gl",
            CasimirKind::Sl => "sl",
        })
    }
}

/// `∂/∂z_i` of every coefficient, evaluated at `z`.
///
/// For `c = N / Π (z_p - z_q)^e` this is
/// `N'/D - c · Σ e · (∂(z_p - z_q)/∂z_i) / (z_p - z_q)`.
pub fn dp_dz(s: &LocalizationSum, i: usize, z: &ZAssignment) -> Result<YPolynomial<Rational>> {
    let zero_den = |a, b| Error::ZeroDenominator { a, b };
    let mut out = YPolynomial::zero();
    for term in s.terms() {
        let c = &term.coefficient;
        let mut den = Rational::one();
        let mut log_sum = Rational::zero();
        for ((p, q), e) in c.denominator() {
            let f = z.get(p)?.sub_ref(z.get(q)?);
            let f_inv = f.inverse().ok_or_else(|| zero_den(p, q))?;
            den = den.mul_ref(&Ring::pow(&f, e));
            let slope = if p == i {
                1
            } else if q == i {
                -1
            } else {
                0
            };
            if slope != 0 {
                log_sum = log_sum.add_ref(&f_inv.mul_ref(&Rational::from_int(slope * i64::from(e))));
            }
        }
        let den_inv = den.inverse().expect("non-zero factors");
        let num = c.numerator().eval_with(|a| z.at(a));
        let dnum = c.numerator().derivative(i).eval_with(|a| z.at(a));
        let value = dnum.mul_ref(&den_inv).sub_ref(&num.mul_ref(&den_inv).mul_ref(&log_sum));
        out.add_term(term.monomial(), value);
    }
    Ok(out)
}

/// `∂/∂z_i` of the sum as a symbolic polynomial.
pub fn dp_dz_symbolic(s: &LocalizationSum, i: usize) -> YPolynomial<LinearFactorFraction> {
    s.to_symbolic().map_coefficients(|c| c.derivative(i))
}

/// `Ω^{(i,j)} p` for polynomials in `y^{(1)}, …, y^{(m)}`.
pub fn casimir_apply<C: Ring>(kind: CasimirKind, m: usize, i: usize, j: usize, p: &YPolynomial<C>) -> YPolynomial<C> {
    assert_ne!(i, j, "Casimir acts on two distinct factors");
    let swapped = p.swap_subscripts(i, j);
    match kind {
        CasimirKind::Gl => swapped,
        CasimirKind::Sl => swapped.sub(&p.scale(&C::from_rational(&ratio(1, m as i64)))),
    }
}

fn rectangular(m: usize, n_per: usize) -> Result<Partition> {
    if m < 2 || n_per == 0 {
        return Err(Error::InvalidPartition(format!("need m ≥ 2 and N ≥ 1, got m={m}, N={n_per}")));
    }
    Partition::new(vec![n_per; m])
}

/// `∂P/∂z_i - 1/(m+1) Σ_{j≠i} Ω^{(i,j)} P / (z_i - z_j)` at `z`, together
/// with `P` itself.
pub fn kz_lhs(
    m: usize,
    n_per: usize,
    i: usize,
    z: &ZAssignment,
    kind: CasimirKind,
) -> Result<(YPolynomial<Rational>, YPolynomial<Rational>)> {
    let lambda = rectangular(m, n_per)?;
    let s = build_p(&lambda);
    let p = s.evaluate(z)?;
    let mut lhs = dp_dz(&s, i, z)?;
    let scale = ratio(1, m as i64 + 1);
    for j in (1..=lambda.size()).filter(|&j| j != i) {
        let d = z.get(i)?.sub_ref(z.get(j)?);
        let inv = d.inverse().ok_or(Error::ZeroDenominator { a: i.min(j), b: i.max(j) })?;
        lhs = lhs.sub(&casimir_apply(kind, m, i, j, &p).scale(&inv.mul_ref(&scale)));
    }
    Ok((lhs, p))
}

/// Finds constants `a_{i,j}` (`j ≠ i`, in increasing `j`) with
/// `LHS = P · Σ_j a_{i,j} / (z_i - z_j)` simultaneously at every point.
///
/// One point pins down the constants only when `|λ| = 2`; in general
/// `|λ| - 1` generic points are needed.
pub fn solve_kz_exponents(
    m: usize,
    n_per: usize,
    i: usize,
    points: &[ZAssignment],
    kind: CasimirKind,
) -> Result<Vec<Rational>> {
    let n = m * n_per;
    if i == 0 || i > n {
        return Err(Error::MissingZ(i));
    }
    let others: Vec<usize> = (1..=n).filter(|&j| j != i).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for z in points {
        let (lhs, p) = kz_lhs(m, n_per, i, z, kind)?;
        let inv: Vec<Rational> = others
            .iter()
            .map(|&j| z.get(i)?.sub_ref(z.get(j)?).inverse().ok_or(Error::ZeroDenominator { a: i.min(j), b: i.max(j) }))
            .collect::<Result<_>>()?;
        let mut monos: Vec<&YMonomial> = p.monomials().chain(lhs.monomials()).collect();
        monos.sort();
        monos.dedup();
        for mono in monos {
            let pc = p.coefficient(mono);
            rows.push(inv.iter().map(|x| x.mul_ref(&pc)).collect());
            rhs.push(lhs.coefficient(mono));
        }
    }
    solve(&rows, &rhs)
}

/// Result of checking the KZ equations at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct KzVerification {
    pub verified: bool,
    /// First `i` whose equation fails, with `LHS - RHS`.
    pub residual: Option<(usize, YPolynomial<Rational>)>,
}

/// Checks every equation `i = 1..=mN` at `z` with `a_{i,j} = a` for all `j`.
pub fn verify_kz_with(m: usize, n_per: usize, z: &ZAssignment, kind: CasimirKind, a: &Rational) -> Result<KzVerification> {
    let n = m * n_per;
    let residuals: Vec<(usize, YPolynomial<Rational>)> = (1..=n)
        .into_par_iter()
        .map(|i| {
            let (lhs, p) = kz_lhs(m, n_per, i, z, kind)?;
            let mut sum = Rational::zero();
            for j in (1..=n).filter(|&j| j != i) {
                let d = z.get(i)?.sub_ref(z.get(j)?);
                sum = sum.add_ref(&a.mul_ref(&d.inverse().expect("distinct z checked in kz_lhs")));
            }
            Ok((i, lhs.sub(&p.scale(&sum))))
        })
        .collect::<Result<_>>()?;
    let residual = residuals.into_iter().find(|(_, r)| !r.is_zero());
    Ok(KzVerification {
        verified: residual.is_none(),
        residual,
    })
}

/// [`verify_kz_with`] at the constant expected for `kind`.
pub fn verify_kz(m: usize, n_per: usize, z: &ZAssignment, kind: CasimirKind) -> Result<KzVerification> {
    verify_kz_with(m, n_per, z, kind, &kind.expected_exponent(m))
}

/// `∂_{1,j} f = (f - f|_{z_1 ↔ z_j}) / (z_1 - z_j)`.
fn transposition_difference(f: &LinearFactorFraction, j: usize) -> LinearFactorFraction {
    f.sub_ref(&f.swap(1, j)).div_linear(1, j)
}

/// Both sides of
/// `R · Σ_{j=N+1}^{mN} ∂_{1,j}(1/R) = (1-m) Σ_{j=2}^{N} 1/(z_1-z_j) + 2 Σ_{j=N+1}^{mN} 1/(z_1-z_j)`,
/// with `R` the resultant of the standard blocks of `(N, …, N)`.
pub fn remark52_sides(m: usize, n_per: usize) -> Result<(LinearFactorFraction, LinearFactorFraction)> {
    let lambda = rectangular(m, n_per)?;
    let blocks = lambda.standard_blocks();
    let inv_r = resultant_fraction(&blocks);
    let mut r = ZPolynomial::one();
    for (k, bk) in blocks.iter().enumerate() {
        for bl in &blocks[k + 1..] {
            for &a in bk {
                for &b in bl {
                    r = r.mul_linear(a, b);
                }
            }
        }
    }
    let n = lambda.size();
    let diffs: Vec<LinearFactorFraction> = (n_per + 1..=n).map(|j| transposition_difference(&inv_r, j)).collect();
    let lhs = LinearFactorFraction::sum(diffs.iter()).mul_poly(&r);
    let mut rhs_terms = Vec::new();
    for j in 2..=n_per {
        rhs_terms.push(LinearFactorFraction::inv_linear(1, j).mul_ref(&LinearFactorFraction::from_int(1 - m as i64)));
    }
    for j in n_per + 1..=n {
        rhs_terms.push(LinearFactorFraction::inv_linear(1, j).mul_ref(&LinearFactorFraction::from_int(2)));
    }
    Ok((lhs, LinearFactorFraction::sum(rhs_terms.iter())))
}

/// Verifies the identity of [`remark52_sides`]; `Mismatch` carries both
/// reduced sides.
pub fn remark52_check(m: usize, n_per: usize) -> Result<()> {
    let (lhs, rhs) = remark52_sides(m, n_per)?;
    if lhs.sub_ref(&rhs).is_zero() {
        Ok(())
    } else {
        Err(Error::Mismatch {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_y_polynomial;
    use crate::localization::seeded_rng;

    #[test]
    fn derivative_of_p11() {
        let s = build_p(&Partition::new(vec![1, 1]).unwrap());
        let z = ZAssignment::from_ints(&[0, 1]).unwrap();
        // P = (y11 y22 - y12 y21)/(z1 - z2), so dP/dz1 = -(y11 y22 - y12 y21)/(z1 - z2)^2
        let expected = parse_y_polynomial("-1 * y[1,1] * y[2,2] + y[1,2] * y[2,1]").unwrap();
        assert_eq!(dp_dz(&s, 1, &z).unwrap(), expected);
        let flat = build_p(&Partition::new(vec![2]).unwrap());
        assert!(dp_dz(&flat, 1, &z).unwrap().is_zero());
    }

    #[test]
    fn casimir_examples() {
        let p = parse_y_polynomial("y[1,1] * y[2,2]").unwrap();
        let swapped = casimir_apply(CasimirKind::Gl, 2, 1, 2, &p);
        assert_eq!(swapped, parse_y_polynomial("y[1,2] * y[2,1]").unwrap());
        assert_eq!(casimir_apply(CasimirKind::Gl, 2, 1, 2, &swapped), p);
        let sl = casimir_apply(CasimirKind::Sl, 2, 1, 2, &p);
        assert_eq!(sl, swapped.sub(&p.scale(&ratio(1, 2))));
    }

    #[test]
    fn exponents_for_small_cases() {
        let z = ZAssignment::from_ints(&[3, -4]).unwrap();
        assert_eq!(solve_kz_exponents(2, 1, 1, std::slice::from_ref(&z), CasimirKind::Gl).unwrap(), vec![ratio(-2, 3)]);
        assert_eq!(solve_kz_exponents(2, 1, 2, std::slice::from_ref(&z), CasimirKind::Sl).unwrap(), vec![ratio(-1, 2)]);
        let mut rng = seeded_rng(2);
        let points: Vec<ZAssignment> = (0..2).map(|_| ZAssignment::random(3, &mut rng)).collect();
        assert_eq!(
            solve_kz_exponents(3, 1, 1, &points, CasimirKind::Gl).unwrap(),
            vec![ratio(-3, 4); 2]
        );
        assert!(matches!(
            solve_kz_exponents(3, 1, 1, &points[..1], CasimirKind::Gl),
            Err(Error::Underdetermined { .. })
        ));
    }

    #[test]
    fn verification_examples() {
        let z = ZAssignment::from_ints(&[1, 2, 3, 4]).unwrap();
        assert!(verify_kz(2, 2, &z, CasimirKind::Gl).unwrap().verified);
        let z3 = ZAssignment::from_ints(&[1, 2, 5]).unwrap();
        assert!(verify_kz(3, 1, &z3, CasimirKind::Gl).unwrap().verified);
        assert!(verify_kz(3, 1, &z3, CasimirKind::Sl).unwrap().verified);
        let wrong = verify_kz_with(2, 2, &z, CasimirKind::Gl, &ratio(-1, 2)).unwrap();
        assert!(!wrong.verified);
        assert!(!wrong.residual.unwrap().1.is_zero());
        assert_eq!(CasimirKind::Gl.expected_exponent(2), ratio(-2, 3));
        assert_eq!(CasimirKind::Sl.expected_exponent(3), ratio(-2, 3));
        assert_eq!("sl".parse::<CasimirKind>().unwrap(), CasimirKind::Sl);
    }

    #[test]
    fn remark52_cases() {
        for (m, n) in [(2, 1), (2, 2), (3, 1)] {
            remark52_check(m, n).unwrap();
        }
    }
}
