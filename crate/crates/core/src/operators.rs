//! The `gl_m` operators on `V^{⊗n}` and the membership tests built from
//! them: weight, singular vectors, conformal blocks and the vanishing-order
//! description along `A(z)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{Ring, YMonomial, YPolynomial, YVar};
use crate::localization::{combinations, Partition, ZAssignment};

/// Result of [`weight_of`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weight {
    Pure(Vec<i64>),
    Mixed,
}

/// Applies `Σ_a w(a) · y^{(k)}_a ∂/∂y^{(l)}_a`.
fn apply_weighted<C: Ring>(k: usize, l: usize, p: &YPolynomial<C>, w: impl Fn(usize) -> Result<C>) -> Result<YPolynomial<C>> {
    let mut out = YPolynomial::zero();
    for (m, c) in p.terms() {
        for &(v, e) in m.factors() {
            if v.sup != l {
                continue;
            }
            let lowered = m.with_exponent(v, e - 1);
            let raised = lowered.mul(&YMonomial::var(YVar::new(k, v.sub)));
            let coeff = c.mul_ref(&C::from_int(i64::from(e))).mul_ref(&w(v.sub)?);
            out.add_term(raised, coeff);
        }
    }
    Ok(out)
}

/// `e_{k,l} = Σ_a y^{(k)}_a ∂/∂y^{(l)}_a`.
pub fn apply_e<C: Ring>(k: usize, l: usize, p: &YPolynomial<C>) -> YPolynomial<C> {
    apply_weighted(k, l, p, |_| Ok(C::one())).expect("unweighted application cannot fail")
}

/// `e^z_{k,l} = Σ_a z_a y^{(k)}_a ∂/∂y^{(l)}_a`.
pub fn apply_ez<C: Ring>(k: usize, l: usize, p: &YPolynomial<C>, z: &ZAssignment<C>) -> Result<YPolynomial<C>> {
    apply_weighted(k, l, p, |a| z.get(a).cloned())
}

/// `(e^z_{k,l})^power p`, stopping early once the result is zero.
pub fn apply_ez_power<C: Ring>(
    k: usize,
    l: usize,
    power: usize,
    p: &YPolynomial<C>,
    z: &ZAssignment<C>,
) -> Result<YPolynomial<C>> {
    let mut acc = p.clone();
    for _ in 0..power {
        if acc.is_zero() {
            break;
        }
        acc = apply_ez(k, l, &acc, z)?;
    }
    Ok(acc)
}

/// The common superscript-degree profile of all monomials.
pub fn weight_of<C: Ring>(p: &YPolynomial<C>, m: usize) -> Result<Weight> {
    let mut monomials = p.monomials();
    let first = monomials.next().ok_or(Error::ZeroPolynomial)?;
    if first.max_sup() > m {
        return Ok(Weight::Mixed);
    }
    let w = first.weight(m);
    for mono in monomials {
        if mono.max_sup() > m || mono.weight(m) != w {
            return Ok(Weight::Mixed);
        }
    }
    Ok(Weight::Pure(w))
}

fn lambda_weight(lambda: &Partition) -> Vec<i64> {
    lambda.parts().iter().map(|&x| x as i64).collect()
}

/// Outcome of a conformal-block membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub singular: bool,
    pub weight: Weight,
    pub cb_member: bool,
    /// Name of the first operator that fails to annihilate, if any.
    pub failing_operator: Option<String>,
}

fn require_tensor<C: Ring>(p: &YPolynomial<C>, n: usize) -> Result<()> {
    if !p.is_tensor_element(n) {
        return Err(Error::NotTensorElement(format!(
            "expected degree one in each of the subscripts 1..={n}"
        )));
    }
    Ok(())
}

/// First raising operator `e_{i,j}` (`i < j`) not annihilating `p`, or a
/// weight mismatch.
fn singular_failure<C: Ring>(p: &YPolynomial<C>, lambda: &Partition) -> Result<(Weight, Option<String>)> {
    let m = lambda.len();
    let weight = if p.is_zero() {
        Weight::Pure(lambda_weight(lambda))
    } else {
        weight_of(p, m)?
    };
    if weight != Weight::Pure(lambda_weight(lambda)) {
        return Ok((weight, Some("weight".into())));
    }
    for i in 1..=m {
        for j in i + 1..=m {
            if !apply_e(i, j, p).is_zero() {
                return Ok((weight, Some(format!("e[{i},{j}]"))));
            }
        }
    }
    Ok((weight, None))
}

/// `p` has weight `λ` and is killed by every `e_{i,j}` with `i < j`.
///
/// The zero polynomial is singular of every weight.
pub fn is_singular<C: Ring>(p: &YPolynomial<C>, lambda: &Partition) -> Result<bool> {
    require_tensor(p, lambda.size())?;
    Ok(singular_failure(p, lambda)?.1.is_none())
}

/// Full membership report for `CB^level_z(λ)`.
pub fn conformal_block_membership<C: Ring>(
    p: &YPolynomial<C>,
    lambda: &Partition,
    level: usize,
    z: &ZAssignment<C>,
) -> Result<Membership> {
    let d = lambda.spread();
    if level < d {
        return Err(Error::LevelTooLow { level, spread: d });
    }
    require_tensor(p, lambda.size())?;
    let (weight, failing) = singular_failure(p, lambda)?;
    let singular = failing.is_none();
    let mut failing_operator = failing;
    if singular {
        let m = lambda.len();
        let power = level - d + 1;
        if !apply_ez_power(1, m, power, p, z)?.is_zero() {
            failing_operator = Some(format!("(e^z[1,{m}])^{power}"));
        }
    }
    Ok(Membership {
        singular,
        weight,
        cb_member: failing_operator.is_none(),
        failing_operator,
    })
}

/// `p ∈ CB^level_z(λ)`: singular, and `(e^z_{1,m})^{level - d(λ) + 1} p = 0`.
pub fn is_conformal_block<C: Ring>(
    p: &YPolynomial<C>,
    lambda: &Partition,
    level: usize,
    z: &ZAssignment<C>,
) -> Result<bool> {
    Ok(conformal_block_membership(p, lambda, level, z)?.cb_member)
}

/// Substitutes `y^{(m)}_a ← z_a y^{(1)}_a`.
pub fn restrict_to_a<C: Ring>(p: &YPolynomial<C>, m: usize, z: &ZAssignment<C>) -> Result<YPolynomial<C>> {
    let mut out = YPolynomial::zero();
    for (mono, c) in p.terms() {
        let mut coeff = c.clone();
        let mut factors = Vec::with_capacity(mono.factors().len());
        for &(v, e) in mono.factors() {
            if v.sup == m && m != 1 {
                coeff = coeff.mul_ref(&z.get(v.sub)?.pow(e));
                factors.push((YVar::new(1, v.sub), e));
            } else {
                factors.push((v, e));
            }
        }
        out.add_term(YMonomial::from_factors(factors), coeff);
    }
    Ok(out)
}

/// `Π_{b ∈ B} y^{(1)}_b ∂/∂y^{(m)}_b`.
fn apply_lowering_set<C: Ring>(p: &YPolynomial<C>, m: usize, set: &[usize]) -> YPolynomial<C> {
    set.iter().fold(p.clone(), |acc, &b| {
        let mut out = YPolynomial::zero();
        for (mono, c) in acc.terms() {
            let v = YVar::new(m, b);
            let e = mono.exponent(v);
            if e == 0 {
                continue;
            }
            let raised = mono.with_exponent(v, e - 1).mul(&YMonomial::var(YVar::new(1, b)));
            out.add_term(raised, c.mul_ref(&C::from_int(i64::from(e))));
        }
        out
    })
}

/// Checks `p` is killed by every `e_{i,j}` (`i ≠ j`) and has weight
/// `(N, …, N)`.
pub fn check_sl_invariant<C: Ring>(p: &YPolynomial<C>, n_per_part: usize, m: usize) -> Result<()> {
    if !p.is_zero() {
        match weight_of(p, m)? {
            Weight::Pure(w) if w.iter().all(|&x| x == n_per_part as i64) => {}
            w => return Err(Error::NotInvariant(format!("weight {w:?}"))),
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            if i != j && !apply_e(i, j, p).is_zero() {
                return Err(Error::NotInvariant(format!("e[{i},{j}] does not annihilate")));
            }
        }
    }
    Ok(())
}

/// For an `SL_m`-invariant `p` of weight `(N, …, N)`: every
/// `(Π_{b ∈ B} y^{(1)}_b ∂/∂y^{(m)}_b p)|_{A(z)}` with `|B| ≤ N - level - 1`
/// vanishes.
pub fn vanishing_order_check<C: Ring>(
    p: &YPolynomial<C>,
    n_per_part: usize,
    m: usize,
    level: usize,
    z: &ZAssignment<C>,
) -> Result<bool> {
    check_sl_invariant(p, n_per_part, m)?;
    if level >= n_per_part {
        return Ok(true);
    }
    let n = n_per_part * m;
    let indices: Vec<usize> = (1..=n).collect();
    for k in 0..n_per_part - level {
        let subsets = combinations(&indices, k);
        let failed = subsets
            .par_iter()
            .map(|b| restrict_to_a(&apply_lowering_set(p, m, b), m, z).map(|r| !r.is_zero()))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .any(|f| f);
        if failed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every `(Π_{b ∈ B} y^{(1)}_b ∂/∂y^{(m)}_b p)|_{A(z)}` with
/// `|B| ≤ N - level - 1`, in order of `|B|` then `B`. Linear in `p`, so
/// stacking the images over a spanning set describes the whole condition.
pub fn vanishing_order_images<C: Ring>(
    p: &YPolynomial<C>,
    n_per_part: usize,
    m: usize,
    level: usize,
    z: &ZAssignment<C>,
) -> Result<Vec<YPolynomial<C>>> {
    let n = n_per_part * m;
    let indices: Vec<usize> = (1..=n).collect();
    let sets: Vec<Vec<usize>> = (0..n_per_part.saturating_sub(level))
        .flat_map(|k| combinations(&indices, k))
        .collect();
    sets.par_iter()
        .map(|b| restrict_to_a(&apply_lowering_set(p, m, b), m, z))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_y_polynomial, Rational};
    use crate::localization::build_p;

    type P = YPolynomial<Rational>;

    fn y(s: &str) -> P {
        parse_y_polynomial(s).unwrap()
    }

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn p_at(parts: &[usize], z: &[i64]) -> P {
        build_p(&part(parts)).evaluate(&ZAssignment::from_ints(z).unwrap()).unwrap()
    }

    #[test]
    fn e_examples() {
        assert_eq!(apply_e(1, 2, &y("y[2,1]")), y("y[1,1]"));
        assert!(apply_e(1, 2, &p_at(&[2, 1], &[1, 2, 3])).is_zero());
        assert_eq!(
            apply_e(2, 1, &y("y[1,1] * y[1,2]")),
            y("y[2,1] * y[1,2] + y[1,1] * y[2,2]")
        );
    }

    #[test]
    fn ez_examples() {
        let z = ZAssignment::from_ints(&[5]).unwrap();
        assert_eq!(apply_ez(1, 2, &y("y[2,1]"), &z).unwrap(), y("5 * y[1,1]"));
        let z4 = ZAssignment::from_ints(&[1, 2, 3, 4]).unwrap();
        let p = p_at(&[2, 2], &[1, 2, 3, 4]);
        assert!(!apply_ez(1, 2, &p, &z4).unwrap().is_zero());
        assert!(apply_ez_power(1, 2, 2, &p, &z4).unwrap().is_zero());
        let z3 = ZAssignment::from_ints(&[1, 2, 3]).unwrap();
        assert!(apply_ez(1, 2, &p_at(&[2, 1], &[1, 2, 3]), &z3).unwrap().is_zero());
        assert_eq!(apply_ez(1, 2, &y("y[2,2]"), &z), Err(Error::MissingZ(2)));
    }

    #[test]
    fn weights() {
        assert_eq!(weight_of(&y("y[1,1] * y[2,2]"), 2).unwrap(), Weight::Pure(vec![1, 1]));
        assert_eq!(weight_of(&p_at(&[2, 1], &[4, 5, 9]), 2).unwrap(), Weight::Pure(vec![2, 1]));
        assert_eq!(weight_of(&y("y[1,1] + y[2,1]"), 2).unwrap(), Weight::Mixed);
        assert_eq!(weight_of(&P::zero(), 2), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn singular_examples() {
        let l = part(&[1, 1]);
        assert!(is_singular(&p_at(&[2, 2], &[1, 2, 3, 4]), &part(&[2, 2])).unwrap());
        assert!(!is_singular(&y("y[1,1] * y[2,2]"), &l).unwrap());
        assert!(is_singular(&y("y[1,1] * y[2,2] - y[2,1] * y[1,2]"), &l).unwrap());
        assert!(matches!(
            is_singular(&y("y[1,1] * y[1,1]"), &l),
            Err(Error::NotTensorElement(_))
        ));
    }

    #[test]
    fn conformal_block_examples() {
        let z6 = ZAssignment::from_ints(&[1, 2, 3, 4, 5, 6]).unwrap();
        assert!(is_conformal_block(&p_at(&[3, 3], &[1, 2, 3, 4, 5, 6]), &part(&[3, 3]), 1, &z6).unwrap());
        let z3 = ZAssignment::from_ints(&[1, 2, 3]).unwrap();
        assert!(is_conformal_block(&p_at(&[2, 1], &[1, 2, 3]), &part(&[2, 1]), 1, &z3).unwrap());
        assert_eq!(
            is_conformal_block(&p_at(&[3, 1], &[1, 2, 3, 4]), &part(&[3, 1]), 1, &z6),
            Err(Error::LevelTooLow { level: 1, spread: 2 })
        );
        // A singular vector that is not a level-1 block.
        let q = y("y[1,1] * y[2,2] - y[2,1] * y[1,2]")
            .mul(&y("y[1,3] * y[2,4] - y[2,3] * y[1,4]"));
        let z4 = ZAssignment::from_ints(&[1, 2, 3, 4]).unwrap();
        let report = conformal_block_membership(&q, &part(&[2, 2]), 1, &z4).unwrap();
        assert!(report.singular && !report.cb_member);
        assert_eq!(report.failing_operator.as_deref(), Some("(e^z[1,2])^2"));
        assert!(is_conformal_block(&q, &part(&[2, 2]), 2, &z4).unwrap());
    }

    #[test]
    fn restriction() {
        let z = ZAssignment::from_ints(&[3]).unwrap();
        assert_eq!(restrict_to_a(&y("y[2,1]"), 2, &z).unwrap(), y("3 * y[1,1]"));
        let z2 = ZAssignment::from_ints(&[0, 1]).unwrap();
        // (z_1 - z_2) y[1,1] y[1,2]: the rows are proportional only up to z.
        assert_eq!(restrict_to_a(&p_at(&[1, 1], &[0, 1]), 2, &z2).unwrap(), y("-1 * y[1,1] * y[1,2]"));
        assert_eq!(restrict_to_a(&P::one(), 2, &z).unwrap(), P::one());
    }

    #[test]
    fn vanishing_examples() {
        let z4 = ZAssignment::from_ints(&[1, 2, 3, 4]).unwrap();
        let p22 = p_at(&[2, 2], &[1, 2, 3, 4]);
        assert!(vanishing_order_check(&p22, 2, 2, 1, &z4).unwrap());
        assert!(!vanishing_order_check(&p22, 2, 2, 0, &z4).unwrap());
        let z6 = ZAssignment::from_ints(&[1, 2, 3, 4, 5, 6]).unwrap();
        assert!(vanishing_order_check(&p_at(&[3, 3], &[1, 2, 3, 4, 5, 6]), 3, 2, 1, &z6).unwrap());
        assert!(matches!(
            vanishing_order_check(&y("y[1,1] * y[2,2]"), 1, 2, 1, &z4),
            Err(Error::NotInvariant(_))
        ));
    }
}
