use std::collections::BTreeMap;
use std::fmt;

use super::ring::{is_negative, rat, Rational, Ring};
use crate::error::{Error, Result};

/// Sparse univariate polynomial in the limit parameter `ε`.
///
/// Path substitutions put `ε` to very large, widely spaced powers, so the
/// representation stores only the non-zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EpsPolynomial {
    terms: BTreeMap<u64, Rational>,
}

impl EpsPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c * ε^e`.
    pub fn monomial(e: u64, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: u64, c: Rational) {
        if Ring::is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(|| rat(0));
        *entry += c;
        if Ring::is_zero(entry) {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent with a non-zero coefficient.
    pub fn valuation(&self) -> Option<u64> {
        self.terms.keys().next().copied()
    }

    pub fn lowest_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        EpsPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c * s)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Divides by `ε^k`; every exponent must be at least `k`.
    fn shift_down(&self, k: u64) -> Self {
        EpsPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e - k, c.clone())).collect(),
        }
    }
}

impl fmt::Display for EpsPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match e {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{abs} * eps")?,
                _ => write!(f, "{abs} * eps^{e}")?,
            }
        }
        Ok(())
    }
}

/// Rational function in `ε` with rational coefficients.
///
/// Common powers of `ε` are cancelled and the lowest denominator
/// coefficient is kept positive. Equality is equality of rational
/// functions (cross-multiplied), not of representations.
#[derive(Debug, Clone)]
pub struct UnivariateRationalFunction {
    numerator: EpsPolynomial,
    denominator: EpsPolynomial,
}

impl UnivariateRationalFunction {
    pub fn new(numerator: EpsPolynomial, denominator: EpsPolynomial) -> Option<Self> {
        if denominator.is_zero() {
            return None;
        }
        Some(Self::normalized(numerator, denominator))
    }

    pub fn from_poly(p: EpsPolynomial) -> Self {
        Self::normalized(p, EpsPolynomial::constant(rat(1)))
    }

    /// `c * ε^e`.
    pub fn monomial(e: u64, c: Rational) -> Self {
        Self::from_poly(EpsPolynomial::monomial(e, c))
    }

    pub fn numerator(&self) -> &EpsPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &EpsPolynomial {
        &self.denominator
    }

    fn normalized(numerator: EpsPolynomial, denominator: EpsPolynomial) -> Self {
        if numerator.is_zero() {
            return UnivariateRationalFunction {
                numerator,
                denominator: EpsPolynomial::constant(rat(1)),
            };
        }
        let shift = numerator
            .valuation()
            .unwrap_or(0)
            .min(denominator.valuation().unwrap_or(0));
        let (mut n, mut d) = (numerator.shift_down(shift), denominator.shift_down(shift));
        let lead = d.lowest_coefficient().cloned().unwrap_or_else(|| rat(1));
        if !lead.is_one() {
            let s = lead.recip();
            n = n.scale(&s);
            d = d.scale(&s);
        }
        UnivariateRationalFunction {
            numerator: n,
            denominator: d,
        }
    }

    /// Value at `ε = 0`.
    pub fn limit_at_zero(&self) -> Result<Rational> {
        let Some(vn) = self.numerator.valuation() else {
            return Ok(rat(0));
        };
        let vd = self.denominator.valuation().unwrap_or(0);
        match vn.cmp(&vd) {
            std::cmp::Ordering::Less => Err(Error::PoleAtZero),
            std::cmp::Ordering::Greater => Ok(rat(0)),
            std::cmp::Ordering::Equal => {
                let n = self.numerator.lowest_coefficient().cloned().unwrap_or_else(|| rat(0));
                let d = self.denominator.lowest_coefficient().cloned().unwrap_or_else(|| rat(1));
                Ok(n / d)
            }
        }
    }

    /// `ε`-adic valuation: numerator minus denominator valuation.
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.numerator.valuation()?;
        let vd = self.denominator.valuation().unwrap_or(0);
        Some(vn as i64 - vd as i64)
    }

    /// Coefficient of `ε^{valuation}` in the Laurent expansion.
    pub fn leading_coefficient(&self) -> Option<Rational> {
        let n = self.numerator.lowest_coefficient()?;
        let d = self.denominator.lowest_coefficient()?;
        Some(n / d)
    }
}

impl PartialEq for UnivariateRationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.numerator.mul(&other.denominator) == other.numerator.mul(&self.denominator)
    }
}

impl Ring for UnivariateRationalFunction {
    fn zero() -> Self {
        Self::from_poly(EpsPolynomial::zero())
    }
    fn one() -> Self {
        Self::from_poly(EpsPolynomial::constant(rat(1)))
    }
    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.denominator == rhs.denominator {
            return Self::normalized(self.numerator.add(&rhs.numerator), self.denominator.clone());
        }
        Self::normalized(
            self.numerator
                .mul(&rhs.denominator)
                .add(&rhs.numerator.mul(&self.denominator)),
            self.denominator.mul(&rhs.denominator),
        )
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Self::normalized(
            self.numerator.mul(&rhs.numerator),
            self.denominator.mul(&rhs.denominator),
        )
    }
    fn neg_ref(&self) -> Self {
        UnivariateRationalFunction {
            numerator: self.numerator.neg(),
            denominator: self.denominator.clone(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(EpsPolynomial::constant(r.clone()))
    }
    fn inverse(&self) -> Option<Self> {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }
}

impl fmt::Display for UnivariateRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numerator, self.denominator)
    }
}
