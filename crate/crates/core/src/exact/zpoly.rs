use std::collections::BTreeMap;
use std::fmt;

use super::ring::{is_negative, rat, Rational, Ring};
use crate::error::{Error, Result};

/// Exponent vector over `z_1, z_2, ...`; slot `a - 1` holds the exponent of
/// `z_a`. Trailing zeros are always trimmed so equal monomials compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ZMonomial(Vec<u32>);

impl ZMonomial {
    pub fn one() -> Self {
        ZMonomial(Vec::new())
    }

    pub fn var(a: usize) -> Self {
        Self::from_exponents(
            (1..=a).map(|b| u32::from(b == a)).collect(),
        )
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        ZMonomial(exps)
    }

    pub fn exponent(&self, a: usize) -> u32 {
        self.0.get(a - 1).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Iterates `(a, e)` for every variable with non-zero exponent.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i + 1, e))
    }

    pub fn mul(&self, other: &ZMonomial) -> ZMonomial {
        let len = self.0.len().max(other.0.len());
        let exps = (0..len)
            .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
            .collect();
        ZMonomial(exps)
    }

    fn with_exponent(&self, a: usize, e: u32) -> ZMonomial {
        let mut exps = self.0.clone();
        if exps.len() < a {
            exps.resize(a, 0);
        }
        exps[a - 1] = e;
        ZMonomial::from_exponents(exps)
    }

    fn renamed(&self, f: &impl Fn(usize) -> usize) -> ZMonomial {
        let mut exps: Vec<u32> = Vec::new();
        for (a, e) in self.iter() {
            let b = f(a);
            if exps.len() < b {
                exps.resize(b, 0);
            }
            exps[b - 1] += e;
        }
        ZMonomial::from_exponents(exps)
    }
}

/// Sparse polynomial in `z_1, ..., z_n` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPolynomial {
    terms: BTreeMap<ZMonomial, Rational>,
}

impl ZPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(ZMonomial::one(), c)
    }

    pub fn var(a: usize) -> Self {
        Self::monomial(ZMonomial::var(a), rat(1))
    }

    pub fn monomial(m: ZMonomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// `z_a - z_b`.
    pub fn linear(a: usize, b: usize) -> Self {
        Self::var(a).sub(&Self::var(b))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ZMonomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: ZMonomial, c: Rational) {
        if Ring::is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if Ring::is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &ZMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(|| rat(0))
    }

    /// The constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(rat(0)),
            1 => self.terms.get(&ZMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ZMonomial::degree).max()
    }

    pub fn degree_in(&self, a: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(a)).max().unwrap_or(0)
    }

    /// Largest variable index that occurs.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(|m| m.exponents().len()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> ZPolynomial {
        ZPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> ZPolynomial {
        if Ring::is_zero(s) {
            return Self::zero();
        }
        ZPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ZPolynomial {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Multiplies by `(z_a - z_b)`.
    pub fn mul_linear(&self, a: usize, b: usize) -> ZPolynomial {
        let mut out = Self::zero();
        let (za, zb) = (ZMonomial::var(a), ZMonomial::var(b));
        for (m, c) in &self.terms {
            out.add_term(m.mul(&za), c.clone());
            out.add_term(m.mul(&zb), -c);
        }
        out
    }

    /// Exchanges `z_a` and `z_b`.
    pub fn swap(&self, a: usize, b: usize) -> ZPolynomial {
        self.rename(|v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
    }

    /// Substitutes `z_{f(a)}` for every `z_a`.
    pub fn rename(&self, f: impl Fn(usize) -> usize) -> ZPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.renamed(&f), c.clone());
        }
        out
    }

    pub fn derivative(&self, a: usize) -> ZPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(a);
            if e > 0 {
                out.add_term(m.with_exponent(a, e - 1), c * rat(i64::from(e)));
            }
        }
        out
    }

    /// Splits into `sum_k coeff_k * z_a^k`, the coefficients free of `z_a`.
    pub fn coefficients_in(&self, a: usize) -> BTreeMap<u32, ZPolynomial> {
        let mut out: BTreeMap<u32, ZPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(a);
            out.entry(e)
                .or_default()
                .add_term(m.with_exponent(a, 0), c.clone());
        }
        out
    }

    /// Exact quotient by `(z_a - z_b)`.
    pub fn exact_linear_divide(&self, a: usize, b: usize) -> Result<ZPolynomial> {
        if a == b {
            return Err(Error::NotDivisible { a, b });
        }
        let coeffs = self.coefficients_in(a);
        let Some(&top) = coeffs.keys().next_back() else {
            return Ok(Self::zero());
        };
        // p = sum_k C_k z_a^k = q (z_a - z_b), q = sum_k Q_k z_a^k:
        // Q_{k-1} = C_k + z_b Q_k, and C_0 + z_b Q_0 must vanish.
        let zb = Self::var(b);
        let mut q = Self::zero();
        let mut carry = Self::zero();
        for k in (1..=top).rev() {
            let ck = coeffs.get(&k).cloned().unwrap_or_default();
            carry = ck.add(&zb.mul(&carry));
            let za_pow = Self::monomial(ZMonomial::var(a).with_exponent(a, k - 1), rat(1));
            q = q.add(&carry.mul(&za_pow));
        }
        let c0 = coeffs.get(&0).cloned().unwrap_or_default();
        if !c0.add(&zb.mul(&carry)).is_zero() {
            return Err(Error::NotDivisible { a, b });
        }
        Ok(q)
    }

    /// Evaluates in any ring, `z(a)` supplying the value of `z_a`.
    pub fn eval_with<C: Ring>(&self, z: impl Fn(usize) -> C) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = C::from_rational(c);
            for (a, e) in m.iter() {
                t = t.mul_ref(&z(a).pow(e));
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Evaluates at `z_a = values[a - 1]`.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.eval_with(|a| values[a - 1].clone())
    }

    /// Substitutes a polynomial for each variable.
    pub fn compose(&self, z: impl Fn(usize) -> ZPolynomial) -> ZPolynomial {
        let mut acc = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (a, e) in m.iter() {
                t = t.mul(&z(a).pow(e));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Symmetric under every permutation of `vars` (checked on adjacent
    /// transpositions, which generate).
    pub fn is_symmetric_in(&self, vars: &[usize]) -> bool {
        vars.windows(2).all(|w| self.swap(w[0], w[1]) == *self)
    }
}

/// `e_i(z_{vars})`, with `e_0 = 1` and `e_i = 0` outside `0..=vars.len()`.
pub fn elementary_symmetric(i: i64, vars: &[usize]) -> ZPolynomial {
    if i < 0 || i as usize > vars.len() {
        return ZPolynomial::zero();
    }
    let mut out = ZPolynomial::zero();
    for subset in crate::localization::combinations(vars, i as usize) {
        let m = subset
            .iter()
            .fold(ZMonomial::one(), |acc, &a| acc.mul(&ZMonomial::var(a)));
        out.add_term(m, rat(1));
    }
    out
}

impl fmt::Display for ZMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, e) in self.iter() {
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            write!(f, "z[{a}]")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn write_terms<'a, M: fmt::Display + 'a, C: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a M, &'a C, bool)>,
    coeff_is_negative: impl Fn(&C) -> Option<String>,
) -> fmt::Result {
    let mut first = true;
    for (m, c, is_unit) in terms {
        let (neg, body) = match coeff_is_negative(c) {
            Some(abs) => (true, abs),
            None => (false, c.to_string()),
        };
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if is_unit {
            write!(f, "{body}")?;
        } else {
            write!(f, "{body} * {m}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for ZPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(m, c)| (m, c, *m == ZMonomial::one())),
            |c: &Rational| is_negative(c).then(|| (-c).to_string()),
        )
    }
}
