use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::ring::{Rational, Ring};
use super::zpoly::write_terms;

/// The variable `y^{(sup)}_{sub}`. Ordering is lexicographic on
/// `(sup, sub)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YVar {
    pub sup: usize,
    pub sub: usize,
}

impl YVar {
    pub fn new(sup: usize, sub: usize) -> Self {
        YVar { sup, sub }
    }
}

impl fmt::Display for YVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y[{},{}]", self.sup, self.sub)
    }
}

/// Monomial in the `y` variables, stored as a sorted list of
/// `(variable, exponent)` pairs with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct YMonomial(Vec<(YVar, u32)>);

impl YMonomial {
    pub fn one() -> Self {
        YMonomial(Vec::new())
    }

    pub fn var(v: YVar) -> Self {
        YMonomial(vec![(v, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (YVar, u32)>) -> Self {
        let mut m = Self::one();
        for (v, e) in factors {
            m = m.with_exponent(v, m.exponent(v) + e);
        }
        m
    }

    /// Square-free product of the given variables (repeats accumulate).
    pub fn product(vars: impl IntoIterator<Item = YVar>) -> Self {
        Self::from_factors(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(YVar, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: YVar) -> u32 {
        match self.0.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn with_exponent(&self, v: YVar, e: u32) -> YMonomial {
        let mut f = self.0.clone();
        match f.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) if e == 0 => {
                f.remove(i);
            }
            Ok(i) => f[i].1 = e,
            Err(_) if e == 0 => {}
            Err(i) => f.insert(i, (v, e)),
        }
        YMonomial(f)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_square_free(&self) -> bool {
        self.0.iter().all(|&(_, e)| e <= 1)
    }

    pub fn mul(&self, other: &YMonomial) -> YMonomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        YMonomial(out)
    }

    /// Applies `f` to every variable; colliding images multiply.
    pub fn map_vars(&self, f: impl Fn(YVar) -> YVar) -> YMonomial {
        Self::from_factors(self.0.iter().map(|&(v, e)| (f(v), e)))
    }

    /// Total `y`-degree carried by each subscript.
    pub fn subscript_degrees(&self) -> BTreeMap<usize, u32> {
        let mut out = BTreeMap::new();
        for &(v, e) in &self.0 {
            *out.entry(v.sub).or_insert(0) += e;
        }
        out
    }

    /// Degree in each superscript family `1..=m`.
    pub fn weight(&self, m: usize) -> Vec<i64> {
        let mut w = vec![0i64; m];
        for &(v, e) in &self.0 {
            if v.sup >= 1 && v.sup <= m {
                w[v.sup - 1] += i64::from(e);
            }
        }
        w
    }

    /// Largest superscript that occurs.
    pub fn max_sup(&self) -> usize {
        self.0.iter().map(|(v, _)| v.sup).max().unwrap_or(0)
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in the `y^{(j)}_a` with coefficients in an exact ring.
#[derive(Debug, Clone, PartialEq)]
pub struct YPolynomial<C> {
    terms: BTreeMap<YMonomial, C>,
}

impl<C> Default for YPolynomial<C> {
    fn default() -> Self {
        YPolynomial {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Ring> YPolynomial<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(YMonomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(sup: usize, sub: usize) -> Self {
        Self::monomial(YMonomial::var(YVar::new(sup, sub)), C::one())
    }

    pub fn monomial(m: YMonomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (YMonomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: YMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
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

    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (YMonomial, C)> {
        self.terms.into_iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &YMonomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &YMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        YPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul_ref(s));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }

    pub fn map_coefficients<D: Ring>(&self, f: impl Fn(&C) -> D) -> YPolynomial<D> {
        YPolynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Fallible coefficient map; the first error aborts.
    pub fn try_map_coefficients<D: Ring, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<YPolynomial<D>, E> {
        let mut out = YPolynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn map_monomials(&self, f: impl Fn(&YMonomial) -> YMonomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Relabels subscripts through `f`, in every superscript family.
    pub fn rename_subscripts(&self, f: impl Fn(usize) -> usize) -> Self {
        self.map_monomials(|m| m.map_vars(|v| YVar::new(v.sup, f(v.sub))))
    }

    /// Exchanges subscripts `a` and `b` in every family.
    pub fn swap_subscripts(&self, a: usize, b: usize) -> Self {
        self.rename_subscripts(|s| {
            if s == a {
                b
            } else if s == b {
                a
            } else {
                s
            }
        })
    }

    /// Every monomial has `y`-degree exactly one in each subscript
    /// `1..=n`, i.e. the polynomial lies in `V^{⊗n}`.
    pub fn is_tensor_element(&self, n: usize) -> bool {
        self.terms.keys().all(|m| {
            let d = m.subscript_degrees();
            d.len() == n && d.iter().enumerate().all(|(i, (&a, &e))| a == i + 1 && e == 1)
        })
    }
}

impl YPolynomial<Rational> {
    /// Substitutes a scalar for selected variables.
    pub fn substitute_scalar(&self, f: impl Fn(YVar) -> Option<Rational>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for &(v, e) in m.factors() {
                match f(v) {
                    Some(val) => coeff = coeff.mul_ref(&Ring::pow(&val, e)),
                    None => kept.push((v, e)),
                }
            }
            out.add_term(YMonomial::from_factors(kept), coeff);
        }
        out
    }
}

impl<C: Ring> fmt::Display for YPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(m, c)| (m, c, m.is_one())),
            |c: &C| c.negated_display(),
        )
    }
}

/// Helpers for the canonical text form.
pub trait DisplayCoefficient {
    /// `Some(|c|)` rendered, when the coefficient prints with a leading sign.
    fn negated_display(&self) -> Option<String>;
}

impl<C: Ring> DisplayCoefficient for C {
    fn negated_display(&self) -> Option<String> {
        let s = self.to_string();
        s.strip_prefix('-').map(str::to_string)
    }
}
