use std::collections::BTreeMap;
use std::fmt;

use super::ring::{rat, Rational, Ring};
use super::zpoly::ZPolynomial;

/// Rational function in the `z` variables whose denominator is a product of
/// linear factors `(z_a - z_b)`.
///
/// The denominator is kept as a multiset of pairs `(a, b)` with `a < b`; a
/// factor written the other way round moves its sign into the numerator.
/// Values are always reduced: no denominator factor divides the numerator.
/// Since the factors are distinct primes, the reduced form is unique and
/// structural equality is equality of rational functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearFactorFraction {
    numerator: ZPolynomial,
    denominator: BTreeMap<(usize, usize), u32>,
}

impl LinearFactorFraction {
    pub fn from_poly(p: ZPolynomial) -> Self {
        LinearFactorFraction {
            numerator: p,
            denominator: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(ZPolynomial::constant(c))
    }

    pub fn var(a: usize) -> Self {
        Self::from_poly(ZPolynomial::var(a))
    }

    /// `1 / (z_a - z_b)`.
    pub fn inv_linear(a: usize, b: usize) -> Self {
        Self::from_poly(ZPolynomial::one()).div_linear(a, b)
    }

    /// Builds `numerator / prod (z_a - z_b)` over the given ordered pairs.
    pub fn from_parts(numerator: ZPolynomial, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = Self::from_poly(numerator);
        let mut negate = false;
        for (a, b) in pairs {
            assert_ne!(a, b, "degenerate linear factor");
            let key = if a < b { (a, b) } else { (b, a) };
            negate ^= a > b;
            *out.denominator.entry(key).or_insert(0) += 1;
        }
        if negate {
            out.numerator = out.numerator.neg();
        }
        out.reduced()
    }

    pub fn numerator(&self) -> &ZPolynomial {
        &self.numerator
    }

    /// Denominator factors `((a, b), multiplicity)` with `a < b`.
    pub fn denominator(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.denominator.iter().map(|(&k, &e)| (k, e))
    }

    pub fn denominator_degree(&self) -> u32 {
        self.denominator.values().sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    /// Expanded denominator polynomial.
    pub fn denominator_poly(&self) -> ZPolynomial {
        let mut d = ZPolynomial::one();
        for (&(a, b), &e) in &self.denominator {
            for _ in 0..e {
                d = d.mul_linear(a, b);
            }
        }
        d
    }

    fn reduced(mut self) -> Self {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return self;
        }
        let keys: Vec<_> = self.denominator.keys().copied().collect();
        for (a, b) in keys {
            while let Some(e) = self.denominator.get(&(a, b)).copied() {
                match self.numerator.exact_linear_divide(a, b) {
                    Ok(q) => {
                        self.numerator = q;
                        if e == 1 {
                            self.denominator.remove(&(a, b));
                        } else {
                            self.denominator.insert((a, b), e - 1);
                        }
                    }
                    Err(_) => break,
                }
            }
        }
        self
    }

    /// Divides by `(z_a - z_b)`.
    pub fn div_linear(&self, a: usize, b: usize) -> Self {
        Self::from_parts(self.numerator.clone(), std::iter::once((a, b)))
            .mul_ref_denominator(&self.denominator)
    }

    fn mul_ref_denominator(mut self, extra: &BTreeMap<(usize, usize), u32>) -> Self {
        for (&k, &e) in extra {
            *self.denominator.entry(k).or_insert(0) += e;
        }
        self.reduced()
    }

    /// Multiplies by a polynomial.
    pub fn mul_poly(&self, p: &ZPolynomial) -> Self {
        LinearFactorFraction {
            numerator: self.numerator.mul(p),
            denominator: self.denominator.clone(),
        }
        .reduced()
    }

    /// Sum of many fractions over one common denominator.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a LinearFactorFraction>) -> Self {
        let items: Vec<&LinearFactorFraction> = items.into_iter().filter(|x| !x.numerator.is_zero()).collect();
        match items.len() {
            0 => return Self::default(),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut common: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for x in &items {
            for (&k, &e) in &x.denominator {
                let slot = common.entry(k).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let mut numerator = ZPolynomial::zero();
        for x in &items {
            let mut n = x.numerator.clone();
            for (&(a, b), &e) in &common {
                let have = x.denominator.get(&(a, b)).copied().unwrap_or(0);
                for _ in have..e {
                    n = n.mul_linear(a, b);
                }
            }
            numerator = numerator.add(&n);
        }
        LinearFactorFraction {
            numerator,
            denominator: common,
        }
        .reduced()
    }

    /// Relabels variables through an injective map. Pairs whose images are
    /// reversed contribute a sign.
    pub fn rename(&self, f: impl Fn(usize) -> usize) -> Self {
        let pairs: Vec<(usize, usize)> = self
            .denominator
            .iter()
            .flat_map(|(&(a, b), &e)| std::iter::repeat_n((f(a), f(b)), e as usize))
            .collect();
        Self::from_parts(self.numerator.rename(&f), pairs)
    }

    /// Exchanges `z_a` and `z_b`.
    pub fn swap(&self, a: usize, b: usize) -> Self {
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

    /// Partial derivative in `z_a`.
    pub fn derivative(&self, a: usize) -> Self {
        // (N/D)' = N'/D - N/D * sum_f e_f * f'/f over factors f = z_p - z_q.
        let mut parts = vec![LinearFactorFraction {
            numerator: self.numerator.derivative(a),
            denominator: self.denominator.clone(),
        }
        .reduced()];
        for (&(p, q), &e) in &self.denominator {
            let sign = if p == a {
                -1
            } else if q == a {
                1
            } else {
                continue;
            };
            let mut denominator = self.denominator.clone();
            *denominator.entry((p, q)).or_insert(0) += 1;
            parts.push(
                LinearFactorFraction {
                    numerator: self.numerator.scale(&rat(sign * i64::from(e))),
                    denominator,
                }
                .reduced(),
            );
        }
        Self::sum(parts.iter())
    }

    /// Evaluates in any ring; `None` when the denominator vanishes there.
    pub fn eval_with<C: Ring>(&self, z: impl Fn(usize) -> C) -> Option<C> {
        let num = self.numerator.eval_with(&z);
        let mut den = C::one();
        for (&(a, b), &e) in &self.denominator {
            den = den.mul_ref(&z(a).sub_ref(&z(b)).pow(e));
        }
        Some(num.mul_ref(&den.inverse()?))
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.denominator.is_empty() {
            self.numerator.as_constant()
        } else {
            None
        }
    }
}

impl Ring for LinearFactorFraction {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(rat(1))
    }
    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Self::sum([self, rhs])
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Self::sum([self, &rhs.neg_ref()])
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        LinearFactorFraction {
            numerator: self.numerator.mul(&rhs.numerator),
            denominator: self.denominator.clone(),
        }
        .mul_ref_denominator(&rhs.denominator)
    }
    fn neg_ref(&self) -> Self {
        LinearFactorFraction {
            numerator: self.numerator.neg(),
            denominator: self.denominator.clone(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }
    fn inverse(&self) -> Option<Self> {
        let c = self.numerator.as_constant()?;
        let c = Ring::inverse(&c)?;
        Some(Self::from_poly(self.denominator_poly().scale(&c)))
    }
}

impl fmt::Display for LinearFactorFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return match self.numerator.as_constant() {
                Some(c) => write!(f, "{c}"),
                None => write!(f, "({})", self.numerator),
            };
        }
        write!(f, "({})/(", self.numerator)?;
        for (i, (&(a, b), &e)) in self.denominator.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "(z[{a}] - z[{b}])")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        f.write_str(")")
    }
}
