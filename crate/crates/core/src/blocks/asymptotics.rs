use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{
    EpsPolynomial, LinearFactorFraction, Rational, Ring, UnivariateRationalFunction, YMonomial, YPolynomial, YVar,
    ZPolynomial,
};
use crate::localization::{build_p, flag_threshold, random_distinct_rationals, Partition};

type Urf = UnivariateRationalFunction;

/// `α(λ) = (0, 1, 1, 2, 2, …, λ_2 - 1, λ_2 - 1, λ_2, …, λ_2)` with
/// `d(λ) + 1` trailing copies of `λ_2`; all zeros when `λ_2 = 0`.
pub fn alpha_exponents(lambda: &Partition) -> Result<Vec<u32>> {
    if lambda.len() != 2 {
        return Err(Error::InvalidPartition(format!("{lambda} needs exactly two parts")));
    }
    let (b, n) = (lambda.part(2), lambda.size());
    if b == 0 {
        return Ok(vec![0; n]);
    }
    let mut alpha = vec![0u32];
    for k in 1..b {
        alpha.extend([k as u32, k as u32]);
    }
    alpha.resize(n, b as u32);
    Ok(alpha)
}

/// Signed permutations of `0..u`.
fn permutations(u: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(rest: Vec<usize>, cur: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if rest.is_empty() {
            out.push((cur.clone(), odd));
            return;
        }
        for (k, &x) in rest.iter().enumerate() {
            let mut r = rest.clone();
            r.remove(k);
            cur.push(x);
            go(r, cur, odd ^ (k % 2 == 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go((0..u).collect(), &mut Vec::new(), false, &mut out);
    out
}

/// `det(y^{(i)}_{indices[j]})_{i,j = 1..u}`.
pub fn y_determinant(indices: &[usize]) -> YPolynomial<Rational> {
    let u = indices.len();
    YPolynomial::from_terms(permutations(u).into_iter().map(|(perm, odd)| {
        let mono = YMonomial::product(perm.iter().enumerate().map(|(i, &j)| YVar::new(i + 1, indices[j])));
        (mono, Rational::from_int(if odd { -1 } else { 1 }))
    }))
}

/// The product of determinants giving the leading coefficient of `P_z(λ)`
/// when `|z_1| ≪ |z_2| ≪ … ≪ 1`, up to sign.
pub fn asymptotic_leading_general(lambda: &Partition) -> YPolynomial<Rational> {
    let m = lambda.len();
    let mut acc = YPolynomial::one();
    for u in 1..=m {
        let tail: usize = (u + 2..=m).map(|k| lambda.part(k)).sum();
        for v in 1..=lambda.part(u) - lambda.part(u + 1) {
            let base = tail + (u + 1) * lambda.part(u + 1) + (v - 1) * u;
            let indices: Vec<usize> = (base + 1..=base + u).collect();
            acc = acc.mul(&y_determinant(&indices));
        }
    }
    acc
}

/// Which degeneration of `z` to follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitMode {
    /// `λ = (N, …, N)`: the `k`-th group of `m` points merges at `z_{km}`.
    Clustered,
    /// `|z_1| ≪ |z_2| ≪ … ≪ |z_n| ≪ 1`.
    Nested,
}

impl std::str::FromStr for LimitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clustered" => Ok(LimitMode::Clustered),
            "nested" => Ok(LimitMode::Nested),
            other => Err(Error::Parse(format!("unknown limit mode '{other}'"))),
        }
    }
}

impl std::fmt::Display for LimitMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LimitMode::Clustered => "clustered",
            LimitMode::Nested => "nested",
        })
    }
}

/// Outcome of an asymptotic comparison: `limit = sign · target`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCheck {
    pub mode: LimitMode,
    pub lambda: Partition,
    /// Exponent vector multiplied in before the nested limit.
    pub exponents: Option<Vec<u32>>,
    pub sign: i32,
    pub limit: YPolynomial<Rational>,
    pub target: YPolynomial<Rational>,
}

fn random_nonzero(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut v: Vec<Rational> = random_distinct_rationals(n + 1, rng)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    v.truncate(n);
    v
}

fn limit_of(p: &YPolynomial<LinearFactorFraction>, z: &[Urf], prefactor: &Urf) -> Result<YPolynomial<Rational>> {
    p.try_map_coefficients(|c| {
        c.eval_with(|a| z[a - 1].clone())
            .ok_or(Error::PoleAtZero)?
            .mul_ref(prefactor)
            .limit_at_zero()
    })
}

/// Base of the nested ε-path: exceeds every exponent that can occur in
/// one variable.
fn nested_base(lambda: &Partition, alpha: &[u32]) -> u64 {
    (flag_threshold(lambda.parts()) + alpha.iter().copied().max().unwrap_or(0) as usize + 1) as u64
}

fn nested_path(n: usize, base: u64, rng: &mut ChaCha8Rng) -> Vec<Urf> {
    random_nonzero(n, rng)
        .into_iter()
        .enumerate()
        .map(|(i, c)| Urf::monomial(base.pow((n - 1 - i) as u32), c))
        .collect()
}

fn z_power(z: &[Urf], alpha: &[u32]) -> Urf {
    z.iter().zip(alpha).fold(Urf::one(), |acc, (zi, &e)| acc.mul_ref(&zi.pow(e)))
}

/// `lim P_z(λ) · Π z_i^{α_i}` along `z_i = c_i ε^{B^{n-i}}`.
pub fn nested_limit(lambda: &Partition, alpha: &[u32], rng: &mut ChaCha8Rng) -> Result<YPolynomial<Rational>> {
    let n = lambda.size();
    assert_eq!(alpha.len(), n, "one exponent per point");
    let z = nested_path(n, nested_base(lambda, alpha), rng);
    limit_of(&build_p(lambda).to_symbolic(), &z, &z_power(&z, alpha))
}

/// The exponent vector `α` making `P_z(λ) · z^α` tend to a finite non-zero
/// limit in the nested regime, read off from ε-valuations.
pub fn nested_leading_exponents(lambda: &Partition, rng: &mut ChaCha8Rng) -> Result<Vec<u32>> {
    let n = lambda.size();
    let base = nested_base(lambda, &[]);
    let z = nested_path(n, base, rng);
    let worst = build_p(lambda)
        .terms()
        .iter()
        .map(|t| {
            t.coefficient
                .eval_with(|a| z[a - 1].clone())
                .and_then(|v| v.valuation())
                .ok_or(Error::PoleAtZero)
        })
        .collect::<Result<Vec<i64>>>()?
        .into_iter()
        .min()
        .unwrap_or(0);
    let mut rest = worst.unsigned_abs();
    Ok((0..n)
        .map(|i| {
            let place = base.pow((n - 1 - i) as u32);
            let digit = (rest / place) as u32;
            rest %= place;
            digit
        })
        .collect())
}

fn require_rectangular(lambda: &Partition) -> Result<usize> {
    let n = lambda.part(1);
    if lambda.parts().iter().any(|&x| x != n) || n == 0 {
        return Err(Error::InvalidPartition(format!("{lambda} is not (N, …, N) with N > 0")));
    }
    Ok(n)
}

/// `Π_{i<j} (x_i - x_j)` over the listed variables.
pub fn discriminant(vars: &[usize]) -> ZPolynomial {
    let mut acc = ZPolynomial::one();
    for (k, &a) in vars.iter().enumerate() {
        for &b in &vars[k + 1..] {
            acc = acc.mul_linear(a, b);
        }
    }
    acc
}

/// `lim P(N, …, N) · Π_k disc(z_{(k-1)m+1}, …, z_{km})` as every group
/// `z_{(k-1)m+r} = w_k + c_{k,r} ε` merges into `z_{km} = w_k`.
///
/// Returns the limit and the cluster centres `w`.
pub fn clustered_limit(lambda: &Partition, rng: &mut ChaCha8Rng) -> Result<(YPolynomial<Rational>, Vec<Rational>)> {
    let n_per = require_rectangular(lambda)?;
    let m = lambda.len();
    let w = random_distinct_rationals(n_per, rng);
    let mut z = Vec::with_capacity(m * n_per);
    let mut prefactor = ZPolynomial::one();
    for (k, wk) in w.iter().enumerate() {
        let c = random_nonzero(m - 1, rng);
        for ck in &c {
            z.push(Urf::from_poly(EpsPolynomial::from_terms([(0, wk.clone()), (1, ck.clone())])));
        }
        z.push(Urf::from_poly(EpsPolynomial::constant(wk.clone())));
        prefactor = prefactor.mul(&discriminant(&(k * m + 1..=(k + 1) * m).collect::<Vec<_>>()));
    }
    let pre = prefactor.eval_with(|a| z[a - 1].clone());
    Ok((limit_of(&build_p(lambda).to_symbolic(), &z, &pre)?, w))
}

/// `Π_k det(y^{(i)}_j)_{j ∈ group k} / disc(w)^{m(m-1)}`.
pub fn clustered_target(lambda: &Partition, w: &[Rational]) -> Result<YPolynomial<Rational>> {
    let n_per = require_rectangular(lambda)?;
    let m = lambda.len();
    let mut acc = YPolynomial::one();
    for k in 0..n_per {
        acc = acc.mul(&y_determinant(&(k * m + 1..=(k + 1) * m).collect::<Vec<_>>()));
    }
    let disc = discriminant(&(1..=w.len()).collect::<Vec<_>>()).eval(w);
    let scale = disc.pow((m * (m - 1)) as i32).inverse().ok_or(Error::ZeroDenominator { a: 0, b: 0 })?;
    Ok(acc.scale(&scale))
}

fn resolve_sign(limit: &YPolynomial<Rational>, target: &YPolynomial<Rational>) -> Option<i32> {
    if limit.is_zero() || target.is_zero() {
        return None;
    }
    if limit == target {
        Some(1)
    } else if *limit == target.neg() {
        Some(-1)
    } else {
        None
    }
}

/// Takes the limit prescribed by `mode` and compares it with the closed
/// form up to sign.
///
/// Nested mode with two parts uses `α(λ)`; with more parts the exponents
/// come from [`nested_leading_exponents`]. Both compare against
/// [`asymptotic_leading_general`].
pub fn check_p_asymptotics(lambda: &Partition, mode: LimitMode, rng: &mut ChaCha8Rng) -> Result<AsymptoticCheck> {
    let (limit, target, exponents) = match mode {
        LimitMode::Clustered => {
            let (limit, w) = clustered_limit(lambda, rng)?;
            (limit, clustered_target(lambda, &w)?, None)
        }
        LimitMode::Nested => {
            let alpha = if lambda.len() == 2 {
                alpha_exponents(lambda)?
            } else {
                nested_leading_exponents(lambda, rng)?
            };
            let limit = nested_limit(lambda, &alpha, rng)?;
            (limit, asymptotic_leading_general(lambda), Some(alpha))
        }
    };
    let sign = resolve_sign(&limit, &target).ok_or_else(|| Error::Mismatch {
        lhs: limit.to_string(),
        rhs: format!("±({target})"),
    })?;
    Ok(AsymptoticCheck {
        mode,
        lambda: lambda.clone(),
        exponents,
        sign,
        limit,
        target,
    })
}

/// Compares `det((y_i - y_{j+N}) / (z_i - z_{j+N}))_{i,j = 1..N}`, with
/// `y = y^{(2)}`, against `disc(z_1..z_N) disc(z_{N+1}..z_{2N}) P_z(N, N)`
/// with `y^{(1)} = 1`, symbolically. Returns the sign relating them.
pub fn remark42_check(n: usize) -> Result<i32> {
    type Lff = LinearFactorFraction;
    let entry = |i: usize, j: usize| -> YPolynomial<Lff> {
        let c = Lff::inv_linear(i, j + n);
        YPolynomial::monomial(YMonomial::var(YVar::new(2, i)), c.clone())
            .add(&YPolynomial::monomial(YMonomial::var(YVar::new(2, j + n)), c.neg_ref()))
    };
    let mut lhs = YPolynomial::zero();
    for (perm, odd) in permutations(n) {
        let term = perm
            .iter()
            .enumerate()
            .fold(YPolynomial::one(), |acc, (i, &j)| acc.mul(&entry(i + 1, j + 1)));
        lhs = if odd { lhs.sub(&term) } else { lhs.add(&term) };
    }
    let lambda = Partition::new(vec![n, n])?;
    let prefactor = Lff::from_poly(
        discriminant(&(1..=n).collect::<Vec<_>>()).mul(&discriminant(&(n + 1..=2 * n).collect::<Vec<_>>())),
    );
    let rhs = YPolynomial::from_terms(build_p(&lambda).to_symbolic().terms().map(|(mono, c)| {
        let kept = YMonomial::from_factors(mono.factors().iter().copied().filter(|(v, _)| v.sup != 1));
        (kept, c.mul_ref(&prefactor))
    }));
    if lhs.sub(&rhs).is_zero() {
        Ok(1)
    } else if lhs.add(&rhs).is_zero() {
        Ok(-1)
    } else {
        Err(Error::Mismatch {
            lhs: lhs.to_string(),
            rhs: format!("±({rhs})"),
        })
    }
}
