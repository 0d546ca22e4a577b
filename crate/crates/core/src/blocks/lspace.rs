use crate::error::{Error, Result};
use crate::exact::{rank_over_rationals, rat, Rational, YMonomial, YPolynomial, YVar};
use crate::localization::Partition;

use super::families::enumerate_u_families;

fn y(a: usize) -> YPolynomial<Rational> {
    YPolynomial::var(2, a)
}

fn require_two_parts(lambda: &Partition) -> Result<()> {
    if lambda.len() != 2 {
        return Err(Error::InvalidPartition(format!("{lambda} needs exactly two parts")));
    }
    Ok(())
}

/// `R(U)`: over each part `u_1 < u_2 < …`, the product
/// `(y_{u_1} - y_{u_2})(y_{u_3} - y_{u_4})⋯`, with `y_a = y^{(2)}_a`.
pub fn r_poly(parts: &[Vec<usize>]) -> YPolynomial<Rational> {
    let mut acc = YPolynomial::one();
    for part in parts {
        let mut part = part.clone();
        part.sort_unstable();
        for pair in part.chunks_exact(2) {
            acc = acc.mul(&y(pair[0]).sub(&y(pair[1])));
        }
    }
    acc
}

/// The `R(U)` over every U-family of `λ` at `level` (two parts only).
pub fn l_generators(lambda: &Partition, level: usize) -> Result<Vec<YPolynomial<Rational>>> {
    require_two_parts(lambda)?;
    Ok(enumerate_u_families(lambda, level)?
        .iter()
        .map(|u| r_poly(u.parts()))
        .collect())
}

/// `dim L^level(λ)`.
pub fn l_dim(lambda: &Partition, level: usize) -> Result<usize> {
    Ok(rank_over_rationals(&l_generators(lambda, level)?))
}

/// Removes every monomial containing a squared variable.
pub fn square_free_drop<C: crate::exact::Ring>(p: &YPolynomial<C>) -> YPolynomial<C> {
    YPolynomial::from_terms(
        p.terms()
            .filter(|(m, _)| m.is_square_free())
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

fn check_level(lambda: &Partition, level: usize) -> Result<()> {
    require_two_parts(lambda)?;
    let d = lambda.spread();
    if level < d {
        return Err(Error::LevelTooLow { level, spread: d });
    }
    Ok(())
}

/// `Φ: L^level(λ_1, λ_2) → L^level(λ_1 + 1, λ_2)`, the inclusion.
pub fn phi_map(g: &YPolynomial<Rational>, lambda: &Partition, level: usize) -> Result<YPolynomial<Rational>> {
    check_level(lambda, level)?;
    if level == lambda.spread() {
        return Err(Error::LevelEqualsSpread(level));
    }
    Ok(g.clone())
}

/// `Ψ: L^level(λ_1, λ_2) → L^level(λ_1, λ_2 + 1)`,
/// `g ↦ SF(g · (y_1 + … + y_n - d(λ) y_{n+1}))` with `n = |λ|`.
pub fn psi_map(g: &YPolynomial<Rational>, lambda: &Partition, level: usize) -> Result<YPolynomial<Rational>> {
    check_level(lambda, level)?;
    let d = lambda.spread();
    if d == 0 {
        return Err(Error::SpreadZero);
    }
    let n = lambda.size();
    let mut factor = YPolynomial::monomial(YMonomial::var(YVar::new(2, n + 1)), rat(-(d as i64)));
    for a in 1..=n {
        factor = factor.add(&y(a));
    }
    Ok(square_free_drop(&g.mul(&factor)))
}

/// Ranks around one step of the L-space recursion into `λ = (a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiPsiReport {
    pub target_dim: usize,
    /// `(dim L(a-1, b), rank Φ(L(a-1, b)))`, when `Φ` applies.
    pub phi: Option<(usize, usize)>,
    /// `(dim L(a, b-1), rank Ψ(L(a, b-1)))`, when `Ψ` applies.
    pub psi: Option<(usize, usize)>,
    /// Rank of both images together.
    pub joint_rank: usize,
    /// Both images lie in `L(a, b)`.
    pub images_in_target: bool,
}

impl PhiPsiReport {
    pub fn injective(&self) -> bool {
        self.phi.is_none_or(|(d, r)| d == r) && self.psi.is_none_or(|(d, r)| d == r)
    }

    /// The images meet only in zero.
    pub fn independent(&self) -> bool {
        self.joint_rank == self.phi.map_or(0, |p| p.1) + self.psi.map_or(0, |p| p.1)
    }
}

/// Pushes `L(a-1, b)` through `Φ` and `L(a, b-1)` through `Ψ`, whichever
/// are defined at `level`, and compares with `L(a, b)`.
pub fn phi_psi_report(lambda: &Partition, level: usize) -> Result<PhiPsiReport> {
    check_level(lambda, level)?;
    let (a, b) = (lambda.part(1), lambda.part(2));
    let target = l_generators(lambda, level)?;
    let target_dim = rank_over_rationals(&target);
    let mut images = Vec::new();
    let mut phi = None;
    if a > b && level > a - 1 - b {
        let source = Partition::new(vec![a - 1, b])?;
        let gens = l_generators(&source, level)?;
        let img = gens
            .iter()
            .map(|g| phi_map(g, &source, level))
            .collect::<Result<Vec<_>>>()?;
        phi = Some((rank_over_rationals(&gens), rank_over_rationals(&img)));
        images.extend(img);
    }
    let mut psi = None;
    if b > 0 && level > a - b {
        let source = Partition::new(vec![a, b - 1])?;
        let gens = l_generators(&source, level)?;
        let img = gens
            .iter()
            .map(|g| psi_map(g, &source, level))
            .collect::<Result<Vec<_>>>()?;
        psi = Some((rank_over_rationals(&gens), rank_over_rationals(&img)));
        images.extend(img);
    }
    let joint_rank = rank_over_rationals(&images);
    let mut all = target;
    all.extend(images);
    Ok(PhiPsiReport {
        target_dim,
        phi,
        psi,
        joint_rank,
        images_in_target: rank_over_rationals(&all) == target_dim,
    })
}
