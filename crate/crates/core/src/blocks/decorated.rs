use crate::error::{Error, Result};
use crate::exact::{elementary_symmetric, ZPolynomial};
use crate::localization::{build_p, LocalizationSum, Partition};

/// `s^{(k)}(μ) = det(Z_{μ_i + j - i})` with `Z_t` the `t`-th elementary
/// symmetric polynomial in `z_1, …, z_k` (zero outside `0..=k`).
pub fn schur_s(k: usize, mu: &Partition) -> ZPolynomial {
    let vars: Vec<usize> = (1..=k).collect();
    let r = mu.len();
    let entry = |i: usize, j: usize| -> ZPolynomial {
        let t = mu.part(i) as i64 + j as i64 - i as i64;
        if (0..=k as i64).contains(&t) {
            elementary_symmetric(t, &vars)
        } else {
            ZPolynomial::zero()
        }
    };
    let matrix: Vec<Vec<ZPolynomial>> = (1..=r).map(|i| (1..=r).map(|j| entry(i, j)).collect()).collect();
    determinant(&matrix)
}

/// Cofactor expansion along the first row.
fn determinant(m: &[Vec<ZPolynomial>]) -> ZPolynomial {
    match m.len() {
        0 => ZPolynomial::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ZPolynomial::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<ZPolynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = m[0][c].mul(&determinant(&minor));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// `h` only uses `z_1, …, z_{|λ|}` and is unchanged by swapping
/// neighbours inside each standard block.
pub fn is_lambda_symmetric(h: &ZPolynomial, lambda: &Partition) -> bool {
    h.max_var() <= lambda.size()
        && lambda
            .standard_blocks()
            .iter()
            .all(|block| block.windows(2).all(|w| h.swap(w[0], w[1]) == *h))
}

/// `P_z[h](λ)`: each term of `P_z(λ)` multiplied by `h(z_{I_1}, …, z_{I_m})`.
pub fn build_decorated_p(lambda: &Partition, h: &ZPolynomial) -> Result<LocalizationSum> {
    if !is_lambda_symmetric(h, lambda) {
        return Err(Error::NotLambdaSymmetric(format!("{h} for {lambda}")));
    }
    let standard = lambda.standard_blocks();
    Ok(build_p(lambda).decorate(|part| {
        h.rename(|v| {
            let j = standard.iter().position(|b| b.contains(&v)).expect("variable inside |λ|");
            part.blocks()[j][v - standard[j][0]]
        })
    }))
}
