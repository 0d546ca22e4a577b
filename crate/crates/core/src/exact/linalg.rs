//! Exact linear algebra over the rationals.
//!
//! Rank and kernel computations clear denominators row by row and run
//! fraction-free (Bareiss) elimination over the integers, so intermediate
//! entries stay bounded by minors of the input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::ring::{Rational, Ring};
use super::ypoly::{YMonomial, YPolynomial};
use crate::error::{Error, Result};

/// Scales a rational row to a primitive integer row with the same span.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Rank of a dense rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut v = integer_row(r);
            v.resize(ncols, BigInt::zero());
            v
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    bareiss_rank(&mut a, ncols)
}

fn bareiss_rank(a: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        tail.par_iter_mut().for_each(|row| {
            let factor = row[c].clone();
            for j in c + 1..ncols {
                let num = pivot * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free step must divide exactly");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        });
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Dimension of the joint kernel of `rows`, viewed as linear functionals on
/// a space of dimension `ncols`.
pub fn kernel_dimension(rows: &[Vec<Rational>], ncols: usize) -> usize {
    debug_assert!(rows.iter().all(|r| r.len() <= ncols));
    ncols - rank(rows)
}

/// Coefficient matrix of a list of polynomials over their joint monomial
/// support (columns in canonical monomial order).
pub fn coefficient_matrix(polys: &[YPolynomial<Rational>]) -> (Vec<YMonomial>, Vec<Vec<Rational>>) {
    let mut index: BTreeMap<YMonomial, usize> = BTreeMap::new();
    for p in polys {
        for m in p.monomials() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    // Re-number in canonical order.
    let columns: Vec<YMonomial> = index.keys().cloned().collect();
    for (i, m) in columns.iter().enumerate() {
        index.insert(m.clone(), i);
    }
    let rows = polys
        .iter()
        .map(|p| {
            let mut row = vec![<Rational as Ring>::zero(); columns.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    (columns, rows)
}

/// Rank of the span of `polys` over the rationals.
pub fn rank_over_rationals(polys: &[YPolynomial<Rational>]) -> usize {
    let (_, rows) = coefficient_matrix(polys);
    rank(&rows)
}

/// Row-echelon basis grown one vector at a time.
///
/// Each stored row is primitive over the integers and vanishes on the pivot
/// columns of all earlier rows.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (c, b) in &self.rows {
            if v.len() < b.len() {
                v.resize(b.len(), BigInt::zero());
            }
            if v[*c].is_zero() {
                continue;
            }
            let (bc, vc) = (b[*c].clone(), v[*c].clone());
            for (j, x) in v.iter_mut().enumerate() {
                let bj = b.get(j).cloned().unwrap_or_default();
                *x = &bc * &*x - &vc * bj;
            }
            make_primitive(&mut v);
        }
        v
    }

    /// Adds a row; returns whether it enlarged the span.
    pub fn insert(&mut self, row: &[Rational]) -> bool {
        let v = self.reduce(integer_row(row));
        match v.iter().position(|x| !x.is_zero()) {
            Some(c) => {
                let mut v = v;
                if v[c].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.push((c, v));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, row: &[Rational]) -> bool {
        self.reduce(integer_row(row)).iter().all(Zero::is_zero)
    }
}

/// Indices of a maximal linearly independent subset, chosen greedily in
/// input order.
pub fn independent_subset(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut basis = EchelonBasis::new();
    rows.iter()
        .enumerate()
        .filter_map(|(i, r)| basis.insert(r).then_some(i))
        .collect()
}

/// Unique solution of `a x = b`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    assert_eq!(a.len(), b.len(), "one right-hand side per equation");
    let unknowns = a.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(unknowns, <Rational as Ring>::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..m.len()).find(|&i| !Ring::is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || Ring::is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !Ring::is_zero(&row[unknowns])) {
        return Err(Error::Inconsistent);
    }
    if r < unknowns {
        return Err(Error::Underdetermined { rank: r, unknowns });
    }
    Ok((0..unknowns).map(|i| m[i][unknowns].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::super::ring::{rat, ratio};
    use super::*;

    type P = YPolynomial<Rational>;

    fn y(a: usize) -> P {
        P::var(2, a)
    }

    #[test]
    fn negated_vector_has_rank_one() {
        let v = [y(1).sub(&y(2)), y(2).sub(&y(1))];
        assert_eq!(rank_over_rationals(&v), 1);
    }

    #[test]
    fn empty_constraints_leave_full_kernel() {
        assert_eq!(kernel_dimension(&[], 3), 3);
        assert_eq!(kernel_dimension(&[vec![rat(1), rat(1), rat(0)]], 3), 2);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let rows = vec![
            vec![rat(0), rat(2), rat(4), rat(1)],
            vec![rat(0), rat(1), rat(2), rat(3)],
            vec![rat(0), rat(3), rat(6), rat(4)],
            vec![rat(0), rat(0), rat(0), rat(5)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(independent_subset(&rows), vec![0, 1]);
    }

    #[test]
    fn rank_with_fractions() {
        let rows = vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(3, 2), rat(1)],
            vec![ratio(1, 7), ratio(2, 9)],
        ];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn solve_unique_and_failures() {
        let a = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)], vec![rat(2), rat(0)]];
        let x = solve(&a, &[rat(3), rat(1), rat(4)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        assert_eq!(solve(&a, &[rat(3), rat(1), rat(5)]), Err(Error::Inconsistent));
        let b = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        assert_eq!(
            solve(&b, &[rat(1), rat(2)]),
            Err(Error::Underdetermined { rank: 1, unknowns: 2 })
        );
    }

    #[test]
    fn echelon_membership() {
        let mut basis = EchelonBasis::new();
        assert!(basis.insert(&[rat(1), rat(2), rat(0)]));
        assert!(basis.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!basis.insert(&[rat(2), rat(5), rat(1)]));
        assert!(basis.contains(&[rat(1), rat(3), rat(1)]));
        assert!(!basis.contains(&[rat(0), rat(0), rat(1)]));
        assert_eq!(basis.rank(), 2);
    }
}
