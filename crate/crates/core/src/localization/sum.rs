use rayon::prelude::*;

use super::{enumerate_partitionings, IndexedPartitioning, Partition, ZAssignment};
use crate::error::{Error, Result};
use crate::exact::{LinearFactorFraction, Ring, YMonomial, YPolynomial, YVar, ZPolynomial};

/// One summand: the monomial `Π_j Π_{a ∈ I_j} y^{(j)}_a` times a coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationTerm {
    pub partitioning: IndexedPartitioning,
    pub coefficient: LinearFactorFraction,
}

impl LocalizationTerm {
    pub fn monomial(&self) -> YMonomial {
        YMonomial::product(
            self.partitioning
                .blocks()
                .iter()
                .enumerate()
                .flat_map(|(j, block)| block.iter().map(move |&a| YVar::new(j + 1, a))),
        )
    }
}

/// A formal sum over partitionings of an index set, each carrying a
/// rational function of `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationSum {
    lambda: Partition,
    indices: Vec<usize>,
    terms: Vec<LocalizationTerm>,
}

impl LocalizationSum {
    /// Assembles a sum; every partitioning must split `indices` into blocks
    /// of sizes `λ`, and no partitioning may repeat.
    pub fn new(lambda: Partition, mut indices: Vec<usize>, terms: Vec<LocalizationTerm>) -> Result<Self> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex(w[0]));
        }
        let mut seen = std::collections::BTreeSet::new();
        for t in &terms {
            let blocks = t.partitioning.blocks();
            let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
            let mut all: Vec<usize> = blocks.concat();
            all.sort_unstable();
            if sizes != lambda.parts() || all != indices {
                return Err(Error::InvalidPartition(format!(
                    "partitioning {blocks:?} does not fit {lambda} on {indices:?}"
                )));
            }
            if !seen.insert(t.partitioning.clone()) {
                return Err(Error::InvalidPartition(format!("partitioning {blocks:?} repeats")));
            }
        }
        Ok(LocalizationSum { lambda, indices, terms })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// The (sorted) index set the sum lives on.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn terms(&self) -> &[LocalizationTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitutes concrete values for `z`.
    pub fn evaluate<C: Ring>(&self, z: &ZAssignment<C>) -> Result<YPolynomial<C>> {
        if let Some(&a) = self.indices.iter().find(|&&a| a == 0 || a > z.len()) {
            return Err(Error::MissingZ(a));
        }
        let eval = |t: &LocalizationTerm| -> Result<(YMonomial, C)> {
            let c = t.coefficient.eval_with(|a| z.at(a)).ok_or_else(|| {
                let (a, b) = t
                    .coefficient
                    .denominator()
                    .map(|(k, _)| k)
                    .find(|&(a, b)| z.at(a) == z.at(b))
                    .unwrap_or((0, 0));
                Error::ZeroDenominator { a, b }
            })?;
            Ok((t.monomial(), c))
        };
        let pieces: Vec<(YMonomial, C)> = if self.terms.len() > 64 {
            self.terms.par_iter().map(eval).collect::<Result<_>>()?
        } else {
            self.terms.iter().map(eval).collect::<Result<_>>()?
        };
        Ok(YPolynomial::from_terms(pieces))
    }

    /// The sum as a polynomial in `y` with rational-function coefficients.
    pub fn to_symbolic(&self) -> YPolynomial<LinearFactorFraction> {
        YPolynomial::from_terms(self.terms.iter().map(|t| (t.monomial(), t.coefficient.clone())))
    }

    /// Relabels every index `a` as `f(a)`; `f` must be injective on the
    /// index set.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> LocalizationSum {
        let terms = self
            .terms
            .iter()
            .map(|t| LocalizationTerm {
                partitioning: IndexedPartitioning::new(
                    t.partitioning
                        .blocks()
                        .iter()
                        .map(|b| b.iter().map(|&a| f(a)).collect())
                        .collect(),
                )
                .expect("relabelling is injective"),
                coefficient: t.coefficient.rename(&f),
            })
            .collect();
        let mut indices: Vec<usize> = self.indices.iter().map(|&a| f(a)).collect();
        indices.sort_unstable();
        LocalizationSum {
            lambda: self.lambda.clone(),
            indices,
            terms,
        }
    }

    /// Multiplies every coefficient by a polynomial depending on the term.
    pub fn decorate(&self, h: impl Fn(&IndexedPartitioning) -> ZPolynomial) -> LocalizationSum {
        LocalizationSum {
            lambda: self.lambda.clone(),
            indices: self.indices.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| LocalizationTerm {
                    partitioning: t.partitioning.clone(),
                    coefficient: t.coefficient.mul_poly(&h(&t.partitioning)),
                })
                .collect(),
        }
    }
}

/// `R(z_{S_1} | … | z_{S_r}) = Π_{i<j} Π_{a ∈ S_i, b ∈ S_j} (z_a - z_b)`.
pub fn resultant_value<C: Ring>(sets: &[Vec<usize>], z: &ZAssignment<C>) -> Result<C> {
    let mut acc = C::one();
    for (i, si) in sets.iter().enumerate() {
        for sj in &sets[i + 1..] {
            for &a in si {
                for &b in sj {
                    acc = acc.mul_ref(&z.get(a)?.sub_ref(z.get(b)?));
                }
            }
        }
    }
    Ok(acc)
}

/// `1 / R(z_{S_1} | … | z_{S_r})` as a reduced fraction.
pub fn resultant_fraction(sets: &[Vec<usize>]) -> LinearFactorFraction {
    let mut pairs = Vec::new();
    for (i, si) in sets.iter().enumerate() {
        for sj in &sets[i + 1..] {
            for &a in si {
                for &b in sj {
                    pairs.push((a, b));
                }
            }
        }
    }
    LinearFactorFraction::from_parts(ZPolynomial::one(), pairs)
}

/// `P_z(λ) = Σ_I Π_j Y^{(j)}_{I_j} / R(z_{I_1} | … | z_{I_m})`.
pub fn build_p(lambda: &Partition) -> LocalizationSum {
    let terms = enumerate_partitionings(lambda)
        .into_iter()
        .map(|p| LocalizationTerm {
            coefficient: resultant_fraction(p.blocks()),
            partitioning: p,
        })
        .collect();
    LocalizationSum {
        lambda: lambda.clone(),
        indices: (1..=lambda.size()).collect(),
        terms,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_y_polynomial, rat, Rational};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn resultant_examples() {
        let z = ZAssignment::from_ints(&[0, 1]).unwrap();
        assert_eq!(resultant_value(&[vec![1], vec![2]], &z).unwrap(), rat(-1));
        let z = ZAssignment::from_ints(&[1, 2, 3, 4]).unwrap();
        assert_eq!(resultant_value(&[vec![1, 2], vec![3, 4]], &z).unwrap(), rat(12));
        let z = ZAssignment::from_ints(&[1, 2, 3]).unwrap();
        // (1-2)(1-3)(2-3)
        assert_eq!(resultant_value(&[vec![1], vec![2], vec![3]], &z).unwrap(), rat(-2));
    }

    #[test]
    fn p11_at_zero_one() {
        let z = ZAssignment::from_ints(&[0, 1]).unwrap();
        let v = build_p(&p(&[1, 1])).evaluate(&z).unwrap();
        assert_eq!(v, parse_y_polynomial("y[1,2] * y[2,1] - y[1,1] * y[2,2]").unwrap());
    }

    #[test]
    fn p21_matches_closed_form() {
        // y11 y12 y23 /((z1-z3)(z2-z3)) + y11 y13 y22/((z1-z2)(z3-z2)) + y12 y13 y21/((z2-z1)(z3-z1))
        let z = ZAssignment::from_ints(&[2, 5, 11]).unwrap();
        let v = build_p(&p(&[2, 1])).evaluate(&z).unwrap();
        let c = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let expected = YPolynomial::from_terms([
            (YMonomial::product([YVar::new(1, 1), YVar::new(1, 2), YVar::new(2, 3)]), c(1, (2 - 11) * (5 - 11))),
            (YMonomial::product([YVar::new(1, 1), YVar::new(1, 3), YVar::new(2, 2)]), c(1, (2 - 5) * (11 - 5))),
            (YMonomial::product([YVar::new(1, 2), YVar::new(1, 3), YVar::new(2, 1)]), c(1, (5 - 2) * (11 - 2))),
        ]);
        assert_eq!(v, expected);
    }

    #[test]
    fn p22_has_six_square_free_terms() {
        let z = ZAssignment::from_ints(&[1, 2, 3, 4]).unwrap();
        let v = build_p(&p(&[2, 2])).evaluate(&z).unwrap();
        assert_eq!(v.len(), 6);
        assert!(v.monomials().all(YMonomial::is_square_free));
        assert!(v.is_tensor_element(4));
    }

    #[test]
    fn coincident_z_is_reported() {
        let z = ZAssignment::unchecked(vec![rat(3), rat(3), rat(1)]);
        assert_eq!(
            build_p(&p(&[2, 1])).evaluate(&z),
            Err(Error::ZeroDenominator { a: 1, b: 2 })
        );
        let short = ZAssignment::from_ints(&[1, 2]).unwrap();
        assert_eq!(build_p(&p(&[2, 1])).evaluate(&short), Err(Error::MissingZ(3)));
    }

    #[test]
    fn symbolic_and_numeric_agree() {
        let s = build_p(&p(&[2, 1, 1]));
        let z = ZAssignment::from_ints(&[3, -1, 7, 2]).unwrap();
        let sym = s.to_symbolic();
        let via_sym = sym.map_coefficients(|c| c.eval_with(|a| z.at(a)).unwrap());
        assert_eq!(via_sym, s.evaluate(&z).unwrap());
    }

    #[test]
    fn single_part_is_monomial() {
        let s = build_p(&p(&[3]));
        assert_eq!(s.len(), 1);
        let z = ZAssignment::from_ints(&[1, 2, 3]).unwrap();
        assert_eq!(s.evaluate(&z).unwrap().to_string(), "1 * y[1,1] * y[1,2] * y[1,3]");
    }
}
