use std::collections::BTreeSet;
use std::fmt;

use super::Partition;
use crate::error::{Error, Result};
use crate::exact::{LinearFactorFraction, Ring, YMonomial, YPolynomial, YVar, ZPolynomial};

/// A bijection of `{1, …, n}`, stored as its list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let distinct: BTreeSet<usize> = images.iter().copied().collect();
        if distinct.len() != n || images.iter().any(|&v| v == 0 || v > n) {
            return Err(Error::NotPermutation(format!("{images:?}")));
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} is not a simple transposition of S_{n}");
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// `s_{j_1} ∘ s_{j_2} ∘ … ∘ s_{j_r}`.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(n), |acc, &j| acc.compose(&Self::simple(n, j)))
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.images;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    /// Lexicographically smallest reduced word `(j_1, …, j_r)` with
    /// `self = s_{j_1} ∘ … ∘ s_{j_r}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = self.clone();
        let n = w.degree();
        loop {
            let inv = w.inverse();
            // Left descents: w^{-1}(j) > w^{-1}(j+1).
            let Some(j) = (1..n).find(|&j| inv.apply(j) > inv.apply(j + 1)) else {
                break;
            };
            word.push(j);
            w = Self::simple(n, j).compose(&w);
        }
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// The block-reversing permutation: `i` in block `u` goes to
/// `i + Σ_{j>u} λ_j - Σ_{j<u} λ_j`.
pub fn omega_lambda(lambda: &Partition) -> Permutation {
    let mut images = Vec::with_capacity(lambda.size());
    for u in 1..=lambda.len() {
        let after: usize = (u + 1..=lambda.len()).map(|j| lambda.part(j)).sum();
        let before: usize = (1..u).map(|j| lambda.part(j)).sum();
        let start = lambda.block_start(u);
        for i in start..start + lambda.part(u) {
            images.push(i + after - before);
        }
    }
    Permutation { images }
}

/// `∂_i p = (p - p|_{z_i ↔ z_{i+1}}) / (z_i - z_{i+1})`.
pub fn divided_difference(i: usize, p: &ZPolynomial) -> ZPolynomial {
    p.sub(&p.swap(i, i + 1))
        .exact_linear_divide(i, i + 1)
        .expect("an antisymmetric polynomial is divisible by the linear factor")
}

/// Which variable families a generalized divided difference transposes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabets {
    /// Superscripts of the `y` families to transpose; `None` means all.
    pub y_families: Option<BTreeSet<usize>>,
    /// Whether the `z` variables inside the coefficients are transposed.
    pub z: bool,
}

impl Alphabets {
    pub fn all() -> Self {
        Alphabets { y_families: None, z: true }
    }

    fn includes(&self, sup: usize) -> bool {
        self.y_families.as_ref().is_none_or(|s| s.contains(&sup))
    }
}

/// `(e - e|_{i ↔ i+1}) / (z_i - z_{i+1})`, transposing the chosen families.
pub fn generalized_divided_difference(
    i: usize,
    alphabets: &Alphabets,
    e: &YPolynomial<LinearFactorFraction>,
) -> YPolynomial<LinearFactorFraction> {
    let swap_sub = |v: YVar| {
        if !alphabets.includes(v.sup) {
            v
        } else if v.sub == i {
            YVar::new(v.sup, i + 1)
        } else if v.sub == i + 1 {
            YVar::new(v.sup, i)
        } else {
            v
        }
    };
    let swapped = YPolynomial::from_terms(e.terms().map(|(m, c)| {
        let c = if alphabets.z { c.swap(i, i + 1) } else { c.clone() };
        (m.map_vars(swap_sub), c)
    }));
    e.sub(&swapped).map_coefficients(|c| c.div_linear(i, i + 1))
}

/// `P_z(λ)` as `∂_{ω_λ}` of the monomial `y^{(1)}_1 ⋯ y^{(1)}_{λ_1} y^{(2)}_{λ_1+1} ⋯`.
pub fn build_p_concise(lambda: &Partition) -> YPolynomial<LinearFactorFraction> {
    let seed = YMonomial::product(
        lambda
            .standard_blocks()
            .iter()
            .enumerate()
            .flat_map(|(j, b)| b.iter().map(move |&a| YVar::new(j + 1, a))),
    );
    let word = omega_lambda(lambda).reduced_word();
    let alphabets = Alphabets::all();
    word.iter().rev().fold(
        YPolynomial::monomial(seed, LinearFactorFraction::one()),
        |acc, &j| generalized_divided_difference(j, &alphabets, &acc),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::localization::build_p;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_lambda(&p(&[1, 1])).images(), &[2, 1]);
        assert_eq!(omega_lambda(&p(&[2, 1])).images(), &[2, 3, 1]);
        // (k, n-k): i ↦ n-k+i for i ≤ k, i ↦ i-k otherwise.
        assert_eq!(omega_lambda(&p(&[3, 2])).images(), &[3, 4, 5, 1, 2]);
    }

    #[test]
    fn reduced_words() {
        let w = omega_lambda(&p(&[2, 1]));
        assert_eq!(w.reduced_word(), vec![1, 2]);
        for perm in [vec![3, 1, 2], vec![4, 3, 2, 1], vec![2, 4, 1, 3]] {
            let w = Permutation::new(perm).unwrap();
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Permutation::from_word(w.degree(), &word), w);
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        let w = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(w.compose(&w.inverse()), Permutation::identity(3));
    }

    #[test]
    fn divided_difference_examples() {
        let z1 = ZPolynomial::var(1);
        let z2 = ZPolynomial::var(2);
        assert_eq!(divided_difference(1, &z1), ZPolynomial::one());
        assert!(divided_difference(1, &z1.mul(&z2)).is_zero());
        assert_eq!(divided_difference(1, &z1.mul(&z1)), z1.add(&z2));
    }

    #[test]
    fn generalized_on_single_variable() {
        let e = YPolynomial::monomial(YMonomial::var(YVar::new(1, 1)), LinearFactorFraction::one());
        let got = generalized_divided_difference(1, &Alphabets::all(), &e);
        let inv = LinearFactorFraction::inv_linear(1, 2);
        let expected = YPolynomial::from_terms([
            (YMonomial::var(YVar::new(1, 1)), inv.clone()),
            (YMonomial::var(YVar::new(1, 2)), inv.neg_ref()),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn symmetric_input_is_killed() {
        let e = YPolynomial::from_terms([
            (YMonomial::var(YVar::new(1, 1)), LinearFactorFraction::var(2)),
            (YMonomial::var(YVar::new(1, 2)), LinearFactorFraction::var(1)),
        ]);
        assert!(generalized_divided_difference(1, &Alphabets::all(), &e).is_zero());
        let c = LinearFactorFraction::constant(rat(3));
        let e = YPolynomial::monomial(YMonomial::one(), c);
        assert!(generalized_divided_difference(1, &Alphabets::all(), &e).is_zero());
    }

    #[test]
    fn concise_form_small_cases() {
        for parts in [&[1, 1][..], &[2, 1], &[1, 1, 1], &[2, 2], &[3, 1], &[2, 1, 1]] {
            let l = p(parts);
            assert_eq!(build_p_concise(&l), build_p(&l).to_symbolic(), "λ = {l}");
        }
    }
}
