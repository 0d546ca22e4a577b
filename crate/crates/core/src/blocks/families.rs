use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{LinearFactorFraction, Rational, YPolynomial};
use crate::localization::{build_p, LocalizationSum, Partition, ZAssignment};

/// The partition of `size` into `m` parts with spread at most one.
pub fn mu_of_part(size: usize, m: usize) -> Partition {
    assert!(m >= 2, "need at least two parts");
    let (q, r) = (size / m, size % m);
    let parts = (0..m).map(|i| if i < r { q + 1 } else { q }).collect();
    Partition::new(parts).expect("weakly decreasing by construction")
}

/// `P(μ)` with index `a` renamed to `indices[a - 1]` in both `y` and `z`.
pub fn build_p_relabeled(indices: &[usize], mu: &Partition) -> Result<LocalizationSum> {
    let mut seen = BTreeSet::new();
    for &k in indices {
        if !seen.insert(k) {
            return Err(Error::DuplicateIndex(k));
        }
    }
    if indices.len() != mu.size() {
        return Err(Error::InvalidPartition(format!(
            "{} indices for a partition of {}",
            indices.len(),
            mu.size()
        )));
    }
    Ok(build_p(mu).relabel(|a| indices[a - 1]))
}

/// A multiset of `level` disjoint index sets covering `{1, …, |λ|}` with
/// the residue counts required for `λ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UFamily {
    parts: Vec<Vec<usize>>,
    lambda: Partition,
    level: usize,
}

fn canonical(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            let mut p = p.clone();
            p.sort_unstable();
            p
        })
        .collect();
    parts.sort();
    parts
}

fn family_problem(parts: &[Vec<usize>], lambda: &Partition, level: usize) -> Option<String> {
    if parts.len() != level {
        return Some(format!("{} parts, expected {level}", parts.len()));
    }
    let n = lambda.size();
    let mut all: Vec<usize> = parts.concat();
    all.sort_unstable();
    if all != (1..=n).collect::<Vec<_>>() {
        return Some(format!("parts do not split 1..={n} disjointly"));
    }
    let m = lambda.len();
    for j in 0..m {
        let upper = if j == 0 { level + lambda.part(m) } else { lambda.part(j) };
        let Some(want) = upper.checked_sub(lambda.part(j + 1)) else {
            return Some(format!("level {level} below spread"));
        };
        let have = parts.iter().filter(|p| p.len() % m == j).count();
        if have != want {
            return Some(format!("{have} parts of size {j} mod {m}, expected {want}"));
        }
    }
    None
}

/// Checks every defining condition of a U-family for `λ` at `level`.
pub fn validate_u_family(parts: &[Vec<usize>], lambda: &Partition, level: usize) -> bool {
    family_problem(parts, lambda, level).is_none()
}

impl UFamily {
    pub fn new(parts: Vec<Vec<usize>>, lambda: Partition, level: usize) -> Result<Self> {
        if let Some(why) = family_problem(&parts, &lambda, level) {
            return Err(Error::InvalidFamily(why));
        }
        Ok(UFamily {
            parts: canonical(&parts),
            lambda,
            level,
        })
    }

    /// Parts in canonical order: each sorted, empties first.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn level(&self) -> usize {
        self.level
    }
}

impl std::fmt::Display for UFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| {
                let s: Vec<String> = p.iter().map(ToString::to_string).collect();
                format!("{{{}}}", s.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Set partitions of `1..=n` into at most `k` non-empty blocks.
fn set_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(a: usize, n: usize, k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if a > n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(a);
            go(a + 1, n, k, cur, out);
            cur[b].pop();
        }
        if cur.len() < k {
            cur.push(vec![a]);
            go(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// All U-families for `λ` at `level`, in canonical sorted order.
pub fn enumerate_u_families(lambda: &Partition, level: usize) -> Result<Vec<UFamily>> {
    let d = lambda.spread();
    if level < d {
        return Err(Error::LevelTooLow { level, spread: d });
    }
    let mut out: Vec<UFamily> = set_partitions(lambda.size(), level)
        .into_iter()
        .filter_map(|mut parts| {
            parts.resize(level, Vec::new());
            UFamily::new(parts, lambda.clone(), level).ok()
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `Q(U) = Π_j P^{(U_j)}(μ^{(j)})`, kept as its list of factors.
#[derive(Debug, Clone, PartialEq)]
pub struct QProduct {
    lambda: Partition,
    factors: Vec<LocalizationSum>,
}

impl QProduct {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn factors(&self) -> &[LocalizationSum] {
        &self.factors
    }

    pub fn evaluate(&self, z: &ZAssignment) -> Result<YPolynomial<Rational>> {
        self.factors
            .iter()
            .try_fold(YPolynomial::one(), |acc, f| Ok(acc.mul(&f.evaluate(z)?)))
    }

    pub fn to_symbolic(&self) -> YPolynomial<LinearFactorFraction> {
        self.factors
            .iter()
            .fold(YPolynomial::one(), |acc, f| acc.mul(&f.to_symbolic()))
    }
}

pub fn build_q(family: &UFamily) -> Result<QProduct> {
    if let Some(why) = family_problem(family.parts(), family.lambda(), family.level()) {
        return Err(Error::InvalidFamily(why));
    }
    let m = family.lambda().len();
    let factors = family
        .parts()
        .iter()
        .map(|part| build_p_relabeled(part, &mu_of_part(part.len(), m)))
        .collect::<Result<_>>()?;
    Ok(QProduct {
        lambda: family.lambda().clone(),
        factors,
    })
}

/// Every `Q(U)` for `λ` at `level`, evaluated at `z`.
pub fn evaluate_all_q(lambda: &Partition, level: usize, z: &ZAssignment) -> Result<Vec<YPolynomial<Rational>>> {
    enumerate_u_families(lambda, level)?
        .par_iter()
        .map(|u| build_q(u)?.evaluate(z))
        .collect()
}
