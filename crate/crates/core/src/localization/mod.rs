//! Localization sums, divided differences and the rational-function
//! identities behind `P_z(λ)`.

mod divided;
mod identities;
mod sum;
mod zassign;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use divided::{
    build_p_concise, divided_difference, generalized_divided_difference, omega_lambda, Alphabets, Permutation,
};
pub use identities::{check_flag_vanishing, check_lagrange, flag_threshold, random_polynomial, random_symmetric_poly};
pub use sum::{build_p, resultant_fraction, resultant_value, LocalizationSum, LocalizationTerm};
pub use zassign::{random_distinct_rationals, seeded_rng, ZAssignment};

/// A weakly decreasing tuple `λ_1 ≥ … ≥ λ_m ≥ 0` with `m ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `λ_j` for `1 ≤ j ≤ m`, and `0` beyond.
    pub fn part(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.parts.get(j - 1).copied().unwrap_or(0)
    }

    /// Number of parts `m`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `d(λ) = λ_1 - λ_m`.
    pub fn spread(&self) -> usize {
        self.parts[0] - self.parts[self.parts.len() - 1]
    }

    /// All partitions with exactly `m` parts (zeros allowed) of the given size,
    /// in decreasing lexicographic order.
    pub fn all(m: usize, size: usize) -> Vec<Partition> {
        fn go(m: usize, left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if cur.len() == m {
                if left == 0 {
                    out.push(Partition { parts: cur.clone() });
                }
                return;
            }
            let slots = m - cur.len();
            for p in (0..=cap.min(left)).rev() {
                if p * slots < left {
                    break;
                }
                cur.push(p);
                go(m, left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if m > 0 {
            go(m, size, size, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Starting index of block `j` (1-based) in the standard labelling
    /// where block 1 holds `1..=λ_1`, block 2 the next `λ_2`, and so on.
    pub fn block_start(&self, j: usize) -> usize {
        1 + self.parts[..j - 1].iter().sum::<usize>()
    }

    /// Index ranges of the blocks in the standard labelling.
    pub fn standard_blocks(&self) -> Vec<Vec<usize>> {
        (1..=self.len())
            .map(|j| {
                let s = self.block_start(j);
                (s..s + self.part(j)).collect()
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `a,b,c`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// An ordered tuple of disjoint index sets `(I_1, …, I_m)`, each sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexedPartitioning {
    blocks: Vec<Vec<usize>>,
}

impl IndexedPartitioning {
    /// Checks disjointness; each block is sorted on the way in.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for b in &mut blocks {
            b.sort_unstable();
            for &a in b.iter() {
                if !seen.insert(a) {
                    return Err(Error::DuplicateIndex(a));
                }
            }
        }
        Ok(IndexedPartitioning { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Block number (1-based) containing `a`.
    pub fn block_of(&self, a: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&a)).map(|j| j + 1)
    }
}

/// All `k`-element subsets of `items`, in lexicographic order of positions.
pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            if i >= items.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Every ordered splitting of `indices` into blocks of the given sizes.
pub fn partitionings_of(indices: &[usize], sizes: &[usize]) -> Vec<IndexedPartitioning> {
    fn go(rest: &[usize], sizes: &[usize], cur: &mut Vec<Vec<usize>>, out: &mut Vec<IndexedPartitioning>) {
        let Some((&k, tail)) = sizes.split_first() else {
            out.push(IndexedPartitioning { blocks: cur.clone() });
            return;
        };
        for chosen in combinations(rest, k) {
            let remaining: Vec<usize> = rest.iter().copied().filter(|a| !chosen.contains(a)).collect();
            cur.push(chosen);
            go(&remaining, tail, cur, out);
            cur.pop();
        }
    }
    assert_eq!(indices.len(), sizes.iter().sum::<usize>(), "block sizes must cover the indices");
    let mut out = Vec::new();
    go(indices, sizes, &mut Vec::new(), &mut out);
    out
}

/// All partitionings `(I_1, …, I_m)` of `{1, …, |λ|}` with `|I_j| = λ_j`.
pub fn enumerate_partitionings(lambda: &Partition) -> Vec<IndexedPartitioning> {
    let indices: Vec<usize> = (1..=lambda.size()).collect();
    partitionings_of(&indices, lambda.parts())
}
