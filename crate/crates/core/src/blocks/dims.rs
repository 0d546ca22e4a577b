use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::{kernel_dimension, Rational, Ring, YMonomial, YPolynomial, YVar};
use crate::localization::{enumerate_partitionings, Partition, ZAssignment};
use crate::operators::{apply_e, apply_ez_power};

/// `dim CB^level(a, b)` for `sl_2` by the Pascal-type recursion.
pub fn cb_dim_sl2(lambda: &Partition, level: usize) -> Result<usize> {
    if lambda.len() != 2 {
        return Err(Error::InvalidPartition(format!("{lambda} needs exactly two parts")));
    }
    let d = lambda.spread();
    if level < d {
        return Err(Error::LevelTooLow { level, spread: d });
    }
    let mut memo = HashMap::new();
    Ok(pascal(lambda.part(1), lambda.part(2), level, &mut memo))
}

fn pascal(a: usize, b: usize, level: usize, memo: &mut HashMap<(usize, usize), usize>) -> usize {
    if a < b || a - b > level {
        return 0;
    }
    if b == 0 {
        return 1;
    }
    if let Some(&v) = memo.get(&(a, b)) {
        return v;
    }
    let v = if a == b {
        pascal(a, a - 1, level, memo)
    } else if a - b == level {
        pascal(a - 1, b, level, memo)
    } else {
        pascal(a - 1, b, level, memo) + pascal(a, b - 1, level, memo)
    };
    memo.insert((a, b), v);
    v
}

/// Rows of the table: for each size, the two-part partitions `(a, b)` with
/// `a - b ≤ level` and their dimensions.
pub fn pascal_table(level: usize, max_size: usize) -> Vec<Vec<(Partition, usize)>> {
    (0..=max_size)
        .map(|n| {
            (0..=n / 2)
                .rev()
                .map(|b| (n - b, b))
                .filter(|&(a, b)| a - b <= level)
                .map(|(a, b)| {
                    let l = Partition::new(vec![a, b]).expect("a ≥ b");
                    let v = cb_dim_sl2(&l, level).expect("level covers spread");
                    (l, v)
                })
                .collect()
        })
        .collect()
}

/// `dim CB^level_z(λ)` as the common kernel, on the weight-`λ` subspace,
/// of every `e_{i,j}` (`i < j`) and of `(e^z_{1,m})^{level - d(λ) + 1}`.
pub fn cb_dim_generic(lambda: &Partition, level: usize, z: &ZAssignment) -> Result<usize> {
    let d = lambda.spread();
    if level < d {
        return Err(Error::LevelTooLow { level, spread: d });
    }
    let n = lambda.size();
    if let Some((a, b)) = z.first_collision().filter(|&(_, b)| b <= n) {
        return Err(Error::ZeroDenominator { a, b });
    }
    let m = lambda.len();
    let basis: Vec<YMonomial> = enumerate_partitionings(lambda)
        .into_iter()
        .map(|p| {
            YMonomial::product(
                p.blocks()
                    .iter()
                    .enumerate()
                    .flat_map(|(j, block)| block.iter().map(move |&a| YVar::new(j + 1, a))),
            )
        })
        .collect();
    let power = level - d + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut row_of: HashMap<(usize, YMonomial), usize> = HashMap::new();
    let mut record = |op: usize, col: usize, image: &YPolynomial<Rational>, rows: &mut Vec<Vec<Rational>>| {
        for (mono, c) in image.terms() {
            let r = *row_of.entry((op, mono.clone())).or_insert_with(|| {
                rows.push(vec![<Rational as Ring>::zero(); basis.len()]);
                rows.len() - 1
            });
            rows[r][col] = rows[r][col].add_ref(c);
        }
    };
    for (col, mono) in basis.iter().enumerate() {
        let v = YPolynomial::monomial(mono.clone(), <Rational as Ring>::one());
        let mut op = 0;
        for i in 1..=m {
            for j in i + 1..=m {
                record(op, col, &apply_e(i, j, &v), &mut rows);
                op += 1;
            }
        }
        record(op, col, &apply_ez_power(1, m, power, &v, z)?, &mut rows);
    }
    Ok(kernel_dimension(&rows, basis.len()))
}
