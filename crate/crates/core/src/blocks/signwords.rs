use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{Rational, YPolynomial};
use crate::localization::{Partition, ZAssignment};

use super::families::{build_q, UFamily};

/// A word in `+` and `-`; `+` sorts before `-`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignWord(Vec<bool>);

impl SignWord {
    /// `true` marks a minus sign.
    pub fn from_minus_flags(flags: Vec<bool>) -> Self {
        SignWord(flags)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().map(|&minus| if minus { -1 } else { 1 })
    }

    /// Checks sign counts against `λ` and the prefix-sum window `[0, level]`.
    pub fn validate(&self, lambda: &Partition, level: usize) -> Result<()> {
        require_two_parts(lambda)?;
        let minus = self.0.iter().filter(|&&m| m).count();
        let plus = self.0.len() - minus;
        if (plus, minus) != (lambda.part(1), lambda.part(2)) {
            return Err(Error::InvalidWord(format!(
                "{self} has {plus} plus and {minus} minus signs, {lambda} needs {} and {}",
                lambda.part(1),
                lambda.part(2)
            )));
        }
        let mut s = 0i64;
        for (i, step) in self.signs().enumerate() {
            s += step;
            if s < 0 || s > level as i64 {
                return Err(Error::InvalidWord(format!(
                    "{self}: prefix of length {} sums to {s}",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &minus in &self.0 {
            f.write_str(if minus { "-" } else { "+" })?;
        }
        Ok(())
    }
}

impl FromStr for SignWord {
    type Err = Error;

    /// Accepts `+`, `-` and `−`.
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(false),
                '-' | '−' => Ok(true),
                other => Err(Error::InvalidWord(format!("unexpected character '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignWord)
    }
}

fn require_two_parts(lambda: &Partition) -> Result<()> {
    if lambda.len() != 2 {
        return Err(Error::InvalidPartition(format!("{lambda} needs exactly two parts")));
    }
    Ok(())
}

/// Every admissible word for `λ = (a, b)` at `level`, in lexicographic order.
pub fn enumerate_sign_words(lambda: &Partition, level: usize) -> Result<Vec<SignWord>> {
    require_two_parts(lambda)?;
    let d = lambda.spread();
    if level < d {
        return Err(Error::LevelTooLow { level, spread: d });
    }
    fn go(plus: usize, minus: usize, s: usize, level: usize, cur: &mut Vec<bool>, out: &mut Vec<SignWord>) {
        if plus == 0 && minus == 0 {
            out.push(SignWord(cur.clone()));
            return;
        }
        if plus > 0 && s < level {
            cur.push(false);
            go(plus - 1, minus, s + 1, level, cur, out);
            cur.pop();
        }
        if minus > 0 && s > 0 {
            cur.push(true);
            go(plus, minus - 1, s - 1, level, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda.part(1), lambda.part(2), 0, level, &mut Vec::new(), &mut out);
    Ok(out)
}

/// The multiset `S_w`: start from `level` empty parts; at step `i` a `+`
/// puts `i` into each distinct even part, a `-` into each odd part.
pub fn sign_word_families(w: &SignWord, lambda: &Partition, level: usize) -> Result<Vec<UFamily>> {
    w.validate(lambda, level)?;
    let mut current: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); level]];
    for (i, minus) in w.0.iter().enumerate() {
        let want_odd = *minus;
        let mut next = Vec::new();
        for fam in &current {
            let mut used: Vec<&Vec<usize>> = Vec::new();
            for (k, part) in fam.iter().enumerate() {
                if (part.len() % 2 == 1) != want_odd || used.contains(&part) {
                    continue;
                }
                used.push(part);
                let mut grown = fam.clone();
                grown[k].push(i + 1);
                next.push(grown);
            }
        }
        current = next;
    }
    current
        .into_iter()
        .map(|parts| UFamily::new(parts, lambda.clone(), level))
        .collect()
}

/// `Q_w = Σ_{U ∈ S_w} Q(U)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QwSum {
    word: SignWord,
    families: Vec<UFamily>,
}

impl QwSum {
    pub fn word(&self) -> &SignWord {
        &self.word
    }

    pub fn families(&self) -> &[UFamily] {
        &self.families
    }

    pub fn evaluate(&self, z: &ZAssignment) -> Result<YPolynomial<Rational>> {
        self.families
            .iter()
            .try_fold(YPolynomial::zero(), |acc, u| Ok(acc.add(&build_q(u)?.evaluate(z)?)))
    }
}

pub fn build_qw(w: &SignWord, lambda: &Partition, level: usize) -> Result<QwSum> {
    Ok(QwSum {
        word: w.clone(),
        families: sign_word_families(w, lambda, level)?,
    })
}
