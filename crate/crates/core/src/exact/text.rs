//! Parser for the text form produced by the `Display` impls of
//! [`YPolynomial`] and [`ZPolynomial`].
//!
//! Terms look like `3/2 * y[1,2]^2 * y[2,1]` and are joined with `+` or `-`.
//! Whitespace is insignificant and a missing coefficient means `1`.

use super::ring::{parse_rational, rat, Rational};
use super::ypoly::{YMonomial, YPolynomial, YVar};
use super::zpoly::{ZMonomial, ZPolynomial};
use crate::error::{Error, Result};

struct Term {
    coeff: Rational,
    y: Vec<(YVar, u32)>,
    z: Vec<(usize, u32)>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Splits at top-level `+`/`-`, keeping the sign with each term.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut negative = false;
    let mut current = String::new();
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(parse_err("unbalanced ']'"));
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if current.is_empty() {
                if !out.is_empty() || negative {
                    // A sign directly after another sign.
                    if ch == '-' {
                        negative = !negative;
                    }
                    continue;
                }
                negative = ch == '-';
                continue;
            }
            out.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
            continue;
        }
        current.push(ch);
    }
    if depth != 0 {
        return Err(parse_err("unbalanced '['"));
    }
    if current.is_empty() {
        return Err(parse_err("dangling sign or empty input"));
    }
    out.push((negative, current));
    Ok(out)
}

fn parse_index(s: &str) -> Result<usize> {
    s.parse().map_err(|_| parse_err(format!("bad index '{s}'")))
}

fn parse_term(negative: bool, s: &str) -> Result<Term> {
    let mut term = Term {
        coeff: rat(if negative { -1 } else { 1 }),
        y: Vec::new(),
        z: Vec::new(),
    };
    for factor in s.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<u32>().map_err(|_| parse_err(format!("bad exponent '{e}'")))?,
            ),
            None => (factor, 1),
        };
        if let Some(inner) = base.strip_prefix("y[").and_then(|r| r.strip_suffix(']')) {
            let (j, a) = inner
                .split_once(',')
                .ok_or_else(|| parse_err(format!("expected y[j,a], got '{base}'")))?;
            let v = YVar::new(parse_index(j)?, parse_index(a)?);
            if v.sup == 0 || v.sub == 0 {
                return Err(parse_err(format!("indices start at 1: '{base}'")));
            }
            term.y.push((v, exp));
        } else if let Some(inner) = base.strip_prefix("z[").and_then(|r| r.strip_suffix(']')) {
            let a = parse_index(inner)?;
            if a == 0 {
                return Err(parse_err(format!("indices start at 1: '{base}'")));
            }
            term.z.push((a, exp));
        } else {
            let c = parse_rational(base).ok_or_else(|| parse_err(format!("bad factor '{factor}'")))?;
            term.coeff *= num_traits::Pow::pow(&c, exp);
        }
    }
    Ok(term)
}

fn parse_all(s: &str) -> Result<Vec<Term>> {
    if s.trim() == "0" {
        return Ok(Vec::new());
    }
    split_terms(s)?
        .into_iter()
        .map(|(neg, t)| parse_term(neg, &t))
        .collect()
}

/// Parses a polynomial in the `y` variables with rational coefficients.
pub fn parse_y_polynomial(s: &str) -> Result<YPolynomial<Rational>> {
    let mut p = YPolynomial::zero();
    for t in parse_all(s)? {
        if !t.z.is_empty() {
            return Err(parse_err("z variables are not allowed here"));
        }
        p.add_term(YMonomial::from_factors(t.y), t.coeff);
    }
    Ok(p)
}

/// Parses a polynomial in the `z` variables with rational coefficients.
pub fn parse_z_polynomial(s: &str) -> Result<ZPolynomial> {
    let mut p = ZPolynomial::zero();
    for t in parse_all(s)? {
        if !t.y.is_empty() {
            return Err(parse_err("y variables are not allowed here"));
        }
        let top = t.z.iter().map(|&(a, _)| a).max().unwrap_or(0);
        let mut exps = vec![0u32; top];
        for (a, e) in t.z {
            exps[a - 1] += e;
        }
        p.add_term(ZMonomial::from_exponents(exps), t.coeff);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::super::ring::ratio;
    use super::*;

    #[test]
    fn round_trip_y() {
        let p = YPolynomial::var(1, 1)
            .mul(&YPolynomial::var(2, 2))
            .scale(&ratio(-3, 2))
            .add(&YPolynomial::var(1, 2).mul(&YPolynomial::var(1, 2)))
            .add(&YPolynomial::constant(rat(7)));
        let text = p.to_string();
        assert_eq!(parse_y_polynomial(&text).unwrap(), p);
    }

    #[test]
    fn round_trip_z() {
        let p = ZPolynomial::linear(1, 3).mul(&ZPolynomial::var(2)).scale(&ratio(5, 3));
        assert_eq!(parse_z_polynomial(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn lenient_input() {
        let p = parse_y_polynomial("y[1,1] - 2*y[2,1]^2 +1/2").unwrap();
        assert_eq!(p.coefficient(&YMonomial::var(YVar::new(1, 1))), rat(1));
        assert_eq!(p.len(), 3);
        assert!(parse_y_polynomial("0").unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_y_polynomial("y[1]").is_err());
        assert!(parse_y_polynomial("1 + ").is_err());
        assert!(parse_y_polynomial("y[1,1] * z[2]").is_err());
        assert!(parse_y_polynomial("y[0,1]").is_err());
        assert!(parse_y_polynomial("q").is_err());
    }
}
