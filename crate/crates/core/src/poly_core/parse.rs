//! Text input for polynomials.
//!
//! Two forms are accepted:
//! * a comma-separated list of ascending coefficients, each an integer or a
//!   `p/q` fraction: `-1,0,2` is `2z^2 - 1`;
//! * a sum of terms over `Tk` (Chebyshev), `dTk` (its derivative), `z`, `z^k`
//!   and rational constants, each optionally scaled: `dT3 + dT2`,
//!   `1/2*T4 - 3 z^2 + 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::chebyshev::cheb;
use super::rat_poly::{derivative, RatPoly};
use crate::error::{Error, Result};

fn parse_error(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse { input: input.to_string(), reason: reason.into() }
}

/// Integer or `p/q`, with an optional leading minus sign.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || parse_error(s, "expected an integer or p/q fraction");
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(parse_error(s, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_poly(input: &str) -> Result<RatPoly> {
    let normalized: String = input
        .replace('\u{2212}', "-")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    if normalized.is_empty() {
        return Err(parse_error(input, "empty polynomial"));
    }
    if normalized.contains(',') || !normalized.chars().any(|c| c.is_ascii_alphabetic()) {
        if !normalized.contains(',') && normalized[1..].contains(['+', '-']) {
            return Err(parse_error(input, "constant sums are not supported; use a coefficient list"));
        }
        let coeffs = normalized
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map_err(|_| parse_error(input, "bad coefficient in list"))?;
        return Ok(RatPoly::from_coeffs(coeffs));
    }
    parse_expression(input, &normalized)
}

fn parse_expression(input: &str, s: &str) -> Result<RatPoly> {
    let mut total = RatPoly::zero();
    let mut rest = s;
    let mut first = true;
    while !rest.is_empty() {
        let negative = match rest.as_bytes()[0] {
            b'+' => {
                rest = &rest[1..];
                false
            }
            b'-' => {
                rest = &rest[1..];
                true
            }
            _ if first => false,
            _ => return Err(parse_error(input, "expected + or - between terms")),
        };
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        if term.is_empty() {
            return Err(parse_error(input, "empty term"));
        }
        let mut value = parse_term(input, term)?;
        if negative {
            value = -value;
        }
        total = &total + &value;
        rest = tail;
    }
    Ok(total)
}

fn parse_term(input: &str, term: &str) -> Result<RatPoly> {
    let split = term
        .find(|c: char| c.is_ascii_alphabetic())
        .unwrap_or(term.len());
    let (scalar, atom) = term.split_at(split);
    let scalar = scalar.strip_suffix('*').unwrap_or(scalar);
    let c = if scalar.is_empty() {
        BigRational::one()
    } else {
        parse_rational(scalar).map_err(|_| parse_error(input, format!("bad scalar `{scalar}`")))?
    };
    if atom.is_empty() {
        return Ok(RatPoly::constant(c));
    }
    let index = |digits: &str| -> Result<usize> {
        digits
            .parse::<usize>()
            .map_err(|_| parse_error(input, format!("bad index in `{atom}`")))
    };
    let base = if let Some(k) = atom.strip_prefix("dT") {
        derivative(&cheb(index(k)?))
    } else if let Some(k) = atom.strip_prefix('T') {
        cheb(index(k)?)
    } else if atom == "z" {
        RatPoly::z()
    } else if let Some(k) = atom.strip_prefix("z^") {
        RatPoly::monomial(BigRational::one(), index(k)?)
    } else {
        return Err(parse_error(input, format!("unknown atom `{atom}`")));
    };
    Ok(base.scale(&c))
}
