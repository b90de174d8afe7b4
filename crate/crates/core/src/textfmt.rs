//! Parsers and printers for the plain-text seed-data formats: cyclotomic
//! coefficients, polynomials, lattice vectors and small labelled tables.
//!
//! Coefficients are written `c0+c1*z+c2*z^2+c3*z^3` with rational `ci`
//! (higher powers of `z` are accepted and reduced). Polynomials are sums of
//! terms `coef*var^e*var^e...`, with parenthesised coefficients.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::cyclotomic::CycNum;
use crate::poly::{LaurentPoly, Monomial};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub reason: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "parse error in `{}`: {}", self.input, self.reason)
    }
}

fn err(input: &str, reason: impl Into<String>) -> ParseError {
    ParseError {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Parses a rational like `-3`, `5/2`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| err(s, "bad integer numerator"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| err(s, "bad integer denominator"))?;
    if d == BigInt::from(0) {
        return Err(err(s, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Parses a cyclotomic number written in powers of `z`, e.g. `2-4*z^2`,
/// `z^3`, `-1/2+1/2*z`.
pub fn parse_cycnum(s: &str) -> Result<CycNum, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(err(s, "empty coefficient"));
    }
    let mut acc = CycNum::zero();
    for (sign, chunk) in split_signed_terms(s) {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            return Err(err(s, "dangling sign"));
        }
        // Each chunk is rational, `z^k`, or `rational*z^k`.
        let (coef_str, zpow) = match chunk.split_once('*') {
            Some((c, rest)) => (c.trim(), Some(rest.trim())),
            None => {
                if chunk.starts_with('z') {
                    ("1", Some(chunk))
                } else {
                    (chunk, None)
                }
            }
        };
        let coef = parse_rational(coef_str)?;
        let mut term = CycNum::from_rational(coef);
        if let Some(zp) = zpow {
            let k = if zp == "z" {
                1
            } else {
                let Some(rest) = zp.strip_prefix("z^") else {
                    return Err(err(s, format!("expected power of z, found `{zp}`")));
                };
                rest.parse::<i64>()
                    .map_err(|_| err(s, "bad exponent on z"))?
            };
            term = term * CycNum::zeta_pow(k);
        }
        if sign < 0 {
            term = -term;
        }
        acc += &term;
    }
    Ok(acc)
}

/// Splits `a+b-c` into signed chunks at top level (no parentheses expected).
fn split_signed_terms(s: &str) -> Vec<(i32, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut sign = 1;
    let mut prev_is_op = true;
    for ch in s.chars() {
        match ch {
            '+' | '-' if !prev_is_op => {
                out.push((sign, cur.clone()));
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
                prev_is_op = true;
            }
            '-' if prev_is_op && cur.is_empty() => {
                sign = -sign;
            }
            '+' if prev_is_op && cur.is_empty() => {}
            _ => {
                cur.push(ch);
                prev_is_op = matches!(ch, '^' | '/');
            }
        }
    }
    out.push((sign, cur));
    out
}

/// Parses a Laurent polynomial. Terms are separated by top-level `+`/`-`;
/// factors within a term by `*`; cyclotomic coefficients are parenthesised;
/// variables are alphanumeric names with optional integer `^` exponents.
pub fn parse_poly(s: &str) -> Result<LaurentPoly, ParseError> {
    let s = s.trim();
    let mut poly = LaurentPoly::zero();
    for (sign, term) in split_top_level_terms(s)? {
        let (m, mut c) = parse_term(&term).map_err(|e| err(s, e.reason))?;
        if sign < 0 {
            c = -c;
        }
        poly.add_term(m, c);
    }
    Ok(poly)
}

fn split_top_level_terms(s: &str) -> Result<Vec<(i32, String)>, ParseError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut sign = 1;
    let mut expect_term = true;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
                expect_term = false;
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err(s, "unbalanced parentheses"));
                }
                cur.push(ch);
                expect_term = false;
            }
            '+' | '-' if depth == 0 && !expect_term && !ends_with_exp(&cur) => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                }
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
                expect_term = true;
            }
            '-' if depth == 0 && expect_term && cur.trim().is_empty() => {
                sign = -sign;
            }
            c if c.is_whitespace() => {}
            _ => {
                cur.push(ch);
                expect_term = false;
            }
        }
    }
    if depth != 0 {
        return Err(err(s, "unbalanced parentheses"));
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    Ok(out)
}

fn ends_with_exp(cur: &str) -> bool {
    cur.trim_end().ends_with('^')
}

fn parse_term(term: &str) -> Result<(Monomial, CycNum), ParseError> {
    let mut coef = CycNum::one();
    let mut mono = Monomial::one();
    for factor in split_factors(term)? {
        let f = factor.trim();
        if f.is_empty() {
            continue;
        }
        if let Some(inner) = f.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| err(term, "bad parenthesised coefficient"))?;
            coef = &coef * &parse_cycnum(inner)?;
        } else if f.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            coef = &coef * &CycNum::from_rational(parse_rational(f)?);
        } else {
            // variable with optional exponent
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>().map_err(|_| err(term, "bad exponent"))?,
                ),
                None => (f, 1),
            };
            if name == "z" {
                coef = &coef * &CycNum::zeta_pow(exp);
                continue;
            }
            if !name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_')
                || name.is_empty()
            {
                return Err(err(term, format!("bad variable name `{name}`")));
            }
            mono = mono.mul(&Monomial::var(name, exp));
        }
    }
    Ok((mono, coef))
}

/// Splits a term on `*` outside parentheses.
fn split_factors(s: &str) -> Result<Vec<String>, ParseError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '*' if depth == 0 => {
                out.push(cur.clone());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(err(s, "unbalanced parentheses in term"));
    }
    out.push(cur);
    Ok(out)
}

/// Parses a whitespace-separated integer vector.
pub fn parse_ivec(s: &str) -> Result<Vec<i64>, ParseError> {
    s.split_whitespace()
        .map(|tok| tok.parse::<i64>().map_err(|_| err(s, "bad integer")))
        .collect()
}
