//! Parsing of the canonical element text printed by the `Display` impls.
//!
//! Accepted forms: `"a/b + c/e*i*sqrt(d)"` for field elements (also `i` for
//! `i*sqrt(1)` and `sqrt(-d)` for `i*sqrt(d)`), `"p + q*sqrt(d)"` for the
//! `t` coordinate, and `"(z; t; u)"` or `"(z; t; u)*sigma"` for isometries.
//! When no `d` is supplied it is inferred from the radicals in the text.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::heis::{HeisError, HeisIsom};
use crate::ring::{ImagQuad, Rat, RealQuad, RingError, SquarefreeD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error in {text:?}: {msg}")]
    Syntax { text: String, msg: String },
    #[error("radicals disagree on d: sqrt({0}) and sqrt({1})")]
    ConflictingD(u64, u64),
    #[error("cannot infer d from {0:?}; pass d explicitly")]
    UnknownD(String),
    #[error("{0:?} is not an element of the expected field")]
    WrongField(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Heis(#[from] HeisError),
}

fn syntax(text: &str, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        text: text.to_string(),
        msg: msg.into(),
    }
}

/// One summand: `coef`, times `i` if `imag`, times `sqrt(radicand)` if set.
#[derive(Debug, Clone)]
struct Term {
    coef: Rat,
    imag: bool,
    radicand: Option<u64>,
}

fn parse_terms(text: &str) -> Result<Vec<Term>, ParseError> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(syntax(text, "empty value"));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    while pos < s.len() {
        let mut neg = false;
        while pos < s.len() && (s[pos] == '+' || s[pos] == '-') {
            neg ^= s[pos] == '-';
            pos += 1;
        }
        let mut term = Term {
            coef: Rat::one(),
            imag: false,
            radicand: None,
        };
        loop {
            parse_factor(text, &s, &mut pos, &mut term)?;
            if pos < s.len() && s[pos] == '*' {
                pos += 1;
            } else {
                break;
            }
        }
        if neg {
            term.coef = -term.coef;
        }
        terms.push(term);
        if pos < s.len() && s[pos] != '+' && s[pos] != '-' {
            return Err(syntax(text, format!("unexpected character {:?}", s[pos])));
        }
    }
    Ok(terms)
}

fn parse_factor(text: &str, s: &[char], pos: &mut usize, term: &mut Term) -> Result<(), ParseError> {
    if *pos >= s.len() {
        return Err(syntax(text, "unexpected end of input"));
    }
    let rest: String = s[*pos..].iter().collect();
    if rest.starts_with("sqrt(") {
        *pos += 5;
        let neg = *pos < s.len() && s[*pos] == '-';
        if neg {
            *pos += 1;
        }
        let n = read_digits(text, s, pos)?;
        if *pos >= s.len() || s[*pos] != ')' {
            return Err(syntax(text, "unclosed sqrt("));
        }
        *pos += 1;
        let n: u64 = n
            .try_into()
            .map_err(|_| syntax(text, "radicand out of range"))?;
        if neg {
            set_imag(text, term)?;
        }
        if term.radicand.is_some() {
            return Err(syntax(text, "more than one sqrt in a term"));
        }
        SquarefreeD::new(n)?;
        term.radicand = Some(n);
        return Ok(());
    }
    if s[*pos] == 'i' {
        *pos += 1;
        return set_imag(text, term);
    }
    let num = read_digits(text, s, pos)?;
    let mut r = Rat::from_integer(num);
    if *pos < s.len() && s[*pos] == '/' {
        *pos += 1;
        let den = read_digits(text, s, pos)?;
        if den.is_zero() {
            return Err(syntax(text, "zero denominator"));
        }
        r = Rat::new(r.to_integer(), den);
    }
    term.coef = &term.coef * &r;
    Ok(())
}

fn set_imag(text: &str, term: &mut Term) -> Result<(), ParseError> {
    if term.imag {
        return Err(syntax(text, "i appears twice in a term"));
    }
    term.imag = true;
    Ok(())
}

fn read_digits(text: &str, s: &[char], pos: &mut usize) -> Result<BigInt, ParseError> {
    let start = *pos;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        let found = s.get(start).map_or("end of input".to_string(), |c| format!("{c:?}"));
        return Err(syntax(text, format!("expected a number, found {found}")));
    }
    let digits: String = s[start..*pos].iter().collect();
    Ok(digits.parse().expect("ascii digits"))
}

/// The `d` a term pins down, if any. A bare `i` pins `d = 1`; a real
/// `sqrt(n)` pins `d = n`.
fn term_d(t: &Term) -> Option<u64> {
    match (t.imag, t.radicand) {
        (_, Some(n)) if n != 1 => Some(n),
        (true, _) => Some(1),
        _ => None,
    }
}

fn resolve_d(
    text: &str,
    groups: &[&[Term]],
    given: Option<SquarefreeD>,
) -> Result<SquarefreeD, ParseError> {
    let mut found: Option<u64> = given.map(SquarefreeD::get);
    for t in groups.iter().flat_map(|g| g.iter()) {
        if let Some(n) = term_d(t) {
            match found {
                Some(f) if f != n => return Err(ParseError::ConflictingD(f, n)),
                _ => found = Some(n),
            }
        }
    }
    match found {
        Some(n) => Ok(SquarefreeD::new(n)?),
        None => Err(ParseError::UnknownD(text.to_string())),
    }
}

fn imag_from_terms(text: &str, d: SquarefreeD, terms: &[Term]) -> Result<ImagQuad, ParseError> {
    let mut a = Rat::zero();
    let mut b = Rat::zero();
    for t in terms {
        let n = t.radicand.unwrap_or(1);
        match (t.imag, n) {
            (false, 1) => a += &t.coef,
            (true, n) if n == d.get() => b += &t.coef,
            _ => return Err(ParseError::WrongField(text.to_string())),
        }
    }
    Ok(ImagQuad::new(d, a, b))
}

fn real_from_terms(text: &str, d: SquarefreeD, terms: &[Term]) -> Result<RealQuad, ParseError> {
    let mut p = Rat::zero();
    let mut q = Rat::zero();
    for t in terms {
        if t.imag {
            return Err(ParseError::WrongField(text.to_string()));
        }
        match t.radicand {
            None | Some(1) => p += &t.coef,
            Some(n) if n == d.get() => q += &t.coef,
            Some(_) => return Err(ParseError::WrongField(text.to_string())),
        }
    }
    Ok(RealQuad::new(d, p, q))
}

/// Parses an element of `E_d`.
pub fn parse_imag(text: &str, d: Option<SquarefreeD>) -> Result<ImagQuad, ParseError> {
    let terms = parse_terms(text)?;
    let d = resolve_d(text, &[&terms], d)?;
    imag_from_terms(text, d, &terms)
}

/// Parses a `t` coordinate `p + q·sqrt(d)`.
pub fn parse_real(text: &str, d: Option<SquarefreeD>) -> Result<RealQuad, ParseError> {
    let terms = parse_terms(text)?;
    let d = resolve_d(text, &[&terms], d)?;
    real_from_terms(text, d, &terms)
}

/// Parses `(z; t; u)` or `(z; t; u)*sigma`.
pub fn parse_heis(text: &str, d: Option<SquarefreeD>) -> Result<HeisIsom, ParseError> {
    let trimmed = text.trim();
    let (body, conj) = match trimmed.strip_suffix("*sigma") {
        Some(b) => (b.trim_end(), true),
        None => (trimmed, false),
    };
    let inner = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| syntax(text, "expected (z; t; u)"))?;
    let parts: Vec<&str> = inner.split(';').collect();
    if parts.len() != 3 {
        return Err(syntax(text, "expected three ';'-separated coordinates"));
    }
    let z = parse_terms(parts[0])?;
    let t = parse_terms(parts[1])?;
    let u = parse_terms(parts[2])?;
    let d = resolve_d(text, &[&z, &t, &u], d)?;
    let z = imag_from_terms(parts[0], d, &z)?;
    let t = real_from_terms(parts[1], d, &t)?;
    let u = imag_from_terms(parts[2], d, &u)?;
    Ok(HeisIsom::new(z, t, u, conj)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    fn d(n: u64) -> SquarefreeD {
        SquarefreeD::new(n).unwrap()
    }

    #[test]
    fn field_elements_round_trip() {
        let samples = [
            ImagQuad::new(d(3), rat(1, 2), rat(-3, 4)),
            ImagQuad::from_ints(d(5), 0, 1),
            ImagQuad::from_ints(d(5), 0, -2),
            ImagQuad::from_ints(d(2), -7, 0),
            ImagQuad::zero(d(11)),
            ImagQuad::from_ints(d(1), 3, 1),
        ];
        for x in samples {
            let text = x.to_string();
            assert_eq!(parse_imag(&text, Some(x.d())).unwrap(), x, "{text}");
        }
    }

    #[test]
    fn alternative_spellings() {
        assert_eq!(parse_imag("i", None).unwrap(), ImagQuad::i_sqrt_d(d(1)));
        assert_eq!(parse_imag("sqrt(-3)", None).unwrap(), ImagQuad::i_sqrt_d(d(3)));
        assert_eq!(
            parse_imag("-1/2+1/2*sqrt(-3)", None).unwrap(),
            ImagQuad::new(d(3), rat(-1, 2), rat(1, 2))
        );
        assert_eq!(parse_real("2*sqrt(3)", None).unwrap(), RealQuad::sqrt_d_multiple(d(3), int(2)));
    }

    #[test]
    fn infers_or_demands_d() {
        assert!(matches!(parse_imag("1/2", None), Err(ParseError::UnknownD(_))));
        assert!(matches!(
            parse_heis("(i*sqrt(2); sqrt(3); 1)", None),
            Err(ParseError::ConflictingD(2, 3))
        ));
        let g = parse_heis("(0; 2*sqrt(3); 1)", None).unwrap();
        assert_eq!(g.d(), d(3));
        let g = parse_heis("(0; 4; i)", None).unwrap();
        assert_eq!(g.d(), d(1));
        let g = parse_heis("(1; 0; 1)", Some(d(1))).unwrap();
        assert_eq!(g.to_string(), "(1; 0; 1)");
    }

    #[test]
    fn isometries_round_trip() {
        let g = HeisIsom::antiholomorphic(
            ImagQuad::new(d(3), rat(1, 2), rat(-1, 2)),
            RealQuad::sqrt_d_multiple(d(3), int(4)),
            ImagQuad::new(d(3), rat(-1, 2), rat(1, 2)),
        )
        .unwrap();
        assert_eq!(parse_heis(&g.to_string(), None).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_imag("", Some(d(2))).is_err());
        assert!(parse_imag("1 +", Some(d(2))).is_err());
        assert!(parse_imag("sqrt(2)", Some(d(2))).is_err());
        assert!(parse_real("i*sqrt(2)", Some(d(2))).is_err());
        assert!(parse_imag("1/0", Some(d(2))).is_err());
        assert!(parse_imag("sqrt(4)", None).is_err());
        assert!(parse_heis("(0; 0)", Some(d(2))).is_err());
        assert!(matches!(
            parse_heis("(0; 0; 2)", Some(d(2))),
            Err(ParseError::Heis(HeisError::NotUnitModulus(_)))
        ));
    }
}
