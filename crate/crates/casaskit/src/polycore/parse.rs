//! Text formats for polynomials, rationals, and node lists.
//!
//! Two polynomial forms are accepted:
//!
//! * expression form: `x^4 - 3*x^2 + 2/3*x + 1`, single variable `x`,
//!   integer or `p/q` rational coefficients;
//! * coefficient list: `poly:[1, 0, -3, 2, 0]`, leading coefficient first;
//!   entries may be rationals or Gaussian pairs `(re,im)`.
//!
//! Node lists use `nodes:[0, 1, 5/2]` or `nodes:[(0,1), (2,-1)]`.
//!
//! `format_polynomial` prints the canonical form (expression form when all
//! coefficients are real, coefficient list otherwise); parsing the canonical
//! form reproduces the value exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gaussian::{format_rational, GaussianRational, Rational};
use super::poly::Polynomial;
use super::ParseError;

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == b => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected '{}'", b as char))),
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError { position: self.pos, message }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.bytes.len()
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut end = self.pos;
        if end < self.bytes.len() && (self.bytes[end] == b'-' || self.bytes[end] == b'+') {
            end += 1;
        }
        let digits_start = end;
        while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits_start {
            return Err(self.error("expected an integer".into()));
        }
        self.pos = end;
        self.src[start..end]
            .parse::<BigInt>()
            .map_err(|e| ParseError { position: start, message: e.to_string() })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.error("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// A scalar: rational or Gaussian pair `(re,im)`.
    fn scalar(&mut self) -> Result<GaussianRational, ParseError> {
        if self.eat(b'(') {
            let re = self.rational()?;
            self.expect(b',')?;
            let im = self.rational()?;
            self.expect(b')')?;
            Ok(GaussianRational::new(re, im))
        } else {
            Ok(GaussianRational::from_rational(self.rational()?))
        }
    }

    fn scalar_list(&mut self) -> Result<Vec<GaussianRational>, ParseError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            out.push(self.scalar()?);
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }
}

/// Parses either polynomial form. Errors carry the byte offset.
pub fn parse_polynomial(input: &str) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor::new(input);
    if cur.eat_str("poly:") {
        let coeffs = cur.scalar_list()?;
        if !cur.at_end() {
            return Err(cur.error("trailing input after coefficient list".into()));
        }
        if coeffs.is_empty() {
            return Err(cur.error("empty coefficient list".into()));
        }
        return Ok(Polynomial::from_descending(coeffs));
    }
    parse_expression(&mut cur)
}

fn parse_expression(cur: &mut Cursor<'_>) -> Result<Polynomial, ParseError> {
    // ascending power accumulator
    let mut acc: Vec<Rational> = Vec::new();
    let mut saw_term = false;
    loop {
        if cur.at_end() {
            break;
        }
        let negative = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') {
            false
        } else if saw_term {
            return Err(cur.error("expected '+' or '-' between terms".into()));
        } else {
            false
        };
        let (coeff, power) = parse_term(cur)?;
        let coeff = if negative { -coeff } else { coeff };
        if acc.len() <= power {
            acc.resize(power + 1, Rational::zero());
        }
        acc[power] = &acc[power] + &coeff;
        saw_term = true;
    }
    if !saw_term {
        return Err(cur.error("empty polynomial expression".into()));
    }
    acc.reverse();
    Ok(Polynomial::from_descending(
        acc.into_iter().map(GaussianRational::from_rational).collect(),
    ))
}

/// One term: `[coeff][*]x[^k]`, `x[^k]`, or a bare constant.
fn parse_term(cur: &mut Cursor<'_>) -> Result<(Rational, usize), ParseError> {
    let coeff = match cur.peek() {
        Some(b'x') => Rational::one(),
        Some(c) if c.is_ascii_digit() => {
            let q = cur.rational()?;
            cur.eat(b'*');
            q
        }
        _ => return Err(cur.error("expected a coefficient or 'x'".into())),
    };
    if cur.eat(b'x') {
        if cur.eat(b'^') {
            let e = cur.integer()?;
            if e.is_negative() {
                return Err(cur.error("negative exponent".into()));
            }
            let power: usize = e
                .try_into()
                .map_err(|_| cur.error("exponent too large".into()))?;
            Ok((coeff, power))
        } else {
            Ok((coeff, 1))
        }
    } else {
        Ok((coeff, 0))
    }
}

/// Parses `nodes:[...]`; bare `[...]` is accepted too.
pub fn parse_nodes(input: &str) -> Result<Vec<GaussianRational>, ParseError> {
    let mut cur = Cursor::new(input);
    cur.eat_str("nodes:");
    let nodes = cur.scalar_list()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after node list".into()));
    }
    if nodes.is_empty() {
        return Err(cur.error("empty node list".into()));
    }
    Ok(nodes)
}

/// Parses one scalar (rational or `(re,im)` pair).
pub fn parse_scalar(input: &str) -> Result<GaussianRational, ParseError> {
    let mut cur = Cursor::new(input);
    let v = cur.scalar()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after scalar".into()));
    }
    Ok(v)
}

/// Canonical text form: expression form for real coefficients, coefficient
/// list otherwise.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    if !p.has_real_coeffs() {
        let entries: Vec<String> =
            p.coeffs_descending().iter().map(|c| c.to_text()).collect();
        return format!("poly:[{}]", entries.join(", "));
    }
    let n = p.degree();
    let mut out = String::new();
    for (i, c) in p.coeffs_descending().iter().enumerate() {
        let q = c.as_rational().expect("real coefficients");
        if q.is_zero() {
            continue;
        }
        let power = n - i;
        let mag = q.abs();
        if out.is_empty() {
            if q.is_negative() {
                out.push('-');
            }
        } else if q.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_txt = format_rational(&mag);
        match power {
            0 => out.push_str(&coeff_txt),
            _ => {
                if !mag.is_one() {
                    out.push_str(&coeff_txt);
                    out.push('*');
                }
                out.push('x');
                if power > 1 {
                    out.push_str(&format!("^{}", power));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical node-list form.
pub fn format_nodes(nodes: &[GaussianRational]) -> String {
    let entries: Vec<String> = nodes.iter().map(|z| z.to_text()).collect();
    format!("nodes:[{}]", entries.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_and_list_forms_agree() {
        let a = parse_polynomial("x^4 - 3*x^2 + 2*x").unwrap();
        let b = parse_polynomial("poly:[1, 0, -3, 2, 0]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_roundtrip() {
        for s in [
            "x^4 - 3*x^2 + 2*x",
            "poly:[1, -8, 24, -32, 16]",
            "2/3*x^2 - x + 5",
            "poly:[(0,1), 1, (2,-1)]",
            "x",
            "7",
            "-x^2 + 1/2",
        ] {
            let p = parse_polynomial(s).unwrap();
            let text = format_polynomial(&p);
            let back = parse_polynomial(&text).unwrap();
            assert_eq!(p, back, "roundtrip failed for {:?} -> {:?}", s, text);
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_polynomial("x^2 + oops").unwrap_err();
        assert_eq!(err.position, 6);
        let err = parse_polynomial("poly:[1, 2").unwrap_err();
        assert!(err.position >= 10);
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("x^-2").is_err());
        assert!(parse_polynomial("1/0").is_err());
    }

    #[test]
    fn node_list_forms() {
        let n = parse_nodes("nodes:[0, 1, 5/2]").unwrap();
        assert_eq!(n.len(), 3);
        assert_eq!(n[2], GaussianRational::from_rational(crate::polycore::gaussian::rat(5, 2)));
        let g = parse_nodes("nodes:[(0,1), (2,-1)]").unwrap();
        assert_eq!(g[0], GaussianRational::from_pair(0, 1));
        assert!(parse_nodes("nodes:[]").is_err());
    }

    #[test]
    fn combined_coefficients_accumulate() {
        // duplicate powers add up
        let p = parse_polynomial("x + x + 1 - 2").unwrap();
        assert_eq!(p, parse_polynomial("2*x - 1").unwrap());
    }
}
