//! Parsers for the text forms printed by the `Display` impls.
//!
//! | value            | example                                   |
//! |------------------|-------------------------------------------|
//! | partition        | `[5,2,1]`, `[]`                           |
//! | differential poly| `3 L d1L^2 - 2 d3L`, `1`, `0`             |
//! | λ-polynomial     | `(d1L) + (2 L)*lam + (1)*lam^3`           |
//! | `K₀(Σ)` element  | `2*[3,1] - [2,2]`                         |
//! | `K₀(N)`, `G₀(N)` | `3*[N2] + [N0]`, `[L2]`                   |
//! | `ℤ[x]`           | `12 x^2 + 1`                              |
//! | Weyl element     | `x^2 D^2 + 4 x D + 2` (any order accepted)|
//!
//! Errors carry the byte offset of the offending token.

use num_bigint::BigInt;
use num_traits::One;

use crate::diffpoly::{DiffPoly, Monomial};
use crate::error::{Error, Result};
use crate::k0sigma::K0SigmaElem;
use crate::lambda::LambdaPoly;
use crate::nilcox::{G0NElem, K0NElem, XPoly};
use crate::partition::Partition;
use crate::weyl::{weyl_mul, WeylElem};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    /// Next character without skipping whitespace.
    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let found = match self.peek_raw() {
            Some(c) => format!(" near '{c}'"),
            None => " at end of input".to_string(),
        };
        Error::parse(self.pos, format!("{}{found}", msg.into()))
    }

    /// Decimal digits, no sign; whitespace before is skipped, not inside.
    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    fn big_uint(&mut self) -> Option<BigInt> {
        self.digits().map(|d| d.parse().expect("ascii digits"))
    }

    fn small_uint(&mut self, what: &str) -> Result<u32> {
        let start = self.pos;
        if self.peek() == Some('-') {
            return Err(self.error(format!("negative {what}")));
        }
        let d = self.digits().ok_or_else(|| self.error(format!("expected {what}")))?;
        d.parse()
            .map_err(|_| Error::parse(start, format!("{what} out of range")))
    }

    /// Optional `^e`.
    fn exponent(&mut self) -> Result<u32> {
        if self.eat('^') {
            self.small_uint("exponent")
        } else {
            Ok(1)
        }
    }

    /// Leading sign of a term: `Some(true)` for `-`. The first term may omit it.
    fn term_sign(&mut self, first: bool) -> Result<Option<bool>> {
        if self.eat('-') {
            Ok(Some(true))
        } else if self.eat('+') || first {
            Ok(Some(false))
        } else if self.at_end() {
            Ok(None)
        } else {
            Err(self.error("expected '+' or '-'"))
        }
    }
}

fn signed(neg: bool, c: BigInt) -> BigInt {
    if neg {
        -c
    } else {
        c
    }
}

/// Parses a `+`/`-` separated sum, delegating each term body to `term`.
fn parse_sum<'a>(
    cur: &mut Cursor<'a>,
    mut term: impl FnMut(&mut Cursor<'a>, bool) -> Result<()>,
    stop: impl Fn(Option<char>) -> bool,
) -> Result<()> {
    let mut first = true;
    loop {
        if !first && stop(cur.peek()) {
            return Ok(());
        }
        let Some(neg) = cur.term_sign(first)? else {
            return Ok(());
        };
        if stop(cur.peek()) {
            return Err(cur.error("expected a term"));
        }
        term(cur, neg)?;
        first = false;
    }
}

pub fn parse_partition(s: &str) -> Result<Partition> {
    let mut cur = Cursor::new(s);
    let p = partition_literal(&mut cur)?;
    cur.finish()?;
    Ok(p)
}

fn partition_literal(cur: &mut Cursor<'_>) -> Result<Partition> {
    cur.expect('[')?;
    let mut parts = Vec::new();
    if !cur.eat(']') {
        loop {
            let start = cur.pos;
            let v = cur.small_uint("part")?;
            if v == 0 {
                return Err(Error::parse(start, "partition parts must be positive"));
            }
            parts.push(v);
            if cur.eat(']') {
                break;
            }
            cur.expect(',')?;
        }
    }
    Partition::new(parts)
}

pub fn parse_diffpoly(s: &str) -> Result<DiffPoly> {
    let mut cur = Cursor::new(s);
    let p = diffpoly_sum(&mut cur, |c| c.is_none())?;
    cur.finish()?;
    Ok(p)
}

fn diffpoly_sum(cur: &mut Cursor<'_>, stop: impl Fn(Option<char>) -> bool) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    let term_end = |c: Option<char>| matches!(c, None | Some('+') | Some('-')) || stop(c);
    parse_sum(
        cur,
        |cur, neg| {
            let mut coeff = BigInt::one();
            let mut orders = Vec::new();
            let mut any = false;
            while !term_end(cur.peek()) {
                cur.eat('*');
                any = true;
                if let Some(n) = cur.big_uint() {
                    let e = cur.exponent()?;
                    coeff *= num_traits::pow(n, e as usize);
                    continue;
                }
                let order = match cur.bump() {
                    Some('L') => 0,
                    Some('d') => {
                        if cur.peek_raw() == Some('-') {
                            return Err(cur.error("negative derivative order"));
                        }
                        let k = cur.small_uint("derivative order")?;
                        if cur.peek_raw() != Some('L') {
                            return Err(cur.error("expected 'L' after derivative order"));
                        }
                        cur.bump();
                        k
                    }
                    _ => {
                        cur.pos -= cur.src[..cur.pos].chars().next_back().map_or(0, char::len_utf8);
                        return Err(cur.error("unexpected token"));
                    }
                };
                let e = cur.exponent()?;
                orders.extend(std::iter::repeat_n(order, e as usize));
            }
            if !any {
                return Err(cur.error("expected a term"));
            }
            out.add_term(Monomial::new(orders), signed(neg, coeff));
            Ok(())
        },
        &stop,
    )?;
    Ok(out)
}

pub fn parse_lambda_poly(s: &str) -> Result<LambdaPoly> {
    let mut cur = Cursor::new(s);
    let mut out = LambdaPoly::zero();
    if cur.eat_str("0") && cur.at_end() {
        return Ok(out);
    }
    cur.pos = 0;
    parse_sum(
        &mut cur,
        |cur, neg| {
            cur.expect('(')?;
            let coeff = diffpoly_sum(cur, |c| c == Some(')'))?;
            cur.expect(')')?;
            let mut k = 0;
            if cur.eat('*') {
                if !cur.eat_str("lam") {
                    return Err(cur.error("expected 'lam'"));
                }
                k = cur.exponent()?;
            }
            out.add_at(k, &if neg { -&coeff } else { coeff });
            Ok(())
        },
        |c| c.is_none(),
    )?;
    cur.finish()?;
    Ok(out)
}

/// Optional `k*` coefficient prefix.
fn star_coeff(cur: &mut Cursor<'_>) -> Result<BigInt> {
    match cur.big_uint() {
        Some(n) => {
            cur.expect('*')?;
            Ok(n)
        }
        None => Ok(BigInt::one()),
    }
}

fn zero_literal(s: &str) -> bool {
    s.trim() == "0"
}

pub fn parse_k0sigma(s: &str) -> Result<K0SigmaElem> {
    if zero_literal(s) {
        return Ok(K0SigmaElem::zero());
    }
    let mut cur = Cursor::new(s);
    let mut out = K0SigmaElem::zero();
    parse_sum(
        &mut cur,
        |cur, neg| {
            let c = star_coeff(cur)?;
            let p = partition_literal(cur)?;
            out.add_term(p, signed(neg, c));
            Ok(())
        },
        |c| c.is_none(),
    )?;
    cur.finish()?;
    Ok(out)
}

fn indexed_literals(s: &str, tag: char) -> Result<Vec<(u32, BigInt)>> {
    if zero_literal(s) {
        return Ok(Vec::new());
    }
    let mut cur = Cursor::new(s);
    let mut out = Vec::new();
    parse_sum(
        &mut cur,
        |cur, neg| {
            let c = star_coeff(cur)?;
            cur.expect('[')?;
            cur.expect(tag)?;
            let n = cur.small_uint("index")?;
            cur.expect(']')?;
            out.push((n, signed(neg, c)));
            Ok(())
        },
        |c| c.is_none(),
    )?;
    cur.finish()?;
    Ok(out)
}

pub fn parse_k0n(s: &str) -> Result<K0NElem> {
    Ok(K0NElem::from_terms(indexed_literals(s, 'N')?))
}

pub fn parse_g0n(s: &str) -> Result<G0NElem> {
    Ok(G0NElem::from_terms(indexed_literals(s, 'L')?))
}

pub fn parse_xpoly(s: &str) -> Result<XPoly> {
    let mut cur = Cursor::new(s);
    let mut out = XPoly::zero();
    parse_sum(
        &mut cur,
        |cur, neg| {
            let mut coeff = BigInt::one();
            let mut power = 0;
            let mut any = false;
            while !matches!(cur.peek(), None | Some('+') | Some('-')) {
                cur.eat('*');
                any = true;
                if let Some(n) = cur.big_uint() {
                    coeff *= n;
                } else if cur.eat('x') {
                    power += cur.exponent()?;
                } else {
                    return Err(cur.error("unexpected token"));
                }
            }
            if !any {
                return Err(cur.error("expected a term"));
            }
            out.add_term(power, signed(neg, coeff));
            Ok(())
        },
        |c| c.is_none(),
    )?;
    cur.finish()?;
    Ok(out)
}

/// Factors inside a term are multiplied left to right in the Weyl algebra,
/// so non-normal input such as `D x` is accepted and normalized.
pub fn parse_weyl(s: &str) -> Result<WeylElem> {
    let mut cur = Cursor::new(s);
    let mut out = WeylElem::zero();
    parse_sum(
        &mut cur,
        |cur, neg| {
            let mut acc = WeylElem::one();
            let mut any = false;
            while !matches!(cur.peek(), None | Some('+') | Some('-')) {
                cur.eat('*');
                any = true;
                let factor = if let Some(n) = cur.big_uint() {
                    WeylElem::monomial(0, 0, n)
                } else if cur.eat('x') {
                    WeylElem::monomial(cur.exponent()?, 0, 1)
                } else if cur.eat('D') {
                    WeylElem::monomial(0, cur.exponent()?, 1)
                } else {
                    return Err(cur.error("unexpected token"));
                };
                acc = weyl_mul(&acc, &factor);
            }
            if !any {
                return Err(cur.error("expected a term"));
            }
            if neg {
                acc = acc.scale(&BigInt::from(-1));
            }
            out = out.add(&acc);
            Ok(())
        },
        |c| c.is_none(),
    )?;
    cur.finish()?;
    Ok(out)
}

/// Checks whether text looks like a `K₀(Σ)` element rather than a
/// differential polynomial.
pub fn looks_like_k0sigma(s: &str) -> bool {
    s.contains('[') && !s.contains("[N") && !s.contains("[L")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_pos(r: Result<impl std::fmt::Debug>) -> usize {
        match r {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn partition_literals() {
        assert_eq!(parse_partition("[5,2,1]").unwrap().parts(), &[5, 2, 1]);
        assert!(parse_partition("[]").unwrap().is_empty());
        assert_eq!(parse_partition(" [ 1 , 3 ] ").unwrap().parts(), &[3, 1]);
        assert_eq!(err_pos(parse_partition("[2,0]")), 3);
        assert!(parse_partition("[2,-1]").is_err());
        assert!(parse_partition("[2,1").is_err());
    }

    #[test]
    fn diffpoly_grammar() {
        let f = parse_diffpoly("3 L d1L^2 - 2 d3L").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(parse_diffpoly("-L").unwrap().to_string(), "-L");
        assert_eq!(parse_diffpoly("L L").unwrap(), parse_diffpoly("L^2").unwrap());
        assert_eq!(parse_diffpoly("2*L*d1L").unwrap(), parse_diffpoly("2 L d1L").unwrap());
        assert_eq!(parse_diffpoly("L - L").unwrap(), DiffPoly::zero());
    }

    #[test]
    fn diffpoly_errors_carry_positions() {
        assert_eq!(err_pos(parse_diffpoly("L + d-1L")), 5);
        assert_eq!(err_pos(parse_diffpoly("L + q")), 4);
        assert_eq!(err_pos(parse_diffpoly("d2")), 2);
        assert!(parse_diffpoly("L +").is_err());
        assert!(parse_diffpoly("").is_err());
        assert!(parse_diffpoly("L^-1").is_err());
    }

    #[test]
    fn lambda_grammar() {
        let p = parse_lambda_poly("(d1L) + (2 L)*lam + (1)*lam^3").unwrap();
        assert_eq!(p.to_string(), "(d1L) + (2 L)*lam + (1)*lam^3");
        assert!(parse_lambda_poly("0").unwrap().is_zero());
        assert!(parse_lambda_poly("(L)*mu").is_err());
    }

    #[test]
    fn k0_grammars() {
        let e = parse_k0sigma("2*[3,1] - [2,2]").unwrap();
        assert_eq!(e.to_string(), "2*[3,1] - [2,2]");
        assert!(parse_k0sigma("0").unwrap().is_zero());
        assert_eq!(parse_k0n("3*[N2] + [N0]").unwrap().to_string(), "3*[N2] + [N0]");
        assert_eq!(parse_g0n("-[L2]").unwrap().to_string(), "-[L2]");
        assert!(parse_k0n("[L2]").is_err());
    }

    #[test]
    fn xpoly_grammar() {
        assert_eq!(parse_xpoly("12 x^2 + 1").unwrap().to_string(), "12 x^2 + 1");
        assert_eq!(parse_xpoly("x x").unwrap().to_string(), "x^2");
        assert!(parse_xpoly("0").unwrap().is_zero());
    }

    #[test]
    fn kind_detection() {
        assert!(looks_like_k0sigma("[2,1]"));
        assert!(!looks_like_k0sigma("[N2]"));
        assert!(!looks_like_k0sigma("L d1L"));
    }
}
