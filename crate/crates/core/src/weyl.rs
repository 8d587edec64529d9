//! The integral Weyl algebra `W_ℤ = ℤ⟨x, D⟩ / (Dx - xD - 1)` in normal order,
//! its action on `ℤ[x]`, and the quantization maps at central charge 0.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diffpoly::{AlgebraCtx, DiffPoly};
use crate::error::Error;
use crate::k0sigma::K0SigmaElem;
use crate::nilcox::{K0NElem, XPoly};
use crate::util::{binomial, factorial};

/// Normally ordered combination of `xᵃ Dᵇ`; keys are `(a, b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylElem {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl WeylElem {
    pub fn zero() -> Self {
        WeylElem::default()
    }

    pub fn one() -> Self {
        WeylElem::monomial(0, 0, 1)
    }

    pub fn x() -> Self {
        WeylElem::monomial(1, 0, 1)
    }

    pub fn d() -> Self {
        WeylElem::monomial(0, 1, 1)
    }

    /// `c · xᵃ Dᵇ`.
    pub fn monomial(a: u32, b: u32, c: impl Into<BigInt>) -> Self {
        let mut w = WeylElem::zero();
        w.add_term(a, b, c.into());
        w
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &WeylElem) -> WeylElem {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylElem) -> WeylElem {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> WeylElem {
        let mut out = WeylElem::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn pow(&self, e: u32) -> WeylElem {
        (0..e).fold(WeylElem::one(), |acc, _| weyl_mul(&acc, self))
    }

    /// `uv - vu`.
    pub fn commutator(u: &WeylElem, v: &WeylElem) -> WeylElem {
        weyl_mul(u, v).sub(&weyl_mul(v, u))
    }
}

/// Product in normal order, using `Dᵇ xᶜ = Σₖ C(b,k) C(c,k) k! xᶜ⁻ᵏ Dᵇ⁻ᵏ`.
pub fn weyl_mul(u: &WeylElem, v: &WeylElem) -> WeylElem {
    let mut out = WeylElem::zero();
    for (&(a, b), s) in &u.terms {
        for (&(c, d), t) in &v.terms {
            let st = s * t;
            for k in 0..=b.min(c) {
                let w = binomial(b, k) * binomial(c, k) * factorial(k);
                out.add_term(a + c - k, b + d - k, &st * w);
            }
        }
    }
    out
}

/// Action on `ℤ[x]`: `x` multiplies, `D` differentiates.
pub fn weyl_apply(u: &WeylElem, p: &XPoly) -> XPoly {
    let mut out = XPoly::zero();
    for (&(a, b), s) in &u.terms {
        for (n, c) in p.terms() {
            if n < b {
                continue;
            }
            // Dᵇ xⁿ = n!/(n-b)! xⁿ⁻ᵇ
            let falling = factorial(n) / factorial(n - b);
            out.add_term(n - b + a, s * c * falling);
        }
    }
    out
}

/// Generators of `⟨Ind, Res⟩` acting on `K₀(N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Ind,
    Res,
}

/// An integer combination of composites of `Ind` and `Res`. Each word is
/// written as an operator product: the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndResCombo {
    words: BTreeMap<Vec<Letter>, BigInt>,
}

impl IndResCombo {
    pub fn add_word(&mut self, word: Vec<Letter>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.words.entry(word.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.words.remove(&word);
        }
    }

    pub fn words(&self) -> impl Iterator<Item = (&[Letter], &BigInt)> {
        self.words.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Runs the composite functors on a class in `K₀(N)`.
    pub fn apply(&self, e: &K0NElem) -> K0NElem {
        let mut out = K0NElem::zero();
        for (word, c) in &self.words {
            let image = word.iter().rev().fold(e.clone(), |acc, l| match l {
                Letter::Ind => acc.ind(),
                Letter::Res => acc.res(),
            });
            out = out.add(&image.scale(c));
        }
        out
    }
}

impl fmt::Display for IndResCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "0");
        }
        for (i, (word, c)) in self.words.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if word.is_empty() {
                write!(f, "{abs}*Id")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut i = 0;
            let mut first = true;
            while i < word.len() {
                let run = word[i..].iter().take_while(|&&l| l == word[i]).count();
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                let name = match word[i] {
                    Letter::Ind => "Ind",
                    Letter::Res => "Res",
                };
                if run > 1 {
                    write!(f, "{name}^{run}")?;
                } else {
                    write!(f, "{name}")?;
                }
                i += run;
            }
        }
        Ok(())
    }
}

fn require_zero_charge(ctx: &AlgebraCtx) -> Result<(), Error> {
    if ctx.central_charge != 0 {
        return Err(Error::domain(format!(
            "quantization is defined only at central charge 0 (got {})",
            ctx.central_charge
        )));
    }
    Ok(())
}

/// `ψ₂: ∏ ∂^{jₖ}L ↦ ∏ jₖ! x^{jₖ+3} D`, factors in weakly decreasing `j`.
pub fn psi2(f: &DiffPoly, ctx: &AlgebraCtx) -> Result<WeylElem, Error> {
    require_zero_charge(ctx)?;
    let mut out = WeylElem::zero();
    for (m, c) in f.terms() {
        let image = m.orders().iter().fold(WeylElem::one(), |acc, &j| {
            weyl_mul(&acc, &WeylElem::monomial(j + 3, 1, factorial(j)))
        });
        out = out.add(&image.scale(c));
    }
    Ok(out)
}

/// `ψ₁: [S^μ] ↦ ∏ jₖ! Ind^{jₖ+3} Res` where the parts of `μ` are `jₖ + 1`,
/// factors in weakly decreasing `j`.
pub fn psi1(e: &K0SigmaElem, ctx: &AlgebraCtx) -> Result<IndResCombo, Error> {
    require_zero_charge(ctx)?;
    let mut out = IndResCombo::default();
    for (mu, c) in e.terms() {
        let mut word = Vec::new();
        let mut coeff = c.clone();
        for &part in mu.parts() {
            let j = part - 1;
            coeff *= factorial(j);
            word.extend(std::iter::repeat_n(Letter::Ind, (j + 3) as usize));
            word.push(Letter::Res);
        }
        out.add_word(word, coeff);
    }
    Ok(out)
}

/// `i(Ind) = x`, `i(Res) = D`. Each word is normalized letter by letter from
/// the left with `xᵃDᵇ · x = xᵃ⁺¹Dᵇ + b·xᵃDᵇ⁻¹`.
pub fn i_map(words: &IndResCombo) -> WeylElem {
    let mut out = WeylElem::zero();
    for (word, c) in words.words() {
        let mut acc = WeylElem::one();
        for letter in word {
            let mut next = WeylElem::zero();
            for ((a, b), t) in acc.terms() {
                match letter {
                    Letter::Res => next.add_term(a, b + 1, t.clone()),
                    Letter::Ind => {
                        next.add_term(a + 1, b, t.clone());
                        if b > 0 {
                            next.add_term(a, b - 1, t * b);
                        }
                    }
                }
            }
            acc = next;
        }
        out = out.add(&acc.scale(c));
    }
    out
}

impl fmt::Display for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(p, _)| std::cmp::Reverse((p.0 + p.1, p.0)));
        for (i, (&(a, b), c)) in terms.into_iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut parts = Vec::new();
            if !abs.is_one() || (a == 0 && b == 0) {
                parts.push(abs.to_string());
            }
            match a {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{a}")),
            }
            match b {
                0 => {}
                1 => parts.push("D".into()),
                _ => parts.push(format!("D^{b}")),
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for WeylElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_weyl(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    fn w(s: &str) -> WeylElem {
        s.parse().unwrap()
    }

    /// Normalizes a word in `x`, `D` by literally rewriting the leftmost `Dx`
    /// into `xD + 1` until no such pair remains.
    fn rewrite_normalize(word: &[Letter]) -> WeylElem {
        let mut pending: BTreeMap<Vec<Letter>, BigInt> = BTreeMap::new();
        pending.insert(word.to_vec(), BigInt::one());
        let mut out = WeylElem::zero();
        while let Some((word, c)) = pending.pop_first() {
            let pos = word
                .windows(2)
                .position(|p| p == [Letter::Res, Letter::Ind]);
            match pos {
                None => {
                    let a = word.iter().filter(|&&l| l == Letter::Ind).count() as u32;
                    out.add_term(a, word.len() as u32 - a, c);
                }
                Some(i) => {
                    let mut swapped = word.clone();
                    swapped.swap(i, i + 1);
                    let mut dropped = word.clone();
                    dropped.drain(i..i + 2);
                    *pending.entry(swapped).or_default() += &c;
                    *pending.entry(dropped).or_default() += &c;
                }
            }
        }
        out
    }

    #[test]
    fn defining_relation() {
        assert_eq!(weyl_mul(&WeylElem::d(), &WeylElem::x()), w("x D + 1"));
        assert_eq!(weyl_mul(&WeylElem::x(), &WeylElem::d()), w("x D"));
        assert_eq!(
            weyl_mul(&WeylElem::d().pow(2), &WeylElem::x().pow(2)),
            w("x^2 D^2 + 4 x D + 2")
        );
    }

    #[test]
    fn parse_normalizes_products() {
        assert_eq!(w("D x"), w("x D + 1"));
        assert_eq!(w("D^2 x^2"), w("x^2 D^2 + 4 x D + 2"));
    }

    #[test]
    fn action_examples() {
        let x2 = XPoly::x().pow(2);
        assert_eq!(weyl_apply(&w("x D"), &x2), x2.scale(&BigInt::from(2)));
        assert!(weyl_apply(&WeylElem::d(), &XPoly::one()).is_zero());
        let lhs = weyl_apply(&w("x^2 D^2 + 4 x D + 2"), &x2);
        assert_eq!(lhs, x2.scale(&BigInt::from(12)));
        assert_eq!(lhs, XPoly::x().pow(4).derivative().derivative());
    }

    #[test]
    fn psi2_examples() {
        let ctx = AlgebraCtx::new(0);
        let dp = |s: &str| s.parse::<DiffPoly>().unwrap();
        assert_eq!(psi2(&dp("d2L"), &ctx).unwrap(), w("2 x^5 D"));
        assert_eq!(psi2(&dp("L"), &ctx).unwrap(), w("x^3 D"));
        assert_eq!(psi2(&dp("L^2"), &ctx).unwrap(), w("x^6 D^2 + 3 x^5 D"));
        assert!(matches!(psi2(&dp("L"), &AlgebraCtx::new(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn psi1_examples() {
        let ctx = AlgebraCtx::new(0);
        let s = |p: &[u32]| K0SigmaElem::basis(Partition::new(p.to_vec()).unwrap());
        let one = psi1(&s(&[1]), &ctx).unwrap();
        assert_eq!(one.to_string(), "Ind^3 Res");
        assert_eq!(i_map(&one), w("x^3 D"));
        let three = psi1(&s(&[3]), &ctx).unwrap();
        assert_eq!(three.to_string(), "2*Ind^5 Res");
        assert_eq!(i_map(&three), w("2 x^5 D"));
        let pair = psi1(&s(&[1, 1]), &ctx).unwrap();
        assert_eq!(pair.to_string(), "Ind^3 Res Ind^3 Res");
        assert_eq!(i_map(&pair), w("x^6 D^2 + 3 x^5 D"));
        assert!(psi1(&s(&[1]), &AlgebraCtx::new(-2)).is_err());
    }

    #[test]
    fn i_map_matches_literal_rewriting() {
        let ctx = AlgebraCtx::new(0);
        for mu in Partition::all_up_to(4) {
            let combo = psi1(&K0SigmaElem::basis(mu.clone()), &ctx).unwrap();
            for (word, c) in combo.words() {
                let mut single = IndResCombo::default();
                single.add_word(word.to_vec(), c.clone());
                assert_eq!(i_map(&single), rewrite_normalize(word).scale(c), "{mu}");
            }
        }
    }

    #[test]
    fn word_action_matches_weyl_action() {
        let ctx = AlgebraCtx::new(0);
        for mu in Partition::all_up_to(5) {
            let combo = psi1(&K0SigmaElem::basis(mu), &ctx).unwrap();
            let op = i_map(&combo);
            for n in 0..8 {
                let e = K0NElem::basis(n);
                let via_functors = crate::nilcox::phi_n(&combo.apply(&e));
                let via_weyl = weyl_apply(&op, &crate::nilcox::phi_n(&e));
                assert_eq!(via_functors, via_weyl);
            }
        }
    }

    #[test]
    fn witt_commutator() {
        for p in 1..=8 {
            for q in 1..=8 {
                let lhs = WeylElem::commutator(&WeylElem::monomial(p, 1, 1), &WeylElem::monomial(q, 1, 1));
                let rhs = WeylElem::monomial(p + q - 1, 1, i64::from(q) - i64::from(p));
                assert_eq!(lhs, rhs, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn display_form() {
        assert_eq!(w("x^2 D^2 + 4 x D + 2").to_string(), "x^2 D^2 + 4 x D + 2");
        assert_eq!(w("x^6 D^2 + 3 x^5 D").to_string(), "x^6 D^2 + 3 x^5 D");
        assert_eq!(WeylElem::zero().to_string(), "0");
        assert_eq!(w("-D").to_string(), "-D");
    }
}
