//! Polynomials in the formal variables λ (and μ) with differential-polynomial
//! coefficients.
//!
//! The coefficient stored at `λⁿ` is the divided product `a₍ₙ₎b / n!`, so all
//! arithmetic stays in ℤ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::diffpoly::DiffPoly;
use crate::util::binomial;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaPoly {
    coeffs: BTreeMap<u32, DiffPoly>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    /// `coeff · λᵏ`.
    pub fn single(k: u32, coeff: DiffPoly) -> Self {
        let mut p = LambdaPoly::zero();
        p.add_at(k, &coeff);
        p
    }

    pub fn constant(coeff: DiffPoly) -> Self {
        LambdaPoly::single(0, coeff)
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (u32, DiffPoly)>) -> Self {
        let mut p = LambdaPoly::zero();
        for (k, c) in coeffs {
            p.add_at(k, &c);
        }
        p
    }

    pub fn add_at(&mut self, k: u32, coeff: &DiffPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        slot.add_assign_ref(coeff);
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add_assign_ref(&mut self, other: &LambdaPoly) {
        for (&k, c) in &other.coeffs {
            self.add_at(k, c);
        }
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &LambdaPoly) -> LambdaPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LambdaPoly {
        self.map_coeffs(|c| -c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `λᵏ` (zero when absent).
    pub fn coeff(&self, k: u32) -> DiffPoly {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &DiffPoly)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn map_coeffs(&self, f: impl Fn(&DiffPoly) -> DiffPoly) -> LambdaPoly {
        LambdaPoly::from_coeffs(self.coeffs.iter().map(|(&k, c)| (k, f(c))))
    }

    /// Left multiplication of every coefficient by `g`.
    pub fn mul_poly(&self, g: &DiffPoly) -> LambdaPoly {
        self.map_coeffs(|c| g.mul(c))
    }

    pub fn scale(&self, c: &BigInt) -> LambdaPoly {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Multiplication by `λᵏ`.
    pub fn mul_lambda_pow(&self, k: u32) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Applies `(sign·(λ + ∂))ᵐ`, with `∂` acting on the coefficients.
    pub fn shift_apply(&self, m: u32, negate: bool) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        let sign = if negate && m % 2 == 1 { -1 } else { 1 };
        for (&e, c) in &self.coeffs {
            let mut d = c.clone();
            // ∂^(m-i) for i = m down to 0
            let mut derived = Vec::with_capacity(m as usize + 1);
            for _ in 0..=m {
                derived.push(d.clone());
                d = d.derive();
            }
            for i in 0..=m {
                let b = binomial(m, i) * sign;
                out.add_at(e + i, &derived[(m - i) as usize].scale(&b));
            }
        }
        out
    }

    /// Replaces `λ` by `-λ - ∂`, with `∂` acting on the coefficients.
    pub fn substitute_neg_lambda_minus_d(&self) -> LambdaPoly {
        let mut out = LambdaPoly::zero();
        for (&k, c) in &self.coeffs {
            out.add_assign_ref(&LambdaPoly::constant(c.clone()).shift_apply(k, true));
        }
        out
    }

    /// Value at `λ = 0`.
    pub fn at_zero(&self) -> DiffPoly {
        self.coeff(0)
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            match k {
                0 => {}
                1 => write!(f, "*lam")?,
                _ => write!(f, "*lam^{k}")?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for LambdaPoly {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_lambda_poly(s)
    }
}

/// Polynomial in two formal variables `λ`, `μ` with differential-polynomial
/// coefficients; keys are `(λ-exponent, μ-exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiLambdaPoly {
    coeffs: BTreeMap<(u32, u32), DiffPoly>,
}

impl BiLambdaPoly {
    pub fn zero() -> Self {
        BiLambdaPoly::default()
    }

    pub fn add_at(&mut self, lam: u32, mu: u32, coeff: &DiffPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((lam, mu)).or_default();
        slot.add_assign_ref(coeff);
        if slot.is_zero() {
            self.coeffs.remove(&(lam, mu));
        }
    }

    pub fn sub(&self, other: &BiLambdaPoly) -> BiLambdaPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.add_at(a, b, &-c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lam: u32, mu: u32) -> DiffPoly {
        self.coeffs.get(&(lam, mu)).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = ((u32, u32), &DiffPoly)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }
}

impl fmt::Display for BiLambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (name, e) in [("lam", a), ("mu", b)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DiffPoly {
        s.parse().unwrap()
    }

    #[test]
    fn shift_apply_examples() {
        let p = LambdaPoly::constant(dp("L"));
        assert_eq!(
            p.shift_apply(1, false),
            LambdaPoly::from_coeffs([(0, dp("d1L")), (1, dp("L"))])
        );
        let q = LambdaPoly::from_coeffs([(0, dp("L d1L")), (2, dp("3"))]);
        assert_eq!(q.shift_apply(0, false), q);
        assert_eq!(q.shift_apply(0, true), q);
        assert_eq!(
            p.shift_apply(2, true),
            LambdaPoly::from_coeffs([(0, dp("d2L")), (1, dp("2 d1L")), (2, dp("L"))])
        );
        assert_eq!(
            p.shift_apply(1, true),
            LambdaPoly::from_coeffs([(0, dp("-d1L")), (1, dp("-L"))])
        );
    }

    #[test]
    fn shift_apply_composes() {
        let p = LambdaPoly::from_coeffs([(0, dp("L^2")), (1, dp("d2L"))]);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    p.shift_apply(a, true).shift_apply(b, true),
                    p.shift_apply(a + b, true)
                );
            }
        }
    }

    #[test]
    fn display_form() {
        let p = LambdaPoly::from_coeffs([(0, dp("d1L")), (1, dp("2 L")), (3, dp("1"))]);
        assert_eq!(p.to_string(), "(d1L) + (2 L)*lam + (1)*lam^3");
        assert_eq!(LambdaPoly::zero().to_string(), "0");
    }
}
