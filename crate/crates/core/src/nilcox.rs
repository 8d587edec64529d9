//! Grothendieck groups of nil-Coxeter algebras and their polynomial
//! realizations.
//!
//! `K₀(N)` has basis `[N_n]` (projectives), `G₀(N)` has basis `[L_n]`
//! (simples). Induction and restriction act as `x` and `d/dx` once
//! `[N_n] ↦ xⁿ` and `[L_n] ↦ xⁿ/n!`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::util::{binomial, factorial};

/// Sparse map from a non-negative index to a nonzero integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
struct Sparse(BTreeMap<u32, BigInt>);

impl Sparse {
    fn add_term(&mut self, n: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(n).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&n);
        }
    }

    fn from_terms(terms: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
        let mut s = Sparse::default();
        for (n, c) in terms {
            s.add_term(n, c);
        }
        s
    }

    fn add(&self, other: &Sparse) -> Sparse {
        Sparse::from_terms(self.0.iter().chain(&other.0).map(|(&n, c)| (n, c.clone())))
    }

    fn scale(&self, k: &BigInt) -> Sparse {
        Sparse::from_terms(self.0.iter().map(|(&n, c)| (n, c * k)))
    }

    fn map(&self, f: impl Fn(u32, &BigInt) -> Option<(u32, BigInt)>) -> Sparse {
        Sparse::from_terms(self.0.iter().filter_map(|(&n, c)| f(n, c)))
    }

    fn convolve(&self, other: &Sparse, weight: impl Fn(u32, u32) -> BigInt) -> Sparse {
        let mut out = Sparse::default();
        for (&a, x) in &self.0 {
            for (&b, y) in &other.0 {
                out.add_term(a + b, x * y * weight(a, b));
            }
        }
        out
    }

    /// Writes `c·atom(n)` terms, highest index first.
    fn fmt_with(
        &self,
        f: &mut fmt::Formatter<'_>,
        atom: impl Fn(u32) -> String,
        sep: &str,
        unit: impl Fn(u32) -> bool,
    ) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (&n, c)) in self.0.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if unit(n) {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", atom(n))?;
            } else {
                write!(f, "{abs}{sep}{}", atom(n))?;
            }
        }
        Ok(())
    }
}

macro_rules! sparse_common {
    ($t:ident) => {
        impl $t {
            pub fn zero() -> Self {
                $t(Sparse::default())
            }

            pub fn basis(n: u32) -> Self {
                $t::from_terms([(n, BigInt::one())])
            }

            pub fn from_terms(terms: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
                $t(Sparse::from_terms(terms))
            }

            pub fn add_term(&mut self, n: u32, c: BigInt) {
                self.0.add_term(n, c);
            }

            pub fn add(&self, other: &$t) -> $t {
                $t(self.0.add(&other.0))
            }

            pub fn sub(&self, other: &$t) -> $t {
                self.add(&other.scale(&BigInt::from(-1)))
            }

            pub fn scale(&self, k: &BigInt) -> $t {
                $t(self.0.scale(k))
            }

            pub fn is_zero(&self) -> bool {
                self.0 .0.is_empty()
            }

            pub fn coeff(&self, n: u32) -> BigInt {
                self.0 .0.get(&n).cloned().unwrap_or_default()
            }

            pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
                self.0 .0.iter().map(|(&n, c)| (n, c))
            }
        }
    };
}

/// Element of `K₀(N)` in the basis `[N_n]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct K0NElem(Sparse);

/// Element of `G₀(N)` in the basis `[L_n]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct G0NElem(Sparse);

/// Element of `ℤ[x]`; keys are exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XPoly(Sparse);

sparse_common!(K0NElem);
sparse_common!(G0NElem);
sparse_common!(XPoly);

impl K0NElem {
    /// `Ind [N_n] = [N_{n+1}]`.
    pub fn ind(&self) -> K0NElem {
        K0NElem(self.0.map(|n, c| Some((n + 1, c.clone()))))
    }

    /// `Res [N_{n+1}] = (n+1) [N_n]`, `Res [N_0] = 0`.
    pub fn res(&self) -> K0NElem {
        K0NElem(self.0.map(|n, c| (n > 0).then(|| (n - 1, c * n))))
    }

    /// `[N_n]·[N_m] = [N_{n+m}]`.
    pub fn mul(&self, other: &K0NElem) -> K0NElem {
        K0NElem(self.0.convolve(&other.0, |_, _| BigInt::one()))
    }
}

impl G0NElem {
    /// `Ind [L_n] = (n+1) [L_{n+1}]`.
    pub fn ind(&self) -> G0NElem {
        G0NElem(self.0.map(|n, c| Some((n + 1, c * (n + 1)))))
    }

    /// `Res [L_{n+1}] = [L_n]`, `Res [L_0] = 0`.
    pub fn res(&self) -> G0NElem {
        G0NElem(self.0.map(|n, c| (n > 0).then(|| (n - 1, c.clone()))))
    }

    /// `[L_n]·[L_m] = C(n+m, n) [L_{n+m}]`.
    pub fn mul(&self, other: &G0NElem) -> G0NElem {
        G0NElem(self.0.convolve(&other.0, |a, b| binomial(a + b, a)))
    }
}

impl XPoly {
    pub fn one() -> XPoly {
        XPoly::basis(0)
    }

    /// `x`.
    pub fn x() -> XPoly {
        XPoly::basis(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> XPoly {
        XPoly::from_terms([(0, c.into())])
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        XPoly(self.0.convolve(&other.0, |_, _| BigInt::one()))
    }

    pub fn mul_x(&self) -> XPoly {
        XPoly(self.0.map(|n, c| Some((n + 1, c.clone()))))
    }

    /// `d/dx`.
    pub fn derivative(&self) -> XPoly {
        XPoly(self.0.map(|n, c| (n > 0).then(|| (n - 1, c * n))))
    }

    pub fn pow(&self, e: u32) -> XPoly {
        (0..e).fold(XPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn degree(&self) -> Option<u32> {
        self.0 .0.keys().next_back().copied()
    }
}

/// `φ_N: [N_n] ↦ xⁿ`.
pub fn phi_n(e: &K0NElem) -> XPoly {
    XPoly(e.0.clone())
}

pub fn phi_n_inv(p: &XPoly) -> K0NElem {
    K0NElem(p.0.clone())
}

/// Polynomial with rational coefficients; the target of `[L_n] ↦ xⁿ/n!`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QPoly(BTreeMap<u32, BigRational>);

impl QPoly {
    fn add_term(&mut self, n: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(n).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&n);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.0.iter().map(|(&n, c)| (n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul_x(&self) -> QPoly {
        QPoly(self.0.iter().map(|(&n, c)| (n + 1, c.clone())).collect())
    }

    pub fn derivative(&self) -> QPoly {
        let mut out = QPoly::default();
        for (&n, c) in &self.0 {
            if n > 0 {
                out.add_term(n - 1, c * BigRational::from_integer(n.into()));
            }
        }
        out
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::default();
        for (&a, x) in &self.0 {
            for (&b, y) in &other.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// Whether every coefficient of `xⁿ` becomes integral after multiplying by `n!`.
    pub fn in_divided_power_lattice(&self) -> bool {
        self.0
            .iter()
            .all(|(&n, c)| (c * BigRational::from_integer(factorial(n))).is_integer())
    }
}

/// `φ_N: [L_n] ↦ xⁿ/n!`.
pub fn phi_n_g0(e: &G0NElem) -> QPoly {
    let mut out = QPoly::default();
    for (n, c) in e.terms() {
        out.add_term(n, BigRational::new(c.clone(), factorial(n)));
    }
    out
}

/// Highest degree first, e.g. `1/2 x^2 - x + 3`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (&n, c)) in self.0.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match n {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{n}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs} {var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for K0NElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, |n| format!("[N{n}]"), "*", |_| false)
    }
}

impl fmt::Display for G0NElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, |n| format!("[L{n}]"), "*", |_| false)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = |n: u32| if n == 1 { "x".to_string() } else { format!("x^{n}") };
        self.0.fmt_with(f, atom, " ", |n| n == 0)
    }
}

impl std::str::FromStr for K0NElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        crate::text::parse_k0n(s)
    }
}

impl std::str::FromStr for G0NElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        crate::text::parse_g0n(s)
    }
}

impl std::str::FromStr for XPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        crate::text::parse_xpoly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u32) -> K0NElem {
        K0NElem::basis(k)
    }

    fn l(k: u32) -> G0NElem {
        G0NElem::basis(k)
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn k0n_ind_res() {
        assert_eq!(n(3).ind(), n(4));
        assert_eq!(n(3).res(), n(2).scale(&int(3)));
        assert!(n(0).res().is_zero());
    }

    #[test]
    fn g0n_ind_res() {
        assert_eq!(l(2).ind(), l(3).scale(&int(3)));
        assert_eq!(l(5).res(), l(4));
        assert!(l(0).res().is_zero());
    }

    #[test]
    fn products() {
        assert_eq!(n(2).mul(&n(3)), n(5));
        assert_eq!(l(1).mul(&l(1)), l(2).scale(&int(2)));
        let e = G0NElem::from_terms([(0, int(2)), (3, int(-1))]);
        assert_eq!(l(0).mul(&e), e);
    }

    #[test]
    fn phi_n_examples() {
        assert_eq!(phi_n(&n(3)), XPoly::x().pow(3));
        assert_eq!(phi_n(&n(0)), XPoly::one());
        let e = n(1).scale(&int(2)).sub(&n(0));
        assert_eq!(phi_n(&e), XPoly::from_terms([(1, int(2)), (0, int(-1))]));
        assert_eq!(phi_n_inv(&phi_n(&e)), e);
    }

    #[test]
    fn g0_realization_is_a_ring_map() {
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(
                    phi_n_g0(&l(a).mul(&l(b))),
                    phi_n_g0(&l(a)).mul(&phi_n_g0(&l(b)))
                );
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(XPoly::from_terms([(2, int(12)), (0, int(1))]).to_string(), "12 x^2 + 1");
        assert_eq!(XPoly::from_terms([(1, int(-1))]).to_string(), "-x");
        assert_eq!(n(2).scale(&int(3)).add(&n(0)).to_string(), "3*[N2] + [N0]");
        assert_eq!(l(4).to_string(), "[L4]");
        assert_eq!(XPoly::zero().to_string(), "0");
        let q = phi_n_g0(&l(2).sub(&l(1)).add(&l(0).scale(&int(3))));
        assert_eq!(q.to_string(), "1/2 x^2 - x + 3");
        assert_eq!(phi_n_g0(&G0NElem::zero()).to_string(), "0");
    }
}
