//! The integral differential polynomial algebra `ℤ[∂ⁿL | n ≥ 0]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::partition::Partition;

/// Session-wide parameters of the λ-bracket.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AlgebraCtx {
    pub central_charge: i64,
}

impl AlgebraCtx {
    pub fn new(central_charge: i64) -> Self {
        AlgebraCtx { central_charge }
    }
}

/// A product of generators `∂ᵏL`, stored as the multiset of derivative
/// orders `k` in weakly decreasing order. The empty multiset is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    orders: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { orders: Vec::new() }
    }

    /// The generator `∂ᵏL`.
    pub fn generator(k: u32) -> Self {
        Monomial { orders: vec![k] }
    }

    pub fn new(mut orders: Vec<u32>) -> Self {
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Monomial { orders }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn is_one(&self) -> bool {
        self.orders.is_empty()
    }

    /// `deg ∂ᵏL = k + 1`, additive on products.
    pub fn degree(&self) -> u32 {
        self.orders.iter().map(|k| k + 1).sum()
    }

    /// `Δ(∂ᵏL) = k + 2`, additive on products; constants have weight 0.
    pub fn conformal_weight(&self) -> u32 {
        self.orders.iter().map(|k| k + 2).sum()
    }

    /// Number of factors equal to `∂ᵏL`.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.orders.iter().filter(|&&o| o == k).count() as u32
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut orders = Vec::with_capacity(self.orders.len() + other.orders.len());
        orders.extend_from_slice(&self.orders);
        orders.extend_from_slice(&other.orders);
        Monomial::new(orders)
    }

    /// Replaces one factor `∂ᵏL` by `∂ᵏ⁺¹L`. The factor must be present.
    fn bump(&self, k: u32) -> Monomial {
        let mut orders = self.orders.clone();
        let at = orders.iter().position(|&o| o == k).expect("factor present");
        orders[at] += 1;
        Monomial::new(orders)
    }

    /// Drops one factor `∂ᵏL`. The factor must be present.
    fn remove(&self, k: u32) -> Monomial {
        let mut orders = self.orders.clone();
        let at = orders.iter().position(|&o| o == k).expect("factor present");
        orders.remove(at);
        Monomial { orders }
    }

    /// The monomial matching a partition: part `k` becomes `∂ᵏ⁻¹L`.
    pub fn from_partition(p: &Partition) -> Monomial {
        Monomial {
            orders: p.parts().iter().map(|&k| k - 1).collect(),
        }
    }

    pub fn to_partition(&self) -> Partition {
        Partition::from_sorted(self.orders.iter().map(|&k| k + 1).collect())
    }

    /// All monomials of the given degree.
    pub fn all_of_degree(n: u32) -> Vec<Monomial> {
        Partition::all(n).iter().map(Monomial::from_partition).collect()
    }

    /// All monomials of degree at most `n`.
    pub fn all_up_to_degree(n: u32) -> Vec<Monomial> {
        (0..=n).flat_map(Monomial::all_of_degree).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.orders.len() {
            let k = self.orders[i];
            let run = self.orders[i..].iter().take_while(|&&o| o == k).count();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "L")?;
            } else {
                write!(f, "d{k}L")?;
            }
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A finite ℤ-linear combination of monomials with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        DiffPoly::term(Monomial::one(), c)
    }

    /// `∂ᵏL`.
    pub fn generator(k: u32) -> Self {
        DiffPoly::term(Monomial::generator(k), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = DiffPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &DiffPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> DiffPoly {
        (0..e).fold(DiffPoly::one(), |acc, _| acc.mul(self))
    }

    /// The total derivative: Leibniz rule with `∂(∂ᵏL) = ∂ᵏ⁺¹L`.
    pub fn derive(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut seen = None;
            for &k in m.orders() {
                if seen == Some(k) {
                    continue;
                }
                seen = Some(k);
                out.add_term(m.bump(k), c * m.multiplicity(k));
            }
        }
        out
    }

    /// `∂ⁿ` applied `n` times.
    pub fn derive_n(&self, n: u32) -> DiffPoly {
        (0..n).fold(self.clone(), |acc, _| acc.derive())
    }

    /// Formal partial derivative with respect to the generator `∂ᵏL`.
    pub fn partial_wrt(&self, k: u32) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mult = m.multiplicity(k);
            if mult > 0 {
                out.add_term(m.remove(k), c * mult);
            }
        }
        out
    }

    /// Highest generator order occurring, if any generator occurs.
    pub fn max_order(&self) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.orders().first().copied()).max()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Scales every monomial by its conformal weight (the Hamiltonian `H`).
    pub fn apply_hamiltonian(&self) -> DiffPoly {
        DiffPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c * m.conformal_weight())),
        )
    }

    /// Splits into homogeneous components of fixed conformal weight.
    pub fn weight_components(&self) -> BTreeMap<u32, DiffPoly> {
        let mut out: BTreeMap<u32, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.conformal_weight())
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Terms in display order: highest degree first, then descending orders.
    pub(crate) fn display_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        v
    }
}

impl From<Monomial> for DiffPoly {
    fn from(m: Monomial) -> Self {
        DiffPoly::term(m, 1)
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        DiffPoly::mul(self, rhs)
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.display_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for DiffPoly {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_diffpoly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DiffPoly {
        s.parse().unwrap()
    }

    fn g(k: u32) -> DiffPoly {
        DiffPoly::generator(k)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(g(0).mul(&g(1)), DiffPoly::from(Monomial::new(vec![0, 1])));
        let lhs = (&g(0) + &g(1)).mul(&(&g(0) - &g(1)));
        assert_eq!(lhs, &g(0).pow(2) - &g(1).pow(2));
        let f = dp("3 L d1L^2 - 2 d3L");
        assert_eq!(DiffPoly::one().mul(&f), f);
    }

    #[test]
    fn derive_examples() {
        assert_eq!(g(0).pow(2).derive(), dp("2 L d1L"));
        assert!(DiffPoly::one().derive().is_zero());
        // (∂L)²L → 2 ∂²L ∂L L + (∂L)³
        assert_eq!(dp("d1L^2 L").derive(), dp("2 d2L d1L L + d1L^3"));
    }

    #[test]
    fn degree_and_weight_examples() {
        assert_eq!(Monomial::new(vec![0, 0, 3]).degree(), 6);
        assert_eq!(Monomial::one().degree(), 0);
        for n in 0..6 {
            assert_eq!(Monomial::generator(n).degree(), n + 1);
        }
        assert_eq!(Monomial::generator(0).conformal_weight(), 2);
        assert_eq!(Monomial::one().conformal_weight(), 0);
        assert_eq!(Monomial::new(vec![0, 1]).conformal_weight(), 5);
    }

    #[test]
    fn partial_examples() {
        assert_eq!(g(0).pow(2).partial_wrt(0), dp("2 L"));
        assert!(g(0).pow(2).partial_wrt(1).is_zero());
        assert_eq!(dp("L d1L^2").partial_wrt(1), dp("2 L d1L"));
    }

    #[test]
    fn text_examples() {
        let f = dp("3 L d1L^2 - 2 d3L");
        let expected = &DiffPoly::term(Monomial::new(vec![0, 1, 1]), 3)
            - &DiffPoly::term(Monomial::generator(3), 2);
        assert_eq!(f, expected);
        assert_eq!(dp("1"), DiffPoly::one());
        assert_eq!(dp("0"), DiffPoly::zero());
        assert_eq!(f.to_string(), "3 d1L^2 L - 2 d3L");
        assert_eq!(DiffPoly::zero().to_string(), "0");
        assert_eq!(DiffPoly::constant(-4).to_string(), "-4");
    }

    #[test]
    fn degree_n_monomials_match_partitions() {
        for n in 0..=10 {
            let monos = Monomial::all_of_degree(n);
            let parts = Partition::all(n);
            assert_eq!(monos.len(), parts.len());
            for (m, p) in monos.iter().zip(&parts) {
                assert_eq!(m.degree(), n);
                assert_eq!(&m.to_partition(), p);
                assert_eq!(&Monomial::from_partition(p), m);
            }
        }
    }
}
