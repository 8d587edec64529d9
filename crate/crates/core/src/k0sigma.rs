//! The Grothendieck group `K₀(Σ) = ⊕ₙ K₀(Σₙ)` in the Specht basis `[S^μ]`,
//! together with the linear maps induced by induction-type functors and the
//! isomorphism `φ_Σ` onto `ℤ[∂ⁿL]`.
//!
//! Specht modules are never built; every map acts on class labels.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bracket::bracket_master;
use crate::diffpoly::{AlgebraCtx, DiffPoly, Monomial};
use crate::error::Error;
use crate::partition::Partition;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct K0SigmaElem {
    terms: BTreeMap<Partition, BigInt>,
}

impl K0SigmaElem {
    pub fn zero() -> Self {
        K0SigmaElem::default()
    }

    /// The class `[S^μ]`.
    pub fn basis(mu: Partition) -> Self {
        let mut e = K0SigmaElem::zero();
        e.add_term(mu, BigInt::one());
        e
    }

    /// The unit `[S^()]`.
    pub fn one() -> Self {
        K0SigmaElem::basis(Partition::empty())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, BigInt)>) -> Self {
        let mut e = K0SigmaElem::zero();
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn add_term(&mut self, p: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &K0SigmaElem) -> K0SigmaElem {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &K0SigmaElem) -> K0SigmaElem {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> K0SigmaElem {
        K0SigmaElem::from_terms(self.terms.iter().map(|(p, v)| (p.clone(), v * c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Partition) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    /// Linear extension of a map defined on basis classes.
    pub fn map_linear(&self, f: impl Fn(&Partition) -> K0SigmaElem) -> K0SigmaElem {
        let mut out = K0SigmaElem::zero();
        for (p, c) in &self.terms {
            for (q, d) in f(p).terms {
                out.add_term(q, d * c);
            }
        }
        out
    }

    /// Linear extension of a basis map into a sum of classes with unit coefficients.
    fn map_sum(&self, f: impl Fn(&Partition) -> Vec<Partition>) -> K0SigmaElem {
        self.map_linear(|p| K0SigmaElem::from_terms(f(p).into_iter().map(|q| (q, BigInt::one()))))
    }

    /// Terms in display order: by size, then descending partitions.
    pub(crate) fn display_terms(&self) -> Vec<(&Partition, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
        v
    }
}

impl From<Partition> for K0SigmaElem {
    fn from(p: Partition) -> Self {
        K0SigmaElem::basis(p)
    }
}

impl fmt::Display for K0SigmaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.display_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{abs}*{p}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for K0SigmaElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_k0sigma(s)
    }
}

/// `φ_Σ`: part `k` of `μ` becomes a factor `∂ᵏ⁻¹L`.
pub fn phi_sigma(e: &K0SigmaElem) -> DiffPoly {
    DiffPoly::from_terms(
        e.terms()
            .map(|(p, c)| (Monomial::from_partition(p), c.clone())),
    )
}

pub fn phi_sigma_inv(f: &DiffPoly) -> K0SigmaElem {
    K0SigmaElem::from_terms(f.terms().map(|(m, c)| (m.to_partition(), c.clone())))
}

/// Branching rule for induction: sum over all ways to add a box.
pub fn ind(e: &K0SigmaElem) -> K0SigmaElem {
    e.map_sum(Partition::addable_results)
}

/// Branching rule for restriction: sum over all ways to remove a box.
pub fn res(e: &K0SigmaElem) -> K0SigmaElem {
    e.map_sum(Partition::removable_results)
}

/// Column-selective induction: add a box to column `i` (1-based) when the
/// result is still a partition, otherwise zero.
pub fn p_i_ind(e: &K0SigmaElem, i: u32) -> Result<K0SigmaElem, Error> {
    if i == 0 {
        return Err(Error::domain("column index must be at least 1"));
    }
    Ok(e.map_linear(|mu| match add_to_column(mu, i) {
        Some(nu) => K0SigmaElem::basis(nu),
        None => K0SigmaElem::zero(),
    }))
}

fn add_to_column(mu: &Partition, i: u32) -> Option<Partition> {
    let cols = mu.conjugate();
    let cols = cols.parts();
    let idx = (i - 1) as usize;
    let col = |k: usize| cols.get(k).copied().unwrap_or(0);
    if idx > cols.len() || (idx > 0 && col(idx - 1) <= col(idx)) {
        return None;
    }
    let mut new_cols = cols.to_vec();
    if idx == new_cols.len() {
        new_cols.push(1);
    } else {
        new_cols[idx] += 1;
    }
    Some(Partition::from_sorted(new_cols).conjugate())
}

/// `P^j Ind`: inserts a row of `j` boxes into every class.
pub fn pj_ind(e: &K0SigmaElem, j: u32) -> Result<K0SigmaElem, Error> {
    if j == 0 {
        return Err(Error::domain("row length must be at least 1"));
    }
    let by_rows = e.map_linear(|mu| {
        K0SigmaElem::basis(mu.insert_row(j).expect("j >= 1"))
    });
    debug_assert_eq!(by_rows, pj_ind_composed(e, j)?);
    Ok(by_rows)
}

/// `p_j Ind ∘ ⋯ ∘ p_1 Ind`, the column-by-column construction of `P^j Ind`.
pub fn pj_ind_composed(e: &K0SigmaElem, j: u32) -> Result<K0SigmaElem, Error> {
    if j == 0 {
        return Err(Error::domain("row length must be at least 1"));
    }
    (1..=j).try_fold(e.clone(), |acc, i| p_i_ind(&acc, i))
}

/// `∇[S^μ] = Σᵢ nᵢ [S^{νⁱ}]`, where `νⁱ` raises one copy of the i-th distinct
/// part value by one and `nᵢ` is its multiplicity.
pub fn nabla(e: &K0SigmaElem) -> K0SigmaElem {
    e.map_linear(|mu| {
        let mut out = K0SigmaElem::zero();
        let parts = mu.parts();
        let mut start = 0usize;
        for (value, count) in mu.multiplicities() {
            let mut raised = parts.to_vec();
            raised[start] = value + 1;
            out.add_term(Partition::from_sorted(raised), BigInt::from(count));
            start += count as usize;
        }
        out
    })
}

/// `[S^μ]·[S^ν] = [S^{μ∪ν}]`.
pub fn product(a: &K0SigmaElem, b: &K0SigmaElem) -> K0SigmaElem {
    let mut out = K0SigmaElem::zero();
    for (p, x) in a.terms() {
        for (q, y) in b.terms() {
            out.add_term(p.union(q), x * y);
        }
    }
    out
}

/// A λ-polynomial with `K₀(Σ)` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K0LambdaPoly {
    coeffs: BTreeMap<u32, K0SigmaElem>,
}

impl K0LambdaPoly {
    pub fn coeff(&self, k: u32) -> K0SigmaElem {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &K0SigmaElem)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for K0LambdaPoly {
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

/// The λ-bracket on `K₀(Σ)` transported through `φ_Σ`.
pub fn lambda_bracket_k0(a: &K0SigmaElem, b: &K0SigmaElem, ctx: &AlgebraCtx) -> K0LambdaPoly {
    let br = bracket_master(&phi_sigma(a), &phi_sigma(b), ctx);
    K0LambdaPoly {
        coeffs: br.coeffs().map(|(k, c)| (k, phi_sigma_inv(c))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(parts: &[u32]) -> K0SigmaElem {
        K0SigmaElem::basis(Partition::new(parts.to_vec()).unwrap())
    }

    fn k(text: &str) -> K0SigmaElem {
        text.parse().unwrap()
    }

    fn dp(text: &str) -> DiffPoly {
        text.parse().unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_sigma(&s(&[2, 1])), dp("d1L L"));
        assert_eq!(phi_sigma(&s(&[])), DiffPoly::one());
        assert_eq!(phi_sigma(&k("3*[3,1,1] - [2]")), dp("3 d2L L^2 - d1L"));
        assert_eq!(phi_sigma_inv(&dp("3 d2L L^2 - d1L")), k("3*[3,1,1] - [2]"));
    }

    #[test]
    fn ind_res_examples() {
        assert_eq!(ind(&s(&[1])), k("[2] + [1,1]"));
        assert_eq!(res(&s(&[2, 1])), k("[1,1] + [2]"));
        assert!(res(&s(&[])).is_zero());
    }

    #[test]
    fn p_i_ind_examples() {
        // column 1 of (1) grows to length 2
        assert_eq!(p_i_ind(&s(&[1]), 1).unwrap(), s(&[1, 1]));
        assert_eq!(p_i_ind(&s(&[1, 1]), 2).unwrap(), s(&[2, 1]));
        assert!(p_i_ind(&s(&[1]), 3).unwrap().is_zero());
        // (2,2,1)' = (3,2): column 2 is addable.
        assert_eq!(p_i_ind(&s(&[2, 2, 1]), 2).unwrap(), s(&[2, 2, 2]));
        // (2,2)' = (2,2): column 2 is blocked.
        assert!(p_i_ind(&s(&[2, 2]), 2).unwrap().is_zero());
        assert!(p_i_ind(&s(&[1]), 0).is_err());
    }

    #[test]
    fn p_i_ind_sums_to_ind() {
        for mu in Partition::all_up_to(8) {
            let e = K0SigmaElem::basis(mu.clone());
            let total = (1..=mu.parts().first().copied().unwrap_or(0) + 1)
                .fold(K0SigmaElem::zero(), |acc, i| acc.add(&p_i_ind(&e, i).unwrap()));
            assert_eq!(total, ind(&e), "{mu}");
        }
    }

    #[test]
    fn pj_ind_examples() {
        assert_eq!(pj_ind(&s(&[5, 2, 1]), 4).unwrap(), s(&[5, 4, 2, 1]));
        for j in 1..6 {
            assert_eq!(pj_ind(&s(&[]), j).unwrap(), s(&[j]));
        }
        assert_eq!(pj_ind(&s(&[2, 2]), 2).unwrap(), s(&[2, 2, 2]));
        assert!(pj_ind(&s(&[2]), 0).is_err());
    }

    #[test]
    fn pj_routes_agree() {
        for mu in Partition::all_up_to(9) {
            let e = K0SigmaElem::basis(mu);
            for j in 1..=6 {
                let rows = e.map_linear(|p| K0SigmaElem::basis(p.insert_row(j).unwrap()));
                assert_eq!(rows, pj_ind_composed(&e, j).unwrap());
            }
        }
    }

    #[test]
    fn nabla_examples() {
        assert_eq!(nabla(&s(&[2, 2, 1])), k("2*[3,2,1] + [2,2,2]"));
        assert!(nabla(&s(&[])).is_zero());
        assert_eq!(nabla(&s(&[1])), s(&[2]));
    }

    #[test]
    fn product_examples() {
        assert_eq!(product(&s(&[2, 1]), &s(&[3, 1])), s(&[3, 2, 1, 1]));
        let e = k("2*[3,1] - [2,2] + [1]");
        assert_eq!(product(&e, &K0SigmaElem::one()), e);
        assert_eq!(product(&s(&[1]), &s(&[1])), s(&[1, 1]));
    }

    #[test]
    fn transported_bracket_examples() {
        let ctx = AlgebraCtx::new(1);
        let br = lambda_bracket_k0(&s(&[1]), &s(&[1]), &ctx);
        assert_eq!(br.coeff(0), s(&[2]));
        assert_eq!(br.coeff(1), k("2*[1]"));
        assert_eq!(br.coeff(3), K0SigmaElem::one());
        assert_eq!(br.to_string(), "([2]) + (2*[1])*lam + ([])*lam^3");
        assert!(lambda_bracket_k0(&K0SigmaElem::one(), &s(&[3, 1]), &ctx).is_zero());

        let br = lambda_bracket_k0(&s(&[2]), &s(&[2]), &ctx);
        assert_eq!(br.coeff(1), k("-[3]"));
        assert_eq!(br.coeff(2), k("-3*[2]"));
        assert_eq!(br.coeff(3), k("-2*[1]"));
        assert_eq!(br.coeff(5), k("-[]"));
    }

    #[test]
    fn display_form() {
        assert_eq!(k("2*[3,1] - [2,2]").to_string(), "2*[3,1] - [2,2]");
        assert_eq!(K0SigmaElem::zero().to_string(), "0");
    }
}
