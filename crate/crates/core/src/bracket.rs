//! λ-bracket of the Virasoro-Magri Poisson vertex algebra on `ℤ[∂ⁿL]`.
//!
//! Two independent evaluators are provided. [`bracket_master`] expands
//! through generator partial derivatives and the right-acting shifted
//! generator bracket. [`bracket_recursive`] only uses the Leibniz rule in the
//! second slot, right sesquilinearity and skew-symmetry, bottoming out at
//! [`gen_bracket`]. They must agree exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::diffpoly::{AlgebraCtx, DiffPoly, Monomial};
use crate::lambda::{BiLambdaPoly, LambdaPoly};
use crate::util::{binomial, factorial};

/// `{L_λ L} = ∂L + 2λL + cλ³`.
pub fn gen_bracket(ctx: &AlgebraCtx) -> LambdaPoly {
    LambdaPoly::from_coeffs([
        (0, DiffPoly::generator(1)),
        (1, DiffPoly::term(Monomial::generator(0), 2)),
        (3, DiffPoly::constant(ctx.central_charge)),
    ])
}

/// `{f_λ g} = Σ_{m,n} ∂g/∂L⁽ⁿ⁾ (λ+∂)ⁿ {L_{λ+∂} L}_→ (-λ-∂)ᵐ ∂f/∂L⁽ᵐ⁾`.
pub fn bracket_master(f: &DiffPoly, g: &DiffPoly, ctx: &AlgebraCtx) -> LambdaPoly {
    let (Some(max_m), Some(max_n)) = (f.max_order(), g.max_order()) else {
        return LambdaPoly::zero();
    };
    let gen = gen_bracket(ctx);

    // Everything right of (λ+∂)ⁿ does not depend on n, so sum it over m once.
    let mut inner = LambdaPoly::zero();
    for m in 0..=max_m {
        let df = f.partial_wrt(m);
        if df.is_zero() {
            continue;
        }
        let shifted = LambdaPoly::constant(df).shift_apply(m, true);
        for (p, v) in gen.coeffs() {
            inner.add_assign_ref(&shifted.shift_apply(p, false).mul_poly(v));
        }
    }

    let mut out = LambdaPoly::zero();
    for n in 0..=max_n {
        let dg = g.partial_wrt(n);
        if dg.is_zero() {
            continue;
        }
        out.add_assign_ref(&inner.shift_apply(n, false).mul_poly(&dg));
    }
    out
}

/// `{L_μ f}` for a monomial `f`, by the Leibniz rule and `{L_μ ∂ᵏL} = (μ+∂)ᵏ{L_μ L}`.
fn generator_bracket_right(f: &Monomial, gen: &LambdaPoly) -> LambdaPoly {
    let mut out = LambdaPoly::zero();
    for_each_factor(f, |k, mult, rest| {
        let term = gen.shift_apply(k, false).mul_poly(&DiffPoly::term(rest, mult));
        out.add_assign_ref(&term);
    });
    out
}

/// `{f_λ L} = -{L_{-λ-∂} f}`.
fn generator_bracket_left(f: &Monomial, gen: &LambdaPoly) -> LambdaPoly {
    generator_bracket_right(f, gen)
        .substitute_neg_lambda_minus_d()
        .neg()
}

/// Calls `visit(k, multiplicity of ∂ᵏL, monomial with one ∂ᵏL removed)` for
/// each distinct factor.
fn for_each_factor(m: &Monomial, mut visit: impl FnMut(u32, u32, Monomial)) {
    let orders = m.orders();
    let mut i = 0;
    while i < orders.len() {
        let k = orders[i];
        let run = orders[i..].iter().take_while(|&&o| o == k).count();
        let mut rest = orders.to_vec();
        rest.remove(i);
        visit(k, run as u32, Monomial::new(rest));
        i += run;
    }
}

fn bracket_recursive_monomial(f: &Monomial, g: &Monomial, gen: &LambdaPoly) -> LambdaPoly {
    if f.is_one() || g.is_one() {
        return LambdaPoly::zero();
    }
    let left = generator_bracket_left(f, gen);
    let mut out = LambdaPoly::zero();
    for_each_factor(g, |n, mult, rest| {
        let term = left
            .shift_apply(n, false)
            .mul_poly(&DiffPoly::term(rest, mult));
        out.add_assign_ref(&term);
    });
    out
}

/// The same bracket as [`bracket_master`], computed by reduction to the
/// generator bracket through Leibniz, sesquilinearity and skew-symmetry.
pub fn bracket_recursive(f: &DiffPoly, g: &DiffPoly, ctx: &AlgebraCtx) -> LambdaPoly {
    let gen = gen_bracket(ctx);
    let mut out = LambdaPoly::zero();
    for (a, x) in f.terms() {
        for (b, y) in g.terms() {
            let br = bracket_recursive_monomial(a, b, &gen);
            out.add_assign_ref(&br.scale(&(x * y)));
        }
    }
    out
}

/// `f₍ₙ₎g = n! · [λⁿ]{f_λ g}`.
pub fn nth_product(f: &DiffPoly, g: &DiffPoly, n: u32, ctx: &AlgebraCtx) -> DiffPoly {
    bracket_master(f, g, ctx).coeff(n).scale(&factorial(n))
}

/// `{g_λ f} + {f_{-λ-∂} g}`; identically zero.
pub fn skew_defect(f: &DiffPoly, g: &DiffPoly, ctx: &AlgebraCtx) -> LambdaPoly {
    let forward = bracket_master(f, g, ctx).substitute_neg_lambda_minus_d();
    bracket_master(g, f, ctx).add(&forward)
}

/// `{a_λ{b_μ c}} - {{a_λ b}_{λ+μ} c} - {b_μ{a_λ c}}`; identically zero.
pub fn jacobi_defect(a: &DiffPoly, b: &DiffPoly, c: &DiffPoly, ctx: &AlgebraCtx) -> BiLambdaPoly {
    let mut outer = BiLambdaPoly::zero();
    for (j, d) in bracket_master(b, c, ctx).coeffs() {
        for (i, e) in bracket_master(a, d, ctx).coeffs() {
            outer.add_at(i, j, e);
        }
    }

    let mut nested = BiLambdaPoly::zero();
    for (i, f) in bracket_master(a, b, ctx).coeffs() {
        for (k, g) in bracket_master(f, c, ctx).coeffs() {
            // λⁱ (λ+μ)ᵏ
            for r in 0..=k {
                nested.add_at(i + r, k - r, &g.scale(&binomial(k, r)));
            }
        }
    }

    let mut swapped = BiLambdaPoly::zero();
    for (i, h) in bracket_master(a, c, ctx).coeffs() {
        for (j, p) in bracket_master(b, h, ctx).coeffs() {
            swapped.add_at(i, j, p);
        }
    }

    outer.sub(&nested).sub(&swapped)
}

/// `H(f₍ₙ₎g) - Δ_f·f₍ₙ₎g - Δ_g·f₍ₙ₎g + (n+1)·f₍ₙ₎g` for monomials; identically zero.
pub fn hamiltonian_defect(f: &Monomial, g: &Monomial, n: u32, ctx: &AlgebraCtx) -> DiffPoly {
    let product = nth_product(&f.clone().into(), &g.clone().into(), n, ctx);
    let shift = BigInt::from(n + 1) - f.conformal_weight() - g.conformal_weight();
    &product.apply_hamiltonian() + &product.scale(&shift)
}

/// `{a, b}_ħ = Σ_j C(Δ_a - 1, j) ħʲ a₍ⱼ₎b`, summed over the conformal-weight
/// components of `a`. Keys are ħ-exponents.
pub fn hbar_bracket(a: &DiffPoly, b: &DiffPoly, ctx: &AlgebraCtx) -> BTreeMap<u32, DiffPoly> {
    let mut out: BTreeMap<u32, DiffPoly> = BTreeMap::new();
    for (weight, component) in a.weight_components() {
        // Constants have weight 0 and bracket to zero.
        if weight == 0 {
            continue;
        }
        for (j, c) in bracket_master(&component, b, ctx).coeffs() {
            let scale = binomial(weight - 1, j) * factorial(j);
            let term = c.scale(&scale);
            if term.is_zero() {
                continue;
            }
            let slot = out.entry(j).or_default();
            slot.add_assign_ref(&term);
            if slot.is_zero() {
                out.remove(&j);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DiffPoly {
        s.parse().unwrap()
    }

    fn lp(pairs: &[(u32, &str)]) -> LambdaPoly {
        LambdaPoly::from_coeffs(pairs.iter().map(|&(k, s)| (k, dp(s))))
    }

    const C0: AlgebraCtx = AlgebraCtx { central_charge: 0 };
    const C1: AlgebraCtx = AlgebraCtx { central_charge: 1 };
    const CM2: AlgebraCtx = AlgebraCtx { central_charge: -2 };

    #[test]
    fn generator_bracket_values() {
        assert_eq!(gen_bracket(&C0), lp(&[(0, "d1L"), (1, "2 L")]));
        assert_eq!(gen_bracket(&C1), lp(&[(0, "d1L"), (1, "2 L"), (3, "1")]));
        assert_eq!(gen_bracket(&CM2), lp(&[(0, "d1L"), (1, "2 L"), (3, "-2")]));
    }

    #[test]
    fn master_examples() {
        let l = dp("L");
        for ctx in [C0, C1, CM2] {
            assert_eq!(bracket_master(&l, &l, &ctx), gen_bracket(&ctx));
        }
        let f = dp("3 L d2L - d1L");
        assert!(bracket_master(&DiffPoly::one(), &f, &C1).is_zero());
        assert!(bracket_master(&f, &DiffPoly::one(), &C1).is_zero());
        let dl = dp("d1L");
        assert_eq!(
            bracket_master(&dl, &dl, &C1),
            lp(&[(1, "-d2L"), (2, "-3 d1L"), (3, "-2 L"), (5, "-1")])
        );
    }

    #[test]
    fn recursive_examples() {
        let l = dp("L");
        for ctx in [C0, C1, CM2] {
            assert_eq!(bracket_recursive(&l, &l, &ctx), gen_bracket(&ctx));
        }
        assert_eq!(
            bracket_recursive(&l, &dp("L^2"), &C1),
            lp(&[(0, "2 L d1L"), (1, "4 L^2"), (3, "2 L")])
        );
        let dl = dp("d1L");
        assert_eq!(bracket_recursive(&dl, &dl, &C1), bracket_master(&dl, &dl, &C1));
    }

    #[test]
    fn nth_product_examples() {
        let l = dp("L");
        assert_eq!(nth_product(&l, &l, 1, &C1), dp("2 L"));
        assert_eq!(nth_product(&l, &l, 3, &C1), dp("6"));
        assert_eq!(nth_product(&l, &l, 3, &CM2), dp("-12"));
        assert_eq!(nth_product(&dp("d1L"), &dp("d1L"), 1, &C0), dp("-d2L"));
    }

    #[test]
    fn skew_examples() {
        let cases = [("L", "L"), ("L", "d1L"), ("L^2", "d1L L")];
        for ctx in [C0, C1, CM2] {
            for (a, b) in cases {
                assert!(skew_defect(&dp(a), &dp(b), &ctx).is_zero(), "{a} {b}");
            }
        }
    }

    #[test]
    fn jacobi_examples() {
        for ctx in [C0, C1, CM2] {
            assert!(jacobi_defect(&dp("L"), &dp("L"), &dp("L"), &ctx).is_zero());
            assert!(jacobi_defect(&DiffPoly::one(), &dp("d1L"), &dp("L^2"), &ctx).is_zero());
            assert!(jacobi_defect(&dp("L"), &dp("d1L"), &dp("L^2"), &ctx).is_zero());
        }
    }

    #[test]
    fn jacobi_detects_a_broken_bracket() {
        // The nested term alone is not zero, so a vanishing defect is not vacuous.
        let ctx = C1;
        let l = dp("L");
        let mut nested = BiLambdaPoly::zero();
        for (i, f) in bracket_master(&l, &l, &ctx).coeffs() {
            for (k, g) in bracket_master(f, &l, &ctx).coeffs() {
                for r in 0..=k {
                    nested.add_at(i + r, k - r, &g.scale(&binomial(k, r)));
                }
            }
        }
        assert!(!nested.is_zero());
    }

    #[test]
    fn hamiltonian_examples() {
        let l = Monomial::generator(0);
        assert!(hamiltonian_defect(&l, &l, 1, &C1).is_zero());
        assert!(hamiltonian_defect(&l, &l, 3, &C1).is_zero());
        assert!(hamiltonian_defect(&Monomial::generator(1), &Monomial::new(vec![0, 0]), 0, &C1).is_zero());
    }

    #[test]
    fn hbar_examples() {
        let l = dp("L");
        let expected: BTreeMap<u32, DiffPoly> = [(0, dp("d1L")), (1, dp("2 L"))].into();
        assert_eq!(hbar_bracket(&l, &l, &C1), expected);
        assert_eq!(hbar_bracket(&l, &l, &C0), expected);
        assert!(hbar_bracket(&DiffPoly::one(), &dp("L^3"), &C1).is_empty());

        let dl = dp("d1L");
        let got = hbar_bracket(&dl, &l, &C0);
        let mut want = BTreeMap::new();
        for j in 0..=2 {
            let v = nth_product(&dl, &l, j, &C0).scale(&binomial(2, j));
            if !v.is_zero() {
                want.insert(j, v);
            }
        }
        assert_eq!(got, want);
    }
}
