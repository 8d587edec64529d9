//! Finitization maps from `ℤ[∂ⁿL]` onto `ℤ[x]`.
//!
//! `zhu_h` is the H-twisted Zhu projection (`L ↦ x`, `∂ⁿL ↦ 0` for `n ≥ 1`);
//! `q_map` is the quotient by the differential ideal `(∂L - 1)`
//! (`L ↦ x`, `∂L ↦ 1`, `∂ⁿL ↦ 0` for `n ≥ 2`). Both are ring maps given by
//! generator images.

use num_bigint::BigInt;

use crate::bracket::bracket_master;
use crate::diffpoly::{AlgebraCtx, DiffPoly, Monomial};
use crate::k0sigma::{phi_sigma, pj_ind, K0SigmaElem};
use crate::nilcox::{phi_n_inv, XPoly};
use crate::partition::Partition;
use crate::report::{Report, Tally};

/// Applies the ring map determined by `image(k)` for the generator `∂ᵏL`
/// (`None` meaning the generator maps to zero).
fn ring_map(f: &DiffPoly, image: impl Fn(u32) -> Option<XPoly>) -> XPoly {
    let mut out = XPoly::zero();
    'terms: for (m, c) in f.terms() {
        let mut acc = XPoly::constant(c.clone());
        for &k in m.orders() {
            match image(k) {
                Some(v) => acc = acc.mul(&v),
                None => continue 'terms,
            }
        }
        out = out.add(&acc);
    }
    out
}

pub fn zhu_h(f: &DiffPoly) -> XPoly {
    ring_map(f, |k| (k == 0).then(XPoly::x))
}

pub fn q_map(f: &DiffPoly) -> XPoly {
    ring_map(f, |k| match k {
        0 => Some(XPoly::x()),
        1 => Some(XPoly::one()),
        _ => None,
    })
}

/// `Zhu_H({a_λ b}|_{λ=0})`, the Poisson bracket induced on `ℤ[x]`.
pub fn zhu_poisson_bracket(a: &DiffPoly, b: &DiffPoly, ctx: &AlgebraCtx) -> XPoly {
    zhu_h(&bracket_master(a, b, ctx).at_zero())
}

fn delta(cond: bool) -> BigInt {
    BigInt::from(u8::from(cond))
}

/// Sweeps the finitization diagrams over every partition of size at most
/// `n_max` and every `0 ≤ j ≤ j_max`.
///
/// Identities checked, each reported under its own name:
/// * `zhu-mul`: `Zhu(∂ʲL·f) = δ_{j0} x Zhu(f)`
/// * `zhu-derive`: `Zhu(∂f) = 0`
/// * `zhu-zeroth-generator`: `Zhu(L₍₀₎f) = 0` and `Zhu(f₍₀₎L) = 0`
/// * `zhu-zeroth-all`: `Zhu(f₍₀₎g) = 0` for all pairs with `|f|+|g| ≤ n_max`
/// * `zhu-k-theory-cube`: `φ_N⁻¹ Zhu φ_Σ (P^{j+1}Ind e) = δ_{j0} Ind(φ_N⁻¹ Zhu φ_Σ e)`
/// * `q-mul`: `q(∂ʲL·f) = δ_{j0} x q(f) + δ_{j1} q(f)`
/// * `q-derive`: `q(∂f) = d/dx q(f)`
/// * `q-k-theory-cube`: the K-theory faces of the two `q` diagrams
pub fn verify_zhu_diagrams(j_max: u32, n_max: u32, ctx: &AlgebraCtx) -> Report {
    let partitions = Partition::all_up_to(n_max);
    let polys: Vec<(Partition, DiffPoly)> = partitions
        .iter()
        .map(|p| (p.clone(), DiffPoly::from(Monomial::from_partition(p))))
        .collect();

    let mut zhu_mul = Tally::new("zhu-mul");
    let mut zhu_derive = Tally::new("zhu-derive");
    let mut zhu_zeroth_gen = Tally::new("zhu-zeroth-generator");
    let mut zhu_zeroth_all = Tally::new("zhu-zeroth-all");
    let mut zhu_cube = Tally::new("zhu-k-theory-cube");
    let mut q_mul = Tally::new("q-mul");
    let mut q_derive = Tally::new("q-derive");
    let mut q_cube = Tally::new("q-k-theory-cube");

    let l = DiffPoly::generator(0);
    for (p, f) in &polys {
        let zf = zhu_h(f);
        let qf = q_map(f);
        let e = K0SigmaElem::basis(p.clone());

        for j in 0..=j_max {
            let prod = DiffPoly::generator(j).mul(f);
            let case = format!("f={p} j={j}");

            let want = zf.mul_x().scale(&delta(j == 0));
            zhu_mul.check(&case, &zhu_h(&prod), &want);

            let want = qf.mul_x().scale(&delta(j == 0)).add(&qf.scale(&delta(j == 1)));
            q_mul.check(&case, &q_map(&prod), &want);

            let lifted = phi_sigma(&pj_ind(&e, j + 1).expect("row length >= 1"));
            let base = phi_n_inv(&zf);
            let want = base.ind().scale(&delta(j == 0));
            zhu_cube.check(&case, &phi_n_inv(&zhu_h(&lifted)), &want);

            let base = phi_n_inv(&qf);
            let want = base.ind().scale(&delta(j == 0)).add(&base.scale(&delta(j == 1)));
            q_cube.check(&format!("P^{{j+1}}Ind {case}"), &phi_n_inv(&q_map(&lifted)), &want);
        }

        let df = f.derive();
        let case = format!("f={p}");
        zhu_derive.check(&case, &zhu_h(&df), &XPoly::zero());
        q_derive.check(&case, &q_map(&df), &qf.derivative());
        let nabla_image = phi_n_inv(&q_map(&phi_sigma(&crate::k0sigma::nabla(&e))));
        q_cube.check(&format!("nabla {case}"), &nabla_image, &phi_n_inv(&qf).res());

        if p.size() < n_max {
            zhu_zeroth_gen.check(
                &format!("L_(0) {p}"),
                &zhu_poisson_bracket(&l, f, ctx),
                &XPoly::zero(),
            );
            zhu_zeroth_gen.check(
                &format!("{p}_(0) L"),
                &zhu_poisson_bracket(f, &l, ctx),
                &XPoly::zero(),
            );
        }
        for (r, g) in &polys {
            if p.size() + r.size() > n_max {
                continue;
            }
            zhu_zeroth_all.check(
                &format!("{p}_(0) {r}"),
                &zhu_poisson_bracket(f, g, ctx),
                &XPoly::zero(),
            );
        }
    }

    Report::from_tallies([
        zhu_mul,
        zhu_derive,
        zhu_zeroth_gen,
        zhu_zeroth_all,
        zhu_cube,
        q_mul,
        q_derive,
        q_cube,
    ])
}
