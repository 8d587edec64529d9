//! Named identity sweeps. Every invariant the engine promises is addressable
//! here by a suite name; `run_suite("all", ..)` runs them all.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bracket::{
    bracket_master, bracket_recursive, gen_bracket, hamiltonian_defect, jacobi_defect,
    nth_product, skew_defect,
};
use crate::diffpoly::{AlgebraCtx, DiffPoly, Monomial};
use crate::error::Error;
use crate::k0sigma::{
    self, ind, lambda_bracket_k0, nabla, phi_sigma, phi_sigma_inv, pj_ind, pj_ind_composed,
    product, K0SigmaElem,
};
use crate::lambda::LambdaPoly;
use crate::nilcox::{phi_n, phi_n_g0, phi_n_inv, G0NElem, K0NElem, XPoly};
use crate::partition::Partition;
use crate::report::{Report, Tally};
use crate::util::{binomial, factorial};
use crate::weyl::{i_map, psi1, psi2, weyl_apply, weyl_mul, WeylElem};
use crate::zhu::{q_map, verify_zhu_diagrams, zhu_h};

/// Sweep bounds; `None` selects each suite's own default range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    pub max_n: Option<u32>,
    pub max_j: Option<u32>,
    pub max_deg: Option<u32>,
}

impl Bounds {
    fn n(&self, default: u32) -> u32 {
        self.max_n.unwrap_or(default)
    }
    fn j(&self, default: u32) -> u32 {
        self.max_j.unwrap_or(default)
    }
    fn deg(&self, default: u32) -> u32 {
        self.max_deg.unwrap_or(default)
    }
}

type SuiteFn = fn(&Bounds, &AlgebraCtx) -> Report;

pub struct Suite {
    pub name: &'static str,
    pub module: &'static str,
    pub summary: &'static str,
    pub run: SuiteFn,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "conjugate-involution", module: "partitions", summary: "conjugate is an involution, n <= 12", run: conjugate_involution },
    Suite { name: "branching-dimension", module: "partitions", summary: "sum of f over addable results = (n+1) f, n <= 12", run: branching_dimension },
    Suite { name: "union-laws", module: "partitions", summary: "union is commutative, associative, unital, size-additive", run: union_laws },
    Suite { name: "insert-row-union", module: "partitions", summary: "insert_row(p, j) = p ∪ (j)", run: insert_row_union },
    Suite { name: "insert-row-conjugate", module: "partitions", summary: "inserting a j-row adds 1 to the first j columns", run: insert_row_conjugate },
    Suite { name: "mul-laws", module: "diffpoly", summary: "commutative, associative, unital product", run: mul_laws },
    Suite { name: "derive-leibniz", module: "diffpoly", summary: "∂(fg) = ∂f g + f ∂g on random pairs", run: derive_leibniz },
    Suite { name: "derive-grading", module: "diffpoly", summary: "∂ raises degree and conformal weight by 1", run: derive_grading },
    Suite { name: "monomial-partition-bijection", module: "diffpoly", summary: "degree-n monomials biject with partitions of n", run: monomial_partition_bijection },
    Suite { name: "partial-leibniz", module: "diffpoly", summary: "generator partials obey the product rule", run: partial_leibniz },
    Suite { name: "master-vs-recursive", module: "vmpva", summary: "master formula equals the recursive evaluator", run: master_vs_recursive },
    Suite { name: "skew-symmetry", module: "vmpva", summary: "skew_defect = 0 on monomial pairs", run: skew_symmetry },
    Suite { name: "jacobi", module: "vmpva", summary: "jacobi_defect = 0 on monomial triples", run: jacobi },
    Suite { name: "sesquilinearity", module: "vmpva", summary: "{∂f_λ g} = -λ{f_λ g}, {f_λ ∂g} = (λ+∂){f_λ g}", run: sesquilinearity },
    Suite { name: "leibniz", module: "vmpva", summary: "{a_λ bc} = b{a_λ c} + c{a_λ b}", run: leibniz },
    Suite { name: "hamiltonian", module: "vmpva", summary: "monomials are H-eigenvectors compatible with n-th products", run: hamiltonian },
    Suite { name: "integrality", module: "vmpva", summary: "n-th products divisible by n!; generator closed form", run: integrality },
    Suite { name: "phi-sigma-bijection", module: "k0sigma", summary: "φ_Σ and its inverse are mutually inverse", run: phi_sigma_bijection },
    Suite { name: "pj-routes", module: "k0sigma", summary: "row insertion equals p_j ∘ … ∘ p_1", run: pj_routes },
    Suite { name: "pj-square", module: "k0sigma", summary: "φ_Σ ∘ P^j Ind = ∂^{j-1}L · φ_Σ", run: pj_square },
    Suite { name: "nabla-square", module: "k0sigma", summary: "φ_Σ ∘ ∇ = ∂ ∘ φ_Σ", run: nabla_square },
    Suite { name: "nabla-pj", module: "k0sigma", summary: "∇ ∘ P^j Ind = P^{j+1} Ind + P^j Ind ∘ ∇", run: nabla_pj },
    Suite { name: "k0-product-ring-iso", module: "k0sigma", summary: "union product laws; φ_Σ is a ring isomorphism", run: k0_product_ring_iso },
    Suite { name: "nabla-leibniz", module: "k0sigma", summary: "∇(ab) = ∇a b + a ∇b", run: nabla_leibniz },
    Suite { name: "ind-dimension", module: "k0sigma", summary: "Ind multiplies dimension by n+1", run: ind_dimension },
    Suite { name: "k0-bracket-transport", module: "k0sigma", summary: "transported bracket: φ_Σ-compatible, skew, Jacobi", run: k0_bracket_transport },
    Suite { name: "weyl-relation-k0n", module: "nilcox", summary: "Res Ind - Ind Res = Id on [N_n]", run: weyl_relation_k0n },
    Suite { name: "weyl-relation-g0n", module: "nilcox", summary: "Res Ind - Ind Res = Id on [L_n]", run: weyl_relation_g0n },
    Suite { name: "phi-n-intertwine", module: "nilcox", summary: "φ_N turns Ind/Res into x and d/dx", run: phi_n_intertwine },
    Suite { name: "weyl-assoc", module: "nilcox", summary: "normal-ordered product is associative and unital", run: weyl_assoc },
    Suite { name: "witt-commutator", module: "nilcox", summary: "[x^p D, x^q D] = (q-p) x^{p+q-1} D", run: witt_commutator },
    Suite { name: "quantization", module: "nilcox", summary: "i ∘ ψ₁ = ψ₂ ∘ φ_Σ at c = 0", run: quantization },
    Suite { name: "zhu-ring-hom", module: "zhu", summary: "Zhu_H and q are ring homomorphisms", run: zhu_ring_hom },
    Suite { name: "q-derive", module: "zhu", summary: "q ∘ ∂ = d/dx ∘ q", run: q_derive },
    Suite { name: "zhu-derive", module: "zhu", summary: "Zhu_H ∘ ∂ = 0 and Zhu_H of λ⁰ brackets = 0", run: zhu_derive },
    Suite { name: "zhu-k-cube", module: "zhu", summary: "K-theory cube through φ_N⁻¹ Zhu_H φ_Σ", run: zhu_k_cube },
    Suite { name: "zhu-diagrams", module: "zhu", summary: "full finitization diagram sweep", run: zhu_diagrams },
    Suite { name: "text-round-trip", module: "cli", summary: "printed values re-parse to equal values", run: text_round_trip },
];

/// Runs one suite by name, or every suite for `"all"`.
pub fn run_suite(name: &str, bounds: &Bounds, ctx: &AlgebraCtx) -> Result<Report, Error> {
    if name == "all" {
        let mut report = Report::default();
        for s in SUITES {
            report.extend((s.run)(bounds, ctx));
        }
        return Ok(report);
    }
    SUITES
        .iter()
        .find(|s| s.name == name)
        .map(|s| (s.run)(bounds, ctx))
        .ok_or_else(|| Error::Domain(format!("unknown suite '{name}'")))
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_1a4b)
}

/// A random polynomial with 1–4 terms of degree at most `max_deg` and
/// small nonzero coefficients.
pub fn random_poly(rng: &mut impl Rng, max_deg: u32) -> DiffPoly {
    let monos = Monomial::all_up_to_degree(max_deg);
    let terms = rng.gen_range(1..=4);
    let mut out = DiffPoly::zero();
    for _ in 0..terms {
        let m = monos.choose(rng).expect("nonempty").clone();
        let mut c: i64 = rng.gen_range(1..=5);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        out.add_term(m, BigInt::from(c));
    }
    out
}

fn basis_polys(max_n: u32) -> Vec<(Partition, DiffPoly)> {
    Partition::all_up_to(max_n)
        .into_iter()
        .map(|p| {
            let f = DiffPoly::from(Monomial::from_partition(&p));
            (p, f)
        })
        .collect()
}

/// Monomial pairs with total degree at most `max_deg`.
fn monomial_pairs(max_deg: u32) -> Vec<(Monomial, Monomial)> {
    let monos = Monomial::all_up_to_degree(max_deg);
    let mut out = Vec::new();
    for a in &monos {
        for b in &monos {
            if a.degree() + b.degree() <= max_deg {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn one_tally(t: Tally) -> Report {
    Report::from_tallies([t])
}

// ---- partitions ----------------------------------------------------------

fn conjugate_involution(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("conjugate-involution");
    for p in Partition::all_up_to(b.n(12)) {
        let c = p.conjugate();
        t.check_that(&format!("{p}"), c.size() == p.size());
        t.check(&format!("{p}"), &c.conjugate(), &p);
    }
    one_tally(t)
}

fn branching_dimension(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("branching-dimension");
    for p in Partition::all_up_to(b.n(12)) {
        let lhs = p
            .addable_results()
            .iter()
            .fold(num_bigint::BigUint::zero(), |acc, q| acc + q.standard_tableaux_count());
        let rhs = p.standard_tableaux_count() * (p.size() + 1);
        t.check(&format!("{p}"), &lhs, &rhs);
    }
    one_tally(t)
}

fn union_laws(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("union-laws");
    let ps = Partition::all_up_to(b.n(5));
    for p in &ps {
        t.check(&format!("{p} ∪ []"), &p.union(&Partition::empty()), p);
        for q in &ps {
            let case = format!("{p} ∪ {q}");
            t.check(&case, &p.union(q), &q.union(p));
            t.check_that(&case, p.union(q).size() == p.size() + q.size());
            for r in &ps {
                t.check(&format!("{case} ∪ {r}"), &p.union(q).union(r), &p.union(&q.union(r)));
            }
        }
    }
    one_tally(t)
}

fn insert_row_union(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("insert-row-union");
    for p in Partition::all_up_to(b.n(10)) {
        for j in 1..=b.j(6).max(1) {
            let row = Partition::new(vec![j]).expect("positive");
            t.check(&format!("{p} j={j}"), &p.insert_row(j).expect("j >= 1"), &p.union(&row));
        }
    }
    one_tally(t)
}

fn insert_row_conjugate(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("insert-row-conjugate");
    for p in Partition::all_up_to(b.n(10)) {
        let cols = p.conjugate();
        for j in 1..=b.j(6).max(1) {
            let mut want: Vec<u32> = cols.parts().to_vec();
            want.resize(want.len().max(j as usize), 0);
            for c in want.iter_mut().take(j as usize) {
                *c += 1;
            }
            let want = Partition::new(want).expect("positive columns");
            let got = p.insert_row(j).expect("j >= 1").conjugate();
            t.check(&format!("{p} j={j}"), &got, &want);
        }
    }
    one_tally(t)
}

// ---- diffpoly ------------------------------------------------------------

fn mul_laws(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("mul-laws");
    let mut rng = rng();
    let deg = b.deg(8);
    for i in 0..200 {
        let (f, g, h) = (random_poly(&mut rng, deg), random_poly(&mut rng, deg), random_poly(&mut rng, deg));
        let case = format!("#{i}");
        t.check(&case, &f.mul(&g), &g.mul(&f));
        t.check(&case, &f.mul(&g).mul(&h), &f.mul(&g.mul(&h)));
        t.check(&case, &f.mul(&(&g + &h)), &(&f.mul(&g) + &f.mul(&h)));
        t.check(&case, &DiffPoly::one().mul(&f), &f);
    }
    one_tally(t)
}

fn derive_leibniz(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("derive-leibniz");
    let mut rng = rng();
    for i in 0..300 {
        let f = random_poly(&mut rng, b.deg(8));
        let g = random_poly(&mut rng, b.deg(8));
        let rhs = &f.derive().mul(&g) + &f.mul(&g.derive());
        t.check(&format!("#{i} f={f} g={g}"), &f.mul(&g).derive(), &rhs);
    }
    one_tally(t)
}

fn derive_grading(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("derive-grading");
    for m in Monomial::all_up_to_degree(b.deg(10)) {
        for (dm, _) in DiffPoly::from(m.clone()).derive().terms() {
            let case = format!("{m} -> {dm}");
            t.check_that(&case, dm.degree() == m.degree() + 1);
            t.check_that(&case, dm.conformal_weight() == m.conformal_weight() + 1);
        }
    }
    one_tally(t)
}

fn monomial_partition_bijection(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("monomial-partition-bijection");
    for n in 0..=b.n(10) {
        let monos = Monomial::all_of_degree(n);
        let parts = Partition::all(n);
        t.check(&format!("count n={n}"), &monos.len(), &parts.len());
        for p in parts {
            let m = Monomial::from_partition(&p);
            t.check_that(&format!("{p}"), m.degree() == n);
            t.check(&format!("{p}"), &m.to_partition(), &p);
        }
    }
    one_tally(t)
}

fn partial_leibniz(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("partial-leibniz");
    let mut rng = rng();
    for i in 0..200 {
        let f = random_poly(&mut rng, b.deg(8));
        let g = random_poly(&mut rng, b.deg(8));
        for k in 0..=7 {
            let rhs = &f.partial_wrt(k).mul(&g) + &f.mul(&g.partial_wrt(k));
            t.check(&format!("#{i} k={k}"), &f.mul(&g).partial_wrt(k), &rhs);
        }
    }
    one_tally(t)
}

// ---- vmpva ---------------------------------------------------------------

fn master_vs_recursive(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut mono = Tally::new("master-vs-recursive/monomials");
    for (x, y) in monomial_pairs(b.deg(7)) {
        let (f, g) = (DiffPoly::from(x), DiffPoly::from(y));
        mono.check(
            &format!("{{{f} _lam {g}}}"),
            &bracket_master(&f, &g, ctx),
            &bracket_recursive(&f, &g, ctx),
        );
    }
    let mut random = Tally::new("master-vs-recursive/random");
    let mut rng = rng();
    let deg = b.deg(7) + 1;
    for i in 0..200 {
        let f = random_poly(&mut rng, deg);
        let g = random_poly(&mut rng, deg);
        random.check(
            &format!("#{i} {{{f} _lam {g}}}"),
            &bracket_master(&f, &g, ctx),
            &bracket_recursive(&f, &g, ctx),
        );
    }
    Report::from_tallies([mono, random])
}

fn skew_symmetry(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut t = Tally::new("skew-symmetry");
    for (x, y) in monomial_pairs(b.deg(8)) {
        let (f, g) = (DiffPoly::from(x), DiffPoly::from(y));
        t.check(&format!("({f}, {g})"), &skew_defect(&f, &g, ctx), &LambdaPoly::zero());
    }
    one_tally(t)
}

fn jacobi(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut t = Tally::new("jacobi");
    let max = b.deg(6);
    let monos = Monomial::all_up_to_degree(max);
    for x in &monos {
        for y in &monos {
            for z in &monos {
                if x.degree() + y.degree() + z.degree() > max {
                    continue;
                }
                let (f, g, h) = (DiffPoly::from(x.clone()), DiffPoly::from(y.clone()), DiffPoly::from(z.clone()));
                let defect = jacobi_defect(&f, &g, &h, ctx);
                t.check_that(&format!("({f}, {g}, {h}) defect={defect}"), defect.is_zero());
            }
        }
    }
    one_tally(t)
}

fn sesquilinearity(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut left = Tally::new("sesquilinearity/left");
    let mut right = Tally::new("sesquilinearity/right");
    for (x, y) in monomial_pairs(b.deg(8)) {
        let (f, g) = (DiffPoly::from(x), DiffPoly::from(y));
        let base = bracket_master(&f, &g, ctx);
        let case = format!("({f}, {g})");
        left.check(
            &case,
            &bracket_master(&f.derive(), &g, ctx),
            &base.mul_lambda_pow(1).neg(),
        );
        right.check(&case, &bracket_master(&f, &g.derive(), ctx), &base.shift_apply(1, false));
    }
    Report::from_tallies([left, right])
}

fn leibniz(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut t = Tally::new("leibniz");
    let max = b.deg(6);
    let monos = Monomial::all_up_to_degree(max);
    for x in &monos {
        for y in &monos {
            for z in &monos {
                if x.degree() + y.degree() + z.degree() > max {
                    continue;
                }
                let (a, bb, c) = (DiffPoly::from(x.clone()), DiffPoly::from(y.clone()), DiffPoly::from(z.clone()));
                let lhs = bracket_master(&a, &bb.mul(&c), ctx);
                let rhs = bracket_master(&a, &c, ctx)
                    .mul_poly(&bb)
                    .add(&bracket_master(&a, &bb, ctx).mul_poly(&c));
                t.check(&format!("({a}, {bb}, {c})"), &lhs, &rhs);
            }
        }
    }
    one_tally(t)
}

fn hamiltonian(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut t = Tally::new("hamiltonian");
    let monos = Monomial::all_up_to_degree(b.deg(6));
    for f in &monos {
        for g in &monos {
            let br = bracket_master(&f.clone().into(), &g.clone().into(), ctx);
            for (n, _) in br.coeffs() {
                t.check(
                    &format!("({f})_({n})({g})"),
                    &hamiltonian_defect(f, g, n, ctx),
                    &DiffPoly::zero(),
                );
            }
        }
    }
    one_tally(t)
}

/// `(∂ᵐL)₍ⱼ₎(∂ⁿL)` read off the expansion
/// `Σᵢ C(n,i) λⁱ ∂ⁿ⁻ⁱ(∂ + 2λ)L (-λ)ᵐ + (-1)ᵐ c λⁿ⁺ᵐ⁺³`.
fn generator_closed_form(m: u32, n: u32, j: u32, c: i64) -> DiffPoly {
    let mut coeff = DiffPoly::zero();
    let sign = if m % 2 == 1 { -1 } else { 1 };
    for i in 0..=n {
        // λ^{i+m} from (∂ⁿ⁻ⁱ⁺¹L) and λ^{i+m+1} from 2∂ⁿ⁻ⁱL
        if i + m == j {
            coeff.add_term(Monomial::generator(n - i + 1), binomial(n, i) * sign);
        }
        if i + m + 1 == j {
            coeff.add_term(Monomial::generator(n - i), binomial(n, i) * 2 * sign);
        }
    }
    if j == n + m + 3 {
        coeff.add_term(Monomial::one(), BigInt::from(c * sign));
    }
    coeff.scale(&factorial(j))
}

fn integrality(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut divisible = Tally::new("integrality/divided-products");
    for (x, y) in monomial_pairs(b.deg(8)) {
        let (f, g) = (DiffPoly::from(x), DiffPoly::from(y));
        for (n, _) in bracket_master(&f, &g, ctx).coeffs() {
            let p = nth_product(&f, &g, n, ctx);
            let fact = factorial(n);
            let ok = p.terms().all(|(_, c)| (c % &fact).is_zero());
            divisible.check_that(&format!("({f})_({n})({g})"), ok);
        }
    }
    let mut closed = Tally::new("integrality/generator-closed-form");
    for m in 0..=6 {
        for n in 0..=6 {
            let f = DiffPoly::generator(m);
            let g = DiffPoly::generator(n);
            for j in 0..=m + n + 4 {
                closed.check(
                    &format!("(d{m}L)_({j})(d{n}L)"),
                    &nth_product(&f, &g, j, ctx),
                    &generator_closed_form(m, n, j, ctx.central_charge),
                );
            }
        }
    }
    Report::from_tallies([divisible, closed])
}

// ---- k0sigma -------------------------------------------------------------

fn k0_basis(max_n: u32) -> Vec<K0SigmaElem> {
    Partition::all_up_to(max_n).into_iter().map(K0SigmaElem::basis).collect()
}

fn phi_sigma_bijection(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("phi-sigma-bijection");
    for (p, f) in basis_polys(b.n(10)) {
        let e = K0SigmaElem::basis(p.clone());
        t.check(&format!("{p}"), &phi_sigma(&e), &f);
        t.check(&format!("{p}"), &phi_sigma_inv(&phi_sigma(&e)), &e);
        t.check(&format!("{p}"), &phi_sigma(&phi_sigma_inv(&f)), &f);
    }
    let mut rng = rng();
    for i in 0..100 {
        let f = random_poly(&mut rng, b.n(10));
        t.check(&format!("random #{i}"), &phi_sigma(&phi_sigma_inv(&f)), &f);
    }
    one_tally(t)
}

fn pj_routes(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("pj-routes");
    for e in k0_basis(b.n(10)) {
        for j in 1..=b.j(5).max(1) {
            let rows = e.map_linear(|p| K0SigmaElem::basis(p.insert_row(j).expect("j >= 1")));
            t.check(&format!("{e} j={j}"), &rows, &pj_ind_composed(&e, j).expect("j >= 1"));
        }
    }
    one_tally(t)
}

fn pj_square(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("pj-square");
    for e in k0_basis(b.n(10)) {
        for j in 1..=b.j(5).max(1) {
            let lhs = phi_sigma(&pj_ind(&e, j).expect("j >= 1"));
            let rhs = DiffPoly::generator(j - 1).mul(&phi_sigma(&e));
            t.check(&format!("{e} j={j}"), &lhs, &rhs);
        }
    }
    one_tally(t)
}

fn nabla_square(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("nabla-square");
    for e in k0_basis(b.n(10)) {
        t.check(&format!("{e}"), &phi_sigma(&nabla(&e)), &phi_sigma(&e).derive());
    }
    one_tally(t)
}

fn nabla_pj(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("nabla-pj");
    for e in k0_basis(b.n(10)) {
        for j in 1..=b.j(5).max(1) {
            let lhs = nabla(&pj_ind(&e, j).expect("j >= 1"));
            let rhs = pj_ind(&e, j + 1)
                .expect("j >= 1")
                .add(&pj_ind(&nabla(&e), j).expect("j >= 1"));
            t.check(&format!("{e} j={j}"), &lhs, &rhs);
        }
    }
    one_tally(t)
}

fn k0_product_ring_iso(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut iso = Tally::new("k0-product-ring-iso/phi");
    let mut laws = Tally::new("k0-product-ring-iso/laws");
    let basis = k0_basis(b.n(8));
    for a in &basis {
        laws.check(&format!("{a}·1"), &product(a, &K0SigmaElem::one()), a);
        for c in &basis {
            let case = format!("{a}·{c}");
            iso.check(&case, &phi_sigma(&product(a, c)), &phi_sigma(a).mul(&phi_sigma(c)));
            laws.check(&case, &product(a, c), &product(c, a));
        }
    }
    let small = k0_basis(b.n(8).min(4));
    for a in &small {
        for c in &small {
            for d in &small {
                laws.check(
                    &format!("({a}·{c})·{d}"),
                    &product(&product(a, c), d),
                    &product(a, &product(c, d)),
                );
            }
        }
    }
    Report::from_tallies([iso, laws])
}

fn nabla_leibniz(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("nabla-leibniz");
    let basis = k0_basis(b.n(8));
    for a in &basis {
        for c in &basis {
            let rhs = product(&nabla(a), c).add(&product(a, &nabla(c)));
            t.check(&format!("{a}·{c}"), &nabla(&product(a, c)), &rhs);
        }
    }
    one_tally(t)
}

fn ind_dimension(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("ind-dimension");
    for p in Partition::all_up_to(b.n(10)) {
        let image = ind(&K0SigmaElem::basis(p.clone()));
        let dim = image.terms().fold(BigInt::zero(), |acc, (q, c)| {
            acc + c * BigInt::from(q.standard_tableaux_count())
        });
        let want = BigInt::from(p.standard_tableaux_count()) * (p.size() + 1);
        t.check(&format!("{p}"), &dim, &want);
    }
    one_tally(t)
}

fn k0_bracket_transport(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut transport = Tally::new("k0-bracket-transport/phi");
    let mut skew = Tally::new("k0-bracket-transport/skew");
    let mut jac = Tally::new("k0-bracket-transport/jacobi");

    let pairs = k0_basis(b.n(5));
    for a in &pairs {
        for c in &pairs {
            let k0 = lambda_bracket_k0(a, c, ctx);
            let via_phi = LambdaPoly::from_coeffs(k0.coeffs().map(|(k, e)| (k, phi_sigma(e))));
            transport.check(
                &format!("{{{a} _lam {c}}}"),
                &via_phi,
                &bracket_master(&phi_sigma(a), &phi_sigma(c), ctx),
            );
            // skew-symmetry computed on the K₀ side, with ∇ standing in for ∂
            let forward = lambda_bracket_k0(a, c, ctx);
            let back = lambda_bracket_k0(c, a, ctx);
            let mut defect = std::collections::BTreeMap::<u32, K0SigmaElem>::new();
            for (k, e) in back.coeffs() {
                let slot = defect.entry(k).or_default();
                *slot = slot.add(e);
            }
            for (k, e) in forward.coeffs() {
                // e·(-λ-∇)ᵏ = Σᵢ C(k,i) (-1)ᵏ λⁱ ∇ᵏ⁻ⁱ e
                let mut d = e.clone();
                let mut derived = vec![];
                for _ in 0..=k {
                    derived.push(d.clone());
                    d = nabla(&d);
                }
                let sign = if k % 2 == 1 { -BigInt::one() } else { BigInt::one() };
                for i in 0..=k {
                    let term = derived[(k - i) as usize].scale(&(binomial(k, i) * &sign));
                    let slot = defect.entry(i).or_default();
                    *slot = slot.add(&term);
                }
            }
            let nonzero = defect.values().any(|e| !e.is_zero());
            skew.check_that(&format!("({a}, {c})"), !nonzero);
        }
    }

    let triples = k0_basis(b.n(4));
    for a in &triples {
        for c in &triples {
            for d in &triples {
                if a_size(a) + a_size(c) + a_size(d) > b.n(4) {
                    continue;
                }
                let defect = jacobi_defect(&phi_sigma(a), &phi_sigma(c), &phi_sigma(d), ctx);
                jac.check_that(&format!("({a}, {c}, {d})"), defect.is_zero());
            }
        }
    }
    Report::from_tallies([transport, skew, jac])
}

fn a_size(e: &K0SigmaElem) -> u32 {
    e.terms().map(|(p, _)| p.size()).max().unwrap_or(0)
}

// ---- nilcox --------------------------------------------------------------

fn weyl_relation_k0n(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("weyl-relation-k0n");
    for n in 0..=b.n(50) {
        let e = K0NElem::basis(n);
        t.check(&format!("[N{n}]"), &e.ind().res().sub(&e.res().ind()), &e);
    }
    one_tally(t)
}

fn weyl_relation_g0n(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("weyl-relation-g0n");
    for n in 0..=b.n(50) {
        let e = G0NElem::basis(n);
        t.check(&format!("[L{n}]"), &e.ind().res().sub(&e.res().ind()), &e);
    }
    one_tally(t)
}

fn phi_n_intertwine(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut k0 = Tally::new("phi-n-intertwine/k0n");
    let mut g0 = Tally::new("phi-n-intertwine/g0n");
    for n in 0..=b.n(50) {
        let e = K0NElem::basis(n);
        k0.check(&format!("Ind [N{n}]"), &phi_n(&e.ind()), &phi_n(&e).mul_x());
        k0.check(&format!("Res [N{n}]"), &phi_n(&e.res()), &phi_n(&e).derivative());
        k0.check(&format!("inverse [N{n}]"), &phi_n_inv(&phi_n(&e)), &e);

        let g = G0NElem::basis(n);
        g0.check_that(&format!("[L{n}] lattice"), phi_n_g0(&g).in_divided_power_lattice());
        let ind_ok = phi_n_g0(&g.ind()) == phi_n_g0(&g).mul_x();
        let res_ok = phi_n_g0(&g.res()) == phi_n_g0(&g).derivative();
        g0.check_that(&format!("Ind [L{n}]"), ind_ok);
        g0.check_that(&format!("Res [L{n}]"), res_ok);
    }
    for a in 0..=10 {
        for c in 0..=10 {
            let (x, y) = (K0NElem::basis(a), K0NElem::basis(c));
            k0.check(&format!("[N{a}]·[N{c}]"), &phi_n(&x.mul(&y)), &phi_n(&x).mul(&phi_n(&y)));
            let (x, y) = (G0NElem::basis(a), G0NElem::basis(c));
            let ok = phi_n_g0(&x.mul(&y)) == phi_n_g0(&x).mul(&phi_n_g0(&y));
            g0.check_that(&format!("[L{a}]·[L{c}]"), ok);
        }
    }
    Report::from_tallies([k0, g0])
}

fn random_weyl(rng: &mut impl Rng) -> WeylElem {
    let mut w = WeylElem::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c: i64 = rng.gen_range(-4..=4);
        w.add_term(rng.gen_range(0..=4), rng.gen_range(0..=4), BigInt::from(c));
    }
    w
}

fn weyl_assoc(_: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("weyl-assoc");
    let mut rng = rng();
    for i in 0..200 {
        let (u, v, w) = (random_weyl(&mut rng), random_weyl(&mut rng), random_weyl(&mut rng));
        let case = format!("#{i} ({u})({v})({w})");
        t.check(&case, &weyl_mul(&weyl_mul(&u, &v), &w), &weyl_mul(&u, &weyl_mul(&v, &w)));
        t.check(&case, &weyl_mul(&WeylElem::one(), &u), &u);
        t.check(&case, &weyl_mul(&u, &WeylElem::one()), &u);
        let p = XPoly::from_terms((0..6).map(|k| (k, BigInt::from(i64::from(k) + 1))));
        t.check(
            &format!("action {case}"),
            &weyl_apply(&weyl_mul(&u, &v), &p),
            &weyl_apply(&u, &weyl_apply(&v, &p)),
        );
    }
    one_tally(t)
}

fn witt_commutator(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("witt-commutator");
    let max = b.j(8).max(1);
    for p in 1..=max {
        for q in 1..=max {
            let lhs = WeylElem::commutator(&WeylElem::monomial(p, 1, 1), &WeylElem::monomial(q, 1, 1));
            let rhs = WeylElem::monomial(p + q - 1, 1, i64::from(q) - i64::from(p));
            t.check(&format!("p={p} q={q}"), &lhs, &rhs);
        }
    }
    one_tally(t)
}

fn quantization(b: &Bounds, _: &AlgebraCtx) -> Report {
    // The maps are defined at c = 0 regardless of the session charge.
    let ctx = AlgebraCtx::new(0);
    let mut diagram = Tally::new("quantization/diagram");
    let mut action = Tally::new("quantization/action");
    for e in k0_basis(b.n(6)) {
        let words = psi1(&e, &ctx).expect("c = 0");
        let lhs = i_map(&words);
        let rhs = psi2(&phi_sigma(&e), &ctx).expect("c = 0");
        diagram.check(&format!("{e}"), &lhs, &rhs);
        for n in 0..=8 {
            let v = K0NElem::basis(n);
            action.check(
                &format!("{e} on [N{n}]"),
                &phi_n(&words.apply(&v)),
                &weyl_apply(&rhs, &phi_n(&v)),
            );
        }
    }
    Report::from_tallies([diagram, action])
}

// ---- zhu -----------------------------------------------------------------

fn zhu_ring_hom(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut zt = Tally::new("zhu-ring-hom/zhu");
    let mut qt = Tally::new("zhu-ring-hom/q");
    let mut rng = rng();
    for i in 0..200 {
        let f = random_poly(&mut rng, b.deg(8));
        let g = random_poly(&mut rng, b.deg(8));
        let case = format!("#{i} f={f} g={g}");
        zt.check(&case, &zhu_h(&f.mul(&g)), &zhu_h(&f).mul(&zhu_h(&g)));
        qt.check(&case, &q_map(&f.mul(&g)), &q_map(&f).mul(&q_map(&g)));
    }
    zt.check("unit", &zhu_h(&DiffPoly::one()), &XPoly::one());
    qt.check("unit", &q_map(&DiffPoly::one()), &XPoly::one());
    Report::from_tallies([zt, qt])
}

fn q_derive(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("q-derive");
    for (p, f) in basis_polys(b.n(10)) {
        t.check(&format!("{p}"), &q_map(&f.derive()), &q_map(&f).derivative());
    }
    one_tally(t)
}

fn zhu_derive(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut t = Tally::new("zhu-derive");
    let polys = basis_polys(b.n(8));
    for (p, f) in &polys {
        t.check(&format!("∂{p}"), &zhu_h(&f.derive()), &XPoly::zero());
    }
    let l = DiffPoly::generator(0);
    for (p, f) in &polys {
        if p.size() < b.n(8) {
            let zeroth = bracket_master(&l, f, ctx).at_zero();
            t.check(&format!("L_(0){p}"), &zhu_h(&zeroth), &XPoly::zero());
        }
    }
    // the generator bracket itself
    t.check("{L_lam L}|lam=0", &zhu_h(&gen_bracket(ctx).at_zero()), &XPoly::zero());
    one_tally(t)
}

fn zhu_k_cube(b: &Bounds, _: &AlgebraCtx) -> Report {
    let mut t = Tally::new("zhu-k-cube");
    let down = |e: &K0SigmaElem| phi_n_inv(&zhu_h(&phi_sigma(e)));
    for e in k0_basis(b.n(8)) {
        for j in 0..=b.j(4) {
            let lhs = down(&k0sigma::pj_ind(&e, j + 1).expect("j + 1 >= 1"));
            let rhs = down(&e).ind().scale(&BigInt::from(u8::from(j == 0)));
            t.check(&format!("{e} j={j}"), &lhs, &rhs);
        }
    }
    one_tally(t)
}

fn zhu_diagrams(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    verify_zhu_diagrams(b.j(4), b.n(8), ctx)
}

// ---- text ----------------------------------------------------------------

fn text_round_trip(b: &Bounds, ctx: &AlgebraCtx) -> Report {
    let mut t = Tally::new("text-round-trip");
    let mut rng = rng();
    for i in 0..100 {
        let f = random_poly(&mut rng, b.deg(8));
        let g = random_poly(&mut rng, b.deg(8));
        round_trip(&mut t, &format!("diffpoly #{i}"), &f);
        let br = bracket_master(&f, &g, ctx);
        round_trip(&mut t, &format!("lambda #{i}"), &br);
        let e = phi_sigma_inv(&f);
        round_trip(&mut t, &format!("k0 #{i}"), &e);
        let w = random_weyl(&mut rng);
        round_trip(&mut t, &format!("weyl #{i}"), &w);
        let x = zhu_h(&f).add(&q_map(&g));
        round_trip(&mut t, &format!("xpoly #{i}"), &x);
    }
    for p in Partition::all_up_to(8) {
        round_trip(&mut t, &format!("{p}"), &p);
    }
    for n in 0..20 {
        let k = K0NElem::basis(n).scale(&BigInt::from(i64::from(n) - 7));
        round_trip(&mut t, &format!("[N{n}]"), &k);
        let g = G0NElem::basis(n).scale(&BigInt::from(3 - i64::from(n)));
        round_trip(&mut t, &format!("[L{n}]"), &g);
    }
    one_tally(t)
}

fn round_trip<T>(t: &mut Tally, case: &str, value: &T)
where
    T: std::str::FromStr + std::fmt::Display + PartialEq,
{
    match value.to_string().parse::<T>() {
        Ok(back) => t.check(case, &back, value),
        Err(_) => t.check_that(&format!("{case}: '{value}' failed to parse"), false),
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_are_unique() {
        let mut names: Vec<_> = SUITES.iter().map(|s| s.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), SUITES.len());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", &Bounds::default(), &AlgebraCtx::default()).is_err());
    }

    #[test]
    fn closed_form_spot_values() {
        // (L)_(1)(L) = 2L, (L)_(3)(L) = 6c
        assert_eq!(generator_closed_form(0, 0, 1, 5), "2 L".parse().unwrap());
        assert_eq!(generator_closed_form(0, 0, 3, 5), DiffPoly::constant(30));
        // odd m flips the sign of the j = m entry: (∂L)_(1)(L) = -∂L
        assert_eq!(generator_closed_form(1, 0, 1, 0), "-d1L".parse().unwrap());
    }

    #[test]
    fn small_bounds_pass_everywhere() {
        let bounds = Bounds { max_n: Some(4), max_j: Some(3), max_deg: Some(4) };
        for c in [0, 1, -2] {
            let report = run_suite("all", &bounds, &AlgebraCtx::new(c)).unwrap();
            assert!(report.passed(), "c={c}\n{report}");
        }
    }
}
