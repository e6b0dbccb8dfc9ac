//! Seeded random generators and the exact property battery behind
//! `fdq homotopy-test` and the acceptance checks.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::diffop::DiffOp;
use crate::error::Result;
use crate::hochschild::Cochain;
use crate::homotopy::*;
use crate::ring::{int, rat, Monomial, Poly, VarContext};
use crate::space::Space;

pub use rand::SeedableRng;
pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(rng: &mut SuiteRng) -> crate::ring::Rational {
    loop {
        let num = rng.gen_range(-3i64..=3);
        if num != 0 {
            return rat(num, rng.gen_range(1i64..=2));
        }
    }
}

/// A sparse polynomial with 1..=`max_terms` terms of total degree `<= deg`.
pub fn random_poly(rng: &mut SuiteRng, ctx: &Arc<VarContext>, deg: u32, max_terms: usize) -> Poly {
    let monos = Monomial::up_to_degree(ctx.nvars(), deg);
    let mut p = Poly::zero(ctx);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        p.add_term(m, small_rational(rng));
    }
    p
}

/// A random operator of order `<= order` with coefficients of degree `<= deg`.
pub fn random_diffop(rng: &mut SuiteRng, space: &Arc<Space>, order: u32, deg: u32) -> DiffOp {
    let idx = Monomial::up_to_degree(space.n() + space.k(), order);
    let mut d = DiffOp::zero(space);
    for _ in 0..rng.gen_range(1..=3) {
        let m = &idx[rng.gen_range(0..idx.len())];
        let c = random_poly(rng, space.total(), deg, 2);
        d = d.add(&DiffOp::term(space, &c, m.slice(0, space.n()), m.slice(space.n(), space.k())));
    }
    d
}

/// A random cochain with per-slot orders `<= bounds[i]`, value order `<= order`.
pub fn random_cochain(rng: &mut SuiteRng, space: &Arc<Space>, bounds: &[u32], order: u32, deg: u32) -> Cochain {
    let choices: Vec<Vec<Monomial>> = bounds.iter().map(|&l| Monomial::up_to_degree(space.n(), l)).collect();
    let mut c = Cochain::zero(space, bounds.len());
    for _ in 0..rng.gen_range(1..=3) {
        let alphas: Vec<Monomial> = choices.iter().map(|ch| ch[rng.gen_range(0..ch.len())].clone()).collect();
        c.add_term(alphas, random_diffop(rng, space, order, deg));
    }
    c
}

pub fn random_bar(rng: &mut SuiteRng, space: &Arc<Space>, k: usize, deg: u32) -> BarElement {
    BarElement::new(space, k, random_poly(rng, &space.bar_ctx(k), deg, 4)).expect("bar context")
}

pub fn random_koszul(rng: &mut SuiteRng, space: &Arc<Space>, k: usize, deg: u32) -> KoszulElement {
    let mut out = KoszulElement::zero(k);
    for tuple in crate::homotopy::increasing_tuples(space.n(), k) {
        if rng.gen_bool(0.7) {
            out.add_comp(tuple, random_poly(rng, space.ae(), deg, 3));
        }
    }
    out
}

pub fn random_koszul_cochain(rng: &mut SuiteRng, space: &Arc<Space>, k: usize, order: u32, deg: u32) -> KoszulCochain {
    let mut out = KoszulCochain::zero(space, k);
    for tuple in crate::homotopy::increasing_tuples(space.n(), k) {
        out.add_value(tuple, random_diffop(rng, space, order, deg));
    }
    out
}

/// Outcome of one seeded property over `cases` random inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl PropertyCheck {
    fn new(name: &str) -> Self {
        PropertyCheck { name: name.to_string(), cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Knobs of the randomized battery.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random elements per complex degree.
    pub cases: usize,
    pub degree_bound: u32,
    /// Per-slot and value order bound for cochains.
    pub order: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, cases: 40, degree_bound: 3, order: 2 }
    }
}

/// `εh⁻¹ = id`, `h⁻¹ε + ∂h⁰ = id` and `h^{k−1}∂ + ∂h^k = id` for both
/// resolutions, `k = 0..=2`.
pub fn resolution_homotopies(space: &Arc<Space>, cfg: &SuiteConfig) -> Result<Vec<PropertyCheck>> {
    let mut rng = rng(cfg.seed);
    let mut bar = PropertyCheck::new("bar homotopy identities");
    let mut kos = PropertyCheck::new("koszul homotopy identities");
    for _ in 0..cfg.cases {
        let a = random_poly(&mut rng, space.base(), cfg.degree_bound, 4);
        bar.record(bar_augment(space, &bar_h_minus(space, &a))? == a, || format!("ε h⁻¹ on {a}"));
        kos.record(koszul_augment(space, &koszul_h_minus(space, &a))? == a, || format!("ε h⁻¹ on {a}"));
    }
    for k in 0..=2 {
        for _ in 0..cfg.cases {
            let chi = random_bar(&mut rng, space, k, cfg.degree_bound);
            let mut lhs = bar_boundary(space, &chain_hx(space, &chi))?;
            lhs = if k == 0 {
                lhs.add(&bar_h_minus(space, &bar_augment(space, &chi)?))
            } else {
                lhs.add(&chain_hx(space, &bar_boundary(space, &chi)?))
            };
            bar.record(lhs == chi, || format!("k={k}: {}", chi.poly()));
        }
        if k > space.n() {
            continue;
        }
        for _ in 0..cfg.cases {
            let om = random_koszul(&mut rng, space, k, cfg.degree_bound);
            let mut lhs = if k < space.n() {
                koszul_boundary(space, &chain_hk(space, &om))?
            } else {
                KoszulElement::zero(k)
            };
            lhs = if k == 0 {
                lhs.add(&koszul_h_minus(space, &koszul_augment(space, &om)?))
            } else {
                lhs.add(&chain_hk(space, &koszul_boundary(space, &om)?))
            };
            kos.record(lhs == om, || format!("k={k}: {om:?}"));
        }
    }
    Ok(vec![bar, kos])
}

/// `F∂_K = ∂_XF`, `G∂_X = ∂_KG`, `GF = id`, `Θ² = Θ`, `id − Θ = s∂_X + ∂_Xs`.
pub fn chain_map_identities(space: &Arc<Space>, cfg: &SuiteConfig) -> Result<Vec<PropertyCheck>> {
    let mut rng = rng(cfg.seed.wrapping_add(1));
    let mut f = PropertyCheck::new("F∂_K = ∂_X F");
    let mut g = PropertyCheck::new("G∂_X = ∂_K G");
    let mut gf = PropertyCheck::new("G∘F = id");
    let mut theta = PropertyCheck::new("Θ∘Θ = Θ");
    let mut s = PropertyCheck::new("id − Θ = s∂_X + ∂_X s");
    for k in 0..=space.n() {
        for _ in 0..cfg.cases {
            let om = random_koszul(&mut rng, space, k, cfg.degree_bound);
            if k >= 1 {
                let lhs = chain_f(space, &koszul_boundary(space, &om)?);
                f.record(lhs == bar_boundary(space, &chain_f(space, &om))?, || format!("k={k}: {om:?}"));
            }
            gf.record(chain_g(space, &chain_f(space, &om)) == om, || format!("k={k}: {om:?}"));
        }
    }
    for k in 0..=2 {
        for _ in 0..cfg.cases {
            let chi = random_bar(&mut rng, space, k, cfg.degree_bound);
            if k >= 1 {
                let lhs = chain_g(space, &bar_boundary(space, &chi)?);
                g.record(lhs == koszul_boundary(space, &chain_g(space, &chi))?, || format!("k={k}: {}", chi.poly()));
            }
            let th = chain_theta(space, &chi);
            theta.record(chain_theta(space, &th) == th, || format!("k={k}: {}", chi.poly()));
            let mut rhs = bar_boundary(space, &chain_s(space, &chi))?;
            if k >= 1 {
                rhs = rhs.add(&chain_s(space, &bar_boundary(space, &chi)?));
            }
            s.record(chi.sub(&th) == rhs, || format!("k={k}: {}", chi.poly()));
        }
    }
    Ok(vec![f, g, gf, theta, s])
}

/// `δ_Kδ_K^* + δ_K^*δ_K = deg + k·id` on Koszul cochains of degree `k ≥ 1`.
pub fn weighted_koszul_homotopy(space: &Arc<Space>, cfg: &SuiteConfig) -> Result<Vec<PropertyCheck>> {
    let mut rng = rng(cfg.seed.wrapping_add(2));
    let mut check = PropertyCheck::new("δ_Kδ_K* + δ_K*δ_K = deg + k");
    for k in 1..=space.n() {
        for _ in 0..cfg.cases {
            let psi = random_koszul_cochain(&mut rng, space, k, cfg.order, cfg.degree_bound);
            let lhs = koszul_delta(&koszul_delta_star(&psi)?).add(&koszul_delta_star(&koszul_delta(&psi))?);
            let rhs = koszul_deg(&psi).add(&psi.scale(&int(k as i64)));
            check.record(lhs == rhs, || format!("k={k}: {psi:?}"));
        }
    }
    Ok(vec![check])
}

/// `δδ⁻¹ + δ⁻¹δ = id` on random 1- and 2-cochains, together with the
/// per-slot bound `max(l_i, l + 2)` of every `δ⁻¹` output.
pub fn hochschild_homotopy(space: &Arc<Space>, cfg: &SuiteConfig, cases: usize) -> Result<Vec<PropertyCheck>> {
    let mut rng = rng(cfg.seed.wrapping_add(3));
    let mut identity = PropertyCheck::new("δδ⁻¹ + δ⁻¹δ = id");
    let mut bounds = PropertyCheck::new("δ⁻¹ order bounds");
    for case in 0..cases {
        let arity = 1 + case % 2;
        let phi = random_cochain(&mut rng, space, &vec![cfg.order; arity], cfg.order, cfg.degree_bound.min(2));
        let dphi = phi.delta();
        let (inv, inv_d) = (delta_inv_checked(&phi), delta_inv_checked(&dphi));
        let within = |c: &Cochain, b: &[u32]| c.multi_order().iter().zip(b).all(|(l, m)| l <= m);
        bounds.record(
            matches!(&inv, Ok(c) if within(c, &delta_inv_bounds(&phi)))
                && matches!(&inv_d, Ok(c) if within(c, &delta_inv_bounds(&dphi))),
            || format!("{phi:?}"),
        );
        let (inv, inv_d) = (inv.or_else(|_| delta_inv(&phi))?, inv_d.or_else(|_| delta_inv(&dphi))?);
        identity.record(inv.delta().add(&inv_d) == phi, || format!("{phi:?}"));
    }
    Ok(vec![identity, bounds])
}

/// The complete battery run by `fdq homotopy-test`.
pub fn run_battery(space: &Arc<Space>, cfg: &SuiteConfig, cochain_cases: usize) -> Result<Vec<PropertyCheck>> {
    let mut out = resolution_homotopies(space, cfg)?;
    out.extend(chain_map_identities(space, cfg)?);
    out.extend(weighted_koszul_homotopy(space, cfg)?);
    out.extend(hochschild_homotopy(space, cfg, cochain_cases)?);
    Ok(out)
}
