use crate::ring::{int, Poly};
use crate::space::Space;

use super::bar::{chain_hx, BarElement};
use super::koszul::{increasing_tuples, KoszulElement};

/// All permutations of `0..k` with their signs.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            let flips = (p.len() - pos) as i64;
            out.push((q, if flips % 2 == 0 { s } else { -s }));
        }
    }
    out
}

/// `(F^k ω)(v, q, w) = Σ_I ω_I(v, w) · det[(q_s − v)^{I_t}]`.
pub fn chain_f(space: &Space, omega: &KoszulElement) -> BarElement {
    let n = space.n();
    let k = omega.degree();
    let ctx = space.bar_ctx(k);
    let to_bar: Vec<usize> = (0..2 * n).map(|i| if i < n { i } else { (k + 1) * n + i - n }).collect();
    let mut out = Poly::zero(&ctx);
    for (tuple, coeff) in omega.comps() {
        let mut det = Poly::zero(&ctx);
        for (perm, sgn) in permutations(k) {
            let mut prod = Poly::constant(&ctx, int(sgn));
            for s in 0..k {
                let i = tuple[perm[s]];
                let entry = &Poly::var(&ctx, (s + 1) * n + i) - &Poly::var(&ctx, i);
                prod = &prod * &entry;
            }
            det += &prod;
        }
        out += &(&coeff.rename(&ctx, &to_bar) * &det);
    }
    BarElement::new(space, k, out).expect("context built from the space")
}

/// `G^k χ` with coefficient at `e^I` the simplex integral of
/// `Σ_π sgn π ∂^kχ/∂q₁^{I_π1}⋯∂q_k^{I_πk}` at `q_j ↦ t_j v + (1−t_j) w`.
pub fn chain_g(space: &Space, chi: &BarElement) -> KoszulElement {
    let n = space.n();
    let k = chi.degree();
    let bar = space.bar_ctx(k);
    let pctx = space.ae_param_ctx(k);
    let mut images = Vec::with_capacity(bar.nvars());
    for slot in 0..k + 2 {
        for i in 0..n {
            let img = if slot == 0 {
                Poly::var(&pctx, i)
            } else if slot == k + 1 {
                Poly::var(&pctx, n + i)
            } else {
                let t = Poly::var(&pctx, 2 * n + slot - 1);
                let one_minus_t = &Poly::one(&pctx) - &t;
                &(&t * &Poly::var(&pctx, i)) + &(&one_minus_t * &Poly::var(&pctx, n + i))
            };
            images.push(img);
        }
    }
    let params: Vec<usize> = (0..k).map(|j| 2 * n + j).collect();
    let back: Vec<usize> = (0..2 * n + k).map(|i| i.min(2 * n - 1)).collect();
    let perms = permutations(k);
    let mut out = KoszulElement::zero(k);
    for tuple in increasing_tuples(n, k) {
        let mut integrand = Poly::zero(&bar);
        for (perm, sgn) in &perms {
            let mut d = chi.poly().clone();
            for s in 0..k {
                d = d.derivative((s + 1) * n + tuple[perm[s]], 1);
                if d.is_zero() {
                    break;
                }
            }
            if !d.is_zero() {
                integrand += &d.scale(&int(*sgn));
            }
        }
        if integrand.is_zero() {
            continue;
        }
        let value = integrand.substitute(&pctx, &images).integrate_simplex(&params).rename(space.ae(), &back);
        out.add_comp(tuple, value);
    }
    out
}

/// `Θ^k = F^k ∘ G^k`.
pub fn chain_theta(space: &Space, chi: &BarElement) -> BarElement {
    chain_f(space, &chain_g(space, chi))
}

/// `s^k = (id − Θ^{k+1}) ∘ h_X^k : X_k → X_{k+1}`.
pub fn chain_s(space: &Space, chi: &BarElement) -> BarElement {
    let h = chain_hx(space, chi);
    h.sub(&chain_theta(space, &h))
}


/// The `A^e`-linear homotopy `S` with `id − Θ = S∂_X + ∂_X S`, evaluated on the
/// free generator `1 ⊗ a₁ ⊗ … ⊗ a_m ⊗ 1`. On generators
/// `S^m(g) = h_X^m(g − Θ^m g − S^{m−1}∂_X g)` with `S^0 = 0`, and `S^{m−1}∂_X g`
/// is expanded by linearity over the outer slots.
pub fn generator_s(space: &Space, args: &[Poly]) -> BarElement {
    let m = args.len();
    if m == 0 {
        return BarElement::zero(space, 1);
    }
    let one = Poly::one(space.base());
    let g = BarElement::inner(space, args);
    let mut z = g.sub(&chain_theta(space, &g));
    if m >= 2 {
        let first = generator_s(space, &args[1..]).outer_mul(space, &args[0], &one);
        z = z.sub(&first);
        for i in 1..m {
            let mut merged = args[..i - 1].to_vec();
            merged.push(&args[i - 1] * &args[i]);
            merged.extend(args[i + 1..].iter().cloned());
            let t = generator_s(space, &merged);
            z = if i % 2 == 1 { z.add(&t) } else { z.sub(&t) };
        }
        let last = generator_s(space, &args[..m - 1]).outer_mul(space, &one, &args[m - 1]);
        z = if m % 2 == 1 { z.add(&last) } else { z.sub(&last) };
    }
    chain_hx(space, &z)
}
