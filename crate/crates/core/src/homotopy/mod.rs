//! Bar and Koszul resolutions of `C∞(V)` over `C∞(V×V)`, the comparison maps
//! between them, and the explicit homotopy for the Hochschild differential.

mod bar;
mod cochains;
mod compare;
mod koszul;

pub use bar::{bar_augment, bar_boundary, bar_h_minus, chain_hx, BarElement};
pub use cochains::{
    f_pullback, koszul_deg, koszul_delta, koszul_delta_inv, koszul_delta_star, xi, xi_inverse, BarCochain,
    KoszulCochain,
};
pub use compare::{chain_f, chain_g, chain_s, chain_theta, generator_s, permutations};
pub use koszul::{
    chain_hk, increasing_tuples, koszul_augment, koszul_boundary, koszul_h_minus, wedge_front, KoszulElement,
};

use crate::error::{Error, Result};
use crate::hochschild::Cochain;

/// Per-slot derivative bounds `max(l_i, l + 2)` for `δ⁻¹φ`, where `l_i` is the
/// multi-order of `φ` and `l` its value order; the last slot is dropped.
pub fn delta_inv_bounds(phi: &Cochain) -> Vec<u32> {
    let l = phi.value_order();
    let li = phi.multi_order();
    li[..li.len().saturating_sub(1)].iter().map(|&x| x.max(l + 2)).collect()
}

/// Explicit homotopy `δ⁻¹: HC^k → HC^{k−1}` with `δδ⁻¹ + δ⁻¹δ = id`.
///
/// The Koszul leg `(G^{k−1})^*(δ_K^{-1})(F^k)^*` and the correction
/// `(s^{k−1})^*` are evaluated on `1 ⊗ a ⊗ 1` for monomial arguments and the
/// normal form is read off from these values.
pub fn delta_inv(phi: &Cochain) -> Result<Cochain> {
    delta_inv_impl(phi, false)
}

/// As [`delta_inv`], additionally probing one degree past the order bound
/// and failing with [`Error::BoundViolation`] if the output exceeds it.
pub fn delta_inv_checked(phi: &Cochain) -> Result<Cochain> {
    delta_inv_impl(phi, true)
}

fn delta_inv_impl(phi: &Cochain, checked: bool) -> Result<Cochain> {
    let k = phi.arity();
    if k == 0 {
        return Err(Error::Domain("δ⁻¹ is defined on cochains of positive degree".into()));
    }
    let space = phi.space().clone();
    if phi.is_zero() {
        return Ok(Cochain::zero(&space, k - 1));
    }
    let bar = xi_inverse(phi);
    let kos = koszul_delta_inv(&f_pullback(&bar)?)?;
    let bounds = delta_inv_bounds(phi);
    Cochain::from_evaluations(
        &space,
        &bounds,
        |args| {
            let chi = BarElement::inner(&space, args);
            let koszul_leg = kos.eval(&chain_g(&space, &chi))?;
            let correction = bar.eval(&generator_s(&space, args))?;
            Ok(koszul_leg.add(&correction))
        },
        checked,
    )
}
