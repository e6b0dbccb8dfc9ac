use std::collections::BTreeMap;
use std::sync::Arc;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::hochschild::Cochain;
use crate::ring::{int, Monomial, Poly, Rational};
use crate::space::Space;

use super::bar::BarElement;
use super::compare::chain_f;
use super::koszul::{increasing_tuples, wedge_front, KoszulElement};

/// A differential cochain on the bar resolution:
/// `ψ(χ) = Σ L_{(∂_q^{α} ∂_w^{β} χ)|_{diagonal}} ∘ op`.
#[derive(Clone, PartialEq, Debug)]
pub struct BarCochain {
    space: Arc<Space>,
    k: usize,
    terms: BTreeMap<(Vec<Monomial>, Monomial), DiffOp>,
}

impl BarCochain {
    pub fn zero(space: &Arc<Space>, k: usize) -> Self {
        BarCochain { space: space.clone(), k, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<Monomial>, Monomial), &DiffOp)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, alphas: Vec<Monomial>, beta: Monomial, op: DiffOp) {
        assert_eq!(alphas.len(), self.k);
        if op.is_zero() {
            return;
        }
        let key = (alphas, beta);
        let merged = match self.terms.remove(&key) {
            Some(old) => old.add(&op),
            None => op,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), op) in &other.terms {
            out.add_term(a.clone(), b.clone(), op.clone());
        }
        out
    }

    pub fn eval(&self, chi: &BarElement) -> Result<DiffOp> {
        if chi.degree() != self.k {
            return Err(Error::ArityMismatch { expected: self.k, got: chi.degree() });
        }
        let n = self.space.n();
        let k = self.k;
        let collapse: Vec<usize> = (0..(k + 2) * n).map(|i| i % n).collect();
        let mut out = DiffOp::zero(&self.space);
        for ((alphas, beta), op) in &self.terms {
            let mut d = chi.poly().clone();
            for (j, a) in alphas.iter().enumerate() {
                d = d.diff((j + 1) * n, a);
            }
            d = d.diff((k + 1) * n, beta);
            if d.is_zero() {
                continue;
            }
            let f = d.rename(self.space.base(), &collapse);
            out = out.add(&op.left_mul(&f));
        }
        Ok(out)
    }
}

/// `Ξ(ψ)(a₁…a_k) = ψ(1 ⊗ a₁ ⊗ … ⊗ a_k ⊗ 1)`: terms with `β ≠ 0` drop out.
pub fn xi(psi: &BarCochain) -> Cochain {
    let mut out = Cochain::zero(&psi.space, psi.k);
    for ((alphas, beta), op) in &psi.terms {
        if beta.is_zero() {
            out.add_term(alphas.clone(), op.clone());
        }
    }
    out
}

/// The `A^e`-linear extension of a Hochschild cochain to the bar resolution.
/// Its `β = 0` part is `φ` itself; the `β ≠ 0` terms come from moving the
/// right factor through the value operators.
pub fn xi_inverse(phi: &Cochain) -> BarCochain {
    let mut out = BarCochain::zero(phi.space(), phi.arity());
    for (alphas, op) in phi.terms() {
        for (beta, part) in op.right_mult_parts() {
            out.add_term(alphas.clone(), beta, part);
        }
    }
    out
}

/// An `A^e`-linear map `K_k → Diffop`, stored by its values on basis tuples.
#[derive(Clone, PartialEq, Debug)]
pub struct KoszulCochain {
    space: Arc<Space>,
    k: usize,
    values: BTreeMap<Vec<usize>, DiffOp>,
}

impl KoszulCochain {
    pub fn zero(space: &Arc<Space>, k: usize) -> Self {
        KoszulCochain { space: space.clone(), k, values: BTreeMap::new() }
    }

    pub fn from_values(space: &Arc<Space>, k: usize, values: impl IntoIterator<Item = (Vec<usize>, DiffOp)>) -> Self {
        let mut out = Self::zero(space, k);
        for (t, v) in values {
            out.add_value(t, v);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &DiffOp)> {
        self.values.iter()
    }

    pub fn value(&self, tuple: &[usize]) -> DiffOp {
        self.values.get(tuple).cloned().unwrap_or_else(|| DiffOp::zero(&self.space))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add_value(&mut self, tuple: Vec<usize>, op: DiffOp) {
        assert_eq!(tuple.len(), self.k);
        if op.is_zero() {
            return;
        }
        let merged = match self.values.remove(&tuple) {
            Some(old) => old.add(&op),
            None => op,
        };
        if !merged.is_zero() {
            self.values.insert(tuple, merged);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, v) in &other.values {
            out.add_value(t.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_values(&self.space, self.k, self.values.iter().map(|(t, v)| (t.clone(), v.scale(c))))
    }

    pub fn map_values(&self, f: impl Fn(&DiffOp) -> DiffOp) -> Self {
        Self::from_values(&self.space, self.k, self.values.iter().map(|(t, v)| (t.clone(), f(v))))
    }

    /// `ψ(Σ_I ω_I e^I) = Σ_I ω_I · ψ(e^I)` with the `A^e`-action on operators.
    pub fn eval(&self, omega: &KoszulElement) -> Result<DiffOp> {
        if omega.degree() != self.k {
            return Err(Error::ArityMismatch { expected: self.k, got: omega.degree() });
        }
        let mut out = DiffOp::zero(&self.space);
        for (tuple, coeff) in omega.comps() {
            if let Some(v) = self.values.get(tuple) {
                out = out.add(&v.ae_action(coeff)?);
            }
        }
        Ok(out)
    }

    /// Largest number of base derivatives among the values.
    pub fn max_deg(&self) -> u32 {
        self.values.values().map(DiffOp::x_order).max().unwrap_or(0)
    }
}

/// `(F^k)^* ψ`: the value at `e^I` is `ψ(F^k(1 ⊗ e^I))`.
pub fn f_pullback(psi: &BarCochain) -> Result<KoszulCochain> {
    let space = psi.space.clone();
    let mut out = KoszulCochain::zero(&space, psi.k);
    for tuple in increasing_tuples(space.n(), psi.k) {
        let e = KoszulElement::basis(&space, &tuple, Poly::one(space.ae()));
        out.add_value(tuple, psi.eval(&chain_f(&space, &e))?);
    }
    Ok(out)
}

/// `(δ_K ψ)(e^I) = ψ(∂_K e^I) = Σ_s (−1)^{s−1} ξ^{i_s} · ψ(e^{I∖i_s})`, `ξ^i = v^i − w^i`.
pub fn koszul_delta(psi: &KoszulCochain) -> KoszulCochain {
    let space = psi.space.clone();
    let n = space.n();
    let ae = space.ae();
    let mut out = KoszulCochain::zero(&space, psi.k + 1);
    for tuple in increasing_tuples(n, psi.k + 1) {
        let mut acc = DiffOp::zero(&space);
        for (s, &i) in tuple.iter().enumerate() {
            let mut rest = tuple.clone();
            rest.remove(s);
            let Some(v) = psi.values.get(&rest) else { continue };
            let xi = &Poly::var(ae, i) - &Poly::var(ae, n + i);
            let term = v.ae_action(&xi).expect("enveloping element");
            acc = if s % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        out.add_value(tuple, acc);
    }
    out
}

/// `(δ_K^* ψ)(e^{I'}) = −Σ_j ψ(e^j ∧ e^{I'}) ∘ ∂/∂x^j`.
pub fn koszul_delta_star(psi: &KoszulCochain) -> Result<KoszulCochain> {
    if psi.k == 0 {
        return Err(Error::Domain("δ_K^* lowers the Koszul degree and needs k ≥ 1".into()));
    }
    let space = psi.space.clone();
    let n = space.n();
    let mut out = KoszulCochain::zero(&space, psi.k - 1);
    for tuple in increasing_tuples(n, psi.k - 1) {
        let mut acc = DiffOp::zero(&space);
        for j in 0..n {
            let Some((sgn, full)) = wedge_front(j, &tuple) else { continue };
            let Some(v) = psi.values.get(&full) else { continue };
            acc = acc.sub(&v.compose(&DiffOp::dx(&space, j)).scale(&int(sgn)));
        }
        out.add_value(tuple, acc);
    }
    Ok(out)
}

/// Weighted Koszul homotopy: `δ_K^*` applied to the deg-`r` part of the values
/// with weight `1/(k + r)`.
pub fn koszul_delta_inv(psi: &KoszulCochain) -> Result<KoszulCochain> {
    if psi.k == 0 {
        return Err(Error::Domain("the Koszul homotopy needs k ≥ 1".into()));
    }
    let mut out = KoszulCochain::zero(&psi.space, psi.k - 1);
    for r in 0..=psi.max_deg() {
        let part = psi.map_values(|v| v.deg_component(r));
        if part.is_zero() {
            continue;
        }
        let w = Rational::new(1.into(), ((psi.k as u32 + r) as i64).into());
        out = out.add(&koszul_delta_star(&part)?.scale(&w));
    }
    Ok(out)
}

/// `Σ_r r·deg_r` applied to every value.
pub fn koszul_deg(psi: &KoszulCochain) -> KoszulCochain {
    psi.map_values(DiffOp::deg_weighted)
}
