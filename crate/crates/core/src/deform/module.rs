use std::sync::Arc;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::hochschild::{obstruction_r, Cochain};
use crate::homotopy::delta_inv;
use crate::ring::{Monomial, Rational};
use crate::space::Space;

use super::report::{op_witness, Report};
use super::star::StarProduct;

/// `f • a = Σ_{r=0}^{N} λ^r ρ_r(a) f` with `ρ₀(a) = L_{p*a}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleDeformation {
    space: Arc<Space>,
    rhos: Vec<Cochain>,
}

impl ModuleDeformation {
    pub fn new(space: &Arc<Space>, rhos: Vec<Cochain>) -> Result<Self> {
        if rhos.is_empty() {
            return Err(Error::Invalid("a module deformation needs at least ρ₀".into()));
        }
        if rhos.iter().any(|c| c.arity() != 1) {
            return Err(Error::Invalid("module deformation coefficients must be 1-cochains".into()));
        }
        if rhos[0] != Cochain::multiplication(space) {
            return Err(Error::Invalid("ρ₀ must be left multiplication by the pulled-back function".into()));
        }
        Ok(ModuleDeformation { space: space.clone(), rhos })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.rhos.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &Cochain {
        &self.rhos[r]
    }

    pub fn coeffs(&self) -> &[Cochain] {
        &self.rhos
    }

    /// Replaces `ρ_r`; used to build perturbed inputs.
    pub fn with_coeff(&self, r: usize, c: Cochain) -> Self {
        let mut rhos = self.rhos.clone();
        rhos[r] = c;
        ModuleDeformation { space: self.space.clone(), rhos }
    }

    /// `Σ_{s+t=r} ρ_t(b)∘ρ_s(a) − ρ_s(C_t(a, b))` as a cochain in `(a, b)`.
    pub fn module_defect(&self, star: &StarProduct, r: usize) -> Cochain {
        let mut out = Cochain::zero(&self.space, 2);
        for s in 0..=r {
            let t = r - s;
            out = out.add(&self.rhos[t].compose(&self.rhos[s]).permute(&[1, 0]));
            out = out.sub(&self.rhos[s].insert(0, star.coeff(t)));
        }
        out
    }

    pub fn is_fiber_free(&self) -> bool {
        self.rhos.iter().all(Cochain::is_fiber_free)
    }
}

/// Order-by-order construction `ρ_{r+1} = δ⁻¹ R_r`, asserting `δR_r = 0`
/// and `δρ_{r+1} = R_r` at every step.
pub fn build_module_deformation(star: &StarProduct) -> Result<ModuleDeformation> {
    let space = star.space().clone();
    let mut rhos = vec![Cochain::multiplication(&space)];
    for r in 0..star.order() {
        let obstruction = obstruction_r(&rhos, &star.coeffs()[..r + 2])?;
        let d = obstruction.delta();
        if !d.is_zero() {
            return Err(Error::NotClosed { order: r, detail: format!("δR_{r} = {d}") });
        }
        let next = delta_inv(&obstruction)?;
        if next.delta() != obstruction {
            return Err(Error::Invalid(format!("δρ_{} does not reproduce R_{r}", r + 1)));
        }
        rhos.push(next);
    }
    ModuleDeformation::new(&space, rhos)
}

/// Structural check of the right-module axiom per order and of `f • 1 = f`.
pub fn verify_module(rho: &ModuleDeformation, star: &StarProduct) -> Result<Report> {
    if rho.order() != star.order() {
        return Err(Error::OrderMismatch(rho.order(), star.order()));
    }
    if rho.space() != star.space() {
        return Err(Error::ContextMismatch("module and star product live on different spaces".into()));
    }
    let mut report = Report::default();
    for r in 0..=rho.order() {
        report.push("module", r, op_witness(&rho.module_defect(star, r)));
    }
    for r in 0..=rho.order() {
        let mut at_one = Cochain::from_op(rho.coeff(r).at_one(0).as_op());
        if r == 0 {
            at_one = at_one.sub(&Cochain::from_op(DiffOp::identity(rho.space())));
        }
        report.push("module-unit", r, op_witness(&at_one));
    }
    Ok(report)
}

/// Reference module for a Moyal product: the base derivatives acting on `f`
/// become horizontal lifts,
/// `ρ_r(a) = (1/(r! 2^r)) Σ π^{i₁j₁}⋯π^{i_r j_r} L_{∂_{j₁…j_r}a} ∘ ∂_{x^{i₁}}⋯∂_{x^{i_r}}`.
pub fn lifted_moyal(space: &Arc<Space>, pi: &[Vec<Rational>], order: usize) -> Result<ModuleDeformation> {
    let star = super::star::moyal(space, pi, order)?;
    let mut rhos = vec![Cochain::multiplication(space)];
    for r in 1..=order {
        let mut c = Cochain::zero(space, 1);
        for (alphas, coeff) in star.coeff(r).terms() {
            // C_r(f, a) with f differentiated by alphas[0] and a by alphas[1]
            let op = DiffOp::term(space, coeff, alphas[0].clone(), Monomial::zero(space.k()));
            c.add_term(vec![alphas[1].clone()], op);
        }
        rhos.push(c);
    }
    ModuleDeformation::new(space, rhos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::star::moyal;
    use crate::ring::int;

    fn symplectic() -> Vec<Vec<Rational>> {
        vec![vec![int(0), int(1)], vec![int(-1), int(0)]]
    }

    #[test]
    fn pointwise_gives_trivial_deformation() {
        let space = Space::new(2, 1).unwrap();
        let star = StarProduct::pointwise(&space, 3);
        let rho = build_module_deformation(&star).unwrap();
        assert!(rho.coeffs()[1..].iter().all(Cochain::is_zero));
        assert!(verify_module(&rho, &star).unwrap().passed());
    }

    #[test]
    fn moyal_construction_and_reference() {
        let space = Space::new(2, 1).unwrap();
        let star = moyal(&space, &symplectic(), 3).unwrap();
        let rho = build_module_deformation(&star).unwrap();
        assert!(verify_module(&rho, &star).unwrap().passed());
        assert!(rho.is_fiber_free());
        let reference = lifted_moyal(&space, &symplectic(), 3).unwrap();
        assert!(verify_module(&reference, &star).unwrap().passed());
    }

    #[test]
    fn corrupted_rho_fails_at_order_one() {
        let space = Space::new(2, 1).unwrap();
        let star = moyal(&space, &symplectic(), 2).unwrap();
        let rho = lifted_moyal(&space, &symplectic(), 2).unwrap();
        let mut bad = Cochain::zero(&space, 1);
        bad.add_term(vec![Monomial::from_vec(vec![2, 0])], DiffOp::identity(&space));
        let rho = rho.with_coeff(1, rho.coeff(1).add(&bad));
        let report = verify_module(&rho, &star).unwrap();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.order, 1);
        let w = fail.witness.as_ref().unwrap();
        assert_eq!(w.args, vec![Monomial::from_vec(vec![1, 0]); 2]);
    }
}
