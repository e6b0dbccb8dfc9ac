use std::sync::Arc;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::hochschild::{obstruction_e, Cochain};
use crate::homotopy::delta_inv;
use crate::ring::{Monomial, Poly, Series};
use crate::space::Space;

use super::module::ModuleDeformation;
use super::report::{op_witness, Report};
use super::star::StarProduct;

/// `T = id + Σ_{r≥1} λ^r T_r` with `T(f • a) = T(f) •̃ a`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equivalence {
    space: Arc<Space>,
    ts: Series<DiffOp>,
}

impl Equivalence {
    pub fn new(space: &Arc<Space>, ts: Vec<DiffOp>) -> Result<Self> {
        if ts.is_empty() || !ts[0].is_identity() {
            return Err(Error::Invalid("an equivalence must start with the identity".into()));
        }
        Ok(Equivalence { space: space.clone(), ts: Series::new(ts) })
    }

    pub fn identity(space: &Arc<Space>, order: usize) -> Self {
        Equivalence { space: space.clone(), ts: Series::constant(DiffOp::identity(space), order) }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.ts.order()
    }

    pub fn coeff(&self, r: usize) -> &DiffOp {
        self.ts.coeff(r)
    }

    pub fn coeffs(&self) -> &[DiffOp] {
        self.ts.coeffs()
    }

    pub fn is_identity(&self) -> bool {
        self.ts.is_one()
    }

    pub fn inverse(&self) -> Self {
        let ts = self.ts.invert().expect("leading coefficient is the identity");
        Equivalence { space: self.space.clone(), ts }
    }

    /// `ρ̃(a) = T∘ρ(a)∘T⁻¹`, so that `T` intertwines `ρ` with `ρ̃`.
    pub fn gauge(&self, rho: &ModuleDeformation) -> Result<ModuleDeformation> {
        let n = rho.order();
        if self.order() != n {
            return Err(Error::OrderMismatch(self.order(), n));
        }
        let inv = self.inverse();
        let mut rhos = Vec::with_capacity(n + 1);
        for r in 0..=n {
            let mut acc = Cochain::zero(&self.space, 1);
            for a in 0..=r {
                for b in 0..=r - a {
                    let c = r - a - b;
                    let (left, right) = (self.coeff(a), inv.coeff(c));
                    if left.is_zero() || right.is_zero() || rho.coeff(b).is_zero() {
                        continue;
                    }
                    acc = acc.add(&Cochain::from_op(left.clone()).compose(rho.coeff(b)).map_values(|v| v.compose(right)));
                }
            }
            rhos.push(acc);
        }
        ModuleDeformation::new(&self.space, rhos)
    }
}

/// Structural check of `Σ_{s+t=r} T_s∘ρ_t(a) − ρ̃_t(a)∘T_s = 0` per order.
pub fn verify_equivalence(t: &Equivalence, rho: &ModuleDeformation, rho_t: &ModuleDeformation) -> Result<Report> {
    let n = rho.order();
    if rho_t.order() != n || t.order() != n {
        return Err(Error::OrderMismatch(t.order().min(rho_t.order()), n));
    }
    let mut report = Report::default();
    for r in 0..=n {
        let mut defect = Cochain::zero(t.space(), 1);
        for s in 0..=r {
            let ts = t.coeff(s);
            if ts.is_zero() {
                continue;
            }
            defect = defect.add(&Cochain::from_op(ts.clone()).compose(rho.coeff(r - s)));
            defect = defect.sub(&rho_t.coeff(r - s).map_values(|v| v.compose(ts)));
        }
        report.push("intertwining", r, op_witness(&defect));
    }
    Ok(report)
}

/// Recursion `T_{r+1} = δ⁻¹E_r`, asserting `δE_r = 0`. Each correction is
/// normalized to have no vertical part.
pub fn find_equivalence(rho: &ModuleDeformation, rho_t: &ModuleDeformation) -> Result<Equivalence> {
    let n = rho.order();
    if rho_t.order() != n {
        return Err(Error::OrderMismatch(n, rho_t.order()));
    }
    let space = rho.space().clone();
    let mut ts = vec![DiffOp::identity(&space)];
    for r in 0..n {
        let e = obstruction_e(rho.coeffs(), rho_t.coeffs(), &ts)?;
        let d = e.delta();
        if !d.is_zero() {
            return Err(Error::NotClosed { order: r, detail: format!("δE_{r} = {d}") });
        }
        let next = delta_inv(&e)?.as_op().complement_part();
        if Cochain::from_op(next.clone()).delta() != e {
            return Err(Error::Invalid(format!("δT_{} does not reproduce E_{r}", r + 1)));
        }
        ts.push(next);
    }
    Equivalence::new(&space, ts)
}

/// `a ↦ L_{φ(a)1}`.
fn applied_to_one(c: &Cochain) -> Cochain {
    let space = c.space().clone();
    let one = Poly::one(space.total());
    c.map_values(|op| DiffOp::mult(&space, &op.apply(&one)))
}

/// Makes `1 • a = p*a` by conjugating with `T_r = Σ_α c_α ∂_x^α`, where
/// `ρ_r(a)1 = Σ_α c_α ∂^α a`. Returns `ρ̃ = T⁻¹∘ρ∘T` and `T`, which
/// intertwines `ρ̃` with `ρ`.
pub fn normalize_fibration(rho: &ModuleDeformation) -> Result<(ModuleDeformation, Equivalence)> {
    let space = rho.space().clone();
    let one = Poly::one(space.total());
    let mut ts = vec![DiffOp::identity(&space)];
    for r in 1..=rho.order() {
        let mut t = DiffOp::zero(&space);
        for (alphas, op) in rho.coeff(r).terms() {
            t = t.add(&DiffOp::term(&space, &op.apply(&one), alphas[0].clone(), Monomial::zero(space.k())));
        }
        ts.push(t);
    }
    let t = Equivalence::new(&space, ts)?;
    let normalized = t.inverse().gauge(rho)?;
    Ok((normalized, t))
}

/// Checks `1 • a = p*a` and `(p*a) • b = p*(a⋆b)` order by order.
pub fn verify_fibration(rho: &ModuleDeformation, star: &StarProduct) -> Result<Report> {
    if rho.order() != star.order() {
        return Err(Error::OrderMismatch(rho.order(), star.order()));
    }
    let space = rho.space().clone();
    let one = Poly::one(space.total());
    let mut report = Report::default();
    for r in 0..=rho.order() {
        let mut unit = applied_to_one(rho.coeff(r));
        if r == 0 {
            unit = unit.sub(&Cochain::multiplication(&space));
        }
        report.push("fibration-unit", r, op_witness(&unit));
    }
    for r in 0..=rho.order() {
        // ρ_r(b)(p*a) = Σ_γ ∂^γ a · ρ_r(b)^γ(1)
        let mut defect = Cochain::zero(&space, 2);
        for (betas, op) in rho.coeff(r).terms() {
            for (gamma, part) in op.right_mult_parts() {
                let value = part.apply(&one);
                if !value.is_zero() {
                    defect.add_term(vec![gamma, betas[0].clone()], DiffOp::mult(&space, &value));
                }
            }
        }
        for (alphas, c) in star.coeff(r).terms() {
            defect.add_term(alphas.clone(), DiffOp::mult(&space, c).neg());
        }
        report.push("fibration-product", r, op_witness(&defect));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::module::{build_module_deformation, lifted_moyal, verify_module};
    use crate::deform::star::moyal;
    use crate::ring::{int, Rational};

    fn setup() -> (Arc<Space>, StarProduct, ModuleDeformation) {
        let space = Space::new(2, 1).unwrap();
        let pi: Vec<Vec<Rational>> = vec![vec![int(0), int(1)], vec![int(-1), int(0)]];
        let star = moyal(&space, &pi, 3).unwrap();
        let rho = build_module_deformation(&star).unwrap();
        (space, star, rho)
    }

    #[test]
    fn normalize_lifted_moyal_is_trivial() {
        let (space, star, _) = setup();
        let pi = vec![vec![int(0), int(1)], vec![int(-1), int(0)]];
        let reference = lifted_moyal(&space, &pi, 3).unwrap();
        let (normalized, t) = normalize_fibration(&reference).unwrap();
        assert!(t.is_identity());
        assert_eq!(normalized, reference);
        assert!(verify_fibration(&normalized, &star).unwrap().passed());
    }

    #[test]
    fn normalize_a_gauged_module() {
        let (space, star, rho) = setup();
        let s = Equivalence::new(
            &space,
            vec![DiffOp::identity(&space), DiffOp::dx(&space, 0), DiffOp::dx(&space, 1).compose(&DiffOp::dy(&space, 0)), DiffOp::zero(&space)],
        )
        .unwrap();
        let gauged = s.gauge(&rho).unwrap();
        assert!(verify_module(&gauged, &star).unwrap().passed());
        assert!(!verify_fibration(&gauged, &star).unwrap().passed());
        let (normalized, t) = normalize_fibration(&gauged).unwrap();
        assert!(verify_fibration(&normalized, &star).unwrap().passed());
        assert!(verify_module(&normalized, &star).unwrap().passed());
        assert!(verify_equivalence(&t, &normalized, &gauged).unwrap().passed());
    }

    #[test]
    fn equivalence_of_gauge_pairs() {
        let (space, star, rho) = setup();
        let same = find_equivalence(&rho, &rho).unwrap();
        assert!(verify_equivalence(&same, &rho, &rho).unwrap().passed());
        let s = Equivalence::new(
            &space,
            vec![DiffOp::identity(&space), DiffOp::dx(&space, 0), DiffOp::zero(&space), DiffOp::zero(&space)],
        )
        .unwrap();
        let gauged = s.gauge(&rho).unwrap();
        assert!(verify_module(&gauged, &star).unwrap().passed());
        let t = find_equivalence(&rho, &gauged).unwrap();
        assert!(verify_equivalence(&t, &rho, &gauged).unwrap().passed());
    }
}
