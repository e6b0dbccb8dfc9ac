use std::collections::BTreeMap;

use crate::diffop::{DiffOp, OpIndex};
use crate::error::{Error, Result};
use crate::hochschild::Cochain;
use crate::homotopy::delta_inv;
use crate::ring::{Monomial, Poly, Rational, Series};

use super::module::ModuleDeformation;
use super::report::{op_witness, Report};

/// `a ↦ D∘ρ(a) − ρ(a)∘D` for a single operator `D` and coefficient `ρ`.
fn bracket(d: &DiffOp, rho: &Cochain) -> Cochain {
    if d.is_zero() || rho.is_zero() {
        return Cochain::zero(rho.space(), 1);
    }
    Cochain::from_op(d.clone()).compose(rho).sub(&rho.map_values(|v| v.compose(d)))
}

/// Order-`m` part of `[D, ρ(a)]`, using `D_s` for `s < upto`.
fn commutator_at(ds: &[DiffOp], rho: &ModuleDeformation, m: usize, upto: usize) -> Cochain {
    let mut out = Cochain::zero(rho.space(), 1);
    for s in 0..upto.min(m + 1).min(ds.len()) {
        out = out.add(&bracket(&ds[s], rho.coeff(m - s)));
    }
    out
}

fn quantize_to(a: &DiffOp, rho: &ModuleDeformation, order: usize) -> Result<Vec<DiffOp>> {
    if !a.is_vertical() {
        return Err(Error::Invalid(format!("{a} is not vertical")));
    }
    let mut ds = vec![a.clone()];
    for m in 1..=order {
        let defect = commutator_at(&ds, rho, m, m);
        if defect.is_zero() {
            ds.push(DiffOp::zero(rho.space()));
            continue;
        }
        let d = defect.delta();
        if !d.is_zero() {
            return Err(Error::NotClosed { order: m, detail: format!("commutator defect not closed: {d}") });
        }
        let next = delta_inv(&defect)?.as_op().complement_part();
        if !commutator_at(std::slice::from_ref(&next), rho, 0, 1).add(&defect).is_zero() {
            return Err(Error::Invalid(format!("correction at order {m} does not cancel the defect")));
        }
        ds.push(next);
    }
    Ok(ds)
}

/// `ρ′(A) = A + Σ_{r≥1} λ^r ρ′_r(A)` with every correction in the complement
/// of the vertical operators.
pub fn quantize_vertical(a: &DiffOp, rho: &ModuleDeformation) -> Result<Series<DiffOp>> {
    Ok(Series::new(quantize_to(a, rho, rho.order())?))
}

/// `λ`-linear extension of `ρ′` to a series of vertical operators.
pub fn quantize_series(a: &Series<DiffOp>, rho: &ModuleDeformation) -> Result<Series<DiffOp>> {
    let n = a.order();
    if n > rho.order() {
        return Err(Error::OrderMismatch(n, rho.order()));
    }
    let mut out = vec![DiffOp::zero(rho.space()); n + 1];
    for r in 0..=n {
        if a.coeff(r).is_zero() {
            continue;
        }
        for (j, d) in quantize_to(a.coeff(r), rho, n - r)?.into_iter().enumerate() {
            out[r + j] = out[r + j].add(&d);
        }
    }
    Ok(Series::new(out))
}

/// Inverse of `quantize_series`: strips the vertical leading term of the
/// residual order by order.
pub fn rho_prime_inverse(d: &Series<DiffOp>, rho: &ModuleDeformation) -> Result<Series<DiffOp>> {
    let n = d.order();
    if n > rho.order() {
        return Err(Error::OrderMismatch(n, rho.order()));
    }
    let mut residual = d.coeffs().to_vec();
    let mut out = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let lead = residual[r].clone();
        if !lead.is_vertical() {
            return Err(Error::NotInCommutant(r));
        }
        if !lead.is_zero() {
            for (j, q) in quantize_to(&lead, rho, n - r)?.into_iter().enumerate() {
                residual[r + j] = residual[r + j].sub(&q);
            }
        }
        out.push(lead);
    }
    Ok(Series::new(out))
}

/// `μ′(A, B) = ρ′⁻¹(ρ′(A)∘ρ′(B))`.
pub fn star_prime(a: &Series<DiffOp>, b: &Series<DiffOp>, rho: &ModuleDeformation) -> Result<Series<DiffOp>> {
    let product = quantize_series(a, rho)?.mul(&quantize_series(b, rho)?)?;
    rho_prime_inverse(&product, rho)
}

/// `ξ ⋆′ η − η ⋆′ ξ` for vertical vector fields.
pub fn gauge_commutator(xi: &DiffOp, eta: &DiffOp, rho: &ModuleDeformation) -> Result<Series<DiffOp>> {
    for v in [xi, eta] {
        let vector_field = v.is_vertical() && v.terms().all(|(i, _)| i.order() == 1);
        if !vector_field {
            return Err(Error::Invalid(format!("{v} is not a vertical vector field")));
        }
    }
    let n = rho.order();
    let (x, e) = (Series::constant(xi.clone(), n), Series::constant(eta.clone(), n));
    star_prime(&x, &e, rho)?.sub(&star_prime(&e, &x, rho)?)
}

/// Structural check of `Σ_{s+t=r} D_s∘ρ_t(a) − ρ_t(a)∘D_s = 0` per order.
pub fn commutant_report(d: &Series<DiffOp>, rho: &ModuleDeformation) -> Result<Report> {
    if d.order() > rho.order() {
        return Err(Error::OrderMismatch(d.order(), rho.order()));
    }
    let mut report = Report::default();
    for r in 0..=d.order() {
        report.push("commutant", r, op_witness(&commutator_at(d.coeffs(), rho, r, r + 1)));
    }
    Ok(report)
}

pub fn check_commutant_membership(d: &Series<DiffOp>, rho: &ModuleDeformation) -> bool {
    commutant_report(d, rho).map(|r| r.passed()).unwrap_or(false)
}

/// Invariance under translations of the fiber coordinates: every
/// coefficient polynomial is independent of `y`.
pub trait FiberInvariant {
    fn is_translation_invariant(&self) -> bool;
}

impl FiberInvariant for DiffOp {
    fn is_translation_invariant(&self) -> bool {
        self.is_fiber_free()
    }
}

impl FiberInvariant for Cochain {
    fn is_translation_invariant(&self) -> bool {
        self.is_fiber_free()
    }
}

impl FiberInvariant for ModuleDeformation {
    fn is_translation_invariant(&self) -> bool {
        self.is_fiber_free()
    }
}

impl<T: FiberInvariant> FiberInvariant for Series<T> {
    fn is_translation_invariant(&self) -> bool {
        self.coeffs().iter().all(T::is_translation_invariant)
    }
}

impl<T: FiberInvariant> FiberInvariant for [T] {
    fn is_translation_invariant(&self) -> bool {
        self.iter().all(T::is_translation_invariant)
    }
}

pub fn check_invariance<T: FiberInvariant + ?Sized>(obj: &T) -> bool {
    obj.is_translation_invariant()
}

/// Basis of all `D = Σ λ^r D_r` commuting with `ρ` modulo `λ^{N+1}` whose
/// coefficients have operator order `≤ op_order` and coefficient degree
/// `≤ coeff_degree`, by exact elimination on the commutator equations.
pub fn bounded_commutant(rho: &ModuleDeformation, op_order: u32, coeff_degree: u32) -> Result<Vec<Series<DiffOp>>> {
    let space = rho.space().clone();
    let n = rho.order();
    let (nx, ny) = (space.n(), space.k());
    let mut unknowns: Vec<(usize, Monomial, OpIndex)> = Vec::new();
    for r in 0..=n {
        for m in Monomial::up_to_degree(nx + ny, coeff_degree) {
            for full in Monomial::up_to_degree(nx + ny, op_order) {
                let idx = OpIndex::new(full.slice(0, nx), full.slice(nx, ny));
                unknowns.push((r, m.clone(), idx));
            }
        }
    }
    let basis_op = |m: &Monomial, idx: &OpIndex| {
        let mut op = DiffOp::zero(&space);
        op.add_term(idx.clone(), Poly::monomial(space.total(), m.clone(), Rational::from_integer(1.into())));
        op
    };

    // equation key: (order, argument multi-index, operator index, coefficient monomial)
    type Key = (usize, Monomial, OpIndex, Monomial);
    let mut keys: BTreeMap<Key, usize> = BTreeMap::new();
    let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    for (col, (s, m, idx)) in unknowns.iter().enumerate() {
        let e = basis_op(m, idx);
        for t in 0..=n - s {
            for (alphas, v) in bracket(&e, rho.coeff(t)).terms() {
                for (vi, c) in v.terms() {
                    for (mono, q) in c.terms() {
                        let key = (s + t, alphas[0].clone(), vi.clone(), mono.clone());
                        let next = keys.len();
                        let row = *keys.entry(key).or_insert(next);
                        if row == rows.len() {
                            rows.push(BTreeMap::new());
                        }
                        rows[row].insert(col, q.clone());
                    }
                }
            }
        }
    }

    let pivots = echelon(rows);
    let mut solutions = Vec::new();
    for free in (0..unknowns.len()).filter(|c| !pivots.contains_key(c)) {
        let mut coeffs = vec![DiffOp::zero(&space); n + 1];
        let mut set = |col: usize, val: &Rational| {
            let (r, m, idx) = &unknowns[col];
            coeffs[*r] = coeffs[*r].add(&basis_op(m, idx).scale(val));
        };
        set(free, &Rational::from_integer(1.into()));
        for (p, row) in &pivots {
            if let Some(c) = row.get(&free) {
                set(*p, &-c.clone());
            }
        }
        solutions.push(Series::new(coeffs));
    }
    Ok(solutions)
}

/// Reduced row echelon form of sparse rows, keyed by pivot column.
fn echelon(rows: Vec<BTreeMap<usize, Rational>>) -> BTreeMap<usize, BTreeMap<usize, Rational>> {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows {
        loop {
            row.retain(|_, v| !num_traits::Zero::is_zero(v));
            let Some(col) = row.keys().copied().find(|c| pivots.contains_key(c)) else { break };
            let factor = row[&col].clone();
            for (c, v) in &pivots[&col] {
                let entry = row.entry(*c).or_insert_with(|| Rational::from_integer(0.into()));
                *entry -= &factor * v;
            }
        }
        if let Some((&col, lead)) = row.iter().next() {
            let lead = lead.clone();
            for v in row.values_mut() {
                *v /= &lead;
            }
            for other in pivots.values_mut() {
                if let Some(f) = other.get(&col).cloned() {
                    for (c, v) in &row {
                        let entry = other.entry(*c).or_insert_with(|| Rational::from_integer(0.into()));
                        *entry -= &f * v;
                    }
                    other.retain(|_, v| !num_traits::Zero::is_zero(v));
                }
            }
            pivots.insert(col, row);
        }
    }
    pivots
}

/// Unitality and associativity of `⋆′` on every pair and triple of `family`.
pub fn verify_star_prime(family: &[DiffOp], rho: &ModuleDeformation) -> Result<Report> {
    let n = rho.order();
    let mut report = Report::default();
    let id = Series::constant(DiffOp::identity(rho.space()), n);
    for (i, a) in family.iter().enumerate() {
        let sa = Series::constant(a.clone(), n);
        let unit_ok = star_prime(&id, &sa, rho)? == sa && star_prime(&sa, &id, rho)? == sa;
        report.push(&format!("star-prime-unit[{i}]"), n, (!unit_ok).then(|| unit_witness(a)));
        for (j, b) in family.iter().enumerate() {
            let sb = Series::constant(b.clone(), n);
            for (k, c) in family.iter().enumerate() {
                let sc = Series::constant(c.clone(), n);
                let left = star_prime(&star_prime(&sa, &sb, rho)?, &sc, rho)?;
                let right = star_prime(&sa, &star_prime(&sb, &sc, rho)?, rho)?;
                let diff = left.sub(&right)?;
                let bad = diff.coeffs().iter().position(|d| !d.is_zero());
                report.push(
                    &format!("star-prime-assoc[{i},{j},{k}]"),
                    bad.unwrap_or(n),
                    bad.map(|r| unit_witness(diff.coeff(r))),
                );
            }
        }
    }
    Ok(report)
}

fn unit_witness(d: &DiffOp) -> super::report::Witness {
    super::report::Witness { args: Vec::new(), value: super::report::WitnessValue::Op(d.clone()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::module::build_module_deformation;
    use crate::deform::star::moyal;
    use crate::ring::int;
    use crate::space::Space;
    use std::sync::Arc;

    fn setup() -> (Arc<Space>, ModuleDeformation) {
        let space = Space::new(2, 1).unwrap();
        let pi: Vec<Vec<Rational>> = vec![vec![int(0), int(1)], vec![int(-1), int(0)]];
        let star = moyal(&space, &pi, 3).unwrap();
        (space.clone(), build_module_deformation(&star).unwrap())
    }

    fn family(space: &Arc<Space>) -> Vec<DiffOp> {
        let y = DiffOp::mult(space, &space.y(0));
        let dy = DiffOp::dy(space, 0);
        vec![
            DiffOp::identity(space),
            y.clone(),
            dy.clone(),
            y.compose(&dy),
            y.compose(&y),
            y.compose(&y).compose(&dy),
        ]
    }

    #[test]
    fn quantization_round_trip() {
        let (space, rho) = setup();
        for a in family(&space) {
            let q = quantize_vertical(&a, &rho).unwrap();
            assert!(check_commutant_membership(&q, &rho));
            assert!(q.coeffs()[1..].iter().all(|d| d.vertical_part().is_zero()));
            let back = rho_prime_inverse(&q, &rho).unwrap();
            assert_eq!(back, Series::constant(a, 3));
        }
        let id = quantize_vertical(&DiffOp::identity(&space), &rho).unwrap();
        assert!(id.is_one());
    }

    #[test]
    fn x_dependent_vertical_field_gets_corrections() {
        let (space, rho) = setup();
        let a = DiffOp::mult(&space, &space.x(0)).compose(&DiffOp::dy(&space, 0));
        let q = quantize_vertical(&a, &rho).unwrap();
        assert!(!q.coeff(1).is_zero());
        assert!(check_commutant_membership(&q, &rho));
        assert_eq!(rho_prime_inverse(&q, &rho).unwrap(), Series::constant(a, 3));
    }

    #[test]
    fn non_vertical_is_rejected() {
        let (space, rho) = setup();
        let d = Series::constant(DiffOp::dx(&space, 0), 3);
        assert!(!check_commutant_membership(&d, &rho));
        assert_eq!(commutant_report(&d, &rho).unwrap().first_failure().unwrap().order, 0);
        assert!(matches!(rho_prime_inverse(&d, &rho), Err(Error::NotInCommutant(0))));
    }

    #[test]
    fn star_prime_examples() {
        let (space, rho) = setup();
        let y = DiffOp::mult(&space, &space.y(0));
        let dy = DiffOp::dy(&space, 0);
        let ydy = y.compose(&dy);
        let (sy, sdy) = (Series::constant(y.clone(), 3), Series::constant(dy.clone(), 3));
        let product = quantize_vertical(&y, &rho).unwrap().mul(&quantize_vertical(&dy, &rho).unwrap()).unwrap();
        assert_eq!(rho_prime_inverse(&product, &rho).unwrap(), star_prime(&sy, &sdy, &rho).unwrap());
        let p = star_prime(&Series::constant(ydy.clone(), 3), &sdy, &rho).unwrap();
        assert_eq!(p.coeff(0), &ydy.compose(&dy));
        assert!(verify_star_prime(&[y, dy, ydy], &rho).unwrap().passed());
    }

    #[test]
    fn gauge_commutators() {
        let (space, rho) = setup();
        let dy = DiffOp::dy(&space, 0);
        let ydy = DiffOp::mult(&space, &space.y(0)).compose(&dy);
        let c = gauge_commutator(&dy, &ydy, &rho).unwrap();
        assert_eq!(c.coeff(0), &dy);
        assert!(gauge_commutator(&ydy, &ydy, &rho).unwrap().coeffs().iter().all(DiffOp::is_zero));
        let x1 = DiffOp::mult(&space, &space.x(0)).compose(&dy);
        let x2 = DiffOp::mult(&space, &space.x(1)).compose(&dy);
        let c = gauge_commutator(&x1, &x2, &rho).unwrap();
        assert!(c.coeff(0).is_zero());
        assert!(gauge_commutator(&DiffOp::dx(&space, 0), &dy, &rho).is_err());
    }

    #[test]
    fn invariance_scan() {
        let (space, rho) = setup();
        assert!(check_invariance(&Cochain::multiplication(&space)));
        assert!(check_invariance(&rho));
        let bad = DiffOp::mult(&space, &(&space.y(0) * &space.pull(&space.x(0))));
        assert!(!check_invariance(&bad));
    }

    #[test]
    fn bounded_commutant_small() {
        let space = Space::new(2, 1).unwrap();
        let pi: Vec<Vec<Rational>> = vec![vec![int(0), int(1)], vec![int(-1), int(0)]];
        let rho = build_module_deformation(&moyal(&space, &pi, 1).unwrap()).unwrap();
        let solutions = bounded_commutant(&rho, 1, 1).unwrap();
        assert!(!solutions.is_empty());
        for d in &solutions {
            assert!(check_commutant_membership(d, &rho));
            let a = rho_prime_inverse(d, &rho).unwrap();
            assert_eq!(&quantize_series(&a, &rho).unwrap(), d);
        }
    }
}
