use std::sync::Arc;

use fdq::homotopy::*;
use fdq::ring::{int, Monomial, Poly};
use fdq::{Cochain, DiffOp, Space};

fn sp() -> Arc<Space> {
    Space::new(2, 1).unwrap()
}

fn mono(v: &[u32]) -> Monomial {
    Monomial::from_vec(v.to_vec())
}

fn bar_var(s: &Space, k: usize, slot: usize, i: usize) -> Poly {
    Poly::var(&s.bar_ctx(k), slot * s.n() + i)
}

fn ae_var(s: &Space, i: usize) -> Poly {
    Poly::var(s.ae(), i)
}

#[test]
fn bar_boundary_examples() {
    let s = sp();
    let chi = BarElement::new(&s, 1, bar_var(&s, 1, 1, 0)).unwrap();
    let d = bar_boundary(&s, &chi).unwrap();
    let expected = &bar_var(&s, 0, 0, 0) - &bar_var(&s, 0, 1, 0);
    assert_eq!(d.poly(), &expected);
    let chi2 = BarElement::new(&s, 2, &bar_var(&s, 2, 1, 0) * &bar_var(&s, 2, 2, 1)).unwrap();
    let dd = bar_boundary(&s, &bar_boundary(&s, &chi2).unwrap()).unwrap();
    assert!(dd.is_zero());
    assert!(bar_boundary(&s, &BarElement::zero(&s, 0)).is_err());
}

#[test]
fn bar_homotopy_examples() {
    let s = sp();
    let w1 = BarElement::new(&s, 0, bar_var(&s, 0, 1, 0)).unwrap();
    assert_eq!(chain_hx(&s, &w1).poly(), &-&bar_var(&s, 1, 1, 0));
    let v1 = BarElement::new(&s, 0, bar_var(&s, 0, 0, 0)).unwrap();
    assert_eq!(chain_hx(&s, &v1).poly(), &-&bar_var(&s, 1, 0, 0));
    // h_X^{-1} ε + ∂_X h_X^0 = id on v¹w¹
    let chi = BarElement::new(&s, 0, &bar_var(&s, 0, 0, 0) * &bar_var(&s, 0, 1, 0)).unwrap();
    let lhs = bar_h_minus(&s, &bar_augment(&s, &chi).unwrap()).add(&bar_boundary(&s, &chain_hx(&s, &chi)).unwrap());
    assert_eq!(lhs, chi);
}

#[test]
fn koszul_examples() {
    let s = sp();
    let one = Poly::one(s.ae());
    let e1 = KoszulElement::basis(&s, &[0], one.clone());
    let b = koszul_boundary(&s, &e1).unwrap();
    assert_eq!(b.comp(&[]).unwrap(), &(&ae_var(&s, 0) - &ae_var(&s, 2)));
    let e12 = KoszulElement::basis(&s, &[0, 1], one.clone());
    let b = koszul_boundary(&s, &e12).unwrap();
    assert_eq!(b.comp(&[1]).unwrap(), &(&ae_var(&s, 0) - &ae_var(&s, 2)));
    assert_eq!(b.comp(&[0]).unwrap(), &(&ae_var(&s, 3) - &ae_var(&s, 1)));
    assert!(koszul_boundary(&s, &b).unwrap().is_zero());

    let wi = KoszulElement::basis(&s, &[], ae_var(&s, 2));
    let h = chain_hk(&s, &wi);
    assert_eq!(h, KoszulElement::basis(&s, &[0], -&one));
    let av = KoszulElement::basis(&s, &[], &ae_var(&s, 0) * &ae_var(&s, 1));
    assert!(chain_hk(&s, &av).is_zero());
    let lhs = koszul_h_minus(&s, &koszul_augment(&s, &wi).unwrap()).add(&koszul_boundary(&s, &h).unwrap());
    assert_eq!(lhs, wi);
}

#[test]
fn comparison_map_examples() {
    let s = sp();
    let one = Poly::one(s.ae());
    let f1 = chain_f(&s, &KoszulElement::basis(&s, &[0], one.clone()));
    assert_eq!(f1.poly(), &(&bar_var(&s, 1, 1, 0) - &bar_var(&s, 1, 0, 0)));
    let f12 = chain_f(&s, &KoszulElement::basis(&s, &[0, 1], one.clone()));
    let d = |slot: usize, i: usize| &bar_var(&s, 2, slot, i) - &bar_var(&s, 2, 0, i);
    let expected = &(&d(1, 0) * &d(2, 1)) - &(&d(1, 1) * &d(2, 0));
    assert_eq!(f12.poly(), &expected);
    let c = KoszulElement::basis(&s, &[], &ae_var(&s, 0) * &ae_var(&s, 3));
    assert_eq!(chain_f(&s, &c).poly(), &(&bar_var(&s, 0, 0, 0) * &bar_var(&s, 0, 1, 1)));

    let q = BarElement::new(&s, 1, bar_var(&s, 1, 1, 0)).unwrap();
    assert_eq!(chain_g(&s, &q), KoszulElement::basis(&s, &[0], one.clone()));
    let q2 = BarElement::new(&s, 1, bar_var(&s, 1, 1, 0).pow(2)).unwrap();
    assert_eq!(chain_g(&s, &q2), KoszulElement::basis(&s, &[0], &ae_var(&s, 0) + &ae_var(&s, 2)));
    assert_eq!(chain_g(&s, &f12), KoszulElement::basis(&s, &[0, 1], one));
}

#[test]
fn xi_examples() {
    let s = sp();
    let phi = Cochain::from_terms(&s, 1, [(vec![mono(&[1, 0])], DiffOp::dx(&s, 0).left_mul(&s.y(0)))]);
    let psi = xi_inverse(&phi);
    assert_eq!(xi(&psi), phi);
    let m = xi_inverse(&Cochain::multiplication(&s));
    assert!(f_pullback(&m).unwrap().is_zero());
    let dpsi = xi_inverse(&Cochain::from_terms(&s, 1, [(vec![mono(&[0, 1])], DiffOp::dy(&s, 0))]));
    let fp = f_pullback(&dpsi).unwrap();
    assert_eq!(fp.value(&[1]), DiffOp::dy(&s, 0));
    assert!(fp.value(&[0]).is_zero());
}

#[test]
fn koszul_homotopy_example() {
    let s = sp();
    let psi = KoszulCochain::from_values(&s, 1, [(vec![0], DiffOp::identity(&s))]);
    let inv = koszul_delta_inv(&psi).unwrap();
    assert_eq!(inv.value(&[]), DiffOp::dx(&s, 0).neg());
    // weighted identity on a k=1 cochain with mixed deg
    let v = DiffOp::dx(&s, 1).left_mul(&s.y(0)).add(&DiffOp::dy(&s, 0).left_mul(&s.x(0)));
    let psi = KoszulCochain::from_values(&s, 1, [(vec![0], v), (vec![1], DiffOp::mult(&s, &s.x(1)))]);
    let lhs = koszul_delta(&koszul_delta_star(&psi).unwrap()).add(&koszul_delta_star(&koszul_delta(&psi)).unwrap());
    let rhs = koszul_deg(&psi).add(&psi.scale(&int(1)));
    assert_eq!(lhs, rhs);
}

#[test]
fn delta_inverse_examples() {
    let s = sp();
    let phi = Cochain::from_op(DiffOp::dx(&s, 0)).delta();
    let inv = delta_inv(&phi).unwrap();
    assert_eq!(inv.delta(), phi);
    assert_eq!(inv.as_op(), DiffOp::dx(&s, 0));
    assert!(delta_inv(&Cochain::zero(&s, 2)).unwrap().is_zero());
}

#[test]
fn homotopy_identity_small() {
    let s = sp();
    let phi = Cochain::from_terms(
        &s,
        1,
        [
            (vec![mono(&[1, 0])], DiffOp::dy(&s, 0).left_mul(&s.x(1))),
            (vec![mono(&[0, 2])], DiffOp::dx(&s, 0)),
            (vec![mono(&[0, 0])], DiffOp::dx(&s, 1).left_mul(&s.y(0))),
        ],
    );
    let lhs = delta_inv(&phi).unwrap().delta().add(&delta_inv(&phi.delta()).unwrap());
    assert_eq!(lhs, phi);
    let phi2 = Cochain::from_terms(
        &s,
        2,
        [
            (vec![mono(&[1, 0]), mono(&[0, 1])], DiffOp::dy(&s, 0)),
            (vec![mono(&[0, 0]), mono(&[1, 0])], DiffOp::dx(&s, 1).left_mul(&s.x(0))),
        ],
    );
    let lhs = delta_inv(&phi2).unwrap().delta().add(&delta_inv(&phi2.delta()).unwrap());
    assert_eq!(lhs, phi2);
}

#[test]
fn chain_map_identities() {
    let s = sp();
    let ae = s.ae().clone();
    for idx in [vec![0, 1], vec![1]] {
        let om = KoszulElement::basis(&s, &idx, &Poly::var(&ae, 0) * &Poly::var(&ae, 3).pow(2));
        let lhs = chain_f(&s, &koszul_boundary(&s, &om).unwrap());
        assert_eq!(lhs, bar_boundary(&s, &chain_f(&s, &om)).unwrap());
    }
    let chis = [
        BarElement::new(&s, 2, &(&bar_var(&s, 2, 1, 0).pow(2) * &bar_var(&s, 2, 2, 1)) * &bar_var(&s, 2, 3, 0)).unwrap(),
        BarElement::new(&s, 1, &(&bar_var(&s, 1, 1, 0).pow(2) * &bar_var(&s, 1, 0, 1)) * &bar_var(&s, 1, 2, 0)).unwrap(),
    ];
    for chi in chis {
        let lhs = chain_g(&s, &bar_boundary(&s, &chi).unwrap());
        assert_eq!(lhs, koszul_boundary(&s, &chain_g(&s, &chi)).unwrap());
    }
    let phi = Cochain::from_terms(&s, 1, [(vec![mono(&[1, 0])], DiffOp::dx(&s, 0))]);
    let psi = f_pullback(&xi_inverse(&phi)).unwrap();
    assert_eq!(f_pullback(&xi_inverse(&phi.delta())).unwrap(), koszul_delta(&psi));
}
