use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hochschild::BaseCochain;
use crate::ring::{factorial, int, Monomial, Poly, Rational};
use crate::space::Space;

use super::report::{func_witness, Report};

/// `f ⋆ g = Σ_{r=0}^{N} λ^r C_r(f, g)` with `C₀` the pointwise product.
#[derive(Clone, Debug, PartialEq)]
pub struct StarProduct {
    space: Arc<Space>,
    cs: Vec<BaseCochain>,
}

impl StarProduct {
    pub fn new(space: &Arc<Space>, cs: Vec<BaseCochain>) -> Result<Self> {
        if cs.is_empty() {
            return Err(Error::Invalid("a star product needs at least C₀".into()));
        }
        if cs.iter().any(|c| c.arity() != 2) {
            return Err(Error::Invalid("star product coefficients must be bidifferential".into()));
        }
        if cs[0] != BaseCochain::multiplication(space) {
            return Err(Error::Invalid("C₀ must be the pointwise product".into()));
        }
        Ok(StarProduct { space: space.clone(), cs })
    }

    /// `C_r = 0` for `r ≥ 1`.
    pub fn pointwise(space: &Arc<Space>, order: usize) -> Self {
        let mut cs = vec![BaseCochain::multiplication(space)];
        cs.resize(order + 1, BaseCochain::zero(space, 2));
        StarProduct { space: space.clone(), cs }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn order(&self) -> usize {
        self.cs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &BaseCochain {
        &self.cs[r]
    }

    pub fn coeffs(&self) -> &[BaseCochain] {
        &self.cs
    }

    /// `Σ λ^r C_r(a, b)` as a list of coefficients.
    pub fn apply(&self, a: &Poly, b: &Poly) -> Result<Vec<Poly>> {
        self.cs.iter().map(|c| c.eval(&[a.clone(), b.clone()])).collect()
    }

    /// `Σ_{s+t=r} C_s(a, C_t(b, c)) − C_s(C_t(a, b), c)`.
    pub fn associator(&self, r: usize) -> BaseCochain {
        let mut out = BaseCochain::zero(&self.space, 3);
        for s in 0..=r {
            let t = r - s;
            out = out.add(&self.cs[s].insert(1, &self.cs[t]));
            out = out.sub(&self.cs[s].insert(0, &self.cs[t]));
        }
        out
    }
}

/// Weyl–Moyal product of a constant antisymmetric `π`:
/// `C_r(a,b) = (1/(r! 2^r)) π^{i₁j₁}⋯π^{i_r j_r} ∂_{i₁…i_r}a ∂_{j₁…j_r}b`.
pub fn moyal(space: &Arc<Space>, pi: &[Vec<Rational>], order: usize) -> Result<StarProduct> {
    let n = space.n();
    if pi.len() != n || pi.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid(format!("Poisson tensor must be {n}×{n}")));
    }
    for i in 0..n {
        for j in 0..n {
            if pi[i][j] != -pi[j][i].clone() {
                return Err(Error::Invalid("Poisson tensor must be antisymmetric".into()));
            }
        }
    }
    let mut cs = vec![BaseCochain::multiplication(space)];
    for r in 1..=order {
        let norm = Rational::from_integer(1.into()) / (factorial(r as u32) * int(1 << r));
        let mut c = BaseCochain::zero(space, 2);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let mut idx = vec![0usize; r];
        loop {
            let mut w = norm.clone();
            let mut alpha = vec![0u32; n];
            let mut beta = vec![0u32; n];
            for &p in &idx {
                let (i, j) = pairs[p];
                w *= &pi[i][j];
                alpha[i] += 1;
                beta[j] += 1;
            }
            if w != int(0) {
                c.add_term(vec![Monomial::from_vec(alpha), Monomial::from_vec(beta)], Poly::constant(space.base(), w));
            }
            let mut slot = r;
            let done = loop {
                if slot == 0 {
                    break true;
                }
                slot -= 1;
                idx[slot] += 1;
                if idx[slot] < pairs.len() {
                    break false;
                }
                idx[slot] = 0;
            };
            if done {
                break;
            }
        }
        cs.push(c);
    }
    StarProduct::new(space, cs)
}

/// Structural associativity check per order; failures carry the first
/// monomial witness `(a, b, c)` and the value of `a⋆(b⋆c) − (a⋆b)⋆c` there.
pub fn verify_associativity(star: &StarProduct) -> Report {
    let mut report = Report::default();
    for r in 0..=star.order() {
        report.push("associativity", r, func_witness(&star.associator(r)));
    }
    for r in 1..=star.order() {
        let c = star.coeff(r);
        let left = c.at_one(0);
        let right = c.at_one(1);
        report.push("star-unit", r, func_witness(&left).or_else(|| func_witness(&right)));
    }
    report
}
