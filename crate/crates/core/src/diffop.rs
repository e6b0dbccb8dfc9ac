//! Differential operators on `V×G` with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{int, multi_binomial, same_context, Monomial, Poly, Rational, SeriesCoeff};
use crate::space::Space;

/// Derivative multi-index of one operator term, `∂_x^x ∂_y^y`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OpIndex {
    pub x: Monomial,
    pub y: Monomial,
}

impl OpIndex {
    pub fn new(x: Monomial, y: Monomial) -> Self {
        OpIndex { x, y }
    }

    pub fn zero(space: &Space) -> Self {
        OpIndex { x: Monomial::zero(space.n()), y: Monomial::zero(space.k()) }
    }

    pub fn order(&self) -> u32 {
        self.x.degree() + self.y.degree()
    }

    fn full(&self) -> Monomial {
        self.x.concat(&self.y)
    }

    fn from_full(m: &Monomial, n: usize) -> Self {
        OpIndex { x: m.slice(0, n), y: m.slice(n, m.len() - n) }
    }
}

/// `Σ c(x,y) ∂_x^α ∂_y^γ`, coefficients to the left of the derivatives.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    space: Arc<Space>,
    terms: BTreeMap<OpIndex, Poly>,
}

impl DiffOp {
    pub fn zero(space: &Arc<Space>) -> Self {
        DiffOp { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(space: &Arc<Space>) -> Self {
        Self::mult(space, &Poly::one(space.total()))
    }

    /// Left multiplication `L_f`; base functions are pulled back.
    pub fn mult(space: &Arc<Space>, f: &Poly) -> Self {
        let mut d = Self::zero(space);
        d.add_term(OpIndex::zero(space), space_poly(space, f));
        d
    }

    pub fn term(space: &Arc<Space>, coeff: &Poly, x: Monomial, y: Monomial) -> Self {
        assert_eq!(x.len(), space.n());
        assert_eq!(y.len(), space.k());
        let mut d = Self::zero(space);
        d.add_term(OpIndex { x, y }, space_poly(space, coeff));
        d
    }

    pub fn dx(space: &Arc<Space>, i: usize) -> Self {
        Self::term(space, &Poly::one(space.total()), Monomial::unit(space.n(), i), Monomial::zero(space.k()))
    }

    pub fn dy(space: &Arc<Space>, j: usize) -> Self {
        Self::term(space, &Poly::one(space.total()), Monomial::zero(space.n()), Monomial::unit(space.k(), j))
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpIndex, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(i, c)| i.order() == 0 && c.is_one())
    }

    pub fn add_term(&mut self, idx: OpIndex, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(same_context(coeff.ctx(), self.space.total()));
        match self.terms.get_mut(&idx) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, coeff);
            }
        }
    }

    fn check_space(&self, other: &DiffOp) -> Result<()> {
        if *self.space != *other.space {
            return Err(Error::ContextMismatch(format!(
                "operators on spaces (n={}, k={}) and (n={}, k={})",
                self.space.n(),
                self.space.k(),
                other.space.n(),
                other.space.k()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        self.check_space(other).expect("operator space mismatch");
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DiffOp {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(&self.space);
        }
        DiffOp { space: self.space.clone(), terms: self.terms.iter().map(|(i, p)| (i.clone(), p.scale(c))).collect() }
    }

    /// `L_f ∘ self`; base functions are pulled back.
    pub fn left_mul(&self, f: &Poly) -> DiffOp {
        let f = space_poly(&self.space, f);
        let mut out = DiffOp::zero(&self.space);
        if f.is_zero() {
            return out;
        }
        for (i, c) in &self.terms {
            out.add_term(i.clone(), &f * c);
        }
        out
    }

    /// Composition `self ∘ other`, normal-ordered by the Leibniz rule.
    pub fn try_compose(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_space(other)?;
        let n = self.space.n();
        let mut out = DiffOp::zero(&self.space);
        for (i1, c1) in &self.terms {
            let full1 = i1.full();
            for mu in full1.divisors() {
                let binom = multi_binomial(&full1, &mu);
                let rest = full1.checked_sub(&mu).expect("divisor");
                for (i2, c2) in &other.terms {
                    let dc2 = c2.diff(0, &mu);
                    if dc2.is_zero() {
                        continue;
                    }
                    let idx = OpIndex::from_full(&rest.add(&i2.full()), n);
                    out.add_term(idx, (c1 * &dc2).scale(&binom));
                }
            }
        }
        Ok(out)
    }

    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        self.try_compose(other).expect("operator space mismatch")
    }

    /// Commutator `self∘other − other∘self`.
    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn try_apply(&self, f: &Poly) -> Result<Poly> {
        let f = if same_context(f.ctx(), self.space.base()) {
            self.space.pull(f)
        } else if same_context(f.ctx(), self.space.total()) {
            f.clone()
        } else {
            return Err(Error::ContextMismatch(format!("cannot apply operator to polynomial in {:?}", f.ctx())));
        };
        let mut out = Poly::zero(self.space.total());
        for (i, c) in &self.terms {
            let df = f.diff(0, &i.full());
            if !df.is_zero() {
                out += &(c * &df);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        self.try_apply(f).expect("operator/polynomial context mismatch")
    }

    /// Total order `max |α|+|γ|`; zero for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(OpIndex::order).max().unwrap_or(0)
    }

    /// Largest number of base derivatives in a term.
    pub fn x_order(&self) -> u32 {
        self.terms.keys().map(|i| i.x.degree()).max().unwrap_or(0)
    }

    pub fn coeff_degree(&self) -> u32 {
        self.terms.values().map(Poly::degree).max().unwrap_or(0)
    }

    /// Terms with exactly `r` base derivatives.
    pub fn deg_component(&self, r: u32) -> DiffOp {
        DiffOp {
            space: self.space.clone(),
            terms: self.terms.iter().filter(|(i, _)| i.x.degree() == r).map(|(i, c)| (i.clone(), c.clone())).collect(),
        }
    }

    pub fn vertical_part(&self) -> DiffOp {
        self.deg_component(0)
    }

    /// Everything except the vertical part.
    pub fn complement_part(&self) -> DiffOp {
        DiffOp {
            space: self.space.clone(),
            terms: self.terms.iter().filter(|(i, _)| i.x.degree() > 0).map(|(i, c)| (i.clone(), c.clone())).collect(),
        }
    }

    /// `Σ_r r·deg_r(self)`.
    pub fn deg_weighted(&self) -> DiffOp {
        DiffOp {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.x.degree() > 0)
                .map(|(i, c)| (i.clone(), c.scale(&int(i.x.degree() as i64))))
                .collect(),
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.terms.keys().all(|i| i.x.is_zero())
    }

    /// Whether every coefficient is independent of the fiber coordinates.
    pub fn is_fiber_free(&self) -> bool {
        self.terms.values().all(|c| self.space.is_fiber_free(c))
    }

    /// The operators `D^β = Σ binom(α,β) c ∂_x^{α−β} ∂_y^γ` with
    /// `D ∘ L_b = Σ_β L_{∂^β b} ∘ D^β` for base functions `b`.
    pub fn right_mult_parts(&self) -> BTreeMap<Monomial, DiffOp> {
        let mut parts: BTreeMap<Monomial, DiffOp> = BTreeMap::new();
        for (i, c) in &self.terms {
            for beta in i.x.divisors() {
                let binom = multi_binomial(&i.x, &beta);
                let idx = OpIndex { x: i.x.checked_sub(&beta).expect("divisor"), y: i.y.clone() };
                parts
                    .entry(beta)
                    .or_insert_with(|| DiffOp::zero(&self.space))
                    .add_term(idx, c.scale(&binom));
            }
        }
        parts.retain(|_, d| !d.is_zero());
        parts
    }

    /// Pairs `(∂^β b, D^β)` with `D ∘ L_b = Σ L_{∂^β b} ∘ D^β`.
    pub fn right_mult_expansion(&self, b: &Poly) -> Result<Vec<(Poly, DiffOp)>> {
        if !same_context(b.ctx(), self.space.base()) {
            return Err(Error::Domain("right multiplication expects a base function".into()));
        }
        Ok(self
            .right_mult_parts()
            .into_iter()
            .map(|(beta, d)| (b.diff(0, &beta), d))
            .filter(|(bb, _)| !bb.is_zero())
            .collect())
    }

    /// Action of `â ∈ C∞(V×V)` on an operator: `v` multiplies from the left,
    /// `w` from the right.
    pub fn ae_action(&self, ahat: &Poly) -> Result<DiffOp> {
        if !same_context(ahat.ctx(), self.space.ae()) {
            return Err(Error::Domain(format!("enveloping-algebra element expected, got {:?}", ahat.ctx())));
        }
        let n = self.space.n();
        let mut out = DiffOp::zero(&self.space);
        if ahat.is_zero() {
            return Ok(out);
        }
        for (beta, d) in self.right_mult_parts() {
            let f = ahat.diff(n, &beta);
            if f.is_zero() {
                continue;
            }
            out = out.add(&d.left_mul(&self.space.diagonal(&f)));
        }
        Ok(out)
    }

    /// Conjugate by the fiber translation `y ↦ y + e`.
    pub fn translate_fiber(&self, shift: &[Rational]) -> DiffOp {
        let total = self.space.total();
        let n = self.space.n();
        let images: Vec<Poly> = (0..total.nvars())
            .map(|i| {
                let v = Poly::var(total, i);
                if i >= n { &v + &Poly::constant(total, shift[i - n].clone()) } else { v }
            })
            .collect();
        DiffOp {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c.substitute(total, &images))).collect(),
        }
    }
}

/// Coerce a base or total polynomial into the total context.
fn space_poly(space: &Space, f: &Poly) -> Poly {
    if same_context(f.ctx(), space.base()) {
        space.pull(f)
    } else {
        assert!(same_context(f.ctx(), space.total()), "coefficient must live on V or V×G, got {:?}", f.ctx());
        f.clone()
    }
}

impl SeriesCoeff for DiffOp {
    fn add(&self, other: &Self) -> Self {
        DiffOp::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        DiffOp::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn zero_like(&self) -> Self {
        DiffOp::zero(&self.space)
    }
    fn one_like(&self) -> Self {
        DiffOp::identity(&self.space)
    }
    fn is_zero(&self) -> bool {
        DiffOp::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.is_identity()
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.space.n();
        for (k, (i, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if c.len() == 1 {
                factors.push(c.to_string());
            } else {
                factors.push(format!("({c})"));
            }
            for (j, &e) in i.x.exps().iter().chain(i.y.exps()).enumerate() {
                let name = if j < n { format!("dx{}", j + 1) } else { format!("dy{}", j - n + 1) };
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.len() > 1 && factors[0] == "1" {
                factors.remove(0);
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> Arc<Space> {
        Space::new(2, 1).unwrap()
    }

    #[test]
    fn leibniz_composition() {
        let s = sp();
        let y = s.y(0);
        let dy = DiffOp::dy(&s, 0);
        let ly = DiffOp::mult(&s, &y);
        let expected = ly.compose(&dy).add(&DiffOp::identity(&s));
        assert_eq!(dy.compose(&ly), expected);
        assert_eq!(dy.compose(&DiffOp::identity(&s)), dy);
        let x1dx1 = DiffOp::dx(&s, 0).left_mul(&s.x(0));
        let expected = DiffOp::term(&s, &s.x(0), Monomial::from_vec(vec![1, 1]), Monomial::zero(1));
        assert_eq!(x1dx1.compose(&DiffOp::dx(&s, 1)), expected);
    }

    #[test]
    fn application() {
        let s = sp();
        let f = &s.pull(&s.x(0).pow(2)) * &s.y(0);
        let got = DiffOp::dx(&s, 0).apply(&f);
        assert_eq!(got, (&s.pull(&s.x(0)) * &s.y(0)).scale(&int(2)));
        assert_eq!(DiffOp::identity(&s).apply(&f), f);
        let euler = DiffOp::dy(&s, 0).left_mul(&s.y(0)).add(&DiffOp::dx(&s, 0).left_mul(&s.x(0)));
        let x1y = &s.pull(&s.x(0)) * &s.y(0);
        assert_eq!(euler.apply(&x1y), x1y.scale(&int(2)));
    }

    #[test]
    fn deg_components() {
        let s = sp();
        let a = DiffOp::term(&s, &s.y(0), Monomial::from_vec(vec![1, 0]), Monomial::from_vec(vec![1]));
        let b = DiffOp::dy(&s, 0).left_mul(&s.x(0));
        let d = a.add(&b);
        assert_eq!(d.deg_component(1), a);
        assert_eq!(d.vertical_part(), b);
        assert!(b.is_vertical());
        assert!(d.deg_component(2).is_zero());
    }

    #[test]
    fn right_multiplication() {
        let s = sp();
        let x1 = s.x(0);
        let d = DiffOp::dx(&s, 0);
        let pairs = d.right_mult_expansion(&x1.pow(2)).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0], (x1.pow(2), d.clone()));
        assert_eq!(pairs[1], (x1.scale(&int(2)), DiffOp::identity(&s)));

        let d2 = DiffOp::term(&s, &Poly::one(s.total()), Monomial::from_vec(vec![2, 0]), Monomial::zero(1));
        let pairs = d2.right_mult_expansion(&x1).unwrap();
        assert_eq!(pairs, vec![(x1.clone(), d2.clone()), (Poly::one(s.base()), d.scale(&int(2)))]);
        let recomposed = pairs.iter().fold(DiffOp::zero(&s), |acc, (b, op)| acc.add(&op.left_mul(b)));
        assert_eq!(recomposed, d2.compose(&DiffOp::mult(&s, &x1)));

        let fiber = DiffOp::mult(&s, &s.y(0));
        assert!(d.right_mult_expansion(&fiber.apply(&Poly::one(s.total()))).is_err());
    }

    #[test]
    fn enveloping_action() {
        let s = sp();
        let ae = s.ae().clone();
        let w1 = Poly::var(&ae, 2);
        let got = DiffOp::dx(&s, 0).ae_action(&w1).unwrap();
        let expected = DiffOp::dx(&s, 0).left_mul(&s.x(0)).add(&DiffOp::identity(&s));
        assert_eq!(got, expected);
        let v2 = Poly::var(&ae, 1);
        let dy = DiffOp::dy(&s, 0);
        assert_eq!(dy.ae_action(&v2).unwrap(), dy.left_mul(&s.x(1)));
        let w2 = Poly::var(&ae, 3);
        assert_eq!(dy.ae_action(&w2).unwrap(), dy.left_mul(&s.x(1)));
    }

    #[test]
    fn euler_identity_of_deg() {
        // Σ_j ((D·x^j) − (x^j·D))∘∂_j = Σ_r r·deg_r(D) for D = x¹∂₁²
        let s = sp();
        let d = DiffOp::term(&s, &s.x(0), Monomial::from_vec(vec![2, 0]), Monomial::zero(1));
        let mut lhs = DiffOp::zero(&s);
        for j in 0..2 {
            let xj = DiffOp::mult(&s, &s.x(j));
            lhs = lhs.add(&d.compose(&xj).sub(&xj.compose(&d)).compose(&DiffOp::dx(&s, j)));
        }
        assert_eq!(lhs, d.scale(&int(2)));
        assert_eq!(d.deg_weighted(), d.scale(&int(2)));
    }

    #[test]
    fn display() {
        let s = sp();
        let d = DiffOp::dy(&s, 0).left_mul(&s.y(0)).add(&DiffOp::identity(&s));
        assert_eq!(d.to_string(), "1 + y1*dy1");
    }
}
