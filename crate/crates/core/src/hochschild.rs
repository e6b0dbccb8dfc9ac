//! Differential Hochschild cochains on `C∞(V)` with operator or function values.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::ring::{int, multi_factorial, same_context, Monomial, Poly, Rational};
use crate::space::Space;

/// Values a multidifferential cochain can take.
pub trait CochainValue: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_value(space: &Arc<Space>) -> Self;
    fn value_is_zero(&self) -> bool;
    fn value_add(&self, other: &Self) -> Self;
    fn value_scale(&self, c: &Rational) -> Self;
    /// Left multiplication by a base function.
    fn value_left_mul(&self, f: &Poly) -> Self;
    /// `(β, V^β)` with `V∘L_b = Σ_β L_{∂^β b}∘V^β`.
    fn value_right_parts(&self, space: &Space) -> Vec<(Monomial, Self)>;
}

impl CochainValue for DiffOp {
    fn zero_value(space: &Arc<Space>) -> Self {
        DiffOp::zero(space)
    }
    fn value_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn value_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn value_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn value_left_mul(&self, f: &Poly) -> Self {
        self.left_mul(f)
    }
    fn value_right_parts(&self, _space: &Space) -> Vec<(Monomial, Self)> {
        self.right_mult_parts().into_iter().collect()
    }
}

impl CochainValue for Poly {
    fn zero_value(space: &Arc<Space>) -> Self {
        Poly::zero(space.base())
    }
    fn value_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn value_add(&self, other: &Self) -> Self {
        self + other
    }
    fn value_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn value_left_mul(&self, f: &Poly) -> Self {
        f * self
    }
    fn value_right_parts(&self, space: &Space) -> Vec<(Monomial, Self)> {
        vec![(Monomial::zero(space.n()), self.clone())]
    }
}

/// `φ(a₁,…,a_k) = Σ L_{∂^{α₁}a₁ ⋯ ∂^{α_k}a_k} ∘ v_α` in normal form: one value per
/// tuple of multi-indices, no zero values.
#[derive(Clone, PartialEq)]
pub struct MultiDiff<V> {
    space: Arc<Space>,
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, V>,
}

/// Operator-valued cochain; arity 0 is a single operator.
pub type Cochain = MultiDiff<DiffOp>;
/// Function-valued multidifferential operator on the base.
pub type BaseCochain = MultiDiff<Poly>;

/// All ways to write `mu = ν₁ + … + ν_p` with multinomial weight `μ!/(ν₁!⋯ν_p!)`.
pub fn leibniz_splits(mu: &Monomial, parts: usize) -> Vec<(Vec<Monomial>, Rational)> {
    assert!(parts >= 1);
    if parts == 1 {
        return vec![(vec![mu.clone()], int(1))];
    }
    let mut out = Vec::new();
    for first in mu.divisors() {
        let rest = mu.checked_sub(&first).expect("divisor");
        let c = crate::ring::multi_binomial(mu, &first);
        for (mut tail, c2) in leibniz_splits(&rest, parts - 1) {
            tail.insert(0, first.clone());
            out.push((tail, &c * &c2));
        }
    }
    out
}

impl<V: CochainValue> MultiDiff<V> {
    pub fn zero(space: &Arc<Space>, arity: usize) -> Self {
        MultiDiff { space: space.clone(), arity, terms: BTreeMap::new() }
    }

    pub fn from_terms(space: &Arc<Space>, arity: usize, terms: impl IntoIterator<Item = (Vec<Monomial>, V)>) -> Self {
        let mut c = Self::zero(space, arity);
        for (alphas, v) in terms {
            c.add_term(alphas, v);
        }
        c
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &V)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn value_at(&self, alphas: &[Monomial]) -> Option<&V> {
        self.terms.get(alphas)
    }

    pub fn add_term(&mut self, alphas: Vec<Monomial>, v: V) {
        assert_eq!(alphas.len(), self.arity, "term arity");
        if v.value_is_zero() {
            return;
        }
        match self.terms.get_mut(&alphas) {
            Some(old) => {
                *old = old.value_add(&v);
                if old.value_is_zero() {
                    self.terms.remove(&alphas);
                }
            }
            None => {
                self.terms.insert(alphas, v);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "cochain arity mismatch");
        let mut out = self.clone();
        for (a, v) in &other.terms {
            out.add_term(a.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space, self.arity);
        }
        MultiDiff {
            space: self.space.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v.value_scale(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn map_values(&self, mut f: impl FnMut(&V) -> V) -> Self {
        let mut out = Self::zero(&self.space, self.arity);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), f(v));
        }
        out
    }

    /// Per-slot maximal derivative order `|α_i|`.
    pub fn multi_order(&self) -> Vec<u32> {
        let mut l = vec![0; self.arity];
        for alphas in self.terms.keys() {
            for (li, a) in l.iter_mut().zip(alphas) {
                *li = (*li).max(a.degree());
            }
        }
        l
    }

    pub fn eval(&self, args: &[Poly]) -> Result<V> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        for a in args {
            if !same_context(a.ctx(), self.space.base()) {
                return Err(Error::ContextMismatch("cochain arguments must be base functions".into()));
            }
        }
        let mut cache: Vec<BTreeMap<Monomial, Poly>> = vec![BTreeMap::new(); self.arity];
        let mut out = V::zero_value(&self.space);
        'terms: for (alphas, v) in &self.terms {
            let mut f = Poly::one(self.space.base());
            for (i, a) in alphas.iter().enumerate() {
                let d = cache[i].entry(a.clone()).or_insert_with(|| args[i].diff(0, a));
                if d.is_zero() {
                    continue 'terms;
                }
                f = &f * d;
            }
            out = out.value_add(&v.value_left_mul(&f));
        }
        Ok(out)
    }

    /// First monomial argument tuple (first slot outermost, each slot in
    /// graded-lex order) on which the cochain evaluates to a nonzero value.
    /// Every nonzero cochain has one within its multi-order.
    pub fn witness(&self) -> Option<(Vec<Monomial>, V)> {
        if self.is_zero() {
            return None;
        }
        let choices: Vec<Vec<Monomial>> =
            self.multi_order().iter().map(|&l| Monomial::up_to_degree(self.space.n(), l)).collect();
        let mut idx = vec![0usize; self.arity];
        loop {
            let tuple: Vec<Monomial> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            let args: Vec<Poly> = tuple.iter().map(|m| Poly::monomial(self.space.base(), m.clone(), int(1))).collect();
            let v = self.eval(&args).expect("arity matches");
            if !v.value_is_zero() {
                return Some((tuple, v));
            }
            let mut slot = self.arity;
            loop {
                if slot == 0 {
                    return None;
                }
                slot -= 1;
                idx[slot] += 1;
                if idx[slot] < choices[slot].len() {
                    break;
                }
                idx[slot] = 0;
            }
        }
    }

    /// Partial evaluation with the constant `1` in `slot`.
    pub fn at_one(&self, slot: usize) -> Self {
        let mut out = Self::zero(&self.space, self.arity - 1);
        for (alphas, v) in &self.terms {
            if alphas[slot].is_zero() {
                let mut rest = alphas.clone();
                rest.remove(slot);
                out.add_term(rest, v.clone());
            }
        }
        out
    }

    /// `(a₀, a₁, …) ↦ a₀·φ(a₁, …)`.
    pub fn left_unit_slot(&self) -> Self {
        let zero = Monomial::zero(self.space.n());
        let mut out = Self::zero(&self.space, self.arity + 1);
        for (a, v) in &self.terms {
            let mut alphas = vec![zero.clone()];
            alphas.extend(a.iter().cloned());
            out.add_term(alphas, v.clone());
        }
        out
    }

    /// `(a₁, …, a_{k+1}) ↦ φ(a₁, …, a_k)∘L_{a_{k+1}}`.
    pub fn right_unit_slot(&self) -> Self {
        let mut out = Self::zero(&self.space, self.arity + 1);
        for (a, v) in &self.terms {
            for (beta, vb) in v.value_right_parts(&self.space) {
                let mut alphas = a.clone();
                alphas.push(beta);
                out.add_term(alphas, vb);
            }
        }
        out
    }

    /// Insertion of a base multidifferential operator into slot `i`:
    /// `φ(…, a_{i−1}, C(a_i, …, a_{i+p−1}), a_{i+p}, …)`.
    pub fn insert(&self, i: usize, c: &BaseCochain) -> Self {
        assert!(i < self.arity, "insertion slot out of range");
        let p = c.arity;
        let mut out = Self::zero(&self.space, self.arity + p - 1);
        for (alphas, v) in &self.terms {
            for (split, w) in leibniz_splits(&alphas[i], p + 1) {
                for (betas, coeff) in &c.terms {
                    let dc = coeff.diff(0, &split[0]);
                    if dc.is_zero() {
                        continue;
                    }
                    let mut new = alphas[..i].to_vec();
                    for (b, nu) in betas.iter().zip(&split[1..]) {
                        new.push(b.add(nu));
                    }
                    new.extend(alphas[i + 1..].iter().cloned());
                    out.add_term(new, v.value_left_mul(&dc).value_scale(&w));
                }
            }
        }
        out
    }

    /// Reorders arguments: the result takes `b` with `b[perm[j]] = a[j]`,
    /// i.e. `result(b) = φ(b[perm[0]], b[perm[1]], …)`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let mut out = Self::zero(&self.space, self.arity);
        for (alphas, v) in &self.terms {
            let mut new = vec![Monomial::zero(self.space.n()); self.arity];
            for (j, a) in alphas.iter().enumerate() {
                new[perm[j]] = a.clone();
            }
            out.add_term(new, v.clone());
        }
        out
    }

    /// Hochschild differential for the bimodule `a·v·b = L_a∘v∘L_b`:
    /// `δφ(a₁…a_{k+1}) = a₁φ(a₂…) + Σ_i (−1)^i φ(…a_i a_{i+1}…) + (−1)^{k+1} φ(a₁…a_k)∘a_{k+1}`.
    pub fn delta(&self) -> Self {
        let k = self.arity;
        let mut out = self.left_unit_slot();
        let mult = BaseCochain::multiplication(&self.space);
        for i in 1..=k {
            let ins = self.insert(i - 1, &mult);
            out = if i % 2 == 1 { out.sub(&ins) } else { out.add(&ins) };
        }
        let last = self.right_unit_slot();
        if (k + 1) % 2 == 1 { out.sub(&last) } else { out.add(&last) }
    }
}

impl BaseCochain {
    /// `(a, b) ↦ ab`.
    pub fn multiplication(space: &Arc<Space>) -> Self {
        let z = Monomial::zero(space.n());
        Self::from_terms(space, 2, [(vec![z.clone(), z], Poly::one(space.base()))])
    }

    pub fn coeff_degree(&self) -> u32 {
        self.terms.values().map(Poly::degree).max().unwrap_or(0)
    }
}

impl Cochain {
    /// `a ↦ L_{p*a}`.
    pub fn multiplication(space: &Arc<Space>) -> Self {
        Self::from_terms(space, 1, [(vec![Monomial::zero(space.n())], DiffOp::identity(space))])
    }

    pub fn from_op(op: DiffOp) -> Self {
        let space = op.space().clone();
        Self::from_terms(&space, 0, [(vec![], op)])
    }

    /// The operator of a 0-cochain.
    pub fn as_op(&self) -> DiffOp {
        assert_eq!(self.arity, 0, "only 0-cochains are operators");
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| DiffOp::zero(&self.space))
    }

    /// Maximal order of the value operators.
    pub fn value_order(&self) -> u32 {
        self.terms.values().map(DiffOp::order).max().unwrap_or(0)
    }

    /// `(a₁…a_p, b₁…b_q) ↦ φ(a)∘ψ(b)`.
    pub fn compose(&self, other: &Cochain) -> Cochain {
        let q = other.arity;
        let mut out = Cochain::zero(&self.space, self.arity + q);
        for (alphas, op1) in &self.terms {
            if q == 0 {
                if let Some(op2) = other.terms.get(&Vec::new()) {
                    out.add_term(alphas.clone(), op1.compose(op2));
                }
                continue;
            }
            for (mu, op1mu) in op1.right_mult_parts() {
                let splits = leibniz_splits(&mu, q);
                for (betas, op2) in &other.terms {
                    let composed = op1mu.compose(op2);
                    for (split, w) in &splits {
                        let mut new = alphas.clone();
                        new.extend(betas.iter().zip(split).map(|(b, s)| b.add(s)));
                        out.add_term(new, composed.scale(w));
                    }
                }
            }
        }
        out
    }

    pub fn is_fiber_free(&self) -> bool {
        self.terms.values().all(DiffOp::is_fiber_free)
    }

    /// Rebuilds a cochain from a black-box multilinear evaluation map, given a
    /// per-slot bound on derivative orders. With `checked`, arguments one
    /// degree beyond the bound are probed and any unexplained residual is
    /// reported as a bound violation.
    pub fn from_evaluations(
        space: &Arc<Space>,
        bounds: &[u32],
        mut eval: impl FnMut(&[Poly]) -> Result<DiffOp>,
        checked: bool,
    ) -> Result<Cochain> {
        let n = space.n();
        let arity = bounds.len();
        let slot_choices: Vec<Vec<Monomial>> = bounds.iter().map(|&l| Monomial::up_to_degree(n, l)).collect();
        let tuples = sorted_tuples(&slot_choices);
        let mut out = Cochain::zero(space, arity);
        let mut known: Vec<(Vec<Monomial>, DiffOp)> = Vec::new();
        let residual = |b: &[Monomial], val: DiffOp, known: &[(Vec<Monomial>, DiffOp)]| -> DiffOp {
            let mut val = val;
            for (a, op) in known {
                if !a.iter().zip(b).all(|(ai, bi)| ai.divides(bi)) {
                    continue;
                }
                let mut c = int(1);
                let mut rest = Vec::with_capacity(arity);
                for (ai, bi) in a.iter().zip(b) {
                    let r = bi.checked_sub(ai).expect("divides");
                    c *= multi_factorial(bi) / multi_factorial(&r);
                    rest.push(r);
                }
                let mono = Poly::monomial(space.base(), concat_exps(&rest, n), c);
                val = val.sub(&op.left_mul(&mono));
            }
            val
        };
        for b in &tuples {
            let args: Vec<Poly> = b.iter().map(|m| Poly::monomial(space.base(), m.clone(), int(1))).collect();
            let val = residual(b, eval(&args)?, &known);
            if val.is_zero() {
                continue;
            }
            let denom: Rational = b.iter().map(multi_factorial).fold(int(1), |acc, f| acc * f);
            let op = val.scale(&(Rational::one() / denom));
            known.push((b.clone(), op.clone()));
            out.add_term(b.clone(), op);
        }
        if checked {
            for slot in 0..arity {
                let mut choices = slot_choices.clone();
                choices[slot] = Monomial::of_degree(n, bounds[slot] + 1);
                for b in sorted_tuples(&choices) {
                    let args: Vec<Poly> = b.iter().map(|m| Poly::monomial(space.base(), m.clone(), int(1))).collect();
                    if !residual(&b, eval(&args)?, &known).is_zero() {
                        return Err(Error::BoundViolation(format!("{b:?}")));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn concat_exps(ms: &[Monomial], n: usize) -> Monomial {
    let mut e = vec![0u32; n];
    for m in ms {
        for (acc, x) in e.iter_mut().zip(m.exps()) {
            *acc += x;
        }
    }
    Monomial::from_vec(e)
}

/// Cartesian product of the per-slot choices, ascending in total degree.
fn sorted_tuples(choices: &[Vec<Monomial>]) -> Vec<Vec<Monomial>> {
    let mut tuples: Vec<Vec<Monomial>> = vec![vec![]];
    for c in choices {
        let mut next = Vec::with_capacity(tuples.len() * c.len());
        for t in &tuples {
            for m in c {
                let mut t2 = t.clone();
                t2.push(m.clone());
                next.push(t2);
            }
        }
        tuples = next;
    }
    tuples.sort_by_key(|t| (t.iter().map(Monomial::degree).sum::<u32>(), t.clone()));
    tuples
}

/// Defect of the right-module axiom at order `r+1`, oriented so that a
/// correction `ρ_{r+1}` extends the module structure iff `δρ_{r+1} = R_r`:
/// `R_r(a,b) = Σ_{s=0}^{r} ρ_s(C_{r+1−s}(b,a)) − Σ_{s=1}^{r} ρ_{r+1−s}(a)∘ρ_s(b)`.
///
/// `rhos` holds `ρ₀..ρ_r`, `stars` holds `C₀..C_{r+1}`.
pub fn obstruction_r(rhos: &[Cochain], stars: &[BaseCochain]) -> Result<Cochain> {
    if rhos.is_empty() || stars.len() != rhos.len() + 1 {
        return Err(Error::Invalid(format!(
            "obstruction needs ρ₀..ρ_r and C₀..C_(r+1), got {} and {}",
            rhos.len(),
            stars.len()
        )));
    }
    let r = rhos.len() - 1;
    let space = rhos[0].space().clone();
    let mut out = Cochain::zero(&space, 2);
    for s in 0..=r {
        let ins = rhos[s].insert(0, &stars[r + 1 - s]).permute(&[1, 0]);
        out = out.add(&ins);
    }
    for s in 1..=r {
        out = out.sub(&rhos[r + 1 - s].compose(&rhos[s]));
    }
    Ok(out)
}

/// Defect of the intertwining relation `T∘ρ(a) = ρ̃(a)∘T` at order `r+1`,
/// oriented so that `δT_{r+1} = E_r`:
/// `E_r(a) = Σ_{s=0}^{r} (T_s∘ρ_{r+1−s}(a) − ρ̃_{r+1−s}(a)∘T_s)`.
///
/// `rho`, `rho_t` hold at least `r+2` coefficients; `t` holds `T₀..T_r`.
pub fn obstruction_e(rho: &[Cochain], rho_t: &[Cochain], t: &[DiffOp]) -> Result<Cochain> {
    if t.is_empty() {
        return Err(Error::Invalid("equivalence prefix must contain T₀".into()));
    }
    let r = t.len() - 1;
    if rho.len() < r + 2 || rho_t.len() < r + 2 {
        return Err(Error::OrderMismatch(rho.len().min(rho_t.len()), r + 2));
    }
    let space = rho[0].space().clone();
    let mut out = Cochain::zero(&space, 1);
    for (s, ts) in t.iter().enumerate() {
        let tc = Cochain::from_op(ts.clone());
        out = out.add(&tc.compose(&rho[r + 1 - s]));
        out = out.sub(&rho_t[r + 1 - s].compose(&tc));
    }
    Ok(out)
}

impl<V: CochainValue> fmt::Display for MultiDiff<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (alphas, v)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let a: Vec<String> = alphas.iter().map(|m| format!("{:?}", m.exps())).collect();
            write!(f, "[{}]: {}", a.join(", "), v)?;
        }
        Ok(())
    }
}

impl<V: CochainValue> fmt::Debug for MultiDiff<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain<{}>({self})", self.arity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp() -> Arc<Space> {
        Space::new(2, 1).unwrap()
    }

    fn mono(v: &[u32]) -> Monomial {
        Monomial::from_vec(v.to_vec())
    }

    fn xpow(s: &Space, e: &[u32]) -> Poly {
        Poly::monomial(s.base(), mono(e), int(1))
    }

    /// Hochschild differential computed from evaluations only.
    fn delta_eval(phi: &dyn Fn(&[Poly]) -> DiffOp, s: &Arc<Space>, args: &[Poly]) -> DiffOp {
        let k = args.len() - 1;
        let mut out = phi(&args[1..]).left_mul(&args[0]);
        for i in 1..=k {
            let mut merged: Vec<Poly> = args[..i - 1].to_vec();
            merged.push(&args[i - 1] * &args[i]);
            merged.extend(args[i + 1..].iter().cloned());
            let t = phi(&merged);
            out = if i % 2 == 1 { out.sub(&t) } else { out.add(&t) };
        }
        let last = phi(&args[..k]).compose(&DiffOp::mult(s, &args[k]));
        if (k + 1) % 2 == 1 { out.sub(&last) } else { out.add(&last) }
    }

    #[test]
    fn evaluation_examples() {
        let s = sp();
        let phi = Cochain::from_terms(&s, 1, [(vec![mono(&[1, 0])], DiffOp::identity(&s))]);
        assert_eq!(phi.eval(&[s.x(0)]).unwrap(), DiffOp::identity(&s));
        assert!(phi.eval(&[Poly::one(s.base())]).unwrap().is_zero());
        let m = Cochain::multiplication(&s);
        let a = &s.x(0).pow(2) + &s.x(1);
        assert_eq!(m.eval(std::slice::from_ref(&a)).unwrap(), DiffOp::mult(&s, &a));
        assert!(matches!(m.eval(&[]), Err(Error::ArityMismatch { expected: 1, got: 0 })));
    }

    #[test]
    fn delta_of_operators() {
        let s = sp();
        let d = Cochain::from_op(DiffOp::dx(&s, 0)).delta();
        let expected = Cochain::from_terms(&s, 1, [(vec![mono(&[1, 0])], DiffOp::identity(&s).neg())]);
        assert_eq!(d, expected);
        let vert = DiffOp::dy(&s, 0).left_mul(&s.y(0)).add(&DiffOp::mult(&s, &s.x(1)));
        assert!(Cochain::from_op(vert).delta().is_zero());
    }

    #[test]
    fn delta_squares_to_zero_against_oracle() {
        let s = sp();
        let phi = Cochain::from_terms(&s, 1, [(vec![mono(&[2, 0])], DiffOp::dy(&s, 0))]);
        let dphi = phi.delta();
        let ddphi = dphi.delta();
        assert!(ddphi.is_zero());
        let first = |args: &[Poly]| phi.eval(args).unwrap();
        let second = |args: &[Poly]| delta_eval(&first, &s, args);
        let monos = Monomial::up_to_degree(2, 3);
        for a in &monos {
            for b in &monos {
                let pair = [xpow(&s, a.exps()), xpow(&s, b.exps())];
                assert_eq!(dphi.eval(&pair).unwrap(), second(&pair));
                for c in &monos {
                    let args = [xpow(&s, a.exps()), xpow(&s, b.exps()), xpow(&s, c.exps())];
                    assert!(delta_eval(&second, &s, &args).is_zero());
                }
            }
        }
    }

    #[test]
    fn reconstruction_examples() {
        let s = sp();
        let m = Cochain::multiplication(&s);
        let got = Cochain::from_evaluations(&s, &[0], |a| m.eval(a), true).unwrap();
        assert_eq!(got, m);
        let d1 = |a: &[Poly]| Ok(DiffOp::mult(&s, &a[0].derivative(0, 1)));
        let got = Cochain::from_evaluations(&s, &[1], d1, true).unwrap();
        let expected = Cochain::from_terms(&s, 1, [(vec![mono(&[1, 0])], DiffOp::identity(&s))]);
        assert_eq!(got, expected);
        let d2 = |a: &[Poly]| Ok(DiffOp::mult(&s, &a[0].derivative(0, 2)));
        assert!(matches!(Cochain::from_evaluations(&s, &[1], d2, true), Err(Error::BoundViolation(_))));
    }

    #[test]
    fn module_obstruction_at_order_zero() {
        let s = sp();
        let half = crate::ring::rat(1, 2);
        let c1 = BaseCochain::from_terms(
            &s,
            2,
            [
                (vec![mono(&[1, 0]), mono(&[0, 1])], Poly::constant(s.base(), half.clone())),
                (vec![mono(&[0, 1]), mono(&[1, 0])], Poly::constant(s.base(), -half.clone())),
            ],
        );
        let c0 = BaseCochain::multiplication(&s);
        let r0 = obstruction_r(&[Cochain::multiplication(&s)], &[c0, c1]).unwrap();
        assert_eq!(r0.eval(&[s.x(1), s.x(0)]).unwrap(), DiffOp::identity(&s).scale(&half));
        assert_eq!(r0.eval(&[s.x(0), s.x(1)]).unwrap(), DiffOp::identity(&s).scale(&-half));
        assert!(r0.delta().is_zero());
    }

    #[test]
    fn equivalence_obstruction() {
        let s = sp();
        let rho = vec![Cochain::multiplication(&s), Cochain::zero(&s, 1)];
        let id = DiffOp::identity(&s);
        assert!(obstruction_e(&rho, &rho, std::slice::from_ref(&id)).unwrap().is_zero());
        // gauge by id + λ∂₁: ρ̃₁(a) = [∂₁, L_a] = L_{∂₁a}
        let rho_t = vec![
            Cochain::multiplication(&s),
            Cochain::from_terms(&s, 1, [(vec![mono(&[1, 0])], id.clone())]),
        ];
        let e0 = obstruction_e(&rho, &rho_t, &[id]).unwrap();
        assert_eq!(e0, Cochain::from_op(DiffOp::dx(&s, 0)).delta());
    }
}
