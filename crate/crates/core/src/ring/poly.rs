use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::context::{same_context, VarContext};
use super::monomial::Monomial;
use super::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by exponent vector in graded-lex order, and a
/// zero coefficient is never stored, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Poly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::zero(ctx.nvars()), c);
        p
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn var(ctx: &Arc<VarContext>, idx: usize) -> Self {
        Self::monomial(ctx, Monomial::unit(ctx.nvars(), idx), Rational::one())
    }

    pub fn monomial(ctx: &Arc<VarContext>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ctx.nvars(), "exponent vector length does not match context");
        let mut p = Self::zero(ctx);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ctx: &Arc<VarContext>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.len(), ctx.nvars(), "exponent vector length does not match context");
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_zero() && c.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::zero(self.ctx.nvars()))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Total degree in the variables `range`.
    pub fn degree_in(&self, range: std::ops::Range<usize>) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exps()[range.clone()].iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Componentwise maximum of the exponent vectors.
    pub fn max_exponents(&self) -> Monomial {
        self.terms
            .keys()
            .fold(Monomial::zero(self.ctx.nvars()), |acc, m| acc.lcm(m))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.add(m), a * c)).collect(),
        }
    }

    fn check_ctx(&self, other: &Poly) {
        assert!(
            same_context(&self.ctx, &other.ctx),
            "polynomial context mismatch: {:?} vs {:?}",
            self.ctx,
            other.ctx
        );
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, other.ctx)));
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, other.ctx)));
        }
        Ok(self * other)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `∂^times / ∂u^times` for the variable with global index `var`.
    pub fn derivative(&self, var: usize, times: u32) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e < times {
                continue;
            }
            let mut f = Rational::one();
            for j in 0..times {
                f *= Rational::from_integer((e - j).into());
            }
            let mut m2 = m.clone();
            m2.exps_mut()[var] = e - times;
            out.add_term(m2, c * f);
        }
        out
    }

    /// Mixed partial derivative `∂^alpha` over the variables `start..start+alpha.len()`.
    pub fn diff(&self, start: usize, alpha: &Monomial) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        'terms: for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut f = c.clone();
            for (j, &a) in alpha.exps().iter().enumerate() {
                let e = m.exps()[start + j];
                if e < a {
                    continue 'terms;
                }
                for i in 0..a {
                    f *= Rational::from_integer((e - i).into());
                }
                m2.exps_mut()[start + j] = e - a;
            }
            out.add_term(m2, f);
        }
        out
    }

    /// Antiderivative in `var` with zero constant of integration.
    pub fn antiderivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.exps()[var];
            m2.exps_mut()[var] = e + 1;
            out.add_term(m2, c / Rational::from_integer((e + 1).into()));
        }
        out
    }

    /// Exact polynomial composition: variable `i` is replaced by `images[i]`,
    /// a polynomial over `target`.
    pub fn substitute(&self, target: &Arc<VarContext>, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ctx.nvars(), "one image per variable is required");
        for p in images {
            assert!(same_context(p.ctx(), target), "substitution image in wrong context");
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][e as usize];
            }
            out += &acc;
        }
        out
    }

    /// Substitution driven by variable names; unnamed variables map to
    /// the same-named variable of `target`. Every image must be affine, with
    /// simplex parameters (group `t`) counted as scalars.
    pub fn substitute_affine(&self, target: &Arc<VarContext>, assignments: &[(&str, Poly)]) -> Result<Poly> {
        for (name, img) in assignments {
            self.ctx.var_index(name)?;
            if !same_context(img.ctx(), target) {
                return Err(Error::ContextMismatch(format!("image of `{name}`")));
            }
            let params = target.group("t").unwrap_or(0..0);
            let spatial = img.terms.keys().map(|m| {
                m.exps().iter().enumerate().filter(|(i, _)| !params.contains(i)).map(|(_, e)| e).sum::<u32>()
            });
            if spatial.max().unwrap_or(0) > 1 {
                return Err(Error::NotAffine(name.to_string()));
            }
        }
        let mut images = Vec::with_capacity(self.ctx.nvars());
        for i in 0..self.ctx.nvars() {
            let name = self.ctx.var_name(i);
            match assignments.iter().find(|(n, _)| *n == name) {
                Some((_, img)) => images.push(img.clone()),
                None => {
                    if self.terms.keys().all(|m| m.exps()[i] == 0) {
                        images.push(Poly::zero(target));
                    } else {
                        images.push(Poly::var(target, target.var_index(&name)?));
                    }
                }
            }
        }
        Ok(self.substitute(target, &images))
    }

    /// Replace a single variable by a polynomial over the same context.
    pub fn substitute_var(&self, var: usize, value: &Poly) -> Poly {
        self.check_ctx(value);
        let mut powers = vec![Poly::one(&self.ctx), value.clone()];
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exps()[var] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.exps_mut()[var] = 0;
            out += &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    /// Relabel variables: variable `i` becomes target variable `map[i]`
    /// (several variables may collapse onto one).
    pub fn rename(&self, target: &Arc<VarContext>, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.ctx.nvars());
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars()];
            for (i, &k) in m.exps().iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial::from_vec(e), c.clone());
        }
        out
    }

    /// Embed into a context whose leading variables are those of `self`.
    pub fn lift(&self, target: &Arc<VarContext>) -> Poly {
        if same_context(&self.ctx, target) {
            return self.clone();
        }
        assert!(target.nvars() >= self.ctx.nvars());
        let map: Vec<usize> = (0..self.ctx.nvars()).collect();
        self.rename(target, &map)
    }

    /// Iterated integral over `0 <= t_m <= ... <= t_1 <= 1`, innermost first.
    /// `params` lists the global indices of `t_1, ..., t_m`.
    pub fn integrate_simplex(&self, params: &[usize]) -> Poly {
        let mut p = self.clone();
        for j in (0..params.len()).rev() {
            let f = p.antiderivative(params[j]);
            let upper = if j == 0 { Poly::one(&self.ctx) } else { Poly::var(&self.ctx, params[j - 1]) };
            let at_upper = f.substitute_var(params[j], &upper);
            let at_zero = f.substitute_var(params[j], &Poly::zero(&self.ctx));
            p = &at_upper - &at_zero;
        }
        p
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ctx.nvars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.check_ctx(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.check_ctx(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ctx(rhs);
        let mut out = Poly::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.add(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_zero() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx.var_name(v)),
                    _ => factors.push(format!("{}^{}", self.ctx.var_name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
