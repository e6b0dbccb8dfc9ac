use crate::error::{Error, Result};

/// Coefficient algebra for truncated λ-series. `mul` need not be commutative.
pub trait SeriesCoeff: Clone + PartialEq {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
}

/// Formal power series `Σ_{r=0}^{N} λ^r c_r`, computed modulo `λ^{N+1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T> Series<T> {
    /// Builds a series of order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its order-0 coefficient");
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, r: usize) -> &T {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Series<U> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<T: SeriesCoeff> Series<T> {
    /// `c + 0·λ + … + 0·λ^N`.
    pub fn constant(c: T, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![c];
        coeffs.resize(order + 1, zero);
        Series { coeffs }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        for r in 0..=n {
            let mut acc = self.coeffs[0].zero_like();
            for s in 0..=r {
                if self.coeffs[s].is_zero() || other.coeffs[r - s].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[s].mul(&other.coeffs[r - s]));
            }
            coeffs.push(acc);
        }
        Ok(Series { coeffs })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(T::is_zero)
    }

    /// Two-sided inverse of a series with unit leading coefficient:
    /// `B_0 = 1`, `B_r = −Σ_{s=1}^{r} S_s B_{r−s}`.
    pub fn invert(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NotInvertible);
        }
        let mut out: Vec<T> = vec![self.coeffs[0].one_like()];
        for r in 1..=self.order() {
            let mut acc = self.coeffs[0].zero_like();
            for s in 1..=r {
                if self.coeffs[s].is_zero() || out[r - s].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[s].mul(&out[r - s]));
            }
            out.push(acc.zero_like().sub(&acc));
        }
        Ok(Series { coeffs: out })
    }
}

impl SeriesCoeff for super::Poly {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn zero_like(&self) -> Self {
        super::Poly::zero(self.ctx())
    }
    fn one_like(&self) -> Self {
        super::Poly::one(self.ctx())
    }
    fn is_zero(&self) -> bool {
        super::Poly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        super::Poly::is_one(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Poly, VarContext};

    #[test]
    fn geometric_inverse() {
        let ctx = VarContext::new([("x", 1)]).unwrap();
        let one = Poly::one(&ctx);
        let a = Poly::var(&ctx, 0);
        let s = Series::new(vec![one.clone(), a.clone(), Poly::zero(&ctx), Poly::zero(&ctx)]);
        let inv = s.invert().unwrap();
        assert_eq!(inv.coeffs(), &[one.clone(), -&a, a.pow(2), -&a.pow(3)]);
        assert!(s.mul(&inv).unwrap().is_one());
        assert_eq!(inv.invert().unwrap(), s);
        let unit = Series::constant(one, 3);
        assert_eq!(unit.invert().unwrap(), unit);
    }

    #[test]
    fn non_unit_and_order_mismatch() {
        let ctx = VarContext::new([("x", 1)]).unwrap();
        let s = Series::new(vec![Poly::constant(&ctx, rat(2, 1)), Poly::zero(&ctx)]);
        assert!(matches!(s.invert(), Err(Error::NotInvertible)));
        let t = Series::constant(Poly::one(&ctx), 2);
        assert!(matches!(s.add(&t), Err(Error::OrderMismatch(1, 2))));
    }
}
