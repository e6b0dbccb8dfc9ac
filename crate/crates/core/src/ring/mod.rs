//! Exact arithmetic substrate: rationals, sparse polynomials and truncated λ-series.

mod context;
mod monomial;
mod poly;
mod series;

pub use context::{same_context, VarContext, VarGroup};
pub use monomial::Monomial;
pub use poly::Poly;
pub use series::{Series, SeriesCoeff};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    (1..=n).fold(int(1), |acc, k| acc * int(k as i64))
}

/// `Π_i binom(a_i, b_i)`; zero unless `b <= a` componentwise.
pub fn multi_binomial(a: &Monomial, b: &Monomial) -> Rational {
    let mut acc = int(1);
    for (&ai, &bi) in a.exps().iter().zip(b.exps()) {
        if bi > ai {
            return int(0);
        }
        acc *= factorial(ai) / (factorial(bi) * factorial(ai - bi));
    }
    acc
}

/// `α! = Π_i α_i!`.
pub fn multi_factorial(a: &Monomial) -> Rational {
    a.exps().iter().fold(int(1), |acc, &e| acc * factorial(e))
}
