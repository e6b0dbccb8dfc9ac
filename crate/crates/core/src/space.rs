use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Poly, VarContext};

/// The local model `V×G` with `V ⊆ ℝⁿ` and fiber `G = ℝᵏ`, together with the
/// polynomial contexts every layer works in.
#[derive(Debug)]
pub struct Space {
    n: usize,
    k: usize,
    base: Arc<VarContext>,
    total: Arc<VarContext>,
    ae: Arc<VarContext>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k
    }
}

impl Eq for Space {}

impl Space {
    pub fn new(n: usize, k: usize) -> Result<Arc<Space>> {
        if n == 0 {
            return Err(Error::Invalid("base dimension must be at least 1".into()));
        }
        Ok(Arc::new(Space {
            n,
            k,
            base: VarContext::new([("x", n)])?,
            total: VarContext::new([("x", n), ("y", k)])?,
            ae: VarContext::new([("v", n), ("w", n)])?,
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Functions on `V`: variables `x1..xn`.
    pub fn base(&self) -> &Arc<VarContext> {
        &self.base
    }

    /// Functions on `V×G`: variables `x1..xn, y1..yk`.
    pub fn total(&self) -> &Arc<VarContext> {
        &self.total
    }

    /// The enveloping algebra `C∞(V×V)`: variables `v1..vn, w1..wn`.
    pub fn ae(&self) -> &Arc<VarContext> {
        &self.ae
    }

    /// Bar chains `X_k`: groups `v, q1, …, qk, w`.
    pub fn bar_ctx(&self, k: usize) -> Arc<VarContext> {
        let mut groups = vec![("v".to_string(), self.n)];
        for j in 1..=k {
            groups.push((format!("q{j}"), self.n));
        }
        groups.push(("w".to_string(), self.n));
        VarContext::new(groups).expect("bar context group names are distinct")
    }

    /// `v, w` together with `m` simplex parameters `t1..tm`.
    pub fn ae_param_ctx(&self, m: usize) -> Arc<VarContext> {
        VarContext::new([("v", self.n), ("w", self.n), ("t", m)]).expect("distinct names")
    }

    pub fn x(&self, i: usize) -> Poly {
        Poly::var(&self.base, i)
    }

    pub fn y(&self, j: usize) -> Poly {
        Poly::var(&self.total, self.n + j)
    }

    /// Pullback `p*a` of a base function to `V×G`.
    pub fn pull(&self, a: &Poly) -> Poly {
        a.lift(&self.total)
    }

    /// Restriction of a polynomial on `V×V` to the diagonal, as a base function.
    pub fn diagonal(&self, a: &Poly) -> Poly {
        let map: Vec<usize> = (0..2 * self.n).map(|i| i % self.n).collect();
        a.rename(&self.base, &map)
    }

    /// Whether `p` (a polynomial on `V×G`) is independent of the fiber.
    pub fn is_fiber_free(&self, p: &Poly) -> bool {
        self.k == 0 || p.degree_in(self.n..self.n + self.k) == 0
    }
}
