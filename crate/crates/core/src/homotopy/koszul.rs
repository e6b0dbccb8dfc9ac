use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{int, Poly};
use crate::space::Space;

/// An element of `K_k = A^e ⊗ Λ^k`: coefficients in `v, w` on increasing index tuples.
#[derive(Clone, PartialEq, Debug)]
pub struct KoszulElement {
    k: usize,
    comps: BTreeMap<Vec<usize>, Poly>,
}

/// Sign and sorted tuple of `e^j ∧ e^I`, or `None` if `j ∈ I`.
pub fn wedge_front(j: usize, tuple: &[usize]) -> Option<(i64, Vec<usize>)> {
    if tuple.contains(&j) {
        return None;
    }
    let pos = tuple.iter().filter(|&&i| i < j).count();
    let mut out = tuple.to_vec();
    out.insert(pos, j);
    Some((if pos % 2 == 0 { 1 } else { -1 }, out))
}

/// Strictly increasing `k`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl KoszulElement {
    pub fn zero(k: usize) -> Self {
        KoszulElement { k, comps: BTreeMap::new() }
    }

    /// `ω ⊗ e^{i₁} ∧ … ∧ e^{i_k}` for an increasing tuple.
    pub fn basis(space: &Space, tuple: &[usize], coeff: Poly) -> Self {
        assert!(tuple.windows(2).all(|w| w[0] < w[1]), "tuple must be strictly increasing");
        assert!(tuple.iter().all(|&i| i < space.n()));
        let mut out = Self::zero(tuple.len());
        out.add_comp(tuple.to_vec(), coeff);
        out
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn comps(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.comps.iter()
    }

    pub fn comp(&self, tuple: &[usize]) -> Option<&Poly> {
        self.comps.get(tuple)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add_comp(&mut self, tuple: Vec<usize>, p: Poly) {
        assert_eq!(tuple.len(), self.k);
        if p.is_zero() {
            return;
        }
        match self.comps.get_mut(&tuple) {
            Some(c) => {
                *c += &p;
                if c.is_zero() {
                    self.comps.remove(&tuple);
                }
            }
            None => {
                self.comps.insert(tuple, p);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        let mut out = self.clone();
        for (t, p) in &other.comps {
            out.add_comp(t.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        let mut out = self.clone();
        for (t, p) in &other.comps {
            out.add_comp(t.clone(), -p);
        }
        out
    }
}

/// `∂_K(ω e^I) = Σ_s (−1)^{s−1} (v^{i_s} − w^{i_s}) ω e^{I∖i_s}`.
pub fn koszul_boundary(space: &Space, omega: &KoszulElement) -> Result<KoszulElement> {
    if omega.k == 0 {
        return Err(Error::Domain("the Koszul boundary starts in degree 1".into()));
    }
    let n = space.n();
    let ae = space.ae();
    let mut out = KoszulElement::zero(omega.k - 1);
    for (tuple, p) in &omega.comps {
        for (s, &i) in tuple.iter().enumerate() {
            let xi = &Poly::var(ae, i) - &Poly::var(ae, n + i);
            let mut rest = tuple.clone();
            rest.remove(s);
            let term = &xi * p;
            out.add_comp(rest, if s % 2 == 0 { term } else { -&term });
        }
    }
    Ok(out)
}

/// `ε: K₀ → A`, restriction to the diagonal.
pub fn koszul_augment(space: &Space, omega: &KoszulElement) -> Result<Poly> {
    if omega.k != 0 {
        return Err(Error::Domain("augmentation is defined on K₀".into()));
    }
    Ok(omega.comp(&[]).map(|p| space.diagonal(p)).unwrap_or_else(|| Poly::zero(space.base())))
}

/// `h_K^{-1}(a) = a ⊗ 1`.
pub fn koszul_h_minus(space: &Space, a: &Poly) -> KoszulElement {
    let map: Vec<usize> = (0..space.n()).collect();
    KoszulElement::basis(space, &[], a.rename(space.ae(), &map))
}

/// `h_K^k ω = −e^j ∧ ∫₀¹ t^k ∂ω/∂w^j(v, tw + (1−t)v) dt`.
pub fn chain_hk(space: &Space, omega: &KoszulElement) -> KoszulElement {
    let n = space.n();
    let k = omega.k;
    let ae = space.ae();
    let pctx = space.ae_param_ctx(1);
    let t = Poly::var(&pctx, 2 * n);
    let one_minus_t = &Poly::one(&pctx) - &t;
    let images: Vec<Poly> = (0..2 * n)
        .map(|i| {
            if i < n {
                Poly::var(&pctx, i)
            } else {
                &(&t * &Poly::var(&pctx, i)) + &(&one_minus_t * &Poly::var(&pctx, i - n))
            }
        })
        .collect();
    let tk = t.pow(k as u32);
    let back: Vec<usize> = (0..2 * n + 1).map(|i| i.min(2 * n - 1)).collect();
    let mut out = KoszulElement::zero(k + 1);
    for (tuple, p) in &omega.comps {
        for j in 0..n {
            let Some((sgn, new)) = wedge_front(j, tuple) else { continue };
            let d = p.derivative(n + j, 1);
            if d.is_zero() {
                continue;
            }
            let integrand = &d.substitute(&pctx, &images) * &tk;
            let integral = integrand.integrate_simplex(&[2 * n]).rename(ae, &back);
            out.add_comp(new, integral.scale(&int(-sgn)));
        }
    }
    out
}
