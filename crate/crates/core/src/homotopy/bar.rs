use crate::error::{Error, Result};
use crate::ring::Poly;
use crate::space::Space;

/// An element of `X_k = C∞(V × V^k × V)` in the variables `v, q1..qk, w`.
#[derive(Clone, PartialEq, Debug)]
pub struct BarElement {
    k: usize,
    poly: Poly,
}

impl BarElement {
    pub fn new(space: &Space, k: usize, poly: Poly) -> Result<Self> {
        let ctx = space.bar_ctx(k);
        if !crate::ring::same_context(poly.ctx(), &ctx) {
            return Err(Error::ContextMismatch(format!("bar element of degree {k} must live in {ctx:?}")));
        }
        Ok(BarElement { k, poly })
    }

    pub fn zero(space: &Space, k: usize) -> Self {
        BarElement { k, poly: Poly::zero(&space.bar_ctx(k)) }
    }

    /// `a₀ ⊗ a₁ ⊗ … ⊗ a_k ⊗ a_{k+1}`, one base function per slot.
    pub fn tensor(space: &Space, slots: &[Poly]) -> Self {
        assert!(slots.len() >= 2, "a bar tensor has at least the two outer slots");
        let k = slots.len() - 2;
        let ctx = space.bar_ctx(k);
        let n = space.n();
        let mut poly = Poly::one(&ctx);
        for (j, a) in slots.iter().enumerate() {
            let map: Vec<usize> = (0..n).map(|i| j * n + i).collect();
            poly = &poly * &a.rename(&ctx, &map);
        }
        BarElement { k, poly }
    }

    /// `1 ⊗ a₁ ⊗ … ⊗ a_k ⊗ 1`.
    pub fn inner(space: &Space, args: &[Poly]) -> Self {
        let one = Poly::one(space.base());
        let mut slots = vec![one.clone()];
        slots.extend(args.iter().cloned());
        slots.push(one);
        Self::tensor(space, &slots)
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        BarElement { k: self.k, poly: &self.poly + &other.poly }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        BarElement { k: self.k, poly: &self.poly - &other.poly }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// Relabels the `k+2` slots of `χ` into a context with `target_slots` slots.
fn relabel(space: &Space, chi: &Poly, slot_map: &[usize], target_k: usize) -> Poly {
    let n = space.n();
    let ctx = space.bar_ctx(target_k);
    let map: Vec<usize> = (0..slot_map.len() * n).map(|idx| slot_map[idx / n] * n + idx % n).collect();
    chi.rename(&ctx, &map)
}

/// `∂_X χ = Σ_{i=0}^{k} (−1)^i χ(q₀, …, q_i, q_i, …, q_k)` with `q₀ = v`, `q_{k+1} = w`.
pub fn bar_boundary(space: &Space, chi: &BarElement) -> Result<BarElement> {
    let k = chi.k;
    if k == 0 {
        return Err(Error::Domain("the bar boundary starts in degree 1".into()));
    }
    let mut out = Poly::zero(&space.bar_ctx(k - 1));
    for i in 0..=k {
        let slot_map: Vec<usize> = (0..k + 2).map(|j| if j <= i { j } else { j - 1 }).collect();
        let term = relabel(space, &chi.poly, &slot_map, k - 1);
        if i % 2 == 0 {
            out += &term;
        } else {
            out -= &term;
        }
    }
    Ok(BarElement { k: k - 1, poly: out })
}

/// Augmentation `ε: X₀ → A`, restriction to the diagonal.
pub fn bar_augment(space: &Space, chi: &BarElement) -> Result<Poly> {
    if chi.k != 0 {
        return Err(Error::Domain("augmentation is defined on X₀".into()));
    }
    Ok(space.diagonal(&chi.poly))
}

/// `h_X^{-1}(a) = a ⊗ 1`.
pub fn bar_h_minus(space: &Space, a: &Poly) -> BarElement {
    BarElement::tensor(space, &[a.clone(), Poly::one(space.base())])
}

/// `(h_X^k χ)(v, q₁…q_{k+1}, w) = (−1)^{k+1} χ(v, q₁, …, q_{k+1})`.
pub fn chain_hx(space: &Space, chi: &BarElement) -> BarElement {
    let k = chi.k;
    let slot_map: Vec<usize> = (0..k + 2).collect();
    let p = relabel(space, &chi.poly, &slot_map, k + 1);
    let p = if k.is_multiple_of(2) { -&p } else { p };
    BarElement { k: k + 1, poly: p }
}


impl BarElement {
    /// `a(v) · χ · b(w)`, the `A^e`-module structure.
    pub fn outer_mul(&self, space: &Space, left: &Poly, right: &Poly) -> BarElement {
        let n = space.n();
        let ctx = space.bar_ctx(self.k);
        let lmap: Vec<usize> = (0..n).collect();
        let rmap: Vec<usize> = (0..n).map(|i| (self.k + 1) * n + i).collect();
        let p = &(&left.rename(&ctx, &lmap) * &self.poly) * &right.rename(&ctx, &rmap);
        BarElement { k: self.k, poly: p }
    }
}
