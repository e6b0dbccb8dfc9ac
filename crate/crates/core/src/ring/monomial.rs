use std::cmp::Ordering;
use std::fmt;

/// Exponent vector (or derivative multi-index) ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn zero(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut m = Self::zero(len);
        m.0[i] = 1;
        m
    }

    pub fn from_vec(v: Vec<u32>) -> Self {
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when some exponent would go negative.
    pub fn checked_sub(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn slice(&self, start: usize, len: usize) -> Monomial {
        Monomial(self.0[start..start + len].to_vec())
    }

    /// All multi-indices `m` with `m <= self` componentwise, graded-lex ascending.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::zero(self.len())];
        for (i, &e) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for m in &out {
                for k in 0..=e {
                    let mut m2 = m.clone();
                    m2.0[i] = k;
                    next.push(m2);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// All multi-indices of length `len` and total degree exactly `d`, ascending.
    pub fn of_degree(len: usize, d: u32) -> Vec<Monomial> {
        fn rec(len: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == len {
                prefix.push(d);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=d {
                prefix.push(e);
                rec(len, d - e, prefix, out);
                prefix.pop();
            }
        }
        if len == 0 {
            return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(len, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All multi-indices of length `len` with total degree `<= d`, ascending.
    pub fn up_to_degree(len: usize, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|k| Monomial::of_degree(len, k)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let one = Monomial::from_vec(vec![0, 0]);
        let x2 = Monomial::from_vec(vec![0, 1]);
        let x1 = Monomial::from_vec(vec![1, 0]);
        let x2sq = Monomial::from_vec(vec![0, 2]);
        let mut v = vec![x2sq.clone(), x1.clone(), one.clone(), x2.clone()];
        v.sort();
        assert_eq!(v, vec![one, x2, x1, x2sq]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Monomial::up_to_degree(2, 4).len(), 15);
        assert_eq!(Monomial::of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::from_vec(vec![2, 1]).divisors().len(), 6);
    }
}
