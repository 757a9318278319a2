//! Exponent vectors.

use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exps = SmallVec<[u32; 8]>;

/// A power product `x_1^a_1 ... x_n^a_n` with its cached total degree.
///
/// The length of the exponent vector equals the number of ring variables; two
/// monomials from rings of different sizes are never compared.
#[derive(PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exps,
    degree: u64,
}

impl Clone for Monomial {
    #[inline]
    fn clone(&self) -> Self {
        Monomial {
            exps: SmallVec::from_slice(&self.exps),
            degree: self.degree,
        }
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn new(exps: &[u32]) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u64).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub(crate) fn from_exps(exps: Exps) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u64).sum(),
            exps,
        }
    }

    /// The `i`-th variable to the power `e`.
    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = e;
        m.degree = e as u64;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Standard total degree.
    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps: Exps = SmallVec::from_slice(&self.exps);
        for (a, b) in exps.iter_mut().zip(&other.exps) {
            *a += b;
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps: Exps = SmallVec::from_slice(&other.exps);
        for (a, b) in exps.iter_mut().zip(&self.exps) {
            *a -= b;
        }
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps: Exps = SmallVec::from_slice(&self.exps);
        for (a, &b) in exps.iter_mut().zip(&other.exps) {
            *a = (*a).max(b);
        }
        Monomial::from_exps(exps)
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Re-embed into a ring with more variables; `map[i]` is the new index of variable `i`.
    pub(crate) fn embed(&self, new_nvars: usize, map: &[usize]) -> Monomial {
        let mut exps: Exps = SmallVec::from_elem(0, new_nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] = e;
        }
        Monomial {
            exps,
            degree: self.degree,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// All monomials of a given weighted degree, in increasing lex order of exponents.
pub(crate) fn monomials_of_degree(nvars: usize, weights: &[u32], degree: u64) -> Vec<Monomial> {
    fn rec(
        i: usize,
        remaining: u64,
        weights: &[u32],
        cur: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == weights.len() {
            if remaining == 0 {
                out.push(Monomial::new(cur));
            }
            return;
        }
        let w = weights[i] as u64;
        let max = remaining / w;
        for e in 0..=max {
            cur[i] = e as u32;
            rec(i + 1, remaining - e * w, weights, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; nvars];
    rec(0, degree, weights, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_lcm() {
        let a = Monomial::new(&[2, 1, 0]);
        let b = Monomial::new(&[1, 1, 3]);
        assert_eq!(a.lcm(&b), Monomial::new(&[2, 1, 3]));
        assert!(!a.divides(&b));
        let ab = a.mul(&b);
        assert_eq!(a.quotient_of(&ab), Some(b.clone()));
        assert_eq!(ab.degree(), 8);
        assert!(!a.gcd_is_one(&b));
        assert!(Monomial::new(&[1, 0, 0]).gcd_is_one(&Monomial::new(&[0, 2, 1])));
    }

    #[test]
    fn enumerates_weighted_degrees() {
        assert_eq!(monomials_of_degree(3, &[1, 1, 1], 2).len(), 6);
        // weights 3,4,5: degree 8 is x y^... only y^2 and x z
        let ms = monomials_of_degree(3, &[3, 4, 5], 8);
        assert_eq!(ms, vec![Monomial::new(&[0, 2, 0]), Monomial::new(&[1, 0, 1])]);
        assert_eq!(monomials_of_degree(3, &[3, 4, 5], 2).len(), 0);
    }
}
