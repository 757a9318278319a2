//! Socles of Artinian quotients `S/I` and the colon `I : m`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::{is_m_primary, Ideal};
use crate::linalg::{self, SpVec};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::staircase;

/// `S/I` for a zero-dimensional `I`, with standard monomials as basis.
pub(crate) struct QuotientAlgebra<'a> {
    gb: &'a GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    memo: HashMap<Monomial, SpVec>,
}

impl<'a> QuotientAlgebra<'a> {
    pub fn new(gb: &'a GroebnerBasis) -> Option<Self> {
        let basis = staircase::standard_monomials(&gb.leading_monomials(), gb.ring().nvars())?;
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i as u32)).collect();
        Some(QuotientAlgebra {
            gb,
            basis,
            index,
            memo: HashMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the normal form of a monomial.
    pub fn nf_monomial(&mut self, m: &Monomial) -> SpVec {
        if let Some(&i) = self.index.get(m) {
            return vec![(i, 1)];
        }
        if let Some(v) = self.memo.get(m) {
            return v.clone();
        }
        let field = *self.gb.ring().field();
        let elems = self.gb.elems();
        let mut stack = vec![m.clone()];
        while let Some(top) = stack.last().cloned() {
            if self.memo.contains_key(&top) {
                stack.pop();
                continue;
            }
            let g = elems
                .iter()
                .find(|g| g[0].mon.divides(&top))
                .expect("non-standard monomials are divisible by a leading term");
            let q = g[0].mon.quotient_of(&top).unwrap();
            // top = q * lt(g) ≡ -q * tail(g)   (basis elements are monic)
            let mut missing = false;
            let tail: Vec<(Monomial, u32)> = g[1..].iter().map(|t| (t.mon.mul(&q), t.coef)).collect();
            for (mt, _) in &tail {
                if !self.index.contains_key(mt) && !self.memo.contains_key(mt) {
                    stack.push(mt.clone());
                    missing = true;
                }
            }
            if missing {
                continue;
            }
            let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
            for (mt, c) in &tail {
                let c = field.neg(*c);
                let v: &[(u32, u32)] = match self.index.get(mt) {
                    Some(&i) => &[(i, 1)][..],
                    None => &self.memo[mt],
                };
                // borrowck: copy out before touching acc
                let v: Vec<(u32, u32)> = v.to_vec();
                for (i, x) in v {
                    let e = acc.entry(i).or_insert(0);
                    *e = field.add(*e, field.mul(c, x));
                }
            }
            let v: SpVec = acc.into_iter().filter(|&(_, x)| x != 0).collect();
            self.memo.insert(top, v);
            stack.pop();
        }
        self.memo[m].clone()
    }

    /// Basis of the socle `(0 : m)` of `S/I`, as polynomials in standard monomials.
    pub fn socle(&mut self) -> Vec<Polynomial> {
        let ring = self.gb.ring().clone();
        let n = ring.nvars();
        let field = *ring.field();
        let dim = self.dim() as u32;
        let homogeneous = self.gb.generators().iter().all(|g| g.is_homogeneous());
        // group basis indices; one group unless graded
        let mut groups: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            let key = if homogeneous { ring.weighted_degree(b) } else { 0 };
            groups.entry(key).or_default().push(i as u32);
        }
        let mut out = Vec::new();
        for (_, members) in groups {
            let mut columns = Vec::with_capacity(members.len());
            for &j in &members {
                let b = self.basis[j as usize].clone();
                let mut col: SpVec = Vec::new();
                for i in 0..n {
                    let xb = b.mul(&Monomial::var(n, i, 1));
                    let v = self.nf_monomial(&xb);
                    col.extend(v.into_iter().map(|(r, x)| (r + i as u32 * dim, x)));
                }
                columns.push(col);
            }
            for k in linalg::kernel(field, columns) {
                let terms = k
                    .into_iter()
                    .map(|(c, x)| (self.basis[members[c as usize] as usize].clone(), x))
                    .collect();
                out.push(Polynomial::from_terms(&ring, terms));
            }
        }
        out
    }
}

fn algebra(i: &Ideal) -> Result<QuotientAlgebra<'_>> {
    if !is_m_primary(i) {
        return Err(Error::NotMPrimary(i.to_string()));
    }
    Ok(QuotientAlgebra::new(i.groebner()).expect("m-primary ideals are zero-dimensional"))
}

/// Representatives of a basis of the socle `(I : m)/I`.
pub fn socle_representatives(i: &Ideal) -> Result<Vec<Polynomial>> {
    Ok(algebra(i)?.socle())
}

/// `ir(I) = ℓ((I : m)/I)`, the number of irreducible components of `I`.
///
/// ```
/// use chernlab::{index_of_reducibility, Ideal, RingDescriptor};
///
/// let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y"]).unwrap();
/// let m3 = Ideal::parse(&r, &["x^3", "x^2*y", "x*y^2", "y^3"]).unwrap();
/// assert_eq!(index_of_reducibility(&m3).unwrap(), 3);
/// ```
pub fn index_of_reducibility(i: &Ideal) -> Result<u64> {
    Ok(socle_representatives(i)?.len() as u64)
}

/// `I : m` for an m-primary `I`, obtained by lifting the socle of `S/I`.
pub fn colon_maximal(i: &Ideal) -> Result<Ideal> {
    let reps = socle_representatives(i)?;
    let mut gens = i.gens().to_vec();
    gens.extend(reps);
    Ok(i.with_gens(gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{colon, ideal_power, quotient_length};
    use crate::oracle;
    use crate::ring::RingDescriptor;

    fn example() -> RingDescriptor {
        RingDescriptor::from_strings("R", 32003, &["x", "y", "z", "w"], None, &["x*w", "y*w", "z*w"]).unwrap()
    }

    #[test]
    fn powers_of_maximal_ideal_in_two_variables() {
        let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y"]).unwrap();
        let m = Ideal::maximal(&r);
        for n in 0..5u32 {
            let p = ideal_power(&m, n + 1).unwrap();
            // the socle of k[x,y]/m^(n+1) is m^n/m^(n+1)
            assert_eq!(index_of_reducibility(&p).unwrap(), n as u64 + 1);
            assert_eq!(oracle::socle(&p.lifted_gens(), n as u64 + 2) as u64, n as u64 + 1);
        }
    }

    #[test]
    fn principal_ideal_in_one_variable() {
        let r = RingDescriptor::polynomial_ring("S", 32003, &["x"]).unwrap();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        for n in 1..6 {
            assert_eq!(index_of_reducibility(&ideal_power(&x, n).unwrap()).unwrap(), 1);
        }
    }

    #[test]
    fn example_parameter_ideal_powers() {
        let r = example();
        let q = Ideal::parse(&r, &["x - w", "y - w", "z - w"]).unwrap();
        let m = Ideal::maximal(&r);
        for n in 0..4u32 {
            let p = ideal_power(&q, n + 1).unwrap();
            let ir = index_of_reducibility(&p).unwrap();
            assert_eq!(ir as usize, oracle::socle(&p.lifted_gens(), n as u64 + 3));
            // the colon through the socle agrees with the general colon
            let a = colon_maximal(&p).unwrap();
            let b = colon(&p, &m).unwrap();
            assert!(a.same_as(&b));
            assert_eq!(
                quotient_length(&p).unwrap().get() - quotient_length(&a).unwrap().get(),
                ir
            );
        }
    }

    #[test]
    fn not_m_primary_is_rejected() {
        let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, &["x"]).unwrap();
        assert!(matches!(index_of_reducibility(&i), Err(Error::NotMPrimary(_))));
    }

    #[test]
    fn graded_and_ungraded_paths_agree() {
        // the same ideal after a linear change of coordinates that breaks nothing,
        // and a non-homogeneous generator set of a homogeneous ideal
        let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&r, &["x^2", "y^2", "z^2", "x*y*z"]).unwrap();
        let j = Ideal::parse(&r, &["x^2 + x*y*z", "y^2", "z^2", "x*y*z"]).unwrap();
        assert_eq!(index_of_reducibility(&i).unwrap(), 3);
        assert_eq!(index_of_reducibility(&j).unwrap(), 3);
        let k = Ideal::parse(&r, &["x^2 - y", "y^2", "z^3 + x*y"]).unwrap();
        assert_eq!(
            index_of_reducibility(&k).unwrap() as usize,
            oracle::socle(&k.lifted_gens(), 7)
        );
    }
}
