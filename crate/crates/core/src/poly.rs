//! Sparse polynomials over `F_p`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::ring::PolyRing;

/// A polynomial: nonzero terms sorted strictly descending in the ring's order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, FieldElement)>,
}

/// The four ring operations exposed through [`arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow(u32),
}

/// Apply `op` to `a` and `b` (`b` is ignored for powers), checking that both
/// operands live in the same ring.
pub fn arithmetic(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    if let ArithOp::Pow(k) = op {
        return Ok(a.pow(k));
    }
    if !a.same_ring(b) {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => a.add_ref(b),
        ArithOp::Sub => a.sub_ref(b),
        ArithOp::Mul => a.mul_ref(b),
        ArithOp::Pow(_) => unreachable!(),
    })
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    /// Normalize an arbitrary list of terms: sort, merge equal monomials, drop zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, FieldElement)>) -> Self {
        let order = ring.order();
        let w = ring.weights();
        let f = ring.field();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0, w));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = f.from_u64(c as u64);
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1 == 0 {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1 == 0 {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: FieldElement) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant coefficient (the value at the origin).
    pub fn constant_term(&self) -> FieldElement {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|t| t.1)
            .unwrap_or(0)
    }

    /// Leading term in the ring's working order.
    pub fn leading_term(&self) -> Result<(&Monomial, FieldElement)> {
        self.terms.first().map(|(m, c)| (m, *c)).ok_or(Error::ZeroPolynomial)
    }

    /// Leading term under an arbitrary order.
    pub fn leading_term_in(&self, order: MonomialOrder) -> Result<(Monomial, FieldElement)> {
        let w = self.ring.weights();
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0, w))
            .map(|(m, c)| (m.clone(), *c))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Maximal weighted degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m)).max()
    }

    /// Minimal weighted degree of a term (the order at the origin).
    pub fn low_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m)).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn neg_ref(&self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field().inv(c)),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: FieldElement) -> Polynomial {
        let f = self.ring.field();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        // multiplicative orders keep the product sorted
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(*a, c))).collect(),
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let f = self.ring.field();
        let order = self.ring.order();
        let w = self.ring.weights();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let tr = |c: FieldElement| if negate_other { f.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match order.compare(&a[i].0, &b[j].0, w) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), tr(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, tr(b[j].1));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), tr(*c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add_ref(&self, other: &Polynomial) -> Polynomial {
        assert!(self.same_ring(other), "mixed rings in addition");
        self.merge(other, false)
    }

    pub fn sub_ref(&self, other: &Polynomial) -> Polynomial {
        assert!(self.same_ring(other), "mixed rings in subtraction");
        self.merge(other, true)
    }

    pub fn mul_ref(&self, other: &Polynomial) -> Polynomial {
        assert!(self.same_ring(other), "mixed rings in multiplication");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.merge(&large.mul_monomial(m, *c), false);
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Re-sort the terms for another ring with the same variables (e.g. a new order).
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars());
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Map into a ring with more variables; `map[i]` is the new index of variable `i`.
    pub fn embed(&self, ring: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        let n = ring.nvars();
        Polynomial::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| (m.embed(n, map), *c)).collect(),
        )
    }

    /// Evaluate a monomial substitution `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let target = images[0].ring().clone();
        let f = target.field();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, f.to_signed(*c));
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul_ref(&images[i].pow(e));
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        let names = self.ring.names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field.to_signed(*c);
            let (neg, abs) = (s < 0, s.unsigned_abs());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if abs != 1 || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$inner(rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}
