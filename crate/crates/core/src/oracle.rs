//! Dense linear-algebra oracle for tests.
//!
//! Works in `S / M_D`, where `M_D` is spanned by the monomials of weighted
//! degree at least `D`. When `M_D ⊆ I` the quotient `S/I` is computed exactly,
//! without any Gröbner basis: `I / M_D` is the span of all truncated products
//! `m * g`. Callers confirm `M_D ⊆ I` by checking that the answer does not
//! change from `D` to `D + 1`.

use std::collections::HashMap;

use crate::field::{FieldElement, PrimeField};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;

pub(crate) struct Truncation {
    field: PrimeField,
    nvars: usize,
    weights: Vec<u32>,
    bound: u64,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// Row echelon form with full reduction.
pub(crate) struct Echelon {
    field: PrimeField,
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Echelon { field, rows: Vec::new() }
    }

    pub fn reduce(&self, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
        let f = &self.field;
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    if *b != 0 {
                        *a = f.sub(*a, f.mul(c, *b));
                    }
                }
            }
        }
        v
    }

    /// Insert a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<FieldElement>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|&c| c != 0) else { return false };
        let inv = self.field.inv(v[p]);
        let v: Vec<FieldElement> = v.iter().map(|&c| self.field.mul(c, inv)).collect();
        let f = self.field;
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a = f.sub(*a, f.mul(c, *b));
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

impl Truncation {
    pub fn new(field: PrimeField, weights: &[u32], bound: u64) -> Self {
        let nvars = weights.len();
        let mut monos = Vec::new();
        for d in 0..bound {
            monos.extend(monomials_of_degree(nvars, weights, d));
        }
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Truncation {
            field,
            nvars,
            weights: weights.to_vec(),
            bound,
            monos,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monos.len()
    }

    fn vector(&self, terms: impl Iterator<Item = (Monomial, FieldElement)>) -> Vec<FieldElement> {
        let mut v = vec![0; self.monos.len()];
        for (m, c) in terms {
            if let Some(&i) = self.index.get(&m) {
                v[i] = self.field.add(v[i], c);
            }
        }
        v
    }

    /// Span of `I / M_D` for `I` generated by `gens`.
    pub fn ideal_span(&self, gens: &[Polynomial]) -> Echelon {
        let mut e = Echelon::new(self.field);
        for g in gens {
            let Some(low) = g.terms().iter().map(|(m, _)| m.weighted_degree(&self.weights)).min() else { continue };
            for m in &self.monos {
                if m.weighted_degree(&self.weights) + low >= self.bound {
                    continue;
                }
                let v = self.vector(g.terms().iter().map(|(t, c)| (t.mul(m), *c)));
                e.insert(v);
                if e.rank() == self.dim() {
                    return e;
                }
            }
        }
        e
    }

    /// `dim_k S/(I + M_D)`.
    pub fn length(&self, gens: &[Polynomial]) -> usize {
        self.dim() - self.ideal_span(gens).rank()
    }

    /// `dim_k ((I + M_D) : m) / (I + M_D)`.
    pub fn socle(&self, gens: &[Polynomial]) -> usize {
        let w = self.ideal_span(gens);
        let n = self.nvars;
        // f -> (x_1 f, ..., x_n f) modulo I; kernel dimension minus dim I
        let mut phi = Echelon::new(self.field);
        for b in &self.monos {
            let mut image = Vec::with_capacity(n * self.dim());
            for i in 0..n {
                let xb = b.mul(&Monomial::var(n, i, 1));
                image.extend(w.reduce(self.vector(std::iter::once((xb, 1)))));
            }
            phi.insert(image);
        }
        let kernel = self.dim() - phi.rank();
        kernel - w.rank()
    }
}

/// `ℓ(S/I)` for an m-primary `I`, asserting that the truncation bound was large enough.
pub(crate) fn length(gens: &[Polynomial], bound: u64) -> usize {
    let ring = gens[0].ring();
    let a = Truncation::new(*ring.field(), ring.weights(), bound).length(gens);
    let b = Truncation::new(*ring.field(), ring.weights(), bound + 1).length(gens);
    assert_eq!(a, b, "truncation bound {bound} too small");
    a
}

/// `ir(I) = dim_k (I : m)/I` for an m-primary `I`.
pub(crate) fn socle(gens: &[Polynomial], bound: u64) -> usize {
    let ring = gens[0].ring();
    let a = Truncation::new(*ring.field(), ring.weights(), bound).socle(gens);
    let b = Truncation::new(*ring.field(), ring.weights(), bound + 1).socle(gens);
    assert_eq!(a, b, "truncation bound {bound} too small");
    a
}
