//! Polynomial rings `S = F_p[x_1..x_n]` and quotient descriptors `R = S/J`.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::GroebnerBasis;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::parse::parse_polynomial_in;
use crate::poly::Polynomial;
use crate::resolution::ExtReport;

/// The ambient polynomial ring: field, variable names, grading and working order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: PrimeField, names: Vec<String>) -> Result<Arc<Self>> {
        let weights = vec![1; names.len()];
        Self::with_weights(field, names, weights)
    }

    /// A positively graded ring; `weights[i]` is the degree of variable `i`.
    pub fn with_weights(field: PrimeField, names: Vec<String>, weights: Vec<u32>) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::InvalidRing("no variables".into()));
        }
        if weights.len() != names.len() {
            return Err(Error::InvalidRing(format!(
                "{} weights for {} variables",
                weights.len(),
                names.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not a valid variable name")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            names,
            weights,
            order: MonomialOrder::Grevlex,
        }))
    }

    /// Same variables and field under a different working order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        if self.is_standard_graded() {
            m.degree()
        } else {
            m.weighted_degree(&self.weights)
        }
    }

    pub fn variable(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::from_terms(self, vec![(Monomial::var(self.nvars(), i, 1), 1)])
    }

    pub fn variables(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.variable(i)).collect()
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        parse_polynomial_in(text, self)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `R = S/J` with `J` homogeneous for the grading of `S`.
///
/// Lengths of graded quotients of `R` equal the lengths of their localizations
/// at the irrelevant ideal `m = (x_1..x_n)`, which is what makes every local
/// invariant in this crate computable with global Gröbner bases.
///
/// Cloning is cheap; derived data (the Gröbner basis of `J`, the dimension,
/// the Ext report) is computed once and shared between clones.
#[derive(Clone)]
pub struct RingDescriptor {
    inner: Arc<RingData>,
}

struct RingData {
    name: String,
    ring: Arc<PolyRing>,
    relations: Vec<Polynomial>,
    relations_gb: OnceLock<GroebnerBasis>,
    dimension: OnceLock<Result<usize>>,
    ext: OnceLock<Result<ExtReport>>,
}

impl RingDescriptor {
    /// Build a descriptor, rejecting relations that are not homogeneous.
    pub fn new(name: impl Into<String>, ring: Arc<PolyRing>, relations: Vec<Polynomial>) -> Result<Self> {
        for r in &relations {
            if !Arc::ptr_eq(r.ring(), &ring) && **r.ring() != *ring {
                return Err(Error::RingMismatch);
            }
            if !r.is_homogeneous() {
                return Err(Error::NotHomogeneous(r.to_string()));
            }
        }
        Ok(Self::unchecked(name, ring, relations))
    }

    /// Quotients built internally (e.g. `R/xR` for a non-homogeneous parameter
    /// `x`) skip the homogeneity check; their lengths are still local because
    /// every ideal measured against them is verified to be m-primary.
    pub(crate) fn unchecked(name: impl Into<String>, ring: Arc<PolyRing>, relations: Vec<Polynomial>) -> Self {
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        RingDescriptor {
            inner: Arc::new(RingData {
                name: name.into(),
                ring,
                relations,
                relations_gb: OnceLock::new(),
                dimension: OnceLock::new(),
                ext: OnceLock::new(),
            }),
        }
    }

    /// Parse a descriptor from variable names and relation strings.
    pub fn from_strings(
        name: &str,
        characteristic: u64,
        vars: &[&str],
        weights: Option<&[u32]>,
        relations: &[&str],
    ) -> Result<Self> {
        let field = PrimeField::new(characteristic)?;
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let ring = match weights {
            Some(w) => PolyRing::with_weights(field, names, w.to_vec())?,
            None => PolyRing::new(field, names)?,
        };
        let rels = relations
            .iter()
            .map(|r| ring.parse(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, ring, rels)
    }

    /// The polynomial ring itself, `J = 0`.
    pub fn polynomial_ring(name: &str, characteristic: u64, vars: &[&str]) -> Result<Self> {
        Self::from_strings(name, characteristic, vars, None, &[])
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.inner.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.inner.relations
    }

    pub fn nvars(&self) -> usize {
        self.inner.ring.nvars()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        self.inner.ring.parse(text)
    }

    /// Parse a list of generator strings.
    pub fn parse_all(&self, texts: &[&str]) -> Result<Vec<Polynomial>> {
        texts.iter().map(|t| self.parse(t)).collect()
    }

    pub fn same_ring(&self, other: &RingDescriptor) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (*self.inner.ring == *other.inner.ring && self.inner.relations == other.inner.relations)
    }

    /// Whether the relations are homogeneous for the grading (always true for
    /// descriptors built through [`RingDescriptor::new`]).
    pub fn is_graded(&self) -> bool {
        self.inner.relations.iter().all(|r| r.is_homogeneous())
    }

    /// Reduced Gröbner basis of `J` in the working order.
    pub fn relations_gb(&self) -> &GroebnerBasis {
        self.inner.relations_gb.get_or_init(|| {
            crate::groebner::groebner_basis(&self.inner.ring, &self.inner.relations, self.inner.ring.order())
                .expect("Gröbner basis of the defining ideal")
        })
    }

    pub(crate) fn cached_dimension(&self, f: impl FnOnce() -> Result<usize>) -> Result<usize> {
        self.inner.dimension.get_or_init(f).clone()
    }

    pub(crate) fn cached_ext(&self, f: impl FnOnce() -> Result<ExtReport>) -> Result<&ExtReport> {
        self.inner.ext.get_or_init(f).as_ref().map_err(|e| e.clone())
    }

    /// A new descriptor over the same polynomial ring with extra relations.
    pub(crate) fn quotient_by(&self, name: &str, extra: &[Polynomial]) -> RingDescriptor {
        let mut rels = self.inner.relations.clone();
        rels.extend(extra.iter().cloned());
        RingDescriptor::unchecked(name, self.inner.ring.clone(), rels)
    }
}

impl fmt::Debug for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.inner.ring;
        write!(f, "F_{}[{}]", r.field().characteristic(), r.names().join(", "))?;
        if !self.inner.relations.is_empty() {
            let rels: Vec<String> = self.inner.relations.iter().map(|p| p.to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_variable_lists() {
        let f = PrimeField::default();
        assert!(PolyRing::new(f, vec![]).is_err());
        assert!(PolyRing::new(f, vec!["x".into(), "x".into()]).is_err());
        assert!(PolyRing::new(f, vec!["1x".into()]).is_err());
        assert!(PolyRing::with_weights(f, vec!["x".into()], vec![0]).is_err());
    }

    #[test]
    fn enforces_homogeneous_relations() {
        let err = RingDescriptor::from_strings("bad", 32003, &["x", "y", "z"], None, &["y*z - x^3"]).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(_)));
        // the same relation is homogeneous for weights (3, 4, 5)
        let ok = RingDescriptor::from_strings(
            "curve",
            32003,
            &["x", "y", "z"],
            Some(&[3, 4, 5]),
            &["y^2 - x*z", "y*z - x^3", "z^2 - x^2*y"],
        );
        assert!(ok.is_ok());
    }
}
