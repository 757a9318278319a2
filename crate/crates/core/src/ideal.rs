//! Ideals of `S` and of `R = S/J`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    groebner_basis, module_groebner_basis, syzygies_of, GroebnerBasis, ModuleElement, ModuleOrder,
};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingDescriptor};
use crate::staircase;

/// Whether an ideal lives in `S` or in the quotient `R = S/J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scope {
    /// An ideal of the polynomial ring; `J` is ignored.
    Ambient,
    /// An ideal of `R`; every computation adjoins the generators of `J`.
    Quotient,
}

/// The `k`-dimension of an Artinian quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LengthValue(pub u64);

impl LengthValue {
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for LengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finitely generated ideal. The Gröbner basis of the (lifted) ideal is
/// computed on first use and shared between clones.
#[derive(Clone)]
pub struct Ideal {
    ring: RingDescriptor,
    gens: Vec<Polynomial>,
    scope: Scope,
    gb: Arc<OnceLock<GroebnerBasis>>,
}

impl Ideal {
    /// An ideal of `R` generated by the images of `gens`.
    pub fn new(ring: &RingDescriptor, gens: Vec<Polynomial>) -> Result<Self> {
        Self::with_scope(ring, gens, Scope::Quotient)
    }

    /// An ideal of the polynomial ring `S`.
    pub fn ambient(ring: &RingDescriptor, gens: Vec<Polynomial>) -> Result<Self> {
        Self::with_scope(ring, gens, Scope::Ambient)
    }

    pub fn with_scope(ring: &RingDescriptor, gens: Vec<Polynomial>, scope: Scope) -> Result<Self> {
        let s = ring.poly_ring();
        for g in &gens {
            if !Arc::ptr_eq(g.ring(), s) && **g.ring() != **s {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Self::trusted(ring, gens, scope))
    }

    pub(crate) fn trusted(ring: &RingDescriptor, gens: Vec<Polynomial>, scope: Scope) -> Self {
        let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let g = g.monic();
            if !out.contains(&g) {
                out.push(g);
            }
        }
        Ideal {
            ring: ring.clone(),
            gens: out,
            scope,
            gb: Arc::new(OnceLock::new()),
        }
    }

    /// Parse generators of an ideal of `R`.
    pub fn parse(ring: &RingDescriptor, gens: &[&str]) -> Result<Self> {
        Self::new(ring, ring.parse_all(gens)?)
    }

    /// The irrelevant ideal `m = (x_1..x_n)` of `R`.
    pub fn maximal(ring: &RingDescriptor) -> Self {
        Self::trusted(ring, ring.poly_ring().variables(), Scope::Quotient)
    }

    pub fn unit(ring: &RingDescriptor) -> Self {
        Self::trusted(ring, vec![Polynomial::one(ring.poly_ring())], Scope::Quotient)
    }

    /// The zero ideal of `R`.
    pub fn zero(ring: &RingDescriptor) -> Self {
        Self::trusted(ring, Vec::new(), Scope::Quotient)
    }

    /// Same ring and scope, new generators.
    pub fn with_gens(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal::trusted(&self.ring, gens, self.scope)
    }

    /// The same ideal regarded in another ring descriptor over the same `S`.
    pub fn in_ring(&self, ring: &RingDescriptor) -> Ideal {
        assert_eq!(**ring.poly_ring(), **self.ring.poly_ring());
        Ideal::trusted(ring, self.gens.clone(), self.scope)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        self.ring.poly_ring()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    /// Generators in `S`, including those of `J` for ideals of `R`.
    pub fn lifted_gens(&self) -> Vec<Polynomial> {
        let mut out = self.gens.clone();
        if self.scope == Scope::Quotient {
            out.extend(self.ring.relations_gb().generators());
        }
        out
    }

    /// Reduced Gröbner basis of the lifted ideal in the working order.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            groebner_basis(self.poly_ring(), &self.lifted_gens(), MonomialOrder::Grevlex)
                .expect("no pair cap configured")
        })
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner().leading_monomials()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.groebner().contains(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.groebner().contains_all(&other.lifted_gens())
    }

    /// Equality of the lifted ideals (compared through reduced bases).
    pub fn same_as(&self, other: &Ideal) -> bool {
        self.groebner() == other.groebner()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    /// Whether the ideal is zero (in `R` for quotient ideals).
    pub fn is_zero(&self) -> bool {
        match self.scope {
            Scope::Ambient => self.gens.is_empty(),
            Scope::Quotient => self.gens.iter().all(|g| self.ring.relations_gb().contains(g).unwrap_or(false)),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// `I + K`.
    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        self.with_gens(g)
    }

    /// `I * K`.
    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul_ref(b));
            }
        }
        self.with_gens(g)
    }

    /// Drop generators that already lie in `J` (ideals of `R` only) and
    /// replace the rest by the reduced basis when that is shorter.
    pub fn simplified(&self) -> Ideal {
        let gb = self.groebner();
        let mut candidates: Vec<Polynomial> = gb.generators();
        if self.scope == Scope::Quotient {
            let jgb = self.ring.relations_gb();
            candidates.retain(|g| !jgb.contains(g).unwrap_or(false));
        }
        // greedy: keep a basis element only if it is not in the ideal of the others kept so far plus J
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in candidates {
            let mut trial = kept.clone();
            if self.scope == Scope::Quotient {
                trial.extend(self.ring.relations().iter().cloned());
            }
            let inside = !trial.is_empty()
                && groebner_basis(self.poly_ring(), &trial, MonomialOrder::Grevlex)
                    .and_then(|b| b.contains(&g))
                    .unwrap_or(false);
            if !inside {
                kept.push(g);
            }
        }
        let out = self.with_gens(kept);
        let _ = out.gb.set(gb.clone());
        out
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self)
    }
}

/// `I^n` by expanding all `n`-fold products of generators.
///
/// ```
/// use chernlab::{ideal_power, Ideal, RingDescriptor};
///
/// let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y", "z", "w"]).unwrap();
/// let q = Ideal::parse(&r, &["x - w", "y - w", "z - w"]).unwrap();
/// assert_eq!(ideal_power(&q, 2).unwrap().gens().len(), 6);
/// ```
pub fn ideal_power(ideal: &Ideal, n: u32) -> Result<Ideal> {
    if n == 0 {
        return Err(Error::InvalidArgument("ideal_power needs n >= 1; use the unit ideal for n = 0".into()));
    }
    let g = &ideal.gens;
    let mut out = Vec::new();
    // multisets of size n via non-decreasing index sequences
    fn rec(g: &[Polynomial], start: usize, left: u32, acc: &Polynomial, out: &mut Vec<Polynomial>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..g.len() {
            rec(g, i, left - 1, &acc.mul_ref(&g[i]), out);
        }
    }
    rec(g, 0, n, &Polynomial::one(ideal.poly_ring()), &mut out);
    Ok(ideal.with_gens(out))
}

fn tag_ring(s: &Arc<PolyRing>) -> Arc<PolyRing> {
    let mut name = String::from("t");
    while s.var_index(&name).is_some() {
        name.push('_');
    }
    let mut names = vec![name];
    names.extend(s.names().iter().cloned());
    let mut weights = vec![1];
    weights.extend_from_slice(s.weights());
    PolyRing::with_weights(*s.field(), names, weights)
        .expect("fresh variable name")
        .with_order(MonomialOrder::Elimination { block: 1 })
}

/// Elements of an elimination basis free of the first `k` variables, mapped
/// back to `s` (the remaining variables, in order).
fn strip_block(gb: &GroebnerBasis, k: usize, s: &Arc<PolyRing>, back: &[usize]) -> Vec<Polynomial> {
    gb.generators()
        .into_iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)))
        .map(|p| {
            let n = s.nvars();
            Polynomial::from_terms(
                s,
                p.terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut e = vec![0u32; n];
                        for (j, &x) in m.exponents().iter().enumerate().skip(k) {
                            e[back[j - k]] = x;
                        }
                        (Monomial::new(&e), *c)
                    })
                    .collect(),
            )
        })
        .collect()
}

fn intersect_lifted(s: &Arc<PolyRing>, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let st = tag_ring(s);
    let map: Vec<usize> = (1..=s.nvars()).collect();
    let t = st.variable(0);
    let one_minus_t = Polynomial::one(&st).sub_ref(&t);
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in a {
        gens.push(t.mul_ref(&f.embed(&st, &map)));
    }
    for f in b {
        gens.push(one_minus_t.mul_ref(&f.embed(&st, &map)));
    }
    let gb = groebner_basis(&st, &gens, MonomialOrder::Elimination { block: 1 })?;
    let back: Vec<usize> = (0..s.nvars()).collect();
    Ok(strip_block(&gb, 1, s, &back))
}

fn check_same(a: &Ideal, b: &Ideal) -> Result<()> {
    if **a.poly_ring() != **b.poly_ring() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// `I ∩ K`, through the tag-variable elimination `(t I + (1 - t) K) ∩ S`.
///
/// ```
/// use chernlab::{intersect, Ideal, RingDescriptor};
///
/// let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y", "z", "w"]).unwrap();
/// let a = Ideal::parse(&r, &["x", "y", "z"]).unwrap();
/// let b = Ideal::parse(&r, &["w"]).unwrap();
/// let c = intersect(&a, &b).unwrap();
/// assert!(c.same_as(&Ideal::parse(&r, &["x*w", "y*w", "z*w"]).unwrap()));
/// ```
pub fn intersect(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    check_same(i, k)?;
    let gens = intersect_lifted(i.poly_ring(), &i.lifted_gens(), &k.lifted_gens())?;
    Ok(i.with_gens(gens))
}

/// Exact division `f / g`, `None` if `g` does not divide `f`.
pub(crate) fn exact_div(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let ring = f.ring();
    let field = ring.field();
    let (lg, cg) = g.leading_term().ok()?;
    let lg = lg.clone();
    let inv = field.inv(cg);
    let mut rest = f.clone();
    let mut q = Vec::new();
    while !rest.is_zero() {
        let (lf, cf) = rest.leading_term().unwrap();
        let m = lg.quotient_of(lf)?;
        let c = field.mul(cf, inv);
        rest = rest.sub_ref(&g.mul_monomial(&m, c));
        q.push((m, c));
    }
    Some(Polynomial::from_terms(ring, q))
}

/// `I : g` for a single polynomial, as an ideal of `S` containing the lift of `I`.
fn colon_poly(i_lifted: &[Polynomial], s: &Arc<PolyRing>, g: &Polynomial) -> Result<Vec<Polynomial>> {
    let inter = intersect_lifted(s, i_lifted, std::slice::from_ref(g))?;
    Ok(inter
        .iter()
        .map(|h| exact_div(h, g).expect("elements of (g) are divisible by g"))
        .collect())
}

/// `I : K = {f : f K ⊆ I}`, intersecting `I : g` over the generators of `K`.
///
/// ```
/// use chernlab::{colon, Ideal, RingDescriptor};
///
/// let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y"]).unwrap();
/// let i = Ideal::parse(&r, &["x^2"]).unwrap();
/// let k = Ideal::parse(&r, &["x"]).unwrap();
/// assert!(colon(&i, &k).unwrap().same_as(&k));
/// ```
pub fn colon(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    check_same(i, k)?;
    if k.gens.is_empty() {
        return Ok(i.with_gens(vec![Polynomial::one(i.poly_ring())]));
    }
    let s = i.poly_ring();
    let lifted = i.lifted_gens();
    let igb = i.groebner();
    let mut acc: Option<Vec<Polynomial>> = None;
    for g in &k.gens {
        if igb.contains(g)? {
            continue; // I : g is the unit ideal
        }
        let part = colon_poly(&lifted, s, g)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect_lifted(s, &prev, &part)?,
        });
    }
    Ok(match acc {
        None => i.with_gens(vec![Polynomial::one(s)]),
        Some(gens) => i.with_gens(gens),
    })
}

/// `I : K^∞`, iterating colons until the ideal stops growing.
pub fn saturate(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    let mut cur = i.clone();
    for _ in 0..256 {
        let next = colon(&cur, k)?;
        if next.same_as(&cur) {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::ResourceCap {
        stage: "saturation".into(),
        detail: "colon chain did not stabilize after 256 steps".into(),
    })
}

/// `I ∩ k[remaining variables]` (an ideal of `S`).
pub fn eliminate(i: &Ideal, vars: &[usize]) -> Result<Ideal> {
    let s = i.poly_ring();
    let n = s.nvars();
    if vars.iter().any(|&v| v >= n) {
        return Err(Error::InvalidArgument("variable index out of range".into()));
    }
    let mut order: Vec<usize> = vars.to_vec();
    order.sort_unstable();
    order.dedup();
    let k = order.len();
    let rest: Vec<usize> = (0..n).filter(|v| !order.contains(v)).collect();
    let perm: Vec<usize> = order.iter().chain(rest.iter()).copied().collect();
    // old index -> new position
    let mut map = vec![0; n];
    for (pos, &old) in perm.iter().enumerate() {
        map[old] = pos;
    }
    let names: Vec<String> = perm.iter().map(|&v| s.names()[v].clone()).collect();
    let weights: Vec<u32> = perm.iter().map(|&v| s.weights()[v]).collect();
    let order_kind = if k == 0 {
        MonomialOrder::Grevlex
    } else {
        MonomialOrder::Elimination { block: k }
    };
    let se = PolyRing::with_weights(*s.field(), names, weights)?.with_order(order_kind);
    let gens: Vec<Polynomial> = i.lifted_gens().iter().map(|f| f.embed(&se, &map)).collect();
    let gb = groebner_basis(&se, &gens, order_kind)?;
    let kept = strip_block(&gb, k, s, &rest);
    Ideal::ambient(&i.ring, kept)
}

/// Dimension of `S/(I + J)` (for quotient ideals) from the leading-term ideal;
/// `None` for the unit ideal.
pub fn dimension(i: &Ideal) -> Option<usize> {
    staircase::combinatorial_dimension(&i.leading_monomials(), i.poly_ring().nvars())
}

/// Krull dimension of `R`.
///
/// ```
/// use chernlab::{krull_dimension, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("R", 32003, &["x", "y", "z", "w"], None, &["x*w", "y*w", "z*w"]).unwrap();
/// assert_eq!(krull_dimension(&r).unwrap(), 3);
/// ```
pub fn krull_dimension(ring: &RingDescriptor) -> Result<usize> {
    ring.cached_dimension(|| {
        let lts = ring.relations_gb().leading_monomials();
        staircase::combinatorial_dimension(&lts, ring.nvars())
            .ok_or_else(|| Error::InvalidRing("the defining ideal is the unit ideal".into()))
    })
}

/// Least `k` with `x_var^k` in the ideal, scanning up to `bound`.
fn nilpotency(gb: &GroebnerBasis, var: usize, bound: u64) -> Option<u64> {
    let s = gb.ring();
    let x = s.variable(var);
    let mut cur = gb.normal_form(&Polynomial::one(s)).ok()?;
    for k in 1..=bound {
        cur = gb.normal_form(&cur.mul_ref(&x)).ok()?;
        if cur.is_zero() {
            return Some(k);
        }
    }
    None
}

/// `dim_k S/(I + J)` if finite.
pub(crate) fn colength(i: &Ideal) -> Option<u64> {
    staircase::count_standard(&i.leading_monomials(), i.poly_ring().nvars())
}

/// Whether `R/I` has finite length and is supported at the origin only.
///
/// ```
/// use chernlab::{is_m_primary, Ideal, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("R", 32003, &["x", "y", "z", "w"], None, &["x*w", "y*w", "z*w"]).unwrap();
/// assert!(is_m_primary(&Ideal::parse(&r, &["x - w", "y - w", "z - w"]).unwrap()));
/// assert!(!is_m_primary(&Ideal::parse(&r, &["x", "y", "z"]).unwrap()));
/// ```
pub fn is_m_primary(i: &Ideal) -> bool {
    let Some(d) = colength(i) else { return false };
    if d == 0 {
        return false;
    }
    let gb = i.groebner();
    (0..i.poly_ring().nvars()).all(|v| nilpotency(gb, v, d).is_some())
}

/// `ℓ(R/I)` for an m-primary ideal.
///
/// ```
/// use chernlab::{quotient_length, Ideal, RingDescriptor};
///
/// let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y"]).unwrap();
/// let i = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
/// assert_eq!(quotient_length(&i).unwrap().get(), 4);
/// ```
pub fn quotient_length(i: &Ideal) -> Result<LengthValue> {
    if !is_m_primary(i) {
        return Err(Error::NotMPrimary(i.to_string()));
    }
    Ok(LengthValue(colength(i).expect("checked finite")))
}

/// `ℓ((num + den)/den)`, computed from a presentation of the module
/// `(num + den)/den`; `None` if the length is infinite.
pub fn module_length(num: &[Polynomial], den: &Ideal) -> Result<Option<u64>> {
    let s = den.poly_ring();
    let dgb = den.groebner();
    let h: Vec<Polynomial> = num
        .iter()
        .map(|f| dgb.normal_form(f))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|f| !f.is_zero())
        .collect();
    if h.is_empty() {
        return Ok(Some(0));
    }
    let r = h.len();
    // relations among h modulo den: first block of syz(h | den)
    let mut all: Vec<ModuleElement> = h.iter().map(|f| ModuleElement::new(vec![f.clone()])).collect();
    all.extend(dgb.generators().into_iter().map(|f| ModuleElement::new(vec![f])));
    let syz = syzygies_of(s, 1, &all, &[])?;
    let rels: Vec<ModuleElement> = syz
        .into_iter()
        .map(|v| ModuleElement::new(v.into_components().into_iter().take(r).collect()))
        .filter(|v| !v.is_zero())
        .collect();
    let shifts: Vec<i64> = h.iter().map(|f| f.degree().unwrap_or(0) as i64).collect();
    let gb = module_groebner_basis(s, r, &rels, MonomialOrder::Grevlex, ModuleOrder::pot(r), &shifts)?;
    module_colength(&gb)
}

/// Number of standard monomials of a module basis in `S^rank`, if finite.
pub(crate) fn module_colength(gb: &GroebnerBasis) -> Result<Option<u64>> {
    let n = gb.ring().nvars();
    let mut total = 0u64;
    for c in 0..gb.rank() {
        match staircase::count_standard(&gb.leading_monomials_in(c), n) {
            Some(k) => total += k,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

/// Krull dimension of the module presented by a module basis: the largest
/// dimension of `S/in_c` over the components.
pub(crate) fn module_dimension(gb: &GroebnerBasis) -> Option<usize> {
    let n = gb.ring().nvars();
    (0..gb.rank())
        .filter_map(|c| staircase::combinatorial_dimension(&gb.leading_monomials_in(c), n))
        .max()
}

#[cfg(test)]
mod tests;
