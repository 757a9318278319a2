//! Gröbner bases of ideals and submodules of free modules, normal forms and syzygies.

pub(crate) mod engine;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

pub use engine::{GbOptions, ModuleOrder};
pub(crate) use engine::{Ctx, Term, Vpoly};

/// An element of the free module `S^r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    components: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(components: Vec<Polynomial>) -> Self {
        assert!(!components.is_empty(), "module elements need rank >= 1");
        ModuleElement { components }
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        ModuleElement::new(vec![Polynomial::zero(ring); rank])
    }

    /// The basis vector `e_i`.
    pub fn unit(ring: &Arc<PolyRing>, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.components[i] = Polynomial::one(ring);
        v
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.components[0].ring()
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        assert_eq!(self.rank(), other.rank());
        ModuleElement::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        assert_eq!(self.rank(), other.rank());
        ModuleElement::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        )
    }

    pub fn mul_poly(&self, f: &Polynomial) -> ModuleElement {
        ModuleElement::new(self.components.iter().map(|c| c.mul_ref(f)).collect())
    }

    /// `sum_i self_i * columns_i`: the image of this vector under the map whose
    /// `i`-th basis vector goes to `columns[i]`.
    pub fn apply(&self, columns: &[ModuleElement]) -> ModuleElement {
        assert_eq!(self.rank(), columns.len());
        let target_rank = columns.first().map_or(1, |c| c.rank());
        let mut acc = ModuleElement::zero(self.ring(), target_rank);
        for (c, col) in self.components.iter().zip(columns) {
            if !c.is_zero() {
                acc = acc.add(&col.mul_poly(c));
            }
        }
        acc
    }

    /// `sum_i self_i * f_i`.
    pub fn dot(&self, polys: &[Polynomial]) -> Polynomial {
        assert_eq!(self.rank(), polys.len());
        let mut acc = Polynomial::zero(self.ring());
        for (c, f) in self.components.iter().zip(polys) {
            if !c.is_zero() && !f.is_zero() {
                acc = acc.add_ref(&c.mul_ref(f));
            }
        }
        acc
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A reduced Gröbner basis of an ideal (rank 1) or a submodule of `S^rank`.
///
/// Two bases of the same ideal computed in the same order compare equal,
/// whatever generators they started from.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    ctx: Ctx,
    rank: usize,
    elems: Vec<Vpoly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring
            && self.ctx.order == other.ctx.order
            && self.ctx.module == other.ctx.module
            && self.rank == other.rank
            && self.elems == other.elems
    }
}

impl Eq for GroebnerBasis {}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank == 1 {
            f.debug_list().entries(self.generators()).finish()
        } else {
            f.debug_list().entries(self.module_generators()).finish()
        }
    }
}

pub(crate) fn ideal_ctx(ring: &PolyRing, order: MonomialOrder) -> Ctx {
    Ctx::new(*ring.field(), ring.weights().to_vec(), order, ModuleOrder::pot(1))
}

pub(crate) fn poly_to_v(ctx: &Ctx, f: &Polynomial, comp: u32) -> Vpoly {
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| Term {
            mon: m.clone(),
            comp,
            coef: *c,
        })
        .collect();
    // a single component: the monomial order alone decides the term order
    if ctx.order == f.ring().order() {
        terms
    } else {
        ctx.sort(terms)
    }
}

pub(crate) fn module_to_v(ctx: &Ctx, v: &ModuleElement, offset: u32) -> Vpoly {
    let mut terms = Vec::new();
    for (i, c) in v.components().iter().enumerate() {
        for (m, k) in c.terms() {
            terms.push(Term {
                mon: m.clone(),
                comp: offset + i as u32,
                coef: *k,
            });
        }
    }
    ctx.sort(terms)
}

pub(crate) fn v_to_poly(ring: &Arc<PolyRing>, f: &[Term]) -> Polynomial {
    Polynomial::from_terms(ring, f.iter().map(|t| (t.mon.clone(), t.coef)).collect())
}

/// Components `offset..offset+rank` of `f` as a module element.
pub(crate) fn v_to_module(ring: &Arc<PolyRing>, f: &[Term], offset: u32, rank: usize) -> ModuleElement {
    let mut parts: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); rank];
    for t in f {
        if t.comp >= offset && ((t.comp - offset) as usize) < rank {
            parts[(t.comp - offset) as usize].push((t.mon.clone(), t.coef));
        }
    }
    ModuleElement::new(parts.into_iter().map(|p| Polynomial::from_terms(ring, p)).collect())
}

fn check_ring(ring: &Arc<PolyRing>, f: &Polynomial) -> Result<()> {
    if Arc::ptr_eq(ring, f.ring()) || **ring == **f.ring() {
        return Ok(());
    }
    if ring.names() == f.ring().names() && ring.field() == f.ring().field() && ring.weights() == f.ring().weights() {
        return Err(Error::OrderMismatch);
    }
    Err(Error::RingMismatch)
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `order`.
///
/// ```
/// use chernlab::{groebner_basis, MonomialOrder, RingDescriptor};
///
/// let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y", "z", "w"]).unwrap();
/// let gens = r.parse_all(&["x*w", "y*w", "z*w", "x - w", "y - w", "z - w"]).unwrap();
/// let gb = groebner_basis(r.poly_ring(), &gens, MonomialOrder::Grevlex).unwrap();
/// assert!(gb.contains(&r.parse("w^2").unwrap()).unwrap());
/// ```
pub fn groebner_basis(ring: &Arc<PolyRing>, gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    groebner_basis_with(ring, gens, order, &GbOptions::truncating())
}

/// [`groebner_basis`] with explicit engine options (pair cap, truncation).
pub fn groebner_basis_with(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    order: MonomialOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis> {
    for g in gens {
        check_ring(ring, g).map_err(|e| if e == Error::OrderMismatch { Error::RingMismatch } else { e })?;
    }
    let ctx = ideal_ctx(ring, order);
    let input: Vec<Vpoly> = gens.iter().map(|g| poly_to_v(&ctx, g, 0)).collect();
    let elems = engine::buchberger(&ctx, input, opts)?;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        ctx,
        rank: 1,
        elems,
    })
}

/// Reduced Gröbner basis of the submodule of `S^rank` generated by `gens`.
///
/// `shifts` assigns a degree to each basis vector (pass `&[]` for all zero);
/// it only steers the sugar strategy and never changes the result.
pub fn module_groebner_basis(
    ring: &Arc<PolyRing>,
    rank: usize,
    gens: &[ModuleElement],
    order: MonomialOrder,
    module_order: ModuleOrder,
    shifts: &[i64],
) -> Result<GroebnerBasis> {
    for g in gens {
        if g.rank() != rank {
            return Err(Error::InvalidArgument(format!(
                "module element of rank {} in a module of rank {rank}",
                g.rank()
            )));
        }
        for c in g.components() {
            check_ring(ring, c).map_err(|_| Error::RingMismatch)?;
        }
    }
    let ctx = Ctx::new(*ring.field(), ring.weights().to_vec(), order, module_order).with_shifts(shifts.to_vec());
    let input: Vec<Vpoly> = gens.iter().map(|g| module_to_v(&ctx, g, 0)).collect();
    let elems = engine::buchberger(&ctx, input, &GbOptions::truncating())?;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        ctx,
        rank,
        elems,
    })
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ctx.order
    }

    pub fn module_order(&self) -> &ModuleOrder {
        &self.ctx.module
    }

    /// 1 for ideals.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub(crate) fn elems(&self) -> &[Vpoly] {
        &self.elems
    }

    /// Whether the basis generates the whole ring (or module).
    pub fn is_unit(&self) -> bool {
        let mut comps = vec![false; self.rank];
        for g in &self.elems {
            if g[0].mon.is_one() {
                comps[g[0].comp as usize] = true;
            }
        }
        comps.iter().all(|&b| b)
    }

    /// Basis polynomials in ascending order of leading term (ideals only).
    pub fn generators(&self) -> Vec<Polynomial> {
        self.elems.iter().map(|g| v_to_poly(&self.ring, g)).collect()
    }

    pub fn module_generators(&self) -> Vec<ModuleElement> {
        self.elems
            .iter()
            .map(|g| v_to_module(&self.ring, g, 0, self.rank))
            .collect()
    }

    /// Leading monomials with their components.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.elems.iter().map(|g| (g[0].mon.clone(), g[0].comp as usize)).collect()
    }

    /// Leading monomials of an ideal basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|g| g[0].mon.clone()).collect()
    }

    /// Leading monomials of basis elements in component `comp`.
    pub fn leading_monomials_in(&self, comp: usize) -> Vec<Monomial> {
        self.elems
            .iter()
            .filter(|g| g[0].comp as usize == comp)
            .map(|g| g[0].mon.clone())
            .collect()
    }

    /// The remainder of `f` on division by the basis.
    ///
    /// ```
    /// use chernlab::{groebner_basis, MonomialOrder, RingDescriptor};
    ///
    /// let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y"]).unwrap();
    /// let gb = groebner_basis(r.poly_ring(), &r.parse_all(&["x", "y"]).unwrap(), MonomialOrder::Grevlex).unwrap();
    /// assert_eq!(gb.normal_form(&r.parse("1").unwrap()).unwrap(), r.parse("1").unwrap());
    /// assert!(gb.normal_form(&r.parse("x^2 + x*y").unwrap()).unwrap().is_zero());
    /// ```
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.rank != 1 {
            return Err(Error::InvalidArgument("polynomial normal form against a module basis".into()));
        }
        check_ring(&self.ring, f)?;
        let v = poly_to_v(&self.ctx, f, 0);
        Ok(v_to_poly(&self.ring, &engine::reduce(&self.ctx, v, &self.elems)))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether every generator of `other` lies in this ideal.
    pub fn contains_all(&self, others: &[Polynomial]) -> Result<bool> {
        for f in others {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn module_normal_form(&self, v: &ModuleElement) -> Result<ModuleElement> {
        if v.rank() != self.rank {
            return Err(Error::InvalidArgument("rank mismatch".into()));
        }
        for c in v.components() {
            check_ring(&self.ring, c)?;
        }
        let f = module_to_v(&self.ctx, v, 0);
        let r = engine::reduce(&self.ctx, f, &self.elems);
        Ok(v_to_module(&self.ring, &r, 0, self.rank))
    }

    /// Generators of the syzygies among the basis elements (Schreyer's theorem).
    ///
    /// Entry `k` of each syzygy is the coefficient of the `k`-th element of
    /// [`GroebnerBasis::generators`] (or [`GroebnerBasis::module_generators`]).
    ///
    /// ```
    /// use chernlab::{groebner_basis, MonomialOrder, RingDescriptor};
    ///
    /// let r = RingDescriptor::polynomial_ring("S", 32003, &["x", "y"]).unwrap();
    /// let gb = groebner_basis(r.poly_ring(), &r.parse_all(&["x", "y"]).unwrap(), MonomialOrder::Grevlex).unwrap();
    /// let syz = gb.syzygies();
    /// assert_eq!(syz.len(), 1);
    /// assert!(syz[0].dot(&gb.generators()).is_zero());
    /// ```
    pub fn syzygies(&self) -> Vec<ModuleElement> {
        let s = self.elems.len();
        let mut out = Vec::new();
        for i in 0..s {
            for j in (i + 1)..s {
                if self.elems[i][0].comp == self.elems[j][0].comp {
                    out.push(self.schreyer_row(i, j));
                }
            }
        }
        out
    }

    fn schreyer_row(&self, i: usize, j: usize) -> ModuleElement {
        let ctx = &self.ctx;
        let s = self.elems.len();
        let (gi, gj) = (&self.elems[i], &self.elems[j]);
        let lcm = gi[0].mon.lcm(&gj[0].mon);
        let qi = gi[0].mon.quotient_of(&lcm).unwrap();
        let qj = gj[0].mon.quotient_of(&lcm).unwrap();
        let a = ctx.mul_term(gi, &qi, 1);
        let sp = ctx.sub_mul(&a, 1, &qj, gj);
        let (quots, _) = engine::reduce_tracked(ctx, sp, &self.elems);
        let field = &ctx.field;
        let mut parts: Vec<Vec<(Monomial, FieldElement)>> = quots
            .into_iter()
            .map(|q| q.into_iter().map(|(m, c)| (m, field.neg(c))).collect())
            .collect();
        parts[i].push((qi, 1));
        parts[j].push((qj, field.neg(1)));
        debug_assert_eq!(parts.len(), s);
        ModuleElement::new(parts.into_iter().map(|p| Polynomial::from_terms(&self.ring, p)).collect())
    }
}

/// Generators of the syzygy module of `gens` (elements of `S^rank`).
///
/// Computed from a Gröbner basis of the module generated by `(g_i, e_i)` in
/// `S^rank ⊕ S^k`, ordered so that the first block dominates; basis elements
/// vanishing on the first block are a Gröbner basis of the syzygies.
pub fn syzygies_of(ring: &Arc<PolyRing>, rank: usize, gens: &[ModuleElement], shifts: &[i64]) -> Result<Vec<ModuleElement>> {
    let k = gens.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let ctx0 = Ctx::new(*ring.field(), ring.weights().to_vec(), MonomialOrder::Grevlex, ModuleOrder::pot(rank))
        .with_shifts(shifts.to_vec());
    let mut all_shifts: Vec<i64> = (0..rank).map(|c| shifts.get(c).copied().unwrap_or(0)).collect();
    for g in gens {
        let v = module_to_v(&ctx0, g, 0);
        all_shifts.push(if v.is_empty() { 0 } else { ctx0.max_degree(&v) });
    }
    let total = rank + k;
    // first block above the second, each block ordered e_0 > e_1 > ...
    let priority: Vec<u32> = (0..total as u32).rev().collect();
    let ctx = Ctx::new(
        *ring.field(),
        ring.weights().to_vec(),
        MonomialOrder::Grevlex,
        ModuleOrder::Pot(priority),
    )
    .with_shifts(all_shifts);
    let input: Vec<Vpoly> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut t = module_to_v(&ctx, g, 0);
            t.push(Term {
                mon: Monomial::one(ring.nvars()),
                comp: (rank + i) as u32,
                coef: 1,
            });
            ctx.sort(t)
        })
        .collect();
    let gb = engine::buchberger(&ctx, input, &GbOptions::default())?;
    Ok(gb
        .iter()
        .filter(|g| g[0].comp as usize >= rank)
        .map(|g| v_to_module(ring, g, rank as u32, k))
        .collect())
}

/// Ideal version of [`syzygies_of`].
pub fn ideal_syzygies(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Vec<ModuleElement>> {
    let elems: Vec<ModuleElement> = gens.iter().map(|g| ModuleElement::new(vec![g.clone()])).collect();
    syzygies_of(ring, 1, &elems, &[])
}

#[cfg(test)]
mod tests;
