//! Buchberger's algorithm on vector polynomials.
//!
//! Ideals are rank-one modules, so a single engine serves ideals, submodules of
//! free modules and syzygy computations. Pairs are selected by the normal
//! strategy (smallest sugar degree first) and pruned with the Gebauer–Möller
//! criteria.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::MonomialOrder;

/// A term `c * m * e_comp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub mon: Monomial,
    pub comp: u32,
    pub coef: FieldElement,
}

/// Terms sorted strictly descending in the context's module order.
pub(crate) type Vpoly = Vec<Term>;

/// How components compare in a module order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleOrder {
    /// Position over term. `priority[c]` ranks component `c`; larger wins.
    Pot(Vec<u32>),
    /// Term over position, ties broken by smaller component index.
    Top,
}

impl ModuleOrder {
    /// Position over term with `e_0 > e_1 > ... > e_{rank-1}`.
    pub fn pot(rank: usize) -> Self {
        ModuleOrder::Pot((0..rank as u32).rev().collect())
    }

    /// Position over term where component `last` is the smallest.
    pub fn pot_with_last(rank: usize, last: usize) -> Self {
        let mut pr: Vec<u32> = (1..=rank as u32).rev().collect();
        pr[last] = 0;
        ModuleOrder::Pot(pr)
    }
}

/// Everything needed to compare and combine terms.
#[derive(Debug, Clone)]
pub(crate) struct Ctx {
    pub field: PrimeField,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
    pub module: ModuleOrder,
    /// Degree shift of each basis vector; missing entries are zero.
    pub shifts: Vec<i64>,
    unit_weights: bool,
}

impl Ctx {
    pub fn new(field: PrimeField, weights: Vec<u32>, order: MonomialOrder, module: ModuleOrder) -> Self {
        let unit_weights = weights.iter().all(|&w| w == 1);
        Ctx {
            field,
            weights,
            order,
            module,
            shifts: Vec::new(),
            unit_weights,
        }
    }

    pub fn with_shifts(mut self, shifts: Vec<i64>) -> Self {
        self.shifts = shifts;
        self
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    #[inline]
    pub fn mdeg(&self, m: &Monomial) -> u64 {
        if self.unit_weights {
            m.degree()
        } else {
            m.weighted_degree(&self.weights)
        }
    }

    #[inline]
    pub fn term_degree(&self, m: &Monomial, comp: u32) -> i64 {
        self.mdeg(m) as i64 + self.shifts.get(comp as usize).copied().unwrap_or(0)
    }

    #[inline]
    fn comp_cmp(&self, a: u32, b: u32) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        match &self.module {
            ModuleOrder::Pot(pr) => {
                let pa = pr.get(a as usize).copied().unwrap_or(0);
                let pb = pr.get(b as usize).copied().unwrap_or(0);
                pa.cmp(&pb).then(b.cmp(&a))
            }
            ModuleOrder::Top => b.cmp(&a),
        }
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        match self.module {
            ModuleOrder::Pot(_) => self.comp_cmp(ac, bc).then_with(|| self.mon_cmp(am, bm)),
            ModuleOrder::Top => self.mon_cmp(am, bm).then_with(|| self.comp_cmp(ac, bc)),
        }
    }

    #[inline]
    fn mon_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.unit_weights && self.order == MonomialOrder::Grevlex {
            crate::order::grevlex_unit(a, b)
        } else {
            self.order.compare(a, b, &self.weights)
        }
    }

    pub fn sort(&self, mut terms: Vec<Term>) -> Vpoly {
        terms.sort_by(|a, b| self.cmp(&b.mon, b.comp, &a.mon, a.comp));
        let mut out: Vpoly = Vec::with_capacity(terms.len());
        for t in terms {
            if t.coef == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.mon == t.mon && last.comp == t.comp => {
                    last.coef = self.field.add(last.coef, t.coef);
                    if last.coef == 0 {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        out
    }

    /// `f - c * m * g`, both sorted.
    pub fn sub_mul(&self, f: &[Term], c: FieldElement, m: &Monomial, g: &[Term]) -> Vpoly {
        let field = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let neg_c = field.neg(c);
        let mut pending: Option<Term> = None;
        while i < f.len() || j < g.len() {
            if pending.is_none() && j < g.len() {
                pending = Some(Term {
                    mon: g[j].mon.mul(m),
                    comp: g[j].comp,
                    coef: field.mul(g[j].coef, neg_c),
                });
            }
            match (&pending, f.get(i)) {
                (Some(p), Some(a)) => match self.cmp(&a.mon, a.comp, &p.mon, p.comp) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = field.add(a.coef, p.coef);
                        if s != 0 {
                            out.push(Term {
                                mon: a.mon.clone(),
                                comp: a.comp,
                                coef: s,
                            });
                        }
                        pending = None;
                        i += 1;
                        j += 1;
                    }
                },
                (Some(_), None) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                }
                (None, Some(a)) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, None) => break,
            }
        }
        out
    }

    pub fn add(&self, f: &[Term], g: &[Term]) -> Vpoly {
        let one = Monomial::one(self.nvars());
        self.sub_mul(f, self.field.neg(1), &one, g)
    }

    pub fn scale(&self, f: &[Term], c: FieldElement) -> Vpoly {
        if c == 0 {
            return Vec::new();
        }
        f.iter()
            .map(|t| Term {
                mon: t.mon.clone(),
                comp: t.comp,
                coef: self.field.mul(t.coef, c),
            })
            .collect()
    }

    pub fn mul_term(&self, f: &[Term], m: &Monomial, c: FieldElement) -> Vpoly {
        if c == 0 {
            return Vec::new();
        }
        f.iter()
            .map(|t| Term {
                mon: t.mon.mul(m),
                comp: t.comp,
                coef: self.field.mul(t.coef, c),
            })
            .collect()
    }

    pub fn monic(&self, f: Vpoly) -> Vpoly {
        match f.first() {
            Some(t) if t.coef != 1 => {
                let inv = self.field.inv(t.coef);
                self.scale(&f, inv)
            }
            _ => f,
        }
    }

    /// Whether all terms share one degree (with shifts).
    pub fn is_homogeneous(&self, f: &[Term]) -> bool {
        let mut it = f.iter().map(|t| self.term_degree(&t.mon, t.comp));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn max_degree(&self, f: &[Term]) -> i64 {
        f.iter().map(|t| self.term_degree(&t.mon, t.comp)).max().unwrap_or(0)
    }
}

/// Find an element of `basis` whose leading term divides `(m, comp)`.
#[inline]
fn find_reducer<'b>(basis: &'b [Vpoly], m: &Monomial, comp: u32) -> Option<&'b Vpoly> {
    basis
        .iter()
        .find(|g| g[0].comp == comp && g[0].mon.divides(m))
}

/// Full reduction of `f` by `basis` (all terms, not just the head).
pub(crate) fn reduce(ctx: &Ctx, f: Vpoly, basis: &[Vpoly]) -> Vpoly {
    reduce_by(ctx, f, |m, c| find_reducer(basis, m, c))
}

fn reduce_by<'b>(ctx: &Ctx, f: Vpoly, mut finder: impl FnMut(&Monomial, u32) -> Option<&'b Vpoly>) -> Vpoly {
    let mut rem: Vpoly = Vec::new();
    let mut acc = Geobucket::new(ctx);
    acc.add(f);
    while let Some(head) = acc.pop_leading() {
        match finder(&head.mon, head.comp) {
            Some(g) => {
                let q = g[0].mon.quotient_of(&head.mon).unwrap();
                let c = ctx.field.mul(head.coef, ctx.field.inv(g[0].coef));
                acc.add(ctx.mul_term(&g[1..], &q, ctx.field.neg(c)));
            }
            None => rem.push(head),
        }
    }
    rem
}

/// Sum of sorted polynomials kept in buckets of geometrically growing size,
/// so that repeated additions of short polynomials stay cheap.
struct Geobucket<'a> {
    ctx: &'a Ctx,
    // each bucket is a sorted polynomial; entries before `start` are consumed
    buckets: Vec<(Vpoly, usize)>,
}

impl<'a> Geobucket<'a> {
    fn new(ctx: &'a Ctx) -> Self {
        Geobucket {
            ctx,
            buckets: Vec::new(),
        }
    }

    fn slot(len: usize) -> usize {
        let mut i = 0;
        let mut cap = 8;
        while len > cap {
            cap *= 4;
            i += 1;
        }
        i
    }

    fn add(&mut self, mut p: Vpoly) {
        if p.is_empty() {
            return;
        }
        let mut i = Self::slot(p.len());
        loop {
            while self.buckets.len() <= i {
                self.buckets.push((Vec::new(), 0));
            }
            let (b, start) = &mut self.buckets[i];
            if *start >= b.len() {
                *b = p;
                *start = 0;
                return;
            }
            p = self.ctx.add(&b[*start..], &p);
            b.clear();
            *start = 0;
            if p.is_empty() {
                return;
            }
            i = Self::slot(p.len()).max(i);
        }
    }

    fn pop_leading(&mut self) -> Option<Term> {
        loop {
            let mut best: Option<usize> = None;
            for (i, (b, start)) in self.buckets.iter().enumerate() {
                let Some(t) = b.get(*start) else { continue };
                best = match best {
                    None => Some(i),
                    Some(j) => {
                        let u = &self.buckets[j].0[self.buckets[j].1];
                        if self.ctx.cmp(&t.mon, t.comp, &u.mon, u.comp) == Ordering::Greater {
                            Some(i)
                        } else {
                            Some(j)
                        }
                    }
                };
            }
            let j = best?;
            let (b, start) = &mut self.buckets[j];
            let mut head = b[*start].clone();
            *start += 1;
            for (i, (b, start)) in self.buckets.iter_mut().enumerate() {
                if i == j {
                    continue;
                }
                if let Some(t) = b.get(*start) {
                    if t.comp == head.comp && t.mon == head.mon {
                        head.coef = self.ctx.field.add(head.coef, t.coef);
                        *start += 1;
                    }
                }
            }
            if head.coef != 0 {
                return Some(head);
            }
        }
    }
}

/// Reduction recording the quotients: `f = sum q_k basis[k] + remainder`.
pub(crate) fn reduce_tracked(ctx: &Ctx, f: Vpoly, basis: &[Vpoly]) -> (Vec<Vec<(Monomial, FieldElement)>>, Vpoly) {
    let mut quotients: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); basis.len()];
    let mut rem: Vpoly = Vec::new();
    let mut acc = Geobucket::new(ctx);
    acc.add(f);
    while let Some(head) = acc.pop_leading() {
        let found = basis
            .iter()
            .position(|g| g[0].comp == head.comp && g[0].mon.divides(&head.mon));
        match found {
            Some(k) => {
                let g = &basis[k];
                let q = g[0].mon.quotient_of(&head.mon).unwrap();
                let c = ctx.field.mul(head.coef, ctx.field.inv(g[0].coef));
                acc.add(ctx.mul_term(&g[1..], &q, ctx.field.neg(c)));
                quotients[k].push((q, c));
            }
            None => rem.push(head),
        }
    }
    (quotients, rem)
}

#[derive(Debug, Clone, Default)]
pub struct GbOptions {
    /// Maximum number of S-pairs reduced before giving up.
    pub pair_cap: Option<usize>,
    /// Allow stopping early once the leading ideal contains every monomial of
    /// large degree (homogeneous zero-dimensional input only).
    pub truncate: bool,
}

impl GbOptions {
    pub fn truncating() -> Self {
        GbOptions {
            pair_cap: None,
            truncate: true,
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: i64,
}

struct Elem {
    poly: Vpoly,
    sugar: i64,
}

/// Reduced Gröbner basis of the module generated by `input`.
pub(crate) fn buchberger(ctx: &Ctx, input: Vec<Vpoly>, opts: &GbOptions) -> Result<Vec<Vpoly>> {
    let mut input: Vec<Vpoly> = input.into_iter().filter(|f| !f.is_empty()).collect();
    if input.is_empty() {
        return Ok(Vec::new());
    }
    let homogeneous = input.iter().all(|f| ctx.is_homogeneous(f));
    let single_comp = input.iter().all(|f| f.iter().all(|t| t.comp == input[0][0].comp));
    let can_truncate = opts.truncate && homogeneous && single_comp && ctx.order.is_degree_compatible();
    // low degrees first; ties by leading term for determinism
    input.sort_by(|a, b| {
        ctx.max_degree(a)
            .cmp(&ctx.max_degree(b))
            .then_with(|| ctx.cmp(&a[0].mon, a[0].comp, &b[0].mon, b[0].comp))
    });

    let mut elems: Vec<Elem> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut processed = 0usize;
    let mut basis_cache: Vec<Vpoly> = Vec::new();

    let add = |h: Vpoly, sugar: i64, elems: &mut Vec<Elem>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>| {
        let hidx = elems.len();
        let hm = h[0].mon.clone();
        let hc = h[0].comp;
        elems.push(Elem { poly: h, sugar });
        update(ctx, elems, active, pairs, hidx, &hm, hc, single_comp);
    };

    let refresh = |elems: &Vec<Elem>, active: &Vec<usize>| -> Vec<Vpoly> {
        active.iter().map(|&k| elems[k].poly.clone()).collect()
    };

    // seed the basis: reduce each input against what we already have
    let mut pending_inputs: std::collections::VecDeque<Vpoly> = input.into();
    let mut current_degree: Option<i64> = None;

    loop {
        // choose: next input generator or next pair, by sugar
        let next_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| ctx.cmp(&a.lcm, a.comp, &b.lcm, b.comp))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, p)| (k, p.sugar));
        let input_deg = pending_inputs.front().map(|f| ctx.max_degree(f));
        let take_input = match (input_deg, next_pair) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(d), Some((_, s))) => d <= s,
        };
        let degree = if take_input { input_deg.unwrap() } else { next_pair.unwrap().1 };

        if can_truncate && current_degree.map_or(true, |c| degree > c) {
            if current_degree.is_some() && covers_all_monomials_below(ctx, &basis_cache, degree) {
                break;
            }
            current_degree = Some(degree);
        }

        let (s, sugar) = if take_input {
            let f = pending_inputs.pop_front().unwrap();
            let sugar = ctx.max_degree(&f);
            (f, sugar)
        } else {
            let k = next_pair.unwrap().0;
            let p = pairs.swap_remove(k);
            processed += 1;
            if let Some(cap) = opts.pair_cap {
                if processed > cap {
                    return Err(Error::ResourceCap {
                        stage: "Gröbner basis".into(),
                        detail: format!("more than {cap} S-pairs"),
                    });
                }
            }
            (spoly(ctx, &elems[p.i].poly, &elems[p.j].poly, &p.lcm), p.sugar)
        };
        let h = reduce(ctx, s, &basis_cache);
        if h.is_empty() {
            continue;
        }
        let h = ctx.monic(h);
        add(h, sugar, &mut elems, &mut active, &mut pairs);
        basis_cache = refresh(&elems, &active);
    }

    Ok(interreduce(ctx, basis_cache))
}

fn spoly(ctx: &Ctx, f: &Vpoly, g: &Vpoly, lcm: &Monomial) -> Vpoly {
    let qf = f[0].mon.quotient_of(lcm).unwrap();
    let qg = g[0].mon.quotient_of(lcm).unwrap();
    let cf = ctx.field.inv(f[0].coef);
    let cg = ctx.field.inv(g[0].coef);
    let a = ctx.mul_term(&f[1..], &qf, cf);
    ctx.sub_mul(&a, cg, &qg, &g[1..])
}

/// Gebauer–Möller update after adding element `h`.
#[allow(clippy::too_many_arguments)]
fn update(
    ctx: &Ctx,
    elems: &[Elem],
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: usize,
    hm: &Monomial,
    hc: u32,
    product_criterion: bool,
) {
    let hs = elems[h].sugar;
    // candidate pairs (g, h) for active g in the same component
    let mut cands: Vec<(usize, Monomial, bool, i64)> = Vec::new();
    for &g in active.iter() {
        let gt = &elems[g].poly[0];
        if gt.comp != hc {
            continue;
        }
        let lcm = gt.mon.lcm(hm);
        // coprime leading terms only guarantee a zero S-polynomial for scalars
        let coprime = product_criterion && gt.mon.gcd_is_one(hm);
        let sg = elems[g].sugar + ctx.mdeg(&lcm) as i64 - ctx.mdeg(&gt.mon) as i64;
        let sh = hs + ctx.mdeg(&lcm) as i64 - ctx.mdeg(hm) as i64;
        cands.push((g, lcm, coprime, sg.max(sh)));
    }
    // chain criterion among new pairs: drop (g,h) if some other (g',h) has lcm dividing strictly
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a == b || !cands[b].1.divides(&cands[a].1) {
                continue;
            }
            if cands[b].1 != cands[a].1 || cands[b].2 || (b < a && !cands[a].2) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut newpairs = Vec::new();
    for (k, (g, lcm, coprime, sugar)) in cands.into_iter().enumerate() {
        if !keep[k] {
            continue;
        }
        if coprime {
            continue;
        }
        newpairs.push(Pair {
            i: g,
            j: h,
            lcm,
            comp: hc,
            sugar,
        });
    }
    // old pairs that h makes redundant (Buchberger's chain criterion)
    pairs.retain(|p| {
        if p.comp != hc || !hm.divides(&p.lcm) {
            return true;
        }
        let li = elems[p.i].poly[0].mon.lcm(hm);
        let lj = elems[p.j].poly[0].mon.lcm(hm);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(newpairs);
    // basis elements whose leading term h divides leave the active set
    active.retain(|&g| {
        let gt = &elems[g].poly[0];
        !(gt.comp == hc && hm.divides(&gt.mon))
    });
    active.push(h);
}

/// Whether the leading ideal contains every monomial of degree in
/// `[degree - max_weight, degree)`, hence every monomial of degree >= that range.
fn covers_all_monomials_below(ctx: &Ctx, basis: &[Vpoly], degree: i64) -> bool {
    if basis.is_empty() {
        return false;
    }
    let n = ctx.nvars();
    let comp = basis[0][0].comp;
    // zero-dimensional at all?
    for i in 0..n {
        if !basis.iter().any(|g| {
            g[0].comp == comp && g[0].mon.exponents()[i] > 0 && g[0].mon.support().all(|k| k == i)
        }) {
            return false;
        }
    }
    let shift = ctx.shifts.get(comp as usize).copied().unwrap_or(0);
    let maxw = *ctx.weights.iter().max().unwrap() as i64;
    let lo = degree - maxw - shift;
    if lo < 0 {
        return false;
    }
    for d in lo..(degree - shift) {
        for m in monomials_of_degree(n, &ctx.weights, d as u64) {
            if !basis.iter().any(|g| g[0].comp == comp && g[0].mon.divides(&m)) {
                return false;
            }
        }
    }
    true
}

/// Minimalize and tail-reduce a Gröbner basis; output sorted ascending by leading term.
pub(crate) fn interreduce(ctx: &Ctx, mut basis: Vec<Vpoly>) -> Vec<Vpoly> {
    basis.retain(|f| !f.is_empty());
    basis.sort_by(|a, b| ctx.cmp(&a[0].mon, a[0].comp, &b[0].mon, b[0].comp));
    let mut minimal: Vec<Vpoly> = Vec::new();
    for f in basis {
        let dominated = minimal
            .iter()
            .any(|g| g[0].comp == f[0].comp && g[0].mon.divides(&f[0].mon));
        if !dominated {
            minimal.push(f);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let f = &minimal[k];
        let others: Vec<Vpoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g.clone())
            .collect();
        let tail = reduce(ctx, f[1..].to_vec(), &others);
        let mut g = Vec::with_capacity(tail.len() + 1);
        g.push(f[0].clone());
        g.extend(tail);
        out.push(ctx.monic(g));
    }
    out
}
