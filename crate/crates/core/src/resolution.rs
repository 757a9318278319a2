//! Free resolutions over `S`, the modules `Ext^i_S(R, S)`, and the local
//! cohomology data they determine.
//!
//! For a graded quotient `R = S/J` of `S = k[x_1..x_n]`, graded local duality
//! gives `h_j(R) = ℓ(Ext^{n-j}_S(R, S))` and `r_j(R) = μ(Ext^{n-j}_S(R, S))`,
//! where `r_j` is the socle dimension of `H^j_m(R)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{module_groebner_basis, syzygies_of, GroebnerBasis, ModuleElement, ModuleOrder};
use crate::ideal::{
    colon, intersect, krull_dimension, module_colength, module_dimension, module_length, saturate, Ideal, LengthValue,
    Scope,
};
use crate::linalg::{self, SpVec};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, RingDescriptor};

/// `F_0 <- F_1 <- ... <- F_l` with `F_0 = S` and `coker(F_1 -> F_0) = R`.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    /// `maps[i]` lists the images of the basis of `F_{i+1}` in `F_i`.
    pub maps: Vec<Vec<ModuleElement>>,
    /// Degrees of the basis vectors of each `F_i`.
    pub degrees: Vec<Vec<i64>>,
    pub minimal: bool,
}

impl FreeResolution {
    /// Ranks of `F_0, F_1, ...`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Whether consecutive maps compose to zero.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[1].iter().all(|v| v.apply(&w[0]).is_zero()))
    }
}

fn element_degree(v: &ModuleElement, shifts: &[i64]) -> i64 {
    for (c, p) in v.components().iter().enumerate() {
        if let Some(d) = p.degree() {
            return d as i64 + shifts.get(c).copied().unwrap_or(0);
        }
    }
    0
}

/// Minimal homogeneous generators of the submodule spanned by `elems`,
/// chosen by increasing degree with membership tests.
fn minimal_generators(ring: &Arc<PolyRing>, rank: usize, shifts: &[i64], elems: Vec<ModuleElement>) -> Result<Vec<ModuleElement>> {
    let mut sorted: Vec<(i64, usize, ModuleElement)> = elems
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (element_degree(&v, shifts), i, v))
        .collect();
    sorted.sort_by_key(|(d, i, _)| (*d, *i));
    let mut kept: Vec<ModuleElement> = Vec::new();
    let mut gb: Option<GroebnerBasis> = None;
    for (_, _, v) in sorted {
        if let Some(g) = &gb {
            if g.module_normal_form(&v)?.is_zero() {
                continue;
            }
        }
        kept.push(v);
        gb = Some(module_groebner_basis(
            ring,
            rank,
            &kept,
            MonomialOrder::Grevlex,
            ModuleOrder::pot(rank),
            shifts,
        )?);
    }
    Ok(kept)
}

/// Free resolution of `R = S/J`; with `minimal` the Betti numbers are those of `R`.
///
/// ```
/// use chernlab::{free_resolution, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("K", 32003, &["x", "y", "z"], None, &["x", "y"]).unwrap();
/// assert_eq!(free_resolution(&r, true).unwrap().betti_numbers(), vec![1, 2, 1]);
/// ```
pub fn free_resolution(ring: &RingDescriptor, minimal: bool) -> Result<FreeResolution> {
    if !ring.is_graded() {
        return Err(Error::precondition("free_resolution", "homogeneous relations"));
    }
    let s = ring.poly_ring();
    let n = s.nvars();
    let jgb = ring.relations_gb();
    if jgb.is_unit() {
        return Err(Error::InvalidRing("the defining ideal is the unit ideal".into()));
    }
    let mut degrees: Vec<Vec<i64>> = vec![vec![0]];
    let mut maps: Vec<Vec<ModuleElement>> = Vec::new();
    let first: Vec<ModuleElement> = if minimal {
        minimal_generators(
            s,
            1,
            &[0],
            ring.relations().iter().map(|f| ModuleElement::new(vec![f.clone()])).collect(),
        )?
    } else {
        jgb.generators().into_iter().map(|f| ModuleElement::new(vec![f])).collect()
    };
    let mut current = first;
    let mut rank = 1;
    while !current.is_empty() {
        if maps.len() >= n {
            return Err(Error::ResourceCap {
                stage: "free resolution".into(),
                detail: format!("length exceeds {n}"),
            });
        }
        let shifts = degrees.last().unwrap().clone();
        let next_degrees: Vec<i64> = current.iter().map(|v| element_degree(v, &shifts)).collect();
        let syz = syzygies_of(s, rank, &current, &shifts)?;
        // the kernel at step n is free, so minimal generators end the resolution
        let syz = if minimal || maps.len() + 2 >= n {
            minimal_generators(s, current.len(), &next_degrees, syz)?
        } else {
            syz
        };
        rank = current.len();
        maps.push(current);
        degrees.push(next_degrees);
        current = syz;
    }
    Ok(FreeResolution {
        maps,
        degrees,
        minimal,
    })
}

/// One `Ext^i_S(R, S)`, presented as `S^generators / relations`.
#[derive(Debug, Clone)]
pub struct ExtModule {
    pub index: usize,
    /// Number of generators in the presentation.
    pub generators: usize,
    /// Gröbner basis of the relation module in `S^generators`.
    pub relations: GroebnerBasis,
    /// Krull dimension; `None` for the zero module.
    pub dimension: Option<usize>,
    /// `None` when infinite.
    pub length: Option<u64>,
    /// Minimal number of generators.
    pub mu: u64,
    /// Generators of `Ext^i` as elements of `F_i^*` (only the first
    /// `generators` of them are used by the presentation).
    pub cycles: Vec<ModuleElement>,
}

impl ExtModule {
    pub fn is_zero(&self) -> bool {
        self.dimension.is_none()
    }

    pub fn has_finite_length(&self) -> bool {
        self.length.is_some()
    }

    /// `ann_S Ext^i`.
    pub fn annihilator(&self, ring: &RingDescriptor) -> Result<Ideal> {
        annihilator(ring, &self.relations)
    }
}

/// Summary of all `Ext^i_S(R, S)`, `0 <= i <= n`.
#[derive(Debug, Clone)]
pub struct ExtReport {
    pub nvars: usize,
    pub dimension: usize,
    pub modules: Vec<ExtModule>,
}

/// Serializable numbers of an [`ExtReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtSummary {
    pub index: usize,
    pub dimension: Option<usize>,
    pub length: Option<u64>,
    pub mu: u64,
}

impl ExtReport {
    pub fn ext(&self, i: usize) -> &ExtModule {
        &self.modules[i]
    }

    /// `h_j(R) = ℓ(H^j_m(R))`, `None` when infinite.
    pub fn h(&self, j: usize) -> Option<u64> {
        self.dual(j).map_or(Some(0), |m| m.length)
    }

    /// `r_j(R)`, the socle dimension of `H^j_m(R)`.
    pub fn r(&self, j: usize) -> u64 {
        self.dual(j).map_or(0, |m| m.mu)
    }

    fn dual(&self, j: usize) -> Option<&ExtModule> {
        self.nvars.checked_sub(j).and_then(|i| self.modules.get(i))
    }

    pub fn summary(&self) -> Vec<ExtSummary> {
        self.modules
            .iter()
            .map(|m| ExtSummary {
                index: m.index,
                dimension: m.dimension,
                length: m.length,
                mu: m.mu,
            })
            .collect()
    }
}

fn transpose_rows(cols: &[ModuleElement], rows: usize) -> Vec<ModuleElement> {
    // row j of the matrix whose k-th column is cols[k]
    (0..rows)
        .map(|j| ModuleElement::new(cols.iter().map(|c| c.component(j).clone()).collect()))
        .collect()
}

fn constant_rank(field: crate::field::PrimeField, cols: &[ModuleElement]) -> usize {
    let columns: Vec<SpVec> = cols
        .iter()
        .map(|v| {
            v.components()
                .iter()
                .enumerate()
                .filter_map(|(i, p)| {
                    let c = p.constant_term();
                    (c != 0).then_some((i as u32, c))
                })
                .collect()
        })
        .collect();
    linalg::rank(field, columns)
}

/// `Ext^i_S(R, S)` for all `i`, from the minimal resolution.
///
/// ```
/// use chernlab::{ext_report, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("B", 32003, &["x", "y", "u", "v"], None, &["x*u", "x*v", "y*u", "y*v"]).unwrap();
/// let e = ext_report(&r).unwrap();
/// assert_eq!((e.h(1), e.r(1), e.r(2), e.h(0)), (Some(1), 1, 2, Some(0)));
/// ```
pub fn ext_report(ring: &RingDescriptor) -> Result<&ExtReport> {
    ring.cached_ext(|| compute_ext(ring))
}

fn compute_ext(ring: &RingDescriptor) -> Result<ExtReport> {
    let s = ring.poly_ring();
    let n = s.nvars();
    let d = krull_dimension(ring)?;
    let res = free_resolution(ring, true)?;
    let betti = res.betti_numbers();
    let field = *s.field();
    let mut modules = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let bi = betti.get(i).copied().unwrap_or(0);
        if bi == 0 {
            modules.push(zero_ext(s, i));
            continue;
        }
        let dual_shifts: Vec<i64> = res.degrees[i].iter().map(|a| -a).collect();
        // cycles: kernel of d_{i+1}^T on F_i^*
        let cycles: Vec<ModuleElement> = match res.maps.get(i) {
            Some(next) => {
                let rows = transpose_rows(next, bi);
                let next_shifts: Vec<i64> = res.degrees[i + 1].iter().map(|a| -a).collect();
                syzygies_of(s, next.len(), &rows, &next_shifts)?
            }
            None => (0..bi).map(|j| ModuleElement::unit(s, bi, j)).collect(),
        };
        let cycles = minimal_generators(s, bi, &dual_shifts, cycles)?;
        // boundaries: image of d_i^T
        let boundaries: Vec<ModuleElement> = if i == 0 {
            Vec::new()
        } else {
            transpose_rows(&res.maps[i - 1], res.degrees[i - 1].len())
        };
        let a = cycles.len();
        if a == 0 {
            modules.push(zero_ext(s, i));
            continue;
        }
        // relations among the cycles modulo boundaries: first block of syz(cycles | boundaries)
        let mut all = cycles.clone();
        all.extend(boundaries.iter().cloned());
        let syz = syzygies_of(s, bi, &all, &dual_shifts)?;
        let rels: Vec<ModuleElement> = syz
            .into_iter()
            .map(|v| ModuleElement::new(v.into_components().into_iter().take(a).collect()))
            .filter(|v| !v.is_zero())
            .collect();
        let cycle_degrees: Vec<i64> = cycles.iter().map(|v| element_degree(v, &dual_shifts)).collect();
        let gb = module_groebner_basis(s, a, &rels, MonomialOrder::Grevlex, ModuleOrder::pot(a), &cycle_degrees)?;
        let dimension = module_dimension(&gb);
        let length = if dimension.is_none() { Some(0) } else { module_colength(&gb)? };
        let mu = (a - constant_rank(field, &rels)) as u64;
        modules.push(ExtModule {
            index: i,
            generators: a,
            relations: gb,
            dimension,
            length,
            mu: if dimension.is_none() { 0 } else { mu },
            cycles,
        });
    }
    Ok(ExtReport {
        nvars: n,
        dimension: d,
        modules,
    })
}

fn zero_ext(s: &Arc<PolyRing>, i: usize) -> ExtModule {
    let one = ModuleElement::new(vec![Polynomial::one(s)]);
    let gb = module_groebner_basis(s, 1, &[one], MonomialOrder::Grevlex, ModuleOrder::pot(1), &[]).expect("trivial basis");
    ExtModule {
        index: i,
        generators: 1,
        relations: gb,
        dimension: None,
        length: Some(0),
        mu: 0,
        cycles: Vec::new(),
    }
}

/// `ann_S (S^a / N)` for a module basis of `N`: the intersection over the
/// components `c` of `N : e_c`, each read off a position-over-term basis in
/// which `e_c` is the smallest component.
fn annihilator(ring: &RingDescriptor, rel: &GroebnerBasis) -> Result<Ideal> {
    let s = ring.poly_ring();
    let a = rel.rank();
    let gens = rel.module_generators();
    let mut acc: Option<Ideal> = None;
    for c in 0..a {
        let gb = module_groebner_basis(s, a, &gens, MonomialOrder::Grevlex, ModuleOrder::pot_with_last(a, c), &[])?;
        let part: Vec<Polynomial> = gb
            .module_generators()
            .into_iter()
            .filter(|v| v.components().iter().enumerate().all(|(k, p)| k == c || p.is_zero()))
            .map(|v| v.component(c).clone())
            .collect();
        let part = Ideal::ambient(ring, part)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::trusted(ring, vec![Polynomial::one(s)], Scope::Ambient)))
}

/// `ℓ(H^0_m(R)) = ℓ((J : m^∞)/J)`, computed directly by saturation.
///
/// ```
/// use chernlab::{h0_direct, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("E", 32003, &["x", "y"], None, &["x^2", "x*y"]).unwrap();
/// assert_eq!(h0_direct(&r).unwrap().get(), 1);
/// ```
pub fn h0_direct(ring: &RingDescriptor) -> Result<LengthValue> {
    let j = Ideal::ambient(ring, ring.relations().to_vec())?;
    let m = Ideal::maximal(ring);
    let sat = saturate(&j, &Ideal::ambient(ring, m.gens().to_vec())?)?;
    module_length(sat.gens(), &j)?
        .map(LengthValue)
        .ok_or_else(|| Error::ResourceCap {
            stage: "h0_direct".into(),
            detail: "(J : m^∞)/J reported infinite length".into(),
        })
}

/// The unmixed component `u` of `R` with its dimension.
#[derive(Debug, Clone)]
pub struct UnmixedComponent {
    /// `u` as an ideal of `R` (generators outside `J`).
    pub ideal: Ideal,
    /// The equidimensional hull `ann Ext^{n-d}` as an ideal of `S`.
    pub hull: Ideal,
    /// `dim u`; `None` when `u = 0`.
    pub dimension: Option<usize>,
}

impl UnmixedComponent {
    pub fn is_zero(&self) -> bool {
        self.dimension.is_none()
    }
}

/// `u = ann_S(Ext^{n-d}_S(R, S))/J`.
///
/// ```
/// use chernlab::{unmixed_component, Ideal, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("R", 32003, &["x", "y", "z", "w"], None, &["x*w", "y*w", "z*w"]).unwrap();
/// let u = unmixed_component(&r).unwrap();
/// assert!(u.ideal.same_as(&Ideal::parse(&r, &["w"]).unwrap()));
/// assert_eq!(u.dimension, Some(1));
/// ```
pub fn unmixed_component(ring: &RingDescriptor) -> Result<UnmixedComponent> {
    let ext = ext_report(ring)?;
    let c = ext.nvars - ext.dimension;
    let hull = ext.ext(c).annihilator(ring)?;
    let u = Ideal::new(ring, hull.gens().to_vec())?.simplified();
    let j = Ideal::ambient(ring, ring.relations().to_vec())?;
    let dimension = if u.gens().is_empty() {
        None
    } else {
        let ann = colon(&j, &Ideal::ambient(ring, hull.gens().to_vec())?)?;
        crate::ideal::dimension(&ann)
    };
    Ok(UnmixedComponent {
        ideal: u,
        hull,
        dimension,
    })
}

/// Verdict of [`is_generalized_cm`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcmReport {
    pub generalized_cm: bool,
    /// `h_j` for `j < d` (`None` = infinite).
    pub h: Vec<Option<u64>>,
    /// `r_j` for `j <= d`.
    pub r: Vec<u64>,
}

/// Whether every `H^j_m(R)`, `j < d`, has finite length.
pub fn is_generalized_cm(ring: &RingDescriptor) -> Result<GcmReport> {
    let ext = ext_report(ring)?;
    let d = ext.dimension;
    let h: Vec<Option<u64>> = (0..d).map(|j| ext.h(j)).collect();
    let r: Vec<u64> = (0..=d).map(|j| ext.r(j)).collect();
    Ok(GcmReport {
        generalized_cm: h.iter().all(|x| x.is_some()),
        h,
        r,
    })
}
