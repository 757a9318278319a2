//! Parameter ideals, stable values, Ξ-samples and ring classification.
//!
//! Deep parameter ideals are random combinations of monomials of a fixed
//! degree, generated from a seed. Everything here is deterministic for a given
//! seed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    fit_binomial, hilbert_coefficients, irreducibility_coefficients, CoefficientVector, FitOptions, LengthTable,
    TableKind,
};
use crate::ideal::{colon, dimension, ideal_power, is_m_primary, krull_dimension, module_length, saturate, Ideal};
use crate::monomial::monomials_of_degree;
use crate::poly::Polynomial;
use crate::resolution::{ext_report, h0_direct, unmixed_component};
use crate::ring::RingDescriptor;
use crate::socle::{colon_maximal, index_of_reducibility};

const RETRIES: usize = 64;

/// Where a parameter ideal came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    User,
    Generated { seed: u64 },
}

/// An m-primary ideal generated by `dim R` elements.
#[derive(Debug, Clone)]
pub struct ParameterIdeal {
    ideal: Ideal,
    depth: u32,
    source: Source,
}

impl ParameterIdeal {
    /// Wraps a user-supplied ideal after checking that it is a parameter ideal.
    pub fn from_ideal(ideal: Ideal) -> Result<Self> {
        let d = krull_dimension(ideal.ring())?;
        if ideal.gens().len() != d {
            return Err(Error::InvalidArgument(format!(
                "a parameter ideal needs {d} generators, got {}",
                ideal.gens().len()
            )));
        }
        if !is_m_primary(&ideal) {
            return Err(Error::NotMPrimary(ideal.to_string()));
        }
        let depth = ideal
            .gens()
            .iter()
            .filter_map(|g| g.terms().iter().map(|(m, _)| m.degree()).min())
            .min()
            .unwrap_or(0) as u32;
        Ok(ParameterIdeal {
            ideal,
            depth,
            source: Source::User,
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The `t` with all generators in `m^t`.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn seed(&self) -> Option<u64> {
        match self.source {
            Source::Generated { seed } => Some(seed),
            Source::User => None,
        }
    }
}

impl fmt::Display for ParameterIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ideal.fmt(f)
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_combination(rng: &mut ChaCha8Rng, ring: &RingDescriptor, polys: &[Polynomial]) -> Polynomial {
    let s = ring.poly_ring();
    let p = s.field().characteristic() as i64;
    let mut acc = Polynomial::zero(s);
    for f in polys {
        let c = rng.random_range(1..p);
        acc = acc.add_ref(&f.scale(s.field().from_i64(c)));
    }
    acc
}

/// A parameter ideal whose generators are seeded random combinations of the
/// monomials of degree `t · max(weights)`.
///
/// ```
/// use chernlab::{deep_parameter_ideal, quotient_length, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("R", 32003, &["x", "y", "z", "w"], None, &["x*w", "y*w", "z*w"]).unwrap();
/// let q = deep_parameter_ideal(&r, 1, 7).unwrap();
/// assert_eq!(q.ideal().gens().len(), 3);
/// assert_eq!(quotient_length(q.ideal()).unwrap().get(), 2);
/// ```
pub fn deep_parameter_ideal(ring: &RingDescriptor, t: u32, seed: u64) -> Result<ParameterIdeal> {
    if t == 0 {
        return Err(Error::precondition("deep_parameter_ideal", "depth t >= 1"));
    }
    let d = krull_dimension(ring)?;
    let s = ring.poly_ring();
    let maxw = s.weights().iter().copied().max().unwrap_or(1) as u64;
    let monomials: Vec<Polynomial> = monomials_of_degree(s.nvars(), s.weights(), t as u64 * maxw)
        .into_iter()
        .map(|m| Polynomial::monomial(s, m, 1))
        .collect();
    let mut rng = rng_for(seed, t as u64);
    let mut gens: Vec<Polynomial> = Vec::with_capacity(d);
    for k in 0..d {
        let mut found = false;
        for _ in 0..RETRIES {
            let g = random_combination(&mut rng, ring, &monomials);
            let mut trial = gens.clone();
            trial.push(g);
            if dimension(&Ideal::new(ring, trial.clone())?) == Some(d - k - 1) {
                gens = trial;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::RetryBudget {
                stage: format!("choosing generator {} of a depth-{t} parameter ideal", k + 1),
            });
        }
    }
    let ideal = Ideal::new(ring, gens)?;
    if !is_m_primary(&ideal) {
        return Err(Error::RetryBudget {
            stage: format!("making a depth-{t} parameter ideal m-primary"),
        });
    }
    Ok(ParameterIdeal {
        ideal,
        depth: t,
        source: Source::Generated { seed },
    })
}

/// Hilbert data of a parameter ideal `q` and of `q : m`.
#[derive(Debug, Clone)]
pub struct ParameterProfile {
    pub q: ParameterIdeal,
    pub colon: Ideal,
    /// `ℓ(R/q)`.
    pub length: u64,
    /// `ir(q)`.
    pub ir: u64,
    pub e: CoefficientVector,
    pub e_colon: CoefficientVector,
    f: OnceLock<std::result::Result<CoefficientVector, Error>>,
    ring: RingDescriptor,
}

impl ParameterProfile {
    pub fn compute(ring: &RingDescriptor, q: &ParameterIdeal) -> Result<Self> {
        let opts = FitOptions::default();
        let colon = colon_maximal(q.ideal())?;
        let length = crate::ideal::quotient_length(q.ideal())?.get();
        let ir = index_of_reducibility(q.ideal())?;
        let e = hilbert_coefficients(ring, q.ideal(), &opts)?.coefficients;
        let e_colon = hilbert_coefficients(ring, &colon, &opts)?.coefficients;
        Ok(ParameterProfile {
            q: q.clone(),
            colon,
            length,
            ir,
            e,
            e_colon,
            f: OnceLock::new(),
            ring: ring.clone(),
        })
    }

    /// `e_1(q : m) - e_1(q)`.
    pub fn chern_gap(&self) -> i64 {
        self.e_colon.get(1) - self.e.get(1)
    }

    /// Irreducibility coefficients `f_i(q)`, fitted on first use.
    pub fn f(&self) -> Result<&CoefficientVector> {
        self.f
            .get_or_init(|| {
                irreducibility_coefficients(&self.ring, self.q.ideal(), &FitOptions::default()).map(|f| f.coefficients)
            })
            .as_ref()
            .map_err(|e| e.clone())
    }
}

/// `e_1(q : m) - e_1(q)`.
pub fn chern_gap(ring: &RingDescriptor, q: &ParameterIdeal) -> Result<i64> {
    let opts = FitOptions::default();
    let e1 = hilbert_coefficients(ring, q.ideal(), &opts)?.coefficients.get(1);
    let e1c = hilbert_coefficients(ring, &colon_maximal(q.ideal())?, &opts)?.coefficients.get(1);
    Ok(e1c - e1)
}

/// One `ℓ(R/q)` against `e_0(q)` comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmCheck {
    pub seed: u64,
    pub length: u64,
    pub e0: i64,
    pub ir: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmVerdict {
    pub cohen_macaulay: bool,
    pub checks: Vec<CmCheck>,
}

fn cm_check(ring: &RingDescriptor, seed: u64) -> Result<CmCheck> {
    let q = deep_parameter_ideal(ring, 1, seed)?;
    let length = crate::ideal::quotient_length(q.ideal())?.get();
    let e0 = hilbert_coefficients(ring, q.ideal(), &FitOptions::default())?.coefficients.get(0);
    let ir = index_of_reducibility(q.ideal())?;
    Ok(CmCheck { seed, length, e0, ir })
}

/// `ℓ(R/q) = e_0(q)` for two independently generated parameter ideals.
///
/// ```
/// use chernlab::{cm_test, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("H", 32003, &["x", "y", "z"], None, &["y^2 - x*z"]).unwrap();
/// assert!(cm_test(&r, 0).unwrap().cohen_macaulay);
/// ```
pub fn cm_test(ring: &RingDescriptor, seed: u64) -> Result<CmVerdict> {
    if krull_dimension(ring)? == 0 {
        return Err(Error::precondition("cm_test", "dimension at least 1"));
    }
    let checks = [seed, seed.wrapping_add(1)]
        .par_iter()
        .map(|&s| cm_check(ring, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(CmVerdict {
        cohen_macaulay: checks.iter().all(|c| c.length as i64 == c.e0),
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinVerdict {
    pub gorenstein: bool,
    pub cm: CmVerdict,
    pub ir: u64,
}

/// Cohen–Macaulay with `ir(q) = 1`.
pub fn gorenstein_test(ring: &RingDescriptor, seed: u64) -> Result<GorensteinVerdict> {
    let cm = cm_test(ring, seed)?;
    let ir = cm.checks[0].ir;
    Ok(GorensteinVerdict {
        gorenstein: cm.cohen_macaulay && ir == 1,
        cm,
        ir,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrSample {
    pub depth: u32,
    pub seed: u64,
    pub ir: u64,
}

/// Estimated stable value `N̂(R)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableValue {
    pub value: u64,
    /// First depth of the agreeing pair.
    pub depth: u32,
    pub samples: Vec<IrSample>,
}

/// `ir(q_t)` over depths `t = 1, 2, ...` with two seeds each, until two
/// consecutive depths agree.
///
/// ```
/// use chernlab::{stable_value_estimate, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("E", 32003, &["x", "y"], None, &["x^2", "x*y"]).unwrap();
/// assert_eq!(stable_value_estimate(&r, 3, 0).unwrap().value, 2);
/// ```
pub fn stable_value_estimate(ring: &RingDescriptor, t_max: u32, seed: u64) -> Result<StableValue> {
    if t_max < 3 {
        return Err(Error::precondition("stable_value_estimate", "t_max >= 3"));
    }
    let mut samples: Vec<IrSample> = Vec::new();
    let mut prev: Option<u64> = None;
    for t in 1..=t_max {
        let at: Vec<IrSample> = [seed, seed.wrapping_add(1)]
            .par_iter()
            .map(|&s| {
                let q = deep_parameter_ideal(ring, t, s)?;
                Ok(IrSample {
                    depth: t,
                    seed: s,
                    ir: index_of_reducibility(q.ideal())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let agreed = (at[0].ir == at[1].ir).then_some(at[0].ir);
        samples.extend(at);
        if let (Some(a), Some(b)) = (prev, agreed) {
            if a == b {
                return Ok(StableValue {
                    value: a,
                    depth: t - 1,
                    samples,
                });
            }
        }
        prev = agreed;
    }
    Err(Error::NoStabilization {
        kind: "stable value".into(),
        max_n: t_max as usize,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiValue {
    pub depth: u32,
    pub seed: u64,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub depth: u32,
    pub seed: u64,
    pub error: String,
}

/// Values of `e_i(q : m)` over generated parameter ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiSample {
    pub i: usize,
    pub values: Vec<XiValue>,
    pub failures: Vec<TrialFailure>,
    pub depths: Vec<u32>,
    pub distinct: usize,
}

impl XiSample {
    pub fn values_at(&self, depth: u32) -> Vec<i64> {
        self.values.iter().filter(|v| v.depth == depth).map(|v| v.value).collect()
    }

    pub fn distinct_values(&self) -> BTreeSet<i64> {
        self.values.iter().map(|v| v.value).collect()
    }
}

/// `e_i(q : m)` for `trials` generated `q` at each depth in `depths`.
pub fn xi_sample(
    ring: &RingDescriptor,
    i: usize,
    trials: usize,
    depths: RangeInclusive<u32>,
    seed: u64,
) -> Result<XiSample> {
    let d = krull_dimension(ring)?;
    if i == 0 || i > d {
        return Err(Error::precondition("xi_sample", "1 <= i <= dim R"));
    }
    let jobs: Vec<(u32, u64)> = depths
        .clone()
        .flat_map(|t| (0..trials as u64).map(move |k| (t, seed.wrapping_add(k))))
        .collect();
    let outcomes: Vec<(u32, u64, Result<i64>)> = jobs
        .par_iter()
        .map(|&(t, s)| {
            let run = || -> Result<i64> {
                let q = deep_parameter_ideal(ring, t, s)?;
                let colon = colon_maximal(q.ideal())?;
                Ok(hilbert_coefficients(ring, &colon, &FitOptions::default())?.coefficients.get(i))
            };
            (t, s, run())
        })
        .collect();
    let mut values = Vec::new();
    let mut failures = Vec::new();
    for (depth, seed, r) in outcomes {
        match r {
            Ok(value) => values.push(XiValue { depth, seed, value }),
            Err(e) => failures.push(TrialFailure {
                depth,
                seed,
                error: e.to_string(),
            }),
        }
    }
    let distinct = values.iter().map(|v| v.value).collect::<BTreeSet<_>>().len();
    Ok(XiSample {
        i,
        values,
        failures,
        depths: depths.collect(),
        distinct,
    })
}

/// Comparison recorded in a ledger entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

/// A checked statement with the numbers behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub id: String,
    pub holds: bool,
    pub lhs: i64,
    pub relation: Relation,
    pub rhs: i64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LedgerEntry {
    pub fn compare(id: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Self {
        LedgerEntry {
            id: id.into(),
            holds: relation.holds(lhs, rhs),
            lhs,
            relation,
            rhs,
            witnesses: BTreeMap::new(),
            seed: None,
            note: None,
        }
    }

    /// An entry that could not be evaluated.
    pub fn failed(id: impl Into<String>, note: impl Into<String>) -> Self {
        LedgerEntry {
            id: id.into(),
            holds: false,
            lhs: 0,
            relation: Relation::Eq,
            rhs: 0,
            witnesses: BTreeMap::new(),
            seed: None,
            note: Some(note.into()),
        }
    }

    pub fn witness(mut self, name: &str, value: i64) -> Self {
        self.witnesses.insert(name.to_string(), value);
        self
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} {} {}",
            if self.holds { "ok" } else { "FAILED" },
            self.id,
            self.lhs,
            self.relation.symbol(),
            self.rhs
        )?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// Sorts entries by id, then seed.
pub fn sort_ledger(ledger: &mut [LedgerEntry]) {
    ledger.sort_by(|a, b| (&a.id, a.seed, &a.witnesses).cmp(&(&b.id, b.seed, &b.witnesses)));
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `R/H^0_m(R) = S/(J : m^∞)`.
pub fn h0_quotient(ring: &RingDescriptor) -> Result<RingDescriptor> {
    let j = Ideal::ambient(ring, ring.relations().to_vec())?;
    let m = Ideal::ambient(ring, Ideal::maximal(ring).gens().to_vec())?;
    let sat = saturate(&j, &m)?;
    RingDescriptor::new(format!("{}/H0", ring.name()), ring.poly_ring().clone(), sat.gens().to_vec())
}

/// `R/u = S/hull`.
pub fn hull_quotient(ring: &RingDescriptor) -> Result<RingDescriptor> {
    let u = unmixed_component(ring)?;
    RingDescriptor::new(format!("{}/u", ring.name()), ring.poly_ring().clone(), u.hull.gens().to_vec())
}

/// Fits `n ↦ f(n)` in degree `s`, doubling the table until it stabilizes.
fn fit_function(s: usize, label: &str, f: impl Fn(usize) -> Result<u64> + Sync) -> Result<CoefficientVector> {
    let opts = FitOptions::default();
    let mut max_n = (s + opts.window + 2).min(opts.cap);
    let mut values: Vec<u64> = Vec::new();
    loop {
        let more = (values.len()..max_n + 1)
            .into_par_iter()
            .map(&f)
            .collect::<Result<Vec<_>>>()?;
        values.extend(more);
        let table = LengthTable {
            kind: TableKind::HilbertSamuel,
            ideal: label.to_string(),
            values: values.clone(),
        };
        match fit_binomial(&table, s, opts.window) {
            Err(Error::NoStabilization { .. }) if max_n < opts.cap => max_n = (max_n * 2).min(opts.cap),
            other => return other,
        }
    }
}

/// Options shared by the verification routines and [`classify_ring`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantOptions {
    pub seed: u64,
    /// Largest depth tried by the stable-value search.
    pub t_max: u32,
    /// Trials per depth for Ξ-samples.
    pub trials: usize,
    pub xi_depths: RangeInclusive<u32>,
}

impl Default for InvariantOptions {
    fn default() -> Self {
        InvariantOptions {
            seed: 0,
            t_max: 3,
            trials: 4,
            xi_depths: 1..=3,
        }
    }
}

/// Lemma-style identities for a superficial section `R/xR` and for the
/// quotient by the unmixed component.
pub fn verify_reduction_lemmas(ring: &RingDescriptor, q: &ParameterIdeal, seed: u64) -> Result<Vec<LedgerEntry>> {
    let d = krull_dimension(ring)?;
    if d == 0 {
        return Err(Error::precondition("verify_reduction_lemmas", "dimension at least 1"));
    }
    let mut ledger = superficial_section(ring, q, seed, d)?;
    let u = unmixed_component(ring)?;
    if let Some(t) = u.dimension.filter(|&t| t < d) {
        let quotient = hull_quotient(ring)?;
        let colon = colon_maximal(q.ideal())?;
        for (name, ideal) in [("q", q.ideal().clone()), ("colon", colon)] {
            ledger.extend(submodule_quotient(ring, &quotient, &u.hull, &ideal, name, d, t)?);
        }
    }
    for e in &mut ledger {
        e.seed = q.seed();
    }
    Ok(ledger)
}

fn superficial_section(ring: &RingDescriptor, q: &ParameterIdeal, seed: u64, d: usize) -> Result<Vec<LedgerEntry>> {
    let mut rng = rng_for(seed, 0x5f);
    let x = random_combination(&mut rng, ring, q.ideal().gens());
    let section = ring.quotient_by(&format!("{}/x", ring.name()), std::slice::from_ref(&x));
    let opts = FitOptions::default();
    let e = hilbert_coefficients(ring, q.ideal(), &opts)?.coefficients;
    let es = hilbert_coefficients(
        &section,
        &q.ideal().in_ring(&section),
        &FitOptions {
            dimension: Some(d - 1),
            ..opts
        },
    )?
    .coefficients;
    let j = Ideal::ambient(ring, ring.relations().to_vec())?;
    let annihilated = colon(&j, &Ideal::ambient(ring, vec![x])?)?;
    let zero_colon = module_length(annihilated.gens(), &j)?;
    let mut out = Vec::new();
    for k in 0..d {
        let id = format!("superficial-section.e{k}");
        if k + 1 < d {
            out.push(LedgerEntry::compare(id, es.get(k), Relation::Eq, e.get(k)));
            continue;
        }
        match zero_colon {
            Some(l) => {
                let sign = if (d - 1) % 2 == 0 { 1 } else { -1 };
                out.push(
                    LedgerEntry::compare(id, es.get(k), Relation::Eq, e.get(k) + sign * l as i64)
                        .witness("e_R", e.get(k))
                        .witness("length_0_colon_x", l as i64),
                );
            }
            None => out.push(LedgerEntry::failed(id, "0 : x has infinite length; x is not superficial")),
        }
    }
    Ok(out)
}

fn submodule_quotient(
    ring: &RingDescriptor,
    quotient: &RingDescriptor,
    hull: &Ideal,
    ideal: &Ideal,
    name: &str,
    d: usize,
    t: usize,
) -> Result<Vec<LedgerEntry>> {
    let opts = FitOptions::default();
    let e = hilbert_coefficients(ring, ideal, &opts)?.coefficients;
    let eq = hilbert_coefficients(quotient, &ideal.in_ring(quotient), &opts)?.coefficients;
    // ℓ(u / I^{n+1} u), computed from generators of u and J
    let u_gens = hull.gens().to_vec();
    let e_u = fit_function(t, "u", |n| {
        let p = ideal_power(ideal, n as u32 + 1)?;
        let mut den = ring.relations().to_vec();
        for a in p.gens() {
            for b in &u_gens {
                den.push(a.mul_ref(b));
            }
        }
        let den = Ideal::ambient(ring, den)?;
        module_length(&u_gens, &den)?.ok_or_else(|| Error::NotMPrimary(format!("u/{name}^{}u", n + 1)))
    })?;
    let mut out = Vec::new();
    for k in 0..=d - t {
        let id = format!("submodule-quotient.{name}.e{k}");
        if k < d - t {
            out.push(LedgerEntry::compare(id, e.get(k), Relation::Eq, eq.get(k)));
        } else {
            let sign = if (d - t) % 2 == 0 { 1 } else { -1 };
            out.push(
                LedgerEntry::compare(id, e.get(k), Relation::Eq, eq.get(k) + sign * e_u.get(0))
                    .witness("e_quotient", eq.get(k))
                    .witness("e0_u", e_u.get(0)),
            );
        }
    }
    Ok(out)
}

/// Identities that hold for generalized Cohen–Macaulay rings and deep `q`.
pub fn verify_gcm_formulas(
    ring: &RingDescriptor,
    profile: &ParameterProfile,
    stable: &StableValue,
) -> Result<Vec<LedgerEntry>> {
    let ext = ext_report(ring)?;
    let d = ext.dimension;
    if (0..d).any(|j| ext.h(j).is_none()) {
        return Err(Error::precondition("verify_gcm_formulas", "a generalized Cohen-Macaulay ring"));
    }
    let h = |j: usize| ext.h(j).unwrap_or(0) as i64;
    let r = |j: usize| ext.r(j) as i64;
    let di = d as i64;
    let mut out = Vec::new();
    let n_formula: i64 = (0..=d).map(|i| binomial(di, i as i64) * r(i)).sum();
    out.push(LedgerEntry::compare("gcm.stable-value", stable.value as i64, Relation::Eq, n_formula));
    // with d = 1 the closed forms below need H^0 = 0
    let closed_forms = d >= 2 || (d == 1 && h(0) == 0);
    if closed_forms {
        let f_formula: i64 = (1..=d).map(|j| binomial(di - 1, j as i64 - 1) * r(j)).sum();
        out.push(LedgerEntry::compare("gcm.f0", profile.f()?.get(0), Relation::Eq, f_formula));
        let e1_formula = if d == 1 {
            -h(0)
        } else {
            -(1..d).map(|j| binomial(di - 2, j as i64 - 1) * h(j)).sum::<i64>()
        };
        out.push(LedgerEntry::compare("gcm.e1-parameter", profile.e.get(1), Relation::Eq, e1_formula));
    }
    for i in (1..=d).filter(|_| closed_forms) {
        let formula = if i < d {
            let lens: i64 = (1..=d - i).map(|j| binomial((d - i) as i64 - 1, j as i64 - 1) * h(j)).sum();
            let socles: i64 = (1..=d - i + 1).map(r).sum();
            sign(i) * (lens - socles)
        } else {
            sign(d) * (h(0) - r(1))
        };
        out.push(LedgerEntry::compare(
            format!("gcm.e{i}-colon"),
            profile.e_colon.get(i),
            Relation::Eq,
            formula,
        ));
    }
    for e in &mut out {
        e.seed = profile.q.seed();
    }
    Ok(out)
}

fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `N(R/u) >= f_0(q) >= e_1(q:m) - e_1(q) >= r_d(R)`, plus the
/// Cohen–Macaulay criteria that apply when `R` is unmixed.
pub fn verify_inequality_chain(
    ring: &RingDescriptor,
    profile: &ParameterProfile,
    stable: &StableValue,
    hull_stable: Option<&StableValue>,
    cm: Option<bool>,
) -> Result<Vec<LedgerEntry>> {
    let ext = ext_report(ring)?;
    let d = ext.dimension;
    if d < 2 {
        return Err(Error::precondition("verify_inequality_chain", "dimension at least 2"));
    }
    let u = unmixed_component(ring)?;
    let left = match (u.is_zero(), hull_stable) {
        (true, _) => stable.value as i64,
        (false, Some(s)) => s.value as i64,
        (false, None) => return Err(Error::precondition("verify_inequality_chain", "the stable value of R/u")),
    };
    let f0 = profile.f()?.get(0);
    let gap = profile.chern_gap();
    let rd = ext.r(d) as i64;
    let mut out = vec![
        LedgerEntry::compare("chain.hull-stable-value-vs-f0", left, Relation::Ge, f0),
        LedgerEntry::compare("chain.f0-vs-gap", f0, Relation::Ge, gap),
        LedgerEntry::compare("chain.gap-vs-rd", gap, Relation::Ge, rd),
    ];
    if u.is_zero() {
        let n = stable.value as i64;
        out.push(
            LedgerEntry::compare("unmixed.xi1-bounded", profile.e_colon.get(1), Relation::Le, n)
                .witness("depth", profile.q.depth() as i64),
        );
        if let Some(cm) = cm {
            out.push(
                LedgerEntry::compare("unmixed.left-equality-iff-cm", (left == f0) as i64, Relation::Eq, cm as i64)
                    .witness("stable_value", left)
                    .witness("f0", f0),
            );
            out.push(
                LedgerEntry::compare("unmixed.stable-value-within-gap-iff-cm", (n <= gap) as i64, Relation::Eq, cm as i64)
                    .witness("stable_value", n)
                    .witness("gap", gap),
            );
        }
    }
    for e in &mut out {
        e.seed = profile.q.seed();
    }
    Ok(out)
}

/// Does `q :_R m` map onto `q :_{R/u} m`? Both sides are compared as ideals
/// of `S` containing the hull.
pub fn verify_colon_transfer(ring: &RingDescriptor, q: &ParameterIdeal) -> Result<LedgerEntry> {
    let u = unmixed_component(ring)?;
    let quotient = hull_quotient(ring)?;
    let in_r = colon_maximal(q.ideal())?;
    let in_quotient = colon_maximal(&q.ideal().in_ring(&quotient))?;
    let mut lhs = in_r.lifted_gens();
    lhs.extend(u.hull.gens().iter().cloned());
    let lhs = Ideal::ambient(ring, lhs)?;
    let rhs = Ideal::ambient(ring, in_quotient.lifted_gens())?;
    let same = lhs.same_as(&rhs);
    Ok(LedgerEntry::compare("colon-transfer", same as i64, Relation::Eq, 1)
        .witness("colength_r", colength(&in_r)?)
        .witness("colength_quotient", colength(&in_quotient)?)
        .with_seed(q.seed()))
}

fn colength(i: &Ideal) -> Result<i64> {
    if i.is_unit() {
        return Ok(0);
    }
    Ok(crate::ideal::quotient_length(i)?.get() as i64)
}

/// Summary of the reference parameter ideal used by [`classify_ring`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceIdeal {
    pub depth: u32,
    pub seed: u64,
    pub generators: Vec<String>,
    pub length: u64,
    pub ir: u64,
    pub e: Vec<i64>,
    pub e_colon: Vec<i64>,
    pub f0: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageFailure {
    pub stage: String,
    pub error: String,
}

/// Everything [`classify_ring`] found out about a ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub dimension: Option<usize>,
    pub reference: Option<ReferenceIdeal>,
    pub stable_value: Option<StableValue>,
    pub cohen_macaulay: Option<bool>,
    pub gorenstein: Option<bool>,
    pub generalized_cm: Option<bool>,
    pub unmixed_component: Option<String>,
    pub unmixed_dimension: Option<usize>,
    /// `h_j` for `j < d`, `None` entries are infinite.
    pub h: Option<Vec<Option<u64>>>,
    pub r: Option<Vec<u64>>,
    pub xi1: Option<XiSample>,
    pub ledger: Vec<LedgerEntry>,
    pub failures: Vec<StageFailure>,
}

impl ClassificationReport {
    pub fn is_unmixed(&self) -> Option<bool> {
        self.unmixed_component.as_ref().map(|_| self.unmixed_dimension.is_none())
    }
}

struct Collector {
    failures: Vec<StageFailure>,
}

impl Collector {
    fn run<T>(&mut self, stage: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push(StageFailure {
                    stage: stage.to_string(),
                    error: e.to_string(),
                });
                None
            }
        }
    }
}

/// Runs every classifier and verification on `R`. Failing stages are listed
/// in the report instead of aborting it.
pub fn classify_ring(ring: &RingDescriptor, opts: &InvariantOptions) -> ClassificationReport {
    let mut c = Collector { failures: Vec::new() };
    let d = c.run("dimension", krull_dimension(ring));
    let gcm = c.run("generalized-cm", crate::resolution::is_generalized_cm(ring));
    let u = c.run("unmixed-component", unmixed_component(ring));
    let gor = match d {
        Some(0) => None,
        Some(_) => c.run("gorenstein", gorenstein_test(ring, opts.seed)),
        None => None,
    };
    let stable = match d {
        Some(d) if d >= 1 => c.run("stable-value", stable_value_estimate(ring, opts.t_max, opts.seed)),
        _ => None,
    };
    // q = m at depth 1 in a regular ring, where q : m is the unit ideal
    let reference_depth = stable.as_ref().map_or(2, |s| s.depth.max(2));
    let profile = match d {
        Some(d) if d >= 1 => c
            .run("reference-ideal", deep_parameter_ideal(ring, reference_depth, opts.seed))
            .and_then(|q| c.run("reference-fits", ParameterProfile::compute(ring, &q))),
        _ => None,
    };
    let mut ledger = Vec::new();
    let cm = gor.as_ref().map(|g| g.cm.cohen_macaulay);
    if let (Some(cm), Some(g)) = (cm, &gcm) {
        ledger.push(LedgerEntry::compare(
            "verdict.cm-implies-gcm",
            (!cm || g.generalized_cm) as i64,
            Relation::Eq,
            1,
        ));
    }
    let unmixed = u.as_ref().map(|u| u.is_zero());
    if let Some(p) = &profile {
        ledger.push(LedgerEntry::compare("parameter.ir-positive", p.ir as i64, Relation::Ge, 1).with_seed(p.q.seed()));
        ledger.push(LedgerEntry::compare("parameter.e0-positive", p.e.get(0), Relation::Gt, 0).with_seed(p.q.seed()));
        if unmixed == Some(true) {
            ledger.push(LedgerEntry::compare("unmixed.e1-nonpositive", p.e.get(1), Relation::Le, 0).with_seed(p.q.seed()));
        }
        if let Some(es) = c.run("reduction-lemmas", verify_reduction_lemmas(ring, &p.q, opts.seed)) {
            ledger.extend(es);
        }
    }
    if let (Some(p), Some(s), Some(g)) = (&profile, &stable, &gcm) {
        if g.generalized_cm {
            if let Some(es) = c.run("gcm-formulas", verify_gcm_formulas(ring, p, s)) {
                ledger.extend(es);
            }
        }
        if d.unwrap_or(0) >= 2 {
            let hull_stable = match unmixed {
                Some(false) => c
                    .run("hull-quotient", hull_quotient(ring))
                    .and_then(|h| c.run("hull-stable-value", stable_value_estimate(&h, opts.t_max, opts.seed))),
                _ => None,
            };
            if let Some(es) = c.run(
                "inequality-chain",
                verify_inequality_chain(ring, p, s, hull_stable.as_ref(), cm),
            ) {
                ledger.extend(es);
            }
        }
    }
    if let (Some(g), Some(s)) = (&gcm, &stable) {
        if g.r.first().copied().unwrap_or(0) > 0 {
            let split = c
                .run("h0-quotient", h0_quotient(ring))
                .and_then(|h| c.run("h0-quotient-stable-value", stable_value_estimate(&h, opts.t_max, opts.seed)));
            if let Some(sh) = split {
                ledger.push(
                    LedgerEntry::compare("h0.stable-value-split", s.value as i64, Relation::Eq, sh.value as i64 + g.r[0] as i64)
                        .witness("quotient_stable_value", sh.value as i64)
                        .witness("r0", g.r[0] as i64),
                );
            }
        }
    }
    let xi1 = match d {
        Some(d) if d >= 1 => c.run(
            "xi-sample",
            xi_sample(ring, 1, opts.trials, opts.xi_depths.clone(), opts.seed),
        ),
        _ => None,
    };
    if let (Some(x), Some(s), Some(true)) = (&xi1, &stable, unmixed) {
        for v in &x.values {
            ledger.push(
                LedgerEntry::compare("unmixed.xi1-bounded", v.value, Relation::Le, s.value as i64)
                    .witness("depth", v.depth as i64)
                    .with_seed(Some(v.seed)),
            );
        }
    }
    sort_ledger(&mut ledger);
    let reference = profile.as_ref().map(|p| ReferenceIdeal {
        depth: p.q.depth(),
        seed: p.q.seed().unwrap_or(opts.seed),
        generators: p.q.ideal().gens().iter().map(|g| g.to_string()).collect(),
        length: p.length,
        ir: p.ir,
        e: p.e.coefficients.clone(),
        e_colon: p.e_colon.coefficients.clone(),
        f0: p.f().ok().map(|f| f.get(0)),
    });
    ClassificationReport {
        ring: ring.name().to_string(),
        dimension: d,
        reference,
        stable_value: stable,
        cohen_macaulay: cm,
        gorenstein: gor.map(|g| g.gorenstein),
        generalized_cm: gcm.as_ref().map(|g| g.generalized_cm),
        unmixed_component: u.as_ref().map(|u| u.ideal.to_string()),
        unmixed_dimension: u.as_ref().and_then(|u| u.dimension),
        h: gcm.as_ref().map(|g| g.h.clone()),
        r: gcm.as_ref().map(|g| g.r.clone()),
        xi1,
        ledger,
        failures: c.failures,
    }
}

/// `ℓ(H^0_m(R))` both from duality and from saturation.
pub fn verify_h0(ring: &RingDescriptor) -> Result<LedgerEntry> {
    let ext = ext_report(ring)?;
    let direct = h0_direct(ring)?.get() as i64;
    Ok(LedgerEntry::compare("duality.h0", ext.h(0).map_or(-1, |v| v as i64), Relation::Eq, direct))
}
