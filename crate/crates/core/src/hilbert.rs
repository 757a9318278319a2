//! Hilbert–Samuel and irreducibility functions and their binomial expansions.
//!
//! For an m-primary ideal `I` of `R` of dimension `d`,
//!
//! ```text
//! ℓ(R/I^{n+1})  = Σ_{i=0}^{d}   (-1)^i e_i(I) C(n+d-i, d-i)      for n >> 0
//! ir(I^{n+1})   = Σ_{i=0}^{d-1} (-1)^i f_i(I) C(n+d-1-i, d-1-i)  for n >> 0
//! ```
//!
//! The tables are sampled exactly and the coefficients fitted with integer
//! arithmetic; a fit is only accepted once several consecutive windows agree.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::groebner_basis;
use crate::ideal::{colength, ideal_power, is_m_primary, krull_dimension, Ideal};
use crate::order::MonomialOrder;
use crate::ring::RingDescriptor;
use crate::socle::index_of_reducibility;

/// Which function a table samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    /// `n ↦ ℓ(R/I^{n+1})`, coefficients `e_i`.
    HilbertSamuel,
    /// `n ↦ ir(I^{n+1})`, coefficients `f_i`.
    Irreducibility,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::HilbertSamuel => "hilbert-samuel",
            TableKind::Irreducibility => "irreducibility",
        })
    }
}

/// Sampled values `values[n]` for `n = 0..=max_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthTable {
    pub kind: TableKind,
    pub ideal: String,
    pub values: Vec<u64>,
}

impl LengthTable {
    pub fn max_n(&self) -> usize {
        self.values.len().saturating_sub(1)
    }
}

/// Coefficients in the alternating binomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub kind: TableKind,
    /// `e_0..e_s` or `f_0..f_{d-1}`.
    pub coefficients: Vec<i64>,
    /// Least `n` from which the polynomial reproduces every sampled value.
    pub postulation: usize,
    /// Number of consecutive fit windows that produced this vector.
    pub stability_witness: usize,
    /// Largest `n` sampled.
    pub max_n: usize,
}

impl CoefficientVector {
    /// Degree of the fitted polynomial, `s`.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `Σ (-1)^j c_j C(n+s-j, s-j)`.
    pub fn evaluate(&self, n: i64) -> i128 {
        evaluate(&self.coefficients, n)
    }

    pub fn get(&self, i: usize) -> i64 {
        self.coefficients.get(i).copied().unwrap_or(0)
    }
}

/// Stability window: number of consecutive agreeing fits required.
pub const DEFAULT_WINDOW: usize = 3;
/// Default sampling cap.
pub const DEFAULT_CAP: usize = 30;

fn binom(a: i128, k: usize) -> i128 {
    // generalized binomial a(a-1)...(a-k+1)/k!
    let mut num: i128 = 1;
    for i in 0..k as i128 {
        num = num * (a - i) / (i + 1);
    }
    num
}

fn evaluate(c: &[i64], n: i64) -> i128 {
    let s = c.len() - 1;
    c.iter()
        .enumerate()
        .map(|(j, &cj)| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * cj as i128 * binom(n as i128 + (s - j) as i128, s - j)
        })
        .sum()
}

/// Coefficients of the degree-`s` polynomial through `vals` (`s + 1` values at
/// consecutive integers starting at `start`).
fn solve_window(vals: &[i128], start: i64, s: usize) -> Option<Vec<i64>> {
    debug_assert_eq!(vals.len(), s + 1);
    // extend backwards to n = -1 - s using a vanishing (s+1)-st difference
    let mut seq: std::collections::VecDeque<i128> = vals.iter().copied().collect();
    let mut first = start;
    let binoms: Vec<i128> = (0..=s + 1).map(|i| binom((s + 1) as i128, i)).collect();
    while first > -1 - s as i64 {
        // sum_{i=0}^{s+1} (-1)^i C(s+1,i) P(m+i) = 0
        let mut acc: i128 = 0;
        for i in 1..=s + 1 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            acc += sign * binoms[i] * seq[i - 1];
        }
        seq.push_front(-acc);
        first -= 1;
    }
    // e_{s-k} = (-1)^{s-k} ∇^k P(-1), with ∇^k P(-1) = Σ_i (-1)^i C(k,i) P(-1-i)
    let at = |n: i64| seq[(n - first) as usize];
    let mut out = vec![0i64; s + 1];
    for k in 0..=s {
        let mut d: i128 = 0;
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            d += sign * binom(k as i128, i) * at(-1 - i as i64);
        }
        let j = s - k;
        let v = if j % 2 == 0 { d } else { -d };
        out[j] = i64::try_from(v).ok()?;
    }
    Some(out)
}

/// Fit `Σ_{j=0}^{s} (-1)^j c_j C(n+s-j, s-j)` to the tail of a table.
///
/// Windows of `s + 1` consecutive entries are solved exactly; the fit is
/// accepted when the last `window` windows give the same coefficients.
///
/// ```
/// use chernlab::{fit_binomial, LengthTable, TableKind};
///
/// let t = LengthTable { kind: TableKind::HilbertSamuel, ideal: "q".into(), values: vec![2, 6, 13, 24, 40, 62, 91] };
/// let c = fit_binomial(&t, 3, 3).unwrap();
/// assert_eq!(c.coefficients, vec![1, 0, 1, 0]);
/// ```
pub fn fit_binomial(table: &LengthTable, s: usize, window: usize) -> Result<CoefficientVector> {
    let window = window.max(1);
    let vals: Vec<i128> = table.values.iter().map(|&v| v as i128).collect();
    let no_fit = || Error::NoStabilization {
        kind: table.kind.to_string(),
        max_n: table.max_n(),
    };
    if vals.len() < s + window {
        return Err(no_fit());
    }
    let last_start = vals.len() - 1 - s;
    let fits: Vec<Option<Vec<i64>>> = (0..=last_start)
        .map(|n0| solve_window(&vals[n0..=n0 + s], n0 as i64, s))
        .collect();
    let last = fits[last_start].clone().ok_or_else(no_fit)?;
    let mut agreeing = 0;
    for f in fits.iter().rev() {
        if f.as_ref() == Some(&last) {
            agreeing += 1;
        } else {
            break;
        }
    }
    if agreeing < window {
        return Err(no_fit());
    }
    let mut postulation = vals.len();
    while postulation > 0 && evaluate(&last, postulation as i64 - 1) == vals[postulation - 1] {
        postulation -= 1;
    }
    if table.kind == TableKind::HilbertSamuel && last[0] <= 0 {
        return Err(Error::DegreeMismatch {
            dim: s,
            detail: format!("fitted e_0 = {} is not positive", last[0]),
        });
    }
    Ok(CoefficientVector {
        kind: table.kind,
        coefficients: last,
        postulation,
        stability_witness: agreeing,
        max_n: table.max_n(),
    })
}

/// How tables are sampled.
#[derive(Debug, Clone)]
pub struct TableOptions {
    /// Evaluate entries concurrently (each power expanded independently).
    /// The sequential path builds each power from the previous basis instead;
    /// both give identical tables.
    pub parallel: bool,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions { parallel: true }
    }
}

fn entry(kind: TableKind, power: &Ideal) -> Result<u64> {
    match kind {
        TableKind::HilbertSamuel => Ok(colength(power).expect("powers of m-primary ideals are m-primary")),
        TableKind::Irreducibility => index_of_reducibility(power),
    }
}

/// Sample `n ↦ ℓ(R/I^{n+1})` or `n ↦ ir(I^{n+1})` for `n` in `range`.
pub fn sample_table(
    ring: &RingDescriptor,
    ideal: &Ideal,
    kind: TableKind,
    range: std::ops::Range<usize>,
    opts: &TableOptions,
) -> Result<Vec<u64>> {
    let i = ideal.in_ring(ring);
    if i.is_unit() {
        return Ok(vec![0; range.len()]);
    }
    if !is_m_primary(&i) {
        return Err(Error::NotMPrimary(i.to_string()));
    }
    if opts.parallel {
        range
            .into_par_iter()
            .map(|n| entry(kind, &ideal_power(&i, n as u32 + 1)?))
            .collect()
    } else {
        let mut out = Vec::with_capacity(range.len());
        // I^{k+1} + J = (basis of I^k + J) * I + J
        let mut cur = i.clone();
        for k in 0..range.end {
            if k > 0 {
                let basis = cur.groebner().generators();
                let mut gens = Vec::with_capacity(basis.len() * i.gens().len());
                for b in &basis {
                    for g in i.gens() {
                        gens.push(b.mul_ref(g));
                    }
                }
                let next = i.with_gens(gens);
                let gb = groebner_basis(next.poly_ring(), &next.lifted_gens(), MonomialOrder::Grevlex)?;
                cur = next.with_gens(gb.generators());
            }
            if range.contains(&k) {
                out.push(entry(kind, &cur)?);
            }
        }
        Ok(out)
    }
}

/// `ℓ(R/I^{n+1})` for `n = 0..=max_n`.
///
/// ```
/// use chernlab::{hilbert_samuel_table, Ideal, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("R", 32003, &["x", "y", "z", "w"], None, &["x*w", "y*w", "z*w"]).unwrap();
/// let q = Ideal::parse(&r, &["x - w", "y - w", "z - w"]).unwrap();
/// assert_eq!(hilbert_samuel_table(&r, &q, 3).unwrap().values, vec![2, 6, 13, 24]);
/// ```
pub fn hilbert_samuel_table(ring: &RingDescriptor, ideal: &Ideal, max_n: usize) -> Result<LengthTable> {
    Ok(LengthTable {
        kind: TableKind::HilbertSamuel,
        ideal: ideal.to_string(),
        values: sample_table(ring, ideal, TableKind::HilbertSamuel, 0..max_n + 1, &TableOptions::default())?,
    })
}

/// `ir(I^{n+1}) = ℓ((I^{n+1} : m)/I^{n+1})` for `n = 0..=max_n`.
pub fn irreducibility_table(ring: &RingDescriptor, ideal: &Ideal, max_n: usize) -> Result<LengthTable> {
    Ok(LengthTable {
        kind: TableKind::Irreducibility,
        ideal: ideal.to_string(),
        values: sample_table(ring, ideal, TableKind::Irreducibility, 0..max_n + 1, &TableOptions::default())?,
    })
}

/// Options for [`hilbert_coefficients`] and [`irreducibility_coefficients`].
#[derive(Debug, Clone)]
pub struct FitOptions {
    /// First table size tried; doubled until a fit is found.
    pub initial_n: Option<usize>,
    /// Largest `n` ever sampled.
    pub cap: usize,
    pub window: usize,
    /// Dimension to fit with instead of `krull_dimension(R)`.
    pub dimension: Option<usize>,
    pub table: TableOptions,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            initial_n: None,
            cap: DEFAULT_CAP,
            window: DEFAULT_WINDOW,
            dimension: None,
            table: TableOptions::default(),
        }
    }
}

/// A fitted vector together with the table it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fit {
    pub table: LengthTable,
    pub coefficients: CoefficientVector,
}

fn fit_growing(ring: &RingDescriptor, ideal: &Ideal, kind: TableKind, opts: &FitOptions) -> Result<Fit> {
    let d = match opts.dimension {
        Some(d) => d,
        None => krull_dimension(ring)?,
    };
    let s = match kind {
        TableKind::HilbertSamuel => d,
        TableKind::Irreducibility => {
            if d == 0 {
                return Err(Error::precondition("irreducibility coefficients", "dimension at least 1"));
            }
            d - 1
        }
    };
    let mut max_n = opts.initial_n.unwrap_or(s + opts.window + 2).min(opts.cap);
    if ideal.in_ring(ring).is_unit() {
        // every length vanishes
        return Ok(Fit {
            table: LengthTable {
                kind,
                ideal: ideal.to_string(),
                values: vec![0; max_n + 1],
            },
            coefficients: CoefficientVector {
                kind,
                coefficients: vec![0; s + 1],
                postulation: 0,
                stability_witness: opts.window,
                max_n,
            },
        });
    }
    let mut values: Vec<u64> = Vec::new();
    loop {
        let more = sample_table(ring, ideal, kind, values.len()..max_n + 1, &opts.table)?;
        values.extend(more);
        let table = LengthTable {
            kind,
            ideal: ideal.to_string(),
            values: values.clone(),
        };
        match fit_binomial(&table, s, opts.window) {
            Ok(c) => {
                return Ok(Fit {
                    table,
                    coefficients: c,
                })
            }
            Err(Error::NoStabilization { .. }) if max_n < opts.cap => {
                max_n = (max_n * 2).min(opts.cap);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Hilbert coefficients `e_0..e_d` of an m-primary ideal, extending the table
/// until the fit stabilizes.
///
/// ```
/// use chernlab::{hilbert_coefficients, FitOptions, Ideal, RingDescriptor};
///
/// let r = RingDescriptor::from_strings("H", 32003, &["x", "y", "z"], None, &["y^2 - x*z"]).unwrap();
/// let q = Ideal::parse(&r, &["x", "z"]).unwrap();
/// let e = hilbert_coefficients(&r, &q, &FitOptions::default()).unwrap();
/// assert_eq!(e.coefficients.coefficients, vec![2, 0, 0]);
/// ```
pub fn hilbert_coefficients(ring: &RingDescriptor, ideal: &Ideal, opts: &FitOptions) -> Result<Fit> {
    fit_growing(ring, ideal, TableKind::HilbertSamuel, opts)
}

/// Irreducibility coefficients `f_0..f_{d-1}`.
pub fn irreducibility_coefficients(ring: &RingDescriptor, ideal: &Ideal, opts: &FitOptions) -> Result<Fit> {
    fit_growing(ring, ideal, TableKind::Irreducibility, opts)
}
