//! `[expect]` entries of ring files.
//!
//! | key | value |
//! |-----|-------|
//! | `dimension`, `stable_value`, `unmixed_dimension` | integer (`none` for `u = 0`) |
//! | `cohen_macaulay`, `gorenstein`, `generalized_cm`, `unmixed` | `true` / `false` |
//! | `h`, `r`, `betti` | lists, `inf` for an infinite length |
//! | `unmixed_component` | generators separated by `;`, or `0` |
//! | `reference.ir`, `reference.f0`, `reference.e`, `reference.e_colon` | the classifier's parameter ideal |
//! | `hilbert.NAME`, `ir.NAME` | table `n = 0, 1, ...` for a named ideal |
//! | `e.NAME`, `e_colon.NAME`, `f.NAME` | fitted coefficients |
//! | `xiI.distinct` | number of distinct sampled `e_I(q:m)` |
//! | `xiI.increasing` | sampled values strictly increase with depth |
//! | `ledger` | `ok` when every classifier statement holds |

use std::sync::OnceLock;

use chernlab::{
    classify_ring, colon_maximal, free_resolution, hilbert_coefficients, hilbert_samuel_table, irreducibility_coefficients,
    irreducibility_table, krull_dimension, xi_sample, ClassificationReport, FitOptions, Ideal, RingDescriptor, XiSample,
};

use crate::commands::Config;
use crate::ringfile::{split_list, RingFile};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

pub struct Evaluator<'a> {
    file: &'a RingFile,
    ring: RingDescriptor,
    config: Config,
    classification: OnceLock<ClassificationReport>,
}

fn canonical(v: &str) -> String {
    split_list(v, ',').join(", ")
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or("none".to_string(), |x| x.to_string())
}

/// Whether every value at depth `t` is below every value at depth `t + 1`.
pub fn strictly_increasing(x: &XiSample) -> bool {
    x.depths.windows(2).all(|w| {
        let (a, b) = (x.values_at(w[0]), x.values_at(w[1]));
        match (a.iter().max(), b.iter().min()) {
            (Some(hi), Some(lo)) => hi < lo,
            _ => false,
        }
    })
}

impl<'a> Evaluator<'a> {
    pub fn new(file: &'a RingFile, config: Config) -> Result<Self, CliError> {
        Ok(Evaluator {
            file,
            ring: file.descriptor()?,
            config,
            classification: OnceLock::new(),
        })
    }

    pub fn classification(&self) -> &ClassificationReport {
        self.classification
            .get_or_init(|| classify_ring(&self.ring, &self.config.invariant_options()))
    }

    fn named(&self, key: &str, prefix: &str) -> Result<Option<Ideal>, CliError> {
        match key.strip_prefix(prefix) {
            Some(name) => Ok(Some(self.file.ideal(&self.ring, name)?)),
            None => Ok(None),
        }
    }

    fn classified<T>(&self, stage: &str, v: Option<T>) -> Result<T, CliError> {
        v.ok_or_else(|| {
            let why = self
                .classification()
                .failures
                .iter()
                .map(|f| format!("{}: {}", f.stage, f.error))
                .collect::<Vec<_>>()
                .join("; ");
            CliError::math(stage, if why.is_empty() { "not computed".to_string() } else { why })
        })
    }

    fn xi(&self, i: usize) -> Result<XiSample, CliError> {
        if i == 1 {
            if let Some(x) = &self.classification().xi1 {
                return Ok(x.clone());
            }
        }
        let c = &self.config;
        xi_sample(&self.ring, i, c.trials, c.depths(), c.seed).map_err(|e| CliError::lib("xi_sample", e))
    }

    /// Computed value of `key`, rendered like an expectation.
    pub fn actual(&self, key: &str, expected: &str) -> Result<String, CliError> {
        let fit = FitOptions::default();
        let lib = |stage: &'static str| move |e| CliError::lib(stage, e);
        if let Some(i) = self.named(key, "hilbert.")? {
            let n = split_list(expected, ',').len().max(1) - 1;
            return Ok(list(&hilbert_samuel_table(&self.ring, &i, n).map_err(lib("hilbert_samuel_table"))?.values));
        }
        if let Some(i) = self.named(key, "ir.")? {
            let n = split_list(expected, ',').len().max(1) - 1;
            return Ok(list(&irreducibility_table(&self.ring, &i, n).map_err(lib("irreducibility_table"))?.values));
        }
        if let Some(i) = self.named(key, "e_colon.")? {
            let c = colon_maximal(&i).map_err(lib("colon_maximal"))?;
            let e = hilbert_coefficients(&self.ring, &c, &fit).map_err(lib("hilbert_coefficients"))?;
            return Ok(list(&e.coefficients.coefficients));
        }
        if let Some(i) = self.named(key, "e.")? {
            let e = hilbert_coefficients(&self.ring, &i, &fit).map_err(lib("hilbert_coefficients"))?;
            return Ok(list(&e.coefficients.coefficients));
        }
        if let Some(i) = self.named(key, "f.")? {
            let f = irreducibility_coefficients(&self.ring, &i, &fit).map_err(lib("irreducibility_coefficients"))?;
            return Ok(list(&f.coefficients.coefficients));
        }
        if let Some(rest) = key.strip_prefix("xi") {
            if let Some((i, what)) = rest.split_once('.') {
                if let Ok(i) = i.parse::<usize>() {
                    let x = self.xi(i)?;
                    match what {
                        "distinct" => return Ok(x.distinct_values().len().to_string()),
                        "increasing" => return Ok(strictly_increasing(&x).to_string()),
                        _ => {}
                    }
                }
            }
        }
        let c = || self.classification();
        let v = match key {
            "dimension" => krull_dimension(&self.ring).map_err(lib("krull_dimension"))?.to_string(),
            "cohen_macaulay" => self.classified("cm_test", c().cohen_macaulay)?.to_string(),
            "gorenstein" => self.classified("gorenstein_test", c().gorenstein)?.to_string(),
            "generalized_cm" => self.classified("is_generalized_cm", c().generalized_cm)?.to_string(),
            "unmixed" => self.classified("unmixed_component", c().is_unmixed())?.to_string(),
            "unmixed_dimension" => {
                self.classified("unmixed_component", c().unmixed_component.as_ref())?;
                opt(c().unmixed_dimension)
            }
            "stable_value" => self.classified("stable_value_estimate", c().stable_value.as_ref())?.value.to_string(),
            "h" => {
                let h = self.classified("ext_report", c().h.as_ref())?;
                h.iter().map(|x| x.map_or("inf".to_string(), |v| v.to_string())).collect::<Vec<_>>().join(", ")
            }
            "r" => list(self.classified("ext_report", c().r.as_ref())?),
            "betti" => list(&free_resolution(&self.ring, true).map_err(lib("free_resolution"))?.betti_numbers()),
            "reference.ir" => self.classified("reference", c().reference.as_ref())?.ir.to_string(),
            "reference.f0" => opt(self.classified("reference", c().reference.as_ref())?.f0),
            "reference.e" => list(&self.classified("reference", c().reference.as_ref())?.e),
            "reference.e_colon" => list(&self.classified("reference", c().reference.as_ref())?.e_colon),
            "ledger" => {
                let bad: Vec<&str> = c().ledger.iter().filter(|e| !e.holds).map(|e| e.id.as_str()).collect();
                if bad.is_empty() && c().failures.is_empty() {
                    "ok".to_string()
                } else {
                    let stages = c().failures.iter().map(|f| f.stage.as_str());
                    format!("failed: {}", bad.into_iter().chain(stages).collect::<Vec<_>>().join(", "))
                }
            }
            _ => return Err(CliError::input("read expectations", format!("unknown expectation `{key}`"))),
        };
        Ok(v)
    }

    pub fn check(&self, key: &str, expected: &str) -> Result<Check, CliError> {
        if key == "unmixed_component" {
            let u = self.classified("unmixed_component", self.classification().unmixed_component.as_ref())?;
            let pass = if expected.trim() == "0" {
                self.classification().unmixed_dimension.is_none()
            } else {
                let gens = split_list(expected, ';');
                let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
                let want = Ideal::parse(&self.ring, &gens).map_err(|e| CliError::lib("read expectations", e))?;
                let got = chernlab::unmixed_component(&self.ring).map_err(|e| CliError::lib("unmixed_component", e))?;
                want.same_as(&got.ideal)
            };
            return Ok(Check {
                key: key.to_string(),
                expected: expected.to_string(),
                actual: u.clone(),
                pass,
            });
        }
        let actual = self.actual(key, expected)?;
        Ok(Check {
            key: key.to_string(),
            expected: canonical(expected),
            pass: actual == canonical(expected),
            actual,
        })
    }
}
