use std::fmt::Write as _;

use chernlab::{
    classify_ring, colon_maximal, deep_parameter_ideal, ext_report, free_resolution, hilbert_coefficients,
    hilbert_samuel_table, irreducibility_coefficients, irreducibility_table, krull_dimension, sort_ledger,
    verify_colon_transfer, verify_h0, verify_reduction_lemmas, xi_sample, ClassificationReport, FitOptions,
    InvariantOptions, LedgerEntry, ParameterIdeal, RingDescriptor,
};
use serde::{Deserialize, Serialize};

use crate::report::{Report, Value};
use crate::ringfile::RingFile;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Hilbert,
    Ir,
    Coeffs,
    Classify,
    XiSample,
    Verify,
    Resolve,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Ir => "ir",
            Command::Coeffs => "coeffs",
            Command::Classify => "classify",
            Command::XiSample => "xi-sample",
            Command::Verify => "verify",
            Command::Resolve => "resolve",
        }
    }
}

/// Flags as given on the command line.
#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub ideal: Option<String>,
    pub max_n: Option<usize>,
    pub seed: Option<u64>,
    pub depth: Option<std::ops::RangeInclusive<u32>>,
    pub trials: Option<usize>,
    pub index: Option<usize>,
    pub colon_socle: bool,
}

/// Flags merged with the file's `[options]` and the defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub ideal: Option<String>,
    pub max_n: usize,
    pub seed: u64,
    /// Inclusive depth range `[A, B]`.
    pub depth: [u32; 2],
    pub trials: usize,
    pub index: usize,
    pub colon_socle: bool,
}

impl Config {
    pub fn resolve(file: &RingFile, flags: &Flags) -> Self {
        let o = &file.options;
        let depth = flags.depth.clone().or_else(|| o.depth.clone()).unwrap_or(1..=3);
        Config {
            ideal: flags.ideal.clone(),
            max_n: flags.max_n.or(o.max_n).unwrap_or(6),
            seed: flags.seed.or(o.seed).unwrap_or(0),
            depth: [*depth.start(), *depth.end()],
            trials: flags.trials.or(o.trials).unwrap_or(4),
            index: flags.index.unwrap_or(1),
            colon_socle: flags.colon_socle,
        }
    }

    pub fn depths(&self) -> std::ops::RangeInclusive<u32> {
        self.depth[0]..=self.depth[1]
    }

    pub fn invariant_options(&self) -> InvariantOptions {
        InvariantOptions {
            seed: self.seed,
            t_max: self.depth[1].max(3),
            trials: self.trials,
            xi_depths: self.depths(),
        }
    }
}

/// Text for the terminal, the JSON report and the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub report: Report,
    pub exit_code: i32,
}

fn ints<T: Copy + TryInto<i64>>(v: &[T]) -> Vec<i64> {
    v.iter().map(|&x| x.try_into().unwrap_or(i64::MAX)).collect()
}

fn show_list(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn show_lengths(v: &[Option<u64>]) -> String {
    v.iter()
        .map(|x| x.map_or("inf".to_string(), |n| n.to_string()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    }
}

pub fn run(command: Command, file: &RingFile, flags: &Flags) -> Result<Outcome, CliError> {
    let config = Config::resolve(file, flags);
    if config.depth[0] == 0 || config.depth[1] < config.depth[0] {
        return Err(CliError::input("read flags", "depth range must satisfy 1 <= A <= B"));
    }
    let ring = file.descriptor()?;
    let mut report = Report::new(file, command.name(), config.clone());
    let mut text = String::new();
    let mut exit_code = 0;
    match command {
        Command::Hilbert | Command::Ir => table(command, file, &ring, &config, &mut report, &mut text)?,
        Command::Coeffs => coeffs(file, &ring, &config, &mut report, &mut text)?,
        Command::Classify => {
            let c = classify_ring(&ring, &config.invariant_options());
            classification_values(&c, &mut report, &mut text);
            report.ledger = c.ledger.clone();
            write_ledger(&report.ledger, &mut text);
            if !c.failures.is_empty() {
                exit_code = 1;
            }
        }
        Command::XiSample => xi(&ring, &config, &mut report, &mut text)?,
        Command::Verify => {
            let (ledger, failures) = verify(file, &ring, &config, &mut report, &mut text)?;
            report.ledger = ledger;
            write_ledger(&report.ledger, &mut text);
            if failures || report.ledger.iter().any(|e| !e.holds) {
                exit_code = 1;
            }
        }
        Command::Resolve => resolve(&ring, &mut report, &mut text)?,
    }
    Ok(Outcome {
        text,
        report,
        exit_code,
    })
}

fn table(
    command: Command,
    file: &RingFile,
    ring: &RingDescriptor,
    config: &Config,
    report: &mut Report,
    text: &mut String,
) -> Result<(), CliError> {
    let (name, ideal) = file.pick_ideal(ring, config.ideal.as_deref())?;
    let (t, label, op) = if command == Command::Hilbert {
        (hilbert_samuel_table(ring, &ideal, config.max_n), "length", "hilbert_samuel_table")
    } else {
        (irreducibility_table(ring, &ideal, config.max_n), "ir", "irreducibility_table")
    };
    let t = t.map_err(|e| CliError::lib(op, e))?;
    let _ = writeln!(text, "{} of {name} = {}", t.kind, ideal);
    let _ = writeln!(text, "{:>4}  {label}", "n");
    for (n, v) in t.values.iter().enumerate() {
        let _ = writeln!(text, "{n:>4}  {v}");
    }
    report.push(format!("{label}.{name}"), op, Value::IntegerList(ints(&t.values)));
    Ok(())
}

fn coeffs(file: &RingFile, ring: &RingDescriptor, config: &Config, report: &mut Report, text: &mut String) -> Result<(), CliError> {
    let (name, ideal) = file.pick_ideal(ring, config.ideal.as_deref())?;
    let opts = FitOptions::default();
    let (target, label) = if config.colon_socle {
        let c = colon_maximal(&ideal).map_err(|e| CliError::lib("colon_maximal", e))?;
        (c, format!("{name}:m"))
    } else {
        (ideal, name.clone())
    };
    let e = hilbert_coefficients(ring, &target, &opts).map_err(|e| CliError::lib("hilbert_coefficients", e))?;
    let _ = writeln!(text, "ideal {label} = {target}");
    let _ = writeln!(text, "e = ({})", show_list(&e.coefficients.coefficients));
    let _ = writeln!(
        text,
        "table n = 0..{}: {}",
        e.table.max_n(),
        show_list(&ints(&e.table.values))
    );
    let _ = writeln!(text, "postulation {}", e.coefficients.postulation);
    report.push(format!("e.{label}"), "hilbert_coefficients", Value::IntegerList(e.coefficients.coefficients.clone()));
    report.push(format!("length.{label}"), "hilbert_samuel_table", Value::IntegerList(ints(&e.table.values)));
    report.push(
        format!("postulation.{label}"),
        "hilbert_coefficients",
        Value::Integer(e.coefficients.postulation as i64),
    );
    let d = krull_dimension(ring).map_err(|e| CliError::lib("krull_dimension", e))?;
    if !config.colon_socle && d >= 1 {
        let f = irreducibility_coefficients(ring, &target, &opts)
            .map_err(|e| CliError::lib("irreducibility_coefficients", e))?;
        let _ = writeln!(text, "f = ({})", show_list(&f.coefficients.coefficients));
        report.push(format!("f.{label}"), "irreducibility_coefficients", Value::IntegerList(f.coefficients.coefficients));
    }
    Ok(())
}

pub fn classification_values(c: &ClassificationReport, report: &mut Report, text: &mut String) {
    let op = "classify_ring";
    let _ = writeln!(text, "ring              {}", c.ring);
    if let Some(d) = c.dimension {
        let _ = writeln!(text, "dimension         {d}");
        report.push("dimension", "krull_dimension", Value::Integer(d as i64));
    }
    for (name, v) in [
        ("cohen_macaulay", c.cohen_macaulay),
        ("gorenstein", c.gorenstein),
        ("generalized_cm", c.generalized_cm),
        ("unmixed", c.is_unmixed()),
    ] {
        let _ = writeln!(text, "{:<18}{}", name.replace('_', "-"), yes_no(v));
        if let Some(b) = v {
            report.push(name, op, Value::Boolean(b));
        }
    }
    if let Some(u) = &c.unmixed_component {
        let dim = c.unmixed_dimension.map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(text, "unmixed component {u} (dim {dim})");
        report.push("unmixed_component", "unmixed_component", Value::Text(u.clone()));
        if let Some(d) = c.unmixed_dimension {
            report.push("unmixed_dimension", "unmixed_component", Value::Integer(d as i64));
        }
    }
    if let Some(h) = &c.h {
        let _ = writeln!(text, "h                 {}", show_lengths(h));
        report.push("h", "ext_report", Value::LengthList(h.clone()));
    }
    if let Some(r) = &c.r {
        let _ = writeln!(text, "r                 {}", show_list(&ints(r)));
        report.push("r", "ext_report", Value::IntegerList(ints(r)));
    }
    if let Some(s) = &c.stable_value {
        let _ = writeln!(text, "stable value      {} (estimated, depth {})", s.value, s.depth);
        report.push("stable_value", "stable_value_estimate", Value::Integer(s.value as i64));
        report.push("stable_value.depth", "stable_value_estimate", Value::Integer(s.depth as i64));
    }
    if let Some(q) = &c.reference {
        let _ = writeln!(text, "reference q       depth {}, seed {}", q.depth, q.seed);
        let _ = writeln!(text, "  length {}  ir {}", q.length, q.ir);
        let _ = writeln!(text, "  e(q)   = ({})", show_list(&q.e));
        let _ = writeln!(text, "  e(q:m) = ({})", show_list(&q.e_colon));
        report.push("reference.generators", "deep_parameter_ideal", Value::TextList(q.generators.clone()));
        report.push("reference.length", "quotient_length", Value::Integer(q.length as i64));
        report.push("reference.ir", "index_of_reducibility", Value::Integer(q.ir as i64));
        report.push("reference.e", "hilbert_coefficients", Value::IntegerList(q.e.clone()));
        report.push("reference.e_colon", "hilbert_coefficients", Value::IntegerList(q.e_colon.clone()));
        if let Some(f0) = q.f0 {
            let _ = writeln!(text, "  f0     = {f0}");
            report.push("reference.f0", "irreducibility_coefficients", Value::Integer(f0));
        }
    }
    if let Some(x) = &c.xi1 {
        xi_values(x, report, text);
    }
    for f in &c.failures {
        let _ = writeln!(text, "failed stage {}: {}", f.stage, f.error);
        report.push(format!("failure.{}", f.stage), op, Value::Text(f.error.clone()));
    }
}

fn xi_values(x: &chernlab::XiSample, report: &mut Report, text: &mut String) {
    let name = format!("xi{}", x.i);
    for t in &x.depths {
        let vals = x.values_at(*t);
        let _ = writeln!(text, "e_{}(q:m) depth {t}: {}", x.i, show_list(&vals));
        report.push(format!("{name}.depth{t}"), "xi_sample", Value::IntegerList(vals));
    }
    let distinct: Vec<i64> = x.distinct_values().into_iter().collect();
    let _ = writeln!(text, "distinct values: {} ({})", distinct.len(), show_list(&distinct));
    report.push(format!("{name}.distinct"), "xi_sample", Value::Integer(distinct.len() as i64));
    for f in &x.failures {
        let _ = writeln!(text, "trial failed (depth {}, seed {}): {}", f.depth, f.seed, f.error);
        report.push(format!("{name}.failure.{}.{}", f.depth, f.seed), "xi_sample", Value::Text(f.error.clone()));
    }
}

fn xi(ring: &RingDescriptor, config: &Config, report: &mut Report, text: &mut String) -> Result<(), CliError> {
    let x = xi_sample(ring, config.index, config.trials, config.depths(), config.seed)
        .map_err(|e| CliError::lib("xi_sample", e))?;
    xi_values(&x, report, text);
    if x.values.is_empty() {
        return Err(CliError::math("xi_sample", "every trial failed"));
    }
    Ok(())
}

fn verify(
    file: &RingFile,
    ring: &RingDescriptor,
    config: &Config,
    report: &mut Report,
    text: &mut String,
) -> Result<(Vec<LedgerEntry>, bool), CliError> {
    let c = classify_ring(ring, &config.invariant_options());
    classification_values(&c, report, text);
    let mut ledger = c.ledger.clone();
    let mut failures = !c.failures.is_empty();
    match verify_h0(ring) {
        Ok(e) => ledger.push(e),
        Err(e) => {
            failures = true;
            let _ = writeln!(text, "failed stage verify_h0: {e}");
        }
    }
    if c.is_unmixed() == Some(false) && c.dimension.unwrap_or(0) >= 1 {
        let depth = c.reference.as_ref().map_or(2, |r| r.depth);
        let entry = deep_parameter_ideal(ring, depth, config.seed)
            .and_then(|q| verify_colon_transfer(ring, &q));
        match entry {
            Ok(e) => ledger.push(e),
            Err(e) => {
                failures = true;
                let _ = writeln!(text, "failed stage colon-transfer: {e}");
            }
        }
    }
    if let Some(name) = &config.ideal {
        let ideal = file.ideal(ring, name)?;
        let q = ParameterIdeal::from_ideal(ideal).map_err(|e| CliError::lib("parameter ideal", e))?;
        let es = verify_reduction_lemmas(ring, &q, config.seed).map_err(|e| CliError::lib("verify_reduction_lemmas", e))?;
        ledger.extend(es.into_iter().map(|mut e| {
            e.id = format!("{name}.{}", e.id);
            e
        }));
    }
    sort_ledger(&mut ledger);
    Ok((ledger, failures))
}

fn resolve(ring: &RingDescriptor, report: &mut Report, text: &mut String) -> Result<(), CliError> {
    let res = free_resolution(ring, true).map_err(|e| CliError::lib("free_resolution", e))?;
    let betti = res.betti_numbers();
    let _ = writeln!(text, "betti numbers     {}", show_list(&ints(&betti)));
    report.push("betti", "free_resolution", Value::IntegerList(ints(&betti)));
    for (i, degs) in res.degrees.iter().enumerate() {
        let _ = writeln!(text, "  F{i} degrees      {}", show_list(degs));
        report.push(format!("degrees.{i}"), "free_resolution", Value::IntegerList(degs.clone()));
    }
    let ext = ext_report(ring).map_err(|e| CliError::lib("ext_report", e))?;
    let _ = writeln!(text, "{:>4}  {:>6}  {:>6}  {:>4}", "i", "dim", "length", "mu");
    for s in ext.summary() {
        let dim = s.dimension.map_or("-".to_string(), |d| d.to_string());
        let len = s.length.map_or("inf".to_string(), |l| l.to_string());
        let _ = writeln!(text, "{:>4}  {dim:>6}  {len:>6}  {:>4}", s.index, s.mu);
    }
    let lengths: Vec<Option<u64>> = ext.summary().iter().map(|s| s.length).collect();
    let mu: Vec<i64> = ext.summary().iter().map(|s| s.mu as i64).collect();
    report.push("ext.length", "ext_report", Value::LengthList(lengths));
    report.push("ext.mu", "ext_report", Value::IntegerList(mu));
    Ok(())
}

fn write_ledger(ledger: &[LedgerEntry], text: &mut String) {
    if ledger.is_empty() {
        return;
    }
    let _ = writeln!(text, "ledger:");
    for e in ledger {
        let _ = writeln!(text, "  {e}");
    }
}
