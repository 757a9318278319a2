use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::commands::{Config, Flags};
use crate::expect::{Check, Evaluator};
use crate::ringfile::RingFile;
use crate::CliError;

#[derive(Debug, Clone)]
pub struct FixtureResult {
    pub path: PathBuf,
    pub name: String,
    pub checks: Vec<Check>,
    /// Checks that could not be evaluated, with the failing stage.
    pub errors: Vec<(String, CliError)>,
}

impl FixtureResult {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{status} {} ({})", self.name, self.path.display());
        for c in &self.checks {
            if c.pass {
                let _ = writeln!(s, "  ok   {} = {}", c.key, c.actual);
            } else {
                let _ = writeln!(s, "  diff {}", c.key);
                let _ = writeln!(s, "    - expected {}", c.expected);
                let _ = writeln!(s, "    + actual   {}", c.actual);
            }
        }
        for (key, e) in &self.errors {
            let _ = writeln!(s, "  err  {key}: {e}");
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct CorpusSummary {
    pub fixtures: Vec<FixtureResult>,
}

impl CorpusSummary {
    pub fn passed(&self) -> bool {
        self.fixtures.iter().all(FixtureResult::passed)
    }

    pub fn render(&self) -> String {
        let mut s: String = self.fixtures.iter().map(FixtureResult::render).collect();
        let ok = self.fixtures.iter().filter(|f| f.passed()).count();
        let _ = writeln!(s, "{ok}/{} fixtures passed", self.fixtures.len());
        s
    }
}

pub fn ring_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::input("read corpus", format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ring"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::input("read corpus", format!("no .ring files in {}", dir.display())));
    }
    Ok(files)
}

pub fn check_file(path: &Path, flags: &Flags) -> Result<FixtureResult, CliError> {
    let file = RingFile::load(path)?;
    if file.expect.is_empty() {
        return Err(CliError::input("read expectations", format!("{} has no [expect] section", path.display())));
    }
    let eval = Evaluator::new(&file, Config::resolve(&file, flags))?;
    let mut result = FixtureResult {
        path: path.to_path_buf(),
        name: file.name.clone(),
        checks: Vec::new(),
        errors: Vec::new(),
    };
    for (key, expected) in &file.expect {
        match eval.check(key, expected) {
            Ok(c) => result.checks.push(c),
            Err(e) if e.kind == crate::ErrorKind::Input && e.stage == "read expectations" => return Err(e),
            Err(e) => result.errors.push((key.clone(), e)),
        }
    }
    Ok(result)
}

/// Checks every `.ring` file of `dir` against its `[expect]` section.
pub fn corpus_check(dir: &Path, flags: &Flags) -> Result<CorpusSummary, CliError> {
    let files = ring_files(dir)?;
    let fixtures = files
        .par_iter()
        .map(|p| check_file(p, flags))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CorpusSummary { fixtures })
}

/// The corpus shipped with this crate.
pub fn default_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}
