//! INI-style ring descriptions.
//!
//! ```text
//! char = 32003
//! vars = x, y, z, w
//! relations = x*w; y*w; z*w
//!
//! [ideal q]
//! gens = x - w; y - w; z - w
//!
//! [options]
//! max_n = 6
//! depth = 1..3
//!
//! [expect]
//! hilbert.q = 2, 6, 13, 24
//! ```
//!
//! Top-level keys: `name`, `char`, `vars`, `weights`, `relations`. Lists of
//! variables and weights are comma-separated, polynomial lists use `;`.
//! Unknown keys and sections are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::Path;

use chernlab::{Ideal, RingDescriptor};
use ini::{Ini, ParseOption};

use crate::CliError;

/// Sampling options read from `[options]`; command-line flags override them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub max_n: Option<usize>,
    pub depth: Option<RangeInclusive<u32>>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RingFile {
    pub name: String,
    pub characteristic: u64,
    pub vars: Vec<String>,
    pub weights: Option<Vec<u32>>,
    pub relations: Vec<String>,
    /// Named ideals in file order.
    pub ideals: Vec<(String, Vec<String>)>,
    pub options: FileOptions,
    /// Raw `[expect]` entries, checked by `corpus-check`.
    pub expect: BTreeMap<String, String>,
    /// File contents, hashed into report provenance.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingFileError(pub String);

impl fmt::Display for RingFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for RingFileError {}

fn err<T>(msg: impl Into<String>) -> Result<T, RingFileError> {
    Err(RingFileError(msg.into()))
}

pub fn split_list(s: &str, sep: char) -> Vec<String> {
    s.split(sep).map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, RingFileError> {
    v.trim()
        .parse()
        .map_err(|_| RingFileError(format!("`{key}`: cannot read `{v}` as a number")))
}

/// `A..B` or a single depth `A`.
pub fn parse_depth_range(s: &str) -> Result<RangeInclusive<u32>, RingFileError> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse_num::<u32>("depth", a)?, parse_num::<u32>("depth", b.trim_start_matches('='))?),
        None => {
            let a = parse_num::<u32>("depth", s)?;
            (a, a)
        }
    };
    if a == 0 || b < a {
        return err(format!("depth range `{s}` must satisfy 1 <= A <= B"));
    }
    Ok(a..=b)
}

fn single<'a>(props: &'a ini::Properties, key: &str) -> Result<Option<&'a str>, RingFileError> {
    let all: Vec<&str> = props.get_all(key).collect();
    match all.len() {
        0 => Ok(None),
        1 => Ok(Some(all[0])),
        _ => err(format!("key `{key}` given more than once")),
    }
}

fn check_keys(section: &str, props: &ini::Properties, allowed: &[&str]) -> Result<(), RingFileError> {
    for (k, _) in props.iter() {
        if !allowed.contains(&k) {
            return err(format!("unknown key `{k}` in {section}"));
        }
    }
    Ok(())
}

impl RingFile {
    pub fn parse(text: &str, default_name: &str) -> Result<Self, RingFileError> {
        let opts = ParseOption {
            enabled_quote: false,
            enabled_escape: false,
            ..Default::default()
        };
        let ini = Ini::load_from_str_opt(text, opts).map_err(|e| RingFileError(e.to_string()))?;
        let mut file = RingFile {
            name: default_name.to_string(),
            characteristic: chernlab::DEFAULT_CHARACTERISTIC as u64,
            vars: Vec::new(),
            weights: None,
            relations: Vec::new(),
            ideals: Vec::new(),
            options: FileOptions::default(),
            expect: BTreeMap::new(),
            source: text.to_string(),
        };
        let mut seen_vars = false;
        for (section, props) in ini.iter() {
            match section.map(str::trim) {
                None => {
                    check_keys("the ring header", props, &["name", "char", "vars", "weights", "relations"])?;
                    if let Some(n) = single(props, "name")? {
                        file.name = n.trim().to_string();
                    }
                    if let Some(c) = single(props, "char")? {
                        file.characteristic = parse_num("char", c)?;
                    }
                    if let Some(v) = single(props, "vars")? {
                        file.vars = split_list(v, ',');
                        seen_vars = true;
                    }
                    if let Some(w) = single(props, "weights")? {
                        file.weights = Some(
                            split_list(w, ',')
                                .iter()
                                .map(|x| parse_num("weights", x))
                                .collect::<Result<_, _>>()?,
                        );
                    }
                    if let Some(r) = single(props, "relations")? {
                        file.relations = split_list(r, ';');
                    }
                }
                Some("options") => {
                    check_keys("[options]", props, &["max_n", "depth", "seed", "trials"])?;
                    if let Some(v) = single(props, "max_n")? {
                        file.options.max_n = Some(parse_num("max_n", v)?);
                    }
                    if let Some(v) = single(props, "depth")? {
                        file.options.depth = Some(parse_depth_range(v)?);
                    }
                    if let Some(v) = single(props, "seed")? {
                        file.options.seed = Some(parse_num("seed", v)?);
                    }
                    if let Some(v) = single(props, "trials")? {
                        file.options.trials = Some(parse_num("trials", v)?);
                    }
                }
                Some("expect") => {
                    for (k, v) in props.iter() {
                        if file.expect.insert(k.to_string(), v.trim().to_string()).is_some() {
                            return err(format!("expectation `{k}` given more than once"));
                        }
                    }
                }
                Some(s) => {
                    let Some(name) = s.strip_prefix("ideal ").map(str::trim).filter(|n| !n.is_empty()) else {
                        return err(format!("unknown section [{s}]"));
                    };
                    check_keys(&format!("[ideal {name}]"), props, &["gens"])?;
                    let Some(g) = single(props, "gens")? else {
                        return err(format!("[ideal {name}] has no `gens`"));
                    };
                    if name == "m" || file.ideals.iter().any(|(n, _)| n == name) {
                        return err(format!("ideal name `{name}` is reserved or repeated"));
                    }
                    file.ideals.push((name.to_string(), split_list(g, ';')));
                }
            }
        }
        if !seen_vars || file.vars.is_empty() {
            return err("missing `vars`");
        }
        if let Some(w) = &file.weights {
            if w.len() != file.vars.len() {
                return err(format!("{} weights for {} variables", w.len(), file.vars.len()));
            }
        }
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input("read ring file", format!("{}: {e}", path.display())))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("R");
        let stem = stem.strip_suffix(".ring").unwrap_or(stem);
        Self::parse(&text, stem).map_err(|e| CliError::input("parse ring file", format!("{}: {e}", path.display())))
    }

    pub fn descriptor(&self) -> Result<RingDescriptor, CliError> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let rels: Vec<&str> = self.relations.iter().map(String::as_str).collect();
        RingDescriptor::from_strings(&self.name, self.characteristic, &vars, self.weights.as_deref(), &rels)
            .map_err(|e| CliError::lib("build ring", e))
    }

    /// A named ideal, or the maximal ideal for `m`.
    pub fn ideal(&self, ring: &RingDescriptor, name: &str) -> Result<Ideal, CliError> {
        if name == "m" {
            return Ok(Ideal::maximal(ring));
        }
        let Some((_, gens)) = self.ideals.iter().find(|(n, _)| n == name) else {
            return Err(CliError::input("select ideal", format!("no ideal named `{name}` in {}", self.name)));
        };
        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
        Ideal::parse(ring, &gens).map_err(|e| CliError::lib(&format!("parse ideal {name}"), e))
    }

    /// `--ideal NAME`, else the only ideal in the file.
    pub fn pick_ideal(&self, ring: &RingDescriptor, name: Option<&str>) -> Result<(String, Ideal), CliError> {
        let name = match (name, self.ideals.as_slice()) {
            (Some(n), _) => n.to_string(),
            (None, [(n, _)]) => n.clone(),
            (None, []) => return Err(CliError::input("select ideal", format!("{} declares no ideals", self.name))),
            (None, _) => return Err(CliError::input("select ideal", "several ideals declared; pass --ideal NAME")),
        };
        let ideal = self.ideal(ring, &name)?;
        Ok((name, ideal))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "char = 32003\nvars = x, y, z, w\nrelations = x*w; y*w; z*w\n\n[ideal q]\ngens = x - w; y - w; z - w\n";

    #[test]
    fn reads_the_example() {
        let f = RingFile::parse(EXAMPLE, "paper-example").unwrap();
        assert_eq!(f.characteristic, 32003);
        assert_eq!(f.vars, ["x", "y", "z", "w"]);
        assert_eq!(f.relations, ["x*w", "y*w", "z*w"]);
        assert_eq!(f.ideals[0].1, ["x - w", "y - w", "z - w"]);
        let r = f.descriptor().unwrap();
        let (name, q) = f.pick_ideal(&r, None).unwrap();
        assert_eq!(name, "q");
        assert_eq!(q.gens().len(), 3);
        assert!(f.ideal(&r, "m").unwrap().same_as(&Ideal::maximal(&r)));
    }

    #[test]
    fn options_and_weights() {
        let text = "# weighted\nvars = x, y, z\nweights = 3, 4, 5\nrelations = y^2 - x*z\n[options]\nmax_n = 4\ndepth = 2..3\nseed = 9\ntrials = 5\n[expect]\ncohen_macaulay = true\n";
        let f = RingFile::parse(text, "c").unwrap();
        assert_eq!(f.weights, Some(vec![3, 4, 5]));
        assert_eq!(
            f.options,
            FileOptions {
                max_n: Some(4),
                depth: Some(2..=3),
                seed: Some(9),
                trials: Some(5)
            }
        );
        assert_eq!(f.expect["cohen_macaulay"], "true");
        assert_eq!(f.characteristic, 32003);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "vars = x\ncolour = red\n",
            "vars = x\n[ideal q]\ngens = x\nextra = 1\n",
            "vars = x\n[stuff]\na = 1\n",
            "relations = x\n",
            "vars = x, y\nweights = 1\n",
            "vars = x\n[options]\ndepth = 3..1\n",
            "vars = x\n[options]\nseed = many\n",
            "vars = x\nvars = y\n",
            "vars = x\n[ideal m]\ngens = x\n",
            "vars = x\n[ideal q]\n",
        ] {
            assert!(RingFile::parse(bad, "r").is_err(), "{bad:?}");
        }
    }

    #[test]
    fn depth_ranges() {
        assert_eq!(parse_depth_range("1..3").unwrap(), 1..=3);
        assert_eq!(parse_depth_range("2").unwrap(), 2..=2);
        assert!(parse_depth_range("0..2").is_err());
    }
}
