use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use chernlab_cli::corpus::{corpus_check, default_corpus};
use chernlab_cli::ringfile::parse_depth_range;
use chernlab_cli::{run, CliError, Command, Flags, RingFile};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "chernlab", version, about = "Hilbert coefficients and ring invariants of graded quotients")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Table of ℓ(R/I^{n+1}) for n = 0..=max-n.
    Hilbert(RingArgs),
    /// Table of ir(I^{n+1}) for n = 0..=max-n.
    Ir(RingArgs),
    /// Fitted Hilbert coefficients of an ideal (or of I : m with --colon-socle).
    Coeffs(RingArgs),
    /// CM / Gorenstein / generalized CM verdicts, local cohomology and the ledger.
    Classify(RingArgs),
    /// e_i(q : m) over generated parameter ideals.
    XiSample(RingArgs),
    /// Every checked identity and inequality; exits 1 if one fails.
    Verify(RingArgs),
    /// Minimal free resolution and Ext^i(R, S).
    Resolve(RingArgs),
    /// Compare every ring file of a directory with its [expect] section.
    CorpusCheck {
        /// Defaults to the bundled corpus.
        dir: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RingArgs {
    ring: PathBuf,
    /// Named ideal from the ring file; `m` is the maximal ideal.
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Depth range `A..B`.
    #[arg(long, value_parser = depth_arg)]
    depth: Option<std::ops::RangeInclusive<u32>>,
    /// Trials per depth.
    #[arg(long)]
    trials: Option<usize>,
    /// Coefficient index for xi-sample.
    #[arg(long)]
    index: Option<usize>,
    #[arg(long)]
    colon_socle: bool,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

fn depth_arg(s: &str) -> Result<std::ops::RangeInclusive<u32>, String> {
    parse_depth_range(s).map_err(|e| e.to_string())
}

fn write_json(path: &PathBuf, json: &str) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        print!("{json}");
        return Ok(());
    }
    std::fs::write(path, json).map_err(|e| CliError::input("write report", format!("{}: {e}", path.display())))
}

fn ring_command(command: Command, a: RingArgs) -> Result<i32, CliError> {
    let file = RingFile::load(&a.ring)?;
    let flags = Flags {
        ideal: a.ideal,
        max_n: a.max_n,
        seed: a.seed,
        depth: a.depth,
        trials: a.trials,
        index: a.index,
        colon_socle: a.colon_socle,
    };
    let out = run(command, &file, &flags)?;
    let to_stdout = a.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout {
        print!("{}", out.text);
    }
    if let Some(p) = &a.json {
        write_json(p, &out.report.to_json())?;
    }
    Ok(out.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Hilbert(a) => ring_command(Command::Hilbert, a),
        Cmd::Ir(a) => ring_command(Command::Ir, a),
        Cmd::Coeffs(a) => ring_command(Command::Coeffs, a),
        Cmd::Classify(a) => ring_command(Command::Classify, a),
        Cmd::XiSample(a) => ring_command(Command::XiSample, a),
        Cmd::Verify(a) => ring_command(Command::Verify, a),
        Cmd::Resolve(a) => ring_command(Command::Resolve, a),
        Cmd::CorpusCheck { dir, json } => {
            let dir = dir.unwrap_or_else(default_corpus);
            corpus_check(&dir, &Flags::default()).and_then(|s| {
                print!("{}", s.render());
                if let Some(p) = &json {
                    let passed: Vec<serde_json::Value> = s
                        .fixtures
                        .iter()
                        .map(|f| {
                            serde_json::json!({
                                "fixture": f.name,
                                "passed": f.passed(),
                                "checks": f.checks.iter().map(|c| serde_json::json!({
                                    "key": c.key, "expected": c.expected, "actual": c.actual, "pass": c.pass,
                                })).collect::<Vec<_>>(),
                                "errors": f.errors.iter().map(|(k, e)| serde_json::json!({
                                    "key": k, "stage": e.stage, "error": e.message,
                                })).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let doc = serde_json::json!({ "command": "corpus-check", "fixtures": passed });
                    write_json(p, &format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")))?;
                }
                Ok(if s.passed() { 0 } else { 1 })
            })
        }
    };
    let _ = std::io::stdout().flush();
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
