//! Command-line front end.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::catalog::{
    canonical_params, disk_char, disk_rep, global_rep, wcar_rep, wcar_zero_rep, wtcar_char,
    wtcar_rep, Representation,
};
use crate::classify::classify;
use crate::error::Error;
use crate::linalg::{op_norm, C64};
use crate::literal::{format_coefficient, parse_complex};
use crate::matrix_file::{format_matrix_file, parse_matrix_file};
use crate::report::{CheckResult, NamedMatrix, Report};
use crate::structure::{anticommutator_terms, central_value};
use crate::suites::{run_suite, Suite, SuiteConfig, NORM_SLACK};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "carwb",
    version,
    about = "Representations and function-algebra checks for Wick-type CAR algebras"
)]
struct Cli {
    /// Tolerance for residual checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Points per real axis.
    #[arg(long, global = true, default_value_t = 5)]
    grid: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random sampling, decimal or 0x-prefixed hex.
    #[arg(long, global = true, default_value = "0x5EED", value_parser = parse_seed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructFamily {
    /// `π_{x,φ}`, two-dimensional.
    Disk,
    /// The character `e^{iφ}/√2`.
    DiskChar,
    Wtcar,
    WtcarChar,
    /// WCAR with `a1 a2 + a2 a1 = y`.
    Wcar,
    /// WCAR with `y = 0`.
    Wcarz,
    /// The four-dimensional family over the whole parameter box.
    Global,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a catalog representation and print its generators.
    Construct {
        #[arg(long, value_enum)]
        family: ConstructFamily,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        mu: f64,
        /// Complex literal such as `0.3+0.1i`.
        #[arg(long, default_value = "0", value_parser = parse_c64, allow_hyphen_values = true)]
        y: C64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x2: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi1: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi2: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        r1: f64,
    },
    /// Match a matrix file against the presets and the catalog.
    Classify { input: PathBuf },
    /// Run a verification suite.
    Verify {
        /// relations, equivalence, lemma12, boundary:<algebra>, sw:<family> or torus.
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Points per angle.
        #[arg(long, default_value_t = 4)]
        angles: usize,
        #[arg(long, default_value = "0.5", value_parser = parse_c64, allow_hyphen_values = true)]
        y: C64,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0.5)]
        mu: f64,
        /// Random pairs for the two-point suites.
        #[arg(long, default_value_t = 500)]
        pairs: usize,
    },
    /// Re-emit a structured report.
    Report { input: PathBuf },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    }
    .map_err(|e| format!("invalid seed `{s}`: {e}"))
}

fn parse_c64(s: &str) -> Result<C64, String> {
    parse_complex(s)
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn config_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_CONFIG,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Outcome::config_error(format!("--tol must be positive, got {}", cli.tol));
    }
    if cli.grid < 2 {
        return Outcome::config_error(format!("--grid must be at least 2, got {}", cli.grid));
    }
    let result = match &cli.command {
        Command::Construct { .. } => construct(&cli),
        Command::Classify { input } => classify_cmd(&cli, input),
        Command::Verify { .. } => verify(&cli),
        Command::Report { input } => report_cmd(&cli, input),
    };
    let (code, text) = match result {
        Ok(v) => v,
        Err(message) => return Outcome::config_error(message),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::config_error(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

type CmdResult = Result<(i32, String), String>;

fn base_config(cli: &Cli) -> BTreeMap<String, String> {
    let mut c = BTreeMap::new();
    c.insert("tol".into(), format!("{:e}", cli.tol));
    c.insert("grid".into(), cli.grid.to_string());
    c.insert(
        "seed".into(),
        format!("{:#X}", cli.seed).replace("0X", "0x"),
    );
    c
}

fn render(cli: &Cli, report: &Report, text: impl FnOnce() -> String) -> String {
    match cli.format {
        Format::Structured => report.to_json(),
        Format::Text => text(),
    }
}

fn exit_for(report: &Report) -> i32 {
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn construct(cli: &Cli) -> CmdResult {
    let Command::Construct {
        family,
        x,
        phi,
        d,
        mu,
        y,
        x1,
        x2,
        phi1,
        phi2,
        r1,
    } = cli.command
    else {
        unreachable!()
    };
    let rep: Representation = match family {
        ConstructFamily::Disk => disk_rep(x, phi),
        ConstructFamily::DiskChar => Ok(disk_char(phi)),
        ConstructFamily::Wtcar => wtcar_rep(d, mu, x, phi),
        ConstructFamily::WtcarChar => wtcar_char(d, mu, phi),
        ConstructFamily::Wcar => wcar_rep(y, x1, x2, phi1, phi2),
        ConstructFamily::Wcarz => wcar_zero_rep(x1, x2, phi1, phi2),
        ConstructFamily::Global => global_rep(r1, x1, x2, phi, phi1, phi2),
    }
    .map_err(|e| e.to_string())?;
    let source = rep
        .source
        .expect("catalog representations carry their point");
    let canonical = canonical_params(&source).map_err(|e| e.to_string())?;
    let mut config = base_config(cli);
    config.insert("family".into(), source.family().to_string());
    config.insert("point".into(), source.to_string());
    config.insert("canonical".into(), canonical.to_string());
    let named: Vec<(String, crate::linalg::ComplexMatrix)> = rep
        .generators
        .iter()
        .enumerate()
        .map(|(k, g)| (format!("a{}", k + 1), g.clone()))
        .collect();
    let residual = rep.residual().unwrap_or(f64::NAN);
    let mut results = vec![CheckResult::upper("residual", residual, cli.tol)
        .at(source)
        .with_detail(
            rep.presentation
                .as_ref()
                .map(|p| p.name.clone())
                .unwrap_or_default(),
        )
        .with_matrices(named.iter().map(|(n, m)| NamedMatrix::new(n, m)).collect())];
    for (n, m) in &named {
        let norm = op_norm(m);
        results.push(
            CheckResult::upper(format!("norm_excess.{n}"), norm - 1.0, NORM_SLACK)
                .with_detail(format!("norm {norm}")),
        );
    }
    if rep.generators.len() == 2 {
        if let Some(c) = central_value(&rep, &anticommutator_terms()) {
            results.push(
                CheckResult::flag("central_value", true)
                    .with_detail(format!("y = {}", format_coefficient(c))),
            );
        }
    }
    let report = Report::new("construct", config, results);
    let text = render(cli, &report, || {
        let mut s = String::new();
        let _ = writeln!(s, "# family {}", source.family());
        let _ = writeln!(s, "# point {source}");
        let _ = writeln!(s, "# canonical {canonical}");
        let _ = writeln!(s, "# residual {residual:.3e}");
        for r in &report.results[1..] {
            let _ = writeln!(
                s,
                "# {} {}",
                r.check,
                r.detail
                    .clone()
                    .unwrap_or_else(|| format!("{:.17}", r.value))
            );
        }
        s.push_str(&format_matrix_file(&named));
        s
    });
    Ok((exit_for(&report), text))
}

fn classify_cmd(cli: &Cli, input: &PathBuf) -> CmdResult {
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let named = parse_matrix_file(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    if named.is_empty() {
        return Err(format!("{}: no matrices", input.display()));
    }
    let gens: Vec<_> = named.iter().map(|(_, m)| m.clone()).collect();
    let c = classify(&gens, cli.tol).map_err(|e: Error| e.to_string())?;
    let mut config = base_config(cli);
    config.insert("input".into(), input.display().to_string());
    let mut results = Vec::new();
    for f in &c.fits {
        let holds = f.residual <= cli.tol;
        results.push(
            CheckResult::upper(format!("preset.{}", f.preset), f.residual, cli.tol)
                .with_detail(if holds { "holds" } else { "fails" }),
        );
    }
    if let Some(y) = c.central {
        results.push(
            CheckResult::flag("central_value", true)
                .with_detail(format!("y = {}", format_coefficient(y))),
        );
    }
    results.push(
        CheckResult::flag("irreducible", c.irreducible).with_detail(if c.irreducible {
            "irreducible".to_string()
        } else {
            "reducible".to_string()
        }),
    );
    for (k, b) in c.blocks.iter().enumerate() {
        let mut detail = format!("dim {} multiplicity {}", b.dim, b.multiplicity);
        if !b.values.is_empty() {
            let vals: Vec<String> = b.values.iter().map(|v| format_coefficient(*v)).collect();
            let _ = write!(detail, ", character {}", vals.join(", "));
        }
        if let Some(p) = b.point {
            let _ = write!(detail, ", {}", p.family());
        }
        let mut r = CheckResult::flag(format!("block{}", k + 1), true).with_detail(detail);
        if let Some(p) = b.point {
            r = r.at(p);
        }
        results.push(r);
    }
    let family = match c.point {
        Some(p) => CheckResult::flag("family", true)
            .with_detail(p.family().to_string())
            .at(p),
        None => CheckResult::flag("family", false).with_detail("unclassified"),
    };
    results.push(family);
    let report = Report::new("classify", config, results);
    let out = render(cli, &report, || {
        let mut s = String::new();
        for f in &c.fits {
            let _ = writeln!(
                s,
                "preset {:<24} residual {:.3e} {}",
                f.preset,
                f.residual,
                if f.residual <= cli.tol {
                    "holds"
                } else {
                    "fails"
                }
            );
        }
        if let Some(y) = c.central {
            let _ = writeln!(s, "y = {}", format_coefficient(y));
        }
        let _ = writeln!(
            s,
            "{}",
            if c.irreducible {
                "irreducible"
            } else {
                "reducible"
            }
        );
        for r in report
            .results
            .iter()
            .filter(|r| r.check.starts_with("block"))
        {
            let _ = writeln!(s, "{}: {}", r.check, r.detail.as_deref().unwrap_or(""));
        }
        match c.point {
            Some(p) => {
                let _ = writeln!(s, "family {} at {p}", p.family());
            }
            None => s.push_str("unclassified\n"),
        }
        s
    });
    Ok((EXIT_PASS, out))
}

fn verify(cli: &Cli) -> CmdResult {
    let Command::Verify {
        suite,
        angles,
        y,
        eps,
        d,
        mu,
        pairs,
    } = cli.command
    else {
        unreachable!()
    };
    let cfg = SuiteConfig {
        tol: cli.tol,
        grid: cli.grid,
        angles,
        seed: cli.seed,
        y,
        eps,
        d,
        mu,
        pairs,
    };
    let results = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
    let mut config = base_config(cli);
    config.insert("suite".into(), suite.to_string());
    config.insert("angles".into(), angles.to_string());
    config.insert("y".into(), format_coefficient(y));
    config.insert("eps".into(), eps.to_string());
    config.insert("d".into(), d.to_string());
    config.insert("mu".into(), mu.to_string());
    config.insert("pairs".into(), pairs.to_string());
    let report = Report::new("verify", config, results);
    let text = render(cli, &report, || report.to_text());
    Ok((exit_for(&report), text))
}

fn report_cmd(cli: &Cli, input: &PathBuf) -> CmdResult {
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let report = Report::from_json(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    Ok((EXIT_PASS, render(cli, &report, || report.to_text())))
}
