//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::autgroup::{compute_aut, identify_type, Group};
use crate::error::{Error, Result};
use crate::omega::{cocycle, OmegaVec, PointConfig};
use crate::presets::Preset;
use crate::ratfunc::RatFn;
use crate::reptheory::{decompose, ConfigEcho, ReportOptions};
use crate::verify::{preset_notes, verify_decomposition};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_COMPUTE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "npoint", version, about = "Automorphism groups and isotypic decompositions of Omega/dR for N-point rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose Omega/dR into isotypic components under the automorphism group.
    Decompose(DecomposeArgs),
    /// Compute the automorphism group only.
    Aut(AutArgs),
    /// Class of f dg in Omega/dR.
    Cocycle(CocycleArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// cyclic:n, dihedral:n, d4-special, s4, a4 or a5
    #[arg(long)]
    pub preset: Option<Preset>,
    /// JSON file of the form {"conductor": n, "points": [expr, ...]}
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
    /// Check the published decomposition bound to the preset.
    #[arg(long)]
    pub verify: bool,
    /// Include the isotypic projector matrices.
    #[arg(long)]
    pub emit_projectors: bool,
    /// Add floating-point approximations of character values.
    #[arg(long)]
    pub approx: bool,
    /// List every group element.
    #[arg(long)]
    pub elements: bool,
}

#[derive(Args, Debug)]
pub struct AutArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Args, Debug)]
pub struct CocycleArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub g: String,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Preset(Preset),
    File(PathBuf),
}

/// A validated decompose invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub source: Source,
    pub output: OutputFormat,
    pub verify: bool,
    pub emit_projectors: bool,
    pub approx: bool,
    pub include_elements: bool,
}

impl From<&SourceArgs> for Source {
    fn from(args: &SourceArgs) -> Source {
        match (&args.preset, &args.config) {
            (Some(p), _) => Source::Preset(*p),
            (None, Some(path)) => Source::File(path.clone()),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

impl From<&DecomposeArgs> for RunConfig {
    fn from(args: &DecomposeArgs) -> RunConfig {
        RunConfig {
            source: Source::from(&args.source),
            output: args.output,
            verify: args.verify,
            emit_projectors: args.emit_projectors,
            approx: args.approx,
            include_elements: args.elements,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    conductor: u32,
    points: Vec<String>,
}

pub fn parse_config_json(text: &str) -> Result<PointConfig> {
    let file: ConfigFile =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("schema: {e}")))?;
    PointConfig::parse(file.conductor, &file.points)
}

pub fn load_config(path: &Path) -> Result<PointConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_config_json(&text)
}

/// Outcome of a command: exit status and standard output / error text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: u8, e: &Error) -> Outcome {
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

fn resolve(source: &Source) -> std::result::Result<PointConfig, Outcome> {
    match source {
        Source::Preset(p) => p.config(),
        Source::File(path) => load_config(path),
    }
    .map_err(|e| Outcome::fail(EXIT_CONFIG, &e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn run_decompose(rc: &RunConfig) -> Outcome {
    let config = match resolve(&rc.source) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let d = match decompose(&config) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(EXIT_COMPUTE, &e),
    };
    let preset = match rc.source {
        Source::Preset(p) => Some(p),
        Source::File(_) => None,
    };
    let mut report = d.report(ReportOptions {
        include_elements: rc.include_elements,
        emit_projectors: rc.emit_projectors,
        approx: rc.approx,
    });
    if let Some(p) = preset {
        report.notes.extend(preset_notes(p, &d));
    }
    let mut code = EXIT_OK;
    let mut stderr = String::new();
    if rc.verify {
        let checks = verify_decomposition(preset, &d);
        for a in checks.iter().filter(|a| !a.passed) {
            code = EXIT_VERIFY;
            let _ = writeln!(stderr, "FAIL {}: {}", a.name, a.detail);
        }
        report.verification = Some(checks);
    }
    let stdout = match rc.output {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => report.render_table(),
    };
    Outcome { code, stdout, stderr }
}

#[derive(Serialize)]
struct AutReport<'a> {
    config: ConfigEcho,
    group: &'a Group,
}

fn echo(config: &PointConfig) -> ConfigEcho {
    ConfigEcho {
        conductor: config.conductor(),
        points: config.points().iter().map(ToString::to_string).collect(),
    }
}

pub fn run_aut(source: &Source, output: OutputFormat) -> Outcome {
    let config = match resolve(source) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let group = match compute_aut(&config) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(EXIT_COMPUTE, &e),
    };
    match output {
        OutputFormat::Json => Outcome::ok(to_json(&AutReport { config: echo(&config), group: &group })),
        OutputFormat::Table => {
            let mut out = String::new();
            let kind = identify_type(&group).map_or_else(|e| e.to_string(), |t| t.to_string());
            let _ = writeln!(out, "group: {kind} (order {})", group.order());
            for (i, m) in group.elements().iter().enumerate() {
                let _ = writeln!(out, "  g{i:<3} {m}");
            }
            let _ = writeln!(out, "classes:");
            for class in group.classes() {
                let members: Vec<String> = class.iter().map(|i| format!("g{i}")).collect();
                let _ = writeln!(out, "  {{{}}}", members.join(", "));
            }
            Outcome::ok(out)
        }
    }
}

#[derive(Serialize)]
struct CocycleReport<'a> {
    config: ConfigEcho,
    f: &'a str,
    g: &'a str,
    class: OmegaVec,
}

pub fn run_cocycle(source: &Source, f: &str, g: &str, output: OutputFormat) -> Outcome {
    let config = match resolve(source) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let parsed = RatFn::parse(f, config.conductor()).and_then(|rf| Ok((rf, RatFn::parse(g, config.conductor())?)));
    let (rf, rg) = match parsed {
        Ok(p) => p,
        Err(e) => return Outcome::fail(EXIT_CONFIG, &e),
    };
    let class = match cocycle(&rf, &rg, &config) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(EXIT_COMPUTE, &e),
    };
    match output {
        OutputFormat::Json => Outcome::ok(to_json(&CocycleReport { config: echo(&config), f, g, class })),
        OutputFormat::Table => {
            let mut out = String::new();
            for (i, (p, c)) in config.points().iter().zip(&class.coeffs).enumerate() {
                let _ = writeln!(out, "omega_{i:<3} (t = {p})  {c}");
            }
            Outcome::ok(out)
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Decompose(args) => run_decompose(&RunConfig::from(args)),
        Command::Aut(args) => run_aut(&Source::from(&args.source), args.output),
        Command::Cocycle(args) => run_cocycle(&Source::from(&args.source), &args.f, &args.g, args.output),
    }
}

/// Parses arguments, runs, and writes the outcome to the given streams.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let outcome = run(&cli);
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.code
}
