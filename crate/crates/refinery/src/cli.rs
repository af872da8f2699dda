//! Argument handling and subcommand dispatch for the `refinery` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Parser, Subcommand, ValueEnum};
use refinery_core::coextensivity::{pushout_along, Analysis, Property};
use refinery_core::commutator::{CommutatorEngine, SearchLimits, TermSearch, DEFAULT_CLONE_LIMIT};
use refinery_core::decomposition::{decompose_with_limit, DecompositionTree};
use refinery_core::lattice::{
    all_congruences_with_limit, factor_congruences_with_limit, DEFAULT_CON_LIMIT,
};
use refinery_core::{Error, FiniteAlgebra};
use serde::Serialize;

use crate::corpus::CorpusConfig;
use crate::dot::{hasse_dot, Hasse};
use crate::format::{
    parse_algebra, parse_partition, partition_to_json, CongruencesDoc, FactorLatticeDoc,
    LatticeDoc, PushoutDoc, TreeDoc, VerdictDoc,
};
use crate::suite::{run_suite, SUITE_PROPERTIES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

pub const CON_LIMIT_ENV: &str = "REFINERY_CON_LIMIT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List the congruences of an algebra.
    Con { file: PathBuf },
    /// Factor congruences with their complements and lattice flags.
    Factors { file: PathBuf },
    /// Hasse diagram of F(A), or of Con(A) with --con.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        con: bool,
    },
    /// Decide one property and print its verdict.
    Check {
        file: PathBuf,
        #[arg(long, value_parser = property_parser())]
        property: Property,
    },
    /// Split into directly indecomposable factors.
    Decompose { file: PathBuf },
    /// Quotient by θ ∨ φ with the induced maps from A/θ and A/φ.
    Pushout {
        file: PathBuf,
        /// Class list such as "[[0,2,4],[1,3,5]]".
        #[arg(long)]
        theta: String,
        #[arg(long)]
        phi: String,
    },
    /// Cross-check the characterizations on the seeded corpus.
    Suite {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 2)]
        max_ops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn property_parser() -> impl TypedValueParser<Value = Property> {
    PossibleValuesParser::new(Property::ALL.map(Property::name))
        .map(|s| s.parse::<Property>().expect("listed names parse"))
}

#[derive(Debug, Parser)]
#[command(
    name = "refinery",
    version,
    about = "Factor congruences and refinement checks for finite algebras"
)]
struct Cli {
    /// Cap on |Con(A)|; overrides REFINERY_CON_LIMIT.
    #[arg(long, global = true)]
    con_limit: Option<usize>,
    /// Cap on distinct ternary functions in the term search.
    #[arg(long, global = true)]
    clone_limit: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub con_limit: usize,
    pub clone_limit: usize,
}

#[derive(Debug)]
pub enum ArgsError {
    /// Help or version was requested; the text goes to stdout.
    Display(String),
    Usage(String),
}

impl RunConfig {
    /// Flags win over `env_con_limit`, which wins over the default.
    pub fn from_args<I, T>(argv: I, env_con_limit: Option<&str>) -> Result<RunConfig, ArgsError>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(argv).map_err(|e| {
            use clap::error::ErrorKind::*;
            match e.kind() {
                DisplayHelp | DisplayVersion => ArgsError::Display(e.render().to_string()),
                _ => ArgsError::Usage(e.render().to_string()),
            }
        })?;
        let env = match env_con_limit {
            None => None,
            Some(s) => Some(s.trim().parse::<usize>().map_err(|_| {
                ArgsError::Usage(format!(
                    "{CON_LIMIT_ENV} must be a non-negative integer, got `{s}`\n"
                ))
            })?),
        };
        let format = match (&cli.command, cli.format) {
            (Command::Lattice { dot: true, .. }, _) => Format::Dot,
            (_, Some(f)) => f,
            (_, None) => Format::Json,
        };
        Ok(RunConfig {
            command: cli.command,
            format,
            con_limit: cli.con_limit.or(env).unwrap_or(DEFAULT_CON_LIMIT),
            clone_limit: cli.clone_limit.unwrap_or(DEFAULT_CLONE_LIMIT),
        })
    }

    pub fn corpus(&self) -> Option<CorpusConfig> {
        match self.command {
            Command::Suite {
                count,
                max_size,
                max_ops,
                seed,
            } => Some(CorpusConfig {
                count,
                max_size,
                max_ops,
                seed,
            }),
            _ => None,
        }
    }

    pub fn search_limits(&self) -> SearchLimits {
        SearchLimits {
            max_functions: self.clone_limit,
            ..SearchLimits::default()
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
    Cap(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CongruenceLimit { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs with the process environment, stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(CON_LIMIT_ENV).ok();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    run_with(argv, env.as_deref(), &mut out, &mut io::stderr())
}

pub fn run_with<I, T>(
    argv: I,
    env_con_limit: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::from_args(argv, env_con_limit) {
        Ok(cfg) => cfg,
        Err(ArgsError::Display(text)) => {
            let _ = out.write_all(text.as_bytes());
            return EXIT_OK;
        }
        Err(ArgsError::Usage(text)) => {
            let _ = err.write_all(text.as_bytes());
            return EXIT_USAGE;
        }
    };
    let result = execute(&cfg, out);
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) | Failure::Invalid(m) => (EXIT_USAGE, m),
                Failure::Cap(m) => (EXIT_CAP, m),
                Failure::Io(e) => (EXIT_USAGE, e.to_string()),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn load(path: &Path) -> Result<FiniteAlgebra, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    parse_algebra(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn unsupported(cmd: &str, format: Format) -> Failure {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Failure::Usage(format!("format `{name}` is not available for `{cmd}`"))
}

fn emit_lattice<L: Hasse, D: Serialize>(
    out: &mut dyn Write,
    cmd: &str,
    format: Format,
    lattice: &L,
    doc: &D,
) -> Result<(), Failure> {
    match format {
        Format::Dot => Ok(out.write_all(hasse_dot(lattice).as_bytes())?),
        Format::Json => emit_json(out, doc),
        Format::Text => Err(unsupported(cmd, format)),
    }
}

fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cfg.command {
        Command::Con { file } => {
            let a = load(file)?;
            let con = all_congruences_with_limit(&a, cfg.con_limit)?;
            if cfg.format == Format::Text {
                for p in con.elements() {
                    writeln!(out, "{}", partition_to_json(p))?;
                }
                return Ok(EXIT_OK);
            }
            emit_lattice(out, "con", cfg.format, &con, &CongruencesDoc::from(&con))?;
            Ok(EXIT_OK)
        }
        Command::Factors { file } => {
            let a = load(file)?;
            let fl = factor_congruences_with_limit(&a, cfg.con_limit)?;
            if cfg.format == Format::Text {
                for (i, p) in fl.elements().iter().enumerate() {
                    writeln!(
                        out,
                        "{i} {} complements {:?}",
                        partition_to_json(p),
                        fl.complements_of(i)
                    )?;
                }
                writeln!(out, "{:?}", fl.flags())?;
                return Ok(EXIT_OK);
            }
            emit_lattice(
                out,
                "factors",
                cfg.format,
                &fl,
                &FactorLatticeDoc::from(&fl),
            )?;
            Ok(EXIT_OK)
        }
        Command::Lattice { file, con, .. } => {
            let a = load(file)?;
            if *con {
                let l = all_congruences_with_limit(&a, cfg.con_limit)?;
                let doc = LatticeDoc {
                    elements: l.elements().iter().map(|p| p.classes()).collect(),
                    covers: l.covers(),
                };
                emit_lattice(out, "lattice", cfg.format, &l, &doc)?;
            } else {
                let l = factor_congruences_with_limit(&a, cfg.con_limit)?;
                let doc = LatticeDoc {
                    elements: l.elements().iter().map(|p| p.classes()).collect(),
                    covers: l.covers(),
                };
                emit_lattice(out, "lattice", cfg.format, &l, &doc)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { file, property } => {
            let a = load(file)?;
            if cfg.format == Format::Dot {
                return Err(unsupported("check", cfg.format));
            }
            let an = Analysis::with_con_limit(&a, cfg.con_limit)?;
            let mut capped = false;
            let verdict = if *property == Property::Centerless {
                let engine = CommutatorEngine::with_limits(&a, cfg.search_limits())?;
                capped = matches!(engine.gate(), TermSearch::Unknown { .. });
                an.centerless_with(&engine)?
            } else {
                an.check(*property)?
            };
            let doc = VerdictDoc::from(&verdict);
            if cfg.format == Format::Text {
                writeln!(
                    out,
                    "{}: {}",
                    doc.property,
                    if doc.holds { "holds" } else { "fails" }
                )?;
                if let Some(w) = &doc.witness {
                    writeln!(
                        out,
                        "witness: {}",
                        serde_json::to_string(w).expect("witness serializes")
                    )?;
                }
                for n in &doc.notes {
                    writeln!(out, "note: {n}")?;
                }
            } else {
                emit_json(out, &doc)?;
            }
            Ok(if capped {
                EXIT_CAP
            } else if verdict.holds {
                EXIT_OK
            } else {
                EXIT_FAILS
            })
        }
        Command::Decompose { file } => {
            let a = load(file)?;
            if cfg.format == Format::Dot {
                return Err(unsupported("decompose", cfg.format));
            }
            let t = decompose_with_limit(&a, cfg.con_limit, &mut |_| 0)?;
            if cfg.format == Format::Text {
                let mut s = String::new();
                render_tree(&t, 0, &mut s);
                out.write_all(s.as_bytes())?;
            } else {
                emit_json(out, &TreeDoc::from(&t))?;
            }
            Ok(EXIT_OK)
        }
        Command::Pushout { file, theta, phi } => {
            let a = load(file)?;
            if cfg.format != Format::Json {
                return Err(unsupported("pushout", cfg.format));
            }
            let parse = |flag: &str, s: &str| {
                parse_partition(s, a.size()).map_err(|e| Failure::Invalid(format!("--{flag}: {e}")))
            };
            let (t, p) = (parse("theta", theta)?, parse("phi", phi)?);
            let (q, from_theta, from_phi) = pushout_along(&a, &t, &p)?;
            emit_json(out, &PushoutDoc::new(&q, &from_theta, &from_phi))?;
            Ok(EXIT_OK)
        }
        Command::Suite { .. } => {
            if cfg.format == Format::Dot {
                return Err(unsupported("suite", cfg.format));
            }
            let corpus = cfg.corpus().expect("suite carries corpus parameters");
            let report = run_suite(&corpus, cfg.con_limit)?;
            let doc = report.to_doc();
            if cfg.format == Format::Text {
                for row in &doc.elements {
                    let mut line = format!("{} {} size={}", row.index, row.name, row.size);
                    for p in SUITE_PROPERTIES {
                        if let Some(h) = row.verdicts.get(p.name()) {
                            write!(line, " {p}={}", if *h { 1 } else { 0 }).unwrap();
                        }
                    }
                    if row.capped.is_some() {
                        line.push_str(" capped");
                    }
                    writeln!(out, "{line}")?;
                }
                writeln!(
                    out,
                    "checked {} capped {} failed {}",
                    doc.checked, doc.capped, doc.failed
                )?;
                if doc.failed > 0 {
                    emit_json(out, &doc.failures)?;
                }
            } else {
                emit_json(out, &doc)?;
            }
            Ok(if doc.failed > 0 {
                EXIT_FAILS
            } else if doc.capped > 0 {
                EXIT_CAP
            } else {
                EXIT_OK
            })
        }
    }
}

fn render_tree(t: &DecompositionTree, depth: usize, s: &mut String) {
    let pad = "  ".repeat(depth);
    match &t.split {
        None => writeln!(s, "{pad}{} leaf", t.algebra.size()).unwrap(),
        Some(sp) => {
            writeln!(
                s,
                "{pad}{} = {} x {}",
                t.algebra.size(),
                partition_to_json(&sp.factor),
                partition_to_json(&sp.complement)
            )
            .unwrap();
            for c in sp.children.iter() {
                render_tree(c, depth + 1, s);
            }
        }
    }
}
