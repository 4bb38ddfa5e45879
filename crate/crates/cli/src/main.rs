mod analyze;
mod build;
mod groups;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alexlab_core::homotopy::{replay, CollapseTrace};
use alexlab_core::{GroupHom, Limits, Poset};
use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "alexlab", version, about = "Build and analyze finite T0 spaces and their symmetry groups")]
struct Cli {
    /// Largest automorphism group to materialize.
    #[arg(long, global = true, env = Limits::ENV_MAX_AUT)]
    max_aut: Option<usize>,
    /// Largest order complex, in simplices.
    #[arg(long, global = true, env = Limits::ENV_MAX_SIMPLICES)]
    max_simplices: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a space and write it as a poset file.
    Build(build::BuildArgs),
    /// Report invariants of a poset file.
    Analyze(analyze::AnalyzeArgs),
    /// Run a verification suite and write a JSON report.
    Verify {
        /// Suite name, or `all`.
        suite: String,
        /// Directory holding `g.json` and `h.json` to replace the default pair.
        #[arg(long)]
        groups: Option<PathBuf>,
        /// Where to write the JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Seed for the randomized suite.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Record wall-clock time per claim (makes the report run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Replay a collapse trace on a poset file.
    VerifyCollapse {
        poset: PathBuf,
        trace: PathBuf,
    },
    /// Print a group, or list the homomorphisms between two groups.
    Group {
        /// Built-in name or group file.
        group: String,
        /// List homomorphisms into this group.
        #[arg(long)]
        homs_to: Option<String>,
        /// Write the group file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(v) = cli.max_aut {
        l.max_group_order = v;
    }
    if let Some(v) = cli.max_simplices {
        l.max_simplices = v;
    }
    l
}

pub fn read_poset(path: &Path) -> Result<Poset> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Poset::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let limits = limits(&cli);
    match cli.command {
        Command::Build(args) => build::run(&args),
        Command::Analyze(args) => analyze::run(&args, &limits),
        Command::Verify { suite, groups, report, seed, timings } => {
            let groups = match groups {
                Some(dir) => Some((
                    groups::resolve_group(&dir.join("g.json").to_string_lossy())?,
                    groups::resolve_group(&dir.join("h.json").to_string_lossy())?,
                )),
                None => None,
            };
            let ctx = verify::Context { limits, seed, groups, timings };
            let r = verify::run(&suite, &ctx)?;
            let json = serde_json::to_string_pretty(&r)? + "\n";
            if let Some(path) = report {
                write_text(&path, &json)?;
            }
            for c in &r.claims {
                let tag = match c.status {
                    verify::Status::Pass => "pass",
                    verify::Status::Fail => "FAIL",
                    verify::Status::Skipped => "skip",
                };
                println!("{tag:4} {:32} {}", c.id, c.locus);
            }
            println!("{}: {} passed, {} failed, {} skipped", r.suite, r.passed, r.failed, r.skipped);
            Ok(if r.ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::VerifyCollapse { poset, trace } => {
            let p = read_poset(&poset)?;
            let text = std::fs::read_to_string(&trace).with_context(|| format!("reading {}", trace.display()))?;
            let t = CollapseTrace::from_json(&text)?;
            let end = replay(&p, &t)?;
            println!("replayed {} steps: {} of {} points remain", t.len(), end.len(), p.len());
            Ok(if end.len() == 1 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Group { group, homs_to, out } => {
            let g = groups::resolve_group(&group)?;
            if let Some(path) = out {
                write_text(&path, &(g.to_json() + "\n"))?;
            }
            match homs_to {
                Some(target) => {
                    let h = groups::resolve_group(&target)?;
                    for f in GroupHom::all(&g, &h) {
                        println!("{}", serde_json::to_string(&f.to_file())?);
                    }
                }
                None => println!("{}", g.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
