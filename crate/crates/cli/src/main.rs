use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use coalg_core::dsl::Workspace;
use coalg_core::report::{Detail, Report};

mod commands;

const BUNDLED: &str = include_str!("../workspace/examples.coalg");

#[derive(Parser, Debug)]
#[command(name = "coalg", version, about = "Check coalgebras for equational theories and related structures")]
struct Cli {
    /// Also write the report as JSON.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Enumeration bound for free carriers.
    #[arg(long, global = true, default_value_t = 6)]
    bound: usize,
    /// Workspace files, loaded in order; the bundled examples otherwise.
    #[arg(long, global = true, num_args = 1.., value_name = "FILES")]
    workspace: Vec<PathBuf>,
    /// Record wall-clock time in the report (makes it non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify a named object: theory, morphism, algebra, coalgebra, ...
    Check { name: String },
    /// Invariants of a coalgebra along a morphism; `grouplike` or
    /// `primitive` with a bialgebra.
    Gphi { phi: String, coalgebra: String },
    /// The canonical coalgebra on generators.
    Vphi {
        phi: String,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// The coalgebra induced on a finite algebra.
    Nphi { phi: String, algebra: String },
    /// Tensor/hom checks for a bimodule against test modules.
    Ew {
        bimodule: String,
        #[arg(required = true)]
        modules: Vec<String>,
    },
    /// Group-likes and primitives of a bialgebra, both ways.
    Hopf { bialgebra: String },
    /// Run a named suite: paper-examples, kan-cogroups or acceptance.
    Suite { name: String },
}

impl Command {
    fn name_and_inputs(&self) -> (&'static str, Vec<String>) {
        match self {
            Command::Check { name } => ("check", vec![name.clone()]),
            Command::Gphi { phi, coalgebra } => ("gphi", vec![phi.clone(), coalgebra.clone()]),
            Command::Vphi { phi, generators } => ("vphi", [vec![phi.clone()], generators.clone()].concat()),
            Command::Nphi { phi, algebra } => ("nphi", vec![phi.clone(), algebra.clone()]),
            Command::Ew { bimodule, modules } => ("ew", [vec![bimodule.clone()], modules.clone()].concat()),
            Command::Hopf { bialgebra } => ("hopf", vec![bialgebra.clone()]),
            Command::Suite { name } => ("suite", vec![name.clone()]),
        }
    }
}

fn load(files: &[PathBuf]) -> anyhow::Result<Workspace> {
    let mut ws = Workspace::default();
    if files.is_empty() {
        ws.load(BUNDLED).context("bundled workspace")?;
        ws.sources.push("<bundled>".into());
    }
    for f in files {
        let text = std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        ws.load(&text).with_context(|| f.display().to_string())?;
        ws.sources.push(f.display().to_string());
    }
    Ok(ws)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (command, mut inputs) = cli.command.name_and_inputs();
    if cli.bound != 6 {
        inputs.push(format!("--bound={}", cli.bound));
    }
    inputs.extend(cli.workspace.iter().map(|f| format!("--workspace={}", f.display())));
    let mut report = Report::new(command, inputs);
    let outcome = load(&cli.workspace).and_then(|ws| commands::run(&ws, &cli.command, cli.bound, &mut report));
    if let Err(e) = outcome {
        report.push(Detail::fail("error", format!("{e:#}")));
    }
    if cli.timing {
        report.millis = start.elapsed().as_millis() as u64;
    }
    print!("{report}");
    if let Some(path) = &cli.json {
        let written = serde_json::to_string_pretty(&report)
            .map_err(anyhow::Error::from)
            .and_then(|s| std::fs::write(path, s + "\n").with_context(|| format!("writing {}", path.display())));
        if let Err(e) = written {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
