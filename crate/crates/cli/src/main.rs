//! `fihom`: batch front end for the FI-module toolkit.
//!
//! Every command prints one report (JSON by default, TSV on request) and
//! exits with 0 when all checks pass, 1 when a check is violated, 2 on
//! input errors and 3 when the truncation leaves the answer open.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fihom::fi::Ring;
use fihom::input::ModuleFile;

use report::{render_json, render_tsv};

#[derive(Parser, Debug)]
#[command(name = "fihom", version, about = "Homology, degree and stable-range computations for FI-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Module description in JSON.
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "preset")]
    input: Option<PathBuf>,
    /// Built-in module: `principal:M` or `sharpness:K,D`.
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,
    /// Coefficient ring, overriding the description.
    #[arg(long, global = true, value_enum)]
    ring: Option<RingArg>,
    /// Truncation degree, overriding the description.
    #[arg(long, global = true, value_name = "N")]
    trunc: Option<usize>,
    /// JSON report (the default).
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Tab-separated tables instead of JSON.
    #[arg(long, global = true)]
    tsv: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum RingArg {
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "Q", alias = "q")]
    Q,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Z => Ring::Z,
            RingArg::Q => Ring::Q,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Catalan,
    Regularity,
    Saturation,
    Colimit,
    StableRange,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// FI-homology groups H_p(W)_n and the regularity bound.
    Homology {
        #[arg(long, default_value_t = 3)]
        pmax: usize,
    },
    /// Degrees of W, its shift, derivatives, torsion kernel and H_0.
    Degrees,
    /// Facet sums against intersections and J̃-kernels for V ⊂ M.
    Saturate {
        #[arg(long, default_value_t = 3)]
        amax: usize,
    },
    /// Smallest subset size whose colimit recovers W.
    Colimit,
    /// The Catalan family Σ(a, b).
    Catalan {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Stable-range thresholds and spectral sequence bounds.
    Bounds {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 3)]
        pmax: usize,
    },
    /// Checks the presentation and echoes the canonical description.
    Validate,
    /// Property suites over a seeded random corpus.
    VerifyProps {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 16)]
        size: usize,
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Homology { .. } => "homology",
            Command::Degrees => "degrees",
            Command::Saturate { .. } => "saturate",
            Command::Colimit => "colimit",
            Command::Catalan { .. } => "catalan",
            Command::Bounds { .. } => "bounds",
            Command::Validate => "validate",
            Command::VerifyProps { .. } => "verify-props",
        }
    }

    fn needs_module(&self) -> bool {
        !matches!(self, Command::Catalan { .. } | Command::Bounds { .. } | Command::VerifyProps { .. })
    }
}

/// Why a command could not produce a report.
pub enum Failure {
    Input(String),
    Inconclusive(String),
}

impl From<fihom::Error> for Failure {
    fn from(e: fihom::Error) -> Self {
        match e {
            fihom::Error::Truncation { .. } => Failure::Inconclusive(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

const PRESET_TRUNCATION: usize = 6;

fn load_module(g: &Global) -> Result<ModuleFile, Failure> {
    let ring = g.ring.map(Ring::from);
    let mut file = match (&g.input, &g.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            ModuleFile::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        (None, Some(name)) => fihom::families::preset(name, ring.unwrap_or(Ring::Z), g.trunc.unwrap_or(PRESET_TRUNCATION))?,
        _ => return Err(Failure::Input("this command needs --input FILE or --preset NAME".into())),
    };
    if let Some(r) = ring {
        file.ring = r;
    }
    if let Some(t) = g.trunc {
        file.truncation = t;
    }
    Ok(file)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("FIHOM_THREADS") else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("FIHOM_THREADS: expected a thread count, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("FIHOM_THREADS: {e}")))
}

fn run(cli: &Cli) -> Result<(Option<ModuleFile>, report::Outcome), Failure> {
    configure_threads()?;
    let g = &cli.global;
    if !cli.command.needs_module() && (g.input.is_some() || g.preset.is_some()) {
        return Err(Failure::Input(format!("{} does not take a module; drop --input/--preset", cli.command.name())));
    }
    if matches!(cli.command, Command::Catalan { .. } | Command::Bounds { .. }) && (g.ring.is_some() || g.trunc.is_some()) {
        return Err(Failure::Input(format!("{} does not take --ring or --trunc", cli.command.name())));
    }
    let file = if cli.command.needs_module() { Some(load_module(g)?) } else { None };
    let outcome = match &cli.command {
        Command::Homology { pmax } => commands::homology(file.as_ref().unwrap(), *pmax)?,
        Command::Degrees => commands::degrees(file.as_ref().unwrap())?,
        Command::Saturate { amax } => commands::saturate(file.as_ref().unwrap(), *amax)?,
        Command::Colimit => commands::colimit(file.as_ref().unwrap())?,
        Command::Catalan { a, b } => commands::catalan(*a, *b)?,
        Command::Bounds { d, kmax, pmax } => commands::bounds(*d, *kmax, *pmax)?,
        Command::Validate => commands::validate(file.as_ref().unwrap())?,
        Command::VerifyProps { suite, size, seed } => {
            commands::verify_props(*suite, *size, *seed, g.ring.map(Ring::from), g.trunc)?
        }
    };
    Ok((file, outcome))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((file, outcome)) => {
            let text = if cli.global.tsv {
                render_tsv(cli.command.name(), &outcome)
            } else {
                render_json(cli.command.name(), file.as_ref(), &outcome)
            };
            print!("{text}");
            ExitCode::from(outcome.status.exit_code())
        }
        Err(Failure::Input(msg)) => {
            eprintln!("fihom: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("fihom: {msg}");
            ExitCode::from(3)
        }
    }
}
