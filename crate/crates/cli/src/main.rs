use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use barymorse_cli::{CliError, RunConfig};

#[derive(Parser)]
#[command(name = "barymorse", version, about = "Discrete Morse functions on barycentric subdivisions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Complex file (maximal simplices).
    #[arg(long)]
    complex: PathBuf,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use the data-parallel code paths.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct WithOrderings {
    /// Orderings of the critical simplices; defaults to descending vertex order.
    #[arg(long)]
    orderings: Option<PathBuf>,
    /// Accept a partial orderings file and fill the rest with defaults.
    #[arg(long)]
    fill_default_orderings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Export the barycentric subdivision with chain labels.
    Subdivide {
        #[command(flatten)]
        common: Common,
    },
    /// Build the induced matching on the subdivision.
    DeltaMorse {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matching: PathBuf,
        #[command(flatten)]
        ord: WithOrderings,
    },
    /// Check a matching, its induced matching and the gradient path correspondence.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matching: PathBuf,
        #[command(flatten)]
        ord: WithOrderings,
        /// An induced matching to check against the rebuilt one.
        #[arg(long)]
        delta: Option<PathBuf>,
    },
    /// List gradient paths between critical cells.
    Paths {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matching: PathBuf,
        #[command(flatten)]
        ord: WithOrderings,
        /// List paths of the induced matching on the subdivision.
        #[arg(long)]
        subdivided: bool,
    },
    /// Generate a random acyclic matching.
    RandomMorse {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: u64,
    },
    /// Write a Graphviz Hasse diagram with the matching drawn on it.
    ExportGraph {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        matching: Option<PathBuf>,
        #[command(flatten)]
        ord: WithOrderings,
        /// Draw the original complex instead of the subdivision.
        #[arg(long)]
        base: bool,
    },
}

fn config(common: Common) -> RunConfig {
    RunConfig {
        complex: Some(common.complex),
        out: common.out,
        parallel: common.parallel,
        ..RunConfig::default()
    }
}

fn with_orderings(cfg: RunConfig, ord: WithOrderings) -> RunConfig {
    RunConfig {
        orderings: ord.orderings,
        fill_default_orderings: ord.fill_default_orderings,
        ..cfg
    }
}

fn run(cmd: Command) -> Result<barymorse_cli::Output, CliError> {
    match cmd {
        Command::Subdivide { common } => barymorse_cli::cmd_subdivide(&config(common)),
        Command::DeltaMorse { common, matching, ord } => {
            let cfg = with_orderings(RunConfig { matching: Some(matching), ..config(common) }, ord);
            barymorse_cli::cmd_delta_morse(&cfg)
        }
        Command::Verify { common, matching, ord, delta } => {
            let cfg = RunConfig {
                matching: Some(matching),
                delta,
                ..config(common)
            };
            barymorse_cli::cmd_verify(&with_orderings(cfg, ord))
        }
        Command::Paths { common, matching, ord, subdivided } => {
            let cfg = RunConfig {
                matching: Some(matching),
                subdivided,
                ..config(common)
            };
            barymorse_cli::cmd_paths(&with_orderings(cfg, ord))
        }
        Command::RandomMorse { common, seed } => {
            barymorse_cli::cmd_random_morse(&RunConfig { seed: Some(seed), ..config(common) })
        }
        Command::ExportGraph { common, matching, ord, base } => {
            let cfg = RunConfig { matching, base, ..config(common) };
            barymorse_cli::cmd_export_graph(&with_orderings(cfg, ord))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("BARYMORSE_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            let _ = std::io::stderr().write_all(out.stderr.as_bytes());
            log::debug!("status {:?}", out.status);
            ExitCode::from(out.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
