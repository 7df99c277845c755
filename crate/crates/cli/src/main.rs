use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hhsmash::hochschild::Guard;
use hhsmash::specseq::Filtration;
use hhsmash::Error;
use hhsmash_cli::{run, Command, Options, Resolution};

#[derive(Parser)]
#[command(name = "hhsmash", version, about = "Hochschild cohomology of smash products from scenario files")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a scenario.
    Validate(Common),
    /// Dimensions of HH^n(A,M) and of its invariants.
    Hh(Common),
    /// Cohomology of the group with coefficients in M.
    Groupcoh(Common),
    /// One page of a spectral sequence.
    Pages(Common),
    /// Projectivity, the degeneration certificate and the power test.
    Degeneration(Common),
    /// The filtration dimensions of HH^*(A,M).
    Structure(Common),
    /// The two descriptions of the filtration quotients.
    Filtration(Common),
    /// HH^*(AG,M) against HH^*(A,M)^G.
    Dims(Common),
    /// Repetitive quotients of the scenario's base algebra.
    Tr(Common),
    /// Both spectral sequences against the total complex and the direct computation.
    Oracle(Common),
}

#[derive(ValueEnum, Clone, Copy)]
enum FiltArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    Ii,
}

#[derive(ValueEnum, Clone, Copy)]
enum ResArg {
    Periodic,
    Bar,
}

#[derive(clap::Args)]
struct Common {
    /// Scenario file.
    scenario: PathBuf,
    /// Highest cohomological degree.
    #[arg(long)]
    up_to: Option<usize>,
    /// Page number.
    #[arg(long = "pages")]
    page: Option<usize>,
    /// Window as IxJ: Hochschild degrees up to I, group degrees up to J.
    #[arg(long, value_parser = parse_window)]
    window: Option<(usize, usize)>,
    #[arg(long, value_enum, default_value = "I")]
    filtration: FiltArg,
    #[arg(long, value_enum, default_value = "periodic")]
    resolution: ResArg,
    /// Also write the report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Largest matrix allowed, in MiB.
    #[arg(long, default_value_t = 2048)]
    guard_mib: u64,
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once('x').ok_or("expected IxJ")?;
    Ok((i.parse().map_err(|_| "bad I")?, j.parse().map_err(|_| "bad J")?))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (cmd, c) = match cli.command {
        Cmd::Validate(c) => (Command::Validate, c),
        Cmd::Hh(c) => (Command::Hh, c),
        Cmd::Groupcoh(c) => (Command::Groupcoh, c),
        Cmd::Pages(c) => (Command::Pages, c),
        Cmd::Degeneration(c) => (Command::Degeneration, c),
        Cmd::Structure(c) => (Command::Structure, c),
        Cmd::Filtration(c) => (Command::Filtration, c),
        Cmd::Dims(c) => (Command::Dims, c),
        Cmd::Tr(c) => (Command::Tr, c),
        Cmd::Oracle(c) => (Command::Oracle, c),
    };
    let opts = Options {
        up_to: c.up_to,
        page: c.page,
        window: c.window,
        filtration: match c.filtration {
            FiltArg::I => Filtration::I,
            FiltArg::Ii => Filtration::II,
        },
        resolution: match c.resolution {
            ResArg::Periodic => Resolution::Periodic,
            ResArg::Bar => Resolution::Bar,
        },
        guard: Guard { limit_bytes: c.guard_mib.saturating_mul(1 << 20) },
    };
    let text = match std::fs::read_to_string(&c.scenario) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", c.scenario.display());
            return ExitCode::from(2);
        }
    };
    match run(&text, cmd, &opts) {
        Ok(out) => {
            let s = serde_json::to_string_pretty(&out.report).expect("json");
            // A closed pipe is not an error of the computation.
            let _ = writeln!(std::io::stdout().lock(), "{s}");
            if let Some(p) = &c.json {
                if let Err(e) = std::fs::write(p, format!("{s}\n")) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("{}: {e}", c.scenario.display());
            ExitCode::from(match e {
                Error::Resource { .. } => 3,
                _ => 2,
            })
        }
    }
}
