//! `hlgt`: reproducible runs of the hybrid plaquette simulator.

mod commands;
mod config;
mod error;
mod output;

use clap::{Parser, Subcommand};

use config::{Flags, Settings};
use error::CliError;
use output::Outputs;

#[derive(Parser, Debug)]
#[command(name = "hlgt", version, about = "Hybrid qubit-qumode U(1) plaquette simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pure-gauge spectrum: Mathieu formula against exact diagonalization.
    Spectrum(Flags),
    /// Variational ground and first excited energies, Wilson loop.
    Variational(Flags),
    /// Penalty-strength threshold scan.
    Penalty(Flags),
    /// Vacuum survival probability under real-time evolution.
    Evolve(Flags),
    /// Imaginary-time ground-state estimate.
    Qite(Flags),
    /// Chiral condensate on the imaginary-time state.
    Condensate(Flags),
    /// Certify the gate decompositions.
    GatesVerify(Flags),
    /// Normal modes of the gauge-fixed square lattice.
    LatticeModes(Flags),
}

type Runner = fn(&mut Settings) -> Result<Outputs, CliError>;

fn dispatch(command: &Command) -> (&'static str, &Flags, Runner) {
    match command {
        Command::Spectrum(f) => ("spectrum", f, commands::spectrum),
        Command::Variational(f) => ("variational", f, commands::variational),
        Command::Penalty(f) => ("penalty", f, commands::penalty),
        Command::Evolve(f) => ("evolve", f, commands::evolve),
        Command::Qite(f) => ("qite", f, commands::qite),
        Command::Condensate(f) => ("condensate", f, commands::condensate),
        Command::GatesVerify(f) => ("gates-verify", f, commands::gates_verify),
        Command::LatticeModes(f) => ("lattice-modes", f, commands::lattice_modes),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (name, flags, runner) = dispatch(&cli.command);
    let mut settings = Settings::new(name, flags)?;
    if let Some(n) = settings.threads()? {
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("--threads: {e}")))?;
        #[cfg(not(feature = "parallel"))]
        let _ = n;
    }
    let outputs = runner(&mut settings)?;
    for path in output::write_outputs(name, &settings, &outputs)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("hlgt: {e}");
        std::process::exit(e.exit_code());
    }
}
