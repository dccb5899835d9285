use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ruled::commands::{self, CompareArgs, ExportArgs, ReconstructArgs, VerifyArgs};
use ruled::tolerances::TolFlags;
use ruled::{CliResult, Tolerances};
use ruled_core::similarity::SimilarityMode;
use ruled_core::verify::Corruption;

/// Ruled surfaces in Minkowski 3-space: analysis, similarity and reconstruction.
#[derive(Debug, Parser)]
#[command(name = "ruled", version)]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct TolArgs {
    /// Relative band for null classification [default: 1e-9]
    #[arg(long, global = true)]
    tol_null: Option<f64>,
    /// Limit for Frenet and frame-identity residuals [default: 1e-6]
    #[arg(long, global = true)]
    tol_frame: Option<f64>,
    /// Limit for the invariant-profile deviation [default: 1e-4]
    #[arg(long, global = true)]
    tol_similar: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a surface and report its striction curve, frame and developability
    Analyze {
        input: PathBuf,
        /// Directory for summary.json, frame.csv and striction.csv
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two surfaces are similar; prints a JSON report
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Invariants)]
        mode: Mode,
        /// Shorthand for --tol-similar
        #[arg(long)]
        tol: Option<f64>,
        /// Search for a constant phi offset between the profiles
        #[arg(long)]
        search_offset: bool,
    },
    /// Integrate a frame from an invariant profile and build a surface
    Reconstruct {
        profile: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
        /// Angle between striction tangent and ruling, as an expression in arc length
        #[arg(long, conflicts_with = "developable")]
        theta: Option<String>,
        #[arg(long)]
        developable: bool,
        /// Ruling parameter range of the mesh, `a,b`
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        v_range: Option<(f64, f64)>,
        #[arg(long)]
        v_steps: Option<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the invariant checks on a surface file or the builtin corpus
    Verify {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// Print the results as JSON
        #[arg(long)]
        json: bool,
        /// Damage computed frames before checking (test hook)
        #[arg(long, value_enum, hide = true)]
        inject: Option<Fault>,
    },
    /// Write an OBJ mesh of a surface
    Export {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Mesh cells along u [default: samples - 1]
        #[arg(long)]
        u_steps: Option<usize>,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "-1,1")]
        v_range: (f64, f64),
        #[arg(long, default_value_t = 16)]
        v_steps: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Invariants,
    Definition,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Builtin,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fault {
    SwapCentralVectors,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if !(a < b) {
        return Err(format!("empty range [{a}, {b}]"));
    }
    Ok((a, b))
}

fn run(cli: Cli, out: &mut dyn Write) -> CliResult<i32> {
    let mut flags = TolFlags { null: cli.tol.tol_null, frame: cli.tol.tol_frame, similar: cli.tol.tol_similar };
    if let Command::Compare { tol: Some(t), .. } = &cli.command {
        flags.similar = Some(*t);
    }
    let tol = Tolerances::from_env(flags)?;
    match cli.command {
        Command::Analyze { input, out: dir } => commands::analyze(&input, dir.as_deref(), &tol, out),
        Command::Compare { first, second, mode, search_offset, .. } => {
            let mode = match mode {
                Mode::Invariants => SimilarityMode::ByInvariants,
                Mode::Definition => SimilarityMode::ByDefinition,
            };
            commands::compare(&first, &second, CompareArgs { mode, search_offset }, &tol, out)
        }
        Command::Reconstruct { profile, steps, theta, developable, v_range, v_steps, out: dir } => {
            let args = ReconstructArgs { steps, theta, developable, v_range, v_steps, out_dir: dir };
            commands::reconstruct(&profile, &args, out).map(|(code, _)| code)
        }
        Command::Verify { input, suite, json, inject } => {
            let args = VerifyArgs {
                input,
                builtin: suite.is_some(),
                json,
                corrupt: inject.map(|Fault::SwapCentralVectors| Corruption::SwapCentralVectors),
            };
            commands::verify(&args, &tol, out)
        }
        Command::Export { input, out: output, u_steps, v_range, v_steps } => {
            commands::export(&input, &ExportArgs { output, u_steps, v_range, v_steps }, &tol, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ruled::exit::INPUT as u8 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = match run(cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = lock.flush();
    ExitCode::from(code as u8)
}
