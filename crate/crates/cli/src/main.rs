//! `betti-cone`: command-line front end for the exact Boij-Söderberg
//! toolkit.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input,
//! 3 diagram not in the cone, 4 I/O error.

use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use betti_cone::asymptotics::{calibrate, distribution_sweep, purity_sweep};
use betti_cone::io::{
    decomposition_to_json, diagram_from_json, diagram_to_json, render_table,
    write_distribution_csv, write_purity_csv,
};
use betti_cone::secant::{degree_sequence, JumpTuple, SecantParams};
use betti_cone::suites::{self, Grid};
use betti_cone::{decompose, pure_diagram, BettiDiagram, DegreeSequence};

#[derive(Debug, Parser)]
#[command(name = "betti-cone", version, about = "Exact pure Betti diagrams and Boij-Söderberg decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pure diagram of multiplicity one on a degree sequence.
    Pure {
        /// Strictly increasing degrees, e.g. 0,3,4,6,7,9
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        degseq: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Pure diagram attached to a jump tuple of the secant family.
    SecantPure {
        #[command(flatten)]
        params: ParamArgs,
        /// Jump tuple i_0,...,i_k
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "dominant", required_unless_present = "dominant")]
        tuple: Option<Vec<i64>>,
        /// Use the all-g tuple.
        #[arg(long)]
        dominant: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Greedy decomposition of a diagram JSON file ("-" reads stdin).
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
    /// Write a sweep as CSV.
    Sweep {
        #[command(subcommand)]
        kind: SweepKind,
    },
    /// Run an exact oracle-equality suite over a parameter grid.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        g_max: i64,
        #[arg(long, default_value_t = 2)]
        k_max: i64,
        #[arg(long, default_value_t = 40)]
        d_max: i64,
        /// lemma33 only: start the denominator product at k-1 (known to fail).
        #[arg(long)]
        as_printed: bool,
    },
    /// Recompute the acceptance calibration fixture.
    Calibrate {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Genus
    #[arg(short = 'g', long = "genus")]
    g: i64,
    /// Secant index
    #[arg(short = 'k', long = "secant")]
    k: i64,
    /// Embedding degree
    #[arg(short = 'd', long = "degree")]
    d: i64,
}

#[derive(Debug, Subcommand)]
enum SweepKind {
    /// Exact purity lower bounds over a range of degrees.
    Purity {
        #[arg(short = 'g', long = "genus")]
        g: i64,
        #[arg(short = 'k', long = "secant")]
        k: i64,
        #[arg(long)]
        d_min: i64,
        #[arg(long)]
        d_max: i64,
        #[arg(long, default_value_t = 1)]
        step: i64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normal-distribution points over a list of a-values and degrees.
    Distribution {
        #[arg(short = 'g', long = "genus")]
        g: i64,
        #[arg(short = 'k', long = "secant")]
        k: i64,
        #[arg(long = "a", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<f64>,
        #[arg(long = "d", value_delimiter = ',', required = true)]
        d: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Lemma33,
    Lemma41,
    Multiplicity,
    HerzogKuhl,
}

#[derive(Debug)]
enum Failure {
    Verification,
    BadInput(String),
    NotInCone(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::BadInput(_) => 2,
            Failure::NotInCone(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

fn bad(e: impl std::fmt::Display) -> Failure {
    Failure::BadInput(e.to_string())
}

fn io_err(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {}", describe(&e));
        return ExitCode::from(e.code());
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, Failure::Verification) {
                eprintln!("error: {}", describe(&e));
            }
            ExitCode::from(e.code())
        }
    }
}

fn describe(e: &Failure) -> &str {
    match e {
        Failure::Verification => "verification failed",
        Failure::BadInput(m) | Failure::NotInCone(m) | Failure::Io(m) => m,
    }
}

/// `BETTI_CONE_THREADS` caps the worker pool; unset or 0 lets rayon decide.
fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("BETTI_CONE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| bad(format!("BETTI_CONE_THREADS={raw:?} is not a nonnegative integer")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(bad)?;
    }
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Pure { degseq, format } => {
            let e = DegreeSequence::new(degseq).map_err(bad)?;
            print_diagram(&pure_diagram(&e), format);
            Ok(())
        }
        Command::SecantPure { params, tuple, dominant, format } => {
            let params = SecantParams::new(params.g, params.k, params.d).map_err(bad)?;
            let tuple = match (tuple, dominant) {
                (_, true) => params.dominant_tuple(),
                (Some(t), false) => JumpTuple::new(t, &params).map_err(bad)?,
                (None, false) => return Err(bad("either --tuple or --dominant is required")),
            };
            let e = degree_sequence(&params, &tuple);
            let joined: Vec<String> = e.degrees().iter().map(|x| x.to_string()).collect();
            println!("# degseq: {}", joined.join(","));
            print_diagram(&pure_diagram(&e), format);
            Ok(())
        }
        Command::Decompose { input } => run_decompose(&input),
        Command::Sweep { kind } => run_sweep(kind),
        Command::Verify { suite, g_max, k_max, d_max, as_printed } => {
            let grid = Grid { g_max, k_max, d_max };
            let report = match suite {
                Suite::Lemma33 => suites::lemma33_suite(&grid, as_printed),
                Suite::Lemma41 => suites::lemma41_suite(&grid),
                Suite::Multiplicity => suites::multiplicity_suite(&grid),
                Suite::HerzogKuhl => suites::herzog_kuhl_suite(&grid),
            };
            println!(
                "{}: checked {}, passed {}, failed {}",
                report.name,
                report.checked,
                report.checked - report.failures.len().min(report.checked),
                report.failures.len()
            );
            for f in report.failures.iter().take(20) {
                println!("  FAIL {f}");
            }
            if report.failures.len() > 20 {
                println!("  ... {} more", report.failures.len() - 20);
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Calibrate { out } => {
            let cal = calibrate().map_err(bad)?;
            let text = serde_json::to_string_pretty(&cal).expect("calibration serializes");
            fs::write(&out, text + "\n").map_err(|e| io_err(&out, e))
        }
    }
}

fn print_diagram(b: &BettiDiagram, format: Format) {
    match format {
        Format::Json => println!("{}", diagram_to_json(b)),
        Format::Table => print!("{}", render_table(b)),
    }
}

fn run_decompose(input: &Path) -> Result<(), Failure> {
    let text = if input == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| io_err(input, e))?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| io_err(input, e))?
    };
    let b = diagram_from_json(&text).map_err(bad)?;
    match decompose(&b) {
        Ok(dec) => {
            println!("{}", decomposition_to_json(&dec));
            Ok(())
        }
        Err(e) => {
            println!("{}", decomposition_to_json(&e.partial));
            Err(Failure::NotInCone(e.to_string()))
        }
    }
}

fn run_sweep(kind: SweepKind) -> Result<(), Failure> {
    match kind {
        SweepKind::Purity { g, k, d_min, d_max, step, out } => {
            let rows = purity_sweep(g, k, d_min, d_max, step).map_err(bad)?;
            emit(out.as_deref(), |w| write_purity_csv(w, &rows))
        }
        SweepKind::Distribution { g, k, a, d, out } => {
            if let Some(x) = a.iter().find(|x| !x.is_finite()) {
                return Err(bad(format!("a={x} is not finite")));
            }
            let rows = distribution_sweep(g, k, &a, &d).map_err(bad)?;
            emit(out.as_deref(), |w| write_distribution_csv(w, &rows))
        }
    }
}

fn emit<F>(out: Option<&Path>, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_err(path, e))?;
            let mut w = BufWriter::new(file);
            write(&mut w).and_then(|_| w.flush()).map_err(|e| io_err(path, e))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).map_err(|e| io_err(Path::new("<stdout>"), e))
        }
    }
}
