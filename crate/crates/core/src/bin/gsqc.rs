use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use gsqc::eigen::cyclic_family;
use gsqc::hamiltonian::DEFAULT_BIAS;
use gsqc::{
    assemble_with, build_grover_circuit, parse_bits, parse_circuit, spectral_gap_scan, verify,
    BiasSpec, Circuit, Error, GroundSpaceOptions, HamiltonianForm, Scalar, SolverChoice,
    VerifyOptions,
};

const EXIT_VALIDATION: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "gsqc",
    version,
    about = "Ground-state quantum computation simulator"
)]
struct Cli {
    /// Floating-point precision for every computation.
    #[arg(long, value_enum, default_value_t = Precision::F64, global = true)]
    precision: Precision,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Precision {
    F32,
    F64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Auto,
    Dense,
    Lanczos,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Confined,
    Literal,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a circuit file.
    Check { file: PathBuf },
    /// Ground state for one input: summary metrics and readout.
    Solve(RunArgs),
    /// Like solve, with the full per-stage fidelity table.
    Verify(RunArgs),
    /// Spectral gap of the unbiased Hamiltonian over a family of lengths.
    Gap {
        file: PathBuf,
        /// Row counts N+1; the file's stages are truncated or repeated
        /// cyclically to N stages. Defaults to the file's own length.
        #[arg(long, value_delimiter = ',')]
        rows: Vec<usize>,
        #[command(flatten)]
        solve: SolveFlags,
    },
    /// The two-qubit Grover circuit, solved and verified.
    Grover {
        #[arg(long, default_value = "00")]
        input: String,
        #[command(flatten)]
        solve: SolveFlags,
    },
    /// Upper triangle of the Hamiltonian, one `i j value` per line.
    DumpH {
        file: PathBuf,
        /// Add the input bias for this bit string.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BIAS)]
        bias: f64,
        #[arg(long, value_enum, default_value_t = Form::Confined)]
        form: Form,
    },
}

#[derive(Args)]
struct RunArgs {
    file: PathBuf,
    /// Input bits, qubit 0 last.
    #[arg(long)]
    input: String,
    #[command(flatten)]
    solve: SolveFlags,
}

#[derive(Args)]
struct SolveFlags {
    /// Bias in units of epsilon.
    #[arg(long, default_value_t = DEFAULT_BIAS)]
    bias: f64,
    #[arg(long, value_enum, default_value_t = Solver::Auto)]
    solver: Solver,
    #[arg(long, value_enum, default_value_t = Form::Confined)]
    form: Form,
    #[arg(long, default_value_t = GroundSpaceOptions::default().seed)]
    seed: u64,
}

impl SolveFlags {
    fn options(&self) -> VerifyOptions {
        let mut ground = GroundSpaceOptions::default().solver(match self.solver {
            Solver::Auto => SolverChoice::Auto,
            Solver::Dense => SolverChoice::Dense,
            Solver::Lanczos => SolverChoice::Lanczos,
        });
        ground.seed = self.seed;
        VerifyOptions {
            delta: self.bias,
            form: self.form.into(),
            ground,
        }
    }
}

impl From<Form> for HamiltonianForm {
    fn from(f: Form) -> Self {
        match f {
            Form::Confined => HamiltonianForm::Confined,
            Form::Literal => HamiltonianForm::Literal,
        }
    }
}

fn load<T: Scalar>(path: &Path) -> Result<Circuit<T>, Error> {
    let text = fs::read_to_string(path)?;
    let circuit = parse_circuit(&text)?;
    circuit.validate().map_err(Error::Validation)?;
    Ok(circuit)
}

fn run<T: Scalar>(command: &Command, out: &mut impl Write) -> Result<(), Error> {
    match command {
        Command::Check { file } => {
            let c = load::<T>(file)?;
            writeln!(out, "valid=true")?;
            writeln!(out, "qubits={}", c.num_qubits)?;
            writeln!(out, "stages={}", c.num_stages())?;
            writeln!(
                out,
                "dim={}",
                gsqc::hilbert::dim(c.num_qubits, c.num_stages())?
            )?;
        }
        Command::Solve(args) | Command::Verify(args) => {
            let c = load::<T>(&args.file)?;
            let input = parse_bits(&args.input, c.num_qubits)?;
            let report = verify(&c, input, &args.solve.options())?;
            let text = match command {
                Command::Verify(_) => report.table(),
                _ => report.summary(),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Grover { input, solve } => {
            let c = build_grover_circuit::<T>();
            let report = verify(&c, parse_bits(input, 2)?, &solve.options())?;
            out.write_all(report.table().as_bytes())?;
        }
        Command::Gap { file, rows, solve } => {
            let c = load::<T>(file)?;
            let counts = if rows.is_empty() {
                vec![c.num_stages()]
            } else {
                rows.iter()
                    .map(|&r| {
                        r.checked_sub(1)
                            .ok_or_else(|| Error::InvalidArgument("row counts start at 1".into()))
                    })
                    .collect::<Result<_, _>>()?
            };
            let opts = solve.options();
            let table = spectral_gap_scan(cyclic_family(&c), &counts, opts.form, &opts.ground)?;
            writeln!(out, "# N  dim  degeneracy  gap")?;
            for row in &table {
                let gap = row
                    .gap
                    .map_or("none".to_string(), gsqc::analysis::format_num);
                writeln!(
                    out,
                    "# {}  {}  {}  {}",
                    row.num_stages, row.dim, row.degeneracy, gap
                )?;
            }
            for row in &table {
                let gap = row
                    .gap
                    .map_or("none".to_string(), gsqc::analysis::format_num);
                writeln!(out, "gap_{}={gap}", row.num_stages)?;
            }
        }
        Command::DumpH {
            file,
            input,
            bias,
            form,
        } => {
            let c = load::<T>(file)?;
            let spec = match input {
                Some(bits) => Some(BiasSpec::new(
                    c.num_qubits,
                    parse_bits(bits, c.num_qubits)?,
                    T::lit(*bias) * c.epsilon,
                )?),
                None => None,
            };
            assemble_with(&c, (*form).into(), spec.as_ref())?.write_dump(&mut *out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.precision {
        Precision::F64 => run::<f64>(&cli.command, &mut out),
        Precision::F32 => run::<f32>(&cli.command, &mut out),
    };
    let flushed = out.flush();
    match result.and(flushed.map_err(Error::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() {
                EXIT_VALIDATION
            } else {
                EXIT_NUMERICAL
            })
        }
    }
}
