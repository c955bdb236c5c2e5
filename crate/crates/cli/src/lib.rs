//! Batch front end for `tpnet`.
//!
//! Exit codes: 0 success, 2 input error, 3 total-positivity check failure,
//! 4 elimination or parameter-recovery failure.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use tpnet::{
    assemble, build_network, concatenate, enumerate_paths, export_dot, factor_tp, is_totally_positive, tp_inverse,
    Error, FactorKind, Positivity, Rat, RatMatrix, RatNetwork, RatParamSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_TP: i32 = 3;
pub const EXIT_ELIMINATION: i32 = 4;

const DEFAULT_MAX_SIZE: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "tpnet", version, about = "Totally positive matrices and their planar networks, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build A = L*D*U from a parameter file.
    Generate {
        /// Parameter file (JSON), or "-" for stdin.
        params: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Factor a totally positive matrix into L, D, U and network parameters.
    Factor {
        /// Matrix file, or "-" for stdin.
        matrix: String,
        #[arg(long, value_enum, default_value_t = Emit::Params)]
        emit: Emit,
        /// Skip the all-minors total positivity check.
        #[arg(long)]
        no_check: bool,
        /// Largest matrix size the positivity check will run on.
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Invert through U^-1 * D^-1 * L^-1. Input is a parameter file or a matrix file.
    Invert {
        /// Parameter file (JSON object) or matrix file, or "-" for stdin.
        input: String,
        /// Skip the total positivity check on matrix input.
        #[arg(long)]
        no_check: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Test every minor for positivity.
    CheckTp {
        matrix: String,
        /// Require minors >= 0 and leading principal minors > 0 instead.
        #[arg(long)]
        nonneg: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
    },
    /// Write a network as Graphviz DOT.
    ExportDot {
        params: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// List the paths between a source and a sink with their weights.
    Paths {
        params: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        sink: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Params,
    Ldu,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "L")]
    L,
    #[value(name = "D")]
    D,
    #[value(name = "U")]
    U,
    #[value(name = "Linv")]
    Linv,
    #[value(name = "Dinv")]
    Dinv,
    #[value(name = "Uinv")]
    Uinv,
    #[value(name = "full")]
    Full,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotTotallyPositive { .. } => EXIT_NOT_TP,
            Error::ZeroPivot { .. } | Error::ZeroCoefficient { .. } | Error::InvalidFactor(_) => EXIT_ELIMINATION,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).map_err(|e| Failure::input(format!("reading stdin: {e}")))?;
            Ok(text)
        } else {
            fs::read_to_string(path).map_err(|e| Failure::input(format!("reading {path}: {e}")))
        }
    }

    fn write(&mut self, out: Option<&PathBuf>, text: &str) -> CmdResult {
        match out {
            Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("writing {}: {e}", path.display()))),
            None => self.stdout.write_all(text.as_bytes()).map_err(|e| Failure::input(format!("writing output: {e}"))),
        }
    }

    fn params(&mut self, path: &str) -> Result<RatParamSet, Failure> {
        Ok(RatParamSet::from_json(&self.read(path)?)?)
    }

    fn matrix(&mut self, path: &str) -> Result<RatMatrix, Failure> {
        Ok(RatMatrix::from_text(&self.read(path)?)?)
    }
}

fn check_tp(a: &RatMatrix, mode: Positivity, max_size: usize) -> CmdResult {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() }.into());
    }
    if a.rows() > max_size {
        return Err(Failure::input(format!(
            "{n}x{n} matrix exceeds the check size limit {max_size} (raise --max-size or pass --no-check)",
            n = a.rows()
        )));
    }
    match is_totally_positive(a, mode)?.witness {
        Some(w) => Err(w.into_error(mode).into()),
        None => Ok(()),
    }
}

fn factor_matrix(a: &RatMatrix, no_check: bool, max_size: usize) -> Result<tpnet::RatFactorization, Failure> {
    if !no_check {
        check_tp(a, Positivity::Strict, max_size)?;
    }
    Ok(factor_tp(a, false)?)
}

fn network(params: &RatParamSet, kind: Kind) -> Result<RatNetwork, Failure> {
    let build = |k, inverted| build_network(k, params, 0, inverted);
    let net = match kind {
        Kind::L => build(FactorKind::Lower, false)?,
        Kind::D => build(FactorKind::Diagonal, false)?,
        Kind::U => build(FactorKind::Upper, false)?,
        Kind::Linv => build(FactorKind::Lower, true)?,
        Kind::Dinv => build(FactorKind::Diagonal, true)?,
        Kind::Uinv => build(FactorKind::Upper, true)?,
        Kind::Full => {
            let du = concatenate(&build(FactorKind::Diagonal, false)?, &build(FactorKind::Upper, false)?)?;
            concatenate(&build(FactorKind::Lower, false)?, &du)?
        }
    };
    Ok(net)
}

fn execute(command: Command, io: &mut Io<'_>) -> CmdResult {
    match command {
        Command::Generate { params, out } => {
            let p = io.params(&params)?;
            p.validate(Positivity::Nonneg)?;
            io.write(out.as_ref(), &assemble(&p).to_text())
        }
        Command::Factor { matrix, emit, no_check, max_size, out } => {
            let a = io.matrix(&matrix)?;
            let f = factor_matrix(&a, no_check, max_size)?;
            let ldu = [&f.l, &f.d, &f.u].map(|m| m.to_text()).concat();
            let text = match emit {
                Emit::Params => f.params.to_json(),
                Emit::Ldu => ldu,
                Emit::Both => format!("{}\n{ldu}", f.params.to_json()),
            };
            io.write(out.as_ref(), &text)
        }
        Command::Invert { input, no_check, max_size, out } => {
            let text = io.read(&input)?;
            let params = if text.trim_start().starts_with('{') {
                let p = RatParamSet::from_json(&text)?;
                p.validate(Positivity::Nonneg)?;
                p
            } else {
                factor_matrix(&RatMatrix::from_text(&text)?, no_check, max_size)?.params
            };
            io.write(out.as_ref(), &tp_inverse(&params)?.to_text())
        }
        Command::CheckTp { matrix, nonneg, max_size } => {
            let a = io.matrix(&matrix)?;
            let (mode, label) = if nonneg { (Positivity::Nonneg, "TOTALLY NONNEGATIVE") } else { (Positivity::Strict, "TOTALLY POSITIVE") };
            if !a.is_square() {
                return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() }.into());
            }
            if a.rows() > max_size {
                return Err(Failure::input(format!("{n}x{n} matrix exceeds the check size limit {max_size}", n = a.rows())));
            }
            let report = is_totally_positive(&a, mode)?;
            match report.witness {
                None => io.write(None, &format!("{label}\n{} minors checked\n", report.minors_checked)),
                Some(w) => {
                    io.write(None, &format!("NOT {label}\nfailing minor: {w}\n"))?;
                    Err(Failure { code: EXIT_NOT_TP, message: format!("not {}", label.to_lowercase()) })
                }
            }
        }
        Command::ExportDot { params, kind, out } => {
            let p = io.params(&params)?;
            io.write(out.as_ref(), &export_dot(&network(&p, kind)?))
        }
        Command::Paths { params, kind, source, sink } => {
            let p = io.params(&params)?;
            let net = network(&p, kind)?;
            let paths = enumerate_paths(&net, source, sink)?;
            let mut text = String::new();
            let mut sum = Rat::from_integer(0.into());
            for path in paths {
                let heights: Vec<String> = path.heights().iter().map(usize::to_string).collect();
                text.push_str(&format!("({}) {}\n", heights.join(","), path.weight));
                sum += path.weight;
            }
            text.push_str(&format!("sum {sum}\n"));
            io.write(None, &text)
        }
    }
}

/// Runs one invocation; `args` includes the program name. Returns the exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut io = Io { stdin, stdout };
    match execute(cli.command, &mut io) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
