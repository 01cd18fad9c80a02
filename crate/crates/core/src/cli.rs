//! Command-line front end.
//!
//! In JSON mode stdout carries exactly one JSON document per command; human
//! diagnostics go to stderr. Exit codes: 0 success, 1 verification failure,
//! 2 malformed input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::circuit::{
    named_gate, optimize, parse_circuit, parse_matrix, serialize_circuit, serialize_matrix, verify,
    Circuit,
};
use crate::error::Error;
use crate::kak::{classify, kak_decompose, GateClass, CLASSIFY_TOL};
use crate::linalg::{haar_su4, su4_normalize, wrap_angle, Mat2};
use crate::synth::{synth_with, SynthOptions, VERIFY_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, clap::Args)]
pub struct CliConfig {
    /// Equivalence tolerance on the phase-invariant distance.
    #[arg(long = "tol", global = true, default_value_t = VERIFY_TOL)]
    pub tolerance: f64,
    /// Tolerance in radians for choosing a cheaper CNOT class.
    #[arg(long = "class-tol", global = true, default_value_t = CLASSIFY_TOL)]
    pub classify_tolerance: f64,
    /// Seed for `random`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON document here instead of stdout.
    #[arg(short = 'o', global = true)]
    pub output_path: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Force a construction with this many CNOTs (testing hook).
    #[arg(long = "force-class", global = true, value_parser = clap::value_parser!(u8).range(0..=3))]
    pub force_class: Option<u8>,
}

#[derive(Debug, Parser)]
#[command(
    name = "twoq",
    version,
    about = "Two-qubit gate decomposition and minimal-CNOT synthesis"
)]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical parameters and local gates of a matrix.
    Decompose { matrix: String },
    /// Print the minimal CNOT class of a matrix.
    Classify { matrix: String },
    /// Synthesize a minimal-CNOT circuit for a matrix.
    Synth { matrix: String },
    /// Check a circuit against a matrix, up to global phase.
    Verify { circuit: String, matrix: String },
    /// Re-synthesize a circuit with the fewest CNOTs.
    Optimize { circuit: String },
    /// Emit the matrix of a named gate (ID, CNOT, CZ, SWAP, ISWAP, CPHASE phi, CAN hx hy hz).
    Gate {
        name: String,
        #[arg(allow_negative_numbers = true)]
        args: Vec<f64>,
    },
    /// Emit a Haar-random SU(4) matrix.
    Random,
}

/// Command failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn bad_input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_BAD_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::VerificationFailed { .. } | Error::NumericalFailure(_) => EXIT_FAILED,
            _ => EXIT_BAD_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    stdin_used: bool,
}

impl Io<'_> {
    fn read_source(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            if self.stdin_used {
                return Err(Failure::bad_input("stdin (`-`) can only be read once"));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::bad_input(format!("reading stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| Failure::bad_input(format!("reading {path}: {e}")))
        }
    }

    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.stderr, "{msg}");
    }
}

fn emit(io: &mut Io<'_>, cfg: &CliConfig, json_doc: &str, text: &str) -> Result<(), Failure> {
    let body = match cfg.format {
        Format::Json => format!("{json_doc}\n"),
        Format::Text => text.to_string(),
    };
    match &cfg.output_path {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::bad_input(format!("writing {}: {e}", path.display()))),
        None => io
            .stdout
            .write_all(body.as_bytes())
            .map_err(|e| Failure::bad_input(format!("writing stdout: {e}"))),
    }
}

fn mat2_json(m: &Mat2) -> serde_json::Value {
    json!(crate::circuit::mat2_to_wire(m))
}

fn read_matrix(io: &mut Io<'_>, path: &str) -> Result<crate::linalg::Mat4, Failure> {
    let text = io.read_source(path)?;
    Ok(parse_matrix(&text)?)
}

fn read_circuit(io: &mut Io<'_>, path: &str) -> Result<Circuit, Failure> {
    let text = io.read_source(path)?;
    Ok(parse_circuit(&text)?)
}

fn synth_options(cfg: &CliConfig) -> SynthOptions {
    SynthOptions {
        tol: cfg.tolerance,
        classify_tol: cfg.classify_tolerance,
        force_class: cfg
            .force_class
            .and_then(|n| GateClass::from_cnot_count(n as usize)),
    }
}

fn execute(cmd: &Command, cfg: &CliConfig, io: &mut Io<'_>) -> Result<i32, Failure> {
    if !(cfg.tolerance > 0.0) || !(cfg.classify_tolerance > 0.0) {
        return Err(Failure::bad_input("tolerances must be positive"));
    }
    match cmd {
        Command::Decompose { matrix } => {
            let u = read_matrix(io, matrix)?;
            let (s, phase) = su4_normalize(&u)?;
            let k = kak_decompose(&s)?;
            let class = classify(&k.params, cfg.classify_tolerance);
            let total_phase = wrap_angle(phase + k.global_phase);
            let doc = json!({
                "hx": k.params.hx,
                "hy": k.params.hy,
                "hz": k.params.hz,
                "class": class.label(),
                "cnot_count": class.cnot_count(),
                "global_phase": total_phase,
                "pre_a": mat2_json(&k.pre_a),
                "pre_b": mat2_json(&k.pre_b),
                "post_a": mat2_json(&k.post_a),
                "post_b": mat2_json(&k.post_b),
            });
            let text = format!(
                "h = ({}, {}, {})\nclass {} ({} CNOT)\nglobal phase {}\n",
                k.params.hx,
                k.params.hy,
                k.params.hz,
                class,
                class.cnot_count(),
                total_phase
            );
            emit(io, cfg, &doc.to_string(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Classify { matrix } => {
            let u = read_matrix(io, matrix)?;
            let (s, _) = su4_normalize(&u)?;
            let k = kak_decompose(&s)?;
            let class = classify(&k.params, cfg.classify_tolerance);
            let doc = json!({ "class": class.label(), "cnot_count": class.cnot_count() });
            let text = format!("{} {}\n", class, class.cnot_count());
            emit(io, cfg, &doc.to_string(), &text)?;
            Ok(EXIT_OK)
        }
        Command::Synth { matrix } => {
            let u = read_matrix(io, matrix)?;
            let res = synth_with(&u, &synth_options(cfg))?;
            io.note(&format!(
                "class {}: {} CNOT, verification distance {:e}",
                res.class_used,
                res.circuit.cnot_count(),
                res.verification_distance
            ));
            emit(
                io,
                cfg,
                &serialize_circuit(&res.circuit),
                &res.circuit.to_text(),
            )?;
            Ok(EXIT_OK)
        }
        Command::Verify { circuit, matrix } => {
            let c = read_circuit(io, circuit)?;
            let u = read_matrix(io, matrix)?;
            let report = verify(&c, &u, cfg.tolerance);
            let text = format!(
                "{} distance {:e} (tolerance {:e}), relative phase {}\n",
                if report.passed { "PASS" } else { "FAIL" },
                report.distance,
                report.tolerance,
                report.relative_phase
            );
            let doc = serde_json::to_string(&report).expect("report serializes");
            emit(io, cfg, &doc, &text)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Optimize { circuit } => {
            let c = read_circuit(io, circuit)?;
            let res = optimize(&c, cfg.tolerance)?;
            io.note(&format!(
                "CNOTs before {}, after {}; distance {:e}",
                c.cnot_count(),
                res.circuit.cnot_count(),
                res.verification_distance
            ));
            emit(
                io,
                cfg,
                &serialize_circuit(&res.circuit),
                &res.circuit.to_text(),
            )?;
            Ok(EXIT_OK)
        }
        Command::Gate { name, args } => {
            let m = named_gate(name, args)?;
            emit(io, cfg, &serialize_matrix(&m), &format!("{m}"))?;
            Ok(EXIT_OK)
        }
        Command::Random => {
            let seed = cfg.seed.unwrap_or(0);
            let m = haar_su4(seed).into_inner();
            emit(io, cfg, &serialize_matrix(&m), &format!("{m}"))?;
            Ok(EXIT_OK)
        }
    }
}

/// Run the CLI on explicit streams and return the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_BAD_INPUT
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stderr,
        stdin_used: false,
    };
    match execute(&cli.command, &cli.config, &mut io) {
        Ok(code) => code,
        Err(f) => {
            io.note(&format!("error: {}", f.message));
            f.code
        }
    }
}
