//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or range error,
//! 3 lowering error, 4 layout error.

pub mod netlist;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use revadd_core::{
    arithmetic_reference, compare, formula_adder_depth, formula_adder_depth_sum,
    formula_cinc_depth, lower_circuit, pack_registers, synth_adder, synth_controlled_increment,
    synth_increment, unpack_registers, verify_equivalence, AdderSpec, BorrowPolicy, Circuit,
    DepthModel, Domain, Error as CoreError, Simulator, VerifyMode,
};
use thiserror::Error;

use crate::netlist::{Netlist, NetlistError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LOWERING: i32 = 3;
pub const EXIT_LAYOUT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "revadd", version, about = "One-ancilla reversible adder toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the high-level netlist of a circuit.
    Synth {
        kind: Kind,
        #[arg(value_parser = clap::value_parser!(u32).range(1..=4096))]
        size: u32,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a netlist using only x/cx/ccx gates.
    Lower {
        /// Netlist path, or `-` for stdin.
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Simulate one input and print the registers.
    Sim {
        input: PathBuf,
        #[arg(short, long, default_value_t = 0)]
        a: u64,
        #[arg(short, long)]
        b: u64,
    },
    /// Check a netlist against integer arithmetic inferred from its layout.
    Verify(VerifyArgs),
    /// Report paper-convention depth, reference formula and elementary count.
    Cost(CostArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["exhaustive", "random"])))]
pub struct VerifyArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub exhaustive: bool,
    /// Number of random register pairs.
    #[arg(long, value_name = "COUNT")]
    pub random: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    #[arg(required_unless_present = "input", requires = "size")]
    pub kind: Option<Kind>,
    #[arg(value_parser = clap::value_parser!(u32).range(1..=4096))]
    pub size: Option<u32>,
    /// Cost a netlist file instead of a synthesized circuit.
    #[arg(long, conflicts_with_all = ["kind", "size"])]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Incrementer on `size` bits.
    Inc,
    /// Controlled incrementer on `size` bits.
    Cinc,
    /// Adder of two `size`-bit registers.
    Add,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// `key=value` lines.
    Kv,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error("lowering failed at line {line}: {source}")]
    Lowering { line: usize, source: CoreError },
    #[error("layout: {0}")]
    Layout(String),
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed => EXIT_VERIFY_FAILED,
            CliError::Usage(_) | CliError::Io { .. } | CliError::Netlist(_) => EXIT_USAGE,
            CliError::Lowering { .. } => EXIT_LOWERING,
            CliError::Layout(_) => EXIT_LAYOUT,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if !matches!(e, CliError::VerificationFailed) {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Synth { kind, size, out: path } => {
            let circuit = synthesize(kind, size as usize).map_err(usage)?;
            emit(&netlist::serialize(&circuit)?, path.as_deref(), out)
        }
        Command::Lower { input, out: path } => {
            let net = read_netlist(&input)?;
            let lowered = lower_netlist(&net)?;
            emit(&netlist::serialize(&lowered)?, path.as_deref(), out)?;
            writeln!(err, "elementary={}", lowered.len()).map_err(stdio)
        }
        Command::Sim { input, a, b } => {
            let net = read_netlist(&input)?;
            let line = simulate_registers(&net.circuit, a, b)?;
            writeln!(out, "{line}").map_err(stdio)
        }
        Command::Verify(args) => verify(args, out),
        Command::Cost(args) => cost(args, out),
    }
}

pub fn synthesize(kind: Kind, size: usize) -> revadd_core::Result<Circuit> {
    match kind {
        Kind::Inc => synth_increment(size),
        Kind::Cinc => synth_controlled_increment(size),
        Kind::Add => synth_adder(AdderSpec::new(size)?),
    }
}

fn stdio(source: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

fn read_netlist(path: &Path) -> Result<Netlist, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
            path: "<stdin>".into(),
            source,
        })?;
        s
    } else {
        fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?
    };
    Ok(netlist::parse(&text)?)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => out.write_all(text.as_bytes()).map_err(stdio),
    }
}

pub fn lower_netlist(net: &Netlist) -> Result<Circuit, CliError> {
    lower_circuit(&net.circuit, BorrowPolicy::default()).map_err(|e| {
        let line = e.gate_index().and_then(|i| net.line_of(i)).unwrap_or(0);
        CliError::Lowering {
            line,
            source: e.root().clone(),
        }
    })
}

fn require_arithmetic_layout(circuit: &Circuit) -> Result<(), CliError> {
    let layout = circuit.layout();
    if layout.b.is_empty() || layout.flag.is_none() {
        return Err(CliError::Layout(
            "netlist needs `label b` and `label flag`".into(),
        ));
    }
    arithmetic_reference(layout)
        .map(|_| ())
        .map_err(|e| CliError::Layout(e.to_string()))
}

/// Runs `(a, b, flag = 1)` through the circuit and formats the registers
/// read back from the output state.
pub fn simulate_registers(circuit: &Circuit, a: u64, b: u64) -> Result<String, CliError> {
    require_arithmetic_layout(circuit)?;
    let layout = circuit.layout();
    if layout.a.is_empty() && a != 0 {
        return Err(usage("netlist has no a register; omit -a"));
    }
    let input = pack_registers(circuit.width(), layout, a, b, true).map_err(usage)?;
    let output = Simulator::new(circuit).run(&input).map_err(usage)?;
    let (a, b, flag) = unpack_registers(layout, &output).map_err(usage)?;
    Ok(format!("a={a} b={b} flag={}", u8::from(flag)))
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let net = read_netlist(&args.input)?;
    let circuit = &net.circuit;
    require_arithmetic_layout(circuit)?;
    let mode = match args.random {
        Some(count) => VerifyMode::Random {
            count,
            seed: args.seed,
        },
        None => VerifyMode::Exhaustive,
    };
    let oracle = arithmetic_reference(circuit.layout()).map_err(|e| CliError::Layout(e.to_string()))?;
    let report = verify_equivalence(circuit, oracle, mode, Domain::FlagSlice).map_err(usage)?;
    writeln!(out, "{report}").map_err(stdio)?;
    if let Some(cx) = &report.counterexample {
        let layout = circuit.layout();
        let regs = |s| unpack_registers(layout, s).map_err(usage);
        let (ia, ib, _) = regs(&cx.input)?;
        let (_, eb, _) = regs(&cx.expected)?;
        let (ra, rb, rf) = regs(&cx.actual)?;
        writeln!(
            out,
            "counterexample a={ia} b={ib}: expected b={eb}, got a={ra} b={rb} flag={}",
            u8::from(rf)
        )
        .map_err(stdio)?;
        return Err(CliError::VerificationFailed);
    }
    Ok(())
}

/// Reference depth for a synthesized circuit kind, when one is known.
pub fn formula_for(kind: Kind, size: usize) -> Option<u64> {
    match kind {
        Kind::Inc => None,
        Kind::Cinc => formula_cinc_depth(size).ok(),
        Kind::Add if size >= 3 => formula_adder_depth(size).ok(),
        Kind::Add => formula_adder_depth_sum(size).ok(),
    }
}

fn cost(args: CostArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let model = DepthModel::default();
    let (circuit, formula, adder_n) = match (args.input, args.kind, args.size) {
        (Some(path), _, _) => (read_netlist(&path)?.circuit, None, None),
        (None, Some(kind), Some(size)) => {
            let size = size as usize;
            let circuit = synthesize(kind, size).map_err(usage)?;
            // Standalone incrementers are costed in the 2k+1 wire context
            // they occupy inside the adder, so the ladder can borrow.
            let circuit = match kind {
                Kind::Add => circuit,
                Kind::Inc | Kind::Cinc => {
                    let w = circuit.width().max(2 * size + 1);
                    circuit.widen(w).map_err(usage)?
                }
            };
            let n = (kind == Kind::Add).then_some(size);
            (circuit, formula_for(kind, size), n)
        }
        _ => return Err(usage("give either <KIND> <SIZE> or --input <PATH>")),
    };
    let report = compare(&circuit, formula, &model).map_err(|e| CliError::Lowering {
        line: 0,
        source: e.root().clone(),
    })?;
    let text = match args.format {
        Format::Kv => {
            let mut s = report.to_key_values();
            if let Some(n) = adder_n {
                s.push_str(&format!("ratio={:.6}\n", report.cubic_ratio(n)));
            }
            s
        }
        Format::Text => {
            let mut s = format!("{report}\n");
            if let Some(n) = adder_n {
                s.push_str(&format!(
                    "measured / (2/3 n^3): {:.6}\n",
                    report.cubic_ratio(n)
                ));
            }
            s
        }
    };
    out.write_all(text.as_bytes()).map_err(stdio)
}
