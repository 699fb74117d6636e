//! `delaycalc`: simulate netlists, check traces against delay models, and
//! inspect model parameters.
//!
//! Exit codes: 0 ok, 1 trace violation, 2 parse, parameter or validation
//! error, 3 event budget exceeded, 4 sampler exhausted.

mod ascii;
mod commands;
mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "delaycalc", version, about = "Exact delay-condition calculus for binary signals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a netlist and print every net's waveform.
    Simulate(SimulateArgs),
    /// Check a trace against a delay model or a netlist.
    Check(CheckArgs),
    /// Report which consistency condition a model's parameters satisfy.
    Consistent(ConsistentArgs),
    /// Print the parameters of two bounded delays in series.
    Compose(ComposeArgs),
    /// Write a verified output of a model for a given input.
    Sample(SampleArgs),
    /// Print the netlist text of a built-in circuit.
    Netlist(NetlistArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WaveFormat {
    Ascii,
    Vcd,
    Json,
    /// Signal literal lines, one per net.
    Signals,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct SimulateArgs {
    /// Netlist file.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    netlist: Option<PathBuf>,
    /// Built-in circuit name (see `--builtin list`).
    #[arg(long)]
    builtin: Option<String>,
    /// Signal file with one line per primary input. Built-ins fall back to
    /// their default stimulus.
    #[arg(long)]
    inputs: Option<PathBuf>,
    /// Initial value override, `net=0` or `net=1`. Repeatable.
    #[arg(long = "init", value_name = "NET=V")]
    inits: Vec<String>,
    /// Replace a delay element's model, `net=MODEL`. Repeatable.
    #[arg(long = "delay", value_name = "NET=MODEL")]
    delays: Vec<String>,
    /// Simulation horizon.
    #[arg(long, default_value = "10")]
    until: String,
    #[arg(long, value_enum, default_value = "ascii")]
    format: WaveFormat,
    /// Maximum number of simulation events.
    #[arg(long, default_value_t = delaycalc::circuit::DEFAULT_EVENT_BUDGET)]
    budget: usize,
    /// Maximum ASCII width in columns.
    #[arg(long, default_value_t = 120)]
    width: usize,
    /// Write here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Delay model, e.g. "bdc mr=1 dr=2 mf=1 df=2".
    #[arg(long, conflicts_with = "netlist")]
    model: Option<String>,
    /// Input signal: a literal like "u: 0 @ 1" or a signal file with one line.
    #[arg(long, requires = "model")]
    input: Option<String>,
    /// Output signal, same forms as --input.
    #[arg(long, requires = "model", conflicts_with = "state")]
    output: Option<String>,
    /// Output signal for conditions that constrain the output alone (aic, aicprime).
    #[arg(long, requires = "model")]
    state: Option<String>,
    /// Netlist to check a recorded trace against.
    #[arg(long, requires = "trace")]
    netlist: Option<PathBuf>,
    /// Recorded trace: a `.vcd` file or a signal file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Check a delay element against another model, `net=MODEL`. Repeatable.
    #[arg(long = "delay", value_name = "NET=MODEL", requires = "netlist")]
    delays: Vec<String>,
    /// Horizon for signal-file traces (default: the last switch).
    #[arg(long)]
    until: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args)]
struct ConsistentArgs {
    #[arg(long)]
    model: String,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args)]
struct ComposeArgs {
    /// First delay, a `bdc` or `fixed` model.
    #[arg(long)]
    a: String,
    /// Second delay, driven by the first.
    #[arg(long)]
    b: String,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    model: String,
    /// Input signal: a literal or a signal file with one line.
    #[arg(long)]
    input: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random draws before a rejection sampler (bdc, baidc) gives up.
    #[arg(long, default_value_t = 64)]
    retries: usize,
    /// Search steps for the bridc sampler.
    #[arg(long, default_value_t = 100_000)]
    search_steps: usize,
    /// Name of the written signal.
    #[arg(long, default_value = "x")]
    name: String,
    /// Write here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct NetlistArgs {
    /// Built-in circuit name, or `list`.
    builtin: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Check(a) => commands::check(a),
        Command::Consistent(a) => commands::consistent(a),
        Command::Compose(a) => commands::compose(a),
        Command::Sample(a) => commands::sample(a),
        Command::Netlist(a) => commands::netlist(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
