//! `tapsp` command line: `gen`, `threshold`, `diameter`, `oracle`, `bench`.
//!
//! Every global flag can also be set through an environment variable with
//! the `TAPSP_` prefix (`TAPSP_SEED`, `TAPSP_OMEGA`, `TAPSP_KERNEL`,
//! `TAPSP_VERIFY`, `TAPSP_MODE`, `TAPSP_TRACE`, `TAPSP_THREADS`,
//! `TAPSP_JSON`, `TAPSP_FORCE_BETA`, `TAPSP_FORCE_LEVELS`). Flags win.
//!
//! Exit codes: 0 success, 2 verification mismatch, 3 input error,
//! 4 negative cycle, 1 anything else.

mod bench;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Config, Kernel, DEFAULT_OMEGA};
use crate::diameter::{self, Mode};
use crate::error::Error;
use crate::graph::{find_negative_cycle, gen_random, parse_graph, to_weight_matrix, write_graph, GenParams, Graph};
use crate::oracle;
use crate::rng::Rng;
use crate::schedule::build_schedule;
use crate::threshold_neg::threshold_apsp_neg;
use crate::threshold_pos::{level_plan, threshold_apsp_pos};

pub use output::{DiameterOutput, ThresholdOutput};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_VERIFY_MISMATCH: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_NEGATIVE_CYCLE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "tapsp", version, about = "Threshold APSP and exact diameter for integer-weighted digraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Matrix multiplication exponent used to pick the parameters.
    #[arg(long, global = true, env = "TAPSP_OMEGA", default_value_t = DEFAULT_OMEGA)]
    pub omega: f64,
    #[arg(long, global = true, env = "TAPSP_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, env = "TAPSP_KERNEL", value_enum, default_value_t = KernelArg::Schoolbook)]
    pub kernel: KernelArg,
    /// Compare results against the brute-force oracle; exit 2 on mismatch.
    #[arg(long, global = true, env = "TAPSP_VERIFY")]
    pub verify: bool,
    #[arg(long, global = true, env = "TAPSP_MODE", value_enum, default_value_t = ModeArg::Auto)]
    pub mode: ModeArg,
    #[arg(long, global = true, env = "TAPSP_TRACE")]
    pub trace: bool,
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true, env = "TAPSP_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, env = "TAPSP_JSON")]
    pub json: bool,
    #[arg(long, global = true, env = "TAPSP_FORCE_BETA")]
    pub force_beta: Option<f64>,
    #[arg(long, global = true, env = "TAPSP_FORCE_LEVELS")]
    pub force_levels: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Schoolbook,
    Strassen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    General,
    Positive,
    /// Positive if every weight is at least 1, general otherwise.
    Auto,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Random digraph in the `p sp` text format.
    Gen {
        #[arg(short = 'n', long)]
        n: usize,
        /// Arc probability per ordered pair.
        #[arg(short = 'p', long = "density")]
        density: f64,
        #[arg(long, allow_hyphen_values = true)]
        wmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        wmax: i64,
        #[arg(long)]
        no_neg_cycle: bool,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Ordered pairs at distance at most `d`.
    Threshold {
        file: PathBuf,
        #[arg(short = 'd', long, allow_hyphen_values = true)]
        d: i64,
        /// List the pairs, not just their count.
        #[arg(long)]
        pairs: bool,
    },
    /// Exact diameter and the pairs attaining it.
    Diameter { file: PathBuf },
    /// Brute-force distances: diameter, and the threshold count with `-d`.
    Oracle {
        file: PathBuf,
        #[arg(short = 'd', long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long)]
        pairs: bool,
    },
    /// CSV of wall time and operation counts over a grid of sizes.
    Bench(bench::BenchArgs),
}

impl GlobalArgs {
    pub fn config(&self) -> Config {
        Config {
            omega: self.omega,
            kernel: match self.kernel {
                KernelArg::Schoolbook => Kernel::Schoolbook,
                KernelArg::Strassen => Kernel::Strassen,
            },
            verify: self.verify,
            force_beta: self.force_beta,
            force_levels: self.force_levels,
            ..Config::default()
        }
    }

    /// `auto` picks positive iff all weights are at least 1.
    pub fn resolve_mode(&self, g: &Graph) -> Mode {
        match self.mode {
            ModeArg::General => Mode::General,
            ModeArg::Positive => Mode::Positive,
            ModeArg::Auto if g.is_positive() => Mode::Positive,
            ModeArg::Auto => Mode::General,
        }
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Mismatch,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NegativeCycle(_) => EXIT_NEGATIVE_CYCLE,
        Error::Parse { .. }
        | Error::Dimension(_)
        | Error::EntryBound { .. }
        | Error::Parameter(_)
        | Error::NonPositiveMode { .. }
        | Error::GenerationExhausted(_)
        | Error::Io(_) => EXIT_INPUT,
        Error::MissingSource(_) | Error::NotDiameter(_) => EXIT_FAILURE,
    }
}

/// Parses `args` (program name first), runs the command writing to `out`,
/// and returns the exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.global.threads {
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match execute(&cli, out) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Mismatch) => {
            eprintln!("verification failed: result differs from the oracle");
            EXIT_VERIFY_MISMATCH
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> crate::Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen {
            n,
            density,
            wmin,
            wmax,
            no_neg_cycle,
            output,
        } => {
            let graph = gen_random(&GenParams {
                n: *n,
                density: *density,
                wmin: *wmin,
                wmax: *wmax,
                seed: g.seed,
                no_negative_cycle: *no_neg_cycle,
            })?;
            let text = write_graph(&graph);
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(Outcome::Ok)
        }
        Command::Threshold { file, d, pairs } => cmd_threshold(g, &load(file)?, *d, *pairs, out),
        Command::Diameter { file } => cmd_diameter(g, &load(file)?, out),
        Command::Oracle { file, d, pairs } => cmd_oracle(g, &load(file)?, *d, *pairs, out),
        Command::Bench(args) => {
            bench::run(g, args, out)?;
            Ok(Outcome::Ok)
        }
    }
}

fn load(path: &Path) -> crate::Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

fn oracle_distances(graph: &Graph) -> crate::Result<crate::WeightMatrix> {
    if let Some(c) = find_negative_cycle(graph) {
        return Err(Error::NegativeCycle(c));
    }
    oracle::floyd_warshall(&to_weight_matrix(graph))
}

fn cmd_threshold(g: &GlobalArgs, graph: &Graph, d: i64, list: bool, out: &mut dyn Write) -> crate::Result<Outcome> {
    let cfg = g.config();
    let mode = g.resolve_mode(graph);
    let mut trace = Vec::new();
    let (reported, stats) = match mode {
        Mode::Positive => {
            if g.trace && d >= 0 {
                for (j, r) in level_plan(d, graph.bound())?.levels.iter().enumerate() {
                    trace.push(format!("level {j}: {}..={}", r.start(), r.end()));
                }
            }
            (threshold_apsp_pos(graph, d, &cfg)?, None)
        }
        Mode::General => {
            let report = threshold_apsp_neg(graph, d, &cfg, &Rng::new(g.seed))?;
            if g.trace && graph.n() >= 2 {
                let s = build_schedule(graph.n(), graph.bound(), &cfg)?;
                trace.push(format!(
                    "beta {:.6} gamma {:.6} t {} K {}",
                    s.beta,
                    s.gamma,
                    s.far_threshold(),
                    s.window()
                ));
                for l in &s.levels {
                    trace.push(format!(
                        "level {}: t {:.4} beta {:.6} gamma {:.6} k {}",
                        l.index, l.t, l.beta, l.gamma, l.k
                    ));
                }
            }
            (report.reported, Some(report.stats))
        }
    };
    let verified = if g.verify {
        let truth = oracle::brute_threshold(&oracle_distances(graph)?, d);
        Some(truth == reported)
    } else {
        None
    };
    let report = ThresholdOutput::new(mode, graph.n(), d, &reported, list, stats, verified, trace);
    report.write(out, g.json)?;
    Ok(if verified == Some(false) { Outcome::Mismatch } else { Outcome::Ok })
}

fn cmd_diameter(g: &GlobalArgs, graph: &Graph, out: &mut dyn Write) -> crate::Result<Outcome> {
    let cfg = g.config();
    let mode = g.resolve_mode(graph);
    let result = diameter::diameter(graph, mode, &cfg, &Rng::new(g.seed))?;
    let verified = if g.verify {
        let dist = oracle_distances(graph)?;
        let want = oracle::diameter(&dist);
        let same_witnesses = match want {
            Some(_) => oracle::diameter_argmax(&dist) == result.witnesses,
            None => true,
        };
        Some(want == result.value && same_witnesses)
    } else {
        None
    };
    let report = DiameterOutput::new(mode, graph.n(), &result, g.trace, verified);
    report.write(out, g.json)?;
    Ok(if verified == Some(false) { Outcome::Mismatch } else { Outcome::Ok })
}

fn cmd_oracle(g: &GlobalArgs, graph: &Graph, d: Option<i64>, list: bool, out: &mut dyn Write) -> crate::Result<Outcome> {
    let dist = oracle_distances(graph)?;
    let value = oracle::diameter(&dist);
    let witnesses = match value {
        Some(_) => oracle::diameter_argmax(&dist),
        None => {
            let n = graph.n();
            (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| dist.get(u, v) == crate::INF)
                .collect()
        }
    };
    let threshold = d.map(|d| (d, oracle::brute_threshold(&dist, d)));
    output::write_oracle(out, g.json, graph.n(), value, &witnesses, threshold.as_ref(), list)?;
    Ok(Outcome::Ok)
}
