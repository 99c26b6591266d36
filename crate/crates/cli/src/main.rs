use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use graphweight::exec::{configure_threads, Execution};
use graphweight::io::{parse_edge_list, parse_graph6, split_edge_lists};
use graphweight::output::{format_report, OutputFormat, CSV_HEADER};
use graphweight::verify::{run, GraphSource, IdentityChecks, Probability, RunConfig, Summary};
use graphweight::{Budgets, Formula, Graph};

mod selftest;

#[derive(Parser)]
#[command(
    name = "graphweight",
    version,
    about = "Exact evaluation and cross-checking of the graph invariants phi and psi"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the invariants on graphs read from a file or stdin, one per line.
    Compute {
        /// Input file; stdin when omitted.
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = InputFormat::G6)]
        format: InputFormat,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification campaign; exits 1 if any graph disagrees.
    Verify {
        /// Every labeled graph on N vertices.
        #[arg(long, value_name = "N", group = "corpus")]
        exhaustive: Option<usize>,
        /// COUNT Erdős–Rényi graphs G(N, P); P is `a/b` or a decimal.
        #[arg(long, num_args = 3, value_names = ["N", "P", "COUNT"], group = "corpus")]
        random: Option<Vec<String>>,
        /// Graphs from a file (see --format).
        #[arg(long, value_name = "FILE", group = "corpus")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = InputFormat::G6)]
        format: InputFormat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also check the kernel-count and parity identities on vertex subsets.
        #[arg(long)]
        check_identities: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check built-in golden values and arithmetic oracles.
    Selftest,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = FormulaArg::All)]
    formula: FormulaArg,
    #[arg(long, default_value_t = Budgets::default().edges)]
    edge_budget: usize,
    #[arg(long, default_value_t = Budgets::default().vertices)]
    vertex_budget: usize,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputArg::Plain)]
    output: OutputArg,
    /// Include per-formula wall times in the records.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    G6,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    Definition,
    Eulerian,
    Corank,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Plain,
    Csv,
    Jsonl,
}

impl From<OutputArg> for OutputFormat {
    fn from(o: OutputArg) -> Self {
        match o {
            OutputArg::Plain => OutputFormat::Plain,
            OutputArg::Csv => OutputFormat::Csv,
            OutputArg::Jsonl => OutputFormat::Jsonl,
        }
    }
}

/// Failure classes, mapped onto exit codes.
enum Failure {
    Mismatch,
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Compute {
            file,
            format,
            common,
        } => compute(file, format, &common),
        Command::Verify {
            exhaustive,
            random,
            input,
            format,
            seed,
            check_identities,
            common,
        } => verify(
            exhaustive,
            random,
            input,
            format,
            seed,
            check_identities,
            &common,
        ),
        Command::Selftest => selftest::run_all(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn base_config(source: GraphSource, common: &Common) -> Result<RunConfig, Failure> {
    if let Some(threads) = common.threads {
        if threads == 0 {
            return Err(anyhow!("--threads must be at least 1").into());
        }
        configure_threads(threads).map_err(|e| anyhow!(e))?;
    }
    let mut cfg = RunConfig::new(source);
    cfg.budgets = Budgets {
        edges: common.edge_budget,
        vertices: common.vertex_budget,
    };
    cfg.formulas = match common.formula {
        FormulaArg::Definition => vec![Formula::Definition],
        FormulaArg::Eulerian => vec![Formula::Eulerian],
        FormulaArg::Corank => vec![Formula::Corank],
        FormulaArg::All => Formula::ALL.to_vec(),
    };
    cfg.exec = match common.threads {
        Some(1) => Execution::Sequential,
        _ => Execution::default(),
    };
    Ok(cfg)
}

fn read_graphs(file: Option<&PathBuf>, format: InputFormat) -> anyhow::Result<Vec<Graph>> {
    let text = match file {
        Some(path) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            s
        }
    };
    match format {
        InputFormat::G6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_graph6(l).map_err(|e| anyhow!("line {}: {e}", i + 1)))
            .collect(),
        InputFormat::Edges => split_edge_lists(&text)
            .into_iter()
            .map(|(start, chunk)| {
                parse_edge_list(&chunk).map_err(|e| anyhow!("graph starting at line {start}: {e}"))
            })
            .collect(),
    }
}

/// Streams reports to stdout; budget skips become warnings on stderr.
fn emit_reports(
    cfg: &RunConfig,
    common: &Common,
    only_mismatches: bool,
) -> Result<Summary, Failure> {
    let format = OutputFormat::from(common.output);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if format == OutputFormat::Csv {
        writeln!(out, "{CSV_HEADER}").context("writing output")?;
    }
    let mut write_error = None;
    let summary = run(cfg, |report| {
        for (f, err) in report.skipped() {
            eprintln!(
                "warning: graph {} ({}): {f} skipped: {err}",
                report.index, report.graph6
            );
        }
        if only_mismatches && !report.is_mismatch() {
            return;
        }
        if write_error.is_none() {
            if let Err(e) = writeln!(out, "{}", format_report(report, format, common.timings)) {
                write_error = Some(e);
            }
        }
    })
    .map_err(|e| anyhow!(e))?;
    if let Some(e) = write_error {
        return Err(anyhow!(e).context("writing output").into());
    }
    out.flush().context("writing output")?;
    Ok(summary)
}

fn compute(file: Option<PathBuf>, format: InputFormat, common: &Common) -> Result<(), Failure> {
    let graphs = read_graphs(file.as_ref(), format)?;
    let cfg = base_config(GraphSource::List(graphs), common)?;
    let summary = emit_reports(&cfg, common, false)?;
    if summary.failed() {
        eprintln!("{summary}");
        return Err(Failure::Mismatch);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn verify(
    exhaustive: Option<usize>,
    random: Option<Vec<String>>,
    input: Option<PathBuf>,
    format: InputFormat,
    seed: u64,
    check_identities: bool,
    common: &Common,
) -> Result<(), Failure> {
    let source = match (exhaustive, random, input) {
        (Some(n), None, None) => GraphSource::Exhaustive { n },
        (None, Some(args), None) => {
            let n = args[0]
                .parse()
                .with_context(|| format!("invalid vertex count `{}`", args[0]))?;
            let p: Probability = args[1].parse().map_err(|e| anyhow!("{e}"))?;
            let count = args[2]
                .parse()
                .with_context(|| format!("invalid count `{}`", args[2]))?;
            GraphSource::Random { n, p, count }
        }
        (None, None, Some(path)) => GraphSource::List(read_graphs(Some(&path), format)?),
        _ => {
            return Err(
                anyhow!("exactly one of --exhaustive, --random, --input is required").into(),
            )
        }
    };
    let mut cfg = base_config(source, common)?;
    cfg.seed = seed;
    if check_identities {
        cfg.identities = IdentityChecks::Standard;
    }

    let plain = matches!(common.output, OutputArg::Plain);
    let summary = emit_reports(&cfg, common, plain)?;
    let detail = format!(
        "claim checks {}, parity checks {}, budget skips {}, {:.3} s",
        summary.claim_checked,
        summary.parity_checked,
        summary.skipped,
        summary.elapsed.as_secs_f64()
    );
    if plain {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    eprintln!("{detail}");
    if summary.failed() {
        return Err(Failure::Mismatch);
    }
    Ok(())
}
