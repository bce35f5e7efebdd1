mod document;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use spectral_join::eig::{Spectrum, GROUPING_TOLERANCE, MATCH_TOLERANCE};
use spectral_join::join::{generalized_join, theorem1_verify_with, Hypothesis};
use spectral_join::quotient::theorem2_inclusion_check_with;
use spectral_join::search::{CONJECTURE_DESK_LIMIT, CONJECTURE_LONG_LIMIT};
use spectral_join::spread::{cycle_path_join, gnk_family, spread_labeled, theorem6_family};
use spectral_join::verify::{
    bounds_suite, conjecture_suite, lemma1_suite, BoundsConfig, BOUNDS_LONG_LIMIT, LEMMA1_LONG_LIMIT,
};
use spectral_join::Graph;

use document::{emit_dot, emit_edge_list, parse_graph, parse_join, GraphDocument, InputFormat};
use error::CliError;
use output::to_json;

#[derive(Parser)]
#[command(name = "spjoin", version, about = "Spectra and spread of generalized graph joins")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Tolerances {
    /// Relative tolerance for grouping eigenvalues.
    #[arg(long, default_value_t = GROUPING_TOLERANCE)]
    tol: f64,
    /// Absolute tolerance for matching eigenvalue multisets.
    #[arg(long = "match-tol", default_value_t = MATCH_TOLERANCE)]
    match_tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Grouped adjacency spectrum of a graph.
    Spectrum {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Json)]
        format: InputFormat,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Build a constrained join and optionally check eigenvalue inheritance.
    Join {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        #[arg(long = "verify-theorem1")]
        verify_theorem1: bool,
        #[arg(long = "verify-theorem2")]
        verify_theorem2: bool,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Spread and bound panel for a graph file or a built-in family.
    Spread {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = InputFormat::Json)]
        format: InputFormat,
        /// `G(n, k)`: a clique on k vertices joined to n - k isolated ones.
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        gnk: Option<Vec<usize>>,
        /// Path-join of three cycles; q defaults to n/2.
        #[arg(long, num_args = 2..=3, value_names = ["N", "P", "Q"])]
        theorem6: Option<Vec<usize>>,
    },
    /// Run an invariant suite and report counts and the first counterexample.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Allow orders beyond the desk-scale limits.
        #[arg(long)]
        long: bool,
        /// Random graphs in the bounds suite (pairs and families scale with it).
        #[arg(long, default_value_t = 10_000)]
        random: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Dot,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bounds,
    Lemma1,
    Conjecture,
}

/// What a command printed and whether its checks passed.
struct Outcome {
    stdout: String,
    verified: bool,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_graph(path: &PathBuf, format: InputFormat) -> Result<Graph, CliError> {
    parse_graph(&read(path)?, format)?.to_graph("graph")
}

fn cmd_spectrum(file: &PathBuf, format: InputFormat, tol: Tolerances) -> Result<Outcome, CliError> {
    let g = read_graph(file, format)?;
    let spec = Spectrum::of_graph_with(&g, tol.tol);
    let values = spec.values();
    let trace: f64 = values.iter().sum();
    let squares: f64 = values.iter().map(|v| v * v).sum();
    let twice_edges = 2.0 * g.edge_count() as f64;
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let trace_ok = trace.abs() <= 1e-9 * scale * g.order().max(1) as f64;
    let energy_ok = (squares - twice_edges).abs() <= 1e-9 * twice_edges.max(1.0);
    let groups: Vec<_> = spec
        .groups
        .iter()
        .map(|grp| json!({"value": grp.value, "multiplicity": grp.multiplicity, "main": grp.main}))
        .collect();
    let report = json!({
        "n": g.order(),
        "edges": g.edge_count(),
        "eigenvalues": groups,
        "near_degenerate": spec.near_degenerate,
        "trace_check": {"trace": trace, "pass": trace_ok},
        "energy_check": {"sum_of_squares": squares, "twice_edges": twice_edges, "pass": energy_ok},
    });
    Ok(Outcome {
        stdout: to_json(&report),
        verified: trace_ok && energy_ok,
    })
}

fn cmd_join(
    file: &PathBuf,
    emit: Emit,
    verify1: bool,
    verify2: bool,
    tol: Tolerances,
) -> Result<Outcome, CliError> {
    let doc = parse_join(&read(file)?)?;
    let spec = doc.to_spec()?;
    let g = generalized_join(&spec);
    let labels = doc.joined_labels();

    let mut reports = serde_json::Map::new();
    let mut verified = true;
    if verify1 {
        let r = theorem1_verify_with(&spec, tol.match_tol)?;
        for p in &r.parts {
            if let Hypothesis::Unmet { reason } = &p.hypothesis {
                eprintln!("warning: part {}: hypothesis unmet ({reason}); no claim checked", p.part);
            }
        }
        verified &= r.pass;
        reports.insert("theorem1".into(), serde_json::to_value(&r).expect("serializable"));
    }
    if verify2 {
        let r = theorem2_inclusion_check_with(&spec, tol.match_tol)?;
        verified &= r.pass;
        reports.insert("theorem2".into(), serde_json::to_value(&r).expect("serializable"));
    }

    let stdout = match emit {
        Emit::Json => {
            let mut graph = GraphDocument::from_graph(&g);
            graph.labels = labels;
            let mut top = serde_json::Map::new();
            top.insert("graph".into(), serde_json::to_value(graph).expect("serializable"));
            top.extend(reports);
            to_json(&top)
        }
        Emit::Dot | Emit::Edges => {
            if !reports.is_empty() {
                eprint!("{}", to_json(&reports));
            }
            if emit == Emit::Dot {
                emit_dot(&g, &spec, labels.as_deref())
            } else {
                emit_edge_list(&g)
            }
        }
    };
    Ok(Outcome { stdout, verified })
}

fn cmd_spread(
    file: Option<&PathBuf>,
    format: InputFormat,
    gnk: Option<&[usize]>,
    family: Option<&[usize]>,
) -> Result<Outcome, CliError> {
    let sources = usize::from(file.is_some()) + usize::from(gnk.is_some()) + usize::from(family.is_some());
    if sources != 1 {
        return Err(CliError::Usage(
            "give exactly one of a graph file, --gnk N K or --theorem6 N P [Q]".into(),
        ));
    }
    if let Some(path) = file {
        let r = spread_labeled(&read_graph(path, format)?, &path.display().to_string())?;
        return Ok(Outcome { stdout: to_json(&r), verified: true });
    }
    if let Some(&[n, k]) = gnk {
        let (_, r) = gnk_family(n, k)?;
        return Ok(Outcome { stdout: to_json(&r), verified: true });
    }
    let (_, r) = match family.expect("one source is present") {
        [n, p] => theorem6_family(*n, *p)?,
        [n, p, q] => cycle_path_join(*n, *p, *q)?,
        _ => unreachable!("clap enforces two or three values"),
    };
    Ok(Outcome { stdout: to_json(&r), verified: true })
}

/// Capacity errors become usage errors when `--long` would have allowed the run.
fn gate(n: usize, long: bool, long_limit: usize, run: impl FnOnce() -> Result<String, CliError>) -> Result<String, CliError> {
    match run() {
        Err(CliError::Core(spectral_join::Error::Capacity { limit, .. })) if !long && n <= long_limit => Err(
            CliError::Usage(format!("n = {n} exceeds the desk-scale limit {limit}; pass --long")),
        ),
        other => other,
    }
}

#[derive(Serialize)]
struct VerifyOutput<T: Serialize, U: Serialize> {
    #[serde(flatten)]
    suite: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<U>,
}

fn cmd_verify(suite: Suite, n: Option<usize>, seed: u64, long: bool, random: usize) -> Result<Outcome, CliError> {
    let mut pass = true;
    let stdout = match suite {
        Suite::Bounds => {
            let n = n.unwrap_or(6);
            gate(n, long, BOUNDS_LONG_LIMIT, || {
                let cfg = BoundsConfig {
                    exhaustive_max_n: n,
                    random_graphs: random,
                    join_pairs: random / 10,
                    families: random / 5,
                    seed,
                    long,
                    ..BoundsConfig::default()
                };
                let r = bounds_suite(&cfg)?;
                pass = r.pass;
                Ok(to_json(&VerifyOutput::<_, ()> { suite: r, detail: None }))
            })?
        }
        Suite::Lemma1 => {
            let n = n.unwrap_or(6);
            gate(n, long, LEMMA1_LONG_LIMIT, || {
                let r = lemma1_suite(n, long)?;
                pass = r.pass;
                Ok(to_json(&VerifyOutput::<_, ()> { suite: r, detail: None }))
            })?
        }
        Suite::Conjecture => {
            let n = n.unwrap_or(CONJECTURE_DESK_LIMIT);
            gate(n, long, CONJECTURE_LONG_LIMIT, || {
                let (r, detail) = conjecture_suite(n, long)?;
                pass = r.pass && detail.pass;
                Ok(to_json(&VerifyOutput { suite: r, detail: Some(detail) }))
            })?
        }
    };
    Ok(Outcome { stdout, verified: pass })
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Spectrum { file, format, tol } => cmd_spectrum(file, *format, *tol),
        Command::Join { file, emit, verify_theorem1, verify_theorem2, tol } => {
            cmd_join(file, *emit, *verify_theorem1, *verify_theorem2, *tol)
        }
        Command::Spread { file, format, gnk, theorem6 } => {
            cmd_spread(file.as_ref(), *format, gnk.as_deref(), theorem6.as_deref())
        }
        Command::Verify { suite, n, seed, long, random } => cmd_verify(*suite, *n, *seed, *long, *random),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
