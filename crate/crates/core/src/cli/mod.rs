//! Command-line front end. Every command maps onto one library call and
//! prints a [`ResultTable`].

mod table;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::ghz_analysis::{
    asymptotic_m, ghz_spectrum, group_lifetime, lower_bound_m, upper_bound_lifetimes, upper_bound_m,
};
use crate::graph_core::{
    degree_bound, make_lattice, pair_entangled, pair_threshold, reduced_pair_state, separability_bound, Graph, Lattice,
};
use crate::noise_model::NoiseParameter;
use crate::oracle::verify::{run_suite, Suite};

pub use table::{emit_table, format_real, Cell, Format, ResultTable, SIG_DIGITS};

#[derive(Debug, Parser)]
#[command(name = "entlife", version, about = "Lifetimes of multiparty entanglement under depolarizing noise")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// GHZ states.
    #[command(subcommand)]
    Ghz(GhzCommand),
    /// Graph (cluster) states.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Dense brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct NoiseArgs {
    /// Survival parameter p = exp(-kappa t).
    #[arg(long)]
    p: Option<f64>,
    /// Dimensionless time kappa t.
    #[arg(long)]
    kt: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum GhzCommand {
    /// Spectrum of the depolarized N-qubit GHZ state.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        noise: NoiseArgs,
    },
    /// Lifetime of entanglement across a group of m particles (all m ≤ N/2 if omitted).
    Lifetime {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Bounds on the number of groups still entangled at a given noise level.
    Mbound {
        #[command(flatten)]
        noise: NoiseArgs,
    },
    /// Time after which no M-party entanglement survives.
    Mlifetime {
        #[arg(long)]
        m: u64,
    },
    /// `mlifetime` for every M in a range.
    Scan {
        #[arg(long, default_value_t = 2)]
        m_from: u64,
        #[arg(long)]
        m_to: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LatticeKind {
    Linear,
    Ring,
    Star,
    Grid2d,
    Grid3d,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Lattice family.
    #[arg(long, value_enum, conflicts_with = "graph_file")]
    lattice: Option<LatticeKind>,
    /// Vertex count of a linear, ring or star lattice.
    #[arg(long)]
    length: Option<usize>,
    /// Grid dimensions, comma separated.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    /// Edge-list file ("i j" per line).
    #[arg(long)]
    graph_file: Option<std::path::PathBuf>,
    /// Adjacent pair to keep; defaults to an interior pair of the lattice.
    #[arg(long, num_args = 2, value_names = ["K", "L"])]
    pair: Option<Vec<usize>>,
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    /// Noise level at which the pair stops being distillable.
    PairThreshold {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Bell-diagonal weights of the pair after measuring everything else.
    ReducedPair {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        noise: NoiseArgs,
    },
    /// Time below which a pair with the given degrees is distillable.
    DegreeBound {
        #[arg(long)]
        dk: usize,
        #[arg(long)]
        dl: usize,
    },
    /// Time beyond which a graph of maximal degree m is fully separable.
    SepBound {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Ghz,
    Cluster,
    Pair,
    Choi,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Exit codes: 0 on success, 1 for usage, domain and validation errors,
/// 2 for numeric failures and failed verification checks.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut notes = Vec::new();
    match execute(&cli.command, &mut notes) {
        Ok((table, ok)) => {
            for n in notes {
                let _ = writeln!(err, "note: {n}");
            }
            let _ = write!(out, "{}", emit_table(&table, cli.format));
            if ok {
                0
            } else {
                let _ = writeln!(err, "verification failed");
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numeric() {
                2
            } else {
                1
            }
        }
    }
}

fn noise(args: &NoiseArgs, notes: &mut Vec<String>) -> Result<NoiseParameter> {
    let (np, clamped) = match (args.p, args.kt) {
        (Some(p), None) => NoiseParameter::from_p_clamped(p)?,
        (None, Some(kt)) => NoiseParameter::from_time_clamped(kt)?,
        _ => unreachable!("clap enforces exactly one of --p, --kt"),
    };
    if clamped {
        notes.push(format!("noise clamped to p = {}", format_real(np.p())));
    }
    Ok(np)
}

fn noise_params(t: ResultTable, np: NoiseParameter) -> ResultTable {
    t.param("p", format_real(np.p())).param("kappa_t", format_real(np.kappa_t()))
}

fn resolve_graph(args: &GraphArgs) -> Result<(Graph, (usize, usize), String)> {
    let (graph, lattice, label) = if let Some(path) = &args.graph_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
        (Graph::parse(&text)?, None, format!("file:{}", path.display()))
    } else {
        let kind = args.lattice.ok_or_else(|| Error::Validation("need --lattice or --graph-file".into()))?;
        let length = || args.length.ok_or_else(|| Error::Validation("this lattice needs --length".into()));
        let dims = |want: usize| {
            if args.dims.len() == want {
                Ok(args.dims.clone())
            } else {
                Err(Error::Validation(format!("this lattice needs --dims with {want} values")))
            }
        };
        let lattice = match kind {
            LatticeKind::Linear => Lattice::Linear(length()?),
            LatticeKind::Ring => Lattice::Ring(length()?),
            LatticeKind::Star => Lattice::Star(length()?),
            LatticeKind::Grid2d => {
                let d = dims(2)?;
                Lattice::Grid2d(d[0], d[1])
            }
            LatticeKind::Grid3d => {
                let d = dims(3)?;
                Lattice::Grid3d(d[0], d[1], d[2])
            }
        };
        let label = format!("{lattice:?}").to_lowercase();
        (make_lattice(&lattice)?, Some(lattice), label)
    };
    let pair = match &args.pair {
        Some(v) => (v[0], v[1]),
        None => lattice
            .and_then(|l| l.interior_pair())
            .ok_or_else(|| Error::Validation("no default pair for this graph; pass --pair K L".into()))?,
    };
    Ok((graph, pair, label))
}

fn execute(cmd: &Command, notes: &mut Vec<String>) -> Result<(ResultTable, bool)> {
    let table = match cmd {
        Command::Ghz(c) => ghz(c, notes)?,
        Command::Graph(c) => graph(c, notes)?,
        Command::Oracle(OracleCommand::Verify { suite }) => return verify(*suite),
    };
    Ok((table, true))
}

fn ghz(cmd: &GhzCommand, notes: &mut Vec<String>) -> Result<ResultTable> {
    Ok(match cmd {
        GhzCommand::Spectrum { n, noise: na } => {
            let np = noise(na, notes)?;
            let s = ghz_spectrum(*n, np)?;
            let mut t =
                noise_params(ResultTable::new("ghz spectrum", &["k", "sign", "lambda", "ln_lambda"]), np).param("n", n);
            t.push(vec![0usize.into(), "+".into(), s.lambda0_plus().into(), s.log_lambda0_plus().into()]);
            t.push(vec![0usize.into(), "-".into(), s.lambda0_minus().into(), s.log_lambda0_minus().into()]);
            for k in 1..=n / 2 {
                t.push(vec![k.into(), "".into(), s.lambda(k).into(), s.log_lambda(k).into()]);
            }
            t
        }
        GhzCommand::Lifetime { n, m } => {
            let mut t = ResultTable::new("ghz lifetime", &["n", "m", "p", "kappa_t"]).param("n", n);
            let groups: Vec<usize> = match m {
                Some(m) => {
                    t = t.param("m", m);
                    vec![*m]
                }
                None => (1..=n / 2).collect(),
            };
            for m in groups {
                let lt = group_lifetime(*n, m)?;
                t.push(vec![(*n).into(), m.into(), lt.p.into(), lt.kappa_t.into()]);
            }
            t
        }
        GhzCommand::Mbound { noise: na } => {
            let np = noise(na, notes)?;
            let lower = lower_bound_m(np)?;
            let mut t =
                noise_params(ResultTable::new("ghz mbound", &["p", "kappa_t", "m_upper", "m_lower", "guaranteed"]), np);
            t.push(vec![
                np.p().into(),
                np.kappa_t().into(),
                upper_bound_m(np).to_string().into(),
                lower.m.into(),
                lower.guaranteed.into(),
            ]);
            t
        }
        GhzCommand::Mlifetime { m } => {
            let kt = crate::ghz_analysis::upper_bound_lifetime(*m)?;
            let mut t = ResultTable::new("ghz mlifetime", &["M", "kappa_tau"]).param("m", m);
            t.push(vec![(*m).into(), kt.into()]);
            t
        }
        GhzCommand::Scan { m_from, m_to } => {
            if m_from > m_to {
                return Err(Error::Domain(format!("--m-from {m_from} exceeds --m-to {m_to}")));
            }
            let ms: Vec<u64> = (*m_from..=*m_to).collect();
            let mut t = ResultTable::new("ghz scan", &["M", "kappa_tau", "asymptote_M"])
                .param("m_from", m_from)
                .param("m_to", m_to);
            for (m, kt) in ms.iter().zip(upper_bound_lifetimes(&ms)) {
                let kt = kt?;
                let asym = asymptotic_m(kt).map(Cell::Real).unwrap_or_else(|_| Cell::Text("".into()));
                t.push(vec![(*m).into(), kt.into(), asym]);
            }
            t
        }
    })
}

fn graph(cmd: &GraphCommand, notes: &mut Vec<String>) -> Result<ResultTable> {
    Ok(match cmd {
        GraphCommand::PairThreshold { graph } => {
            let (g, (k, l), label) = resolve_graph(graph)?;
            let lt = pair_threshold(&g, k, l)?;
            let mut t = ResultTable::new("graph pair-threshold", &["k", "l", "p", "kappa_t"]).param("graph", label);
            t.push(vec![k.into(), l.into(), lt.p.into(), lt.kappa_t.into()]);
            t
        }
        GraphCommand::ReducedPair { graph, noise: na } => {
            let np = noise(na, notes)?;
            let (g, (k, l), label) = resolve_graph(graph)?;
            let q = reduced_pair_state(&g, np, k, l)?;
            let mut t = noise_params(
                ResultTable::new("graph reduced-pair", &["k", "l", "q00", "q01", "q10", "q11", "distillable"]),
                np,
            )
            .param("graph", label);
            t.push(vec![
                k.into(),
                l.into(),
                q.q00().into(),
                q.q01().into(),
                q.q10().into(),
                q.q11().into(),
                pair_entangled(&q).into(),
            ]);
            t
        }
        GraphCommand::DegreeBound { dk, dl } => {
            let mut t =
                ResultTable::new("graph degree-bound", &["d_k", "d_l", "kappa_t"]).param("dk", dk).param("dl", dl);
            t.push(vec![(*dk).into(), (*dl).into(), degree_bound(*dk, *dl)?.into()]);
            t
        }
        GraphCommand::SepBound { m } => {
            let mut t = ResultTable::new("graph sep-bound", &["m", "kappa_t"]).param("m", m);
            t.push(vec![(*m).into(), separability_bound(*m)?.into()]);
            t
        }
    })
}

fn verify(suite: SuiteArg) -> Result<(ResultTable, bool)> {
    let (name, suite) = match suite {
        SuiteArg::Ghz => ("ghz", Suite::Ghz),
        SuiteArg::Cluster => ("cluster", Suite::Cluster),
        SuiteArg::Pair => ("pair", Suite::Pair),
        SuiteArg::Choi => ("choi", Suite::Choi),
    };
    let checks = run_suite(suite)?;
    let mut t = ResultTable::new("oracle verify", &["check", "value", "tolerance", "passed"]).param("suite", name);
    let ok = checks.iter().all(|c| c.passed);
    for c in checks {
        let tol = if c.tolerance.is_nan() { Cell::Text("".into()) } else { Cell::Real(c.tolerance) };
        t.push(vec![c.name.into(), c.value.into(), tol, c.passed.into()]);
    }
    Ok((t, ok))
}
