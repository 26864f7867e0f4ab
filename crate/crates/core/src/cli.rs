//! Command-line front end.
//!
//! Exit codes: 0 success, 1 argument error, 2 I/O error, 3 no analytic
//! result (for example no threshold crossing).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analysis::{
    advantage_ratio, curve_from_model, threshold_exact, uniform_grid, Resource, ResourceModel,
    Threshold, WLowerBound, DEFAULT_EPS_POINTS,
};
use crate::dense::best_pair_concurrence;
use crate::error::Error;
use crate::format::fmt_num;
use crate::locc::{build_transition_matrix, r_step_distribution, ChainState, TransitionMatrix};
use crate::lossy::{graph_post_loss, BenchmarkMode};
use crate::oracle::{dp_value, mc_estimate, KappaChoice, McConfig};
use crate::qcore::{partial_trace, MAX_QUBITS};
use crate::resources::{graph_state, two_centered_graph, Graph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_NO_RESULT: i32 = 3;

/// Environment variable capping worker threads (0 or unset: automatic).
pub const THREADS_ENV: &str = "REDSIM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "redsim", version, about = "Entanglement distillation from W and GHZ resources over lossy star networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Figure of merit versus loss probability as a two-column TSV.
    Curve(CurveArgs),
    /// Loss probability where one resource overtakes another.
    Threshold(ThresholdArgs),
    /// Lossless Markov-chain transition matrix as TSV.
    Markov(MarkovArgs),
    /// Monte Carlo estimate checked against the deterministic value.
    Mc(McArgs),
    /// Threshold and small-loss slope trends over network sizes.
    Advantage(AdvantageArgs),
    /// Graph-state construction and inspection.
    #[command(subcommand)]
    Graph(GraphCommand),
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0)]
    pub start: f64,
    #[arg(long, default_value_t = 1.0)]
    pub stop: f64,
    #[arg(long, default_value_t = DEFAULT_EPS_POINTS)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// w, ghz or twocentered
    #[arg(long)]
    pub resource: Resource,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub rounds: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Fixed κ for every loss branch instead of optimizing (W only).
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Two-centered benchmark reading; overrides a `:strict` suffix.
    #[arg(long)]
    pub mode: Option<BenchmarkMode>,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long, default_value = "w")]
    pub resource: Resource,
    /// Reference resource the first one must overtake.
    #[arg(long, default_value = "twocentered")]
    pub against: Resource,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub rounds: usize,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub mode: Option<BenchmarkMode>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct MarkovArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub kappa: f64,
    /// Print only the r-step distribution from the start state.
    #[arg(long)]
    pub steps: Option<u32>,
    /// Start state for --steps (default W<n>).
    #[arg(long)]
    pub start: Option<ChainState>,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub rounds: usize,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Fixed κ; by default each loss branch uses its deterministic optimum.
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct AdvantageArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: usize,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1)]
    pub rounds: usize,
    /// Benchmark for the threshold column.
    #[arg(long, default_value = "ghz")]
    pub against: Resource,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum GraphCommand {
    /// Edge list of the two-centered GHZ graph.
    TwoCentered {
        #[arg(long)]
        n: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Edge list of the star graph (GHZ up to local Hadamards).
    Star {
        #[arg(long)]
        n: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Build the graph state from an edge-list file and summarize it.
    Inspect {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated vertices to trace out.
        #[arg(long, value_delimiter = ',')]
        lost: Vec<usize>,
    },
}

/// Command failure with its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    NoResult(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Io(_) => EXIT_IO,
            Self::NoResult(_) => EXIT_NO_RESULT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Usage(m) | Self::Io(m) | Self::NoResult(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoThreshold => Self::NoResult(e.to_string()),
            other => Self::Usage(other.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.message())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.exit_code()
        }
    }
}

/// Parses [`THREADS_ENV`]; `None` means automatic.
pub fn thread_cap(value: Option<&str>) -> CliResult<Option<usize>> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a nonnegative integer, got {v:?}"
            ))),
        },
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Curve(a) => cmd_curve(a, out, err),
        Command::Threshold(a) => cmd_threshold(a, out),
        Command::Markov(a) => cmd_markov(a, out),
        Command::Mc(a) => cmd_mc(a, out),
        Command::Advantage(a) => cmd_advantage(a, out, err),
        Command::Graph(g) => cmd_graph(g, out),
    }
}

/// Writes to `path` through a temporary file in the same directory, or to
/// `out` when no path is given.
fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match path {
        None => out.write_all(text.as_bytes()).map_err(io),
        Some(p) => {
            let mut tmp = tempfile::NamedTempFile::new_in(output_dir(p))
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(p)
                .map_err(|e| CliError::Io(format!("{}: {}", p.display(), e.error)))?;
            Ok(())
        }
    }
}

fn output_dir(p: &Path) -> &Path {
    match p.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    }
}

/// Rejects an output path whose directory does not exist before any work starts.
fn check_output(path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) if !output_dir(p).is_dir() => Err(CliError::Io(format!(
            "{}: directory {} does not exist",
            p.display(),
            output_dir(p).display()
        ))),
        _ => Ok(()),
    }
}

fn grid_of(g: &GridArgs) -> CliResult<Vec<f64>> {
    Ok(uniform_grid(g.start, g.stop, g.points)?)
}

fn with_mode(resource: Resource, mode: Option<BenchmarkMode>) -> Resource {
    match (resource, mode) {
        (Resource::TwoCentered(_), Some(m)) => Resource::TwoCentered(m),
        (other, _) => other,
    }
}

fn check_n(resource: Resource, n: usize, rounds: usize) -> CliResult<()> {
    let min = match resource {
        Resource::TwoCentered(_) => 4,
        _ => 3,
    };
    if n < min || n > MAX_QUBITS {
        return Err(CliError::Usage(format!(
            "--n must be in [{min}, {MAX_QUBITS}] for {resource}, got {n}"
        )));
    }
    if rounds == 0 {
        return Err(CliError::Usage("--rounds must be at least 1".into()));
    }
    Ok(())
}

fn model_for(resource: Resource, n: usize, rounds: usize, kappa: Option<f64>) -> CliResult<ResourceModel> {
    match (resource, kappa) {
        (Resource::W, Some(k)) => Ok(ResourceModel::W(WLowerBound::fixed_kappa(n, rounds, k)?)),
        _ => Ok(ResourceModel::new(resource, n, rounds)?),
    }
}

fn cmd_curve(a: &CurveArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let resource = with_mode(a.resource, a.mode);
    check_n(resource, a.n, a.rounds)?;
    check_output(a.output.as_deref())?;
    let grid = grid_of(&a.grid)?;
    if let Some(k) = a.kappa {
        if resource != Resource::W {
            return Err(CliError::Usage("--kappa applies to the w resource only".into()));
        }
        crate::error::check_range("kappa", k, 0.0, 1.0)?;
    }
    let model = model_for(resource, a.n, a.rounds, a.kappa)?;
    let curve = curve_from_model(&model, a.rounds, &grid)?;
    if let ResourceModel::W(bound) = &model {
        for (lost, o) in bound.per_loss.iter().enumerate() {
            let _ = writeln!(
                err,
                "lost={lost}\tkappa*={}\tvalue={}",
                fmt_num(o.kappa_star),
                fmt_num(o.value)
            );
        }
    }
    emit(a.output.as_deref(), &curve.to_tsv(), out)
}

#[derive(Debug, Serialize)]
struct ThresholdReport {
    resource: Resource,
    against: Resource,
    n: usize,
    rounds: usize,
    #[serde(flatten)]
    threshold: Threshold,
}

fn cmd_threshold(a: &ThresholdArgs, out: &mut dyn Write) -> CliResult<()> {
    let ra = with_mode(a.resource, a.mode);
    let rb = with_mode(a.against, a.mode);
    check_n(ra, a.n, a.rounds)?;
    check_n(rb, a.n, a.rounds)?;
    let grid = grid_of(&a.grid)?;
    let ma = ResourceModel::new(ra, a.n, a.rounds)?;
    let mb = ResourceModel::new(rb, a.n, a.rounds)?;
    let t = threshold_exact(&ma, &mb, &grid)?;
    let text = if a.json {
        let report = ThresholdReport {
            resource: ra,
            against: rb,
            n: a.n,
            rounds: a.rounds,
            threshold: t,
        };
        serde_json::to_string_pretty(&report).expect("serializable report") + "\n"
    } else {
        format!(
            "epsilon\t{}\n{ra}\t{}\n{rb}\t{}\n",
            fmt_num(t.epsilon),
            fmt_num(t.value_a),
            fmt_num(t.value_b)
        )
    };
    emit(None, &text, out)
}

fn matrix_tsv(t: &TransitionMatrix) -> String {
    let mut s = String::from("state");
    for st in &t.states {
        s.push('\t');
        s.push_str(&st.to_string());
    }
    s.push('\n');
    for (i, st) in t.states.iter().enumerate() {
        s.push_str(&st.to_string());
        for j in 0..t.states.len() {
            s.push('\t');
            s.push_str(&fmt_num(t.p[(i, j)]));
        }
        s.push('\n');
    }
    s
}

fn cmd_markov(a: &MarkovArgs, out: &mut dyn Write) -> CliResult<()> {
    check_output(a.output.as_deref())?;
    if a.n < 3 {
        return Err(CliError::Usage(format!("--n must be at least 3, got {}", a.n)));
    }
    let t = build_transition_matrix(a.n, a.kappa)?;
    let text = match a.steps {
        None => matrix_tsv(&t),
        Some(r) => {
            let start = a.start.unwrap_or(ChainState::W(a.n));
            let row = r_step_distribution(&t, start, r)?;
            let mut s = String::from("state");
            for st in &t.states {
                s.push('\t');
                s.push_str(&st.to_string());
            }
            s.push('\n');
            s.push_str(&start.to_string());
            for v in row {
                s.push('\t');
                s.push_str(&fmt_num(v));
            }
            s.push('\n');
            s
        }
    };
    emit(a.output.as_deref(), &text, out)
}

#[derive(Debug, Serialize)]
struct McReport {
    mean: f64,
    stderr: f64,
    samples: u64,
    seed: u64,
    deterministic: f64,
    pass: bool,
}

fn cmd_mc(a: &McArgs, out: &mut dyn Write) -> CliResult<()> {
    check_output(a.output.as_deref())?;
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    check_n(Resource::W, a.n, a.rounds)?;
    crate::error::check_range("epsilon", a.epsilon, 0.0, 1.0)?;
    let kappa = match a.kappa {
        Some(k) => {
            crate::error::check_range("kappa", k, 0.0, 1.0)?;
            KappaChoice::Uniform(k)
        }
        None => KappaChoice::optimal(&WLowerBound::new(a.n, a.rounds)?),
    };
    let cfg = McConfig {
        n: a.n,
        rounds: a.rounds,
        kappa,
        epsilon: a.epsilon,
        samples: a.samples,
        seed: a.seed,
    };
    let est = mc_estimate(&cfg)?;
    let target = dp_value(&cfg)?;
    let pass = est.agrees_with(target, 3.0);
    let text = if a.json {
        let r = McReport {
            mean: est.mean,
            stderr: est.standard_error,
            samples: est.samples,
            seed: a.seed,
            deterministic: target,
            pass,
        };
        serde_json::to_string_pretty(&r).expect("serializable report") + "\n"
    } else {
        format!(
            "mean\tstderr\tsamples\tseed\tdeterministic\tpass\n{}\t{}\t{}\t{}\t{}\t{}\n",
            fmt_num(est.mean),
            fmt_num(est.standard_error),
            est.samples,
            a.seed,
            fmt_num(target),
            pass
        )
    };
    emit(a.output.as_deref(), &text, out)
}

#[derive(Debug, Serialize)]
struct AdvantageRow {
    n: usize,
    threshold: Option<f64>,
    w_slope: f64,
    ghz_slope: f64,
    ratio: f64,
    ratio_fd: f64,
}

fn decreasing_violations(label: &str, pts: &[(usize, f64)]) -> Vec<String> {
    pts.windows(2)
        .filter(|w| w[1].1.is_nan() || w[1].1 >= w[0].1)
        .map(|w| format!("{label} not decreasing: N={} {} -> N={} {}", w[0].0, w[0].1, w[1].0, w[1].1))
        .collect()
}

fn cmd_advantage(a: &AdvantageArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    if a.n_min < 4 || a.n_max > MAX_QUBITS || a.n_min > a.n_max {
        return Err(CliError::Usage(format!(
            "need 4 <= --n-min <= --n-max <= {MAX_QUBITS}"
        )));
    }
    if a.rounds == 0 {
        return Err(CliError::Usage("--rounds must be at least 1".into()));
    }
    let grid = grid_of(&a.grid)?;
    let mut rows = Vec::new();
    for n in a.n_min..=a.n_max {
        let w = ResourceModel::new(Resource::W, n, a.rounds)?;
        let reference = ResourceModel::new(a.against, n, a.rounds)?;
        let threshold = match threshold_exact(&w, &reference, &grid) {
            Ok(t) => Some(t.epsilon),
            Err(Error::NoThreshold) => None,
            Err(e) => return Err(e.into()),
        };
        let ratio = advantage_ratio(n, a.rounds)?;
        rows.push(AdvantageRow {
            n,
            threshold,
            w_slope: ratio.w_derivative,
            ghz_slope: ratio.ghz_derivative,
            ratio: ratio.analytic,
            ratio_fd: ratio.finite_difference,
        });
    }
    let thresholds: Vec<(usize, f64)> = rows
        .iter()
        .map(|r| (r.n, r.threshold.unwrap_or(f64::NAN)))
        .collect();
    let ratios: Vec<(usize, f64)> = rows.iter().map(|r| (r.n, r.ratio)).collect();
    let mut violations = decreasing_violations("threshold", &thresholds);
    violations.extend(decreasing_violations("ratio", &ratios));
    for r in &rows {
        let want = -((r.n - 2) as f64);
        if ((r.ghz_slope - want) / want).abs() > 1e-3 {
            violations.push(format!("GHZ slope at N={} is {} (expected {want})", r.n, r.ghz_slope));
        }
    }
    let text = if a.json {
        serde_json::to_string_pretty(&rows).expect("serializable rows") + "\n"
    } else {
        let mut s = String::from("n\tthreshold\tw_slope\tghz_slope\tratio\tratio_fd\n");
        for r in &rows {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.n,
                r.threshold.map_or("none".to_string(), fmt_num),
                fmt_num(r.w_slope),
                fmt_num(r.ghz_slope),
                fmt_num(r.ratio),
                fmt_num(r.ratio_fd)
            ));
        }
        s
    };
    emit(None, &text, out)?;
    if violations.is_empty() {
        let _ = writeln!(err, "trends: ok");
        Ok(())
    } else {
        for v in &violations {
            let _ = writeln!(err, "{v}");
        }
        Err(CliError::NoResult(format!("{} trend violation(s)", violations.len())))
    }
}

fn cmd_graph(g: &GraphCommand, out: &mut dyn Write) -> CliResult<()> {
    match g {
        GraphCommand::TwoCentered { n, output } => {
            let (graph, layout) = two_centered_graph(*n)?;
            let mut text = format!(
                "# roots {} {}\n# leaves_a {:?}\n# leaves_b {:?}\n",
                layout.root_a, layout.root_b, layout.leaves_a, layout.leaves_b
            );
            text.push_str(&graph.to_string());
            emit(output.as_deref(), &text, out)
        }
        GraphCommand::Star { n, output } => {
            crate::error::check_count("vertex count", *n, 2, MAX_QUBITS)?;
            emit(output.as_deref(), &Graph::star(*n)?.to_string(), out)
        }
        GraphCommand::Inspect { file, lost } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
            let graph: Graph = text.parse()?;
            let n = graph.vertex_count();
            crate::error::check_count("vertex count", n, 1, MAX_QUBITS)?;
            let ket = graph_state(&graph)?;
            let rho = ket.projector();
            let mut single_dev = 0.0f64;
            for v in 0..n {
                let r = partial_trace(&rho, &[v])?;
                single_dev = single_dev
                    .max((r.entry(0, 0).re - 0.5).abs())
                    .max(r.entry(0, 1).norm());
            }
            let mut s = format!(
                "vertices\t{n}\nedges\t{}\nconnected\t{}\nnorm\t{}\nsingle_qubit_deviation\t{}\n",
                graph.edge_count(),
                graph.is_connected(),
                fmt_num(ket.norm_sqr()),
                fmt_num(single_dev)
            );
            if !lost.is_empty() {
                if lost.len() >= n {
                    return Err(CliError::Usage("cannot lose every vertex".into()));
                }
                let reduced = graph_post_loss(&graph, lost)?;
                let purity = (reduced.matrix() * reduced.matrix()).trace().re;
                s.push_str(&format!("remaining\t{}\npurity\t{}\n", reduced.qubits(), fmt_num(purity)));
                if reduced.qubits() >= 2 {
                    s.push_str(&format!(
                        "best_pair_concurrence\t{}\n",
                        fmt_num(best_pair_concurrence(&reduced)?)
                    ));
                }
            }
            emit(None, &s, out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["redsim"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn thread_cap_parsing() {
        assert_eq!(thread_cap(None).unwrap(), None);
        assert_eq!(thread_cap(Some("0")).unwrap(), None);
        assert_eq!(thread_cap(Some("3")).unwrap(), Some(3));
        assert!(thread_cap(Some("-1")).is_err());
        assert!(thread_cap(Some("many")).is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(&["curve", "--n", "4"]).0, EXIT_USAGE);
        assert_eq!(run(&["curve", "--resource", "ghz", "--n", "2"]).0, EXIT_USAGE);
        assert_eq!(run(&["markov", "--n", "2", "--kappa", "0.5"]).0, EXIT_USAGE);
        assert_eq!(run(&["mc", "--samples", "0"]).0, EXIT_USAGE);
        assert_eq!(run(&["bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("curve"));
    }

    #[test]
    fn ghz_against_ghz_has_no_threshold() {
        let (code, _, err) = run(&["threshold", "--resource", "ghz", "--against", "ghz", "--n", "5"]);
        assert_eq!(code, EXIT_NO_RESULT);
        assert!(err.contains("no threshold"));
    }

    #[test]
    fn graph_commands() {
        let (code, out, _) = run(&["graph", "two-centered", "--n", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("# vertices 4\n0 1\n0 2\n1 3\n"));
        let (code, out, _) = run(&["graph", "star", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "# vertices 3\n0 1\n0 2\n");
    }
}
