//! Command-line front end: build or load an Ising model, choose a spanning
//! tree, and run the exact enumerations or the two importance-sampling
//! estimators. Reports go to standard output as JSON or CSV.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use treeising::oracle::{brute_force_log_z, brute_force_log_z_dual, brute_force_log_z_primal};
use treeising::topology;
use treeising::{
    estimate_dual, estimate_primal, maximum_spanning_tree, EstimateReport, Graph, IsingModel,
    SamplerConfig, TreePartition,
};

use report::{EstimateResult, ModelInfo, Report, ReportResult, TreeInfo};

/// Default sampler seed; fixed (not drawn from entropy) so that repeated
/// invocations reproduce byte-identical reports.
const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(
    name = "treeising",
    version,
    about = "Ising partition functions by spanning-tree importance sampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact ln Z by exhaustive enumeration (desk-scale models only)
    Exact {
        #[command(flatten)]
        model: ModelArgs,
        /// Also report the edge-domain and dual-domain sums
        #[arg(long)]
        all_domains: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Estimate ln Z by sampling on the spanning tree (weights on chords)
    Primal {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        estimator: EstimatorArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Estimate ln Z by sampling on the cospanning tree (weights on branches)
    Dual {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        estimator: EstimatorArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run both estimators on the same model and seed, side by side
    Compare {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        estimator: EstimatorArgs,
        /// Give the dual estimator its own tree instead of sharing the
        /// primal one (same syntax as --tree)
        #[arg(long, value_name = "SPEC")]
        dual_tree: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write an edge-list file for a named topology and coupling field
    Gen {
        #[command(flatten)]
        model: ModelArgs,
        /// Output path (standard output when omitted)
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Edge-list file: one `u v J` per line, `#` comments allowed
    #[arg(long, value_name = "FILE", conflicts_with_all = ["topology", "coupling", "n", "rows", "cols", "periodic"])]
    model: Option<PathBuf>,
    /// Named topology
    #[arg(long, value_enum)]
    topology: Option<Topology>,
    /// Vertex count for chain and complete topologies
    #[arg(long)]
    n: Option<usize>,
    /// Grid rows
    #[arg(long)]
    rows: Option<usize>,
    /// Grid columns
    #[arg(long)]
    cols: Option<usize>,
    /// Wrap the grid in both directions
    #[arg(long)]
    periodic: bool,
    /// Coupling field: `const:<J>` or `uniform:<lo>:<hi>:<seed>`
    #[arg(long, value_name = "SPEC")]
    coupling: Option<String>,
    /// Spanning tree choice: `max` (maximum tree on |J|) or `random:<seed>`
    #[arg(long, value_name = "SPEC", default_value = "max")]
    tree: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Topology {
    Chain,
    Grid,
    Complete,
}

#[derive(Args)]
struct EstimatorArgs {
    /// Number of importance samples
    #[arg(long)]
    samples: u64,
    /// Sampler seed
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; the report is identical for every value
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Failures sorted by exit code: usage 1, model 2, numeric 3.
enum CliError {
    Usage(String),
    Model(String),
    Numeric(String),
}

impl From<treeising::Error> for CliError {
    fn from(err: treeising::Error) -> Self {
        CliError::Model(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Model(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Exact {
            model,
            all_domains,
            output,
        } => {
            let built = build_model(&model)?;
            let partition = build_partition(&built.model, &model.tree)?;
            let started = std::time::Instant::now();
            let log_z = brute_force_log_z(&built.model)?;
            let mut result = EstimateResult::exact(log_z);
            if all_domains {
                result.log_z_m = Some(brute_force_log_z_primal(&built.model, &partition)?);
                result.log_z_d = Some(brute_force_log_z_dual(&built.model, &partition)?);
            }
            result.wall_time_seconds = started.elapsed().as_secs_f64();
            let report = Report {
                command: "exact".into(),
                model: built.info,
                tree: TreeInfo::from_partition(&partition),
                dual_tree: None,
                result: ReportResult::Single(result),
            };
            emit(&report, output.format)
        }
        Command::Primal {
            model,
            estimator,
            output,
        } => {
            let built = build_model(&model)?;
            let partition = build_partition(&built.model, &model.tree)?;
            let config = sampler_config(&estimator)?;
            let estimate = estimate_primal(&built.model, &partition, &config);
            let report = Report {
                command: "primal".into(),
                model: built.info,
                tree: TreeInfo::from_partition(&partition),
                dual_tree: None,
                result: ReportResult::Single(EstimateResult::from_estimate(&estimate)),
            };
            emit(&report, output.format)
        }
        Command::Dual {
            model,
            estimator,
            output,
        } => {
            let built = build_model(&model)?;
            let partition = build_partition(&built.model, &model.tree)?;
            let config = sampler_config(&estimator)?;
            let estimate = estimate_dual(&built.model, &partition, &config)?;
            let report = Report {
                command: "dual".into(),
                model: built.info,
                tree: TreeInfo::from_partition(&partition),
                dual_tree: None,
                result: ReportResult::Single(EstimateResult::from_estimate(&estimate)),
            };
            emit(&report, output.format)
        }
        Command::Compare {
            model,
            estimator,
            dual_tree,
            output,
        } => {
            let built = build_model(&model)?;
            let partition = build_partition(&built.model, &model.tree)?;
            let dual_partition = match &dual_tree {
                Some(spec) => Some(build_partition(&built.model, spec)?),
                None => None,
            };
            let config = sampler_config(&estimator)?;
            let primal = estimate_primal(&built.model, &partition, &config);
            let dual = estimate_dual(
                &built.model,
                dual_partition.as_ref().unwrap_or(&partition),
                &config,
            )?;
            let report = Report {
                command: "compare".into(),
                model: built.info,
                tree: TreeInfo::from_partition(&partition),
                dual_tree: dual_partition.as_ref().map(TreeInfo::from_partition),
                result: ReportResult::Compare {
                    primal: EstimateResult::from_estimate(&primal),
                    dual: EstimateResult::from_estimate(&dual),
                },
            };
            emit(&report, output.format)
        }
        Command::Gen { model, output } => {
            if model.model.is_some() {
                return Err(CliError::Usage(
                    "gen needs --topology and --coupling, not --model".into(),
                ));
            }
            let built = build_model(&model)?;
            let text = topology::render_edge_list(built.model.graph(), built.model.couplings());
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::Model(format!("writing {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}

struct BuiltModel {
    model: IsingModel,
    info: ModelInfo,
}

fn build_model(args: &ModelArgs) -> Result<BuiltModel, CliError> {
    if let Some(path) = &args.model {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Model(format!("reading {}: {e}", path.display())))?;
        let (graph, couplings) = topology::parse_edge_list(&text)?;
        let info = ModelInfo {
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            topology: format!("file:{}", path.display()),
        };
        let model = IsingModel::new(graph, couplings)?;
        return Ok(BuiltModel { model, info });
    }

    let Some(topology_kind) = args.topology else {
        return Err(CliError::Usage(
            "provide a model with --model FILE or --topology".into(),
        ));
    };
    let (graph, label) = build_graph(topology_kind, args)?;
    let coupling_spec = args
        .coupling
        .as_deref()
        .ok_or_else(|| CliError::Usage("--topology needs --coupling".into()))?;
    let couplings = build_couplings(&graph, coupling_spec)?;
    let info = ModelInfo {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        topology: label,
    };
    let model = IsingModel::new(graph, couplings)?;
    Ok(BuiltModel { model, info })
}

fn build_graph(kind: Topology, args: &ModelArgs) -> Result<(Graph, String), CliError> {
    match kind {
        Topology::Chain => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("chain topology needs --n".into()))?;
            Ok((topology::periodic_chain(n)?, format!("chain:{n}")))
        }
        Topology::Complete => {
            let n = args
                .n
                .ok_or_else(|| CliError::Usage("complete topology needs --n".into()))?;
            Ok((topology::complete_graph(n)?, format!("complete:{n}")))
        }
        Topology::Grid => {
            let (rows, cols) = match (args.rows, args.cols) {
                (Some(r), Some(c)) => (r, c),
                _ => {
                    return Err(CliError::Usage(
                        "grid topology needs --rows and --cols".into(),
                    ))
                }
            };
            let boundary = if args.periodic { "periodic" } else { "open" };
            Ok((
                topology::lattice_2d(rows, cols, args.periodic)?,
                format!("grid:{rows}x{cols}:{boundary}"),
            ))
        }
    }
}

fn build_couplings(graph: &Graph, spec: &str) -> Result<Vec<f64>, CliError> {
    let usage = || {
        CliError::Usage(format!(
            "bad coupling spec {spec:?}; expected const:<J> or uniform:<lo>:<hi>:<seed>"
        ))
    };
    let mut parts = spec.split(':');
    match parts.next() {
        Some("const") => {
            let j: f64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(usage)?;
            if parts.next().is_some() || !j.is_finite() {
                return Err(usage());
            }
            Ok(topology::couplings_constant(graph, j))
        }
        Some("uniform") => {
            let fields: Vec<&str> = parts.collect();
            if fields.len() != 3 {
                return Err(usage());
            }
            let lo: f64 = fields[0].parse().map_err(|_| usage())?;
            let hi: f64 = fields[1].parse().map_err(|_| usage())?;
            let seed: u64 = fields[2].parse().map_err(|_| usage())?;
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(usage());
            }
            Ok(topology::couplings_uniform(graph, lo, hi, seed))
        }
        _ => Err(usage()),
    }
}

fn build_partition(model: &IsingModel, spec: &str) -> Result<TreePartition, CliError> {
    if spec == "max" {
        // maximum spanning tree on coupling magnitudes: weak couplings land
        // on the chords and strong ones on the branches, which suits the
        // primal and the dual sampler at the same time
        let weights: Vec<f64> = model.couplings().iter().map(|j| j.abs()).collect();
        return Ok(maximum_spanning_tree(model.graph(), &weights));
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed: u64 = seed.parse().map_err(|_| {
            CliError::Usage(format!(
                "bad tree spec {spec:?}; expected max or random:<seed>"
            ))
        })?;
        let weights = topology::couplings_uniform(model.graph(), 0.0, 1.0, seed);
        return Ok(maximum_spanning_tree(model.graph(), &weights));
    }
    Err(CliError::Usage(format!(
        "bad tree spec {spec:?}; expected max or random:<seed>"
    )))
}

fn sampler_config(args: &EstimatorArgs) -> Result<SamplerConfig, CliError> {
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    Ok(SamplerConfig::new(args.samples, args.seed).with_threads(args.threads.max(1)))
}

fn emit(report: &Report, format: Format) -> Result<(), CliError> {
    if let Some(field) = report.first_nan_field() {
        return Err(CliError::Numeric(format!(
            "{field} is NaN; refusing to report"
        )));
    }
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
    }
    Ok(())
}

impl EstimateResult {
    fn from_estimate(estimate: &EstimateReport) -> Self {
        EstimateResult {
            log_z: estimate.log_estimate,
            log_z_linear: linear_value(estimate.log_estimate),
            log_z_m: None,
            log_z_d: None,
            std_error_log: Some(estimate.std_error_log),
            chi_square: Some(estimate.empirical_chi_square),
            samples: Some(estimate.sample_count),
            seed: Some(estimate.seed),
            wall_time_seconds: estimate.wall_time_seconds,
        }
    }

    fn exact(log_z: f64) -> Self {
        EstimateResult {
            log_z,
            log_z_linear: linear_value(log_z),
            log_z_m: None,
            log_z_d: None,
            std_error_log: None,
            chi_square: None,
            samples: None,
            seed: None,
            wall_time_seconds: 0.0,
        }
    }
}

/// The linear-domain value, reported only while it fits in a double.
fn linear_value(log_z: f64) -> Option<f64> {
    (log_z.abs() < 700.0).then(|| log_z.exp())
}
