use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::{Command, Format, Op, RunConfig, Standardize};

#[derive(Parser, Debug)]
#[command(name = "semedge", version, about = "Edge interventions in linear SEMs over mixed graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// Parse and check a graph and, if given, parameters, Σ or data against it.
    Validate,
    /// Decide whether an edge intervention (or a path sum) is identified.
    Identify,
    /// Compute Σ after an edge intervention.
    Intervene,
    /// Apply an edge intervention to every row of a dataset.
    Transform,
    /// Find a removal plan and the constraints it implies.
    Constraints,
    /// Draw a random graph and parameters.
    Random,
    /// Compute Σ from parameters.
    Cov,
    /// List the treks between two vertices.
    Treks { v: String, w: String },
    /// Draw Gaussian samples with a given Σ.
    Simulate,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Graph JSON.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Parameter JSON (edge coefficients and error (co)variances).
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    /// Covariance matrix JSON.
    #[arg(long, global = true)]
    pub sigma: Option<PathBuf>,
    /// CSV with a header row of vertex labels.
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    /// `a->b` or `a<->b`.
    #[arg(long, global = true)]
    pub edge: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = OpArg::Remove)]
    pub op: OpArg,
    /// Coefficient of an added edge.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Regression)]
    pub method: MethodArg,
    /// Relative residual threshold for constraint checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Scale columns to unit variance before transforming.
    #[arg(long, global = true, overrides_with = "no_standardize")]
    pub standardize: bool,
    #[arg(long, global = true, overrides_with = "standardize")]
    pub no_standardize: bool,
    /// Use ω and path sums read off --params instead of identifying them.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Remove bidirected edges too when planning constraints.
    #[arg(long, global = true)]
    pub all_edges: bool,
    /// Primary output file; stdout then carries the report.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Where to write the graph after the intervention.
    #[arg(long, global = true)]
    pub graph_out: Option<PathBuf>,
    /// Where `random` writes its parameters.
    #[arg(long, global = true)]
    pub params_out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Machine)]
    pub format: FormatArg,
    /// Random graphs: number of vertices.
    #[arg(long, global = true, default_value_t = 8)]
    pub vertices: usize,
    /// Random graphs: probability of each forward directed edge.
    #[arg(long, global = true, default_value_t = 0.3)]
    pub p_directed: f64,
    /// Random graphs: probability of each bidirected edge.
    #[arg(long, global = true, default_value_t = 0.15)]
    pub p_bidirected: f64,
    #[arg(long, global = true, default_value_t = 12)]
    pub max_directed: usize,
    #[arg(long, global = true, default_value_t = 6)]
    pub max_bidirected: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OpArg {
    Remove,
    Add,
    Path,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Regression,
    Cutvertex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Machine,
    Table,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let c = cli.common;
        let (command, pair) = match cli.command {
            Sub::Validate => (Command::Validate, None),
            Sub::Identify => (Command::Identify, None),
            Sub::Intervene => (Command::Intervene, None),
            Sub::Transform => (Command::Transform, None),
            Sub::Constraints => (Command::Constraints, None),
            Sub::Random => (Command::Random, None),
            Sub::Cov => (Command::Cov, None),
            Sub::Treks { v, w } => (Command::Treks, Some((v, w))),
            Sub::Simulate => (Command::Simulate, None),
        };
        let standardize = if c.standardize {
            Standardize::On
        } else if c.no_standardize {
            Standardize::Off
        } else {
            Standardize::Auto
        };
        RunConfig {
            command,
            graph: c.graph,
            params: c.params,
            sigma: c.sigma,
            data: c.data,
            edge: c.edge,
            op: match c.op {
                OpArg::Remove => Op::Remove,
                OpArg::Add => Op::Add,
                OpArg::Path => Op::Path,
            },
            lambda: c.lambda,
            method: match c.method {
                MethodArg::Regression => semedge_core::Method::Regression,
                MethodArg::Cutvertex => semedge_core::Method::Cutvertex,
            },
            tol: c.tol,
            seed: c.seed,
            n: c.n,
            standardize,
            oracle: c.oracle,
            all_edges: c.all_edges,
            pair,
            out: c.out,
            graph_out: c.graph_out,
            params_out: c.params_out,
            format: match c.format {
                FormatArg::Machine => Format::Machine,
                FormatArg::Table => Format::Table,
            },
            random: semedge_core::GraphSpec {
                n: c.vertices,
                p_directed: c.p_directed,
                p_bidirected: c.p_bidirected,
                max_directed: c.max_directed,
                max_bidirected: c.max_bidirected,
            },
        }
    }
}
