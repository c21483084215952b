use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "topoforms", version, about = "Lattice checks of Chern-Simons, Chern-Pontryagin, Clebsch and Maurer-Cartan identities")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed for every random field.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of refinement levels.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..))]
    pub levels: u64,
    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Analytic)]
    pub mode: ModeArg,
    /// Also write the report here (for gen-field: the field file).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Analytic,
    Fd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON report per line.
    Json,
    /// Refinement levels as CSV rows.
    Csv,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("bad tolerance value `{v}`: {e}"))?;
    if !v.is_finite() {
        return Err(format!("tolerance `{k}` must be finite"));
    }
    Ok((k.trim().to_string(), v))
}

fn parse_divergence_dim(s: &str) -> Result<usize, String> {
    match s {
        "2" => Ok(2),
        "4" => Ok(4),
        _ => Err(format!("dimension must be 2 or 4, got `{s}`")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Identity checks with refinement studies.
    #[command(subcommand)]
    Verify(Verify),
    /// Winding number of a group-valued TFF1 field.
    Winding { file: PathBuf },
    /// `∫v·(∇×v)` of a 3d vector TFF1 field.
    Helicity {
        file: PathBuf,
        /// Reference value; the check passes when the relative error is within `relative`.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<f64>,
    },
    /// Lie-algebra file checks
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Write a synthetic TFF1 field to `--out`.
    GenField(GenField),
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// `∂_μC^μ` against the Chern-Pontryagin density.
    Divergence {
        #[arg(long, default_value_t = 2, value_parser = parse_divergence_dim)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = AlgebraArg::U1)]
        algebra: AlgebraArg,
    },
    /// Clebsch potentials: Euler-angle routes, triple-route densities and
    /// the boundary reduction of helicity.
    Clebsch,
    /// H and G Chern-Simons densities of a projected pure gauge.
    Coincidence {
        /// Algebra file with `h_indices`; defaults to su(2) over u(1).
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    /// Flatness of the Maurer-Cartan form.
    Flatness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    U1,
    Su2,
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Structure constants and symmetric-pair conditions of an algebra file.
    Check { file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldKind {
    RandomBandlimited,
    AbcFlow,
    Hedgehog,
    EulerRandom,
    FluxTubes,
}

#[derive(Debug, Clone, Args)]
pub struct GenField {
    #[arg(value_enum)]
    pub kind: FieldKind,
    /// Samples per axis.
    #[arg(long, default_value_t = 32)]
    pub n: usize,
    /// Grid dimension (random-bandlimited only).
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Component count (random-bandlimited only); defaults to `dim`.
    #[arg(long)]
    pub components: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub kmax: usize,
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
    /// Hedgehog radius inside the cube `[-1, 1]³`.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long = "abc", num_args = 3, value_names = ["A", "B", "C"], default_values_t = [1.0, 1.0, 1.0], allow_hyphen_values = true)]
    pub abc: Vec<f64>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub flux1: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub flux2: f64,
}
