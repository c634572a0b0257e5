use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Nearly-tight spectral wavelet frames on the sphere.
#[derive(Debug, Parser)]
#[command(name = "sphframe", version)]
pub struct Cli {
    /// `key = value` file supplying defaults; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Daubechies bounds A, B, their ratio and the Calderón level.
    Daubechies(DaubechiesArgs),
    /// Kernel 4π h_t(cos θ) on a uniform θ grid, as CSV.
    KernelProfile(KernelArgs),
    /// Cells of one scale of the partition, or a cubature rule.
    Partition(PartitionArgs),
    /// Empirical frame bounds on random band-limited fields.
    FrameVerify(FrameVerifyArgs),
    /// Frequency truncation bound against measured error.
    Truncation(TruncationArgs),
    /// Spatial truncation around a cap for a sweep of c_j.
    Spatial(SpatialArgs),
    /// Tail inequalities and hybrid needlet diagnostics.
    NeedletDiag(NeedletDiagArgs),
}

#[derive(Debug, Args)]
pub struct DaubechiesArgs {
    #[arg(long)]
    pub a: Option<f64>,
    /// `mexican:r=N`, `cutoff` or `normalized_cutoff`.
    #[arg(long)]
    pub filter: Option<String>,
    /// Grid points per period of the bound search.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long)]
    pub filter: Option<String>,
    /// `series`, `gaussian` or `auto`.
    #[arg(long)]
    pub method: Option<String>,
    /// `laplacian`, `degree` or `sqrt_laplacian`; the filter's own by default.
    #[arg(long)]
    pub convention: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i32>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    /// Use the maximal disjoint-ball construction with this radius instead.
    #[arg(long)]
    pub greedy_t: Option<f64>,
    #[arg(long)]
    pub candidates: Option<usize>,
    /// Write the product Gauss–Legendre rule exact to this degree instead, as CSV.
    #[arg(long)]
    pub cubature: Option<usize>,
    /// JSON cells, or the cubature CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FrameVerifyArgs {
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long)]
    pub l_max: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub j_min: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub j_max: Option<i32>,
    /// Window adequacy used when no explicit j range is given.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Cutoff needlet frame with exact cubature instead.
    #[arg(long)]
    pub needlet: bool,
    /// CSV of the frame coefficients of the first trial field.
    #[arg(long)]
    pub coefficients: Option<PathBuf>,
    /// CSV of the spectral coefficients of the first trial field.
    #[arg(long)]
    pub field: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TruncationArgs {
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub l_max: Option<usize>,
    /// Adequacy of the default window [−M, N].
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i32>,
    /// Scales added on each side of the window for the reference frame.
    #[arg(long)]
    pub extra: Option<i32>,
    /// Vanishing order l.
    #[arg(long)]
    pub vanishing: Option<u32>,
    /// Decay order J.
    #[arg(long)]
    pub decay: Option<u32>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpatialArgs {
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub l_max: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Cap center polar angle.
    #[arg(long)]
    pub cap_theta: Option<f64>,
    /// Cap center longitude.
    #[arg(long)]
    pub cap_phi: Option<f64>,
    #[arg(long)]
    pub cap_radius: Option<f64>,
    /// Comma-separated values of c_j (constant in j).
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub i_decay: Option<f64>,
    /// Width of the bell field; `0` selects a random field.
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NeedletDiagArgs {
    #[arg(long)]
    pub a: Option<f64>,
    /// Comma-separated N values.
    #[arg(long)]
    pub n_values: Option<String>,
    #[arg(long)]
    pub l_max: Option<usize>,
    /// Random cases in each inequality sweep.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
