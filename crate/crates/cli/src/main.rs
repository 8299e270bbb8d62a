//! `hypertrans`: command-line front end.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "hypertrans", version, about = "Exact checks for colorful hyperplane-transversal instances")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Largest family the exhaustive checks accept.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_family: usize,
    /// Largest vertex pool the cell enumeration accepts.
    #[arg(long, global = true, default_value_t = 20)]
    pub max_vertices: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; all cores by default.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the hypothesis on an instance.
    Check { file: PathBuf },
    /// Find the subfamily and transversal promised by the theorem.
    Solve {
        file: PathBuf,
        /// Also name the color class covered by the witness (partition matroids).
        #[arg(long)]
        colorful: bool,
    },
    /// Audit the proof objects of the lifted instance.
    Audit { file: PathBuf },
    /// List the covectors of the lifted vertex pool.
    Cells { file: PathBuf },
    /// Reduced GF(2) Betti numbers of the complex K, or of an induced subcomplex.
    Homology {
        file: PathBuf,
        /// Comma-separated member ids of the doubled family, e.g. `A,-B`.
        #[arg(long, value_delimiter = ',')]
        subfamily: Option<Vec<String>>,
        /// Highest degree reported; defaults to k.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Generate an instance that satisfies the hypothesis.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Draw a planar instance as SVG.
    Render {
        file: PathBuf,
        /// Solve first and draw the witness line.
        #[arg(long)]
        witness: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GenCommon {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write here instead of standard output.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Fibers `{x_i} × [0, s]^(d-k)` over points `x_i` in R^k.
    Product {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Points as `x1,x2;y1,y2;...`; drawn at random when absent.
        #[arg(long)]
        points: Option<String>,
        /// Number of random points when `--points` is absent.
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, default_value = "1")]
        box_side: String,
        /// `free`, `uniform:R` or `partition:C0,C1,...`.
        #[arg(long, default_value = "free")]
        matroid: String,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Random polytopes, kept only if the hypothesis holds.
    Random {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        members: usize,
        #[arg(long, default_value_t = 3)]
        vertices: usize,
        #[arg(long, default_value_t = 4)]
        range: i64,
        #[arg(long, default_value = "free")]
        matroid: String,
        #[arg(long, default_value_t = 1000)]
        max_tries: usize,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Disjoint planar polygons along a common line, in three color classes.
    Hadwiger {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        common: GenCommon,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
