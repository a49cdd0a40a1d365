//! `vxm` — evaluate generated voxel settlements and compare the metrics
//! against human judge scores.
//!
//! Exit codes: 0 success, 2 parse error (unreadable or malformed input),
//! 3 validation error (well-formed but semantically invalid input).

mod commands;
mod error;
mod inputs;
mod manifest;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use error::CliError;

#[derive(Parser)]
#[command(name = "vxm", version, about = "Voxel settlement metrics toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one settlement and write a single metrics row.
    Evaluate {
        /// Grid snapshot (vxl document).
        #[arg(long)]
        grid: PathBuf,
        /// Generator edit log for the settlement.
        #[arg(long)]
        changes: PathBuf,
        /// Block catalog; defaults to $VXM_CATALOG, then the embedded
        /// 1.12.2 catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Crafting recipes; defaults to the embedded 1.12.2 graph.
        #[arg(long)]
        recipes: Option<PathBuf>,
        /// Evaluation region x0,y0,z0,x1,y1,z1 (max exclusive); defaults to
        /// the whole grid.
        #[arg(long, value_name = "X0,Y0,Z0,X1,Y1,Z1", allow_hyphen_values = true)]
        r#box: Option<String>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also print per-axis entropies to the diagnostic stream.
        #[arg(long)]
        verbose: bool,
    },
    /// Evaluate every run of a manifest and write samples plus summaries.
    Batch {
        /// Manifest file (JSON).
        #[arg(long)]
        manifest: PathBuf,
        /// Samples CSV path; the per-generator summary lands next to it
        /// with a `-summary.csv` suffix.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        /// Catalog override (falls back to the manifest, then $VXM_CATALOG,
        /// then the embedded catalog).
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Recipes override.
        #[arg(long)]
        recipes: Option<PathBuf>,
    },
    /// Rank metrics by information gain about generator identity.
    Infogain {
        /// Samples CSV produced by `batch`.
        samples: PathBuf,
        /// Number of equal-frequency bins; defaults to ⌊√N⌋.
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format.
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Spearman correlation tables between metrics and judge scores.
    Correlate {
        /// Summary CSV (from `batch`) and, when the mode involves scores,
        /// the judge score CSV. For scores_vs_scores pass only the score
        /// file.
        inputs: Vec<PathBuf>,
        /// metrics_vs_scores, metrics_vs_metrics or scores_vs_scores.
        #[arg(long)]
        mode: String,
        /// Seed for the Monte-Carlo permutation p-values.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format.
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Re-render any toolkit CSV as csv or markdown.
    Report {
        input: PathBuf,
        /// Output format.
        #[arg(long, default_value = "markdown")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evaluate { grid, changes, catalog, recipes, r#box, out, verbose } => {
            commands::evaluate(&grid, &changes, catalog.as_deref(), recipes.as_deref(), r#box.as_deref(), out.as_deref(), verbose)
        }
        Command::Batch { manifest, out, jobs, catalog, recipes } => {
            commands::batch(&manifest, &out, jobs, catalog.as_deref(), recipes.as_deref())
        }
        Command::Infogain { samples, bins, out, format } => {
            commands::infogain(&samples, bins, out.as_deref(), &format)
        }
        Command::Correlate { inputs, mode, seed, out, format } => {
            commands::correlate(&inputs, &mode, seed, out.as_deref(), &format)
        }
        Command::Report { input, format, out } => {
            commands::report(&input, &format, out.as_deref())
        }
    };
    match result {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
