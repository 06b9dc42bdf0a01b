mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cubechow", version, about = "Exact computations with cubical cycles, subdivisions and face blow-ups")]
pub struct Cli {
    /// Seed for the general-position sampler.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Fixture directory (cycles.json, towers.json, demo.json, sheaf.json).
    /// The built-in corpus is used when absent.
    #[arg(long, value_name = "DIR")]
    pub corpus: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites; `all` runs every suite in parallel.
    Verify(VerifyArgs),
    /// Inspect a cycle file.
    #[command(subcommand)]
    Cycle(CycleCommand),
    /// Cubical subdivision at a sampled general point.
    Subdivide(SubdivideArgs),
    /// Face blow-up towers.
    #[command(subcommand)]
    Tower(TowerCommand),
    /// Exactness checks for the two-open sequence.
    #[command(subcommand)]
    Mv(MvCommand),
    /// Glue two representatives that agree on the overlap of two opens.
    Glue(GlueArgs),
    /// Apply a sequence of steps to a cycle, recording every stage.
    Pipeline(PipelineArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite names, or `all`.
    #[arg(required = true)]
    pub suites: Vec<String>,
    /// Size of randomized corpora.
    #[arg(long)]
    pub random: Option<usize>,
    /// Largest cube dimension for the morphism tables.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Sampled general points per fixture.
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum CycleCommand {
    /// Canonical form, admissibility and normalization.
    Check { file: PathBuf },
    /// One codimension-one face, with degenerate components removed.
    Face {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        eps: u8,
    },
    /// Alternating boundary.
    Boundary { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Form {
    Iterated,
    Vertex,
}

#[derive(Args, Debug)]
pub struct SubdivideArgs {
    #[arg(long)]
    pub cycle: PathBuf,
    #[arg(long, value_enum, default_value_t = Form::Iterated)]
    pub form: Form,
    /// Also emit the chain certificate `d(phi) = Z - sd(Z)`.
    #[arg(long)]
    pub certify: bool,
    #[arg(long, default_value_t = 200)]
    pub budget: usize,
}

#[derive(Subcommand, Debug)]
pub enum TowerCommand {
    /// Divisors, vertices, edges and vertex signs at every level.
    Build {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Level subdivision of a cycle on the top of a tower.
    Apply {
        #[arg(long)]
        cycle: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        /// Certify the homotopy between the top and bottom levels.
        #[arg(long)]
        certify_h0: bool,
        #[arg(long, default_value_t = 200)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum MvCommand {
    /// Run the exactness report on a corpus of global cycles.
    Demo {
        /// Dimension of the affine ambient space.
        #[arg(long)]
        ambient: Option<usize>,
        /// JSON array of cycles; defaults to the fixture corpus.
        #[arg(long, value_name = "FILE")]
        corpus: Option<PathBuf>,
        /// Generators of the closed set removed for U (repeatable).
        #[arg(long = "u")]
        u: Vec<String>,
        /// Generators of the closed set removed for V (repeatable).
        #[arg(long = "v")]
        v: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct GlueArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Generators of the closed set removed for the first open (repeatable).
    #[arg(long = "u", required = true)]
    pub u: Vec<String>,
    /// Generators of the closed set removed for the second open (repeatable).
    #[arg(long = "v", required = true)]
    pub v: Vec<String>,
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    #[arg(long)]
    pub cycle: PathBuf,
    /// Steps in order: face:i:e, boundary, bidiv:i:c, subdivide:iterated|vertex,
    /// tower-apply:<id>, restrict:<g1>;<g2>, close.
    pub steps: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error of ours.
            let _ = std::io::stdout().write_all(out.text.as_bytes());
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
