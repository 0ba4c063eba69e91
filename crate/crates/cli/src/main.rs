use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wgenus_cli::{chunk_roots, corpus_verify, run, Command, Format, JobSpec, Outcome};
use wgenus_core::cohomology::file::{load_model, model_to_json};
use wgenus_core::cohomology::BottStage;
use wgenus_core::ManifoldModel;

#[derive(Parser)]
#[command(name = "wgenus", version, about = "Exact Witten genera of generalized complete intersections")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Witten genus of the intersection cut out by V, checked on both paths
    Genus(JobArgs),
    /// Twisted Spin^c index φᶜ(M;V,W)
    PhiC(JobArgs),
    /// Elliptic genus of a spin manifold
    Elliptic(JobArgs),
    /// String conditions for (M, V)
    Check(JobArgs),
    /// Sign of c1 for a complete intersection in a b2 = 1 ambient
    Fano(JobArgs),
    /// Enumerate string configurations with bounded degrees
    Search(JobArgs),
    /// Recompute the golden corpus and compare with the expected files
    CorpusVerify(CorpusArgs),
    /// Print a manifold file for a built-in family
    Model(ModelArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct JobArgs {
    #[arg(long)]
    manifold: PathBuf,
    /// Roots of V, flattened; split into vectors of the generator count
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    bundle: Vec<i64>,
    /// Roots of W, flattened
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    w_bundle: Vec<i64>,
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    c1c: Option<Vec<i64>>,
    #[arg(long, env = "WITTEN_Q_ORDER", default_value_t = wgenus_core::DEFAULT_Q_ORDER)]
    q_order: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Exit 1 unless both string conditions hold
    #[arg(long)]
    require_string: bool,
    #[arg(long, default_value_t = 2)]
    max_degree: u32,
    #[arg(long, default_value_t = 3)]
    max_bundles: usize,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value = "corpus")]
    corpus: PathBuf,
    /// Rewrite the expected files from the current output
    #[arg(long)]
    bless: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ModelArgs {
    /// Dimensions of a product of projective spaces
    #[arg(long, num_args = 1.., conflicts_with = "bott")]
    projective: Vec<usize>,
    /// Stages of a generalized Bott tower as JSON: [{"fiber_dim":1,"twists":[[]]}, ...]
    #[arg(long)]
    bott: Option<String>,
    #[arg(long, default_value = "bott")]
    name: String,
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    }
}

fn job_from_args(command: Command, a: &JobArgs) -> Result<JobSpec, Outcome> {
    let ngens = load_model(&a.manifold).map_err(Outcome::from)?.ngens();
    let mut job = JobSpec::new(command);
    job.manifold_file = Some(a.manifold.clone());
    job.bundle = chunk_roots(&a.bundle, ngens).map_err(Outcome::from)?;
    job.w_bundle = chunk_roots(&a.w_bundle, ngens).map_err(Outcome::from)?;
    job.c1c = a.c1c.clone();
    job.q_order = a.q_order;
    job.require_string = a.require_string;
    job.max_degree = a.max_degree;
    job.max_bundles = a.max_bundles;
    Ok(job)
}

fn run_job(command: Command, a: &JobArgs) -> i32 {
    let format = format_of(a.format);
    let out = match job_from_args(command, a) {
        Ok(job) => run(&job),
        Err(o) => o,
    };
    if out.code == 2 && format == Format::Text {
        eprint!("{}", out.render(format));
    } else {
        print!("{}", out.render(format));
    }
    out.code
}

fn run_corpus(a: &CorpusArgs) -> i32 {
    let go = || match corpus_verify(&a.corpus, a.bless) {
        Ok(report) => {
            print!("{}", report.table());
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    match a.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(go),
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        None => go(),
    }
}

fn run_model(a: &ModelArgs) -> i32 {
    let model = match &a.bott {
        Some(text) => serde_json::from_str::<Vec<BottStage>>(text)
            .map_err(|e| wgenus_core::Error::InvalidInput(e.to_string()))
            .and_then(|stages| ManifoldModel::generalized_bott(a.name.clone(), &stages)),
        None if a.projective.is_empty() => Ok(ManifoldModel::point()),
        None => ManifoldModel::projective_product(&a.projective),
    };
    match model {
        Ok(m) => {
            println!("{}", model_to_json(&m));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Sub::Genus(a) => run_job(Command::Genus, a),
        Sub::PhiC(a) => run_job(Command::PhiC, a),
        Sub::Elliptic(a) => run_job(Command::Elliptic, a),
        Sub::Check(a) => run_job(Command::Check, a),
        Sub::Fano(a) => run_job(Command::Fano, a),
        Sub::Search(a) => run_job(Command::Search, a),
        Sub::CorpusVerify(a) => run_corpus(a),
        Sub::Model(a) => run_model(a),
    };
    ExitCode::from(code as u8)
}
