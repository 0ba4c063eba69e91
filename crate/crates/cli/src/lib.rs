//! Command-line layer over `wgenus-core`: jobs, reports and the golden corpus.

pub mod corpus;
pub mod job;
pub mod report;

use wgenus_core::cohomology::file::load_model;

pub use corpus::{corpus_verify, CorpusError, CorpusReport, EntryStatus};
pub use job::{chunk_roots, execute, Command, Format, JobSpec, Outcome};

/// Loads the job's manifold and runs it.
pub fn run(job: &JobSpec) -> Outcome {
    let Some(path) = &job.manifold_file else {
        return Outcome::error(2, "invalid-input", "no manifold file given".into());
    };
    match load_model(path) {
        Ok(m) => execute(job, &m),
        Err(e) => e.into(),
    }
}
