//! A single request against one manifold model, and its evaluation.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use wgenus_core::charclass::{self, RootBundle, SplitBundle};
use wgenus_core::conditions::{check_string_gci, fano_c1_check, search_string};
use wgenus_core::genus::{elliptic, phi_c, witten_of_gci};
use wgenus_core::{Error, IntClass, LineBundleSum, ManifoldModel, DEFAULT_Q_ORDER};

use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Genus,
    PhiC,
    Elliptic,
    Check,
    Fano,
    Search,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Genus => "genus",
            Command::PhiC => "phi-c",
            Command::Elliptic => "elliptic",
            Command::Check => "check",
            Command::Fano => "fano",
            Command::Search => "search",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn default_q_order() -> usize {
    DEFAULT_Q_ORDER
}

fn default_max_degree() -> u32 {
    2
}

fn default_max_bundles() -> usize {
    3
}

/// One job. In a corpus the manifold comes from the entry directory, so
/// `manifold_file` is optional here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifold_file: Option<PathBuf>,
    #[serde(default)]
    pub bundle: Vec<Vec<i64>>,
    #[serde(default)]
    pub w_bundle: Vec<Vec<i64>>,
    #[serde(default)]
    pub c1c: Option<Vec<i64>>,
    #[serde(default = "default_q_order")]
    pub q_order: usize,
    #[serde(default)]
    pub require_string: bool,
    #[serde(default = "default_max_degree")]
    pub max_degree: u32,
    #[serde(default = "default_max_bundles")]
    pub max_bundles: usize,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            manifold_file: None,
            bundle: Vec::new(),
            w_bundle: Vec::new(),
            c1c: None,
            q_order: DEFAULT_Q_ORDER,
            require_string: false,
            max_degree: default_max_degree(),
            max_bundles: default_max_bundles(),
        }
    }
}

/// Splits a flat list of integers into root vectors of length `ngens`.
pub fn chunk_roots(flat: &[i64], ngens: usize) -> Result<Vec<Vec<i64>>, Error> {
    if ngens == 0 {
        return if flat.is_empty() {
            Ok(Vec::new())
        } else {
            Err(Error::InvalidInput("the manifold has no generators, so bundles must be empty".into()))
        };
    }
    if flat.len() % ngens != 0 {
        return Err(Error::InvalidInput(format!(
            "{} integers do not split into roots of length {ngens}",
            flat.len()
        )));
    }
    Ok(flat.chunks(ngens).map(<[i64]>::to_vec).collect())
}

/// Exit status and report of one job.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Self { code: 0, json, text }
    }

    pub fn error(code: i32, kind: &str, message: String) -> Self {
        let text = format!("error ({kind}): {message}");
        Self { code, json: json!({ "error": kind, "message": message }), text }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => report::canonical(&self.json),
            Format::Text => format!("{}\n", self.text.trim_end()),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::ModelMismatch { .. } => "model-mismatch",
        Error::OrderMismatch { .. } => "order-mismatch",
        Error::InvalidModel(_) => "invalid-model",
        Error::InvalidInput(_) => "invalid-input",
        Error::NotNilpotent(_) => "not-nilpotent",
        Error::NotInvertible => "not-invertible",
        Error::SpinCMismatch { .. } => "spin-c-mismatch",
        Error::TwistNotSpin(_) => "twist-not-spin",
        Error::NotSpin(..) => "not-spin",
        Error::XNotSpin { .. } => "x-not-spin",
        Error::SearchTooLarge { .. } => "search-too-large",
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::error(2, error_kind(&e), e.to_string())
    }
}

fn bundle(m: &ManifoldModel, roots: &[Vec<i64>]) -> Result<LineBundleSum, Error> {
    LineBundleSum::from_vectors(m.ngens(), roots)
}

fn c1c_class(m: &ManifoldModel, c1c: &[i64]) -> Result<IntClass, Error> {
    if c1c.len() != m.ngens() {
        return Err(Error::InvalidInput(format!("c1c needs {} entries, got {}", m.ngens(), c1c.len())));
    }
    Ok(IntClass::linear(c1c))
}

/// Runs `job` against an already loaded model.
pub fn execute(job: &JobSpec, m: &ManifoldModel) -> Outcome {
    match try_execute(job, m) {
        Ok(o) => o,
        Err(e) => e.into(),
    }
}

fn try_execute(job: &JobSpec, m: &ManifoldModel) -> Result<Outcome, Error> {
    let q = job.q_order;
    let names = m.generators();
    match job.command {
        Command::Genus => {
            if job.c1c.is_some() {
                return Err(Error::InvalidInput("genus fixes c1c = c1(V); use phi-c to override it".into()));
            }
            if !job.w_bundle.is_empty() {
                return Err(Error::InvalidInput("genus takes no W; use phi-c".into()));
            }
            let v = bundle(m, &job.bundle)?;
            let lemma = witten_of_gci(m, &v, q)?;
            let direct = phi_c(m, &v, &RootBundle::empty(m.ngens()), &charclass::c1(&v), q)?;
            if !lemma.same_series(&direct) {
                let message = format!(
                    "evaluation paths disagree: lemma {:?} vs direct {:?}",
                    lemma.coefficient_strings(),
                    direct.coefficient_strings()
                );
                return Ok(Outcome::error(3, "dual-path-mismatch", message));
            }
            Ok(Outcome::ok(report::genus_json(&lemma, names), report::genus_text(&lemma, names)))
        }
        Command::PhiC => {
            let v = bundle(m, &job.bundle)?;
            let w = RootBundle::from_vectors(m.ngens(), &job.w_bundle, 0)?;
            let c1c = match &job.c1c {
                Some(c) => c1c_class(m, c)?,
                None => charclass::c1(&RootBundle::tangent(m)),
            };
            let res = phi_c(m, &v, &w, &c1c, q)?;
            Ok(Outcome::ok(report::genus_json(&res, names), report::genus_text(&res, names)))
        }
        Command::Elliptic => {
            if !job.bundle.is_empty() || !job.w_bundle.is_empty() || job.c1c.is_some() {
                return Err(Error::InvalidInput("elliptic takes only a manifold and a q-order".into()));
            }
            let res = elliptic(m, q)?;
            Ok(Outcome::ok(report::genus_json(&res, names), report::genus_text(&res, names)))
        }
        Command::Check => {
            let v = bundle(m, &job.bundle)?;
            let rep = check_string_gci(m, &v)?;
            let mut out = Outcome::ok(report::check_json(m, &v, &rep), report::check_text(m, &v, &rep));
            if job.require_string && !rep.is_string_pair() {
                out.code = 1;
            }
            Ok(out)
        }
        Command::Fano => {
            if m.ngens() != 1 || m.metadata().b2 != 1 {
                return Err(Error::InvalidInput(format!("fano needs an ambient with b2 = 1, {} has b2 = {}", m.name(), m.metadata().b2)));
            }
            let n = m.dim();
            let tangent = charclass::c1(&RootBundle::tangent(m));
            if tangent != IntClass::linear(&[n as i64 + 1]) {
                return Err(Error::InvalidInput(format!("fano needs c1(M) = (n+1)·{}", names[0])));
            }
            let degrees: Vec<i64> = bundle(m, &job.bundle)?.root_vectors().into_iter().map(|r| r[0]).collect();
            let rep = fano_c1_check(n, &degrees)?;
            Ok(Outcome::ok(report::fano_json(m, &degrees, &rep), report::fano_text(m, &degrees, &rep)))
        }
        Command::Search => {
            let hits = search_string(m, job.max_degree, job.max_bundles)?;
            let reports = hits
                .iter()
                .map(|v| check_string_gci(m, v).map(|r| (v.clone(), r)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome::ok(
                report::search_json(m, job.max_degree, job.max_bundles, &reports),
                report::search_text(m, &reports),
            ))
        }
    }
}
