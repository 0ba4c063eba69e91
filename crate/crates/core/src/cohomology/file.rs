//! JSON manifold description files.
//!
//! ```json
//! {
//!   "name": "bott-1",
//!   "generators": ["x1", "x2"],
//!   "relations": [
//!     {"lead": ["x1", 2], "rhs": []},
//!     {"lead": ["x2", 2], "rhs": [{"coeff": "-1", "exponents": [1, 1]}]}
//!   ],
//!   "tangent_roots": [[1, 0], [1, 0], [0, 1], [1, 1]],
//!   "rank_offset": 2,
//!   "metadata": {"b1": 0, "b2": 2, "torus_dim": 2, "homogeneous": false,
//!                "simply_connected": true, "has_fixed_point": false}
//! }
//! ```

use std::path::Path;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};

use super::{CohomClass, IntClass, ManifoldModel, Metadata, Relation};
use crate::{Error, Rational, Result};

/// One polynomial term; coefficients are exact rationals written `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpec {
    pub lead: (String, u32),
    pub rhs: Vec<PolyTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldFile {
    pub name: String,
    pub generators: Vec<String>,
    pub relations: Vec<RelationSpec>,
    pub tangent_roots: Vec<Vec<i64>>,
    pub rank_offset: usize,
    pub metadata: Metadata,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = num::BigInt::from_str(num).map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
    let den = num::BigInt::from_str(den).map_err(|_| Error::InvalidInput(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn poly_to_terms(x: &CohomClass) -> Vec<PolyTerm> {
    x.terms()
        .iter()
        .map(|(e, c)| PolyTerm { coeff: c.to_string(), exponents: e.clone() })
        .collect()
}

pub fn int_poly_to_terms(x: &IntClass) -> Vec<PolyTerm> {
    poly_to_terms(&x.to_rational())
}

pub fn poly_from_terms(ngens: usize, terms: &[PolyTerm]) -> Result<CohomClass> {
    let mut x = CohomClass::zero(ngens);
    for t in terms {
        if t.exponents.len() != ngens {
            return Err(Error::InvalidInput(format!(
                "exponent vector {:?} does not have {ngens} entries",
                t.exponents
            )));
        }
        x.add_term(t.exponents.clone(), parse_rational(&t.coeff)?);
    }
    Ok(x)
}

impl ManifoldFile {
    pub fn from_model(m: &ManifoldModel) -> Self {
        Self {
            name: m.name().to_string(),
            generators: m.generators().to_vec(),
            relations: m
                .relations()
                .iter()
                .zip(m.generators())
                .map(|(r, g)| RelationSpec { lead: (g.clone(), r.exponent), rhs: poly_to_terms(&r.rhs) })
                .collect(),
            tangent_roots: m
                .tangent_roots()
                .iter()
                .map(|r| r.as_linear().expect("tangent roots are linear"))
                .collect(),
            rank_offset: m.rank_offset(),
            metadata: m.metadata().clone(),
        }
    }

    pub fn into_model(self) -> Result<ManifoldModel> {
        let m = self.generators.len();
        let mut relations: Vec<Option<Relation>> = vec![None; m];
        for spec in &self.relations {
            let (gen, power) = &spec.lead;
            let j = self
                .generators
                .iter()
                .position(|g| g == gen)
                .ok_or_else(|| Error::InvalidModel(format!("relation lead {gen:?} is not a generator")))?;
            if relations[j].is_some() {
                return Err(Error::InvalidModel(format!("two relations for generator {gen}")));
            }
            relations[j] = Some(Relation { exponent: *power, rhs: poly_from_terms(m, &spec.rhs)? });
        }
        let relations = relations
            .into_iter()
            .enumerate()
            .map(|(j, r)| {
                r.ok_or_else(|| Error::InvalidModel(format!("no relation for generator {}", self.generators[j])))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut roots = Vec::with_capacity(self.tangent_roots.len());
        for v in &self.tangent_roots {
            if v.len() != m {
                return Err(Error::InvalidModel(format!("tangent root {v:?} does not have {m} entries")));
            }
            roots.push(IntClass::linear(v));
        }
        ManifoldModel::new(self.name, self.generators, relations, roots, self.rank_offset, self.metadata)
    }
}

pub fn parse_model(json: &str) -> Result<ManifoldModel> {
    let file: ManifoldFile =
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("manifold file: {e}")))?;
    file.into_model()
}

pub fn load_model(path: &Path) -> Result<ManifoldModel> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_model(&text)
}

pub fn model_to_json(m: &ManifoldModel) -> String {
    serde_json::to_string_pretty(&ManifoldFile::from_model(m)).expect("manifold file serializes")
}
