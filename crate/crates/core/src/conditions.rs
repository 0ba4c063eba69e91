//! String hypotheses on `(M, V)`, theorem applicability and Fano arithmetic.
//!
//! Group-action facts come from the model metadata and are trusted; only the
//! cohomological conditions are verified here.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charclass::{self, pontryagin_p1, LineBundleSum, RootBundle, SplitBundle};
use crate::cohomology::{CohomClass, IntClass, ManifoldModel, Z2Class};
use crate::{Error, Result};

/// Which vanishing statement covers the pair, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremVerdict {
    /// Homogeneous `G/H` with `H` not a maximal torus.
    ThmHomogeneous,
    /// Simply connected group acting with a fixed point.
    ThmFixedPoint,
    /// `b₁ = 0` and a torus of dimension greater than `b₂`.
    ThmTorus,
    /// Generalized Bott manifold that is not a Bott manifold.
    CorollaryBott,
    None,
}

impl TheoremVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremVerdict::ThmHomogeneous => "thm-homogeneous",
            TheoremVerdict::ThmFixedPoint => "thm-fixed-point",
            TheoremVerdict::ThmTorus => "thm-torus",
            TheoremVerdict::CorollaryBott => "corollary-bott",
            TheoremVerdict::None => "none",
        }
    }

    pub fn predicts_vanishing(self) -> bool {
        self != TheoremVerdict::None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnesses {
    pub w2_m: Z2Class,
    pub w2_v: Z2Class,
    pub p1_m: CohomClass,
    pub p1_v: CohomClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub w2_match: bool,
    pub p1_match: bool,
    pub x_spin: bool,
    pub theorem_applicable: TheoremVerdict,
    pub witnesses: Witnesses,
    pub notes: Vec<String>,
}

impl ConditionReport {
    pub fn is_string_pair(&self) -> bool {
        self.w2_match && self.p1_match
    }
}

/// First applicable hypothesis from the model metadata, in the order
/// homogeneous, fixed point, torus.
pub fn classify_theorem(m: &ManifoldModel) -> TheoremVerdict {
    let md = m.metadata();
    if md.homogeneous && !md.maximal_torus_isotropy {
        TheoremVerdict::ThmHomogeneous
    } else if md.has_fixed_point {
        TheoremVerdict::ThmFixedPoint
    } else if md.b1 == 0 && md.torus_dim > md.b2 {
        TheoremVerdict::ThmTorus
    } else {
        TheoremVerdict::None
    }
}

/// Checks `w₂(V) = w₂(M)` and `p₁(V) = p₁(M)`.
pub fn check_string_gci(m: &ManifoldModel, v: &LineBundleSum) -> Result<ConditionReport> {
    if v.ngens() != m.ngens() {
        return Err(Error::ModelMismatch { expected: m.ngens(), found: v.ngens() });
    }
    let tm = RootBundle::tangent(m);
    let w2_m = charclass::w2(&tm);
    let w2_v = charclass::w2(v);
    let p1_m = pontryagin_p1(&tm, m)?;
    let p1_v = pontryagin_p1(v, m)?;
    let w2_match = w2_m == w2_v;
    let p1_match = p1_m == p1_v;

    let mut notes = Vec::new();
    let dim_x = m.dim() as i64 - v.rank() as i64;
    notes.push(format!("dim_C X = {dim_x}"));
    let classified = classify_theorem(m);
    let theorem_applicable = if w2_match && p1_match {
        match classified {
            TheoremVerdict::ThmTorus if m.metadata().generalized_bott => TheoremVerdict::CorollaryBott,
            t => t,
        }
    } else {
        if !w2_match {
            notes.push("w2(V) differs from w2(M): X is not spin".to_string());
        }
        if !p1_match {
            notes.push("p1(V) differs from p1(M)".to_string());
        }
        TheoremVerdict::None
    };
    if w2_match && p1_match && classified == TheoremVerdict::None {
        notes.push("string conditions hold but no group-action hypothesis is available".to_string());
    }
    if dim_x > 0 && dim_x % 2 == 1 {
        notes.push("odd complex dimension: the Witten genus vanishes for degree reasons".to_string());
    }
    Ok(ConditionReport {
        w2_match,
        p1_match,
        x_spin: w2_match,
        theorem_applicable,
        witnesses: Witnesses { w2_m, w2_v, p1_m, p1_v },
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoReport {
    pub c1_coefficient: i64,
    pub fano: bool,
    pub exceptional: bool,
}

/// `c₁(X) = (m − Σ lᵢ)·u` for a complete intersection of degrees `lᵢ` in
/// `ℂPⁿ`, `m = n + 1`.
pub fn fano_c1_check(n: u32, degrees: &[i64]) -> Result<FanoReport> {
    if let Some(d) = degrees.iter().find(|&&d| d <= 0) {
        return Err(Error::InvalidInput(format!("degrees must be positive, got {d}")));
    }
    let m = n as i64 + 1;
    let c1 = m - degrees.iter().sum::<i64>();
    let k = degrees.len() as i64;
    Ok(FanoReport { c1_coefficient: c1, fano: c1 > 0, exceptional: k == m && m >= n as i64 - 1 })
}

/// Upper bound on the number of candidate multisets `search_string` visits.
pub const SEARCH_LIMIT: u128 = 5_000_000;

fn multiset_count(n: u128, max_size: usize) -> u128 {
    // Σ_{s=1}^{B} C(n+s−1, s), saturating
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for s in 1..=max_size as u128 {
        c = c.saturating_mul(n + s - 1) / s;
        total = total.saturating_add(c);
    }
    total
}

/// All multisets of at most `max_bundles` nonzero roots with entries in
/// `[0, max_degree]` that pass [`check_string_gci`], sorted.
pub fn search_string(m: &ManifoldModel, max_degree: u32, max_bundles: usize) -> Result<Vec<LineBundleSum>> {
    let ngens = m.ngens();
    let candidates: Vec<Vec<i64>> = (0..ngens)
        .map(|_| 0..=max_degree as i64)
        .multi_cartesian_product()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    let size = multiset_count(candidates.len() as u128, max_bundles);
    if size > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { size, limit: SEARCH_LIMIT });
    }
    let tm = RootBundle::tangent(m);
    let w2_m = charclass::w2(&tm).to_int();
    let p1_m = pontryagin_p1(&tm, m)?;
    let squares: Vec<CohomClass> = candidates
        .iter()
        .map(|v| {
            let x = m.lift(&IntClass::linear(v));
            m.multiply(&x, &x)
        })
        .collect::<Result<_>>()?;

    let mut found: Vec<Vec<usize>> = (1..=max_bundles)
        .flat_map(|s| (0..candidates.len()).combinations_with_replacement(s))
        .par_bridge()
        .filter(|idx| {
            let c1 = idx.iter().fold(IntClass::zero(ngens), |acc, &i| &acc + &IntClass::linear(&candidates[i]));
            if c1.mod2().to_int() != w2_m {
                return false;
            }
            let p1 = idx.iter().fold(CohomClass::zero(ngens), |acc, &i| &acc + &squares[i]);
            p1 == p1_m
        })
        .collect();
    found.sort_by(|a, b| {
        let va: Vec<&Vec<i64>> = a.iter().map(|&i| &candidates[i]).collect();
        let vb: Vec<&Vec<i64>> = b.iter().map(|&i| &candidates[i]).collect();
        va.cmp(&vb)
    });
    found
        .into_iter()
        .map(|idx| {
            let roots: Vec<Vec<i64>> = idx.iter().map(|&i| candidates[i].clone()).collect();
            LineBundleSum::from_vectors(ngens, &roots)
        })
        .collect()
}
