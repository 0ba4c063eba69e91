//! Twisted Spin^c indices and the genera built from them.
//!
//! `φᶜ(M;V,W) = ⟨e^{c₁ᶜ/2} Q₁(TM) Q₂(V) Q₃(W) Â(TM), [M]⟩`, computed one
//! `q`-coefficient at a time. The Witten genus of a generalized complete
//! intersection `X ⊂ M` with normal data `V` has a second, independent route
//! through `⟨e(V)·Q₁(TM)Â(TM) / (Q₁(V)Â(V)), [M]⟩`; both must agree exactly.

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::charclass::{self, a_hat, euler, q1, q2, q3, LineBundleSum, RootBundle, SplitBundle};
use crate::cohomology::{CohomClass, IntClass, ManifoldModel};
use crate::qseries::{exp_nilpotent, qs_invert, qs_mul, QSeries};
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalPath {
    /// Straight from the index formula.
    Direct,
    /// Through the Euler class of `V` and the quotient of `Q₁Â` classes.
    Lemma,
}

impl EvalPath {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalPath::Direct => "direct",
            EvalPath::Lemma => "lemma",
        }
    }
}

/// A rational `q`-series together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusResult {
    pub series: Vec<Rational>,
    pub manifold_id: String,
    pub path: EvalPath,
    pub q_order: usize,
    pub c1c_used: IntClass,
    pub bundle: Vec<Vec<i64>>,
    pub w_bundle: Vec<Vec<i64>>,
}

impl GenusResult {
    pub fn vanishes(&self) -> bool {
        self.series.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.series.iter().all(|c| c.is_integer())
    }

    pub fn verdict(&self) -> &'static str {
        if self.vanishes() {
            "vanishes"
        } else {
            "nonzero"
        }
    }

    pub fn coefficient_strings(&self) -> Vec<String> {
        self.series.iter().map(ToString::to_string).collect()
    }

    /// Same coefficients, regardless of path and provenance.
    pub fn same_series(&self, other: &Self) -> bool {
        self.series == other.series
    }
}

fn check_c1c(c1c: &IntClass, m: &ManifoldModel) -> Result<()> {
    m.check_int_class(c1c)?;
    if !c1c.is_linear() {
        return Err(Error::InvalidInput("c1c must be a degree-2 class".into()));
    }
    Ok(())
}

fn integrate_series(prefactor: &CohomClass, s: &QSeries, m: &ManifoldModel) -> Result<Vec<Rational>> {
    s.coeffs()
        .iter()
        .map(|c| m.integrate(&m.multiply(prefactor, c)?))
        .collect()
}

fn vectors_or_empty<B: SplitBundle>(b: &B) -> Vec<Vec<i64>> {
    b.root_vectors()
}

/// `φᶜ(M;V,W)` for the Spin^c structure with first Chern class `c1c`.
pub fn phi_c(
    m: &ManifoldModel,
    v: &LineBundleSum,
    w: &RootBundle,
    c1c: &IntClass,
    q: usize,
) -> Result<GenusResult> {
    check_c1c(c1c, m)?;
    let tm = RootBundle::tangent(m);
    let w2m = charclass::w2(&tm);
    if c1c.mod2() != w2m {
        return Err(Error::SpinCMismatch {
            expected: w2m.display_with(m.generators()),
            found: c1c.mod2().display_with(m.generators()),
        });
    }
    let w2w = charclass::w2(w);
    if !w2w.is_zero() {
        return Err(Error::TwistNotSpin(w2w.display_with(m.generators())));
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let twist = exp_nilpotent(&m.lift(c1c).scale(&half), m)?;
    let prefactor = m.multiply(&twist, &a_hat(&tm, m)?)?;
    let mut s = q1(&tm, m, q)?;
    if !v.is_empty() {
        s = qs_mul(&s, &q2(v, m, q)?, m)?;
    }
    if !w.roots().is_empty() {
        s = qs_mul(&s, &q3(w, m, q)?, m)?;
    }
    Ok(GenusResult {
        series: integrate_series(&prefactor, &s, m)?,
        manifold_id: m.name().to_string(),
        path: EvalPath::Direct,
        q_order: q,
        c1c_used: c1c.clone(),
        bundle: vectors_or_empty(v),
        w_bundle: vectors_or_empty(w),
    })
}

fn require_spin(m: &ManifoldModel) -> Result<()> {
    let w2m = charclass::w2(&RootBundle::tangent(m));
    if !w2m.is_zero() {
        return Err(Error::NotSpin(m.name().to_string(), w2m.display_with(m.generators())));
    }
    Ok(())
}

/// The Witten genus `φᶜ(M;0,0)` of a spin manifold, canonical structure.
pub fn witten(m: &ManifoldModel, q: usize) -> Result<GenusResult> {
    require_spin(m)?;
    phi_c(m, &LineBundleSum::empty(m.ngens()), &RootBundle::empty(m.ngens()), &IntClass::zero(m.ngens()), q)
}

/// The elliptic genus `φᶜ(M;0,TM)` of a spin manifold.
pub fn elliptic(m: &ManifoldModel, q: usize) -> Result<GenusResult> {
    require_spin(m)?;
    phi_c(m, &LineBundleSum::empty(m.ngens()), &RootBundle::tangent(m), &IntClass::zero(m.ngens()), q)
}

/// Witten genus of the generalized complete intersection cut out by `V`,
/// evaluated as `⟨e(V)·Q₁(TM)Â(TM)·(Q₁(V)Â(V))⁻¹, [M]⟩`.
pub fn witten_of_gci(m: &ManifoldModel, v: &LineBundleSum, q: usize) -> Result<GenusResult> {
    if v.ngens() != m.ngens() {
        return Err(Error::ModelMismatch { expected: m.ngens(), found: v.ngens() });
    }
    let tm = RootBundle::tangent(m);
    let w2m = charclass::w2(&tm);
    let w2v = charclass::w2(v);
    if w2m != w2v {
        return Err(Error::XNotSpin {
            expected: w2m.display_with(m.generators()),
            found: w2v.display_with(m.generators()),
        });
    }
    let e = euler(v, m)?;
    let prefactor = m.multiply(&e, &a_hat(&tm, m)?)?;
    let normal = qs_mul(&q1(v, m, q)?, &QSeries::constant(a_hat(v, m)?, q), m)?;
    let s = qs_mul(&q1(&tm, m, q)?, &qs_invert(&normal, m)?, m)?;
    Ok(GenusResult {
        series: integrate_series(&prefactor, &s, m)?,
        manifold_id: m.name().to_string(),
        path: EvalPath::Lemma,
        q_order: q,
        c1c_used: charclass::c1(v),
        bundle: v.root_vectors(),
        w_bundle: Vec::new(),
    })
}

/// Bernoulli numbers `B_0 … B_n` with `B_1 = −1/2`.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..=n {
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn divisor_power_sum(n: u64, p: u32) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(p)).sum()
}

/// `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ` for `k ∈ {4, 6}`.
pub fn eisenstein(weight: u32, q: usize) -> Result<Vec<Rational>> {
    if weight != 4 && weight != 6 {
        return Err(Error::InvalidInput(format!("eisenstein weight must be 4 or 6, got {weight}")));
    }
    let bk = bernoulli(weight as usize)[weight as usize].clone();
    let factor = -Rational::from_integer(BigInt::from(2 * weight)) / bk;
    let mut out = vec![Rational::one()];
    for n in 1..=q as u64 {
        out.push(&factor * Rational::from_integer(divisor_power_sum(n, weight - 1)));
    }
    Ok(out)
}

fn scalar_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let q = a.len().min(b.len());
    (0..q).map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularTerm {
    pub e4_power: u32,
    pub e6_power: u32,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModularFit {
    /// The series equals `Σ coeff·E₄^a E₆^b` through the given order.
    Decomposition(Vec<ModularTerm>),
    /// No combination matches; `residual` is the mismatch of the best partial fit.
    NotModular { residual: Vec<Rational> },
}

impl ModularFit {
    pub fn is_modular(&self) -> bool {
        matches!(self, ModularFit::Decomposition(_))
    }
}

/// Expresses a rational series as a combination of `E₄^a E₆^b` with
/// `4a + 6b = weight`, by exact Gaussian elimination.
pub fn modular_fit(series: &[Rational], weight: u32) -> Result<ModularFit> {
    if weight % 2 == 1 {
        return Err(Error::InvalidInput(format!("modular weight must be even, got {weight}")));
    }
    let monomials: Vec<(u32, u32)> =
        (0..=weight / 6).filter(|b| (weight - 6 * b) % 4 == 0).map(|b| ((weight - 6 * b) / 4, b)).collect();
    let dim = monomials.len();
    if series.is_empty() || series.len() - 1 <= dim {
        return Err(Error::InvalidInput(format!(
            "q-order {} must exceed the dimension {dim} of the weight-{weight} space",
            series.len().saturating_sub(1)
        )));
    }
    let q = series.len() - 1;
    let e4 = eisenstein(4, q)?;
    let e6 = eisenstein(6, q)?;
    let basis: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|&(a, b)| {
            let mut s = vec![Rational::zero(); q + 1];
            s[0] = Rational::one();
            for _ in 0..a {
                s = scalar_mul(&s, &e4);
            }
            for _ in 0..b {
                s = scalar_mul(&s, &e6);
            }
            s
        })
        .collect();

    // augmented rows: [basis_0[k] … basis_{d−1}[k] | series[k]]
    let mut rows: Vec<Vec<Rational>> = (0..=q)
        .map(|k| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[k].clone()).collect();
            row.push(series[k].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut coeffs = vec![Rational::zero(); dim];
    for (i, &col) in pivots.iter().enumerate() {
        coeffs[col] = rows[i][dim].clone();
    }
    let residual: Vec<Rational> = (0..=q)
        .map(|k| {
            let fit: Rational = basis.iter().zip(&coeffs).map(|(b, c)| &b[k] * c).sum();
            &series[k] - fit
        })
        .collect();
    if residual.iter().any(|x| !x.is_zero()) {
        return Ok(ModularFit::NotModular { residual });
    }
    Ok(ModularFit::Decomposition(
        monomials
            .into_iter()
            .zip(coeffs)
            .map(|((a, b), coeff)| ModularTerm { e4_power: a, e6_power: b, coeff })
            .collect(),
    ))
}

/// Real dimension of the virtual intersection is `2(n − rank V)`; when it is
/// not a positive multiple of 4 there are no Pontryagin numbers and the Witten
/// genus vanishes for degree reasons alone.
pub fn vanishes_for_dimension_reasons(m: &ManifoldModel, v: &LineBundleSum) -> bool {
    let n = m.dim() as i64;
    let k = v.rank() as i64;
    let real = 2 * (n - k);
    real < 0 || (real > 0 && real % 4 != 0)
}

/// Absolute value of the largest denominator; 1 means integral.
pub fn max_denominator(series: &[Rational]) -> BigInt {
    series.iter().map(|c| c.denom().abs()).max().unwrap_or_else(BigInt::one)
}
