//! Truncated power series in `q` with cohomology-class coefficients.
//!
//! Orders are small, so series are dense in `q` and sparse in the ring.

use num::{BigInt, One, Zero};

use crate::cohomology::{CohomClass, ManifoldModel};
use crate::{Error, Rational, Result};

/// `c₀ + c₁q + ⋯ + c_Q q^Q`, all coefficients over the same model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<CohomClass>,
}

impl QSeries {
    pub fn zero(ngens: usize, q_order: usize) -> Self {
        Self { coeffs: vec![CohomClass::zero(ngens); q_order + 1] }
    }

    pub fn one(ngens: usize, q_order: usize) -> Self {
        Self::constant(CohomClass::one(ngens), q_order)
    }

    /// The series with `c` in degree zero and nothing else.
    pub fn constant(c: CohomClass, q_order: usize) -> Self {
        let mut s = Self::zero(c.ngens(), q_order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from coefficients, padding with zeros or truncating to
    /// `q_order`.
    pub fn from_coeffs(ngens: usize, mut coeffs: Vec<CohomClass>, q_order: usize) -> Self {
        coeffs.resize(q_order + 1, CohomClass::zero(ngens));
        Self { coeffs }
    }

    /// A series with scalar coefficients.
    pub fn scalar(ngens: usize, coeffs: &[Rational], q_order: usize) -> Self {
        let cs = coeffs.iter().map(|c| CohomClass::constant(c.clone(), ngens)).collect();
        Self::from_coeffs(ngens, cs, q_order)
    }

    pub fn q_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ngens(&self) -> usize {
        self.coeffs[0].ngens()
    }

    pub fn coeff(&self, k: usize) -> &CohomClass {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[CohomClass] {
        &self.coeffs
    }

    pub fn truncate(&self, q_order: usize) -> Self {
        assert!(q_order <= self.q_order(), "cannot extend a truncated series");
        Self { coeffs: self.coeffs[..=q_order].to_vec() }
    }

    pub fn is_one(&self) -> bool {
        let n = self.ngens();
        self.coeffs[0] == CohomClass::one(n) && self.coeffs[1..].iter().all(CohomClass::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    /// Multiplies every coefficient by the class `c`.
    pub fn mul_class(&self, c: &CohomClass, m: &ManifoldModel) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| m.multiply(a, c)).collect::<Result<_>>()?;
        Ok(Self { coeffs })
    }

    fn check_pair(&self, other: &Self) -> Result<()> {
        if self.q_order() != other.q_order() {
            return Err(Error::OrderMismatch { left: self.q_order(), right: other.q_order() });
        }
        if self.ngens() != other.ngens() {
            return Err(Error::ModelMismatch { expected: self.ngens(), found: other.ngens() });
        }
        Ok(())
    }
}

/// Cauchy product truncated at `q^Q`.
pub fn qs_mul(a: &QSeries, b: &QSeries, m: &ManifoldModel) -> Result<QSeries> {
    a.check_pair(b)?;
    m.check_class(a.coeff(0))?;
    let q = a.q_order();
    let mut out = QSeries::zero(a.ngens(), q);
    for i in 0..=q {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=(q - i) {
            if b.coeffs[j].is_zero() {
                continue;
            }
            let p = m.multiply(&a.coeffs[i], &b.coeffs[j])?;
            out.coeffs[i + j] = &out.coeffs[i + j] + &p;
        }
    }
    Ok(out)
}

/// `Σ_{k≤n} x^k / k!` for a class without constant term.
pub fn exp_nilpotent(x: &CohomClass, m: &ManifoldModel) -> Result<CohomClass> {
    m.check_class(x)?;
    let c0 = x.constant_term();
    if !c0.is_zero() {
        return Err(Error::NotNilpotent(c0.to_string()));
    }
    let x = m.reduce(x);
    let mut term = m.reduce(&CohomClass::one(m.ngens()));
    let mut sum = term.clone();
    for k in 1..=m.dim() {
        if x.is_zero() {
            break;
        }
        term = m.multiply(&term, &x)?.scale(&Rational::new(BigInt::one(), BigInt::from(k)));
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
    }
    Ok(sum)
}

/// Inverse of a unit `λ + N` with `λ ≠ 0` and `N` nilpotent.
pub fn invert_class(x: &CohomClass, m: &ManifoldModel) -> Result<CohomClass> {
    m.check_class(x)?;
    let x = m.reduce(x);
    let lambda = x.constant_term();
    if lambda.is_zero() {
        return Err(Error::NotInvertible);
    }
    let inv_lambda = lambda.recip();
    // x/λ = 1 + n, so x⁻¹ = λ⁻¹ Σ (−n)^k
    let mut neg_n = x.scale(&-inv_lambda.clone());
    neg_n.add_term(vec![0; m.ngens()], Rational::one());
    let mut term = CohomClass::one(m.ngens());
    let mut sum = term.clone();
    for _ in 0..m.dim() {
        term = m.multiply(&term, &neg_n)?;
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
    }
    Ok(sum.scale(&inv_lambda))
}

/// Multiplicative inverse up to `q^Q`; the `q⁰` coefficient must be a unit of
/// the ring (nonzero constant term).
pub fn qs_invert(a: &QSeries, m: &ManifoldModel) -> Result<QSeries> {
    m.check_class(a.coeff(0))?;
    let q = a.q_order();
    let inv0 = invert_class(a.coeff(0), m)?;
    let mut out = QSeries::zero(a.ngens(), q);
    out.coeffs[0] = inv0.clone();
    for k in 1..=q {
        let mut acc = CohomClass::zero(a.ngens());
        for i in 1..=k {
            if a.coeffs[i].is_zero() || out.coeffs[k - i].is_zero() {
                continue;
            }
            acc = &acc + &m.multiply(&a.coeffs[i], &out.coeffs[k - i])?;
        }
        out.coeffs[k] = -&m.multiply(&inv0, &acc)?;
    }
    Ok(out)
}
