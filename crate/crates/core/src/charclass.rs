//! Multiplicative characteristic classes evaluated on explicit root multisets.
//!
//! Every bundle arrives split: a sum of line bundles given by their first
//! Chern classes. A root is a concrete degree-2 class, so each factor of a
//! multiplicative sequence is obtained by substituting that class into a
//! univariate series and truncating by nilpotency.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use crate::cohomology::{CohomClass, IntClass, ManifoldModel, Z2Class};
use crate::qseries::{exp_nilpotent, qs_invert, qs_mul, QSeries};
use crate::{Error, Rational, Result};

/// A split bundle: the multiset of first Chern classes of its line summands.
pub trait SplitBundle {
    fn ngens(&self) -> usize;
    fn roots(&self) -> &[IntClass];

    /// Root coefficient vectors, in stored order.
    fn root_vectors(&self) -> Vec<Vec<i64>> {
        self.roots().iter().map(|r| r.as_linear().expect("roots are linear")).collect()
    }
}

fn check_roots(ngens: usize, roots: &[IntClass]) -> Result<()> {
    for r in roots {
        if r.ngens() != ngens {
            return Err(Error::ModelMismatch { expected: ngens, found: r.ngens() });
        }
        if !r.is_linear() {
            return Err(Error::InvalidInput("bundle roots must be degree-2 classes".into()));
        }
    }
    Ok(())
}

fn roots_from_vectors(ngens: usize, vectors: &[Vec<i64>]) -> Result<Vec<IntClass>> {
    vectors
        .iter()
        .map(|v| {
            if v.len() != ngens {
                Err(Error::InvalidInput(format!("root {v:?} does not have {ngens} entries")))
            } else {
                Ok(IntClass::linear(v))
            }
        })
        .collect()
}

/// `V = L₁ ⊕ ⋯ ⊕ L_k`; the empty list is the zero bundle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineBundleSum {
    ngens: usize,
    roots: Vec<IntClass>,
}

impl LineBundleSum {
    pub fn new(ngens: usize, roots: Vec<IntClass>) -> Result<Self> {
        check_roots(ngens, &roots)?;
        Ok(Self { ngens, roots })
    }

    pub fn empty(ngens: usize) -> Self {
        Self { ngens, roots: Vec::new() }
    }

    pub fn from_vectors(ngens: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        Ok(Self { ngens, roots: roots_from_vectors(ngens, vectors)? })
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// The same bundle with summands in sorted order.
    pub fn canonical(&self) -> Self {
        let mut roots = self.roots.clone();
        roots.sort_by_key(|r| r.as_linear());
        Self { ngens: self.ngens, roots }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        Self { ngens: self.ngens, roots }
    }
}

impl SplitBundle for LineBundleSum {
    fn ngens(&self) -> usize {
        self.ngens
    }
    fn roots(&self) -> &[IntClass] {
        &self.roots
    }
}

/// A real or stable bundle `E` with `E ⊕ ℂ^offset = ⊕ L_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBundle {
    ngens: usize,
    roots: Vec<IntClass>,
    rank_offset: usize,
}

impl RootBundle {
    pub fn new(ngens: usize, roots: Vec<IntClass>, rank_offset: usize) -> Result<Self> {
        check_roots(ngens, &roots)?;
        if rank_offset > roots.len() {
            return Err(Error::InvalidInput("rank offset exceeds the number of roots".into()));
        }
        Ok(Self { ngens, roots, rank_offset })
    }

    pub fn empty(ngens: usize) -> Self {
        Self { ngens, roots: Vec::new(), rank_offset: 0 }
    }

    pub fn from_vectors(ngens: usize, vectors: &[Vec<i64>], rank_offset: usize) -> Result<Self> {
        Self::new(ngens, roots_from_vectors(ngens, vectors)?, rank_offset)
    }

    /// The stable splitting of `TM` carried by the model.
    pub fn tangent(m: &ManifoldModel) -> Self {
        Self { ngens: m.ngens(), roots: m.tangent_roots().to_vec(), rank_offset: m.rank_offset() }
    }

    pub fn rank_offset(&self) -> usize {
        self.rank_offset
    }

    /// Complex rank of `E` itself.
    pub fn rank(&self) -> usize {
        self.roots.len() - self.rank_offset
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        Self { ngens: self.ngens, roots, rank_offset: self.rank_offset + other.rank_offset }
    }
}

impl SplitBundle for RootBundle {
    fn ngens(&self) -> usize {
        self.ngens
    }
    fn roots(&self) -> &[IntClass] {
        &self.roots
    }
}

impl From<LineBundleSum> for RootBundle {
    fn from(v: LineBundleSum) -> Self {
        Self { ngens: v.ngens, roots: v.roots, rank_offset: 0 }
    }
}

fn check_bundle<B: SplitBundle + ?Sized>(e: &B, m: &ManifoldModel) -> Result<()> {
    if e.ngens() != m.ngens() {
        return Err(Error::ModelMismatch { expected: m.ngens(), found: e.ngens() });
    }
    Ok(())
}

/// Groups equal roots, skipping zero roots when `skip_zero` is set.
fn root_multiplicities<B: SplitBundle + ?Sized>(e: &B, skip_zero: bool) -> BTreeMap<&IntClass, u32> {
    let mut counts = BTreeMap::new();
    for r in e.roots() {
        if skip_zero && r.is_zero() {
            continue;
        }
        *counts.entry(r).or_insert(0) += 1;
    }
    counts
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Taylor coefficients of `x / (e^{x/2} − e^{−x/2})` through `x^n`, obtained
/// by inverting `(e^{x/2} − e^{−x/2}) / x` built from the exponential series.
pub fn a_hat_series(n: u32) -> Vec<Rational> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    // coefficient of x^{j+1} in e^{x/2} − e^{−x/2}
    let denom: Vec<Rational> = (0..=n)
        .map(|j| {
            let p = j + 1;
            let exp_coeff = num::pow(half.clone(), p as usize) / Rational::from_integer(factorial(p));
            if p % 2 == 1 {
                exp_coeff * rat(2)
            } else {
                Rational::zero()
            }
        })
        .collect();
    let d0_inv = denom[0].recip();
    let mut out: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    out.push(d0_inv.clone());
    for k in 1..=n as usize {
        let s: Rational = (1..=k).map(|i| &denom[i] * &out[k - i]).sum();
        out.push(-s * &d0_inv);
    }
    out
}

/// `Σ coeffs[j]·x^j` in the ring of `m`.
fn eval_univariate(coeffs: &[Rational], x: &CohomClass, m: &ManifoldModel) -> Result<CohomClass> {
    let mut acc = CohomClass::zero(m.ngens());
    let mut power = CohomClass::one(m.ngens());
    for c in coeffs {
        if power.is_zero() {
            break;
        }
        if !c.is_zero() {
            acc = &acc + &power.scale(c);
        }
        power = m.multiply(&power, x)?;
    }
    Ok(acc)
}

/// `Â(E) = Π x/(e^{x/2} − e^{−x/2})`; trivial summands contribute 1.
pub fn a_hat<B: SplitBundle + ?Sized>(e: &B, m: &ManifoldModel) -> Result<CohomClass> {
    check_bundle(e, m)?;
    let series = a_hat_series(m.dim());
    let mut out = m.reduce(&CohomClass::one(m.ngens()));
    for (root, mult) in root_multiplicities(e, true) {
        let factor = eval_univariate(&series, &m.lift(root), m)?;
        for _ in 0..mult {
            out = m.multiply(&out, &factor)?;
        }
    }
    Ok(out)
}

/// `(e^{x}, e^{−x})`.
fn exp_pair(x: &CohomClass, m: &ManifoldModel) -> Result<(CohomClass, CohomClass)> {
    Ok((exp_nilpotent(x, m)?, exp_nilpotent(&-x, m)?))
}

/// `1 + a·q^k + q^{2k}` truncated at `q^Q`, with `a` a class.
fn trinomial(a: &CohomClass, k: usize, q: usize) -> QSeries {
    let n = a.ngens();
    let mut cs = vec![CohomClass::zero(n); q + 1];
    cs[0] = CohomClass::one(n);
    if k <= q {
        cs[k] = a.clone();
    }
    if 2 * k <= q {
        cs[2 * k] = CohomClass::one(n);
    }
    QSeries::from_coeffs(n, cs, q)
}

fn series_power(s: &QSeries, k: u32, m: &ManifoldModel) -> Result<QSeries> {
    let mut out = QSeries::one(s.ngens(), s.q_order());
    for _ in 0..k {
        out = qs_mul(&out, s, m)?;
    }
    Ok(out)
}

/// `Q₁(E) = Π_i Π_{k≥1} (1−q^k)² / ((1−e^{x_i}q^k)(1−e^{−x_i}q^k))`.
pub fn q1<B: SplitBundle + ?Sized>(e: &B, m: &ManifoldModel, q: usize) -> Result<QSeries> {
    check_bundle(e, m)?;
    let n = m.ngens();
    let mut out = QSeries::one(n, q);
    for (root, mult) in root_multiplicities(e, true) {
        let x = m.lift(root);
        let (ep, em) = exp_pair(&x, m)?;
        let s = &ep + &em;
        let mut per_root = QSeries::one(n, q);
        for k in 1..=q {
            let numer = trinomial(&CohomClass::constant(rat(-2), n), k, q);
            let denom = trinomial(&-&s, k, q);
            let factor = qs_mul(&numer, &qs_invert(&denom, m)?, m)?;
            per_root = qs_mul(&per_root, &factor, m)?;
        }
        out = qs_mul(&out, &series_power(&per_root, mult, m)?, m)?;
    }
    Ok(out)
}

/// `Q₂(V) = Π_i (1−e^{−v_i}) Π_{k≥1} (1−e^{v_i}q^k)(1−e^{−v_i}q^k) / (1−q^k)²`.
pub fn q2(v: &LineBundleSum, m: &ManifoldModel, q: usize) -> Result<QSeries> {
    check_bundle(v, m)?;
    let n = m.ngens();
    let mut out = QSeries::one(n, q);
    for (root, mult) in root_multiplicities(v, false) {
        let x = m.lift(root);
        let (ep, em) = exp_pair(&x, m)?;
        let s = &ep + &em;
        let lead = &CohomClass::one(n) - &em;
        let mut per_root = QSeries::constant(lead, q);
        for k in 1..=q {
            let numer = trinomial(&-&s, k, q);
            let denom = trinomial(&CohomClass::constant(rat(-2), n), k, q);
            let factor = qs_mul(&numer, &qs_invert(&denom, m)?, m)?;
            per_root = qs_mul(&per_root, &factor, m)?;
        }
        out = qs_mul(&out, &series_power(&per_root, mult, m)?, m)?;
    }
    Ok(out)
}

/// `Q₃(W) = Π_i (e^{w_i/2}+e^{−w_i/2}) Π_{k≥1} (1+e^{w_i}q^k)(1+e^{−w_i}q^k) / (1+q^k)²`.
///
/// Each trivial rank-2 summand contributes the factor 2, so the stable
/// splitting's `rank_offset` trivial summands are divided back out. The rank-0
/// bundle gives 1.
pub fn q3(w: &RootBundle, m: &ManifoldModel, q: usize) -> Result<QSeries> {
    check_bundle(w, m)?;
    let n = m.ngens();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut out = QSeries::one(n, q);
    for (root, mult) in root_multiplicities(w, false) {
        let x = m.lift(root);
        let (ep, em) = exp_pair(&x, m)?;
        let (hp, hm) = exp_pair(&x.scale(&half), m)?;
        let s = &ep + &em;
        let mut per_root = QSeries::constant(&hp + &hm, q);
        for k in 1..=q {
            let numer = trinomial(&s, k, q);
            let denom = trinomial(&CohomClass::constant(rat(2), n), k, q);
            let factor = qs_mul(&numer, &qs_invert(&denom, m)?, m)?;
            per_root = qs_mul(&per_root, &factor, m)?;
        }
        out = qs_mul(&out, &series_power(&per_root, mult, m)?, m)?;
    }
    let scale = Rational::new(BigInt::one(), BigInt::from(2).pow(w.rank_offset() as u32));
    let coeffs = out.coeffs().iter().map(|c| c.scale(&scale)).collect();
    Ok(QSeries::from_coeffs(n, coeffs, q))
}

/// `e(V) = Π v_i`.
pub fn euler(v: &LineBundleSum, m: &ManifoldModel) -> Result<CohomClass> {
    check_bundle(v, m)?;
    let mut out = m.reduce(&CohomClass::one(m.ngens()));
    for r in v.roots() {
        out = m.multiply(&out, &m.lift(r))?;
    }
    Ok(out)
}

/// `p₁ = Σ x_i²`.
pub fn pontryagin_p1<B: SplitBundle + ?Sized>(e: &B, m: &ManifoldModel) -> Result<CohomClass> {
    check_bundle(e, m)?;
    let mut out = CohomClass::zero(m.ngens());
    for r in e.roots() {
        let x = m.lift(r);
        out = &out + &m.multiply(&x, &x)?;
    }
    Ok(out)
}

/// `c₁ = Σ x_i`.
pub fn c1<B: SplitBundle + ?Sized>(e: &B) -> IntClass {
    e.roots().iter().fold(IntClass::zero(e.ngens()), |acc, r| &acc + r)
}

pub fn w2<B: SplitBundle + ?Sized>(e: &B) -> Z2Class {
    c1(e).mod2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn cp(n: usize) -> ManifoldModel {
        ManifoldModel::projective_product(&[n]).unwrap()
    }

    #[test]
    fn a_hat_series_matches_bernoulli_expansion() {
        let s = a_hat_series(6);
        assert_eq!(s[0], r(1, 1));
        assert_eq!(s[1], r(0, 1));
        assert_eq!(s[2], r(-1, 24));
        assert_eq!(s[3], r(0, 1));
        assert_eq!(s[4], r(7, 5760));
        assert_eq!(s[6], r(-31, 967680));
    }

    #[test]
    fn a_hat_of_empty_bundle_is_one() {
        let m = cp(3);
        assert_eq!(a_hat(&RootBundle::empty(1), &m).unwrap(), CohomClass::one(1));
    }

    #[test]
    fn a_hat_of_single_root_in_cp3() {
        let m = cp(3);
        let e = RootBundle::from_vectors(1, &[vec![1]], 0).unwrap();
        let expected = CohomClass::from_terms(1, [(vec![0], r(1, 1)), (vec![2], r(-1, 24))]);
        assert_eq!(a_hat(&e, &m).unwrap(), expected);
    }

    #[test]
    fn a_hat_of_cp2() {
        let m = cp(2);
        let t = RootBundle::tangent(&m);
        assert_eq!(m.integrate(&a_hat(&t, &m).unwrap()).unwrap(), r(-1, 8));
    }

    #[test]
    fn q1_zero_bundle_is_one() {
        assert!(q1(&RootBundle::empty(1), &cp(2), 4).unwrap().is_one());
        let zero_root = RootBundle::from_vectors(1, &[vec![0]], 0).unwrap();
        assert!(q1(&zero_root, &cp(2), 4).unwrap().is_one());
    }

    #[test]
    fn q1_first_order_coefficient() {
        // (1−q)²/((1−e^x q)(1−e^{−x} q)) = 1 + (e^x + e^{−x} − 2) q + O(q²)
        let m = cp(4);
        let e = RootBundle::from_vectors(1, &[vec![1]], 0).unwrap();
        let s = q1(&e, &m, 1).unwrap();
        let expected = CohomClass::from_terms(1, [(vec![2], r(1, 1)), (vec![4], r(1, 12))]);
        assert_eq!(s.coeff(1), &expected);
        assert_eq!(s.coeff(0), &CohomClass::one(1));
    }

    #[test]
    fn q2_examples() {
        assert!(q2(&LineBundleSum::empty(1), &cp(3), 3).unwrap().is_one());
        let m = cp(1);
        let v = LineBundleSum::from_vectors(1, &[vec![1]]).unwrap();
        let s = q2(&v, &m, 0).unwrap();
        assert_eq!(s.coeff(0), &CohomClass::generator(0, 1));
    }

    #[test]
    fn q3_examples() {
        assert!(q3(&RootBundle::empty(1), &cp(2), 3).unwrap().is_one());
        let w = RootBundle::from_vectors(1, &[vec![0]], 0).unwrap();
        let s = q3(&w, &cp(2), 3).unwrap();
        assert_eq!(s, QSeries::constant(CohomClass::constant(r(2, 1), 1), 3));
        let w = RootBundle::from_vectors(1, &[vec![0]], 1).unwrap();
        assert!(q3(&w, &cp(2), 3).unwrap().is_one());
    }

    #[test]
    fn euler_examples() {
        let m = ManifoldModel::projective_product(&[3, 3]).unwrap();
        assert_eq!(euler(&LineBundleSum::empty(2), &m).unwrap(), CohomClass::one(2));
        let v = LineBundleSum::from_vectors(2, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(euler(&v, &m).unwrap(), CohomClass::monomial(vec![1, 1], r(4, 1)));
        let m = ManifoldModel::projective_product(&[1, 1]).unwrap();
        assert_eq!(m.integrate(&euler(&v, &m).unwrap()).unwrap(), r(4, 1));
    }

    #[test]
    fn pontryagin_examples() {
        let m = cp(11);
        let t = RootBundle::tangent(&m);
        let twelve_u2 = CohomClass::monomial(vec![2], r(12, 1));
        assert_eq!(pontryagin_p1(&t, &m).unwrap(), twelve_u2);
        let v = LineBundleSum::from_vectors(1, &[vec![2], vec![2], vec![2]]).unwrap();
        assert_eq!(pontryagin_p1(&v, &m).unwrap(), twelve_u2);
        let m = ManifoldModel::projective_product(&[1, 1]).unwrap();
        assert!(pontryagin_p1(&RootBundle::tangent(&m), &m).unwrap().is_zero());
    }

    #[test]
    fn chern_and_stiefel_whitney() {
        let m = cp(3);
        let t = RootBundle::tangent(&m);
        assert_eq!(c1(&t), IntClass::linear(&[4]));
        assert!(w2(&t).is_zero());
        let v = LineBundleSum::from_vectors(1, &[vec![4]]).unwrap();
        assert_eq!(c1(&v), IntClass::linear(&[4]));
        assert!(w2(&v).is_zero());
        let v = LineBundleSum::from_vectors(1, &[vec![3]]).unwrap();
        assert_eq!(w2(&v), IntClass::linear(&[1]).mod2());
    }

    #[test]
    fn rejects_bad_roots() {
        assert!(LineBundleSum::from_vectors(2, &[vec![1]]).is_err());
        let sq = IntClass::from_terms(1, [(vec![2], 1)]);
        assert!(LineBundleSum::new(1, vec![sq]).is_err());
    }
}
