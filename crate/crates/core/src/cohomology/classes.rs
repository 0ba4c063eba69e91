use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use crate::Rational;

/// Exponent vector of a monomial, one entry per generator.
pub type Exponents = Vec<u32>;

pub(crate) fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// A cohomology class with exact rational coefficients.
///
/// Zero coefficients are never stored. A class is not tied to a particular
/// model beyond its generator count; reduction and products go through
/// [`ManifoldModel`](super::ManifoldModel).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomClass {
    ngens: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl CohomClass {
    pub fn zero(ngens: usize) -> Self {
        Self { ngens, terms: BTreeMap::new() }
    }

    pub fn one(ngens: usize) -> Self {
        Self::constant(Rational::one(), ngens)
    }

    pub fn constant(c: Rational, ngens: usize) -> Self {
        let mut x = Self::zero(ngens);
        x.add_term(vec![0; ngens], c);
        x
    }

    /// The generator `g_i`.
    pub fn generator(i: usize, ngens: usize) -> Self {
        assert!(i < ngens, "generator index {i} out of range for {ngens} generators");
        let mut e = vec![0; ngens];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Exponents, c: Rational) -> Self {
        let mut x = Self::zero(exponents.len());
        x.add_term(exponents, c);
        x
    }

    /// Builds a class from `(exponents, coefficient)` pairs, combining
    /// repeated monomials. Panics if an exponent vector has the wrong length.
    pub fn from_terms<I>(ngens: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut x = Self::zero(ngens);
        for (e, c) in terms {
            x.add_term(e, c);
        }
        x
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, Rational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.ngens])
    }

    /// Largest total degree of a stored monomial, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// The homogeneous component of the given degree.
    pub fn degree_part(&self, d: u32) -> Self {
        Self {
            ngens: self.ngens,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| total_degree(e) == d)
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        assert_eq!(e.len(), self.ngens, "exponent vector has wrong length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.ngens);
        }
        Self {
            ngens: self.ngens,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    /// Renders the class with the given generator names, highest degree first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| total_degree(b).cmp(&total_degree(a)).then(b.cmp(a)));
        let mut out = String::new();
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let is_unit = total_degree(e) == 0;
            if !abs.is_one() || is_unit {
                if abs.is_integer() {
                    let _ = write!(out, "{abs}");
                } else {
                    let _ = write!(out, "({abs})");
                }
            }
            let mut first = true;
            for (j, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if !first {
                    out.push('*');
                }
                first = false;
                let name = names.get(j).map(String::as_str).unwrap_or("g");
                if p == 1 {
                    out.push_str(name);
                } else {
                    let _ = write!(out, "{name}^{p}");
                }
            }
        }
        out
    }
}

impl Add for &CohomClass {
    type Output = CohomClass;
    fn add(self, rhs: &CohomClass) -> CohomClass {
        assert_eq!(self.ngens, rhs.ngens, "adding classes over different models");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CohomClass {
    type Output = CohomClass;
    fn sub(self, rhs: &CohomClass) -> CohomClass {
        assert_eq!(self.ngens, rhs.ngens, "subtracting classes over different models");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &CohomClass {
    type Output = CohomClass;
    fn neg(self) -> CohomClass {
        CohomClass {
            ngens: self.ngens,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

/// A class with integer coefficients: first Chern classes of line bundles,
/// `c₁ᶜ` and anything whose mod-2 reduction matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntClass {
    ngens: usize,
    terms: BTreeMap<Exponents, i64>,
}

impl IntClass {
    pub fn zero(ngens: usize) -> Self {
        Self { ngens, terms: BTreeMap::new() }
    }

    /// The degree-2 class `Σ coeffs[i]·g_i`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let ngens = coeffs.len();
        let mut x = Self::zero(ngens);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; ngens];
            e[i] = 1;
            x.add_term(e, c);
        }
        x
    }

    pub fn from_terms<I>(ngens: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, i64)>,
    {
        let mut x = Self::zero(ngens);
        for (e, c) in terms {
            x.add_term(e, c);
        }
        x
    }

    pub fn add_term(&mut self, e: Exponents, c: i64) {
        assert_eq!(e.len(), self.ngens, "exponent vector has wrong length");
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every monomial has degree one (zero counts as linear).
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|e| total_degree(e) == 1)
    }

    /// Coefficient vector of a linear class.
    pub fn as_linear(&self) -> Option<Vec<i64>> {
        if !self.is_linear() {
            return None;
        }
        let mut v = vec![0; self.ngens];
        for (e, &c) in &self.terms {
            let i = e.iter().position(|&p| p == 1)?;
            v[i] = c;
        }
        Some(v)
    }

    pub fn to_rational(&self) -> CohomClass {
        CohomClass::from_terms(
            self.ngens,
            self.terms.iter().map(|(e, &c)| (e.clone(), Rational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn mod2(&self) -> Z2Class {
        Z2Class {
            ngens: self.ngens,
            monomials: self
                .terms
                .iter()
                .filter(|(_, c)| *c % 2 != 0)
                .map(|(e, _)| e.clone())
                .collect(),
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        self.to_rational().display_with(names)
    }
}

impl Add for &IntClass {
    type Output = IntClass;
    fn add(self, rhs: &IntClass) -> IntClass {
        assert_eq!(self.ngens, rhs.ngens, "adding classes over different models");
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

/// A class with `Z/2` coefficients, stored as the set of monomials with
/// coefficient one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Class {
    ngens: usize,
    monomials: BTreeSet<Exponents>,
}

impl Z2Class {
    pub fn zero(ngens: usize) -> Self {
        Self { ngens, monomials: BTreeSet::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &BTreeSet<Exponents> {
        &self.monomials
    }

    pub fn to_int(&self) -> IntClass {
        IntClass::from_terms(self.ngens, self.monomials.iter().map(|e| (e.clone(), 1)))
    }

    pub fn display_with(&self, names: &[String]) -> String {
        self.to_int().display_with(names)
    }
}
