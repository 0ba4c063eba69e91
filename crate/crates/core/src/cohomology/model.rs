use std::collections::BTreeMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::classes::{total_degree, CohomClass, Exponents, IntClass};
use crate::{Error, Rational, Result};

/// The rewrite rule `g_j^exponent ↦ rhs` for generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub exponent: u32,
    pub rhs: CohomClass,
}

/// Trusted facts about the manifold that the ring presentation cannot decide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub b1: u32,
    pub b2: u32,
    pub torus_dim: u32,
    /// `M = G/H` for a compact simply connected `G`.
    pub homogeneous: bool,
    pub simply_connected: bool,
    /// Some compact simply connected Lie group acts almost effectively on `M`
    /// with a global fixed point.
    pub has_fixed_point: bool,
    /// For homogeneous `M`: the isotropy group is a maximal torus.
    #[serde(default)]
    pub maximal_torus_isotropy: bool,
    /// `M` is a generalized Bott manifold presented by its stage tower.
    #[serde(default)]
    pub generalized_bott: bool,
}

/// One stage of a generalized Bott tower: the projectivization of
/// `ℂ ⊕ L₁ ⊕ ⋯ ⊕ L_n` over the previous stage, with `c₁(L_i) = twists[i]`
/// written in the generators of the earlier stages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottStage {
    pub fiber_dim: usize,
    pub twists: Vec<Vec<i64>>,
}

impl BottStage {
    pub fn trivial(fiber_dim: usize, previous: usize) -> Self {
        Self { fiber_dim, twists: vec![vec![0; previous]; fiber_dim] }
    }
}

/// A torsion-free cohomology ring presentation together with a stable
/// splitting of the tangent bundle.
///
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldModel {
    name: String,
    generators: Vec<String>,
    relations: Vec<Relation>,
    dim: u32,
    tangent_roots: Vec<IntClass>,
    rank_offset: usize,
    metadata: Metadata,
}

impl ManifoldModel {
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relations: Vec<Relation>,
        tangent_roots: Vec<IntClass>,
        rank_offset: usize,
        metadata: Metadata,
    ) -> Result<Self> {
        let name = name.into();
        let m = generators.len();
        let bad = |msg: String| Err(Error::InvalidModel(format!("{name}: {msg}")));

        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() {
                return bad(format!("generator {i} has an empty name"));
            }
            if generators[..i].contains(g) {
                return bad(format!("duplicate generator name {g}"));
            }
        }
        if relations.len() != m {
            return bad(format!("{} relations for {m} generators", relations.len()));
        }
        for (j, rel) in relations.iter().enumerate() {
            if rel.exponent < 2 {
                return bad(format!("relation for {} has exponent {} < 2", generators[j], rel.exponent));
            }
            if rel.rhs.ngens() != m {
                return bad(format!("relation for {} has the wrong generator count", generators[j]));
            }
            if !rel.rhs.is_homogeneous(rel.exponent) {
                return bad(format!("relation for {} is not homogeneous", generators[j]));
            }
            for e in rel.rhs.terms().keys() {
                if e[j + 1..].iter().any(|&p| p > 0) || e[j] >= rel.exponent {
                    return bad(format!("relation for {} is not triangular", generators[j]));
                }
            }
        }
        let dim: u32 = relations.iter().map(|r| r.exponent - 1).sum();
        for r in &tangent_roots {
            if r.ngens() != m || !r.is_linear() {
                return bad("tangent roots must be degree-2 classes".to_string());
            }
        }
        if tangent_roots.len() < rank_offset || (tangent_roots.len() - rank_offset) as u32 != dim {
            return bad(format!(
                "{} tangent roots with offset {rank_offset} do not match complex dimension {dim}",
                tangent_roots.len()
            ));
        }
        if metadata.b2 as usize != m {
            return bad(format!("metadata b2 = {} but the ring has {m} generators", metadata.b2));
        }
        Ok(Self { name, generators, relations, dim, tangent_roots, rank_offset, metadata })
    }

    /// The one-point manifold.
    pub fn point() -> Self {
        Self {
            name: "point".to_string(),
            generators: Vec::new(),
            relations: Vec::new(),
            dim: 0,
            tangent_roots: Vec::new(),
            rank_offset: 0,
            metadata: Metadata {
                b1: 0,
                b2: 0,
                torus_dim: 0,
                homogeneous: true,
                simply_connected: true,
                has_fixed_point: true,
                maximal_torus_isotropy: false,
                generalized_bott: false,
            },
        }
    }

    /// `ℂP^{n₁} × ⋯ × ℂP^{n_k}` with generators `u` (one factor) or
    /// `u1, …, uk`, and `T(ℂPⁿ) ⊕ ℂ = (n+1)·𝒪(1)` on each factor.
    pub fn projective_product(dims: &[usize]) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::InvalidModel("projective factors need dimension >= 1".into()));
        }
        let k = dims.len();
        let generators: Vec<String> = if k == 1 {
            vec!["u".to_string()]
        } else {
            (1..=k).map(|i| format!("u{i}")).collect()
        };
        let relations = dims
            .iter()
            .map(|&n| Relation { exponent: n as u32 + 1, rhs: CohomClass::zero(k) })
            .collect();
        let mut roots = Vec::new();
        for (i, &n) in dims.iter().enumerate() {
            let mut v = vec![0; k];
            v[i] = 1;
            roots.extend(std::iter::repeat_n(IntClass::linear(&v), n + 1));
        }
        let name = dims.iter().map(|n| format!("CP{n}")).collect::<Vec<_>>().join("x");
        let metadata = Metadata {
            b1: 0,
            b2: k as u32,
            torus_dim: dims.iter().sum::<usize>() as u32,
            homogeneous: true,
            simply_connected: true,
            has_fixed_point: dims.iter().all(|&n| n >= 2),
            maximal_torus_isotropy: dims.iter().all(|&n| n == 1),
            generalized_bott: false,
        };
        Self::new(name, generators, relations, roots, k, metadata)
    }

    /// A generalized Bott manifold from its stage data. Stage `j` contributes
    /// the generator `x{j+1}` with `x·Π(x + αᵢ) = 0` and the stable tangent
    /// roots `x, x + α₁, …, x + α_n`.
    pub fn generalized_bott(name: impl Into<String>, stages: &[BottStage]) -> Result<Self> {
        let k = stages.len();
        let name = name.into();
        let dim: u32 = stages.iter().map(|s| s.fiber_dim as u32).sum();
        let mut relations: Vec<Relation> = Vec::with_capacity(k);
        let mut roots = Vec::new();
        for (j, stage) in stages.iter().enumerate() {
            if stage.fiber_dim == 0 || stage.twists.len() != stage.fiber_dim {
                return Err(Error::InvalidModel(format!(
                    "{name}: stage {j} needs fiber_dim >= 1 and one twist per fiber coordinate"
                )));
            }
            let x = CohomClass::generator(j, k);
            let mut x_vec = vec![0; k];
            x_vec[j] = 1;
            let mut product = x.clone();
            roots.push(IntClass::linear(&x_vec));
            for t in &stage.twists {
                if t.len() != j {
                    return Err(Error::InvalidModel(format!(
                        "{name}: twist at stage {j} must have {j} entries"
                    )));
                }
                let mut full = t.clone();
                full.resize(k, 0);
                full[j] = 1;
                let root = IntClass::linear(&full);
                product = poly_mul(&product, &root.to_rational());
                roots.push(root);
            }
            let n = stage.fiber_dim as u32 + 1;
            let mut lead = vec![0; k];
            lead[j] = n;
            let mut rhs = -&product;
            rhs.add_term(lead, Rational::one());
            let rhs = reduce_with(&relations, dim, &rhs);
            relations.push(Relation { exponent: n, rhs });
        }
        let untwisted = stages.iter().all(|s| s.twists.iter().flatten().all(|&a| a == 0));
        let metadata = Metadata {
            b1: 0,
            b2: k as u32,
            torus_dim: dim,
            homogeneous: untwisted,
            simply_connected: true,
            has_fixed_point: untwisted && stages.iter().all(|s| s.fiber_dim >= 2),
            maximal_torus_isotropy: untwisted && stages.iter().all(|s| s.fiber_dim == 1),
            generalized_bott: true,
        };
        let generators = (1..=k).map(|i| format!("x{i}")).collect();
        Self::new(name, generators, relations, roots, k, metadata)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Complex dimension.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn tangent_roots(&self) -> &[IntClass] {
        &self.tangent_roots
    }

    pub fn rank_offset(&self) -> usize {
        self.rank_offset
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    pub fn fundamental_monomial(&self) -> Exponents {
        self.relations.iter().map(|r| r.exponent - 1).collect()
    }

    /// Whether `x` consists of normal monomials only.
    pub fn is_reduced(&self, x: &CohomClass) -> bool {
        x.terms().keys().all(|e| {
            total_degree(e) <= self.dim && e.iter().zip(&self.relations).all(|(&p, r)| p < r.exponent)
        })
    }

    pub fn check_class(&self, x: &CohomClass) -> Result<()> {
        if x.ngens() != self.ngens() {
            return Err(Error::ModelMismatch { expected: self.ngens(), found: x.ngens() });
        }
        Ok(())
    }

    pub fn check_int_class(&self, x: &IntClass) -> Result<()> {
        if x.ngens() != self.ngens() {
            return Err(Error::ModelMismatch { expected: self.ngens(), found: x.ngens() });
        }
        Ok(())
    }

    /// Normal form of `x` in the quotient ring.
    pub fn reduce(&self, x: &CohomClass) -> CohomClass {
        reduce_with(&self.relations, self.dim, x)
    }

    pub fn multiply(&self, a: &CohomClass, b: &CohomClass) -> Result<CohomClass> {
        self.check_class(a)?;
        self.check_class(b)?;
        Ok(self.reduce(&truncated_product(a, b, self.dim)))
    }

    pub fn pow(&self, x: &CohomClass, k: u32) -> Result<CohomClass> {
        self.check_class(x)?;
        let mut acc = self.reduce(&CohomClass::one(self.ngens()));
        for _ in 0..k {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// Pairing with the fundamental class: the coefficient of the fundamental
    /// monomial in the normal form.
    pub fn integrate(&self, x: &CohomClass) -> Result<Rational> {
        self.check_class(x)?;
        let top = self.reduce(&x.degree_part(self.dim));
        Ok(top.coefficient(&self.fundamental_monomial()))
    }

    /// `x` converted to a reduced rational class.
    pub fn lift(&self, x: &IntClass) -> CohomClass {
        self.reduce(&x.to_rational())
    }
}

fn truncated_product(a: &CohomClass, b: &CohomClass, max_degree: u32) -> CohomClass {
    let mut out = CohomClass::zero(a.ngens());
    for (ea, ca) in a.terms() {
        let da = total_degree(ea);
        if da > max_degree {
            continue;
        }
        for (eb, cb) in b.terms() {
            if da + total_degree(eb) > max_degree {
                continue;
            }
            let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.add_term(e, ca * cb);
        }
    }
    out
}

fn poly_mul(a: &CohomClass, b: &CohomClass) -> CohomClass {
    truncated_product(a, b, u32::MAX)
}

/// Reduction against a prefix of triangular relations. Monomials are processed
/// from the largest in the order that compares exponents from the last
/// generator down; each rewrite only produces strictly smaller monomials, so
/// every monomial is visited once with its accumulated coefficient.
fn reduce_with(relations: &[Relation], max_degree: u32, x: &CohomClass) -> CohomClass {
    let ngens = x.ngens();
    let mut work: BTreeMap<Exponents, Rational> = BTreeMap::new();
    let push = |work: &mut BTreeMap<Exponents, Rational>, rev: Exponents, c: Rational| {
        let slot = work.entry(rev).or_insert_with(Rational::zero);
        *slot += c;
    };
    for (e, c) in x.terms() {
        if total_degree(e) <= max_degree {
            push(&mut work, e.iter().rev().copied().collect(), c.clone());
        }
    }
    let mut out = CohomClass::zero(ngens);
    while let Some((rev, c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        let e: Exponents = rev.into_iter().rev().collect();
        let violating = (0..relations.len()).rev().find(|&j| e[j] >= relations[j].exponent);
        match violating {
            None => out.add_term(e, c),
            Some(j) => {
                let mut base = e;
                base[j] -= relations[j].exponent;
                for (er, cr) in relations[j].rhs.terms() {
                    let next: Exponents = base.iter().zip(er).map(|(a, b)| a + b).rev().collect();
                    push(&mut work, next, &c * cr);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn hirzebruch() -> ManifoldModel {
        ManifoldModel::generalized_bott(
            "bott-1",
            &[BottStage::trivial(1, 0), BottStage { fiber_dim: 1, twists: vec![vec![1]] }],
        )
        .unwrap()
    }

    #[test]
    fn cp2_relation_kills_cubes() {
        let m = ManifoldModel::projective_product(&[2]).unwrap();
        let u3 = CohomClass::monomial(vec![3], r(1));
        assert!(m.reduce(&u3).is_zero());
    }

    #[test]
    fn bott_relation_is_v_squared_minus_uv() {
        let m = hirzebruch();
        let v2 = CohomClass::monomial(vec![0, 2], r(1));
        let expected = CohomClass::monomial(vec![1, 1], r(-1));
        assert_eq!(m.reduce(&v2), expected);
        let v = CohomClass::generator(1, 2);
        assert_eq!(m.multiply(&v, &v).unwrap(), expected);
        assert_eq!(m.integrate(&v2).unwrap(), r(-1));
    }

    #[test]
    fn cp1xcp1_products() {
        let m = ManifoldModel::projective_product(&[1, 1]).unwrap();
        assert!(m.reduce(&CohomClass::monomial(vec![2, 1], r(1))).is_zero());
        assert_eq!(m.integrate(&CohomClass::monomial(vec![1, 1], r(1))).unwrap(), r(1));
        assert_eq!(m.integrate(&CohomClass::monomial(vec![2, 0], r(1))).unwrap(), r(0));
    }

    #[test]
    fn cp3_multiply() {
        let m = ManifoldModel::projective_product(&[3]).unwrap();
        let u = CohomClass::generator(0, 1);
        let one = CohomClass::one(1);
        let a = &one + &u;
        let b = &one - &u;
        let u2 = CohomClass::monomial(vec![2], r(1));
        assert_eq!(m.multiply(&a, &b).unwrap(), &one - &u2);
        assert!(m.multiply(&u2, &u2).unwrap().is_zero());
    }

    #[test]
    fn cp2_integrates_u_squared_to_one() {
        let m = ManifoldModel::projective_product(&[2]).unwrap();
        assert_eq!(m.integrate(&CohomClass::monomial(vec![2], r(1))).unwrap(), r(1));
    }

    #[test]
    fn multiply_rejects_model_mismatch() {
        let m = ManifoldModel::projective_product(&[3]).unwrap();
        let a = CohomClass::generator(0, 2);
        let err = m.multiply(&a, &a).unwrap_err();
        assert_eq!(err, Error::ModelMismatch { expected: 1, found: 2 });
    }

    #[test]
    fn fundamental_monomial_integrates_to_one() {
        for m in [
            ManifoldModel::projective_product(&[3, 2]).unwrap(),
            hirzebruch(),
            ManifoldModel::point(),
        ] {
            let f = CohomClass::monomial(m.fundamental_monomial(), r(1));
            assert_eq!(m.integrate(&f).unwrap(), r(1), "{}", m.name());
        }
    }

    #[test]
    fn generalized_bott_euler_characteristic() {
        // ℂP²-bundle over ℂP¹: χ = 2·3 = 6 from the top Chern class.
        let m = ManifoldModel::generalized_bott(
            "gb",
            &[BottStage::trivial(1, 0), BottStage { fiber_dim: 2, twists: vec![vec![1], vec![2]] }],
        )
        .unwrap();
        assert_eq!(m.dim(), 3);
        let mut c = CohomClass::one(2);
        for root in m.tangent_roots() {
            let one_plus = &CohomClass::one(2) + &root.to_rational();
            c = m.multiply(&c, &one_plus).unwrap();
        }
        assert_eq!(m.integrate(&c).unwrap(), r(6));
    }

    #[test]
    fn rejects_non_triangular_relations() {
        let rhs = CohomClass::monomial(vec![0, 2], r(1));
        let rels = vec![
            Relation { exponent: 2, rhs },
            Relation { exponent: 2, rhs: CohomClass::zero(2) },
        ];
        let meta = ManifoldModel::projective_product(&[1, 1]).unwrap().metadata().clone();
        let roots = vec![IntClass::linear(&[2, 0]), IntClass::linear(&[0, 2])];
        let err = ManifoldModel::new("bad", vec!["a".into(), "b".into()], rels, roots, 0, meta);
        assert!(matches!(err, Err(Error::InvalidModel(_))));
    }

    #[test]
    fn rejects_wrong_root_count() {
        let meta = ManifoldModel::projective_product(&[2]).unwrap().metadata().clone();
        let rels = vec![Relation { exponent: 3, rhs: CohomClass::zero(1) }];
        let err = ManifoldModel::new("bad", vec!["u".into()], rels, vec![IntClass::linear(&[1])], 0, meta);
        assert!(matches!(err, Err(Error::InvalidModel(_))));
    }
}
