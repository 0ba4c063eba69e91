#![allow(dead_code)]

use rand::Rng;
use wgenus_core::cohomology::BottStage;
use wgenus_core::{CohomClass, IntClass, LineBundleSum, ManifoldModel, Rational};

/// A small product of projective spaces or a generalized Bott tower.
pub fn random_model<R: Rng>(rng: &mut R) -> ManifoldModel {
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=3);
        let mut dims = Vec::new();
        let mut left = 6;
        for _ in 0..k {
            if left == 0 {
                break;
            }
            let n = rng.gen_range(1..=left.min(3));
            dims.push(n);
            left -= n;
        }
        ManifoldModel::projective_product(&dims).unwrap()
    } else {
        let k = rng.gen_range(1..=3);
        let mut stages = Vec::new();
        let mut left = 5;
        for j in 0..k {
            if left == 0 {
                break;
            }
            let n = rng.gen_range(1..=left.min(2));
            left -= n;
            let twists = (0..n).map(|_| (0..j).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            stages.push(BottStage { fiber_dim: n, twists });
        }
        ManifoldModel::generalized_bott("random-bott", &stages).unwrap()
    }
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into())
}

/// A random reduced class with a handful of terms of degree ≤ dim.
pub fn random_class<R: Rng>(rng: &mut R, m: &ManifoldModel) -> CohomClass {
    let n = m.ngens();
    let mut x = CohomClass::zero(n);
    for _ in 0..rng.gen_range(0..=4) {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        x.add_term(e, random_rational(rng));
    }
    m.reduce(&x)
}

pub fn random_nilpotent<R: Rng>(rng: &mut R, m: &ManifoldModel) -> CohomClass {
    let x = random_class(rng, m);
    let c = x.constant_term();
    let mut y = x;
    y.add_term(vec![0; m.ngens()], -c);
    y
}

pub fn random_root<R: Rng>(rng: &mut R, ngens: usize) -> Vec<i64> {
    (0..ngens).map(|_| rng.gen_range(-2..=2)).collect()
}

pub fn random_roots<R: Rng>(rng: &mut R, ngens: usize, max: usize) -> Vec<Vec<i64>> {
    let k = rng.gen_range(0..=max);
    (0..k).map(|_| random_root(rng, ngens)).collect()
}

/// Random roots whose first Chern class has the parity of `c1(TM)`.
pub fn random_admissible_bundle<R: Rng>(rng: &mut R, m: &ManifoldModel, max: usize) -> LineBundleSum {
    let n = m.ngens();
    let mut roots = random_roots(rng, n, max);
    if roots.is_empty() {
        roots.push(random_root(rng, n));
    }
    let target: Vec<i64> = m
        .tangent_roots()
        .iter()
        .map(|r| r.as_linear().unwrap())
        .fold(vec![0; n], |acc, r| acc.iter().zip(&r).map(|(a, b)| a + b).collect());
    let sum: Vec<i64> = roots.iter().fold(vec![0; n], |acc, r| acc.iter().zip(r).map(|(a, b)| a + b).collect());
    for i in 0..n {
        if (sum[i] - target[i]).rem_euclid(2) == 1 {
            roots[0][i] += 1;
        }
    }
    LineBundleSum::from_vectors(n, &roots).unwrap()
}

pub fn tangent_c1(m: &ManifoldModel) -> IntClass {
    m.tangent_roots().iter().fold(IntClass::zero(m.ngens()), |acc, r| &acc + r)
}
