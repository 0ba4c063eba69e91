//! Fixtures shared by the benchmarks.

use wgenus_core::{LineBundleSum, ManifoldModel};

/// `(ℂPⁿ, ⊕ 𝒪(dᵢ))` pairs from the vanishing corpus, smallest first.
pub fn vanishing_pairs() -> Vec<(String, ManifoldModel, LineBundleSum)> {
    let cases: [(&[usize], &[&[i64]]); 4] = [
        (&[3], &[&[2]]),
        (&[3, 3], &[&[2, 0], &[0, 2]]),
        (&[11], &[&[2], &[2], &[2]]),
        (&[15], &[&[2], &[2], &[2], &[2]]),
    ];
    cases
        .iter()
        .map(|(dims, roots)| {
            let m = ManifoldModel::projective_product(dims).expect("valid dimensions");
            let roots: Vec<Vec<i64>> = roots.iter().map(|r| r.to_vec()).collect();
            let v = LineBundleSum::from_vectors(m.ngens(), &roots).expect("roots match generators");
            (m.name().to_string(), m, v)
        })
        .collect()
}
