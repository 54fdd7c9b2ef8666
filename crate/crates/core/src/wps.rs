//! Weighted complex projective spaces `ℂPⁿ[λ₀, …, λₙ]`.
//!
//! The coordinate subspace `{z_j = 0 for j ∉ I}` has generic stabilizer
//! `ℤ_l` with `l = gcd{λ_i : i ∈ I}` under the weighted Hopf action, so the
//! stratification is recorded on the `2^{n+1} − 1` nonempty index subsets.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::signature::Signature;

/// Largest supported number of weights.
pub const MAX_WEIGHTS: usize = 17;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WpsError {
    #[error("need at least two weights")]
    TooFewWeights,
    #[error("at most {MAX_WEIGHTS} weights are supported")]
    TooManyWeights,
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("weights have common factor {0}")]
    NotReduced(u32),
    #[error("expected two weights, got {0}")]
    WrongDimension(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct WeightedProjectiveSpace {
    weights: Vec<u32>,
}

impl WeightedProjectiveSpace {
    pub fn new(weights: Vec<u32>) -> Result<Self, WpsError> {
        if weights.len() < 2 {
            return Err(WpsError::TooFewWeights);
        }
        if weights.len() > MAX_WEIGHTS {
            return Err(WpsError::TooManyWeights);
        }
        if weights.contains(&0) {
            return Err(WpsError::NonPositiveWeight);
        }
        let g = weights.iter().fold(0, |acc: u32, w| acc.gcd(w));
        if g != 1 {
            return Err(WpsError::NotReduced(g));
        }
        Ok(WeightedProjectiveSpace { weights })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Complex dimension `n`.
    pub fn dimension(&self) -> usize {
        self.weights.len() - 1
    }
}

impl TryFrom<Vec<u32>> for WeightedProjectiveSpace {
    type Error = WpsError;

    fn try_from(w: Vec<u32>) -> Result<Self, Self::Error> {
        WeightedProjectiveSpace::new(w)
    }
}

impl From<WeightedProjectiveSpace> for Vec<u32> {
    fn from(w: WeightedProjectiveSpace) -> Self {
        w.weights
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub indices: Vec<usize>,
    pub gcd: u32,
    pub singular: bool,
}

impl Stratum {
    /// Generic local group label, e.g. `Z2`.
    pub fn local_group(&self) -> String {
        format!("Z{}", self.gcd)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataPoset {
    pub weights: Vec<u32>,
    pub strata: Vec<Stratum>,
}

impl StrataPoset {
    pub fn singular(&self) -> impl Iterator<Item = &Stratum> {
        self.strata.iter().filter(|s| s.singular)
    }

    pub fn get(&self, indices: &[usize]) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.indices == indices)
    }
}

/// Every nonempty index subset with its gcd, ordered by size and then
/// lexicographically. Inclusion of index sets is the partial order.
pub fn wps_strata(w: &WeightedProjectiveSpace) -> StrataPoset {
    let n = w.weights.len();
    let mut strata: Vec<Stratum> = (1u32..1 << n)
        .map(|mask| {
            let indices: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let gcd = indices.iter().fold(0, |acc: u32, &i| acc.gcd(&w.weights[i]));
            Stratum {
                indices,
                gcd,
                singular: gcd > 1,
            }
        })
        .collect();
    strata.sort_by(|a, b| a.indices.len().cmp(&b.indices.len()).then_with(|| a.indices.cmp(&b.indices)));
    StrataPoset {
        weights: w.weights.clone(),
        strata,
    }
}

/// Orders of the chart groups `G_i ≅ ℤ_{λ_i}` of the standard charts.
pub fn wps_chart_groups(w: &WeightedProjectiveSpace) -> Vec<u32> {
    w.weights.clone()
}

/// `χ^orb = Σ 1/λ_i`.
pub fn wps_euler(w: &WeightedProjectiveSpace) -> Rational {
    w.weights.iter().map(|&l| Rational::recip_of(l)).sum()
}

/// `ℂP¹[λ₀, λ₁]` as the `(λ₀, λ₁)`-football.
pub fn wps_football(w: &WeightedProjectiveSpace) -> Result<Signature, WpsError> {
    if w.weights.len() != 2 {
        return Err(WpsError::WrongDimension(w.weights.len()));
    }
    let cones: Vec<u32> = w.weights.iter().copied().filter(|&l| l > 1).collect();
    Ok(Signature::sphere(&cones).expect("orders are at least 2"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::euler_closed_form;
    use proptest::prelude::*;

    fn wps(w: &[u32]) -> WeightedProjectiveSpace {
        WeightedProjectiveSpace::new(w.to_vec()).unwrap()
    }

    fn singular_sets(w: &[u32]) -> Vec<(Vec<usize>, u32)> {
        wps_strata(&wps(w)).singular().map(|s| (s.indices.clone(), s.gcd)).collect()
    }

    #[test]
    fn listed_strata() {
        assert!(singular_sets(&[1, 1]).is_empty());
        assert_eq!(singular_sets(&[1, 2, 2]), vec![(vec![1], 2), (vec![2], 2), (vec![1, 2], 2)]);
        assert_eq!(singular_sets(&[1, 2, 3]), vec![(vec![1], 2), (vec![2], 3)]);
        let p = wps_strata(&wps(&[1, 2, 3]));
        assert_eq!(p.strata.len(), 7);
        assert_eq!(p.get(&[1, 2]).unwrap().gcd, 1);
        assert_eq!(p.get(&[1]).unwrap().local_group(), "Z2");
    }

    #[test]
    fn rejects_bad_weights() {
        assert_eq!(WeightedProjectiveSpace::new(vec![2, 4]), Err(WpsError::NotReduced(2)));
        assert_eq!(WeightedProjectiveSpace::new(vec![3]), Err(WpsError::TooFewWeights));
        assert_eq!(WeightedProjectiveSpace::new(vec![0, 1]), Err(WpsError::NonPositiveWeight));
        assert_eq!(WeightedProjectiveSpace::new(vec![1; 18]), Err(WpsError::TooManyWeights));
        assert!(serde_json::from_str::<WeightedProjectiveSpace>("[6, 9]").is_err());
    }

    #[test]
    fn chart_groups_and_footballs() {
        assert_eq!(wps_chart_groups(&wps(&[1, 1])), vec![1, 1]);
        assert_eq!(wps_chart_groups(&wps(&[2, 3])), vec![2, 3]);
        assert_eq!(wps_chart_groups(&wps(&[1, 2, 3])), vec![1, 2, 3]);
        assert_eq!(wps_football(&wps(&[1, 1])).unwrap().to_string(), "O0()");
        assert_eq!(wps_football(&wps(&[3, 1])).unwrap().to_string(), "O0(3)");
        assert_eq!(wps_football(&wps(&[2, 3])).unwrap().to_string(), "O0(3,2)");
        assert_eq!(wps_football(&wps(&[1, 2, 3])), Err(WpsError::WrongDimension(3)));
    }

    #[test]
    fn euler_values() {
        for n in 1..=6 {
            assert_eq!(wps_euler(&wps(&vec![1; n + 1])), (n + 1) as i64);
        }
        assert_eq!(wps_euler(&wps(&[2, 3])), Rational::new(5, 6));
        assert_eq!(wps_euler(&wps(&[1, 2, 2])), 2);
    }

    /// χ^orb as Σ χ_c(open stratum) / l. The open stratum of a coordinate
    /// subspace `ℂP(I)` is the part with every coordinate in `I` nonzero,
    /// a torus quotient, so its χ_c is 1 for a point and 0 otherwise; the
    /// value comes from Möbius inversion of χ(ℂP^{|I|-1}) = |I|.
    fn stratified_oracle(w: &[u32]) -> Rational {
        let p = wps_strata(&wps(w));
        let mut total = Rational::ZERO;
        for s in &p.strata {
            // χ_c(open) = Σ_{J ⊆ I} (-1)^{|I|-|J|} |J|
            let k = s.indices.len() as i64;
            let binom = |n: i64, r: i64| -> i64 { (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
            let chi_c: i64 = (1..=k).map(|j| (-1i64).pow((k - j) as u32) * binom(k, j) * j).sum();
            total += Rational::new(chi_c, i64::from(s.gcd));
        }
        total
    }

    #[test]
    fn euler_matches_stratified_count() {
        for w in [[1u32, 1, 1], [1, 2, 2], [1, 2, 3], [2, 3, 5], [1, 1, 4], [4, 6, 9]] {
            assert_eq!(wps_euler(&wps(&w)), stratified_oracle(&w), "{w:?}");
        }
        for a in 1..=12u32 {
            for b in 1..=12u32 {
                if a.gcd(&b) == 1 {
                    assert_eq!(wps_euler(&wps(&[a, b])), stratified_oracle(&[a, b]));
                }
            }
        }
    }

    #[test]
    fn football_consistency() {
        for a in 1..=20u32 {
            for b in 1..=20u32 {
                if a.gcd(&b) == 1 {
                    let w = wps(&[a, b]);
                    assert_eq!(wps_euler(&w), euler_closed_form(&wps_football(&w).unwrap()));
                }
            }
        }
    }

    fn reduced_weights() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(1u32..=12, 2..=6).prop_filter("gcd 1", |w| w.iter().fold(0, |a: u32, x| a.gcd(x)) == 1)
    }

    proptest! {
        #[test]
        fn poset_coherence(w in reduced_weights()) {
            let p = wps_strata(&wps(&w));
            let full: Vec<usize> = (0..w.len()).collect();
            prop_assert_eq!(p.get(&full).unwrap().gcd, 1);
            for a in &p.strata {
                for b in &p.strata {
                    let mut union: Vec<usize> = a.indices.iter().chain(&b.indices).copied().collect();
                    union.sort_unstable();
                    union.dedup();
                    let u = p.get(&union).unwrap();
                    prop_assert_eq!(a.gcd.gcd(&b.gcd) % u.gcd, 0);
                    if b.indices.iter().all(|i| a.indices.contains(i)) {
                        prop_assert_eq!(b.gcd % a.gcd, 0);
                    }
                }
            }
        }

        #[test]
        fn euler_bounds(w in reduced_weights()) {
            let chi = wps_euler(&wps(&w));
            let n1 = w.len() as i64;
            let max = i64::from(*w.iter().max().unwrap());
            prop_assert!(chi >= Rational::new(n1, max));
            prop_assert!(chi <= n1);
            let all_one = w.iter().all(|&l| l == 1);
            prop_assert_eq!(chi == n1, all_one);
            prop_assert_eq!(chi == Rational::new(n1, max), w.iter().all(|&l| i64::from(l) == max));
        }
    }
}
