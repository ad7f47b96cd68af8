//! The column matroid of a form collection.
//!
//! Column indices are multiplicity-expanded and zero-based: copy `c` of the
//! collection is column `c` of [`FormCollection::coefficient_matrix`].

mod tutte;

use itertools::Itertools;
use serde::Serialize;

use crate::combinatorics::mask_members;
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::forms::FormCollection;

pub use tutte::{tutte_polynomial, tutte_polynomial_subset_sum, tutte_shifted_coeffs, TutteEngine, TuttePoly};

/// `d[r - 1] = d_r` for `r = 1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HammingWeights {
    pub d: Vec<usize>,
}

impl HammingWeights {
    /// `d_r` for `1 <= r <= k`.
    pub fn get(&self, r: usize) -> usize {
        self.d[r - 1]
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }
}

/// A maximal set of groups spanning a 2-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub groups: Vec<usize>,
    pub size: usize,
}

/// Rank of a set of groups.
pub fn group_rank<F: Field>(sigma: &FormCollection<F>, groups: &[usize]) -> usize {
    if groups.is_empty() {
        return 0;
    }
    sigma.field().rank(&sigma.group_matrix().select_columns(groups))
}

/// Rank of the selected multiplicity-expanded columns.
pub fn subset_rank<F: Field>(sigma: &FormCollection<F>, subset: &[usize]) -> usize {
    let owner = sigma.column_groups();
    let groups: Vec<usize> = subset.iter().map(|&c| owner[c]).sorted().dedup().collect();
    group_rank(sigma, &groups)
}

/// Ranks of all column subsets, indexed by bit mask.
#[derive(Clone, Debug)]
pub struct RankTable {
    n: usize,
    owner: Vec<usize>,
    group_ranks: Vec<u8>,
}

impl RankTable {
    pub const MAX_GROUPS: usize = 20;

    pub fn new<F: Field>(sigma: &FormCollection<F>) -> Self {
        let t = sigma.t();
        assert!(t <= Self::MAX_GROUPS, "rank table limited to {} groups", Self::MAX_GROUPS);
        let group_ranks = (0u64..(1u64 << t))
            .map(|gm| group_rank(sigma, &mask_members(gm).collect::<Vec<_>>()) as u8)
            .collect();
        RankTable { n: sigma.n(), owner: sigma.column_groups(), group_ranks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self, columns: u64) -> usize {
        let gm = mask_members(columns).fold(0u64, |acc, c| acc | (1 << self.owner[c]));
        self.group_ranks[gm as usize] as usize
    }
}

/// All minimal dependent column sets with at most `max_len` elements, by size then lexicographically.
pub fn circuits_up_to<F: Field>(sigma: &FormCollection<F>, max_len: usize) -> Vec<Vec<usize>> {
    let n = sigma.n();
    let table = RankTable::new(sigma);
    let mut out = Vec::new();
    for s in 2..=max_len.min(n) {
        for set in (0..n).combinations(s) {
            let mask = set.iter().fold(0u64, |acc, &c| acc | (1 << c));
            if table.rank(mask) != s - 1 {
                continue;
            }
            if set.iter().all(|&c| table.rank(mask & !(1 << c)) == s - 1) {
                out.push(set);
            }
        }
    }
    out
}

/// Groups lying in the span of `basis`.
fn closure<F: Field>(sigma: &FormCollection<F>, basis: &[usize]) -> Vec<usize> {
    let r = group_rank(sigma, basis);
    (0..sigma.t())
        .filter(|g| {
            if basis.contains(g) {
                return true;
            }
            let mut ext = basis.to_vec();
            ext.push(*g);
            group_rank(sigma, &ext) == r
        })
        .collect()
}

fn weight<F: Field>(sigma: &FormCollection<F>, groups: &[usize]) -> usize {
    groups.iter().map(|&g| sigma.groups()[g].mult).sum()
}

/// Rank-2 flats with their sizes counted with multiplicity.
pub fn rank2_flats<F: Field>(sigma: &FormCollection<F>) -> Result<Vec<Flat>> {
    if sigma.rank() < 2 {
        return Err(Error::Precondition("rank-2 flats need effective rank at least 2".into()));
    }
    let mut flats: Vec<Flat> = Vec::new();
    for (i, j) in (0..sigma.t()).tuple_combinations() {
        if flats.iter().any(|f| f.groups.contains(&i) && f.groups.contains(&j)) {
            continue;
        }
        let groups = closure(sigma, &[i, j]);
        let size = weight(sigma, &groups);
        flats.push(Flat { groups, size });
    }
    Ok(flats)
}

/// Maximum number of columns spanning a space of dimension exactly `j`.
fn max_columns_of_rank<F: Field>(sigma: &FormCollection<F>, j: usize) -> usize {
    if j == 0 {
        return 0;
    }
    (0..sigma.t())
        .combinations(j)
        .filter(|basis| group_rank(sigma, basis) == j)
        .map(|basis| weight(sigma, &closure(sigma, &basis)))
        .max()
        .unwrap_or(0)
}

/// Generalized Hamming weights `d_r = n - M_{k-r}`, where `M_j` is the largest
/// flat of rank `j` counted with multiplicity.
pub fn hamming_weights<F: Field>(sigma: &FormCollection<F>) -> Result<HammingWeights> {
    let k = sigma.k();
    if sigma.rank() != k {
        return Err(Error::Precondition(format!(
            "hamming weights need full rank, got rank {} in {k} variables",
            sigma.rank()
        )));
    }
    let n = sigma.n();
    let d = (1..=k).map(|r| n - max_columns_of_rank(sigma, k - r)).collect();
    Ok(HammingWeights { d })
}

/// Height of `I_a` from the Hamming weights of the essentialized collection.
pub fn height_of_fold_ideal<F: Field>(sigma: &FormCollection<F>, a: usize) -> Result<usize> {
    let n = sigma.n();
    if a == 0 || a > n {
        return Err(Error::FoldOutOfRange { a, n });
    }
    let ess = sigma.essentialize();
    let hw = hamming_weights(&ess)?;
    Ok(height_from_weights(&hw, a))
}

/// `k - r` for the unique `r` with `d_r < a <= d_{r+1}`, reading `a <= d_1` as height `k`.
pub fn height_from_weights(hw: &HammingWeights, a: usize) -> usize {
    let r = hw.d.iter().take_while(|&&d| d < a).count();
    hw.k() - r
}

/// Whether every `h` columns are linearly independent.
pub fn every_subset_independent<F: Field>(sigma: &FormCollection<F>, h: usize) -> bool {
    if h <= 1 {
        return true;
    }
    if h > sigma.k() || sigma.max_multiplicity() > 1 {
        return false;
    }
    (0..sigma.t()).combinations(h).all(|s| group_rank(sigma, &s) == h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::*;

    #[test]
    fn subset_rank_examples() {
        // canonical columns: x1, x1, x3, x2, x2 + x3, x1 - x3, x1 + 2x2 + 5x3
        let c = example_tutte();
        assert_eq!(subset_rank(&c, &[0, 1]), 1);
        assert_eq!(subset_rank(&c, &[0, 1, 2, 5]), 2);
        assert_eq!(subset_rank(&c, &[0, 1, 3, 4]), 3);
        assert_eq!(subset_rank(&c, &[]), 0);
        assert_eq!(subset_rank(&c, &[0, 1, 2, 3, 4, 5, 6]), 3);
    }

    #[test]
    fn circuit_examples() {
        let v = example_veronese();
        assert_eq!(circuits_up_to(&v, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![3, 4]]);

        // canonical columns: x1, x1, x3, x2, x2 + x3, x1 - x3, x1 + 2x2 + 5x3
        let c = example_tutte();
        assert_eq!(
            circuits_up_to(&c, 3),
            vec![vec![0, 1], vec![0, 2, 5], vec![1, 2, 5], vec![2, 3, 4]]
        );

        let generic = rational_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert!(circuits_up_to(&generic, 2).is_empty());
        assert_eq!(circuits_up_to(&generic, 4), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn circuits_are_minimal_dependent() {
        let c = example_tutte();
        for j in circuits_up_to(&c, 7) {
            assert_eq!(subset_rank(&c, &j), j.len() - 1);
            for skip in &j {
                let rest: Vec<usize> = j.iter().copied().filter(|x| x != skip).collect();
                assert_eq!(subset_rank(&c, &rest), j.len() - 1);
            }
        }
    }

    #[test]
    fn flat_examples() {
        let generic = rational_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let flats = rank2_flats(&generic).unwrap();
        assert_eq!(flats.len(), 6);
        assert!(flats.iter().all(|f| f.size == 2));

        let pencil = rational_forms(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let flats = rank2_flats(&pencil).unwrap();
        assert_eq!(flats, vec![Flat { groups: vec![0, 1, 2], size: 3 }]);

        assert!(rank2_flats(&rational_forms(2, &[&[1, 0], &[2, 0]])).is_err());
    }

    #[test]
    fn hamming_examples() {
        let c = example_tutte();
        assert_eq!(hamming_weights(&c).unwrap().d, vec![3, 5, 7]);
        assert_eq!(hamming_weights(&rational_forms(2, &[&[1, 0], &[0, 1]])).unwrap().d, vec![1, 2]);
        assert!(hamming_weights(&rational_forms(3, &[&[1, 0, 0], &[0, 1, 0]])).is_err());
    }

    #[test]
    fn height_examples() {
        let c = example_tutte();
        assert_eq!(height_of_fold_ideal(&c, 4).unwrap(), 2);
        assert_eq!(height_of_fold_ideal(&c, 6).unwrap(), 1);
        assert_eq!(height_of_fold_ideal(&c, 1).unwrap(), 3);
        assert_eq!(height_of_fold_ideal(&c, 3).unwrap(), 3);
        assert_eq!(height_of_fold_ideal(&c, 7).unwrap(), 1);
        assert!(height_of_fold_ideal(&c, 8).is_err());
        assert!(height_of_fold_ideal(&c, 0).is_err());
        let inert = rational_forms(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(height_of_fold_ideal(&inert, 1).unwrap(), 2);
    }

    #[test]
    fn genericity() {
        let generic = rational_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert!(every_subset_independent(&generic, 3));
        assert!(!every_subset_independent(&example_tutte(), 2));
        assert!(every_subset_independent(&example_tutte(), 1));
    }
}
