//! Exhaustive enumeration and exact counting of trees with a given outdegree
//! multiset. These are the ground truth the sampler is checked against.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::degree::{is_well_formed, Charge, DegreeMultiset, DegreeSequence};
use crate::error::{Error, Result};
use crate::sampler::{find_rotation_point, rotate};

/// Exact, arbitrary-precision tree count.
pub type TreeCount = BigUint;

/// Largest node count the exhaustive routines accept unless told otherwise.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 10;

fn check_bound(m: &DegreeMultiset, bound: usize) -> Result<()> {
    if m.total_nodes() > bound {
        return Err(Error::TooLarge {
            nodes: m.total_nodes(),
            bound,
        });
    }
    Ok(())
}

/// Distinct permutations of a multiset in lexicographic order, starting from
/// the sorted arrangement.
#[derive(Debug, Clone)]
pub struct DistinctPermutations {
    current: Vec<usize>,
    done: bool,
}

impl DistinctPermutations {
    pub fn new(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        DistinctPermutations {
            current: items,
            done: false,
        }
    }
}

impl Iterator for DistinctPermutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let v = &mut self.current;
        // Rightmost ascent, then swap with the rightmost larger element and
        // reverse the suffix.
        match (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
            None => self.done = true,
            Some(i) => {
                let j = (i..v.len())
                    .rev()
                    .find(|&j| v[j] > v[i - 1])
                    .expect("ascent");
                v.swap(i - 1, j);
                v[i..].reverse();
            }
        }
        Some(out)
    }
}

pub fn enumerate_trees(m: &DegreeMultiset) -> Result<BTreeSet<DegreeSequence>> {
    enumerate_trees_bounded(m, DEFAULT_EXHAUSTIVE_BOUND)
}

/// All distinct prefix codes using exactly the degrees in `m`.
pub fn enumerate_trees_bounded(
    m: &DegreeMultiset,
    bound: usize,
) -> Result<BTreeSet<DegreeSequence>> {
    check_bound(m, bound)?;
    Ok(DistinctPermutations::new(m.to_sorted_sequence().into_vec())
        .filter(|p| is_well_formed(p))
        .map(DegreeSequence::new)
        .collect())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Number of distinct arrangements of the multiset: `n! / Π m_d!`.
pub fn distinct_permutation_count(m: &DegreeMultiset) -> BigUint {
    let denom = m
        .iter()
        .fold(BigUint::one(), |acc, (_, mult)| acc * factorial(mult));
    factorial(m.total_nodes()) / denom
}

/// Exact tree count: one in `n` distinct arrangements is a prefix code.
pub fn count_trees(m: &DegreeMultiset) -> Result<TreeCount> {
    let charge = m.charge()?;
    if charge != Charge::ONE {
        return Err(Error::NotConstructible { charge: charge.0 });
    }
    let arrangements = distinct_permutation_count(m);
    let n = BigUint::from(m.total_nodes());
    if !(&arrangements % &n).is_zero() {
        return Err(Error::Invariant(
            "arrangement count not divisible by node count",
        ));
    }
    Ok(arrangements / n)
}

/// `(2n)! / (n! (n+1)!)`.
pub fn catalan(n: usize) -> TreeCount {
    factorial(2 * n) / (factorial(n) * factorial(n + 1))
}

/// Leaves needed to complete `internal` binary nodes into one tree, solving
/// `charge(binary nodes) + leaves = 1`.
pub fn binary_leaf_count(internal: u64) -> u128 {
    let binary_charge = -(internal as i128);
    (1 - binary_charge) as u128
}

/// Visits every labeled ordering of the expanded multiset (all `n!`
/// arrangements of positions, so equal degrees are told apart), using Heap's
/// algorithm.
pub fn for_each_labeled_ordering<F>(m: &DegreeMultiset, bound: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]),
{
    check_bound(m, bound)?;
    let mut a = m.to_sorted_sequence().into_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(())
}

/// Applies the deterministic scan-and-rotate correction to every labeled
/// ordering and tallies the resulting prefix codes.
pub fn labeled_rotation_tally(
    m: &DegreeMultiset,
    bound: usize,
) -> Result<BTreeMap<DegreeSequence, u64>> {
    let charge = m.charge()?;
    if charge != Charge::ONE {
        return Err(Error::NotConstructible { charge: charge.0 });
    }
    let mut tally = BTreeMap::new();
    let mut failure = None;
    for_each_labeled_ordering(m, bound, |s| {
        if failure.is_some() {
            return;
        }
        match find_rotation_point(s).and_then(|k| rotate(s, k)) {
            Ok(code) => *tally.entry(code).or_insert(0) += 1,
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(tally),
    }
}

/// Number of labeled orderings that are already prefix codes.
pub fn well_formed_labeled_count(m: &DegreeMultiset, bound: usize) -> Result<u64> {
    let mut count = 0u64;
    for_each_labeled_ordering(m, bound, |s| {
        if is_well_formed(s) {
            count += 1;
        }
    })?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(pairs: &[(usize, usize)]) -> DegreeMultiset {
        DegreeMultiset::from_counts(pairs.iter().copied()).unwrap()
    }

    fn codes(set: &BTreeSet<DegreeSequence>) -> Vec<Vec<usize>> {
        set.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn distinct_permutations_of_small_multiset() {
        let all: Vec<_> = DistinctPermutations::new(vec![2, 0, 0]).collect();
        assert_eq!(all, vec![vec![0, 0, 2], vec![0, 2, 0], vec![2, 0, 0]]);
        assert_eq!(DistinctPermutations::new(vec![0, 0, 0, 2, 2]).count(), 10);
        assert_eq!(DistinctPermutations::new(vec![]).count(), 1);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            codes(&enumerate_trees(&ms(&[(0, 2), (2, 1)])).unwrap()),
            vec![vec![2, 0, 0]]
        );
        assert_eq!(
            codes(&enumerate_trees(&ms(&[(0, 3), (2, 2)])).unwrap()),
            vec![vec![2, 0, 2, 0, 0], vec![2, 2, 0, 0, 0]]
        );
        assert_eq!(
            codes(&enumerate_trees(&ms(&[(0, 1), (1, 1)])).unwrap()),
            vec![vec![1, 0]]
        );
    }

    #[test]
    fn enumerate_respects_bound() {
        let m = ms(&[(0, 6), (1, 5)]);
        assert_eq!(
            enumerate_trees(&m),
            Err(Error::TooLarge {
                nodes: 11,
                bound: 10
            })
        );
        assert_eq!(enumerate_trees_bounded(&m, 11).unwrap().len(), 0);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_trees(&ms(&[(0, 1)])).unwrap(), BigUint::from(1u8));
        let fig = ms(&[(0, 4), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(enumerate_trees(&fig).unwrap().len(), 30);
        assert_eq!(count_trees(&fig).unwrap(), BigUint::from(30u8));
        assert_eq!(
            count_trees(&ms(&[(0, 1), (2, 1)])),
            Err(Error::NotConstructible { charge: 0 })
        );
    }

    #[test]
    fn catalan_examples() {
        let got: Vec<BigUint> = (0..=10).map(catalan).collect();
        let want: Vec<BigUint> = [1u32, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]
            .into_iter()
            .map(BigUint::from)
            .collect();
        assert_eq!(got, want);
        assert_eq!(enumerate_trees(&ms(&[(0, 4), (2, 3)])).unwrap().len(), 5);
        assert_eq!(enumerate_trees(&ms(&[(0, 5), (2, 4)])).unwrap().len(), 14);
        // C(60, 30) / 31
        assert_eq!(catalan(30).to_string(), "3814986502092304");
        for n in 0..=20 {
            assert_eq!(catalan(n), count_trees(&ms(&[(0, n + 1), (2, n)])).unwrap());
        }
    }

    #[test]
    fn leaf_count_examples() {
        assert_eq!(binary_leaf_count(0), 1);
        assert_eq!(binary_leaf_count(3), 4);
        assert_eq!(binary_leaf_count(10), 11);
        assert!(ms(&[(0, 11), (2, 10)]).is_constructible());
        assert!(!ms(&[(0, 10), (2, 10)]).is_constructible());
        assert!(!ms(&[(0, 12), (2, 10)]).is_constructible());
        assert_eq!(binary_leaf_count(u64::MAX), u64::MAX as u128 + 1);
    }

    #[test]
    fn heap_visits_n_factorial_orderings() {
        let mut seen = 0;
        for_each_labeled_ordering(&ms(&[(0, 3), (1, 1), (2, 1)]), 10, |_| seen += 1).unwrap();
        assert_eq!(seen, 120);
    }

    #[test]
    fn rotation_tally_small() {
        let m = ms(&[(0, 3), (2, 2)]);
        let tally = labeled_rotation_tally(&m, 10).unwrap();
        // 5 nodes, 3! * 2! duplicate labelings per code.
        assert_eq!(tally.len(), 2);
        assert!(tally.values().all(|&c| c == 5 * 6 * 2));
        assert_eq!(well_formed_labeled_count(&m, 10).unwrap(), 24);
    }
}
