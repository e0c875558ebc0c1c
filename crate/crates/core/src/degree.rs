//! Degree sequences, degree multisets and the charge function.
//!
//! The charge of a collection of nodes is `Σ (1 − outdegree)`. A multiset of
//! outdegrees can be assembled into a single ordered tree exactly when its
//! charge is 1, and a sequence is a prefix code (Polish notation) of a tree
//! exactly when its charge is 1 and no proper prefix has positive charge.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Signed charge value. Arithmetic on it is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Charge(pub i64);

impl Charge {
    pub const ZERO: Charge = Charge(0);
    pub const ONE: Charge = Charge(1);

    pub fn value(self) -> i64 {
        self.0
    }

    /// Charge contributed by one node of the given outdegree.
    pub fn of_degree(degree: usize) -> Result<Charge> {
        let d = i64::try_from(degree).map_err(|_| Error::ChargeOverflow)?;
        1i64.checked_sub(d).map(Charge).ok_or(Error::ChargeOverflow)
    }

    pub fn checked_add(self, other: Charge) -> Result<Charge> {
        self.0
            .checked_add(other.0)
            .map(Charge)
            .ok_or(Error::ChargeOverflow)
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An ordered sequence of outdegrees. When well-formed it is the preorder
/// (prefix) code of an ordered tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Self {
        DegreeSequence(degrees)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn charge(&self) -> Result<Charge> {
        charge(&self.0)
    }

    pub fn is_well_formed(&self) -> bool {
        is_well_formed(&self.0)
    }

    /// The multiset of degrees occurring in this sequence, if non-empty.
    pub fn multiset(&self) -> Result<DegreeMultiset> {
        DegreeMultiset::from_degrees(&self.0)
    }
}

impl Deref for DegreeSequence {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for DegreeSequence {
    fn from(v: Vec<usize>) -> Self {
        DegreeSequence(v)
    }
}

impl From<&[usize]> for DegreeSequence {
    fn from(v: &[usize]) -> Self {
        DegreeSequence(v.to_vec())
    }
}

/// Space-separated degrees, e.g. `3 1 0 2 0 0 0`.
impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Unordered bag of outdegrees. Every stored multiplicity is at least 1 and
/// the bag holds at least one node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeMultiset {
    entries: BTreeMap<usize, usize>,
    total_nodes: usize,
}

impl DegreeMultiset {
    /// Builds a multiset from `(degree, multiplicity)` pairs. Repeated degrees
    /// accumulate and zero multiplicities are dropped.
    pub fn from_counts<I>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut entries = BTreeMap::new();
        let mut total_nodes = 0usize;
        for (degree, mult) in counts {
            if mult == 0 {
                continue;
            }
            let slot = entries.entry(degree).or_insert(0usize);
            *slot = slot
                .checked_add(mult)
                .ok_or_else(|| Error::InvalidSpec("multiplicity overflow".into()))?;
            total_nodes = total_nodes
                .checked_add(mult)
                .ok_or_else(|| Error::InvalidSpec("node count overflow".into()))?;
        }
        if total_nodes == 0 {
            return Err(Error::EmptyMultiset);
        }
        Ok(DegreeMultiset {
            entries,
            total_nodes,
        })
    }

    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        Self::from_counts(degrees.iter().map(|&d| (d, 1)))
    }

    pub fn total_nodes(&self) -> usize {
        self.total_nodes
    }

    pub fn multiplicity(&self, degree: usize) -> usize {
        self.entries.get(&degree).copied().unwrap_or(0)
    }

    /// `(degree, multiplicity)` pairs in ascending degree order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().map(|(&d, &m)| (d, m))
    }

    pub fn max_degree(&self) -> usize {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    /// Expands into the canonical sequence: every node listed, ascending by degree.
    pub fn to_sorted_sequence(&self) -> DegreeSequence {
        let mut out = Vec::with_capacity(self.total_nodes);
        for (&d, &m) in &self.entries {
            out.extend(std::iter::repeat_n(d, m));
        }
        DegreeSequence(out)
    }

    pub fn charge(&self) -> Result<Charge> {
        self.entries.iter().try_fold(Charge::ZERO, |acc, (&d, &m)| {
            let m = i64::try_from(m).map_err(|_| Error::ChargeOverflow)?;
            let per_node = Charge::of_degree(d)?;
            let part = per_node.0.checked_mul(m).ok_or(Error::ChargeOverflow)?;
            acc.checked_add(Charge(part))
        })
    }

    pub fn is_constructible(&self) -> bool {
        is_constructible(self)
    }
}

/// `d:m` pairs joined by commas, ascending by degree.
impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (d, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}:{m}")?;
        }
        Ok(())
    }
}

/// Shape of a charge-1 sequence split as `u ++ w`, where `u` is the longest
/// prefix made of back-to-back complete expressions and `w` is the deficient tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentDecomposition {
    pub complete_prefix_length: usize,
    pub complete_expression_count: usize,
    pub tail_charge: Charge,
}

pub fn charge(s: &[usize]) -> Result<Charge> {
    s.iter().try_fold(Charge::ZERO, |acc, &d| {
        acc.checked_add(Charge::of_degree(d)?)
    })
}

/// Running charge of every prefix: element `i` is the charge of `s[..=i]`.
pub fn prefix_charges(s: &[usize]) -> Result<Vec<Charge>> {
    let mut acc = Charge::ZERO;
    s.iter()
        .map(|&d| {
            acc = acc.checked_add(Charge::of_degree(d)?)?;
            Ok(acc)
        })
        .collect()
}

/// A multiset builds a tree using all of its nodes iff its charge is 1.
pub fn is_constructible(m: &DegreeMultiset) -> bool {
    matches!(m.charge(), Ok(Charge::ONE))
}

/// Prefix-charge criterion: non-empty, total charge 1, every proper prefix
/// at most 0. Sequences whose charge overflows are never well-formed.
pub fn is_well_formed(s: &[usize]) -> bool {
    let Some((last, init)) = s.split_last() else {
        return false;
    };
    let mut acc = Charge::ZERO;
    for &d in init {
        acc = match Charge::of_degree(d).and_then(|c| acc.checked_add(c)) {
            Ok(c) => c,
            Err(_) => return false,
        };
        if acc.0 > 0 {
            return false;
        }
    }
    matches!(
        Charge::of_degree(*last).and_then(|c| acc.checked_add(c)),
        Ok(Charge::ONE)
    )
}

/// Splits a charge-1 sequence into its leading complete expressions and tail.
///
/// Since each symbol raises the running charge by at most one, the `j`-th
/// greedy expression ends where the prefix charge first reaches `j`. So the
/// expression count `h` is the maximum prefix charge and `u` ends at its first
/// occurrence.
pub fn decompose(s: &[usize]) -> Result<SegmentDecomposition> {
    let charges = prefix_charges(s)?;
    let total = charges.last().copied().unwrap_or(Charge::ZERO);
    if total != Charge::ONE {
        return Err(Error::ChargeNotOne { charge: total.0 });
    }
    let mut best = Charge::ZERO;
    let mut end = 0usize;
    for (i, &c) in charges.iter().enumerate() {
        if c > best {
            best = c;
            end = i + 1;
        }
    }
    let h = usize::try_from(best.0).map_err(|_| Error::Invariant("negative expression count"))?;
    Ok(SegmentDecomposition {
        complete_prefix_length: end,
        complete_expression_count: h,
        tail_charge: Charge(total.0 - best.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(pairs: &[(usize, usize)]) -> DegreeMultiset {
        DegreeMultiset::from_counts(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn charge_examples() {
        assert_eq!(charge(&[0]).unwrap(), Charge(1));
        assert_eq!(charge(&[0, 0, 0, 0, 1, 2, 3]).unwrap(), Charge(1));
        assert_eq!(charge(&[2, 0]).unwrap(), Charge(0));
        assert_eq!(charge(&[]).unwrap(), Charge(0));
    }

    #[test]
    fn charge_overflow_is_an_error() {
        assert_eq!(charge(&[usize::MAX]), Err(Error::ChargeOverflow));
        let big = i64::MAX as usize;
        assert_eq!(charge(&[big, big]), Err(Error::ChargeOverflow));
        assert!(!is_well_formed(&[usize::MAX, 0]));
    }

    #[test]
    fn constructibility_examples() {
        assert!(is_constructible(&ms(&[(0, 1)])));
        assert!(is_constructible(&ms(&[(0, 4), (1, 1), (2, 1), (3, 1)])));
        assert!(!is_constructible(&ms(&[(0, 1), (2, 1)])));
    }

    #[test]
    fn prefix_charge_examples() {
        let v = |s: &[usize]| -> Vec<i64> {
            prefix_charges(s)
                .unwrap()
                .into_iter()
                .map(Charge::value)
                .collect()
        };
        assert_eq!(v(&[2, 0, 0]), vec![-1, 0, 1]);
        assert_eq!(v(&[0]), vec![1]);
        assert_eq!(v(&[0, 2, 0]), vec![1, 0, 1]);
    }

    #[test]
    fn well_formed_examples() {
        assert!(is_well_formed(&[3, 1, 0, 2, 0, 0, 0]));
        assert!(is_well_formed(&[0]));
        assert!(!is_well_formed(&[0, 2, 0]));
        assert!(!is_well_formed(&[2, 0]));
        assert!(!is_well_formed(&[]));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&[0, 2, 0]).unwrap();
        assert_eq!(
            d,
            SegmentDecomposition {
                complete_prefix_length: 1,
                complete_expression_count: 1,
                tail_charge: Charge(0),
            }
        );
        let d = decompose(&[3, 1, 0, 2, 0, 0, 0]).unwrap();
        assert_eq!(
            (d.complete_prefix_length, d.complete_expression_count),
            (7, 1)
        );
        assert_eq!(d.tail_charge, Charge(0));
        let d = decompose(&[0, 0, 0, 0, 1, 2, 3]).unwrap();
        assert_eq!(
            (d.complete_prefix_length, d.complete_expression_count),
            (4, 4)
        );
        assert_eq!(d.tail_charge, Charge(-3));
    }

    #[test]
    fn decompose_rejects_wrong_charge() {
        assert_eq!(decompose(&[2, 0]), Err(Error::ChargeNotOne { charge: 0 }));
        assert_eq!(decompose(&[]), Err(Error::ChargeNotOne { charge: 0 }));
    }

    #[test]
    fn multiset_construction() {
        let m = ms(&[(3, 1), (0, 4), (2, 0), (1, 1), (2, 1)]);
        assert_eq!(m.total_nodes(), 7);
        assert_eq!(m.multiplicity(2), 1);
        assert_eq!(m.to_sorted_sequence().as_slice(), &[0, 0, 0, 0, 1, 2, 3]);
        assert_eq!(m.to_string(), "0:4,1:1,2:1,3:1");
        assert_eq!(
            DegreeMultiset::from_counts([(0, 0)]),
            Err(Error::EmptyMultiset)
        );
        assert_eq!(DegreeMultiset::from_degrees(&[]), Err(Error::EmptyMultiset));
    }

    #[test]
    fn multiset_charge_matches_sequence_charge() {
        let m = ms(&[(0, 4), (1, 1), (2, 1), (3, 1)]);
        assert_eq!(
            m.charge().unwrap(),
            charge(&m.to_sorted_sequence()).unwrap()
        );
    }
}
