//! Shuffle-then-rotate sampling of uniformly random ordered trees.
//!
//! A uniformly shuffled degree sequence with charge 1 is a rotation of exactly
//! one prefix code, and every prefix code has the same number of rotations.
//! Rotating the shuffle into its well-formed position therefore picks each
//! tree with equal probability, in linear time.
//!
//! Index convention: rotation points are 1-based counts `k` of leading
//! symbols, matching `rotate(s, k) = s[k..] ++ s[..k]` in 0-based slice
//! notation. The last symbol of the moved prefix sits at 0-based index `k − 1`.

use crate::degree::{Charge, DegreeMultiset, DegreeSequence};
use crate::error::{Error, Result};
use crate::random::RandomSource;

/// Fisher-Yates shuffle in place. Every ordering of positions is equally
/// likely for an ideal source; uses `len − 1` draws.
pub fn fisher_yates_shuffle<T, R: RandomSource + ?Sized>(items: &mut [T], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = rng.next_below(i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

/// Value-level shuffle of a degree sequence.
pub fn shuffled<R: RandomSource + ?Sized>(s: &[usize], rng: &mut R) -> DegreeSequence {
    let mut v = s.to_vec();
    fisher_yates_shuffle(&mut v, rng);
    DegreeSequence::new(v)
}

/// Loop state of the rotation-point scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanState {
    /// Charge accumulated since the last reset.
    pub running_charge: i64,
    /// 1-based position of the last reset; 0 if none yet.
    pub last_reset_index: usize,
}

impl ScanState {
    /// Feeds the symbol at 1-based `position`.
    pub fn step(&mut self, position: usize, degree: usize) -> Result<()> {
        let next = Charge(self.running_charge).checked_add(Charge::of_degree(degree)?)?;
        if next == Charge::ONE {
            self.running_charge = 0;
            self.last_reset_index = position;
        } else {
            self.running_charge = next.0;
        }
        Ok(())
    }
}

/// Largest 1-based `k` at which the reset-on-1 running charge reaches 1.
pub fn find_rotation_point(s: &[usize]) -> Result<usize> {
    rotation_point_of(s.iter().copied())
}

fn rotation_point_of(degrees: impl Iterator<Item = usize>) -> Result<usize> {
    let mut scan = ScanState::default();
    let mut total = Charge::ZERO;
    for (i, d) in degrees.enumerate() {
        scan.step(i + 1, d)?;
        total = total.checked_add(Charge::of_degree(d)?)?;
    }
    if total != Charge::ONE {
        return Err(Error::ChargeNotOne { charge: total.0 });
    }
    if scan.last_reset_index == 0 {
        return Err(Error::Invariant(
            "charge-1 sequence has no complete leading expression",
        ));
    }
    Ok(scan.last_reset_index)
}

/// `s[k..] ++ s[..k]`: moves the first `k` symbols to the back.
pub fn rotate(s: &[usize], k: usize) -> Result<DegreeSequence> {
    if k > s.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: s.len(),
        });
    }
    let mut v = Vec::with_capacity(s.len());
    v.extend_from_slice(&s[k..]);
    v.extend_from_slice(&s[..k]);
    Ok(DegreeSequence::new(v))
}

/// Rotates a charge-1 sequence into the unique well-formed rotation, in place.
pub fn correct_in_place(s: &mut [usize]) -> Result<()> {
    let k = find_rotation_point(s)?;
    s.rotate_left(k);
    Ok(())
}

/// Draws a uniformly random tree whose outdegree multiset is `m`, returned
/// as its prefix code.
///
/// The multiset is expanded in ascending degree order before shuffling, so the
/// result depends only on the multiset and the random source.
pub fn sample_tree<R: RandomSource + ?Sized>(
    m: &DegreeMultiset,
    rng: &mut R,
) -> Result<DegreeSequence> {
    let charge = m.charge()?;
    if charge != Charge::ONE {
        return Err(Error::NotConstructible { charge: charge.0 });
    }
    // Shuffle indices into the ascending table of distinct degrees rather
    // than the degrees themselves. Index order matches degree order, so the
    // permutation and result are the same, with a smaller working set.
    let table: Vec<usize> = m.iter().map(|(d, _)| d).collect();
    let counts: Vec<usize> = m.iter().map(|(_, c)| c).collect();
    if table.len() <= 1 << 8 {
        sample_by_class::<u8, R>(&table, &counts, rng)
    } else if table.len() <= 1 << 16 {
        sample_by_class::<u16, R>(&table, &counts, rng)
    } else {
        let mut v = m.to_sorted_sequence().into_vec();
        fisher_yates_shuffle(&mut v, rng);
        correct_in_place(&mut v)?;
        Ok(DegreeSequence::new(v))
    }
}

fn sample_by_class<C, R>(table: &[usize], counts: &[usize], rng: &mut R) -> Result<DegreeSequence>
where
    C: Copy + TryFrom<usize> + Into<usize>,
    R: RandomSource + ?Sized,
{
    let total: usize = counts.iter().sum();
    let mut classes: Vec<C> = Vec::with_capacity(total);
    for (i, &c) in counts.iter().enumerate() {
        let class = C::try_from(i).map_err(|_| Error::Invariant("degree class out of range"))?;
        classes.extend(std::iter::repeat_n(class, c));
    }
    fisher_yates_shuffle(&mut classes, rng);
    let k = rotation_point_of(classes.iter().map(|&c| table[c.into()]))?;
    let mut out = Vec::with_capacity(total);
    out.extend(classes[k..].iter().map(|&c| table[c.into()]));
    out.extend(classes[..k].iter().map(|&c| table[c.into()]));
    Ok(DegreeSequence::new(out))
}
