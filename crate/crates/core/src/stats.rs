//! Empirical uniformity check of the sampler over an enumerable outcome space.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::degree::{DegreeMultiset, DegreeSequence};
use crate::error::{Error, Result};
use crate::oracle::enumerate_trees_bounded;
use crate::random::RandomSource;
use crate::sampler::sample_tree;

/// Observed frequencies of every possible tree together with Pearson's χ²
/// against the uniform distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyReport {
    pub outcome_counts: BTreeMap<DegreeSequence, u64>,
    pub total_samples: u64,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub seed: Option<u64>,
}

#[derive(Serialize)]
struct OutcomeRecord<'a> {
    code: &'a DegreeSequence,
    count: u64,
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    seed: Option<u64>,
    samples: u64,
    df: usize,
    chi_square: f64,
    outcomes: Vec<OutcomeRecord<'a>>,
}

impl FrequencyReport {
    /// Compact JSON with keys `seed`, `samples`, `df`, `chi_square` and
    /// `outcomes` (`[{"code": [...], "count": n}, ...]` in code order).
    pub fn to_json(&self) -> String {
        let record = ReportRecord {
            seed: self.seed,
            samples: self.total_samples,
            df: self.degrees_of_freedom,
            chi_square: self.chi_square,
            outcomes: self
                .outcome_counts
                .iter()
                .map(|(code, &count)| OutcomeRecord { code, count })
                .collect(),
        };
        serde_json::to_string(&record).expect("report serializes")
    }
}

/// Pearson statistic of `counts` against equal expected frequencies.
pub fn uniform_chi_square(counts: &[u64]) -> f64 {
    if counts.len() <= 1 {
        return 0.0;
    }
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// Draws `samples` trees and tabulates them over the full outcome space,
/// zero-count outcomes included.
pub fn uniformity_report<R: RandomSource + ?Sized>(
    m: &DegreeMultiset,
    samples: u64,
    bound: usize,
    rng: &mut R,
) -> Result<FrequencyReport> {
    if !m.is_constructible() {
        return Err(Error::NotConstructible {
            charge: m.charge()?.value(),
        });
    }
    let outcomes = enumerate_trees_bounded(m, bound)?;
    let mut counts: BTreeMap<DegreeSequence, u64> =
        outcomes.into_iter().map(|code| (code, 0)).collect();
    for _ in 0..samples {
        let code = sample_tree(m, rng)?;
        match counts.get_mut(&code) {
            Some(c) => *c += 1,
            None => return Err(Error::Invariant("sampled tree outside the enumerated set")),
        }
    }
    let observed: Vec<u64> = counts.values().copied().collect();
    Ok(FrequencyReport {
        chi_square: uniform_chi_square(&observed),
        degrees_of_freedom: counts.len().saturating_sub(1),
        outcome_counts: counts,
        total_samples: samples,
        seed: rng.seed(),
    })
}
