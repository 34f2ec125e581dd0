use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::evaluator::{CocycleEvaluator, CocycleKind};
use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::BasisIndex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalityVerdict {
    LocalInWindow,
    BoundedAboveOnly,
    UnboundedInWindow,
}

/// First nonzero pair found at a level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelWitness {
    pub left: BasisIndex,
    pub right: BasisIndex,
    pub value: Rat,
}

/// Levels `n + m` at which a cocycle was seen to be nonzero.
///
/// Every statement holds only for the scanned window. A bound is reported
/// when the cocycle also vanishes on the guard level just past that end of
/// the window, which is evaluated but not listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityReport {
    pub window: (i64, i64),
    pub degree_range: (i64, i64),
    pub pairs_evaluated: usize,
    pub upper_bound: Option<i64>,
    pub lower_bound: Option<i64>,
    pub nonzero_levels: BTreeSet<i64>,
    pub verdict: LocalityVerdict,
    pub window_relative: bool,
    pub witnesses: BTreeMap<i64, LevelWitness>,
}

/// Canonical ordered pairs of `kind` at `level`, lexicographic in `(n, p, r)`.
pub fn level_pairs(kind: CocycleKind, level: i64, degree_range: (i64, i64), k: usize) -> Vec<(BasisIndex, BasisIndex)> {
    let mut out = Vec::new();
    for (wx, wy) in kind.pair_weights() {
        for n in degree_range.0..=degree_range.1 {
            let m = level - n;
            if m < degree_range.0 || m > degree_range.1 {
                continue;
            }
            for p in 1..=k {
                for r in 1..=k {
                    out.push((BasisIndex::new(wx, n, p), BasisIndex::new(wy, m, r)));
                }
            }
        }
    }
    out
}

/// Evaluate `g` on all pairs with level in `window` and degrees in
/// `degree_range`.
pub fn locality_scan(
    g: &CocycleEvaluator,
    window: (i64, i64),
    degree_range: (i64, i64),
) -> Result<LocalityReport, KncError> {
    if window.0 > window.1 || degree_range.0 > degree_range.1 {
        return Err(KncError::Invalid("empty scan window".into()));
    }
    let k = g.context().k();
    let pairs: Vec<(i64, BasisIndex, BasisIndex)> = (window.0 - 1..=window.1 + 1)
        .flat_map(|l| {
            level_pairs(g.kind(), l, degree_range, k)
                .into_iter()
                .map(move |(x, y)| (l, x, y))
        })
        .collect();
    let values: Vec<Rat> = pairs
        .par_iter()
        .map(|(_, x, y)| g.eval(*x, *y))
        .collect::<Result<_, _>>()?;
    let mut witnesses = BTreeMap::new();
    for ((l, x, y), v) in pairs.iter().zip(values) {
        if !v.is_zero() {
            witnesses.entry(*l).or_insert(LevelWitness {
                left: *x,
                right: *y,
                value: v,
            });
        }
    }
    let above = witnesses.remove(&(window.1 + 1)).is_some();
    let below = witnesses.remove(&(window.0 - 1)).is_some();
    let nonzero_levels: BTreeSet<i64> = witnesses.keys().copied().collect();
    let upper_bound = nonzero_levels.last().copied().filter(|_| !above);
    let lower_bound = nonzero_levels.first().copied().filter(|_| !below);
    let verdict = if nonzero_levels.is_empty() && !above && !below
        || upper_bound.is_some() && lower_bound.is_some()
    {
        LocalityVerdict::LocalInWindow
    } else if upper_bound.is_some() {
        LocalityVerdict::BoundedAboveOnly
    } else {
        LocalityVerdict::UnboundedInWindow
    };
    Ok(LocalityReport {
        window,
        degree_range,
        pairs_evaluated: pairs.iter().filter(|(l, _, _)| (window.0..=window.1).contains(l)).count(),
        upper_bound,
        lower_bound,
        nonzero_levels,
        verdict,
        window_relative: true,
        witnesses,
    })
}
