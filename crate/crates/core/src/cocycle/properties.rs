use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::evaluator::CocycleEvaluator;
use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::{BasisIndex, Expansion};
use crate::ops::{basis_op, unit, OpKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// `γ(x, y) + γ(y, x)`.
    Antisymmetry,
    /// `γ([x, y], z) + γ([y, z], x) + γ([z, x], y)` in `D¹`.
    CocycleCondition,
    /// `γ(fg, h) + γ(gh, f) + γ(hf, g)` on functions.
    Multiplicative,
    /// `γ(e.g, h) + γ(g, e.h)` for a vector field `e` and functions `g, h`.
    LInvariant,
}

impl Property {
    pub fn arity(&self) -> usize {
        match self {
            Property::Antisymmetry => 2,
            _ => 3,
        }
    }

    /// Weights of the sample arguments, where they are fixed.
    pub fn sample_weights(&self) -> Option<Vec<i64>> {
        match self {
            Property::Multiplicative => Some(vec![0, 0, 0]),
            Property::LInvariant => Some(vec![-1, 0, 0]),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyFailure {
    pub args: Vec<BasisIndex>,
    pub residual: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub checked: usize,
    pub failures: Vec<PropertyFailure>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn residual(g: &CocycleEvaluator, property: Property, args: &[BasisIndex]) -> Result<Rat, KncError> {
    let ctx = g.context();
    if args.len() != property.arity() {
        return Err(KncError::Invalid(format!(
            "{property:?} needs {} arguments, got {}",
            property.arity(),
            args.len()
        )));
    }
    if let Some(ws) = property.sample_weights() {
        if args.iter().zip(&ws).any(|(a, w)| a.weight != *w) {
            return Err(KncError::WeightMismatch(format!("{property:?} sample has wrong weights")));
        }
    }
    let op = |kind, x, y| -> Result<Expansion, KncError> { Ok((*basis_op(ctx, kind, x, y)?).clone()) };
    match property {
        Property::Antisymmetry => Ok(g.eval_d1(args[0], args[1])? + g.eval_d1(args[1], args[0])?),
        Property::CocycleCondition => {
            let (x, y, z) = (args[0], args[1], args[2]);
            let mut acc = Rat::zero();
            for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                acc += g.eval_coords(&op(OpKind::D1Bracket, a, b)?, &unit(c))?;
            }
            Ok(acc)
        }
        Property::Multiplicative => {
            let (f, gg, h) = (args[0], args[1], args[2]);
            let mut acc = Rat::zero();
            for (a, b, c) in [(f, gg, h), (gg, h, f), (h, f, gg)] {
                acc += g.eval_coords(&op(OpKind::FunMul, a, b)?, &unit(c))?;
            }
            Ok(acc)
        }
        Property::LInvariant => {
            let (e, gg, h) = (args[0], args[1], args[2]);
            let eg = op(OpKind::LieDerivative(0), e, gg)?;
            let eh = op(OpKind::LieDerivative(0), e, h)?;
            Ok(g.eval_coords(&eg, &unit(h))? + g.eval_coords(&unit(gg), &eh)?)
        }
    }
}

/// Evaluate the defining identity of `property` on every sample.
pub fn check_cocycle_properties(
    g: &CocycleEvaluator,
    property: Property,
    samples: &[Vec<BasisIndex>],
) -> Result<PropertyReport, KncError> {
    let values: Vec<Rat> = samples
        .par_iter()
        .map(|s| residual(g, property, s))
        .collect::<Result<_, _>>()?;
    let failures = samples
        .iter()
        .zip(values)
        .filter(|(_, v)| !v.is_zero())
        .map(|(s, v)| PropertyFailure {
            args: s.clone(),
            residual: v,
        })
        .collect();
    Ok(PropertyReport {
        property,
        checked: samples.len(),
        failures,
    })
}

/// Every tuple of generators with the given weights and degrees in `window`.
pub fn all_tuples(weights: &[i64], window: (i64, i64), k: usize) -> Vec<Vec<BasisIndex>> {
    let mut out = vec![Vec::new()];
    for &w in weights {
        let gens: Vec<BasisIndex> = (window.0..=window.1)
            .flat_map(|n| (1..=k).map(move |p| BasisIndex::new(w, n, p)))
            .collect();
        out = out
            .into_iter()
            .flat_map(|t| {
                gens.iter().map(move |g| {
                    let mut t = t.clone();
                    t.push(*g);
                    t
                })
            })
            .collect();
    }
    out
}
