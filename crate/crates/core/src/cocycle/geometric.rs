//! Residue integrands of the geometric cocycles.

use super::cycle::CycleSpec;
use super::local::{residue_at, weighted_residue, Factor, FormSeries};
use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::{Form, KnContext};

/// A cocycle argument: a basis element or a fixed form.
#[derive(Clone, Copy)]
pub(crate) enum Arg<'a> {
    Basis(crate::forms::BasisIndex),
    Fixed(&'a FormSeries),
}

impl<'a> Arg<'a> {
    fn d(self, n: u32) -> Factor<'a> {
        match self {
            Arg::Basis(i) => Factor::Basis(i, n),
            Arg::Fixed(s) => Factor::Fixed(s, n),
        }
    }
}

pub(crate) fn cycle_weights(ctx: &KnContext, cycle: &CycleSpec) -> Vec<i64> {
    let mut w = vec![0; ctx.points().len()];
    for (r, c) in &cycle.weights {
        w[r.position(ctx.k())] += c;
    }
    w
}

/// `Σ w · res(g dh)`.
pub(crate) fn function_value(ctx: &KnContext, weights: &[i64], g: Arg<'_>, h: Arg<'_>) -> Result<Rat, KncError> {
    weighted_residue(ctx, weights, |pos| residue_at(ctx, pos, &[g.d(0), h.d(1)]))
}

/// `(1/12) Σ w · res(½(e'''f - e f''') - R(e'f - e f'))`.
pub(crate) fn vector_value(
    ctx: &KnContext,
    weights: &[i64],
    r: Option<&FormSeries>,
    e: Arg<'_>,
    f: Arg<'_>,
) -> Result<Rat, KncError> {
    let total = weighted_residue(ctx, weights, |pos| {
        let a = residue_at(ctx, pos, &[e.d(3), f.d(0)])?;
        let b = residue_at(ctx, pos, &[e.d(0), f.d(3)])?;
        let mut v = (a - b) * Rat::new(1, 2);
        if let Some(r) = r {
            v -= residue_at(ctx, pos, &[Factor::Fixed(r, 0), e.d(1), f.d(0)])?;
            v += residue_at(ctx, pos, &[Factor::Fixed(r, 0), e.d(0), f.d(1)])?;
        }
        Ok(v)
    })?;
    Ok(total * Rat::new(1, 12))
}

/// `Σ w · res(e g'' + T e g')`.
pub(crate) fn mixing_value(
    ctx: &KnContext,
    weights: &[i64],
    t: Option<&FormSeries>,
    e: Arg<'_>,
    g: Arg<'_>,
) -> Result<Rat, KncError> {
    weighted_residue(ctx, weights, |pos| {
        let mut v = residue_at(ctx, pos, &[e.d(0), g.d(2)])?;
        if let Some(t) = t {
            v += residue_at(ctx, pos, &[Factor::Fixed(t, 0), e.d(0), g.d(1)])?;
        }
        Ok(v)
    })
}

pub(crate) fn check_form(ctx: &KnContext, f: &Form, weight: i64) -> Result<(), KncError> {
    if f.weight != weight {
        return Err(KncError::WeightMismatch(format!(
            "expected weight {weight}, got {}",
            f.weight
        )));
    }
    if !f.func.poles_within(ctx.finite_points()) {
        return Err(KncError::PoleOffMarkedSet(format!("{f}")));
    }
    Ok(())
}
