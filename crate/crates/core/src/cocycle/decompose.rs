use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::coboundary::{CoboundaryData, CoboundaryKind};
use super::cycle::CycleSpec;
use super::evaluator::{CocycleEvaluator, CocycleKind};
use super::locality::{level_pairs, locality_scan};
use super::properties::{all_tuples, check_cocycle_properties, Property};
use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::{BasisIndex, KnContext};
use crate::ops::{basis_op, OpKind};

/// `γ = Σ α_i γ_{C_i} + (D_W or E_V)` on the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub kind: CocycleKind,
    pub window: (i64, i64),
    pub alpha: Vec<Rat>,
    /// `None` for function cocycles, which have no coboundaries.
    pub coboundary: Option<CoboundaryData>,
    /// Upper level bound seen by the preliminary scan.
    pub upper_bound: Option<i64>,
    /// Coefficients the window could not determine, set to zero.
    pub undetermined: Vec<(i64, usize)>,
    pub pairs_verified: usize,
}

impl Decomposition {
    /// The cocycle described by the decomposition.
    pub fn evaluator(&self, ctx: &std::sync::Arc<KnContext>) -> Result<CocycleEvaluator, KncError> {
        let mut terms = Vec::new();
        for (i, a) in self.alpha.iter().enumerate() {
            terms.push((a.clone(), CocycleEvaluator::geometric(ctx, self.kind, &CycleSpec::point(i + 1))?));
        }
        if let Some(d) = &self.coboundary {
            terms.push((Rat::one(), CocycleEvaluator::coboundary(ctx, d.clone())));
        }
        CocycleEvaluator::combination(terms)
    }
}

/// Row reduction over the rationals. Free unknowns are set to zero and
/// returned; consistency is left to the caller.
pub(crate) fn solve(mut rows: Vec<(Vec<Rat>, Rat)>, n: usize) -> (Vec<Rat>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for col in 0..n {
        let Some(pr) = (r0..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r0, pr);
        let inv = rows[r0].0[col].recip().expect("nonzero pivot");
        let (coef, rhs) = &mut rows[r0];
        for c in coef.iter_mut() {
            *c *= inv.clone();
        }
        *rhs *= inv;
        let pivot = rows[r0].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r0 || row.0[col].is_zero() {
                continue;
            }
            let f = row.0[col].clone();
            for (c, p) in row.0.iter_mut().zip(&pivot.0) {
                if !p.is_zero() {
                    *c -= p * &f;
                }
            }
            row.1 -= &pivot.1 * &f;
        }
        pivots.push(col);
        r0 += 1;
    }
    let mut sol = vec![Rat::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i].1.clone();
    }
    let free = (0..n).filter(|c| !pivots.contains(c)).collect();
    (sol, free)
}

fn op_for(kind: CocycleKind) -> OpKind {
    match kind {
        CocycleKind::Vector => OpKind::VfBracket,
        _ => OpKind::LieDerivative(0),
    }
}

fn mismatch(x: BasisIndex, y: BasisIndex, want: &Rat, got: &Rat) -> KncError {
    KncError::ReconstructionMismatch(format!(
        "first failing pair ({x}, {y}): cocycle {want}, reconstruction {got}"
    ))
}

/// Recover `α_i` and the truncated `W` or `V` of a cocycle bounded from
/// above, descending level by level from its upper bound.
///
/// At level `l` the unknowns are the coefficients of `Ω^{-l,t}` (or
/// `ω^{-l,t}`), plus the `α_i` at level 0; contributions of higher levels
/// are already known. Each level is checked before moving down, and the
/// result is verified on every pair with degrees in `window`.
pub fn decompose_bounded(
    g: &CocycleEvaluator,
    kind: CocycleKind,
    window: (i64, i64),
) -> Result<Decomposition, KncError> {
    if kind == CocycleKind::D1 || (g.kind() != kind && g.kind() != CocycleKind::D1) {
        return Err(KncError::KindMismatch(format!("cannot decompose a {} cocycle as {kind}", g.kind())));
    }
    let g = if g.kind() == kind { g.clone() } else { g.restriction(kind) };
    let ctx = g.context().clone();
    let k = ctx.k();
    let levels = (2 * window.0, 2 * window.1);
    let scan = locality_scan(&g, levels, window)?;
    if !scan.nonzero_levels.is_empty() && scan.upper_bound.is_none() {
        return Err(KncError::NotBounded(format!(
            "{kind} cocycle has no upper bound in levels {levels:?}"
        )));
    }
    if kind == CocycleKind::Function {
        let small = (window.0.max(-2), window.1.min(2));
        let mult = check_cocycle_properties(&g, Property::Multiplicative, &all_tuples(&[0, 0, 0], small, k))?;
        if !mult.passed() {
            let linv = check_cocycle_properties(&g, Property::LInvariant, &all_tuples(&[-1, 0, 0], small, k))?;
            if !linv.passed() {
                let f = &mult.failures[0];
                return Err(KncError::PropertyFailed(format!(
                    "neither multiplicative nor L-invariant; witness {:?} residual {}",
                    f.args.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                    f.residual
                )));
            }
        }
    }
    let points: Vec<CocycleEvaluator> = (1..=k)
        .map(|i| CocycleEvaluator::geometric(&ctx, kind, &CycleSpec::point(i)))
        .collect::<Result<_, _>>()?;
    let with_cob = kind != CocycleKind::Function;
    let op = op_for(kind);
    let start = scan.upper_bound.unwrap_or(0).max(0).min(levels.1);
    let bottom = if with_cob { levels.0 } else { 0 };
    let mut beta: BTreeMap<(i64, usize), Rat> = BTreeMap::new();
    let mut alpha = vec![Rat::zero(); k];
    let mut undetermined = Vec::new();
    for l in (bottom..=start).rev() {
        let pairs = level_pairs(kind, l, window, k);
        let n_beta = if with_cob { k } else { 0 };
        let n_alpha = if l == 0 { k } else { 0 };
        let n = n_beta + n_alpha;
        let rows: Vec<(Vec<Rat>, Rat)> = pairs
            .par_iter()
            .map(|&(x, y)| -> Result<_, KncError> {
                let mut rhs = g.eval(x, y)?;
                let mut row = vec![Rat::zero(); n];
                if with_cob {
                    for (h, c) in basis_op(&ctx, op, x, y)?.iter() {
                        if h.degree == l {
                            row[h.point - 1] = c.clone();
                        } else if let Some(b) = beta.get(&(-h.degree, h.point)) {
                            rhs -= b * c;
                        }
                    }
                }
                for (i, gi) in points.iter().enumerate() {
                    let v = gi.eval(x, y)?;
                    if l == 0 {
                        row[n_beta + i] = v;
                    } else if l < 0 && !v.is_zero() {
                        rhs -= v * &alpha[i];
                    }
                }
                Ok((row, rhs))
            })
            .collect::<Result<_, _>>()?;
        if n == 0 {
            continue;
        }
        let (sol, free) = solve(rows.clone(), n);
        for (i, (row, rhs)) in rows.iter().enumerate() {
            let got: Rat = row.iter().zip(&sol).map(|(a, b)| a * b).sum();
            if got != *rhs {
                let (x, y) = pairs[i];
                return Err(mismatch(x, y, rhs, &got));
            }
        }
        for c in free {
            if c < n_beta {
                undetermined.push((-l, c + 1));
            }
        }
        for t in 0..n_beta {
            if !sol[t].is_zero() {
                beta.insert((-l, t + 1), sol[t].clone());
            }
        }
        if l == 0 {
            alpha = sol[n_beta..].to_vec();
        }
    }
    let mut out = Decomposition {
        kind,
        window,
        alpha,
        coboundary: with_cob.then(|| {
            let ck = if kind == CocycleKind::Vector {
                CoboundaryKind::W
            } else {
                CoboundaryKind::V
            };
            CoboundaryData::new(ck, beta)
        }),
        upper_bound: scan.upper_bound,
        undetermined,
        pairs_verified: 0,
    };
    let rec = out.evaluator(&ctx)?;
    let all: Vec<(BasisIndex, BasisIndex)> = (levels.0..=levels.1)
        .flat_map(|l| level_pairs(kind, l, window, k))
        .collect();
    let diffs: Vec<Option<(Rat, Rat)>> = all
        .par_iter()
        .map(|&(x, y)| -> Result<_, KncError> {
            let (want, got) = (g.eval(x, y)?, rec.eval(x, y)?);
            Ok((want != got).then_some((want, got)))
        })
        .collect::<Result<_, _>>()?;
    if let Some((i, Some((want, got)))) = diffs.iter().enumerate().find(|(_, d)| d.is_some()) {
        let (x, y) = all[i];
        return Err(mismatch(x, y, want, got));
    }
    out.pairs_verified = all.len();
    Ok(out)
}

/// Restrictions of a `D¹` cocycle to `A × A`, `L × A` and `L × L`.
pub fn split_d1_cocycle(g: &CocycleEvaluator) -> (CocycleEvaluator, CocycleEvaluator, CocycleEvaluator) {
    (
        g.restriction(CocycleKind::Function),
        g.restriction(CocycleKind::Mixing),
        g.restriction(CocycleKind::Vector),
    )
}

/// Extend a function cocycle to `D¹` by zero on every pair involving a
/// vector field, after checking L-invariance on `samples` of `(e, g, h)`.
pub fn extend_function_cocycle_to_d1(
    g: &CocycleEvaluator,
    samples: &[Vec<BasisIndex>],
) -> Result<CocycleEvaluator, KncError> {
    if g.kind() != CocycleKind::Function {
        return Err(KncError::KindMismatch(format!("expected a function cocycle, got {}", g.kind())));
    }
    let report = check_cocycle_properties(g, Property::LInvariant, samples)?;
    if let Some(f) = report.failures.first() {
        return Err(KncError::PropertyFailed(format!(
            "not L-invariant at ({}, {}, {}): residual {}",
            f.args[0], f.args[1], f.args[2], f.residual
        )));
    }
    Ok(g.zero_extension())
}
