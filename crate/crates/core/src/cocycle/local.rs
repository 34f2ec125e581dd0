//! Residues of products of local expansions at the finite marked points.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::KncError;
use crate::exact::{LaurentSlice, Rat};
use crate::forms::{BasisIndex, Form, KnContext};

/// A fixed form with lazily grown Laurent slices at the marked points.
#[derive(Debug)]
pub(crate) struct FormSeries {
    pub form: Form,
    cache: RwLock<HashMap<usize, Arc<LaurentSlice>>>,
}

impl Clone for FormSeries {
    fn clone(&self) -> Self {
        FormSeries::new(self.form.clone())
    }
}

impl FormSeries {
    pub fn new(form: Form) -> Self {
        FormSeries {
            form,
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn order(&self, ctx: &KnContext, pos: usize) -> Option<i64> {
        self.form.func.order_at(&ctx.points()[pos])
    }

    fn slice(&self, ctx: &KnContext, pos: usize, end: i64) -> Arc<LaurentSlice> {
        if let Some(s) = self.cache.read().get(&pos) {
            if s.end() >= end {
                return s.clone();
            }
        }
        let first = self.order(ctx, pos).unwrap_or(0);
        let len = ((end - first).max(1) as usize).max(8);
        let s = Arc::new(self.form.func.laurent_coeffs(&ctx.points()[pos], first, len * 2));
        self.cache.write().insert(pos, s.clone());
        s
    }
}

/// One factor of an integrand, differentiated `d` times.
#[derive(Clone, Copy)]
pub(crate) enum Factor<'a> {
    Basis(BasisIndex, u32),
    Fixed(&'a FormSeries, u32),
}

impl Factor<'_> {
    fn derivs(&self) -> u32 {
        match self {
            Factor::Basis(_, d) | Factor::Fixed(_, d) => *d,
        }
    }

    fn order(&self, ctx: &KnContext, pos: usize) -> Option<i64> {
        match self {
            Factor::Basis(idx, _) => Some(ctx.basis_order(*idx, pos)),
            Factor::Fixed(s, _) => s.order(ctx, pos),
        }
    }

    fn slice(&self, ctx: &KnContext, pos: usize, end: i64) -> Result<Arc<LaurentSlice>, KncError> {
        match self {
            Factor::Basis(idx, _) => ctx.series(*idx, pos, end),
            Factor::Fixed(s, _) => Ok(s.slice(ctx, pos, end)),
        }
    }
}

/// Derivative of order `d` read off a slice without materializing it.
struct Deriv<'a> {
    s: &'a LaurentSlice,
    d: u32,
}

impl Deriv<'_> {
    fn first(&self) -> i64 {
        self.s.first_exponent - self.d as i64
    }

    fn coeff(&self, k: i64) -> Rat {
        let j = k + self.d as i64;
        if j < self.s.first_exponent {
            return Rat::zero();
        }
        let c = self.s.coeff(j);
        if c.is_zero() || self.d == 0 {
            return c;
        }
        let falling: i64 = (0..self.d as i64).map(|i| j - i).product();
        c * Rat::from_int(falling)
    }
}

fn product_coeff(fs: &[Deriv<'_>], target: i64) -> Rat {
    if fs.len() == 1 {
        return fs[0].coeff(target);
    }
    let rest: i64 = fs[1..].iter().map(Deriv::first).sum();
    let mut acc = Rat::zero();
    for i in fs[0].first()..=target - rest {
        let a = fs[0].coeff(i);
        if !a.is_zero() {
            acc += a * product_coeff(&fs[1..], target - i);
        }
    }
    acc
}

/// Residue at the finite marked point `pos` of the product of the factors.
pub(crate) fn residue_at(ctx: &KnContext, pos: usize, factors: &[Factor<'_>]) -> Result<Rat, KncError> {
    let mut starts = Vec::with_capacity(factors.len());
    for f in factors {
        match f.order(ctx, pos) {
            Some(o) => starts.push(o - f.derivs() as i64),
            None => return Ok(Rat::zero()),
        }
    }
    let total: i64 = starts.iter().sum();
    if total > -1 {
        return Ok(Rat::zero());
    }
    let mut slices = Vec::with_capacity(factors.len());
    for (f, s) in factors.iter().zip(&starts) {
        let end = -(total - s) + f.derivs() as i64;
        slices.push(f.slice(ctx, pos, end)?);
    }
    let views: Vec<Deriv<'_>> = slices
        .iter()
        .zip(factors)
        .map(|(s, f)| Deriv { s, d: f.derivs() })
        .collect();
    Ok(product_coeff(&views, -1))
}

/// Weighted sum of residues over marked points. A weight on infinity is
/// turned into minus the sum over all finite marked points.
pub(crate) fn weighted_residue(
    ctx: &KnContext,
    weights: &[i64],
    mut local: impl FnMut(usize) -> Result<Rat, KncError>,
) -> Result<Rat, KncError> {
    let pts = ctx.points();
    let w_inf: i64 = pts
        .iter()
        .zip(weights)
        .filter(|(p, _)| p.is_infinity())
        .map(|(_, w)| *w)
        .sum();
    let mut acc = Rat::zero();
    for (pos, p) in pts.iter().enumerate() {
        if p.is_infinity() {
            continue;
        }
        let c = weights[pos] - w_inf;
        if c != 0 {
            let r = local(pos)?;
            if !r.is_zero() {
                acc += r * Rat::from_int(c);
            }
        }
    }
    Ok(acc)
}
