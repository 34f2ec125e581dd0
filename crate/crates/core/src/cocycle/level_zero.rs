use serde::Serialize;

use super::evaluator::{CocycleEvaluator, CocycleKind};
use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::BasisIndex;

/// Parameters `α_r, b_r` of the level-zero values, per in-point index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelZeroParams {
    pub kind: CocycleKind,
    pub alpha: Vec<Rat>,
    /// Empty for function cocycles.
    pub b: Vec<Rat>,
}

fn check_kind(g: &CocycleEvaluator, kind: CocycleKind) -> Result<(), KncError> {
    if kind == CocycleKind::D1 || (g.kind() != kind && g.kind() != CocycleKind::D1) {
        return Err(KncError::KindMismatch(format!(
            "cannot read {kind} level-zero values from a {} cocycle",
            g.kind()
        )));
    }
    Ok(())
}

/// Read `α_r` (and `b_r`) off a few level-zero values:
///
/// * function: `α_r = γ(A_{-1,r}, A_{1,r})`;
/// * vector: `α_r = 2γ(e_{2,r}, e_{-2,r}) - 4γ(e_{1,r}, e_{-1,r})`, `b_r = γ(e_{1,r}, e_{-1,r})`;
/// * mixing: `α_r = ½(γ(e_{1,r}, A_{-1,r}) + γ(e_{-1,r}, A_{1,r}))`, `b_r = γ(e_{-1,r}, A_{1,r})`.
pub fn extract_level_zero(g: &CocycleEvaluator, kind: CocycleKind) -> Result<LevelZeroParams, KncError> {
    check_kind(g, kind)?;
    let k = g.context().k();
    let mut alpha = Vec::with_capacity(k);
    let mut b = Vec::new();
    for r in 1..=k {
        let (e, a) = (|n| BasisIndex::e(n, r), |n| BasisIndex::a(n, r));
        match kind {
            CocycleKind::Function => alpha.push(g.eval_d1(a(-1), a(1))?),
            CocycleKind::Vector => {
                let b1 = g.eval_d1(e(1), e(-1))?;
                alpha.push(g.eval_d1(e(2), e(-2))? * Rat::from_int(2) - &b1 * Rat::from_int(4));
                b.push(b1);
            }
            CocycleKind::Mixing => {
                let b1 = g.eval_d1(e(-1), a(1))?;
                alpha.push((g.eval_d1(e(1), a(-1))? + &b1) * Rat::new(1, 2));
                b.push(b1);
            }
            CocycleKind::D1 => unreachable!(),
        }
    }
    Ok(LevelZeroParams { kind, alpha, b })
}

impl LevelZeroParams {
    /// Predicted value on the level-zero pair of degree `n` at `(r, s)`.
    pub fn predicted(&self, n: i64, r: usize, s: usize) -> Rat {
        if r != s {
            return Rat::zero();
        }
        let (a, nn) = (&self.alpha[r - 1], Rat::from_int(n));
        match self.kind {
            CocycleKind::Function => a * &nn,
            CocycleKind::Vector => a * Rat::new((n + 1) * n * (n - 1), 12) + &self.b[r - 1] * &nn,
            CocycleKind::Mixing => a * Rat::from_int(n * (n - 1)) + &self.b[r - 1] * &nn,
            CocycleKind::D1 => Rat::zero(),
        }
    }

    /// The pair whose value [`predicted`](Self::predicted) describes:
    /// `(A_{-n,r}, A_{n,s})`, `(e_{n,r}, e_{-n,s})` or `(e_{-n,r}, A_{n,s})`.
    pub fn pair(&self, n: i64, r: usize, s: usize) -> (BasisIndex, BasisIndex) {
        match self.kind {
            CocycleKind::Function => (BasisIndex::a(-n, r), BasisIndex::a(n, s)),
            CocycleKind::Vector => (BasisIndex::e(n, r), BasisIndex::e(-n, s)),
            _ => (BasisIndex::e(-n, r), BasisIndex::a(n, s)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelZeroMismatch {
    pub left: BasisIndex,
    pub right: BasisIndex,
    pub expected: Rat,
    pub got: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelZeroReport {
    pub params: LevelZeroParams,
    pub checked: usize,
    pub mismatches: Vec<LevelZeroMismatch>,
}

impl LevelZeroReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare every level-zero value with degrees in `window` against the
/// closed form built from [`extract_level_zero`].
pub fn level_zero_formula_check(
    g: &CocycleEvaluator,
    kind: CocycleKind,
    window: (i64, i64),
) -> Result<LevelZeroReport, KncError> {
    let params = extract_level_zero(g, kind)?;
    let k = g.context().k();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for n in window.0..=window.1 {
        if -n < window.0 || -n > window.1 {
            continue;
        }
        for r in 1..=k {
            for s in 1..=k {
                let (x, y) = params.pair(n, r, s);
                let got = g.eval_d1(x, y)?;
                let expected = params.predicted(n, r, s);
                checked += 1;
                if got != expected {
                    mismatches.push(LevelZeroMismatch {
                        left: x,
                        right: y,
                        expected,
                        got,
                    });
                }
            }
        }
    }
    Ok(LevelZeroReport {
        params,
        checked,
        mismatches,
    })
}
