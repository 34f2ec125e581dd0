use std::sync::Arc;

use serde::Serialize;

use super::matrix::BandedWindowMatrix;
use crate::cocycle::{
    check_cocycle_properties, decompose_bounded, extract_level_zero, split_d1_cocycle, all_tuples, BasisCocycle,
    CocycleEvaluator, CocycleKind, Decomposition, Property, Provenance,
};
use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::{BasisIndex, Expansion, KnContext};
use crate::ops::{basis_op, D1Element, OpKind};

/// `ι(n, r) = K n + (r - 1)`, a bijection `ℤ × {1..K} → ℤ` with `ι(0, 1) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeIndexMap {
    pub k: usize,
}

impl WedgeIndexMap {
    pub fn new(k: usize) -> Self {
        assert!(k > 0, "at least one in-point");
        WedgeIndexMap { k }
    }

    pub fn index(&self, n: i64, r: usize) -> i64 {
        self.k as i64 * n + (r as i64 - 1)
    }

    pub fn inverse(&self, i: i64) -> (i64, usize) {
        let k = self.k as i64;
        (i.div_euclid(k), i.rem_euclid(k) as usize + 1)
    }
}

/// Expansion of the generator `x` acting on `f^λ_{m,r}`.
fn action(ctx: &KnContext, lambda: i64, x: BasisIndex, m: i64, r: usize) -> Result<Arc<Expansion>, KncError> {
    let f = BasisIndex::new(lambda, m, r);
    match x.weight {
        0 => basis_op(ctx, OpKind::FunMul, x, f),
        -1 => basis_op(ctx, OpKind::LieDerivative(lambda), x, f),
        w => Err(KncError::WeightMismatch(format!("D1 generators have weight 0 or -1, got {w}"))),
    }
}

/// A priori largest degree in the expansion of `x . f^λ_{m,r}`, from the
/// orders of the factors alone; `None` when the expansion is empty.
fn max_degree(ctx: &KnContext, lambda: i64, x: BasisIndex, m: i64, r: usize) -> Option<i64> {
    let f = BasisIndex::new(lambda, m, r);
    let drop = i64::from(x.weight == -1);
    let orders: Vec<Option<i64>> = (0..ctx.points().len())
        .map(|pos| Some(ctx.basis_order(x, pos) + ctx.basis_order(f, pos) - drop))
        .collect();
    ctx.expansion_bounds(lambda, &orders).map(|(_, hi)| hi)
}

/// `Φ_λ(x)` on the index window `[-half_width, half_width)`: column `ι(m, r)`
/// holds the coordinates of `x . f^λ_{m,r}`.
pub fn phi_lambda_coords(
    ctx: &KnContext,
    lambda: i64,
    x: &Expansion,
    half_width: i64,
) -> Result<BandedWindowMatrix, KncError> {
    let map = WedgeIndexMap::new(ctx.k());
    let mut entries = Vec::new();
    let mut band = 0;
    for j in -half_width..half_width {
        let (m, r) = map.inverse(j);
        let mut col = Expansion::new();
        for (g, c) in x {
            for (h, v) in action(ctx, lambda, *g, m, r)?.iter() {
                *col.entry(*h).or_insert_with(Rat::zero) += v * c;
            }
        }
        for (h, v) in col {
            if v.is_zero() {
                continue;
            }
            let i = map.index(h.degree, h.point);
            band = band.max((i - j).abs());
            if (-half_width..half_width).contains(&i) {
                entries.push(((i, j), v));
            }
        }
    }
    if band >= half_width {
        return Err(KncError::WindowTooSmall {
            needed: band + 1,
            have: half_width,
        });
    }
    BandedWindowMatrix::from_entries((-half_width, half_width), band, entries)
}

/// `Φ_λ` of a `D¹` element.
pub fn phi_lambda(ctx: &KnContext, lambda: i64, x: &D1Element, half_width: i64) -> Result<BandedWindowMatrix, KncError> {
    let mut coords = ctx.expand(&x.function_part)?;
    coords.extend(ctx.expand(&x.vf_part)?);
    phi_lambda_coords(ctx, lambda, &coords, half_width)
}

struct Pullback {
    lambda: i64,
    map: WedgeIndexMap,
    half_width: i64,
}

impl Pullback {
    fn check(&self, i: i64) -> Result<(), KncError> {
        if !(-self.half_width..self.half_width).contains(&i) {
            return Err(KncError::WindowTooSmall {
                needed: if i < 0 { -i } else { i + 1 },
                have: self.half_width,
            });
        }
        Ok(())
    }

    /// `tr(X₃Y₂) = Σ_{i ≥ 0 > j} X[i][j] Y[j][i]`, touching only the columns
    /// that can reach across the cut.
    fn corner(&self, ctx: &KnContext, x: BasisIndex, y: BasisIndex) -> Result<Rat, KncError> {
        let k = self.map.k;
        let mut acc = Rat::zero();
        let mut m = -1;
        loop {
            let mut reaches = false;
            for r in 1..=k {
                if max_degree(ctx, self.lambda, x, m, r).is_none_or(|h| h < 0) {
                    continue;
                }
                reaches = true;
                let j = self.map.index(m, r);
                self.check(j)?;
                for (h, v) in action(ctx, self.lambda, x, m, r)?.iter() {
                    let i = self.map.index(h.degree, h.point);
                    if i < 0 {
                        continue;
                    }
                    self.check(i)?;
                    let col = action(ctx, self.lambda, y, h.degree, h.point)?;
                    if let Some(w) = col.get(&BasisIndex::new(self.lambda, m, r)) {
                        acc += v * w;
                    }
                }
            }
            if !reaches {
                return Ok(acc);
            }
            m -= 1;
        }
    }
}

impl BasisCocycle for Pullback {
    fn value(&self, ctx: &KnContext, x: BasisIndex, y: BasisIndex) -> Result<Rat, KncError> {
        Ok(self.corner(ctx, x, y)? - self.corner(ctx, y, x)?)
    }
}

/// `γ_λ(x, y) = α(Φ_λ(x), Φ_λ(y))` on `D¹`, with the matrices cut to the
/// index window `[-K w, K w)` for the degree window `w`.
pub fn pullback_cocycle(ctx: &Arc<KnContext>, lambda: i64, window: i64) -> CocycleEvaluator {
    let map = WedgeIndexMap::new(ctx.k());
    let inner = Pullback {
        lambda,
        map,
        half_width: ctx.k() as i64 * window,
    };
    CocycleEvaluator::external(ctx, CocycleKind::D1, Provenance::Pullback { lambda }, Arc::new(inner))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueCheck {
    pub name: String,
    pub expected: Rat,
    pub got: Rat,
    pub ok: bool,
}

/// Outcome of checking `γ_λ = -(γ_S^{(f)} + ((1-2λ)/2) γ_S^{(m)} + 2(6λ²-6λ+1) γ_S^{(v)})`
/// up to coboundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullcycReport {
    pub lambda: i64,
    pub window: i64,
    pub decomposition_window: (i64, i64),
    pub checks: Vec<ValueCheck>,
    pub function_part: Decomposition,
    pub mixing_part: Decomposition,
    pub vector_part: Decomposition,
    pub passed: bool,
}

/// The three coefficients `(-1, -(1-2λ)/2, -2(6λ²-6λ+1))`.
pub fn pullcyc_coefficients(lambda: i64) -> (Rat, Rat, Rat) {
    (
        Rat::from_int(-1),
        Rat::new(2 * lambda - 1, 2),
        Rat::from_int(-2 * (6 * lambda * lambda - 6 * lambda + 1)),
    )
}

/// Pull back at weight `λ`, split into the three parts and compare level-zero
/// parameters, raw values and bounded decompositions with the closed form.
pub fn verify_pullcyc(ctx: &Arc<KnContext>, lambda: i64, window: i64) -> Result<PullcycReport, KncError> {
    let g = pullback_cocycle(ctx, lambda, window);
    let (gf, gm, gv) = split_d1_cocycle(&g);
    let (cf, cm, cv) = pullcyc_coefficients(lambda);
    let l = lambda;
    let mut checks = Vec::new();
    let mut push = |name: String, expected: Rat, got: Rat| {
        let ok = expected == got;
        checks.push(ValueCheck { name, expected, got, ok });
    };
    for (part, kind, want) in [
        (&gf, CocycleKind::Function, &cf),
        (&gm, CocycleKind::Mixing, &cm),
        (&gv, CocycleKind::Vector, &cv),
    ] {
        let p = extract_level_zero(part, kind)?;
        for (r, a) in p.alpha.into_iter().enumerate() {
            push(format!("{kind} alpha_{}", r + 1), want.clone(), a);
        }
    }
    for r in 1..=ctx.k() {
        let (a, e) = (|n| BasisIndex::a(n, r), |n| BasisIndex::e(n, r));
        let raw = [
            ("gamma(A1,A-1)", a(1), a(-1), Rat::one()),
            ("gamma(e1,e-1)", e(1), e(-1), Rat::from_int(-l * (l - 1))),
            (
                "gamma(e2,e-2)",
                e(2),
                e(-2),
                Rat::from_int(-(1 - 2 * l) * (1 - 2 * l) + 2 * l * (2 - 2 * l)),
            ),
            ("gamma(e1,A-1)", e(1), a(-1), Rat::from_int(l - 1)),
            ("gamma(e-1,A1)", e(-1), a(1), Rat::from_int(l)),
        ];
        for (name, x, y, want) in raw {
            push(format!("{name} at r={r}"), want, g.eval(x, y)?);
        }
    }
    let small = (-2, 2);
    let mult = check_cocycle_properties(&gf, Property::Multiplicative, &all_tuples(&[0, 0, 0], small, ctx.k()))?;
    push(
        "function part multiplicative failures".into(),
        Rat::zero(),
        Rat::from_int(mult.failures.len() as i64),
    );
    let d = (window / 2 - 1).max(2);
    let dw = (-d, d);
    let function_part = decompose_bounded(&gf, CocycleKind::Function, dw)?;
    let mixing_part = decompose_bounded(&gm, CocycleKind::Mixing, dw)?;
    let vector_part = decompose_bounded(&gv, CocycleKind::Vector, dw)?;
    for (dec, want) in [(&function_part, &cf), (&mixing_part, &cm), (&vector_part, &cv)] {
        for (i, a) in dec.alpha.iter().enumerate() {
            push(format!("{} decomposition alpha_{}", dec.kind, i + 1), want.clone(), a.clone());
        }
    }
    let passed = checks.iter().all(|c| c.ok);
    Ok(PullcycReport {
        lambda,
        window,
        decomposition_window: dw,
        checks,
        function_part,
        mixing_part,
        vector_part,
        passed,
    })
}
