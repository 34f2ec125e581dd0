use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use parking_lot::RwLock;

use super::config::{validate_config, MarkedConfig};
use super::form::{BasisIndex, Form};
use crate::error::KncError;
use crate::exact::{LaurentSlice, Poly, Rat, RatFunc, RiemannPoint};
use crate::ops::OpKind;

/// Coefficients of an expansion in the basis, zero entries omitted.
pub type Expansion = BTreeMap<BasisIndex, Rat>;

type SeriesKey = (BasisIndex, usize);
type OpKey = (OpKind, BasisIndex, BasisIndex);

/// A validated configuration together with memo tables for basis elements,
/// their local expansions and expanded products.
///
/// All caches are filled idempotently: concurrent callers may compute the
/// same entry twice, and either result is kept.
pub struct KnContext {
    cfg: MarkedConfig,
    points: Vec<RiemannPoint>,
    finite: Vec<Rat>,
    basis: RwLock<HashMap<BasisIndex, Arc<Form>>>,
    series: RwLock<HashMap<SeriesKey, Arc<LaurentSlice>>>,
    ops: RwLock<HashMap<OpKey, Arc<Expansion>>>,
}

impl std::fmt::Debug for KnContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KnContext").field("cfg", &self.cfg).finish()
    }
}

impl KnContext {
    pub fn new(cfg: MarkedConfig) -> Result<Arc<Self>, KncError> {
        validate_config(&cfg)?;
        let points: Vec<RiemannPoint> = cfg.points().cloned().collect();
        let finite = cfg.finite_points();
        Ok(Arc::new(KnContext {
            cfg,
            points,
            finite,
            basis: RwLock::new(HashMap::new()),
            series: RwLock::new(HashMap::new()),
            ops: RwLock::new(HashMap::new()),
        }))
    }

    pub fn config(&self) -> &MarkedConfig {
        &self.cfg
    }

    pub fn k(&self) -> usize {
        self.cfg.k()
    }

    /// Marked points, in-points first; positions index local expansions.
    pub fn points(&self) -> &[RiemannPoint] {
        &self.points
    }

    pub fn finite_points(&self) -> &[Rat] {
        &self.finite
    }

    /// Order of `f^λ_{n,p}` at the marked point with position `pos`.
    pub fn basis_order(&self, idx: BasisIndex, pos: usize) -> i64 {
        let k = self.k();
        if pos < k {
            idx.degree + 1 - idx.weight - i64::from(pos + 1 == idx.point)
        } else {
            self.cfg.out_order(idx.weight, idx.degree, pos - k)
        }
    }

    /// The normalized basis element `f^λ_{n,p}`.
    pub fn basis(&self, idx: BasisIndex) -> Result<Arc<Form>, KncError> {
        if let Some(f) = self.basis.read().get(&idx) {
            return Ok(f.clone());
        }
        let f = Arc::new(basis_element(&self.cfg, idx)?);
        self.basis.write().entry(idx).or_insert_with(|| f.clone());
        Ok(f)
    }

    /// Laurent coefficients of `f^λ_{n,p}` at the finite marked point `pos`,
    /// from its order up to (excluding) exponent `end`.
    pub fn series(&self, idx: BasisIndex, pos: usize, end: i64) -> Result<Arc<LaurentSlice>, KncError> {
        let key = (idx, pos);
        if let Some(s) = self.series.read().get(&key) {
            if s.end() >= end {
                return Ok(s.clone());
            }
        }
        let first = self.basis_order(idx, pos);
        let pt = &self.points[pos];
        if pt.is_infinity() {
            return Err(KncError::Invalid("series cache holds finite points only".into()));
        }
        let prev_len = self
            .series
            .read()
            .get(&key)
            .map_or(0, |s| s.coefficients.len());
        let want = ((end - first).max(1) as usize).max(prev_len * 2).max(8);
        let f = self.basis(idx)?;
        let s = Arc::new(f.func.laurent_coeffs(pt, first, want));
        let mut w = self.series.write();
        let slot = w.entry(key).or_insert_with(|| s.clone());
        if slot.end() < s.end() {
            *slot = s.clone();
        }
        Ok(slot.clone())
    }

    pub(crate) fn op_cached(&self, key: &OpKey) -> Option<Arc<Expansion>> {
        self.ops.read().get(key).cloned()
    }

    pub(crate) fn op_store(&self, key: OpKey, val: Arc<Expansion>) -> Arc<Expansion> {
        self.ops.write().entry(key).or_insert(val).clone()
    }

    /// The KN pairing of two forms of complementary weight.
    pub fn pairing(&self, f: &Form, g: &Form) -> Result<Rat, KncError> {
        kn_pairing(&self.cfg, f, g)
    }

    /// Pairing of two basis elements through cached local expansions.
    pub fn pair_basis(&self, a: BasisIndex, b: BasisIndex) -> Result<Rat, KncError> {
        if a.weight + b.weight != 1 {
            return Err(KncError::WeightMismatch(format!("pairing {a} with {b}")));
        }
        let mut acc = Rat::zero();
        for pos in 0..self.k() {
            let oa = self.basis_order(a, pos);
            let ob = self.basis_order(b, pos);
            if oa + ob > -1 {
                continue;
            }
            let sa = self.series(a, pos, -ob)?;
            let sb = self.series(b, pos, -oa)?;
            acc += sa.product_coeff(&sb, -1);
        }
        Ok(acc)
    }

    fn check_poles(&self, f: &Form) -> Result<(), KncError> {
        if !f.func.poles_within(&self.finite) {
            return Err(KncError::PoleOffMarkedSet(format!("{f}")));
        }
        Ok(())
    }

    /// Range of degrees that can carry a nonzero coefficient when a form of
    /// weight `λ` with the given orders at the marked points is expanded.
    ///
    /// The lower end comes from the in-points. Above it, the coefficient of
    /// degree `m` is minus the out-point residue sum against
    /// `f^{1-λ}_{-m,r}`, whose out-orders grow with `m`; the first `m` at
    /// which every out-point product is holomorphic ends the range.
    pub fn expansion_bounds(&self, lambda: i64, orders: &[Option<i64>]) -> Option<(i64, i64)> {
        let k = self.k();
        let lo = orders[..k].iter().flatten().map(|o| o + lambda).min()?;
        let quiet = |m: i64| {
            orders[k..].iter().enumerate().all(|(j, o)| match o {
                None => true,
                Some(o) => o + self.cfg.out_order(1 - lambda, -m, j) >= 0,
            })
        };
        if quiet(lo) {
            return None;
        }
        let mut step = 1;
        while !quiet(lo + step) {
            step *= 2;
        }
        let (mut bad, mut good) = (lo + step / 2, lo + step);
        while good - bad > 1 {
            let mid = bad + (good - bad) / 2;
            if quiet(mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        Some((lo, bad))
    }

    /// Expansion `f = Σ α_{m,r} f^λ_{m,r}` with `α_{m,r} = <f, f^{1-λ}_{-m,r}>`,
    /// checked by exact reconstruction.
    pub fn expand(&self, f: &Form) -> Result<Expansion, KncError> {
        let mut out = Expansion::new();
        if f.is_zero() {
            return Ok(out);
        }
        self.check_poles(f)?;
        let lambda = f.weight;
        let orders: Vec<Option<i64>> = self.points.iter().map(|p| f.order_at(p)).collect();
        let Some((lo, hi)) = self.expansion_bounds(lambda, &orders) else {
            return Err(KncError::ReconstructionMismatch(format!(
                "{f} has empty expansion window"
            )));
        };
        let k = self.k();
        let mut local = Vec::with_capacity(k);
        for (pos, o) in orders.iter().take(k).enumerate() {
            let o = o.expect("nonzero form");
            // dual orders are λ - m - δ, so exponents up to hi - λ are needed
            let end = hi - lambda + 1;
            local.push((end > o).then(|| f.func.laurent_coeffs(&self.points[pos], o, (end - o) as usize)));
        }
        for m in lo..=hi {
            for r in 1..=k {
                let dual = BasisIndex::new(1 - lambda, -m, r);
                let mut acc = Rat::zero();
                for (pos, fs) in local.iter().enumerate() {
                    let Some(fs) = fs else { continue };
                    let od = self.basis_order(dual, pos);
                    if fs.first_exponent + od > -1 {
                        continue;
                    }
                    let ds = self.series(dual, pos, -fs.first_exponent)?;
                    acc += fs.product_coeff(&ds, -1);
                }
                if !acc.is_zero() {
                    out.insert(BasisIndex::new(lambda, m, r), acc);
                }
            }
        }
        self.check_reconstruction(f, &out)?;
        Ok(out)
    }

    /// Compare `Σ α f^λ_{m,r}` with `f` over a common denominator built from
    /// the marked points, so no gcd is needed.
    fn check_reconstruction(&self, f: &Form, coeffs: &Expansion) -> Result<(), KncError> {
        let npts = self.finite.len();
        let fin_pos: Vec<usize> = (0..self.points.len())
            .filter(|&i| !self.points[i].is_infinity())
            .collect();
        let mut shift = vec![0i64; npts];
        for (j, a) in self.finite.iter().enumerate() {
            shift[j] = f.func.den().root_multiplicity(a).unwrap_or(0) as i64;
        }
        for idx in coeffs.keys() {
            for (j, &pos) in fin_pos.iter().enumerate() {
                shift[j] = shift[j].max(-self.basis_order(*idx, pos));
            }
        }
        let common = self
            .finite
            .iter()
            .zip(&shift)
            .fold(Poly::one(), |acc, (a, &s)| &acc * &Poly::linear_power(a, s.max(0) as u32));
        let (cofactor, rem) = common.div_rem(f.func.den())?;
        debug_assert!(rem.is_zero());
        let target = &f.func.num().clone() * &cofactor;
        let mut sum = Poly::zero();
        for (idx, c) in coeffs {
            let b = self.basis(*idx)?;
            // denominators are monic products, so the numerator's leading
            // coefficient is the normalization constant
            let mut term = Poly::constant(b.func.num().leading());
            for (j, &pos) in fin_pos.iter().enumerate() {
                let e = self.basis_order(*idx, pos) + shift[j];
                term = &term * &Poly::linear_power(&self.finite[j], e as u32);
            }
            sum = &sum + &term.scale(c);
        }
        if sum != target {
            let diff = &sum - &target;
            return Err(KncError::ReconstructionMismatch(format!(
                "expansion of {f} misses by ({diff}) / ({common})"
            )));
        }
        Ok(())
    }
}

/// `f^λ_{n,p}`: the product over finite marked points of `(z - a)^{o_a}`
/// with the prescribed orders, scaled to have leading coefficient 1 in
/// `z - P_p`.
pub fn basis_element(cfg: &MarkedConfig, idx: BasisIndex) -> Result<Form, KncError> {
    let pres = cfg.order_prescription(idx.weight, idx.degree, idx.point)?;
    let pp = cfg.in_points[idx.point - 1]
        .as_finite()
        .ok_or_else(|| KncError::Invalid("in-point at infinity".into()))?;
    let orders: Vec<i64> = pres.in_orders.iter().chain(&pres.out_orders).copied().collect();
    let mut factors = Vec::new();
    let mut scale = Rat::one();
    for (pt, &o) in cfg.points().zip(&orders) {
        if let Some(a) = pt.as_finite() {
            factors.push((a, o));
            if a != pp {
                scale *= (pp - a).pow(o)?;
            }
        }
    }
    let c = scale.recip()?;
    Ok(Form::new(
        idx.weight,
        RatFunc::from_factors(&c, factors.iter().map(|(a, o)| (*a, *o))),
    ))
}

/// `Σ_{P ∈ I} res_P(f g)`, cross-checked against `-Σ_{Q ∈ O} res_Q(f g)`.
pub fn kn_pairing(cfg: &MarkedConfig, f: &Form, g: &Form) -> Result<Rat, KncError> {
    if f.weight + g.weight != 1 {
        return Err(KncError::WeightMismatch(format!(
            "pairing needs weights summing to 1, got {} and {}",
            f.weight, g.weight
        )));
    }
    let finite = cfg.finite_points();
    for h in [f, g] {
        if !h.func.poles_within(&finite) {
            return Err(KncError::PoleOffMarkedSet(format!("{h}")));
        }
    }
    let in_sum: Rat = cfg
        .in_points
        .iter()
        .map(|p| product_residue(&f.func, &g.func, p))
        .sum();
    let out_sum: Rat = cfg
        .out_points
        .iter()
        .map(|p| product_residue(&f.func, &g.func, p))
        .sum();
    if in_sum != -&out_sum {
        return Err(KncError::ResidueMismatch {
            in_sum: in_sum.to_string(),
            out_sum: out_sum.to_string(),
        });
    }
    Ok(in_sum)
}

/// Residue of `f g dz` at `p` from the two local expansions, without forming
/// the product as a reduced rational function.
pub fn product_residue(f: &RatFunc, g: &RatFunc, p: &RiemannPoint) -> Rat {
    let (Some(of), Some(og)) = (f.order_at(p), g.order_at(p)) else {
        return Rat::zero();
    };
    // at infinity the residue is minus the w^1 coefficient of f(1/w) g(1/w)
    let target = if p.is_infinity() { 1 } else { -1 };
    if of + og > target {
        return Rat::zero();
    }
    let fs = f.laurent_coeffs(p, of, (target - og - of + 1) as usize);
    let gs = g.laurent_coeffs(p, og, (target - of - og + 1) as usize);
    let c = fs.product_coeff(&gs, target);
    if p.is_infinity() {
        -c
    } else {
        c
    }
}

/// Free-function form of [`KnContext::expand`].
pub fn expand_in_basis(ctx: &KnContext, f: &Form) -> Result<Expansion, KncError> {
    ctx.expand(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::forms::inverted_config;

    fn two_in() -> Arc<KnContext> {
        KnContext::new(MarkedConfig::from_ints(&[0, 1], &[]).unwrap()).unwrap()
    }

    fn pure(c: i64, f: &[(i64, i64)]) -> RatFunc {
        let pts: Vec<(Rat, i64)> = f.iter().map(|&(a, k)| (q(a), k)).collect();
        RatFunc::from_factors(&q(c), pts.iter().map(|(a, k)| (a, *k)))
    }

    #[test]
    fn classical_basis() {
        let cls = MarkedConfig::classical();
        for n in -4..=4 {
            let e = basis_element(&cls, BasisIndex::e(n, 1)).unwrap();
            assert_eq!(e.func, pure(1, &[(0, n + 1)]));
            let a = basis_element(&cls, BasisIndex::a(n, 1)).unwrap();
            assert_eq!(a.func, pure(1, &[(0, n)]));
        }
    }

    #[test]
    fn two_point_basis_matches_orders() {
        let ctx = two_in();
        let a = ctx.basis(BasisIndex::a(1, 1)).unwrap();
        assert_eq!(a.func, pure(1, &[(0, 1), (1, 2)]));
        for lambda in -1..=2 {
            for n in -3..=3 {
                for p in 1..=2 {
                    let idx = BasisIndex::new(lambda, n, p);
                    let f = ctx.basis(idx).unwrap();
                    for (pos, pt) in ctx.points().iter().enumerate() {
                        assert_eq!(f.order_at(pt), Some(ctx.basis_order(idx, pos)));
                    }
                    let lead = f.func.laurent_coeffs(ctx.points()[p - 1].clone().as_ref_point(), n - lambda, 1);
                    assert_eq!(lead.coefficients[0], q(1));
                }
            }
        }
    }

    trait AsRefPoint {
        fn as_ref_point(&self) -> &RiemannPoint;
    }
    impl AsRefPoint for RiemannPoint {
        fn as_ref_point(&self) -> &RiemannPoint {
            self
        }
    }

    #[test]
    fn pairing_examples() {
        let cls = MarkedConfig::classical();
        for n in -3..=3 {
            for m in -3..=3 {
                let a = basis_element(&cls, BasisIndex::a(n, 1)).unwrap();
                let w = Form::new(1, pure(1, &[(0, -m - 1)]));
                let v = kn_pairing(&cls, &a, &w).unwrap();
                assert_eq!(v, if n == m { q(1) } else { q(0) });
            }
        }
        let ctx = two_in();
        let a = ctx.basis(BasisIndex::a(1, 1)).unwrap();
        let w1 = ctx.basis(BasisIndex::new(1, -1, 1)).unwrap();
        let w2 = ctx.basis(BasisIndex::new(1, -1, 2)).unwrap();
        assert_eq!(ctx.pairing(&a, &w1).unwrap(), q(1));
        assert_eq!(ctx.pairing(&a, &w2).unwrap(), q(0));
        assert!(ctx.pairing(&a, &a).is_err());
    }

    #[test]
    fn pole_off_marked_set_is_rejected() {
        let ctx = two_in();
        let f = Form::function(pure(1, &[(5, -1)]));
        assert!(matches!(ctx.expand(&f), Err(KncError::PoleOffMarkedSet(_))));
    }

    #[test]
    fn expansion_examples() {
        let ctx = KnContext::new(MarkedConfig::classical()).unwrap();
        let e = ctx.expand(&Form::function(pure(1, &[(0, 5)]))).unwrap();
        assert_eq!(e, Expansion::from([(BasisIndex::a(5, 1), q(1))]));
        let ctx = two_in();
        let f = Form::function(pure(1, &[(0, 3), (1, 3)]));
        let e = ctx.expand(&f).unwrap();
        assert_eq!(
            e,
            Expansion::from([(BasisIndex::a(3, 1), q(-1)), (BasisIndex::a(3, 2), q(1))])
        );
    }

    #[test]
    fn pair_basis_agrees_with_residues() {
        let ctx = two_in();
        for n in -3..=3 {
            for m in -3..=3 {
                for (p, r) in [(1, 1), (1, 2), (2, 2)] {
                    let a = BasisIndex::new(2, n, p);
                    let b = BasisIndex::new(-1, m, r);
                    let fast = ctx.pair_basis(a, b).unwrap();
                    let slow = ctx.pairing(&ctx.basis(a).unwrap(), &ctx.basis(b).unwrap()).unwrap();
                    assert_eq!(fast, slow);
                    let want = if n == -m && p == r { q(1) } else { q(0) };
                    assert_eq!(fast, want);
                }
            }
        }
    }

    #[test]
    fn inverted_classical_is_flip() {
        let inv = inverted_config(&MarkedConfig::classical());
        assert_eq!(inv.config, MarkedConfig::classical());
        let a = basis_element(&MarkedConfig::classical(), BasisIndex::a(3, 1)).unwrap();
        assert_eq!(inv.transport(&a).unwrap().func, pure(1, &[(0, -3)]));
    }

    #[test]
    fn inverted_two_point_preserves_orders() {
        let cfg = MarkedConfig::from_ints(&[0, 1], &[]).unwrap();
        let inv = inverted_config(&cfg);
        assert_eq!(inv.config.in_points, vec![RiemannPoint::finite(0)]);
        let m = inv.flip.as_ref().unwrap();
        let ctx = KnContext::new(inv.config.clone()).unwrap();
        for n in -2..=2 {
            for p in 1..=2 {
                let f = basis_element(&cfg, BasisIndex::a(n, p)).unwrap();
                let g = inv.transport(&f).unwrap();
                for pt in cfg.points() {
                    assert_eq!(f.order_at(pt), g.order_at(&m.image(pt)));
                }
                ctx.expand(&g).unwrap();
            }
        }
    }
}
