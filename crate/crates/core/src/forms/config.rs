use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::KncError;
use crate::exact::{Rat, RiemannPoint};

/// In-points `I = (P_1..P_K)` and out-points `O = (Q_1..Q_M)` on the sphere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedConfig {
    pub in_points: Vec<RiemannPoint>,
    pub out_points: Vec<RiemannPoint>,
}

/// Prescribed orders of a basis element at the in-points and out-points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderPrescription {
    pub in_orders: Vec<i64>,
    pub out_orders: Vec<i64>,
}

impl OrderPrescription {
    pub fn total(&self) -> i64 {
        self.in_orders.iter().chain(&self.out_orders).sum()
    }
}

/// Check every configuration invariant, collecting all violations.
pub fn validate_config(cfg: &MarkedConfig) -> Result<(), KncError> {
    let mut problems = Vec::new();
    if cfg.in_points.is_empty() {
        problems.push("empty in_points".to_string());
    }
    if cfg.out_points.is_empty() {
        problems.push("empty out_points".to_string());
    }
    if cfg.in_points.iter().any(RiemannPoint::is_infinity) {
        problems.push("infinity among in_points".to_string());
    }
    let mut seen = BTreeSet::new();
    let mut dups = BTreeSet::new();
    for p in cfg.in_points.iter().chain(&cfg.out_points) {
        if !seen.insert(p.clone()) {
            dups.insert(p.clone());
        }
    }
    for p in dups {
        problems.push(format!("duplicate point {p}"));
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(KncError::InvalidConfig(problems))
    }
}

impl MarkedConfig {
    /// Build and validate.
    pub fn new(in_points: Vec<RiemannPoint>, out_points: Vec<RiemannPoint>) -> Result<Self, KncError> {
        let cfg = MarkedConfig {
            in_points,
            out_points,
        };
        validate_config(&cfg)?;
        Ok(cfg)
    }

    /// `I = (0)`, `O = (inf)`: Laurent polynomials and the Witt algebra.
    pub fn classical() -> Self {
        MarkedConfig {
            in_points: vec![RiemannPoint::finite(0)],
            out_points: vec![RiemannPoint::Infinity],
        }
    }

    /// Finite in-points from integers, with `O = (inf)` followed by any extra
    /// finite out-points.
    pub fn from_ints(ins: &[i64], extra_outs: &[i64]) -> Result<Self, KncError> {
        let mut outs = vec![RiemannPoint::Infinity];
        outs.extend(extra_outs.iter().map(|&v| RiemannPoint::finite(v)));
        Self::new(ins.iter().map(|&v| RiemannPoint::finite(v)).collect(), outs)
    }

    pub fn from_json(s: &str) -> Result<Self, KncError> {
        let cfg: MarkedConfig =
            serde_json::from_str(s).map_err(|e| KncError::Parse(e.to_string()))?;
        validate_config(&cfg)?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// Number of in-points `K`.
    pub fn k(&self) -> usize {
        self.in_points.len()
    }

    /// Number of out-points `M = N - K`.
    pub fn m(&self) -> usize {
        self.out_points.len()
    }

    pub fn n_points(&self) -> usize {
        self.k() + self.m()
    }

    /// All marked points, in-points first.
    pub fn points(&self) -> impl Iterator<Item = &RiemannPoint> {
        self.in_points.iter().chain(&self.out_points)
    }

    pub fn has_infinity(&self) -> bool {
        self.out_points.iter().any(RiemannPoint::is_infinity)
    }

    /// Finite coordinates of all marked points, in-points first.
    pub fn finite_points(&self) -> Vec<Rat> {
        self.points().filter_map(|p| p.as_finite().cloned()).collect()
    }

    fn check_point(&self, p: usize) -> Result<(), KncError> {
        if p == 0 || p > self.k() {
            return Err(KncError::PointIndex { p, k: self.k() });
        }
        Ok(())
    }

    /// Order of `f^λ_{n,p}` at the out-point `Q_{j+1}`.
    ///
    /// With `M <= K` the first `M-1` out-points carry `-(n+1-λ)` and the last
    /// one takes the remainder. With `M > K` that remainder would grow with
    /// `n` and break duality, so the total `-K(n+1-λ) - (2λ-1)` is instead
    /// spread by floor division; weights `λ <= 0` are defined through their
    /// duals so that every product `f^λ_n f^{1-λ}_m` with `n+m < 0` stays
    /// holomorphic at the out-points.
    pub fn out_order(&self, lambda: i64, n: i64, j: usize) -> i64 {
        let k = self.k() as i64;
        let m = self.m() as i64;
        let base = n + 1 - lambda;
        if m <= k {
            if j + 1 < self.m() {
                -base
            } else {
                -(k - m + 1) * base - (2 * lambda - 1)
            }
        } else if lambda >= 1 {
            let total = -k * base - (2 * lambda - 1);
            (total + j as i64).div_euclid(m)
        } else {
            -self.out_order(1 - lambda, -1 - n, j)
        }
    }

    /// Orders of `f^λ_{n,p}` at the marked points: `(n+1-λ) - δ_i^p` at the
    /// in-points, [`out_order`](Self::out_order) at the out-points; the total
    /// is `-2λ`.
    pub fn order_prescription(&self, lambda: i64, n: i64, p: usize) -> Result<OrderPrescription, KncError> {
        self.check_point(p)?;
        let base = n + 1 - lambda;
        let in_orders = (1..=self.k())
            .map(|i| base - i64::from(i == p))
            .collect();
        let out_orders = (0..self.m()).map(|j| self.out_order(lambda, n, j)).collect();
        Ok(OrderPrescription {
            in_orders,
            out_orders,
        })
    }
}

/// Free-function form of [`MarkedConfig::order_prescription`].
pub fn order_prescription(
    cfg: &MarkedConfig,
    lambda: i64,
    n: i64,
    p: usize,
) -> Result<OrderPrescription, KncError> {
    cfg.order_prescription(lambda, n, p)
}
