use serde::Serialize;

use crate::error::KncError;
use crate::exact::{Poly, Rat, RatFunc, RiemannPoint};
use crate::forms::{Form, MarkedConfig};

/// Projective connection `R = R⁰ + extra` with `R⁰ = 0` in the global chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjConn {
    pub extra: Form,
}

/// Affine connection `T = T⁰ + extra`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffConn {
    pub base: RatFunc,
    pub extra: Form,
}

fn check_extra(cfg: &MarkedConfig, f: &Form, weight: i64) -> Result<(), KncError> {
    if f.weight != weight {
        return Err(KncError::WeightMismatch(format!(
            "connection term needs weight {weight}, got {}",
            f.weight
        )));
    }
    if !f.func.poles_within(&cfg.finite_points()) {
        return Err(KncError::PoleOffMarkedSet(format!("{f}")));
    }
    Ok(())
}

impl ProjConn {
    pub fn zero() -> Self {
        ProjConn {
            extra: Form::zero(2),
        }
    }

    pub fn with_extra(cfg: &MarkedConfig, extra: Form) -> Result<Self, KncError> {
        check_extra(cfg, &extra, 2)?;
        Ok(ProjConn { extra })
    }

    /// `R` in the global coordinate.
    pub fn total(&self) -> &RatFunc {
        &self.extra.func
    }
}

impl AffConn {
    /// `T⁰` for the configuration, no extra term.
    pub fn default_for(cfg: &MarkedConfig) -> Self {
        AffConn {
            base: affine_connection_default(cfg),
            extra: Form::zero(1),
        }
    }

    pub fn with_extra(cfg: &MarkedConfig, extra: Form) -> Result<Self, KncError> {
        check_extra(cfg, &extra, 1)?;
        Ok(AffConn {
            base: affine_connection_default(cfg),
            extra,
        })
    }

    /// `T⁰ + extra` in the global coordinate.
    pub fn total(&self) -> RatFunc {
        &self.base + &self.extra.func
    }
}

/// `T⁰ = 0` when infinity is an out-point, where it then has the simple pole
/// `2/w`; otherwise `2/(z - q₁)`, which is holomorphic at infinity.
pub fn affine_connection_default(cfg: &MarkedConfig) -> RatFunc {
    if cfg.has_infinity() {
        return RatFunc::zero();
    }
    let q1 = cfg.out_points[0].as_finite().expect("finite out-point").clone();
    RatFunc::from_factors(&Rat::from_int(2), [(&q1, -1)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionKind {
    Affine,
    Projective,
}

/// Outcome of moving a connection to the chart `w = 1/z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformReport {
    pub kind: ConnectionKind,
    /// The connection in the `w` chart, as a function of `w`.
    pub w_chart: String,
    /// Order at `w = 0`; `None` when the `w`-chart expression vanishes.
    pub order_at_infinity: Option<i64>,
    pub holomorphic_at_infinity: bool,
    /// Whether substituting back reproduces the transformation law.
    pub law_holds: bool,
}

fn flip(f: &RatFunc) -> RatFunc {
    f.compose_mobius(&Rat::zero(), &Rat::one(), &Rat::one(), &Rat::zero())
}

/// Transport `conn` (a function of `z`) to `w = 1/z` and check the law
/// `T_w f' = T_z + f''/f'` or `R_w f'^2 = R_z + S(f)` with `f(z) = 1/z`,
/// whose Schwarzian vanishes.
pub fn connection_transform_check(conn: &RatFunc, kind: ConnectionKind) -> Result<TransformReport, KncError> {
    let z = RatFunc::z();
    let z2 = &z * &z;
    let fprime = RatFunc::new(Poly::constant(Rat::from_int(-1)), Poly::monomial(Rat::one(), 2))?;
    let (in_z, law_rhs, lhs_factor) = match kind {
        ConnectionKind::Affine => {
            // T_w(1/z) = -z^2 T_z + 2z
            let t = &(&z2 * conn).scale(&Rat::from_int(-1)) + &z.scale(&Rat::from_int(2));
            let f2_over_f1 = RatFunc::new(Poly::constant(Rat::from_int(-2)), Poly::monomial(Rat::one(), 1))?;
            (t, conn + &f2_over_f1, fprime.clone())
        }
        ConnectionKind::Projective => {
            let t = &(&z2 * &z2) * conn;
            (t, conn.clone(), &fprime * &fprime)
        }
    };
    let w_chart = flip(&in_z);
    let law_holds = &flip(&w_chart) * &lhs_factor == law_rhs;
    let order = w_chart.order_at(&RiemannPoint::finite(0));
    Ok(TransformReport {
        kind,
        w_chart: w_chart.to_string().replace('z', "w"),
        order_at_infinity: order,
        holomorphic_at_infinity: order.is_none_or(|o| o >= 0),
        law_holds,
    })
}
