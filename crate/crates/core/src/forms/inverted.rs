use serde::Serialize;

use super::config::MarkedConfig;
use super::form::Form;
use crate::error::KncError;
use crate::exact::{Poly, Rat, RatFunc, RiemannPoint};

/// The substitution `z = (a u + b)/(c u + d)` from a new coordinate `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mobius {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Mobius {
    /// `u` as a function of the old coordinate, applied to a point.
    pub fn image(&self, x: &RiemannPoint) -> RiemannPoint {
        // u = (d x - b) / (a - c x)
        match x {
            RiemannPoint::Infinity => {
                if self.c.is_zero() {
                    RiemannPoint::Infinity
                } else {
                    RiemannPoint::Finite(-&self.d / &self.c)
                }
            }
            RiemannPoint::Finite(x) => {
                let den = &self.a - &self.c * x;
                if den.is_zero() {
                    RiemannPoint::Infinity
                } else {
                    RiemannPoint::Finite((&self.d * x - &self.b) / den)
                }
            }
        }
    }

    /// Pull back `f(z) dz^λ` to `f(z(u)) (dz/du)^λ du^λ`.
    pub fn transport(&self, f: &Form) -> Result<Form, KncError> {
        let g = f.func.compose_mobius(&self.a, &self.b, &self.c, &self.d);
        let det = &self.a * &self.d - &self.b * &self.c;
        let jac = RatFunc::new(
            Poly::constant(det),
            Poly::from_coeffs(vec![self.d.clone(), self.c.clone()]).pow(2),
        )?;
        Ok(Form::new(f.weight, &g * &jac.pow(f.weight)?))
    }
}

/// A configuration with in- and out-points exchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvertedConfig {
    pub config: MarkedConfig,
    /// Coordinate change applied first, when infinity had to move.
    pub flip: Option<Mobius>,
}

impl InvertedConfig {
    /// Transport a form on the original configuration to the inverted one.
    pub fn transport(&self, f: &Form) -> Result<Form, KncError> {
        match &self.flip {
            Some(m) => m.transport(f),
            None => Ok(f.clone()),
        }
    }
}

/// `I* = O`, `O* = I`. When infinity is an out-point the coordinate
/// `u = 1/(z - P_1)` is used so that every new in-point is finite.
pub fn inverted_config(cfg: &MarkedConfig) -> InvertedConfig {
    if !cfg.has_infinity() {
        return InvertedConfig {
            config: MarkedConfig {
                in_points: cfg.out_points.clone(),
                out_points: cfg.in_points.clone(),
            },
            flip: None,
        };
    }
    let p1 = cfg.in_points[0].as_finite().cloned().unwrap_or_else(Rat::zero);
    let m = Mobius {
        a: p1,
        b: Rat::one(),
        c: Rat::one(),
        d: Rat::zero(),
    };
    InvertedConfig {
        config: MarkedConfig {
            in_points: cfg.out_points.iter().map(|p| m.image(p)).collect(),
            out_points: cfg.in_points.iter().map(|p| m.image(p)).collect(),
        },
        flip: Some(m),
    }
}
