//! Products and brackets of forms and their structure constants.

mod table;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::{BasisIndex, Expansion, Form, KnContext};

pub use table::{boundary_coefficient_check, structure_table, BoundaryReport, BoundaryViolation, StructureTable};

/// Which bilinear operation a structure table describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OpKind {
    FunMul,
    VfBracket,
    LieDerivative(i64),
    D1Bracket,
}

impl std::fmt::Display for OpKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OpKind::FunMul => write!(f, "fun_mul"),
            OpKind::VfBracket => write!(f, "vf_bracket"),
            OpKind::LieDerivative(l) => write!(f, "lie_derivative({l})"),
            OpKind::D1Bracket => write!(f, "d1_bracket"),
        }
    }
}

/// An element `(g, e)` of `D¹ = A ⋉ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D1Element {
    pub function_part: Form,
    pub vf_part: Form,
}

impl D1Element {
    pub fn new(function_part: Form, vf_part: Form) -> Result<Self, KncError> {
        if function_part.weight != 0 || vf_part.weight != -1 {
            return Err(KncError::WeightMismatch(format!(
                "D1 element needs weights (0, -1), got ({}, {})",
                function_part.weight, vf_part.weight
            )));
        }
        Ok(D1Element {
            function_part,
            vf_part,
        })
    }

    pub fn function(g: Form) -> Result<Self, KncError> {
        Self::new(g, Form::zero(-1))
    }

    pub fn vector(e: Form) -> Result<Self, KncError> {
        Self::new(Form::zero(0), e)
    }

    pub fn zero() -> Self {
        D1Element {
            function_part: Form::zero(0),
            vf_part: Form::zero(-1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.function_part.is_zero() && self.vf_part.is_zero()
    }
}

fn need_weight(f: &Form, w: i64, what: &str) -> Result<(), KncError> {
    if f.weight != w {
        return Err(KncError::WeightMismatch(format!(
            "{what} needs weight {w}, got {}",
            f.weight
        )));
    }
    Ok(())
}

/// `f ⊗ g` with weights adding.
pub fn multiply_forms(f: &Form, g: &Form) -> Form {
    Form::new(f.weight + g.weight, &f.func * &g.func)
}

/// `L_e g = (e g' + λ g e') dz^λ`.
pub fn lie_derivative(e: &Form, g: &Form) -> Result<Form, KncError> {
    need_weight(e, -1, "Lie derivative along a vector field")?;
    let a = &e.func * &g.func.derivative();
    let b = (&g.func * &e.func.derivative()).scale(&Rat::from_int(g.weight));
    Ok(Form::new(g.weight, &a + &b))
}

/// `[e, f] = (e f' - f e') d/dz`.
pub fn vf_bracket(e: &Form, f: &Form) -> Result<Form, KncError> {
    need_weight(e, -1, "vector field bracket")?;
    need_weight(f, -1, "vector field bracket")?;
    let a = &e.func * &f.func.derivative();
    let b = &f.func * &e.func.derivative();
    Ok(Form::new(-1, &a - &b))
}

/// `[(g, e), (h, f)] = (e.h - f.g, [e, f])`.
pub fn d1_bracket(a: &D1Element, b: &D1Element) -> Result<D1Element, KncError> {
    let eh = lie_derivative(&a.vf_part, &b.function_part)?;
    let fg = lie_derivative(&b.vf_part, &a.function_part)?;
    let func = Form::new(0, &eh.func - &fg.func);
    D1Element::new(func, vf_bracket(&a.vf_part, &b.vf_part)?)
}

/// Expansion of the basis product `op(x, y)`, memoized in the context.
///
/// For [`OpKind::D1Bracket`] both arguments are `D¹` generators (weight 0 or
/// -1) and the result mixes function and vector-field coordinates.
pub fn basis_op(ctx: &KnContext, kind: OpKind, x: BasisIndex, y: BasisIndex) -> Result<Arc<Expansion>, KncError> {
    let key = (kind, x, y);
    if let Some(v) = ctx.op_cached(&key) {
        return Ok(v);
    }
    let val = match kind {
        OpKind::FunMul => {
            let f = multiply_forms(ctx.basis(x)?.as_ref(), ctx.basis(y)?.as_ref());
            ctx.expand(&f)?
        }
        OpKind::VfBracket => ctx.expand(&vf_bracket(ctx.basis(x)?.as_ref(), ctx.basis(y)?.as_ref())?)?,
        OpKind::LieDerivative(l) => {
            if y.weight != l {
                return Err(KncError::WeightMismatch(format!("{y} is not of weight {l}")));
            }
            ctx.expand(&lie_derivative(ctx.basis(x)?.as_ref(), ctx.basis(y)?.as_ref())?)?
        }
        OpKind::D1Bracket => match (x.weight, y.weight) {
            (0, 0) => Expansion::new(),
            (-1, 0) => (*basis_op(ctx, OpKind::LieDerivative(0), x, y)?).clone(),
            (0, -1) => {
                let v = basis_op(ctx, OpKind::LieDerivative(0), y, x)?;
                v.iter().map(|(k, c)| (*k, -c)).collect()
            }
            (-1, -1) => (*basis_op(ctx, OpKind::VfBracket, x, y)?).clone(),
            _ => {
                return Err(KncError::WeightMismatch(format!(
                    "D1 generators have weight 0 or -1, got {x} and {y}"
                )))
            }
        },
    };
    Ok(ctx.op_store(key, Arc::new(val)))
}

/// Bracket of two `D¹` elements given in basis coordinates.
pub fn d1_bracket_coords(ctx: &KnContext, a: &Expansion, b: &Expansion) -> Result<Expansion, KncError> {
    let mut out = Expansion::new();
    for (x, cx) in a {
        for (y, cy) in b {
            let c = cx * cy;
            for (h, v) in basis_op(ctx, OpKind::D1Bracket, *x, *y)?.iter() {
                *out.entry(*h).or_insert_with(Rat::zero) += v * &c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Product of two functions given in basis coordinates.
pub fn fun_mul_coords(ctx: &KnContext, a: &Expansion, b: &Expansion) -> Result<Expansion, KncError> {
    let mut out = Expansion::new();
    for (x, cx) in a {
        for (y, cy) in b {
            let c = cx * cy;
            for (h, v) in basis_op(ctx, OpKind::FunMul, *x, *y)?.iter() {
                *out.entry(*h).or_insert_with(Rat::zero) += v * &c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Single-generator coordinates.
pub fn unit(idx: BasisIndex) -> Expansion {
    Expansion::from([(idx, Rat::one())])
}
