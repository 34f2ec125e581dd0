use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::KncError;
use crate::exact::{Rat, RatFunc};
use crate::forms::{BasisIndex, Expansion, Form, KnContext};
use crate::ops::{basis_op, lie_derivative, vf_bracket, OpKind};

/// Which dual sum defines the coboundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoboundaryKind {
    /// `W = Σ β Ω^{n,r}`, quadratic differentials; `D_W(e, f) = <W, [e, f]>`.
    W,
    /// `V = Σ β ω^{n,r}`, 1-differentials; `E_V(e, g) = <V, e.g>`.
    V,
}

impl CoboundaryKind {
    pub fn weight(&self) -> i64 {
        match self {
            CoboundaryKind::W => 2,
            CoboundaryKind::V => 1,
        }
    }
}

/// A finite combination of `Ω^{n,r} = f^2_{n,r}` or `ω^{n,r} = f^1_{n,r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoboundaryData {
    pub kind: CoboundaryKind,
    pub coefficients: BTreeMap<(i64, usize), Rat>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    n: i64,
    r: usize,
    coefficient: Rat,
}

#[derive(Serialize, Deserialize)]
struct DataJson {
    kind: CoboundaryKind,
    terms: Vec<Term>,
}

impl Serialize for CoboundaryData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DataJson {
            kind: self.kind,
            terms: self
                .coefficients
                .iter()
                .map(|(&(n, r), c)| Term {
                    n,
                    r,
                    coefficient: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoboundaryData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = DataJson::deserialize(d)?;
        Ok(CoboundaryData::new(
            j.kind,
            j.terms.into_iter().map(|t| ((t.n, t.r), t.coefficient)),
        ))
    }
}

impl CoboundaryData {
    pub fn new(kind: CoboundaryKind, terms: impl IntoIterator<Item = ((i64, usize), Rat)>) -> Self {
        let mut coefficients = BTreeMap::new();
        for (k, c) in terms {
            *coefficients.entry(k).or_insert_with(Rat::zero) += c;
        }
        coefficients.retain(|_, c: &mut Rat| !c.is_zero());
        CoboundaryData { kind, coefficients }
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// The dual sum as a single form.
    pub fn dual_form(&self, ctx: &KnContext) -> Result<Form, KncError> {
        let w = self.kind.weight();
        let mut acc = RatFunc::zero();
        for (&(n, r), c) in &self.coefficients {
            acc = &acc + &ctx.basis(BasisIndex::new(w, n, r))?.func.scale(c);
        }
        Ok(Form::new(w, acc))
    }

    /// Pair the dual sum with basis coordinates: `Ω^{n,r}` picks the
    /// coefficient of degree `-n` at point `r`.
    pub fn pair_coords(&self, coords: &Expansion) -> Rat {
        let mut acc = Rat::zero();
        for (idx, v) in coords {
            if let Some(b) = self.coefficients.get(&(-idx.degree, idx.point)) {
                acc += b * v;
            }
        }
        acc
    }

    /// Value on a pair of basis elements, through expanded brackets.
    pub fn value(&self, ctx: &KnContext, x: BasisIndex, y: BasisIndex) -> Result<Rat, KncError> {
        match (self.kind, x.weight, y.weight) {
            (CoboundaryKind::W, -1, -1) => Ok(self.pair_coords(&*basis_op(ctx, OpKind::VfBracket, x, y)?)),
            (CoboundaryKind::V, -1, 0) => Ok(self.pair_coords(&*basis_op(ctx, OpKind::LieDerivative(0), x, y)?)),
            (CoboundaryKind::V, 0, -1) => Ok(-self.value(ctx, y, x)?),
            _ => Err(KncError::KindMismatch(format!(
                "{:?} coboundary cannot take ({x}, {y})",
                self.kind
            ))),
        }
    }
}

/// `D_W(e, f) = <W, [e, f]>` or `E_V(e, g) = <V, e.g>` on arbitrary forms,
/// by the residue pairing.
pub fn coboundary(ctx: &KnContext, data: &CoboundaryData, x: &Form, y: &Form) -> Result<Rat, KncError> {
    let w = data.dual_form(ctx)?;
    let arg = match (data.kind, x.weight, y.weight) {
        (CoboundaryKind::W, -1, -1) => vf_bracket(x, y)?,
        (CoboundaryKind::V, -1, 0) => lie_derivative(x, y)?,
        (CoboundaryKind::V, 0, -1) => return Ok(-coboundary(ctx, data, y, x)?),
        _ => {
            return Err(KncError::KindMismatch(format!(
                "{:?} coboundary cannot take weights ({}, {})",
                data.kind, x.weight, y.weight
            )))
        }
    };
    if arg.is_zero() || w.is_zero() {
        return Ok(Rat::zero());
    }
    ctx.pairing(&w, &arg)
}
