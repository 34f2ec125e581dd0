use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{basis_op, OpKind};
use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::{BasisIndex, Expansion, KnContext};

/// Expanded products of all basis pairs with degrees in a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureTable {
    pub op_kind: OpKind,
    pub window: (i64, i64),
    pub k: usize,
    pub entries: BTreeMap<(BasisIndex, BasisIndex), Expansion>,
    /// Smallest observed `h - (n + m)` over nonzero coefficients.
    pub lower_shift: i64,
    /// Largest observed `h - (n + m)` over nonzero coefficients.
    pub upper_shift: i64,
}

fn generators(kind: OpKind, window: (i64, i64), k: usize) -> (Vec<BasisIndex>, Vec<BasisIndex>) {
    let span = |w: i64| -> Vec<BasisIndex> {
        (window.0..=window.1)
            .flat_map(|n| (1..=k).map(move |p| BasisIndex::new(w, n, p)))
            .collect()
    };
    match kind {
        OpKind::FunMul => (span(0), span(0)),
        OpKind::VfBracket => (span(-1), span(-1)),
        OpKind::LieDerivative(l) => (span(-1), span(l)),
        OpKind::D1Bracket => {
            let mut all = span(0);
            all.extend(span(-1));
            (all.clone(), all)
        }
    }
}

/// Fill the table for `kind` over `window` in parallel.
pub fn structure_table(ctx: &KnContext, kind: OpKind, window: (i64, i64)) -> Result<StructureTable, KncError> {
    if window.0 > window.1 {
        return Err(KncError::Invalid(format!("empty window {window:?}")));
    }
    let (xs, ys) = generators(kind, window, ctx.k());
    let pairs: Vec<(BasisIndex, BasisIndex)> = xs
        .iter()
        .flat_map(|x| ys.iter().map(move |y| (*x, *y)))
        .collect();
    let values: Vec<Expansion> = pairs
        .par_iter()
        .map(|(x, y)| basis_op(ctx, kind, *x, *y).map(|v| (*v).clone()))
        .collect::<Result<_, _>>()?;
    let mut lower: Option<i64> = None;
    let mut upper: Option<i64> = None;
    let mut entries = BTreeMap::new();
    for ((x, y), v) in pairs.into_iter().zip(values) {
        for h in v.keys() {
            let s = h.degree - x.degree - y.degree;
            lower = Some(lower.map_or(s, |l| l.min(s)));
            upper = Some(upper.map_or(s, |u| u.max(s)));
        }
        entries.insert((x, y), v);
    }
    Ok(StructureTable {
        op_kind: kind,
        window,
        k: ctx.k(),
        entries,
        lower_shift: lower.unwrap_or(0),
        upper_shift: upper.unwrap_or(0),
    })
}

impl StructureTable {
    /// Coefficient of `target` in the product of `x` and `y`.
    pub fn coefficient(&self, x: BasisIndex, y: BasisIndex, target: BasisIndex) -> Option<Rat> {
        self.entries
            .get(&(x, y))
            .map(|e| e.get(&target).cloned().unwrap_or_else(Rat::zero))
    }

    fn rows(&self) -> impl Iterator<Item = (&BasisIndex, &BasisIndex, &BasisIndex, &Rat)> {
        self.entries
            .iter()
            .flat_map(|((x, y), e)| e.iter().map(move |(h, c)| (x, y, h, c)))
    }

    /// One JSON object per nonzero coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows()
            .map(|(x, y, h, c)| {
                serde_json::json!({
                    "left": x, "right": y, "target": h, "coefficient": c.to_string()
                })
            })
            .collect();
        serde_json::json!({
            "op_kind": self.op_kind.to_string(),
            "window": [self.window.0, self.window.1],
            "k": self.k,
            "lower_shift": self.lower_shift,
            "upper_shift": self.upper_shift,
            "rows": rows,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("left_weight,n,p,right_weight,m,r,target_weight,h,t,coefficient\n");
        for (x, y, h, c) in self.rows() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                x.weight, x.degree, x.point, y.weight, y.degree, y.point, h.weight, h.degree, h.point, c
            ));
        }
        out
    }
}

/// A pair whose degree-`(n+m)` coefficient differs from the predicted one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryViolation {
    pub left: BasisIndex,
    pub right: BasisIndex,
    pub target: BasisIndex,
    pub expected: Rat,
    pub got: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub op_kind: OpKind,
    pub checked_pairs: usize,
    pub lower_shift: i64,
    pub upper_shift: i64,
    pub violations: Vec<BoundaryViolation>,
}

impl BoundaryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.lower_shift >= 0
    }
}

/// Leading coefficient of `op(x, y)` at degree `n+m` for generators sharing
/// the in-point index, and the weight of the target.
fn leading(kind: OpKind, x: BasisIndex, y: BasisIndex) -> (i64, Rat) {
    let (n, m) = (x.degree, y.degree);
    match kind {
        OpKind::FunMul => (0, Rat::one()),
        OpKind::VfBracket => (-1, Rat::from_int(m - n)),
        OpKind::LieDerivative(l) => (l, Rat::from_int(m + l * n)),
        OpKind::D1Bracket => match (x.weight, y.weight) {
            (0, 0) => (0, Rat::zero()),
            (-1, 0) => (0, Rat::from_int(m)),
            (0, -1) => (0, Rat::from_int(-n)),
            _ => (-1, Rat::from_int(m - n)),
        },
    }
}

/// Compare every degree-`(n+m)` coefficient with `δ_p^r` times the classical
/// structure constant.
pub fn boundary_coefficient_check(table: &StructureTable) -> BoundaryReport {
    let mut violations = Vec::new();
    for ((x, y), e) in &table.entries {
        let (w, lead) = leading(table.op_kind, *x, *y);
        for t in 1..=table.k {
            let target = BasisIndex::new(w, x.degree + y.degree, t);
            let expected = if x.point == y.point && y.point == t {
                lead.clone()
            } else {
                Rat::zero()
            };
            let got = e.get(&target).cloned().unwrap_or_else(Rat::zero);
            if got != expected {
                violations.push(BoundaryViolation {
                    left: *x,
                    right: *y,
                    target,
                    expected,
                    got,
                });
            }
        }
    }
    BoundaryReport {
        op_kind: table.op_kind,
        checked_pairs: table.entries.len(),
        lower_shift: table.lower_shift,
        upper_shift: table.upper_shift,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::forms::MarkedConfig;

    #[test]
    fn classical_vf_table() {
        let ctx = KnContext::new(MarkedConfig::classical()).unwrap();
        let t = structure_table(&ctx, OpKind::VfBracket, (-5, 5)).unwrap();
        assert_eq!((t.lower_shift, t.upper_shift), (0, 0));
        assert!(boundary_coefficient_check(&t).passed());
    }

    #[test]
    fn two_point_tables() {
        let ctx = KnContext::new(MarkedConfig::from_ints(&[0, 1], &[]).unwrap()).unwrap();
        let t = structure_table(&ctx, OpKind::FunMul, (-4, 4)).unwrap();
        assert_eq!(t.lower_shift, 0);
        assert!(boundary_coefficient_check(&t).passed());
        assert_eq!(
            t.entries[&(BasisIndex::a(1, 1), BasisIndex::a(1, 2))],
            Expansion::from([(BasisIndex::a(3, 1), q(-1)), (BasisIndex::a(3, 2), q(1))])
        );
        let lt = structure_table(&ctx, OpKind::LieDerivative(2), (-2, 2)).unwrap();
        assert_eq!(
            lt.coefficient(BasisIndex::e(1, 1), BasisIndex::new(2, 0, 1), BasisIndex::new(2, 1, 1)),
            Some(q(2))
        );
        assert!(boundary_coefficient_check(&lt).passed());
        let d1 = structure_table(&ctx, OpKind::D1Bracket, (-2, 2)).unwrap();
        assert!(boundary_coefficient_check(&d1).passed());
        let csv = t.to_csv();
        assert!(csv.lines().any(|l| l == "0,1,1,0,1,2,0,3,1,-1"));
    }
}
