use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::KncError;
use crate::exact::{Poly, Rat, RatFunc, RiemannPoint};

/// `func(z) dz^weight` in the global coordinate.
///
/// Weight `-1` is a vector field `e(z) d/dz`, weight `0` a function, weight
/// `1` a differential and weight `2` a quadratic differential.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    pub weight: i64,
    pub func: RatFunc,
}

/// Label of the basis element `f^λ_{n,p}`; `point` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    pub weight: i64,
    pub degree: i64,
    pub point: usize,
}

impl BasisIndex {
    pub fn new(weight: i64, degree: i64, point: usize) -> Self {
        BasisIndex {
            weight,
            degree,
            point,
        }
    }

    /// Function `A_{n,p}`.
    pub fn a(degree: i64, point: usize) -> Self {
        Self::new(0, degree, point)
    }

    /// Vector field `e_{n,p}`.
    pub fn e(degree: i64, point: usize) -> Self {
        Self::new(-1, degree, point)
    }

    /// Index of the dual element `f^{1-λ}_{-n,p}`.
    pub fn dual(&self) -> Self {
        Self::new(1 - self.weight, -self.degree, self.point)
    }

    pub fn is_function(&self) -> bool {
        self.weight == 0
    }

    pub fn is_vector(&self) -> bool {
        self.weight == -1
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.weight {
            0 => "A".to_string(),
            -1 => "e".to_string(),
            w => format!("f^{w}"),
        };
        write!(f, "{name}[{},{}]", self.degree, self.point)
    }
}

impl std::str::FromStr for BasisIndex {
    type Err = KncError;

    /// Inverse of `Display`: `A[n,p]`, `e[n,p]` or `f^w[n,p]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KncError::Parse(format!("basis index {s:?}, expected e.g. A[2,1] or e[-1,2]"));
        let s = s.trim();
        let (name, rest) = s.split_once('[').ok_or_else(bad)?;
        let inner = rest.strip_suffix(']').ok_or_else(bad)?;
        let (n, p) = inner.split_once(',').ok_or_else(bad)?;
        let weight = match name.trim() {
            "A" => 0,
            "e" => -1,
            w => w.strip_prefix("f^").and_then(|w| w.parse().ok()).ok_or_else(bad)?,
        };
        let degree = n.trim().parse().map_err(|_| bad())?;
        let point: usize = p.trim().parse().map_err(|_| bad())?;
        if point == 0 {
            return Err(bad());
        }
        Ok(BasisIndex::new(weight, degree, point))
    }
}

impl Form {
    pub fn new(weight: i64, func: RatFunc) -> Self {
        Form { weight, func }
    }

    pub fn zero(weight: i64) -> Self {
        Form::new(weight, RatFunc::zero())
    }

    pub fn function(func: RatFunc) -> Self {
        Form::new(0, func)
    }

    pub fn vector_field(func: RatFunc) -> Self {
        Form::new(-1, func)
    }

    pub fn is_zero(&self) -> bool {
        self.func.is_zero()
    }

    /// Order of the form at `p`; at infinity the `dz^λ` factor contributes `-2λ`.
    pub fn order_at(&self, p: &RiemannPoint) -> Option<i64> {
        let o = self.func.order_at(p)?;
        Some(match p {
            RiemannPoint::Infinity => o - 2 * self.weight,
            RiemannPoint::Finite(_) => o,
        })
    }

    pub fn scale(&self, c: &Rat) -> Form {
        Form::new(self.weight, self.func.scale(c))
    }

    pub fn add(&self, other: &Form) -> Result<Form, KncError> {
        if self.weight != other.weight {
            return Err(KncError::WeightMismatch(format!(
                "cannot add weights {} and {}",
                self.weight, other.weight
            )));
        }
        Ok(Form::new(self.weight, &self.func + &other.func))
    }

    fn weight_suffix(&self) -> String {
        match self.weight {
            0 => String::new(),
            -1 => " d/dz".to_string(),
            1 => " dz".to_string(),
            w if w > 1 => format!(" dz^{w}"),
            w => format!(" (d/dz)^{}", -w),
        }
    }

    /// Display with numerator and denominator factored over `points` when
    /// possible, e.g. `z^3 d/dz` or `z^-1 (z - 1)^2`.
    pub fn factored_display(&self, points: &[Rat]) -> String {
        let body = factor_over(&self.func, points).unwrap_or_else(|| self.func.to_string());
        format!("{body}{}", self.weight_suffix())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(FormJson::from(self)).expect("form serializes")
    }
}

fn factor_over(f: &RatFunc, points: &[Rat]) -> Option<String> {
    if f.is_zero() {
        return Some("0".to_string());
    }
    let mut exps = Vec::new();
    let mut num = f.num().clone();
    let mut den = f.den().clone();
    for a in points {
        let kn = num.root_multiplicity(a).unwrap_or(0);
        let kd = den.root_multiplicity(a).unwrap_or(0);
        for _ in 0..kn {
            num = num.synthetic_div(a).0;
        }
        for _ in 0..kd {
            den = den.synthetic_div(a).0;
        }
        let k = kn as i64 - kd as i64;
        if k != 0 {
            exps.push((a.clone(), k));
        }
    }
    if !num.is_constant() || !den.is_constant() {
        return None;
    }
    let c = num.coeff(0) / den.coeff(0);
    let mut parts = Vec::new();
    if !c.is_one() || exps.is_empty() {
        parts.push(if exps.is_empty() { c.to_string() } else { format!("{c}*") });
    }
    let factors: Vec<String> = exps
        .iter()
        .map(|(a, k)| {
            let base = if a.is_zero() {
                "z".to_string()
            } else if a.is_negative() {
                format!("(z + {})", a.abs())
            } else {
                format!("(z - {a})")
            };
            if *k == 1 {
                base
            } else {
                format!("{base}^{k}")
            }
        })
        .collect();
    let joined = factors.join(" ");
    match parts.pop() {
        Some(p) if !factors.is_empty() => Some(format!("{p}{joined}")),
        Some(p) => Some(p),
        None => Some(joined),
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}){}", self.func, self.weight_suffix())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({})", self.weight, self.func)
    }
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    weight: i64,
    num: Vec<Rat>,
    den: Vec<Rat>,
}

impl From<&Form> for FormJson {
    fn from(f: &Form) -> Self {
        FormJson {
            weight: f.weight,
            num: f.func.num().coeffs().to_vec(),
            den: f.func.den().coeffs().to_vec(),
        }
    }
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = FormJson::deserialize(d)?;
        let func = RatFunc::new(Poly::from_coeffs(j.num), Poly::from_coeffs(j.den))
            .map_err(serde::de::Error::custom)?;
        Ok(Form::new(j.weight, func))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn factored() {
        let f = Form::vector_field(RatFunc::from_factors(&q(1), [(&q(0), 3)]));
        assert_eq!(f.factored_display(&[q(0)]), "z^3 d/dz");
        let g = Form::function(RatFunc::from_factors(&q(-2), [(&q(0), -1), (&q(1), 2)]));
        assert_eq!(g.factored_display(&[q(0), q(1)]), "-2*z^-1 (z - 1)^2");
        let c = Form::new(2, RatFunc::one());
        assert_eq!(c.factored_display(&[q(0)]), "1 dz^2");
    }

    #[test]
    fn order_at_infinity_includes_weight() {
        // z^{n+1} d/dz has order 1-n at infinity
        let e = Form::vector_field(RatFunc::from_factors(&q(1), [(&q(0), 3)]));
        assert_eq!(e.order_at(&RiemannPoint::Infinity), Some(-1));
    }

    #[test]
    fn json_round_trip() {
        let f = Form::new(-1, RatFunc::from_factors(&q(1), [(&q(0), 2), (&q(1), -1)]));
        let s = serde_json::to_string(&f).unwrap();
        let back: Form = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn index_parse_round_trip() {
        for idx in [BasisIndex::a(-3, 2), BasisIndex::e(4, 1), BasisIndex::new(2, 0, 3)] {
            assert_eq!(idx.to_string().parse::<BasisIndex>().unwrap(), idx);
        }
        assert_eq!(" e[ -1 , 2 ]".parse::<BasisIndex>().unwrap(), BasisIndex::e(-1, 2));
        for bad in ["A[1]", "e[1,0]", "B[1,1]", "A1,1]"] {
            assert!(bad.parse::<BasisIndex>().is_err(), "{bad}");
        }
    }
}
