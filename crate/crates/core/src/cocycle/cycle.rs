use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::KncError;
use crate::forms::MarkedConfig;

/// A marked point by role and 1-based position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MarkedRef {
    P(usize),
    Q(usize),
}

impl MarkedRef {
    /// Position in the list of all marked points, in-points first.
    pub fn position(&self, k: usize) -> usize {
        match *self {
            MarkedRef::P(i) => i - 1,
            MarkedRef::Q(j) => k + j - 1,
        }
    }
}

impl fmt::Display for MarkedRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkedRef::P(i) => write!(f, "P:{i}"),
            MarkedRef::Q(j) => write!(f, "Q:{j}"),
        }
    }
}

/// A formal integer combination of small circles around marked points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycleSpec {
    pub weights: BTreeMap<MarkedRef, i64>,
}

impl CycleSpec {
    /// `C_S = Σ_i C_{P_i}`.
    pub fn separating(k: usize) -> Self {
        CycleSpec {
            weights: (1..=k).map(|i| (MarkedRef::P(i), 1)).collect(),
        }
    }

    /// The circle `C_i` around the in-point `P_i`.
    pub fn point(i: usize) -> Self {
        CycleSpec {
            weights: BTreeMap::from([(MarkedRef::P(i), 1)]),
        }
    }

    pub fn from_weights(weights: impl IntoIterator<Item = (MarkedRef, i64)>) -> Result<Self, KncError> {
        let mut w = BTreeMap::new();
        for (r, c) in weights {
            *w.entry(r).or_insert(0) += c;
        }
        w.retain(|_, c| *c != 0);
        if w.is_empty() {
            return Err(KncError::Parse("cycle has no nonzero weight".into()));
        }
        Ok(CycleSpec { weights: w })
    }

    /// Parse `"sep"`, `"P:1"`, `"Q:2"` or signed combinations such as
    /// `"2*P:1-1*Q:1"` and `"P:1+2*P:2"`.
    pub fn parse(s: &str, cfg: &MarkedConfig) -> Result<Self, KncError> {
        let bad = |why: &str| KncError::Parse(format!("cycle {s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut weights = Vec::new();
        for t in terms {
            let (sign, body) = match t.as_bytes().first() {
                Some(b'+') => (1, &t[1..]),
                Some(b'-') => (-1, &t[1..]),
                _ => (1, t),
            };
            let (coef, atom) = match body.split_once('*') {
                Some((c, a)) => (c.parse::<i64>().map_err(|_| bad("bad coefficient"))?, a),
                None => (1, body),
            };
            let coef = sign * coef;
            if atom.eq_ignore_ascii_case("sep") {
                for i in 1..=cfg.k() {
                    weights.push((MarkedRef::P(i), coef));
                }
                continue;
            }
            let (role, idx) = atom.split_once(':').ok_or_else(|| bad("expected P:i or Q:j"))?;
            let idx: usize = idx.parse().map_err(|_| bad("bad point index"))?;
            let r = match role {
                "P" | "p" if (1..=cfg.k()).contains(&idx) => MarkedRef::P(idx),
                "Q" | "q" if (1..=cfg.m()).contains(&idx) => MarkedRef::Q(idx),
                "P" | "p" | "Q" | "q" => return Err(bad("point index out of range")),
                _ => return Err(bad("unknown point role")),
            };
            weights.push((r, coef));
        }
        Self::from_weights(weights)
    }
}

impl fmt::Display for CycleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, c) in &self.weights {
            if !first {
                write!(f, "{}", if *c < 0 { "-" } else { "+" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            first = false;
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let cfg = MarkedConfig::from_ints(&[0, 1], &[]).unwrap();
        assert_eq!(CycleSpec::parse("sep", &cfg).unwrap(), CycleSpec::separating(2));
        assert_eq!(CycleSpec::parse("P:1", &cfg).unwrap(), CycleSpec::point(1));
        let c = CycleSpec::parse("2*P:1-1*Q:1", &cfg).unwrap();
        assert_eq!(c.weights, BTreeMap::from([(MarkedRef::P(1), 2), (MarkedRef::Q(1), -1)]));
        let c = CycleSpec::parse("P:1+2*P:2", &cfg).unwrap();
        assert_eq!(c.to_string(), "P:1+2*P:2");
        assert!(CycleSpec::parse("P:3", &cfg).is_err());
        assert!(CycleSpec::parse("P:1-P:1", &cfg).is_err());
        assert!(CycleSpec::parse("X:1", &cfg).is_err());
    }
}
