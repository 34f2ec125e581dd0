use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::Rat;
use crate::error::KncError;

/// A point of the Riemann sphere: a finite rational coordinate or infinity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RiemannPoint {
    Finite(Rat),
    Infinity,
}

impl RiemannPoint {
    pub fn finite(v: impl Into<Rat>) -> Self {
        RiemannPoint::Finite(v.into())
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, RiemannPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            RiemannPoint::Finite(a) => Some(a),
            RiemannPoint::Infinity => None,
        }
    }
}

impl fmt::Display for RiemannPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RiemannPoint::Finite(a) => write!(f, "{a}"),
            RiemannPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for RiemannPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RiemannPoint {
    type Err = KncError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(RiemannPoint::Infinity),
            other => Ok(RiemannPoint::Finite(other.parse()?)),
        }
    }
}

impl Serialize for RiemannPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RiemannPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
