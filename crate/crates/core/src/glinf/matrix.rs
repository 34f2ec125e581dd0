use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::KncError;
use crate::exact::Rat;

/// A finite piece of a banded `ℤ × ℤ` matrix: indices in `[lo, hi)` and
/// nonzero entries only within `band` of the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandedWindowMatrix {
    pub lo: i64,
    pub hi: i64,
    pub band: i64,
    pub entries: BTreeMap<(i64, i64), Rat>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    window: (i64, i64),
    band: i64,
    triplets: Vec<(i64, i64, Rat)>,
}

impl Serialize for BandedWindowMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            window: (self.lo, self.hi),
            band: self.band,
            triplets: self.entries.iter().map(|(&(i, j), v)| (i, j, v.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BandedWindowMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        BandedWindowMatrix::from_entries(
            j.window,
            j.band,
            j.triplets.into_iter().map(|(i, k, v)| ((i, k), v)),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl BandedWindowMatrix {
    pub fn zero(window: (i64, i64), band: i64) -> Self {
        BandedWindowMatrix {
            lo: window.0,
            hi: window.1,
            band,
            entries: BTreeMap::new(),
        }
    }

    /// The window `[-w, w)`.
    pub fn symmetric(w: i64, band: i64) -> Self {
        Self::zero((-w, w), band)
    }

    pub fn from_entries(
        window: (i64, i64),
        band: i64,
        entries: impl IntoIterator<Item = ((i64, i64), Rat)>,
    ) -> Result<Self, KncError> {
        let mut m = Self::zero(window, band);
        for ((i, j), v) in entries {
            m.set(i, j, v)?;
        }
        Ok(m)
    }

    pub fn contains(&self, i: i64) -> bool {
        (self.lo..self.hi).contains(&i)
    }

    pub fn set(&mut self, i: i64, j: i64, v: Rat) -> Result<(), KncError> {
        if !self.contains(i) || !self.contains(j) {
            return Err(KncError::Invalid(format!(
                "entry ({i}, {j}) outside window [{}, {})",
                self.lo, self.hi
            )));
        }
        if (i - j).abs() > self.band {
            return Err(KncError::Invalid(format!("entry ({i}, {j}) outside band {}", self.band)));
        }
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
        Ok(())
    }

    pub fn get(&self, i: i64, j: i64) -> Rat {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// `A_r(μ) = Σ_i μ_i E_{i,i+r}` over the window.
    pub fn diagonal(window: (i64, i64), r: i64, mu: impl Fn(i64) -> Rat) -> Self {
        let mut m = Self::zero(window, r.abs());
        for i in window.0..window.1 {
            if m.contains(i + r) {
                m.set(i, i + r, mu(i)).expect("in band");
            }
        }
        m
    }

    /// The matrix unit `E_{k,l}`.
    pub fn unit(window: (i64, i64), k: i64, l: i64) -> Result<Self, KncError> {
        Self::from_entries(window, (k - l).abs(), [((k, l), Rat::one())])
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut m = Self::zero((self.lo, self.hi), self.band);
        if !c.is_zero() {
            m.entries = self.entries.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        m
    }

    /// Sum on the common window.
    pub fn add(&self, other: &Self) -> Self {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        let mut m = Self::zero((lo, hi), self.band.max(other.band));
        for src in [self, other] {
            for (&(i, j), v) in &src.entries {
                if m.contains(i) && m.contains(j) {
                    let e = m.entries.entry((i, j)).or_insert_with(Rat::zero);
                    *e += v;
                }
            }
        }
        m.entries.retain(|_, v| !v.is_zero());
        m
    }

    /// Product, exact on the window shrunk by the larger band.
    pub fn mul(&self, other: &Self) -> Result<Self, KncError> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        let shrink = self.band.max(other.band);
        if hi - lo <= 2 * shrink {
            return Err(KncError::WindowTooSmall {
                needed: 2 * shrink + 1,
                have: hi - lo,
            });
        }
        let mut m = Self::zero((lo + shrink, hi - shrink), self.band + other.band);
        let mut by_row: BTreeMap<i64, Vec<(i64, &Rat)>> = BTreeMap::new();
        for (&(j, k), v) in &other.entries {
            by_row.entry(j).or_default().push((k, v));
        }
        for (&(i, j), a) in &self.entries {
            if !m.contains(i) {
                continue;
            }
            let Some(row) = by_row.get(&j) else { continue };
            for &(k, b) in row {
                if m.contains(k) {
                    *m.entries.entry((i, k)).or_insert_with(Rat::zero) += a * b;
                }
            }
        }
        m.entries.retain(|_, v| !v.is_zero());
        Ok(m)
    }

    /// `[A, B] = AB - BA` on the shrunk window.
    pub fn commutator(&self, other: &Self) -> Result<Self, KncError> {
        Ok(self.mul(other)?.add(&other.mul(self)?.scale(&Rat::from_int(-1))))
    }
}

/// `tr(A₃B₂)` with `A₃` the block of rows `≥ 0`, columns `< 0` and `B₂` the
/// block of rows `< 0`, columns `≥ 0`.
fn corner_trace(a: &BandedWindowMatrix, b: &BandedWindowMatrix) -> Rat {
    let mut acc = Rat::zero();
    for (&(i, j), v) in a.entries.range((0, i64::MIN)..) {
        if j < 0 {
            if let Some(w) = b.entries.get(&(j, i)) {
                acc += v * w;
            }
        }
    }
    acc
}

/// The standard cocycle `α(A, B) = tr(A₃B₂) - tr(B₃A₂)`.
///
/// Both windows must contain `[-(b_A + b_B), b_A + b_B)`, so that the corner
/// blocks are complete.
pub fn std_cocycle(a: &BandedWindowMatrix, b: &BandedWindowMatrix) -> Result<Rat, KncError> {
    let need = a.band + b.band;
    for m in [a, b] {
        if m.lo > -need || m.hi < need {
            return Err(KncError::WindowTooSmall {
                needed: need,
                have: (-m.lo).min(m.hi),
            });
        }
    }
    Ok(corner_trace(a, b) - corner_trace(b, a))
}
