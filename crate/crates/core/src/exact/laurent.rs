//! Truncated Laurent expansions at a point of the sphere.

use super::point::RiemannPoint;
use super::poly::Poly;
use super::rat::Rat;

/// Exact Laurent coefficients `c_k` of `(z - a)^k` (or `w^k`, `w = 1/z`, at
/// infinity) for `k = first_exponent .. first_exponent + coefficients.len()`.
///
/// Coefficients below `first_exponent` are zero; coefficients at or past
/// [`LaurentSlice::end`] are unknown. When produced by
/// [`RatFunc::laurent_leading`](super::RatFunc::laurent_leading) the first
/// coefficient is nonzero unless the expanded function is `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSlice {
    pub at: RiemannPoint,
    pub first_exponent: i64,
    pub coefficients: Vec<Rat>,
}

impl LaurentSlice {
    pub fn new(at: RiemannPoint, first_exponent: i64, coefficients: Vec<Rat>) -> Self {
        LaurentSlice {
            at,
            first_exponent,
            coefficients,
        }
    }

    /// First exponent whose coefficient is not known.
    pub fn end(&self) -> i64 {
        self.first_exponent + self.coefficients.len() as i64
    }

    /// Coefficient of exponent `k`; panics when `k` is past the known range.
    pub fn coeff(&self, k: i64) -> Rat {
        if k < self.first_exponent {
            return Rat::zero();
        }
        assert!(
            k < self.end(),
            "Laurent coefficient {k} requested beyond known range (end {})",
            self.end()
        );
        self.coefficients[(k - self.first_exponent) as usize].clone()
    }

    pub fn is_known(&self, k: i64) -> bool {
        k < self.end()
    }

    /// Cauchy product, exact on the overlap of both known ranges.
    pub fn mul(&self, other: &LaurentSlice) -> LaurentSlice {
        let len = self.coefficients.len().min(other.coefficients.len());
        let mut out = vec![Rat::zero(); len];
        for (i, a) in self.coefficients.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().take(len - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentSlice::new(
            self.at.clone(),
            self.first_exponent + other.first_exponent,
            out,
        )
    }

    pub fn add(&self, other: &LaurentSlice) -> LaurentSlice {
        let start = self.first_exponent.min(other.first_exponent);
        let end = self.end().min(other.end());
        let coeffs = (start..end.max(start))
            .map(|k| self.coeff(k) + other.coeff(k))
            .collect();
        LaurentSlice::new(self.at.clone(), start, coeffs)
    }

    pub fn scale(&self, c: &Rat) -> LaurentSlice {
        LaurentSlice::new(
            self.at.clone(),
            self.first_exponent,
            self.coefficients.iter().map(|x| x * c).collect(),
        )
    }

    /// Term-wise derivative with respect to the local coordinate.
    pub fn derivative(&self) -> LaurentSlice {
        let coeffs = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rat::from_int(self.first_exponent + i as i64))
            .collect();
        LaurentSlice::new(self.at.clone(), self.first_exponent - 1, coeffs)
    }

    /// Coefficient of the product at exponent `k` without forming the product.
    pub fn product_coeff(&self, other: &LaurentSlice, k: i64) -> Rat {
        let lo = self.first_exponent;
        let hi = k - other.first_exponent;
        let mut acc = Rat::zero();
        for i in lo..=hi {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            acc += a * other.coeff(k - i);
        }
        acc
    }
}

/// First `len` coefficients of the power series `n / d`, `d(0) != 0`.
pub(crate) fn series_quotient(n: &Poly, d: &Poly, len: usize) -> Vec<Rat> {
    let d0_inv = d.coeff(0).recip().expect("series denominator must not vanish at 0");
    let dc = d.coeffs();
    let mut out: Vec<Rat> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = n.coeff(k);
        for j in 1..=k.min(dc.len().saturating_sub(1)) {
            let qk = &out[k - j];
            if !qk.is_zero() && !dc[j].is_zero() {
                acc -= &dc[j] * qk;
            }
        }
        out.push(acc * &d0_inv);
    }
    out
}
