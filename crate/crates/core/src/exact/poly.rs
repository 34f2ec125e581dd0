//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rat::Rat;
use crate::error::KncError;

/// A polynomial `Σ c_k z^k` stored densely by exponent.
///
/// Trailing zero coefficients are never stored, so the zero polynomial is the
/// empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    /// `(z - a)^k`.
    pub fn linear_power(a: &Rat, k: u32) -> Self {
        // binomial expansion keeps this exact and allocation-light
        let k = k as usize;
        let mut v = Vec::with_capacity(k + 1);
        let neg_a = -a;
        let mut binom = Rat::one();
        let mut apow = Rat::one();
        let mut pows = Vec::with_capacity(k + 1);
        for _ in 0..=k {
            pows.push(apow.clone());
            apow = &apow * &neg_a;
        }
        for j in 0..=k {
            // coefficient of z^j is C(k, j) (-a)^(k-j)
            v.push(&binom * &pows[k - j]);
            binom = binom * Rat::from_int((k - j) as i64) / Rat::from_int(j as i64 + 1);
        }
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| Rat::from_int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().recip().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), KncError> {
        let dd = d.degree().ok_or(KncError::DivisionByZero)?;
        let Some(sd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if sd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = d.leading().recip()?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] * &inv_lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(rem)))
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Divide by `(z - a)` once; returns the quotient and the remainder `p(a)`.
    pub fn synthetic_div(&self, a: &Rat) -> (Poly, Rat) {
        if self.is_zero() {
            return (Poly::zero(), Rat::zero());
        }
        let n = self.coeffs.len();
        let mut out = vec![Rat::zero(); n - 1];
        let mut carry = Rat::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &(&carry * a);
            if k == 0 {
                return (Poly::from_coeffs(out), v);
            }
            out[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Multiplicity of `a` as a root; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, a: &Rat) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.synthetic_div(a);
            if !r.is_zero() {
                return Some(k);
            }
            p = q;
            k += 1;
        }
    }

    /// Coefficients of `p(a + t)` in powers of `t`.
    pub fn taylor_shift(&self, a: &Rat) -> Poly {
        if a.is_zero() {
            return self.clone();
        }
        // repeated synthetic division by (z - a) yields the Taylor coefficients
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut p = self.clone();
        while !p.is_zero() {
            let (q, r) = p.synthetic_div(a);
            out.push(r);
            p = q;
        }
        Poly::from_coeffs(out)
    }

    /// `z^n p(1/z)` for `n >= deg p`: the coefficient vector reversed and padded.
    pub fn reversed(&self, n: usize) -> Poly {
        let mut v = vec![Rat::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[n - k] = c.clone();
        }
        Poly::from_coeffs(v)
    }

    /// Substitute `z = (a u + b)/(c u + d)` and clear denominators by
    /// `(c u + d)^n`, `n >= deg p`.
    pub fn mobius_numerator(&self, a: &Rat, b: &Rat, c: &Rat, d: &Rat, n: usize) -> Poly {
        let top = Poly::from_coeffs(vec![b.clone(), a.clone()]);
        let bot = Poly::from_coeffs(vec![d.clone(), c.clone()]);
        let mut acc = Poly::zero();
        let mut top_pow = Poly::one();
        for k in 0..=n {
            let ck = self.coeff(k);
            if !ck.is_zero() {
                let term = &top_pow * &bot.pow((n - k) as u32);
                acc = &acc + &term.scale(&ck);
            }
            top_pow = &top_pow * &top;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(v)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}z", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}z^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::q;

    #[test]
    fn linear_power_matches_repeated_product() {
        let a = Rat::new(3, 2);
        let lin = Poly::from_coeffs(vec![-&a, Rat::one()]);
        assert_eq!(Poly::linear_power(&a, 5), lin.pow(5));
        assert_eq!(Poly::linear_power(&a, 0), Poly::one());
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = Poly::from_ints(&[1, -3, 0, 2, 5]);
        let d = Poly::from_ints(&[2, 1, 3]);
        let (qq, r) = p.div_rem(&d).unwrap();
        assert_eq!(&(&qq * &d) + &r, p);
        assert!(r.degree().unwrap() < 2);
        assert!(p.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = &Poly::linear_power(&q(1), 2) * &Poly::from_ints(&[1, 0, 1]);
        let g = &Poly::linear_power(&q(1), 1) * &Poly::from_ints(&[-2, 1]);
        assert_eq!(f.gcd(&g), Poly::linear_power(&q(1), 1));
    }

    #[test]
    fn taylor_shift_and_multiplicity() {
        // (z-1)^2 (z+2) expanded around 1
        let p = &Poly::linear_power(&q(1), 2) * &Poly::from_ints(&[2, 1]);
        let s = p.taylor_shift(&q(1));
        assert_eq!(s, Poly::from_ints(&[0, 0, 3, 1]));
        assert_eq!(p.root_multiplicity(&q(1)), Some(2));
        assert_eq!(p.root_multiplicity(&q(-2)), Some(1));
        assert_eq!(p.root_multiplicity(&q(0)), Some(0));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[0, -1, 1]).to_string(), "z^2 - z");
        assert_eq!(Poly::from_coeffs(vec![Rat::new(1, 2), q(2)]).to_string(), "2*z + 1/2");
    }
}
