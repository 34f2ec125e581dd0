//! Rational functions in one variable in canonical reduced form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::laurent::{series_quotient, LaurentSlice};
use super::point::RiemannPoint;
use super::poly::Poly;
use super::rat::Rat;
use crate::error::KncError;

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Arithmetic selector for [`rat_func_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_func_arith(a: &RatFunc, b: &RatFunc, kind: ArithKind) -> Result<RatFunc, KncError> {
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
        ArithKind::Div => a.checked_div(b)?,
    })
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, KncError> {
        if den.is_zero() {
            return Err(KncError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_rem(&g).expect("gcd divides").0,
                den.div_rem(&g).expect("gcd divides").0,
            )
        };
        Self::make_monic(num, den)
    }

    fn make_monic(num: Poly, den: Poly) -> Self {
        let lead = den.leading();
        if lead.is_one() {
            return RatFunc { num, den };
        }
        let inv = lead.recip().expect("nonzero");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Build from parts known to be coprime (e.g. products of distinct
    /// linear factors); only the monic normalization is applied.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        Self::make_monic(num, den)
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::z())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// `c · Π (z - a)^k` over finite points with integer exponents.
    pub fn from_factors<'a>(c: &Rat, factors: impl IntoIterator<Item = (&'a Rat, i64)>) -> Self {
        let mut num = Poly::constant(c.clone());
        let mut den = Poly::one();
        for (a, k) in factors {
            match k.cmp(&0) {
                std::cmp::Ordering::Greater => num = &num * &Poly::linear_power(a, k as u32),
                std::cmp::Ordering::Less => den = &den * &Poly::linear_power(a, (-k) as u32),
                std::cmp::Ordering::Equal => {}
            }
        }
        Self::from_coprime(num, den)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, KncError> {
        if other.is_zero() {
            return Err(KncError::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn derivative(&self) -> RatFunc {
        if self.is_polynomial() {
            return RatFunc::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc, KncError> {
        if e < 0 {
            if self.is_zero() {
                return Err(KncError::DivisionByZero);
            }
            let inv = Self::make_monic(self.den.clone(), self.num.clone());
            return inv.pow(-e);
        }
        Ok(RatFunc::make_monic(self.num.pow(e as u32), self.den.pow(e as u32)))
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat, KncError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(KncError::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Order of vanishing at `p` (negative for poles); `None` means `+∞` (f = 0).
    ///
    /// At infinity this is the order of `f` as a function: `deg den - deg num`.
    pub fn order_at(&self, p: &RiemannPoint) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match p {
            RiemannPoint::Finite(a) => {
                self.num.root_multiplicity(a).unwrap() as i64
                    - self.den.root_multiplicity(a).unwrap() as i64
            }
            RiemannPoint::Infinity => {
                self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64
            }
        })
    }

    /// Local numerator/denominator power series at `p` and the exponent shift:
    /// `f = t^shift · N(t)/D(t)` with `N(0) != 0 != D(0)`.
    fn local_parts(&self, p: &RiemannPoint) -> (Poly, Poly, i64) {
        let (n, d) = match p {
            RiemannPoint::Finite(a) => (self.num.taylor_shift(a), self.den.taylor_shift(a)),
            RiemannPoint::Infinity => {
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap_or(0);
                // f(1/w) = w^(dd - dn) · rev(num)(w) / rev(den)(w)
                let n = self.num.reversed(dn);
                let d = self.den.reversed(dd);
                return (n, d, dd as i64 - dn as i64);
            }
        };
        let u = n.coeffs().iter().take_while(|c| c.is_zero()).count();
        let v = d.coeffs().iter().take_while(|c| c.is_zero()).count();
        let n = Poly::from_coeffs(n.coeffs()[u..].to_vec());
        let d = Poly::from_coeffs(d.coeffs()[v..].to_vec());
        (n, d, u as i64 - v as i64)
    }

    /// Laurent coefficients for exponents `first .. first + count` in the
    /// local coordinate `z - a` (or `w = 1/z` at infinity).
    pub fn laurent_coeffs(&self, p: &RiemannPoint, first: i64, count: usize) -> LaurentSlice {
        if self.is_zero() {
            return LaurentSlice::new(p.clone(), first, vec![Rat::zero(); count]);
        }
        let (n, d, shift) = self.local_parts(p);
        let end = first + count as i64;
        let need = (end - shift).max(0) as usize;
        let series = series_quotient(&n, &d, need);
        let coeffs = (first..end)
            .map(|k| {
                let idx = k - shift;
                if idx < 0 {
                    Rat::zero()
                } else {
                    series[idx as usize].clone()
                }
            })
            .collect();
        LaurentSlice::new(p.clone(), first, coeffs)
    }

    /// `count` Laurent coefficients starting at the order of `f` at `p`.
    pub fn laurent_leading(&self, p: &RiemannPoint, count: usize) -> LaurentSlice {
        let first = self.order_at(p).unwrap_or(0);
        self.laurent_coeffs(p, first, count)
    }

    /// Residue of the 1-form `f(z) dz` at `p`.
    ///
    /// At infinity this is `res_{w=0}(-f(1/w) w^-2 dw)`, i.e. minus the
    /// coefficient of `w^1` in the expansion of `f(1/w)`.
    pub fn residue_1form(&self, p: &RiemannPoint) -> Rat {
        match p {
            RiemannPoint::Finite(_) => self.laurent_coeffs(p, -1, 1).coefficients[0].clone(),
            RiemannPoint::Infinity => -self.laurent_coeffs(p, 1, 1).coefficients[0].clone(),
        }
    }

    /// Finite poles of `f`, only among the given candidates; returns whether
    /// the denominator is fully accounted for by them.
    pub fn poles_within(&self, candidates: &[Rat]) -> bool {
        let mut d = self.den.clone();
        for a in candidates {
            loop {
                let (qq, r) = d.synthetic_div(a);
                if !r.is_zero() {
                    break;
                }
                d = qq;
            }
        }
        d.is_constant()
    }

    /// Substitute the Möbius map `z = (a u + b)/(c u + d)`.
    pub fn compose_mobius(&self, a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> RatFunc {
        let n = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let num = self.num.mobius_numerator(a, b, c, d, n);
        let den = self.den.mobius_numerator(a, b, c, d, n);
        Self::reduce(num, den)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::reduce(n, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel first so the final gcd works on smaller inputs
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let div = |p: &Poly, g: &Poly| {
            if g.is_constant() {
                p.clone()
            } else {
                p.div_rem(g).expect("gcd divides").0
            }
        };
        let n = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let d = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RatFunc::make_monic(n, d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
