//! Rational functions in `t1, t2` over Q(i), kept in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::poly2::{qp_is_zero, QPoly};
use super::Poly2;
use crate::error::{Error, Result};

/// A reduced rational function `num/den`.
///
/// Invariants: `den != 0`, `gcd(num, den) = 1`, and the leading graded-lex
/// monomial of `den` has coefficient 1, so equality of values is equality of
/// representations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RatFunc {
    num: Poly2,
    den: Poly2,
}

impl RatFunc {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly2, den: Poly2) -> Self {
        if num.is_zero() {
            return RatFunc { num: Poly2::zero(), den: Poly2::one() };
        }
        // constants on either side never share a nontrivial factor
        if num.is_constant() || den.is_constant() {
            let (_, lead) = den.leading_monomial().expect("nonzero denominator");
            if lead.is_one() {
                return RatFunc { num, den };
            }
            let inv = lead.inv().unwrap();
            return RatFunc { num: num.scale(&inv), den: den.scale(&inv) };
        }
        let g = Poly2::gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let (_, lead) = den.leading_monomial().expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly2) -> Self {
        Self::reduce(p, Poly2::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly2::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(GaussianRational::from_ratio(n, d))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn t1() -> Self {
        Self::from_poly(Poly2::t1())
    }

    pub fn t2() -> Self {
        Self::from_poly(Poly2::t2())
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &RatFunc::one()
    }

    /// True when the value is fixed by complex conjugation of coefficients.
    pub fn is_real(&self) -> bool {
        self.num.has_real_coeffs() && self.den.has_real_coeffs()
    }

    /// Constant value, if the function is a Gaussian rational.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        if self.num.is_constant() && self.den.is_constant() {
            let d = self.den.coeff(0, 0);
            Some(self.num.coeff(0, 0).div(&d).unwrap())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = RatFunc::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// Exact evaluation at `(t1v, t2v)`.
    pub fn specialize(&self, t1v: &GaussianRational, t2v: &GaussianRational) -> Result<GaussianRational> {
        let d = self.den.eval(t1v, t2v);
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization);
        }
        self.num.eval(t1v, t2v).div(&d)
    }

    /// Substitute `t2 = -t1`, returning the univariate numerator and
    /// denominator in `t1`.  `None` when the denominator vanishes
    /// identically on the antidiagonal.
    pub fn specialize_antidiagonal(&self) -> Option<(QPoly, QPoly)> {
        let den = self.den.eval_antidiagonal();
        if qp_is_zero(&den) {
            return None;
        }
        Some((self.num.eval_antidiagonal(), den))
    }

    /// True when the function vanishes identically on `t2 = -t1`.
    pub fn vanishes_on_antidiagonal(&self) -> bool {
        match self.specialize_antidiagonal() {
            Some((num, _)) => qp_is_zero(&num),
            None => false,
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        let num = &self.num * &rhs.den + &self.den * &rhs.num;
        let den = &self.den * &rhs.den;
        RatFunc::reduce(num, den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly2::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1t2_inv_half() -> RatFunc {
        // 1/(2 t1 t2)
        RatFunc::new(Poly2::one(), (Poly2::t1() * Poly2::t2()).scale(&GaussianRational::from_int(2))).unwrap()
    }

    #[test]
    fn doubling() {
        let a = t1t2_inv_half();
        let sum = a.clone() + a;
        let expected = RatFunc::new(Poly2::one(), Poly2::t1() * Poly2::t2()).unwrap();
        assert_eq!(sum, expected);
    }

    #[test]
    fn factorization_identity() {
        let t1 = RatFunc::t1();
        let t2 = RatFunc::t2();
        let num = t1.clone() * t1.clone() - t2.clone() * t2.clone();
        let den = t1.clone() - t2.clone();
        assert_eq!(num.div(&den).unwrap(), t1 + t2);
    }

    #[test]
    fn annihilator() {
        let f = RatFunc::t1() + RatFunc::t2();
        assert!((f * RatFunc::zero()).is_zero());
    }

    #[test]
    fn specialize_antisymmetric_point() {
        let f = RatFunc::t1() + RatFunc::t2();
        let a = GaussianRational::from_int(5);
        let v = f.specialize(&a, &(-a.clone())).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn specialize_direct() {
        let f = t1t2_inv_half();
        let v = f
            .specialize(&GaussianRational::from_int(1), &GaussianRational::from_int(2))
            .unwrap();
        assert_eq!(v, GaussianRational::from_ratio(1, 4));
    }

    #[test]
    fn specialize_pole() {
        let f = (RatFunc::t1() - RatFunc::t2()).inv().unwrap();
        let e = f.specialize(&GaussianRational::from_int(1), &GaussianRational::from_int(1));
        assert_eq!(e, Err(Error::PoleAtSpecialization));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(RatFunc::one().div(&RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_form_is_stable() {
        // (t1^2-t2^2)/(t1-t2) reduces to t1+t2 with monic denominator
        let f = RatFunc::new(
            Poly2::t1() * Poly2::t1() - Poly2::t2() * Poly2::t2(),
            Poly2::t1() - Poly2::t2(),
        )
        .unwrap();
        assert_eq!(f.den(), &Poly2::one());
        assert_eq!(f, RatFunc::t1() + RatFunc::t2());
    }
}
