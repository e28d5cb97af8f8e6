//! Exact arithmetic in cyclotomic fields Q(zeta_n), elements reduced
//! modulo the n-th cyclotomic polynomial.

use std::fmt;

use num::{BigRational, One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::GaussianRational;
use crate::error::{Error, Result};

type RPoly = Vec<BigRational>;

fn rtrim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rmul(a: &[BigRational], b: &[BigRational]) -> RPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rtrim(out)
}

/// Remainder of a by a monic divisor.
fn rrem(a: &[BigRational], d: &[BigRational]) -> RPoly {
    debug_assert!(d.last().is_some_and(|c| c.is_one()));
    let mut r = a.to_vec();
    while r.len() >= d.len() {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - d.len();
        if !lead.is_zero() {
            for (i, c) in d.iter().enumerate() {
                let v = &lead * c;
                r[shift + i] -= v;
            }
        }
        r.pop();
        r = rtrim(r);
        if r.len() < d.len() {
            break;
        }
    }
    rtrim(r)
}

/// Exact division by a monic divisor known to divide a.
fn rdiv_exact(a: &[BigRational], d: &[BigRational]) -> RPoly {
    let mut r = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(d.len()) + 1];
    while r.len() >= d.len() {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - d.len();
        q[shift] = lead.clone();
        for (i, c) in d.iter().enumerate() {
            let v = &lead * c;
            r[shift + i] -= v;
        }
        r = rtrim(r);
    }
    debug_assert!(r.is_empty());
    rtrim(q)
}

pub(crate) fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients of the n-th cyclotomic polynomial, low degree first.
fn cyclotomic_poly(n: u32) -> RPoly {
    // x^n - 1 divided by the cyclotomic polynomials of the proper divisors
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    let mut out = num;
    for d in 1..n {
        if n % d == 0 {
            out = rdiv_exact(&out, &cyclotomic_poly(d));
        }
    }
    out
}

/// An element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    level: u32,
    coeffs: RPoly,
}

impl Cyclotomic {
    pub fn zero(level: u32) -> Self {
        Cyclotomic {
            level,
            coeffs: vec![],
        }
    }

    pub fn one(level: u32) -> Self {
        Cyclotomic::from_rational(level, BigRational::one())
    }

    pub fn from_rational(level: u32, r: BigRational) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero(level);
        }
        Cyclotomic {
            level,
            coeffs: vec![r],
        }
    }

    pub fn from_int(level: u32, n: i64) -> Self {
        Cyclotomic::from_rational(level, BigRational::from_integer(n.into()))
    }

    /// zeta_level^k.
    pub fn root(level: u32, k: i64) -> Self {
        let k = k.rem_euclid(level as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Cyclotomic {
            level,
            coeffs: rtrim(rrem(&coeffs, &cyclotomic_poly(level))),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), BigRational::zero());
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Ok(Cyclotomic {
            level: self.level,
            coeffs: rtrim(coeffs),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let raw = rmul(&self.coeffs, &other.coeffs);
        Ok(Cyclotomic {
            level: self.level,
            coeffs: rrem(&raw, &cyclotomic_poly(self.level)),
        })
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero(self.level);
        }
        Cyclotomic {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Complex conjugation, zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        let mut out = Cyclotomic::zero(self.level);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = Cyclotomic::root(self.level, -(j as i64)).scale(c);
                out = out.add(&term).expect("same level");
            }
        }
        out
    }

    /// Reinterprets the element in Q(zeta_m) for a multiple m of the level.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m % self.level != 0 {
            return Err(Error::RingMismatch);
        }
        let step = (m / self.level) as i64;
        let mut out = Cyclotomic::zero(m);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = Cyclotomic::root(m, j as i64 * step).scale(c);
                out = out.add(&term).expect("same level");
            }
        }
        Ok(out)
    }

    /// The value as a rational number, when it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// The value as an element of Q(i), when the level divides 4.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        if self.level == 4 {
            let re = self.coeffs.first().cloned().unwrap_or_else(BigRational::zero);
            let im = self.coeffs.get(1).cloned().unwrap_or_else(BigRational::zero);
            return Some(GaussianRational::new(re, im));
        }
        self.as_rational().map(GaussianRational::from_rational)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z{}^{j}", self.level)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            level: u32,
            coeffs: Vec<String>,
        }
        Repr {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            level: u32,
            coeffs: Vec<String>,
        }
        let repr = Repr::deserialize(de)?;
        let coeffs: std::result::Result<RPoly, _> = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect();
        let coeffs = rtrim(coeffs?);
        if coeffs.len() >= euler_phi(repr.level) as usize + 1 {
            return Err(D::Error::custom("coefficient vector too long for level"));
        }
        Ok(Cyclotomic {
            level: repr.level,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        // Phi_4 = x^2 + 1
        assert_eq!(cyclotomic_poly(4), vec![rat(1), rat(0), rat(1)]);
        // Phi_6 = x^2 - x + 1
        assert_eq!(cyclotomic_poly(6), vec![rat(1), rat(-1), rat(1)]);
        // Phi_12 = x^4 - x^2 + 1
        assert_eq!(
            cyclotomic_poly(12),
            vec![rat(1), rat(0), rat(-1), rat(0), rat(1)]
        );
    }

    #[test]
    fn root_relations() {
        // zeta_3^2 = -1 - zeta_3
        let z = Cyclotomic::root(3, 1);
        let z2 = Cyclotomic::root(3, 2);
        assert_eq!(z.mul(&z).unwrap(), z2);
        let sum = z.add(&z2).unwrap();
        assert_eq!(sum.as_rational(), Some(rat(-1)));
        // zeta_4 = i
        let i = Cyclotomic::root(4, 1);
        assert_eq!(
            i.mul(&i).unwrap().as_rational(),
            Some(rat(-1))
        );
        assert_eq!(i.as_gaussian(), Some(GaussianRational::i()));
    }

    #[test]
    fn conjugation() {
        let z = Cyclotomic::root(5, 1);
        assert_eq!(z.conj(), Cyclotomic::root(5, 4));
        let norm_sum = z.add(&z.conj()).unwrap();
        assert_eq!(norm_sum.conj(), norm_sum);
    }

    #[test]
    fn embedding() {
        let z3 = Cyclotomic::root(3, 1);
        let z3_in_12 = z3.embed(12).unwrap();
        assert_eq!(z3_in_12, Cyclotomic::root(12, 4));
        // sqrt(3) = zeta_12 - zeta_12^5 is real and squares to 3
        let s = Cyclotomic::root(12, 1)
            .sub(&Cyclotomic::root(12, 5))
            .unwrap();
        assert_eq!(s.mul(&s).unwrap().as_rational(), Some(rat(3)));
        assert_eq!(s.conj(), s);
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn serde_roundtrip() {
        let x = Cyclotomic::root(6, 1).scale(&BigRational::new(3.into(), 2.into()));
        let json = serde_json::to_string(&x).unwrap();
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
