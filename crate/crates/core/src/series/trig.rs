//! Exact tangent/cotangent series data, computed by series division of
//! sine/cosine expansions.

use std::sync::Arc;

use num::{BigRational, One, Zero};

use super::ring::SeriesRing;
use super::series::{factorial, TruncatedSeries};
use crate::coeff::{GaussianRational, RatFunc};

/// Which closed-form series to produce.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TrigKind {
    /// `(1/2) tan(x/2)`.
    HalfTan,
    /// `k cot(k u / 2) - cot(u / 2)`; the cotangent poles cancel for k >= 1.
    CotCombination(u32),
}

/// Series division `a / b` with `b[0] != 0`, to `n` coefficients.
fn series_div(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    assert!(!b[0].is_zero());
    let inv0 = b[0].recip();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = a.get(k).cloned().unwrap_or_else(BigRational::zero);
        for j in 1..=k.min(b.len() - 1) {
            acc -= &b[j] * &out[k - j];
        }
        out.push(acc * &inv0);
    }
    out
}

/// Coefficients of `tan x` through degree `order`.
fn tan_coeffs(order: usize) -> Vec<BigRational> {
    let n = order + 1;
    let mut sin = vec![BigRational::zero(); n];
    let mut cos = vec![BigRational::zero(); n];
    for m in 0..n {
        let sign = if (m / 2) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let val = sign / factorial(m as u32);
        if m % 2 == 1 {
            sin[m] = val;
        } else {
            cos[m] = val;
        }
    }
    series_div(&sin, &cos, n)
}

/// Coefficients of `z cot z` (even series, constant term 1) through `order`.
fn z_cot_coeffs(order: usize) -> Vec<BigRational> {
    let n = order + 1;
    // sin z / z and cos z
    let mut sinc = vec![BigRational::zero(); n];
    let mut cos = vec![BigRational::zero(); n];
    for m in 0..n {
        if m % 2 == 0 {
            let sign = if (m / 2) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            cos[m] = sign.clone() / factorial(m as u32);
            sinc[m] = sign / factorial(m as u32 + 1);
        }
    }
    series_div(&cos, &sinc, n)
}

fn pow_rat(base: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Closed-form trigonometric series used by the Hurwitz-Hodge and
/// multiple-cover formulas; coefficients are rational.
pub fn trig_series(kind: TrigKind, var: &str, order: u32) -> TruncatedSeries {
    let ring = SeriesRing::univariate(var, order);
    match kind {
        TrigKind::HalfTan => half_tan_in(ring, order),
        TrigKind::CotCombination(k) => {
            assert!(k >= 1, "cot combination needs k >= 1");
            cot_combination_in(ring, k, order)
        }
    }
}

/// `(1/2) tan(x/2)` to the requested order.
pub fn half_tan(var: &str, order: u32) -> TruncatedSeries {
    trig_series(TrigKind::HalfTan, var, order)
}

/// `k cot(k u / 2) - cot(u / 2)` to the requested order.
pub fn cot_combination(k: u32, var: &str, order: u32) -> TruncatedSeries {
    trig_series(TrigKind::CotCombination(k), var, order)
}

fn half_tan_in(ring: Arc<SeriesRing>, order: u32) -> TruncatedSeries {
    let tan = tan_coeffs(order as usize);
    let half = BigRational::new(1.into(), 2.into());
    let mut out = TruncatedSeries::zero(ring);
    for (m, t) in tan.iter().enumerate() {
        if t.is_zero() {
            continue;
        }
        // (1/2) * T_m * (x/2)^m
        let c = &half * t * pow_rat(&half, m as u32);
        out.add_term(vec![m as u32], RatFunc::constant(GaussianRational::from_rational(c)));
    }
    out
}

fn cot_combination_in(ring: Arc<SeriesRing>, k: u32, order: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(ring);
    if k == 1 {
        return out;
    }
    // With C(z) = z cot z:  k cot(ku/2) - cot(u/2) = (2/u)(C(ku/2) - C(u/2)),
    // and C is even with C(0) = 1, so the combination is an odd power series.
    let c = z_cot_coeffs(order as usize + 1);
    let half = BigRational::new(1.into(), 2.into());
    let k_half = BigRational::new(k.into(), 2.into());
    for m in 1.. {
        let deg = 2 * m - 1; // odd output degrees only
        if deg > order {
            break;
        }
        let idx = (2 * m) as usize;
        if idx >= c.len() {
            break;
        }
        let coeff = (&c[idx] * (pow_rat(&k_half, 2 * m) - pow_rat(&half, 2 * m)))
            * BigRational::from_integer(2.into());
        if !coeff.is_zero() {
            out.add_term(vec![deg], RatFunc::constant(GaussianRational::from_rational(coeff)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> RatFunc {
        RatFunc::from_ratio(n, d)
    }

    #[test]
    fn half_tan_low_order() {
        // x/4 + x^3/48 + x^5/480 + 17 x^7/80640
        let s = half_tan("x", 7);
        assert_eq!(s.coeff(&[1]), q(1, 4));
        assert_eq!(s.coeff(&[3]), q(1, 48));
        assert_eq!(s.coeff(&[5]), q(1, 480));
        assert_eq!(s.coeff(&[7]), q(17, 80640));
        assert!(s.coeff(&[0]).is_zero());
        assert!(s.coeff(&[2]).is_zero());
    }

    #[test]
    fn cot_combination_trivial() {
        assert!(cot_combination(1, "u", 9).is_zero());
    }

    #[test]
    fn cot_combination_two() {
        // -u/2 - u^3/24 - u^5/240
        let s = cot_combination(2, "u", 5);
        assert_eq!(s.coeff(&[1]), q(-1, 2));
        assert_eq!(s.coeff(&[3]), q(-1, 24));
        assert_eq!(s.coeff(&[5]), q(-1, 240));
    }

    #[test]
    fn parity() {
        let s = half_tan("x", 10);
        for (exp, _) in s.terms() {
            assert_eq!(exp[0] % 2, 1, "half_tan has only odd terms");
        }
        for k in 2..=5u32 {
            let s = cot_combination(k, "u", 10);
            assert!(s.constant_term().is_zero());
            for (exp, _) in s.terms() {
                assert_eq!(exp[0] % 2, 1, "cot combination has only odd terms");
            }
        }
    }

    /// Bernoulli-number recurrence, the independent oracle for the
    /// tangent/cotangent data.
    fn bernoulli(n: usize) -> Vec<BigRational> {
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = BigRational::one();
        for m in 1..=n {
            // sum_{j=0}^{m} C(m+1, j) B_j = 0
            let mut acc = BigRational::zero();
            for (j, bj) in b.iter().enumerate().take(m) {
                acc += super::super::series::binomial(m as u32 + 1, j as u32) * bj;
            }
            b[m] = -acc / super::super::series::binomial(m as u32 + 1, m as u32);
        }
        b
    }

    #[test]
    fn tan_matches_bernoulli_oracle() {
        // tan x = sum (-1)^{n-1} 2^{2n} (2^{2n}-1) B_{2n} x^{2n-1} / (2n)!
        let order = 13;
        let b = bernoulli(order + 1);
        let tan = tan_coeffs(order);
        for n in 1..=(order + 1) / 2 {
            let p = BigRational::from_integer(num::BigInt::from(2).pow(2 * n as u32));
            let sign = if n % 2 == 0 { -BigRational::one() } else { BigRational::one() };
            let expected = sign * &p * (&p - BigRational::one()) * &b[2 * n]
                / factorial(2 * n as u32);
            assert_eq!(tan[2 * n - 1], expected, "tan coefficient {}", 2 * n - 1);
        }
    }

    #[test]
    fn z_cot_matches_bernoulli_oracle() {
        // z cot z = sum (-1)^n B_{2n} (2z)^{2n} / (2n)!
        let order = 12;
        let b = bernoulli(order + 2);
        let c = z_cot_coeffs(order);
        for n in 0..=order / 2 {
            let p = BigRational::from_integer(num::BigInt::from(2).pow(2 * n as u32));
            let sign = if n % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            let expected = sign * p * &b[2 * n] / factorial(2 * n as u32);
            assert_eq!(c[2 * n], expected, "z cot z coefficient {}", 2 * n);
        }
    }
}
