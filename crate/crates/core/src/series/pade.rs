//! Pade reconstruction of univariate rational functions from series
//! coefficients, with guard-coefficient certification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{GaussianRational, RatFunc};
use crate::error::{Error, Result};

/// Dense univariate polynomial over `RatFunc`, little-endian.
pub(crate) type RPoly = Vec<RatFunc>;

pub(crate) fn rp_trim(mut p: RPoly) -> RPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn rp_add(a: &RPoly, b: &RPoly) -> RPoly {
    let mut out = a.clone();
    out.resize(out.len().max(b.len()), RatFunc::zero());
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].clone() + c.clone();
    }
    rp_trim(out)
}

pub(crate) fn rp_mul(a: &RPoly, b: &RPoly) -> RPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![RatFunc::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + ca.clone() * cb.clone();
        }
    }
    rp_trim(out)
}

pub(crate) fn rp_divrem(a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
    assert!(!b.is_empty());
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![RatFunc::zero(); rem.len() - b.len() + 1];
    let lead_inv = b.last().unwrap().inv().unwrap();
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap().clone() * lead_inv.clone();
        quot[shift] = c.clone();
        for (i, cb) in b.iter().enumerate() {
            rem[shift + i] = rem[shift + i].clone() - c.clone() * cb.clone();
        }
        rem = rp_trim(rem);
    }
    (rp_trim(quot), rem)
}

pub(crate) fn rp_gcd(a: &RPoly, b: &RPoly) -> RPoly {
    let mut f = a.clone();
    let mut g = b.clone();
    while !g.is_empty() {
        let (_, r) = rp_divrem(&f, &g);
        f = g;
        g = r;
    }
    f
}

pub(crate) fn rp_div_exact(a: &RPoly, b: &RPoly) -> RPoly {
    let (q, r) = rp_divrem(a, b);
    debug_assert!(r.is_empty());
    q
}

/// Horner substitution `p(a + b*x)`.
pub(crate) fn rp_affine_subst(p: &RPoly, a: &RatFunc, b: &RatFunc) -> RPoly {
    let lin = rp_trim(vec![a.clone(), b.clone()]);
    let mut out: RPoly = vec![];
    for c in p.iter().rev() {
        out = rp_mul(&out, &lin);
        out = rp_add(&out, &vec![c.clone()]);
    }
    out
}

/// A univariate rational function in a distinguished variable, with
/// `RatFunc` coefficients, expandable at the origin (`den(0) != 0`).
///
/// Canonical form: gcd-reduced with `den(0) = 1`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct UniRatFunc {
    var: String,
    num: Vec<RatFunc>,
    den: Vec<RatFunc>,
}

impl UniRatFunc {
    pub fn new(var: &str, num: Vec<RatFunc>, den: Vec<RatFunc>) -> Result<Self> {
        let num = rp_trim(num);
        let den = rp_trim(den);
        if den.first().map_or(true, |c| c.is_zero()) {
            return Err(Error::Invalid("denominator must not vanish at the origin".into()));
        }
        Ok(Self::reduce(var.to_string(), num, den))
    }

    fn reduce(var: String, num: RPoly, den: RPoly) -> Self {
        if num.is_empty() {
            return UniRatFunc { var, num: vec![], den: vec![RatFunc::one()] };
        }
        let g = rp_trim(rp_gcd(&num, &den));
        let (mut num, mut den) = if g.len() > 1 {
            (rp_div_exact(&num, &g), rp_div_exact(&den, &g))
        } else {
            (num, den)
        };
        let c0_inv = den[0].inv().expect("den(0) != 0");
        for c in num.iter_mut() {
            *c = c.clone() * c0_inv.clone();
        }
        for c in den.iter_mut() {
            *c = c.clone() * c0_inv.clone();
        }
        UniRatFunc { var, num, den }
    }

    pub fn zero(var: &str) -> Self {
        UniRatFunc { var: var.to_string(), num: vec![], den: vec![RatFunc::one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn num(&self) -> &[RatFunc] {
        &self.num
    }

    pub fn den(&self) -> &[RatFunc] {
        &self.den
    }

    /// All coefficients free of the imaginary unit.
    pub fn is_real(&self) -> bool {
        self.num.iter().chain(&self.den).all(|c| c.is_real())
    }

    /// Taylor coefficients at the origin, indices `0..n`.
    pub fn expand(&self, n: usize) -> Vec<RatFunc> {
        let d0_inv = self.den[0].inv().unwrap();
        let mut out: Vec<RatFunc> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.num.get(k).cloned().unwrap_or_else(RatFunc::zero);
            for j in 1..=k.min(self.den.len() - 1) {
                acc = acc - self.den[j].clone() * out[k - j].clone();
            }
            out.push(acc * d0_inv.clone());
        }
        out
    }

    /// Exact evaluation at a Gaussian rational point.
    pub fn eval_gaussian(&self, point: &GaussianRational) -> Result<RatFunc> {
        let p = RatFunc::constant(point.clone());
        let den = eval_rpoly(&self.den, &p);
        if den.is_zero() {
            return Err(Error::PoleAtContinuationPoint);
        }
        eval_rpoly(&self.num, &p).div(&den)
    }

    /// Substitute an affine change of variable `x = a + b*y`, renaming the
    /// variable to `new_var`.  Errors when the result has a pole at `y = 0`.
    pub fn affine_substitute(
        &self,
        new_var: &str,
        a: &GaussianRational,
        b: &GaussianRational,
    ) -> Result<Self> {
        let ac = RatFunc::constant(a.clone());
        let bc = RatFunc::constant(b.clone());
        let num = rp_affine_subst(&self.num, &ac, &bc);
        let den = rp_affine_subst(&self.den, &ac, &bc);
        UniRatFunc::new(new_var, num, den)
    }
}

fn eval_rpoly(p: &[RatFunc], x: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero();
    for c in p.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

impl fmt::Display for UniRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_poly = |p: &[RatFunc], f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if p.is_empty() {
                return write!(f, "0");
            }
            let mut first = true;
            for (k, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if k == 0 {
                    write!(f, "{c}")?;
                } else if c.is_one() {
                    write!(f, "{}^{k}", self.var)?;
                } else {
                    write!(f, "({c})*{}^{k}", self.var)?;
                }
            }
            Ok(())
        };
        write!(f, "(")?;
        fmt_poly(&self.num, f)?;
        write!(f, ") / (")?;
        fmt_poly(&self.den, f)?;
        write!(f, ")")
    }
}

/// Solve `m x = rhs` by exact Gaussian elimination.
fn solve_linear(mut m: Vec<Vec<RatFunc>>, mut rhs: Vec<RatFunc>) -> Result<Vec<RatFunc>> {
    let n = m.len();
    let mut rank = 0;
    for col in 0..n {
        let pivot = (rank..n).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        rhs.swap(rank, pivot);
        let inv = m[rank][col].inv().unwrap();
        for c in m[rank].iter_mut() {
            *c = c.clone() * inv.clone();
        }
        rhs[rank] = rhs[rank].clone() * inv;
        for r in 0..n {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..n {
                    let delta = factor.clone() * m[rank][c].clone();
                    m[r][c] = m[r][c].clone() - delta;
                }
                rhs[r] = rhs[r].clone() - factor * rhs[rank].clone();
            }
        }
        rank += 1;
    }
    if rank < n {
        return Err(Error::SingularSystem { rank_defect: n - rank });
    }
    Ok(rhs)
}

/// Reconstruct a rational function `N/D`, `deg N <= p`, `deg D <= q`,
/// `D(0) = 1`, whose Taylor expansion matches *all* supplied coefficients.
/// The coefficients beyond the defining `p + q + 1` are the validity
/// certificate: any disagreement is `NoRationalForm`.
pub fn pade(coeffs: &[RatFunc], p: usize, q: usize) -> Result<UniRatFunc> {
    let needed = p + q + 2;
    if coeffs.len() < needed {
        return Err(Error::InsufficientCoefficients { p, q, needed, got: coeffs.len() });
    }
    let c = |k: isize| -> RatFunc {
        if k < 0 {
            RatFunc::zero()
        } else {
            coeffs.get(k as usize).cloned().unwrap_or_else(RatFunc::zero)
        }
    };
    // rows k = p+1 .. p+q determine d_1..d_q
    let den = if q == 0 {
        vec![RatFunc::one()]
    } else {
        let m: Vec<Vec<RatFunc>> = (1..=q)
            .map(|row| {
                let k = (p + row) as isize;
                (1..=q).map(|j| c(k - j as isize)).collect()
            })
            .collect();
        let rhs: Vec<RatFunc> = (1..=q).map(|row| -c((p + row) as isize)).collect();
        let d = solve_linear(m, rhs)?;
        let mut den = vec![RatFunc::one()];
        den.extend(d);
        den
    };
    let num: Vec<RatFunc> = (0..=p)
        .map(|k| {
            let mut acc = RatFunc::zero();
            for (j, dj) in den.iter().enumerate() {
                acc = acc + dj.clone() * c(k as isize - j as isize);
            }
            acc
        })
        .collect();
    // certify against every supplied coefficient beyond the numerator range
    for k in (p + 1)..coeffs.len() {
        let mut acc = RatFunc::zero();
        for (j, dj) in den.iter().enumerate() {
            acc = acc + dj.clone() * c(k as isize - j as isize);
        }
        if !acc.is_zero() {
            return Err(Error::NoRationalForm { index: k });
        }
    }
    UniRatFunc::new("q", rp_trim(num), rp_trim(den))
}

/// Adaptive variant: tries the given degrees first, then sweeps lower
/// degree pairs, returning the first reconstruction certified against all
/// supplied coefficients.
pub fn pade_auto(coeffs: &[RatFunc], p_max: usize, q_max: usize) -> Result<UniRatFunc> {
    let mut last_err = None;
    if let r @ Ok(_) = pade(coeffs, p_max, q_max) {
        return r;
    }
    for d in 0..=q_max {
        for p in [d.saturating_sub(1), d, d + 1] {
            if p > p_max || (p == p_max && d == q_max) {
                continue;
            }
            match pade(coeffs, p, d) {
                Ok(f) => return Ok(f),
                Err(e) => last_err = Some(e),
            }
        }
    }
    Err(last_err.unwrap_or(Error::NoRationalForm { index: 0 }))
}
