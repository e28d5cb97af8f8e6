use std::collections::BTreeMap;
use std::sync::Arc;

use num::BigRational;
use serde::{Deserialize, Serialize};

use super::ring::SeriesRing;
use crate::coeff::{GaussianRational, RatFunc};
use crate::error::{Error, Result};

pub(crate) fn factorial(n: u32) -> BigRational {
    let mut acc = BigRational::from_integer(1.into());
    for k in 2..=n as i64 {
        acc *= BigRational::from_integer(k.into());
    }
    acc
}

pub(crate) fn binomial(n: u32, k: u32) -> BigRational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// A truncated formal power series over `RatFunc`.
///
/// Coefficients of retained monomials are exactly correct; monomials
/// beyond the ring's caps are dropped.  No zero coefficients are stored.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries {
    ring: Arc<SeriesRing>,
    terms: BTreeMap<Vec<u32>, RatFunc>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a [u32],
            coeff: &'a RatFunc,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            vars: &'a [String],
            caps: &'a [u32],
            #[serde(skip_serializing_if = "Option::is_none")]
            total_cap: Option<u32>,
            terms: Vec<Term<'a>>,
        }
        Repr {
            vars: self.ring.vars(),
            caps: self.ring.var_caps(),
            total_cap: self.ring.total_cap(),
            terms: self
                .terms
                .iter()
                .map(|(exp, coeff)| Term { exp, coeff })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term {
            exp: Vec<u32>,
            coeff: RatFunc,
        }
        #[derive(Deserialize)]
        struct Repr {
            vars: Vec<String>,
            caps: Vec<u32>,
            #[serde(default)]
            total_cap: Option<u32>,
            terms: Vec<Term>,
        }
        let repr = Repr::deserialize(de)?;
        if repr.vars.len() != repr.caps.len() {
            return Err(serde::de::Error::custom("vars and caps lengths differ"));
        }
        let ring = SeriesRing::new(repr.vars, repr.caps, repr.total_cap);
        let mut out = TruncatedSeries::zero(ring);
        for t in repr.terms {
            if t.exp.len() != out.ring.num_vars() {
                return Err(serde::de::Error::custom("exponent vector has wrong length"));
            }
            out.add_term(t.exp, t.coeff);
        }
        Ok(out)
    }
}

impl TruncatedSeries {
    pub fn zero(ring: Arc<SeriesRing>) -> Self {
        TruncatedSeries { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Arc<SeriesRing>, c: RatFunc) -> Self {
        let mut s = Self::zero(ring);
        s.add_term(vec![0; s.ring.num_vars()], c);
        s
    }

    pub fn one(ring: Arc<SeriesRing>) -> Self {
        Self::constant(ring, RatFunc::one())
    }

    pub fn var(ring: Arc<SeriesRing>, idx: usize) -> Self {
        let mut exp = vec![0; ring.num_vars()];
        exp[idx] = 1;
        Self::monomial(ring, exp, RatFunc::one())
    }

    pub fn monomial(ring: Arc<SeriesRing>, exp: Vec<u32>, c: RatFunc) -> Self {
        let mut s = Self::zero(ring);
        s.add_term(exp, c);
        s
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> RatFunc {
        self.terms.get(exp).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Adds `c * x^exp`, dropping the term if it exceeds truncation.
    pub fn add_term(&mut self, exp: Vec<u32>, c: RatFunc) {
        if c.is_zero() || !self.ring.admits(&exp) {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(self.ring.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if self.ring.admits(&exp) {
                    out.add_term(exp, ca.clone() * cb.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring.clone());
        }
        TruncatedSeries {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn scale_gaussian(&self, c: &GaussianRational) -> Self {
        self.scale(&RatFunc::constant(c.clone()))
    }

    pub fn constant_term(&self) -> RatFunc {
        self.coeff(&vec![0; self.ring.num_vars()])
    }

    /// `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::one(self.ring.clone());
        let mut power = Self::one(self.ring.clone());
        let max_order: u32 = self
            .ring
            .total_cap()
            .unwrap_or_else(|| self.ring.var_caps().iter().sum());
        for k in 1..=max_order {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            let inv_fact = RatFunc::constant(GaussianRational::from_rational(
                factorial(k).recip(),
            ));
            out = out.add(&power.scale(&inv_fact))?;
        }
        Ok(out)
    }

    /// k-fold partial derivative in `var`; output lives in a ring with the
    /// cap in `var` lowered by `k` (higher coefficients are no longer
    /// trustworthy).
    pub fn derive(&self, var: usize, k: u32) -> Self {
        let ring = self.ring.lowered(var, k);
        let mut out = Self::zero(ring);
        for (exp, c) in &self.terms {
            if exp[var] < k {
                continue;
            }
            let mut factor = BigRational::from_integer(1.into());
            for j in 0..k {
                factor *= BigRational::from_integer(((exp[var] - j) as i64).into());
            }
            let mut e = exp.clone();
            e[var] -= k;
            out.add_term(
                e,
                c.clone() * RatFunc::constant(GaussianRational::from_rational(factor)),
            );
        }
        out
    }

    /// Substitute each block variable by a linear combination of the block
    /// variables: `block[a] -> sum_b l[b][a] * block[b]`.  Variables outside
    /// the block are untouched.
    pub fn substitute_linear(&self, l: &[Vec<GaussianRational>], block: &[usize]) -> Result<Self> {
        let dim = block.len();
        if l.len() != dim || l.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: l.len() });
        }
        // linear form replacing block variable a
        let forms: Vec<TruncatedSeries> = (0..dim)
            .map(|a| {
                let mut f = Self::zero(self.ring.clone());
                for (b, &var) in block.iter().enumerate() {
                    let mut exp = vec![0; self.ring.num_vars()];
                    exp[var] = 1;
                    f.add_term(exp, RatFunc::constant(l[b][a].clone()));
                }
                f
            })
            .collect();
        let mut out = Self::zero(self.ring.clone());
        for (exp, c) in &self.terms {
            let mut stripped = exp.clone();
            for &var in block {
                stripped[var] = 0;
            }
            let mut term = Self::monomial(self.ring.clone(), stripped, c.clone());
            for (a, &var) in block.iter().enumerate() {
                for _ in 0..exp[var] {
                    term = term.mul(&forms[a])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Substitute 0 for `var`.
    pub fn set_var_zero(&self, var: usize) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var] == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rename variables, keeping caps and coefficients.
    pub fn rename_vars(&self, vars: Vec<String>) -> Self {
        TruncatedSeries {
            ring: self.ring.renamed(vars),
            terms: self.terms.clone(),
        }
    }

    /// Coefficients in `var` of the slice where every other variable `j`
    /// carries exponent `fixed[j]` (`fixed[var]` is ignored).  Dense,
    /// indexed by the power of `var`, up to the cap of `var`.
    pub fn univariate_slice(&self, var: usize, fixed: &[u32]) -> Vec<RatFunc> {
        let cap = self.ring.var_caps()[var] as usize;
        let mut out = vec![RatFunc::zero(); cap + 1];
        for (exp, c) in &self.terms {
            let matches = exp
                .iter()
                .enumerate()
                .all(|(j, &e)| j == var || e == fixed[j]);
            if matches {
                out[exp[var] as usize] = c.clone();
            }
        }
        out
    }

    /// Shift the listed variables `x -> x + u`, adjoining one new `u`
    /// variable per entry.  This realizes the extended potential of the
    /// twisted divisor equation.
    pub fn extend_shift(&self, twisted: &[(usize, String)]) -> Result<Self> {
        for (var, _) in twisted {
            if *var >= self.ring.num_vars() {
                return Err(Error::DimensionMismatch {
                    expected: self.ring.num_vars(),
                    got: *var,
                });
            }
        }
        let new_vars: Vec<(String, u32)> = twisted
            .iter()
            .map(|(var, name)| (name.clone(), self.ring.var_caps()[*var]))
            .collect();
        let ring = self.ring.extended(new_vars);
        let n_old = self.ring.num_vars();
        let mut out = Self::zero(ring.clone());
        for (exp, c) in &self.terms {
            // expand prod over twisted vars of (x+u)^e
            let mut partial: Vec<(Vec<u32>, RatFunc)> = {
                let mut e = exp.clone();
                e.extend(std::iter::repeat(0).take(twisted.len()));
                vec![(e, c.clone())]
            };
            for (t_pos, (var, _)) in twisted.iter().enumerate() {
                let u_idx = n_old + t_pos;
                let mut next = Vec::new();
                for (e, coeff) in partial {
                    let deg = e[*var];
                    for k in 0..=deg {
                        let mut e2 = e.clone();
                        e2[*var] = deg - k;
                        e2[u_idx] = k;
                        let b = RatFunc::constant(GaussianRational::from_rational(
                            binomial(deg, k),
                        ));
                        next.push((e2, coeff.clone() * b));
                    }
                }
                partial = next;
            }
            for (e, coeff) in partial {
                out.add_term(e, coeff);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring(cap: u32) -> Arc<SeriesRing> {
        SeriesRing::univariate("q", cap)
    }

    #[test]
    fn truncated_product() {
        // (1+q)(1-q) at cap 2 -> 1 - q^2
        let r = qring(2);
        let one = TruncatedSeries::one(r.clone());
        let q = TruncatedSeries::var(r.clone(), 0);
        let a = one.add(&q).unwrap();
        let b = one.sub(&q).unwrap();
        let p = a.mul(&b).unwrap();
        let expected = one.sub(&q.mul(&q).unwrap()).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn truncation_contract() {
        // y^3 * y at total cap 3 -> 0
        let r = SeriesRing::univariate("y1", 3);
        let y = TruncatedSeries::var(r.clone(), 0);
        let y3 = y.mul(&y).unwrap().mul(&y).unwrap();
        assert!(y3.mul(&y).unwrap().is_zero());
    }

    #[test]
    fn convolution_with_cubes() {
        // (sum_{d>=1} q^d/d^3) * q at cap 3 -> q^2 + q^3/8
        let r = qring(3);
        let mut s = TruncatedSeries::zero(r.clone());
        for d in 1..=3u32 {
            let mut e = vec![0];
            e[0] = d;
            s.add_term(e, RatFunc::from_ratio(1, (d as i64).pow(3)));
        }
        let q = TruncatedSeries::var(r.clone(), 0);
        let p = s.mul(&q).unwrap();
        let mut expected = TruncatedSeries::zero(r);
        expected.add_term(vec![2], RatFunc::one());
        expected.add_term(vec![3], RatFunc::from_ratio(1, 8));
        assert_eq!(p, expected);
    }

    #[test]
    fn ring_mismatch() {
        let a = TruncatedSeries::one(qring(2));
        let b = TruncatedSeries::one(qring(3));
        assert_eq!(a.add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn exp_of_zero() {
        let r = qring(4);
        let z = TruncatedSeries::zero(r.clone());
        assert_eq!(z.exp().unwrap(), TruncatedSeries::one(r));
    }

    #[test]
    fn exp_of_ix() {
        // exp(i x) at cap 3 -> 1 + ix - x^2/2 - i x^3/6
        let r = SeriesRing::univariate("x", 3);
        let ix = TruncatedSeries::var(r.clone(), 0)
            .scale_gaussian(&GaussianRational::i());
        let e = ix.exp().unwrap();
        let i = GaussianRational::i();
        assert_eq!(e.coeff(&[0]), RatFunc::one());
        assert_eq!(e.coeff(&[1]), RatFunc::constant(i.clone()));
        assert_eq!(e.coeff(&[2]), RatFunc::from_ratio(-1, 2));
        assert_eq!(
            e.coeff(&[3]),
            RatFunc::constant(-i).scale(&GaussianRational::from_ratio(1, 6))
        );
    }

    #[test]
    fn exp_linear_coefficient() {
        // coefficient of y^2 in exp(d*y) is d^2/2
        for d in [2i64, 5, 9] {
            let r = SeriesRing::univariate("y", 4);
            let dy = TruncatedSeries::var(r.clone(), 0).scale(&RatFunc::from_int(d));
            let e = dy.exp().unwrap();
            assert_eq!(e.coeff(&[2]), RatFunc::from_ratio(d * d, 2));
        }
    }

    #[test]
    fn exp_requires_zero_constant() {
        let r = qring(2);
        let one = TruncatedSeries::one(r);
        assert_eq!(one.exp(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn derivative_basics() {
        let r = SeriesRing::univariate("x", 5);
        // d/dx constant = 0
        let c = TruncatedSeries::one(r.clone());
        assert!(c.derive(0, 1).is_zero());
        // d^3/dx^3 of x^4/4! = x
        let x4 = TruncatedSeries::monomial(r.clone(), vec![4], RatFunc::from_ratio(1, 24));
        let d3 = x4.derive(0, 3);
        assert_eq!(d3.coeff(&[1]), RatFunc::one());
    }

    #[test]
    fn derivative_lowers_cap() {
        let r = SeriesRing::univariate("x", 5);
        let s = TruncatedSeries::var(r, 0);
        let d = s.derive(0, 2);
        assert_eq!(d.ring().var_caps(), &[3]);
    }

    #[test]
    fn substitute_scalar_i() {
        // y^3 under y -> i x gives -i x^3; y^2 gives -x^2
        let r = SeriesRing::univariate("y", 3);
        let y = TruncatedSeries::var(r.clone(), 0);
        let y2 = y.mul(&y).unwrap();
        let y3 = y2.mul(&y).unwrap();
        let l = vec![vec![GaussianRational::i()]];
        let s3 = y3.substitute_linear(&l, &[0]).unwrap();
        assert_eq!(s3.coeff(&[3]), RatFunc::constant(-GaussianRational::i()));
        let s2 = y2.substitute_linear(&l, &[0]).unwrap();
        assert_eq!(s2.coeff(&[2]), RatFunc::from_int(-1));
    }

    #[test]
    fn substitute_identity() {
        let r = SeriesRing::univariate("y0", 4);
        let s = TruncatedSeries::var(r, 0);
        let l = vec![vec![GaussianRational::one()]];
        assert_eq!(s.substitute_linear(&l, &[0]).unwrap(), s);
    }

    #[test]
    fn extend_shift_binomial() {
        // F = x^2/2, one twisted index: coefficient of x*u is 1
        let r = SeriesRing::univariate("x1", 3);
        let f = TruncatedSeries::monomial(r, vec![2], RatFunc::from_ratio(1, 2));
        let fhat = f.extend_shift(&[(0, "u".into())]).unwrap();
        assert_eq!(fhat.coeff(&[1, 1]), RatFunc::one());
        assert_eq!(fhat.coeff(&[0, 2]), RatFunc::from_ratio(1, 2));
        // setting u = 0 recovers F
        let back = fhat.set_var_zero(1);
        assert_eq!(back.coeff(&[2, 0]), RatFunc::from_ratio(1, 2));
        assert_eq!(back.terms().count(), 1);
    }

    #[test]
    fn extend_shift_cubic() {
        // F = x^3/3!: coefficient of u^3 is 1/3!
        let r = SeriesRing::univariate("x1", 3);
        let f = TruncatedSeries::monomial(r, vec![3], RatFunc::from_ratio(1, 6));
        let fhat = f.extend_shift(&[(0, "u".into())]).unwrap();
        assert_eq!(fhat.coeff(&[0, 3]), RatFunc::from_ratio(1, 6));
        // coefficient of x*u^2: C(3,2)/6 = 1/2
        assert_eq!(fhat.coeff(&[1, 2]), RatFunc::from_ratio(1, 2));
    }

    #[test]
    fn twisted_divisor_factorials() {
        // c x^4/4! -> coefficient of x u^3 is c/3!
        let r = SeriesRing::univariate("x1", 4);
        let c = RatFunc::from_int(7);
        let f = TruncatedSeries::monomial(
            r,
            vec![4],
            c.clone() * RatFunc::from_ratio(1, 24),
        );
        let fhat = f.extend_shift(&[(0, "u".into())]).unwrap();
        assert_eq!(
            fhat.coeff(&[1, 3]),
            c * RatFunc::from_ratio(1, 6)
        );
    }
}
