//! Polynomials in the equivariant parameters `t1`, `t2` over Q(i).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gaussian::GaussianRational;

/// A polynomial in `t1, t2` with Gaussian rational coefficients.
///
/// Zero coefficients are never stored.  A monomial `t1^e1 t2^e2` has
/// equivariant (cohomological) degree `2(e1+e2)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Poly2 { terms }
    }

    pub fn monomial(e1: u32, e2: u32, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        Poly2 { terms }
    }

    pub fn t1() -> Self {
        Poly2::monomial(1, 0, GaussianRational::one())
    }

    pub fn t2() -> Self {
        Poly2::monomial(0, 1, GaussianRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(e1, e2)| e1 == 0 && e2 == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> GaussianRational {
        self.terms
            .get(&(e1, e2))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(e1, e2)| e1 + e2).max()
    }

    /// All monomials share the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&(e1, e2)| e1 + e2);
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Leading monomial under graded lex order (total degree first, then `t1`).
    pub fn leading_monomial(&self) -> Option<((u32, u32), &GaussianRational)> {
        self.terms
            .iter()
            .max_by_key(|(&(e1, e2), _)| (e1 + e2, e1))
            .map(|(&k, c)| (k, c))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Poly2 {
            terms: self.terms.iter().map(|(&k, v)| (k, v.conj())).collect(),
        }
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn eval(&self, t1v: &GaussianRational, t2v: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (&(e1, e2), c) in &self.terms {
            acc = acc + c.clone() * t1v.pow(e1) * t2v.pow(e2);
        }
        acc
    }

    /// Substitute `t1 = s`, `t2 = -s`; returns dense univariate coefficients in `s`.
    pub fn eval_antidiagonal(&self) -> Vec<GaussianRational> {
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![GaussianRational::zero(); deg + 1];
        for (&(e1, e2), c) in &self.terms {
            let sign = if e2 % 2 == 0 {
                GaussianRational::one()
            } else {
                -GaussianRational::one()
            };
            let d = (e1 + e2) as usize;
            out[d] = out[d].clone() + c.clone() * sign;
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    fn insert_add(terms: &mut BTreeMap<(u32, u32), GaussianRational>, k: (u32, u32), v: GaussianRational) {
        if v.is_zero() {
            return;
        }
        match terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + v;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        assert!(!d.is_zero());
        let num = to_bpoly(self);
        let den = to_bpoly(d);
        let q = bpoly_div_exact(&num, &den)?;
        Some(from_bpoly(&q))
    }

    /// Multivariate gcd via content extraction and a primitive remainder
    /// sequence in `t1` over Q(i)[t2].  Result is normalized so the leading
    /// graded-lex coefficient is 1.
    pub fn gcd(a: &Poly2, b: &Poly2) -> Poly2 {
        if a.is_zero() {
            return normalize_leading(b.clone());
        }
        if b.is_zero() {
            return normalize_leading(a.clone());
        }
        let fa = to_bpoly(a);
        let fb = to_bpoly(b);
        let g = bpoly_gcd(&fa, &fb);
        normalize_leading(from_bpoly(&g))
    }
}

fn normalize_leading(p: Poly2) -> Poly2 {
    match p.leading_monomial() {
        None => p,
        Some((_, c)) => {
            let inv = c.inv().expect("nonzero leading coefficient");
            p.scale(&inv)
        }
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Poly2) -> Poly2 {
        let mut terms = self.terms;
        for (k, v) in rhs.terms {
            Poly2::insert_add(&mut terms, k, v);
        }
        Poly2 { terms }
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Poly2) -> Poly2 {
        self + (-rhs)
    }
}

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut terms = BTreeMap::new();
        for (&(a1, a2), ca) in &self.terms {
            for (&(b1, b2), cb) in &rhs.terms {
                Poly2::insert_add(&mut terms, (a1 + b1, a2 + b2), ca.clone() * cb.clone());
            }
        }
        Poly2 { terms }
    }
}

// ---- univariate helpers over Q(i) -------------------------------------

/// Dense univariate polynomial over Q(i), little-endian, no trailing zeros.
pub(crate) type QPoly = Vec<GaussianRational>;

pub(crate) fn qp_trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn qp_is_zero(p: &QPoly) -> bool {
    p.is_empty()
}

pub(crate) fn qp_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![GaussianRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + ca.clone() * cb.clone();
        }
    }
    qp_trim(out)
}

pub(crate) fn qp_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = a.clone();
    out.resize(out.len().max(b.len()), GaussianRational::zero());
    for (i, cb) in b.iter().enumerate() {
        out[i] = out[i].clone() - cb.clone();
    }
    qp_trim(out)
}

pub(crate) fn qp_scale(a: &QPoly, c: &GaussianRational) -> QPoly {
    if c.is_zero() {
        return vec![];
    }
    a.iter().map(|x| x.clone() * c.clone()).collect()
}

/// Division with remainder over the field Q(i).
pub(crate) fn qp_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![GaussianRational::zero(); rem.len() - b.len() + 1];
    let lead_inv = b.last().unwrap().inv().unwrap();
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap().clone() * lead_inv.clone();
        quot[shift] = c.clone();
        for (i, cb) in b.iter().enumerate() {
            rem[shift + i] = rem[shift + i].clone() - c.clone() * cb.clone();
        }
        rem = qp_trim(rem);
    }
    (qp_trim(quot), rem)
}

pub(crate) fn qp_div_exact(a: &QPoly, b: &QPoly) -> Option<QPoly> {
    let (q, r) = qp_divrem(a, b);
    if qp_is_zero(&r) {
        Some(q)
    } else {
        None
    }
}

/// Monic gcd over Q(i).
pub(crate) fn qp_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut f = a.clone();
    let mut g = b.clone();
    while !qp_is_zero(&g) {
        // keep the divisor monic; unnormalized remainders blow up the
        // rational coefficients exponentially
        let lead = g.last().unwrap().inv().unwrap();
        g = qp_scale(&g, &lead);
        let (_, r) = qp_divrem(&f, &g);
        f = g;
        g = r;
    }
    if let Some(lead) = f.last().cloned() {
        f = qp_scale(&f, &lead.inv().unwrap());
    }
    f
}

// ---- bivariate gcd: univariate in t1 over Q(i)[t2] ---------------------

/// Univariate in `t1` with coefficients in Q(i)[t2]; little-endian in `t1`.
type BPoly = Vec<QPoly>;

fn bp_trim(mut p: BPoly) -> BPoly {
    while p.last().is_some_and(qp_is_zero) {
        p.pop();
    }
    p
}

fn to_bpoly(p: &Poly2) -> BPoly {
    let d1 = p.terms.keys().map(|&(e1, _)| e1).max().unwrap_or(0) as usize;
    let d2 = p.terms.keys().map(|&(_, e2)| e2).max().unwrap_or(0) as usize;
    let mut out = vec![vec![GaussianRational::zero(); d2 + 1]; d1 + 1];
    for (&(e1, e2), c) in &p.terms {
        out[e1 as usize][e2 as usize] = c.clone();
    }
    bp_trim(out.into_iter().map(qp_trim).collect())
}

fn from_bpoly(p: &BPoly) -> Poly2 {
    let mut terms = BTreeMap::new();
    for (e1, coeff) in p.iter().enumerate() {
        for (e2, c) in coeff.iter().enumerate() {
            if !c.is_zero() {
                terms.insert((e1 as u32, e2 as u32), c.clone());
            }
        }
    }
    Poly2 { terms }
}

fn bp_content(p: &BPoly) -> QPoly {
    let mut g: QPoly = vec![];
    for c in p {
        g = qp_gcd(&g, c);
    }
    g
}

fn bp_scale_div(p: &BPoly, d: &QPoly) -> BPoly {
    p.iter()
        .map(|c| {
            if qp_is_zero(c) {
                vec![]
            } else {
                qp_div_exact(c, d).expect("content divides")
            }
        })
        .collect()
}

fn bp_mul_coeff(p: &BPoly, c: &QPoly) -> BPoly {
    p.iter().map(|x| qp_mul(x, c)).collect()
}

fn bp_sub(a: &BPoly, b: &BPoly) -> BPoly {
    let mut out = a.clone();
    out.resize(out.len().max(b.len()), vec![]);
    for (i, cb) in b.iter().enumerate() {
        out[i] = qp_sub(&out[i], cb);
    }
    bp_trim(out)
}

fn bp_shift(p: &BPoly, k: usize) -> BPoly {
    let mut out = vec![vec![]; k];
    out.extend(p.iter().cloned());
    out
}

/// Pseudo-remainder of `a` by `b` in t1 (coefficients in Q(i)[t2]).
fn bp_pseudo_rem(a: &BPoly, b: &BPoly) -> BPoly {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // lb * r - lr * x^(dr-db) * b
        let lhs = bp_mul_coeff(&r, &lb);
        let rhs = bp_mul_coeff(&bp_shift(b, dr - db), &lr);
        r = bp_sub(&lhs, &rhs);
    }
    r
}

fn bp_primitive_part(p: &BPoly) -> BPoly {
    if p.is_empty() {
        return vec![];
    }
    let c = bp_content(p);
    bp_scale_div(p, &c)
}

fn bpoly_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let ca = bp_content(a);
    let cb = bp_content(b);
    let cg = qp_gcd(&ca, &cb);
    // constant in t1: gcd reduces to coefficient gcd
    if a.len() == 1 {
        return vec![qp_gcd(&ca, &bp_content(b))];
    }
    if b.len() == 1 {
        return vec![qp_gcd(&cb, &bp_content(a))];
    }
    let mut f = bp_primitive_part(a);
    let mut g = bp_primitive_part(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = bp_pseudo_rem(&f, &g);
        if r.is_empty() {
            break;
        }
        f = g;
        g = bp_primitive_part(&r);
    }
    bp_mul_coeff(&g, &cg)
}

fn bpoly_div_exact(a: &BPoly, b: &BPoly) -> Option<BPoly> {
    if a.is_empty() {
        return Some(vec![]);
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.clone();
    let mut quot: BPoly = vec![vec![]; a.len() - b.len() + 1];
    let lb = b.last().unwrap();
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let q = qp_div_exact(rem.last().unwrap(), lb)?;
        quot[shift] = q.clone();
        let sub = bp_mul_coeff(&bp_shift(b, shift), &q);
        rem = bp_sub(&rem, &sub);
    }
    if rem.is_empty() {
        Some(bp_trim(quot))
    } else {
        None
    }
}

// ---- display & serde ---------------------------------------------------

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // graded-lex descending for readability
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(e1, e2)| std::cmp::Reverse((e1 + e2, e1)));
        for (e1, e2) in keys {
            let c = &self.terms[&(e1, e2)];
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e1 == 0 && e2 == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})")?;
                if e1 > 0 {
                    write!(f, "*t1^{e1}")?;
                }
                if e2 > 0 {
                    write!(f, "*t2^{e2}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e1: u32,
    e2: u32,
    c: GaussianRational,
}

impl Serialize for Poly2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&(e1, e2), c) in &self.terms {
            seq.serialize_element(&TermJson { e1, e2, c: c.clone() })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for t in raw {
            Poly2::insert_add(&mut terms, (t.e1, t.e2), t.c);
        }
        Ok(Poly2 { terms })
    }
}
