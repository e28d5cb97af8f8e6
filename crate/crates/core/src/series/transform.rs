use serde::{Deserialize, Serialize};

use crate::coeff::GaussianRational;
use crate::error::{Error, Result};

/// Largest root-of-unity order accepted when validating a transform.
pub const ROOT_ORDER_BOUND: u32 = 64;

/// The change-of-variables data of a crepant-resolution comparison: a
/// cohomology change of basis `L`, the roots of unity substituted for the
/// exceptional quantum parameters, and the counts `s` (untwisted) and `r`
/// (total) of quantum parameters.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct TransformSpec {
    pub l: Vec<Vec<GaussianRational>>,
    pub roots: Vec<GaussianRational>,
    pub s: usize,
    pub r: usize,
}

impl TransformSpec {
    pub fn new(
        l: Vec<Vec<GaussianRational>>,
        roots: Vec<GaussianRational>,
        s: usize,
        r: usize,
    ) -> Result<Self> {
        if roots.len() != r - s {
            return Err(Error::DimensionMismatch { expected: r - s, got: roots.len() });
        }
        for c in &roots {
            if !is_root_of_unity(c, ROOT_ORDER_BOUND) {
                return Err(Error::Invalid(format!("{c} is not a root of unity of order <= {ROOT_ORDER_BOUND}")));
            }
        }
        let n = l.len();
        if l.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: 0 });
        }
        if n > 0 && !is_invertible(&l) {
            return Err(Error::Invalid("change-of-basis matrix is singular".into()));
        }
        Ok(TransformSpec { l, roots, s, r })
    }
}

/// An effective degree split into untwisted curve-class entries and
/// twisted-sector counts.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtendedDegree {
    pub untwisted: Vec<i64>,
    pub twisted: Vec<i64>,
}

impl ExtendedDegree {
    pub fn is_effective(&self) -> bool {
        self.untwisted.iter().chain(&self.twisted).all(|&d| d >= 0)
    }
}

pub fn is_root_of_unity(c: &GaussianRational, bound: u32) -> bool {
    let mut p = c.clone();
    for _ in 1..=bound {
        if p.is_one() {
            return true;
        }
        p = p * c.clone();
    }
    false
}

fn is_invertible(m: &[Vec<GaussianRational>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<GaussianRational>> = m.to_vec();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return false;
        };
        a.swap(col, pivot);
        let inv = a[col][col].inv().unwrap();
        for c in a[col].iter_mut() {
            *c = c.clone() * inv.clone();
        }
        for r in (col + 1)..n {
            if !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let delta = f.clone() * a[col][c].clone();
                    a[r][c] = a[r][c].clone() - delta;
                }
            }
        }
    }
    true
}
