//! The worked A_1 comparison: equivariant potentials of Y = T*P^1 and
//! X = [C^2/(+-1)], localization triple products, and the corollary-level
//! verification under y0 = x0, y1 = +-i x1, q = -1.

use serde::{Deserialize, Serialize};

use crate::coeff::{GaussianRational, Poly2, RatFunc};
use crate::error::{Error, Result};
use crate::series::{half_tan, pade_auto, SeriesRing, TruncatedSeries};

/// Fixed-point localization data: tangent weights and class restrictions.
#[derive(Clone, Debug)]
pub struct FixedPointData {
    weights: Vec<(Poly2, Poly2)>,
    restrictions: Vec<Vec<RatFunc>>,
}

impl FixedPointData {
    pub fn new(weights: Vec<(Poly2, Poly2)>, restrictions: Vec<Vec<RatFunc>>) -> Result<Self> {
        if weights.iter().any(|(a, b)| a.is_zero() || b.is_zero()) {
            return Err(Error::ZeroWeight);
        }
        for r in &restrictions {
            if r.len() != weights.len() {
                return Err(Error::DimensionMismatch {
                    expected: weights.len(),
                    got: r.len(),
                });
            }
        }
        Ok(FixedPointData {
            weights,
            restrictions,
        })
    }

    /// The two torus fixed points of T*P^1, with the identity class (index 0)
    /// and the fiber class gamma (index 1, restrictions -t1 and -t2).
    pub fn tstar_p1() -> Self {
        let t1 = Poly2::t1();
        let t2 = Poly2::t2();
        let two = Poly2::constant(GaussianRational::from_int(2));
        let weights = vec![
            (two.clone() * t1.clone(), t2.clone() - t1.clone()),
            (two * t2.clone(), t1.clone() - t2.clone()),
        ];
        let one = vec![RatFunc::one(), RatFunc::one()];
        let gamma = vec![-RatFunc::t1(), -RatFunc::t2()];
        FixedPointData::new(weights, vec![one, gamma]).expect("weights are nonzero")
    }

    pub fn num_classes(&self) -> usize {
        self.restrictions.len()
    }
}

/// Sum over fixed points of (product of restrictions)/(product of weights).
pub fn localization_triple_product(classes: [usize; 3], data: &FixedPointData) -> Result<RatFunc> {
    for &c in &classes {
        if c >= data.num_classes() {
            return Err(Error::DimensionMismatch {
                expected: data.num_classes(),
                got: c,
            });
        }
    }
    let mut total = RatFunc::zero();
    for (p, (w1, w2)) in data.weights.iter().enumerate() {
        let mut num = RatFunc::one();
        for &c in &classes {
            num = num * data.restrictions[c][p].clone();
        }
        let den = RatFunc::from_poly(w1.clone() * w2.clone());
        total = total + num.div(&den)?;
    }
    Ok(total)
}

fn sum_t() -> RatFunc {
    RatFunc::t1() + RatFunc::t2()
}

fn inv_12t1t2() -> RatFunc {
    (RatFunc::t1() * RatFunc::t2() * RatFunc::from_int(12))
        .inv()
        .expect("t1 t2 != 0")
}

/// F^Y on the ring (y0, y1, q), with independent y1 and q truncation orders.
///
/// F^Y = y0^3/(12 t1 t2) - y0 y1^2/4 + (t1+t2) y1^3/12
///       + (t1+t2) sum_{d>0} q^d e^{d y1}/d^3.
pub fn potential_y_orders(y_order: u32, q_order: u32) -> TruncatedSeries {
    let ring = SeriesRing::new(
        vec!["y0".into(), "y1".into(), "q".into()],
        vec![3, y_order, q_order],
        None,
    );
    let mut f = TruncatedSeries::zero(ring.clone());
    f.add_term(vec![3, 0, 0], inv_12t1t2());
    f.add_term(vec![1, 2, 0], RatFunc::from_ratio(-1, 4));
    f.add_term(vec![0, 3, 0], sum_t() * RatFunc::from_ratio(1, 12));
    let mut fact = GaussianRational::one();
    for j in 0..=y_order as i64 {
        if j > 1 {
            fact = fact * GaussianRational::from_int(j);
        }
        for d in 1..=q_order as i64 {
            // coefficient of q^d y1^j: (t1+t2) d^{j-3}/j!
            let d_g = GaussianRational::from_int(d);
            let d_pow = if j >= 3 {
                d_g.pow((j - 3) as u32)
            } else {
                d_g.pow((3 - j) as u32).inv().expect("d != 0")
            };
            let c = sum_t() * RatFunc::constant(d_pow.div(&fact).expect("j! != 0"));
            f.add_term(vec![0, j as u32, d as u32], c);
        }
    }
    f
}

pub fn potential_y(order: u32) -> TruncatedSeries {
    potential_y_orders(order, order)
}

/// F^X on the ring (x0, x1):
/// F^X = x0^3/(12 t1 t2) + x0 x1^2/4 - (t1+t2) x1^2 H(x1),
/// with (x1^2 H)''' = (1/2) tan(x1/2) and integration constants zero.
pub fn potential_x(order: u32) -> TruncatedSeries {
    let ring = SeriesRing::new(vec!["x0".into(), "x1".into()], vec![3, order], None);
    let mut f = TruncatedSeries::zero(ring.clone());
    f.add_term(vec![3, 0], inv_12t1t2());
    f.add_term(vec![1, 2], RatFunc::from_ratio(1, 4));
    let h = half_tan("x1", order);
    for (exp, c) in h.terms() {
        let j = exp[0] as i64;
        let scale = RatFunc::from_ratio(-1, (j + 1) * (j + 2) * (j + 3)) * sum_t();
        f.add_term(vec![0, exp[0] + 3], c.clone() * scale);
    }
    f
}

/// Which square root of -1 enters y1 = (+-i) x1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchSign {
    PlusI,
    MinusI,
}

impl BranchSign {
    fn value(self) -> GaussianRational {
        match self {
            BranchSign::PlusI => GaussianRational::i(),
            BranchSign::MinusI => GaussianRational::from_int(-1) * GaussianRational::i(),
        }
    }
}

/// Verification record for one branch of the corollary substitution.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct A1Report {
    pub order: u32,
    pub branch: BranchSign,
    pub matched_degrees: Vec<u32>,
    pub excluded_unstable: Vec<String>,
    pub lhs_coeffs: Vec<RatFunc>,
    pub rhs_coeffs: Vec<RatFunc>,
    pub x0_block_ok: bool,
}

/// Substitutes y0 = x0, y1 = (+-i) x1 into F^Y, continues each x1-degree of
/// the third x1-derivative to q = -1 by Pade, and compares with F^X.
pub fn verify_corollary(order: u32, branch: BranchSign) -> Result<A1Report> {
    if order < 5 {
        return Err(Error::Invalid("need order >= 5".into()));
    }
    // Denominators at x1-degree m are (1-q)^{m+1}; the guard certificate
    // needs 2m+5 q-coefficients at degree m <= order-3.
    let q_order = 2 * order;
    let fy = potential_y_orders(order, q_order);
    let scaled = fy
        .substitute_linear(&[vec![branch.value()]], &[1])?
        .rename_vars(vec!["x0".into(), "x1".into(), "q".into()]);
    let fx = potential_x(order);

    let x0_block_ok = scaled.coeff(&[3, 0, 0]) == fx.coeff(&[3, 0])
        && scaled.coeff(&[1, 2, 0]) == fx.coeff(&[1, 2]);

    let third = scaled.derive(1, 3).set_var_zero(0);
    let rhs_third = fx.derive(1, 3).set_var_zero(0);

    let mut matched_degrees = Vec::new();
    let mut lhs_coeffs = Vec::new();
    let mut rhs_coeffs = Vec::new();
    let minus_one = GaussianRational::from_int(-1);
    for m in 0..=order - 3 {
        let q_series = third.univariate_slice(2, &[0, m, 0]);
        // every coefficient is a rational multiple of t1 + t2; stripping the
        // common factor keeps the Pade linear algebra over plain rationals
        let stripped: Vec<RatFunc> = q_series
            .iter()
            .map(|c| c.div(&sum_t()))
            .collect::<Result<_>>()?;
        let continued = pade_auto(&stripped, m as usize + 2, m as usize + 1)
            .and_then(|p| p.eval_gaussian(&minus_one))
            .map(|v| v * sum_t())
            .map_err(|e| Error::ContinuationFailure {
                degree: m as usize,
                source: Box::new(e),
            })?;
        let rhs = rhs_third.coeff(&[0, m]);
        if continued != rhs {
            return Err(Error::MismatchAt { degree: m as usize });
        }
        matched_degrees.push(m);
        lhs_coeffs.push(continued);
        rhs_coeffs.push(rhs);
    }
    Ok(A1Report {
        order,
        branch,
        matched_degrees,
        excluded_unstable: vec!["x1^0".into(), "x1^1".into(), "x1^2".into()],
        lhs_coeffs,
        rhs_coeffs,
        x0_block_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_product(classes: [usize; 3], expected: RatFunc) {
        let data = FixedPointData::tstar_p1();
        assert_eq!(localization_triple_product(classes, &data).unwrap(), expected);
    }

    #[test]
    fn triple_products() {
        let t1t2 = RatFunc::t1() * RatFunc::t2();
        check_product(
            [0, 0, 0],
            (t1t2 * RatFunc::from_int(2)).inv().unwrap(),
        );
        check_product([1, 1, 0], RatFunc::from_ratio(-1, 2));
        check_product([1, 1, 1], sum_t() * RatFunc::from_ratio(1, 2));
        check_product([1, 0, 0], RatFunc::zero());
    }

    #[test]
    fn triple_products_are_homogeneous() {
        let data = FixedPointData::tstar_p1();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let v = localization_triple_product([a, b, c], &data).unwrap();
                    assert!(v.num().is_homogeneous());
                    assert!(v.den().is_homogeneous());
                }
            }
        }
    }

    #[test]
    fn potential_y_coefficients() {
        let f = potential_y(6);
        assert_eq!(f.coeff(&[3, 0, 0]), inv_12t1t2());
        assert_eq!(f.coeff(&[1, 2, 0]), RatFunc::from_ratio(-1, 4));
        assert_eq!(f.coeff(&[0, 0, 2]), sum_t() * RatFunc::from_ratio(1, 8));
        assert_eq!(f.coeff(&[0, 1, 2]), sum_t() * RatFunc::from_ratio(1, 4));
    }

    #[test]
    fn potential_x_derivative_values() {
        let f = potential_x(8);
        // <D^k> = k-th x1-derivative at the origin
        let d3 = f.derive(1, 3).set_var_zero(0).coeff(&[0, 0]);
        assert_eq!(d3, RatFunc::zero());
        let d4 = f.derive(1, 4).set_var_zero(0).coeff(&[0, 0]);
        assert_eq!(d4, sum_t() * RatFunc::from_ratio(-1, 4));
        let d6 = f.derive(1, 6).set_var_zero(0).coeff(&[0, 0]);
        assert_eq!(d6, sum_t() * RatFunc::from_ratio(-1, 8));
        // <1, D, D> is the x0 x1^2 coefficient times 2
        assert_eq!(
            f.coeff(&[1, 2]) * RatFunc::from_int(2),
            RatFunc::from_ratio(1, 2)
        );
    }

    #[test]
    fn potential_x_is_even() {
        let f = potential_x(9);
        for (exp, _) in f.terms() {
            assert_eq!(exp[1] % 2, 0, "odd x1-degree term at {exp:?}");
        }
    }

    #[test]
    fn corollary_low_degrees() {
        let report = verify_corollary(8, BranchSign::PlusI).unwrap();
        assert!(report.x0_block_ok);
        assert_eq!(report.matched_degrees, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(report.lhs_coeffs[0], RatFunc::zero());
        assert_eq!(report.lhs_coeffs[1], sum_t() * RatFunc::from_ratio(-1, 4));
        assert_eq!(report.rhs_coeffs[3], sum_t() * RatFunc::from_ratio(-1, 48));
    }

    #[test]
    fn corollary_other_branch() {
        let report = verify_corollary(7, BranchSign::MinusI).unwrap();
        assert!(report.x0_block_ok);
        assert_eq!(report.matched_degrees.len(), 5);
    }
}
