//! The change of variables of the crepant resolution conjecture for a
//! finite subgroup of SL(V): one row per nontrivial irreducible, with
//! exact square-root and root-of-unity bookkeeping.

use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::cyclotomic::Cyclotomic;
use crate::characters::dixon::{character_table, CharacterTable};
use crate::characters::group::FiniteGroup;
use crate::characters::rep::Representation;
use crate::error::{Error, Result};

/// exp(2 pi i num/den), reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub num: u32,
    pub den: u32,
}

impl RootOfUnity {
    pub fn new(num: u32, den: u32) -> Self {
        let num = num % den;
        let g = num::integer::gcd(num.max(1), den);
        if num == 0 {
            return RootOfUnity { num: 0, den: 1 };
        }
        RootOfUnity {
            num: num / g,
            den: den / g,
        }
    }

    pub fn as_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::root(self.den, self.num as i64)
    }
}

/// One matrix entry: value = coeff * sqrt(radicand), with the imaginary
/// unit folded into the cyclotomic coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrcEntry {
    pub radicand: u64,
    pub coeff: Cyclotomic,
}

impl CrcEntry {
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrcRow {
    pub dim: u32,
    /// None for the trivial row y0 = x0.
    pub q: Option<RootOfUnity>,
    pub entries: Vec<CrcEntry>,
}

/// The linear change of variables plus quantum-parameter values.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrcTransform {
    pub group_order: usize,
    pub level: u32,
    pub class_sizes: Vec<usize>,
    pub rows: Vec<CrcRow>,
}

fn squarefree_split(n: u64) -> (u64, u64) {
    // n = s^2 * m with m squarefree
    let mut s = 1u64;
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        while m % (d * d) == 0 {
            m /= d * d;
            s *= d;
        }
        d += 1;
    }
    (s, m)
}

/// sqrt(a) = (s/den) * sqrt(m) for a = num/den >= 0.
fn sqrt_rational(a: &BigRational) -> Result<(BigRational, u64)> {
    if a.is_negative() {
        return Err(Error::Invalid("square root of a negative radicand".into()));
    }
    if a.is_zero() {
        return Ok((BigRational::zero(), 0));
    }
    let num: u64 = a
        .numer()
        .try_into()
        .map_err(|_| Error::Invalid("radicand too large".into()))?;
    let den: u64 = a
        .denom()
        .try_into()
        .map_err(|_| Error::Invalid("radicand too large".into()))?;
    let (s, m) = squarefree_split(num * den);
    Ok((
        BigRational::new((s as i64).into(), (den as i64).into()),
        m,
    ))
}

/// y_R = (1/|G|) sum_g sqrt(chi_V(g) - dim V) chi_R(g) x_(g), grouped by
/// class, with the branch sqrt(chi_V - dim V) = +i sqrt(dim V - chi_V).
pub fn crc_change_of_variables(
    group: &FiniteGroup,
    rep: &Representation,
) -> Result<(CrcTransform, CharacterTable)> {
    rep.age_check(group)?;
    let table = character_table(group)?;
    let k = table.classes.len();
    let level = num::integer::lcm(table.exponent, 4);
    let i_unit = Cyclotomic::root(level, level as i64 / 4);
    let chi_v = rep.character(group);
    let order_inv = BigRational::new(1.into(), (group.order() as i64).into());

    // per-class i * sqrt(dim V - chi_V(c)) as (cyclotomic factor, radicand)
    let mut sqrt_factors = Vec::with_capacity(k);
    for value in &chi_v {
        let v = value
            .as_rational()
            .ok_or_else(|| Error::Invalid("chi_V is not real on a class".into()))?;
        let a = BigRational::from_integer((rep.dim() as i64).into()) - v;
        let (scalar, radicand) = sqrt_rational(&a)?;
        sqrt_factors.push((i_unit.scale(&scalar), radicand));
    }

    let trivial = table.trivial_index();
    let mut rows = Vec::with_capacity(table.num_irreps());
    let mut trivial_entries = vec![
        CrcEntry {
            radicand: 0,
            coeff: Cyclotomic::zero(level)
        };
        k
    ];
    trivial_entries[0] = CrcEntry {
        radicand: 1,
        coeff: Cyclotomic::one(level),
    };
    rows.push(CrcRow {
        dim: 1,
        q: None,
        entries: trivial_entries,
    });
    for r in 0..table.num_irreps() {
        if r == trivial {
            continue;
        }
        let entries = (0..k)
            .map(|c| {
                let (factor, radicand) = &sqrt_factors[c];
                let class_weight =
                    BigRational::from_integer((table.classes.sizes[c] as i64).into()) * &order_inv;
                let coeff = table.values[r][c]
                    .embed(level)?
                    .mul(factor)?
                    .scale(&class_weight);
                Ok(CrcEntry {
                    radicand: *radicand,
                    coeff,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(CrcRow {
            dim: table.dims[r],
            q: Some(RootOfUnity::new(table.dims[r], group.order() as u32)),
            entries,
        });
    }
    Ok((
        CrcTransform {
            group_order: group.order(),
            level,
            class_sizes: table.classes.sizes.clone(),
            rows,
        },
        table,
    ))
}

/// Nontrivial rows may only couple to age-1 classes; the trivial row only
/// to the untwisted class.
pub fn grading_check(transform: &CrcTransform, ages: &[BigRational]) -> Result<()> {
    for (row_idx, row) in transform.rows.iter().enumerate() {
        for (class, entry) in row.entries.iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let ok = if row.q.is_none() {
                class == 0
            } else {
                ages[class].is_one()
            };
            if !ok {
                return Err(Error::GradingViolation {
                    row: row_idx,
                    class,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::rep::{so3_a4, so3_z2z2, su2_cyclic, su2_cyclic_weights};

    #[test]
    fn z2_reproduces_corollary_substitution() {
        let (group, rep) = su2_cyclic(2);
        let (transform, _) = crc_change_of_variables(&group, &rep).unwrap();
        assert_eq!(transform.rows.len(), 2);
        let row = &transform.rows[1];
        assert_eq!(row.q, Some(RootOfUnity::new(1, 2)));
        // untwisted column is absent
        assert!(row.entries[0].is_zero());
        // y1 = -i x_(-1) on this branch
        assert_eq!(row.entries[1].radicand, 1);
        assert_eq!(
            row.entries[1].coeff,
            Cyclotomic::root(4, 1).neg()
        );
        // q = exp(pi i) = -1
        assert_eq!(
            row.q.unwrap().as_cyclotomic().as_rational(),
            Some(BigRational::from_integer((-1).into()))
        );
    }

    #[test]
    fn a4_q_values() {
        let (group, rep) = so3_a4();
        let (transform, table) = crc_change_of_variables(&group, &rep).unwrap();
        assert_eq!(table.order, 12);
        let mut qs: Vec<RootOfUnity> = transform.rows[1..].iter().map(|r| r.q.unwrap()).collect();
        qs.sort_by_key(|q| (q.den, q.num));
        assert_eq!(
            qs,
            vec![
                RootOfUnity::new(1, 4),
                RootOfUnity::new(1, 12),
                RootOfUnity::new(1, 12)
            ]
        );
    }

    #[test]
    fn grading_passes_for_good_reps() {
        for (group, rep) in [su2_cyclic(2), so3_z2z2(), so3_a4()] {
            let ages = rep.age_check(&group).unwrap();
            let (transform, _) = crc_change_of_variables(&group, &rep).unwrap();
            grading_check(&transform, &ages).unwrap();
        }
    }

    #[test]
    fn wrong_weights_fail_upstream() {
        let (group, rep) = su2_cyclic_weights(4, 1, 1);
        assert!(matches!(
            crc_change_of_variables(&group, &rep),
            Err(Error::AgeNotOne { .. })
        ));
    }

    #[test]
    fn root_of_unity_reduction() {
        assert_eq!(RootOfUnity::new(3, 12), RootOfUnity::new(1, 4));
        assert_eq!(RootOfUnity::new(12, 12), RootOfUnity { num: 0, den: 1 });
        let json = serde_json::to_string(&RootOfUnity::new(1, 4)).unwrap();
        assert_eq!(json, r#"{"num":1,"den":4}"#);
    }
}
