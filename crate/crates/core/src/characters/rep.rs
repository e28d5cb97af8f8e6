//! Matrix representations with exact cyclotomic entries, built from
//! generator images, and the age-one check on conjugacy classes.

use num::{BigRational, One, Zero};

use crate::characters::cyclotomic::Cyclotomic;
use crate::characters::group::FiniteGroup;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Cyclotomic>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for row in a {
        let mut out_row = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = Cyclotomic::zero(row[0].level());
            for (l, x) in row.iter().enumerate() {
                acc = acc.add(&x.mul(&b[l][j])?)?;
            }
            out_row.push(acc);
        }
        out.push(out_row);
    }
    Ok(out)
}

fn identity(dim: usize, level: u32) -> Matrix {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        Cyclotomic::one(level)
                    } else {
                        Cyclotomic::zero(level)
                    }
                })
                .collect()
        })
        .collect()
}

/// A representation as one exact matrix per group element.
#[derive(Clone, Debug)]
pub struct Representation {
    level: u32,
    dim: usize,
    matrices: Vec<Matrix>,
}

impl Representation {
    /// Builds all matrices from generator images and verifies
    /// multiplicativity on every pair of elements.
    pub fn from_generators(group: &FiniteGroup, gens: &[(usize, Matrix)]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Invalid("need at least one generator".into()));
        }
        let dim = gens[0].1.len();
        let level = gens[0].1[0][0].level();
        for (_, m) in gens {
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: m.len(),
                });
            }
        }
        let n = group.order();
        let mut matrices: Vec<Option<Matrix>> = vec![None; n];
        matrices[0] = Some(identity(dim, level));
        let mut frontier = vec![0usize];
        while let Some(e) = frontier.pop() {
            let base = matrices[e].clone().expect("visited");
            for (g_idx, g_mat) in gens {
                let target = group.mul(e, *g_idx);
                if matrices[target].is_none() {
                    matrices[target] = Some(mat_mul(&base, g_mat)?);
                    frontier.push(target);
                }
            }
        }
        let matrices: Vec<Matrix> = matrices
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invalid("generators do not generate the group".into()))?;
        let rep = Representation {
            level,
            dim,
            matrices,
        };
        for a in 0..n {
            for b in 0..n {
                let lhs = mat_mul(&rep.matrices[a], &rep.matrices[b])?;
                if lhs != rep.matrices[group.mul(a, b)] {
                    return Err(Error::Invalid(format!(
                        "generator images are not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn matrix(&self, element: usize) -> &Matrix {
        &self.matrices[element]
    }

    pub fn trace(&self, element: usize) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.level);
        for i in 0..self.dim {
            acc = acc.add(&self.matrices[element][i][i]).expect("same level");
        }
        acc
    }

    /// Character value on each conjugacy class, in canonical class order.
    pub fn character(&self, group: &FiniteGroup) -> Vec<Cyclotomic> {
        group
            .conjugacy_classes()
            .reps
            .iter()
            .map(|&r| self.trace(r))
            .collect()
    }

    /// Ages of all conjugacy classes from the eigenvalue phases of the
    /// class representatives; errors unless every nontrivial age is 1.
    pub fn age_check(&self, group: &FiniteGroup) -> Result<Vec<BigRational>> {
        let classes = group.conjugacy_classes();
        let mut ages = Vec::with_capacity(classes.len());
        for (c, &rep) in classes.reps.iter().enumerate() {
            let age = self.class_age(group, rep)?;
            if c > 0 && !age.is_one() {
                return Err(Error::AgeNotOne {
                    class: c,
                    age: age.to_string(),
                });
            }
            ages.push(age);
        }
        Ok(ages)
    }

    fn class_age(&self, group: &FiniteGroup, rep: usize) -> Result<BigRational> {
        let r = group.element_order(rep);
        let m_level = num::integer::lcm(self.level, r);
        // multiplicity of eigenvalue zeta_r^s: (1/r) sum_j tr(rho(g^j)) zeta_r^{-js}
        let mut traces = Vec::with_capacity(r as usize);
        let mut x = 0usize;
        for _ in 0..r {
            traces.push(self.trace(x).embed(m_level)?);
            x = group.mul(x, rep);
        }
        let step = (m_level / r) as i64;
        let r_inv = BigRational::new(1.into(), (r as i64).into());
        let mut age = BigRational::zero();
        let mut total = BigRational::zero();
        for s in 0..r {
            let mut acc = Cyclotomic::zero(m_level);
            for (j, tr) in traces.iter().enumerate() {
                let tw = Cyclotomic::root(m_level, -(j as i64) * (s as i64) * step);
                acc = acc.add(&tr.mul(&tw)?)?;
            }
            let mult = acc
                .as_rational()
                .map(|v| v * &r_inv)
                .ok_or_else(|| Error::Invalid("eigenvalue multiplicity is not rational".into()))?;
            if !mult.is_integer() || mult < BigRational::zero() {
                return Err(Error::Invalid(
                    "eigenvalue multiplicity is not a nonnegative integer".into(),
                ));
            }
            age += &mult * BigRational::from_integer((s as i64).into());
            total += mult;
        }
        if total != BigRational::from_integer((self.dim as i64).into()) {
            return Err(Error::Invalid("eigenvalue multiplicities do not sum to dim".into()));
        }
        Ok(age * r_inv)
    }
}

fn diag(level: u32, entries: &[Cyclotomic]) -> Matrix {
    let n = entries.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        entries[i].clone()
                    } else {
                        Cyclotomic::zero(level)
                    }
                })
                .collect()
        })
        .collect()
}

/// Z_n in SU(2) with generator diag(zeta^w1, zeta^w2); the natural
/// representation is weights (1, n-1).
pub fn su2_cyclic_weights(n: u32, w1: i64, w2: i64) -> (FiniteGroup, Representation) {
    let group = FiniteGroup::cyclic(n as usize);
    let gen = diag(n, &[Cyclotomic::root(n, w1), Cyclotomic::root(n, w2)]);
    let rep = Representation::from_generators(&group, &[(1, gen)]).expect("diagonal cyclic rep");
    (group, rep)
}

pub fn su2_cyclic(n: u32) -> (FiniteGroup, Representation) {
    su2_cyclic_weights(n, 1, n as i64 - 1)
}

/// Z2 x Z2 in SO(3) as the diagonal sign matrices of determinant 1.
pub fn so3_z2z2() -> (FiniteGroup, Representation) {
    let group = FiniteGroup::z2z2();
    let one = Cyclotomic::one(1);
    let neg = Cyclotomic::from_int(1, -1);
    let a = diag(1, &[one.clone(), neg.clone(), neg.clone()]);
    let b = diag(1, &[neg.clone(), one.clone(), neg.clone()]);
    // generators (1,0) at index 2 and (0,1) at index 1
    let rep = Representation::from_generators(&group, &[(2, a), (1, b)]).expect("V4 in SO(3)");
    (group, rep)
}

/// A4 in SO(3): (0 1)(2 3) acts as diag(1,-1,-1) and (0 1 2) permutes the
/// coordinate axes cyclically.
pub fn so3_a4() -> (FiniteGroup, Representation) {
    let group = FiniteGroup::a4();
    let one = Cyclotomic::one(1);
    let neg = Cyclotomic::from_int(1, -1);
    let zero = Cyclotomic::zero(1);
    let s = diag(1, &[one.clone(), neg.clone(), neg.clone()]);
    let t = vec![
        vec![zero.clone(), zero.clone(), one.clone()],
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), zero.clone()],
    ];
    let s_idx = group
        .element_by_permutation(&[1, 0, 3, 2])
        .expect("A4 built from permutations");
    let t_idx = group
        .element_by_permutation(&[1, 2, 0, 3])
        .expect("A4 built from permutations");
    let rep =
        Representation::from_generators(&group, &[(s_idx, s), (t_idx, t)]).expect("A4 in SO(3)");
    (group, rep)
}

/// S3 as the dihedral group in SO(3), written in the basis (z, x+iy, x-iy).
pub fn so3_s3() -> (FiniteGroup, Representation) {
    let group = FiniteGroup::s3();
    let one = Cyclotomic::one(6);
    let neg = Cyclotomic::from_int(6, -1);
    let zero = Cyclotomic::zero(6);
    let flip = vec![
        vec![neg.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone()],
        vec![zero.clone(), one.clone(), zero.clone()],
    ];
    let rot = diag(6, &[one.clone(), Cyclotomic::root(6, 2), Cyclotomic::root(6, 4)]);
    let flip_idx = group
        .element_by_permutation(&[1, 0, 2])
        .expect("S3 built from permutations");
    let rot_idx = group
        .element_by_permutation(&[1, 2, 0])
        .expect("S3 built from permutations");
    let rep = Representation::from_generators(&group, &[(flip_idx, flip), (rot_idx, rot)])
        .expect("D3 in SO(3)");
    (group, rep)
}
