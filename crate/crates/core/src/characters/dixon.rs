//! Character tables by the Dixon/Burnside method: common eigenvectors of
//! the class multiplication matrices over a suitable prime field, lifted
//! exactly to cyclotomic values.

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::cyclotomic::Cyclotomic;
use crate::characters::group::{ConjugacyClasses, FiniteGroup};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterTable {
    pub order: usize,
    pub exponent: u32,
    pub classes: ConjugacyClasses,
    /// class index of the inverses of each class
    pub inverse_class: Vec<usize>,
    pub dims: Vec<u32>,
    /// values\[irrep\]\[class\] in Q(zeta_exponent)
    pub values: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn num_irreps(&self) -> usize {
        self.values.len()
    }

    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        let one = Cyclotomic::one(self.exponent);
        self.values
            .iter()
            .position(|row| row.iter().all(|v| *v == one))
            .expect("trivial character exists")
    }
}

// Arithmetic in F_p for p < 2^31.
fn madd(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn msub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn mmul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn mpow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mmul(acc, a, p);
        }
        a = mmul(a, a, p);
        e >>= 1;
    }
    acc
}

fn minv(a: u64, p: u64) -> u64 {
    mpow(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p = 1 mod e with p > 2|G|.
fn dixon_prime(order: usize, exponent: u32) -> u64 {
    let e = exponent as u64;
    let mut p = (2 * order as u64 / e + 1) * e + 1;
    while !is_prime(p) || p <= 2 * order as u64 {
        p += e;
    }
    p
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| mpow(g, (p - 1) / q, p) != 1))
        .expect("F_p has a generator")
}

/// Kernel basis of an r x c matrix over F_p, vectors of length c.
fn kernel(mut m: Vec<Vec<u64>>, c: usize, p: u64) -> Vec<Vec<u64>> {
    let r = m.len();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..c {
        let pivot = (row..r).find(|&i| m[i][col] % p != 0);
        let Some(pivot) = pivot else { continue };
        m.swap(row, pivot);
        let inv = minv(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = mmul(*x, inv, p);
        }
        for i in 0..r {
            if i != row && m[i][col] % p != 0 {
                let f = m[i][col];
                for j in 0..c {
                    m[i][j] = msub(m[i][j], mmul(f, m[row][j], p), p);
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == r {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let free_cols: Vec<usize> = (0..c).filter(|j| !pivot_cols.contains(j)).collect();
    free_cols
        .iter()
        .map(|&fc| {
            let mut v = vec![0u64; c];
            v[fc] = 1;
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = msub(0, m[ri][fc], p);
            }
            v
        })
        .collect()
}

struct ClassData {
    classes: ConjugacyClasses,
    inverse_class: Vec<usize>,
    /// m\[i\]\[j\]\[l\] = a_{ij}^l
    constants: Vec<Vec<Vec<u64>>>,
    /// class of rep_i^j for j in 0..exponent
    power_class: Vec<Vec<usize>>,
}

fn class_data(g: &FiniteGroup, exponent: u32) -> ClassData {
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let n = g.order();
    let members: Vec<Vec<usize>> = (0..k)
        .map(|c| (0..n).filter(|&x| classes.class_of[x] == c).collect())
        .collect();
    let inverse_class: Vec<usize> = (0..k)
        .map(|c| classes.class_of[g.inv(classes.reps[c])])
        .collect();
    let mut constants = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            // count products x*y landing on the fixed representative of l
            for &x in &members[i] {
                for &y in &members[j] {
                    let l = classes.class_of[g.mul(x, y)];
                    constants[i][j][l] += 1;
                }
            }
            for l in 0..k {
                debug_assert_eq!(constants[i][j][l] % members[l].len() as u64, 0);
                constants[i][j][l] /= members[l].len() as u64;
            }
        }
    }
    let power_class: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let rep = classes.reps[c];
            let mut x = 0usize;
            (0..exponent)
                .map(|_| {
                    let cls = classes.class_of[x];
                    x = g.mul(x, rep);
                    cls
                })
                .collect()
        })
        .collect();
    ClassData {
        classes,
        inverse_class,
        constants,
        power_class,
    }
}

/// The full character table, exact over Q(zeta_e).
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let exponent = g.exponent();
    let data = class_data(g, exponent);
    let k = data.classes.len();
    let p = dixon_prime(g.order(), exponent);

    // common eigenvectors of the class matrices M_i, (M_i)_{jl} = a_{ij}^l
    let mut subspaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..k {
        let mi: Vec<Vec<u64>> = (0..k)
            .map(|j| (0..k).map(|l| data.constants[i][j][l] % p).collect())
            .collect();
        let apply = |v: &[u64]| -> Vec<u64> {
            (0..k)
                .map(|j| {
                    let mut acc = 0u64;
                    for l in 0..k {
                        acc = madd(acc, mmul(mi[j][l], v[l], p), p);
                    }
                    acc
                })
                .collect()
        };
        let mut next = Vec::new();
        for basis in subspaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(b)).collect();
            let mut split = Vec::new();
            let mut covered = 0;
            for lambda in 0..p {
                // solve sum_c x_c (M - lambda) b_c = 0
                let rows: Vec<Vec<u64>> = (0..k)
                    .map(|coord| {
                        (0..basis.len())
                            .map(|c| msub(images[c][coord], mmul(lambda, basis[c][coord], p), p))
                            .collect()
                    })
                    .collect();
                let ker = kernel(rows, basis.len(), p);
                if ker.is_empty() {
                    continue;
                }
                covered += ker.len();
                let vectors: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|coeffs| {
                        (0..k)
                            .map(|coord| {
                                let mut acc = 0u64;
                                for (c, b) in basis.iter().enumerate() {
                                    acc = madd(acc, mmul(coeffs[c], b[coord], p), p);
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                split.push(vectors);
                if covered == basis.len() {
                    break;
                }
            }
            if covered != basis.len() {
                return Err(Error::DegenerateEigenspaces);
            }
            next.extend(split);
        }
        subspaces = next;
    }
    if subspaces.iter().any(|s| s.len() != 1) {
        return Err(Error::DegenerateEigenspaces);
    }

    let t = mpow(primitive_root(p), (p - 1) / exponent as u64, p);
    let e_inv = minv(exponent as u64, p);
    let mut rows: Vec<(u32, Vec<u64>, Vec<Vec<u64>>)> = Vec::new();
    for space in subspaces {
        let mut omega = space.into_iter().next().expect("one-dimensional");
        if omega[0] == 0 {
            return Err(Error::DegenerateEigenspaces);
        }
        let norm = minv(omega[0], p);
        for x in omega.iter_mut() {
            *x = mmul(*x, norm, p);
        }
        // 1/d^2 = (1/|G|) sum_i omega_i omega_{i*} / |C_i|
        let mut s = 0u64;
        for i in 0..k {
            let term = mmul(
                mmul(omega[i], omega[data.inverse_class[i]], p),
                minv(data.classes.sizes[i] as u64 % p, p),
                p,
            );
            s = madd(s, term, p);
        }
        let d_sq = mmul(g.order() as u64 % p, minv(s, p), p);
        let d = (1..=(p - 1) / 2)
            .find(|&x| mmul(x, x, p) == d_sq)
            .ok_or(Error::DegenerateEigenspaces)?;
        let chi_mod: Vec<u64> = (0..k)
            .map(|i| mmul(mmul(d, omega[i], p), minv(data.classes.sizes[i] as u64 % p, p), p))
            .collect();
        // multiplicity of zeta^s in chi(g_i): (1/e) sum_j chi(g_i^j) t^{-js}
        let mults: Vec<Vec<u64>> = (0..k)
            .map(|i| {
                (0..exponent as u64)
                    .map(|s_exp| {
                        let mut acc = 0u64;
                        for j in 0..exponent as u64 {
                            let cls = data.power_class[i][j as usize];
                            let tw = minv(mpow(t, j * s_exp % (exponent as u64), p), p);
                            acc = madd(acc, mmul(chi_mod[cls], tw, p), p);
                        }
                        mmul(acc, e_inv, p)
                    })
                    .collect()
            })
            .collect();
        for row in &mults {
            for &m in row {
                if m > g.order() as u64 {
                    return Err(Error::DegenerateEigenspaces);
                }
            }
        }
        rows.push((d as u32, chi_mod, mults));
    }

    // deterministic order: trivial character first, then by dimension and
    // lifted multiplicity pattern
    rows.sort_by(|a, b| (a.0, &a.2).cmp(&(b.0, &b.2)));
    let trivial = rows
        .iter()
        .position(|(d, _, mults)| *d == 1 && mults.iter().all(|m| m[0] == 1 && m[1..].iter().all(|&x| x == 0)))
        .ok_or(Error::DegenerateEigenspaces)?;
    rows.swap(0, trivial);
    if trivial != 0 {
        rows[1..].sort_by(|a, b| (a.0, &a.2).cmp(&(b.0, &b.2)));
    }

    let dims: Vec<u32> = rows.iter().map(|(d, _, _)| *d).collect();
    if dims.iter().map(|&d| (d as usize).pow(2)).sum::<usize>() != g.order() {
        return Err(Error::DegenerateEigenspaces);
    }
    let values: Vec<Vec<Cyclotomic>> = rows
        .iter()
        .map(|(_, _, mults)| {
            (0..k)
                .map(|i| {
                    let mut v = Cyclotomic::zero(exponent);
                    for (s_exp, &m) in mults[i].iter().enumerate() {
                        if m != 0 {
                            let term = Cyclotomic::root(exponent, s_exp as i64)
                                .scale(&BigRational::from_integer((m as i64).into()));
                            v = v.add(&term).expect("same level");
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();

    let table = CharacterTable {
        order: g.order(),
        exponent,
        classes: data.classes,
        inverse_class: data.inverse_class,
        dims,
        values,
    };
    verify_orthogonality(&table)?;
    Ok(table)
}

/// Exact row orthogonality: sum_i |C_i| chi_R(i) conj(chi_S(i)) = |G| delta.
fn verify_orthogonality(t: &CharacterTable) -> Result<()> {
    let zero = BigRational::zero();
    let order = BigRational::from_integer((t.order as i64).into());
    for r in 0..t.num_irreps() {
        for s in 0..t.num_irreps() {
            let mut acc = Cyclotomic::zero(t.exponent);
            for i in 0..t.classes.len() {
                let term = t.values[r][i]
                    .mul(&t.values[s][i].conj())?
                    .scale(&BigRational::from_integer((t.classes.sizes[i] as i64).into()));
                acc = acc.add(&term)?;
            }
            let expected = if r == s { &order } else { &zero };
            if acc.as_rational().as_ref() != Some(expected) {
                return Err(Error::DegenerateEigenspaces);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat_value(t: &CharacterTable, r: usize, c: usize) -> Option<BigRational> {
        t.values[r][c].as_rational()
    }

    #[test]
    fn z2_table() {
        let t = character_table(&FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(t.dims, vec![1, 1]);
        assert_eq!(t.trivial_index(), 0);
        let one = BigRational::from_integer(1.into());
        assert_eq!(rat_value(&t, 0, 0), Some(one.clone()));
        assert_eq!(rat_value(&t, 0, 1), Some(one.clone()));
        assert_eq!(rat_value(&t, 1, 0), Some(one.clone()));
        assert_eq!(rat_value(&t, 1, 1), Some(-one));
    }

    #[test]
    fn z3_table() {
        let t = character_table(&FiniteGroup::cyclic(3)).unwrap();
        assert_eq!(t.dims, vec![1, 1, 1]);
        // nontrivial rows take primitive cube roots of unity
        let omega = Cyclotomic::root(3, 1);
        let omega2 = Cyclotomic::root(3, 2);
        let nontrivial: Vec<&Cyclotomic> = vec![&t.values[1][1], &t.values[2][1]];
        assert!(nontrivial.contains(&&omega));
        assert!(nontrivial.contains(&&omega2));
    }

    #[test]
    fn z4_table() {
        let t = character_table(&FiniteGroup::cyclic(4)).unwrap();
        assert_eq!(t.dims, vec![1, 1, 1, 1]);
        assert_eq!(t.exponent, 4);
    }

    #[test]
    fn z2z2_table() {
        let t = character_table(&FiniteGroup::z2z2()).unwrap();
        assert_eq!(t.dims, vec![1, 1, 1, 1]);
        // all values are +-1
        let one = BigRational::from_integer(1.into());
        for row in &t.values {
            for v in row {
                let r = v.as_rational().unwrap();
                assert!(r == one || r == -one.clone());
            }
        }
    }

    #[test]
    fn s3_table() {
        let t = character_table(&FiniteGroup::s3()).unwrap();
        let mut dims = t.dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2]);
        // the 2-dimensional row takes value 0 on the size-3 class and -1 on
        // the size-2 class
        let two_dim = t.dims.iter().position(|&d| d == 2).unwrap();
        for i in 0..t.classes.len() {
            let v = rat_value(&t, two_dim, i).unwrap();
            match t.classes.sizes[i] {
                1 => assert_eq!(v, BigRational::from_integer(2.into())),
                3 => assert_eq!(v, BigRational::zero()),
                2 => assert_eq!(v, BigRational::from_integer((-1).into())),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn a4_table() {
        let t = character_table(&FiniteGroup::a4()).unwrap();
        let mut dims = t.dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 1, 3]);
        // the nontrivial 1-dim rows take primitive cube roots of unity on
        // the 3-cycle classes
        let omega = Cyclotomic::root(3, 1).embed(6).unwrap();
        let omega2 = Cyclotomic::root(3, 2).embed(6).unwrap();
        let mut found = 0;
        for r in 0..4 {
            if t.dims[r] != 1 || r == t.trivial_index() {
                continue;
            }
            for i in 0..t.classes.len() {
                if t.classes.sizes[i] == 4 {
                    let v = &t.values[r][i];
                    assert!(*v == omega || *v == omega2);
                    found += 1;
                }
            }
        }
        assert_eq!(found, 4);
    }
}
