//! Orbifold pairing and small quantum multiplication matrix of Sym^n(C^2),
//! resummation under q = -e^{iu}, and the verification report.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::{qp_gcd, qp_trim, GaussianRational, QPoly, RatFunc};
use crate::error::{Error, Result};
use crate::partitions::{graded_class_mult, partitions, Partition};
use crate::series::{cot_combination, pade_auto, SeriesRing, TruncatedSeries, UniRatFunc};

/// ([I_mu],[I_mu]) = (1/z(mu)) (t1 t2)^{-l(mu)}; off-diagonal pairings vanish.
pub fn orb_pairing(mu: &Partition) -> RatFunc {
    let t1t2 = RatFunc::t1() * RatFunc::t2();
    RatFunc::from_ratio(1, mu.z_order() as i64) * t1t2.pow(-(mu.len() as i64)).expect("t1t2 != 0")
}

/// (N_mu,N_mu) = (-1)^{n-l(mu)}/z(mu) * (t1 t2)^{-l(mu)}.
pub fn nakajima_pairing(mu: &Partition) -> RatFunc {
    let sign = if mu.age() % 2 == 0 { 1 } else { -1 };
    orb_pairing(mu) * RatFunc::from_int(sign)
}

/// The diagonal of L([I_mu]) = i^{l(mu)} N_mu in canonical basis order.
pub fn bg_map(n: u32) -> Vec<GaussianRational> {
    partitions(n)
        .iter()
        .map(|mu| GaussianRational::i_pow(mu.len() as i64))
        .collect()
}

/// Per-partition ratio (L[I_mu], L[I_mu]) / ([I_mu],[I_mu]), taken bilinearly.
/// Recorded, not asserted: the computed value is (-1)^n.
pub fn check_pairing_transport(n: u32) -> Vec<(Partition, GaussianRational)> {
    partitions(n)
        .into_iter()
        .map(|mu| {
            let scale = GaussianRational::i_pow(2 * mu.len() as i64);
            let ratio = (nakajima_pairing(&mu) * RatFunc::constant(scale))
                .div(&orb_pairing(&mu))
                .expect("pairings are nonzero");
            let value = ratio.as_gaussian().expect("ratio is constant");
            (mu, value)
        })
        .collect()
}

fn single_part_entry(k: u32, ring: &Arc<SeriesRing>) -> TruncatedSeries {
    let order = ring.var_caps()[0];
    let combo = cot_combination(k, &ring.vars()[0], order);
    let scale = RatFunc::constant(GaussianRational::i())
        * RatFunc::from_ratio(-(k as i64), 2)
        * (RatFunc::t1() + RatFunc::t2());
    combo.scale(&scale)
}

/// c^mu_mu(u) assembled from the cot lemma via the splitting lemma:
/// c^mu_mu = (1/z(mu)) sum_i mu_i c^{(mu_i)}_{(mu_i)}.
pub fn diag_quantum_entry(mu: &Partition, order: u32) -> TruncatedSeries {
    let ring = SeriesRing::univariate("u", order);
    diag_entry_in(mu, &ring)
}

fn diag_entry_in(mu: &Partition, ring: &Arc<SeriesRing>) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(ring.clone());
    for &k in mu.parts() {
        let part = single_part_entry(k, ring).scale(&RatFunc::from_int(k as i64));
        acc = acc.add(&part).expect("same ring");
    }
    acc.scale(&RatFunc::from_ratio(1, mu.z_order() as i64))
}

/// The matrix of [I_(2)] * [I_mu] = sum_nu c^nu_mu [I_nu] as u-series.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuantumMatrix {
    n: u32,
    order: u32,
    basis: Vec<Partition>,
    entries: Vec<Vec<TruncatedSeries>>,
}

impl QuantumMatrix {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    /// Entry (row nu, column mu).
    pub fn entry(&self, row: usize, col: usize) -> &TruncatedSeries {
        &self.entries[row][col]
    }

    pub fn entries(&self) -> &[Vec<TruncatedSeries>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Classical graded class-algebra term plus the diagonal quantum series.
pub fn quantum_mult_matrix(n: u32, order: u32) -> Result<QuantumMatrix> {
    if n < 2 {
        return Err(Error::Invalid("need n >= 2".into()));
    }
    let basis = partitions(n);
    let ring = SeriesRing::univariate("u", order);
    let mut entries = vec![vec![TruncatedSeries::zero(ring.clone()); basis.len()]; basis.len()];
    for (col, mu) in basis.iter().enumerate() {
        let classical = graded_class_mult(n, mu)?;
        for (row, nu) in basis.iter().enumerate() {
            let mut e = TruncatedSeries::constant(ring.clone(), classical.coeff(nu));
            if row == col {
                e = e.add(&diag_entry_in(mu, &ring))?;
            }
            entries[row][col] = e;
        }
    }
    Ok(QuantumMatrix {
        n,
        order,
        basis,
        entries,
    })
}

/// Resums a univariate u-series to a rational function of q under q = -e^{iu}.
///
/// Mechanism: with z = e^{iu} and v = z - 1, substitute u = -i log(1+v),
/// reconstruct a certified Pade form in v, then set v = -1 - q.
pub fn resum_series(f: &TruncatedSeries) -> Result<UniRatFunc> {
    let order = f.ring().var_caps()[0];
    let vring = SeriesRing::univariate("v", order);
    // u(v) = -i log(1+v)
    let mut u_of_v = TruncatedSeries::zero(vring.clone());
    for k in 1..=order {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = RatFunc::constant(GaussianRational::i()) * RatFunc::from_ratio(-sign, k as i64);
        u_of_v.add_term(vec![k], c);
    }
    let coeffs = f.univariate_slice(0, &[]);
    let mut acc = TruncatedSeries::zero(vring.clone());
    for c in coeffs.iter().rev() {
        acc = acc.mul(&u_of_v)?;
        acc = acc.add(&TruncatedSeries::constant(vring.clone(), c.clone()))?;
    }
    let v_coeffs = acc.univariate_slice(0, &[]);
    let d_max = (order as usize).saturating_sub(1) / 2;
    let in_v = pade_auto(&v_coeffs, d_max, d_max)?;
    let minus_one = GaussianRational::from_int(-1);
    in_v.affine_substitute("q", &minus_one, &minus_one)
}

/// All entries resummed; index layout matches the source matrix.
pub fn resum_matrix(m: &QuantumMatrix) -> Result<Vec<Vec<UniRatFunc>>> {
    m.entries
        .iter()
        .map(|row| row.iter().map(resum_series).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn pass() -> Self {
        CheckOutcome {
            passed: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        CheckOutcome {
            passed: false,
            witness: Some(witness),
        }
    }
}

/// The verification report for Sym^n(C^2) at a fixed truncation order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrcReport {
    pub n: u32,
    pub order: u32,
    pub basis: Vec<Partition>,
    pub divisibility: CheckOutcome,
    pub frobenius_symmetry: CheckOutcome,
    pub resummation: CheckOutcome,
    pub q_reality: CheckOutcome,
    pub distinct_eigenvalues: CheckOutcome,
    pub eigenvalue_specializations: Vec<String>,
    pub pairing_ratios: Vec<(Partition, GaussianRational)>,
    pub classical_bg_transport: Vec<Vec<RatFunc>>,
}

impl CrcReport {
    pub fn all_passed(&self) -> bool {
        self.divisibility.passed
            && self.frobenius_symmetry.passed
            && self.resummation.passed
            && self.q_reality.passed
            && self.distinct_eigenvalues.passed
    }
}

fn check_divisibility(m: &QuantumMatrix) -> CheckOutcome {
    for (row, nu) in m.basis.iter().enumerate() {
        for (col, mu) in m.basis.iter().enumerate() {
            for (exp, c) in m.entries[row][col].terms() {
                if exp[0] > 0 && !c.vanishes_on_antidiagonal() {
                    return CheckOutcome::fail(format!(
                        "entry ({nu},{mu}) coefficient of u^{} survives t2 = -t1",
                        exp[0]
                    ));
                }
            }
        }
    }
    CheckOutcome::pass()
}

fn check_frobenius(m: &QuantumMatrix) -> CheckOutcome {
    let t1t2 = RatFunc::t1() * RatFunc::t2();
    for (row, nu) in m.basis.iter().enumerate() {
        for (col, mu) in m.basis.iter().enumerate().skip(row) {
            let scale_nu = t1t2.pow(-(nu.len() as i64)).expect("t1t2 != 0")
                * RatFunc::from_ratio(1, nu.z_order() as i64);
            let scale_mu = t1t2.pow(-(mu.len() as i64)).expect("t1t2 != 0")
                * RatFunc::from_ratio(1, mu.z_order() as i64);
            let forward = m.entries[row][col].scale(&scale_nu);
            let backward = m.entries[col][row].scale(&scale_mu);
            if forward != backward {
                return CheckOutcome::fail(format!("asymmetric pair ({nu},{mu})"));
            }
        }
    }
    CheckOutcome::pass()
}

fn small_rational(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let num = rng.gen_range(-30i64..=30);
        let den = rng.gen_range(1i64..=7);
        if num != 0 {
            return GaussianRational::from_ratio(num, den);
        }
    }
}

fn char_poly(a: &[Vec<GaussianRational>]) -> QPoly {
    // Faddeev-LeVerrier: coefficients of det(xI - A), low degree first.
    let dim = a.len();
    let mut coeffs = vec![GaussianRational::zero(); dim + 1];
    coeffs[dim] = GaussianRational::one();
    let mut m: Vec<Vec<GaussianRational>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        GaussianRational::one()
                    } else {
                        GaussianRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 1..=dim {
        // N = A * M
        let n_mat: Vec<Vec<GaussianRational>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let mut acc = GaussianRational::zero();
                        for l in 0..dim {
                            acc = acc + a[i][l].clone() * m[l][j].clone();
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut trace = GaussianRational::zero();
        for (i, row) in n_mat.iter().enumerate() {
            trace = trace + row[i].clone();
        }
        let c = trace
            .div(&GaussianRational::from_int(-(k as i64)))
            .expect("k != 0");
        coeffs[dim - k] = c.clone();
        m = n_mat;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = row[i].clone() + c.clone();
        }
    }
    qp_trim(coeffs)
}

fn is_squarefree(p: &QPoly) -> bool {
    if p.len() < 2 {
        return true;
    }
    let deriv: QPoly = qp_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * GaussianRational::from_int(k as i64))
            .collect(),
    );
    qp_gcd(p, &deriv).len() <= 1
}

fn check_eigenvalues(
    resummed: &[Vec<UniRatFunc>],
    seed: u64,
) -> (CheckOutcome, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = Vec::new();
    let mut failures = Vec::new();
    let mut draws = 0;
    let mut attempts = 0;
    while draws < 3 && attempts < 100 {
        attempts += 1;
        let t1v = small_rational(&mut rng);
        let t2v = small_rational(&mut rng);
        let qv = small_rational(&mut rng);
        if t1v == t2v || (t1v.clone() + t2v.clone()).is_zero() || qv.is_one() {
            continue;
        }
        let mut matrix = Vec::with_capacity(resummed.len());
        let mut pole = false;
        'rows: for row in resummed {
            let mut out = Vec::with_capacity(row.len());
            for entry in row {
                let at_q = match entry.eval_gaussian(&qv) {
                    Ok(v) => v,
                    Err(_) => {
                        pole = true;
                        break 'rows;
                    }
                };
                match at_q.specialize(&t1v, &t2v) {
                    Ok(v) => out.push(v),
                    Err(_) => {
                        pole = true;
                        break 'rows;
                    }
                }
            }
            matrix.push(out);
        }
        if pole {
            continue;
        }
        draws += 1;
        let point = format!("t1={t1v}, t2={t2v}, q={qv}");
        let p = char_poly(&matrix);
        if !is_squarefree(&p) {
            failures.push(point.clone());
        }
        used.push(point);
    }
    let outcome = if draws < 3 {
        CheckOutcome::fail("could not find 3 pole-free specializations".into())
    } else if failures.is_empty() {
        CheckOutcome::pass()
    } else {
        CheckOutcome::fail(format!("repeated eigenvalue at {}", failures.join("; ")))
    };
    (outcome, used)
}

fn classical_bg_transport(m: &QuantumMatrix) -> Vec<Vec<RatFunc>> {
    m.basis
        .iter()
        .enumerate()
        .map(|(row, nu)| {
            m.basis
                .iter()
                .enumerate()
                .map(|(col, mu)| {
                    let phase = GaussianRational::i_pow(nu.len() as i64 - mu.len() as i64);
                    m.entries[row][col].constant_term() * RatFunc::constant(phase)
                })
                .collect()
        })
        .collect()
}

/// Runs the full check suite on Sym^n(C^2) at the given order.
pub fn crc_report(n: u32, order: u32, seed: u64) -> Result<CrcReport> {
    let m = quantum_mult_matrix(n, order)?;
    let divisibility = check_divisibility(&m);
    let frobenius_symmetry = check_frobenius(&m);
    let mut resummation = CheckOutcome::pass();
    let mut q_reality = CheckOutcome::pass();
    let mut resummed = Vec::with_capacity(m.dim());
    'resum: for (row, nu) in m.basis.iter().enumerate() {
        let mut out = Vec::with_capacity(m.dim());
        for (col, mu) in m.basis.iter().enumerate() {
            match resum_series(&m.entries[row][col]) {
                Ok(r) => {
                    if !r.is_real() && q_reality.passed {
                        q_reality =
                            CheckOutcome::fail(format!("entry ({nu},{mu}) is not real in q"));
                    }
                    out.push(r);
                }
                Err(e) => {
                    resummation = CheckOutcome::fail(format!("entry ({nu},{mu}): {e}"));
                    resummed.clear();
                    break 'resum;
                }
            }
        }
        resummed.push(out);
    }
    let (distinct_eigenvalues, eigenvalue_specializations) = if resummation.passed {
        check_eigenvalues(&resummed, seed)
    } else {
        (
            CheckOutcome::fail("resummation failed; no matrix to specialize".into()),
            Vec::new(),
        )
    };
    Ok(CrcReport {
        n,
        order,
        basis: m.basis.clone(),
        divisibility,
        frobenius_symmetry,
        resummation,
        q_reality,
        distinct_eigenvalues,
        eigenvalue_specializations,
        pairing_ratios: check_pairing_transport(n),
        classical_bg_transport: classical_bg_transport(&m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn t1t2() -> RatFunc {
        RatFunc::t1() * RatFunc::t2()
    }

    fn sum_t() -> RatFunc {
        RatFunc::t1() + RatFunc::t2()
    }

    #[test]
    fn pairings() {
        assert_eq!(
            orb_pairing(&p(&[3])),
            RatFunc::from_ratio(1, 3) * t1t2().pow(-1).unwrap()
        );
        assert_eq!(
            orb_pairing(&p(&[2, 1])),
            RatFunc::from_ratio(1, 2) * t1t2().pow(-2).unwrap()
        );
        assert_eq!(
            orb_pairing(&p(&[1, 1, 1, 1])),
            RatFunc::from_ratio(1, 24) * t1t2().pow(-4).unwrap()
        );

        assert_eq!(nakajima_pairing(&p(&[3])), orb_pairing(&p(&[3])));
        assert_eq!(
            nakajima_pairing(&p(&[2, 1])),
            orb_pairing(&p(&[2, 1])) * RatFunc::from_int(-1)
        );
        assert_eq!(nakajima_pairing(&p(&[1, 1])), orb_pairing(&p(&[1, 1])));
    }

    #[test]
    fn bg_map_entries() {
        let i = GaussianRational::i();
        assert_eq!(bg_map(1), vec![i.clone()]);
        assert_eq!(bg_map(2), vec![i.clone(), GaussianRational::from_int(-1)]);
        assert_eq!(
            bg_map(3),
            vec![
                i.clone(),
                GaussianRational::from_int(-1),
                GaussianRational::from_int(-1) * i
            ]
        );
    }

    #[test]
    fn pairing_transport_ratio_is_parity_of_n() {
        for n in 2..=5 {
            let expected = GaussianRational::from_int(if n % 2 == 0 { 1 } else { -1 });
            for (_, ratio) in check_pairing_transport(n) {
                assert_eq!(ratio, expected);
            }
        }
    }

    #[test]
    fn diag_entry_trivial_and_two_cycle() {
        let zero = diag_quantum_entry(&p(&[1, 1, 1]), 8);
        assert!(zero.is_zero());

        let c2 = diag_quantum_entry(&p(&[2]), 8);
        let i_sum = RatFunc::constant(GaussianRational::i()) * sum_t();
        assert_eq!(c2.coeff(&[0]), RatFunc::zero());
        assert_eq!(c2.coeff(&[1]), i_sum.clone() * RatFunc::from_ratio(1, 2));
        assert_eq!(c2.coeff(&[2]), RatFunc::zero());
        assert_eq!(c2.coeff(&[3]), i_sum.clone() * RatFunc::from_ratio(1, 24));
        assert_eq!(c2.coeff(&[5]), i_sum * RatFunc::from_ratio(1, 240));
    }

    #[test]
    fn diag_entry_three_cycle() {
        let c3 = diag_quantum_entry(&p(&[3]), 6);
        let i_sum = RatFunc::constant(GaussianRational::i()) * sum_t();
        assert_eq!(c3.coeff(&[1]), i_sum.clone() * RatFunc::from_int(2));
        assert_eq!(c3.coeff(&[3]), i_sum * RatFunc::from_ratio(1, 3));
    }

    #[test]
    fn splitting_lemma_arithmetic() {
        let direct = diag_quantum_entry(&p(&[2, 1]), 10);
        let two = diag_quantum_entry(&p(&[2]), 10);
        assert_eq!(direct, two);
    }

    #[test]
    fn matrix_n3_columns() {
        let m = quantum_mult_matrix(3, 6).unwrap();
        assert_eq!(m.basis(), &[p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);

        // column (2,1): 3 t1t2 [I_(1^3)] + 3 [I_(3)] + c2(u) [I_(2,1)]
        assert_eq!(m.entry(0, 1).constant_term(), RatFunc::from_int(3));
        assert_eq!(
            m.entry(2, 1).constant_term(),
            RatFunc::from_int(3) * t1t2()
        );
        assert_eq!(*m.entry(1, 1), {
            let ring = m.entry(1, 1).ring().clone();
            TruncatedSeries::zero(ring).add(&diag_quantum_entry(&p(&[2]), 6)).unwrap()
        });

        // column (1^3): only [I_(2,1)]
        assert!(m.entry(0, 2).is_zero());
        assert_eq!(m.entry(1, 2).constant_term(), RatFunc::from_int(1));
        assert_eq!(m.entry(1, 2).terms().count(), 1);
        assert!(m.entry(2, 2).is_zero());

        // off-diagonal entries carry no positive-degree terms
        for row in 0..3 {
            for col in 0..3 {
                if row != col {
                    for (exp, _) in m.entry(row, col).terms() {
                        assert_eq!(exp[0], 0);
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_n2_split_column() {
        let m = quantum_mult_matrix(2, 8).unwrap();
        assert_eq!(m.basis(), &[p(&[2]), p(&[1, 1])]);
        assert_eq!(m.entry(1, 0).constant_term(), t1t2());
        assert_eq!(*m.entry(0, 0), diag_quantum_entry(&p(&[2]), 8));
    }

    #[test]
    fn resum_two_cycle_closed_form() {
        let c2 = diag_quantum_entry(&p(&[2]), 9);
        let got = resum_series(&c2).unwrap();
        // (t1+t2)(q+1)/(q-1)
        let expected = UniRatFunc::new(
            "q",
            vec![sum_t(), sum_t()],
            vec![RatFunc::from_int(-1), RatFunc::from_int(1)],
        )
        .unwrap();
        assert_eq!(got, expected);
        assert!(got.is_real());
    }

    #[test]
    fn resum_zero() {
        let zero = diag_quantum_entry(&p(&[1, 1]), 8);
        let r = resum_series(&zero).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn report_n2() {
        let report = crc_report(2, 8, 7).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.basis.len(), 2);
        assert_eq!(report.eigenvalue_specializations.len(), 3);
    }

    #[test]
    fn report_n3() {
        let report = crc_report(3, 8, 11).unwrap();
        assert!(report.all_passed(), "{report:?}");
        for (_, ratio) in &report.pairing_ratios {
            assert_eq!(*ratio, GaussianRational::from_int(-1));
        }
    }

    #[test]
    fn char_poly_squarefree_detection() {
        let one = GaussianRational::one();
        let two = GaussianRational::from_int(2);
        let zero = GaussianRational::zero();
        let distinct = vec![
            vec![one.clone(), zero.clone()],
            vec![zero.clone(), two.clone()],
        ];
        assert!(is_squarefree(&char_poly(&distinct)));
        let repeated = vec![
            vec![one.clone(), one.clone()],
            vec![zero.clone(), one.clone()],
        ];
        assert!(!is_squarefree(&char_poly(&repeated)));
    }
}
