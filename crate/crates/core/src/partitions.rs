//! Partitions of n and multiplication by the transposition class in the
//! center of the group ring of the symmetric group.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as DeError;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::{GaussianRational, RatFunc};
use crate::error::{Error, Result};

/// A partition of n, parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from any multiset of positive parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The number of parts.
    pub fn len(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// age(mu) = n - l(mu).
    pub fn age(&self) -> u32 {
        self.n() - self.len()
    }

    /// z(mu) = |Aut(mu)| * prod(mu_i), the centralizer order of the class.
    pub fn z_order(&self) -> u64 {
        let mut z: u64 = 1;
        let mut run = 0u64;
        let mut prev = 0u32;
        for &p in &self.parts {
            if p == prev {
                run += 1;
            } else {
                run = 1;
                prev = p;
            }
            z *= run * p as u64;
        }
        z
    }

    /// |C_mu| = n!/z(mu).
    pub fn class_size(&self) -> u64 {
        factorial_u64(self.n()) / self.z_order()
    }
}

fn factorial_u64(n: u32) -> u64 {
    (1..=n as u64).product()
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order is reverse lex: (3) < (2,1) < (1,1,1).
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join("+"))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<u32>, _> =
            s.split('+').map(|p| p.trim().parse::<u32>()).collect();
        match parts {
            Ok(parts) => Partition::new(parts),
            Err(_) => Err(Error::Invalid(format!("bad partition text: {s:?}"))),
        }
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.parts.len()))?;
        for p in &self.parts {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(de)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

/// All partitions of n in canonical (reverse lex) order.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    gen_partitions(n, n, &mut stack, &mut out);
    out
}

fn gen_partitions(rest: u32, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    let mut p = max.min(rest);
    while p >= 1 {
        stack.push(p);
        gen_partitions(rest - p, p, stack, out);
        stack.pop();
        p -= 1;
    }
}

/// An element of the center of Q(t1,t2)[S_n], expanded in class sums K_nu.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassVector {
    n: u32,
    coeffs: BTreeMap<Partition, RatFunc>,
}

impl ClassVector {
    pub fn zero(n: u32) -> Self {
        ClassVector {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, RatFunc> {
        &self.coeffs
    }

    pub fn coeff(&self, nu: &Partition) -> RatFunc {
        self.coeffs.get(nu).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Adds c * K_nu; drops the term if the total becomes zero.
    pub fn add_term(&mut self, nu: Partition, c: RatFunc) -> Result<()> {
        if nu.n() != self.n {
            return Err(Error::Invalid(format!(
                "partition of {} in a class vector for n={}",
                nu.n(),
                self.n
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        let entry = self.coeffs.entry(nu).or_insert_with(RatFunc::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    /// Specializes every coefficient at t1 = a, t2 = b.
    pub fn specialize(&self, a: &GaussianRational, b: &GaussianRational) -> Result<ClassVector> {
        let mut out = ClassVector::zero(self.n);
        for (nu, c) in &self.coeffs {
            out.add_term(nu.clone(), RatFunc::constant(c.specialize(a, b)?))?;
        }
        Ok(out)
    }
}

impl Serialize for ClassVector {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            partition: &'a Partition,
            coeff: &'a RatFunc,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            n: u32,
            terms: Vec<Term<'a>>,
        }
        let terms = self
            .coeffs
            .iter()
            .map(|(partition, coeff)| Term { partition, coeff })
            .collect();
        Repr { n: self.n, terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ClassVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term {
            partition: Partition,
            coeff: RatFunc,
        }
        #[derive(Deserialize)]
        struct Repr {
            n: u32,
            terms: Vec<Term>,
        }
        let repr = Repr::deserialize(de)?;
        let mut out = ClassVector::zero(repr.n);
        for t in repr.terms {
            out.add_term(t.partition, t.coeff).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

/// Splits and joins reachable from mu by one transposition, with the number
/// of transpositions realizing each move on a fixed permutation of type mu.
fn transposition_moves(mu: &Partition) -> BTreeMap<Partition, u64> {
    let parts = mu.parts();
    let mut moves: BTreeMap<Partition, u64> = BTreeMap::new();
    // Joining two distinct cycles of lengths m_i, m_j: m_i * m_j transpositions.
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            let mut next = parts.to_vec();
            let (a, b) = (next.remove(j), next.remove(i));
            next.push(a + b);
            let nu = Partition::new(next).expect("positive parts");
            *moves.entry(nu).or_insert(0) += parts[i] as u64 * parts[j] as u64;
        }
    }
    // Splitting an m-cycle into (j, m-j): m transpositions, m/2 when j = m-j.
    for (i, &m) in parts.iter().enumerate() {
        for j in 1..=m / 2 {
            let mult = if 2 * j == m { m as u64 / 2 } else { m as u64 };
            let mut next = parts.to_vec();
            next.remove(i);
            next.push(j);
            next.push(m - j);
            let nu = Partition::new(next).expect("positive parts");
            *moves.entry(nu).or_insert(0) += mult;
        }
    }
    moves
}

/// K_(2,1^{n-2}) * K_mu expanded in class sums, by cycle combinatorics.
pub fn transposition_class_mult(n: u32, mu: &Partition) -> Result<ClassVector> {
    if n < 2 {
        return Err(Error::Invalid("need n >= 2 for a transposition class".into()));
    }
    if mu.n() != n {
        return Err(Error::Invalid(format!("mu partitions {}, not {}", mu.n(), n)));
    }
    // c_{mu->nu} transpositions move a fixed element of C_mu into C_nu, so
    // the class-sum coefficient is a^nu_mu = c_{mu->nu} |C_mu| / |C_nu|.
    let mut out = ClassVector::zero(n);
    let c_mu = mu.class_size();
    for (nu, count) in transposition_moves(mu) {
        let num = count * c_mu;
        let den = nu.class_size();
        debug_assert_eq!(num % den, 0);
        out.add_term(nu, RatFunc::from_int((num / den) as i64))?;
    }
    Ok(out)
}

/// The graded product: a^nu_mu picks up (t1 t2)^{(l(nu)-l(mu)+1)/2}.
pub fn graded_class_mult(n: u32, mu: &Partition) -> Result<ClassVector> {
    let plain = transposition_class_mult(n, mu)?;
    let t1t2 = RatFunc::t1() * RatFunc::t2();
    let mut out = ClassVector::zero(n);
    for (nu, c) in plain.coeffs() {
        let shift = (nu.len() as i64 - mu.len() as i64 + 1) / 2;
        let graded = if shift == 1 { c.clone() * t1t2.clone() } else { c.clone() };
        out.add_term(nu.clone(), graded)?;
    }
    Ok(out)
}

const ORACLE_LIMIT: u32 = 7;

fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at];
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts).expect("positive cycle lengths")
}

fn permutations_of_type(n: u32, mu: &Partition) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..n as usize).collect();
    let mut out = Vec::new();
    heap_collect(&mut idx, n as usize, mu, &mut out);
    out
}

fn heap_collect(perm: &mut Vec<usize>, k: usize, mu: &Partition, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        if cycle_type(perm) == *mu {
            out.push(perm.clone());
        }
        return;
    }
    for i in 0..k {
        heap_collect(perm, k - 1, mu, out);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

/// K_a * K_b by explicit enumeration over S_n; the independent oracle.
pub fn group_algebra_oracle(n: u32, a: &Partition, b: &Partition) -> Result<ClassVector> {
    if n > ORACLE_LIMIT {
        return Err(Error::SizeLimit {
            n: n as usize,
            limit: ORACLE_LIMIT as usize,
        });
    }
    if a.n() != n || b.n() != n {
        return Err(Error::Invalid("oracle partitions must both sum to n".into()));
    }
    let class_a = permutations_of_type(n, a);
    let class_b = permutations_of_type(n, b);
    let mut tally: BTreeMap<Partition, u64> = BTreeMap::new();
    for rho in &class_a {
        for sigma in &class_b {
            let product: Vec<usize> = (0..n as usize).map(|x| rho[sigma[x]]).collect();
            *tally.entry(cycle_type(&product)).or_insert(0) += 1;
        }
    }
    let mut out = ClassVector::zero(n);
    for (nu, count) in tally {
        let size = nu.class_size();
        debug_assert_eq!(count % size, 0);
        out.add_term(nu, RatFunc::from_int((count / size) as i64))?;
    }
    Ok(out)
}
