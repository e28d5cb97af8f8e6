//! Finite groups given by Cayley tables or permutation generators,
//! with conjugacy-class plumbing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group as a verified multiplication table; identity is element 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    perms: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        Self::build(table, None)
    }

    fn build(table: Vec<Vec<usize>>, perms: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {i} has wrong length")));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(Error::NotAGroup(format!("row {i} has an out-of-range entry")));
            }
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::NotAGroup("element 0 is not an identity".into()));
            }
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                seen_row[table[i][j]] = true;
                seen_col[table[j][i]] = true;
            }
            if seen_row.contains(&false) || seen_col.contains(&false) {
                return Err(Error::NotAGroup(format!("row or column {i} is not a bijection")));
            }
            if !(0..n).any(|j| table[i][j] == 0) {
                return Err(Error::NotAGroup(format!("element {i} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, perms })
    }

    /// Closure of permutation generators on `degree` points (0-based images).
    pub fn from_permutation_generators(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for g in gens {
            if g.len() != degree {
                return Err(Error::NotAGroup("generator has wrong degree".into()));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::NotAGroup("generator is not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity];
        let mut frontier = vec![0usize];
        while let Some(idx) = frontier.pop() {
            let base = elements[idx].clone();
            for g in gens {
                let product: Vec<usize> = (0..degree).map(|x| base[g[x]]).collect();
                if !elements.contains(&product) {
                    elements.push(product);
                    frontier.push(elements.len() - 1);
                    if elements.len() > 10_000 {
                        return Err(Error::NotAGroup("closure exceeds 10000 elements".into()));
                    }
                }
            }
        }
        let n = elements.len();
        let index_of = |p: &Vec<usize>| elements.iter().position(|e| e == p);
        let mut table = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let product: Vec<usize> = (0..degree).map(|x| elements[a][elements[b][x]]).collect();
                table[a][b] = index_of(&product)
                    .ok_or_else(|| Error::NotAGroup("closure is not closed".into()))?;
            }
        }
        Self::build(table, Some(elements))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("verified group")
    }

    pub fn element_order(&self, a: usize) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u32 {
        (0..self.order())
            .map(|a| self.element_order(a))
            .fold(1, num::integer::lcm)
    }

    /// The permutation realizing an element, when the group came from
    /// permutation generators.
    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a].as_slice())
    }

    /// Index of the element with the given permutation action.
    pub fn element_by_permutation(&self, p: &[usize]) -> Option<usize> {
        self.perms
            .as_ref()
            .and_then(|elems| elems.iter().position(|e| e == p))
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(a);
            let mut size = 0;
            for g in 0..n {
                let conj = self.mul(self.mul(g, a), self.inv(g));
                if class_of[conj] == usize::MAX {
                    class_of[conj] = id;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        ConjugacyClasses {
            class_of,
            reps,
            sizes,
        }
    }

    /// Direct product; element (a, b) has index a * |B| + b.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order(), b.order());
        let n = na * nb;
        let mut table = vec![vec![0usize; n]; n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table[x][y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        FiniteGroup { table, perms: None }
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup { table, perms: None }
    }

    pub fn z2z2() -> FiniteGroup {
        FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    pub fn s3() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]])
            .expect("S3 generators close")
    }

    pub fn a4() -> FiniteGroup {
        // (0 1)(2 3) and (0 1 2)
        FiniteGroup::from_permutation_generators(4, &[vec![1, 0, 3, 2], vec![1, 2, 0, 3]])
            .expect("A4 generators close")
    }
}

/// Conjugacy classes; the identity class is always index 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClasses {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// The on-disk "cayley" JSON format {"order":n,"table":[[...]]}.
#[derive(Serialize, Deserialize)]
pub struct CayleyFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// Parses a group from the "cayley" JSON format.
pub fn parse_cayley_json(text: &str) -> Result<FiniteGroup> {
    let file: CayleyFile =
        serde_json::from_str(text).map_err(|e| Error::NotAGroup(format!("bad JSON: {e}")))?;
    if file.table.len() != file.order {
        return Err(Error::NotAGroup("declared order does not match table".into()));
    }
    FiniteGroup::from_table(file.table)
}

/// Parses a group from "perm" text: one generator per line, cycles on
/// {1..n} like "(1 2)(3 4)".
pub fn parse_perm_text(text: &str) -> Result<FiniteGroup> {
    let mut cycles_per_gen = Vec::new();
    let mut degree = 0usize;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cycles = Vec::new();
        let mut rest = line;
        while let Some(open) = rest.find('(') {
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::NotAGroup("unbalanced cycle".into()))?
                + open;
            let inner = &rest[open + 1..close];
            let cycle: std::result::Result<Vec<usize>, _> = inner
                .split(|c: char| c == ' ' || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect();
            let cycle = cycle.map_err(|_| Error::NotAGroup("bad cycle entry".into()))?;
            if cycle.iter().any(|&x| x == 0) {
                return Err(Error::NotAGroup("cycle points are 1-based".into()));
            }
            degree = degree.max(cycle.iter().copied().max().unwrap_or(0));
            cycles.push(cycle);
            rest = &rest[close + 1..];
        }
        if cycles.is_empty() {
            return Err(Error::NotAGroup(format!("no cycles on line: {line}")));
        }
        cycles_per_gen.push(cycles);
    }
    if cycles_per_gen.is_empty() {
        return Err(Error::NotAGroup("no generators".into()));
    }
    let gens: Vec<Vec<usize>> = cycles_per_gen
        .into_iter()
        .map(|cycles| {
            let mut perm: Vec<usize> = (0..degree).collect();
            for cycle in cycles {
                for w in 0..cycle.len() {
                    let from = cycle[w] - 1;
                    let to = cycle[(w + 1) % cycle.len()] - 1;
                    perm[from] = to;
                }
            }
            perm
        })
        .collect();
    FiniteGroup::from_permutation_generators(degree, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let z2 = FiniteGroup::cyclic(2);
        let classes = z2.conjugacy_classes();
        assert_eq!(classes.sizes, vec![1, 1]);
        assert_eq!(z2.exponent(), 2);

        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.conjugacy_classes().len(), 4);
        assert_eq!(z4.element_order(1), 4);
    }

    #[test]
    fn s3_classes() {
        let g = FiniteGroup::s3();
        assert_eq!(g.order(), 6);
        let mut sizes = g.conjugacy_classes().sizes;
        assert_eq!(sizes[0], 1);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn a4_classes() {
        let g = FiniteGroup::a4();
        assert_eq!(g.order(), 12);
        let mut sizes = g.conjugacy_classes().sizes;
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn z2z2_shape() {
        let g = FiniteGroup::z2z2();
        assert_eq!(g.order(), 4);
        assert_eq!(g.conjugacy_classes().len(), 4);
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn rejects_non_groups() {
        // 0 is not an identity
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        // not a Latin square
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn cayley_json_roundtrip() {
        let g = parse_cayley_json(r#"{"order":2,"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.order(), 2);
        assert!(parse_cayley_json(r#"{"order":3,"table":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn perm_text() {
        let g = parse_perm_text("(1 2)\n(1 2 3)\n").unwrap();
        assert_eq!(g.order(), 6);
        let a4 = parse_perm_text("(1 2)(3 4)\n(1 2 3)\n").unwrap();
        assert_eq!(a4.order(), 12);
    }
}
