//! Finite groups given by Cayley tables, plus a small bundled catalogue.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Tables up to this order are checked for associativity on every triple.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 20_000;

/// A validated group: `table[a][b]` is the index of `ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

fn bad(location: String, reason: impl Into<String>) -> Error {
    Error::InvalidGroupTable {
        location,
        reason: reason.into(),
    }
}

impl FiniteGroupTable {
    pub fn new(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<FiniteGroupTable> {
        let n = table.len();
        if n == 0 {
            return Err(bad("cayley".into(), "empty table"));
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(bad(
                    format!("cayley[{r}]"),
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
            let mut seen = vec![false; n];
            for (c, &x) in row.iter().enumerate() {
                if x >= n {
                    return Err(bad(
                        format!("cayley[{r}][{c}]"),
                        format!("entry {x} out of range"),
                    ));
                }
                if seen[x] {
                    return Err(bad(
                        format!("cayley[{r}]"),
                        format!("entry {x} repeated in row {r}"),
                    ));
                }
                seen[x] = true;
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for (r, row) in table.iter().enumerate() {
                if seen[row[c]] {
                    return Err(bad(
                        format!("cayley[{r}][{c}]"),
                        format!("entry {} repeated in column {c}", row[c]),
                    ));
                }
                seen[row[c]] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| bad("cayley".into(), "no identity element"))?;
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == identity && table[y][x] == identity)
                    .ok_or_else(|| {
                        bad(
                            format!("cayley[{x}]"),
                            format!("element {x} has no two-sided inverse"),
                        )
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let assoc_fails = |a: usize, b: usize, c: usize| table[table[a][b]][c] != table[a][table[b][c]];
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if assoc_fails(a, b, c) {
                            return Err(bad(
                                format!("cayley triple ({a}, {b}, {c})"),
                                "associativity fails",
                            ));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6772_6f75_7073);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                if assoc_fails(a, b, c) {
                    return Err(bad(
                        format!("cayley triple ({a}, {b}, {c})"),
                        "associativity fails",
                    ));
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => return Err(bad("labels".into(), format!("{} labels for order {n}", l.len()))),
            None => (0..n)
                .map(|i| {
                    if i == identity {
                        "1".into()
                    } else {
                        format!("g{i}")
                    }
                })
                .collect(),
        };
        Ok(FiniteGroupTable {
            table,
            identity,
            inverses,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Conjugacy classes as sorted index lists, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: Vec<usize> = (0..n)
                .map(|g| self.mul(self.mul(self.inverse(g), a), g))
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(members);
        }
        classes
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Cyclic group of order `n`, generator `g`.
    pub fn cyclic(n: usize) -> Result<FiniteGroupTable> {
        if n == 0 {
            return Err(bad("order".into(), "cyclic group order must be positive"));
        }
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        FiniteGroupTable::new(table, Some(labels))
    }

    /// Closure of permutation generators, elements sorted lexicographically
    /// (so the identity comes first), product `(ab)(x) = a(b(x))`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<FiniteGroupTable> {
        let degree = gens.first().map_or(0, |g| g.len());
        let id: Vec<usize> = (0..degree).collect();
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
        let mut elems = vec![id];
        let mut frontier = elems.clone();
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = compose(&x, g);
                if !elems.contains(&y) {
                    elems.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        elems.sort();
        let index: BTreeMap<Vec<usize>, usize> =
            elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        FiniteGroupTable::new(table, Some(labels))
    }

    pub fn symmetric3() -> FiniteGroupTable {
        FiniteGroupTable::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    pub fn dihedral4() -> FiniteGroupTable {
        FiniteGroupTable::from_permutations(&[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).unwrap()
    }

    pub fn alternating4() -> FiniteGroupTable {
        FiniteGroupTable::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
    }

    /// Quaternion group, elements `1, z, i, zi, j, zj, k, zk` with `z = -1`.
    pub fn quaternion() -> FiniteGroupTable {
        // Unit quaternion index u in {1, i, j, k} = {0, 1, 2, 3} and sign bit.
        fn unit_mul(a: usize, b: usize) -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 3) => (1, false),
                (3, 1) => (2, false),
                (2, 1) => (3, true),
                (3, 2) => (1, true),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        }
        let idx = |u: usize, neg: bool| 2 * u + usize::from(neg);
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (u, s) = unit_mul(a / 2, b / 2);
                        idx(u, s ^ (a % 2 == 1) ^ (b % 2 == 1))
                    })
                    .collect()
            })
            .collect();
        let labels = ["1", "z", "i", "zi", "j", "zj", "k", "zk"]
            .map(String::from)
            .to_vec();
        FiniteGroupTable::new(table, Some(labels)).unwrap()
    }

    /// Bundled groups: `C1`..`C8`, `S3`, `D4`, `Q8`, `A4`.
    pub fn bundled(name: &str) -> Option<FiniteGroupTable> {
        match name {
            "S3" => Some(Self::symmetric3()),
            "D4" => Some(Self::dihedral4()),
            "Q8" => Some(Self::quaternion()),
            "A4" => Some(Self::alternating4()),
            _ => {
                let n: usize = name.strip_prefix('C')?.parse().ok()?;
                (1..=8).contains(&n).then(|| Self::cyclic(n).unwrap())
            }
        }
    }

    pub fn bundled_names() -> &'static [&'static str] {
        &[
            "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "S3", "D4", "Q8", "A4",
        ]
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        let body: Vec<String> = cyc.iter().map(|c| (c + 1).to_string()).collect();
        out.push('(');
        out.push_str(&body.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_orders_and_classes() {
        let expected = [
            ("C1", 1, 1),
            ("C4", 4, 4),
            ("C8", 8, 8),
            ("S3", 6, 3),
            ("D4", 8, 5),
            ("Q8", 8, 5),
            ("A4", 12, 4),
        ];
        for (name, order, classes) in expected {
            let g = FiniteGroupTable::bundled(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.conjugacy_classes().len(), classes, "{name}");
            assert_eq!(g.identity(), 0, "{name}");
        }
        assert!(FiniteGroupTable::bundled("C9").is_none());
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroupTable::quaternion();
        let (z, i, j, k) = (1, 2, 4, 6);
        assert_eq!(q.mul(i, i), z);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), q.mul(z, k));
        assert_eq!(q.element_order(i), 4);
    }

    #[test]
    fn latin_square_violation_reports_row() {
        let err = FiniteGroupTable::new(vec![vec![0, 1], vec![1, 1]], None).unwrap_err();
        match err {
            Error::InvalidGroupTable { location, .. } => assert_eq!(location, "cayley[1]"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn non_associative_latin_square_rejected() {
        // A Latin square with identity 0 that is not a group (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroupTable::new(t, None),
            Err(Error::InvalidGroupTable { .. })
        ));
    }
}
