//! Finite groups given by Cayley tables, and homomorphisms between them.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group. Index 0 is the identity; `table[a][b]` is `a·b`; the
/// generator list order is the well-order used by the constructions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupFile", into = "GroupFile")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    generators: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
}

impl TryFrom<GroupFile> for FiniteGroup {
    type Error = Error;
    fn try_from(f: GroupFile) -> Result<Self> {
        if f.order != f.table.len() {
            return Err(Error::NotAGroup(format!(
                "order {} but table has {} rows",
                f.order,
                f.table.len()
            )));
        }
        FiniteGroup::new(f.table, f.generators)
    }
}

impl From<FiniteGroup> for GroupFile {
    fn from(g: FiniteGroup) -> Self {
        GroupFile { order: g.order(), table: g.table, generators: g.generators }
    }
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {a} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("entry {bad} out of range")));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::NotAGroup("index 0 is not a two-sided identity".into()));
            }
        }
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                row_seen[table[a][b]] = true;
                col_seen[table[b][a]] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(Error::NotAGroup(format!("row or column {a} is not a permutation")));
            }
        }
        if let Some(&g) = generators.iter().find(|&&g| g == 0 || g >= n) {
            return Err(Error::NotAGroup(format!("invalid generator {g}")));
        }
        let group = FiniteGroup { table, generators };
        if group.closure(&group.generators).len() != n {
            return Err(Error::NotAGroup("generators do not generate the group".into()));
        }
        // Light's test: checking generators suffices once they generate.
        for &s in &group.generators {
            for x in 0..n {
                for y in 0..n {
                    if group.mul(group.mul(x, s), y) != group.mul(x, group.mul(s, y)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({x}, {s}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(group)
    }

    /// Validates a table and picks generators with [`FiniteGroup::greedy_generators`].
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not square over 0..n".into()));
        }
        let scratch = FiniteGroup { table, generators: Vec::new() };
        let gens = scratch.greedy_generators();
        FiniteGroup::new(scratch.table, gens)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { table: vec![vec![0]], generators: Vec::new() }
    }

    /// `Z_n` with elements `0..n` and generator `1`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::NotAGroup("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let generators = if n > 1 { vec![1] } else { Vec::new() };
        FiniteGroup::new(table, generators)
    }

    /// `A × B` with `(a, b)` at index `a·|B| + b`; generators are those of `A`
    /// paired with the identity, then those of `B`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (m, n) = (a.order(), b.order());
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| a.mul(x / n, y / n) * n + b.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        let generators = a
            .generators
            .iter()
            .map(|&g| g * n)
            .chain(b.generators.iter().copied())
            .collect();
        FiniteGroup::new(table, generators).expect("direct product of groups is a group")
    }

    /// `Z2 ⊕ Z2` with generators `(1,0)`, `(0,1)`; element `(a,b)` is `2a + b`.
    pub fn klein() -> FiniteGroup {
        let z2 = FiniteGroup::cyclic(2).expect("Z2");
        FiniteGroup::product(&z2, &z2)
    }

    /// Symmetric group on `n` letters. Elements are permutations in
    /// lexicographic order (identity first); product `a·b` is `a ∘ b`.
    /// Generators: the transposition `(0 1)` and the cycle `(0 1 … n-1)`.
    pub fn symmetric(n: usize) -> Result<FiniteGroup> {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("perm");
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| index(&b.iter().map(|&i| a[i]).collect::<Vec<_>>())).collect())
            .collect();
        let mut generators = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            generators.push(index(&t));
            if n >= 3 {
                let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                generators.push(index(&c));
            }
        }
        FiniteGroup::new(table, generators)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.table[a].iter().position(|&x| x == 0).expect("row is a permutation")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted list of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    /// Whether `sub` (closed under products) is normal.
    pub fn is_normal(&self, sub: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in sub {
            member[x] = true;
        }
        (0..self.order()).all(|g| {
            let gi = self.inverse(g);
            sub.iter().all(|&x| member[self.mul(self.mul(g, x), gi)])
        })
    }

    /// Greedy generating set: scan elements in index order, keep those not yet
    /// generated.
    pub fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = vec![false; self.order()];
        have[0] = true;
        for x in 1..self.order() {
            if !have[x] {
                gens.push(x);
                for y in self.closure(&gens) {
                    have[y] = true;
                }
            }
        }
        gens
    }

    /// Extends generator images to a map defined on all of `self`, if the
    /// assignment is consistent. A consistent extension is a homomorphism.
    pub fn extend_from_generators(&self, target: &FiniteGroup, images: &[usize]) -> Option<Vec<usize>> {
        debug_assert_eq!(images.len(), self.generators.len());
        let mut map = vec![usize::MAX; self.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (&s, &img) in self.generators.iter().zip(images) {
                let y = self.mul(x, s);
                let fy = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// An isomorphism `self → other` by generator-image backtracking; `None`
    /// if the groups are not isomorphic. `budget` bounds extension attempts.
    pub fn isomorphism_to(&self, other: &FiniteGroup, budget: u64) -> Result<Option<Vec<usize>>> {
        if self.order() != other.order() || self.order_profile() != other.order_profile() {
            return Ok(None);
        }
        let orders: Vec<usize> = self.generators.iter().map(|&s| self.element_order(s)).collect();
        let candidates: Vec<Vec<usize>> = orders
            .iter()
            .map(|&k| (0..other.order()).filter(|&y| other.element_order(y) == k).collect())
            .collect();
        let mut images = Vec::with_capacity(orders.len());
        let mut spent = 0u64;
        self.iso_search(other, &candidates, &mut images, &mut spent, budget)
    }

    fn iso_search(
        &self,
        other: &FiniteGroup,
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        spent: &mut u64,
        budget: u64,
    ) -> Result<Option<Vec<usize>>> {
        if images.len() == candidates.len() {
            *spent += 1;
            if *spent > budget {
                return Err(Error::SearchBudgetExceeded { cap: "max_search_nodes", limit: budget });
            }
            if let Some(map) = self.extend_from_generators(other, images) {
                let mut hit = vec![false; other.order()];
                for &y in &map {
                    hit[y] = true;
                }
                if !hit.contains(&false) {
                    return Ok(Some(map));
                }
            }
            return Ok(None);
        }
        for &y in &candidates[images.len()] {
            images.push(y);
            let found = self.iso_search(other, candidates, images, spent, budget)?;
            images.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Name of element `i` in constructed labels, e.g. `g1` for the identity.
    pub fn element_name(prefix: &str, i: usize) -> String {
        format!("{prefix}{}", i + 1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupFile::from(self.clone())).expect("group serializes")
    }

    pub fn from_json(text: &str) -> Result<FiniteGroup> {
        let file: GroupFile = serde_json::from_str(text)?;
        FiniteGroup::try_from(file)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// A validated homomorphism between finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomFile {
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<GroupHom> {
        if map.len() != source.order() {
            return Err(Error::NotAHomomorphism(format!(
                "map has {} entries for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&y) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::NotAHomomorphism(format!("image {y} out of range")));
        }
        if map[0] != 0 {
            return Err(Error::NotAHomomorphism("identity not sent to identity".into()));
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism(format!("f({a}·{b}) ≠ f({a})·f({b})")));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: &FiniteGroup) -> GroupHom {
        GroupHom { source: g.clone(), target: g.clone(), map: (0..g.order()).collect() }
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> GroupHom {
        GroupHom { source: source.clone(), target: target.clone(), map: vec![0; source.order()] }
    }

    /// Every homomorphism `source → target`, ordered by generator images.
    pub fn all(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
        let k = source.generators().len();
        let mut out = Vec::new();
        let mut images = vec![0usize; k];
        loop {
            if let Some(map) = source.extend_from_generators(target, &images) {
                out.push(GroupHom { source: source.clone(), target: target.clone(), map });
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                images[i] += 1;
                if images[i] < target.order() {
                    break;
                }
                images[i] = 0;
            }
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order()).filter(|&a| self.map[a] == 0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn to_file(&self) -> HomFile {
        HomFile { map: self.map.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_klein() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.order_profile(), vec![1, 2, 4, 4]);
        let k = FiniteGroup::klein();
        assert_eq!(k.order_profile(), vec![1, 2, 2, 2]);
        assert_eq!(k.generators(), &[2, 1]);
        assert_eq!(k.isomorphism_to(&z4, 1000).unwrap(), None);
    }

    #[test]
    fn symmetric_three() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.order_profile(), vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]], vec![1]).is_err());
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 0]], vec![]).is_err());
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 0]], vec![0]).is_err());
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::new(t, vec![1, 2]), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn homs_z2_to_klein() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let homs = GroupHom::all(&z2, &FiniteGroup::klein());
        assert_eq!(homs.len(), 4);
        assert!(GroupHom::new(z2.clone(), z2.clone(), vec![1, 0]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(FiniteGroup::from_json(&g.to_json()).unwrap(), g);
    }
}
