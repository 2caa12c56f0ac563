//! Finite groups given by explicit multiplication tables.

use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group table has no elements")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("multiplication table has the wrong shape: {0}")]
    Shape(String),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element `{0}` has no two-sided inverse")]
    NoInverse(String),
}

/// A finite group. Elements are the indices `0..order()`, listed in the
/// canonical (input) order; every search in this crate iterates in that
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    index: HashMap<String, usize>,
}

impl GroupTable {
    /// Builds a group from a row-major table, `mul[a * n + b] = a·b`, and
    /// checks closure, associativity, identity and inverses.
    pub fn new(names: Vec<String>, mul: Vec<usize>) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if mul.len() != n * n {
            return Err(GroupError::Shape(format!(
                "{} entries for {} elements",
                mul.len(),
                n
            )));
        }
        if let Some(&bad) = mul.iter().find(|&&c| c >= n) {
            return Err(GroupError::Shape(format!("entry {bad} out of range")));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        let m = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| GroupError::NoInverse(names[a].clone()))?;
            inverse.push(inv);
        }
        Ok(GroupTable {
            names,
            mul,
            identity,
            inverse,
            index,
        })
    }

    pub fn from_fn(
        names: Vec<String>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let n = names.len();
        let mul = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(names, mul)
    }

    /// Parses a table whose entries are element names.
    pub fn from_named_table(names: Vec<String>, table: &[Vec<String>]) -> Result<Self, GroupError> {
        let n = names.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::Shape(format!("expected a {n}x{n} table")));
        }
        let lookup: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut mul = Vec::with_capacity(n * n);
        for row in table {
            for entry in row {
                let idx = *lookup
                    .get(entry.as_str())
                    .ok_or_else(|| GroupError::UnknownElement(entry.clone()))?;
                mul.push(idx);
            }
        }
        Self::new(names, mul)
    }

    /// ℤ/n with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn(names, |a, b| (a + b) % n).expect("cyclic group table")
    }

    pub fn trivial() -> Self {
        Self::new(vec!["e".to_string()], vec![0]).expect("trivial group table")
    }

    /// The symmetric group on `{1..n}` in cycle notation, identity first,
    /// then by length of the cycle notation and lexicographically. For
    /// n = 3 this is e, (12), (13), (23), (123), (132).
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(n, &mut Vec::new(), &mut vec![false; n], &mut perms);
        let mut named: Vec<(String, Vec<usize>)> =
            perms.into_iter().map(|p| (cycle_notation(&p), p)).collect();
        named.sort_by(|a, b| (a.0 != "e", a.0.len(), &a.0).cmp(&(b.0 != "e", b.0.len(), &b.0)));
        let lookup: HashMap<Vec<usize>, usize> = named
            .iter()
            .enumerate()
            .map(|(i, (_, p))| (p.clone(), i))
            .collect();
        let perms: Vec<Vec<usize>> = named.iter().map(|(_, p)| p.clone()).collect();
        let names = named.into_iter().map(|(s, _)| s).collect();
        // (σ·τ)(i) = σ(τ(i)): apply τ first.
        Self::from_fn(names, |a, b| {
            let composed: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
            lookup[&composed]
        })
        .expect("symmetric group table")
    }

    /// Direct product with elements named `(a,b)`, first factor major.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let (na, nb) = (a.order(), b.order());
        let names = (0..na * nb)
            .map(|k| format!("({},{})", a.name(k / nb), b.name(k % nb)))
            .collect();
        Self::from_fn(names, |x, y| {
            a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
        })
        .expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.names.len() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn product(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems
            .into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    /// First pair (a, b) in canonical order with ab ≠ ba.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Greedy generating set: the first element outside the subgroup
    /// generated so far is added until everything is reached.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = self.generated(&gens);
        while let Some(a) = self.elements().find(|&a| !reached[a]) {
            gens.push(a);
            reached = self.generated(&gens);
        }
        gens
    }

    /// First pair (a, b) on which `map: self → target` fails to be
    /// multiplicative.
    pub fn homomorphism_failure(
        &self,
        map: &[usize],
        target: &GroupTable,
    ) -> Option<(usize, usize)> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .find(|&(a, b)| map[self.mul(a, b)] != target.mul(map[a], map[b]))
    }

    /// Calls `visit` on every isomorphism `self → other`, in a
    /// deterministic order, until it breaks.
    pub fn for_each_isomorphism<F>(&self, other: &GroupTable, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.order() != other.order() {
            return;
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let ord = self.element_order(g);
                other
                    .elements()
                    .filter(|&h| other.element_order(h) == ord)
                    .collect()
            })
            .collect();
        let mut images = Vec::with_capacity(gens.len());
        let _ = self.assign_generators(other, &gens, &candidates, &mut images, &mut visit);
    }

    fn assign_generators<F>(
        &self,
        other: &GroupTable,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let k = images.len();
        if k == gens.len() {
            if let Some(map) = self.extend_from_generators(other, gens, images) {
                return visit(&map);
            }
            return ControlFlow::Continue(());
        }
        for &h in &candidates[k] {
            if images.contains(&h) {
                continue;
            }
            images.push(h);
            let flow = self.assign_generators(other, gens, candidates, images, visit);
            images.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Extends generator images to a homomorphism by walking the Cayley
    /// graph; returns it only when it is consistent and bijective.
    fn extend_from_generators(
        &self,
        other: &GroupTable,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        const UNSET: usize = usize::MAX;
        let mut map = vec![UNSET; self.order()];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let img = other.mul(map[x], h);
                if map[y] == UNSET {
                    map[y] = img;
                    queue.push_back(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        let mut hit = vec![false; other.order()];
        for &m in &map {
            if m == UNSET || hit[m] {
                return None;
            }
            hit[m] = true;
        }
        Some(map)
    }

    pub fn find_isomorphism(&self, other: &GroupTable) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_isomorphism(other, |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn isomorphisms(&self, other: &GroupTable) -> Vec<Vec<usize>> {
        let mut all = Vec::new();
        self.for_each_isomorphism(other, |m| {
            all.push(m.to_vec());
            ControlFlow::Continue(())
        });
        all
    }

    /// The table as rows of element names, for serialization.
    pub fn named_table(&self) -> Vec<Vec<String>> {
        self.elements()
            .map(|a| {
                self.elements()
                    .map(|b| self.names[self.mul(a, b)].clone())
                    .collect()
            })
            .collect()
    }
}

fn permutations(n: usize, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            prefix.push(i);
            permutations(n, prefix, used, out);
            prefix.pop();
            used[i] = false;
        }
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three_naming() {
        let s3 = GroupTable::symmetric(3);
        assert_eq!(s3.names(), ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]);
        let a = s3.index_of("(12)").unwrap();
        let b = s3.index_of("(13)").unwrap();
        // (12)(13): 1 -> 3 -> 3, 3 -> 1 -> 2, 2 -> 2 -> 1
        assert_eq!(s3.name(s3.mul(a, b)), "(132)");
        assert!(!s3.is_abelian());
        assert_eq!(s3.center(), vec![0]);
    }

    #[test]
    fn z4_not_isomorphic_to_klein() {
        let z4 = GroupTable::cyclic(4);
        let v4 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2));
        assert!(z4.find_isomorphism(&v4).is_none());
        assert_eq!(v4.isomorphisms(&v4).len(), 6);
        assert_eq!(z4.isomorphisms(&z4).len(), 2);
    }

    #[test]
    fn s3_has_six_automorphisms() {
        let s3 = GroupTable::symmetric(3);
        let autos = s3.isomorphisms(&s3);
        assert_eq!(autos.len(), 6);
        for a in &autos {
            assert!(s3.homomorphism_failure(a, &s3).is_none());
        }
    }

    #[test]
    fn rejects_non_group() {
        let names = vec!["a".to_string(), "b".to_string()];
        // constant table: no identity
        assert_eq!(
            GroupTable::new(names.clone(), vec![0, 0, 0, 0]),
            Err(GroupError::NoIdentity)
        );
        // monoid {0,1} under max: 1 has no inverse
        assert_eq!(
            GroupTable::new(names, vec![0, 1, 1, 1]),
            Err(GroupError::NoInverse("b".to_string()))
        );
    }

    #[test]
    fn generators_generate() {
        for g in [
            GroupTable::symmetric(3),
            GroupTable::cyclic(6),
            GroupTable::symmetric(4),
        ] {
            let gens = g.generators();
            assert!(g.generated(&gens).iter().all(|&b| b));
        }
    }
}
