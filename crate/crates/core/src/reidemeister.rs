//! Reidemeister sets.
//!
//! Path components of the path space `E(f₁, f₂)` are indexed by
//! `π₁(N) / ~` where `θ ~ f₁*(μ)⁻¹ · θ · f₂*(μ)` for `μ ∈ π₁(M)`. Only the
//! pairs `(f₁*(g), f₂*(g))` for generators `g` of `π₁(M)` enter, so `π₁(M)`
//! itself is never represented here.
//!
//! For abelian `π₁(N)` the set is `coker(f₁* − f₂*)`. For small finite groups
//! given by a multiplication table the orbits are enumerated directly.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::abelian::{AlgebraError, Cardinality, FgAbelianGroup, GroupHom};
use crate::citation::Citation;
use crate::union_find::UnionFind;

/// Largest group order accepted in table form.
pub const MAX_TABLE_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("group order {0} exceeds the table limit {MAX_TABLE_ORDER}")]
    TooLarge(usize),
    #[error("declared order {declared} but the table has {rows} rows")]
    OrderMismatch { declared: usize, rows: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is not a group element index")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("table is not a Latin square (row or column {0} repeats an element)")]
    NotLatin(usize),
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("index {index} is not an element of a group of order {order}")]
    BadIndex { index: usize, order: usize },
    #[error("map is not a homomorphism: images of {a} and {b} do not multiply correctly")]
    NotHomomorphism { a: usize, b: usize },
    #[error("map has {found} entries, expected {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("generator images are inconsistent at element {0}: the assignment does not extend to a homomorphism")]
    InconsistentExtension(usize),
    #[error("the listed generators do not generate the source group")]
    NotGenerating,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReidemeisterError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mult: Vec<u16>,
    identity: usize,
    inverse: Vec<u16>,
}

impl std::fmt::Debug for FiniteGroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroupTable(order {})", self.order)
    }
}

impl FiniteGroupTable {
    /// Validates the table: Latin square, identity, inverses, associativity.
    pub fn new(mult: Vec<Vec<usize>>) -> Result<Self, TableError> {
        let n = mult.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if n > MAX_TABLE_ORDER {
            return Err(TableError::TooLarge(n));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, r) in mult.iter().enumerate() {
            if r.len() != n {
                return Err(TableError::Ragged { row, len: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(TableError::EntryOutOfRange { row, col, value });
                }
                flat.push(value as u16);
            }
        }
        let mut table = FiniteGroupTable { order: n, mult: flat, identity: 0, inverse: vec![0; n] };
        table.check_latin()?;
        table.identity = (0..n)
            .find(|&e| (0..n).all(|x| table.mul(e, x) == x && table.mul(x, e) == x))
            .ok_or(TableError::NoIdentity)?;
        for x in 0..n {
            // Latin rows guarantee a unique right inverse; associativity makes it two-sided.
            let y = (0..n).find(|&y| table.mul(x, y) == table.identity).expect("Latin row contains the identity");
            table.inverse[x] = y as u16;
        }
        table.check_associative()?;
        Ok(table)
    }

    fn check_latin(&self) -> Result<(), TableError> {
        let n = self.order;
        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let v = self.mul(i, j);
                if seen[v] == i {
                    return Err(TableError::NotLatin(i));
                }
                seen[v] = i;
            }
        }
        seen.fill(usize::MAX);
        for j in 0..n {
            for i in 0..n {
                let v = self.mul(i, j);
                if seen[v] == j {
                    return Err(TableError::NotLatin(j));
                }
                seen[v] = j;
            }
        }
        Ok(())
    }

    /// Light's test: the elements `a` with `(x·a)·y = x·(a·y)` for all `x, y`
    /// form a submagma, so checking a generating set suffices.
    fn check_associative(&self) -> Result<(), TableError> {
        for a in self.generating_set() {
            for x in 0..self.order {
                let xa = self.mul(x, a);
                for y in 0..self.order {
                    if self.mul(xa, y) != self.mul(x, self.mul(a, y)) {
                        return Err(TableError::NotAssociative { a: x, b: a, c: y });
                    }
                }
            }
        }
        Ok(())
    }

    /// A small generating set, grown greedily; closure is taken under right
    /// multiplication by the chosen generators.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order;
        let mut reached = vec![false; n];
        reached[self.identity] = true;
        let mut gens = Vec::new();
        while let Some(g) = (0..n).find(|&x| !reached[x]) {
            gens.push(g);
            let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = stack.pop() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !reached[y] {
                        reached[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn check_index(&self, index: usize) -> Result<usize, TableError> {
        if index < self.order {
            Ok(index)
        } else {
            Err(TableError::BadIndex { index, order: self.order })
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Table of a finite abelian group, elements in the group's index order.
    pub fn from_abelian(group: &FgAbelianGroup) -> Result<Self, ReidemeisterError> {
        let elements = group.elements()?;
        let mult = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        group.index_of(&s)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(mult)?)
    }

    /// Symmetric group on `k` letters; elements are permutations in
    /// lexicographic order, composed as `(a·b)(i) = a(b(i))`.
    pub fn symmetric(k: usize) -> (Self, Vec<Vec<usize>>) {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..k).collect();
        loop {
            perms.push(p.clone());
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else { break };
            let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
            p.swap(i - 1, j);
            p[i..].reverse();
        }
        let index = |q: &Vec<usize>| perms.iter().position(|x| x == q).expect("closed under composition");
        let mult = perms
            .iter()
            .map(|a| perms.iter().map(|b| index(&b.iter().map(|&i| a[i]).collect())).collect())
            .collect();
        (Self::new(mult).expect("symmetric group table is valid"), perms)
    }

    /// Checks that `map` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn check_homomorphism(&self, target: &FiniteGroupTable, map: &[usize]) -> Result<(), TableError> {
        if map.len() != self.order {
            return Err(TableError::MapLength { expected: self.order, found: map.len() });
        }
        for &y in map {
            target.check_index(y)?;
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(TableError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }

    /// Extends generator images to a full element map by walking the Cayley
    /// graph, rejecting inconsistent assignments. `images[i]` is the image of
    /// `generators[i]` in `target`.
    pub fn extend_homomorphism(
        &self,
        target: &FiniteGroupTable,
        generators: &[usize],
        images: &[usize],
    ) -> Result<Vec<usize>, TableError> {
        if generators.len() != images.len() {
            return Err(TableError::MapLength { expected: generators.len(), found: images.len() });
        }
        for &g in generators {
            self.check_index(g)?;
        }
        for &y in images {
            target.check_index(y)?;
        }
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = target.identity();
        let mut queue = std::collections::VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &gy) in generators.iter().zip(images) {
                let xg = self.mul(x, g);
                let img = target.mul(map[x], gy);
                if map[xg] == usize::MAX {
                    map[xg] = img;
                    queue.push_back(xg);
                } else if map[xg] != img {
                    return Err(TableError::InconsistentExtension(xg));
                }
            }
        }
        if map.contains(&usize::MAX) {
            return Err(TableError::NotGenerating);
        }
        self.check_homomorphism(target, &map)?;
        Ok(map)
    }
}

#[derive(Deserialize)]
struct TableJson {
    order: Option<usize>,
    mult: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for FiniteGroupTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = TableJson::deserialize(d)?;
        if let Some(declared) = raw.order {
            if declared != raw.mult.len() {
                return Err(D::Error::custom(TableError::OrderMismatch { declared, rows: raw.mult.len() }));
            }
        }
        FiniteGroupTable::new(raw.mult).map_err(D::Error::custom)
    }
}

impl Serialize for FiniteGroupTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FiniteGroupTable", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("mult", &self.to_rows())?;
        st.end()
    }
}

/// The generator pairs `(f₁*(g), f₂*(g))` acting on a finite `π₁(N)`.
#[derive(Clone, Debug)]
pub struct TwistedConjugacyData {
    group: FiniteGroupTable,
    pairs: Vec<(usize, usize)>,
}

impl TwistedConjugacyData {
    pub fn new(group: FiniteGroupTable, pairs: Vec<(usize, usize)>) -> Result<Self, TableError> {
        for &(a, b) in &pairs {
            group.check_index(a)?;
            group.check_index(b)?;
        }
        Ok(TwistedConjugacyData { group, pairs })
    }

    /// Parses `{"pairs": [[i, j], ...]}`.
    pub fn from_json(group: FiniteGroupTable, pairing: &str) -> Result<Self, String> {
        #[derive(Deserialize)]
        struct PairingJson {
            pairs: Vec<(usize, usize)>,
        }
        let p: PairingJson = serde_json::from_str(pairing).map_err(|e| e.to_string())?;
        Self::new(group, p.pairs).map_err(|e| e.to_string())
    }

    pub fn group(&self) -> &FiniteGroupTable {
        &self.group
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The pairing with `f₁*` and `f₂*` exchanged.
    pub fn swapped(&self) -> Self {
        TwistedConjugacyData { group: self.group.clone(), pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect() }
    }

    /// `θ ↦ f₁*(g)⁻¹ · θ · f₂*(g)` for the `i`-th pair.
    pub fn act(&self, i: usize, theta: usize) -> usize {
        let (a, b) = self.pairs[i];
        let g = &self.group;
        g.mul(g.mul(g.inv(a), theta), b)
    }
}

/// Orbits of the twisted action, each sorted, ordered by smallest element.
pub fn reidemeister_orbits(data: &TwistedConjugacyData) -> Vec<Vec<usize>> {
    let n = data.group.order();
    let mut uf = UnionFind::new(n);
    for theta in 0..n {
        for i in 0..data.pairs.len() {
            uf.union(theta, data.act(i, theta));
        }
    }
    uf.groups()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidemeisterSet {
    /// The set carries the group structure of `coker(f₁* − f₂*)`.
    pub group: FgAbelianGroup,
    pub cardinality: Cardinality,
}

/// Abelian `π₁(N)`: the Reidemeister set is `coker(f₁* − f₂*)`.
pub fn reidemeister_abelian(f1: &GroupHom, f2: &GroupHom) -> Result<ReidemeisterSet, ReidemeisterError> {
    let c = f1.sub(f2)?.cokernel();
    Ok(ReidemeisterSet { cardinality: c.order(), group: c.group })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBoundReport {
    pub reidemeister_cardinality: Cardinality,
    /// `None` when the Reidemeister set gives no usable bound.
    pub mcc_upper_bound: Option<u64>,
    pub summary: String,
    pub caveats: Vec<String>,
    pub applied: Vec<Citation>,
}

/// `N ≤ MCC ≤ #R`, the upper bound requiring target dimension `n ≠ 2`.
///
/// Pass `target_dim` when it is known: `Some(2)` drops the upper bound,
/// any other value removes the caveat.
pub fn nielsen_upper_bound(card: Cardinality, target_dim: Option<u32>) -> UpperBoundReport {
    let mut caveats = Vec::new();
    let mut applied = vec![Citation::NielsenLowerBound];
    let (bound, summary) = match (card, target_dim) {
        (Cardinality::Infinite, _) => (None, "N <= MCC; no finite upper bound from R".to_string()),
        (Cardinality::Finite(c), Some(2)) => {
            caveats.push(format!("#R = {c} does not bound MCC when n = 2"));
            (None, "N <= MCC; the Reidemeister bound needs n != 2".to_string())
        }
        (Cardinality::Finite(c), Some(_)) => {
            applied.push(Citation::ReidemeisterUpperBound);
            (Some(c), format!("N <= MCC <= {c}"))
        }
        (Cardinality::Finite(c), None) => {
            applied.push(Citation::ReidemeisterUpperBound);
            caveats.push("n != 2 required for the upper bound".to_string());
            (Some(c), format!("MCC <= {c} (valid when n != 2)"))
        }
    };
    UpperBoundReport { reidemeister_cardinality: card, mcc_upper_bound: bound, summary, caveats, applied }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroupTable {
        FiniteGroupTable::symmetric(3).0
    }

    #[test]
    fn symmetric_group_basics() {
        let (g, perms) = FiniteGroupTable::symmetric(3);
        assert_eq!(g.order(), 6);
        assert_eq!(perms[g.identity()], vec![0, 1, 2]);
        assert!(!g.is_abelian());
        for x in 0..6 {
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
        }
        assert!(g.generating_set().len() <= 3);
    }

    #[test]
    fn invalid_tables() {
        assert_eq!(FiniteGroupTable::new(vec![]), Err(TableError::Empty));
        assert!(matches!(FiniteGroupTable::new(vec![vec![0, 1], vec![1]]), Err(TableError::Ragged { .. })));
        assert!(matches!(FiniteGroupTable::new(vec![vec![0, 1], vec![0, 1]]), Err(TableError::NotLatin(_))));
        assert!(matches!(FiniteGroupTable::new(vec![vec![0, 5], vec![1, 0]]), Err(TableError::EntryOutOfRange { .. })));
        // Latin square with identity 0 that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroupTable::new(loop5), Err(TableError::NotAssociative { .. })));
        // x*y = -x-y on Z/3 is a Latin square without identity.
        assert_eq!(FiniteGroupTable::new(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]), Err(TableError::NoIdentity));
    }

    #[test]
    fn trivial_generating_set_gives_singletons() {
        let data = TwistedConjugacyData::new(s3(), vec![]).unwrap();
        assert_eq!(reidemeister_orbits(&data).len(), 6);
    }

    #[test]
    fn identity_maps_give_conjugacy_classes() {
        let g = s3();
        let pairs = (0..6).map(|x| (x, x)).collect();
        let orbits = reidemeister_orbits(&TwistedConjugacyData::new(g, pairs).unwrap());
        assert_eq!(orbits.len(), 3);
        let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn identity_against_trivial_is_transitive() {
        let z4 = FiniteGroupTable::from_abelian(&FgAbelianGroup::cyclic(4)).unwrap();
        let data = TwistedConjugacyData::new(z4, vec![(1, 0)]).unwrap();
        assert_eq!(reidemeister_orbits(&data).len(), 1);
    }

    #[test]
    fn abelian_examples() {
        let z = FgAbelianGroup::integers();
        let z1 = FgAbelianGroup::free(1);
        let f1 = GroupHom::row_to_integers(&[5]);
        let f2 = GroupHom::row_to_integers(&[2]);
        assert_eq!(reidemeister_abelian(&f1, &f2).unwrap().cardinality, Cardinality::Finite(3));
        assert_eq!(reidemeister_abelian(&f1, &f1).unwrap().cardinality, Cardinality::Infinite);

        // π₁(N) = ℤ/6 with f₁* − f₂* = ×2: orbits of translation by {0, 2, 4}.
        let z6 = FgAbelianGroup::cyclic(6);
        let f1 = GroupHom::from_rows(z6.clone(), z6.clone(), &[vec![3]]).unwrap();
        let f2 = GroupHom::from_rows(z6.clone(), z6.clone(), &[vec![1]]).unwrap();
        assert_eq!(reidemeister_abelian(&f1, &f2).unwrap().cardinality, Cardinality::Finite(2));
        assert!(reidemeister_abelian(&f1, &GroupHom::zero(&z1, &z)).is_err());
    }

    #[test]
    fn upper_bound_reports() {
        let r = nielsen_upper_bound(Cardinality::Finite(3), None);
        assert_eq!(r.summary, "MCC <= 3 (valid when n != 2)");
        assert_eq!(r.mcc_upper_bound, Some(3));
        let r = nielsen_upper_bound(Cardinality::Infinite, None);
        assert!(r.summary.contains("no finite upper bound from R"));
        assert_eq!(r.mcc_upper_bound, None);
        let r = nielsen_upper_bound(Cardinality::Finite(1), None);
        assert!(r.summary.starts_with("MCC <= 1"));
        let r = nielsen_upper_bound(Cardinality::Finite(4), Some(2));
        assert_eq!(r.mcc_upper_bound, None);
        let r = nielsen_upper_bound(Cardinality::Finite(4), Some(3));
        assert_eq!(r.summary, "N <= MCC <= 4");
        assert!(r.caveats.is_empty());
    }

    #[test]
    fn homomorphism_extension() {
        let (g, perms) = FiniteGroupTable::symmetric(3);
        let z2 = FiniteGroupTable::from_abelian(&FgAbelianGroup::cyclic(2)).unwrap();
        let sign: Vec<usize> = perms
            .iter()
            .map(|p| {
                let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                inversions % 2
            })
            .collect();
        g.check_homomorphism(&z2, &sign).unwrap();
        let gens = g.generating_set();
        let images: Vec<usize> = gens.iter().map(|&x| sign[x]).collect();
        assert_eq!(g.extend_homomorphism(&z2, &gens, &images).unwrap(), sign);
        let bad: Vec<usize> = gens.iter().map(|_| 1).collect();
        // Sending every generator to the nontrivial element fails for some generating sets;
        // the extension must either reproduce a homomorphism or refuse.
        if let Ok(map) = g.extend_homomorphism(&z2, &gens, &bad) {
            g.check_homomorphism(&z2, &map).unwrap();
        }
    }

    #[test]
    fn table_json() {
        let t: FiniteGroupTable = serde_json::from_str(r#"{"order":2,"mult":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(t.order(), 2);
        assert!(serde_json::from_str::<FiniteGroupTable>(r#"{"order":3,"mult":[[0,1],[1,0]]}"#).is_err());
        let d = TwistedConjugacyData::from_json(t, r#"{"pairs":[[1,0]]}"#).unwrap();
        assert_eq!(reidemeister_orbits(&d), vec![vec![0, 1]]);
    }
}
