//! Finitely generated abelian groups in invariant-factor form and the
//! homomorphisms between them.
//!
//! A group is stored as a list `d₁ | d₂ | … | d_k` where a factor of `0` is an
//! infinite cyclic summand. Zeros sit at the end of the list, which keeps the
//! whole list a divisibility chain (everything divides 0). Every kernel, image
//! and cokernel below reduces to one Smith normal form of a relation matrix.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invariant factor {0} is not allowed (factors are 0 or at least 2)")]
    InvalidFactor(i64),
    #[error("invariant factors {0:?} do not form a divisibility chain")]
    NotDivisibilityChain(Vec<i64>),
    #[error("matrix has shape {found:?}, expected {expected:?} (codomain rank × domain rank)")]
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("generator {generator} has order {order} but is sent to a nonzero element of an infinite cyclic factor (row {row})")]
    TorsionIntoFree { generator: usize, order: i64, row: usize },
    #[error("generator {generator} has order {order} but its image in row {row} (mod {modulus}) does not have order dividing {order}")]
    OrderViolation { generator: usize, order: i64, row: usize, modulus: i64 },
    #[error("homomorphisms do not share a domain")]
    DomainMismatch,
    #[error("homomorphisms do not share a codomain")]
    CodomainMismatch,
    #[error("cannot compose: codomain of the inner map is not the domain of the outer map")]
    NotComposable,
    #[error("element has {found} coordinates, group has {expected} generators")]
    CoordinateLength { expected: usize, found: usize },
    #[error("group {0} is infinite; an explicit element enumeration is impossible")]
    InfiniteGroup(FgAbelianGroup),
    #[error("group order exceeds the representable range")]
    OrderOverflow,
}

/// Greatest common divisor, always nonnegative; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

/// Size of a set that may be infinite: group orders, element orders,
/// Reidemeister set sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

impl Cardinality {
    pub fn is_finite(self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cardinality::Finite(n) => Some(n),
            Cardinality::Infinite => None,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Cardinality {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cardinality::Finite(n) => s.serialize_u64(*n),
            Cardinality::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// A finitely generated abelian group `ℤ/d₁ ⊕ … ⊕ ℤ/d_k`, `d_i = 0` meaning `ℤ`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbelianGroup {
    invariant_factors: Vec<i64>,
}

impl FgAbelianGroup {
    /// Accepts only the canonical form: no factor 1, nonnegative, a divisibility
    /// chain with the zeros last.
    pub fn new(invariant_factors: Vec<i64>) -> Result<Self, AlgebraError> {
        for &d in &invariant_factors {
            if d < 0 || d == 1 {
                return Err(AlgebraError::InvalidFactor(d));
            }
        }
        let chained = invariant_factors.windows(2).all(|w| w[1] % w[0].max(1) == 0 && (w[0] != 0 || w[1] == 0));
        if !chained {
            return Err(AlgebraError::NotDivisibilityChain(invariant_factors));
        }
        Ok(FgAbelianGroup { invariant_factors })
    }

    /// Normalizes an arbitrary direct sum of cyclic groups, e.g. `[2, 3, 1, 0]`
    /// becomes `ℤ/6 ⊕ ℤ`.
    pub fn from_cyclic_orders(orders: &[i64]) -> Self {
        let diag = IntMatrix::diagonal(&orders.iter().map(|d| d.abs()).collect::<Vec<_>>());
        quotient_by_relations(&diag).group
    }

    pub fn trivial() -> Self {
        FgAbelianGroup { invariant_factors: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { invariant_factors: vec![0; rank] }
    }

    pub fn cyclic(n: i64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    pub fn invariant_factors(&self) -> &[i64] {
        &self.invariant_factors
    }

    /// Number of generators in the canonical presentation.
    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|&&d| d == 0).count()
    }

    pub fn torsion_factors(&self) -> Vec<i64> {
        self.invariant_factors.iter().copied().filter(|&d| d != 0).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_integers(&self) -> bool {
        self.invariant_factors == [0]
    }

    pub fn order(&self) -> Cardinality {
        if !self.is_finite() {
            return Cardinality::Infinite;
        }
        self.invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
            .map_or(Cardinality::Infinite, Cardinality::Finite)
    }

    pub fn reduce(&self, coordinates: &[i64]) -> Result<Vec<i64>, AlgebraError> {
        if coordinates.len() != self.num_generators() {
            return Err(AlgebraError::CoordinateLength {
                expected: self.num_generators(),
                found: coordinates.len(),
            });
        }
        Ok(coordinates
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&c, &d)| if d == 0 { c } else { c.rem_euclid(d) })
            .collect())
    }

    pub fn element(&self, coordinates: &[i64]) -> Result<GroupElement, AlgebraError> {
        Ok(GroupElement { group: self.clone(), coordinates: self.reduce(coordinates)? })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { group: self.clone(), coordinates: vec![0; self.num_generators()] }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.num_generators()];
        c[i] = 1;
        self.element(&c).expect("generator coordinates have the right length")
    }

    fn checked_order(&self) -> Result<u64, AlgebraError> {
        match self.order() {
            Cardinality::Finite(n) => Ok(n),
            Cardinality::Infinite if self.is_finite() => Err(AlgebraError::OrderOverflow),
            Cardinality::Infinite => Err(AlgebraError::InfiniteGroup(self.clone())),
        }
    }

    /// Mixed-radix index of a reduced element of a finite group (last
    /// coordinate varies fastest).
    pub fn index_of(&self, coordinates: &[i64]) -> Result<usize, AlgebraError> {
        self.checked_order()?;
        let c = self.reduce(coordinates)?;
        Ok(c.iter().zip(&self.invariant_factors).fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize))
    }

    pub fn coordinates_of(&self, mut index: usize) -> Vec<i64> {
        let mut c = vec![0; self.num_generators()];
        for (slot, &d) in c.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = (index % d as usize) as i64;
            index /= d as usize;
        }
        c
    }

    /// All elements of a finite group in index order.
    pub fn elements(&self) -> Result<Vec<Vec<i64>>, AlgebraError> {
        let n = self.checked_order()?;
        Ok((0..n as usize).map(|i| self.coordinates_of(i)).collect())
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut orders = self.invariant_factors.clone();
        orders.extend_from_slice(&other.invariant_factors);
        Self::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbelianGroup({self})")
    }
}

#[derive(Deserialize)]
struct GroupJson {
    invariant_factors: Vec<i64>,
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GroupJson::deserialize(d)?;
        FgAbelianGroup::new(raw.invariant_factors).map_err(D::Error::custom)
    }
}

/// An element of a specific group, coordinates reduced modulo the factors.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElement {
    #[serde(skip_serializing)]
    group: FgAbelianGroup,
    coordinates: Vec<i64>,
}

impl GroupElement {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn coordinates(&self) -> &[i64] {
        &self.coordinates
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> GroupElement {
        let c: Vec<i64> = self.coordinates.iter().map(|x| x * k).collect();
        self.group.element(&c).expect("same length")
    }

    pub fn neg(&self) -> GroupElement {
        self.scale(-1)
    }

    /// Panics if the two elements live in different groups.
    pub fn add(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.group, other.group, "adding elements of different groups");
        let c: Vec<i64> = self.coordinates.iter().zip(&other.coordinates).map(|(a, b)| a + b).collect();
        self.group.element(&c).expect("same length")
    }

    pub fn sub(&self, other: &GroupElement) -> GroupElement {
        self.add(&other.neg())
    }

    /// Least `k ≥ 1` with `k·x = 0`, or infinite.
    pub fn order(&self) -> Cardinality {
        let mut order = 1i64;
        for (&c, &d) in self.coordinates.iter().zip(self.group.invariant_factors()) {
            if c == 0 {
                continue;
            }
            if d == 0 {
                return Cardinality::Infinite;
            }
            order = lcm(order, d / gcd(d, c));
        }
        Cardinality::Finite(order as u64)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {}", self.coordinates, self.group)
    }
}

/// A homomorphism given by its action on the canonical generators.
///
/// Column `j` of `matrix` is the image of generator `j` of the domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates that each generator's image has order dividing the
    /// generator's order, then reduces entries modulo the codomain.
    pub fn new(domain: FgAbelianGroup, codomain: FgAbelianGroup, matrix: IntMatrix) -> Result<Self, AlgebraError> {
        let expected = (codomain.num_generators(), domain.num_generators());
        if (matrix.rows(), matrix.cols()) != expected {
            return Err(AlgebraError::ShapeMismatch { expected, found: (matrix.rows(), matrix.cols()) });
        }
        let mut m = matrix;
        for (j, &order) in domain.invariant_factors().iter().enumerate() {
            for (i, &modulus) in codomain.invariant_factors().iter().enumerate() {
                let x = m[(i, j)];
                if order != 0 {
                    if modulus == 0 && x != 0 {
                        return Err(AlgebraError::TorsionIntoFree { generator: j, order, row: i });
                    }
                    if modulus != 0 && (x * order) % modulus != 0 {
                        return Err(AlgebraError::OrderViolation { generator: j, order, row: i, modulus });
                    }
                }
                if modulus != 0 {
                    m[(i, j)] = x.rem_euclid(modulus);
                }
            }
        }
        Ok(GroupHom { domain, codomain, matrix: m })
    }

    pub fn from_rows(domain: FgAbelianGroup, codomain: FgAbelianGroup, rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        let cols = domain.num_generators();
        let found = (rows.len(), rows.first().map_or(cols, Vec::len));
        let matrix = IntMatrix::from_rows_with_cols(rows, cols).ok_or(AlgebraError::ShapeMismatch {
            expected: (codomain.num_generators(), cols),
            found,
        })?;
        Self::new(domain, codomain, matrix)
    }

    /// Hom `ℤ^k → ℤ` given by a row vector.
    pub fn row_to_integers(row: &[i64]) -> Self {
        Self::from_rows(FgAbelianGroup::free(row.len()), FgAbelianGroup::integers(), &[row.to_vec()])
            .expect("maps out of a free group are always valid")
    }

    pub fn identity(group: &FgAbelianGroup) -> Self {
        GroupHom {
            domain: group.clone(),
            codomain: group.clone(),
            matrix: IntMatrix::identity(group.num_generators()),
        }
    }

    pub fn zero(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.num_generators(), domain.num_generators()),
        }
    }

    /// Multiplication by `k` on a group.
    pub fn scalar(group: &FgAbelianGroup, k: i64) -> Self {
        let n = group.num_generators();
        Self::new(group.clone(), group.clone(), IntMatrix::diagonal(&vec![k; n])).expect("scalar maps are endomorphisms")
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, coordinates: &[i64]) -> Result<GroupElement, AlgebraError> {
        let x = self.domain.reduce(coordinates)?;
        self.codomain.element(&self.matrix.mul_vec(&x))
    }

    pub fn apply_element(&self, x: &GroupElement) -> Result<GroupElement, AlgebraError> {
        if x.group() != &self.domain {
            return Err(AlgebraError::DomainMismatch);
        }
        self.apply(x.coordinates())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom, AlgebraError> {
        if inner.codomain != self.domain {
            return Err(AlgebraError::NotComposable);
        }
        GroupHom::new(inner.domain.clone(), self.codomain.clone(), &self.matrix * &inner.matrix)
    }

    fn check_parallel(&self, other: &GroupHom) -> Result<(), AlgebraError> {
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch);
        }
        if self.codomain != other.codomain {
            return Err(AlgebraError::CodomainMismatch);
        }
        Ok(())
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom, AlgebraError> {
        self.check_parallel(other)?;
        GroupHom::new(self.domain.clone(), self.codomain.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom, AlgebraError> {
        self.check_parallel(other)?;
        GroupHom::new(self.domain.clone(), self.codomain.clone(), self.matrix.add(&other.matrix))
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom::new(self.domain.clone(), self.codomain.clone(), self.matrix.neg()).expect("negation preserves validity")
    }

    /// `codomain / image` with its quotient map.
    pub fn cokernel(&self) -> Cokernel {
        let relations = self.matrix.hstack(&IntMatrix::diagonal(self.codomain.invariant_factors()));
        let q = quotient_by_relations(&relations);
        let projection = GroupHom::new(self.codomain.clone(), q.group.clone(), q.projection)
            .expect("quotient maps respect generator orders");
        Cokernel { group: q.group, projection }
    }

    /// Kernel with generators expressed in domain coordinates.
    pub fn kernel(&self) -> Subgroup {
        // x lies in the lifted kernel iff M x ∈ span(diag(e)), i.e. (x, y) solves [M | -E] (x, y) = 0.
        let e = IntMatrix::diagonal(self.codomain.invariant_factors());
        let system = self.matrix.hstack(&e.neg());
        let n = self.domain.num_generators();
        let lifted: Vec<Vec<i64>> = integer_nullspace(&system).into_iter().map(|v| v[..n].to_vec()).collect();
        generated_subgroup(&self.domain, &lifted)
    }

    /// Isomorphism type of the image, with generators in codomain coordinates.
    pub fn image(&self) -> Subgroup {
        let columns: Vec<Vec<i64>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        generated_subgroup(&self.codomain, &columns)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }
}

#[derive(Deserialize)]
struct HomJson {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for GroupHom {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = HomJson::deserialize(d)?;
        GroupHom::from_rows(raw.domain, raw.codomain, &raw.matrix).map_err(D::Error::custom)
    }
}

impl Serialize for GroupHom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroupHom", 3)?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("codomain", &self.codomain)?;
        st.serialize_field("matrix", &self.matrix.to_rows())?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FgAbelianGroup,
    pub projection: GroupHom,
}

impl Cokernel {
    pub fn order(&self) -> Cardinality {
        self.group.order()
    }
}

/// A subgroup presented abstractly, together with its inclusion.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FgAbelianGroup,
    pub inclusion: GroupHom,
}

impl Subgroup {
    /// Images of the canonical generators, one per invariant factor.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let m = self.inclusion.matrix();
        (0..m.cols()).map(|j| m.column(j)).collect()
    }

    pub fn order(&self) -> Cardinality {
        self.group.order()
    }
}

pub(crate) struct Quotient {
    pub group: FgAbelianGroup,
    /// Rows: new coordinates as integer combinations of the old ones.
    pub projection: IntMatrix,
    /// Lifts of the new generators, in old coordinates.
    pub lifts: Vec<Vec<i64>>,
}

/// `ℤ^r / (column span of relations)` in invariant-factor form.
pub(crate) fn quotient_by_relations(relations: &IntMatrix) -> Quotient {
    let s = smith_normal_form(relations);
    let r = relations.rows();
    let diag = s.diagonal_entries();
    let mut factors = Vec::new();
    let mut kept = Vec::new();
    for i in 0..r {
        let d = if i < s.rank { diag.get(i).copied().unwrap_or(0) } else { 0 };
        if d != 1 {
            factors.push(d);
            kept.push(i);
        }
    }
    let mut projection = IntMatrix::zeros(kept.len(), r);
    for (row, &i) in kept.iter().enumerate() {
        for j in 0..r {
            let x = s.left[(i, j)];
            projection[(row, j)] = if factors[row] == 0 { x } else { x.rem_euclid(factors[row]) };
        }
    }
    let lifts = kept.iter().map(|&i| s.left_inverse.column(i)).collect();
    Quotient { group: FgAbelianGroup { invariant_factors: factors }, projection, lifts }
}

/// A basis of `{x ∈ ℤ^c : M x = 0}`.
pub(crate) fn integer_nullspace(m: &IntMatrix) -> Vec<Vec<i64>> {
    let s = smith_normal_form(m);
    (s.rank..m.cols()).map(|j| s.right.column(j)).collect()
}

/// The subgroup of `group` generated by the given coordinate vectors.
pub fn generated_subgroup(group: &FgAbelianGroup, generators: &[Vec<i64>]) -> Subgroup {
    let n = group.num_generators();
    let k = generators.len();
    let g = IntMatrix::from_columns(generators, n).expect("generator length matches the group");
    // c ↦ G c; relations are the c with G c ∈ span(diag(d)).
    let system = g.hstack(&IntMatrix::diagonal(group.invariant_factors()).neg());
    let relations: Vec<Vec<i64>> = integer_nullspace(&system).into_iter().map(|v| v[..k].to_vec()).collect();
    let rel = IntMatrix::from_columns(&relations, k).expect("relation length matches generator count");
    let q = quotient_by_relations(&rel);
    let images: Vec<Vec<i64>> = q
        .lifts
        .iter()
        .map(|c| group.reduce(&g.mul_vec(c)).expect("length checked"))
        .collect();
    let inclusion = GroupHom::new(q.group.clone(), group.clone(), IntMatrix::from_columns(&images, n).expect("shape"))
        .expect("inclusion respects generator orders");
    Subgroup { group: q.group, inclusion }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: usize) -> FgAbelianGroup {
        FgAbelianGroup::free(k)
    }

    #[test]
    fn canonical_form_is_enforced() {
        assert!(FgAbelianGroup::new(vec![2, 4, 0]).is_ok());
        assert_eq!(FgAbelianGroup::new(vec![1]), Err(AlgebraError::InvalidFactor(1)));
        assert!(matches!(FgAbelianGroup::new(vec![2, 3]), Err(AlgebraError::NotDivisibilityChain(_))));
        assert!(matches!(FgAbelianGroup::new(vec![0, 2]), Err(AlgebraError::NotDivisibilityChain(_))));
        assert_eq!(FgAbelianGroup::from_cyclic_orders(&[2, 3, 1, 0]).invariant_factors(), &[6, 0]);
        assert_eq!(FgAbelianGroup::from_cyclic_orders(&[4, 6]).invariant_factors(), &[2, 12]);
        assert!(FgAbelianGroup::from_cyclic_orders(&[1, 1]).is_trivial());
    }

    #[test]
    fn finiteness_and_order() {
        assert_eq!(FgAbelianGroup::cyclic(24).order(), Cardinality::Finite(24));
        assert_eq!(FgAbelianGroup::new(vec![2, 0]).unwrap().order(), Cardinality::Infinite);
        assert_eq!(FgAbelianGroup::trivial().order(), Cardinality::Finite(1));
    }

    #[test]
    fn cokernel_examples() {
        let h = GroupHom::row_to_integers(&[2, 4]);
        assert_eq!(h.cokernel().group.invariant_factors(), &[2]);

        let z6 = FgAbelianGroup::cyclic(6);
        assert!(GroupHom::identity(&z6).cokernel().group.is_trivial());

        // ℤ → ℤ², 1 ↦ (2, 0): relation matrix [[2],[0]] has SNF diag(2) plus a free row.
        let h = GroupHom::from_rows(z(1), z(2), &[vec![2], vec![0]]).unwrap();
        let c = h.cokernel();
        assert_eq!(c.group.invariant_factors(), &[2, 0]);
        assert_eq!(c.order(), Cardinality::Infinite);
        // The projection kills the image.
        assert!(c.projection.apply(&[2, 0]).unwrap().is_zero());
        assert!(!c.projection.apply(&[1, 0]).unwrap().is_zero());
    }

    #[test]
    fn kernel_examples() {
        let k = GroupHom::zero(&z(2), &z(1)).kernel();
        assert_eq!(k.group, z(2));

        let k = GroupHom::row_to_integers(&[1, 0]).kernel();
        assert_eq!(k.group, z(1));
        let g = &k.generators()[0];
        assert_eq!(g[0], 0);
        assert_eq!(g[1].abs(), 1);

        // ×2 on ℤ/6: by enumeration 2x ≡ 0 (mod 6) iff x ∈ {0, 3}.
        let z6 = FgAbelianGroup::cyclic(6);
        let k = GroupHom::scalar(&z6, 2).kernel();
        assert_eq!(k.group.invariant_factors(), &[2]);
        assert_eq!(k.generators(), vec![vec![3]]);
    }

    #[test]
    fn image_of_torsion_hom() {
        // ℤ/4 → ℤ/8, 1 ↦ 2: image is {0,2,4,6} ≅ ℤ/4.
        let h = GroupHom::from_rows(FgAbelianGroup::cyclic(4), FgAbelianGroup::cyclic(8), &[vec![2]]).unwrap();
        assert_eq!(h.image().group.invariant_factors(), &[4]);
        assert!(h.is_injective());
        assert!(!h.is_surjective());
    }

    #[test]
    fn invalid_homs_are_rejected() {
        let z2 = FgAbelianGroup::cyclic(2);
        assert!(matches!(
            GroupHom::from_rows(z2.clone(), z(1), &[vec![1]]),
            Err(AlgebraError::TorsionIntoFree { .. })
        ));
        assert!(matches!(
            GroupHom::from_rows(z2, FgAbelianGroup::cyclic(3), &[vec![1]]),
            Err(AlgebraError::OrderViolation { .. })
        ));
        assert!(matches!(
            GroupHom::from_rows(z(2), z(1), &[vec![1, 2, 3]]),
            Err(AlgebraError::ShapeMismatch { .. })
        ));
        // Torsion into ℤ sent to zero is fine.
        assert!(GroupHom::from_rows(FgAbelianGroup::cyclic(2), z(1), &[vec![0]]).is_ok());
    }

    #[test]
    fn element_orders() {
        let z24 = FgAbelianGroup::cyclic(24);
        assert_eq!(z24.zero().order(), Cardinality::Finite(1));
        assert_eq!(z24.element(&[12]).unwrap().order(), Cardinality::Finite(2));
        let g = FgAbelianGroup::new(vec![2, 0]).unwrap();
        // (0, 1) is the free generator here; ℤ ⊕ ℤ/2 written canonically as [2, 0].
        assert_eq!(g.element(&[0, 1]).unwrap().order(), Cardinality::Infinite);
        assert_eq!(g.element(&[1, 0]).unwrap().order(), Cardinality::Finite(2));
        let h = FgAbelianGroup::new(vec![4, 12]).unwrap();
        assert_eq!(h.element(&[2, 3]).unwrap().order(), Cardinality::Finite(4));
    }

    #[test]
    fn composition_and_identity() {
        let g = FgAbelianGroup::new(vec![2, 0]).unwrap();
        let f = GroupHom::from_rows(g.clone(), z(2), &[vec![0, 3], vec![0, 1]]).unwrap();
        let id = GroupHom::identity(&g);
        assert_eq!(f.compose(&id).unwrap(), f);
        assert_eq!(GroupHom::identity(&z(2)).compose(&f).unwrap(), f);
        assert!(id.compose(&f).is_err());
    }

    #[test]
    fn json_round_trip() {
        let h: GroupHom = serde_json::from_str(
            r#"{"domain":{"invariant_factors":[0,0]},"codomain":{"invariant_factors":[0]},"matrix":[[2,4]]}"#,
        )
        .unwrap();
        assert_eq!(h, GroupHom::row_to_integers(&[2, 4]));
        let text = serde_json::to_string(&h).unwrap();
        let back: GroupHom = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
        let bad = serde_json::from_str::<FgAbelianGroup>(r#"{"invariant_factors":[3,2]}"#);
        assert!(bad.is_err());
        let to_trivial: GroupHom = serde_json::from_str(
            r#"{"domain":{"invariant_factors":[0,0]},"codomain":{"invariant_factors":[]},"matrix":[]}"#,
        )
        .unwrap();
        assert!(to_trivial.is_zero());
    }
}
