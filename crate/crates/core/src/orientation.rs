//! Coefficients of coincidence indices: `ℤ` or `ℤ/2`.
//!
//! With `w₁(φ) = w₁(M) + f₁*(w₁(N))`, the index of the class of `θ` lives in
//! `ℤ` exactly when `w₁(M)(μ) = f₁*(w₁(N))(μ)` for every `μ` in the stabilizer
//! `{μ : f₂*(μ) = θ⁻¹·f₁*(μ)·θ}`. For abelian `π₁(N)` the stabilizer is
//! `ker(f₂* − f₁*)` for every class, so the answer is class-independent.

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{AlgebraError, FgAbelianGroup, GroupHom};
use crate::reidemeister::{reidemeister_orbits, FiniteGroupTable, TableError, TwistedConjugacyData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("{0} must take values in Z/2")]
    NotMod2(&'static str),
    #[error("{0} does not have the same domain as f1")]
    Domain(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coefficients {
    Z,
    Z2,
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Coefficients::Z => "Z",
            Coefficients::Z2 => "Z2",
        })
    }
}

/// Orientation data with abelian fundamental groups.
#[derive(Clone, Debug)]
pub struct AbelianOrientationData {
    pub w1_m: GroupHom,
    /// `f₁*(w₁(N))`, already pulled back to `π₁(M)`.
    pub w1_n_pulled: GroupHom,
    pub f1: GroupHom,
    pub f2: GroupHom,
}

impl AbelianOrientationData {
    pub fn new(w1_m: GroupHom, w1_n_pulled: GroupHom, f1: GroupHom, f2: GroupHom) -> Result<Self, OrientationError> {
        let z2 = FgAbelianGroup::cyclic(2);
        if w1_m.codomain() != &z2 {
            return Err(OrientationError::NotMod2("w1_M"));
        }
        if w1_n_pulled.codomain() != &z2 {
            return Err(OrientationError::NotMod2("w1_N"));
        }
        for (name, h) in [("w1_M", &w1_m), ("w1_N", &w1_n_pulled), ("f2", &f2)] {
            if h.domain() != f1.domain() {
                return Err(OrientationError::Domain(name));
            }
        }
        if f1.codomain() != f2.codomain() {
            return Err(AlgebraError::CodomainMismatch.into());
        }
        Ok(AbelianOrientationData { w1_m, w1_n_pulled, f1, f2 })
    }
}

/// `w₁(φ) = w₁(M) + f₁*(w₁(N))`.
pub fn w1_phi(data: &AbelianOrientationData) -> GroupHom {
    data.w1_m.add(&data.w1_n_pulled).expect("validated to share domain and codomain")
}

/// `ℤ` iff `w₁(φ)` vanishes on `ker(f₂* − f₁*)`.
pub fn coefficient_group_abelian(data: &AbelianOrientationData) -> Coefficients {
    let w = w1_phi(data);
    let kernel = data.f2.sub(&data.f1).expect("validated").kernel();
    let vanishes = kernel.generators().iter().all(|g| w.apply(g).expect("kernel lies in the domain").is_zero());
    if vanishes {
        Coefficients::Z
    } else {
        Coefficients::Z2
    }
}

/// Orientation data over finite groups in table form, with every map given
/// on all elements.
#[derive(Clone, Debug)]
pub struct FiniteOrientationData {
    pub pi1_m: FiniteGroupTable,
    pub pi1_n: FiniteGroupTable,
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
    /// `w₁(M)` as 0/1 values on elements of `π₁(M)`.
    pub w1_m: Vec<u8>,
    /// `f₁*(w₁(N))` as 0/1 values on elements of `π₁(M)`.
    pub w1_n_pulled: Vec<u8>,
}

impl FiniteOrientationData {
    /// Extends generator images to homomorphisms and validates them.
    /// `generators` defaults to the table's own generating set.
    pub fn from_generators(
        pi1_m: FiniteGroupTable,
        pi1_n: FiniteGroupTable,
        generators: Option<Vec<usize>>,
        f1: &[usize],
        f2: &[usize],
        w1_m: &[u8],
        w1_n_pulled: &[u8],
    ) -> Result<Self, OrientationError> {
        let gens = generators.unwrap_or_else(|| pi1_m.generating_set());
        let z2 = FiniteGroupTable::from_abelian(&FgAbelianGroup::cyclic(2)).expect("Z/2 table");
        let f1 = pi1_m.extend_homomorphism(&pi1_n, &gens, f1)?;
        let f2 = pi1_m.extend_homomorphism(&pi1_n, &gens, f2)?;
        let to_z2 = |name: &'static str, values: &[u8]| -> Result<Vec<u8>, OrientationError> {
            if values.iter().any(|&v| v > 1) {
                return Err(OrientationError::NotMod2(name));
            }
            let images: Vec<usize> = values.iter().map(|&v| v as usize).collect();
            let full = pi1_m.extend_homomorphism(&z2, &gens, &images)?;
            Ok(full.into_iter().map(|v| v as u8).collect())
        };
        let w1_m = to_z2("w1_M", w1_m)?;
        let w1_n_pulled = to_z2("w1_N", w1_n_pulled)?;
        Ok(FiniteOrientationData { pi1_m, pi1_n, f1, f2, w1_m, w1_n_pulled })
    }

    /// Table form of abelian data; both groups must be finite.
    pub fn from_abelian(data: &AbelianOrientationData) -> Result<Self, OrientationError> {
        let m = data.f1.domain();
        let n = data.f1.codomain();
        let pi1_m = FiniteGroupTable::from_abelian(m).map_err(table_or_algebra)?;
        let pi1_n = FiniteGroupTable::from_abelian(n).map_err(table_or_algebra)?;
        let elements = m.elements()?;
        let map = |h: &GroupHom| -> Result<Vec<usize>, AlgebraError> {
            elements.iter().map(|x| n.index_of(h.apply(x)?.coordinates())).collect()
        };
        let bit = |h: &GroupHom| -> Result<Vec<u8>, AlgebraError> {
            elements.iter().map(|x| Ok(h.apply(x)?.coordinates()[0] as u8)).collect()
        };
        Ok(FiniteOrientationData {
            f1: map(&data.f1)?,
            f2: map(&data.f2)?,
            w1_m: bit(&data.w1_m)?,
            w1_n_pulled: bit(&data.w1_n_pulled)?,
            pi1_m,
            pi1_n,
        })
    }

    /// Generator pairs `(f₁*(g), f₂*(g))` for the Reidemeister action.
    pub fn twisted_data(&self) -> TwistedConjugacyData {
        let pairs = self.pi1_m.generating_set().into_iter().map(|g| (self.f1[g], self.f2[g])).collect();
        TwistedConjugacyData::new(self.pi1_n.clone(), pairs).expect("images are valid indices")
    }

    /// `{μ : f₂*(μ) = θ⁻¹·f₁*(μ)·θ}`.
    pub fn stabilizer(&self, theta: usize) -> Vec<usize> {
        let n = &self.pi1_n;
        (0..self.pi1_m.order())
            .filter(|&mu| self.f2[mu] == n.mul(n.mul(n.inv(theta), self.f1[mu]), theta))
            .collect()
    }
}

fn table_or_algebra(e: crate::reidemeister::ReidemeisterError) -> OrientationError {
    match e {
        crate::reidemeister::ReidemeisterError::Table(t) => OrientationError::Table(t),
        crate::reidemeister::ReidemeisterError::Algebra(a) => OrientationError::Algebra(a),
    }
}

/// Coefficient group for the class of `θ`.
pub fn coefficient_group_class(data: &FiniteOrientationData, theta: usize) -> Result<Coefficients, OrientationError> {
    data.pi1_n.check_index(theta)?;
    let ok = data.stabilizer(theta).into_iter().all(|mu| data.w1_m[mu] == data.w1_n_pulled[mu]);
    Ok(if ok { Coefficients::Z } else { Coefficients::Z2 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCoefficients {
    pub class: Vec<usize>,
    pub representative: usize,
    pub coefficients: Coefficients,
}

/// One entry per Reidemeister class, ordered by smallest element.
pub fn class_coefficients(data: &FiniteOrientationData) -> Vec<ClassCoefficients> {
    reidemeister_orbits(&data.twisted_data())
        .into_iter()
        .map(|class| {
            let representative = class[0];
            let coefficients = coefficient_group_class(data, representative).expect("orbit members are valid");
            ClassCoefficients { class, representative, coefficients }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(domain: &FgAbelianGroup, codomain: &FgAbelianGroup, rows: &[Vec<i64>]) -> GroupHom {
        GroupHom::from_rows(domain.clone(), codomain.clone(), rows).unwrap()
    }

    #[test]
    fn w1_phi_examples() {
        let z = FgAbelianGroup::integers();
        let z2 = FgAbelianGroup::cyclic(2);
        let eps = hom(&z, &z2, &[vec![1]]);
        let zero = GroupHom::zero(&z, &z2);
        let id = GroupHom::identity(&z);
        let d = AbelianOrientationData::new(zero.clone(), zero.clone(), id.clone(), id.clone()).unwrap();
        assert!(w1_phi(&d).is_zero());
        let d = AbelianOrientationData::new(zero.clone(), eps.clone(), id.clone(), id.clone()).unwrap();
        assert_eq!(w1_phi(&d), eps);
        let d = AbelianOrientationData::new(eps.clone(), eps.clone(), id.clone(), id.clone()).unwrap();
        assert!(w1_phi(&d).is_zero());
    }

    #[test]
    fn abelian_coefficients() {
        let z = FgAbelianGroup::integers();
        let z2 = FgAbelianGroup::cyclic(2);
        let eps = hom(&z, &z2, &[vec![1]]);
        let zero = GroupHom::zero(&z, &z2);
        let id = GroupHom::identity(&z);
        let d = AbelianOrientationData::new(zero.clone(), zero.clone(), id.clone(), id.clone()).unwrap();
        assert_eq!(coefficient_group_abelian(&d), Coefficients::Z);
        // f₁ = f₂: the kernel is all of ℤ and w₁(φ) is onto.
        let d = AbelianOrientationData::new(eps.clone(), zero.clone(), id.clone(), id.clone()).unwrap();
        assert_eq!(coefficient_group_abelian(&d), Coefficients::Z2);
        // f₂ − f₁ = ×2 is injective.
        let d = AbelianOrientationData::new(eps.clone(), zero.clone(), id.clone(), GroupHom::scalar(&z, 3)).unwrap();
        assert_eq!(coefficient_group_abelian(&d), Coefficients::Z);
    }

    #[test]
    fn rejects_bad_data() {
        let z = FgAbelianGroup::integers();
        let z3 = FgAbelianGroup::cyclic(3);
        let id = GroupHom::identity(&z);
        let w = hom(&z, &z3, &[vec![1]]);
        assert!(AbelianOrientationData::new(w.clone(), w, id.clone(), id).is_err());
    }

    fn s3_data(w1_m_s: u8, w1_n_s: u8) -> FiniteOrientationData {
        let (s3, perms) = FiniteGroupTable::symmetric(3);
        let z2 = FiniteGroupTable::from_abelian(&FgAbelianGroup::cyclic(2)).unwrap();
        let swap01 = perms.iter().position(|p| p == &vec![1, 0, 2]).unwrap();
        FiniteOrientationData::from_generators(z2, s3, Some(vec![1]), &[swap01], &[swap01], &[w1_m_s], &[w1_n_s])
            .unwrap()
    }

    #[test]
    fn class_examples() {
        let d = s3_data(0, 0);
        assert_eq!(coefficient_group_class(&d, d.pi1_n.identity()).unwrap(), Coefficients::Z);

        // Stabilizer of θ = identity is all of π₁(M) = {e, s}, where w₁ disagree.
        let d = s3_data(1, 0);
        assert_eq!(coefficient_group_class(&d, d.pi1_n.identity()).unwrap(), Coefficients::Z2);
        let classes = class_coefficients(&d);
        let mut summary: Vec<(usize, Coefficients)> = classes.iter().map(|c| (c.class.len(), c.coefficients)).collect();
        summary.sort_by_key(|&(len, c)| (len, c == Coefficients::Z));
        // {e}, {(01)} are fixed by conjugation with (01): ℤ/2. The 2-element classes are not.
        assert_eq!(
            summary,
            vec![(1, Coefficients::Z2), (1, Coefficients::Z2), (2, Coefficients::Z), (2, Coefficients::Z)]
        );
    }

    #[test]
    fn trivial_stabilizer_gives_z() {
        // f₁ = id, f₂ = trivial on ℤ/3: the stabilizer of 0 is only the identity.
        let z3 = FgAbelianGroup::cyclic(3);
        let z2 = FgAbelianGroup::cyclic(2);
        let d = AbelianOrientationData::new(
            GroupHom::zero(&z3, &z2),
            GroupHom::zero(&z3, &z2),
            GroupHom::identity(&z3),
            GroupHom::zero(&z3, &z3),
        )
        .unwrap();
        let f = FiniteOrientationData::from_abelian(&d).unwrap();
        assert_eq!(f.stabilizer(0), vec![0]);
        assert_eq!(coefficient_group_class(&f, 0).unwrap(), Coefficients::Z);
    }
}
