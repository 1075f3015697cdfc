//! Maps into the circle.
//!
//! A map `M → S¹` is determined up to homotopy by its effect on `H₁(M; ℤ)`,
//! so a pair of maps is represented only by the difference
//! `δ = f₁* − f₂* : H₁(M) → ℤ`. With `δ(H₁(M)) = dℤ`, `d ≥ 0`, the Nielsen
//! number and the minimal number of coincidence components are both `d`, and
//! `d = 0` is equivalent to each of the six looseness conditions.
//!
//! Torsion in `H₁(M)` is accepted: any homomorphism to `ℤ` kills it, and
//! [`GroupHom`] rejects matrices that do not.

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{gcd, AlgebraError, Cardinality, FgAbelianGroup, GroupHom, Subgroup};
use crate::citation::Citation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircleError {
    #[error("expected a homomorphism into H1(S^1) = Z, found codomain {0}")]
    NotCircleTarget(FgAbelianGroup),
    #[error("target fundamental group {expected} does not match the codomain {found} of the maps")]
    TargetMismatch { expected: FgAbelianGroup, found: FgAbelianGroup },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Homotopy data of a pair `f₁, f₂ : M → S¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleMapPairClass {
    delta: GroupHom,
}

impl CircleMapPairClass {
    pub fn new(delta: GroupHom) -> Result<Self, CircleError> {
        if !delta.codomain().is_integers() {
            return Err(CircleError::NotCircleTarget(delta.codomain().clone()));
        }
        Ok(CircleMapPairClass { delta })
    }

    /// `H₁(M) = ℤ^k` with `δ` given as a row vector.
    pub fn from_row(delta: &[i64]) -> Self {
        CircleMapPairClass { delta: GroupHom::row_to_integers(delta) }
    }

    pub fn from_maps(f1: &GroupHom, f2: &GroupHom) -> Result<Self, CircleError> {
        Self::new(f1.sub(f2)?)
    }

    pub fn h1(&self) -> &FgAbelianGroup {
        self.delta.domain()
    }

    pub fn delta(&self) -> &GroupHom {
        &self.delta
    }

    /// The pair `(f₂, f₁)`.
    pub fn swapped(&self) -> Self {
        CircleMapPairClass { delta: self.delta.neg() }
    }

    /// Precompose `δ` with an automorphism (or any endomorphism) of `H₁(M)`.
    pub fn precompose(&self, phi: &GroupHom) -> Result<Self, CircleError> {
        Self::new(self.delta.compose(phi)?)
    }
}

/// The `d ≥ 0` with `(f₁* − f₂*)(H₁(M)) = d·ℤ`.
pub fn circle_nielsen(pair: &CircleMapPairClass) -> u64 {
    let m = pair.delta().matrix();
    (0..m.cols()).fold(0i64, |g, j| gcd(g, m[(0, j)])) as u64
}

/// Equal to the Nielsen number for circle targets.
pub fn circle_mcc(pair: &CircleMapPairClass) -> u64 {
    circle_nielsen(pair)
}

/// The six equivalent looseness conditions; they always share one truth value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LoosenessConditions {
    /// `f₁ ≃ f₂`
    #[serde(rename = "i")]
    pub homotopic: bool,
    #[serde(rename = "ii")]
    pub loose: bool,
    /// `N(f₁, f₂) = 0`
    #[serde(rename = "iii")]
    pub nielsen_vanishes: bool,
    /// `ω̃(f₁, f₂) = 0`
    #[serde(rename = "iv")]
    pub omega_tilde_vanishes: bool,
    /// `ω(f₁, f₂) = 0`
    #[serde(rename = "v")]
    pub omega_vanishes: bool,
    /// Hurewicz image `μ(ω) = 0 ∈ H^1(M; ℤ)`
    #[serde(rename = "vi")]
    pub hurewicz_vanishes: bool,
}

impl LoosenessConditions {
    pub fn all(value: bool) -> Self {
        LoosenessConditions {
            homotopic: value,
            loose: value,
            nielsen_vanishes: value,
            omega_tilde_vanishes: value,
            omega_vanishes: value,
            hurewicz_vanishes: value,
        }
    }

    pub fn as_array(&self) -> [bool; 6] {
        [
            self.homotopic,
            self.loose,
            self.nielsen_vanishes,
            self.omega_tilde_vanishes,
            self.omega_vanishes,
            self.hurewicz_vanishes,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoosenessReport {
    #[serde(rename = "N")]
    pub nielsen: u64,
    #[serde(rename = "MCC")]
    pub mcc: u64,
    pub conditions: LoosenessConditions,
    /// `#R = #coker δ`; infinite exactly when `N = 0`.
    pub reidemeister_cardinality: Cardinality,
    pub applied: Vec<Citation>,
}

pub fn looseness_report(pair: &CircleMapPairClass) -> LoosenessReport {
    let nielsen = circle_nielsen(pair);
    LoosenessReport {
        nielsen,
        mcc: circle_mcc(pair),
        conditions: LoosenessConditions::all(nielsen == 0),
        reidemeister_cardinality: pair.delta().cokernel().order(),
        applied: vec![Citation::CircleTarget, Citation::LieGroupReduction, Citation::ReidemeisterBijection],
    }
}

/// Target of [`lie_group_nielsen`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieTarget {
    Circle,
    /// Any other Lie group with abelian fundamental group.
    Group { pi1: FgAbelianGroup },
}

impl LieTarget {
    pub fn pi1(&self) -> FgAbelianGroup {
        match self {
            LieTarget::Circle => FgAbelianGroup::integers(),
            LieTarget::Group { pi1 } => pi1.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LieGroupNielsen {
    Resolved { nielsen: u64 },
    /// Either every Reidemeister class is essential or none is.
    Dichotomy { zero_or: u64 },
}

/// For Lie group targets, `N(f₁, f₂)` is `0` or `#(π₁(N)/(f₁* − f₂*)π₁(M))`.
///
/// Resolved when the cokernel is infinite (then `N = 0`, since `N` is finite)
/// and for the circle; otherwise both values are reported.
pub fn lie_group_nielsen(f1: &GroupHom, f2: &GroupHom, target: &LieTarget) -> Result<LieGroupNielsen, CircleError> {
    let pi1 = target.pi1();
    if f1.codomain() != &pi1 {
        return Err(CircleError::TargetMismatch { expected: pi1, found: f1.codomain().clone() });
    }
    let delta = f1.sub(f2)?;
    let order = delta.cokernel().order();
    Ok(match (target, order) {
        (_, Cardinality::Infinite) => LieGroupNielsen::Resolved { nielsen: 0 },
        (LieTarget::Circle, _) => {
            LieGroupNielsen::Resolved { nielsen: circle_nielsen(&CircleMapPairClass::new(delta)?) }
        }
        (LieTarget::Group { .. }, Cardinality::Finite(n)) => LieGroupNielsen::Dichotomy { zero_or: n },
    })
}

/// Fiber homotopy type of the path space `E(f₁, f₂) → M` over a circle target.
#[derive(Clone, Debug)]
pub enum FiberType {
    /// `f₁ ≃ f₂`: the fiber space is `M × ℤ`.
    Product,
    /// `(M̃ / K) × coker(f₁* − f₂*)` with `K = ker(f₁* − f₂*)`.
    Quotient {
        kernel: Subgroup,
        /// Index of `K` in `π₁(M)`.
        kernel_index: Cardinality,
        components: FgAbelianGroup,
    },
}

impl FiberType {
    pub fn describe(&self) -> String {
        match self {
            FiberType::Product => "M x Z".to_string(),
            FiberType::Quotient { kernel, components, .. } => {
                format!("(universal cover of M / {}) x {}", kernel.group, components)
            }
        }
    }

    pub fn components(&self) -> FgAbelianGroup {
        match self {
            FiberType::Product => FgAbelianGroup::integers(),
            FiberType::Quotient { components, .. } => components.clone(),
        }
    }
}

/// `f1`, `f2` are the induced maps `π₁(M) → π₁(S¹) = ℤ` (π₁(M) abelian here).
pub fn fiber_type(f1: &GroupHom, f2: &GroupHom) -> Result<FiberType, CircleError> {
    let pair = CircleMapPairClass::from_maps(f1, f2)?;
    let delta = pair.delta();
    if delta.is_zero() {
        return Ok(FiberType::Product);
    }
    Ok(FiberType::Quotient {
        kernel: delta.kernel(),
        kernel_index: delta.image().order(),
        components: delta.cokernel().group,
    })
}
