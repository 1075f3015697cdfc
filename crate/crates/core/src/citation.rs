//! Tags naming the results a verdict relies on.
//!
//! Every computed verdict carries the list of results it applied so that a
//! reader can tell a theorem-backed answer from a database lookup.

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Citation {
    /// `N(f₁, f₂) ≤ MCC(f₁, f₂)`, and `N` is symmetric and homotopy invariant.
    NielsenLowerBound,
    /// `MCC ≤ #R(f₁, f₂)` when the target has dimension other than 2.
    ReidemeisterUpperBound,
    /// Path components of the path space correspond to Reidemeister classes.
    ReidemeisterBijection,
    /// `MCC = N` whenever `m < 2n − 2`.
    WeckenRange,
    /// For circle targets `N` is the index of the image of `f₁* − f₂*`, equals `MCC`,
    /// and looseness is equivalent to homotopy.
    CircleTarget,
    /// On a Lie group target `N(f₁, f₂) = N(f₁·f₂⁻¹, const)` is `0` or `#coker`.
    LieGroupReduction,
    /// Fiber homotopy type of the path space over a circle target.
    CircleFiberType,
    /// `ω̃_k = deg̃_k(f₁) − (−1)^{k(n−1)} deg̃_k(f₂)` on sphere targets.
    SphereOmegaFormula,
    /// Forced 2-torsion of `ω̃_k` for the parity classes of `(n, k)`.
    TorsionParity,
    /// Sphere pairs: loose iff `f₁ ∼ a∘f₂`, otherwise `MCC = 1`.
    SphereAntipodalCriterion,
    /// Γ is injective in the stable range `m < 2n − 1`.
    StableRangeInjectivity,
    /// Γ is injective when `m − n ≤ 3`.
    LowCodimensionInjectivity,
    /// Listed dimension pairs where Γ fails to be injective, so `N = 0` does not imply looseness.
    NonInjectiveGamma,
    /// Sign rules for loop inversion, reflections and the antipodal map on Γ-vectors.
    SignActions,
    /// `ℤ` versus `ℤ/2` coefficients from `w₁(M) + f₁*(w₁(N))` on the stabilizer.
    OrientationCoefficients,
    /// Multiple-point invariants `h₁`, `h₂` of framed immersions with a height function.
    SelfIntersectionInvariants,
}

impl Citation {
    pub const ALL: [Citation; 16] = [
        Citation::NielsenLowerBound,
        Citation::ReidemeisterUpperBound,
        Citation::ReidemeisterBijection,
        Citation::WeckenRange,
        Citation::CircleTarget,
        Citation::LieGroupReduction,
        Citation::CircleFiberType,
        Citation::SphereOmegaFormula,
        Citation::TorsionParity,
        Citation::SphereAntipodalCriterion,
        Citation::StableRangeInjectivity,
        Citation::LowCodimensionInjectivity,
        Citation::NonInjectiveGamma,
        Citation::SignActions,
        Citation::OrientationCoefficients,
        Citation::SelfIntersectionInvariants,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Citation::NielsenLowerBound => "nielsen-lower-bound",
            Citation::ReidemeisterUpperBound => "reidemeister-upper-bound",
            Citation::ReidemeisterBijection => "reidemeister-bijection",
            Citation::WeckenRange => "wecken-range",
            Citation::CircleTarget => "circle-target",
            Citation::LieGroupReduction => "lie-group-reduction",
            Citation::CircleFiberType => "circle-fiber-type",
            Citation::SphereOmegaFormula => "sphere-omega-formula",
            Citation::TorsionParity => "torsion-parity",
            Citation::SphereAntipodalCriterion => "sphere-antipodal-criterion",
            Citation::StableRangeInjectivity => "stable-range-injectivity",
            Citation::LowCodimensionInjectivity => "low-codimension-injectivity",
            Citation::NonInjectiveGamma => "non-injective-gamma",
            Citation::SignActions => "sign-actions",
            Citation::OrientationCoefficients => "orientation-coefficients",
            Citation::SelfIntersectionInvariants => "self-intersection-invariants",
        }
    }

    /// The module whose operations implement this result.
    pub fn module(self) -> &'static str {
        match self {
            Citation::NielsenLowerBound | Citation::ReidemeisterUpperBound | Citation::ReidemeisterBijection => {
                "reidemeister"
            }
            Citation::CircleTarget | Citation::LieGroupReduction | Citation::CircleFiberType => "circle",
            Citation::WeckenRange
            | Citation::SphereOmegaFormula
            | Citation::TorsionParity
            | Citation::SphereAntipodalCriterion
            | Citation::StableRangeInjectivity
            | Citation::LowCodimensionInjectivity
            | Citation::NonInjectiveGamma
            | Citation::SignActions => "sphere",
            Citation::OrientationCoefficients => "orientation",
            Citation::SelfIntersectionInvariants => "immersion",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Citation> {
        Citation::ALL.into_iter().find(|c| c.tag() == tag)
    }
}

impl Serialize for Citation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}
