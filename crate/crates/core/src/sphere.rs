//! Coincidences of maps `S^m → S^n`.
//!
//! A homotopy class is described by its Γ-vector: the stabilized James–Hopf
//! invariants `Γ_k ∈ π^S_{m−1−k(n−1)}` for `1 ≤ k ≤ k_max`. Γ-vectors are
//! supplied by the caller; the crate does not compute them from homotopy
//! classes. From two Γ-vectors it forms `ω̃`, decides `N ∈ {0, 1}`, and
//! decides `MCC` when Γ is known to be injective.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::abelian::{AlgebraError, Cardinality, FgAbelianGroup, GroupElement};
use crate::citation::Citation;
use crate::data::{parse_verified, read_data_file, DataError};

const STEMS_FILE: &str = "stems.json";
const GAMMA_DB_FILE: &str = "gamma_db.json";
const EMBEDDED_STEMS: &str = include_str!("../data/stems.json");
const EMBEDDED_GAMMA_DB: &str = include_str!("../data/gamma_db.json");

#[derive(Debug, Error)]
pub enum SphereError {
    #[error("target dimension n = {0} must be at least 2")]
    TargetDimension(u32),
    #[error("source dimension m = {0} must be at least 1")]
    SourceDimension(u32),
    #[error("Γ-vectors have dimensions (m, n) = {left:?} and {right:?}")]
    DimensionMismatch { left: (u32, u32), right: (u32, u32) },
    #[error("stable stem {0} is not in the shipped table")]
    StemUnavailable(u32),
    #[error("expected {expected} components (k = 1..={expected}), found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("component k = {k}: {source}")]
    Component { k: u32, source: AlgebraError },
    #[error("component k = {k} has order {order} in {group}, but 2·Γ_{k} = 0 is forced for n = {n}")]
    TorsionViolation { k: u32, n: u32, order: Cardinality, group: FgAbelianGroup },
    #[error("malformed Γ-vector: {0}")]
    Malformed(String),
    #[error(transparent)]
    Data(#[from] DataError),
}

fn check_dims(m: u32, n: u32) -> Result<(), SphereError> {
    if n < 2 {
        return Err(SphereError::TargetDimension(n));
    }
    if m < 1 {
        return Err(SphereError::SourceDimension(m));
    }
    Ok(())
}

/// Largest `k` with `m − 1 − k(n − 1) ≥ 0`.
pub fn k_max(m: u32, n: u32) -> Result<u32, SphereError> {
    check_dims(m, n)?;
    Ok((m - 1) / (n - 1))
}

/// Stem index `m − 1 − k(n − 1)` holding `Γ_k`.
pub fn stem_index(m: u32, n: u32, k: u32) -> Option<u32> {
    (m - 1).checked_sub(k * (n - 1))
}

/// `2·ω̃_k = 0` is forced when `k` is even and `n` odd, or when `n` is even and
/// `k ≡ 3, 0 (mod 4)`.
pub fn torsion_forced(n: u32, k: u32) -> bool {
    (k.is_multiple_of(2) && n % 2 == 1) || (n.is_multiple_of(2) && matches!(k % 4, 3 | 0))
}

fn binom2(k: u32) -> u32 {
    k * k.saturating_sub(1) / 2
}

/// Exponent `k + (n−1)·C(k,2)` in the relation `Γ_k = −(−1)^e Γ_k`; when it is
/// even the relation reads `2·Γ_k = 0`.
pub fn gamma_exponent(n: u32, k: u32) -> u32 {
    k + (n - 1) * binom2(k)
}

/// Sign `(−1)^{k(n−1)}` attached to the second map in `ω̃_k`.
pub fn omega_sign(n: u32, k: u32) -> i64 {
    if (k * (n - 1)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn reflection_sign(k: u32) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The antipodal map is homotopic to the `(n+1)`-fold reflection.
pub fn antipodal_sign(n: u32, k: u32) -> i64 {
    if (k * (n + 1)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `−(−1)^{k + (n−1)·C(k−1,2)}`, the loop-inversion sign on the `k`-th
/// multiple-point component.
pub fn involution_sign(n: u32, k: u32) -> i64 {
    if (k + (n - 1) * binom2(k.saturating_sub(1))).is_multiple_of(2) {
        -1
    } else {
        1
    }
}

#[derive(Clone, Debug)]
pub struct StemEntry {
    pub group: FgAbelianGroup,
    /// Certified entries are the ones this crate treats as ground truth;
    /// the rest are transcribed from external tables.
    pub certified: bool,
}

/// `π^S_k` for `0 ≤ k ≤ max_stem`, as shipped.
#[derive(Clone, Debug)]
pub struct StableStemTable {
    entries: Vec<StemEntry>,
}

impl StableStemTable {
    pub fn from_json(file: &str, text: &str) -> Result<Self, DataError> {
        let invalid = |message: String| DataError::Invalid { file: file.to_string(), message };
        let v = parse_verified(file, text)?;
        let stems = v.get("stems").and_then(Value::as_object).ok_or_else(|| invalid("missing \"stems\" object".into()))?;
        let certified: Vec<u64> = v
            .get("certified")
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(Value::as_u64).collect())
            .unwrap_or_default();
        let mut entries = Vec::with_capacity(stems.len());
        for k in 0..stems.len() {
            let factors = stems
                .get(&k.to_string())
                .ok_or_else(|| invalid(format!("stems must be listed contiguously from 0; stem {k} is missing")))?;
            let factors: Vec<i64> =
                serde_json::from_value(factors.clone()).map_err(|e| invalid(format!("stem {k}: {e}")))?;
            let group = FgAbelianGroup::new(factors).map_err(|e| invalid(format!("stem {k}: {e}")))?;
            entries.push(StemEntry { group, certified: certified.contains(&(k as u64)) });
        }
        let table = StableStemTable { entries };
        if table.get(0) != Some(&FgAbelianGroup::integers()) {
            return Err(invalid("stem 0 must be Z".into()));
        }
        if table.get(3) != Some(&FgAbelianGroup::cyclic(24)) {
            return Err(invalid("stem 3 must be Z/24".into()));
        }
        Ok(table)
    }

    /// The table from `NIELSEN_DATA_DIR`, or the embedded copy.
    pub fn load() -> Result<Self, DataError> {
        Self::from_json(STEMS_FILE, &read_data_file(STEMS_FILE, EMBEDDED_STEMS)?)
    }

    /// The embedded table, parsed once.
    pub fn shipped() -> &'static StableStemTable {
        static TABLE: OnceLock<StableStemTable> = OnceLock::new();
        TABLE.get_or_init(|| Self::from_json(STEMS_FILE, EMBEDDED_STEMS).expect("embedded stems.json is valid"))
    }

    pub fn get(&self, k: u32) -> Option<&FgAbelianGroup> {
        self.entries.get(k as usize).map(|e| &e.group)
    }

    pub fn entry(&self, k: u32) -> Option<&StemEntry> {
        self.entries.get(k as usize)
    }

    pub fn max_stem(&self) -> u32 {
        self.entries.len() as u32 - 1
    }

    pub fn entries(&self) -> &[StemEntry] {
        &self.entries
    }
}

/// One component of a Γ-vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaComponent {
    pub k: u32,
    pub stem: u32,
    #[serde(serialize_with = "display")]
    pub group: FgAbelianGroup,
    pub value: GroupElement,
}

fn display<S: serde::Serializer, T: std::fmt::Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// `(Γ_1, …, Γ_{k_max})` for a pair of dimensions `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaVector {
    pub m: u32,
    pub n: u32,
    pub components: Vec<GammaComponent>,
}

impl GammaVector {
    /// Builds a validated Γ-vector. `values[k−1]` holds the coordinates of
    /// `Γ_k`; every component must satisfy the forced 2-torsion.
    pub fn new(m: u32, n: u32, values: &[Vec<i64>], stems: &StableStemTable) -> Result<Self, SphereError> {
        let v = Self::unchecked(m, n, values, stems)?;
        v.validate()?;
        Ok(v)
    }

    fn unchecked(m: u32, n: u32, values: &[Vec<i64>], stems: &StableStemTable) -> Result<Self, SphereError> {
        let kmax = k_max(m, n)?;
        if values.len() != kmax as usize {
            return Err(SphereError::ComponentCount { expected: kmax as usize, found: values.len() });
        }
        let components = (1..=kmax)
            .zip(values)
            .map(|(k, coords)| {
                let stem = stem_index(m, n, k).expect("k ≤ k_max");
                let group = stems.get(stem).ok_or(SphereError::StemUnavailable(stem))?.clone();
                let value = group.element(coords).map_err(|source| SphereError::Component { k, source })?;
                Ok(GammaComponent { k, stem, group, value })
            })
            .collect::<Result<Vec<_>, SphereError>>()?;
        Ok(GammaVector { m, n, components })
    }

    pub fn zero(m: u32, n: u32, stems: &StableStemTable) -> Result<Self, SphereError> {
        let kmax = k_max(m, n)?;
        let values: Vec<Vec<i64>> = (1..=kmax)
            .map(|k| {
                let stem = stem_index(m, n, k).expect("k ≤ k_max");
                stems.get(stem).map(|g| vec![0; g.num_generators()]).ok_or(SphereError::StemUnavailable(stem))
            })
            .collect::<Result<_, _>>()?;
        Self::new(m, n, &values, stems)
    }

    /// Parses a JSON array with one entry per `k`: an array of coordinates,
    /// or a bare integer for a stem with one generator.
    pub fn from_json(m: u32, n: u32, text: &str, stems: &StableStemTable) -> Result<Self, SphereError> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Comp {
            Scalar(i64),
            Coords(Vec<i64>),
        }
        let raw: Vec<Comp> = serde_json::from_str(text).map_err(|e| SphereError::Malformed(e.to_string()))?;
        let values: Vec<Vec<i64>> = raw
            .into_iter()
            .map(|c| match c {
                Comp::Scalar(x) => vec![x],
                Comp::Coords(v) => v,
            })
            .collect();
        Self::new(m, n, &values, stems)
    }

    /// Rejects components violating `2·Γ_k = 0` where it is forced.
    pub fn validate(&self) -> Result<(), SphereError> {
        for c in &self.components {
            if torsion_forced(self.n, c.k) && !c.value.scale(2).is_zero() {
                return Err(SphereError::TorsionViolation {
                    k: c.k,
                    n: self.n,
                    order: c.value.order(),
                    group: c.group.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> (u32, u32) {
        (self.m, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.value.is_zero())
    }

    pub fn values(&self) -> Vec<Vec<i64>> {
        self.components.iter().map(|c| c.value.coordinates().to_vec()).collect()
    }

    fn map_signs(&self, sign: impl Fn(u32) -> i64) -> GammaVector {
        let mut out = self.clone();
        for c in &mut out.components {
            c.value = c.value.scale(sign(c.k));
        }
        out
    }
}

fn same_dims(a: &GammaVector, b: &GammaVector) -> Result<(), SphereError> {
    if a.dims() != b.dims() {
        return Err(SphereError::DimensionMismatch { left: a.dims(), right: b.dims() });
    }
    Ok(())
}

/// `ω̃_k = d1_k − (−1)^{k(n−1)} d2_k`.
pub fn omega_tilde(d1: &GammaVector, d2: &GammaVector) -> Result<GammaVector, SphereError> {
    same_dims(d1, d2)?;
    let n = d1.n;
    let mut out = d1.clone();
    for (c, c2) in out.components.iter_mut().zip(&d2.components) {
        c.value = c.value.sub(&c2.value.scale(omega_sign(n, c.k)));
    }
    out.validate()?;
    Ok(out)
}

/// `N(f₁, f₂)` for sphere targets: 0 iff `ω̃` vanishes.
pub fn nielsen_spheres(w: &GammaVector) -> u64 {
    u64::from(!w.is_zero())
}

/// Postcomposition with a reflection of `S^n`.
pub fn reflection_action(v: &GammaVector) -> GammaVector {
    v.map_signs(reflection_sign)
}

/// Postcomposition with the antipodal map of `S^n`.
pub fn antipodal_action(v: &GammaVector) -> GammaVector {
    let n = v.n;
    v.map_signs(|k| antipodal_sign(n, k))
}

/// Loop inversion acting on the multiple-point components.
pub fn involution_action(v: &GammaVector) -> GammaVector {
    let n = v.n;
    v.map_signs(|k| involution_sign(n, k))
}

/// `MCC = N` is guaranteed when `m < 2n − 2`.
pub fn wecken_range(m: u32, n: u32) -> bool {
    m + 2 < 2 * n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Injectivity {
    Injective,
    NotInjective,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityRecord {
    pub m: u32,
    pub n: u32,
    pub verdict: Injectivity,
    pub source: Option<Citation>,
    pub reason: String,
}

/// The Γ-injectivity database.
#[derive(Clone, Debug)]
pub struct InjectivityDb {
    sporadic: Vec<(u32, u32)>,
    whitehead_excluded: Vec<u32>,
    offset: u32,
    offset_range: (u32, u32),
}

impl InjectivityDb {
    pub fn from_json(file: &str, text: &str) -> Result<Self, DataError> {
        #[derive(Deserialize)]
        struct Whitehead {
            exclude_n: Vec<u32>,
        }
        #[derive(Deserialize)]
        struct Offset {
            m_minus_n: u32,
            n_min: u32,
            n_max: u32,
        }
        #[derive(Deserialize)]
        struct Raw {
            not_injective_sporadic: Vec<(u32, u32)>,
            not_injective_whitehead: Whitehead,
            not_injective_offset: Offset,
        }
        let v = parse_verified(file, text)?;
        let raw: Raw =
            serde_json::from_value(v).map_err(|e| DataError::Invalid { file: file.to_string(), message: e.to_string() })?;
        let db = InjectivityDb {
            sporadic: raw.not_injective_sporadic,
            whitehead_excluded: raw.not_injective_whitehead.exclude_n,
            offset: raw.not_injective_offset.m_minus_n,
            offset_range: (raw.not_injective_offset.n_min, raw.not_injective_offset.n_max),
        };
        // A listed failure inside an injective range would make the database contradict itself.
        for &(m, n) in &db.sporadic {
            if injective_by_rule(m, n).is_some() {
                return Err(DataError::Invalid {
                    file: file.to_string(),
                    message: format!("({m}, {n}) is listed as non-injective but lies in an injective range"),
                });
            }
        }
        Ok(db)
    }

    pub fn load() -> Result<Self, DataError> {
        Self::from_json(GAMMA_DB_FILE, &read_data_file(GAMMA_DB_FILE, EMBEDDED_GAMMA_DB)?)
    }

    pub fn shipped() -> &'static InjectivityDb {
        static DB: OnceLock<InjectivityDb> = OnceLock::new();
        DB.get_or_init(|| Self::from_json(GAMMA_DB_FILE, EMBEDDED_GAMMA_DB).expect("embedded gamma_db.json is valid"))
    }

    fn not_injective(&self, m: u32, n: u32) -> Option<String> {
        if self.sporadic.contains(&(m, n)) {
            return Some(format!("({m}, {n}) is a listed exceptional pair"));
        }
        if m + 1 == 2 * n && n % 2 == 1 && !self.whitehead_excluded.contains(&n) {
            return Some(format!("m = 2n - 1 with n = {n} odd and not 1, 3, 7"));
        }
        if m == n + self.offset && (self.offset_range.0..=self.offset_range.1).contains(&n) {
            return Some(format!("m = n + {} with {} <= n <= {}", self.offset, self.offset_range.0, self.offset_range.1));
        }
        None
    }

    /// Injective in the stable range or for `m − n ≤ 3`; non-injective on the
    /// listed pairs; unknown otherwise.
    pub fn gamma_injectivity(&self, m: u32, n: u32) -> Result<InjectivityRecord, SphereError> {
        check_dims(m, n)?;
        if let Some((source, reason)) = injective_by_rule(m, n) {
            return Ok(InjectivityRecord { m, n, verdict: Injectivity::Injective, source: Some(source), reason });
        }
        if let Some(reason) = self.not_injective(m, n) {
            return Ok(InjectivityRecord {
                m,
                n,
                verdict: Injectivity::NotInjective,
                source: Some(Citation::NonInjectiveGamma),
                reason,
            });
        }
        Ok(InjectivityRecord {
            m,
            n,
            verdict: Injectivity::Unknown,
            source: None,
            reason: "no injectivity result covers this pair".into(),
        })
    }
}

fn injective_by_rule(m: u32, n: u32) -> Option<(Citation, String)> {
    if m + 1 < 2 * n {
        Some((Citation::StableRangeInjectivity, "stable range m < 2n - 1".into()))
    } else if m <= n + 3 {
        Some((Citation::LowCodimensionInjectivity, "m - n <= 3".into()))
    } else {
        None
    }
}

/// Shorthand for the shipped database.
pub fn gamma_injectivity(m: u32, n: u32) -> Result<InjectivityRecord, SphereError> {
    InjectivityDb::shipped().gamma_injectivity(m, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MccVerdict {
    Value(u64),
    Unknown,
}

impl Serialize for MccVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MccVerdict::Value(v) => s.serialize_u64(*v),
            MccVerdict::Unknown => s.serialize_str("unknown"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereVerdict {
    #[serde(rename = "N")]
    pub nielsen: u64,
    #[serde(rename = "MCC")]
    pub mcc: MccVerdict,
    pub omega: GammaVector,
    pub injectivity: InjectivityRecord,
    pub wecken_range: bool,
    pub explanation: String,
    pub caveats: Vec<String>,
    pub applied: Vec<Citation>,
}

/// Decides `MCC(f₁, f₂)` for `f₁, f₂ : S^m → S^n` from their Γ-vectors.
pub fn mcc_spheres(d1: &GammaVector, d2: &GammaVector, db: &InjectivityDb) -> Result<SphereVerdict, SphereError> {
    same_dims(d1, d2)?;
    let (m, n) = d1.dims();
    let omega = omega_tilde(d1, d2)?;
    let nielsen = nielsen_spheres(&omega);
    let injectivity = db.gamma_injectivity(m, n)?;
    let wecken = wecken_range(m, n);
    let mut applied = vec![Citation::SphereOmegaFormula, Citation::NielsenLowerBound];
    let mut caveats = Vec::new();
    if let Some(c) = injectivity.source {
        applied.push(c);
    }

    let (mcc, explanation) = match injectivity.verdict {
        Injectivity::Injective => {
            applied.push(Citation::SphereAntipodalCriterion);
            applied.push(Citation::SignActions);
            if *d1 == antipodal_action(d2) {
                (MccVerdict::Value(0), "f1 is homotopic to a∘f2, so the pair is loose".to_string())
            } else {
                (MccVerdict::Value(1), "f1 is not homotopic to a∘f2; the coincidence set cannot be removed".to_string())
            }
        }
        _ if nielsen == 1 => (MccVerdict::Value(1), "omega is nonzero, so MCC >= N = 1".to_string()),
        Injectivity::NotInjective => {
            caveats.push("Unknown: Γ not injective; N = 0 but pair may be non-loose".to_string());
            (MccVerdict::Unknown, "N = 0 but pair may be non-loose".to_string())
        }
        Injectivity::Unknown => {
            caveats.push("Unknown: Γ not known to be injective for these dimensions".to_string());
            (MccVerdict::Unknown, "N = 0 and Γ-injectivity is undecided".to_string())
        }
    };
    if wecken {
        applied.push(Citation::WeckenRange);
        caveats.push("MCC = N guaranteed".to_string());
    }
    if omega.components.iter().any(|c| torsion_forced(n, c.k)) {
        applied.push(Citation::TorsionParity);
    }
    applied.sort();
    applied.dedup();
    Ok(SphereVerdict { nielsen, mcc, omega, injectivity, wecken_range: wecken, explanation, caveats, applied })
}
