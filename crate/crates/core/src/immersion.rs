//! Framed immersed curves in the plane with a height function.
//!
//! A closed polygon `e′ : S¹ → ℝ²` together with heights `e″` lifts to an
//! embedding `(e′, e″)` into `ℝ³` as long as the two branches through every
//! double point sit at different heights. The double points, ordered by
//! height and signed, give `h₂ ∈ π^S_0 = ℤ`; the framed circle itself gives
//! `h₁ ∈ π^S_1 = ℤ/2`.
//!
//! Coordinates and heights are integers so that every genericity test is
//! exact. Inputs that are not generic are rejected, never perturbed.

use std::collections::HashSet;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Bound on absolute coordinates and heights; keeps all products within `i128`.
pub const COORD_LIMIT: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("component {component}: a closed polygon needs at least 3 vertices, found {found}")]
    TooFewVertices { component: usize, found: usize },
    #[error("component {component}: {found} heights for {expected} vertices")]
    HeightCount { component: usize, expected: usize, found: usize },
    #[error("component {component}: coordinate or height {value} exceeds the limit {COORD_LIMIT}")]
    OutOfRange { component: usize, value: i64 },
    #[error("component {component}: vertices {index} and {next} coincide")]
    RepeatedVertex { component: usize, index: usize, next: usize },
    #[error("component {component}: the polygon doubles back on itself at vertex {vertex}")]
    Backtrack { component: usize, vertex: usize },
    #[error("edges {a:?} and {b:?} overlap along a segment")]
    Overlap { a: (usize, usize), b: (usize, usize) },
    #[error("edges {a:?} and {b:?} meet at a vertex instead of crossing transversally")]
    VertexOnEdge { a: (usize, usize), b: (usize, usize) },
    #[error("three or more branches pass through ({x}, {y})")]
    TriplePoint { x: f64, y: f64 },
    #[error("edges {a:?} and {b:?} cross at equal heights, so the lift is not an embedding")]
    EqualHeights { a: (usize, usize), b: (usize, usize) },
    #[error("malformed curve file: {0}")]
    Malformed(String),
}

/// One closed polygonal component with its heights and framing twist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramedImmersedCurve {
    pub vertices: Vec<[i64; 2]>,
    pub heights: Vec<i64>,
    /// Full turns of the normal frame relative to the tangent-normal frame.
    #[serde(default)]
    pub twist: i64,
}

impl FramedImmersedCurve {
    pub fn new(vertices: Vec<[i64; 2]>, heights: Vec<i64>, twist: i64) -> Result<Self, CurveError> {
        let c = FramedImmersedCurve { vertices, heights, twist };
        c.check_local(0)?;
        Ok(c)
    }

    /// Reads either a single curve or `{"components": [...]}` with exactly one entry.
    pub fn from_json(text: &str) -> Result<Self, CurveError> {
        let mut im = FramedImmersion::from_json(text)?;
        if im.components.len() != 1 {
            return Err(CurveError::Malformed(format!("expected one component, found {}", im.components.len())));
        }
        Ok(im.components.remove(0))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks that need no edge-pair enumeration.
    fn check_local(&self, component: usize) -> Result<(), CurveError> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(CurveError::TooFewVertices { component, found: n });
        }
        if self.heights.len() != n {
            return Err(CurveError::HeightCount { component, expected: n, found: self.heights.len() });
        }
        for &value in self.vertices.iter().flatten().chain(&self.heights) {
            if value.abs() > COORD_LIMIT {
                return Err(CurveError::OutOfRange { component, value });
            }
        }
        for i in 0..n {
            let next = (i + 1) % n;
            if self.vertices[i] == self.vertices[next] {
                return Err(CurveError::RepeatedVertex { component, index: i, next });
            }
        }
        for i in 0..n {
            let (a, b) = (self.direction(i + n - 1), self.direction(i));
            if cross(a, b) == 0 && dot(a, b) < 0 {
                return Err(CurveError::Backtrack { component, vertex: i });
            }
        }
        Ok(())
    }

    fn direction(&self, edge: usize) -> [i64; 2] {
        let n = self.vertices.len();
        let (p, q) = (self.vertices[edge % n], self.vertices[(edge + 1) % n]);
        [q[0] - p[0], q[1] - p[1]]
    }

    /// Winding number of the tangent direction: the sum of turning angles over `2π`.
    pub fn rotation_number(&self) -> i64 {
        let n = self.vertices.len();
        let total: f64 = (0..n)
            .map(|i| {
                let (a, b) = (self.direction(i + n - 1), self.direction(i));
                (cross(a, b) as f64).atan2(dot(a, b) as f64)
            })
            .sum();
        (total / TAU).round() as i64
    }

    /// Heights negated.
    pub fn height_mirror(&self) -> Self {
        FramedImmersedCurve { heights: self.heights.iter().map(|h| -h).collect(), ..self.clone() }
    }

    /// Vertices relabelled to start at `shift`.
    pub fn rotate_labels(&self, shift: usize) -> Self {
        let mut c = self.clone();
        c.vertices.rotate_left(shift % self.len());
        c.heights.rotate_left(shift % self.len());
        c
    }

    pub fn translated(&self, v: [i64; 2]) -> Self {
        let vertices = self.vertices.iter().map(|p| [p[0] + v[0], p[1] + v[1]]).collect();
        FramedImmersedCurve { vertices, ..self.clone() }
    }

    /// Rotation of the plane by a quarter turn, counterclockwise.
    pub fn quarter_turn(&self) -> Self {
        let vertices = self.vertices.iter().map(|p| [-p[1], p[0]]).collect();
        FramedImmersedCurve { vertices, ..self.clone() }
    }
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

fn dot(a: [i64; 2], b: [i64; 2]) -> i128 {
    a[0] as i128 * b[0] as i128 + a[1] as i128 * b[1] as i128
}

/// Where a double point sits on one branch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchPoint {
    pub component: usize,
    pub edge: usize,
    /// Curve parameter `edge + s` with `s ∈ (0, 1)` the position along the edge.
    pub parameter: f64,
    pub height: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublePoint {
    pub point: [f64; 2],
    /// Ordered by (component, edge).
    pub branches: [BranchPoint; 2],
    /// Index into `branches` of the lower branch.
    pub lower: usize,
    /// Orientation sign of (tangent of lower branch, tangent of upper branch).
    pub sign: i8,
}

/// Exact crossing data before conversion to floats.
struct Crossing {
    a: (usize, usize),
    b: (usize, usize),
    /// Parameters `t_a = ta/den`, `t_b = tb/den` with `den > 0`.
    ta: i128,
    tb: i128,
    den: i128,
    /// Intersection point as reduced fractions `(xn/xd, yn/yd)`.
    key: (i128, i128, i128, i128),
    /// Branch heights scaled by `den`.
    ha: i128,
    hb: i128,
    sign: i8,
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduce(num: i128, den: i128) -> (i128, i128) {
    let g = gcd128(num, den).max(1);
    (num / g, den / g)
}

/// A union of framed closed curves, validated as a generic immersion.
#[derive(Clone, Debug)]
pub struct FramedImmersion {
    pub components: Vec<FramedImmersedCurve>,
    double_points: Vec<DoublePoint>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CurveFile {
    Multi { components: Vec<FramedImmersedCurve> },
    Single(FramedImmersedCurve),
}

impl FramedImmersion {
    pub fn new(components: Vec<FramedImmersedCurve>) -> Result<Self, CurveError> {
        for (i, c) in components.iter().enumerate() {
            c.check_local(i)?;
        }
        let double_points = analyse(&components)?;
        Ok(FramedImmersion { components, double_points })
    }

    pub fn from_json(text: &str) -> Result<Self, CurveError> {
        let file: CurveFile = serde_json::from_str(text).map_err(|e| CurveError::Malformed(e.to_string()))?;
        let components = match file {
            CurveFile::Multi { components } => components,
            CurveFile::Single(c) => vec![c],
        };
        Self::new(components)
    }

    pub fn double_points(&self) -> &[DoublePoint] {
        &self.double_points
    }

    /// Double points where both branches belong to `component`.
    pub fn self_crossings(&self, component: usize) -> usize {
        self.double_points
            .iter()
            .filter(|d| d.branches[0].component == component && d.branches[1].component == component)
            .count()
    }

    pub fn h2(&self) -> i64 {
        self.double_points.iter().map(|d| i64::from(d.sign)).sum()
    }

    /// Sum over components of `rotation + twist + 1`, mod 2.
    pub fn h1(&self) -> u8 {
        self.components.iter().map(|c| (c.rotation_number() + c.twist + 1).rem_euclid(2)).sum::<i64>().rem_euclid(2)
            as u8
    }

    pub fn gamma(&self) -> (u8, i64) {
        (self.h1(), self.h2())
    }
}

fn analyse(components: &[FramedImmersedCurve]) -> Result<Vec<DoublePoint>, CurveError> {
    let edges: Vec<(usize, usize)> =
        components.iter().enumerate().flat_map(|(c, curve)| (0..curve.len()).map(move |e| (c, e))).collect();
    let adjacent = |a: (usize, usize), b: (usize, usize)| {
        if a.0 != b.0 {
            return false;
        }
        let n = components[a.0].len();
        a.1 == b.1 || (a.1 + 1) % n == b.1 || (b.1 + 1) % n == a.1
    };

    // Partitioned by first edge; the flattened order is independent of scheduling.
    let per_edge: Vec<Result<Vec<Crossing>, CurveError>> = (0..edges.len())
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            for j in i + 1..edges.len() {
                if adjacent(edges[i], edges[j]) {
                    continue;
                }
                if let Some(c) = intersect(components, edges[i], edges[j])? {
                    found.push(c);
                }
            }
            Ok(found)
        })
        .collect();
    let mut crossings = Vec::new();
    for r in per_edge {
        crossings.extend(r?);
    }

    let mut seen = HashSet::new();
    for c in &crossings {
        if !seen.insert(c.key) {
            let (xn, xd, yn, yd) = c.key;
            return Err(CurveError::TriplePoint { x: xn as f64 / xd as f64, y: yn as f64 / yd as f64 });
        }
    }
    crossings.sort_by(|x, y| x.a.cmp(&y.a).then(x.b.cmp(&y.b)));
    Ok(crossings.into_iter().map(to_double_point).collect())
}

fn intersect(
    components: &[FramedImmersedCurve],
    a: (usize, usize),
    b: (usize, usize),
) -> Result<Option<Crossing>, CurveError> {
    let (ca, cb) = (&components[a.0], &components[b.0]);
    let p = ca.vertices[a.1];
    let q = cb.vertices[b.1];
    let r = ca.direction(a.1);
    let s = cb.direction(b.1);
    let qp = [q[0] - p[0], q[1] - p[1]];
    let mut den = cross(r, s);
    let mut tn = cross(qp, s);
    let mut un = cross(qp, r);

    if den == 0 {
        if cross(qp, r) != 0 {
            return Ok(None);
        }
        // Collinear: project B's endpoints onto A's direction.
        let rr = dot(r, r);
        let t0 = dot(qp, r);
        let t1 = t0 + dot(s, r);
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        if hi < 0 || lo > rr {
            return Ok(None);
        }
        return Err(if hi == 0 || lo == rr { CurveError::VertexOnEdge { a, b } } else { CurveError::Overlap { a, b } });
    }
    if den < 0 {
        (den, tn, un) = (-den, -tn, -un);
    }
    if tn < 0 || tn > den || un < 0 || un > den {
        return Ok(None);
    }
    if tn == 0 || tn == den || un == 0 || un == den {
        return Err(CurveError::VertexOnEdge { a, b });
    }

    let xn = p[0] as i128 * den + tn * r[0] as i128;
    let yn = p[1] as i128 * den + tn * r[1] as i128;
    let (xn, xd) = reduce(xn, den);
    let (yn, yd) = reduce(yn, den);

    let na = ca.len();
    let nb = cb.len();
    let (ha0, ha1) = (ca.heights[a.1] as i128, ca.heights[(a.1 + 1) % na] as i128);
    let (hb0, hb1) = (cb.heights[b.1] as i128, cb.heights[(b.1 + 1) % nb] as i128);
    let ha = ha0 * den + tn * (ha1 - ha0);
    let hb = hb0 * den + un * (hb1 - hb0);
    if ha == hb {
        return Err(CurveError::EqualHeights { a, b });
    }
    let (lower, upper) = if ha < hb { (r, s) } else { (s, r) };
    let sign = if cross(lower, upper) > 0 { 1 } else { -1 };
    Ok(Some(Crossing { a, b, ta: tn, tb: un, den, key: (xn, xd, yn, yd), ha, hb, sign }))
}

fn to_double_point(c: Crossing) -> DoublePoint {
    let den = c.den as f64;
    let branch = |(component, edge): (usize, usize), t: i128, h: i128| BranchPoint {
        component,
        edge,
        parameter: edge as f64 + t as f64 / den,
        height: h as f64 / den,
    };
    DoublePoint {
        point: [c.key.0 as f64 / c.key.1 as f64, c.key.2 as f64 / c.key.3 as f64],
        lower: if c.ha < c.hb { 0 } else { 1 },
        branches: [branch(c.a, c.ta, c.ha), branch(c.b, c.tb, c.hb)],
        sign: c.sign,
    }
}

/// Transverse self-crossings, ordered by the pair of edges involved.
pub fn double_points(c: &FramedImmersedCurve) -> Result<Vec<DoublePoint>, CurveError> {
    Ok(FramedImmersion::new(vec![c.clone()])?.double_points)
}

/// Signed count of double points.
pub fn h2_class(c: &FramedImmersedCurve) -> Result<i64, CurveError> {
    Ok(FramedImmersion::new(vec![c.clone()])?.h2())
}

/// Tangent winding number; validates genericity first.
pub fn rotation_number(c: &FramedImmersedCurve) -> Result<i64, CurveError> {
    FramedImmersion::new(vec![c.clone()])?;
    Ok(c.rotation_number())
}

/// `(rotation + twist + 1) mod 2`.
pub fn h1_class(c: &FramedImmersedCurve) -> Result<u8, CurveError> {
    Ok(FramedImmersion::new(vec![c.clone()])?.h1())
}

pub fn gamma_of_curve(c: &FramedImmersedCurve) -> Result<(u8, i64), CurveError> {
    Ok(FramedImmersion::new(vec![c.clone()])?.gamma())
}
