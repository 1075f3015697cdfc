//! Brute-force component counts for linear maps `T^m → S¹`.
//!
//! `f₁(x) = a·x`, `f₂(x) = b·x` (mod 1). The coincidence set is
//! `{x : (a−b)·x ∈ ℤ}`. The torus is cut into `R^m` cells; a cell is marked
//! when its center `x` has `(a−b)·x` within `L/(2R)` of an integer, where
//! `L = Σ|aᵢ−bᵢ|`. Since `L` bounds the variation of `(a−b)·x` across a cell
//! (in the sup norm, scaled), every cell meeting the true set is marked, and
//! the marked cells are grouped by face adjacency with wraparound.
//!
//! Writing the center as `(2i+1)/(2R)`, the test is exact integer arithmetic:
//! with `N = Σ cᵢ(2iᵢ+1)` the cell is marked iff `N mod 2R` lies within `L`
//! of `0` or `2R`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::union_find::UnionFind;

pub const MIN_RESOLUTION: u32 = 64;
pub const MAX_RESOLUTION: u32 = 1 << 14;
/// Largest number of cells in one grid.
pub const MAX_CELLS: u64 = 1 << 27;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("a has {a} entries but b has {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("torus dimension {0} is outside 1..=3")]
    Dimension(usize),
    #[error("resolution {0} must be a power of two between {MIN_RESOLUTION} and {MAX_RESOLUTION}")]
    Resolution(u32),
    #[error("resolution {resolution} in dimension {m} needs more than {MAX_CELLS} cells")]
    TooManyCells { resolution: u32, m: usize },
    #[error("coefficient {0} is too large")]
    Coefficient(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusMapSpec {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub resolution: u32,
}

impl TorusMapSpec {
    pub fn new(a: Vec<i64>, b: Vec<i64>, resolution: u32) -> Result<Self, TorusError> {
        if a.len() != b.len() {
            return Err(TorusError::LengthMismatch { a: a.len(), b: b.len() });
        }
        let m = a.len();
        if !(1..=3).contains(&m) {
            return Err(TorusError::Dimension(m));
        }
        if !resolution.is_power_of_two() || !(MIN_RESOLUTION..=MAX_RESOLUTION).contains(&resolution) {
            return Err(TorusError::Resolution(resolution));
        }
        if (resolution as u64).pow(m as u32) > MAX_CELLS {
            return Err(TorusError::TooManyCells { resolution, m });
        }
        for &x in a.iter().chain(&b) {
            if x.abs() > 1 << 20 {
                return Err(TorusError::Coefficient(x));
            }
        }
        Ok(TorusMapSpec { a, b, resolution })
    }

    pub fn dimension(&self) -> usize {
        self.a.len()
    }

    /// `c = a − b`.
    pub fn difference(&self) -> Vec<i64> {
        self.a.iter().zip(&self.b).map(|(x, y)| x - y).collect()
    }

    pub fn with_resolution(&self, resolution: u32) -> Result<Self, TorusError> {
        Self::new(self.a.clone(), self.b.clone(), resolution)
    }
}

/// Occupancy bitset over `R^m` cells; the last axis varies fastest.
#[derive(Clone, Debug)]
pub struct CoincidenceGrid {
    m: usize,
    resolution: u32,
    shift: u32,
    words: Vec<u64>,
    occupied: u64,
}

impl CoincidenceGrid {
    pub fn dimension(&self) -> usize {
        self.m
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn cells(&self) -> u64 {
        (self.resolution as u64).pow(self.m as u32)
    }

    pub fn occupied(&self) -> u64 {
        self.occupied
    }

    fn linear(&self, coords: &[u32]) -> usize {
        coords.iter().fold(0usize, |acc, &c| (acc << self.shift) | c as usize)
    }

    fn bit(&self, idx: usize) -> bool {
        self.words[idx >> 6] >> (idx & 63) & 1 == 1
    }

    /// Whether the cell with the given per-axis indices is marked.
    pub fn is_marked(&self, coords: &[u32]) -> bool {
        assert_eq!(coords.len(), self.m, "coordinate count");
        self.bit(self.linear(coords))
    }

    /// Component label of every occupied cell, in cell order; labels are
    /// dense and numbered by first appearance.
    pub fn component_labels(&self) -> Vec<u32> {
        self.union_occupied().labels()
    }

    fn union_occupied(&self) -> UnionFind {
        let mut prefix = Vec::with_capacity(self.words.len());
        let mut acc = 0u32;
        for w in &self.words {
            prefix.push(acc);
            acc += w.count_ones();
        }
        let rank = |idx: usize| -> usize {
            let w = idx >> 6;
            let below = self.words[w] & ((1u64 << (idx & 63)) - 1);
            prefix[w] as usize + below.count_ones() as usize
        };

        let r = self.resolution as usize;
        let mut uf = UnionFind::new(self.occupied as usize);
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let idx = (w << 6) | bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let here = rank(idx);
                for axis in 0..self.m {
                    let stride_shift = self.shift as usize * (self.m - 1 - axis);
                    let coord = (idx >> stride_shift) & (r - 1);
                    let next = if coord + 1 == r { idx - (coord << stride_shift) } else { idx + (1 << stride_shift) };
                    if self.bit(next) {
                        uf.union(here, rank(next));
                    }
                }
            }
        }
        uf
    }
}

/// Marks every cell whose center is within the Lipschitz bound of the coincidence set.
pub fn coincidence_mask(spec: &TorusMapSpec) -> CoincidenceGrid {
    let m = spec.dimension();
    let r = spec.resolution as i64;
    let shift = spec.resolution.trailing_zeros();
    let c = spec.difference();
    let l: i64 = c.iter().map(|x| x.abs()).sum();
    let two_r = 2 * r;
    let cells = (spec.resolution as u64).pow(m as u32) as usize;
    let mut words = vec![0u64; cells.div_ceil(64)];

    // Each word holds 64 consecutive cells of one row along the last axis (R ≥ 64).
    words.par_iter_mut().enumerate().for_each(|(w, word)| {
        let base = w << 6;
        let mut n_base = 0i64;
        for (axis, &ca) in c[..m - 1].iter().enumerate() {
            let coord = (base >> (shift as usize * (m - 1 - axis))) as i64 & (r - 1);
            n_base += ca * (2 * coord + 1);
        }
        let last = c[m - 1];
        let start = (base as i64) & (r - 1);
        let mut bits = 0u64;
        for k in 0..64i64 {
            let n = (n_base + last * (2 * (start + k) + 1)).rem_euclid(two_r);
            if n <= l || two_r - n <= l {
                bits |= 1 << k;
            }
        }
        *word = bits;
    });
    let occupied = words.iter().map(|w| w.count_ones() as u64).sum();
    CoincidenceGrid { m, resolution: spec.resolution, shift, words, occupied }
}

/// Number of face-connected components of marked cells, with wraparound.
pub fn count_components(grid: &CoincidenceGrid) -> u64 {
    match grid.occupied {
        0 => 0,
        n if n == grid.cells() => 1,
        _ => grid.union_occupied().components() as u64,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub components: u64,
    pub stabilized: bool,
    /// `(resolution, count)` for each grid evaluated.
    pub counts: Vec<(u32, u64)>,
}

/// Counts at the requested resolution and the one below it (or above it,
/// at the minimum resolution), and reports whether they agree.
pub fn oracle_components(spec: &TorusMapSpec) -> Result<OracleReport, TorusError> {
    let r = spec.resolution;
    let (low, high) = if r > MIN_RESOLUTION { (r / 2, r) } else { (r, 2 * r) };
    let counts: Vec<(u32, u64)> = [low, high]
        .into_iter()
        .map(|res| Ok((res, count_components(&coincidence_mask(&spec.with_resolution(res)?)))))
        .collect::<Result<_, TorusError>>()?;
    Ok(OracleReport { components: counts[1].1, stabilized: counts[0].1 == counts[1].1, counts })
}
