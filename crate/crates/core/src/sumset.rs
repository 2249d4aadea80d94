//! Minkowski sumsets and the cardinality bounds attached to them.

use crate::error::Error;
use crate::geometry::{self, Point, PointSet};
use crate::rat::binom;
use serde::{Deserialize, Serialize};

/// The h-vector `(h_0, ..., h_d)` of a shellable triangulation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HVector {
    pub entries: Vec<i64>,
}

impl HVector {
    /// Requires `h_0 = 1` and all entries nonnegative.
    pub fn new(entries: Vec<i64>) -> Result<HVector, Error> {
        if entries.first() != Some(&1) {
            return Err(Error::BadParams("h-vector must start with h_0 = 1".into()));
        }
        if entries.iter().any(|&h| h < 0) {
            return Err(Error::BadParams("h-vector entries must be nonnegative".into()));
        }
        Ok(HVector { entries })
    }

    pub fn get(&self, j: usize) -> i64 {
        self.entries.get(j).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Which lower bound a report compares against.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BoundKind {
    Freiman,
    MR,
    Refined,
    Dim1,
    InteriorMR,
}

/// Result of comparing an enumerated cardinality against a bound.
/// `violation` is set when `lhs < rhs`, which for the theorem-backed kinds
/// indicates a software defect rather than a mathematical possibility.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub lhs_cardinality: i64,
    pub rhs_bound: i64,
    pub slack: i64,
    pub violation: bool,
    pub bound_kind: BoundKind,
}

impl BoundReport {
    pub fn compare(lhs: i64, rhs: i64, kind: BoundKind) -> BoundReport {
        BoundReport {
            lhs_cardinality: lhs,
            rhs_bound: rhs,
            slack: lhs - rhs,
            violation: lhs < rhs,
            bound_kind: kind,
        }
    }
}

/// `A + B = {a + b}`, duplicate-free in canonical order.
pub fn minkowski_sum(a: &PointSet, b: &PointSet) -> Result<PointSet, Error> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for p in a.iter() {
        for q in b.iter() {
            sums.push(p.add(q));
        }
    }
    PointSet::new(a.dim(), sums)
}

/// Iterated sum `kB`, deduplicating after every fold; `0B = {0}`.
pub fn k_fold(b: &PointSet, k: i64) -> Result<PointSet, Error> {
    if b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    assert!(k >= 0, "negative fold count");
    if k == 0 {
        return PointSet::new(b.dim(), vec![Point::origin(b.dim())]);
    }
    let mut acc = b.clone();
    for _ in 1..k {
        acc = minkowski_sum(&acc, b)?;
    }
    Ok(acc)
}

/// The Matolcsi-Ruzsa lower bound `C(d+k,k) n - k C(d+k,k+1)` on `|A+kB|`.
pub fn mr_bound(d: i64, k: i64, n: i64) -> i64 {
    binom(d + k, k) * n - k * binom(d + k, k + 1)
}

/// The Freiman lower bound `(d+1) n - d(d+1)/2` on `|A+A|`.
pub fn freiman_bound(d: i64, n: i64) -> i64 {
    (d + 1) * n - d * (d + 1) / 2
}

/// The refinement of the MR bound by the h-vector of a shellable
/// triangulation of `B`: adds `sum_{j=2}^{min(d,k+1)} h_j C(d+k+1-j, k+1-j)`.
pub fn refined_bound(d: i64, k: i64, n: i64, h: &HVector) -> i64 {
    let mut extra = 0;
    for j in 2..=d.min(k + 1) {
        extra += h.get(j as usize) * binom(d + k + 1 - j, k + 1 - j);
    }
    mr_bound(d, k, n) + extra
}

/// Lower bound `C(d+k-1,k-1) n - (k-1) C(d+k-1,k)` on `|kA|`.
pub fn corollary_ka_bound(d: i64, k: i64, n: i64) -> i64 {
    binom(d + k - 1, k - 1) * n - (k - 1) * binom(d + k - 1, k)
}

/// h-vector lower bound `sum_{j=0}^{min(d,k)} h_j C(d+k-j,k-j)` on `|kA|`.
pub fn corollary_ka_h_bound(d: i64, k: i64, h: &HVector) -> i64 {
    let mut acc = 0;
    for j in 0..=d.min(k) {
        acc += h.get(j as usize) * binom(d + k - j, k - j);
    }
    acc
}

/// Exact closed form for `|A + kC|` when `C` is a simplex vertex set and
/// `A` lies inside `[C]`:
/// `C(d+k,k)|A| - sum_{i=1}^{|A ∩ C|} (C(d+k,k) - C(d+k+1-i,k))`.
pub fn simplex_sum_cardinality(a: &PointSet, c: &PointSet, k: i64) -> Result<i64, Error> {
    if a.is_empty() || c.is_empty() {
        return Err(Error::EmptyOperand);
    }
    if a.dim() != c.dim() {
        return Err(Error::DimensionMismatch(a.dim(), c.dim()));
    }
    let d = geometry::affine_dimension(c) as i64;
    if c.len() as i64 != d + 1 {
        return Err(Error::DegenerateSimplex);
    }
    let hull = geometry::convex_hull(c)?;
    for p in a.iter() {
        if !hull.contains(p) {
            return Err(Error::OutsideHull);
        }
    }
    let shared = a.iter().filter(|p| c.contains(p)).count() as i64;
    let top = binom(d + k, k);
    let mut total = top * a.len() as i64;
    for i in 1..=shared {
        total -= top - binom(d + k + 1 - i, k);
    }
    Ok(total)
}

/// Enumerates `|A + kB|` and compares it to the MR bound at the intrinsic
/// dimension of `B`. Requires every point of `A` to lie in `[B]`.
pub fn check_bound(a: &PointSet, b: &PointSet, k: i64) -> Result<BoundReport, Error> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let hull = geometry::convex_hull(b)?;
    for p in a.iter() {
        if !hull.contains(p) {
            return Err(Error::OutsideHull);
        }
    }
    let q = hull.dim as i64;
    let kb = k_fold(b, k)?;
    let lhs = minkowski_sum(a, &kb)?.len() as i64;
    let rhs = mr_bound(q, k, a.len() as i64);
    Ok(BoundReport::compare(lhs, rhs, BoundKind::MR))
}
