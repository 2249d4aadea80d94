//! Criticality: deciding when `|A+kB|` meets the lower bound exactly,
//! the shelling criterion, the structural classification of critical
//! pairs, verified family generators, and consistency checks.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{
    affine_dimension, convex_hull, Chart, Membership, Point, PointSet, Polytope,
    SimplexVerts,
};
use crate::lattice::{difference_lattice, is_stable};
use crate::linalg;
use crate::rat::{format_rat, int, rat, Rat};
use crate::sumset::{corollary_ka_bound, k_fold, minkowski_sum, mr_bound};
use crate::triangulation::{
    self, classify_shape, is_stacked, is_unimodular, placing_triangulation, Shelling,
    StackableShape, Triangulation,
};

/// Structural case of a critical pair (or the refutation).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CriticalCase {
    #[serde(rename = "Simplex_i")]
    SimplexI,
    #[serde(rename = "SimplexEdgeAP_ii")]
    SimplexEdgeApII,
    #[serde(rename = "Prism_iii")]
    PrismIII,
    #[serde(rename = "TriangleMidpoints_iv")]
    TriangleMidpointsIV,
    #[serde(rename = "Parallelogram_v")]
    ParallelogramV,
    #[serde(rename = "PyramidOverLower_vi")]
    PyramidOverLowerVI,
    NotCritical,
}

/// Case-specific evidence. Indices refer to the configuration in its
/// intrinsic coordinates (identical to the input order when `B` spans the
/// ambient space).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Witness {
    /// Vertex indices of the simplex.
    Simplex { vertices: Vec<usize> },
    /// The loaded edge, the progression `D` on it, the step `w`, and the
    /// number of extra translate blocks.
    EdgeAp {
        edge: (usize, usize),
        ap_length: usize,
        step: Vec<String>,
        translates: usize,
    },
    /// Pairing of bottom and top endpoints of the vertical edges.
    Prism { bottom: Vec<usize>, top: Vec<usize> },
    /// Triangle vertices; `b_underdetermined` flags that any spanning
    /// `B ⊆ A` on the sides yields the same verdict.
    Midpoints {
        vertices: Vec<usize>,
        b_underdetermined: bool,
    },
    /// The boundary cycle of the parallelogram.
    Parallelogram { cycle: Vec<usize> },
    /// Stripped apex points and the case of the lower-dimensional base pair.
    Pyramid {
        apexes: Vec<usize>,
        base_case: CriticalCase,
    },
}

/// Outcome of `classify`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CriticalVerdict {
    pub critical: bool,
    pub k_tested: i64,
    pub case: CriticalCase,
    pub witness: Option<Witness>,
}

/// One half-open region of a shelling decomposition: the cell `C_i`, the
/// facets removed from it (as positions of the opposite vertices), and the
/// part `A_i = A ∩ T_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShellingRegion {
    pub cell: SimplexVerts,
    pub removed_opposites: Vec<usize>,
    pub a_part: PointSet,
}

/// The regions `T_1, …, T_m` of a shelling, partitioning `A`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShellingDecomposition {
    pub regions: Vec<ShellingRegion>,
}

fn scale_point(p: &Point, s: &Rat) -> Point {
    Point(p.0.iter().map(|c| c * s).collect())
}

/// Maps `A` and `B` into the intrinsic coordinates of `B`'s affine hull
/// when `B` is lower-dimensional; errors if some point of `A` leaves it.
fn intrinsic_pair(a: &PointSet, b: &PointSet) -> Result<(PointSet, PointSet), Error> {
    let chart = Chart::from_set(b);
    if chart.dim() == b.dim() {
        return Ok((a.clone(), b.clone()));
    }
    let map = |s: &PointSet| -> Result<PointSet, Error> {
        let pts = s
            .iter()
            .map(|p| chart.to_local(p).map(Point).ok_or(Error::OutsideHull))
            .collect::<Result<Vec<_>, _>>()?;
        PointSet::new(chart.dim(), pts)
    };
    Ok((map(a)?, map(b)?))
}

/// True iff `|A+kB| = mr_bound(d, k, |A|)` where `d` is the dimension
/// spanned by `B`, by exact enumeration.
pub fn is_k_critical(a: &PointSet, b: &PointSet, k: i64) -> Result<bool, Error> {
    if k < 1 {
        return Err(Error::BadParams(format!("k must be >= 1, got {k}")));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let hull = convex_hull(b)?;
    if hull.dim == 0 {
        return Err(Error::BadParams("B must span dimension >= 1".into()));
    }
    for p in a.iter() {
        if !hull.contains(p) {
            return Err(Error::OutsideHull);
        }
    }
    let kb = k_fold(b, k)?;
    let lhs = minkowski_sum(a, &kb)?.len() as i64;
    Ok(lhs == mr_bound(hull.dim as i64, k, a.len() as i64))
}

/// Tests whether a local point lies in the half-open region of a cell:
/// all barycentric coordinates nonnegative, strictly positive on the
/// coordinates opposite the removed facets.
fn in_region(
    local: &[Rat],
    bary: &[(Vec<Rat>, Rat)],
    removed: &[usize],
) -> bool {
    for (pos, (alpha, beta)) in bary.iter().enumerate() {
        let mut v = beta.clone();
        for (aj, xj) in alpha.iter().zip(local) {
            v += aj * xj;
        }
        if v < Rat::zero() {
            return false;
        }
        if v.is_zero() && removed.contains(&pos) {
            return false;
        }
    }
    true
}

/// Decomposes `A` along the shelling: `A_i = A ∩ T_i` where
/// `T_i = S_i ∖ (S_1 ∪ … ∪ S_{i−1})`. The parts partition `A`.
pub fn shelling_decomposition(
    a: &PointSet,
    t: &Triangulation,
    sh: &Shelling,
) -> Result<ShellingDecomposition, Error> {
    let removed = triangulation::shelling_covered_opposites(t, &sh.order)?;
    let barys: Vec<Vec<(Vec<Rat>, Rat)>> = sh
        .order
        .iter()
        .map(|&ci| {
            let verts: Vec<Vec<Rat>> =
                t.cells[ci].0.iter().map(|&i| t.local()[i].clone()).collect();
            triangulation::barycentric_functions(&verts)
        })
        .collect();
    let mut parts: Vec<Vec<Point>> = vec![Vec::new(); sh.order.len()];
    for p in a.iter() {
        let local = t.chart().to_local(p).ok_or(Error::OutsideHull)?;
        let mut home = None;
        for (step, bary) in barys.iter().enumerate() {
            if in_region(&local, bary, &removed[step]) {
                if home.is_some() {
                    return Err(Error::EquivalenceViolation(
                        "shelling regions overlap on a point of A".into(),
                    ));
                }
                home = Some(step);
            }
        }
        match home {
            Some(step) => parts[step].push(p.clone()),
            None => return Err(Error::OutsideHull),
        }
    }
    let regions = sh
        .order
        .iter()
        .enumerate()
        .map(|(step, &ci)| {
            Ok(ShellingRegion {
                cell: t.cells[ci].clone(),
                removed_opposites: removed[step].clone(),
                a_part: PointSet::new(a.dim(), parts[step].clone())?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(ShellingDecomposition { regions })
}

/// Evaluates the shelling criterion: (i) the first cell's vertices lie in
/// `A`, and (ii) for every region, `A_i + kC_i = (A+kB) ∩ (k+1)T_i`.
/// Membership in `(k+1)T_i` is decided via barycentric coordinates of
/// `x/(k+1)`, strict on removed-facet coordinates.
pub fn shelling_criterion(
    a: &PointSet,
    b: &PointSet,
    k: i64,
    t: &Triangulation,
    sh: &Shelling,
) -> Result<bool, Error> {
    if k < 1 {
        return Err(Error::BadParams(format!("k must be >= 1, got {k}")));
    }
    if &t.points != b {
        return Err(Error::BadParams(
            "triangulation does not triangulate B".into(),
        ));
    }
    let decomp = shelling_decomposition(a, t, sh)?;
    // Condition (i): C_1 ⊂ A.
    let first = &decomp.regions[0].cell;
    if !first.0.iter().all(|&i| a.contains(t.points.point(i))) {
        return Ok(false);
    }
    // Condition (ii), region by region.
    let akb = minkowski_sum(a, &k_fold(b, k)?)?;
    let shrink = Rat::one() / int(k + 1);
    let removed: Vec<&[usize]> = decomp
        .regions
        .iter()
        .map(|r| r.removed_opposites.as_slice())
        .collect();
    let barys: Vec<Vec<(Vec<Rat>, Rat)>> = decomp
        .regions
        .iter()
        .map(|r| {
            let verts: Vec<Vec<Rat>> =
                r.cell.0.iter().map(|&i| t.local()[i].clone()).collect();
            triangulation::barycentric_functions(&verts)
        })
        .collect();
    let mut rhs: Vec<BTreeSet<Point>> = vec![BTreeSet::new(); decomp.regions.len()];
    for x in akb.iter() {
        let y = scale_point(x, &shrink);
        let local = t
            .chart()
            .to_local(&y)
            .ok_or_else(|| Error::EquivalenceViolation("sum point off the affine hull".into()))?;
        let mut home = None;
        for (i, bary) in barys.iter().enumerate() {
            if in_region(&local, bary, removed[i]) {
                home = Some(i);
                break;
            }
        }
        let Some(i) = home else {
            return Err(Error::EquivalenceViolation(
                "sum point outside (k+1)[B]".into(),
            ));
        };
        rhs[i].insert(x.clone());
    }
    let mut all_match = true;
    for (i, region) in decomp.regions.iter().enumerate() {
        let lhs: BTreeSet<Point> = if region.a_part.is_empty() {
            BTreeSet::new()
        } else {
            let c_pts = PointSet::new(
                b.dim(),
                region.cell.0.iter().map(|&j| b.point(j).clone()).collect(),
            )?;
            minkowski_sum(&region.a_part, &k_fold(&c_pts, k)?)?
                .iter()
                .cloned()
                .collect()
        };
        if lhs != rhs[i] {
            all_match = false;
            break;
        }
    }
    let holds = all_match;
    if holds {
        // Each later part may contain at most one vertex of its cell.
        for region in decomp.regions.iter().skip(1) {
            let in_part = region
                .cell
                .0
                .iter()
                .filter(|&&j| region.a_part.contains(b.point(j)))
                .count();
            if in_part > 1 {
                return Err(Error::TheoremViolation(
                    "criterion holds but a region holds two cell vertices".into(),
                ));
            }
        }
    }
    Ok(holds)
}

/// Parameter of a point on the segment from `a` to `b` (so `p = a + t(b−a)`),
/// or `None` when `p` is off the line.
fn seg_param(p: &Point, a: &Point, b: &Point) -> Option<Rat> {
    let u = p.sub(a);
    let v = b.sub(a);
    let j = v.iter().position(|c| !c.is_zero())?;
    let t = &u[j] / &v[j];
    for (ui, vi) in u.iter().zip(&v) {
        if ui != &(&t * vi) {
            return None;
        }
    }
    Some(t)
}

fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    matches!(seg_param(p, a, b), Some(t) if t >= Rat::zero() && t <= Rat::one())
}

/// Case (ii): a progression `D ⊆ A` along the loaded edge containing both
/// endpoints and all of `B`'s edge points, with `A ∖ (B ∪ D)` a disjoint
/// union of translates of `D ∖ {v_0}`.
fn try_edge_ap(a: &PointSet, b: &PointSet, edge: (usize, usize)) -> Option<Witness> {
    let (mut pu, mut pv) = (b.point(edge.0).clone(), b.point(edge.1).clone());
    if pv < pu {
        std::mem::swap(&mut pu, &mut pv);
    }
    let a_params: BTreeSet<Rat> = a
        .iter()
        .filter(|p| on_segment(p, &pu, &pv))
        .map(|p| seg_param(p, &pu, &pv).unwrap())
        .collect();
    let b_params: Vec<Rat> = b
        .iter()
        .filter(|p| on_segment(p, &pu, &pv))
        .map(|p| seg_param(p, &pu, &pv).unwrap())
        .collect();
    let dir = pv.sub(&pu);
    for m in (1..a_params.len()).rev() {
        let mi = int(m as i64);
        let d_params: Vec<Rat> = (0..=m).map(|l| rat(l as i64, 1) / &mi).collect();
        if !d_params.iter().all(|t| a_params.contains(t)) {
            continue;
        }
        if !b_params.iter().all(|t| d_params.contains(t)) {
            continue;
        }
        let step: Vec<Rat> = dir.iter().map(|c| c / &mi).collect();
        let d_points: BTreeSet<Point> = d_params
            .iter()
            .map(|t| Point(pu.0.iter().zip(&dir).map(|(c, v)| c + t * v).collect()))
            .collect();
        let mut rest: BTreeSet<Point> = a
            .iter()
            .filter(|p| !b.contains(p) && !d_points.contains(p))
            .cloned()
            .collect();
        let mut blocks = 0usize;
        let mut ok = true;
        while let Some(start) = rest.iter().next().cloned() {
            let block: Vec<Point> = (0..m)
                .map(|j| {
                    Point(
                        start
                            .0
                            .iter()
                            .zip(&step)
                            .map(|(c, s)| c + s * int(j as i64))
                            .collect(),
                    )
                })
                .collect();
            if !block.iter().all(|p| rest.contains(p)) {
                ok = false;
                break;
            }
            for p in &block {
                rest.remove(p);
            }
            blocks += 1;
        }
        if ok {
            return Some(Witness::EdgeAp {
                edge,
                ap_length: m + 1,
                step: step.iter().map(format_rat).collect(),
                translates: blocks,
            });
        }
    }
    None
}

/// Case (iv): `A` equals the triangle's vertices plus its three edge
/// midpoints.
fn try_midpoints(a: &PointSet, hull: &Polytope) -> Option<Witness> {
    if hull.dim != 2 || hull.vertices.len() != 3 {
        return None;
    }
    let verts: Vec<Point> = (0..3).map(|i| hull.vertex_point(i).clone()).collect();
    let half = rat(1, 2);
    let mut pts: Vec<Point> = verts.clone();
    for i in 0..3 {
        for j in i + 1..3 {
            pts.push(scale_point(&verts[i].add(&verts[j]), &half));
        }
    }
    let expected = PointSet::new(a.dim(), pts).ok()?;
    (a == &expected).then(|| Witness::Midpoints {
        vertices: hull.vertices.clone(),
        b_underdetermined: true,
    })
}

/// True iff the two segments (given by endpoint indices into `b`) are
/// parallel.
fn parallel(b: &PointSet, e1: (usize, usize), e2: (usize, usize)) -> bool {
    let d1 = b.point(e1.1).sub(b.point(e1.0));
    let d2 = b.point(e2.1).sub(b.point(e2.0));
    linalg::rank(&[d1, d2]) == 1
}

/// Case (iii) on an explicit vertical-edge pairing: `A` inside the vertical
/// edges, edges parallel, and `A` stable with respect to `B`.
fn try_prism(
    a: &PointSet,
    b: &PointSet,
    bottom: &[usize],
    top: &[usize],
) -> Result<Option<Witness>, Error> {
    let dirs: Vec<Vec<Rat>> = bottom
        .iter()
        .zip(top)
        .map(|(&u, &w)| b.point(w).sub(b.point(u)))
        .collect();
    if linalg::rank(&dirs) != 1 {
        return Ok(None);
    }
    let on_edges = a.iter().all(|p| {
        bottom
            .iter()
            .zip(top)
            .any(|(&u, &w)| on_segment(p, b.point(u), b.point(w)))
    });
    if !on_edges || !is_stable(a, b)? {
        return Ok(None);
    }
    Ok(Some(Witness::Prism {
        bottom: bottom.to_vec(),
        top: top.to_vec(),
    }))
}

/// Case (v): parallelogram with `A` on the boundary and stable.
fn try_parallelogram(
    a: &PointSet,
    b: &PointSet,
    hull: &Polytope,
    cycle: &[usize],
) -> Result<Option<Witness>, Error> {
    let sides: Vec<(usize, usize)> = (0..4).map(|i| (cycle[i], cycle[(i + 1) % 4])).collect();
    if !parallel(b, sides[0], sides[2]) || !parallel(b, sides[1], sides[3]) {
        return Ok(None);
    }
    let on_boundary = a
        .iter()
        .all(|p| !matches!(hull.membership(p), Membership::Interior));
    if !on_boundary || !is_stable(a, b)? {
        return Ok(None);
    }
    Ok(Some(Witness::Parallelogram {
        cycle: cycle.to_vec(),
    }))
}

/// Case (vi): `A` must split exactly into the apex points and `A ∩ [B′]`,
/// where `B′ = B` minus the apexes; the base pair must be of type
/// (iii), (iv) or (v).
fn try_apex_split(
    a: &PointSet,
    b: &PointSet,
    apexes: &[usize],
) -> Result<Option<Witness>, Error> {
    let apex_pts: BTreeSet<Point> = apexes.iter().map(|&i| b.point(i).clone()).collect();
    let base_b = PointSet::new(
        b.dim(),
        b.iter().filter(|p| !apex_pts.contains(p)).cloned().collect(),
    )?;
    if base_b.len() < 3 || affine_dimension(&base_b) < 2 {
        return Ok(None);
    }
    let base_hull = convex_hull(&base_b)?;
    let mut base_a_pts = Vec::new();
    for p in a.iter() {
        if apex_pts.contains(p) {
            continue;
        }
        if !base_hull.contains(p) {
            // A must split as apexes plus a subset of the base hull.
            return Ok(None);
        }
        base_a_pts.push(p.clone());
    }
    let base_a = PointSet::new(b.dim(), base_a_pts)?;
    if base_a.is_empty() {
        return Ok(None);
    }
    let (case, _) = classify_inner(&base_a, &base_b)?;
    match case {
        CriticalCase::PrismIII | CriticalCase::TriangleMidpointsIV | CriticalCase::ParallelogramV => {
            Ok(Some(Witness::Pyramid {
                apexes: apexes.to_vec(),
                base_case: case,
            }))
        }
        _ => Ok(None),
    }
}

fn verdict(case: CriticalCase, witness: Option<Witness>) -> (CriticalCase, Option<Witness>) {
    (case, witness)
}

/// The untrusted structural decision; `classify` audits it.
fn classify_inner(a: &PointSet, b: &PointSet) -> Result<(CriticalCase, Option<Witness>), Error> {
    let (a, b) = intrinsic_pair(a, b)?;
    let hull = convex_hull(&b)?;
    if hull.dim == 0 {
        return Err(Error::BadParams("B must span dimension >= 1".into()));
    }
    for p in a.iter() {
        if !hull.contains(p) {
            return Err(Error::OutsideHull);
        }
    }
    let not_critical = verdict(CriticalCase::NotCritical, None);
    // Necessary screen: criticality forces B ⊂ A.
    if !a.is_superset(&b) {
        return Ok(not_critical);
    }
    let d = hull.dim;
    match classify_shape(&b)? {
        StackableShape::NotTotallyStackable => Ok(not_critical),
        StackableShape::SimplexLoadedAtVertex { loaded_edges, .. } => {
            if b.len() == d + 1 {
                return Ok(verdict(
                    CriticalCase::SimplexI,
                    Some(Witness::Simplex {
                        vertices: hull.vertices.clone(),
                    }),
                ));
            }
            if loaded_edges.len() == 1 {
                if let Some(w) = try_edge_ap(&a, &b, loaded_edges[0]) {
                    return Ok(verdict(CriticalCase::SimplexEdgeApII, Some(w)));
                }
            }
            if d == 2 {
                if let Some(w) = try_midpoints(&a, &hull) {
                    return Ok(verdict(CriticalCase::TriangleMidpointsIV, Some(w)));
                }
            }
            // A pyramid over a triangular 2-face whose sides carry all the
            // loaded edges can still be of type (vi).
            if d >= 3 {
                let endpoints: BTreeSet<usize> =
                    loaded_edges.iter().flat_map(|&(x, y)| [x, y]).collect();
                if !endpoints.is_empty() && endpoints.len() <= 3 {
                    let others: Vec<usize> = hull
                        .vertices
                        .iter()
                        .copied()
                        .filter(|v| !endpoints.contains(v))
                        .collect();
                    let need = 3 - endpoints.len();
                    for extra in combinations(&others, need) {
                        let face: BTreeSet<usize> =
                            endpoints.iter().copied().chain(extra).collect();
                        let apexes: Vec<usize> = hull
                            .vertices
                            .iter()
                            .copied()
                            .filter(|v| !face.contains(v))
                            .collect();
                        if let Some(w) = try_apex_split(&a, &b, &apexes)? {
                            return Ok(verdict(CriticalCase::PyramidOverLowerVI, Some(w)));
                        }
                    }
                }
            }
            Ok(not_critical)
        }
        StackableShape::IteratedPyramidOverPolygon {
            apexes, polygon, ..
        } => {
            if !apexes.is_empty() {
                if let Some(w) = try_apex_split(&a, &b, &apexes)? {
                    return Ok(verdict(CriticalCase::PyramidOverLowerVI, Some(w)));
                }
                return Ok(not_critical);
            }
            match polygon.len() {
                3 => {
                    if let Some(w) = try_midpoints(&a, &hull) {
                        return Ok(verdict(CriticalCase::TriangleMidpointsIV, Some(w)));
                    }
                    Ok(not_critical)
                }
                4 => {
                    // Parallelograms prefer the boundary reading (v); any
                    // pair of parallel sides can serve as vertical edges
                    // for the trapezoid reading (iii).
                    if let Some(w) = try_parallelogram(&a, &b, &hull, &polygon)? {
                        return Ok(verdict(CriticalCase::ParallelogramV, Some(w)));
                    }
                    for (s, t) in [(0usize, 2usize), (1, 3)] {
                        let e1 = (polygon[s], polygon[(s + 1) % 4]);
                        let e2 = (polygon[t], polygon[(t + 1) % 4]);
                        if !parallel(&b, e1, e2) {
                            continue;
                        }
                        // Orient the pairing so the edges run the same way.
                        for (bot, top) in
                            [([e1.0, e2.1], [e1.1, e2.0]), ([e1.0, e2.0], [e1.1, e2.1])]
                        {
                            if let Some(w) = try_prism(&a, &b, &bot, &top)? {
                                return Ok(verdict(CriticalCase::PrismIII, Some(w)));
                            }
                        }
                    }
                    Ok(not_critical)
                }
                _ => Ok(not_critical),
            }
        }
        StackableShape::IteratedPyramidOverPrism {
            apexes,
            bottom,
            top,
            ..
        } => {
            if !apexes.is_empty() {
                if let Some(w) = try_apex_split(&a, &b, &apexes)? {
                    return Ok(verdict(CriticalCase::PyramidOverLowerVI, Some(w)));
                }
                return Ok(not_critical);
            }
            if let Some(w) = try_prism(&a, &b, &bottom, &top)? {
                return Ok(verdict(CriticalCase::PrismIII, Some(w)));
            }
            Ok(not_critical)
        }
    }
}

/// All `k`-element subsets of `items`.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Classifies a pair against the structural case list at `k = 1`, then
/// audits the verdict against exact enumeration. An audit mismatch is a
/// software defect and surfaces as `ClassifierDefect`.
pub fn classify(a: &PointSet, b: &PointSet) -> Result<CriticalVerdict, Error> {
    let (case, witness) = classify_inner(a, b)?;
    let structural = case != CriticalCase::NotCritical;
    let enumerated = is_k_critical(a, b, 1)?;
    if structural != enumerated {
        return Err(Error::ClassifierDefect(format!(
            "structural verdict {case:?} ({structural}) disagrees with enumeration ({enumerated})"
        )));
    }
    Ok(CriticalVerdict {
        critical: enumerated,
        k_tested: 1,
        case,
        witness,
    })
}

/// Which family to generate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FamilyCase {
    SimplexI,
    SimplexEdgeApII,
    PrismIII,
    TriangleMidpointsIV,
    ParallelogramV,
    PyramidOverLowerVI,
}

/// Parameters of a generated critical family.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FamilyParams {
    pub case: FamilyCase,
    /// Ambient dimension `d`.
    pub dim: usize,
    /// Base dimension `q` for the pyramid case.
    pub base_dim: usize,
    /// `|D|` for the edge-progression case.
    pub ap_len: usize,
    /// Number of extra translate blocks (case ii) or interior points (case i).
    pub translates: usize,
    /// Vertical edge heights `m_j` for the prism case.
    pub heights: Vec<i64>,
    /// Number of extra boundary layers (cases iii and v).
    pub offsets: usize,
}

fn unit(dim: usize, j: usize) -> Point {
    let mut c = vec![Rat::zero(); dim];
    c[j] = Rat::one();
    Point(c)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

fn simplex_i_family(p: &FamilyParams) -> Result<(PointSet, PointSet), Error> {
    let d = p.dim;
    if d < 1 {
        return Err(Error::BadParams("dimension must be >= 1".into()));
    }
    let mut b_pts = vec![Point::origin(d)];
    for j in 0..d {
        b_pts.push(unit(d, j));
    }
    let b = PointSet::new(d, b_pts)?;
    let mut a_pts: Vec<Point> = b.iter().cloned().collect();
    for t in 0..p.translates {
        let c = rat(1, d as i64 * (t as i64 + 1) + 1);
        a_pts.push(Point(vec![c; d]));
    }
    Ok((PointSet::new(d, a_pts)?, b))
}

fn edge_ap_family(p: &FamilyParams) -> Result<(PointSet, PointSet), Error> {
    let d = p.dim;
    let m = p.ap_len as i64 - 1;
    if d < 1 || m < 2 {
        return Err(Error::BadParams(
            "edge progressions need dimension >= 1 and ap_len >= 3".into(),
        ));
    }
    if d == 1 && p.translates > 0 {
        return Err(Error::BadParams(
            "translate blocks need dimension >= 2".into(),
        ));
    }
    let t_cnt = p.translates as i64;
    let big = m * (t_cnt + 2);
    let mut b_pts = vec![Point::origin(d), scale_point(&unit(d, 0), &int(m))];
    b_pts.push(unit(d, 0)); // loads the edge
    for j in 1..d {
        b_pts.push(scale_point(&unit(d, j), &int(big)));
    }
    let b = PointSet::new(d, b_pts)?;
    let mut a_pts: Vec<Point> = b.iter().cloned().collect();
    for l in 0..=m {
        a_pts.push(scale_point(&unit(d, 0), &int(l)));
    }
    for t in 1..=t_cnt {
        for j in 1..=m {
            let mut c = vec![Rat::zero(); d];
            c[0] = int(j) - rat(t, t_cnt + 2);
            c[1] = int(t);
            a_pts.push(Point(c));
        }
    }
    Ok((PointSet::new(d, a_pts)?, b))
}

fn prism_pair(d: usize, heights: &[i64], offsets: usize) -> Result<(PointSet, PointSet), Error> {
    if d < 2 || heights.len() != d || heights.iter().any(|&m| m < 1) {
        return Err(Error::BadParams(
            "prisms need dimension >= 2 and one positive height per vertical edge".into(),
        ));
    }
    if d == 2 && heights[0] == heights[1] {
        return Err(Error::BadParams(
            "equal heights in the plane give a parallelogram; use that case".into(),
        ));
    }
    let base: Vec<Point> = std::iter::once(Point::origin(d))
        .chain((0..d - 1).map(|j| unit(d, j)))
        .collect();
    let lift = |u: &Point, h: Rat| {
        let mut c = u.0.clone();
        c[d - 1] = h;
        Point(c)
    };
    let mut b_pts = Vec::new();
    for (u, &mj) in base.iter().zip(heights) {
        b_pts.push(u.clone());
        b_pts.push(lift(u, int(mj)));
    }
    let b = PointSet::new(d, b_pts)?;
    let g = heights.iter().copied().fold(0, gcd_i64);
    let mut a_pts = Vec::new();
    for (u, &mj) in base.iter().zip(heights) {
        for t in 0..=mj {
            a_pts.push(lift(u, int(t)));
        }
        for o in 1..=offsets as i64 {
            let mut h = rat(g * o, offsets as i64 + 1);
            while h <= int(mj) {
                a_pts.push(lift(u, h.clone()));
                h += int(g);
            }
        }
    }
    Ok((PointSet::new(d, a_pts)?, b))
}

fn midpoints_pair(d: usize) -> Result<(PointSet, PointSet), Error> {
    if d != 2 {
        return Err(Error::BadParams("the midpoint case lives in the plane".into()));
    }
    let two = int(2);
    let verts = [
        Point::origin(2),
        scale_point(&unit(2, 0), &two),
        scale_point(&unit(2, 1), &two),
    ];
    let half = rat(1, 2);
    let mut pts: Vec<Point> = verts.to_vec();
    for i in 0..3 {
        for j in i + 1..3 {
            pts.push(scale_point(&verts[i].add(&verts[j]), &half));
        }
    }
    let a = PointSet::new(2, pts)?;
    Ok((a.clone(), a))
}

fn parallelogram_pair(d: usize, offsets: usize) -> Result<(PointSet, PointSet), Error> {
    if d != 2 {
        return Err(Error::BadParams(
            "the parallelogram case lives in the plane".into(),
        ));
    }
    let corners = vec![
        Point::origin(2),
        unit(2, 0),
        unit(2, 1),
        Point(vec![Rat::one(), Rat::one()]),
    ];
    let b = PointSet::new(2, corners)?;
    let mut a_pts: Vec<Point> = b.iter().cloned().collect();
    for t in 1..=offsets as i64 {
        let y = rat(t, offsets as i64 + 1);
        a_pts.push(Point(vec![Rat::zero(), y.clone()]));
        a_pts.push(Point(vec![Rat::one(), y]));
    }
    Ok((PointSet::new(2, a_pts)?, b))
}

fn pyramid_family(p: &FamilyParams) -> Result<(PointSet, PointSet), Error> {
    let (d, q) = (p.dim, p.base_dim);
    if q < 2 || d <= q {
        return Err(Error::BadParams(
            "pyramids need base dimension >= 2 strictly below the ambient dimension".into(),
        ));
    }
    let (base_a, base_b) = if p.heights.len() == q {
        prism_pair(q, &p.heights, p.offsets)?
    } else if q == 2 {
        parallelogram_pair(2, p.offsets)?
    } else {
        return Err(Error::BadParams(
            "a base of dimension >= 3 needs one height per vertical edge".into(),
        ));
    };
    let pad = |s: &PointSet| -> Vec<Point> {
        s.iter()
            .map(|pt| {
                let mut c = pt.0.clone();
                c.resize(d, Rat::zero());
                Point(c)
            })
            .collect()
    };
    let apexes: Vec<Point> = (q..d).map(|j| unit(d, j)).collect();
    let mut b_pts = pad(&base_b);
    b_pts.extend(apexes.iter().cloned());
    let mut a_pts = pad(&base_a);
    a_pts.extend(apexes);
    Ok((PointSet::new(d, a_pts)?, PointSet::new(d, b_pts)?))
}

/// Generates a concrete pair realizing the requested family, then audits
/// it: the classifier must report the requested case and criticality.
pub fn generate_family(p: &FamilyParams) -> Result<(PointSet, PointSet), Error> {
    let (a, b) = match p.case {
        FamilyCase::SimplexI => simplex_i_family(p)?,
        FamilyCase::SimplexEdgeApII => edge_ap_family(p)?,
        FamilyCase::PrismIII => prism_pair(p.dim, &p.heights, p.offsets)?,
        FamilyCase::TriangleMidpointsIV => midpoints_pair(p.dim)?,
        FamilyCase::ParallelogramV => parallelogram_pair(p.dim, p.offsets)?,
        FamilyCase::PyramidOverLowerVI => pyramid_family(p)?,
    };
    let expected = match p.case {
        FamilyCase::SimplexI => CriticalCase::SimplexI,
        FamilyCase::SimplexEdgeApII => CriticalCase::SimplexEdgeApII,
        FamilyCase::PrismIII => CriticalCase::PrismIII,
        FamilyCase::TriangleMidpointsIV => CriticalCase::TriangleMidpointsIV,
        FamilyCase::ParallelogramV => CriticalCase::ParallelogramV,
        FamilyCase::PyramidOverLowerVI => CriticalCase::PyramidOverLowerVI,
    };
    let v = classify(&a, &b)?;
    if !v.critical || v.case != expected {
        return Err(Error::TheoremViolation(format!(
            "generated family classified as {:?} (critical: {}), expected {:?}",
            v.case, v.critical, expected
        )));
    }
    Ok((a, b))
}

/// Result of the subset/lower-`k` monotonicity checks.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub subset_checks: usize,
    pub lower_k_checks: usize,
}

/// For a verified `k`-critical pair: random spanning subsets `B′ ⊆ B` give
/// critical pairs `(A ∩ [B′], B′)`, and the pair is `k′`-critical for all
/// `k′ < k`. Failures signal software defects via `TheoremViolation`.
pub fn check_monotonicity(
    a: &PointSet,
    b: &PointSet,
    k: i64,
    trials: usize,
    seed: u64,
) -> Result<MonotonicityReport, Error> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    if !is_k_critical(a, b, k)? {
        return Err(Error::BadParams("the pair must be k-critical".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut subset_checks = 0;
    for _ in 0..trials {
        let size = rng.gen_range(2..=b.len());
        let mut idx: Vec<usize> = (0..b.len()).collect();
        idx.shuffle(&mut rng);
        idx.truncate(size);
        let b_sub = PointSet::new(
            b.dim(),
            idx.iter().map(|&i| b.point(i).clone()).collect(),
        )?;
        let hull = convex_hull(&b_sub)?;
        let a_sub = PointSet::new(
            a.dim(),
            a.iter().filter(|p| hull.contains(p)).cloned().collect(),
        )?;
        if !is_k_critical(&a_sub, &b_sub, k)? {
            return Err(Error::TheoremViolation(format!(
                "subset pair on {idx:?} is not {k}-critical"
            )));
        }
        subset_checks += 1;
    }
    let mut lower_k_checks = 0;
    for kp in 1..k {
        if !is_k_critical(a, b, kp)? {
            return Err(Error::TheoremViolation(format!(
                "{k}-critical pair is not {kp}-critical"
            )));
        }
        lower_k_checks += 1;
    }
    Ok(MonotonicityReport {
        subset_checks,
        lower_k_checks,
    })
}

/// Result of the `|kA|` equality check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CorollaryKAReport {
    pub lhs: i64,
    pub rhs: i64,
    pub equality: bool,
    pub stacked: bool,
    pub unimodular: bool,
}

/// Verifies the equivalence `|kA| = binom(d+k−1,k−1)|A| − (k−1)binom(d+k−1,k)`
/// iff the placing triangulation of `A` is stacked and unimodular. A
/// mismatch signals a software defect via `TheoremViolation`.
pub fn check_corollary_ka(a: &PointSet, k: i64) -> Result<CorollaryKAReport, Error> {
    if k < 2 {
        return Err(Error::BadParams(format!("k must be >= 2, got {k}")));
    }
    // Work in intrinsic coordinates so the difference lattice has full rank.
    let chart = Chart::from_set(a);
    let a = if chart.dim() == a.dim() {
        a.clone()
    } else {
        PointSet::new(
            chart.dim(),
            a.iter()
                .map(|p| Point(chart.to_local(p).expect("point in own affine hull")))
                .collect(),
        )?
    };
    let d = affine_dimension(&a);
    if d < 2 {
        return Err(Error::BadParams("A must span dimension >= 2".into()));
    }
    let lhs = k_fold(&a, k)?.len() as i64;
    let rhs = corollary_ka_bound(d as i64, k, a.len() as i64);
    let (t, _) = placing_triangulation(&a, None)?;
    let stacked = is_stacked(&t)?;
    let lat = difference_lattice(&a);
    let unimodular = is_unimodular(&t, &lat)?;
    let equality = lhs == rhs;
    if equality != (stacked && unimodular) {
        return Err(Error::TheoremViolation(format!(
            "|kA| equality ({equality}) disagrees with stacked ({stacked}) ∧ unimodular ({unimodular})"
        )));
    }
    Ok(CorollaryKAReport {
        lhs,
        rhs,
        equality,
        stacked,
        unimodular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[(i64, i64)]) -> Point {
        Point(coords.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    fn ipt(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&n| int(n)).collect())
    }

    fn set(dim: usize, pts: Vec<Point>) -> PointSet {
        PointSet::new(dim, pts).unwrap()
    }

    fn square() -> PointSet {
        set(2, vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 1]), ipt(&[1, 1])])
    }

    #[test]
    fn square_pair_is_critical_and_parallelogram() {
        let s = square();
        assert!(is_k_critical(&s, &s, 1).unwrap());
        let v = classify(&s, &s).unwrap();
        assert!(v.critical);
        assert_eq!(v.case, CriticalCase::ParallelogramV);
    }

    #[test]
    fn square_plus_center_is_not_critical() {
        let s = set(
            2,
            vec![
                ipt(&[0, 0]),
                ipt(&[2, 0]),
                ipt(&[0, 2]),
                ipt(&[2, 2]),
                ipt(&[1, 1]),
            ],
        );
        assert!(!is_k_critical(&s, &s, 1).unwrap());
        let v = classify(&s, &s).unwrap();
        assert!(!v.critical);
        assert_eq!(v.case, CriticalCase::NotCritical);
    }

    #[test]
    fn simplex_pairs_are_critical_for_small_k() {
        for d in 1..=3 {
            let (a, b) = simplex_i_family(&FamilyParams {
                case: FamilyCase::SimplexI,
                dim: d,
                base_dim: 0,
                ap_len: 0,
                translates: 1,
                heights: vec![],
                offsets: 0,
            })
            .unwrap();
            for k in 1..=3 {
                assert!(is_k_critical(&a, &b, k).unwrap(), "d={d} k={k}");
            }
            assert_eq!(classify(&a, &b).unwrap().case, CriticalCase::SimplexI);
        }
    }

    #[test]
    fn triangle_with_midpoints_is_case_iv() {
        let (a, b) = midpoints_pair(2).unwrap();
        let v = classify(&a, &b).unwrap();
        assert!(v.critical);
        assert_eq!(v.case, CriticalCase::TriangleMidpointsIV);
        let sum = minkowski_sum(&a, &b).unwrap();
        assert_eq!(sum.len(), 15); // 3 * 6 - 3
    }

    #[test]
    fn one_dim_progression_cases() {
        // A = B = {0, 1/3, 1}: not critical (6 > 5).
        let s = set(1, vec![pt(&[(0, 1)]), pt(&[(1, 3)]), pt(&[(1, 1)])]);
        let v = classify(&s, &s).unwrap();
        assert!(!v.critical);
        // Full progression {0,1,2,3} over B = {0,1,3}: case (ii).
        let b = set(1, vec![ipt(&[0]), ipt(&[1]), ipt(&[3])]);
        let a = set(1, vec![ipt(&[0]), ipt(&[1]), ipt(&[2]), ipt(&[3])]);
        let v = classify(&a, &b).unwrap();
        assert!(v.critical);
        assert_eq!(v.case, CriticalCase::SimplexEdgeApII);
    }

    #[test]
    fn loaded_triangle_edge_progression_is_case_ii() {
        let b = set(
            2,
            vec![
                ipt(&[0, 0]),
                ipt(&[3, 0]),
                ipt(&[0, 3]),
                ipt(&[1, 0]),
                ipt(&[2, 0]),
            ],
        );
        let v = classify(&b, &b).unwrap();
        assert!(v.critical);
        assert_eq!(v.case, CriticalCase::SimplexEdgeApII);
        match v.witness.unwrap() {
            Witness::EdgeAp { ap_length, translates, .. } => {
                assert_eq!(ap_length, 4);
                assert_eq!(translates, 0);
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn trapezoid_with_full_vertical_edges_is_case_iii() {
        let b = set(2, vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 2]), ipt(&[1, 1])]);
        let a = b.union(&set(2, vec![ipt(&[0, 1])])).unwrap();
        let v = classify(&a, &b).unwrap();
        assert!(v.critical);
        assert_eq!(v.case, CriticalCase::PrismIII);
    }

    #[test]
    fn unstable_trapezoid_filling_is_not_critical() {
        // Missing (0,1) breaks stability: the lattice orbit of (0,2) hits it.
        let b = set(2, vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 2]), ipt(&[1, 1])]);
        let v = classify(&b, &b).unwrap();
        assert!(!v.critical);
        assert_eq!(v.case, CriticalCase::NotCritical);
    }

    #[test]
    fn three_dim_prism_family_is_case_iii() {
        let (a, b) = prism_pair(3, &[2, 2, 4], 1).unwrap();
        let v = classify(&a, &b).unwrap();
        assert!(v.critical);
        assert_eq!(v.case, CriticalCase::PrismIII);
    }

    #[test]
    fn pyramid_over_square_is_case_vi() {
        let p = FamilyParams {
            case: FamilyCase::PyramidOverLowerVI,
            dim: 3,
            base_dim: 2,
            ap_len: 0,
            translates: 0,
            heights: vec![],
            offsets: 0,
        };
        let (a, b) = generate_family(&p).unwrap();
        let v = classify(&a, &b).unwrap();
        assert_eq!(v.case, CriticalCase::PyramidOverLowerVI);
        match v.witness.unwrap() {
            Witness::Pyramid { base_case, .. } => {
                assert_eq!(base_case, CriticalCase::ParallelogramV)
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn pyramid_over_midpoint_triangle_is_case_vi() {
        // Tetrahedron over the midpoint triangle: B carries midpoints of
        // two base sides, so the edge-progression reading cannot apply.
        let base = midpoints_pair(2).unwrap().0;
        let lift = |p: &Point| {
            let mut c = p.0.clone();
            c.push(Rat::zero());
            Point(c)
        };
        let apex = ipt(&[0, 0, 3]);
        let mut a_pts: Vec<Point> = base.iter().map(lift).collect();
        a_pts.push(apex.clone());
        let a = set(3, a_pts);
        let b = set(
            3,
            vec![
                ipt(&[0, 0, 0]),
                ipt(&[2, 0, 0]),
                ipt(&[0, 2, 0]),
                ipt(&[1, 0, 0]),
                ipt(&[0, 1, 0]),
                apex,
            ],
        );
        let v = classify(&a, &b).unwrap();
        assert!(v.critical);
        assert_eq!(v.case, CriticalCase::PyramidOverLowerVI);
        match v.witness.unwrap() {
            Witness::Pyramid { base_case, .. } => {
                assert_eq!(base_case, CriticalCase::TriangleMidpointsIV)
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn generated_families_pass_their_audit() {
        let params = [
            FamilyParams {
                case: FamilyCase::SimplexI,
                dim: 3,
                base_dim: 0,
                ap_len: 0,
                translates: 2,
                heights: vec![],
                offsets: 0,
            },
            FamilyParams {
                case: FamilyCase::SimplexEdgeApII,
                dim: 2,
                base_dim: 0,
                ap_len: 3,
                translates: 2,
                heights: vec![],
                offsets: 0,
            },
            FamilyParams {
                case: FamilyCase::PrismIII,
                dim: 2,
                base_dim: 0,
                ap_len: 0,
                translates: 0,
                heights: vec![2, 3],
                offsets: 1,
            },
            FamilyParams {
                case: FamilyCase::TriangleMidpointsIV,
                dim: 2,
                base_dim: 0,
                ap_len: 0,
                translates: 0,
                heights: vec![],
                offsets: 0,
            },
            FamilyParams {
                case: FamilyCase::ParallelogramV,
                dim: 2,
                base_dim: 0,
                ap_len: 0,
                translates: 0,
                heights: vec![],
                offsets: 2,
            },
            FamilyParams {
                case: FamilyCase::PyramidOverLowerVI,
                dim: 4,
                base_dim: 3,
                ap_len: 0,
                translates: 0,
                heights: vec![1, 2, 3],
                offsets: 0,
            },
        ];
        for p in &params {
            let (a, b) = generate_family(p).unwrap();
            for k in 1..=3 {
                assert!(is_k_critical(&a, &b, k).unwrap(), "{:?} k={k}", p.case);
            }
        }
    }

    #[test]
    fn bad_family_params_are_rejected(){
        let p = FamilyParams {
            case: FamilyCase::PrismIII,
            dim: 2,
            base_dim: 0,
            ap_len: 0,
            translates: 0,
            heights: vec![2, 2],
            offsets: 0,
        };
        assert!(matches!(generate_family(&p), Err(Error::BadParams(_))));
    }

    #[test]
    fn shelling_criterion_matches_enumeration() {
        let s = square();
        let (t, sh) = placing_triangulation(&s, None).unwrap();
        assert!(shelling_criterion(&s, &s, 1, &t, &sh).unwrap());
        assert!(shelling_criterion(&s, &s, 2, &t, &sh).unwrap());

        let c = set(
            2,
            vec![
                ipt(&[0, 0]),
                ipt(&[2, 0]),
                ipt(&[0, 2]),
                ipt(&[2, 2]),
                ipt(&[1, 1]),
            ],
        );
        let (t, sh) = placing_triangulation(&c, None).unwrap();
        assert!(!shelling_criterion(&c, &c, 1, &t, &sh).unwrap());
        assert!(!is_k_critical(&c, &c, 1).unwrap());
    }

    #[test]
    fn shelling_criterion_fails_without_first_cell_vertices() {
        let s = square();
        let (t, sh) = placing_triangulation(&s, None).unwrap();
        // Drop one vertex of the first cell from A.
        let first = t.cells[sh.order[0]].0[0];
        let dropped = set(
            2,
            s.iter()
                .enumerate()
                .filter(|(i, _)| *i != first)
                .map(|(_, p)| p.clone())
                .collect(),
        );
        assert!(!shelling_criterion(&dropped, &s, 1, &t, &sh).unwrap());
    }

    #[test]
    fn decomposition_partitions_a() {
        let (a, b) = prism_pair(2, &[1, 2], 0).unwrap();
        let (t, sh) = placing_triangulation(&b, None).unwrap();
        let d = shelling_decomposition(&a, &t, &sh).unwrap();
        let total: usize = d.regions.iter().map(|r| r.a_part.len()).sum();
        assert_eq!(total, a.len());
    }

    #[test]
    fn monotonicity_checks_pass_on_families() {
        let (a, b) = prism_pair(2, &[1, 2], 0).unwrap();
        let r = check_monotonicity(&a, &b, 3, 10, 7).unwrap();
        assert_eq!(r.subset_checks, 10);
        assert_eq!(r.lower_k_checks, 2);
    }

    #[test]
    fn corollary_ka_equivalence() {
        // Square: equality, stacked, unimodular.
        let r = check_corollary_ka(&square(), 2).unwrap();
        assert!(r.equality && r.stacked && r.unimodular);
        assert_eq!(r.lhs, 9);
        // Triangle with a third-point on an edge: both sides false.
        let a = set(
            2,
            vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 1]), pt(&[(1, 3), (0, 1)])],
        );
        let r = check_corollary_ka(&a, 2).unwrap();
        assert!(!r.equality && !(r.stacked && r.unimodular));
        // Simplex with a full progression on one edge: both sides true.
        let a = set(2, vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[2, 0]), ipt(&[0, 2])]);
        let r = check_corollary_ka(&a, 2).unwrap();
        assert!(r.equality && r.stacked && r.unimodular);
        assert_eq!(r.lhs, 9);
    }

    #[test]
    fn degenerate_inputs_are_reduced_intrinsically() {
        // A segment embedded in the plane.
        let b = set(2, vec![ipt(&[0, 0]), ipt(&[1, 1]), ipt(&[3, 3])]);
        let a = set(2, vec![ipt(&[0, 0]), ipt(&[1, 1]), ipt(&[2, 2]), ipt(&[3, 3])]);
        let v = classify(&a, &b).unwrap();
        assert!(v.critical);
        assert_eq!(v.case, CriticalCase::SimplexEdgeApII);
    }

    #[test]
    fn points_outside_the_hull_are_rejected() {
        let b = square();
        let a = b.union(&set(2, vec![ipt(&[5, 5])])).unwrap();
        assert!(matches!(is_k_critical(&a, &b, 1), Err(Error::OutsideHull)));
        assert!(matches!(classify(&a, &b), Err(Error::OutsideHull)));
    }
}
