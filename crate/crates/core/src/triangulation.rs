//! Triangulations: placing construction, shellings, f/h-vectors,
//! stackedness, total stackability, and the shape classification of
//! totally stackable sets.

use crate::error::Error;
use crate::geometry::{self, Chart, Membership, Point, PointSet, SimplexVerts};
use crate::lattice::DiffLattice;
use crate::linalg::{self, Constraint};
use crate::rat::{binom, Rat};
use crate::sumset::HVector;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A triangulation of a point configuration: full-dimensional simplices
/// (in the intrinsic dimension) whose vertex set is the whole configuration.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub points: PointSet,
    pub cells: Vec<SimplexVerts>,
    /// Intrinsic dimension of the configuration.
    pub dim: usize,
    chart: Chart,
    local: Vec<Vec<Rat>>,
}

impl Triangulation {
    pub fn new(points: PointSet, cells: Vec<SimplexVerts>) -> Result<Triangulation, Error> {
        let chart = Chart::from_set(&points);
        let dim = chart.dim();
        let local: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| chart.to_local(p).expect("point in own affine hull"))
            .collect();
        for c in &cells {
            for &i in &c.0 {
                if i >= points.len() {
                    return Err(Error::BadParams(format!("cell index {i} out of range")));
                }
            }
        }
        Ok(Triangulation { points, cells, dim, chart, local })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub(crate) fn local(&self) -> &[Vec<Rat>] {
        &self.local
    }

    fn cell_local(&self, c: &SimplexVerts) -> Vec<Vec<Rat>> {
        c.0.iter().map(|&i| self.local[i].clone()).collect()
    }
}

/// A shelling order of the cells, with the index of each cell (the number of
/// its facets glued to the union of the earlier cells).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Shelling {
    pub order: Vec<usize>,
    pub indices: Vec<usize>,
}

/// Face counts `(f_{-1}, f_0, ..., f_d)` with `f_{-1} = 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FVector {
    pub entries: Vec<i64>,
}

impl FVector {
    /// `f_i`, where `i` ranges over `-1..=d`.
    pub fn f(&self, i: i64) -> i64 {
        self.entries[(i + 1) as usize]
    }
}

/// The shape trichotomy of totally stackable configurations. All indices
/// refer to positions in the source point set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum StackableShape {
    /// The hull is a simplex and all loaded edges meet at `apex`
    /// (`None` when no edge is loaded).
    SimplexLoadedAtVertex {
        loaded_edges: Vec<(usize, usize)>,
        apex: Option<usize>,
    },
    /// Iterated pyramid over a polygon; loaded edges are polygon sides.
    /// `polygon` lists the cycle in walking order.
    IteratedPyramidOverPolygon {
        apexes: Vec<usize>,
        polygon: Vec<usize>,
        loaded_edges: Vec<(usize, usize)>,
    },
    /// Iterated pyramid over a prism over a simplex; `bottom[i]`-`top[i]`
    /// are the vertical edges, the only ones allowed to be loaded.
    IteratedPyramidOverPrism {
        apexes: Vec<usize>,
        bottom: Vec<usize>,
        top: Vec<usize>,
        loaded_edges: Vec<(usize, usize)>,
    },
    NotTotallyStackable,
}

/// Builds the placing triangulation of `b` for the given insertion order
/// (default: the canonical lexicographic order) together with the shelling
/// that placing induces.
pub fn placing_triangulation(
    b: &PointSet,
    order: Option<&[usize]>,
) -> Result<(Triangulation, Shelling), Error> {
    let chart = Chart::from_set(b);
    if chart.dim() == 0 {
        return Err(Error::DegenerateSimplex);
    }
    let local: Vec<Vec<Rat>> = b
        .iter()
        .map(|p| chart.to_local(p).expect("point in own affine hull"))
        .collect();
    let default: Vec<usize> = (0..b.len()).collect();
    let order = order.unwrap_or(&default);
    if order.len() != b.len() {
        return Err(Error::BadParams("order must be a permutation of all points".into()));
    }
    let cells: Vec<SimplexVerts> = geometry::placing_cells(&local, order)?
        .into_iter()
        .map(SimplexVerts)
        .collect();
    let t = Triangulation {
        points: b.clone(),
        cells,
        dim: chart.dim(),
        chart,
        local,
    };
    let creation: Vec<usize> = (0..t.cells.len()).collect();
    let indices = shelling_indices(&t, &creation)?;
    Ok((t, Shelling { order: creation, indices }))
}

/// Validates `order` as a shelling of `t`; for each step returns the
/// positions (within the cell's vertex list) of the vertices opposite to
/// the facets glued to the union of the earlier cells.
pub(crate) fn shelling_covered_opposites(
    t: &Triangulation,
    order: &[usize],
) -> Result<Vec<Vec<usize>>, Error> {
    let mut seen: Vec<&[usize]> = Vec::new();
    let mut out = Vec::with_capacity(order.len());
    for (step, &ci) in order.iter().enumerate() {
        let cell = &t.cells[ci].0;
        if step == 0 {
            out.push(Vec::new());
            seen.push(cell);
            continue;
        }
        let contains = |big: &[usize], small: &[usize]| small.iter().all(|x| big.contains(x));
        let mut covered: Vec<Vec<usize>> = Vec::new();
        let mut opposites: Vec<usize> = Vec::new();
        for skip in 0..cell.len() {
            let mut f = cell.to_vec();
            f.remove(skip);
            if seen.iter().any(|s| contains(s, &f)) {
                covered.push(f);
                opposites.push(skip);
            }
        }
        if covered.is_empty() {
            return Err(Error::NotAShelling(format!(
                "cell {ci} meets the earlier union in no facet"
            )));
        }
        for s in &seen {
            let inter: Vec<usize> = cell.iter().copied().filter(|x| s.contains(x)).collect();
            if inter.is_empty() {
                continue;
            }
            if !covered.iter().any(|f| contains(f, &inter)) {
                return Err(Error::NotAShelling(format!(
                    "cell {ci} has a stray contact outside its glued facets"
                )));
            }
        }
        out.push(opposites);
        seen.push(cell);
    }
    Ok(out)
}

/// Validates `order` as a shelling of `t` and returns the index of each cell.
fn shelling_indices(t: &Triangulation, order: &[usize]) -> Result<Vec<usize>, Error> {
    Ok(shelling_covered_opposites(t, order)?
        .iter()
        .map(|c| c.len())
        .collect())
}

/// Affine barycentric coordinate functions of a full-dimensional local
/// simplex: for each vertex, coefficients `(alpha, beta)` of
/// `lambda(x) = alpha . x + beta`.
pub(crate) fn barycentric_functions(verts: &[Vec<Rat>]) -> Vec<(Vec<Rat>, Rat)> {
    let n = verts.len(); // d + 1
    let d = n - 1;
    // Solve A^T lambda = (x, 1) where rows of A are (v_i, 1); the u-th row
    // of (A^T)^{-1} gives lambda_u's affine coefficients.
    let at: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if j < d {
                        verts[i][j].clone()
                    } else {
                        Rat::one()
                    }
                })
                .collect()
        })
        .collect();
    let mut inv_cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        inv_cols.push(linalg::solve(&at, &e).expect("simplex matrix is invertible"));
    }
    (0..n)
        .map(|u| {
            let alpha: Vec<Rat> = (0..d).map(|j| inv_cols[j][u].clone()).collect();
            let beta = inv_cols[d][u].clone();
            (alpha, beta)
        })
        .collect()
}

/// Checks that `t` is a genuine triangulation: full-dimensional cells,
/// exact coverage of the hull, proper pairwise contacts, every point used.
pub fn verify_triangulation(t: &Triangulation) -> Result<(), String> {
    let d = t.dim;
    if d == 0 {
        return Err("configuration does not span a positive dimension".into());
    }
    let mut used = vec![false; t.points.len()];
    for c in &t.cells {
        if c.0.len() != d + 1 {
            return Err(format!("cell {:?} is not full-dimensional", c.0));
        }
        if geometry::local_simplex_volume(&t.cell_local(c)).is_err() {
            return Err(format!("cell {:?} is degenerate", c.0));
        }
        for &i in &c.0 {
            used[i] = true;
        }
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(format!("point {i} is not used by any cell"));
    }
    // Exact coverage: cell volumes must sum to the hull volume (all measured
    // in the shared chart).
    let order: Vec<usize> = (0..t.points.len()).collect();
    let hull_cells = geometry::placing_cells(&t.local, &order).map_err(|e| e.to_string())?;
    let hull_vol: Rat = hull_cells
        .iter()
        .map(|c| {
            let verts: Vec<Vec<Rat>> = c.iter().map(|&i| t.local[i].clone()).collect();
            geometry::local_simplex_volume(&verts).expect("placing cell")
        })
        .sum();
    let cell_vol: Rat = t
        .cells
        .iter()
        .map(|c| geometry::local_simplex_volume(&t.cell_local(c)).expect("checked above"))
        .sum();
    if cell_vol != hull_vol {
        return Err(format!("cells cover volume {cell_vol}, hull has {hull_vol}"));
    }
    // Proper pairwise contact: for cells S, T the intersection must be the
    // simplex spanned by their common vertices. Equivalently, no point of
    // S ∩ T may have a positive barycentric weight on a non-shared vertex.
    let barys: Vec<Vec<(Vec<Rat>, Rat)>> = t
        .cells
        .iter()
        .map(|c| barycentric_functions(&t.cell_local(c)))
        .collect();
    for i in 0..t.cells.len() {
        for j in i + 1..t.cells.len() {
            let (s, u) = (&t.cells[i].0, &t.cells[j].0);
            for (owner, other) in [(i, j), (j, i)] {
                let own = &t.cells[owner].0;
                for (vi, &v) in own.iter().enumerate() {
                    if t.cells[other].0.contains(&v) {
                        continue;
                    }
                    // x in S, x in T, lambda_v(x) > 0 must be infeasible.
                    let mut cons: Vec<Constraint> = Vec::new();
                    for which in [i, j] {
                        for (alpha, beta) in &barys[which] {
                            // lambda >= 0  <=>  -alpha.x <= beta
                            cons.push(Constraint::le(
                                alpha.iter().map(|a| -a).collect(),
                                beta.clone(),
                            ));
                        }
                    }
                    let (alpha, beta) = &barys[owner][vi];
                    cons.push(Constraint::lt(
                        alpha.iter().map(|a| -a).collect(),
                        beta.clone(),
                    ));
                    if linalg::feasible(cons, d) {
                        return Err(format!(
                            "cells {s:?} and {u:?} meet outside their common face"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Counts the faces of every dimension, deduplicated across cells.
pub fn f_vector(t: &Triangulation) -> FVector {
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in &t.cells {
        let n = c.0.len();
        for mask in 1u32..(1 << n) {
            let f: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| c.0[i]).collect();
            faces.insert(f);
        }
    }
    let mut entries = vec![0i64; t.dim + 2];
    entries[0] = 1;
    for f in &faces {
        entries[f.len()] += 1;
    }
    FVector { entries }
}

/// All faces of the triangulation with exactly `size` vertices.
fn faces_of_size(t: &Triangulation, size: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for c in &t.cells {
        let n = c.0.len();
        for mask in 1u32..(1 << n) {
            if (mask.count_ones() as usize) == size {
                let f: Vec<usize> =
                    (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| c.0[i]).collect();
                out.insert(f);
            }
        }
    }
    out
}

/// `h_k = sum_i (-1)^{k-i} C(d+1-i, k-i) f_{i-1}`.
pub fn h_from_f(f: &FVector, d: usize) -> HVector {
    let d = d as i64;
    let entries: Vec<i64> = (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom(d + 1 - i, k - i) * f.f(i - 1)
                })
                .sum()
        })
        .collect();
    HVector::new(entries).expect("h-vector of a triangulation is valid")
}

/// Histogram of shelling indices; checked against `h_from_f`, which it must
/// equal for every valid shelling.
pub fn h_from_shelling(t: &Triangulation, sh: &Shelling) -> Result<HVector, Error> {
    let indices = shelling_indices(t, &sh.order)?;
    if indices != sh.indices {
        return Err(Error::NotAShelling("stored indices do not match the order".into()));
    }
    let mut entries = vec![0i64; t.dim + 1];
    for &i in &indices {
        entries[i] += 1;
    }
    let h = HVector::new(entries)
        .map_err(|_| Error::NotAShelling("index histogram is not a valid h-vector".into()))?;
    let via_f = h_from_f(&f_vector(t), t.dim);
    if h != via_f {
        return Err(Error::EquivalenceViolation(format!(
            "shelling h-vector {:?} differs from f-vector h-vector {:?}",
            h.entries, via_f.entries
        )));
    }
    // Basic identities that hold for every shellable triangulation.
    let m = t.cells.len() as i64;
    let n = t.points.len() as i64;
    let d = t.dim as i64;
    if h.entries.iter().sum::<i64>() != m || h.get(1) != n - d - 1 {
        return Err(Error::EquivalenceViolation(format!(
            "h-vector {:?} fails sum/h1 identities (m={m}, n={n}, d={d})",
            h.entries
        )));
    }
    Ok(h)
}

pub const DEFAULT_SHELLING_BUDGET: usize = 1_000_000;

/// Backtracking search for a shelling order; `None` after exhausting the
/// node budget or the search space. `None` does not certify unshellability.
pub fn find_shelling(t: &Triangulation, budget: usize) -> Option<Shelling> {
    fn go(
        t: &Triangulation,
        prefix: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut usize,
        budget: usize,
    ) -> bool {
        if prefix.len() == t.cells.len() {
            return true;
        }
        for c in 0..t.cells.len() {
            if used[c] {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return false;
            }
            prefix.push(c);
            let ok = shelling_indices(t, prefix).is_ok();
            if ok {
                used[c] = true;
                if go(t, prefix, used, nodes, budget) {
                    return true;
                }
                used[c] = false;
            }
            prefix.pop();
            if *nodes > budget {
                return false;
            }
        }
        false
    }
    let mut prefix = Vec::new();
    let mut used = vec![false; t.cells.len()];
    let mut nodes = 0;
    if go(t, &mut prefix, &mut used, &mut nodes, budget) {
        let indices = shelling_indices(t, &prefix).expect("search validated the order");
        Some(Shelling { order: prefix, indices })
    } else {
        None
    }
}

/// Point indices tight on each hull facet (all points, not just vertices).
fn facet_point_sets(b: &PointSet) -> Result<(geometry::Polytope, Vec<BTreeSet<usize>>), Error> {
    let hull = geometry::convex_hull(b)?;
    let local = hull.local_coords();
    let sets = hull
        .facets
        .iter()
        .map(|f| {
            (0..b.len())
                .filter(|&i| f.plane.eval(&local[i]).is_zero())
                .collect()
        })
        .collect();
    Ok((hull, sets))
}

/// The four equivalent certificates for stackedness, evaluated
/// independently; disagreement is a software defect.
pub fn is_stacked(t: &Triangulation) -> Result<bool, Error> {
    let d = t.dim;
    let m = t.cells.len();
    let n = t.points.len();
    // (i) cell count.
    let c1 = m == n - d;
    // (ii) h_j = 0 for j >= 2.
    let h = h_from_f(&f_vector(t), d);
    let c2 = (2..=d).all(|j| h.get(j) == 0);
    // (iii) the dual graph is a tree.
    let mut edges = 0usize;
    let mut adj = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            let shared = t.cells[i].0.iter().filter(|x| t.cells[j].0.contains(x)).count();
            if shared == d {
                edges += 1;
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let mut seen = vec![false; m];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::TheoremViolation(
            "dual graph of a triangulation with convex support must be connected".into(),
        ));
    }
    let c3 = edges == m - 1;
    // (iv) every face of dimension <= d-2 lies in the hull boundary.
    let (_, facet_sets) = facet_point_sets(&t.points)?;
    let mut c4 = true;
    'outer: for size in 1..=d.saturating_sub(1) {
        for face in faces_of_size(t, size) {
            if !facet_sets.iter().any(|s| face.iter().all(|i| s.contains(i))) {
                c4 = false;
                break 'outer;
            }
        }
    }
    if c1 != c2 || c2 != c3 || c3 != c4 {
        return Err(Error::EquivalenceViolation(format!(
            "stackedness certificates disagree: count={c1} h={c2} tree={c3} boundary={c4}"
        )));
    }
    Ok(c1)
}

/// True iff every subset of at most `d-1` points of `b` lies in the hull
/// boundary (equivalently: shares a hull facet).
pub fn is_totally_stackable(b: &PointSet) -> Result<bool, Error> {
    let (hull, facet_sets) = facet_point_sets(b)?;
    let d = hull.dim;
    if d <= 1 {
        return Ok(true);
    }
    let n = b.len();
    // Checking subsets of size exactly d-1 suffices: smaller subsets are
    // contained in some (d-1)-subset, and containment passes down.
    let mut subset: Vec<usize> = (0..d - 1).collect();
    loop {
        if !facet_sets.iter().any(|s| subset.iter().all(|i| s.contains(i))) {
            return Ok(false);
        }
        // Next lexicographic (d-1)-combination of 0..n.
        let k = subset.len();
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            if subset[i] != i + n - k {
                break;
            }
        }
        if i == 0 && subset[0] == n - k {
            return Ok(true);
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Edges of the hull (as point-index pairs) that carry configuration points
/// in their relative interior.
fn loaded_edges_of(b: &PointSet, hull: &geometry::Polytope) -> Result<Vec<(usize, usize)>, Error> {
    let vertex_points: BTreeSet<usize> = hull.vertices.iter().copied().collect();
    let mut loaded: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, p) in b.iter().enumerate() {
        if vertex_points.contains(&i) {
            continue;
        }
        match hull.membership(p) {
            Membership::OnBoundary(face) if face.len() == 2 => {
                loaded.insert((hull.vertices[face[0]], hull.vertices[face[1]]));
            }
            // A 1-dimensional hull is itself the edge; interior points load it.
            Membership::Interior if hull.dim == 1 => {
                let mut v = hull.vertices.clone();
                v.sort_unstable();
                loaded.insert((v[0], v[1]));
            }
            _ => {
                // Not on an edge: the caller screens with total stackability,
                // so a non-edge point means "no shape".
                return Err(Error::BadParams(format!(
                    "point {i} does not lie on a hull edge"
                )));
            }
        }
    }
    Ok(loaded.into_iter().collect())
}

/// Hull edges between vertices, as point-index pairs.
fn hull_edges(hull: &geometry::Polytope) -> Vec<(usize, usize)> {
    if hull.dim == 1 {
        let mut v = hull.vertices.clone();
        v.sort_unstable();
        return vec![(v[0], v[1])];
    }
    hull.faces(1)
        .into_iter()
        .map(|e| {
            let a = hull.vertices[e[0]];
            let b = hull.vertices[e[1]];
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Greedy apex peeling: a vertex is an apex when it lies outside the affine
/// hull of the remaining vertices. Returns (apexes in peel order, base).
fn peel_apexes(b: &PointSet, vertices: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut apexes = Vec::new();
    let mut rest: Vec<usize> = vertices.to_vec();
    loop {
        if rest.len() <= 1 {
            break;
        }
        let mut peeled = None;
        for (pos, &v) in rest.iter().enumerate() {
            let others: Vec<Point> = rest
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| b.point(u).clone())
                .collect();
            let with: Vec<Point> = rest.iter().map(|&u| b.point(u).clone()).collect();
            let dim_without =
                geometry::affine_dimension(&PointSet::new(b.dim(), others).unwrap());
            let dim_with = geometry::affine_dimension(&PointSet::new(b.dim(), with).unwrap());
            if dim_without + 1 == dim_with {
                peeled = Some(pos);
                break;
            }
        }
        match peeled {
            Some(pos) => apexes.push(rest.remove(pos)),
            None => break,
        }
    }
    (apexes, rest)
}

/// Walks the boundary cycle of a polygonal vertex set using hull edges.
fn polygon_cycle(edges: &[(usize, usize)], verts: &[usize]) -> Option<Vec<usize>> {
    let vs: BTreeSet<usize> = verts.iter().copied().collect();
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        if vs.contains(&a) && vs.contains(&b) {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    if adj.len() != vs.len() || adj.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = *vs.iter().next().unwrap();
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = *adj[&start].iter().min().unwrap();
    while cur != start {
        cycle.push(cur);
        let next = *adj[&cur].iter().find(|&&n| n != prev)?;
        prev = cur;
        cur = next;
    }
    (cycle.len() == vs.len()).then_some(cycle)
}

/// Tries to read `base` (point indices) as a prism over a simplex: two
/// disjoint simplex facets joined by a perfect matching of edges.
/// Returns (bottom, top) with `bottom[i]` matched to `top[i]`.
fn prism_structure(b: &PointSet, base: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let pts: Vec<Point> = base.iter().map(|&i| b.point(i).clone()).collect();
    let sub = PointSet::new(b.dim(), pts).ok()?;
    let hull = geometry::convex_hull(&sub).ok()?;
    let q = hull.dim;
    if base.len() != 2 * q || hull.vertices.len() != base.len() {
        return None;
    }
    // Positions in `sub` map back to point indices via value lookup.
    let back: Vec<usize> = sub
        .points()
        .iter()
        .map(|p| base.iter().copied().find(|&i| b.point(i) == p).unwrap())
        .collect();
    let edges: Vec<(usize, usize)> = hull_edges(&hull)
        .into_iter()
        .map(|(a, c)| (back[a], back[c]))
        .collect();
    for f in &hull.facets {
        if f.vertices.len() != q {
            continue;
        }
        let f1: BTreeSet<usize> = f.vertices.iter().map(|&vi| back[hull.vertices[vi]]).collect();
        let f2: BTreeSet<usize> = base.iter().copied().filter(|i| !f1.contains(i)).collect();
        if f2.len() != q {
            continue;
        }
        // f2 must itself be a facet.
        let f2_is_facet = hull.facets.iter().any(|g| {
            let gs: BTreeSet<usize> =
                g.vertices.iter().map(|&vi| back[hull.vertices[vi]]).collect();
            gs == f2
        });
        if !f2_is_facet {
            continue;
        }
        // Vertical edges must match the two facets perfectly.
        let mut bottom = Vec::new();
        let mut top = Vec::new();
        let mut ok = true;
        for &v in &f1 {
            let partners: Vec<usize> = edges
                .iter()
                .filter_map(|&(a, c)| {
                    if a == v && f2.contains(&c) {
                        Some(c)
                    } else if c == v && f2.contains(&a) {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            if partners.len() != 1 {
                ok = false;
                break;
            }
            bottom.push(v);
            top.push(partners[0]);
        }
        if ok && top.iter().collect::<BTreeSet<_>>().len() == q {
            return Some((bottom, top));
        }
    }
    None
}

/// Classifies a totally stackable configuration into the shape trichotomy.
pub fn classify_shape(b: &PointSet) -> Result<StackableShape, Error> {
    if !is_totally_stackable(b)? {
        return Ok(StackableShape::NotTotallyStackable);
    }
    let hull = geometry::convex_hull(b)?;
    let d = hull.dim;
    let loaded = match loaded_edges_of(b, &hull) {
        Ok(l) => l,
        Err(_) => return Ok(StackableShape::NotTotallyStackable),
    };
    let verts = hull.vertices.clone();
    if d == 1 {
        return Ok(StackableShape::SimplexLoadedAtVertex {
            apex: if loaded.is_empty() { None } else { Some(verts[0]) },
            loaded_edges: loaded,
        });
    }
    let is_simplex = verts.len() == d + 1;
    if is_simplex {
        // Common endpoint of all loaded edges?
        let apex = if loaded.is_empty() {
            return Ok(StackableShape::SimplexLoadedAtVertex { loaded_edges: loaded, apex: None });
        } else {
            let mut common: BTreeSet<usize> = [loaded[0].0, loaded[0].1].into_iter().collect();
            for &(a, c) in &loaded[1..] {
                common.retain(|&v| v == a || v == c);
            }
            common.into_iter().min()
        };
        if let Some(v) = apex {
            return Ok(StackableShape::SimplexLoadedAtVertex {
                loaded_edges: loaded,
                apex: Some(v),
            });
        }
        // A simplex can still be case (ii) when the loaded edges are the
        // sides of one triangular face.
        let endpoints: BTreeSet<usize> =
            loaded.iter().flat_map(|&(a, c)| [a, c]).collect();
        if endpoints.len() == 3 {
            let tri: Vec<usize> = endpoints.iter().copied().collect();
            let edges = hull_edges(&hull);
            if let Some(cycle) = polygon_cycle(&edges, &tri) {
                let apexes: Vec<usize> =
                    verts.iter().copied().filter(|v| !endpoints.contains(v)).collect();
                return Ok(StackableShape::IteratedPyramidOverPolygon {
                    apexes,
                    polygon: cycle,
                    loaded_edges: loaded,
                });
            }
        }
        return Ok(StackableShape::NotTotallyStackable);
    }
    // Non-simplex hull: peel pyramid apexes down to an unpeelable base.
    let (apexes, base) = peel_apexes(b, &verts);
    let base_points: Vec<Point> = base.iter().map(|&i| b.point(i).clone()).collect();
    let base_dim =
        geometry::affine_dimension(&PointSet::new(b.dim(), base_points).unwrap());
    let loaded_in = |allowed: &BTreeSet<(usize, usize)>| {
        loaded.iter().all(|e| allowed.contains(e))
    };
    if base_dim >= 3 {
        if let Some((bottom, top)) = prism_structure(b, &base) {
            let vertical: BTreeSet<(usize, usize)> = bottom
                .iter()
                .zip(&top)
                .map(|(&a, &c)| (a.min(c), a.max(c)))
                .collect();
            if loaded_in(&vertical) {
                return Ok(StackableShape::IteratedPyramidOverPrism {
                    apexes,
                    bottom,
                    top,
                    loaded_edges: loaded,
                });
            }
        }
    } else if base_dim == 2 {
        let edges = hull_edges(&hull);
        if let Some(cycle) = polygon_cycle(&edges, &base) {
            let sides: BTreeSet<(usize, usize)> = cycle
                .iter()
                .zip(cycle.iter().cycle().skip(1))
                .map(|(&a, &c)| (a.min(c), a.max(c)))
                .collect();
            if loaded_in(&sides) {
                return Ok(StackableShape::IteratedPyramidOverPolygon {
                    apexes,
                    polygon: cycle,
                    loaded_edges: loaded,
                });
            }
        }
    }
    Ok(StackableShape::NotTotallyStackable)
}

/// True iff every cell's volume equals `det(L) / d!` — the minimum possible
/// for simplices with vertices in a coset of the lattice.
pub fn is_unimodular(t: &Triangulation, l: &DiffLattice) -> Result<bool, Error> {
    let Some(det) = l.determinant.clone() else {
        return Err(Error::RankDeficient);
    };
    if t.dim != t.points.dim() {
        return Err(Error::RankDeficient);
    }
    let d = t.dim as i64;
    let mut fact = Rat::one();
    for i in 2..=d {
        fact *= Rat::from_integer(i.into());
    }
    let target = det / fact;
    for c in &t.cells {
        let vol = geometry::simplex_volume(&t.points, c)?;
        if vol != target {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::difference_lattice;
    use crate::rat::{int, rat};

    fn ipt(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&n| int(n)).collect())
    }

    fn set(dim: usize, pts: Vec<Point>) -> PointSet {
        PointSet::new(dim, pts).unwrap()
    }

    fn square() -> PointSet {
        set(2, vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 1]), ipt(&[1, 1])])
    }

    fn square_with_center() -> PointSet {
        let mut pts = square().points().to_vec();
        pts.push(Point(vec![rat(1, 2), rat(1, 2)]));
        set(2, pts)
    }

    #[test]
    fn placing_square() {
        let (t, sh) = placing_triangulation(&square(), None).unwrap();
        assert_eq!(t.cells.len(), 2);
        assert_eq!(sh.indices, vec![0, 1]);
        // The two triangles share the diagonal.
        let shared: Vec<usize> = t.cells[0]
            .0
            .iter()
            .copied()
            .filter(|x| t.cells[1].0.contains(x))
            .collect();
        assert_eq!(shared.len(), 2);
    }

    #[test]
    fn placing_interval() {
        let s = set(1, vec![ipt(&[0]), Point(vec![rat(1, 2)]), ipt(&[1])]);
        let (t, sh) = placing_triangulation(&s, None).unwrap();
        assert_eq!(
            t.cells,
            vec![SimplexVerts(vec![0, 1]), SimplexVerts(vec![1, 2])]
        );
        assert_eq!(sh.indices, vec![0, 1]);
    }

    #[test]
    fn placing_single_simplex() {
        let tri = set(2, vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 1])]);
        let (t, sh) = placing_triangulation(&tri, None).unwrap();
        assert_eq!(t.cells.len(), 1);
        assert_eq!(sh.indices, vec![0]);
    }

    #[test]
    fn placing_rejects_bad_order() {
        // Center placed last sits inside the hull of the others.
        let s = square_with_center();
        let center = s.position(&Point(vec![rat(1, 2), rat(1, 2)])).unwrap();
        let mut order: Vec<usize> = (0..s.len()).filter(|&i| i != center).collect();
        order.push(center);
        assert!(matches!(
            placing_triangulation(&s, Some(&order)),
            Err(Error::InvalidPlacingOrder(_))
        ));
        // The default order handles it (center is placed early enough).
        assert!(placing_triangulation(&s, None).is_ok());
    }

    #[test]
    fn verify_accepts_placing_and_rejects_broken() {
        let (t, _) = placing_triangulation(&square_with_center(), None).unwrap();
        assert_eq!(verify_triangulation(&t), Ok(()));
        // Overlapping pair on the square.
        let bad = Triangulation::new(
            square(),
            vec![SimplexVerts::new(vec![0, 1, 2]), SimplexVerts::new(vec![0, 1, 3])],
        )
        .unwrap();
        assert!(verify_triangulation(&bad).is_err());
        // Coverage gap.
        let gap = Triangulation::new(square(), vec![SimplexVerts::new(vec![0, 1, 2])]).unwrap();
        assert!(verify_triangulation(&gap).is_err());
    }

    #[test]
    fn f_and_h_vectors() {
        let (t, sh) = placing_triangulation(&square(), None).unwrap();
        let f = f_vector(&t);
        assert_eq!(f.entries, vec![1, 4, 5, 2]);
        let h = h_from_f(&f, 2);
        assert_eq!(h.entries, vec![1, 1, 0]);
        assert_eq!(h_from_shelling(&t, &sh).unwrap().entries, vec![1, 1, 0]);

        // Fan around the center: four triangles.
        let c = square_with_center();
        let center = c.position(&Point(vec![rat(1, 2), rat(1, 2)])).unwrap();
        let mut order = vec![center];
        order.extend((0..c.len()).filter(|&i| i != center));
        let (fan, fan_sh) = placing_triangulation(&c, Some(&order)).unwrap();
        assert_eq!(fan.cells.len(), 4);
        let f = f_vector(&fan);
        assert_eq!(f.entries, vec![1, 5, 8, 4]);
        assert_eq!(h_from_f(&f, 2).entries, vec![1, 2, 1]);
        assert_eq!(h_from_shelling(&fan, &fan_sh).unwrap().entries, vec![1, 2, 1]);

        // Single simplex.
        let tri = set(2, vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 1])]);
        let (t1, _) = placing_triangulation(&tri, None).unwrap();
        let f = f_vector(&t1);
        assert_eq!(f.entries, vec![1, 3, 3, 1]);
        assert_eq!(h_from_f(&f, 2).entries, vec![1, 0, 0]);
    }

    #[test]
    fn bad_shelling_is_rejected() {
        // Path of four triangles: cells at the two ends do not touch, so an
        // order starting with them is not a shelling. Canonical point order:
        // (0,0)=0, (1,0)=1, (1,1)=2, (2,0)=3, (2,1)=4, (3,0)=5.
        let s = set(
            2,
            vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[2, 0]), ipt(&[3, 0]), ipt(&[1, 1]), ipt(&[2, 1])],
        );
        let t = Triangulation::new(
            s,
            vec![
                SimplexVerts::new(vec![0, 1, 2]),
                SimplexVerts::new(vec![1, 2, 3]),
                SimplexVerts::new(vec![2, 3, 4]),
                SimplexVerts::new(vec![3, 4, 5]),
            ],
        )
        .unwrap();
        assert_eq!(verify_triangulation(&t), Ok(()));
        assert!(matches!(
            h_from_shelling(&t, &Shelling { order: vec![0, 3, 1, 2], indices: vec![0, 0, 1, 2] }),
            Err(Error::NotAShelling(_))
        ));
        let sh = find_shelling(&t, DEFAULT_SHELLING_BUDGET).unwrap();
        assert_eq!(h_from_shelling(&t, &sh).unwrap().entries, vec![1, 3, 0]);
        assert!(is_stacked(&t).unwrap());
    }

    #[test]
    fn stackedness() {
        let c = square_with_center();
        let center = c.position(&Point(vec![rat(1, 2), rat(1, 2)])).unwrap();
        let mut order = vec![center];
        order.extend((0..c.len()).filter(|&i| i != center));
        let (fan, _) = placing_triangulation(&c, Some(&order)).unwrap();
        assert!(!is_stacked(&fan).unwrap());

        let tri = set(2, vec![ipt(&[0, 0]), ipt(&[1, 0]), ipt(&[0, 1])]);
        let (t, _) = placing_triangulation(&tri, None).unwrap();
        assert!(is_stacked(&t).unwrap());
    }

    #[test]
    fn total_stackability() {
        let tetra = set(
            3,
            vec![ipt(&[0, 0, 0]), ipt(&[1, 0, 0]), ipt(&[0, 1, 0]), ipt(&[0, 0, 1])],
        );
        assert!(is_totally_stackable(&tetra).unwrap());
        assert!(!is_totally_stackable(&square_with_center()).unwrap());
        // Prism with a midpoint on a vertical edge.
        let mut prism = vec![
            ipt(&[0, 0, 0]),
            ipt(&[1, 0, 0]),
            ipt(&[0, 1, 0]),
            ipt(&[0, 0, 2]),
            ipt(&[1, 0, 2]),
            ipt(&[0, 1, 2]),
        ];
        prism.push(ipt(&[0, 0, 1]));
        assert!(is_totally_stackable(&set(3, prism)).unwrap());
        // Square: d=2, subsets of size 1 must lie on the boundary; all do.
        assert!(is_totally_stackable(&square()).unwrap());
    }

    #[test]
    fn classify_simplex_loaded() {
        // Tetrahedron plus two points on one edge.
        let mut pts = vec![
            ipt(&[0, 0, 0]),
            ipt(&[3, 0, 0]),
            ipt(&[0, 3, 0]),
            ipt(&[0, 0, 3]),
        ];
        pts.push(ipt(&[1, 0, 0]));
        pts.push(ipt(&[2, 0, 0]));
        let b = set(3, pts);
        match classify_shape(&b).unwrap() {
            StackableShape::SimplexLoadedAtVertex { loaded_edges, apex } => {
                assert_eq!(loaded_edges.len(), 1);
                assert!(apex.is_some());
            }
            other => panic!("expected simplex case, got {other:?}"),
        }
    }

    #[test]
    fn classify_polygon_cases() {
        match classify_shape(&square()).unwrap() {
            StackableShape::IteratedPyramidOverPolygon { apexes, polygon, loaded_edges } => {
                assert!(apexes.is_empty());
                assert_eq!(polygon.len(), 4);
                assert!(loaded_edges.is_empty());
            }
            other => panic!("expected polygon case, got {other:?}"),
        }
        // Pyramid over a pentagon.
        let mut pts = vec![
            ipt(&[0, 0, 0]),
            ipt(&[4, 0, 0]),
            ipt(&[6, 3, 0]),
            ipt(&[2, 6, 0]),
            ipt(&[-2, 3, 0]),
        ];
        pts.push(ipt(&[2, 2, 5]));
        match classify_shape(&set(3, pts)).unwrap() {
            StackableShape::IteratedPyramidOverPolygon { apexes, polygon, .. } => {
                assert_eq!(apexes.len(), 1);
                assert_eq!(polygon.len(), 5);
            }
            other => panic!("expected pyramid over polygon, got {other:?}"),
        }
        // Simplex with all three sides of one face loaded: no common vertex,
        // so this is the case-(ii) reading with the fourth vertex as apex.
        let mut pts = vec![
            ipt(&[0, 0, 0]),
            ipt(&[2, 0, 0]),
            ipt(&[0, 2, 0]),
            ipt(&[0, 0, 2]),
        ];
        pts.push(ipt(&[1, 0, 0]));
        pts.push(ipt(&[1, 1, 0]));
        pts.push(ipt(&[0, 1, 0]));
        let b = set(3, pts);
        match classify_shape(&b).unwrap() {
            StackableShape::IteratedPyramidOverPolygon { apexes, polygon, loaded_edges } => {
                assert_eq!(apexes, vec![b.position(&ipt(&[0, 0, 2])).unwrap()]);
                assert_eq!(polygon.len(), 3);
                assert_eq!(loaded_edges.len(), 3);
            }
            other => panic!("expected polygon reading of a simplex, got {other:?}"),
        }
    }

    #[test]
    fn classify_prism_case() {
        // Pyramid apex over a triangular prism, midpoints on vertical edges.
        let mut pts = vec![
            ipt(&[0, 0, 0, 0]),
            ipt(&[2, 0, 0, 0]),
            ipt(&[0, 2, 0, 0]),
            ipt(&[0, 0, 2, 0]),
            ipt(&[2, 0, 2, 0]),
            ipt(&[0, 2, 2, 0]),
        ];
        pts.push(ipt(&[0, 0, 1, 0])); // midpoint of a vertical edge
        pts.push(ipt(&[1, 1, 1, 3])); // apex off the hyperplane
        let b = set(4, pts);
        match classify_shape(&b).unwrap() {
            StackableShape::IteratedPyramidOverPrism { apexes, bottom, top, loaded_edges } => {
                assert_eq!(apexes.len(), 1);
                assert_eq!(bottom.len(), 3);
                assert_eq!(top.len(), 3);
                assert_eq!(loaded_edges.len(), 1);
            }
            other => panic!("expected prism case, got {other:?}"),
        }
    }

    #[test]
    fn classify_not_stackable() {
        assert_eq!(
            classify_shape(&square_with_center()).unwrap(),
            StackableShape::NotTotallyStackable
        );
    }

    #[test]
    fn unimodularity() {
        let (t, _) = placing_triangulation(&square(), None).unwrap();
        let l = difference_lattice(&square());
        assert!(is_unimodular(&t, &l).unwrap());

        let thirds = set(1, vec![ipt(&[0]), Point(vec![rat(1, 3)]), ipt(&[1])]);
        let (t, _) = placing_triangulation(&thirds, None).unwrap();
        let l = difference_lattice(&thirds);
        assert!(!is_unimodular(&t, &l).unwrap());

        let halves = set(1, vec![ipt(&[0]), Point(vec![rat(1, 2)]), ipt(&[1])]);
        let (t, _) = placing_triangulation(&halves, None).unwrap();
        let l = difference_lattice(&halves);
        assert!(is_unimodular(&t, &l).unwrap());
    }

    #[test]
    fn totally_stackable_matches_classifier() {
        let samples: Vec<PointSet> = vec![
            square(),
            square_with_center(),
            set(2, vec![ipt(&[0, 0]), ipt(&[2, 0]), ipt(&[0, 2]), ipt(&[1, 0])]),
            set(2, vec![ipt(&[0, 0]), ipt(&[2, 0]), ipt(&[0, 2]), ipt(&[1, 1])]),
            set(
                3,
                vec![ipt(&[0, 0, 0]), ipt(&[1, 0, 0]), ipt(&[0, 1, 0]), ipt(&[0, 0, 1])],
            ),
        ];
        for b in samples {
            let ts = is_totally_stackable(&b).unwrap();
            let shape = classify_shape(&b).unwrap();
            assert_eq!(
                ts,
                shape != StackableShape::NotTotallyStackable,
                "disagreement on {b:?}"
            );
        }
    }

    #[test]
    fn stacked_iff_totally_stackable_sampled_orders() {
        // A totally stackable set: every placing triangulation is stacked.
        let b = set(2, vec![ipt(&[0, 0]), ipt(&[2, 0]), ipt(&[0, 2]), ipt(&[1, 0])]);
        assert!(is_totally_stackable(&b).unwrap());
        let orders: Vec<Vec<usize>> = vec![
            vec![0, 1, 2, 3],
            vec![3, 2, 1, 0],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
        ];
        for ord in orders {
            if let Ok((t, _)) = placing_triangulation(&b, Some(&ord)) {
                assert!(is_stacked(&t).unwrap(), "order {ord:?}");
            }
        }
        // Square+center admits a non-stacked triangulation (the fan), which
        // refutes total stackability.
        let c = square_with_center();
        let center = c.position(&Point(vec![rat(1, 2), rat(1, 2)])).unwrap();
        let mut order = vec![center];
        order.extend((0..c.len()).filter(|&i| i != center));
        let (fan, _) = placing_triangulation(&c, Some(&order)).unwrap();
        assert!(!is_stacked(&fan).unwrap());
        assert!(!is_totally_stackable(&c).unwrap());
    }
}
