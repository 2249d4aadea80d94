//! Exact rational points, point sets, convex hulls, and face queries.
//!
//! Hulls are built by incremental insertion (beneath-beyond) with exact
//! sidedness predicates. Degenerate inputs are handled by first computing an
//! affine-hull coordinate chart and running the insertion intrinsically; the
//! same insertion engine also powers placing triangulations.

use crate::error::Error;
use crate::linalg;
use crate::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

/// A point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Vec<Rat> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn translate(&self, v: &[Rat]) -> Point {
        Point(self.0.iter().zip(v).map(|(a, b)| a + b).collect())
    }

    pub fn origin(dim: usize) -> Point {
        Point(vec![Rat::zero(); dim])
    }
}

/// A duplicate-free point set in canonical (lexicographic-by-value) order,
/// so set equality is sequence equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a set from arbitrary points: sorts canonically and drops
    /// exact duplicates. Errors if any point has the wrong length.
    pub fn new(dim: usize, points: Vec<Point>) -> Result<PointSet, Error> {
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch(dim, p.dim()));
            }
        }
        let mut points = points;
        points.sort();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn position(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// True iff `other` is a subset of `self`.
    pub fn is_superset(&self, other: &PointSet) -> bool {
        other.iter().all(|p| self.contains(p))
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.iter().filter(|p| !other.contains(p)).cloned().collect(),
        }
    }

    /// Set union.
    pub fn union(&self, other: &PointSet) -> Result<PointSet, Error> {
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        PointSet::new(self.dim, pts)
    }

    /// Translate every point by `v`.
    pub fn translated(&self, v: &[Rat]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.translate(v)).collect(),
        }
    }
}

/// Vertex indices of a simplex inside some `PointSet` or local coordinate list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SimplexVerts(pub Vec<usize>);

impl SimplexVerts {
    pub fn new(mut indices: Vec<usize>) -> SimplexVerts {
        indices.sort_unstable();
        SimplexVerts(indices)
    }
}

/// An affine coordinate chart: `x = base + sum t_i * basis_i`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub base: Point,
    pub basis: Vec<Vec<Rat>>,
}

impl Chart {
    /// Greedy affine basis over the set's canonical order.
    pub fn from_set(s: &PointSet) -> Chart {
        assert!(!s.is_empty());
        let base = s.point(0).clone();
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        for p in s.iter().skip(1) {
            let v = p.sub(&base);
            let mut probe = basis.clone();
            probe.push(v.clone());
            if linalg::rank(&probe) > basis.len() {
                basis.push(v);
            }
        }
        Chart { base, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Local coordinates of `p`, or `None` if `p` is outside the affine hull.
    pub fn to_local(&self, p: &Point) -> Option<Vec<Rat>> {
        let rhs = p.sub(&self.base);
        if self.basis.is_empty() {
            return if rhs.iter().all(|x| x.is_zero()) {
                Some(vec![])
            } else {
                None
            };
        }
        // Columns of the system are the basis vectors.
        let ambient = self.base.dim();
        let a: Vec<Vec<Rat>> = (0..ambient)
            .map(|row| self.basis.iter().map(|b| b[row].clone()).collect())
            .collect();
        let t = linalg::solve(&a, &rhs)?;
        // `solve` zero-fills free variables; verify the solution exactly.
        let back = self.to_ambient(&t);
        if &back == p {
            Some(t)
        } else {
            None
        }
    }

    pub fn to_ambient(&self, t: &[Rat]) -> Point {
        let mut coords = self.base.0.clone();
        for (ti, b) in t.iter().zip(&self.basis) {
            for (c, bc) in coords.iter_mut().zip(b) {
                *c = &*c + &(ti * bc);
            }
        }
        Point(coords)
    }
}

/// Rank of the difference space of `s`; 0 for a single point.
pub fn affine_dimension(s: &PointSet) -> usize {
    Chart::from_set(s).dim()
}

/// Exact d-dimensional simplex volume `|det| / d!` for `d+1` vertices of `ctx`.
pub fn simplex_volume(ctx: &PointSet, s: &SimplexVerts) -> Result<Rat, Error> {
    if s.0.len() != ctx.dim() + 1 {
        return Err(Error::DimensionMismatch(ctx.dim() + 1, s.0.len()));
    }
    let pts: Vec<&Point> = s.0.iter().map(|&i| ctx.point(i)).collect();
    local_simplex_volume(&pts.iter().map(|p| p.0.clone()).collect::<Vec<_>>())
}

/// Volume of a full-dimensional simplex given in local coordinates.
pub(crate) fn local_simplex_volume(verts: &[Vec<Rat>]) -> Result<Rat, Error> {
    let d = verts.len() - 1;
    if d == 0 {
        return Ok(Rat::one());
    }
    let rows: Vec<Vec<Rat>> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(&verts[0]).map(|(a, b)| a - b).collect())
        .collect();
    let det = linalg::det(&rows);
    if det.is_zero() {
        return Err(Error::DegenerateSimplex);
    }
    let mut fact = BigInt::one();
    for i in 2..=d {
        fact *= BigInt::from(i);
    }
    Ok(det.abs() / Rat::from_integer(fact))
}

/// Oriented hyperplane `normal . x <= offset` in local coordinates, with the
/// interior strictly beneath. Canonically scaled to primitive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Hyperplane {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Hyperplane {
    /// The hyperplane through the affinely independent `face` points, oriented
    /// so that `beneath` lies strictly on the `<=` side.
    pub(crate) fn through(face: &[Vec<Rat>], beneath: &[Rat], dim: usize) -> Hyperplane {
        let rows: Vec<Vec<Rat>> = face[1..]
            .iter()
            .map(|v| v.iter().zip(&face[0]).map(|(a, b)| a - b).collect())
            .collect();
        let n = linalg::kernel_vector(&rows, dim).expect("face must span a hyperplane");
        let off: Rat = dot(&n, &face[0]);
        let side = dot(&n, beneath);
        let (n, off) = if side < off { (n, off) } else {
            (n.iter().map(|x| -x).collect(), -off)
        };
        Self::canonical(n, off)
    }

    fn canonical(normal: Vec<Rat>, offset: Rat) -> Hyperplane {
        let mut lcm = BigInt::one();
        for x in normal.iter().chain(std::iter::once(&offset)) {
            lcm = lcm.lcm(x.denom());
        }
        let scale = Rat::from_integer(lcm);
        let mut ints: Vec<BigInt> = normal.iter().map(|x| (x * &scale).to_integer()).collect();
        let mut off = (offset * &scale).to_integer();
        let mut g = off.abs();
        for x in &ints {
            g = g.gcd(&x.abs());
        }
        if !g.is_zero() && !g.is_one() {
            for x in ints.iter_mut() {
                *x /= &g;
            }
            off /= &g;
        }
        Hyperplane { normal: ints, offset: off }
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (n, c) in self.normal.iter().zip(x) {
            acc += Rat::from_integer(n.clone()) * c;
        }
        acc - Rat::from_integer(self.offset.clone())
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Incremental placing over full-dimensional local coordinates.
///
/// Inserts points in `order`; each point must either raise the affine
/// dimension of the prefix (all current cells are coned to it) or lie
/// strictly outside the prefix hull (pyramids over the strictly visible
/// boundary facets are added). Returns full-dimensional cells in creation
/// order, which is a shelling order.
pub(crate) fn placing_cells(
    local: &[Vec<Rat>],
    order: &[usize],
) -> Result<Vec<Vec<usize>>, Error> {
    let q = local.first().map(|p| p.len()).unwrap_or(0);
    assert!(!order.is_empty());
    let mut basis: Vec<usize> = vec![order[0]];
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut processed: Vec<usize> = vec![order[0]];

    for &px in &order[1..] {
        let r = basis.len() - 1;
        // Is px in the affine span of the current basis?
        let diffs: Vec<Vec<Rat>> = basis[1..]
            .iter()
            .map(|&i| sub(&local[i], &local[basis[0]]))
            .collect();
        let mut probe = diffs.clone();
        probe.push(sub(&local[px], &local[basis[0]]));
        if linalg::rank(&probe) > r {
            // Dimension raise: cone everything to px.
            basis.push(px);
            if cells.is_empty() {
                cells.push(sorted(vec![basis[0], px]));
            } else {
                for c in cells.iter_mut() {
                    c.push(px);
                    c.sort_unstable();
                }
            }
        } else {
            // px is in the span; it must be strictly outside the prefix hull.
            let chart = prefix_chart(local, &basis);
            let x = chart_local(&chart, &local[px]).expect("point is in the span");
            let boundary = boundary_facets(&cells, r);
            let mut visible: Vec<Vec<usize>> = Vec::new();
            for (facet, cell) in boundary {
                let face: Vec<Vec<Rat>> = facet
                    .iter()
                    .map(|&i| chart_local(&chart, &local[i]).unwrap())
                    .collect();
                let opposite = cell.iter().find(|i| !facet.contains(i)).unwrap();
                let beneath = chart_local(&chart, &local[*opposite]).unwrap();
                let h = Hyperplane::through(&face, &beneath, r);
                if h.eval(&x) > Rat::zero() {
                    let mut cell = facet.clone();
                    cell.push(px);
                    cell.sort_unstable();
                    visible.push(cell);
                }
            }
            if visible.is_empty() {
                return Err(Error::InvalidPlacingOrder(px));
            }
            // Append the new cones in an order that keeps the creation order
            // a shelling: with degenerate coordinates a plain lexicographic
            // order can separate ridge-adjacent cones.
            visible.sort();
            let mut remaining = visible;
            while !remaining.is_empty() {
                let pos = remaining
                    .iter()
                    .position(|c| shelling_step_ok(&cells, c))
                    .unwrap_or(0);
                let next = remaining.remove(pos);
                cells.push(next);
            }
        }
        processed.push(px);
    }
    let _ = processed;
    if basis.len() != q + 1 {
        // The order never reached full dimension; callers pass spanning sets.
        return Err(Error::DegenerateSimplex);
    }
    Ok(cells)
}

/// Whether appending `cell` after `cells` satisfies the shelling step
/// condition: it meets the earlier union in a nonempty union of its own
/// facets, with no vertex contact outside those facets.
fn shelling_step_ok(cells: &[Vec<usize>], cell: &[usize]) -> bool {
    let contains = |big: &[usize], small: &[usize]| small.iter().all(|x| big.contains(x));
    let mut covered: Vec<Vec<usize>> = Vec::new();
    for skip in 0..cell.len() {
        let mut f = cell.to_vec();
        f.remove(skip);
        if cells.iter().any(|s| contains(s, &f)) {
            covered.push(f);
        }
    }
    if covered.is_empty() {
        return false;
    }
    cells.iter().all(|s| {
        let inter: Vec<usize> = cell.iter().copied().filter(|x| s.contains(x)).collect();
        inter.is_empty() || covered.iter().any(|f| contains(f, &inter))
    })
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

struct PrefixChart {
    base: Vec<Rat>,
    basis: Vec<Vec<Rat>>,
}

fn prefix_chart(local: &[Vec<Rat>], basis_idx: &[usize]) -> PrefixChart {
    let base = local[basis_idx[0]].clone();
    let basis = basis_idx[1..]
        .iter()
        .map(|&i| sub(&local[i], &base))
        .collect();
    PrefixChart { base, basis }
}

fn chart_local(chart: &PrefixChart, p: &[Rat]) -> Option<Vec<Rat>> {
    let rhs = sub(p, &chart.base);
    if chart.basis.is_empty() {
        return rhs.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let rows: Vec<Vec<Rat>> = (0..rhs.len())
        .map(|row| chart.basis.iter().map(|b| b[row].clone()).collect())
        .collect();
    let t = linalg::solve(&rows, &rhs)?;
    // Verify (solve zero-fills free variables of overdetermined systems).
    let mut back = chart.base.clone();
    for (ti, b) in t.iter().zip(&chart.basis) {
        for (c, bc) in back.iter_mut().zip(b) {
            *c = &*c + &(ti * bc);
        }
    }
    (back == p).then_some(t)
}

/// The (r-1)-faces of `cells` incident to exactly one cell, with that cell.
fn boundary_facets(cells: &[Vec<usize>], r: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut count: BTreeMap<Vec<usize>, (usize, Vec<usize>)> = BTreeMap::new();
    for cell in cells {
        for skip in 0..cell.len() {
            let mut f: Vec<usize> = cell.clone();
            f.remove(skip);
            debug_assert_eq!(f.len(), r);
            let e = count.entry(f).or_insert((0, cell.clone()));
            e.0 += 1;
        }
    }
    count
        .into_iter()
        .filter(|(_, (c, _))| *c == 1)
        .map(|(f, (_, cell))| (f, cell))
        .collect()
}

/// One facet of a polytope: exact supporting hyperplane in chart coordinates
/// plus incident vertex indices (positions in `Polytope::vertices`).
#[derive(Clone, Debug)]
pub struct Facet {
    pub plane: Hyperplane,
    pub vertices: Vec<usize>,
}

/// Membership classification of a point against a polytope.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Membership {
    Outside,
    /// Minimal face containing the point, as vertex-list indices.
    OnBoundary(Vec<usize>),
    /// Relative interior when the polytope is lower-dimensional.
    Interior,
}

/// The minimal face of a polytope containing a query set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Carrier {
    Face(Vec<usize>),
    Whole,
}

/// Convex hull with exact facet description and face queries.
#[derive(Clone, Debug)]
pub struct Polytope {
    points: PointSet,
    chart: Chart,
    local: Vec<Vec<Rat>>,
    /// Intrinsic dimension.
    pub dim: usize,
    /// Indices into the source point set, canonical order.
    pub vertices: Vec<usize>,
    pub facets: Vec<Facet>,
    faces_memo: OnceLock<Vec<Vec<Vec<usize>>>>,
}

/// Hull of a nonempty set, computed within its own affine hull.
pub fn convex_hull(s: &PointSet) -> Result<Polytope, Error> {
    if s.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let chart = Chart::from_set(s);
    let q = chart.dim();
    let local: Vec<Vec<Rat>> = s
        .iter()
        .map(|p| chart.to_local(p).expect("point in own affine hull"))
        .collect();
    if q == 0 {
        return Ok(Polytope {
            points: s.clone(),
            chart,
            local,
            dim: 0,
            vertices: vec![0],
            facets: vec![],
            faces_memo: OnceLock::new(),
        });
    }
    let order: Vec<usize> = (0..s.len()).collect();
    let cells = placing_cells(&local, &order)?;
    // Group boundary simplices of the cell complex by supporting hyperplane.
    let mut planes: BTreeSet<Hyperplane> = BTreeSet::new();
    for (facet, cell) in boundary_facets(&cells, q) {
        let face: Vec<Vec<Rat>> = facet.iter().map(|&i| local[i].clone()).collect();
        let opposite = cell.iter().find(|i| !facet.contains(i)).unwrap();
        planes.insert(Hyperplane::through(&face, &local[*opposite], q));
    }
    // A point is a vertex iff its tight facet normals span the chart space.
    let tight: Vec<Vec<usize>> = local
        .iter()
        .map(|x| {
            planes
                .iter()
                .enumerate()
                .filter(|(_, h)| h.eval(x).is_zero())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let plane_list: Vec<Hyperplane> = planes.into_iter().collect();
    let vertices: Vec<usize> = (0..s.len())
        .filter(|&i| {
            let rows: Vec<Vec<Rat>> = tight[i]
                .iter()
                .map(|&f| {
                    plane_list[f]
                        .normal
                        .iter()
                        .map(|n| Rat::from_integer(n.clone()))
                        .collect()
                })
                .collect();
            linalg::rank(&rows) == q
        })
        .collect();
    let facets = plane_list
        .into_iter()
        .map(|plane| {
            let verts = vertices
                .iter()
                .enumerate()
                .filter(|(_, &p)| plane.eval(&local[p]).is_zero())
                .map(|(vi, _)| vi)
                .collect();
            Facet { plane, vertices: verts }
        })
        .collect();
    Ok(Polytope {
        points: s.clone(),
        chart,
        local,
        dim: q,
        vertices,
        facets,
        faces_memo: OnceLock::new(),
    })
}

impl Polytope {
    pub fn source(&self) -> &PointSet {
        &self.points
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// The vertex as a point.
    pub fn vertex_point(&self, vi: usize) -> &Point {
        self.points.point(self.vertices[vi])
    }

    /// Vertices as a point set.
    pub fn vertex_set(&self) -> PointSet {
        PointSet::new(
            self.points.dim(),
            self.vertices.iter().map(|&i| self.points.point(i).clone()).collect(),
        )
        .expect("vertices share the ambient dimension")
    }

    fn local_of(&self, x: &Point) -> Option<Vec<Rat>> {
        self.chart.to_local(x)
    }

    /// Exact membership classification; `Interior` means relative interior
    /// when the polytope is lower-dimensional than its ambient space.
    pub fn membership(&self, x: &Point) -> Membership {
        let Some(t) = self.local_of(x) else {
            return Membership::Outside;
        };
        if self.dim == 0 {
            return Membership::Interior; // t solvable means x == the point
        }
        let mut tight: Vec<usize> = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let v = f.plane.eval(&t);
            if v > Rat::zero() {
                return Membership::Outside;
            }
            if v.is_zero() {
                tight.push(i);
            }
        }
        if tight.is_empty() {
            Membership::Interior
        } else {
            Membership::OnBoundary(self.vertices_on_all(&tight))
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.membership(x) != Membership::Outside
    }

    fn vertices_on_all(&self, facet_ids: &[usize]) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|vi| facet_ids.iter().all(|&f| self.facets[f].vertices.contains(vi)))
            .collect()
    }

    /// Minimal face of the polytope containing every point of `c`.
    pub fn carrier(&self, c: &[Point]) -> Result<Carrier, Error> {
        let mut common: Option<BTreeSet<usize>> = None;
        for p in c {
            let Some(t) = self.local_of(p) else {
                return Err(Error::OutsideHull);
            };
            let mut tight = BTreeSet::new();
            for (i, f) in self.facets.iter().enumerate() {
                let v = f.plane.eval(&t);
                if v > Rat::zero() {
                    return Err(Error::OutsideHull);
                }
                if v.is_zero() {
                    tight.insert(i);
                }
            }
            common = Some(match common {
                None => tight,
                Some(acc) => acc.intersection(&tight).copied().collect(),
            });
        }
        let common = common.unwrap_or_default();
        if common.is_empty() {
            Ok(Carrier::Whole)
        } else {
            let ids: Vec<usize> = common.into_iter().collect();
            Ok(Carrier::Face(self.vertices_on_all(&ids)))
        }
    }

    fn all_faces(&self) -> &Vec<Vec<Vec<usize>>> {
        self.faces_memo.get_or_init(|| {
            // Closure of facet vertex sets under intersection gives every
            // proper face; the whole polytope is appended at its dimension.
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut frontier: Vec<BTreeSet<usize>> = self
                .facets
                .iter()
                .map(|f| f.vertices.iter().copied().collect())
                .collect();
            for f in &frontier {
                seen.insert(f.iter().copied().collect());
            }
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for a in &frontier {
                    for f in &self.facets {
                        let b: BTreeSet<usize> = f.vertices.iter().copied().collect();
                        let i: BTreeSet<usize> = a.intersection(&b).copied().collect();
                        if !i.is_empty() {
                            let key: Vec<usize> = i.iter().copied().collect();
                            if seen.insert(key) {
                                next.push(i);
                            }
                        }
                    }
                }
                frontier = next;
            }
            let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); self.dim + 1];
            for face in seen {
                let pts: Vec<Point> =
                    face.iter().map(|&vi| self.vertex_point(vi).clone()).collect();
                let set = PointSet::new(self.points.dim(), pts).unwrap();
                let d = affine_dimension(&set);
                by_dim[d].push(face);
            }
            by_dim[self.dim] = vec![(0..self.vertices.len()).collect()];
            for v in by_dim.iter_mut() {
                v.sort();
            }
            by_dim
        })
    }

    /// All `j`-dimensional faces as vertex-list index sets. `j = dim - 1`
    /// returns the facets, `j = 1` the edges, `j = dim` the whole polytope.
    pub fn faces(&self, j: usize) -> Vec<Vec<usize>> {
        assert!(j <= self.dim, "face dimension out of range");
        self.all_faces()[j].clone()
    }

    /// Exact volume, by summing placing cells. Full-dimensional hulls get
    /// their ambient volume; degenerate ones are measured inside the chart
    /// (rational-valued; the metric-correct value may be irrational).
    pub fn volume(&self) -> Rat {
        if self.dim == 0 {
            return Rat::zero();
        }
        let order: Vec<usize> = (0..self.points.len()).collect();
        let cells = placing_cells(&self.local, &order).expect("hull input already placed");
        let chart_vol: Rat = cells
            .iter()
            .map(|c| {
                let verts: Vec<Vec<Rat>> = c.iter().map(|&i| self.local[i].clone()).collect();
                local_simplex_volume(&verts).expect("placing cells are non-degenerate")
            })
            .sum();
        chart_vol * self.chart_scale()
    }

    /// `|det|` of the chart basis when square, else 1: converts chart-local
    /// volumes into ambient volumes for full-dimensional polytopes.
    pub(crate) fn chart_scale(&self) -> Rat {
        if self.dim == self.points.dim() && self.dim > 0 {
            linalg::det(&self.chart.basis).abs()
        } else {
            Rat::one()
        }
    }

    /// Local coordinates of an arbitrary point of the source set.
    pub(crate) fn local_coords(&self) -> &[Vec<Rat>] {
        &self.local
    }
}
