//! Deterministic verification suites: randomized oracle checks, curated
//! agreement suites, and exhaustive small-instance censuses. Shared by the
//! test harness and the CLI `verify` command; all randomness flows from a
//! single seeded generator per suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::criticality::{
    check_corollary_ka, check_monotonicity, classify, generate_family, is_k_critical, FamilyCase,
    FamilyParams,
};
use crate::error::Error;
use crate::geometry::{affine_dimension, convex_hull, Membership, Point, PointSet};
use crate::lattice::dim1_critical;
use crate::rat::{binom, int, rat, Rat};
use crate::sumset::{check_bound, k_fold, minkowski_sum, refined_bound};
use crate::triangulation::{
    classify_shape, h_from_shelling, is_stacked, is_totally_stackable, placing_triangulation,
    StackableShape,
};

/// Outcome of one verification suite.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub instances: usize,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &str) -> CheckOutcome {
        CheckOutcome {
            name: name.into(),
            instances: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn ipoint(coords: &[i64]) -> Point {
    Point(coords.iter().map(|&c| int(c)).collect())
}

fn iset(dim: usize, rows: &[&[i64]]) -> PointSet {
    PointSet::new(dim, rows.iter().map(|r| ipoint(r)).collect()).unwrap()
}

/// A random spanning configuration with coordinates `n/q`, `0 ≤ n ≤ 3q`,
/// `1 ≤ q ≤ denom_max`.
fn random_spanning_set(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max_len: usize,
    denom_max: i64,
) -> PointSet {
    loop {
        let len = rng.gen_range(dim + 1..=max_len.max(dim + 1));
        let pts: Vec<Point> = (0..len)
            .map(|_| {
                Point(
                    (0..dim)
                        .map(|_| {
                            let q = rng.gen_range(1..=denom_max);
                            rat(rng.gen_range(0..=3 * q), q)
                        })
                        .collect(),
                )
            })
            .collect();
        let s = PointSet::new(dim, pts).unwrap();
        if affine_dimension(&s) >= 1 {
            return s;
        }
    }
}

/// Random points inside `[B]`, as rational convex combinations of points
/// of `B` with small integer weights.
fn random_points_in_hull(rng: &mut ChaCha8Rng, b: &PointSet, count: usize) -> Vec<Point> {
    (0..count)
        .map(|_| {
            let support = rng.gen_range(1..=b.len().min(b.dim() + 1));
            let mut idx: Vec<usize> = (0..b.len()).collect();
            idx.shuffle(rng);
            idx.truncate(support);
            let weights: Vec<i64> = idx.iter().map(|_| rng.gen_range(1..=3)).collect();
            let total: i64 = weights.iter().sum();
            let mut coords = vec![Rat::zero(); b.dim()];
            for (&i, &w) in idx.iter().zip(&weights) {
                for (c, x) in coords.iter_mut().zip(&b.point(i).0) {
                    *c += x * rat(w, total);
                }
            }
            Point(coords)
        })
        .collect()
}

/// Criterion 1: `|kC| = binom(d+k, k)` for simplex vertex sets.
pub fn simplex_count_law() -> CheckOutcome {
    let mut out = CheckOutcome::new("simplex-count-law");
    for d in 1..=4usize {
        let mut pts = vec![Point::origin(d)];
        for j in 0..d {
            let mut c = vec![Rat::zero(); d];
            c[j] = Rat::one();
            pts.push(Point(c));
        }
        let c = PointSet::new(d, pts).unwrap();
        for k in 1..=4 {
            out.instances += 1;
            let got = k_fold(&c, k).unwrap().len() as i64;
            let want = binom(d as i64 + k, k);
            if got != want {
                out.violations
                    .push(format!("d={d} k={k}: |kC| = {got}, expected {want}"));
            }
        }
    }
    out
}

/// A random simplex with triangular integer vertex matrix (exactly d+1
/// affinely independent vertices).
fn random_simplex(rng: &mut ChaCha8Rng, d: usize) -> PointSet {
    let mut pts = vec![Point::origin(d)];
    for i in 0..d {
        let mut c = vec![Rat::zero(); d];
        c[i] = int(rng.gen_range(1..=3));
        for cj in c.iter_mut().take(i) {
            *cj = int(rng.gen_range(0..=2));
        }
        pts.push(Point(c));
    }
    PointSet::new(d, pts).unwrap()
}

/// Criterion 2: the closed-form `simplex_sum_cardinality` equals the
/// enumerated `|A + kC|`.
pub fn simplex_sum_oracle(seed: u64, instances: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("simplex-sum-oracle");
    let mut rng = rng_for(seed, 2);
    for i in 0..instances {
        let d = rng.gen_range(1..=3usize);
        let c = random_simplex(&mut rng, d);
        let extra_count = rng.gen_range(0..=10);
        let extra = random_points_in_hull(&mut rng, &c, extra_count);
        let mut pts = extra;
        // Keep a random portion of the vertices so |A ∩ C| varies.
        for p in c.iter() {
            if rng.gen_bool(0.7) {
                pts.push(p.clone());
            }
        }
        if pts.is_empty() {
            pts.push(c.point(0).clone());
        }
        pts.truncate(15);
        let a = PointSet::new(d, pts).unwrap();
        let k = (i as i64 % 3) + 1;
        out.instances += 1;
        let formula = crate::sumset::simplex_sum_cardinality(&a, &c, k).unwrap();
        let brute = minkowski_sum(&a, &k_fold(&c, k).unwrap()).unwrap().len() as i64;
        if formula != brute {
            out.violations.push(format!(
                "instance {i}: formula {formula} vs enumeration {brute} (d={d}, k={k})"
            ));
        }
    }
    out
}

/// Criterion 3: the lower bound never exceeds the enumerated cardinality.
pub fn bound_soundness(seed: u64, instances: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("bound-soundness");
    let mut rng = rng_for(seed, 3);
    for i in 0..instances {
        let d = rng.gen_range(1..=3usize);
        let b = random_spanning_set(&mut rng, d, 8, 4);
        let count = rng.gen_range(1..=20usize);
        let a = PointSet::new(d, random_points_in_hull(&mut rng, &b, count)).unwrap();
        let k = (i as i64 % 3) + 1;
        out.instances += 1;
        match check_bound(&a, &b, k) {
            Ok(report) => {
                if report.violation {
                    out.violations.push(format!(
                        "instance {i}: |A+kB| = {} below bound {} (k={k})",
                        report.lhs_cardinality, report.rhs_bound
                    ));
                }
            }
            Err(e) => out.violations.push(format!("instance {i}: error {e}")),
        }
    }
    out
}

/// Criterion 4: the h-vector refinement stays below `|A+kB|` whenever
/// `B ⊂ A ⊂ [B]`, and is tight on the square plus its center.
pub fn refined_bound_soundness(seed: u64, instances: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("refined-bound-soundness");
    let mut rng = rng_for(seed, 4);
    for i in 0..instances {
        let d = rng.gen_range(1..=3usize);
        let b = random_spanning_set(&mut rng, d, 8, 4);
        let count = rng.gen_range(0..=12usize);
        let mut pts: Vec<Point> = b.iter().cloned().collect();
        pts.extend(random_points_in_hull(&mut rng, &b, count));
        let a = PointSet::new(d, pts).unwrap();
        let k = (i as i64 % 3) + 1;
        out.instances += 1;
        let (t, sh) = match placing_triangulation(&b, None) {
            Ok(x) => x,
            Err(e) => {
                out.violations.push(format!("instance {i}: placing failed: {e}"));
                continue;
            }
        };
        let h = h_from_shelling(&t, &sh).unwrap();
        let bound = refined_bound(t.dim as i64, k, a.len() as i64, &h);
        let lhs = minkowski_sum(&a, &k_fold(&b, k).unwrap()).unwrap().len() as i64;
        if lhs < bound {
            out.violations.push(format!(
                "instance {i}: |A+kB| = {lhs} below refined bound {bound} (k={k})"
            ));
        }
    }
    // Tightness witness: square plus center at k = 1.
    let c = iset(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]]);
    let (t, sh) = placing_triangulation(&c, None).unwrap();
    let h = h_from_shelling(&t, &sh).unwrap();
    let bound = refined_bound(2, 1, 5, &h);
    let lhs = minkowski_sum(&c, &c).unwrap().len() as i64;
    out.instances += 1;
    if bound != 13 || lhs != 13 {
        out.violations.push(format!(
            "square+center tightness: bound {bound}, |B+B| = {lhs}, expected 13 = 13"
        ));
    }
    out
}

/// Criterion 5: h-vector identities and shelling/face-count agreement
/// over random placing triangulations (asserted inside the library).
pub fn hvector_consistency(seed: u64, instances: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("hvector-consistency");
    let mut rng = rng_for(seed, 5);
    for i in 0..instances {
        let d = rng.gen_range(2..=3usize);
        let b = random_spanning_set(&mut rng, d, 8, 2);
        out.instances += 1;
        match placing_triangulation(&b, None) {
            Ok((t, sh)) => {
                if let Err(e) = h_from_shelling(&t, &sh) {
                    out.violations.push(format!("instance {i}: {e}"));
                }
            }
            Err(e) => out.violations.push(format!("instance {i}: placing failed: {e}")),
        }
    }
    out
}

/// Criterion 6: the four stackedness certificates agree on random
/// triangulations mixing stacked and non-stacked cases (agreement is
/// asserted inside `is_stacked`).
pub fn stackedness_agreement(seed: u64, instances: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("stackedness-agreement");
    let mut rng = rng_for(seed, 6);
    let mut stacked_count = 0usize;
    for i in 0..instances {
        let d = rng.gen_range(2..=3usize);
        let b = random_spanning_set(&mut rng, d, 8, 2);
        out.instances += 1;
        match placing_triangulation(&b, None) {
            Ok((t, _)) => match is_stacked(&t) {
                Ok(true) => stacked_count += 1,
                Ok(false) => {}
                Err(e) => out
                    .violations
                    .push(format!("instance {i}: certificate disagreement: {e}")),
            },
            Err(e) => out.violations.push(format!("instance {i}: placing failed: {e}")),
        }
    }
    out.notes.push(format!(
        "{stacked_count} stacked / {} non-stacked",
        out.instances - stacked_count
    ));
    if stacked_count == 0 || stacked_count == out.instances {
        out.violations
            .push("suite did not mix stacked and non-stacked triangulations".into());
    }
    out
}

/// Criterion 7: the direct total-stackability test agrees with the shape
/// classification on a curated suite.
pub fn total_stackability_suite() -> CheckOutcome {
    let mut out = CheckOutcome::new("total-stackability-agreement");
    let mut cases: Vec<(PointSet, bool)> = Vec::new();
    // Positives: simplices, loaded simplices, polygons, pyramids, prisms.
    cases.push((iset(1, &[&[0], &[2], &[1]]), true));
    cases.push((iset(2, &[&[0, 0], &[1, 0], &[0, 1]]), true));
    cases.push((iset(2, &[&[0, 0], &[3, 0], &[0, 3], &[1, 0], &[2, 0]]), true));
    cases.push((iset(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), true));
    cases.push((
        iset(2, &[&[0, 0], &[2, 0], &[3, 1], &[3, 2], &[1, 2], &[0, 1]]),
        true,
    ));
    // A tetrahedron with a loaded edge.
    cases.push((
        iset(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 2], &[0, 0, 1]]),
        true,
    ));
    // Pyramid over a square, and an iterated pyramid in dimension 4.
    cases.push((
        iset(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]),
        true,
    ));
    cases.push((
        iset(
            4,
            &[
                &[0, 0, 0, 0],
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[1, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ],
        ),
        true,
    ));
    // Prisms, one with loaded vertical edges.
    cases.push((
        iset(
            3,
            &[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 2],
                &[1, 0, 2],
                &[0, 1, 2],
            ],
        ),
        true,
    ));
    cases.push((
        iset(
            3,
            &[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 2],
                &[1, 0, 2],
                &[0, 1, 2],
                &[0, 0, 1],
            ],
        ),
        true,
    ));
    // Negatives: interior points, non-edge boundary points, cubes,
    // octahedra, prisms loaded on horizontal edges.
    for (x, y) in [(1i64, 1i64), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)] {
        cases.push((
            iset(2, &[&[0, 0], &[4, 0], &[0, 4], &[4, 4], &[x, y]]),
            false,
        ));
    }
    cases.push((
        iset(
            3,
            &[
                &[1, 0, 0],
                &[-1, 0, 0],
                &[0, 1, 0],
                &[0, -1, 0],
                &[0, 0, 1],
                &[0, 0, -1],
            ],
        ),
        false,
    ));
    cases.push((
        iset(
            3,
            &[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[1, 1, 0],
                &[0, 0, 1],
                &[1, 0, 1],
                &[0, 1, 1],
                &[1, 1, 1],
            ],
        ),
        false,
    ));
    cases.push((
        iset(
            3,
            &[
                &[0, 0, 0],
                &[2, 0, 0],
                &[0, 2, 0],
                &[0, 0, 2],
                &[2, 0, 2],
                &[0, 2, 2],
                &[1, 0, 0],
            ],
        ),
        false, // prism loaded on a horizontal edge
    ));
    cases.push((
        iset(2, &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]]),
        false,
    ));
    // Pentagon with an interior point, and tetrahedra carrying a point in
    // the interior or on the interior of a 2-face (never on an edge).
    cases.push((
        iset(2, &[&[0, 0], &[2, 0], &[3, 2], &[1, 3], &[0, 2], &[1, 1]]),
        false,
    ));
    for p in [
        [1i64, 1, 1],
        [2, 1, 1],
        [1, 2, 1],
        [1, 1, 2],
        [1, 1, 0],
        [2, 1, 0],
        [1, 2, 0],
        [0, 1, 1],
        [1, 0, 1],
    ] {
        cases.push((
            iset(3, &[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &p]),
            false,
        ));
    }
    let mut negatives = 0usize;
    for (i, (b, expected)) in cases.iter().enumerate() {
        out.instances += 1;
        if !expected {
            negatives += 1;
        }
        let direct = match is_totally_stackable(b) {
            Ok(v) => v,
            Err(e) => {
                out.violations.push(format!("case {i}: direct test error {e}"));
                continue;
            }
        };
        let shape = match classify_shape(b) {
            Ok(s) => s,
            Err(e) => {
                out.violations.push(format!("case {i}: shape error {e}"));
                continue;
            }
        };
        let via_shape = shape != StackableShape::NotTotallyStackable;
        if direct != via_shape {
            out.violations.push(format!(
                "case {i}: direct {direct} vs shape {via_shape} ({shape:?})"
            ));
        }
        if direct != *expected {
            out.violations
                .push(format!("case {i}: verdict {direct}, expected {expected}"));
        }
    }
    out.notes.push(format!("{negatives} negative cases"));
    out
}

/// Criterion 8: exhaustive planar census. Every pair with
/// `|A+B| = 3|A|−3` must land in a structural case and vice versa; the
/// classifier audits this on every call.
pub fn census_2d(cap: usize) -> CheckOutcome {
    let mut out = CheckOutcome::new("census-2d");
    let grid: Vec<Point> = (0..4)
        .flat_map(|x| (0..4).map(move |y| ipoint(&[x, y])))
        .collect();
    let half_grid: Vec<Point> = (0..=6)
        .flat_map(|x| (0..=6).map(move |y| Point(vec![rat(x, 2), rat(y, 2)])))
        .collect();
    // Advances `idx` to the next lexicographic combination out of `n`.
    fn next_combination(idx: &mut [usize], n: usize) -> bool {
        let k = idx.len();
        for i in (0..k).rev() {
            if idx[i] < i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
    let mut critical = 0usize;
    'outer: for size in 3..=5usize {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let b_pts: Vec<Point> = idx.iter().map(|&i| grid[i].clone()).collect();
            let b = PointSet::new(2, b_pts).unwrap();
            if b.len() == size && affine_dimension(&b) == 2 {
                let hull = convex_hull(&b).unwrap();
                let inside: Vec<Point> = half_grid
                    .iter()
                    .filter(|p| hull.contains(p))
                    .cloned()
                    .collect();
                let boundary: Vec<Point> = inside
                    .iter()
                    .filter(|p| !matches!(hull.membership(p), Membership::Interior))
                    .cloned()
                    .collect();
                let mut cands: BTreeSet<Vec<Point>> = BTreeSet::new();
                let b_vec: Vec<Point> = b.iter().cloned().collect();
                cands.insert(b_vec.clone());
                cands.insert(hull.vertex_set().iter().cloned().collect());
                if let Some(pos) = (0..b.len()).find(|&i| !hull.vertices.contains(&i)) {
                    let dropped: Vec<Point> = b
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != pos)
                        .map(|(_, p)| p.clone())
                        .collect();
                    cands.insert(dropped);
                }
                for extra in &inside {
                    if !b.contains(extra) {
                        let mut v = b_vec.clone();
                        v.push(extra.clone());
                        cands.insert(v);
                    }
                }
                let mut with_boundary = b_vec.clone();
                with_boundary.extend(boundary.iter().cloned());
                cands.insert(with_boundary);
                let mut with_all = b_vec.clone();
                with_all.extend(inside.iter().cloned());
                cands.insert(with_all);
                for cand in cands {
                    if out.instances >= cap {
                        break 'outer;
                    }
                    let a = PointSet::new(2, cand).unwrap();
                    out.instances += 1;
                    match classify(&a, &b) {
                        Ok(v) => {
                            if v.critical {
                                critical += 1;
                            }
                        }
                        Err(Error::ClassifierDefect(msg)) => out
                            .violations
                            .push(format!("B = {:?}: {msg}", idx)),
                        Err(e) => out
                            .violations
                            .push(format!("B = {:?}: unexpected error {e}", idx)),
                    }
                }
            }
            if !next_combination(&mut idx, 16) {
                break;
            }
        }
    }
    out.notes
        .push(format!("{critical} critical pairs among {} tested", out.instances));
    out
}

/// The 30 generated family instances used by criteria 9 and 10.
pub fn family_instances() -> Vec<FamilyParams> {
    let p = |case, dim, base_dim, ap_len, translates, heights: &[i64], offsets| FamilyParams {
        case,
        dim,
        base_dim,
        ap_len,
        translates,
        heights: heights.to_vec(),
        offsets,
    };
    vec![
        // Case (i): bare simplices with optional interior points.
        p(FamilyCase::SimplexI, 1, 0, 0, 0, &[], 0),
        p(FamilyCase::SimplexI, 2, 0, 0, 0, &[], 0),
        p(FamilyCase::SimplexI, 2, 0, 0, 2, &[], 0),
        p(FamilyCase::SimplexI, 3, 0, 0, 1, &[], 0),
        p(FamilyCase::SimplexI, 4, 0, 0, 0, &[], 0),
        p(FamilyCase::SimplexI, 4, 0, 0, 2, &[], 0),
        // Case (ii): simplices with an edge progression.
        p(FamilyCase::SimplexEdgeApII, 1, 0, 3, 0, &[], 0),
        p(FamilyCase::SimplexEdgeApII, 1, 0, 5, 0, &[], 0),
        p(FamilyCase::SimplexEdgeApII, 2, 0, 3, 0, &[], 0),
        p(FamilyCase::SimplexEdgeApII, 2, 0, 3, 2, &[], 0),
        p(FamilyCase::SimplexEdgeApII, 2, 0, 4, 1, &[], 0),
        p(FamilyCase::SimplexEdgeApII, 3, 0, 3, 1, &[], 0),
        p(FamilyCase::SimplexEdgeApII, 4, 0, 3, 0, &[], 0),
        // Case (iii): prisms and trapezoids.
        p(FamilyCase::PrismIII, 2, 0, 0, 0, &[1, 2], 0),
        p(FamilyCase::PrismIII, 2, 0, 0, 0, &[2, 4], 1),
        p(FamilyCase::PrismIII, 2, 0, 0, 0, &[3, 1], 0),
        p(FamilyCase::PrismIII, 3, 0, 0, 0, &[1, 1, 2], 0),
        p(FamilyCase::PrismIII, 3, 0, 0, 0, &[2, 2, 4], 1),
        p(FamilyCase::PrismIII, 4, 0, 0, 0, &[1, 2, 3, 4], 0),
        // Case (iv): the midpoint triangle.
        p(FamilyCase::TriangleMidpointsIV, 2, 0, 0, 0, &[], 0),
        // Case (v): parallelogram fillings.
        p(FamilyCase::ParallelogramV, 2, 0, 0, 0, &[], 0),
        p(FamilyCase::ParallelogramV, 2, 0, 0, 0, &[], 1),
        p(FamilyCase::ParallelogramV, 2, 0, 0, 0, &[], 3),
        // Case (vi): pyramids over lower-dimensional bases.
        p(FamilyCase::PyramidOverLowerVI, 3, 2, 0, 0, &[], 0),
        p(FamilyCase::PyramidOverLowerVI, 3, 2, 0, 0, &[], 1),
        p(FamilyCase::PyramidOverLowerVI, 4, 2, 0, 0, &[], 0),
        p(FamilyCase::PyramidOverLowerVI, 4, 2, 0, 0, &[], 2),
        p(FamilyCase::PyramidOverLowerVI, 4, 3, 0, 0, &[1, 1, 2], 0),
        p(FamilyCase::PyramidOverLowerVI, 4, 3, 0, 0, &[1, 2, 2], 1),
        p(FamilyCase::PyramidOverLowerVI, 4, 3, 0, 0, &[2, 2, 2], 0),
    ]
}

/// Criterion 9: every generated family instance is k-critical for
/// k = 1, 2, 3.
pub fn family_k_independence() -> CheckOutcome {
    let mut out = CheckOutcome::new("family-k-independence");
    for (i, params) in family_instances().iter().enumerate() {
        out.instances += 1;
        let (a, b) = match generate_family(params) {
            Ok(x) => x,
            Err(e) => {
                out.violations
                    .push(format!("instance {i} ({:?}): generation failed: {e}", params.case));
                continue;
            }
        };
        for k in 1..=3 {
            match is_k_critical(&a, &b, k) {
                Ok(true) => {}
                Ok(false) => out.violations.push(format!(
                    "instance {i} ({:?}): not {k}-critical",
                    params.case
                )),
                Err(e) => out
                    .violations
                    .push(format!("instance {i} ({:?}): error {e}", params.case)),
            }
        }
    }
    out
}

/// Criterion 10: subset closure and downward k-closure on the verified
/// family instances.
pub fn monotonicity_closure(seed: u64) -> CheckOutcome {
    let mut out = CheckOutcome::new("monotonicity-closure");
    for (i, params) in family_instances().iter().enumerate() {
        out.instances += 1;
        let (a, b) = match generate_family(params) {
            Ok(x) => x,
            Err(e) => {
                out.violations
                    .push(format!("instance {i}: generation failed: {e}"));
                continue;
            }
        };
        if let Err(e) = check_monotonicity(&a, &b, 2, 5, seed.wrapping_add(i as u64)) {
            out.violations.push(format!("instance {i}: {e}"));
        }
    }
    out
}

/// Criterion 11: `|kA|` equality at k = 2 iff the placing triangulation
/// is stacked and unimodular, on 20 positives and 20 negatives.
pub fn corollary_ka_suite() -> CheckOutcome {
    let mut out = CheckOutcome::new("corollary-kA-equivalence");
    let mut positives: Vec<PointSet> = Vec::new();
    // Sheared parallelograms and triangles (unimodular, stacked).
    for s in 0..5i64 {
        positives.push(iset(2, &[&[0, 0], &[1, 0], &[s, 1], &[s + 1, 1]]));
    }
    for s in 0..4i64 {
        positives.push(iset(2, &[&[0, 0], &[1, 0], &[s, 1]]));
    }
    // Simplices with full integer edge progressions.
    for len in 2..=4i64 {
        let mut rows: Vec<Vec<i64>> = (0..=len).map(|j| vec![j, 0]).collect();
        rows.push(vec![0, len]);
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        positives.push(iset(2, &refs));
    }
    // Three-dimensional simplices and a loaded tetrahedron.
    positives.push(iset(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    positives.push(iset(
        3,
        &[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2]],
    ));
    positives.push(iset(3, &[&[0, 0, 0], &[2, 0, 0], &[1, 1, 0], &[0, 0, 1]]));
    // Trapezoid fillings with unit vertical steps.
    positives.push(iset(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 2]]));
    positives.push(iset(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[0, 2], &[0, 3]]));
    positives.push(iset(2, &[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1]]));
    positives.push(iset(2, &[&[0, 0], &[1, 0], &[2, 0], &[3, 0], &[0, 1]]));
    positives.push(iset(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[2, 0], &[2, 1]]));

    let mut negatives: Vec<PointSet> = Vec::new();
    // Partial fractional edge progressions break unimodularity (1/2 would
    // be the full progression {0, 1/2, 1} and therefore critical).
    for s in 3..=5i64 {
        negatives.push(
            PointSet::new(
                2,
                vec![
                    ipoint(&[0, 0]),
                    ipoint(&[1, 0]),
                    ipoint(&[0, 1]),
                    Point(vec![rat(1, s), Rat::zero()]),
                ],
            )
            .unwrap(),
        );
    }
    // Interior points break stackedness.
    for c in [(1i64, 1i64), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (1, 3)] {
        negatives.push(iset(2, &[&[0, 0], &[4, 0], &[0, 4], &[4, 4], &[c.0, c.1]]));
    }
    negatives.push(iset(2, &[&[0, 0], &[3, 0], &[0, 3], &[1, 1]]));
    // Quadrilaterals with oversized cells (non-unimodular).
    for s in 2..=4i64 {
        negatives.push(iset(2, &[&[0, 0], &[1, 0], &[0, 1], &[s, s]]));
    }
    negatives.push(iset(2, &[&[0, 0], &[2, 0], &[4, 1], &[1, 2]]));
    // Bipyramid-like cells of double volume.
    negatives.push(iset(
        3,
        &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]],
    ));
    negatives.push(iset(
        3,
        &[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]],
    ));
    // Vertical edge with a gap in its progression.
    negatives.push(iset(
        3,
        &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 3], &[0, 0, 1]],
    ));
    negatives.push(iset(2, &[&[0, 0], &[2, 0], &[1, 3], &[3, 3], &[1, 1]]));
    negatives.push(iset(2, &[&[0, 0], &[3, 0], &[0, 3], &[3, 3], &[2, 2]]));

    let positives_len = positives.len();
    for (i, a) in positives.iter().chain(&negatives).enumerate() {
        let expect_equality = i < positives_len;
        out.instances += 1;
        match check_corollary_ka(a, 2) {
            Ok(report) => {
                if report.equality != expect_equality {
                    out.violations.push(format!(
                        "case {i}: equality {} (stacked {}, unimodular {}), expected {}",
                        report.equality, report.stacked, report.unimodular, expect_equality
                    ));
                }
            }
            Err(e) => out.violations.push(format!("case {i}: {e}")),
        }
    }
    out.notes
        .push(format!("{positives_len} positives, {} negatives", negatives.len()));
    out
}

/// Criterion 12: one-dimensional structural verdicts match enumeration on
/// every pair over the grid {0, 1/6, …, 1}.
pub fn dim1_exhaustive() -> CheckOutcome {
    let mut out = CheckOutcome::new("dim1-exhaustive");
    let grid: Vec<Rat> = (0..=6).map(|l| rat(l, 6)).collect();
    let n = grid.len();
    for b_mask in 1u32..(1 << n) {
        if b_mask.count_ones() < 2 || b_mask.count_ones() > 6 {
            continue;
        }
        let b_vals: Vec<Rat> = (0..n)
            .filter(|&i| b_mask & (1 << i) != 0)
            .map(|i| grid[i].clone())
            .collect();
        let lo = b_vals.iter().min().unwrap().clone();
        let hi = b_vals.iter().max().unwrap().clone();
        let b = PointSet::new(1, b_vals.iter().map(|v| Point(vec![v.clone()])).collect()).unwrap();
        let inside: Vec<usize> = (0..n)
            .filter(|&i| grid[i] >= lo && grid[i] <= hi)
            .collect();
        let m = inside.len();
        for a_mask in 1u32..(1 << m) {
            let a_vals: Vec<Point> = (0..m)
                .filter(|&j| a_mask & (1 << j) != 0)
                .map(|j| Point(vec![grid[inside[j]].clone()]))
                .collect();
            let a = PointSet::new(1, a_vals).unwrap();
            for k in 1..=3 {
                out.instances += 1;
                if let Err(e) = dim1_critical(&a, &b, k) {
                    out.violations
                        .push(format!("B mask {b_mask:#x}, A mask {a_mask:#x}, k={k}: {e}"));
                    if out.violations.len() > 20 {
                        out.notes.push("violation list truncated".into());
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Runs every suite with acceptance-scale budgets.
pub fn run_all(seed: u64, census_cap: usize) -> Vec<CheckOutcome> {
    vec![
        simplex_count_law(),
        simplex_sum_oracle(seed, 200),
        bound_soundness(seed, 500),
        refined_bound_soundness(seed, 500),
        hvector_consistency(seed, 100),
        stackedness_agreement(seed, 100),
        total_stackability_suite(),
        census_2d(census_cap),
        family_k_independence(),
        monotonicity_closure(seed),
        corollary_ka_suite(),
        dim1_exhaustive(),
    ]
}
