//! Randomized structural invariants, driven by proptest.

use proptest::collection::vec;
use proptest::prelude::*;
use sumcrit_core::rat::{format_rat, parse_rat, rat};
use sumcrit_core::{
    affine_dimension, check_bound, convex_hull, f_vector, h_from_f, h_from_shelling, k_fold,
    minkowski_sum, placing_triangulation, Point, PointSet,
};

fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, 1i64..=4)
}

fn point_2d() -> impl Strategy<Value = Point> {
    (small_rat(), small_rat()).prop_map(|((a, b), (c, d))| Point(vec![rat(a, b), rat(c, d)]))
}

fn set_2d(max: usize) -> impl Strategy<Value = PointSet> {
    vec(point_2d(), 1..=max).prop_map(|pts| PointSet::new(2, pts).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_round_trip((p, q) in (-1000i64..=1000, 1i64..=1000)) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
    }

    #[test]
    fn minkowski_cardinality_bounds(a in set_2d(8), b in set_2d(8)) {
        let s = minkowski_sum(&a, &b).unwrap();
        prop_assert!(s.len() >= a.len().max(b.len()));
        prop_assert!(s.len() <= a.len() * b.len());
        let t = minkowski_sum(&b, &a).unwrap();
        prop_assert_eq!(s, t);
    }

    #[test]
    fn k_fold_is_iterated_sum(b in set_2d(6)) {
        let twice = minkowski_sum(&b, &b).unwrap();
        prop_assert_eq!(k_fold(&b, 2).unwrap(), twice.clone());
        let thrice = minkowski_sum(&twice, &b).unwrap();
        prop_assert_eq!(k_fold(&b, 3).unwrap(), thrice);
    }

    #[test]
    fn hull_vertices_are_minimal_and_idempotent(s in set_2d(10)) {
        let hull = convex_hull(&s).unwrap();
        let verts = hull.vertex_set();
        let again = convex_hull(&verts).unwrap();
        prop_assert_eq!(again.vertex_set(), verts.clone());
        // Every original point stays inside the hull of the vertices.
        for p in s.iter() {
            prop_assert!(again.contains(p));
        }
    }

    #[test]
    fn bound_never_violated(b in set_2d(6), mask in any::<u32>()) {
        // A is built inside [B]: all of B plus a masked choice of midpoints.
        let mut pts: Vec<Point> = b.iter().cloned().collect();
        let mut bit = 0;
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if mask & (1 << (bit % 32)) != 0 {
                    let mid: Vec<_> = b.point(i).0.iter().zip(&b.point(j).0)
                        .map(|(x, y)| (x + y) / rat(2, 1))
                        .collect();
                    pts.push(Point(mid));
                }
                bit += 1;
            }
        }
        let a = PointSet::new(2, pts).unwrap();
        for k in 1..=2i64 {
            let report = check_bound(&a, &b, k).unwrap();
            prop_assert!(!report.violation, "slack {}", report.slack);
        }
    }

    #[test]
    fn shelling_h_vector_matches_face_counts(s in set_2d(9)) {
        prop_assume!(affine_dimension(&s) == 2);
        let (t, sh) = placing_triangulation(&s, None).unwrap();
        let h = h_from_shelling(&t, &sh).unwrap();
        let f = f_vector(&t);
        prop_assert_eq!(h.entries.clone(), h_from_f(&f, t.dim).entries);
        prop_assert_eq!(h.get(0), 1);
        prop_assert_eq!(h.get(1), s.len() as i64 - 3);
        let cells: i64 = h.entries.iter().sum();
        prop_assert_eq!(cells, t.cells.len() as i64);
    }
}
