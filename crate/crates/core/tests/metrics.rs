mod common;

use moead_uraw::metrics::{
    hypervolume, hypervolume_2d, nondominated_filter, normalize, normalized_hypervolume,
    NormalizationBounds, HV_REFERENCE,
};
use moead_uraw::RngStream;
use proptest::prelude::*;

#[test]
fn agrees_with_monte_carlo() {
    let mut rng = RngStream::new(2024, 0);
    for m in 2..=6 {
        let mut pts = common::sphere_points(20, m, &mut rng);
        pts.extend(common::random_points(10, m, &mut rng));
        let z = vec![HV_REFERENCE; m];
        let exact = hypervolume(&pts, &z).unwrap();
        let (est, se) = common::mc_hypervolume(&pts, &z, 1_000_000, &mut rng);
        assert!(
            (exact - est).abs() <= 3.0 * se,
            "m={m}: exact {exact}, mc {est} ± {se}"
        );
    }
}

#[test]
fn strip_formula_matches_general_algorithm() {
    let mut rng = RngStream::new(5, 0);
    for n in [1, 2, 5, 30, 200] {
        for _ in 0..20 {
            let pts = common::random_points(n, 2, &mut rng);
            let z = [1.2, 1.2];
            let a = hypervolume(&pts, &z).unwrap();
            let b = hypervolume_2d(&pts, &z).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn filter_matches_all_pairs_oracle() {
    let mut rng = RngStream::new(6, 0);
    for m in 2..=5 {
        for n in [1, 10, 100] {
            let mut pts = common::random_points(n, m, &mut rng);
            // Exact duplicates and ties on single coordinates.
            pts.push(pts[0].clone());
            let mut tie = pts[0].clone();
            tie[0] += 0.5;
            pts.push(tie);
            let expected: Vec<Vec<f64>> = common::brute_nondominated(&pts)
                .into_iter()
                .map(|i| pts[i].clone())
                .collect();
            assert_eq!(nondominated_filter(&pts), expected);
        }
    }
}

#[test]
fn union_bounds_put_extremes_at_zero_and_one() {
    let mut rng = RngStream::new(8, 0);
    let a: Vec<Vec<f64>> = (0..20)
        .map(|_| vec![rng.uniform() * 3.0, 5.0 + rng.uniform()])
        .collect();
    let b: Vec<Vec<f64>> = (0..20)
        .map(|_| vec![1.0 + rng.uniform() * 3.0, 4.0 + rng.uniform()])
        .collect();
    let bounds = NormalizationBounds::from_union([a.as_slice(), b.as_slice()]).unwrap();
    let all: Vec<Vec<f64>> = a.iter().chain(&b).cloned().collect();
    let n = normalize(&all, &bounds).unwrap();
    for j in 0..2 {
        let lo = n.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min);
        let hi = n.iter().map(|p| p[j]).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!((lo, hi), (0.0, 1.0));
    }
}

#[test]
fn single_point_at_origin_fills_the_box() {
    for m in 2..=6 {
        let hv = hypervolume(&[vec![0.0; m]], &vec![1.2; m]).unwrap();
        assert!((hv - 1.2f64.powi(m as i32)).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn adding_a_point_never_decreases_hv(
        pts in prop::collection::vec(prop::collection::vec(0.0..1.2f64, 3), 1..15),
        extra in prop::collection::vec(0.0..1.2f64, 3),
    ) {
        let z = [1.2; 3];
        let before = hypervolume(&pts, &z).unwrap();
        let mut more = pts.clone();
        more.push(extra);
        prop_assert!(hypervolume(&more, &z).unwrap() >= before - 1e-12);
    }

    #[test]
    fn hv_ignores_order_and_dominated_points(
        pts in prop::collection::vec(prop::collection::vec(0.0..1.3f64, 4), 1..12),
    ) {
        let z = [1.2; 4];
        let a = hypervolume(&pts, &z).unwrap();
        let mut rev = pts.clone();
        rev.reverse();
        prop_assert!((a - hypervolume(&rev, &z).unwrap()).abs() < 1e-12);
        prop_assert!((a - hypervolume(&nondominated_filter(&pts), &z).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn normalization_is_affine_invariant(
        pts in prop::collection::vec(prop::collection::vec(0.0..1.0f64, 2), 3..12),
        scale in 0.1..10.0f64,
        shift in -5.0..5.0f64,
    ) {
        let moved: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().map(|v| v * scale + shift).collect()).collect();
        let (Ok(b1), Ok(b2)) = (
            NormalizationBounds::from_union([pts.as_slice()]),
            NormalizationBounds::from_union([moved.as_slice()]),
        ) else {
            return Ok(());
        };
        let h1 = normalized_hypervolume(&pts, &b1).unwrap();
        let h2 = normalized_hypervolume(&moved, &b2).unwrap();
        prop_assert!((h1 - h2).abs() < 1e-9);
    }
}
