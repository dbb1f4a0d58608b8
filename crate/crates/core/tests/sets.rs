use dsogda::{ConvexSet, Vector};
use proptest::prelude::*;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt()
}

fn sets(dim: usize) -> Vec<ConvexSet> {
    let mut out = vec![
        ConvexSet::whole(dim).unwrap(),
        ConvexSet::cube(dim, -1.0, 2.0).unwrap(),
        ConvexSet::ball(Vector::new(vec![0.5; dim]).unwrap(), 1.5).unwrap(),
    ];
    if dim >= 2 {
        out.push(ConvexSet::simplex(dim).unwrap());
    }
    out
}

fn point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_is_nonexpansive((p, q) in (1usize..5).prop_flat_map(|d| (point(d), point(d)))) {
        let dim = p.len();
        for set in sets(dim) {
            let a = set.project(&p).unwrap();
            let b = set.project(&q).unwrap();
            prop_assert!(dist(&a, &b) <= dist(&p, &q) * (1.0 + 1e-12) + 1e-12);
        }
    }

    #[test]
    fn projection_is_idempotent_and_feasible(p in point(3)) {
        for set in sets(3) {
            let a = set.project(&p).unwrap();
            prop_assert!(set.contains(&a));
            let b = set.project(&a).unwrap();
            prop_assert!(dist(&a, &b) <= 1e-12);
        }
    }

    #[test]
    fn projection_beats_sampled_members(p in point(2)) {
        let mut rng = dsogda::problems::rng_for(1, 0);
        for set in sets(2) {
            let a = set.project(&p).unwrap();
            for _ in 0..50 {
                let m = set.sample(&mut rng);
                prop_assert!(dist(&a, &p) <= dist(&m, &p) + 1e-12);
            }
        }
    }

    #[test]
    fn interior_points_measure_the_full_gradient(g in point(3)) {
        let boxed = ConvexSet::cube(3, -1.0, 1.0).unwrap();
        let ball = ConvexSet::ball(Vector::zeros(3), 1.0).unwrap();
        let x = [0.1, -0.2, 0.3];
        for set in [boxed, ball, ConvexSet::whole(3).unwrap()] {
            let d = set.normal_cone_distance(&x, &g).unwrap();
            prop_assert!((d.value - norm(&g)).abs() <= 1e-12);
            prop_assert!(d.exact);
        }
    }

    #[test]
    fn outward_gradients_are_absorbed_by_the_cone(scale in 0.0f64..4.0, dir in point(2)) {
        prop_assume!(norm(&dir) > 1e-6);
        // Boundary point of the unit ball with g = -s * outward normal.
        let u: Vec<f64> = dir.iter().map(|v| v / norm(&dir)).collect();
        let ball = ConvexSet::ball(Vector::zeros(2), 1.0).unwrap();
        let g: Vec<f64> = u.iter().map(|v| -scale * v).collect();
        prop_assert!(ball.normal_cone_distance(&u, &g).unwrap().value <= 1e-12);

        let boxed = ConvexSet::cube(2, -1.0, 1.0).unwrap();
        let corner = [1.0, -1.0];
        let g = [-scale, scale];
        prop_assert_eq!(boxed.normal_cone_distance(&corner, &g).unwrap().value, 0.0);
    }

    #[test]
    fn normal_cone_distance_never_exceeds_the_gradient_norm(x in point(2), g in point(2)) {
        for set in sets(2) {
            let px = set.project(&x).unwrap();
            let d = set.normal_cone_distance(&px, &g).unwrap();
            prop_assert!(d.value >= 0.0);
            prop_assert!(d.value <= norm(&g) + 1e-12);
        }
    }
}

#[test]
fn zero_gradient_is_stationary_everywhere() {
    let mut rng = dsogda::problems::rng_for(4, 0);
    for set in sets(3) {
        for _ in 0..20 {
            let x = set.sample(&mut rng);
            let d = set.normal_cone_distance(&x, &[0.0; 3]).unwrap();
            // The simplex surrogate goes through a projection and may round.
            if d.exact {
                assert_eq!(d.value, 0.0);
            } else {
                assert!(d.value <= 1e-14);
            }
        }
    }
}

#[test]
fn box_case_analysis() {
    let b = ConvexSet::cube(1, -1.0, 1.0).unwrap();
    assert_eq!(b.normal_cone_distance(&[1.0], &[1.0]).unwrap().value, 1.0);
    assert_eq!(b.normal_cone_distance(&[1.0], &[-1.0]).unwrap().value, 0.0);
    assert_eq!(b.normal_cone_distance(&[-1.0], &[1.0]).unwrap().value, 0.0);
    assert_eq!(b.normal_cone_distance(&[-1.0], &[-2.0]).unwrap().value, 2.0);
}

#[test]
fn infeasible_points_are_rejected() {
    let b = ConvexSet::cube(1, -1.0, 1.0).unwrap();
    assert!(b.normal_cone_distance(&[1.5], &[0.0]).is_err());
    assert!(b.violation(&[1.0 + 1e-10]).unwrap() <= dsogda::sets::MEMBERSHIP_TOL);
    assert!(b.contains(&[1.0 + 1e-10]));
    assert!(!b.contains(&[1.0 + 1e-8]));
}

#[test]
fn whole_space_has_infinite_diameter() {
    assert!(ConvexSet::whole(2).unwrap().diameter().is_infinite());
    assert!((ConvexSet::cube(2, -1.0, 1.0).unwrap().diameter() - 8f64.sqrt()).abs() < 1e-15);
    assert_eq!(ConvexSet::ball(Vector::zeros(2), 1.5).unwrap().diameter(), 3.0);
}
