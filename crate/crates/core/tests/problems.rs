mod common;

use approx::assert_abs_diff_eq;
use common::*;
use dsogda::problems::*;
use dsogda::*;

fn concat(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().chain(b).copied().collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

#[test]
fn gradients_match_central_differences() {
    let mut rng = rng_for(31, 0);
    for p in suite() {
        for _ in 0..100 {
            let (x, y) = (p.set_x().sample(&mut rng), p.set_y().sample(&mut rng));
            let (fx, fy) = finite_difference_gradients(&p, &x, &y, 1e-6);
            let g = concat(&p.grad_x(&x, &y), &p.grad_y(&x, &y));
            let fd = concat(&fx, &fy);
            let err: Vec<f64> = g.iter().zip(&fd).map(|(a, b)| a - b).collect();
            assert!(norm(&err) <= 1e-5 * norm(&g).max(1.0), "{}: {g:?} vs {fd:?}", p.name());
        }
    }
}

#[test]
fn declared_constant_bounds_sampled_gradient_ratios() {
    let mut rng = rng_for(32, 0);
    for p in suite() {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let (x, y) = (p.set_x().sample(&mut rng), p.set_y().sample(&mut rng));
            let (a, b) = (p.set_x().sample(&mut rng), p.set_y().sample(&mut rng));
            let g1 = concat(&p.grad_x(&x, &y), &p.grad_y(&x, &y));
            let g2 = concat(&p.grad_x(&a, &b), &p.grad_y(&a, &b));
            let dg: Vec<f64> = g1.iter().zip(&g2).map(|(u, v)| u - v).collect();
            let dp: Vec<f64> = concat(&x, &y).iter().zip(concat(&a, &b)).map(|(u, v)| u - v).collect();
            worst = worst.max(norm(&dg) / norm(&dp));
        }
        // The free-x hard instance carries the box constant; sample its box.
        assert!(worst <= p.lipschitz() * (1.0 + 1e-12) || p.name() == "hard_gda", "{}: {worst} > {}", p.name(), p.lipschitz());
    }
}

#[test]
fn hard_instance_box_constant_is_attained() {
    let p = hard(true);
    // Hessian [[y, x], [x, 0]] at x = 1, y = 1 has norm (1 + sqrt 5) / 2.
    assert_abs_diff_eq!(p.lipschitz(), (1.0 + 5f64.sqrt()) / 2.0, epsilon = 1e-15);
    let free = hard(false);
    assert_eq!(free.lipschitz(), p.lipschitz());
    assert!(free.set_x().diameter().is_infinite());
}

#[test]
fn declared_curvature_flags_are_sound() {
    let mut rng = rng_for(33, 0);
    let h = 1e-3;
    for p in suite().into_iter().filter(|p| p.dim_x() == 1 && p.dim_y() == 1) {
        let s = p.structure();
        for _ in 0..200 {
            let (x, y) = (p.set_x().sample(&mut rng)[0], p.set_y().sample(&mut rng)[0]);
            let f = |a: f64, b: f64| p.eval_f(&[a], &[b]);
            if s.convex_in_x {
                assert!(f(x + h, y) - 2.0 * f(x, y) + f(x - h, y) >= -1e-12, "{}", p.name());
            }
            if s.concave_in_y {
                assert!(f(x, y + h) - 2.0 * f(x, y) + f(x, y - h) <= 1e-12, "{}", p.name());
            }
        }
    }
}

#[test]
fn nonconvex_family_is_really_nonconvex() {
    let p = polynomial_1d();
    let f = |a: f64| p.eval_f(&[a], &[1.0]);
    // (x^3 - 3x) y / 3 with y = 1 bends down for x < 0.
    assert!(f(-1.01) - 2.0 * f(-1.0) + f(-0.99) < 0.0);
    assert!(!p.structure().convex_in_x);
}

#[test]
fn hard_instance_values() {
    let p = hard(false);
    assert_abs_diff_eq!(p.eval_f(&[0.2], &[1.0]), 0.02, epsilon = 1e-17);
    assert_abs_diff_eq!(p.grad_x(&[0.2], &[1.0])[0], 0.2, epsilon = 1e-17);
    assert_abs_diff_eq!(p.grad_y(&[0.2], &[1.0])[0], 0.02, epsilon = 1e-17);
    let (x, _y, v) = reference_solution(&p).unwrap();
    assert_eq!((x[0], v), (0.0, 0.0));
}

#[test]
fn bilinear_reference_solution() {
    let p = unit_bilinear();
    let (x, y, v) = reference_solution(&p).unwrap();
    assert_eq!((x[0], y[0], v), (0.0, 0.0, 0.0));
    assert_eq!(p.eval_f(&[0.5], &[0.5]), 0.25);
    assert_eq!(saddle_gap(&p, &[0.5], &[0.0], 1e-8).unwrap().value, 0.5);
}

#[test]
fn bilinear_with_offsets_solves_the_optimality_system() {
    let spec = InstanceSpec::BilinearCc { n: 2, d: 2, seed: 5, scale: 1.0, shape: SetShape::Box, radius: 10.0, offset: 0.1 };
    let p = make_instance(&spec).unwrap();
    let (x, y, _) = reference_solution(&p).expect("interior saddle");
    assert!(norm(&p.grad_x(&x, &y)) <= 1e-12 && norm(&p.grad_y(&x, &y)) <= 1e-12);
    assert!(saddle_gap(&p, &x, &y, 1e-8).unwrap().value <= 1e-8);
}

#[test]
fn identity_quadratic_has_the_origin_as_saddle() {
    let spec = InstanceSpec::QuadraticCc { n: 1, d: 1, seed: 0, scale: 1.0, min_curvature: 1.0 };
    let p = make_instance(&spec).unwrap();
    assert_eq!(p.eval_f(&[1.0], &[0.0]), 0.5);
    assert_eq!(p.eval_f(&[0.0], &[1.0]), -0.5);
    assert_eq!(p.eval_f(&[1.0], &[1.0]), 1.0);
    let (x, y, v) = reference_solution(&p).unwrap();
    assert_eq!((x[0], y[0], v), (0.0, 0.0, 0.0));
}

#[test]
fn kl_instance_declares_the_square_root_exponent() {
    let spec = InstanceSpec::KlQuadratic { n: 2, seed: 5, spectrum: vec![1.0, 0.0], coupling: 0.5, well: 0.5 };
    let p = make_instance(&spec).unwrap();
    let kl = p.structure().kl_y.unwrap();
    assert_eq!(kl.theta, 0.5);
    // Smallest positive eigenvalue of diag(1, 0), via an independent eigen-solve.
    let q = nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 0.0]));
    let mu = q.symmetric_eigenvalues().iter().copied().filter(|l| *l > 1e-12).fold(f64::INFINITY, f64::min);
    assert_abs_diff_eq!(kl.tau, (2.0 * mu).sqrt(), epsilon = 1e-15);
    assert!(kl.certified);
    // The null direction of Q does not enter f.
    assert_eq!(p.eval_f(&[0.3, -0.2], &[0.4, 0.9]), p.eval_f(&[0.3, -0.2], &[0.4, -0.6]));
    assert!(reference_solution(&p).is_none());
}

#[test]
fn kl_inequality_holds_on_samples() {
    // dist(0, -grad_y f + N_Y(y)) >= tau (max_y f - f)^theta along the inner problem.
    let spec = InstanceSpec::KlQuadratic { n: 1, seed: 4, spectrum: vec![1.0], coupling: 0.5, well: 0.5 };
    let p = make_instance(&spec).unwrap();
    let kl = p.structure().kl_y.unwrap();
    let mut rng = rng_for(35, 0);
    for _ in 0..500 {
        let (x, y) = (p.set_x().sample(&mut rng), p.set_y().sample(&mut rng));
        let best = p.eval_f(&x, &p.argmax_y(&x).unwrap().point);
        let g: Vec<f64> = p.grad_y(&x, &y).iter().map(|v| -v).collect();
        let stat = p.set_y().normal_cone_distance(&y, &g).unwrap().value;
        let gap = (best - p.eval_f(&x, &y)).max(0.0);
        assert!(stat + 1e-12 >= kl.tau * gap.powf(kl.theta), "{stat} vs {}", kl.tau * gap.sqrt());
    }
}

#[test]
fn invalid_specs_are_rejected() {
    let bad = [
        InstanceSpec::BilinearCc { n: 0, d: 1, seed: 0, scale: 1.0, shape: SetShape::Box, radius: 1.0, offset: 0.0 },
        InstanceSpec::BilinearCc { n: 1, d: 1, seed: 0, scale: -1.0, shape: SetShape::Box, radius: 1.0, offset: 0.0 },
        InstanceSpec::BilinearCc { n: 1, d: 1, seed: 0, scale: 1.0, shape: SetShape::Ball, radius: 0.0, offset: 0.0 },
        InstanceSpec::QuadraticCc { n: 1, d: 1, seed: 0, scale: 1.0, min_curvature: 2.0 },
        InstanceSpec::PolynomialNcC { n: 1, scale: f64::NAN, coupling: 0.0, x_bound: 1.0, y_bound: 1.0 },
        InstanceSpec::KlQuadratic { n: 1, seed: 0, spectrum: vec![0.0, 0.0], coupling: 0.5, well: 0.5 },
        InstanceSpec::KlQuadratic { n: 1, seed: 0, spectrum: vec![], coupling: 0.5, well: 0.5 },
    ];
    for spec in bad {
        assert!(matches!(make_instance(&spec), Err(Error::InvalidInput(_))), "{spec:?}");
    }
}

#[test]
fn construction_is_reproducible() {
    for spec in standard_specs() {
        let (a, b) = (make_instance(&spec).unwrap(), make_instance(&spec).unwrap());
        let (x, y) = initial_point(&a, 9);
        assert_eq!((x.clone(), y.clone()), initial_point(&b, 9));
        assert_eq!(a.eval_f(&x, &y).to_bits(), b.eval_f(&x, &y).to_bits());
        assert_eq!(a.name(), b.name());
    }
    let a = make_instance(&standard_specs()[1]).unwrap();
    let other = InstanceSpec::BilinearCc { n: 2, d: 2, seed: 8, scale: 1.0, shape: SetShape::Box, radius: 1.0, offset: 0.0 };
    let b = make_instance(&other).unwrap();
    assert_ne!(a.eval_f(&[0.3, 0.4], &[0.5, -0.1]), b.eval_f(&[0.3, 0.4], &[0.5, -0.1]));
}

#[test]
fn transposed_spec_mirrors_the_inner_instance() {
    let spec = InstanceSpec::Transposed { inner: Box::new(InstanceSpec::HardGda { boxed: true }) };
    assert_eq!(spec.family_name(), "transposed:hard_gda");
    let t = make_instance(&spec).unwrap();
    assert_eq!(t.eval_f(&[0.5], &[0.4]), -0.5 * 0.4 * 0.4 * 0.5);
    assert_eq!(t.set_x().dim(), 1);
    assert!(t.set_x().contains(&[0.0]) && !t.set_x().contains(&[-0.5]));
}
