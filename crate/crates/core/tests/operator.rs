mod common;

use approx::assert_abs_diff_eq;
use common::*;
use dsogda::operator::transpose_problem;
use dsogda::problems::initial_point;
use dsogda::*;
use proptest::prelude::*;

fn zero_params(eta: f64) -> SolverParams {
    SolverParams::symmetric(0.0, eta, 0.0, Regime::Manual).unwrap()
}

#[test]
fn regularized_value_examples() {
    let p = product_unconstrained();
    let params = SolverParams::symmetric(2.0, 0.1, 0.1, Regime::Manual).unwrap();
    let v = regularized_value(&p, &params, &[1.0], &[1.0], &[0.0], &[0.0]).unwrap();
    assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);

    let zero = zero_params(0.1);
    let f = regularized_value(&p, &zero, &[0.3], &[-0.7], &[5.0], &[2.0]).unwrap();
    assert_abs_diff_eq!(f, 0.3 * -0.7, epsilon = 1e-15);
    let same = regularized_value(&p, &params, &[0.3], &[-0.7], &[0.3], &[-0.7]).unwrap();
    assert_abs_diff_eq!(same, 0.3 * -0.7, epsilon = 1e-15);
}

#[test]
fn regularized_value_rejects_infeasible_points() {
    let p = unit_bilinear();
    let params = zero_params(0.1);
    assert!(matches!(
        regularized_value(&p, &params, &[2.0], &[0.0], &[0.0], &[0.0]),
        Err(Error::Infeasible { .. })
    ));
}

#[test]
fn operator_examples() {
    let p = hard(false);
    let params = zero_params(0.1);
    let s = SolverState::at(&p, &params, &[1.0], &[0.5], &[1.0], &[0.5]).unwrap();
    let g = eval_operator(&p, &params, &s).unwrap();
    assert_abs_diff_eq!(g.g_x[0], 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(g.g_y[0], -0.5, epsilon = 1e-15);
    assert_eq!((g.g_z[0], g.g_v[0]), (0.0, 0.0));

    let f = flat(1, 1);
    let params = SolverParams::new(2.0, 3.0, 0.1, 0.1, 0.1, 0.1, Regime::Manual).unwrap();
    let s = SolverState::at(&f, &params, &[1.0], &[0.0], &[0.0], &[0.0]).unwrap();
    let g = eval_operator(&f, &params, &s).unwrap();
    assert_eq!((g.g_x[0], g.g_z[0]), (2.0, -2.0));

    let s = SolverState::at(&f, &params, &[0.4], &[-0.2], &[0.4], &[-0.2]).unwrap();
    let g = eval_operator(&f, &params, &s).unwrap();
    assert_eq!((g.g_z[0], g.g_v[0]), (0.0, 0.0));
}

#[test]
fn first_optimistic_step_on_the_hard_instance() {
    let p = hard(false);
    let params = zero_params(0.1);
    let s0 = SolverState::initial(AlgorithmKind::DsOgda, &p, &params, &[1.0], &[0.5]).unwrap();
    let s1 = step(AlgorithmKind::DsOgda, &p, &params, &s0).unwrap();
    assert_abs_diff_eq!(s1.x()[0], 0.95, epsilon = 1e-15);
    assert_abs_diff_eq!(s1.y()[0], 0.55, epsilon = 1e-15);
    assert_eq!(s1.t(), 1);
}

#[test]
fn first_gda_step_on_the_hard_instance() {
    let p = hard(false);
    let params = zero_params(0.1);
    let s0 = SolverState::initial(AlgorithmKind::Gda, &p, &params, &[0.2], &[1.0]).unwrap();
    let s1 = step(AlgorithmKind::Gda, &p, &params, &s0).unwrap();
    assert_abs_diff_eq!(s1.x()[0], 0.18, epsilon = 1e-15);
}

#[test]
fn gda_on_the_hard_instance_decays_no_faster_than_geometric() {
    let p = hard(false);
    let params = zero_params(0.1);
    let states = trajectory(AlgorithmKind::Gda, &p, &params, &[0.2], &[1.0], 50).unwrap();
    for (t, s) in states.iter().enumerate() {
        assert!(s.x()[0].abs() >= 0.9f64.powi(t as i32) * 0.2 * (1.0 - 1e-14), "t={t}");
    }
}

#[test]
fn hard_instance_recurrence_is_exact() {
    let p = hard(true);
    let params = zero_params(0.3);
    let states = trajectory(AlgorithmKind::Gda, &p, &params, &[0.9], &[0.2], 400).unwrap();
    for w in states.windows(2) {
        let (x, y, next) = (w[0].x()[0], w[0].y()[0], w[1].x()[0]);
        let predicted = (1.0 - 0.3 * y) * x;
        assert!((next - predicted).abs() <= 1e-14 * predicted.abs());
        assert!(next.abs() <= 1.0);
    }
}

#[test]
fn diverging_runs_report_the_iteration() {
    let p = product_unconstrained();
    let params = zero_params(1e154);
    let sched = MeasureSchedule { gap: false, ..Default::default() };
    let out = run(AlgorithmKind::Gda, &p, &params, &[1.0], &[1.0], 10, &sched);
    let failure = out.unwrap_err();
    assert!(matches!(failure.error, Error::Diverged { iteration } if iteration >= 2), "{failure:?}");
}

#[test]
fn run_records_and_is_deterministic() {
    let p = unit_bilinear();
    let params = zero_params(0.1);
    let one = run(AlgorithmKind::DsOgda, &p, &params, &[0.5], &[0.5], 1, &MeasureSchedule::default()).unwrap();
    assert_eq!(one.records.len(), 1);
    assert_eq!(one.records[0].t, 1);

    let sched = MeasureSchedule { stride: 7, ..Default::default() };
    let a = run(AlgorithmKind::DsOgda, &p, &params, &[0.5], &[0.5], 50, &sched).unwrap();
    let b = run(AlgorithmKind::DsOgda, &p, &params, &[0.5], &[0.5], 50, &sched).unwrap();
    let key = |o: &RunOutput| o.records.iter().map(|r| (r.t, r.f_val.to_bits(), r.gap.map(f64::to_bits))).collect::<Vec<_>>();
    assert_eq!(key(&a), key(&b));
    let ts: Vec<usize> = a.records.iter().map(|r| r.t).collect();
    assert_eq!(ts, vec![7, 14, 21, 28, 35, 42, 49, 50]);
    assert_eq!(a.final_state, b.final_state);
}

fn max_coordinate_gap(a: &[SolverState], b: &[SolverState]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(s, t)| {
            s.x().iter().zip(t.x().iter()).chain(s.y().iter().zip(t.y().iter())).map(|(u, v)| (u - v).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn smoothing_off_reduces_to_the_plain_rules() {
    for p in suite() {
        let (x0, y0) = initial_point(&p, 3);
        let params = zero_params(0.05);
        for (smoothed, plain) in [(AlgorithmKind::DsOgda, AlgorithmKind::Ogda), (AlgorithmKind::DsGda, AlgorithmKind::Gda)] {
            let a = trajectory(smoothed, &p, &params, &x0, &y0, 300).unwrap();
            let b = trajectory(plain, &p, &params, &x0, &y0, 300).unwrap();
            assert!(max_coordinate_gap(&a, &b) <= 1e-12, "{} {smoothed}", p.name());
        }
    }
}

#[test]
fn plain_rules_ignore_smoothing_parameters() {
    let p = unit_bilinear();
    let smoothed = SolverParams::symmetric(3.0, 0.05, 0.2, Regime::Manual).unwrap();
    let a = trajectory(AlgorithmKind::Ogda, &p, &smoothed, &[0.3], &[-0.4], 100).unwrap();
    let b = trajectory(AlgorithmKind::Ogda, &p, &zero_params(0.05), &[0.3], &[-0.4], 100).unwrap();
    assert_eq!(max_coordinate_gap(&a, &b), 0.0);
}

#[test]
fn equal_consecutive_operators_make_optimism_vanish() {
    // At u^0 the stored operator equals the current one.
    for p in suite() {
        let (x0, y0) = initial_point(&p, 11);
        let params = SolverParams::symmetric(2.0 * p.lipschitz(), 0.01, 0.1, Regime::Manual).unwrap();
        let s0 = SolverState::initial(AlgorithmKind::DsOgda, &p, &params, &x0, &y0).unwrap();
        let a = step(AlgorithmKind::DsOgda, &p, &params, &s0).unwrap();
        let b = step(AlgorithmKind::DsGda, &p, &params, &s0).unwrap();
        let pairs = [(a.x(), b.x()), (a.y(), b.y()), (a.z(), b.z()), (a.v(), b.v())];
        for (u, w) in pairs {
            for (s, t) in u.iter().zip(w.iter()) {
                assert!((s - t).abs() <= 1e-14 * (1.0 + s.abs()), "{}", p.name());
            }
        }
    }
}

#[test]
fn anchors_contract_toward_the_old_iterate() {
    let p = unit_bilinear();
    let params = SolverParams::symmetric(2.0, 0.1, 0.3, Regime::Manual).unwrap();
    let s = SolverState::at(&p, &params, &[0.6], &[0.1], &[-0.4], &[0.9]).unwrap();
    let next = step(AlgorithmKind::DsOgda, &p, &params, &s).unwrap();
    assert_abs_diff_eq!((next.z()[0] - 0.6).abs(), 0.7 * (-0.4f64 - 0.6).abs(), epsilon = 1e-15);
    assert_abs_diff_eq!((next.v()[0] - 0.1).abs(), 0.7 * (0.9f64 - 0.1).abs(), epsilon = 1e-15);
}

#[test]
fn extragradient_uses_the_midpoint() {
    let p = product_unconstrained();
    let params = zero_params(0.1);
    let s0 = SolverState::initial(AlgorithmKind::Eg, &p, &params, &[1.0], &[1.0]).unwrap();
    let s1 = step(AlgorithmKind::Eg, &p, &params, &s0).unwrap();
    // Midpoint (0.9, 1.1); full step from (1, 1).
    assert_abs_diff_eq!(s1.x()[0], 1.0 - 0.1 * 1.1, epsilon = 1e-15);
    assert_abs_diff_eq!(s1.y()[0], 1.0 + 0.1 * 0.9, epsilon = 1e-15);
}

#[test]
fn iterates_stay_feasible() {
    for p in suite() {
        let (x0, y0) = initial_point(&p, 5);
        let params = SolverParams::symmetric(2.0 * p.lipschitz(), 0.4 / p.lipschitz(), 0.3, Regime::Manual).unwrap();
        for kind in AlgorithmKind::ALL {
            let states = trajectory(kind, &p, &params, &x0, &y0, 200).unwrap();
            for s in &states {
                assert!(p.set_x().violation(s.x()).unwrap() <= 1e-9, "{} {kind}", p.name());
                assert!(p.set_y().violation(s.y()).unwrap() <= 1e-9, "{} {kind}", p.name());
            }
        }
    }
}

#[test]
fn transposition_is_an_involution() {
    for p in suite() {
        let back = transpose_problem(&transpose_problem(&p));
        assert_eq!(back.name(), p.name());
        let mut rng = dsogda::problems::rng_for(9, 2);
        for _ in 0..100 {
            let x = p.set_x().sample(&mut rng);
            let y = p.set_y().sample(&mut rng);
            assert_eq!(back.eval_f(&x, &y), p.eval_f(&x, &y));
        }
    }
}

#[test]
fn transposed_product_is_negated() {
    let t = transpose_problem(&product_unconstrained());
    assert_eq!(t.eval_f(&[2.0], &[3.0]), -6.0);
}

#[test]
fn transposition_mirrors_flags() {
    let p = polynomial_1d();
    let t = transpose_problem(&p);
    assert!(!p.structure().convex_in_x && p.structure().concave_in_y);
    assert!(t.structure().convex_in_x && !t.structure().concave_in_y);
    let kl = dsogda::problems::make_instance(&dsogda::problems::standard_specs()[10]).unwrap();
    assert!(kl.structure().kl_y.is_some());
    assert_eq!(transpose_problem(&kl).structure().kl_x, kl.structure().kl_y);
}

#[test]
fn transposed_runs_mirror_the_original() {
    for p in suite() {
        let t = transpose_problem(&p);
        let (x0, y0) = initial_point(&p, 2);
        let params = SolverParams::new(3.0, 4.0, 0.02, 0.03, 0.1, 0.2, Regime::Manual).unwrap();
        for kind in AlgorithmKind::ALL {
            let a = trajectory(kind, &p, &params, &x0, &y0, 100).unwrap();
            let b = trajectory(kind, &t, &params.transposed(), &y0, &x0, 100).unwrap();
            for (s, u) in a.iter().zip(&b) {
                assert_eq!(s.transposed(), *u, "{} {kind}", p.name());
            }
        }
    }
}

#[test]
fn ppm_error_matches_the_direct_residual() {
    let p = product_unconstrained();
    let (r, eta) = (2.0, 0.05);
    let params = SolverParams::symmetric(r, eta, r * eta, Regime::Cc).unwrap();
    let states = trajectory(AlgorithmKind::DsOgda, &p, &params, &[0.8], &[-0.3], 12).unwrap();
    for w in states.windows(3) {
        let e = ppm_error(&p, &params, &w[0], &w[1], &w[2]).unwrap();
        let g = eval_operator(&p, &params, &w[2]).unwrap();
        let (c, n) = (&w[1], &w[2]);
        let direct = [
            n.x()[0] - (c.x()[0] - eta * g.g_x[0]),
            n.y()[0] - (c.y()[0] - eta * g.g_y[0]),
            n.z()[0] - (c.z()[0] - eta * g.g_z[0]),
            n.v()[0] - (c.v()[0] - eta * g.g_v[0]),
        ];
        for (a, b) in e.iter().zip(direct) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-10);
        }
    }
}

#[test]
fn ppm_error_is_zero_for_a_constant_operator_and_linear_in_eta() {
    let f = flat(2, 1);
    let params = SolverParams::symmetric(0.0, 0.1, 0.0, Regime::Cc).unwrap();
    let s = SolverState::at(&f, &params, &[1.0, 2.0], &[3.0], &[0.0, 0.0], &[0.0]).unwrap();
    assert!(ppm_error(&f, &params, &s, &s, &s).unwrap().iter().all(|v| *v == 0.0));

    let p = unit_bilinear();
    let one = SolverParams::symmetric(2.0, 0.05, 0.1, Regime::Manual).unwrap();
    let two = SolverParams { eta_x: 0.1, eta_y: 0.1, ..one };
    let states = trajectory(AlgorithmKind::DsOgda, &p, &one, &[0.4], &[0.2], 2).unwrap();
    let a = ppm_error(&p, &one, &states[0], &states[1], &states[2]).unwrap();
    let b = ppm_error(&p, &two, &states[0], &states[1], &states[2]).unwrap();
    for (u, v) in a.iter().zip(b.iter()) {
        assert_abs_diff_eq!(2.0 * u, *v, epsilon = 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operator_smoothing_blocks_have_closed_form(
        x in -1.0f64..1.0, y in -1.0f64..1.0, z in -3.0f64..3.0, v in -3.0f64..3.0,
        rx in 0.0f64..10.0, ry in 0.0f64..10.0,
    ) {
        let p = unit_bilinear();
        let params = SolverParams::new(rx, ry, 0.1, 0.1, 0.1, 0.1, Regime::Manual).unwrap();
        let s = SolverState::at(&p, &params, &[x], &[y], &[z], &[v]).unwrap();
        let g = eval_operator(&p, &params, &s).unwrap();
        prop_assert_eq!(g.g_z[0], rx * (z - x));
        prop_assert_eq!(g.g_v[0], ry * (v - y));
        prop_assert!((g.g_x[0] - (y + rx * (x - z))).abs() < 1e-14);
        prop_assert!((g.g_y[0] - (-x + ry * (y - v))).abs() < 1e-14);
    }

    #[test]
    fn smoothed_and_plain_rules_agree_without_smoothing(
        x in -1.0f64..1.0, y in -1.0f64..1.0, eta in 0.001f64..0.5,
    ) {
        let p = unit_bilinear();
        let params = zero_params(eta);
        let a = trajectory(AlgorithmKind::DsGda, &p, &params, &[x], &[y], 30).unwrap();
        let b = trajectory(AlgorithmKind::Gda, &p, &params, &[x], &[y], 30).unwrap();
        prop_assert!(max_coordinate_gap(&a, &b) <= 1e-12);
    }
}
