use colwave::linwave::{
    check_support, duhamel, operator_norm_probe, solve_linear, LinearSolver, QuadratureSpec,
};
use colwave::nets::InitialDatum;
use colwave::semilinear::residual_with;
use colwave::nets::Nonlinearity;
use colwave::seminorms::{Field, SpaceTimeGrid};
use colwave::Error;

fn quad() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn origin(g: &SpaceTimeGrid) -> usize {
    g.ravel(&[g.half(); 3][..g.dim()])
}

#[test]
fn translation_average_in_one_dimension() {
    let g = SpaceTimeGrid::new(1, 1.0, 1.0, 0.02, 0.02).unwrap();
    let u0 = InitialDatum::gaussian(1.0, 0.7, 6.0);
    let u = solve_linear(1, &u0, &InitialDatum::Zero, None, &g, &quad()).unwrap();
    for n in 0..g.nt() {
        let t = g.time(n);
        for s in 0..g.spatial_len() {
            let x = g.point(s)[0];
            let exact = 0.5 * (u0.value(&[x + t]) + u0.value(&[x - t]));
            assert!((u.value(n, s) - exact).abs() <= 1e-8);
        }
    }
}

#[test]
fn plateau_means_equal_time() {
    for dim in 1..=3 {
        let g = SpaceTimeGrid::new(dim, 0.5, 2.0, 0.1, 0.05).unwrap();
        let u1 = InitialDatum::plateau(2.0, 1.0, 1.0);
        let u = solve_linear(dim, &InitialDatum::Zero, &u1, None, &g, &quad()).unwrap();
        let o = origin(&g);
        for n in 0..g.nt() {
            assert!((u.value(n, o) - g.time(n)).abs() <= 1e-6, "d = {dim}, n = {n}");
        }
    }
}

#[test]
fn plateau_means_hold_on_the_inner_backward_cone_and_ignore_refinement() {
    for dim in 2..=3 {
        let g = SpaceTimeGrid::new(dim, 0.4, 2.0, 0.1, 0.05).unwrap();
        let u1 = InitialDatum::plateau(2.0, 1.0, 1.0);
        let coarse = LinearSolver::new(g, quad()).unwrap().homogeneous(&InitialDatum::Zero, &u1).unwrap();
        let fine = LinearSolver::new(g, quad().refined())
            .unwrap()
            .homogeneous(&InitialDatum::Zero, &u1)
            .unwrap();
        for n in 0..g.nt() {
            let t = g.time(n);
            for s in 0..g.spatial_len() {
                if g.radius(s) + t <= 1.0 {
                    assert!((coarse.value(n, s) - t).abs() <= 1e-8);
                    assert!((coarse.value(n, s) - fine.value(n, s)).abs() <= 1e-8);
                }
            }
        }
    }
}

#[test]
fn zero_data_give_zero() {
    for dim in 1..=3 {
        let g = SpaceTimeGrid::new(dim, 0.2, 0.5, 0.1, 0.1).unwrap();
        let zero = Field::zeros(g);
        let u = solve_linear(dim, &InitialDatum::Zero, &InitialDatum::Zero, Some(&zero), &g, &quad())
            .unwrap();
        assert!(u.samples().iter().all(|&v| v == 0.0));
        assert_eq!(duhamel(&zero, 0.2, &[0.0; 3][..dim], &quad()).unwrap(), 0.0);
    }
}

#[test]
fn duhamel_of_a_constant_source() {
    let g1 = SpaceTimeGrid::new(1, 1.0, 3.0, 0.05, 0.05).unwrap();
    let one = Field::from_fn(g1, |_, _| 1.0);
    for t in [0.25, 0.5, 1.0] {
        let w = duhamel(&one, t, &[0.0], &quad()).unwrap();
        assert!((w - 0.5 * t * t).abs() <= 1e-6, "1D t = {t}: {w}");
    }
    let g3 = SpaceTimeGrid::new(3, 0.5, 1.0, 0.1, 0.05).unwrap();
    let near = Field::from_fn(g3, |_, x| if x.iter().map(|c| c * c).sum::<f64>() <= 1.0 { 1.0 } else { 0.0 });
    for t in [0.2, 0.35, 0.5] {
        let w = duhamel(&near, t, &[0.1, -0.1, 0.0], &quad()).unwrap();
        assert!((w - 0.5 * t * t).abs() <= 1e-6, "3D t = {t}: {w}");
    }
}

#[test]
fn grid_source_matches_pointwise_duhamel() {
    for dim in 1..=3 {
        let g = SpaceTimeGrid::new(dim, 0.3, 0.8, 0.1, 0.05).unwrap();
        let h = Field::from_fn(g, |t, x| (1.0 + t * t) * (-3.0 * x.iter().map(|c| c * c).sum::<f64>()).exp());
        let solver = LinearSolver::new(g, quad()).unwrap();
        let w = solver.source(&h).unwrap();
        for n in [1, 3, g.nt() - 1] {
            for s in (0..g.spatial_len()).step_by(37) {
                let p = g.point(s);
                let direct = solver.duhamel_at(&h, g.time(n), &p[..dim]).unwrap();
                assert!((w.value(n, s) - direct).abs() <= 1e-12, "d = {dim}");
            }
        }
    }
}

#[test]
fn duhamel_rejects_times_outside_the_grid() {
    let g = SpaceTimeGrid::new(1, 0.5, 0.5, 0.1, 0.1).unwrap();
    let h = Field::zeros(g);
    assert!(matches!(duhamel(&h, 0.7, &[0.0], &quad()), Err(Error::TimeOutOfRange { .. })));
    assert!(duhamel(&h, -0.1, &[0.0], &quad()).is_err());
}

#[test]
fn dimension_mismatch_is_rejected() {
    let g = SpaceTimeGrid::new(2, 0.5, 0.5, 0.1, 0.1).unwrap();
    let r = solve_linear(3, &InitialDatum::Zero, &InitialDatum::Zero, None, &g, &quad());
    assert!(matches!(r, Err(Error::Validation { .. })));
}

#[test]
fn solution_is_linear_in_the_data() {
    for dim in 1..=3 {
        let g = SpaceTimeGrid::new(dim, 0.3, 1.0, 0.1, 0.05).unwrap();
        let u0 = InitialDatum::gaussian(1.0, 0.8, 6.0);
        let u1 = InitialDatum::plateau(0.9, 0.4, 0.3);
        let h = Field::from_fn(g, |t, x| (t - x[0]).cos() * InitialDatum::gaussian(1.0, 1.0, 1.0).value(x));
        let a = -2.5;
        let solver = LinearSolver::new(g, quad()).unwrap();
        let base = solver.solve(&u0, &u1, Some(&h)).unwrap();
        let scaled = solver
            .solve(&u0.scaled(a), &u1.scaled(a), Some(&h.scale(a)))
            .unwrap();
        let norm = scaled.sup_abs();
        for (x, y) in base.samples().iter().zip(scaled.samples()) {
            assert!((a * x - y).abs() <= 1e-12 * norm, "d = {dim}: {} vs {y}", a * x);
        }
    }
}

#[test]
fn initial_conditions_are_reproduced() {
    for dim in 1..=3 {
        let g = SpaceTimeGrid::new(dim, 0.2, 1.0, 0.05, 0.025).unwrap();
        let u0 = InitialDatum::gaussian(1.0, 0.6, 6.0);
        let u1 = InitialDatum::gaussian(0.8, 0.4, 6.0);
        let u = LinearSolver::new(g, quad()).unwrap().homogeneous(&u0, &u1).unwrap();
        let dt = g.dt();
        let mut err = 0.0f64;
        for s in 0..g.spatial_len() {
            let x = &g.point(s)[..dim];
            assert_eq!(u.value(0, s), u0.value(x));
            // u(dt) = u0 + dt u1 + dt^2/2 lap u0 + O(dt^3)
            let lap: f64 = (0..dim)
                .map(|k| {
                    let mut alpha = [0; 3];
                    alpha[k] = 2;
                    u0.derivative(x, &alpha[..dim]).unwrap()
                })
                .sum();
            let forward = (u.value(1, s) - u.value(0, s)) / dt;
            err = err.max((forward - u1.value(x) - 0.5 * dt * lap).abs());
        }
        assert!(err <= 10.0 * dt * dt, "d = {dim}: {err}");
    }
}

#[test]
fn discrete_wave_operator_recovers_the_source() {
    let u0 = InitialDatum::gaussian(1.0, 0.5, 6.0);
    let mut hs = Vec::new();
    let mut errs = Vec::new();
    for dx in [0.04, 0.02, 0.01] {
        let g = SpaceTimeGrid::new(1, 0.6, 1.0, dx, dx).unwrap();
        let h = Field::from_fn(g, |t, x| (1.0 + t) * InitialDatum::gaussian(1.0, 1.0, 6.0).value(x));
        let u = LinearSolver::new(g, quad()).unwrap().solve(&u0, &InitialDatum::Zero, Some(&h)).unwrap();
        let r = residual_with(&u, 0.0, &Nonlinearity::Zero).unwrap();
        let mut err = 0.0f64;
        for n in 0..g.nt() {
            for s in 0..g.spatial_len() {
                if g.in_cone(n, s, 0.0) && g.is_spatial_interior(s) {
                    err = err.max((r.value(n, s) - h.value(n, s)).abs());
                }
            }
        }
        hs.push(dx * 2f64.sqrt());
        errs.push(err);
    }
    let order = (errs[0] / errs[2]).ln() / (hs[0] / hs[2]).ln();
    assert!(order >= 1.8, "order {order}, errors {errs:?}");
}

#[test]
fn support_stays_in_the_light_cone() {
    let g = SpaceTimeGrid::new(1, 2.0, 1.0, 0.05, 0.05).unwrap();
    let u0 = InitialDatum::gaussian(1.0, 1.0, 6.0);
    let u = solve_linear(1, &u0, &InitialDatum::Zero, None, &g, &quad()).unwrap();
    // (t, x) = (0.5, 2.0) lies outside |x| <= t + r
    let n = 10;
    let s = g.ravel(&[g.half() + 40]);
    assert_eq!(g.point(s)[0], 2.0);
    assert_eq!(u.value(n, s), 0.0);
    assert!(check_support(&u, 1.0, 1e-10).ok);

    assert_eq!(check_support(&Field::zeros(g), 1.0, 1e-10).max_outside, 0.0);
    let one = Field::from_fn(g, |_, _| 1.0);
    let r = check_support(&one, 1.0, 0.5);
    assert!(!r.ok);
    assert_eq!(r.max_outside, 1.0);
}

#[test]
fn operator_norm_probe_examples() {
    let g = SpaceTimeGrid::new(1, 0.5, 1.0, 0.05, 0.05).unwrap();
    let none = operator_norm_probe(&InitialDatum::Zero, &InitialDatum::Zero, None, &g, &quad(), 0).unwrap();
    assert_eq!(none.ratio, None);

    let g3 = SpaceTimeGrid::new(3, 1.0, 1.0, 0.1, 0.1).unwrap();
    let u1 = InitialDatum::plateau(1.0, 0.5, 1.0);
    let r = operator_norm_probe(&InitialDatum::Zero, &u1, None, &g3, &quad(), 0).unwrap();
    assert!(r.ratio.unwrap() <= 1.05, "{r:?}");

    let u0 = InitialDatum::gaussian(1.0, 0.8, 6.0);
    let r = operator_norm_probe(&u0, &InitialDatum::Zero, None, &g, &quad(), 0).unwrap();
    assert!(r.ratio.unwrap() <= 1.05, "{r:?}");

    assert!(operator_norm_probe(&u0, &InitialDatum::Zero, None, &g, &quad(), 2).is_err());
}
