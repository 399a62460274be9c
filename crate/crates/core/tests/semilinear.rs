use colwave::linwave::{check_support, LinearSolver, QuadratureSpec};
use colwave::nets::{EpsilonLadder, InitialDatum, Nonlinearity, Problem};
use colwave::semilinear::{picard_solve, residual, solve_net, FixedPointMap};
use colwave::seminorms::{classify, valuation, Field, Net, NetClass, SpaceTimeGrid};
use colwave::suite::presets;
use colwave::verify::{check_wave_oracle, m1_threshold};
use colwave::Error;

fn quad() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn zero_nonlinearity_returns_the_linear_solution() {
    let p = presets::bump_1d(1.0).linearized();
    let g = presets::grid_1d(0.05);
    let (u, rep) = picard_solve(&p, 0.3, &g, &quad(), 1e-10, 50).unwrap();
    let lin = LinearSolver::new(g, quad()).unwrap().homogeneous(&p.u0, &p.u1).unwrap();
    assert_eq!(rep.iterations, 1);
    assert_eq!(rep.final_increment, 0.0);
    assert!(rep.converged);
    assert_eq!(u.samples(), lin.samples());

    let ladder = presets::ladder();
    let sol = solve_net(&p, &ladder, &g, &quad(), 1e-10, 50).unwrap();
    assert!(sol.all_converged());
    for f in sol.net.fields() {
        assert_eq!(f.samples(), lin.samples());
    }
}

#[test]
fn plateau_oracle_on_the_inner_cone() {
    for dim in [1, 3] {
        let p = presets::oracle(dim);
        let g = presets::oracle_grid(dim);
        for eps in [0.1, 0.05, 0.025] {
            let r = check_wave_oracle(&p, eps, &g, &quad(), &Default::default()).unwrap();
            assert!(r.max_error <= 1e-4, "d = {dim}, eps = {eps}: {r:?}");
            assert!(r.nodes_compared > 0);
        }
    }
}

#[test]
fn increment_ratios_scale_with_eps_for_sine() {
    let p = presets::bump_1d(1.0).with_nonlinearity(Nonlinearity::Sine);
    let g = presets::grid_1d(0.02);
    let ladder = EpsilonLadder::new(0.08, 0.5, 5).unwrap();
    let sol = solve_net(&p, &ladder, &g, &quad(), 1e-12, 50).unwrap();
    let c: Vec<f64> = sol
        .reports
        .iter()
        .map(|r| r.increment_ratios()[0] / r.eps)
        .collect();
    let (lo, hi) = c.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(hi / lo < 1.1, "C per eps: {c:?}");
    let r = &sol.reports[2];
    for w in r.increment_ratios().windows(1) {
        assert!(w[0] <= hi * r.eps);
    }
}

#[test]
fn iteration_counts_do_not_grow_along_the_ladder() {
    let g = presets::grid_1d(0.02);
    let sol = solve_net(&presets::bump_1d(1.0), &presets::ladder(), &g, &quad(), 1e-10, 50).unwrap();
    let its: Vec<usize> = sol.reports.iter().map(|r| r.iterations).collect();
    assert!(its.windows(2).all(|w| w[1] <= w[0]), "{its:?}");
}

#[test]
fn large_eps_entry_is_flagged_and_the_rest_converge() {
    let p = Problem {
        u0: InitialDatum::gaussian(1.0, 2.0, 6.0),
        nonlinearity: Nonlinearity::cubic(20.0),
        ..presets::bump_1d(1.0)
    };
    let g = presets::grid_1d(0.05);
    let ladder = EpsilonLadder::new(1.0, 0.1, 4).unwrap();
    let sol = solve_net(&p, &ladder, &g, &quad(), 1e-10, 50).unwrap();
    assert!(sol.failures[0].is_some() || !sol.reports[0].converged);
    for (r, f) in sol.reports.iter().zip(&sol.failures).skip(1) {
        assert!(r.converged && f.is_none(), "{r:?}");
    }
    assert!(!sol.all_converged());
    assert!(sol.into_converged().is_err());
}

#[test]
fn overflow_in_f_is_a_divergence_naming_the_iterate() {
    let p = Problem {
        u0: InitialDatum::gaussian(1.0, 800.0, 6.0),
        nonlinearity: Nonlinearity::ExpMinusOne,
        ..presets::bump_1d(1.0)
    };
    let g = presets::grid_1d(0.05);
    let map = FixedPointMap::new(&p, &g, &quad()).unwrap();
    match map.solve(0.5, 1e-10, 50, None) {
        Err(Error::Divergence { iterate, eps }) => {
            assert_eq!(eps, 0.5);
            assert!(iterate >= 1);
        }
        other => panic!("expected divergence, got {other:?}"),
    }
}

#[test]
fn iteration_cap_reports_non_convergence() {
    let g = presets::grid_1d(0.05);
    let (_, rep) = picard_solve(&presets::bump_1d(1.0), 0.5, &g, &quad(), 1e-14, 2).unwrap();
    assert!(!rep.converged);
    assert_eq!(rep.iterations, 2);
    assert!(rep.require_converged().is_err());
}

#[test]
fn invalid_controls_are_rejected() {
    let g = presets::grid_1d(0.05);
    let p = presets::bump_1d(1.0);
    assert!(picard_solve(&p, 0.0, &g, &quad(), 1e-10, 50).is_err());
    assert!(picard_solve(&p, 1.5, &g, &quad(), 1e-10, 50).is_err());
    assert!(picard_solve(&p, 0.5, &g, &quad(), 0.0, 50).is_err());
    assert!(picard_solve(&p, 0.5, &g, &quad(), 1e-10, 0).is_err());
}

#[test]
fn residual_of_a_quadratic_in_time() {
    let g = SpaceTimeGrid::new(2, 0.5, 0.5, 0.1, 0.05).unwrap();
    let u = Field::from_fn(g, |t, _| t * t);
    let p = Problem {
        dim: 2,
        horizon: 0.5,
        support_radius: 0.5,
        ..presets::bump_1d(1.0).linearized()
    };
    let r = residual(&u, 0.5, &p).unwrap();
    let mut seen = 0;
    for n in 0..g.nt() {
        for s in 0..g.spatial_len() {
            if g.is_spatial_interior(s) && g.in_cone(n, s, 0.0) {
                assert!((r.value(n, s) - 2.0).abs() <= 1e-9);
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn converged_solutions_are_fixed_points_in_the_cone() {
    for (p, g) in [
        (presets::bump_1d(1.0), presets::grid_1d(0.02)),
        (presets::bump_2d(), presets::grid_2d(0.1)),
    ] {
        let map = FixedPointMap::new(&p, &g, &quad()).unwrap();
        for eps in [0.5, 0.05] {
            let (u, rep) = map.solve(eps, 1e-10, 50, None).unwrap();
            assert!(rep.converged);
            let fu = map.apply(eps, &u).unwrap();
            assert!(u.sub(&fu).unwrap().sup_abs_in_cone(g.dx()) <= 1e-10);
            assert!(check_support(&u, p.support_radius, 1e-8).ok);
        }
    }
}

#[test]
fn solution_nets_are_of_bounded_type_and_in_m1() {
    let g = presets::grid_1d(0.02);
    let ladder = presets::ladder();
    for b in [0.5, 1.0, 2.0] {
        let p = presets::bump_1d(b);
        let map = FixedPointMap::new(&p, &g, &quad()).unwrap();
        let (u, _) = map.solve_net(&ladder, 1e-10, 50).unwrap().into_converged().unwrap();
        assert_eq!(classify(&u).unwrap(), NetClass::BoundedType);
        for n in 1..=2 {
            assert!(valuation(&u, n).unwrap().slope >= -0.05);
        }
        let lin = Net::new(
            ladder.clone(),
            ladder.iter().map(|e| map.linear_part(e).unwrap()).collect(),
        )
        .unwrap();
        assert_eq!(m1_threshold(&u, &lin).unwrap(), Some(ladder.eps0()));
    }
}
