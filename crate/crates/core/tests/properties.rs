use colwave::nets::{EpsilonLadder, GeneralizedNumber, InitialDatum, Nonlinearity};
use colwave::seminorms::{
    fit_valuation, ultra_metric, ultra_pseudo_seminorm, valuation, Net, SpaceTimeGrid, N_MAX,
};
use proptest::prelude::*;

fn ladder() -> EpsilonLadder {
    EpsilonLadder::new(0.5, 0.5, 8).unwrap()
}

fn grid() -> SpaceTimeGrid {
    SpaceTimeGrid::new(1, 0.5, 3.0, 0.1, 0.1).unwrap()
}

/// `c eps^a` times a bump translated to `center`.
fn monomial(c: f64, a: f64, center: f64) -> Net {
    let bump = InitialDatum::gaussian(0.8, 1.0, 6.0);
    Net::from_fn(&ladder(), grid(), move |e, _, x| c * e.powf(a) * bump.value(&[x[0] - center]))
}

fn exponent() -> impl Strategy<Value = f64> {
    (-1i32..4).prop_map(|k| 2.0 * k as f64)
}

fn coefficient() -> impl Strategy<Value = f64> {
    (0.5f64..2.0, any::<bool>()).prop_map(|(c, s)| if s { c } else { -c })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn metric_is_symmetric(a in exponent(), b in exponent(), c in coefficient(), k in 0.5f64..3.0) {
        let u = Net::from_fn(&ladder(), grid(), |e, t, x| e.powf(a) * (k * x[0] + t).sin());
        let v = u.add(&monomial(c, b, 2.0)).unwrap();
        prop_assert_eq!(
            ultra_metric(&u, &v, N_MAX + 1).unwrap(),
            ultra_metric(&v, &u, N_MAX + 1).unwrap()
        );
        prop_assert_eq!(ultra_metric(&u, &u, N_MAX + 1).unwrap(), 0.0);
    }

    #[test]
    fn seminorm_strong_triangle_on_separated_monomials(
        a in exponent(), b in exponent(), ca in coefficient(), cb in coefficient(), n in 0usize..=N_MAX
    ) {
        let x = monomial(ca, a, -2.0);
        let y = monomial(cb, b, 2.0);
        let zero = Net::from_fn(&ladder(), grid(), |_, _, _| 0.0);
        let px = ultra_pseudo_seminorm(&x, &zero, n).unwrap();
        let py = ultra_pseudo_seminorm(&y, &zero, n).unwrap();
        let pxy = ultra_pseudo_seminorm(&x.add(&y).unwrap(), &zero, n).unwrap();
        prop_assert!(pxy <= px.max(py) * (1.0 + 1e-9), "{pxy} > max({px}, {py})");
    }

    #[test]
    fn valuations_do_not_increase_with_order(a in -2.0f64..6.0, k in 0.5f64..3.0, m in 1usize..=N_MAX) {
        let net = Net::from_fn(&ladder(), grid(), |e, t, x| e.powf(a) * (1.0 + 0.5 * (k * x[0] + t).sin()));
        let hi = valuation(&net, m).unwrap().slope;
        let lo = valuation(&net, m - 1).unwrap().slope;
        prop_assert!(hi <= lo + 0.1);
    }

    #[test]
    fn order_zero_valuation_is_superadditive_on_products(a in -2.0f64..4.0, b in -2.0f64..4.0, c in 0.1f64..5.0) {
        let u = Net::from_fn(&ladder(), grid(), |e, _, _| c * e.powf(a));
        let v = Net::from_fn(&ladder(), grid(), |e, _, _| e.powf(b));
        let nu = |w: &Net| valuation(w, 0).unwrap().slope;
        prop_assert!(nu(&u.mul(&v).unwrap()) >= nu(&u) + nu(&v) - 0.1);
    }

    #[test]
    fn regression_recovers_planted_power(a in -5.0f64..10.0, c in 1e-3f64..1e3) {
        let eps = ladder();
        let m: Vec<f64> = eps.iter().map(|e| c * e.powf(a)).collect();
        let fit = fit_valuation(eps.values(), &m).unwrap();
        prop_assert!((fit.slope - a).abs() <= 1e-10);
        prop_assert!((fit.intercept - c.ln()).abs() <= 1e-9);
    }

    #[test]
    fn power_numbers_multiply_exponents(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let l = ladder();
        let prod = &GeneralizedNumber::power(&l, a) * &GeneralizedNumber::power(&l, b);
        let direct = GeneralizedNumber::power(&l, a + b);
        for (p, q) in prod.values().iter().zip(direct.values()) {
            prop_assert!((p - q).abs() <= 1e-12 * q.abs());
        }
    }

    #[test]
    fn data_vanish_outside_their_support(
        r in 0.3f64..2.0, frac in 0.1f64..0.9, amp in -3.0f64..3.0, c in 0.5f64..10.0,
        dir in prop::array::uniform3(-1.0f64..1.0), stretch in 1.0f64..3.0
    ) {
        let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        prop_assume!(norm > 0.1 && dir[0].abs() > 0.1);
        let x: Vec<f64> = dir.iter().map(|d| d / norm * r * stretch).collect();
        let x1 = [r * stretch * dir[0].signum()];
        for u in [InitialDatum::gaussian(r, amp, c), InitialDatum::plateau(r, frac * r, amp)] {
            prop_assert_eq!(u.value(&x), 0.0);
            prop_assert_eq!(u.value(&x1), 0.0);
        }
    }

    #[test]
    fn plateau_is_flat_on_the_inner_ball(
        r in 0.3f64..2.0, frac in 0.1f64..0.9, amp in -3.0f64..3.0, s in 0.0f64..1.0,
        dir in prop::array::uniform3(-1.0f64..1.0)
    ) {
        let inner = frac * r;
        let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt().max(1e-3);
        let x: Vec<f64> = dir.iter().map(|d| d / norm * inner * s).collect();
        let u = InitialDatum::plateau(r, inner, amp);
        prop_assert_eq!(u.value(&x), amp);
        prop_assert_eq!(u.derivative(&x, &[1, 0, 0]).unwrap(), 0.0);
    }

    #[test]
    fn nonlinearities_vanish_at_zero(c in prop::collection::vec(-5.0f64..5.0, 0..5)) {
        for f in [Nonlinearity::polynomial(&c), Nonlinearity::Sine, Nonlinearity::ExpMinusOne, Nonlinearity::Zero] {
            prop_assert_eq!(f.eval(0.0), 0.0);
        }
    }

    #[test]
    fn ladders_are_geometric(eps0 in 0.01f64..=1.0, ratio in 0.05f64..0.95, count in 3usize..12) {
        let l = EpsilonLadder::new(eps0, ratio, count).unwrap();
        prop_assert_eq!(l.len(), count);
        for (j, e) in l.iter().enumerate() {
            prop_assert!((e - eps0 * ratio.powi(j as i32)).abs() <= 1e-15 * eps0);
        }
        prop_assert!(l.values().windows(2).all(|w| w[1] < w[0]));
    }
}

#[test]
fn ladder_examples() {
    let l = EpsilonLadder::new(0.5, 0.5, 3).unwrap();
    assert_eq!(l.values(), &[0.5, 0.25, 0.125]);
    assert!(EpsilonLadder::new(0.5, 1.5, 8).is_err());
    assert!(EpsilonLadder::new(0.0, 0.5, 8).is_err());
    assert!(EpsilonLadder::new(0.5, 0.5, 2).is_err());
}

#[test]
fn constant_term_in_f_is_rejected() {
    assert!(Nonlinearity::from_power_series(&[1.0, 0.0, 1.0]).is_err());
    assert!(Nonlinearity::from_power_series(&[0.0, 0.0, 1.0]).is_ok());
}
