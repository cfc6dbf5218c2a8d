mod common;

use proptest::prelude::*;
use qubitfit_core::analytic::amplitude_quadratics;
use qubitfit_core::verify::draw;
use qubitfit_core::*;

fn arb_params() -> impl Strategy<Value = CircuitParams> {
    let theta = -std::f64::consts::PI..std::f64::consts::PI;
    let g = -2.0..2.0f64;
    (theta.clone(), theta, [g.clone(), g.clone(), g.clone(), g])
        .prop_map(|(t1, t2, g)| CircuitParams::new(t1, t2, g).unwrap())
}

#[test]
fn simulator_matches_closed_form_on_seeded_draws() {
    let mut worst: f64 = 0.0;
    for seed in 0..1000 {
        let d = draw(seed);
        worst = worst.max((fhat(&d.params, d.x) - closed_form_expectation(&d.params, d.x)).abs());
    }
    assert!(worst <= 1e-12, "worst {worst:e}");
}

#[test]
fn cubic_coefficients_match_finite_differences() {
    for seed in 0..100 {
        let p = draw(seed).params;
        let a = cubic_coefficients(&p);
        for k in 0..4 {
            let fd = common::taylor_coefficient(|x| closed_form_expectation(&p, x), k, 1e-3);
            let err = (a.a[k] - fd).abs() / a.a[k].abs().max(1.0);
            assert!(
                err <= 1e-6,
                "seed {seed} a{k}: {} vs {fd} ({err:e})",
                a.a[k]
            );
        }
    }
}

#[test]
fn remainder_scales_as_fourth_power() {
    // x ∈ {1e-2, 5e-3}: r(x) / r(x/2) ≈ 16
    for seed in 0..100 {
        let p = draw(seed).params;
        let ratio = cubic_remainder_check(&p, 1e-2) / cubic_remainder_check(&p, 5e-3);
        assert!((4.0..=64.0).contains(&ratio), "seed {seed}: ratio {ratio}");
    }
}

#[test]
fn amplitude_truncation_is_second_order() {
    let eval = |q: &[f64; 3], x: f64| q[0] + q[1] * x + q[2] * x * x;
    for seed in 0..100 {
        let p = draw(seed).params;
        let quads = amplitude_quadratics(&p);
        for (b, q) in quads.iter().enumerate() {
            let r = |x: f64| (prepare_state(&p, x).amplitudes()[b].re - eval(q, x)).abs();
            let ratio = r(2e-2) / r(1e-2);
            assert!(
                (2.0..=32.0).contains(&ratio),
                "seed {seed} b{b}: ratio {ratio}"
            );
        }
    }
}

#[test]
fn probability_route_equals_matrix_sandwich() {
    for seed in 0..200 {
        let d = draw(seed);
        let psi = prepare_state(&d.params, d.x);
        let sandwich: f64 = (0..4)
            .map(|i| (psi.amplitudes()[i].conj() * d.params.g.0[i] * psi.amplitudes()[i]).re)
            .sum();
        assert!((sandwich - expectation(&psi, &d.params.g)).abs() < 1e-14);
    }
}

proptest! {
    #[test]
    fn state_is_normalized_and_real(p in arb_params(), x in -10.0..10.0f64) {
        let psi = prepare_state(&p, x);
        prop_assert!((psi.norm_sqr() - 1.0).abs() <= 1e-12);
        for a in psi.amplitudes() {
            prop_assert!(a.im.abs() <= 1e-15);
        }
    }

    #[test]
    fn output_is_bounded_and_periodic(p in arb_params(), x in -10.0..10.0f64) {
        let v = fhat(&p, x);
        prop_assert!(v >= p.g.min() - 1e-12 && v <= p.g.max() + 1e-12);
        prop_assert!((fhat(&p, x + 2.0 * std::f64::consts::PI) - v).abs() <= 1e-12);
    }

    #[test]
    fn trig_form_reconstructs_expectation(p in arb_params(), x in -10.0..10.0f64) {
        let t = trig_form(&p.g);
        prop_assert!((t.eval(p.theta1, p.theta2, x) - closed_form_expectation(&p, x)).abs() <= 1e-12);
    }

    #[test]
    fn cubic_tracks_output_near_zero(p in arb_params(), x in -0.05..0.05f64) {
        let c = cubic_coefficients(&p);
        prop_assert!((c.eval(x) - fhat(&p, x)).abs() <= 2.0 * x.powi(4) + 1e-14);
    }
}
