//! Library results checked against independent reference computations.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use gkp_squeezing::analytic::{approximate_state_fock, breeding_step_xi, ApproxGKPParams};
use gkp_squeezing::fock::{generalized_displacement, wigner, BuildConfig, FockState, PhaseSpacePoint};
use gkp_squeezing::operators::{build_operator, expectation, ground_state, preset_grid, sin2_expectation, Topology};
use gkp_squeezing::Complex64;

#[test]
fn displacement_matches_laguerre_closed_form() {
    let cfg = BuildConfig::default();
    let sqpi = PI.sqrt();
    for &(cx, cp, d) in &[(2.0 * sqpi, 0.0, 0.0), (0.0, 2.0 * sqpi, 0.3), (0.7, -1.1, -1.0), (2.5, 2.5, 0.0)] {
        let lib = generalized_displacement(cx, cp, d, 11, &cfg).unwrap();
        let reference = common::displacement_matrix(cx, cp, d, 11);
        for m in 0..=10 {
            for n in 0..=10 {
                let diff = (lib[(m, n)] - reference[(m, n)]).norm();
                assert!(diff < 1e-8, "({cx}, {cp}) entry ({m}, {n}) off by {diff}");
            }
        }
    }
}

#[test]
fn displacement_far_entries_match_closed_form() {
    // the breeding oracle uses entries up to n = 58 at |α|² = π
    let lib = generalized_displacement(PI.sqrt(), 0.0, 0.0, 59, &BuildConfig::default()).unwrap();
    let reference = common::displacement_matrix(PI.sqrt(), 0.0, 0.0, 59);
    let worst = (0..59)
        .flat_map(|m| (0..59).map(move |n| (m, n)))
        .map(|(m, n)| (lib[(m, n)] - reference[(m, n)]).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-8, "worst entry error {worst}");
}

#[test]
fn wigner_matches_integral_form() {
    let cfg = BuildConfig::default();
    let op = build_operator(&preset_grid(Topology::S0).unwrap(), 12, &cfg).unwrap();
    let gs = ground_state(&op).unwrap();
    let mut states = vec![gs.state, FockState::number(3, 5).unwrap()];
    let c = Complex64::new(0.6, 0.0);
    states.push(
        FockState::normalized(nalgebra::DVector::from_vec(vec![c, Complex64::new(0.0, 0.5), Complex64::new(0.62, -0.1)]))
            .unwrap(),
    );
    let points: Vec<PhaseSpacePoint> =
        [(0.0, 0.0), (0.4, -0.9), (-1.3, 0.2), (1.25, 1.25), (2.2, -0.3)].iter().map(|&(x, p)| PhaseSpacePoint::new(x, p)).collect();
    for s in &states {
        let lib = wigner(s, &points);
        for (pt, w) in points.iter().zip(lib) {
            let reference = common::wigner_integral(s, pt.x, pt.p);
            assert!((w - reference).abs() < 1e-7, "W({}, {}) = {w} vs {reference}", pt.x, pt.p);
        }
    }
}

#[test]
fn sin2_expectation_matches_closed_form() {
    let cfg = BuildConfig::default();
    let state = approximate_state_fock(&ApproxGKPParams::symmetric(0.4, None).unwrap(), 25).unwrap();
    for &(cx, cp) in &[(FRAC_PI_2.sqrt(), 0.0), (0.0, FRAC_PI_2.sqrt()), (0.4, 0.9)] {
        let lib = sin2_expectation(&state, cx, cp, 0.0, &cfg).unwrap();
        let reference = common::sin2_reference(&state, cx, cp);
        assert!((lib - reference).abs() < 1e-9);
    }
}

#[test]
fn ground_state_energy_equals_expectation() {
    let cfg = BuildConfig::default();
    for t in Topology::PRESETS {
        let op = build_operator(&preset_grid(t).unwrap(), 15, &cfg).unwrap();
        let gs = ground_state(&op).unwrap();
        let e = expectation(&op, &gs.state).unwrap();
        assert!((e - gs.xi_min).abs() < 1e-10, "{t}: {e} vs {}", gs.xi_min);
    }
}

#[test]
fn beam_splitter_maps_single_photon() {
    let u = common::beam_splitter_block(1);
    // |1,0⟩ is index 1 in the |k, 1 − k⟩ basis, |0,1⟩ is index 0
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((u[(1, 1)] - Complex64::new(r, 0.0)).norm() < 1e-12);
    assert!((u[(0, 1)] - Complex64::new(-r, 0.0)).norm() < 1e-12);
}

#[test]
fn beam_splitter_is_unitary_per_block() {
    for m in [2, 7, 20] {
        let u = common::beam_splitter_block(m);
        let id = &u * u.adjoint();
        for i in 0..=m {
            for j in 0..=m {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn breeding_formula_matches_two_mode_simulation() {
    let a = FRAC_PI_2.sqrt();
    for g in [0.15, 0.4] {
        let state = approximate_state_fock(&ApproxGKPParams::logical(g, None, 0).unwrap(), 30).unwrap();
        let phi: Vec<Complex64> = state.amplitudes().iter().copied().collect();
        let s = common::sin2_reference(&state, a / 2f64.sqrt(), 0.0);
        let t = common::sin2_reference(&state, 0.0, a * 2f64.sqrt());
        let formula = breeding_step_xi(s, t).unwrap();
        let simulated = common::breeding_oracle(&phi, a, a);
        assert!((formula - simulated).abs() < 1e-4, "g = {g}: formula {formula}, simulated {simulated}");
    }
}
