//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured margin (visible under `--nocapture`).

use std::collections::BTreeMap;

use ctcsim_core::ctc::{
    apply_pctc, apply_pctc_density, extend_to_entangled, solve_deutsch_iterative, CtcError,
    CtcMethod, CtcWiring, DeutschOptions, DEFAULT_PARADOX_EPS,
};
use ctcsim_core::quantum::{
    bell_state, fidelity, gates, purity, random_density_operator, random_pure_state, trace_distance,
    BellKind, Rail,
};
use ctcsim_core::relativity::{
    hawking_temperature, unruh_acceleration, vacuum_mode_state, wormhole_transit,
    WormholeGeometry, CODATA_2018,
};
use ctcsim_core::scenarios::{run_scenario, OutputValue, ParamValue, ScenarioConfig};
use ctcsim_core::teleport::{
    bell_probabilities, evolve, loop_consistency_weight, retrodict_source, TeleportTimeline,
    TimedQubit,
};
use ctcsim_core::{Complex64, ComplexMatrix, DensityOperator, PureState, SubsystemShape};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cnot_wiring() -> CtcWiring {
    CtcWiring::new(gates::cnot(Rail::One)).unwrap()
}

fn diag_qubit(p0: f64, p1: f64) -> DensityOperator {
    DensityOperator::new(
        ComplexMatrix::from_real_rows(&[&[p0, 0.0], &[0.0, p1]]),
        SubsystemShape::qubits(1),
    )
    .unwrap()
}

#[test]
fn criterion_01_deutsch_cnot_worked_solution() {
    // Tight solver settings: the 1e-9 bound is on distance to the analytic
    // fixed point, so the stopping tolerance sits well below it.
    let opts = DeutschOptions {
        tol: 1e-12,
        max_iter: 100_000,
        ..DeutschOptions::default()
    };
    let w = cnot_wiring();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst_fp: f64 = 0.0;
    let mut worst_out: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    for _ in 0..50 {
        let psi = random_pure_state(SubsystemShape::qubits(1), &mut rng);
        let a2 = psi.amplitudes()[0].norm_sqr();
        let b2 = psi.amplitudes()[1].norm_sqr();
        let solution = solve_deutsch_iterative(&psi.projector(), &w, &opts).unwrap();
        let fp_gap = trace_distance(&solution.fixed_point, &diag_qubit(a2, b2)).unwrap();
        let out_gap = trace_distance(
            &solution.output,
            &diag_qubit(a2 * a2 + b2 * b2, 2.0 * a2 * b2),
        )
        .unwrap();
        worst_fp = worst_fp.max(fp_gap);
        worst_out = worst_out.max(out_gap);
        worst_residual = worst_residual.max(solution.residual);
    }
    assert!(worst_fp <= 1e-9, "fixed-point gap {worst_fp:.3e}");
    assert!(worst_out <= 1e-9, "output gap {worst_out:.3e}");
    assert!(worst_residual <= 1e-9, "residual {worst_residual:.3e}");
    println!(
        "criterion 01 deutsch-cnot: PASS (fp {worst_fp:.2e}, out {worst_out:.2e}, residual {worst_residual:.2e})"
    );
}

#[test]
fn criterion_02_pctc_cnot_ground_state_and_paradox() {
    let w = cnot_wiring();
    let zero = PureState::basis(SubsystemShape::qubits(1), 0);
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut accepted = 0;
    let mut worst: f64 = 1.0;
    while accepted < 50 {
        let psi = random_pure_state(SubsystemShape::qubits(1), &mut rng);
        let sum = psi.amplitudes()[0] + psi.amplitudes()[1];
        if sum.norm() <= 0.1 {
            continue;
        }
        accepted += 1;
        let (out, _) = apply_pctc(&psi, &w, DEFAULT_PARADOX_EPS).unwrap();
        worst = worst.min(out.fidelity_with(&zero));
    }
    assert!(worst >= 1.0 - 1e-10, "ground-state fidelity {worst}");

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let anti = PureState::qubit(c(h, 0.0), c(-h, 0.0)).unwrap();
    match apply_pctc(&anti, &w, DEFAULT_PARADOX_EPS) {
        Err(CtcError::Paradox { .. }) => {}
        other => panic!("expected paradox for alpha = -beta, got {other:?}"),
    }
    println!("criterion 02 pctc-cnot: PASS (min fidelity {worst:.12}, paradox raised)");
}

#[test]
fn criterion_03_swap_limit_both_methods() {
    let opts = DeutschOptions::default();
    let w = CtcWiring::new(gates::swap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rho_in = random_density_operator(SubsystemShape::qubits(1), &mut rng);
        let deutsch = solve_deutsch_iterative(&rho_in, &w, &opts).unwrap();
        worst = worst.max(trace_distance(&deutsch.output, &rho_in).unwrap());
        let (pctc_out, _) = apply_pctc_density(&rho_in, &w, DEFAULT_PARADOX_EPS).unwrap();
        worst = worst.max(trace_distance(&pctc_out, &rho_in).unwrap());
    }
    assert!(worst <= 1e-10, "worst deviation {worst:.3e}");
    println!("criterion 03 swap-limit: PASS (worst deviation {worst:.2e})");
}

#[test]
fn criterion_04_entangled_ctc_contrast() {
    let opts = DeutschOptions::default();
    let w = cnot_wiring();
    let joint = bell_state(BellKind::PhiPlus).projector();

    let pctc =
        extend_to_entangled(&joint, 1, &w, CtcMethod::Pctc, &opts, DEFAULT_PARADOX_EPS).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = PureState::qubit(c(h, 0.0), c(h, 0.0)).unwrap();
    let zero = PureState::basis(SubsystemShape::qubits(1), 0);
    let expected = plus.tensor(&zero).projector();
    let pctc_fidelity = fidelity(&pctc.joint_output, &expected).unwrap();
    assert!(pctc_fidelity >= 1.0 - 1e-10, "fidelity {pctc_fidelity}");
    let purity_pctc = purity(&pctc.joint_output.reduced(1).unwrap());
    assert!((purity_pctc - 1.0).abs() <= 1e-10, "purity {purity_pctc}");

    let deutsch =
        extend_to_entangled(&joint, 1, &w, CtcMethod::Deutsch, &opts, DEFAULT_PARADOX_EPS).unwrap();
    let mixed4 = DensityOperator::maximally_mixed(SubsystemShape::qubits(2));
    let deutsch_gap = trace_distance(&deutsch.joint_output, &mixed4).unwrap();
    assert!(deutsch_gap <= 1e-10, "joint gap {deutsch_gap:.3e}");
    let purity_deutsch = purity(&deutsch.joint_output.reduced(1).unwrap());
    assert!(
        (purity_deutsch - 0.5).abs() <= 1e-10,
        "purity {purity_deutsch}"
    );
    println!(
        "criterion 04 entangled-ctc: PASS (pctc fidelity {pctc_fidelity:.12}, joint gap {deutsch_gap:.2e}, purities {purity_pctc:.12}/{purity_deutsch:.12})"
    );
}

#[test]
fn criterion_05_equivalence_sweep() {
    let mut params = BTreeMap::new();
    params.insert("count".to_string(), ParamValue::Real(500.0));
    let config = ScenarioConfig::default();
    let result = run_scenario("equivalence_sweep", &params, &config).unwrap();

    let get_int = |k: &str| match &result.outputs[k] {
        OutputValue::Int(v) => *v,
        other => panic!("{k}: unexpected {other:?}"),
    };
    let get_real = |k: &str| match &result.outputs[k] {
        OutputValue::Real(v) => *v,
        other => panic!("{k}: unexpected {other:?}"),
    };
    let total = get_int("total");
    let converged = get_int("converged");
    let residual_ok = get_int("residual_ok");
    let unique = get_int("unique_cases");
    let agreements = get_int("agreements");
    let rate = get_real("agreement_rate");

    assert_eq!(total, 500);
    // Every iterative solution satisfies the consistency condition at 1e-8.
    assert_eq!(converged, 500, "non-converged cases present");
    assert_eq!(residual_ok, 500, "residuals above 1e-8 present");
    assert!(unique > 0);
    assert!(rate >= 0.99, "agreement rate {rate}");
    // Any disagreeing remainder must carry diagnostics.
    let OutputValue::Table(slow) = &result.outputs["slow_cases"] else {
        panic!("slow_cases missing");
    };
    assert_eq!(slow.rows.len() as u64, unique - agreements + (500 - converged));
    println!(
        "criterion 05 equivalence-sweep: PASS ({unique} unique, rate {rate}, {} diagnostics)",
        slow.rows.len()
    );
}

#[test]
fn criterion_06_teleportation() {
    // Uniform Bell statistics on a maximally entangled resource.
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let resource = bell_state(BellKind::PhiPlus);
    let mut worst_prob_dev: f64 = 0.0;
    for _ in 0..20 {
        let prepared = random_pure_state(SubsystemShape::qubits(1), &mut rng);
        for p in bell_probabilities(&prepared, &resource).unwrap() {
            worst_prob_dev = worst_prob_dev.max((p - 0.25).abs());
        }
    }
    assert!(worst_prob_dev <= 1e-12, "probability deviation {worst_prob_dev:.3e}");

    // Retrodiction round trip over 100 random timed qubits.
    let mut worst_fidelity: f64 = 1.0;
    for _ in 0..100 {
        let state = random_pure_state(SubsystemShape::qubits(1), &mut rng);
        let omega = rng.random::<f64>() * 10.0;
        let t_s = rng.random::<f64>();
        let t_p = t_s + 0.1 + rng.random::<f64>();
        let t_m = t_p + 0.1 + rng.random::<f64>();
        let timeline = TeleportTimeline::new(t_s, t_p, t_m).unwrap();
        let prepared = TimedQubit::new(state.clone(), omega, t_p).unwrap();
        let retro = retrodict_source(&prepared, &timeline).unwrap();
        let retro_q = TimedQubit::new(retro, omega, t_s).unwrap();
        let forward = evolve(&retro_q, t_p - t_s);
        worst_fidelity = worst_fidelity.min(forward.fidelity_with(&state));
    }
    assert!(worst_fidelity >= 1.0 - 1e-12, "round trip {worst_fidelity}");

    // Loop weights, exact.
    assert_eq!(loop_consistency_weight(&gates::pauli_x()).unwrap(), 0.0);
    assert_eq!(loop_consistency_weight(&gates::identity()).unwrap(), 1.0);
    println!(
        "criterion 06 teleportation: PASS (prob dev {worst_prob_dev:.2e}, round trip {worst_fidelity:.14})"
    );
}

#[test]
fn criterion_07_unruh_benchmark() {
    let a = unruh_acceleration(1.0).unwrap();
    let rel = (a / 2.466e20 - 1.0).abs();
    assert!(rel <= 1e-3, "relative deviation {rel:.3e}");
    println!("criterion 07 unruh: PASS (a(1 K) = {a:.4e} m/s^2, deviation {rel:.2e})");
}

#[test]
fn criterion_08_hawking_benchmark() {
    // Independent oracle: direct constant arithmetic.
    let oracle = 1.054_571_817e-34 * 299_792_458.0f64.powi(3)
        / (8.0 * std::f64::consts::PI * 6.674_30e-11 * 1.989e30 * 1.380_649e-23);
    let t = hawking_temperature(1.989e30).unwrap();
    assert!((t / oracle - 1.0).abs() < 1e-14);
    let rel = (t / 6.17e-8 - 1.0).abs();
    assert!(rel <= 1e-2, "relative deviation {rel:.3e}");
    println!("criterion 08 hawking: PASS (T(M_sun) = {t:.4e} K, deviation {rel:.2e})");
}

#[test]
fn criterion_09_vacuum_thermality() {
    let mut worst_fidelity: f64 = 1.0;
    let mut worst_occupation: f64 = 0.0;
    for omega_over_a in [0.1, 0.25, 0.5, 1.0] {
        let state = vacuum_mode_state(omega_over_a, 60).unwrap();
        worst_fidelity = worst_fidelity.min(state.thermal_fidelity());
        let closed = 1.0 / ((2.0 * std::f64::consts::PI * omega_over_a).exp() - 1.0);
        worst_occupation =
            worst_occupation.max((state.mean_occupation() / closed - 1.0).abs());
    }
    assert!(worst_fidelity >= 1.0 - 1e-8, "fidelity {worst_fidelity}");
    assert!(worst_occupation <= 1e-10, "occupation error {worst_occupation:.3e}");
    println!(
        "criterion 09 vacuum-thermality: PASS (min fidelity {worst_fidelity:.12}, occupation dev {worst_occupation:.2e})"
    );
}

#[test]
fn criterion_10_wormhole_transit() {
    // Equal throat and shell: the lower bound is exactly one second.
    let g = WormholeGeometry::new(1e4, 1e4, 0.01 * CODATA_2018.c).unwrap();
    let transit = wormhole_transit(&g);
    assert_eq!(transit.lower_bound_seconds, 1.0);
    let expected_tau = std::f64::consts::PI * 1e4 / (0.01 * CODATA_2018.c);
    let rel = (transit.tau_seconds / expected_tau - 1.0).abs();
    assert!(rel <= 1e-12, "tau deviation {rel:.3e}");

    // Exact flip at (v/c)^2 = a0*b0/(1e8)^2: chosen so the bound is exact.
    let (a0, b0) = (5e7, 5e7);
    let v_bound = CODATA_2018.c / 2.0;
    assert!(wormhole_transit(&WormholeGeometry::new(b0, a0, v_bound).unwrap()).tidal_ok);
    assert!(
        !wormhole_transit(
            &WormholeGeometry::new(b0, a0, v_bound * (1.0 + 1e-12)).unwrap()
        )
        .tidal_ok
    );
    assert!(
        wormhole_transit(
            &WormholeGeometry::new(b0, a0, v_bound * (1.0 - 1e-12)).unwrap()
        )
        .tidal_ok
    );
    println!(
        "criterion 10 wormhole: PASS (bound 1 s exact, tau rel {rel:.2e}, tidal flip exact)"
    );
}

#[test]
fn criterion_11_nonlinearity_witness() {
    let opts = DeutschOptions::default();
    let w = cnot_wiring();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let sigma1 = PureState::basis(SubsystemShape::qubits(1), 0).projector();
    let sigma2 = PureState::qubit(c(h, 0.0), c(h, 0.0)).unwrap().projector();
    let mix = DensityOperator::new(
        sigma1.matrix().add(sigma2.matrix()).scale_re(0.5),
        SubsystemShape::qubits(1),
    )
    .unwrap();
    let out_mix = solve_deutsch_iterative(&mix, &w, &opts).unwrap().output;
    let out1 = solve_deutsch_iterative(&sigma1, &w, &opts).unwrap().output;
    let out2 = solve_deutsch_iterative(&sigma2, &w, &opts).unwrap().output;
    let mixture_of_outputs = DensityOperator::new(
        out1.matrix().add(out2.matrix()).scale_re(0.5),
        SubsystemShape::qubits(1),
    )
    .unwrap();
    let gap = trace_distance(&out_mix, &mixture_of_outputs).unwrap();
    assert!(gap > 0.1, "nonlinearity gap {gap}");
    println!("criterion 11 nonlinearity: PASS (gap {gap})");
}
