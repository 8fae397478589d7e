//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines.
//!
//! The tests serialize on a global lock so the stated runtime budgets are
//! measured without contention from sibling tests.

use std::sync::Mutex;
use std::time::Instant;

use isospec::report::ConfigValue;
use isospec::scenario::{run_scenario, scenario_names};

static GATE: Mutex<()> = Mutex::new(());

fn lock() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|poison| poison.into_inner())
}

fn residual(report: &isospec::report::RunReport, key: &str) -> f64 {
    *report
        .residuals
        .get(key)
        .unwrap_or_else(|| panic!("missing residual {key}"))
}

fn criterion(n: usize, ok: bool, detail: &str) {
    println!(
        "[criterion {n:02}] {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_01_shifted_number_operator_closed_forms() {
    let _g = lock();
    let started = Instant::now();
    let squared = run_scenario("ex2", &[]).unwrap();
    let cubed = run_scenario("ex2-cubed", &[]).unwrap();
    let elapsed = started.elapsed();
    let r2 = residual(&squared, "h2_closed_form_rel");
    let r3 = residual(&cubed, "h2_closed_form_rel");
    let ok = r2 < 1e-10 && r3 < 1e-10 && elapsed.as_secs_f64() < 1.0;
    criterion(
        1,
        ok,
        &format!(
            "shift-by-two {r2:.3e}, shift-by-three {r3:.3e} on interior margin 4/6 at D=40 \
             ({:.0} ms < 1 s)",
            elapsed.as_secs_f64() * 1e3
        ),
    );
}

#[test]
fn criterion_02_pair_properties_across_all_scenarios() {
    let _g = lock();
    let started = Instant::now();
    let pair_scenarios = [
        "ex1",
        "ex2",
        "ex2-cubed",
        "ex3-shift",
        "ex4-diag",
        "ex4-phase",
        "ex5-angular",
        "quon-chain",
        "unitary-chain",
    ];
    let mut worst_alpha = 0.0f64;
    let mut worst_beta = 0.0f64;
    let mut worst_gamma = 0.0f64;
    for name in pair_scenarios {
        let report = run_scenario(name, &[]).unwrap();
        worst_alpha = worst_alpha.max(residual(&report, "r_alpha_rel"));
        worst_beta = worst_beta.max(residual(&report, "r_beta_rel"));
        worst_gamma = worst_gamma.max(residual(&report, "gamma_max_rel"));
    }
    let elapsed = started.elapsed();
    let ok = worst_alpha < 1e-10
        && worst_beta < 1e-9
        && worst_gamma < 1e-8
        && elapsed.as_secs_f64() < 5.0;
    criterion(
        2,
        ok,
        &format!(
            "across {} pair scenarios: alpha {worst_alpha:.3e} < 1e-10, beta {worst_beta:.3e} \
             < 1e-9, gamma {worst_gamma:.3e} < 1e-8 ({:.2} s < 5 s)",
            pair_scenarios.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_03_quon_chain_both_signs() {
    let _g = lock();
    let mut detail = String::new();
    let mut ok = true;
    for q in [0.5f64, -0.5] {
        let overrides = vec![("q".to_string(), ConfigValue::Float(q))];
        let report = run_scenario("quon-chain", &overrides).unwrap();
        for key in [
            "h2_closed_rel",
            "h3a_vs_h1_rel",
            "h3b_closed_rel",
            "h4_closed_rel",
        ] {
            ok &= residual(&report, key) < 1e-10;
        }
        ok &= residual(&report, "cyclic_detected") == 0.0;
        ok &= report.statuses["cyclic_at_lowering"] == "0";
        ok &= residual(&report, "number_diag_dev") < 1e-12;
        detail.push_str(&format!(
            "q={q}: closed forms <= {:.3e}, eigenvalues {:.3e}, cyclic at seed; ",
            [
                residual(&report, "h2_closed_rel"),
                residual(&report, "h3a_vs_h1_rel"),
                residual(&report, "h3b_closed_rel"),
                residual(&report, "h4_closed_rel"),
            ]
            .into_iter()
            .fold(0.0f64, f64::max),
            residual(&report, "number_diag_dev"),
        ));
    }
    criterion(3, ok, detail.trim_end_matches("; "));
}

#[test]
fn criterion_04_finite_examples_and_refusal_exit_code() {
    let _g = lock();
    let diag = run_scenario("ex4-diag", &[]).unwrap();
    let phase = run_scenario("ex4-phase", &[]).unwrap();
    let triad = run_scenario("ex5-angular", &[]).unwrap();
    let worst = [
        residual(&diag, "h2_vs_closed_abs"),
        residual(&phase, "h2_vs_closed_abs"),
        residual(&triad, "h2_vs_closed_abs"),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);

    let refused = std::process::Command::new(env!("CARGO_BIN_EXE_isospec"))
        .args([
            "run",
            "ex4-phase",
            "--set",
            "c_re=0.5",
            "--set",
            "beta_re=2",
            "--set",
            "beta_im=0",
        ])
        .output()
        .unwrap();
    let ok = worst < 1e-14 && refused.status.code() == Some(3);
    criterion(
        4,
        ok,
        &format!(
            "closed-form matrices reproduced to {worst:.3e} < 1e-14; invalid branch exits \
             with code {:?}",
            refused.status.code()
        ),
    );
}

#[test]
fn criterion_05_unitary_chain_convergence() {
    let _g = lock();
    let report = run_scenario("unitary-chain", &[]).unwrap();
    let fine = residual(&report, "h2_block_abs");
    let ratio = residual(&report, "h2_block_ratio");
    let flip = residual(&report, "commutator_flip_abs");
    let ok = fine < 1e-6 && ratio >= 10.0 && flip < 1e-8;
    criterion(
        5,
        ok,
        &format!(
            "leading 10x10 closed-form residual {fine:.3e} < 1e-6 at D=120, shrink x{ratio:.1} \
             >= 10 from D=60, commutator flip {flip:.3e} < 1e-8"
        ),
    );
}

#[test]
fn criterion_06_superalgebra_and_refusal() {
    let _g = lock();
    let report = run_scenario("susy-algebra", &[]).unwrap();
    let worst = [
        residual(&report, "comm_hq_abs"),
        residual(&report, "comm_hqdag_abs"),
        residual(&report, "q_squared_abs"),
        residual(&report, "anticommutator_abs"),
    ]
    .into_iter()
    .fold(0.0f64, f64::max);
    let refused = residual(&report, "non_factorized_refused") == 0.0;
    let ok = worst < 1e-12 && refused;
    criterion(
        6,
        ok,
        &format!(
            "all four block-algebra residuals <= {worst:.3e} < 1e-12 at D=30; \
             non-factorized pair refused (not failed): {refused}"
        ),
    );
}

#[test]
fn criterion_07_vector_coherent_state_grid() {
    let _g = lock();
    let started = Instant::now();
    let report = run_scenario("gk-boson", &[]).unwrap();
    let elapsed = started.elapsed();
    let norm = residual(&report, "norm_dev_max");
    let action = residual(&report, "action_diff_max");
    let equal_j = residual(&report, "action_equal_j_dev");
    let temporal = residual(&report, "temporal_max");
    let eigen = residual(&report, "a_gamma_eigen_max");
    let ok = norm < 1e-12
        && action < 1e-10
        && equal_j < 1e-12
        && temporal < 1e-12
        && eigen < 1e-10
        && elapsed.as_secs_f64() < 5.0;
    criterion(
        7,
        ok,
        &format!(
            "grid J in {{0,0.5,1,4}}^2, gamma in {{0,1.3}}, delta in {{0.5,1}}: norm {norm:.3e}, \
             action {action:.3e}, equal-J {equal_j:.3e}, stability {temporal:.3e}, \
             ladder eigen-relation {eigen:.3e} ({:.2} s < 5 s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_08_resolution_of_identity() {
    let _g = lock();
    let report = run_scenario("gk-frame", &[]).unwrap();
    let moments = residual(&report, "moment_rel_max");
    let frame =
        residual(&report, "frame_max_delta_half").max(residual(&report, "frame_max_delta_one"));
    let corner = residual(&report, "cross_corner_dev");
    let off = residual(&report, "off_pattern_max");
    let slope = residual(&report, "oracle_slope");
    let monotone = residual(&report, "oracle_monotone_ok") == 0.0;
    let ok = moments < 1e-8
        && frame < 1e-8
        && corner < 1e-8
        && off < 1e-8
        && monotone
        && (-1.4..=-0.6).contains(&slope);
    criterion(
        8,
        ok,
        &format!(
            "factorial moments {moments:.3e} < 1e-8 (n<=15); frame defect {frame:.3e} < 1e-8 \
             (12x12 per sector, delta 0.5 and 1); delta=0 rank-two corner 1{corner:+.1e}, \
             rest {off:.3e}; finite-resolution leakage decays with slope {slope:.2}"
        ),
    );
}

#[test]
fn criterion_09_x_operator_relations() {
    let _g = lock();
    let triad = run_scenario("ex5-angular", &[]).unwrap();
    let boson = run_scenario("gk-boson", &[]).unwrap();
    let const_resid = residual(&triad, "x_relation_resid");
    let const_case = triad.statuses["x_case"] == "constant-alpha";
    let eps_resid = residual(&boson, "x_eps_relation_resid");
    let eps_case = boson.statuses["x_eps_case"] == "eigenvalue-alpha";
    let generic = boson.statuses["x_generic_case"] == "no-closed-relation";
    let ok = const_resid < 1e-10 && const_case && eps_resid < 1e-10 && eps_case && generic;
    criterion(
        9,
        ok,
        &format!(
            "scaled-unitary relation {const_resid:.3e} < 1e-10; synthetic eigenvalue-amplitude \
             relation {eps_resid:.3e} < 1e-10; generic intertwiner classified \
             '{}'",
            boson.statuses["x_generic_case"]
        ),
    );
}

#[test]
fn criterion_10_deterministic_reports() {
    let _g = lock();
    let mut passes: Vec<Vec<String>> = vec![];
    for _ in 0..2 {
        let mut serialized = vec![];
        for name in scenario_names() {
            let report = run_scenario(name, &[]).unwrap();
            serialized.push(isospec::report::report_to_json(&report));
        }
        passes.push(serialized);
    }
    let ok = passes[0] == passes[1];
    let bytes: usize = passes[0].iter().map(|s| s.len()).sum();
    criterion(
        10,
        ok,
        &format!(
            "two full runs of all {} scenarios produce byte-identical JSON reports \
             ({bytes} bytes compared)",
            scenario_names().len()
        ),
    );
}
