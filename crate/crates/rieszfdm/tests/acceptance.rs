//! End-to-end acceptance suite. Each test prints one PASS/FAIL line
//! (visible with `--nocapture`) and asserts the same condition, so the suite
//! doubles as a human-readable checklist:
//!
//! ```text
//! cargo test -p rieszfdm --test acceptance -- --nocapture
//! ```

use std::process::Command;
use std::time::Instant;

use rieszfdm::oracle::{
    brute_tail_left, brute_tail_right, pinned_sweep, tail_tolerance,
};
use rieszfdm::{
    assemble, fit, lu_solve, DirichletBC, Domain1D, FitConfig, FractionalParams, ObservedProfile,
    SchemeWeights, Solution, WeightTable,
};

fn report(criterion: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("{status} {criterion}: {detail}");
    assert!(pass, "{criterion}: {detail}");
}

fn solve_unit_interval(
    alpha: f64,
    theta: f64,
    scheme: &SchemeWeights,
    cells: usize,
    gl: f64,
    gr: f64,
) -> Solution {
    let params = FractionalParams::new(alpha, theta).expect("feasible parameters");
    let domain = Domain1D::new(0.0, 1.0, cells).expect("valid domain");
    let bc = DirichletBC::new(gl, gr).expect("valid boundary values");
    let system = assemble(&domain, &params, scheme, bc).expect("assembly succeeds");
    lu_solve(&system).expect("solve succeeds")
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rieszfdm"))
}

fn read_csv_values(path: &std::path::Path) -> Vec<f64> {
    let text = std::fs::read_to_string(path).expect("csv exists");
    text.lines()
        .skip(1)
        .map(|line| {
            let (_, v) = line.split_once(',').expect("two columns");
            v.parse().expect("parseable value")
        })
        .collect()
}

/// 1. The weight table at (alpha=2, theta=0, lambda2=0) is the classical
///    second-difference stencil {1, -2, 1} within 1e-12 out to |k| = 50.
#[test]
fn acceptance_01_classical_stencil_reduction() {
    let params = FractionalParams::new(2.0, 0.0).unwrap();
    let scheme = SchemeWeights::default();
    let table = WeightTable::build(&params, &scheme, 50).unwrap();
    let mut max_error = (table.weight(-1) - 1.0)
        .abs()
        .max((table.weight(0) + 2.0).abs())
        .max((table.weight(1) - 1.0).abs());
    for k in 2..=50i64 {
        max_error = max_error.max(table.weight(k).abs()).max(table.weight(-k).abs());
    }
    report(
        "acceptance-01 classical stencil",
        max_error <= 1e-12,
        &format!("max deviation from {{1, -2, 1}} is {max_error:.3e} (tolerance 1e-12)"),
    );
}

/// 2. The classical-limit solve reproduces the linear profile T = 2 - x
///    within 1e-10 on both a coarse and a fine grid.
#[test]
fn acceptance_02_classical_solve_is_linear() {
    let scheme = SchemeWeights::default();
    let mut max_error = 0.0f64;
    for cells in [10usize, 100] {
        let solution = solve_unit_interval(2.0, 0.0, &scheme, cells, 2.0, 1.0);
        let domain = Domain1D::new(0.0, 1.0, cells).unwrap();
        for (i, &v) in solution.values.iter().enumerate() {
            max_error = max_error.max((v - (2.0 - domain.node(i))).abs());
        }
    }
    report(
        "acceptance-02 classical solve",
        max_error <= 1e-10,
        &format!("max |T - (2 - x)| over N=10,100 is {max_error:.3e} (tolerance 1e-10)"),
    );
}

/// 3. Closed-form tail sums agree with brute-force partial sums truncated at
///    K = 10^6 across the pinned parameter sweep, within max(1e-6, 10 K^-alpha).
#[test]
fn acceptance_03_tail_sums_match_brute_force() {
    let start = Instant::now();
    let scheme = SchemeWeights::default();
    let cutoff = 1_000_000i64;
    let mut worst_ratio = 0.0f64;
    for params in pinned_sweep() {
        let kernel = rieszfdm::WeightKernel::new(&params, &scheme);
        let tolerance = tail_tolerance(params.alpha(), cutoff);
        for j in [1i64, 2, 5, 20] {
            let left = (kernel.tail_left(j).unwrap()
                - brute_tail_left(j, &params, &scheme, cutoff).unwrap())
            .abs();
            let right = (kernel.tail_right(j).unwrap()
                - brute_tail_right(j, &params, &scheme, cutoff).unwrap())
            .abs();
            worst_ratio = worst_ratio.max(left / tolerance).max(right / tolerance);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "acceptance-03 tail sums",
        worst_ratio <= 1.0 && elapsed <= 60.0,
        &format!(
            "worst error/tolerance ratio {worst_ratio:.3e} at K=10^6, {elapsed:.1}s (budget 60s)"
        ),
    );
}

/// 4. Constant boundary data gives a constant solution: the scheme
///    annihilates constants through the tail sums.
#[test]
fn acceptance_04_constant_annihilation() {
    let scheme = SchemeWeights::default();
    let mut max_error = 0.0f64;
    for params in pinned_sweep() {
        let solution =
            solve_unit_interval(params.alpha(), params.theta(), &scheme, 50, 5.0, 5.0);
        for &v in &solution.values {
            max_error = max_error.max((v - 5.0).abs());
        }
    }
    report(
        "acceptance-04 constant annihilation",
        max_error <= 1e-5,
        &format!("max |T - 5| over the pinned sweep is {max_error:.3e} (tolerance 1e-5)"),
    );
}

/// 5. Mirror symmetry: solving with (theta, gL, gR) equals the node-reversed
///    solve with (-theta, gR, gL) within 1e-9.
#[test]
fn acceptance_05_mirror_symmetry() {
    let scheme = SchemeWeights::default();
    let mut max_error = 0.0f64;
    for params in pinned_sweep() {
        let forward = solve_unit_interval(params.alpha(), params.theta(), &scheme, 64, 2.0, 1.0);
        let mirrored =
            solve_unit_interval(params.alpha(), -params.theta(), &scheme, 64, 1.0, 2.0);
        for (i, &v) in forward.values.iter().enumerate() {
            max_error = max_error.max((v - mirrored.values[64 - i]).abs());
        }
    }
    report(
        "acceptance-05 mirror symmetry",
        max_error <= 1e-9,
        &format!("max node-reversed mismatch over the pinned sweep is {max_error:.3e}"),
    );
}

/// 6. Self-convergence: successive max-node differences over N = 32, 64, 128,
///    256 decrease strictly for two representative parameter sets.
#[test]
fn acceptance_06_self_convergence() {
    let scheme = SchemeWeights::default();
    let grids = [32usize, 64, 128, 256];
    let mut detail = String::new();
    let mut pass = true;
    for (alpha, theta) in [(1.5, 0.0), (0.5, 0.25)] {
        let solutions: Vec<Solution> = grids
            .iter()
            .map(|&n| solve_unit_interval(alpha, theta, &scheme, n, 2.0, 1.0))
            .collect();
        let mut differences = Vec::new();
        for w in solutions.windows(2) {
            let step = (w[1].values.len() - 1) / (w[0].values.len() - 1);
            let mut diff = 0.0f64;
            for (i, &coarse) in w[0].values.iter().enumerate() {
                diff = diff.max((coarse - w[1].values[i * step]).abs());
            }
            differences.push(diff);
        }
        pass &= differences.windows(2).all(|d| d[1] < d[0]);
        let shown: Vec<String> = differences.iter().map(|d| format!("{d:.3e}")).collect();
        detail.push_str(&format!("({alpha},{theta}): {shown:?}; "));
    }
    report(
        "acceptance-06 self-convergence",
        pass,
        &format!("successive differences strictly decrease: {detail}"),
    );
}

/// 7. The figure presets run end to end: exit 0, boundary nodes exact, and
///    every interior value inside [0.98, 2.02].
#[test]
fn acceptance_07_figure_presets() {
    let dir = tempfile::tempdir().unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for (preset, expected_csvs) in [("fig2", 8usize), ("fig3", 7)] {
        let out = dir.path().join(preset);
        let status = binary()
            .args(["sweep", "--preset", preset, "--N", "200", "--out"])
            .arg(&out)
            .status()
            .expect("binary runs");
        pass &= status.success();
        let mut csvs = 0usize;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for entry in std::fs::read_dir(&out).unwrap() {
            let path = entry.unwrap().path();
            if path.extension().is_some_and(|e| e == "csv") {
                csvs += 1;
                let values = read_csv_values(&path);
                pass &= values[0] == 2.0 && values[values.len() - 1] == 1.0;
                for &v in &values {
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
        }
        pass &= csvs == expected_csvs && lo >= 0.98 && hi <= 2.02;
        detail.push_str(&format!("{preset}: {csvs} profiles in [{lo:.3}, {hi:.3}]; "));
    }
    report(
        "acceptance-07 figure presets",
        pass,
        &format!("{detail}boundaries exact, interior within [0.98, 2.02]"),
    );
}

/// 8. The fitter recovers (alpha, theta) = (0.35, -0.055) from a noiseless
///    synthetic profile within 0.01 in each parameter.
#[test]
fn acceptance_08_fit_recovery() {
    let start = Instant::now();
    let scheme = SchemeWeights::default();
    let truth = solve_unit_interval(0.35, -0.055, &scheme, 200, 2.0, 1.0);
    let domain = Domain1D::new(0.0, 1.0, 200).unwrap();
    let points: Vec<(f64, f64)> = (0..=200)
        .step_by(10)
        .map(|i| (domain.node(i), truth.values[i]))
        .collect();
    let profile = ObservedProfile::from_endpoints(points).unwrap();
    let config = FitConfig::default();
    let result = fit(&profile, &config).unwrap();
    let alpha_error = (result.alpha_star - 0.35).abs();
    let theta_error = (result.theta_star + 0.055).abs();
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "acceptance-08 fit recovery",
        alpha_error <= 0.01 && theta_error <= 0.01 && elapsed <= 90.0,
        &format!(
            "alpha_star={:.4} (err {alpha_error:.2e}), theta_star={:.4} (err {theta_error:.2e}), \
             {elapsed:.1}s (budget 90s)",
            result.alpha_star, result.theta_star
        ),
    );
}

/// 9. Orders in the singular band around alpha = 1 are rejected with exit
///    code 2 and a diagnostic naming the singularity.
#[test]
fn acceptance_09_singularity_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for alpha in ["1", "0.9999999", "1.0000001"] {
        let output = binary()
            .args(["solve", "--alpha", alpha, "--out"])
            .arg(dir.path().join("out.csv"))
            .output()
            .expect("binary runs");
        let stderr = String::from_utf8_lossy(&output.stderr).to_string();
        let code = output.status.code();
        pass &= code == Some(2) && stderr.contains("singular");
        detail.push_str(&format!("alpha={alpha} -> exit {code:?}; "));
    }
    report(
        "acceptance-09 singularity rejection",
        pass,
        &format!("{detail}diagnostics name the singular band"),
    );
}

/// 10. A dense solve at N = 2000 finishes inside the time budget with a
///     residual bounded relative to the system's scale.
#[test]
fn acceptance_10_dense_solve_scale() {
    let start = Instant::now();
    let params = FractionalParams::new(1.5, 0.3).unwrap();
    let scheme = SchemeWeights::default();
    let domain = Domain1D::new(0.0, 1.0, 2000).unwrap();
    let bc = DirichletBC::new(2.0, 1.0).unwrap();
    let system = assemble(&domain, &params, &scheme, bc).unwrap();
    let solution = lu_solve(&system).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let max_weight = (-(2000i64)..=2000)
        .map(|k| system.table.weight(k).abs())
        .fold(0.0f64, f64::max);
    let max_value = solution.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let bound = 1e-8 * (1.0 + max_weight * max_value);
    report(
        "acceptance-10 dense solve scale",
        solution.residual_inf <= bound && elapsed <= 60.0,
        &format!(
            "N=2000 residual {:.3e} <= bound {bound:.3e}, {elapsed:.1}s (budget 60s)",
            solution.residual_inf
        ),
    );
}
