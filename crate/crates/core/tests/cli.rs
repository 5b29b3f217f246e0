use std::fs;
use std::process::Command;

use relspin::cli::{run, CSV_HEADER, EXIT_IO, EXIT_OK, EXIT_VALIDATION};

fn run_capture(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["relspin"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn sweep_writes_full_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let (code, _, err) = run_capture(&["sweep", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let text = fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, CSV_HEADER);
    for key in ["mass", "epsilon", "sigma_minus", "p_nodes", "p_max", "tol", "seed"] {
        assert!(text.contains(&format!("# {key} = ")), "missing {key}");
    }
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 31);
    assert_eq!(rows[0][0], "0.000000");
    assert_eq!(rows[0][1], "0.500000");
    assert_eq!(rows[0][2], "0.500000");
    assert!(rows.iter().all(|r| r[4] == "ok"));
    assert_eq!(rows[30][0], "3.000000");
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let common = ["sweep", "--zeta-steps", "7", "--theta-nodes", "32", "--phi-nodes", "16", "--seed", "3"];
    for path in [&a, &b] {
        let mut args = common.to_vec();
        args.extend(["--out", path.to_str().unwrap()]);
        assert_eq!(run_capture(&args).0, EXIT_OK);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# bundle\nzeta_min = 0.5\nzeta_max = 1.5\nzeta_steps = 3\nepsilon = 0.2\n").unwrap();
    let (code, out, _) = run_capture(&["sweep", "--config", cfg.to_str().unwrap(), "--zeta-steps", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# epsilon = 0.2"));
    assert!(out.contains("# zeta_steps = 2"));
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "0.500000");
    assert_eq!(rows[1][0], "1.500000");
}

#[test]
fn boost_at_zero_rapidity_reproduces_rest_states() {
    let (code, out, _) = run_capture(&["boost", "--zeta", "0"]);
    assert_eq!(code, EXIT_OK);
    let purities: Vec<&str> = out
        .lines()
        .filter_map(|l| l.split("purity = ").nth(1))
        .collect();
    assert_eq!(purities.len(), 8);
    assert!(purities.iter().all(|p| p.starts_with("1.000000000e0") || p.starts_with("9.99999999")));
    let (_, out1, _) = run_capture(&["boost", "--zeta", "1"]);
    let boosted: Vec<f64> = out1
        .lines()
        .filter_map(|l| l.split("purity = ").nth(1))
        .map(|p| p.trim().parse().unwrap())
        .collect();
    for pair in boosted.chunks(2) {
        assert!(pair[1] < 1.0 - 1e-3, "boosted purity {}", pair[1]);
    }
}

#[test]
fn contextuality_report_at_rest() {
    let (code, out, _) = run_capture(&["contextuality", "--zeta", "0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("rest: rank 3 of 4, verdict contextual"));
    assert!(out.contains("dual_frame: none"));
}

#[test]
fn contextuality_report_with_rotated_deformation() {
    let (code, out, _) = run_capture(&["contextuality", "--zeta", "1", "--deformation-phase", "0.7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("boosted: rank 4 of 4, verdict non-contextual"));
    assert!(out.contains("model: max_violation"));
}

#[test]
fn spherical_profiles_stay_contextual() {
    let args = [
        "contextuality", "--zeta", "1", "--epsilon", "0", "--sigma-up", "3", "--sigma-down", "3",
        "--sigma-plus", "3", "--sigma-minus", "3",
    ];
    let (code, out, _) = run_capture(&args);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("boosted: rank 3 of 4"));
}

#[test]
fn discriminate_prints_both_probabilities() {
    let (code, out, _) = run_capture(&["discriminate", "--zeta", "0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("p_success_four = 0.500000"));
    assert!(out.contains("p_helstrom_two = 0.500000"));
}

#[test]
fn exit_codes() {
    assert_eq!(run_capture(&["boost", "--epsilon", "1.5"]).0, EXIT_VALIDATION);
    assert_eq!(run_capture(&["sweep", "--zeta-steps", "0"]).0, EXIT_VALIDATION);
    assert_eq!(run_capture(&["sweep", "--priors", "1,1,1,1"]).0, EXIT_VALIDATION);
    assert_eq!(run_capture(&["nonsense"]).0, EXIT_VALIDATION);
    assert_eq!(
        run_capture(&["sweep", "--zeta-steps", "2", "--out", "/nonexistent-dir/x.csv"]).0,
        EXIT_IO
    );
    // Too few radial nodes: normalization cannot converge.
    let (code, _, err) = run_capture(&["boost", "--p-nodes", "6"]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("not converged"));
    assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
}

#[test]
fn binary_reports_validation_errors_by_field() {
    let out = Command::new(env!("CARGO_BIN_EXE_relspin"))
        .args(["boost", "--epsilon", "1.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilon"));
}
