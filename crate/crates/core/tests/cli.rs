use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const LINK: &str = "[link]
alpha_db_per_km = 0.2
beta2_ps2_per_km = -21.7
gamma_per_w_km = 1.3
span_km = 80
n_spans = 1
symbol_rate_gbd = 32
";

const SMALL: &str = "
[grid]
points_per_dim = 8
n_freq = 17

[oracle]
w = 16
trials = 4000
seed = 11
lattice_w = [8, 16]
";

const VALIDATION: &str = "
[grid]
points_per_dim = 32

[oracle]
w = 32
trials = 4000
seed = 11
";

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("run.toml");
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_egn4d"))
        .args(args)
        .output()
        .unwrap()
}

fn run_with(config: &Path, verb: &[&str], out: Option<&Path>) -> Output {
    let mut args = vec!["--config", config.to_str().unwrap()];
    if let Some(o) = out {
        args.extend(["--out", o.to_str().unwrap()]);
    }
    args.extend(verb);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn row<'a>(csv: &'a str, kind: &str, name: &str) -> Vec<&'a str> {
    csv.lines()
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|r| r[0] == kind && r[1] == name)
        .unwrap_or_else(|| panic!("no row {kind},{name}"))
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn missing_config_exits_2_and_names_the_path() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nowhere.toml");
    let o = run_with(&missing, &["moments"], None);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("nowhere.toml"), "{err}");
}

#[test]
fn missing_constellation_file_names_the_path() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!("{LINK}\n[format]\npath = \"absent.csv\"\n"),
    );
    let o = run_with(&cfg, &["moments"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("absent.csv"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "[link]\nalpha_db_per_km = -1\n");
    assert_eq!(run_with(&cfg, &["coeffs"], None).status.code(), Some(2));
}

#[test]
fn pm_qpsk_moments_and_coefficients() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), LINK);
    let o = run_with(&cfg, &["moments"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("kind,name,re,im"));
    let phi1 = row(&text, "coefficient", "phi1");
    assert!((phi1[2].parse::<f64>().unwrap() - 3.0).abs() < 1e-12);
    let l3 = row(&text, "coefficient", "lambda3");
    assert!((l3[2].parse::<f64>().unwrap() + 5.0).abs() < 1e-12);
}

#[test]
fn sixteen_qam_fourth_moment() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!("{LINK}\n[format]\nbuiltin = \"pm-16qam\"\n"),
    );
    let text = stdout(&run_with(&cfg, &["moments"], None));
    let m = row(&text, "moment", "m2200");
    assert!((m[2].parse::<f64>().unwrap() - 1.32).abs() < 1e-12);
    assert!(m[3].parse::<f64>().unwrap().abs() < 1e-15);
}

#[test]
fn constellation_from_csv() {
    let dir = TempDir::new().unwrap();
    let pts = "ax_re,ax_im,ay_re,ay_im\n1,0,0,1\n-1,0,0,-1\n0,1,1,0\n0,-1,-1,0\n";
    std::fs::write(dir.path().join("pts.csv"), pts).unwrap();
    let cfg = write_config(
        dir.path(),
        &format!("{LINK}\n[format]\npath = \"pts.csv\"\n"),
    );
    let o = run_with(&cfg, &["coeffs"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 28);
    row(&text, "y", "xi1");
}

#[test]
fn zero_gamma_gives_zero_psd() {
    let dir = TempDir::new().unwrap();
    let body = format!(
        "{}{SMALL}",
        LINK.replace("gamma_per_w_km = 1.3", "gamma_per_w_km = 0")
    );
    let cfg = write_config(dir.path(), &body);
    let out = dir.path().join("out");
    let o = run_with(&cfg, &["psd"], Some(&out));
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.join("psd.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("f_hz,s_x,s_y"));
    let mut n = 0;
    for l in lines {
        let r: Vec<f64> = l.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!((r[1], r[2]), (0.0, 0.0));
        n += 1;
    }
    assert_eq!(n, 17);
    let p = json(&out.join("power.json"));
    assert_eq!(p["power_x"].as_f64(), Some(0.0));
}

#[test]
fn psd_is_deterministic_and_symmetric_for_pm_qpsk() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), &format!("{LINK}{SMALL}"));
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(run_with(&cfg, &["psd"], Some(&a)).status.code(), Some(0));
    assert_eq!(run_with(&cfg, &["psd"], Some(&b)).status.code(), Some(0));
    let csv_a = std::fs::read(a.join("psd.csv")).unwrap();
    assert_eq!(csv_a, std::fs::read(b.join("psd.csv")).unwrap());
    let p = json(&a.join("power.json"));
    let (px, py) = (
        p["power_x"].as_f64().unwrap(),
        p["power_y"].as_f64().unwrap(),
    );
    assert!(px > 0.0);
    assert!((px - py).abs() <= 1e-12 * px);
    assert!(p["nli_to_signal_db_x"].is_null());
}

#[test]
fn command_line_overrides_and_launch_power() {
    let dir = TempDir::new().unwrap();
    let body = format!("{LINK}{SMALL}\n[format]\nbuiltin = \"pm-qpsk\"\nlaunch_power_dbm = 0.0\n");
    let cfg = write_config(dir.path(), &body);
    let o = run_with(&cfg, &["--freqs", "9", "--grid-n", "6", "power"], None);
    assert_eq!(o.status.code(), Some(0));
    let p: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(p["n_freq"].as_u64(), Some(9));
    assert_eq!(p["grid"]["points_per_dim"].as_u64(), Some(6));
    let db = p["nli_to_signal_db_x"].as_f64().unwrap();
    assert!(db.is_finite() && db < 0.0, "{db}");
}

#[test]
fn validate_zero_gamma_passes() {
    let dir = TempDir::new().unwrap();
    let body = format!(
        "{}{SMALL}",
        LINK.replace("gamma_per_w_km = 1.3", "gamma_per_w_km = 0")
    );
    let cfg = write_config(dir.path(), &body);
    let out = dir.path().join("out");
    let o = run_with(&cfg, &["validate"], Some(&out));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        json(&out.join("validation.json"))["summary"]["pass"].as_bool(),
        Some(true)
    );
}

#[test]
fn validate_passes_and_mutation_fails() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), &format!("{LINK}{VALIDATION}"));
    let good = dir.path().join("good");
    let o = run_with(&cfg, &["validate"], Some(&good));
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let bad = dir.path().join("bad");
    let o = run_with(&cfg, &["validate", "--corrupt-xi1"], Some(&bad));
    assert_eq!(o.status.code(), Some(1));
    let report = json(&bad.join("validation.json"));
    assert_eq!(report["summary"]["pass"].as_bool(), Some(false));
}

#[test]
fn chi_convergence_lists_quadrature_and_lattice() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), &format!("{LINK}{SMALL}"));
    let o = run_with(
        &cfg,
        &["--grid-n", "16", "chi-convergence", "--l", "1"],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.iter().filter(|r| r[1] == "quadrature").count(), 3);
    assert_eq!(rows.iter().filter(|r| r[1] == "lattice").count(), 2);
    let fine: f64 = rows
        .iter()
        .find(|r| r[1] == "quadrature" && r[2] == "16")
        .unwrap()[4]
        .parse()
        .unwrap();
    let lat: f64 = rows
        .iter()
        .find(|r| r[1] == "lattice" && r[2] == "16")
        .unwrap()[4]
        .parse()
        .unwrap();
    assert!((fine - lat).abs() < 0.2 * fine, "{fine} vs {lat}");
    let bad = run_with(&cfg, &["chi-convergence", "--l", "12"], None);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn shipped_config_runs() {
    let cfg = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/pm-qpsk.toml");
    let o = run(&["--config", cfg.to_str().unwrap(), "--grid-n", "8", "--freqs", "9", "power"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
