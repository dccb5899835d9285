use std::ffi::OsStr;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run_with_env<I, S>(args: I, overrides: Option<&str>) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<OsStr>,
{
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ruled"));
    cmd.args(args);
    match overrides {
        Some(v) => cmd.env("RULED_TOL_OVERRIDES", v),
        None => cmd.env_remove("RULED_TOL_OVERRIDES"),
    };
    cmd.output().unwrap()
}

fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<OsStr>,
{
    run_with_env(args, None)
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn summary(dir: &Path) -> Value {
    let s = fs::read_to_string(dir.join("summary.json")).unwrap();
    serde_json::from_str::<Value>(&s).unwrap()["report"].clone()
}

fn range(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn analyze_helicoid() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run([OsStr::new("analyze"), data("h1.surf").as_os_str(), "--out".as_ref(), tmp.path().as_os_str()]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let r = summary(tmp.path());
    assert_eq!(r["classification"], "NPlus");
    assert_eq!(r["kind"], "timelike");
    let (lo, hi) = range(&r["k1_range"]);
    assert!((lo - 1.0).abs() < 1e-9 && (hi - 1.0).abs() < 1e-9);
    let (lo, hi) = range(&r["k2_range"]);
    assert!(lo.abs() < 1e-9 && hi.abs() < 1e-9);
    assert_eq!(r["developability"]["developable"], false);
    assert!(r["frenet"]["passed"].as_bool().unwrap());
    let frame = fs::read_to_string(tmp.path().join("frame.csv")).unwrap();
    assert!(frame.starts_with("u,s,k1,k2,phi,f\n"));
    assert_eq!(frame.lines().count(), 513);
}

#[test]
fn cylinder_is_reported_with_a_warning() {
    let out = run(["analyze".as_ref(), data("cylinder.surf").as_os_str()]);
    assert_eq!(out.status.code(), Some(0));
    let s = text(&out.stdout);
    assert!(s.contains("Cylindrical"), "{s}");
    assert!(s.contains("warning: ruling direction is constant"), "{s}");
}

#[test]
fn bad_expression_points_at_the_column() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path().join("bad.surf");
    fs::write(&p, "name = bad\nkind = analytic\nbase_x = u\nbase_y = 2 * (u\nbase_z = 0\nruling_x = 0\nruling_y = cos(u)\nruling_z = sin(u)\ndomain = 0, 1\n").unwrap();
    let out = run(["analyze".as_ref(), p.as_os_str()]);
    assert_eq!(out.status.code(), Some(2));
    let err = text(&out.stderr);
    assert!(err.contains("bad.surf:4:"), "{err}");
    assert!(err.contains("base_y"), "{err}");
}

#[test]
fn missing_input_and_bad_usage_exit_2() {
    assert_eq!(run(["analyze", "/nonexistent/x.surf"]).status.code(), Some(2));
    assert_eq!(run(["verify"]).status.code(), Some(2));
    assert_eq!(run(["verify", "/nonexistent/x.surf"]).status.code(), Some(2));
    assert_eq!(run(["frobnicate"]).status.code(), Some(2));
}

#[test]
fn too_few_steps_is_a_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run([
        "reconstruct".as_ref(),
        data("f05.profile").as_os_str(),
        "--steps".as_ref(),
        "8".as_ref(),
        "--out".as_ref(),
        tmp.path().as_os_str(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

fn reconstruct_and_analyze(profile: &Path, dir: &Path, stem: &str) -> Value {
    let out = run([OsStr::new("reconstruct"), profile.as_os_str(), "--out".as_ref(), dir.as_os_str()]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    for ext in ["surf", "csv", "obj"] {
        assert!(dir.join(format!("{stem}.{ext}")).is_file(), "{stem}.{ext} missing");
    }
    let adir = dir.join("analysis");
    let out = run([
        OsStr::new("analyze"),
        dir.join(format!("{stem}.surf")).as_os_str(),
        "--out".as_ref(),
        adir.as_os_str(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    summary(&adir)
}

#[test]
fn zero_torsion_profile_rebuilds_developable() {
    let tmp = tempfile::tempdir().unwrap();
    let p = tmp.path().join("flat.profile");
    fs::write(&p, "name = flat\nkind = timelike\neps_q = -1\nf = 0\nphi = 0, 1.5\nsteps = 600\ndevelopable = true\n").unwrap();
    let r = reconstruct_and_analyze(&p, tmp.path(), "flat");
    assert_eq!(r["developability"]["developable"], true, "{r}");
    let (lo, hi) = range(&r["f_range"]);
    assert!(lo.abs() < 1e-4 && hi.abs() < 1e-4);
}

#[test]
fn constant_f_profile_is_recovered() {
    let tmp = tempfile::tempdir().unwrap();
    let r = reconstruct_and_analyze(&data("f05.profile"), tmp.path(), "f05");
    let (lo, hi) = range(&r["f_range"]);
    assert!((lo - 0.5).abs() < 1e-4 && (hi - 0.5).abs() < 1e-4, "f in [{lo}, {hi}]");
    assert_eq!(r["eps_q"], -1);
    assert_eq!(r["developability"]["developable"], true);
}

#[test]
fn verify_reports_injected_failure() {
    let ok = run([OsStr::new("verify"), data("h1.surf").as_os_str()]);
    assert_eq!(ok.status.code(), Some(0), "{}", text(&ok.stdout));
    let bad = run([
        OsStr::new("verify"),
        data("h1.surf").as_os_str(),
        "--json".as_ref(),
        "--inject".as_ref(),
        "swap-central-vectors".as_ref(),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&bad.stdout).unwrap();
    let failed: Vec<&str> = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(!failed.is_empty());
    assert_eq!(v["report"]["failed"].as_u64().unwrap() as usize, failed.len());
}

#[test]
fn tolerance_overrides() {
    let h1 = data("h1.surf");
    let args = [OsStr::new("analyze"), h1.as_os_str()];
    let s = text(&run_with_env(args, Some("tol_frame=1e-3")).stdout);
    assert!(s.contains("(limit 0.001)"), "{s}");
    let s = text(&run_with_env(args.iter().copied().chain([OsStr::new("--tol-frame"), OsStr::new("1e-5")]), Some("tol_frame=1e-3")).stdout);
    assert!(s.contains("(limit 1e-5)"), "{s}");
    assert_eq!(run_with_env(args, Some("tol_bogus=1")).status.code(), Some(2));
    assert_eq!(run_with_env(args, Some("tol_frame=-1")).status.code(), Some(2));
}

#[test]
fn export_writes_obj() {
    let tmp = tempfile::tempdir().unwrap();
    let obj = tmp.path().join("h1.obj");
    let out = run([
        OsStr::new("export"),
        data("h1.surf").as_os_str(),
        "--out".as_ref(),
        obj.as_os_str(),
        "--u-steps".as_ref(),
        "10".as_ref(),
        "--v-steps".as_ref(),
        "4".as_ref(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let s = fs::read_to_string(&obj).unwrap();
    assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 11 * 5);
    assert_eq!(s.lines().filter(|l| l.starts_with("f ")).count(), 2 * 10 * 4);
}
