use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn ncreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncreg")).args(args).arg("--no-cache").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn regularity_of_t34() {
    let o = ncreg(&["regularity", &data("T34.alg"), "--imax", "6", "--dmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("Torreg(k)   1        Exact"), "{s}");
    assert!(s.contains("CMreg       -1       Exact"), "{s}");
    assert!(s.contains("ASreg       0        Exact"), "{s}");
    assert!(s.contains("d=3 ell=4"), "{s}");
}

#[test]
fn jsonl_records_carry_kind_window_and_assertions() {
    let args = ["regularity", &data("kx_mod_x3.alg"), "--imax", "4", "--dmax", "8", "--format", "jsonl", "--cm-degree", "0"];
    let o = ncreg(&args);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for line in s.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["schema"], "ncreg-report/1");
        assert!(v.get("kind").is_some() && v.get("window").is_some());
        assert!(v["assertions"].as_array().unwrap().iter().any(|a| a.as_str().unwrap().contains("Cohen")), "{line}");
    }
    let torreg = s.lines().find(|l| l.contains("\"torreg_k\"")).unwrap();
    let v: serde_json::Value = serde_json::from_str(torreg).unwrap();
    assert_eq!(v["kind"], "at_least");
    assert_eq!(v["value"], 2);
    // identical input gives identical records
    assert_eq!(stdout(&ncreg(&args)), s);
}

#[test]
fn stanley_and_obstruct_examples() {
    let s = stdout(&ncreg(&["stanley", &data("kx_mod_x3.alg")]));
    assert!(s.contains("satisfied(+1, ℓ = -2)"), "{s}");
    let s = stdout(&ncreg(&["stanley", &data("square_zero2.alg")]));
    assert!(s.contains("violated"), "{s}");
    let o = ncreg(&["obstruct", &data("hypersurface_t2.alg"), "--witness", &data("polyring2.alg")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("obstructed: c = 0 < beta_1 - 1 = 1"), "{}", stdout(&o));
}

#[test]
fn quotient_and_concavity() {
    let s = stdout(&ncreg(&["quotient", &data("T34.alg"), "--element", "x^2", "--imax", "5", "--dmax", "9"]));
    assert!(s.contains("regular through degree 9"), "{s}");
    assert!(s.contains("CMreg       0        Exact"), "{s}");
    let o = ncreg(&["concavity", &data("T34.alg"), "--imax", "5", "--dmax", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("c = 1  c_- = 0"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    assert_eq!(ncreg(&["gb", "/no/such/file.alg"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "gens x:1 y:1\nrels x^2 - y\n").unwrap();
    let o = ncreg(&["gb", bad.to_str().unwrap(), "--format", "jsonl"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["error"], "input");
    // k[x,y] is not finite over k[x]
    let o = ncreg(&["finitemap", &data("polyring1.alg"), &data("polyring2.alg"), "--dmax", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ncreg(&["concavity", &data("kx_mod_x3.alg"), "--imax", "3", "--dmax", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn finitemap_with_explicit_images() {
    let dir = tempfile::tempdir().unwrap();
    let ku = dir.path().join("ku.alg");
    std::fs::write(&ku, "gens u:2\n").unwrap();
    let o = ncreg(&["finitemap", ku.to_str().unwrap(), &data("polyring1.alg"), "--images", "x^2", "--dmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("A/f(T+)A  1 1 0 0 0 0 0"), "{s}");
    assert!(s.contains("finite_certified top=1"), "{s}");
}

#[test]
fn harness_mode_passes() {
    let o = ncreg(&[
        "harness",
        &data("T34.alg"),
        "--imax",
        "5",
        "--dmax",
        "10",
        "--module",
        &data("k_plus_k2_over_T34.mod"),
        "--quotient",
        "x^2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(!s.contains("fail"), "{s}");
    assert!(s.lines().filter(|l| l.starts_with("pass")).count() >= 4, "{s}");
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ncreg"))
            .args(["gb", &data("T34.alg"), "--format", "jsonl", "--dgb", "8"])
            .env("NCREG_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    assert_eq!(stdout(&run()), stdout(&first));
}

#[test]
fn field_override_and_resolve() {
    let s = stdout(&ncreg(&["koszul", &data("polyring3.alg"), "--field", "F101", "--imax", "4", "--dmax", "6"]));
    assert!(s.starts_with("k[x,y,z]: yes"), "{s}");
    let s = stdout(&ncreg(&["resolve", &data("T34.alg"), "--right", "--imax", "4", "--dmax", "6"]));
    assert!(s.contains("t_i: 0 1 3 4 -"), "{s}");
    let s = stdout(&ncreg(&["resolve", &data("T34.alg"), "--module", &data("k_plus_k2_over_T34.mod"), "--imax", "4", "--dmax", "8"]));
    assert!(s.contains("t_i: 2 3 5 6 -"), "{s}");
}
