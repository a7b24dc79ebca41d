use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bosemix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bosemix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn csvs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

const QUICK: &[&str] = &["--r12", "0.2,0.5", "--t-max", "5", "--steps", "64"];

fn quick_run(scenario: &str, out: &Path) -> Output {
    let mut args = vec![scenario, "--out", out.to_str().unwrap()];
    args.extend_from_slice(QUICK);
    bosemix(&args)
}

#[test]
fn writes_tables_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = quick_run("gamma-single", dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let files = csvs(dir.path());
    let names: Vec<&str> = files.iter().map(|f| f.0.as_str()).collect();
    assert_eq!(names, ["gamma-single_lower.csv", "gamma-single_upper.csv"]);

    let text = String::from_utf8(files[1].1.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,r12=0.2,r12=0.5");
    assert_eq!(lines.len(), 66);
    assert!(!text.contains('\r') && text.ends_with('\n'));
    for row in &lines[1..] {
        let values: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(values.len(), 3);
    }
    assert_eq!(lines[1], "0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0");

    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["scenario"]["name"], "gamma-single");
    assert_eq!(manifest["pair_convention"], "coherent_sum");
    assert_eq!(manifest["allow_immiscible"], false);
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
}

#[test]
fn reruns_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for scenario in ["gamma-two", "induced-coupling"] {
        assert!(quick_run(scenario, a.path()).status.success());
        assert!(quick_run(scenario, b.path()).status.success());
    }
    let (x, y) = (csvs(a.path()), csvs(b.path()));
    assert_eq!(x.len(), 6);
    assert_eq!(x, y);
}

#[test]
fn manifest_replays_the_run() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert!(quick_run("decay-rates", a.path()).status.success());
    let manifest = a.path().join("manifest.json");
    let o = bosemix(&[
        "decay-rates",
        "--config",
        manifest.to_str().unwrap(),
        "--out",
        b.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(csvs(a.path()), csvs(b.path()));

    let o = bosemix(&["decay-rates", "--config", manifest.to_str().unwrap(), "--steps", "80"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("override"));
    let o = bosemix(&["gamma-two", "--config", manifest.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("decay-rates"));
}

#[test]
fn spectral_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let o = bosemix(&["sdf-two", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"));
    let files = csvs(dir.path());
    assert_eq!(files.len(), 8);
    assert!(files.iter().any(|f| f.0 == "sdf-two_lower_j2_L7.5.csv"));
    let text = String::from_utf8(files[0].1.clone()).unwrap();
    assert_eq!(text.lines().next().unwrap(), "omega,r12=0.2,r12=1,r12=3");
    assert_eq!(text.lines().count(), 1501);
}

#[test]
fn rejects_bad_input() {
    let o = bosemix(&["gama-single"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("gamma-single"));

    let o = bosemix(&["gamma-single", "--r12", "1.5"]);
    assert!(!o.status.success());
    assert!(
        stderr(&o).contains("allow-immiscible") || stderr(&o).contains("allow_immiscible"),
        "{}",
        stderr(&o)
    );

    let dir = tempfile::tempdir().unwrap();
    let ini = dir.path().join("run.ini");
    fs::write(&ini, "t_max = 5\nstep = 10\nL = wide\n").unwrap();
    let o = bosemix(&[
        "gamma-single",
        "--config",
        ini.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!o.status.success());
    let err = stderr(&o);
    assert!(err.contains("line 2") && err.contains("steps"), "{err}");
    assert!(err.contains("line 3"), "{err}");
    assert!(csvs(dir.path()).is_empty());
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let ini = dir.path().join("run.ini");
    fs::write(&ini, "# quick look\nr12 = 0.3\nt_max = 2\nsteps = 100\nconvention = as_printed\n").unwrap();
    let out = dir.path().join("out");
    let o = bosemix(&[
        "gamma-two",
        "--config",
        ini.to_str().unwrap(),
        "--steps",
        "64",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(out.join("gamma-two_upper_gamma1.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), "t,r12=0.3");
    assert_eq!(text.lines().count(), 66);
    let manifest = fs::read_to_string(out.join("manifest.json")).unwrap();
    assert!(manifest.contains("\"as_printed\""));
}
