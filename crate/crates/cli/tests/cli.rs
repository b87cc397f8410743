use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn scinact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scinact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn construct_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &p]);
    let o = scinact(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn rm_0_2_listing() {
    let o = scinact(&["construct", "rm", "--m", "2", "--r", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["4 1", "4", "1 :", "2 :", "3 :"]);
}

#[test]
fn every_family_constructs() {
    let dir = tempfile::tempdir().unwrap();
    let frozen = dir.path().join("extra.txt");
    fs::write(&frozen, "# two extra frozen bits\n").unwrap();
    let cases: Vec<(Vec<&str>, (usize, usize))> = vec![
        (vec!["rm", "--m", "7", "--r", "3"], (128, 64)),
        (vec!["polar", "--m", "7", "--k", "64", "--design-eps", "0.4"], (128, 64)),
        (vec!["ebch", "--m", "7", "--delta", "21"], (128, 64)),
        (vec!["ebch-polar", "--m", "7", "--k", "60", "--design-eps", "0.4"], (128, 60)),
        (vec!["drm", "--m", "5", "--r", "2", "--seed", "3"], (32, 16)),
        (vec!["7drm", "--m", "7", "--r", "3", "--seed", "3"], (128, 64)),
        (vec!["random", "--m", "6", "--k", "20", "--seed", "9"], (64, 20)),
    ];
    for (args, (n, k)) in cases {
        let o = scinact(&[&["construct"], &args[..]].concat());
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let text = stdout(&o);
        let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header, format!("{n} {k}"), "{args:?}");
    }
    let o = scinact(&[
        "construct",
        "ebch-polar",
        "--k",
        "64",
        "--frozen-file",
        frozen.to_str().unwrap(),
    ]);
    assert!(o.status.success());
}

#[test]
fn usage_errors_exit_with_one() {
    for args in [
        vec!["construct", "polar", "--m", "7"],
        vec!["construct", "nonsense"],
        vec!["simulate", "--spec", "x", "--decoder", "bogus", "--eps", "0.1"],
        vec!["analyze", "--spec", "x"],
        vec!["frobnicate"],
        vec!["simulate", "--spec", "x", "--decoder", "sc", "--eps", "1.5"],
    ] {
        assert_eq!(scinact(&args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(scinact(&["--help"]).status.code(), Some(0));
}

#[test]
fn runtime_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3 1\n1\n").unwrap();
    let bad = bad.to_str().unwrap();
    assert_eq!(scinact(&["analyze", "--spec", bad, "--eps", "0.1"]).status.code(), Some(2));
    assert_eq!(
        scinact(&["analyze", "--spec", "/nonexistent/spec", "--eps", "0.1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        scinact(&["construct", "polar", "--m", "3", "--k", "9", "--design-eps", "0.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn rate_one_expected_inactivations_equal_n_eps() {
    let dir = tempfile::tempdir().unwrap();
    let spec = construct_to(dir.path(), "full.txt", &["polar", "--m", "4", "--k", "16", "--design-eps", "0.5"]);
    let o = scinact(&["analyze", "--spec", &spec, "--eps", "0.1,0.25,0.5,0.9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("epsilon,expected_g,singleton,berlekamp"));
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(f.len(), 4);
        assert!((f[1] - 16.0 * f[0]).abs() < 1e-12, "{line}");
    }
}

#[test]
fn analyze_small_rm_matches_density_evolution() {
    let dir = tempfile::tempdir().unwrap();
    let spec = construct_to(dir.path(), "rm.txt", &["rm", "--m", "2", "--r", "0"]);
    let o = scinact(&["analyze", "--spec", &spec, "--eps", "0.5"]);
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let eg: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((eg - 0.0625).abs() < 1e-12);
}

#[test]
fn simulate_is_deterministic_and_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let spec = construct_to(dir.path(), "p.txt", &["polar", "--m", "5", "--k", "16", "--design-eps", "0.4"]);
    let run = |jobs: &str, tag: &str| {
        let curve = dir.path().join(format!("curve{tag}.csv"));
        let traj = dir.path().join(format!("traj{tag}.csv"));
        let o = scinact(&[
            "simulate",
            "--spec",
            &spec,
            "--decoder",
            "inactivation",
            "--eps",
            "0.4",
            "--seed",
            "17",
            "--max-trials",
            "3000",
            "--target-errors",
            "50",
            "--profile",
            "--profile-out",
            traj.to_str().unwrap(),
            "--out",
            curve.to_str().unwrap(),
            "--jobs",
            jobs,
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (fs::read(curve).unwrap(), fs::read(traj).unwrap())
    };
    let a = run("1", "a");
    assert_eq!(a, run("1", "b"));
    assert_eq!(a, run("4", "c"));
    let curve = String::from_utf8(a.0).unwrap();
    assert!(curve.starts_with("epsilon,trials,errors,bler,stderr,mean_g,se_g\n"));
    let traj = String::from_utf8(a.1).unwrap();
    assert!(traj.starts_with("index,mean_unresolved\n"));
    assert_eq!(traj.lines().count(), 33);
}

#[test]
fn noiseless_simulation_has_zero_bler() {
    let dir = tempfile::tempdir().unwrap();
    let spec = construct_to(dir.path(), "rm.txt", &["rm", "--m", "4", "--r", "2"]);
    for decoder in ["sc", "genie", "scl", "inactivation", "map"] {
        let o = scinact(&[
            "simulate", "--spec", &spec, "--decoder", decoder, "--eps", "0,0", "--max-trials", "200",
        ]);
        assert!(o.status.success());
        for line in stdout(&o).lines().skip(1) {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 7);
            assert_eq!((f[1], f[2], f[3]), ("200", "0", "0"), "{decoder}");
        }
    }
}

#[test]
fn profile_requires_inactivation_and_one_point() {
    let dir = tempfile::tempdir().unwrap();
    let spec = construct_to(dir.path(), "rm.txt", &["rm", "--m", "3", "--r", "1"]);
    let out = dir.path().join("t.csv");
    let out = out.to_str().unwrap();
    let base = ["simulate", "--spec", &spec, "--max-trials", "10", "--profile", "--profile-out", out];
    let sc = scinact(&[&base[..], &["--decoder", "sc", "--eps", "0.3"]].concat());
    assert_eq!(sc.status.code(), Some(1));
    let two = scinact(&[&base[..], &["--decoder", "inactivation", "--eps", "0.3,0.4"]].concat());
    assert_eq!(two.status.code(), Some(1));
    let no_out = scinact(&[
        "simulate", "--spec", &spec, "--decoder", "inactivation", "--eps", "0.3", "--profile",
    ]);
    assert_eq!(no_out.status.code(), Some(1));
}
