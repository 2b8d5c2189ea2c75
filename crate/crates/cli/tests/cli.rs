use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seshadri"))
        .args(args)
        .env_remove("SESHADRI_DECIMALS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_json_example() {
    let o = run(&[
        "compute", "--surface", "ell-dec:nontorsion", "--stratum", "generic", "--a", "9", "--b", "1",
        "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"epsilon\":\"21/5\",\"approx\":4.200000,\"witness\":{\"name\":\"C_2\",\"class\":[12,1],\"mult\":5},\"regime\":\"C_n n=2\"}\n"
    );
}

#[test]
fn compute_at_x0_of_unstable_surface() {
    let o = run(&["compute", "--surface", "unstable:g=1,e=3", "--stratum", "X0", "--a", "2", "--b", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("{\"epsilon\":\"1\","), "{out}");
    assert!(out.contains("\"name\":\"X0\""), "{out}");
}

#[test]
fn negative_b_in_both_spellings() {
    let base = ["compute", "--surface", "ell-Sm1", "--stratum", "Tk=4", "--a", "6"];
    let spaced = run(&[&base[..], &["--b", "-1"]].concat());
    let joined = run(&[&base[..], &["--b=-1"]].concat());
    assert_eq!(spaced.status.code(), Some(0), "{}", stderr(&spaced));
    assert_eq!(stdout(&spaced), stdout(&joined));
    assert!(stdout(&spaced).starts_with("{\"epsilon\":\"14/3\","));
}

#[test]
fn decimals_follow_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_seshadri"))
        .args(["compute", "--surface", "ell-Sm1", "--stratum", "notT", "--a", "6", "--b", "-1"])
        .env("SESHADRI_DECIMALS", "3")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("{\"epsilon\":\"240/49\",\"approx\":4.898,"));
    let bad = Command::new(env!("CARGO_BIN_EXE_seshadri"))
        .args(["compute", "--surface", "ell-Sm1", "--stratum", "notT", "--a", "6", "--b", "-1"])
        .env("SESHADRI_DECIMALS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("SESHADRI_DECIMALS"));
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let cases: [(&[&str], &str); 5] = [
        (&["compute", "--surface", "ell-S9", "--stratum", "generic", "--a", "1", "--b", "1"], "--surface"),
        (&["compute", "--surface", "ell-dec:torsion=1", "--stratum", "generic", "--a", "1", "--b", "1"], "--surface"),
        (&["compute", "--surface", "ell-Sm1", "--stratum", "X0", "--a", "1", "--b", "1"], "--stratum"),
        (&["compute", "--surface", "product:g=1", "--stratum", "generic", "--a", "x", "--b", "1"], "--a"),
        (&["compute", "--surface", "product:g=1", "--stratum", "generic", "--a", "1", "--b", "-3"], "--a/--b"),
    ];
    for (args, flag) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn product_scan_is_min_of_a_and_b() {
    let o = run(&["scan", "--surface", "product:g=1", "--stratum", "generic", "--a", "0..2", "--b", "0..2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("a,b,nef,epsilon_exact,epsilon_approx,sqrtA2_exact,witness,regime"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 9);
    for r in &rows {
        let (a, b): (i64, i64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        assert_eq!(r[2], "true");
        assert_eq!(r[3], a.min(b).to_string());
    }
}

#[test]
fn scan_marks_classes_outside_the_nef_cone() {
    let o = run(&["scan", "--surface", "unstable:g=1,e=1", "--stratum", "generic", "--a", "2", "--b", "1..2"]);
    let out = stdout(&o);
    assert!(out.contains("2,1,false,,,,,not-nef\n"), "{out}");
    // a = b on e = 1: the fibre value a equals sqrt(A^2) = a
    assert!(out.contains("2,2,true,2,2.000000,2,f,fibre\n"), "{out}");
}

#[test]
fn scan_shows_regime_changes_along_a_ray() {
    let o = run(&["scan", "--surface", "ell-Sm1", "--stratum", "notT", "--a", "2..10", "--b", "-1", "--format", "json"]);
    let out = stdout(&o);
    for n in 1..=9 {
        assert!(out.contains(&format!("\"regime\":\"Cp_n n={n}\"")), "{out}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--surface", "ell-dec:torsion=5", "--stratum", "generic", "--a", "0..12", "--b", "-3..12", "--format", "json"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn catalog_lists_influence_areas() {
    let o = run(&["catalog", "--surface", "ell-Sm1", "--stratum", "Tk=5", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "name,a,b,mult,influence\nf,0,1,1,\"[0, 1)\"\nBp_5,5,-1,4,\"(1, 5/3)\"\nCp_1,4,-2,1,\"(2, inf)\"\nCp_2,12,-4,7,\"(3/2, 2)\"\n"
    );
}

#[test]
fn transform_subcommands() {
    let o = run(&["transform", "curve", "--a", "12", "--b", "1", "--mult", "5"]);
    assert_eq!(
        stdout(&o),
        "{\"class\":[12,1],\"mult\":5,\"image\":[12,-4],\"image_mult\":7,\"defect\":-1,\"image_defect\":-1}\n"
    );
    let o = run(&["transform", "surface", "--stratum", "notT"]);
    assert!(stdout(&o).contains("\"image\":\"ell-dec:nontorsion\""));
    let o = run(&["transform", "lambda", "--lambda", "3/2"]);
    assert_eq!(stdout(&o), "{\"lambda\":\"3/2\",\"image\":\"3\"}\n");
    assert_eq!(run(&["transform", "lambda", "--lambda", "1"]).status.code(), Some(2));
}

#[test]
fn near_max_reports_exact_pair() {
    let o = run(&["near-max", "--n", "5"]);
    let out = stdout(&o);
    assert!(out.contains("\"epsilon\":\"15/4\""), "{out}");
    assert!(out.contains("\"sqrtA2\":\"sqrt(15)\""), "{out}");
    assert_eq!(run(&["near-max", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "--suite", "transform", "--kmax", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"passed\":true"));
    let o = run(&["verify", "--suite", "coverage", "--lmax", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--suite", "catalog-min", "--grid", "12"]);
    assert_eq!(o.status.code(), Some(0));
    // without the truncated family tail S_{-1} has an uncovered gap
    let o = run(&["verify", "--suite", "coverage", "--no-tail"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(1, 26/25)"));
    assert_eq!(run(&["verify", "--suite", "everything"]).status.code(), Some(2));
}
