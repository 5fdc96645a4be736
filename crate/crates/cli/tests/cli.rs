use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrd-spectra"))
        .args(args)
        .env_remove("LRD_SPECTRA_DEFAULTS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn models_list_names_every_catalog_entry() {
    let o = run(&["models", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for id in [
        "exp_gamma",
        "truncated_quadratic",
        "cauchy_bessel",
        "linnik",
        "piecewise_oscillatory",
        "sqrt_oscillatory",
        "or_construction",
        "directional_exp",
        "directional_truncated",
    ] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
}

#[test]
fn eval_writes_csv_with_twelve_digits() {
    let o = run(&["eval", "--model", "cauchy_bessel", "--quantity", "cov", "--grid", "lin:0:2:3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "point,value");
    // B(r) = (1 + r^2)^{-2}
    assert_eq!(lines[2], "1.00000000000e0,2.50000000000e-1");
    assert_eq!(lines[3], "2.00000000000e0,4.00000000000e-2");
}

#[test]
fn closed_and_transform_routes_agree() {
    let args = |m: &'static str| ["eval", "--model", "cauchy_bessel", "--quantity", "cov", "--grid", "lin:0.5:5:10", "--method", m];
    let a = stdout(&run(&args("closed")));
    let b = stdout(&run(&args("transform")));
    for (x, y) in a.lines().zip(b.lines()).skip(1) {
        let v = |s: &str| s.split(',').nth(1).unwrap().parse::<f64>().unwrap();
        assert!((v(x) - v(y)).abs() < 1e-8, "{x} vs {y}");
    }
}

#[test]
fn flagged_points_exit_three_and_keep_the_output() {
    let o = run(&["eval", "--model", "cauchy_bessel", "--quantity", "g", "--grid", "lin:0:1:2"]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.starts_with("point,value,flag"));
    assert!(text.lines().nth(1).unwrap().ends_with(",non-finite"));
    assert!(text.lines().nth(2).unwrap().ends_with(','));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["eval", "--model", "nope", "--quantity", "cov", "--grid", "lin:0:2:3"][..],
        &["eval", "--model", "linnik", "--quantity", "cov", "--grid", "log:0:2:3"],
        &["verify", "--model", "cauchy_bessel", "--theorem", "T11"],
        &["figure", "zz"],
        &["eval", "--model", "linnik", "--param", "kappa=-1", "--quantity", "cov", "--grid", "lin:0:2:3"],
        &["bogus"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_reports_a_verdict_and_the_trace() {
    let o = run(&["verify", "--model", "cauchy_bessel", "--theorem", "T2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: CONFIRMED"));
    assert!(text.contains("scale,side_a,side_b,ratio"));
}

#[test]
fn monte_carlo_is_seeded() {
    let args = [
        "eval", "--model", "exp_gamma", "--quantity", "b_n", "--grid", "lin:1:2:2", "--method", "monte-carlo",
        "--samples", "20000", "--seed", "7",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&run(&args)));
    assert!(stdout(&a).starts_with("point,value,std_error"));
}

#[test]
fn figure_list_and_single_figure() {
    let o = run(&["figure", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 35);
    let o = run(&["figure", "9b"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("r,B_theta_0,B_theta_pi_2\n"));
}

#[test]
fn defaults_file_can_be_overridden() {
    let dir = std::env::temp_dir().join(format!("lrd-spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "version = 2\ntol = 0.01\nseed = 1\nsamples = 10000\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lrd-spectra"))
        .args(["models", "list"])
        .env("LRD_SPECTRA_DEFAULTS", &bad)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
