use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_cloning-restore");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn summary_average(csv: &str) -> f64 {
    csv.lines()
        .find_map(|l| l.strip_prefix("# average="))
        .expect("summary line")
        .parse()
        .unwrap()
}

fn column(csv: &str, idx: usize) -> Vec<f64> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn analytic_sweep_small_grid() {
    let o = run(&[
        "sweep",
        "--grid-alpha",
        "2",
        "--grid-phi",
        "2",
        "--mode",
        "analytic",
        "--out",
        "-",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha2,phi,f_exact,f_analytic");
    let rows: Vec<&str> = lines[1..]
        .iter()
        .copied()
        .filter(|l| !l.starts_with('#'))
        .collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert!(cols[0] == "0" || cols[0] == "1");
        assert_eq!(cols[3], "0.555555555556");
    }
    assert!(!text.contains('\r'));
}

#[test]
fn exact_sweep_reproduces_average_under_noise() {
    let o = run(&[
        "sweep",
        "--grid-alpha",
        "201",
        "--grid-phi",
        "201",
        "--mode",
        "exact",
        "--pbit",
        "0.25",
        "--pph",
        "0.4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let avg = summary_average(&stdout(&o));
    assert!((avg - 0.592593).abs() < 1e-3, "{avg}");
}

#[test]
fn baseline_sweep_average() {
    let o = run(&["sweep", "--mode", "baseline", "--grid-alpha", "201"]);
    assert_eq!(o.status.code(), Some(0));
    let avg = summary_average(&stdout(&o));
    assert!((avg - 0.666667).abs() < 1e-3, "{avg}");
}

#[test]
fn exact_and_mixed_columns_agree() {
    let common = [
        "--grid-alpha",
        "21",
        "--grid-phi",
        "16",
        "--pbit",
        "0.1",
        "--pph",
        "0.7",
    ];
    let exact = run(&[&["sweep", "--mode", "exact"][..], &common].concat());
    let mixed = run(&[&["sweep", "--mode", "mixed"][..], &common].concat());
    let (e, m) = (column(&stdout(&exact), 2), column(&stdout(&mixed), 2));
    assert_eq!(e.len(), 21 * 16);
    for (a, b) in e.iter().zip(&m) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn sweep_writes_file() {
    let dir = tempdir();
    let path = dir.join("surface.csv");
    let o = run(&[
        "sweep",
        "--grid-alpha",
        "3",
        "--grid-phi",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 12 + 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn mc_sweep_is_seeded() {
    let args = [
        "sweep",
        "--mode",
        "mc",
        "--grid-alpha",
        "3",
        "--grid-phi",
        "3",
        "--trials",
        "200",
        "--seed",
        "9",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("alpha2,phi,f_exact,f_analytic,f_mc,mc_stderr\n"));
}

#[test]
fn unwritable_output_is_usage_error() {
    let o = run(&[
        "sweep",
        "--grid-alpha",
        "2",
        "--grid-phi",
        "2",
        "--out",
        "/nonexistent-dir/x/out.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn invalid_flags_are_usage_errors() {
    for args in [
        &["sweep", "--pbit", "1.5"][..],
        &["sweep", "--grid-alpha", "0"],
        &["sweep", "--mode", "nonsense"],
        &["mc", "--alpha2", "2"],
        &["mc", "--alpha2", "0.5", "--trials", "0"],
        &["verify", "--tol", "-1"],
        &["frobnicate"],
        &[],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sweep"));
    assert!(!stdout(&o).contains("swapped"));
}

#[test]
fn mc_pole_state() {
    let o = run(&[
        "mc", "--alpha2", "1", "--phi", "0", "--pbit", "0", "--pph", "0", "--trials", "100000",
        "--seed", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("exact=0.555555555556"), "{text}");
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn mc_exception_point_reruns_identically() {
    let args = [
        "mc",
        "--alpha2",
        "0.5",
        "--phi",
        "1.5707963",
        "--trials",
        "100000",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let exact: f64 = stdout(&a)
        .lines()
        .find_map(|l| l.strip_prefix("exact="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((exact - 0.5).abs() < 1e-12);
}

#[test]
fn verify_passes_and_negative_controls_fail() {
    let ok = run(&["verify"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok)
        .lines()
        .filter(|l| l.contains("max_dev="))
        .all(|l| l.ends_with("PASS")));

    let tight = run(&["verify", "--tol", "1e-30"]);
    assert_eq!(tight.status.code(), Some(1));
    assert!(stdout(&tight).contains("FAIL"));

    let swapped = run(&["verify", "--swapped-correction"]);
    assert_eq!(swapped.status.code(), Some(1));
    let line = stdout(&swapped)
        .lines()
        .find(|l| l.starts_with("error branches mirror"))
        .unwrap()
        .to_string();
    assert!(line.ends_with("FAIL"), "{line}");
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("cloning-restore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
