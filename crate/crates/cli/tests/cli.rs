use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiberface")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn version_lists_formats() {
    let v = stdout(&["--version"]);
    assert!(v.starts_with("fiberface "));
    for f in ["cert v1", "ball v1", "surface v1", "tower tsv"] {
        assert!(v.contains(f), "{f}");
    }
}

#[test]
fn tower_second_level() {
    let out = stdout(&["tower", "--n", "2"]);
    let row: Vec<&str> = out.lines().nth(2).unwrap().split('\t').collect();
    assert_eq!(&row[..4], &["2", "13,19", "78400", "16"]);
}

#[test]
fn primes_begin() {
    assert_eq!(stdout(&["primes", "--limit", "80"]), "13\n19\n31\n61\n73\n");
}

#[test]
fn alex_on_n_cover() {
    let out = stdout(&["alex", &fixture("b_orbifold.pres"), "--table", &fixture("n_cover.table")]);
    assert!(out.contains("homology Z + Z/4 + Z/8"));
    assert!(out.contains("delta t^4 + 30*t^2 + 1"));
    assert_eq!(out.matches("obstruction pass").count(), 2);
}

#[test]
fn alex_on_m_cover() {
    let out = stdout(&["alex", &fixture("b_orbifold.pres"), "--table", &fixture("m_cover.table")]);
    assert!(out.contains("homology Z^3 + Z/2 + Z/2 + Z/14 + Z/14 + Z/14 + Z/14"));
    assert_eq!(out.matches("coefficient 65536 obstruction fail").count(), 2);
    assert_eq!(out.matches("coefficient 1 obstruction pass").count(), 4);
}

#[test]
fn alex_on_free_group_reports_zero_ideal() {
    let out = stdout(&["alex", &fixture("free2.pres")]);
    assert!(out.contains("delta 0"));
    assert!(out.contains("zero ideal"));
}

#[test]
fn covers_of_base_group() {
    let out = stdout(&["covers", &fixture("b_orbifold.pres"), "--regular", "2,2"]);
    assert!(out.starts_with("covers 1\ncover 0 homology Z + Z/4 + Z/4\n"));
}

#[test]
fn fiber_sum_class_on_first_cover() {
    let out = stdout(&["fiber", "--tri", "W1", "--class", "1,1", "--seed", "0"]);
    assert!(out.starts_with("cert v1\n"));
    assert!(out.contains("\nchi -2\n"));
    assert!(out.contains("\nverdict FIBERS\n"));
}

#[test]
fn whitehead_first_cover() {
    let out = stdout(&["whitehead", "--n", "1"]);
    assert!(out.contains("ball cross-polytope"));
    assert!(out.contains("faces 4"));
    assert_eq!(out.matches("FIBERS chi -2").count(), 4);
    assert!(out.contains("fibered_face_pairs 2"));
}

#[test]
fn reports_are_deterministic_and_written_to_out() {
    let args = ["norm-ball", "--tri", "W1", "--class", "1,-1", "--budget", "30", "--workers", "2", "--seed", "5"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let dir = std::env::temp_dir().join(format!("fiberface-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bound.txt");
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_string_lossy().into_owned();
    with_out.extend(["--out", &p]);
    assert_eq!(stdout(&with_out), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn input_errors_exit_one() {
    for args in [
        vec!["alex".to_string(), "/nonexistent/file.pres".to_string()],
        vec!["fiber".into(), "--tri".into(), "W1".into(), "--class".into(), "1".into()],
        vec!["alex".into(), fixture("n_cover.table")],
        vec!["tower".into(), "--n".into(), "0".into()],
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_fiberface")).args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}
