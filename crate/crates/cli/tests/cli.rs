use std::process::{Command, Output};

fn fmzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmzv"))
        .args(args)
        .env_remove("FMZV_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_harmonic_product() {
    let o = fmzv(&["eval", "hp(z1, z1)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "yx + 2*yy");
}

#[test]
fn eval_error_carries_location() {
    let o = fmzv(&["eval", "RxInv(y)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:1"), "{}", stderr(&o));
}

#[test]
fn eval_syntax_error_exits_2() {
    let o = fmzv(&["eval", "hp(z1,"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fmzv_one_vanishes_mod_p() {
    let o = fmzv(&["fmzv", "1", "--primes", "5..11", "--depth", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let residues: Vec<&str> = out
        .lines()
        .filter_map(|l| l.trim().strip_prefix("p="))
        .collect();
    assert_eq!(residues, ["5: 0", "7: 0", "11: 0"]);
}

#[test]
fn records_are_deterministic() {
    let args = ["table", "--max-weight", "4", "--primes", "5..60", "--format", "records"];
    let a = fmzv(&args);
    let sequential = [&args[..], &["--jobs", "1"]].concat();
    let b = fmzv(&sequential);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains(r#"{"k":[1,2],"p":7,"N":2,"residue":"17"}"#));
}

#[test]
fn verify_stuffle_passes() {
    let o = fmzv(&["verify", "stuffle", "--w1", "z1", "--w2", "z1", "--primes", "5..199", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_main_passes() {
    let o = fmzv(&["verify", "main", "--m", "1", "--w", "z2", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_csv_has_header() {
    let o = fmzv(&["verify", "stuffle", "--w1", "z1", "--w2", "z1", "--primes", "5..50", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().next().unwrap().contains("status"));
}

#[test]
fn unknown_identity_lists_names() {
    let o = fmzv(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    for name in ["derivation", "main", "hoffman", "stuffle", "jarossay-seki", "ikz", "series-chain"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn bad_prime_range_exits_2() {
    assert_eq!(fmzv(&["fmzv", "1", "--primes", "50..10"]).status.code(), Some(2));
    assert_eq!(fmzv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let path = path.to_str().unwrap();
    let o = fmzv(&["fmzv", "1,2", "--primes", "5..30", "--cache", path]);
    assert!(o.status.success());
    let stats = stdout(&fmzv(&["cache", "stats", "--cache", path]));
    assert!(stats.contains("entries: 8"), "{stats}");
    let audit = fmzv(&["cache", "audit", "--cache", path]);
    assert!(audit.status.success(), "{}", stdout(&audit));
    assert!(fmzv(&["cache", "clear", "--cache", path]).status.success());
    assert!(stdout(&fmzv(&["cache", "stats", "--cache", path])).contains("entries: 0"));
    assert_eq!(fmzv(&["cache", "stats"]).status.code(), Some(2));
}
