use std::path::PathBuf;
use std::process::{Command, Output};

fn galtan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galtan")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("galtan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn data(rel: &str) -> String {
    format!("{}/data/{rel}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn lattice_commands_report_sizes() {
    let o = galtan(&["lattice", "tensor", "power:2", "power:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "tensor: yes, 4 x 4 -> 16 elements\nproduct iso: yes, l(2 x 2) has 16 elements\n");
    let o = galtan(&["--format", "json-lines", "lattice", "tensor", "power:1", "chain:3"]);
    assert_eq!(stdout(&o), "{\"check\":\"tensor\",\"detail\":\"2 x 3 -> 3 elements\",\"passed\":true}\n");
}

#[test]
fn free_frame_sizes() {
    for (n, size) in [(0, 2), (1, 3), (2, 6), (3, 20)] {
        let o = galtan(&["frame", "free", &n.to_string()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(&format!("{size} elements")), "{}", stdout(&o));
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &["tannaka", "build", "--site", "z2"][..],
        &["--seed", "7", "verify", "--suite", "random"],
        &["--format", "json-lines", "verify", "--suite", "negative"],
    ] {
        let (a, b) = (galtan(args), galtan(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_lines_carry_every_check() {
    let o = galtan(&["--format", "json-lines", "tannaka", "iso", "--site", "z2"]);
    let text = stdout(&o);
    assert!(!text.is_empty());
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["check"].is_string() && v["passed"].is_boolean() && v["detail"].is_string());
        assert!(v.get("ms").is_none());
    }
    let o = galtan(&["--format", "json-lines", "--timings", "tannaka", "iso", "--site", "z2"]);
    let first: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert!(first["ms"].is_u64());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(galtan(&["verify", "--suite", "random"]).status.code(), Some(2));
    assert_eq!(galtan(&["frame"]).status.code(), Some(2));
    assert_eq!(galtan(&["lattice", "info", "power:x"]).status.code(), Some(2));
}

#[test]
fn unknown_names_exit_3() {
    assert_eq!(galtan(&["tannaka", "build", "--site", "nowhere"]).status.code(), Some(3));
    assert_eq!(galtan(&["galois", "build", "--group", "Q8"]).status.code(), Some(3));
    assert_eq!(galtan(&["lattice", "info", "bogus:3"]).status.code(), Some(3));
    let p = scratch("unknown.inst", "action X G : 0\n");
    assert_eq!(galtan(&["verify", "--instance", p.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn malformed_instance_exits_4_with_line() {
    let p = scratch("bad.inst", "# fine\ngroup G cyclic 2\ngroup H wobbly 3\n");
    let o = galtan(&["verify", "--instance", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn budget_exhaustion_exits_5() {
    assert_eq!(galtan(&["--budget", "10", "frame", "aut", "2"]).status.code(), Some(5));
}

#[test]
fn bundled_sites_verify() {
    for site in ["z2", "z3", "terminal", "arrow"] {
        let o = galtan(&["verify", "--instance", &data(&format!("sites/{site}.site"))]);
        assert_eq!(o.status.code(), Some(0), "{site}: {}", stdout(&o));
    }
}

#[test]
fn lifting_fails_on_the_arrow_site_only() {
    assert_eq!(galtan(&["tannaka", "lift", "--site", "z2"]).status.code(), Some(0));
    let o = galtan(&["tannaka", "lift", "--site", "arrow"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.contains(": no, ")));
}

#[test]
fn bundled_derivations_replay() {
    let o = galtan(&["elevator", "check", "comodule_to_diamond", "diamond_to_comodule", "diamond_from_spans"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.contains(": yes")));
}

#[test]
fn corrupted_derivation_reports_the_failing_step() {
    let text = std::fs::read_to_string(data("elevator/diamond_to_comodule.elv")).unwrap();
    let bad = text.replacen("-- ascensor@0,0 down", "-- ascensor@0,1 down", 1);
    assert_ne!(bad, text);
    let p = scratch("bad.elv", &bad);
    let o = galtan(&["elevator", "check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("step 1"), "{}", stdout(&o));
}
