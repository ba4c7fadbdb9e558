use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cycgraph(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cycgraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let input = stdin.unwrap_or("").to_string();
    let mut pipe = child.stdin.take().unwrap();
    std::thread::spawn(move || {
        let _ = pipe.write_all(input.as_bytes());
    });
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn build_certificate() {
    let o = cycgraph(&["build", "2", "--format", "certificate"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["vertices=10", "edges=20", "generator=(1,2,3,4)(5,6,7,8)(9,10)", "orbit_3=9,10"] {
        assert!(text.lines().any(|l| l == line), "missing {line}");
    }
}

#[test]
fn build_edgelist_is_one_based() {
    let o = cycgraph(&["build", "3", "--format", "edgelist"], None);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 36);
    assert!(text.lines().any(|l| l == "9 13"));
    assert!(!text.lines().any(|l| l.split(' ').any(|x| x == "0")));
}

#[test]
fn build_rejects_small_exponent() {
    let o = cycgraph(&["build", "1"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n >= 2"));
}

#[test]
fn build_variant_round_trips_through_aut() {
    let o = cycgraph(&["build", "2", "--variant", "33"], None);
    assert_eq!(o.status.code(), Some(0));
    let a = cycgraph(&["aut"], Some(&stdout(&o)));
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).starts_with("order="));
    let bad = cycgraph(&["build", "2", "--variant", "44"], None);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_full_small() {
    let o = cycgraph(&["verify", "2", "--full"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "PASS aut_order=4"));
    assert!(text.lines().any(|l| l == "PASS aut_cyclic=true"));
    assert!(text.lines().any(|l| l == "PASS aut_orbits=4,4,2"));
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    assert_eq!(text.lines().last(), Some("result=PASS"));
}

#[test]
fn verify_full_seven() {
    let o = cycgraph(&["verify", "7", "--full"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "PASS aut_order=128"));
    assert!(text.lines().any(|l| l == "PASS aut_orbits=128,4,2"));
}

#[test]
fn verify_structural_twelve_is_fast() {
    let start = std::time::Instant::now();
    let o = cycgraph(&["verify", "12"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(start.elapsed().as_secs_f64() < 1.0);
    assert!(stdout(&o).lines().any(|l| l == "PASS eccentricity_3=4101,4102"));
}

#[test]
fn verify_full_is_capped() {
    let o = cycgraph(&["verify", "9", "--full"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--allow-large"));
}

#[test]
fn aut_lines() {
    let g4 = stdout(&cycgraph(&["build", "2"], None));
    let o = cycgraph(&["aut"], Some(&format!("{g4}Bw\n")));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("order=4 cyclic=true orbits=4,4,2 "));
    assert!(lines[1].starts_with("order=6 cyclic=false "));
}

#[test]
fn aut_reports_bad_line() {
    let o = cycgraph(&["aut"], Some("!!\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1: invalid graph6"));
    let o = cycgraph(&["aut"], Some("Bw\n\nxx\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3: invalid graph6"));
}

#[test]
fn aut_from_file_and_size_cap() {
    let dir = std::env::temp_dir().join(format!("cycgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("in.g6");
    std::fs::write(&path, "Bw\n").unwrap();
    let o = cycgraph(&["aut", "--in", path.to_str().unwrap()], None);
    assert!(stdout(&o).starts_with("order=6"));
    let o = cycgraph(&["aut", "--in", path.to_str().unwrap(), "--max-vertices", "2"], None);
    assert_eq!(o.status.code(), Some(4));
    let o = cycgraph(&["aut", "--in", dir.join("missing").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn canon_is_relabelling_invariant() {
    let g = cycgraph::graph6::decode_str("DQc").unwrap();
    let h = cycgraph::graph6::encode_string(&g.relabel(&[3, 0, 4, 1, 2]));
    assert_ne!(h, "DQc");
    let o = cycgraph(&["canon"], Some(&format!("DQc\n{h}\n")));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], lines[1]);
}

#[test]
fn enumerate_counts() {
    assert_eq!(stdout(&cycgraph(&["enumerate", "4"], None)).lines().count(), 11);
    assert_eq!(stdout(&cycgraph(&["enumerate", "6", "--count"], None)), "n=6 count=156\n");
    assert_eq!(
        stdout(&cycgraph(&["enumerate", "3", "--by-order"], None)),
        "order=2 count=2\norder=6 count=2\n"
    );
    assert_eq!(cycgraph(&["enumerate", "11"], None).status.code(), Some(4));
}

#[test]
fn search_cyclic_four_up_to_nine() {
    let o = cycgraph(&["search", "--order", "4", "--cyclic", "--nmax", "9"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().all(|l| l.contains(" hits=0 ")));
}

#[test]
fn search_cyclic_three_writes_hits() {
    let dir = std::env::temp_dir().join(format!("cycgraph-hits-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let hits = dir.join("hits.g6");
    let o = cycgraph(
        &["search", "--order", "3", "--cyclic", "--nmax", "9", "--jobs", "2", "--hits-out", hits.to_str().unwrap()],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first = text.lines().find(|l| !l.contains(" hits=0 ")).unwrap();
    assert!(first.starts_with("n=9 "));
    let written = std::fs::read_to_string(&hits).unwrap();
    let fixture = include_str!("../data/delta9.g6");
    let delta = fixture.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(written.lines().any(|l| l == delta));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn search_output_is_deterministic_across_jobs() {
    let args = ["search", "--order", "2", "--nmax", "8"];
    let one = stdout(&cycgraph(&args, None));
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "3"]);
    let three = stdout(&cycgraph(&with_jobs, None));
    let sorted = |s: &str| {
        let mut v: Vec<String> = s.lines().map(String::from).collect();
        v.sort();
        v
    };
    assert_eq!(sorted(&one), sorted(&three));
}

#[test]
fn search_cap() {
    let o = cycgraph(&["search", "--order", "4", "--cyclic", "--nmax", "11"], None);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn usage_errors() {
    assert_eq!(cycgraph(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(cycgraph(&["build", "2", "--bogus"], None).status.code(), Some(2));
    assert_eq!(cycgraph(&["build", "2", "--format", "dot"], None).status.code(), Some(2));
    assert_eq!(cycgraph(&[], None).status.code(), Some(2));
    let help = cycgraph(&["--help"], None);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("verify"));
}
