use std::io::Write;
use std::process::{Command, Output, Stdio};

use hcm_core::formats::parse_facets;
use hcm_core::Face;

fn hcm(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hcm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = hcm(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    ok(&full, "")
}

const PATH3: &str = "n 3\n1 2\n2 3\n";

#[test]
fn cycle_is_exactly_two_cm() {
    assert_eq!(ok(&["lcm", "--field", "q", "--max"], &gen(&["cycle", "-m", "4"])), "2\n");
    assert_eq!(ok(&["lcm", "--l", "3"], &gen(&["cycle", "-m", "4"])), "false\n");
}

#[test]
fn projective_plane_depends_on_the_field() {
    let rp2 = gen(&["rp2"]);
    assert_eq!(ok(&["cm", "--field", "p:2"], &rp2), "false\n");
    assert_eq!(ok(&["cm", "--field", "q"], &rp2), "true\n");
    assert_eq!(ok(&["cm", "--field", "p:3"], &rp2), "true\n");
}

#[test]
fn glued_simplices_are_cm_but_not_two_cm() {
    let p = gen(&["glued", "-d", "2", "-m", "2"]);
    assert_eq!(ok(&["poset-lcm", "--l", "2", "--field", "q"], &p), "false\n");
    assert_eq!(ok(&["poset-cm"], &p), "true\n");
    assert_eq!(ok(&["poset-lcm", "--max"], &p), "1\n");
}

#[test]
fn boundary_of_tetrahedron() {
    let s = gen(&["boundary-simplex", "-d", "3"]);
    assert_eq!(ok(&["lcm", "--max"], &s), "2\n");
    let k4 = ok(&["skeleton", "-i", "1"], &s);
    assert_eq!(ok(&["lcm", "--max"], &k4), "3\n");
}

#[test]
fn betti_tables() {
    let c4 = gen(&["cycle", "-m", "4"]);
    assert_eq!(ok(&["betti"], &c4), "i\tF\tbeta\n0\t-\t1\n1\t1,3\t1\n1\t2,4\t1\n2\t1,2,3,4\t1\n");
    assert_eq!(
        ok(&["betti", "--canonical"], &c4),
        "i\tF\tbeta\n0\t-\t1\n1\t1,3\t1\n1\t2,4\t1\n2\t1,2,3,4\t1\n"
    );
    let canonical = ok(&["betti", "--canonical"], PATH3);
    assert!(canonical.contains("0\t2\t1\n"), "{canonical}");
}

#[test]
fn canonical_table_requires_cm() {
    let out = hcm(&["betti", "--canonical"], "n 4\n1 2\n3 4\n");
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Cohen-Macaulay"));
}

#[test]
fn module_input() {
    let p = gen(&["glued", "-d", "1", "-m", "2"]);
    let m = ok(&["poset-module"], &p);
    assert!(m.starts_with("n 2\ncomp - 1\n"), "{m}");
    assert_eq!(ok(&["betti", "--module"], &m), "i\tF\tbeta\n0\t-\t1\n0\t1,2\t1\n");
}

#[test]
fn skeleton_and_restrict_round_trip() {
    let rp2_text = gen(&["rp2"]);
    let rp2 = parse_facets(&rp2_text).unwrap();
    let skel = parse_facets(&ok(&["skeleton", "-i", "1"], &rp2_text)).unwrap();
    assert_eq!(skel, rp2.skeleton(1));
    let kept = parse_facets(&ok(&["restrict", "--keep", "1,2,3,4"], &rp2_text)).unwrap();
    assert_eq!(kept, rp2.restrict_keep_labels(Face::from_vertices([1, 2, 3, 4])));
    let dropped = parse_facets(&ok(&["restrict", "--drop", "5,6"], &rp2_text)).unwrap();
    assert_eq!(dropped, kept);
    assert_eq!(ok(&["skeleton", "-i", "-1"], PATH3), "n 3\n");
}

#[test]
fn reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.txt");
    std::fs::write(&path, PATH3).unwrap();
    assert_eq!(ok(&["cm", path.to_str().unwrap()], ""), "true\n");
    assert_eq!(ok(&["lcm", "--max", path.to_str().unwrap()], ""), "1\n");
    let missing = hcm(&["cm", dir.path().join("nope").to_str().unwrap()], "");
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    assert_eq!(hcm(&["cm"], "n 2\n1 x\n").status.code(), Some(3));
    assert_eq!(hcm(&["cm", "--field", "p:4"], PATH3).status.code(), Some(2));
    assert_eq!(hcm(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(hcm(&["lcm"], PATH3).status.code(), Some(2));
    assert_eq!(hcm(&["cm"], "n 2\nvoid\n").status.code(), Some(4));
    assert_eq!(
        hcm(&["poset-cm"], "elements b a\nbottom b\ncover a b\n").status.code(),
        Some(3)
    );
    assert_eq!(hcm(&["restrict", "--keep", "9"], PATH3).status.code(), Some(3));
    assert_eq!(hcm(&["verify", "thm25", "--n", "6"], "").status.code(), Some(4));
    assert_eq!(hcm(&["verify", "nope"], "").status.code(), Some(2));
    // a false verdict is not an error
    assert_eq!(hcm(&["cm"], "n 4\n1 2\n3 4\n").status.code(), Some(0));
}

#[test]
fn verify_reports_are_reproducible_across_job_counts() {
    let args = ["verify", "thm25", "--n", "3", "--random-complexes", "2", "--random-posets", "4"];
    let one = ok(&[&["--jobs", "1"][..], &args[..]].concat(), "");
    let many = ok(&[&["--jobs", "4"][..], &args[..]].concat(), "");
    assert_eq!(one, many);
    assert!(one.ends_with("failures=0\tPASS\n"), "{one}");
    for sweep in ["thm12", "thm27", "thm44", "remark45", "oracle", "route", "cor26", "omega"] {
        let out = ok(&["verify", sweep, "--n", "3", "--random-complexes", "1", "--random-posets", "3"], "");
        assert!(out.starts_with(&format!("summary\t{sweep}\t")), "{out}");
    }
}
