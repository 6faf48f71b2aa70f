use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const HEISENBERG: &str = "p=3 n=3 lambda=1,1,1 side=ring\n1 2 3 1\n2 1 3 2\n";

fn plie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plie")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn check_verdicts() {
    let d = tempfile::tempdir().unwrap();
    let h = write(d.path(), "h.txt", HEISENBERG);
    let o = plie(&["check", &h]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "side ring\nshape 1,1,1\nalternating yes\njacobi yes\nnilpotent yes (class 2)\n");

    let bad = write(d.path(), "bad.txt", "p=3 lambda=1,1 side=ring\n1 1 1 1\n");
    let o = plie(&["check", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("alternating no"));

    let sq = write(d.path(), "sq.txt", "p=3 lambda=2,2 side=algebra\n1 2 2 1\n2 1 2 -1\n");
    let o = plie(&["check", &sq]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("jacobi yes (λ_t ≥ 2)"));
}

#[test]
fn parse_errors_exit_2_with_line() {
    let d = tempfile::tempdir().unwrap();
    let f = write(d.path(), "f.txt", "p=3 lambda=1,1 side=ring\n1 2 2\n");
    let o = plie(&["check", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    assert_eq!(plie(&["orbits", "--p", "4", "--partition", "1"]).status.code(), Some(2));
    assert_eq!(plie(&["orbits", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn correspond_round_trip() {
    let d = tempfile::tempdir().unwrap();
    let h = write(d.path(), "h.txt", HEISENBERG);
    let a = d.path().join("a.txt");
    let back = d.path().join("back.txt");
    assert!(plie(&["correspond", &h, "-o", a.to_str().unwrap()]).status.success());
    assert_eq!(fs::read_to_string(&a).unwrap(), HEISENBERG.replace("side=ring", "side=algebra"));
    assert!(plie(&["correspond", a.to_str().unwrap(), "-o", back.to_str().unwrap()]).status.success());
    assert_eq!(fs::read(&back).unwrap(), HEISENBERG.as_bytes());

    let z = write(d.path(), "z.txt", "p=5 n=2 lambda=2 side=ring\n");
    assert_eq!(stdout(&plie(&["correspond", &z])), "p=5 n=2 lambda=2 side=algebra\n");
}

#[test]
fn group_invariants() {
    let d = tempfile::tempdir().unwrap();
    let h = write(d.path(), "h.txt", HEISENBERG);
    let table = d.path().join("g.txt");
    let o = plie(&["group", &h, "-o", table.to_str().unwrap()]);
    assert_eq!(stdout(&o), "order 27\nexponent 3\ntype 1,1,1\nderived 3\nclass 2\n");
    assert!(fs::read_to_string(&table).unwrap().starts_with("order=27 p=3\n0 1 2 "));

    let c = write(d.path(), "c.txt", "p=3 lambda=3 side=ring\n");
    assert_eq!(stdout(&plie(&["group", &c])), "order 27\nexponent 27\ntype 3\nderived 1\nclass 1\n");

    let na = write(d.path(), "na.txt", "p=3 lambda=2,1 side=ring\n1 2 1 1\n2 1 1 2\n");
    let out = stdout(&plie(&["group", &na]));
    assert!(out.contains("exponent 9\ntype 2,1\n"), "{out}");

    let f = write(d.path(), "f.txt", "p=2 lambda=1,1,1 side=ring\n1 2 3 1\n2 1 3 1\n");
    let o = plie(&["group", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("hypothesis"), "{}", stderr(&o));
}

#[test]
fn orbits_counts_and_files() {
    for (shape, count) in [("1,1,1", 2), ("2,1", 2), ("3", 1)] {
        let o = plie(&["orbits", "--p", "3", "--partition", shape, "--lie", "--nilpotent"]);
        assert!(stdout(&o).contains(&format!("\norbits={count}\n")), "{}", stdout(&o));
    }
    let d = tempfile::tempdir().unwrap();
    let out = d.path().join("reps");
    let o = plie(&["orbits", "--p", "3", "--partition", "2,1", "--lie", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(out.join("summary.txt")).unwrap(), stdout(&o));
    for k in 0..3 {
        let rep = out.join(format!("rep_{k:03}.txt"));
        assert!(plie(&["check", rep.to_str().unwrap(), "--lie"]).status.success());
    }
}

#[test]
fn budget_exit_3() {
    let o = plie(&["orbits", "--p", "3", "--partition", "1,1,1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("7625597484987"), "{}", stderr(&o));
    let o = plie(&["--gl-cap", "10", "orbits", "--p", "3", "--partition", "1,1", "--lie"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn count_reports() {
    let o = plie(&["count", "--p", "3", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "count p=3 n=3 transversal=brute (complete (exhaustive))\n\
         3 → 1  [orbits=1 ok]\n\
         2,1 → 2  [orbits=2 ok]\n\
         1,1,1 → 2  [orbits=2 ok]\n\
         total 5\n"
    );
    assert!(stdout(&plie(&["count", "--p", "3", "--n", "2"])).ends_with("total 2\n"));
    let o = plie(&["count", "--p", "2", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("requires p ≥ n"));
}

#[test]
fn count_with_transversal_file() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "a.txt", "p=3 n=3 lambda=1,1,1 side=ring\n");
    write(d.path(), "h.txt", HEISENBERG);
    write(d.path(), "manifest.txt", "p=3 n=3\nentry a.txt\nentry h.txt\n");
    let dir = d.path().to_str().unwrap();
    let o = plie(&["count", "--p", "3", "--n", "3", "--transversal", dir, "--check-completeness"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("complete (exhaustive)") && stdout(&o).ends_with("total 5\n"));

    write(d.path(), "manifest.txt", "p=3 n=3\nentry a.txt\n");
    let o = plie(&["count", "--p", "3", "--n", "3", "--transversal", dir, "--check-completeness"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("INCOMPLETE"));
    assert_eq!(plie(&["count", "--p", "5", "--n", "3", "--transversal", dir]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = plie(&["verify", "--p", "2", "--n", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("all checks passed\n"));
    let o = plie(&["verify", "--p", "3", "--partition", "2,1"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("[FAIL]"));
}

#[test]
fn verify_corrupted_tensor() {
    let d = tempfile::tempdir().unwrap();
    let f = write(
        d.path(),
        "bad.txt",
        "p=3 lambda=1,1,1 side=ring\n1 2 1 1\n2 1 1 2\n2 3 2 1\n3 2 2 2\n1 3 3 1\n3 1 3 2\n",
    );
    let o = plie(&["verify", "--tensor", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] Jacobi transfer: witness"), "{}", stdout(&o));
    let h = write(d.path(), "h.txt", HEISENBERG);
    assert!(plie(&["verify", "--tensor", &h]).status.success());
}

#[test]
fn bch_output() {
    let o = plie(&["bch", "--class", "3"]);
    assert_eq!(stdout(&o), "class=3 terms=5\n1 x\n1 y\n1/2 [x,y]\n1/12 [x,[x,y]]\n-1/12 [y,[x,y]]\n");
    let o = plie(&["bch", "--class", "2", "--modulus", "9"]);
    assert!(stdout(&o).contains("1/2 [x,y]  ≡ 5\n"));
    assert_eq!(plie(&["bch", "--class", "3", "--modulus", "6"]).status.code(), Some(2));
}

#[test]
fn output_independent_of_workers() {
    let runs = [
        vec!["orbits", "--p", "3", "--partition", "2,1", "--lie", "--nilpotent"],
        vec!["count", "--p", "3", "--n", "3"],
        vec!["verify", "--p", "3", "--partition", "2,1"],
    ];
    for args in runs {
        let one = plie(&[&["--workers", "1"], args.as_slice()].concat());
        let four = plie(&[&["--workers", "4"], args.as_slice()].concat());
        assert!(one.status.success());
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}
