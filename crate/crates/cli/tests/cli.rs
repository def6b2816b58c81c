use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn scluster(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scluster"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scluster_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_scluster"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_star_has_35_members_and_is_free() {
    let out = scluster(&["gen", "star", "--n", "8", "--k", "4", "--center", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 36);
    assert!(text.starts_with("8 4\n1 2 3 4\n"));
    let detect = scluster_stdin(&["detect", "--d", "3"], &text);
    assert_eq!(code(&detect), 0);
    assert_eq!(stdout(&detect), "NONE\n");
}

#[test]
fn gen_random_is_deterministic() {
    let args = [
        "gen", "random", "--n", "8", "--k", "4", "--size", "36", "--seed", "1",
    ];
    let a = stdout(&scluster(&args));
    assert_eq!(a, stdout(&scluster(&args)));
    assert_eq!(a.lines().count(), 37);
    assert_eq!(
        code(&scluster(&[
            "gen", "random", "--n", "8", "--k", "4", "--size", "71"
        ])),
        2
    );
}

#[test]
fn detect_triangle_prints_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "tri.txt", "# triangle\n4 2\n1 2\n2 3\n1 3\n");
    let out = scluster(&["detect", "--d", "2", "--witness", &f]);
    assert_eq!(code(&out), 1);
    assert_eq!(
        stdout(&out),
        "FOUND d=2 simplex=yes cluster=yes\n1 2\n1 3\n2 3\n"
    );
}

#[test]
fn detect_full_family_finds_witness() {
    let full = stdout(&scluster(&[
        "gen", "random", "--n", "8", "--k", "4", "--size", "70",
    ]));
    assert_eq!(code(&scluster_stdin(&["detect", "--d", "3"], &full)), 1);
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "4 2\n1 2\n2 2\n");
    let out = scluster(&["detect", "--d", "2", &bad]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(
        code(&scluster(&["detect", "--d", "2", "/nonexistent/file"])),
        2
    );
    assert_eq!(code(&scluster(&["frobnicate"])), 2);
    assert_eq!(code(&scluster(&["verify", "starred-count", &bad])), 2);
}

#[test]
fn verify_cycle_bound_exhaustive_5_2() {
    let out = scluster(&[
        "verify",
        "cycle-bound",
        "--exhaustive",
        "--n",
        "5",
        "--k",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("families\t1024\n"));
    assert!(text.contains("equality-cases\t6\n"));
    assert!(text.contains("dichotomy\tyes\n"));
}

#[test]
fn verify_cycle_bound_sweep_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.txt");
    let ck = ck.to_str().unwrap();
    let args = [
        "verify",
        "cycle-bound",
        "--exhaustive",
        "--n",
        "6",
        "--k",
        "2",
        "--checkpoint",
        ck,
    ];
    let first = scluster(&args);
    assert_eq!(code(&first), 0);
    assert!(Path::new(ck).exists());
    let second = scluster(&args);
    assert_eq!(code(&second), 0);
    assert!(stdout(&second).contains("resumed-from"));
    assert!(stdout(&second).contains("families\t32768\n"));
}

#[test]
fn verify_chain_on_star_is_all_equalities() {
    let dir = tempfile::tempdir().unwrap();
    let star = stdout(&scluster(&["gen", "star", "--n", "8", "--k", "4"]));
    let f = write(dir.path(), "star.txt", &star);
    let out = scluster(&["verify", "chain", "--d", "3", &f]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && l.contains("\tok"))
        .collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.split('\t').nth(4) == Some("=")));
    assert!(text.ends_with("verdict\tholds\n"));
}

#[test]
fn verify_chain_requires_d() {
    let star = stdout(&scluster(&["gen", "star", "--n", "8", "--k", "4"]));
    assert_eq!(code(&scluster_stdin(&["verify", "chain"], &star)), 2);
}

#[test]
fn verify_removability_checks_on_star() {
    let star = stdout(&scluster(&["gen", "star", "--n", "8", "--k", "4"]));
    let l5 = scluster_stdin(&["verify", "removability"], &star);
    assert_eq!(code(&l5), 0);
    assert!(stdout(&l5).contains("equality\tyes"));
    let l6 = scluster_stdin(&["verify", "starred-count", "--d", "3"], &star);
    assert_eq!(code(&l6), 0);
    assert!(stdout(&l6).contains("equality\tyes"));
}

#[test]
fn verify_cycles_exhaustive_and_sampled() {
    let fam = stdout(&scluster(&[
        "gen", "random", "--n", "7", "--k", "3", "--size", "12", "--seed", "3",
    ]));
    let out = scluster_stdin(&["verify", "cycles", "--exhaustive"], &fam);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("permutations\t720\n"));
    // 12 · 3! · 4! = 1728
    assert!(text.contains("arc-total\t1728\nexpected\t1728\n"));
    let sampled = scluster_stdin(
        &["verify", "cycles", "--samples", "200", "--seed", "9"],
        &fam,
    );
    assert_eq!(code(&sampled), 0);
    assert!(stdout(&sampled).contains("arc-violations\t0"));
}

#[test]
fn chain_refuses_family_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let full = stdout(&scluster(&[
        "gen", "random", "--n", "8", "--k", "4", "--size", "70",
    ]));
    let f = write(dir.path(), "full.txt", &full);
    assert_eq!(code(&scluster(&["verify", "chain", "--d", "3", &f])), 2);
    assert!(!dir.path().join("full.txt.counterexample").exists());
    assert_eq!(fs::read_to_string(&f).unwrap(), full);
}

#[test]
fn search_reaches_the_star_bound() {
    let out = scluster(&[
        "search",
        "--n",
        "8",
        "--k",
        "4",
        "--d",
        "3",
        "--strategy",
        "hillclimb",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "best=35 bound=35 star=yes\n");
}

#[test]
fn greedy_search_respects_bound_and_writes_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("best.txt");
    let out = scluster(&[
        "search",
        "--n",
        "10",
        "--k",
        "4",
        "--d",
        "3",
        "--strategy",
        "greedy",
        "--seed",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let line = stdout(&out);
    let best: u64 = line
        .trim_start_matches("best=")
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(best <= 84);
    assert!(line.contains("bound=84"));
    let family = fs::read_to_string(&path).unwrap();
    assert_eq!(family.lines().count() as u64, best + 1);
    assert_eq!(code(&scluster_stdin(&["detect", "--d", "3"], &family)), 0);
}

#[test]
fn search_out_of_scope_exits_2() {
    let out = scluster(&["search", "--n", "8", "--k", "4", "--d", "4"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of scope"));
}

#[test]
fn lift_simplex_example() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "simplex.txt",
        "10 4\n2 3 4 9\n1 3 4 9\n1 2 4 9\n1 2 3 10\n",
    );
    let out = scluster(&["lift", "--k", "5", &f]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.split(' ').count() == 5));
    assert_eq!(code(&scluster_stdin(&["detect", "--d", "3"], &text)), 1);

    let same = scluster(&["lift", "--k", "4", &f]);
    assert_eq!(stdout(&same), "10 4\n1 2 4 9\n1 3 4 9\n2 3 4 9\n1 2 3 10\n");
}

#[test]
fn lift_rejects_non_simplex() {
    let out = scluster_stdin(&["lift", "--k", "5"], "6 3\n1 2 3\n1 2 4\n1 2 5\n1 2 6\n");
    assert_eq!(code(&out), 1);
}

#[test]
fn threads_flag_is_accepted() {
    let out = scluster(&[
        "--threads",
        "2",
        "verify",
        "cycle-bound",
        "--exhaustive",
        "--n",
        "4",
        "--k",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("families\t64\n"));
}
