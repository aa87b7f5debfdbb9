use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfect-forge"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .unwrap()
}

fn cli(line: &str) -> Output {
    run(&line.split_whitespace().collect::<Vec<_>>())
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fullrank_binary_exact() {
    let o = cli("fullrank --q 2 --m 4 --sigma swap --verify exact");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank 15"), "{}", stdout(&o));
}

#[test]
fn ls_ternary_exact() {
    let o = cli("ls --q 3 --base hamming:3,2 --lambda zero --verify exact");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result=pass"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(cli("hamming --q 2 --m 1").status.code(), Some(64));
    assert_eq!(cli("hamming --q 6 --m 2").status.code(), Some(64));
    assert_eq!(cli("no-such-command").status.code(), Some(64));
    assert_eq!(cli("gls --base hamming:3,2 --i 1 --sigma swap").status.code(), Some(64));
}

#[test]
fn cap_refusal_exits_3() {
    let o = cli("--cap 1000 hamming --q 2 --m 4");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn randomized_commands_need_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.txt");
    let o = run(&[
        "fullrank",
        "--q",
        "3",
        "--m",
        "4",
        "--sigma",
        "cycle",
        "--implicit",
        "--out",
        path(&s),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        run(&["verify", "--input", path(&s), "--sampled", "10"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&["rank", "--input", path(&s)]).status.code(), Some(64));
    let o = run(&["verify", "--input", path(&s), "--sampled", "500", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["rank", "--input", path(&s), "--seed", "3"]);
    assert!(stdout(&o).contains("rank 40"));
}

#[test]
fn failed_verification_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.code");
    std::fs::write(&f, "# perfect-forge code v1\nq=2 p=2 k=1 n=3 count=2\n0 0 0\n1 1 0\n").unwrap();
    let o = run(&["verify", "--input", path(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("result=fail"));
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("v.code");
    let o = run(&[
        "vasiliev",
        "--base",
        "hamming:2,3",
        "--lambda",
        "seeded:5",
        "--verify",
        "exact",
        "--out",
        path(&f),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let built: Vec<String> = stdout(&o).lines().skip(1).map(str::to_owned).collect();
    let again = run(&["verify", "--input", path(&f)]);
    assert_eq!(again.status.code(), Some(0));
    let reread: Vec<String> = stdout(&again).lines().map(str::to_owned).collect();
    assert_eq!(built[..reread.len()], reread[..]);

    let s = dir.path().join("s.txt");
    run(&[
        "fullrank",
        "--q",
        "2",
        "--m",
        "4",
        "--sigma",
        "swap",
        "--implicit",
        "--out",
        path(&s),
    ]);
    let from_file = run(&["verify", "--input", path(&s), "--exact"]);
    assert_eq!(from_file.status.code(), Some(0));
    let listed = cli("fullrank --q 2 --m 4 --sigma swap --verify exact");
    assert!(stdout(&listed).contains(&stdout(&from_file)));
}

#[test]
fn outputs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["gls", "--base", "hamming:3,2", "--i", "2", "--sigma", "seeded:9"],
        &["doubling", "--m", "3", "--pi", "7,6,5,4,3,2,1,0"],
        &["fullrank", "--q", "3", "--m", "4", "--sigma", "cycle", "--implicit"],
        &["hamming", "--q", "4", "--m", "2", "--parity"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let files: Vec<Vec<u8>> = (0..2)
            .map(|r| {
                let f = dir.path().join(format!("{k}-{r}"));
                let mut a = args.to_vec();
                a.extend(["--out", path(&f)]);
                assert_eq!(run(&a).status.code(), Some(0), "{a:?}");
                std::fs::read(&f).unwrap()
            })
            .collect();
        assert!(!files[0].is_empty());
        assert_eq!(files[0], files[1], "{args:?}");
    }
}

#[test]
fn switch_blocks_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.code");
    let blocks = dir.path().join("blocks");
    assert!(run(&["hamming", "--q", "2", "--m", "3", "--out", path(&h)])
        .status
        .success());
    assert!(run(&[
        "components",
        "--input",
        path(&h),
        "--i",
        "3",
        "--out-dir",
        path(&blocks)
    ])
    .status
    .success());
    let part = format!("3:swap:{}", path(&blocks.join("block-2.code")));
    let out = dir.path().join("switched.code");
    let o = run(&[
        "switch",
        "--input",
        path(&h),
        "--part",
        &part,
        "--verify",
        "exact",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_ne!(text, std::fs::read_to_string(&h).unwrap());
}

#[test]
fn json_summary_is_one_line() {
    let o = cli("--json bound --q 3 --n 13");
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["bound"]["decimal"], "216");
}

#[test]
fn field_tables() {
    let o = cli("--json field-table --q 4");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mul"][2][2], 3);
    assert_eq!(v["add"][3][3], 0);
    let o = cli("field-table --q 8 --modulus 1,0,0,1");
    assert_eq!(o.status.code(), Some(64));
}
