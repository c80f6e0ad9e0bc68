use std::path::PathBuf;
use std::process::{Command, Output};

use otb::planfile::parse_plan;

fn otb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otb")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("otb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn expand_writes_plan_files() {
    let p3 = scratch("p3.plan");
    std::fs::write(&p3, stdout(&otb(&["expand", "--plan", "catalog:P3", "--subspace", "000"]))).unwrap();
    let out = scratch("p3x.plan");
    let o = otb(&["expand", "--plan", p3.to_str().unwrap(), "--subspace", "100", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let plan = parse_plan(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((plan.b(), plan.k()), (6, 4));

    let o = otb(&["expand", "--plan", "catalog:P", "--subspace", "0102;1010"]);
    assert_eq!(parse_plan(&stdout(&o)).unwrap().b(), 18);
}

#[test]
fn parse_errors_exit_2() {
    let o = otb(&["expand", "--plan", "catalog:P", "--subspace", "01;1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(otb(&["check", "--plan", "catalog:P", "A", "Z"]).status.code(), Some(2));
    assert_eq!(otb(&["report", "--plan", "/nonexistent/plan"]).status.code(), Some(2));
    assert_eq!(otb(&["search", "--plan", "catalog:P3", "--t", "4"]).status.code(), Some(2));
    assert_eq!(otb(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_prints_flags() {
    let flags = |a: &str, b: &str| stdout(&otb(&["check", "--plan", "catalog:P", a, b])).trim().to_string();
    assert_eq!(flags("A", "C"), "OTB");
    assert_eq!(flags("A", "B^2C^2"), "Aliased");
    assert_eq!(flags("A", "B"), "NonOrthogonal");
}

#[test]
fn report_sections() {
    let o = otb(&["report", "--plan", "catalog:P5", "--subspace", "catalog:V5"]);
    let text = stdout(&o);
    assert!(o.status.success());
    assert!(text.contains("DE^2\tConfoundedWithBlock\n"));
    assert!(text.contains("# pairs\n") && text.contains("# estimability\n"));
    assert!(text.lines().last().unwrap().starts_with("estimable="));
    let again = stdout(&otb(&["report", "--plan", "catalog:P5", "--subspace", "catalog:V5"]));
    assert_eq!(text, again);
}

#[test]
fn full_factorial_in_one_block_is_pfc() {
    let path = scratch("ff.plan");
    std::fs::write(&path, "s=3 m=2 b=1 k=9\nblock: 00 01 02 10 11 12 20 21 22\n").unwrap();
    let text = stdout(&otb(&["report", "--plan", path.to_str().unwrap(), "--model", "mains+2fi"]));
    let pairs: Vec<&str> = text
        .lines()
        .skip_while(|l| *l != "# pairs")
        .skip(2)
        .take_while(|l| !l.starts_with('#'))
        .collect();
    assert_eq!(pairs.len(), 6);
    assert!(pairs.iter().all(|l| l.ends_with("\tOTB,PFC")), "{pairs:?}");
}

#[test]
fn search_tables() {
    let text = stdout(&otb(&["search", "--plan", "catalog:P3", "--t", "1", "--limit", "13"]));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 13);
    assert!(rows[0].starts_with("1\t"));
}

#[test]
fn verify_paper_has_no_failures() {
    let o = otb(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("P.expanded-blocks\t") && l.contains("\tPASS\t")));
    assert!(text.lines().any(|l| l.starts_with("P5.confounded\t") && l.contains("\tPASS\t")));
    for l in text.lines().filter(|l| l.contains("DISCREPANCY-DOCUMENTED")) {
        assert!(!l.ends_with('\t'), "documented row without a note: {l}");
    }
}
