use std::process::Command as Proc;

use kummer_cli::{run, Command, Options, RankMode, Report, Status};

fn opts() -> Options {
    Options::default()
}

fn check<'a>(r: &'a Report, name: &str) -> &'a kummer_cli::Check {
    r.checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn groups_pass_and_round_trip() {
    let r = run(Command::Groups, &opts(), true).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
    assert!(r.wall_time.is_some());
    for (name, v) in [("order_gx", "18432"), ("order_h", "32"), ("order_i", "96"), ("index_hi", "6")] {
        assert!(check(&r, name).witness.starts_with(v));
    }
    let json = r.to_json().unwrap();
    let back: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}

#[test]
fn corrupted_table_fails_with_witness() {
    let o = Options { corrupt_table: true, ..opts() };
    let r = run(Command::Groups, &o, false).unwrap();
    assert!(!r.passed());
    let c = check(&r, "table1_underlines");
    assert_eq!(c.status, Status::Fail);
    assert!(c.witness.contains("(1 ∞)"), "{}", c.witness);
}

#[test]
fn cocycles_small_and_reproducible() {
    let o = Options { samples: 1, seed: 4, ..opts() };
    let r = run(Command::Cocycles, &o, false).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
    let o = Options { samples: 200, seed: 9, ..opts() };
    let a = run(Command::Cocycles, &o, false).unwrap().to_json().unwrap();
    let b = run(Command::Cocycles, &o, false).unwrap().to_json().unwrap();
    assert_eq!(a, b);
    assert!(run(Command::Cocycles, &Options { samples: 0, ..opts() }, false).is_err());
}

#[test]
fn operators_pass() {
    let r = run(Command::Operators, &opts(), false).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
    assert_eq!(check(&r, "transformation_all_tau").witness, "576 checked, 0 failures");
}

#[test]
fn periods_report_the_second_component_conflict() {
    let r = run(Command::Periods, &opts(), false).unwrap();
    assert_eq!(check(&r, "quadrature_beta_pi").status, Status::Pass);
    let seconds: Vec<_> = r.checks.iter().filter(|c| c.name.starts_with("inhomogeneous_second")).collect();
    assert_eq!(seconds.len(), 5);
    assert!(seconds.iter().all(|c| c.status == Status::Fail));
    let rest: Vec<_> =
        r.checks.iter().filter(|c| !c.name.starts_with("inhomogeneous_second") && c.status == Status::Fail).collect();
    assert!(rest.is_empty(), "{rest:?}");
    assert!(run(Command::Periods, &Options { tol_fd: 1.0, ..opts() }, false).is_err());
}

#[test]
fn rank_modes() {
    let r = run(Command::Rank(RankMode::Table2), &opts(), false).unwrap();
    assert!(r.passed(), "{:?}", r.checks);
    let table = r.table.as_ref().unwrap();
    assert_eq!(table.len(), 18);
    let mut csv = Vec::new();
    r.write_csv(&mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert!(text.starts_with(
        "rho_label,bullet,first_component,second_component,F1_index,F2_index,zeta_class\n"
    ));
    assert_eq!(text.lines().count(), 19);
    for mode in [RankMode::FullOrbit, RankMode::Canonical] {
        let r = run(Command::Rank(mode), &opts(), false).unwrap();
        assert!(r.passed(), "{mode:?}: {:?}", r.checks);
    }
}

#[test]
fn binary_exit_codes_and_output_file() {
    let bin = env!("CARGO_BIN_EXE_kummer");
    let dir = std::env::temp_dir().join(format!("kummer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("groups.json");
    let s = Proc::new(bin).args(["groups", "--no-timing", "--out"]).arg(&out).status().unwrap();
    assert_eq!(s.code(), Some(0));
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(r.wall_time.is_none() && r.passed());
    let s = Proc::new(bin).args(["groups", "--corrupt-table"]).output().unwrap();
    assert_eq!(s.status.code(), Some(1));
    let s = Proc::new(bin).args(["cocycles", "--samples", "0"]).output().unwrap();
    assert_eq!(s.status.code(), Some(2));
    let csv = Proc::new(bin).args(["operators", "--format", "csv"]).output().unwrap();
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("name,status,witness\n"));
    std::fs::remove_dir_all(&dir).ok();
}
