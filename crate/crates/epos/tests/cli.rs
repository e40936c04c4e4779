use std::io::Write as _;
use std::process::Command;

use epos::format::{efun_from_csv, efun_from_json};
use epos::run_to;
use epos_core::expansions::spider4m_csf;
use epos_core::injections::InjectionMaps;
use epos_core::{Composition, Result};

fn run_with(maps: &InjectionMaps, args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("epos").chain(args.iter().copied());
    let code = run_to(argv, maps, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_with(&InjectionMaps::STANDARD, args)
}

#[test]
fn spider_621_parses_back_to_spider4m() {
    let (code, out, _) = run(&["spider", "--legs", "6,2,1"]);
    assert_eq!(code, 0);
    assert_eq!(efun_from_json(&out).unwrap(), spider4m_csf(1).unwrap());
    let (code, csv, _) = run(&["spider", "--legs", "6,2,1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(csv.lines().count(), 27);
    assert_eq!(efun_from_csv(&csv).unwrap(), spider4m_csf(1).unwrap());
    let (_, out4m, _) = run(&["spider4m", "--m", "1"]);
    assert_eq!(out4m, out);
}

#[test]
fn output_is_byte_identical_across_runs_and_worker_counts() {
    for args in [
        &["certify", "--m", "2"][..],
        &["verify", "--lemma", "all", "--m", "2"],
        &["spider4m", "--m", "2", "--format", "csv"],
        &["path", "--n", "14", "--format", "pretty"],
    ] {
        let base = run(&[args, &["--workers", "1"]].concat());
        for workers in ["1", "2", "3"] {
            assert_eq!(run(&[args, &["--workers", workers]].concat()), base, "{:?}", args);
        }
    }
}

#[test]
fn certify_m1_json() {
    let (code, out, _) = run(&["certify", "--m", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["witnesses"], serde_json::json!([]));
    for key in ["m", "group_count", "zero_net_count", "leftover_A_count"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn oracle_reads_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spider.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "10").unwrap();
    for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (0, 7), (7, 8), (0, 9)] {
        writeln!(f, "{u} {v}").unwrap();
    }
    drop(f);
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["oracle", "--graph", p]);
    assert_eq!(code, 0);
    assert_eq!(efun_from_json(&out).unwrap(), spider4m_csf(1).unwrap());
    let (code, _, err) = run(&["oracle", "--graph", p, "--budget", "8"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"), "{err}");

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3\n0 1\n1\n").unwrap();
    let (code, _, err) = run(&["oracle", "--graph", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p3.txt");
    let (code, out, _) = run(&["path", "--n", "3", "--format", "pretty", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "3·e[3] + 1·e[2,1]\n");
}

fn concat_map(j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
    Ok(Composition::concat(&[j, k, l]))
}

fn swap_map(j: &Composition, k: &Composition, l: &Composition) -> Result<Composition> {
    Ok(Composition::concat(&[j, l, k]))
}

fn failing_map(_: &Composition, _: &Composition, _: &Composition) -> Result<Composition> {
    Composition::new(vec![0])
}

#[test]
fn mutated_maps_exit_1() {
    let s = InjectionMaps::STANDARD;
    for bad in [concat_map as epos_core::injections::MapFn, swap_map, failing_map] {
        for maps in [
            InjectionMaps { phi1: bad, ..s },
            InjectionMaps { phi2: bad, ..s },
            InjectionMaps { phi3: bad, ..s },
            InjectionMaps { phi41: bad, ..s },
            InjectionMaps { phi42: bad, ..s },
        ] {
            let (code, out, _) = run_with(&maps, &["certify", "--m", "3"]);
            assert_eq!(code, 1);
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["verdict"], false);
            assert!(!v["witnesses"].as_array().unwrap().is_empty());
            let (code, out, _) = run_with(&maps, &["verify", "--lemma", "injections", "--m", "3"]);
            assert_eq!(code, 1);
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["passed"], false);
        }
    }
}

#[test]
fn standard_maps_exit_codes() {
    assert_eq!(run(&["certify", "--m", "3"]).0, 0);
    assert_eq!(run(&["verify", "--lemma", "disjointness", "--m", "3"]).0, 0);
    assert_eq!(run(&["verify", "--lemma", "t1234", "--m", "2"]).0, 0);
    // the c3 >= 2 bound fails from m = 2 on, and the report says so
    let (code, out, _) = run(&["verify", "--lemma", "injections", "--m", "2"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let failures = v["failure_counts"].as_object().unwrap();
    assert_eq!(failures.keys().collect::<Vec<_>>(), vec!["c3"]);
    assert_eq!(run(&["verify", "--lemma", "injections", "--m", "1"]).0, 0);
}

#[test]
fn binary_honours_epos_workers() {
    let bin = env!("CARGO_BIN_EXE_epos");
    let out = Command::new(bin).args(["path", "--n", "3", "--format", "pretty"]).env("EPOS_WORKERS", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3·e[3] + 1·e[2,1]\n");
    let out = Command::new(bin).args(["path", "--n", "3"]).env("EPOS_WORKERS", "0").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["path", "--n", "3", "--workers", "1"]).env("EPOS_WORKERS", "0").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["spider", "--legs", "a,b,c"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
