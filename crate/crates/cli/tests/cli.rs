use std::path::{Path, PathBuf};
use std::process::Command;

use blockade_cli::{blocks_report, run_with, Report, SCHEMA};
use blockade_core::twistblocks::{same_block, EvalModuleDescriptor, OrbitSpace};
use blockade_core::{RootSystem, Strategy, TypeLetter, Weight};
use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("blockade").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> Report {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn roots_a2() {
    let r = report(&["roots", "A", "2"]);
    assert_eq!(r.schema, SCHEMA);
    assert_eq!(r.command, ["roots", "A", "2"]);
    assert_eq!(r.inputs_digest.len(), 64);
    let res = r.result.unwrap();
    assert_eq!(res["positive_roots"], json!([[1, 0], [0, 1], [1, 1]]));
    assert_eq!(res["fundamental_group"]["order"], 3);
}

#[test]
fn prv_example() {
    let r = report(&["prv", "A", "1", "--lam", "1", "--mu", "3"]);
    assert_eq!(r.result.unwrap(), json!({"c": 1}));
}

#[test]
fn weyl_and_tensor() {
    let r = report(&["dim", "E", "8", "--lam", "0,0,0,0,0,0,0,1"]);
    assert_eq!(r.result.unwrap()["dim"], 248);
    let r = report(&["tensor", "A", "1", "--lam", "1", "--mu", "1"]);
    let res = r.result.unwrap();
    assert_eq!(res["total_dim"], 4);
    assert_eq!(res["components"].as_array().unwrap().len(), 2);
    let r = report(&["freudenthal", "A", "2", "--lam", "1,1", "--dominant"]);
    let res = r.result.unwrap();
    assert_eq!(res["dim"], 8);
    assert_eq!(
        res["weights"],
        json!([{"weight": [0, 0], "multiplicity": 2}, {"weight": [1, 1], "multiplicity": 1}])
    );
}

#[test]
fn blocks_examples() {
    let dir = TempDir::new().unwrap();
    let os = write(&dir, "os.json", r#"{"points":["M","N"],"cotangent":{"M":1,"N":1}}"#);
    let mods = write(&dir, "m.json", r#"[{"M":[2]},{"M":[4]},{"M":[1]}]"#);
    let r = report(&["blocks", "A", "1", "--orbits", s(&os), "--modules", s(&mods)]);
    let blocks = &r.result.unwrap()["blocks"];
    assert_eq!(blocks[0]["members"], json!([0, 1]));
    assert_eq!(blocks[0]["character"], json!({}));
    assert_eq!(blocks[1]["members"], json!([2]));

    let empty = write(&dir, "e.json", "[]");
    let r = report(&["blocks", "A", "1", "--orbits", s(&os), "--modules", s(&empty)]);
    assert_eq!(r.result.unwrap()["blocks"], json!([]));

    let apart = write(&dir, "a.json", r#"[{"M":[1]},{"N":[1]}]"#);
    let r = report(&["blocks", "A", "1", "--orbits", s(&os), "--modules", s(&apart)]);
    assert_eq!(r.result.unwrap()["blocks"].as_array().unwrap().len(), 2);
}

#[test]
fn ext_pair_batch_and_chain() {
    let dir = TempDir::new().unwrap();
    let os = write(&dir, "os.json", r#"{"points":["M","N"],"cotangent":{"M":1,"N":2}}"#);
    let e = write(&dir, "e.json", r#"{"N":[1]}"#);
    let f = write(&dir, "f.json", r#"{"N":[3]}"#);
    let r = report(&["ext", "A", "1", "--orbits", s(&os), "--e", s(&e), "--f", s(&f)]);
    assert_eq!(r.result.unwrap(), json!({"dim": 2}));

    let mods = write(&dir, "m.json", r#"[{"M":[1]},{"M":[3]},{}]"#);
    let r = report(&["ext", "A", "1", "--orbits", s(&os), "--modules", s(&mods)]);
    assert_eq!(r.result.unwrap()["matrix"], json!([[1, 1, 0], [1, 1, 0], [0, 0, 0]]));

    let r = report(&["chain", "A", "1", "--orbits", s(&os), "--e", s(&e), "--f", s(&f)]);
    let res = r.result.unwrap();
    assert_eq!(res["linked"], true);
    assert_eq!(res["chain"], json!([{"N": [1]}, {"N": [3]}]));

    let g = write(&dir, "g.json", r#"{"N":[2]}"#);
    let r = report(&["chain", "A", "1", "--orbits", s(&os), "--e", s(&e), "--f", s(&g)]);
    assert_eq!(r.result.unwrap(), json!({"linked": false, "chain": null}));
}

#[test]
fn margaux_example() {
    let dir = TempDir::new().unwrap();
    let m = write(
        &dir,
        "m.json",
        r#"[
            {"a": {"re": [-1, 2], "im": [0, 1]}, "b": {"re": [0, 1], "im": [-1, 1]}, "m": 3},
            {"a": {"re": [2, 1], "im": [0, 1]}, "b": {"re": [1, 1], "im": [0, 1]}, "m": 2}
        ]"#,
    );
    let r = report(&["margaux", "--modules", s(&m)]);
    assert_eq!(
        r.result.unwrap()["block"],
        json!([{"a": {"re": [1, 2], "im": [0, 1]}, "b": {"re": [0, 1], "im": [1, 1]}, "m": 1}])
    );
}

#[test]
fn extcalc_subcommands() {
    let dim = |args: &[&str]| report(args).result.unwrap()["dim"].clone();
    assert_eq!(dim(&["extcalc", "abelian", "--dim-z", "inf", "--lam", "a", "--mu", "a"]), json!("infinite"));
    assert_eq!(dim(&["extcalc", "abelian", "--dim-z", "3", "--lam", "a", "--mu", "b"]), json!(0));
    assert_eq!(
        dim(&["extcalc", "direct-sum", "--first-iso", "--ext-first", "3", "--ext-second", "4"]),
        json!(4)
    );
    assert_eq!(
        dim(&[
            "extcalc", "reductive", "A", "1", "--dim-z", "2", "--a-central", "x", "--b-central", "x",
            "--a-weight", "1", "--b-weight", "1",
        ]),
        json!(2)
    );
    assert_eq!(dim(&["extcalc", "trivial", "--dim-z", "2", "--nontrivial"]), json!(0));
    assert_eq!(dim(&["extcalc", "case3", "--ext", "2,2,1", "--r", "3", "--dim-quot", "1"]), json!(3));

    let dir = TempDir::new().unwrap();
    let os = write(&dir, "os.json", r#"{"points":["M"],"cotangent":{"M":1}}"#);
    let a = write(&dir, "a.json", r#"{"nonev_label":"x","ev_part":{"M":[1]}}"#);
    let b = write(&dir, "b.json", r#"{"nonev_label":"y","ev_part":{"M":[3]}}"#);
    assert_eq!(
        dim(&["extcalc", "general", "A", "1", "--orbits", s(&os), "--a", s(&a), "--b", s(&b)]),
        json!(0)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["roots", "A"]).0, 2);
    assert_eq!(run(&["roots", "Q", "2"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);

    // domain errors carry a structured report
    let (code, out, _) = run(&["prv", "A", "1", "--lam", "-1", "--mu", "1"]);
    assert_eq!(code, 1);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert!(r.result.is_none());
    assert_eq!(r.error.unwrap().kind, "domain");
    assert_eq!(run(&["roots", "E", "9"]).0, 1);
}

#[test]
fn malformed_json_names_the_file() {
    let dir = TempDir::new().unwrap();
    let os = write(&dir, "os.json", r#"{"points":["M"],"cotangent":{"M":1}}"#);
    let bad = write(&dir, "bad.json", r#"{"M": [1"#);
    let good = write(&dir, "good.json", r#"{"M": [1]}"#);
    let (code, out, err) = run(&["ext", "A", "1", "--orbits", s(&os), "--e", s(&good), "--f", s(&bad)]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.json"));
    let e = serde_json::from_str::<Report>(&out).unwrap().error.unwrap();
    assert_eq!(e.kind, "input");
    assert_eq!(e.path.as_deref(), Some(s(&bad)));

    let missing = dir.path().join("missing.json");
    let (code, out, _) = run(&["blocks", "A", "1", "--orbits", s(&os), "--modules", s(&missing)]);
    assert_eq!(code, 1);
    assert!(out.contains("missing.json"));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let os = write(&dir, "os.json", r#"{"points":["M","N"],"cotangent":{"M":1,"N":1}}"#);
    let mods: Vec<Value> = (0..4)
        .flat_map(|a| (0..4).map(move |b| json!({"M": [a], "N": [b]})))
        .collect();
    let mods = write(&dir, "m.json", &serde_json::to_string(&mods).unwrap());
    for cmd in ["blocks", "ext"] {
        let args = [cmd, "A", "1", "--orbits", s(&os), "--modules", s(&mods)];
        let first = run(&args);
        assert_eq!(first, run(&args));
        let mut seq = args.to_vec();
        seq.push("--sequential");
        let a: Report = serde_json::from_str(&first.1).unwrap();
        let b: Report = serde_json::from_str(&run(&seq).1).unwrap();
        assert_eq!(a.result, b.result);
    }
}

#[test]
fn digest_tracks_file_contents() {
    let dir = TempDir::new().unwrap();
    let os = write(&dir, "os.json", r#"{"points":["M"],"cotangent":{"M":1}}"#);
    let mods = write(&dir, "m.json", r#"[{"M":[1]}]"#);
    let args = ["blocks", "A", "1", "--orbits", s(&os), "--modules", s(&mods)];
    let before = report(&args).inputs_digest;
    std::fs::write(&mods, r#"[{"M":[1]}, {"M":[3]}]"#).unwrap();
    assert_ne!(before, report(&args).inputs_digest);
}

#[test]
fn pretty_tables() {
    let (code, out, _) = run(&["--pretty", "roots", "A", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("|P/Q|           3"));
    assert!(out.contains("[1,1]  2"));
    let (_, out, _) = run(&["prv", "A", "1", "--lam", "1", "--mu", "3", "--pretty"]);
    assert_eq!(out, "c  1\n");
}

#[test]
fn binary_honours_cache_limit() {
    let bin = env!("CARGO_BIN_EXE_blockade");
    let args = ["tensor", "B", "2", "--lam", "1,1", "--mu", "2,0"];
    let plain = Command::new(bin).args(args).output().unwrap();
    let tiny = Command::new(bin).args(args).env("BLOCKADE_CACHE_LIMIT", "0").output().unwrap();
    assert!(plain.status.success());
    assert_eq!(plain.stdout, tiny.stdout);

    let bad = Command::new(bin).args(args).env("BLOCKADE_CACHE_LIMIT", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_blockade");
    let out = Command::new(bin).args(["roots", "A", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.result.unwrap()["num_positive_roots"], 3);
    assert_eq!(Command::new(bin).arg("nope").output().unwrap().status.code(), Some(2));
}

#[test]
fn blocks_report_matches_same_block() {
    let a2 = RootSystem::new(TypeLetter::A, 2).unwrap();
    let os = OrbitSpace::new(
        vec!["P".into(), "P'".into(), "Q".into()],
        vec![[("P".to_string(), "P'".to_string()), ("P'".to_string(), "P".to_string())]
            .into_iter()
            .collect()],
        [("P".to_string(), 1), ("Q".to_string(), 2)].into_iter().collect(),
    )
    .unwrap();
    let mut modules = Vec::new();
    for (i, a) in (0..3).enumerate() {
        for b in 0..3 {
            let point = if i % 2 == 0 { "P" } else { "P'" };
            modules.push(EvalModuleDescriptor::new([
                (point, Weight::new(vec![a, b])),
                ("Q", Weight::new(vec![b, a])),
            ]));
        }
    }
    let groups = blocks_report(&a2, &os, &modules, Strategy::default()).unwrap();
    let mut block_of = vec![usize::MAX; modules.len()];
    for (g, group) in groups.iter().enumerate() {
        for &m in &group.members {
            assert_eq!(block_of[m], usize::MAX, "groups overlap");
            block_of[m] = g;
        }
    }
    for i in 0..modules.len() {
        for j in 0..modules.len() {
            let same = same_block(&a2, &os, &modules[i], &modules[j]).unwrap();
            assert_eq!(same, block_of[i] == block_of[j]);
        }
    }
}
