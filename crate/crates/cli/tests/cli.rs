use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use skelgraph::manifest::{read_lineage, write_lineage};

fn skelgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skelgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = skelgraph(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_examples() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("path");
    ok(&["gen", "path", "--levels", "3", "--out", p(&a)]);
    let gg = read_lineage(&a).unwrap();
    assert_eq!(gg.level_sizes(), vec![1, 2, 4, 8]);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["levelFiles"].as_array().unwrap().len(), 4);

    let n = dir.path().join("nhat");
    ok(&["gen", "nhat", "--levels", "4", "--out", p(&n)]);
    assert_eq!(read_lineage(&n).unwrap().level_sizes(), vec![1; 5]);

    let g = dir.path().join("grid");
    ok(&["gen", "grid2d", "--levels", "2", "--out", p(&g)]);
    assert_eq!(read_lineage(&g).unwrap().levels[2].order(), 16);
}

#[test]
fn gen_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    ok(&["gen", "complete", "--levels", "3", "--out", p(&a)]);
    write_lineage(&b, &read_lineage(&a).unwrap()).unwrap();
    for entry in fs::read_dir(&a).unwrap() {
        let entry = entry.unwrap();
        assert_eq!(
            fs::read(entry.path()).unwrap(),
            fs::read(b.join(entry.file_name())).unwrap(),
            "{:?}",
            entry.file_name()
        );
    }
}

#[test]
fn products_and_thickening() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    ok(&["gen", "path", "--levels", "3", "--out", p(&a)]);
    for kind in ["box", "cross", "strong"] {
        let out = dir.path().join(kind);
        let o = ok(&[
            "product",
            kind,
            p(&a),
            p(&a),
            "--oracle-check",
            "--out",
            p(&out),
        ]);
        assert!(String::from_utf8_lossy(&o.stdout).contains("oracle check passed"));
        assert_eq!(
            read_lineage(&out).unwrap().level_sizes(),
            vec![1, 4, 12, 32]
        );
    }

    let hat = dir.path().join("hat");
    let tilde = dir.path().join("tilde");
    ok(&["product", "nway-hat", p(&a), p(&a), p(&a), "--out", p(&hat)]);
    ok(&[
        "product",
        "nway-tilde",
        p(&a),
        p(&a),
        p(&a),
        "--out",
        p(&tilde),
    ]);
    let (h, t) = (read_lineage(&hat).unwrap(), read_lineage(&tilde).unwrap());
    assert_eq!(h.level_sizes(), t.level_sizes());
    assert!(t
        .levels
        .iter()
        .zip(&h.levels)
        .all(|(x, y)| x.adj().pattern_subset_of(y.adj())));

    let n = dir.path().join("n");
    ok(&["gen", "nhat", "--levels", "4", "--out", p(&n)]);
    let th = dir.path().join("theta");
    ok(&["thicken", p(&n), "--out", p(&th)]);
    assert_eq!(
        read_lineage(&th).unwrap().level_sizes(),
        vec![1, 2, 3, 4, 5]
    );

    let d = dir.path().join("dilated");
    ok(&[
        "product",
        "dilated",
        p(&n),
        p(&n),
        "--rho",
        "1",
        "2",
        "--out",
        p(&d),
    ]);
    let gg = read_lineage(&d).unwrap();
    let blocks = gg.metadata["blocks"].as_array().unwrap();
    // Level L holds the pairs (l1, l2) with l1 + 2 l2 = L.
    for (level, row) in blocks.iter().enumerate() {
        for blk in row.as_array().unwrap() {
            let t = blk.as_array().unwrap();
            let (l1, l2) = (t[0].as_u64().unwrap(), t[1].as_u64().unwrap());
            assert_eq!((l1 + 2 * l2) as usize, level);
        }
    }
    assert_eq!(gg.metadata["levelMaps"][1], serde_json::json!({"rho": "2"}));
}

#[test]
fn cnn_structure_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cnn");
    ok(&[
        "cnn-structure",
        "--grid-levels",
        "2",
        "--feature-levels",
        "2",
        "--out",
        p(&out),
    ]);
    let gg = read_lineage(&out).unwrap();
    assert_eq!(gg.level_sizes(), vec![1, 6, 28]);
    let dot = fs::read_to_string(out.join("top_level.dot")).unwrap();
    let vertices = dot
        .lines()
        .filter(|l| l.trim_end().ends_with(';') && !l.contains("--"))
        .count();
    assert_eq!(vertices, 28);
    assert!(dot.starts_with("graph ") && dot.trim_end().ends_with('}'));

    let root = dir.path().join("root");
    ok(&[
        "cnn-structure",
        "--grid-levels",
        "0",
        "--feature-levels",
        "0",
        "--out",
        p(&root),
    ]);
    assert_eq!(read_lineage(&root).unwrap().level_sizes(), vec![1]);
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    ok(&["gen", "path", "--levels", "2", "--out", p(&a)]);
    let o = ok(&["validate", p(&a)]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("ok"));

    let mut gg = read_lineage(&a).unwrap();
    let prolong = gg.prolong.as_mut().unwrap();
    prolong[1] = prolong[1].scale(2.0);
    write_lineage(&a, &gg).unwrap();
    let o = skelgraph(&["validate", p(&a)]);
    assert_eq!(o.status.code(), Some(2));

    let o = skelgraph(&["validate", p(&dir.path().join("missing"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(
        skelgraph(&["gen", "path", "--levels", "2", "--bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        skelgraph(&["gen", "lattice", "--levels", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        skelgraph(&["bench", "--k", "3", "--algorithms", "sor"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(skelgraph(&["bench", "--k", "1"]).status.code(), Some(1));
    assert_eq!(skelgraph(&[]).status.code(), Some(1));
    for sub in [
        "gen",
        "product",
        "thicken",
        "validate",
        "export",
        "cnn-structure",
        "bench",
    ] {
        let o = skelgraph(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
        assert!(String::from_utf8_lossy(&o.stdout).contains("Usage"));
    }
    assert_eq!(skelgraph(&["--version"]).status.code(), Some(0));
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    ok(&["gen", "path", "--levels", "2", "--out", p(&a)]);
    let edges = ok(&["export", p(&a), "--format", "edges", "--level", "2"]);
    assert_eq!(String::from_utf8_lossy(&edges.stdout), "0 1\n1 2\n2 3\n");
    let m = dir.path().join("flat.mtx");
    ok(&["export", p(&a), "--format", "mtx", "--out", p(&m)]);
    let flat = skelgraph::mtx::read(&m).unwrap();
    assert_eq!(flat, read_lineage(&a).unwrap().assemble_flat().into_adj());
    let json = ok(&["export", p(&a), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["levelSizes"], serde_json::json!([1, 2, 4]));
    let dot = ok(&["export", p(&a), "--format", "dot", "--level", "1"]);
    assert!(String::from_utf8_lossy(&dot.stdout).contains("0 -- 1;"));
    assert_eq!(
        skelgraph(&["export", p(&a), "--format", "dot", "--level", "9"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn bench_examples() {
    let dir = tempfile::tempdir().unwrap();
    let zero = ok(&["bench", "--k", "4", "--bc", "2", "--budget", "0"]);
    let text = String::from_utf8(zero.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "algorithm,cycle,work,residual");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.contains(",0,0,")));

    let (c1, c2) = (dir.path().join("1.csv"), dir.path().join("2.csv"));
    let args = |out: &Path| {
        vec![
            "bench".to_string(),
            "--k".into(),
            "5".into(),
            "--bc".into(),
            "1".into(),
            "--budget".into(),
            "1e6".into(),
            "--seedless".into(),
            "--out".into(),
            p(out).to_string(),
        ]
    };
    let run = |out: &Path| {
        let a = args(out);
        ok(&a.iter().map(String::as_str).collect::<Vec<_>>());
    };
    run(&c1);
    run(&c2);
    let csv = fs::read_to_string(&c1).unwrap();
    assert_eq!(csv, fs::read_to_string(&c2).unwrap());

    let mut last = std::collections::BTreeMap::new();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        last.insert(f[0].to_string(), f[3].parse::<f64>().unwrap());
    }
    let skel = last["skeletal_recursive_v"];
    assert!(last.values().all(|&r| skel <= r), "{last:?}");

    let prob = dir.path().join("problem");
    ok(&[
        "bench",
        "--k",
        "2",
        "--budget",
        "0",
        "--problem-out",
        p(&prob),
    ]);
    let a = skelgraph::mtx::read(&prob.join("A.mtx")).unwrap();
    assert_eq!(a.nnz(), 33);
    let b = fs::read_to_string(prob.join("b.txt")).unwrap();
    assert_eq!(b, "2\n1\n1\n1\n0\n0\n1\n0\n0\n");
}
