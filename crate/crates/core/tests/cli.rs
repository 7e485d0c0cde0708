use entlife::cli::{format_real, run_with};
use entlife::ghz_analysis::{group_lifetime, upper_bound_lifetime};
use entlife::graph_core::{make_lattice, pair_threshold, reduced_pair_state, Lattice};
use entlife::noise_model::noise_from_p;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("entlife").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn mlifetime_csv() {
    let (code, out, _) = run(&["ghz", "mlifetime", "--m", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("M,kappa_tau\n2,{}\n", format_real(upper_bound_lifetime(2).unwrap())));
    assert!(out.starts_with("M,kappa_tau\n2,0.80471"));
}

#[test]
fn scan_matches_library_and_decreases() {
    let (code, out, _) = run(&["ghz", "scan", "--m-from", "2", "--m-to", "200", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 199);
    let mut last = f64::INFINITY;
    for (i, r) in rows.iter().enumerate() {
        let m = i as u64 + 2;
        assert_eq!(r[0], m.to_string());
        assert_eq!(r[1], format_real(upper_bound_lifetime(m).unwrap()));
        let kt: f64 = r[1].parse().unwrap();
        assert!(kt < last);
        last = kt;
    }
}

#[test]
fn pair_threshold_matches_library() {
    let (code, out, _) = run(&[
        "graph",
        "pair-threshold",
        "--lattice",
        "linear",
        "--length",
        "10",
        "--pair",
        "4",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lt = pair_threshold(&make_lattice(&Lattice::Linear(10)).unwrap(), 4, 5).unwrap();
    assert_eq!(out, format!("k,l,p,kappa_t\n4,5,{},{}\n", format_real(lt.p), format_real(lt.kappa_t)));
}

#[test]
fn default_pair_is_interior() {
    let (code, out, _) = run(&["graph", "pair-threshold", "--lattice", "grid2d", "--dims", "5,6", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().starts_with("14,15,0.828"));
}

#[test]
fn reduced_pair_from_graph_file() {
    let dir = std::env::temp_dir().join(format!("entlife-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("triangle.txt");
    std::fs::write(&path, "# triangle\n0 1\n1 2\n0 2\n").unwrap();
    let (code, out, _) = run(&[
        "graph",
        "reduced-pair",
        "--graph-file",
        path.to_str().unwrap(),
        "--pair",
        "0",
        "1",
        "--p",
        "0.9",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let g = entlife::graph_core::Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let q = reduced_pair_state(&g, noise_from_p(0.9).unwrap(), 0, 1).unwrap();
    let row = &csv_rows(&out)[0];
    for (cell, v) in row[2..6].iter().zip(q.as_array()) {
        assert_eq!(cell, &format_real(v));
    }
    assert_eq!(row[6], "true");
}

#[test]
fn lifetime_lists_every_group_size() {
    let (code, out, _) = run(&["ghz", "lifetime", "--n", "7", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 3);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[3], format_real(group_lifetime(7, i + 1).unwrap().kappa_t));
    }
}

#[test]
fn p_and_kt_agree_and_exclude_each_other() {
    let (_, a, _) = run(&["ghz", "mbound", "--kt", "0.01", "--format", "csv"]);
    let (_, b, _) = run(&["ghz", "mbound", "--p", &(-0.01f64).exp().to_string(), "--format", "csv"]);
    assert_eq!(csv_rows(&a)[0][2], csv_rows(&b)[0][2]);
    let (code, _, err) = run(&["ghz", "mbound", "--kt", "0.01", "--p", "0.5"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot be used with"));
}

#[test]
fn clamp_is_reported() {
    let (code, _, err) = run(&["ghz", "spectrum", "--n", "3", "--p", "0"]);
    assert_eq!(code, 0);
    assert!(err.contains("clamped"));
    let (code, _, err) = run(&["ghz", "spectrum", "--n", "3", "--kt", "100"]);
    assert_eq!(code, 0);
    assert!(err.contains("clamped"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["ghz", "mlifetime", "--bogus"]).0, 1);
    assert_eq!(run(&["nope"]).0, 1);
    assert_eq!(run(&["ghz", "mlifetime", "--m", "1"]).0, 1);
    assert_eq!(run(&["ghz", "spectrum", "--n", "3", "--p", "1.5"]).0, 1);
    assert_eq!(run(&["graph", "sep-bound", "--m", "0"]).0, 1);
    assert_eq!(run(&["graph", "pair-threshold", "--lattice", "linear", "--length", "5", "--pair", "0", "2"]).0, 1);
    assert_eq!(run(&["graph", "pair-threshold", "--graph-file", "/nonexistent/graph.txt", "--pair", "0", "1"]).0, 1);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn numeric_failures_exit_two() {
    // needs p closer to 1 than the search bracket reaches
    let (code, _, err) = run(&["ghz", "mlifetime", "--m", "1000000000000000"]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("numeric"));
}

#[test]
fn output_is_deterministic() {
    for format in ["csv", "json", "plain"] {
        let args = ["ghz", "scan", "--m-from", "2", "--m-to", "50", "--format", format];
        assert_eq!(run(&args).1, run(&args).1);
    }
}

#[test]
fn json_schema() {
    let (code, out, _) = run(&["graph", "degree-bound", "--dk", "2", "--dl", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "graph degree-bound");
    assert_eq!(v["params"]["dk"], "2");
    assert_eq!(v["columns"], serde_json::json!(["d_k", "d_l", "kappa_t"]));
    let kt = v["rows"][0][2].as_f64().unwrap();
    assert!((kt - std::f64::consts::LN_2 / 3.0).abs() < 1e-12);
}

#[test]
fn verify_choi_suite_passes() {
    let (code, out, _) = run(&["oracle", "verify", "--suite", "choi", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")));
}
