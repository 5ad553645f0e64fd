use std::path::Path;
use std::process::{Command, Output};

fn qloq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qloq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

#[test]
fn bounds_reports_starred_estimate() {
    let o = qloq(&["bounds", "--n", "5", "--G", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("5,2 2 1,42,true"));
    assert!(stderr(&o).starts_with("42*"));
}

#[test]
fn bounds_table_grid() {
    let o = qloq(&["bounds", "--n", "6", "--G", "3", "--table"]);
    assert_eq!(
        stdout(&o),
        "n,G=1,G=2,G=3\n2,3,0,0\n3,14,4,0\n4,61,10,4\n5,252,42*,14\n6,1020,169,36\n"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(qloq(&["bogus"]).status.code(), Some(2));
    assert_eq!(qloq(&["bounds", "--n", "5", "--nope"]).status.code(), Some(2));
    assert_eq!(qloq(&["fixtures", "--show", "missing"]).status.code(), Some(1));
    assert_eq!(qloq(&["cost", "--circuit", "/nonexistent/c.json"]).status.code(), Some(2));
    assert_eq!(qloq(&["qsd", "--random", "3", "--mode", "qloq", "--g", "4"]).status.code(), Some(1));
}

#[test]
fn qsd_verifies_and_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = qloq(&["qsd", "--random", "3", "--mode", "qloq-remap", "--g", "2", "--verify", "--seed", "4", "--out", out]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("verified, fidelity >= 1-1e-9"));
    let csv = std::fs::read_to_string(dir.path().join("qsd.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("3,qloq-with-remap,20,20,"));
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["subcommand"], "qsd");
    assert_eq!(m["seed"], 4);
    for file in ["physical.json", "logical.json", "qsd.csv"] {
        assert_eq!(m["outputs"][file].as_str().unwrap().len(), 64);
    }
}

#[test]
fn identical_runs_give_identical_outputs() {
    let run = |dir: &Path| {
        let o = qloq(&[
            "compress", "--fig4", "--N", "4", "--max-gates", "6", "--trials", "2000", "--seed", "7", "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(o.status.success());
        std::fs::read(dir.join("fraction.csv")).unwrap()
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(run(a.path()), run(b.path()));
    let threaded = qloq(&["--threads", "3", "compress", "--fig4", "--N", "4", "--max-gates", "6", "--trials", "2000", "--seed", "7"]);
    assert_eq!(stdout(&threaded).into_bytes(), run(a.path()));
}

#[test]
fn compress_fraction_starts_at_one() {
    let o = qloq(&["compress", "--fig4", "--N", "4", "--max-gates", "3", "--trials", "500", "--seed", "7"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,m,fraction,stderr"));
    assert_eq!(lines.next(), Some("4,1,1,0"));
}

#[test]
fn compress_grids() {
    let o = qloq(&["compress", "--thresholds", "--g", "2", "--n", "2,3"]);
    assert_eq!(stdout(&o), "g,n=2,n=3\n2,3,6\n");
    let o = qloq(&["compress", "--asymptotic", "--g", "7", "--n", "9"]);
    assert_eq!(stdout(&o), "g,n=9\n7,5.200\n");
}

#[test]
fn cost_of_fixture() {
    let o = qloq(&["cost", "--fixture", "fig2b"]);
    assert!(stdout(&o).ends_with("total,1\n"));
}

#[test]
fn cost_with_map_override() {
    let o = qloq(&["cost", "--fixture", "fig3", "--map", "[[0,1,2,3]]"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("total,0\n"));
    let o = qloq(&["cost", "--fixture", "fig3", "--map", "[[0],[1],[2],[3]]"]);
    assert!(stderr(&o).contains("4 gates have no exact rule"));
    let o = qloq(&["cost", "--fixture", "fig3", "--map", "[[0],[1],[2],[3]]", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(qloq(&["cost", "--fixture", "fig3", "--map", "[[0,0]]"]).status.code(), Some(1));
    assert_eq!(qloq(&["cost", "--fixture", "fig3", "--map", "nope"]).status.code(), Some(2));
}

#[test]
fn vqe_reaches_ground_energy() {
    let o = qloq(&["vqe", "--hamiltonian", &data("toy.jsonl"), "--layers", "2", "--budget", "20000"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("iteration,energy,stderr\n0,"));
    let exact = -0.25 - (1.0f64 + 0.25).sqrt();
    let best = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .fold(f64::INFINITY, f64::min);
    assert!((best - exact).abs() < 1e-3, "{best} vs {exact}");
}

#[test]
fn loqc_outputs() {
    let o = qloq(&["loqc", "--speedup"]);
    assert!(stdout(&o).contains("six-qubit,27000\n"));
    let o = qloq(&["loqc", "--resources", "--fixture", "lih-qubit"]);
    assert!(stdout(&o).starts_with("photons,modes,entanglers,success\n4,"));
    let o = qloq(&["loqc", "--curve", "--N", "6", "--G", "3"]);
    assert_eq!(stdout(&o).lines().count(), 7);
    let o = qloq(&["loqc", "--layer", "cascade", "--N", "6", "--G", "1"]);
    assert!(stdout(&o).contains(",1/729,false"));
    assert_eq!(qloq(&["loqc", "--resources", "--fixture", "lih-qloq", "--override", "0=2"]).status.code(), Some(1));
}

#[test]
fn metrics_for_one_fixture() {
    let o = qloq(&["metrics", "--fixture", "sim-circuit-1", "--pairs", "200", "--samples", "50"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("sim-circuit-1,0,"), "{row}");
}

#[test]
fn fixtures_listing_and_show() {
    let o = qloq(&["fixtures"]);
    assert!(stdout(&o).contains("\nfig3,4,QLOQ(0,1)(2,3),4,"));
    let o = qloq(&["fixtures", "--show", "fig2a"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["qubits"], 2);
}
