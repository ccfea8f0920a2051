use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

const H0: &str = "# three overlapping hyperedges\n1 2 3\n3 4\n4 5 6\n";

fn hyperseed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperseed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_h0(dir: &Path) -> String {
    let path = dir.join("h0.txt");
    std::fs::write(&path, H0).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn no_subcommand_prints_usage() {
    let out = hyperseed(&[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn usage_and_runtime_errors_have_distinct_codes() {
    assert_eq!(hyperseed(&["stats", "--graph", "x", "--bogus"]).status.code(), Some(2));
    assert_eq!(hyperseed(&["run", "--graph", "x", "--algo", "celf"]).status.code(), Some(2));
    let missing = hyperseed(&["stats", "--graph", "/nonexistent/h.txt"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/h.txt"));

    let dir = tempfile::tempdir().unwrap();
    let g = write_h0(dir.path());
    let too_big = hyperseed(&["run", "--graph", &g, "--algo", "hhd", "--k", "9", "--runs", "2"]);
    assert_eq!(too_big.status.code(), Some(1));
    let unknown_seed = hyperseed(&["cascade", "--graph", &g, "--seeds", "99"]);
    assert_eq!(unknown_seed.status.code(), Some(1));
}

#[test]
fn stats_on_h0() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperseed(&["stats", "--graph", &write_h0(dir.path())]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,m,avg_deg,avg_hyperdeg,avg_edge_size,clustering,avg_path,diameter,density");
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(&fields[..2], &["6", "3"]);
    assert_eq!(fields[7], "3");
}

#[test]
fn cascade_trace_on_h0() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperseed(&["cascade", "--graph", &write_h0(dir.path()), "--seeds", "1,2", "--p", "0.5", "--trace"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "spread 4\nrounds 2\napprox_fitness 4\nround,node\n0,1\n0,2\n1,3\n2,4\n"
    );
}

#[test]
fn gen_writes_loadable_file_with_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kuf.txt");
    let p = path.to_str().unwrap();
    let out = hyperseed(&["gen", "--family", "kuf", "--n", "40", "--m", "25", "--feature", "3", "--seed", "9", "--out", p]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("# spec: family=kuf n=40 m=25"), "{first}");
    let edges: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(edges.len(), 25);
    assert!(edges.iter().all(|l| l.split_whitespace().count() == 3));

    let again = hyperseed(&["gen", "--gen", "kuf", "--n", "40", "--m", "25", "--feature", "3", "--seed", "9"]);
    assert_eq!(stdout(&again), text);
    assert!(hyperseed(&["stats", "--graph", p]).status.success());
}

#[test]
fn optimize_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_h0(dir.path());
    for algo in ["hdpso", "pso", "pso-init", "ga"] {
        let out = hyperseed(&["optimize", "--graph", &g, "--algo", algo, "--k", "2", "--pop", "32", "--gens", "10"]);
        assert!(out.status.success(), "{algo}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["exact_spread"], 4, "{algo}");
        assert_eq!(v["history"].as_array().unwrap().len(), 11);
        assert_eq!(v["seeds"].as_array().unwrap().len(), 2);
        assert!(v["approx_fitness"].is_u64());
    }
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn summary_agrees_with_runs() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("exp");
    let out = hyperseed(&[
        "run", "--gen", "sf", "--n", "120", "--m", "60", "--feature", "-1.5", "--k", "2,5", "--runs", "6", "--pop",
        "16", "--gens", "4", "--seed", "3", "--out", prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let runs = std::fs::read_to_string(dir.path().join("exp.runs.csv")).unwrap();
    let summary = std::fs::read_to_string(dir.path().join("exp.summary.csv")).unwrap();

    let (rh, rrows) = parse_csv(&runs);
    assert_eq!(rh.join(","), "algorithm,graph,k,p,run,exact_spread,approx_fitness,runtime_ms");
    assert_eq!(rrows.len(), 10 * 2 * 6);
    let mut by_cell: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    for r in &rrows {
        assert_eq!(r[3], "0.500");
        assert_eq!(r[7], "0.000");
        by_cell.entry((r[0].clone(), r[2].clone())).or_default().push(r[5].parse().unwrap());
    }

    let (sh, srows) = parse_csv(&summary);
    assert_eq!(sh.join(","), "algorithm,graph,k,mean,std,mark,mean_rank");
    assert_eq!(srows.len(), 20);
    for s in &srows {
        let xs = &by_cell[&(s[0].clone(), s[2].clone())];
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        assert_eq!(s[3], format!("{mean:.3}"), "{s:?}");
        assert_eq!(s[4], format!("{:.3}", var.sqrt()), "{s:?}");
        if ["hhd", "np", "pagerank", "hci1", "hci2"].contains(&s[0].as_str()) {
            assert_eq!(s[4], "0.000");
        }
        if s[0] == "hdpso" {
            assert_eq!(s[5], "");
        } else {
            assert!(["+", "=", "-"].contains(&s[5].as_str()), "{s:?}");
        }
    }
    // mean ranks within each k sum to 1 + 2 + ... + 10
    for k in ["2", "5"] {
        let total: f64 = srows.iter().filter(|s| s[2] == k).map(|s| s[6].parse::<f64>().unwrap()).sum();
        assert!((total - 55.0).abs() < 1e-9);
    }
}

#[test]
fn run_without_out_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = hyperseed(&["run", "--graph", &write_h0(dir.path()), "--algo", "hhd,np", "--k", "2", "--runs", "3"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "algorithm,graph,k,mean,std,mark,mean_rank\nhhd,h0,2,2.000,0.000,,1.500\nnp,h0,2,2.000,0.000,,1.500\n"
    );
}
