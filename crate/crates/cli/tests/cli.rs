use std::path::Path;
use std::process::{Command, Output};

fn susyqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_susyqm"))
        .args(args)
        .env_remove("SUSYQM_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn rows(out: &Output) -> Vec<Vec<String>> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn sech2_spectrum() {
    let r = rows(&susyqm(&["spectrum", "--potential", "sech2", "--params", "B=2"]));
    assert_eq!(r.len(), 2);
    assert_eq!((num(&r[0][0]), num(&r[0][1])), (0.0, 0.0));
    assert_eq!((num(&r[1][0]), num(&r[1][1])), (1.0, 3.0));
}

#[test]
fn lame_edges() {
    let r = rows(&susyqm(&["bands", "--lame", "a=1", "--m", "0.5"]));
    let e: Vec<f64> = r.iter().map(|row| num(&row[1])).collect();
    for (got, want) in e.iter().zip([0.5, 1.0, 1.5]) {
        assert!((got - want).abs() < 1e-6, "{e:?}");
    }
    assert_eq!(e.len(), 3);
    assert_eq!(r[2][4], "continuum");
}

#[test]
fn well_hierarchy_member() {
    let r = rows(&susyqm(&[
        "partner",
        "--potential",
        "well",
        "--params",
        "L=pi",
        "--hierarchy",
        "3",
    ]));
    let interior = &r[1..r.len() - 1];
    assert!(interior.len() > 100);
    for row in interior {
        let x = num(&row[0]);
        let want = 6.0 / x.sin().powi(2) - 4.0;
        assert!((num(&row[1]) - want).abs() <= 1e-9 * want.abs().max(1.0), "x = {x}");
    }
    assert_eq!(r[0][1], "inf");
}

#[test]
fn inline_expression_matches_catalog() {
    let inline = rows(&susyqm(&["spectrum", "--w", "2*tanh(x)", "--levels", "2", "--points", "6001"]));
    for (row, want) in inline.iter().zip([0.0, 3.0]) {
        assert!((num(&row[1]) - want).abs() < 1e-6, "{row:?}");
    }
}

#[test]
fn sampled_file_source() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let mut text = String::from("x,w\n");
    for i in 0..=4000 {
        let x = -10.0 + 20.0 * i as f64 / 4000.0;
        text.push_str(&format!("{x},{}\n", 0.5 * x));
    }
    std::fs::write(&path, text).unwrap();
    let r = rows(&susyqm(&["spectrum", "--w-file", path.to_str().unwrap(), "--levels", "3"]));
    for (row, want) in r.iter().zip([0.0, 1.0, 2.0]) {
        assert!((num(&row[1]) - want).abs() < 1e-5, "{row:?}");
    }
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 6] = [
        (&["spectrum"], 2),
        (&["spectrum", "--potential", "nosuch"], 2),
        (&["spectrum", "--potential", "morse", "--params", "B=-1"], 2),
        (&["spectrum", "--w", "x+", "--levels", "2"], 2),
        (&["bands", "--lame", "a=1", "--m", "1.5"], 2),
        // the well has no flat tails to match plane waves against
        (&["scatter", "--potential", "well"], 1),
    ];
    for (args, code) in cases {
        let out = susyqm(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let numeric = susyqm(&["scatter", "--potential", "well"]);
    assert!(String::from_utf8_lossy(&numeric.stderr).contains("asymptotic levels failed"));
}

#[test]
fn config_errors_point_at_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, "{\n  \"subcommand\": \"spectrum\",\n  \"grid\": {\"pointz\": 10}\n}\n").unwrap();
    let out = susyqm(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("pointz") && msg.contains("line 3"), "{msg}");
}

#[test]
fn envelope_echoes_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("out.json");
    let input = serde_json::json!({
        "subcommand": "isospectral",
        "potential": {"catalog": {"name": "oscillator", "params": {"omega": 2.0}}},
        "grid": {"points": 801, "window": [-8.0, 8.0]},
        "output": {"format": "json", "path": out},
        "options": {"lambda": [0.5, "inf"], "levels": 2}
    });
    std::fs::write(&cfg, serde_json::to_string_pretty(&input).unwrap()).unwrap();
    let run = susyqm(&["--config", cfg.to_str().unwrap()]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let env: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(env["inputs"], input);
    assert_eq!(env["version"], susyqm::VERSION);
    assert_eq!(env["diagnostics"]["grid"]["points"], 801);
    for m in env["diagnostics"]["members"].as_array().unwrap() {
        let levels: Vec<f64> = serde_json::from_value(m["levels"].clone()).unwrap();
        assert!((levels[1] - 2.0).abs() < 1e-5, "{m}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["isospectral", "--potential", "sech2", "--params", "B=2", "--points", "1201", "--lambda", "0.3,1,10,0"];
    let a = susyqm(&args);
    let b = susyqm(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn env_var_sets_default_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_susyqm"))
        .args(["spectrum", "--potential", "morse"])
        .env("SUSYQM_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert!(text.starts_with("n,energy\n"));
}

#[test]
fn figures_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = susyqm(&["figures", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    let files = manifest["files"].as_array().unwrap();
    assert_eq!(files.len(), 4);
    for (i, f) in files.iter().enumerate() {
        assert_eq!(f["figure"], i + 1);
        assert!(Path::new(&dir.path().join(f["file"].as_str().unwrap())).exists());
    }
    let fig4 = std::fs::read_to_string(dir.path().join("fig4_isospectral_ground_states.csv")).unwrap();
    let header = fig4.lines().next().unwrap();
    assert!(!header.contains("[0]"), "Pursey member has no ground state: {header}");
    let fig2 = std::fs::read_to_string(dir.path().join("fig2_well_partners.csv")).unwrap();
    for line in fig2.lines().skip(1).step_by(17) {
        let c: Vec<f64> = line.split(',').map(num).collect();
        assert!(c[1].abs() < 1e-9);
        assert!((c[2] - 2.0 / c[0].sin().powi(2)).abs() < 1e-8 * c[2]);
        assert!((c[4] - c[0].sin().powi(2) * (8.0 / (3.0 * std::f64::consts::PI)).sqrt()).abs() < 1e-6);
    }
}
