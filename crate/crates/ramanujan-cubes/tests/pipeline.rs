use ramanujan_cubes::pipeline::*;

fn cfg(text: &str) -> RunConfig {
    RunConfig::from_json(text).unwrap()
}

#[test]
fn parses_example_configs() {
    let c = cfg(r#"{"primes":[5],"N1":13,"k":0}"#);
    assert_eq!(c.n1, Modulus::Fixed(13));
    assert_eq!(c.tol(), 1e-8);
    assert_eq!(c.max_dim(), 20000);
    assert_eq!(c.max_depth(), 12);
    let c = cfg(r#"{"primes":[5,13],"N1":"auto","k":2}"#);
    assert_eq!(c.n1, Modulus::Auto("auto".into()));
    assert_eq!(c.k, 2);
}

#[test]
fn rejects_bad_configs() {
    for text in [
        r#"{"primes":[5,5],"N1":13}"#,
        r#"{"primes":[],"N1":13}"#,
        r#"{"primes":[5],"N1":"later"}"#,
        r#"{"primes":[5],"N1":9}"#,
        r#"{"primes":[5],"N1":5}"#,
        r#"{"primes":[4],"N1":13}"#,
        r#"{"primes":[5],"N1":13,"colour":1}"#,
        r#"{"primes":[5],"N1":13,"tol":-1}"#,
        r#"{"primes":[5]"#,
    ] {
        let e = RunConfig::from_json(text).unwrap_err();
        assert_eq!(e.exit_code(), 2, "{text}: {e}");
    }
}

#[test]
fn missing_file_is_a_config_error() {
    let e = parse_config(std::path::Path::new("/nonexistent/run.json")).unwrap_err();
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn hash_ignores_formatting() {
    let a = cfg(r#"{"primes":[5],"N1":13}"#);
    let b = cfg("{ \"N1\": 13,\n  \"primes\": [5], \"k\": 0 }");
    assert_eq!(a.hash(), b.hash());
    assert_eq!(a.hash().len(), 64);
    assert_ne!(a.hash(), cfg(r#"{"primes":[5],"N1":17}"#).hash());
}

#[test]
fn small_run_is_ramanujan_and_deterministic() {
    let c = cfg(r#"{"primes":[5],"N1":7,"k":0,"dot":true}"#);
    let a = run(&c, &Stages::all());
    assert_eq!(a.exit_code, 0);
    assert_eq!(a.report.stage, "complete");
    assert_eq!(a.report.ramanujan, Some(true));
    assert_eq!(a.report.cohomology.as_deref(), Some(&[1usize, a.report.complex.as_ref().unwrap().euler_characteristic.unsigned_abs() as usize + 1][..]));
    let b = run(&c, &Stages::all());
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    a.write(dir_a.path()).unwrap();
    b.write(dir_b.path()).unwrap();
    for f in ["report.json", "spectrum.csv", "complex.dot"] {
        let x = std::fs::read(dir_a.path().join(f)).unwrap();
        let y = std::fs::read(dir_b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(dir_a.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["tool"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(json["tolerances"]["eigenvalue"], 1e-8);
}

#[test]
fn auto_search_records_modulus() {
    let c = cfg(r#"{"primes":[5,13],"N1":"auto","k":2}"#);
    let out = run(&c, &Stages { verify: true, spectrum: true, ..Stages::default() });
    assert_eq!(out.exit_code, 0);
    let stats = out.report.complex.as_ref().unwrap();
    assert_eq!(stats.n1, 3);
    assert!(stats.n1_searched);
    assert_eq!(stats.r, vec![6, 14]);
    let v = out.report.verification.as_ref().unwrap();
    assert!(v.local_system.flat && v.local_system.unitary && v.parities && v.connected);
    assert_eq!(out.report.spectra.len(), 4);
    assert_eq!(out.report.ramanujan, Some(true));
}

#[test]
fn central_condition_failure_stops_at_locsys() {
    let c = cfg(r#"{"primes":[5],"N1":13,"k":1}"#);
    let out = run(&c, &Stages::all());
    assert_eq!(out.exit_code, 3);
    assert_eq!(out.report.stage, "locsys");
    assert!(out.report.error.as_ref().unwrap().contains("central condition"));
    assert!(out.report.complex.is_some());
}

#[test]
fn generator_shortage_is_a_construction_error() {
    let c = cfg(r#"{"primes":[7],"N1":13}"#);
    let out = run(&c, &Stages::all());
    assert_eq!(out.exit_code, 3);
    assert_eq!(out.report.stage, "build");
    assert!(out.report.complex.is_none());
}

#[test]
fn dimension_cap_is_internal() {
    let c = cfg(r#"{"primes":[5],"N1":7,"max_dim":10}"#);
    let out = run(&c, &Stages { spectrum: true, ..Stages::default() });
    assert_eq!(out.exit_code, 5);
    assert_eq!(out.report.stage, "spectrum");
}
