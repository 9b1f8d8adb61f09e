use std::path::PathBuf;

use brenke_core::cli::run;
use brenke_core::families::{build_family, catalog};
use brenke_core::scalar::Scalar;
use brenke_core::series::PowerSeries;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("brenke").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert!(expected == actual, "golden mismatch for {name}");
}

#[test]
fn family_build_goldens() {
    for e in catalog() {
        let (code, out, err) = call(&["family-build", "--sample", e.name, "-N", "12", "--json"]);
        assert_eq!(code, 0, "{}: {err}", e.name);
        check_golden(&format!("family-build-{}.json", e.name), &out);
    }
}

#[test]
fn classify_goldens() {
    for e in catalog() {
        let (code, out, err) = call(&["classify", "--sample", e.name, "-N", "26", "--json"]);
        assert_eq!(code, 0, "{}: {err}", e.name);
        check_golden(&format!("classify-{}.json", e.name), &out);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "family-build",
            "--sample",
            "chihara-b111",
            "-N",
            "10",
            "--json",
        ][..],
        &["check", "--sample", "g2", "-N", "18", "--json"][..],
        &["recur", "--sample", "laguerre", "-N", "12", "--csv"][..],
    ] {
        assert_eq!(call(args), call(args));
    }
}

#[test]
fn oracles_agree_on_exit_codes() {
    for e in catalog() {
        let codes: Vec<i32> = ["recurrence", "dual", "delta"]
            .iter()
            .map(|o| call(&["check", "--sample", e.name, "-N", "20", "--oracle", o]).0)
            .collect();
        assert_eq!(codes, [0, 0, 0], "{}", e.name);
    }
    let codes: Vec<i32> = ["recurrence", "dual", "delta"]
        .iter()
        .map(|o| {
            call(&[
                "check", "--name", "hermite", "--c3", "0", "-N", "16", "--oracle", o,
            ])
            .0
        })
        .collect();
    assert_eq!(codes, [1, 1, 1]);
}

#[test]
fn documented_examples() {
    let (code, out, _) = call(&[
        "family-build",
        "--name",
        "hermite",
        "--c2",
        "1",
        "--c3",
        "1",
        "--alpha",
        "1",
        "-N",
        "8",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let a: Vec<&str> = v["A"]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["u"].as_str().unwrap())
        .collect();
    assert_eq!(&a[..5], ["1", "0", "1", "1", "1/2"]);

    let (code, out, _) = call(&[
        "check", "--name", "laguerre", "--a1", "1", "--lambda", "1", "--mu", "2", "--gamma", "3",
        "-N", "20", "-d", "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("positive"));

    let (code, out, _) = call(&["classify", "--name", "hermite", "-N", "20", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["label"], "A2_Hermite");
}

#[test]
fn coefficient_files_round_trip() {
    let e = catalog().into_iter().find(|e| e.name == "b1312-i").unwrap();
    let set = build_family(&e.spec, 20).unwrap();
    let dir = std::env::temp_dir().join(format!("brenke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    std::fs::write(&a, serde_json::to_string(set.a()).unwrap()).unwrap();
    std::fs::write(&b, serde_json::to_string(set.b()).unwrap()).unwrap();
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());

    let from_files = call(&["gen", "--a-file", a, "--b-file", b, "--json"]);
    let from_sample = call(&["gen", "--sample", "b1312-i", "-N", "20", "--json"]);
    assert_eq!(from_files, from_sample);
    assert_eq!(call(&["check", "--a-file", a, "--b-file", b]).0, 0);
    let (code, out, _) = call(&["classify", "--a-file", a, "--b-file", b, "--json"]);
    assert_eq!(code, 0);
    assert!(out.contains("B1312_i"));

    // a quartic bump in A breaks 2-orthogonality
    let bump = PowerSeries::from_fn(set.a().order(), |k| {
        if k == 4 {
            Scalar::frac(1, 7)
        } else {
            Scalar::zero()
        }
    });
    let bumped = set.a().add(&bump);
    std::fs::write(dir.join("a.json"), serde_json::to_string(&bumped).unwrap()).unwrap();
    assert_eq!(call(&["check", "--a-file", a, "--b-file", b]).0, 1);
    assert_eq!(call(&["classify", "--a-file", a, "--b-file", b]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_code_contract() {
    assert_eq!(call(&["family-list"]).0, 0);
    assert_eq!(call(&["family-list", "--json"]).0, 0);
    assert_eq!(call(&[]).0, 2);
    assert_eq!(call(&["check", "--sample", "nope"]).0, 2);
    assert_eq!(call(&["check", "--sample", "laguerre", "-d", "4"]).0, 2);
    assert_eq!(
        call(&[
            "gen",
            "--a-file",
            "/nonexistent/a.json",
            "--b-file",
            "/nonexistent/b.json"
        ])
        .0,
        2
    );
    let (code, _, err) = call(&["family-build", "--name", "chihara", "--q", "1"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("invalid parameter"));
    let (code, _, _) = call(&["family-build", "--name", "laguerre", "--lambda", "-2"]);
    assert_eq!(code, 2);
    assert_eq!(
        call(&["check", "--name", "hermite", "--c3", "0", "-d", "2"]).0,
        1
    );
    assert_eq!(
        call(&["check", "--name", "hermite", "--c3", "0", "-d", "1"]).0,
        0
    );
    assert_eq!(call(&["classify", "--name", "hermite", "--c3", "0"]).0, 1);
}

#[test]
fn csv_outputs_are_exact() {
    let (code, out, _) = call(&["gen", "--sample", "laguerre", "-N", "5", "--csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,x^0,x^1,x^2,x^3,x^4,x^5");
    assert_eq!(lines[4], "3,1/6,1/4,1/24,1/864,,");
    assert!(!out.contains('.'));
    let (code, out, _) = call(&["recur", "--sample", "hermite-a2", "-N", "12", "--csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().contains(','));
}

#[test]
fn file_inputs_default_to_their_own_order() {
    let dir = std::env::temp_dir().join(format!("brenke-order-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = PowerSeries::new(vec![Scalar::one(), Scalar::frac(1, 2), Scalar::zero()]);
    let b = PowerSeries::new(vec![Scalar::one(), Scalar::one(), Scalar::frac(1, 2), Scalar::one()]);
    let (pa, pb) = (dir.join("a.json"), dir.join("b.json"));
    std::fs::write(&pa, serde_json::to_string(&a).unwrap()).unwrap();
    std::fs::write(&pb, serde_json::to_string(&b).unwrap()).unwrap();
    let (pa, pb) = (pa.to_str().unwrap(), pb.to_str().unwrap());
    let (code, out, _) = call(&["gen", "--a-file", pa, "--b-file", pb, "--csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
    assert_eq!(call(&["gen", "--a-file", pa, "--b-file", pb, "-N", "9"]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
