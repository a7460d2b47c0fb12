use std::process::{Command, Output};

use proptest::prelude::*;
use symspec::catalog::{lookup, serialize_descriptor};
use symspec::eigenfun::{euclidean_laplacian, hp_restricted_space};
use symspec::polyalg::Polynomial;
use symspec_cli::record::{OutputRecord, Payload, VerificationPayload};
use symspec_cli::{exit_code, run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn symspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symspec"))
        .args(args)
        .env_remove("SYMSPEC_FORMAT")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> OutputRecord {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = symspec(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let record: OutputRecord = serde_json::from_str(&text).unwrap();
    // parse(render(x)) = x, and the rendering is stable
    let again = serde_json::to_string_pretty(&record).unwrap() + "\n";
    assert_eq!(again, text);
    record
}

#[test]
fn spectrum_examples() {
    let r = json(&["spectrum", "CP^n", "--n", "2", "--k-max", "3"]);
    assert_eq!(r.schema_version, 1);
    let Payload::Spectrum(s) = r.result else { panic!() };
    assert_eq!(s.rows.len(), 4);
    assert_eq!(s.rows[1].multiplicity_weyl, "8");
    assert_eq!(s.rows[1].multiplicity_closed.as_deref(), Some("8"));

    let Payload::Spectrum(s) = json(&["spectrum", "HP^n", "--n", "1", "--k-max", "1"]).result else {
        panic!()
    };
    assert_eq!(s.rows[1].multiplicity_weyl, "5");

    let Payload::Spectrum(s) = json(&["spectrum", "CP^n", "--n", "2", "--k-max", "0"]).result else {
        panic!()
    };
    assert_eq!(s.rows.len(), 1);
    assert_eq!(s.rows[0].eigenvalue.exact, "0");
    assert_eq!(s.rows[0].multiplicity_weyl, "1");
}

#[test]
fn spectrum_numbers_are_exact_and_decimal() {
    let Payload::Spectrum(s) = json(&["spectrum", "SU3/SO3", "--k-max", "1"]).result else { panic!() };
    let row = s.rows.iter().find(|r| r.k == [1, 0]).unwrap();
    assert_eq!(row.eigenvalue.exact, "20/3");
    assert_eq!(row.eigenvalue.decimal, "6.6666666667");
    assert!(row.energy.is_none());
    let Payload::Spectrum(s) = json(&["spectrum", "S^n", "--n", "3", "--k-max", "1"]).result else {
        panic!()
    };
    assert_eq!(s.rows[1].energy.as_ref().unwrap().exact, "8");
}

#[test]
fn splitting_examples() {
    let Payload::Splitting(s) = json(&["splitting", "8281"]).result else { panic!() };
    assert_eq!(s.real_modules, 5);
    assert_eq!(s.pairs.len(), 9);
    let Payload::Splitting(s) = json(&["splitting", "2"]).result else { panic!() };
    assert!(s.pairs.is_empty());
    let Payload::Splitting(s) = json(&["splitting", "4"]).result else { panic!() };
    assert_eq!(s.pairs.len(), 1);
    assert_eq!((s.pairs[0].k1, s.pairs[0].k2), (1, 1));
    assert_eq!(symspec(&["splitting", "0"]).status.code(), Some(EXIT_USAGE));
}

fn verification(args: &[&str]) -> VerificationPayload {
    let Payload::Verification(v) = json(args).result else { panic!() };
    v
}

#[test]
fn verify_examples() {
    let v = verification(&["verify", "CP^n", "--n", "2", "--k", "1"]);
    assert!(v.passed);
    assert_eq!(v.report.rank, Some(8));
    let v = verification(&["verify", "HP^n", "--n", "1", "--k", "1"]);
    assert!(v.passed);
    assert_eq!(v.report.rank, Some(5));
    let v = verification(&["verify", "SU3/SO3", "--p", "1", "--q", "1"]);
    assert!(v.passed);
    assert_eq!(v.report.rank, Some(27));
    assert!(v.report.check("casimir_normalization").unwrap().passed);
}

#[test]
fn emitted_generators_parse_and_are_harmonic() {
    let v = verification(&["verify", "HP^n", "--n", "1", "--k", "2", "--emit", "4"]);
    assert_eq!(v.emitted.len(), 4);
    let space = hp_restricted_space(1);
    for text in &v.emitted {
        let f = Polynomial::parse(&space, text).unwrap();
        assert_eq!(&f.to_canonical_string(), text);
        assert!(euclidean_laplacian(&f).unwrap().is_zero());
    }
    let v = verification(&["verify", "CP^n", "--n", "1", "--k", "1", "--emit"]);
    assert_eq!(v.emitted.len(), 3);
}

#[test]
fn diagram_examples() {
    let Payload::Diagram(d) = json(&["diagram", "grassmannian", "--p", "2", "--q", "5"]).result else {
        panic!()
    };
    assert_eq!(d.b2, 4);
    let Payload::Diagram(d) = json(&["diagram", "SU3/SO3"]).result else { panic!() };
    assert_eq!((d.family.as_str(), d.rank, d.b2), ("A", 2, 2));
    assert_eq!(d.white_nodes, [1, 2]);
    let Payload::Diagram(d) = json(&["diagram", "CaP2"]).result else { panic!() };
    assert_eq!(d.b2, 1);

    let table = String::from_utf8(symspec(&["diagram", "SU3/SO3"]).stdout).unwrap();
    assert!(table.contains("A2: o---o"), "{table}");
    assert!(table.contains("b2 = 2"));
}

#[test]
fn exit_codes() {
    for args in [
        &["spectrum", "RP^n", "--n", "2"][..],
        &["diagram", "nowhere"],
        &["diagram", "grassmannian", "--p", "3"],
        &["verify", "S^n", "--n", "3", "--k", "1"],
        &["verify", "CP^n", "--n", "2"],
        &["frobnicate"],
        &["spectrum", "CP^n", "--n", "2", "--format", "yaml"],
    ] {
        let out = symspec(args);
        assert_eq!(out.status.code(), Some(EXIT_USAGE), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(symspec(&["--help"]).status.code(), Some(EXIT_OK));
    assert_eq!(symspec(&["--version"]).status.code(), Some(EXIT_OK));

    let mut record = json(&["verify", "CP^n", "--n", "1", "--k", "1"]);
    assert_eq!(exit_code(&record), EXIT_OK);
    if let Payload::Verification(v) = &mut record.result {
        v.report.checks[0].passed = false;
        v.passed = v.report.passed();
    }
    assert_eq!(exit_code(&record), EXIT_VERIFY_FAILED);
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_symspec"))
        .args(["splitting", "4"])
        .env("SYMSPEC_FORMAT", "json")
        .output()
        .unwrap();
    let r: OutputRecord = serde_json::from_slice(&out.stdout).unwrap();
    assert!(matches!(r.result, Payload::Splitting(_)));
    let out = Command::new(env!("CARGO_BIN_EXE_symspec"))
        .args(["splitting", "4", "--format", "csv"])
        .env("SYMSPEC_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "q,k1,k2,dimension\n4,1,1,8\n");
}

#[test]
fn csv_is_rectangular() {
    for args in [
        &["spectrum", "CP^n", "--n", "3", "--k-max", "4", "--format", "csv"][..],
        &["verify", "CP^n", "--n", "1", "--k", "2", "--format", "csv"],
        &["diagram", "grassmannian", "--p", "3", "--q", "3", "--format", "csv"],
    ] {
        let out = symspec(args);
        assert_eq!(out.status.code(), Some(0));
        let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
        let width = reader.headers().unwrap().len();
        let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.len() == width), "{args:?}");
    }
}

#[test]
fn catalog_file_overrides_embedded_entry() {
    let dir = std::env::temp_dir().join(format!("symspec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = serialize_descriptor(&lookup("CP^n", Some(2)).unwrap());
    let edited: String = text
        .lines()
        .map(|l| if l.starts_with("sigma") { "sigma = \"1/2\"" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    let good = dir.join("cp2.toml");
    std::fs::write(&good, edited).unwrap();
    let path = good.to_str().unwrap();

    let Payload::Spectrum(base) = json(&["spectrum", "CP^n", "--n", "2", "--k-max", "1"]).result else {
        panic!()
    };
    let Payload::Spectrum(s) =
        json(&["spectrum", "CP^n", "--n", "2", "--k-max", "1", "--catalog", path]).result
    else {
        panic!()
    };
    assert_eq!(s.sigma.exact, "1/2");
    assert_ne!(s.rows[1].eigenvalue, base.rows[1].eigenvalue);
    assert_eq!(s.rows[1].multiplicity_weyl, "8");

    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "schema_version = 1\nid = \"CP^n\"\nbogus = 3\n").unwrap();
    let out = symspec(&["spectrum", "CP^n", "--n", "2", "--catalog", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    let missing = dir.join("missing.toml");
    let out = symspec(&["spectrum", "CP^n", "--n", "2", "--catalog", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let a = symspec(&["verify", "CP^n", "--n", "2", "--k", "2", "--seed", "9", "--emit", "2"]);
    let b = symspec(&["verify", "CP^n", "--n", "2", "--k", "2", "--seed", "9", "--emit", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

fn run_json(args: &[String]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut all = vec!["symspec".to_string()];
    all.extend(args.iter().cloned());
    all.extend(["--format".into(), "json".into()]);
    let code = run(all, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn json_round_trips(choice in 0usize..6, n in 1usize..6, k in 0u32..6, q in 1u64..3000) {
        let args: Vec<String> = match choice {
            0 => vec!["spectrum".into(), "CP^n".into(), "--n".into(), n.to_string(), "--k-max".into(), k.to_string()],
            1 => vec!["spectrum".into(), "S^n".into(), "--n".into(), (n + 1).to_string(), "--k-max".into(), k.to_string()],
            2 => vec!["spectrum".into(), "HP^n".into(), "--n".into(), n.to_string(), "--k-max".into(), k.to_string()],
            3 => vec!["splitting".into(), q.to_string()],
            4 => vec!["diagram".into(), "grassmannian".into(), "--p".into(), n.to_string(), "--q".into(), (n + k as usize).to_string()],
            _ => vec!["verify".into(), "CP^n".into(), "--n".into(), "1".into(), "--k".into(), (k % 3 + 1).to_string(), "--seed".into(), q.to_string()],
        };
        let (code, text) = run_json(&args);
        prop_assert_eq!(code, 0);
        let record: OutputRecord = serde_json::from_str(&text).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_value(&record).unwrap(), value);
        let back: OutputRecord = serde_json::from_value(serde_json::to_value(&record).unwrap()).unwrap();
        prop_assert_eq!(back, record);
    }
}
