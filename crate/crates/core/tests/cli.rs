use apn20::cli::{run, Outcome, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("apn20").chain(args.iter().copied()))
}

#[test]
fn verify_all_over_gf8() {
    let out = cli(&["verify", "--field", "3", "--all"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("all identities hold"));
}

#[test]
fn scan_x5_reports_odd_degrees() {
    let out = cli(&["scan", "--poly", "x^5", "--n-from", "2", "--n-to", "10", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let apn: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["is_apn"] == true)
        .map(|r| r["n"].as_u64().unwrap())
        .collect();
    assert_eq!(apn, vec![3, 5, 7, 9]);
}

#[test]
fn divisors_has_two_survivors() {
    for conv in ["paper", "frobenius"] {
        let out = cli(&["divisors", "--convention", conv, "--json"]);
        assert_eq!(out.code, EXIT_OK);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(
            v["survivors"],
            serde_json::json!(["A0 + A1 + A2", "A0 + A1 + A2 + C1 + C2"])
        );
    }
}

#[test]
fn json_round_trip_is_idempotent() {
    let runs: [&[&str]; 5] = [
        &["verify", "--field", "2", "--identity", "d", "--json"],
        &["apn", "--field", "5", "--poly", "x^5 + 0x3*x^3", "--json"],
        &["scan", "--poly", "x^3", "--n-from", "2", "--n-to", "6", "--json"],
        &["classify", "--field", "1", "--poly", "x^20 + x^10 + x^5", "--json"],
        &["divisors", "--json"],
    ];
    for args in runs {
        let out = cli(args);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, out.stdout, "{args:?}");
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn identical_configs_give_identical_reports() {
    let args = ["classify", "--field", "1", "--poly", "x^20 + x^18 + x^17 + x^12 + x^10 + x^9 + x^8 + x^6 + x^5"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a, b);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let c = pool.install(|| cli(&args));
    assert_eq!(a, c);
}

#[test]
fn elements_are_hex_strings() {
    let out = cli(&["apn", "--field", "4", "--poly", "x^3", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    for e in v["worst_pair"].as_array().unwrap() {
        assert!(e.as_str().unwrap().starts_with("0x"));
    }
}

#[test]
fn exit_codes() {
    let bad_poly = cli(&["apn", "--field", "4", "--poly", "x^2 + + x"]);
    assert_eq!(bad_poly.code, EXIT_USAGE);
    assert!(bad_poly.stderr.contains("offset"));
    assert!(bad_poly.stderr.contains('^'));
    assert_eq!(cli(&["apn", "--field", "4:0x11", "--poly", "x"]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(cli(&["classify", "--field", "1", "--poly", "x^19"]).code, EXIT_USAGE);
    let big = cli(&["apn", "--field", "21", "--poly", "x^3"]);
    assert_eq!(big.code, EXIT_RESOURCE);
    assert!(big.stderr.contains("2^20"));
    assert_eq!(cli(&["apn", "--field", "11", "--poly", "x^3", "--full-ddt"]).code, EXIT_RESOURCE);
    assert_eq!(cli(&["scan", "--poly", "x^3", "--n-from", "2", "--n-to", "30"]).code, EXIT_RESOURCE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

#[test]
fn classify_reports_family_a_witness() {
    let out = cli(&[
        "classify",
        "--field",
        "1",
        "--poly",
        "x^20 + x^18 + x^17 + x^12 + x^10 + x^9 + x^8 + x^6 + x^5",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["family"], "A");
    assert_eq!(v["witness"]["kind"], "gold_compose");
    assert_eq!(v["witness"]["L"], "x^4 + x^2 + x");
    assert_eq!(v["witness"]["delta_check"]["agrees"], true);
}

#[test]
fn csv_scan_has_header_and_rows() {
    let out = cli(&["scan", "--poly", "x^3", "--n-from", "2", "--n-to", "4", "--csv"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "n,delta,is_apn,worst_a,worst_b,skipped");
    assert_eq!(lines.len(), 4);
}
