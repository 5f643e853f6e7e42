use std::path::PathBuf;

use endoatlas::numfield::GaloisLabel;
use endoatlas::quatorder::Quaternion;
use endoatlas_cli::verify::{verify_paper, Fixtures};
use endoatlas_cli::{run_with_env, Output, EXIT_ERROR, EXIT_HYPOTHESIS, EXIT_OK, EXIT_SCHEMA, EXIT_USAGE};
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    let mut argv = vec!["endoatlas"];
    argv.extend_from_slice(args);
    run_with_env(argv, None)
}

fn doc(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", out.stdout))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("endoatlas-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn documented_examples() {
    let out = run(&["class-number", "-d", "-131"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(doc(&out)["result"], 5);

    let out = run(&["qm-verdict", "--D", "6", "--m", "3"]);
    assert_eq!(doc(&out)["result"], "L_contained_in_2_torsion_field");

    let out = run(&["quintic-galois", "--coeffs", "[-16,88,95,107,-19,1]"]);
    let d = doc(&out);
    assert_eq!(d["result"], "D5");
    assert_eq!(d["input"]["seed"], 0);
    assert_eq!(d["input"]["seed_source"], "default");
    assert_eq!(d["input"]["coeffs"][0], "-16");
}

#[test]
fn every_subcommand_answers() {
    let cases: &[&[&str]] = &[
        &["quartic-galois", "--coeffs", "[3,4,2,-1,1]"],
        &["quat-order", "--D", "15", "--m", "5"],
        &["quat-action", "--D", "6", "--m", "3"],
        &["twists", "--D", "6", "--m", "3"],
        &["cyclo-subfields", "-p", "7"],
        &["dedekind2", "--coeffs", "[3,4,2,-1,1]"],
        &["classify-cp", "-g", "3"],
        &["classify-quintic", "--coeffs", "[-1,-2,5,2,-4,1]", "--seed", "4"],
        &["endo-field", "--coeffs", "[-1,-1,1]", "--order", "maximal"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stdout);
        let d = doc(&out);
        let keys: Vec<&String> = d.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["certificates", "command", "input", "result", "version"]);
        assert_eq!(d["command"], args[0]);
    }
    let d = doc(&run(&["quat-order", "--D", "6", "--m", "3"]));
    assert_eq!(d["result"]["standard_lattice_discriminant"], "24");
    assert_eq!(d["result"]["orders"][0]["reduced_discriminant"], "6");
    let d = doc(&run(&["twists", "--D", "6", "--m", "3"]));
    assert_eq!(d["result"]["norms"], serde_json::json!(["2", "3"]));
    let d = doc(&run(&["classify-quintic", "--coeffs", "[1,12,52,104,104,52]", "--candidate", "[3,4,2,-1,1]"]));
    assert!(d["certificates"]["lines"].as_array().unwrap().iter().any(|l| l["statement"]
        .as_str()
        .unwrap()
        .contains("L = EK")));
}

#[test]
fn exit_codes() {
    let out = run(&["classify-cp", "-g", "2", "--base-d", "-131"]);
    assert_eq!(out.code, EXIT_HYPOTHESIS);
    let d = doc(&out);
    assert_eq!(d["result"], "hypothesis-failure");
    assert!(d["certificates"]["lines"][1]["data"]["caveat"].as_str().unwrap().contains("-131"));

    assert_eq!(run(&["endo-field", "--coeffs", "[3,0,1]"]).code, EXIT_HYPOTHESIS);
    assert_eq!(run(&["classify-cp", "-g", "4"]).code, EXIT_ERROR);
    assert_eq!(run(&["quintic-galois", "--coeffs", "[1,0,1]"]).code, EXIT_ERROR);
    assert_eq!(run(&["class-number", "-d", "7"]).code, EXIT_ERROR);
    assert_eq!(run(&["quat-order", "--D", "6", "--m", "5"]).code, EXIT_ERROR);

    assert_eq!(run(&[]).code, EXIT_USAGE);
    assert_eq!(run(&["no-such-command"]).code, EXIT_USAGE);
    assert_eq!(run(&["class-number"]).code, EXIT_USAGE);
    assert_eq!(run(&["quintic-galois", "--coeffs", "[1,2"]).code, EXIT_USAGE);
    assert_eq!(run(&["quintic-galois", "--coeffs", "[1.5,2]"]).code, EXIT_USAGE);
    assert_eq!(run(&["endo-field", "--coeffs", "[1,1]", "--order", "weird"]).code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
}

#[test]
fn job_files() {
    let ok = temp_file("ok.json", r#"{"command":"class-number","params":{"d":-131}}"#);
    let out = run(&["--job", ok.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(doc(&out)["result"], 5);

    let unknown_field = temp_file("unknown.json", r#"{"command":"class-number","params":{"d":-131,"x":1}}"#);
    assert_eq!(run(&["--job", unknown_field.to_str().unwrap()]).code, EXIT_SCHEMA);
    let unknown_top = temp_file("top.json", r#"{"command":"class-number","extra":true}"#);
    assert_eq!(run(&["--job", unknown_top.to_str().unwrap()]).code, EXIT_SCHEMA);
    let bad_command = temp_file("cmd.json", r#"{"command":"frobnicate"}"#);
    assert_eq!(run(&["--job", bad_command.to_str().unwrap()]).code, EXIT_SCHEMA);
    let missing = temp_file("missing.json", r#"{"command":"class-number"}"#);
    assert_eq!(run(&["--job", missing.to_str().unwrap()]).code, EXIT_SCHEMA);

    // randomised commands need a seed in machine mode
    let quintic = r#"{"command":"quintic-galois","params":{"coeffs":["-1","-2","5","2","-4","1"]}}"#;
    let no_seed = temp_file("noseed.json", quintic);
    assert_eq!(run(&["--job", no_seed.to_str().unwrap()]).code, EXIT_SCHEMA);
    let via_env = run_with_env(["endoatlas", "--job", no_seed.to_str().unwrap()], Some("9"));
    assert_eq!(via_env.code, EXIT_OK);
    assert_eq!(doc(&via_env)["input"]["seed"], 9);
    assert_eq!(doc(&via_env)["input"]["seed_source"], "environment");

    let output = std::env::temp_dir().join(format!("endoatlas-{}-written.json", std::process::id()));
    let with_output = temp_file(
        "output.json",
        &format!(
            r#"{{"command":"quintic-galois","params":{{"coeffs":[-2,0,0,0,0,1],"seed":3}},"output":{}}}"#,
            serde_json::to_string(output.to_str().unwrap()).unwrap()
        ),
    );
    let out = run(&["--job", with_output.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&output).unwrap(), out.stdout);
    assert_eq!(doc(&out)["result"], "F5");

    assert_eq!(run(&["--job", "/nonexistent/job.json"]).code, EXIT_USAGE);
}

#[test]
fn seed_precedence() {
    let argv = ["endoatlas", "quintic-galois", "--coeffs", "[-1,-2,5,2,-4,1]", "--seed", "5"];
    let d = doc(&run_with_env(argv, Some("9")));
    assert_eq!(d["input"]["seed"], 5);
    assert_eq!(d["input"]["seed_source"], "explicit");
    let d = doc(&run_with_env(["endoatlas", "quintic-galois", "--coeffs", "[-1,-2,5,2,-4,1]"], Some("9")));
    assert_eq!(d["input"]["seed"], 9);
    assert_eq!(d["certificates"]["confidence"]["seed"], 9);
    let bad = run_with_env(["endoatlas", "quintic-galois", "--coeffs", "[-1,-2,5,2,-4,1]"], Some("nine"));
    assert_eq!(bad.code, EXIT_USAGE);
}

#[test]
fn output_round_trips() {
    for args in [
        &["classify-quintic", "--coeffs", "[-16,88,95,107,-19,1]", "--candidate", "[-13,0,1]"][..],
        &["quat-action", "--D", "15", "--m", "5"][..],
        &["cyclo-subfields", "-p", "11"][..],
        &["verify-paper"][..],
    ] {
        let out = run(args);
        let again = serde_json::to_string_pretty(&doc(&out)).unwrap() + "\n";
        assert_eq!(again, out.stdout);
        fn no_floats(v: &Value) -> bool {
            match v {
                Value::Number(n) => !n.is_f64(),
                Value::Array(a) => a.iter().all(no_floats),
                Value::Object(o) => o.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&doc(&out)), "{args:?}");
    }
}

#[test]
fn reports_are_reproducible() {
    let args = ["classify-quintic", "--coeffs", "[-1,-2,5,2,-4,1]", "--base-d", "5", "--seed", "17"];
    assert_eq!(run(&args), run(&args));
    assert_eq!(run(&["verify-paper"]), run(&["verify-paper"]));
}

#[test]
fn schema_lists_the_report_keys() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../schemas/report.json")).expect("schema is valid JSON");
    let required = &schema["$defs"]["success"]["required"];
    assert_eq!(required, &serde_json::json!(["certificates", "command", "input", "result", "version"]));
    let commands: Vec<&str> =
        schema["$defs"]["command"]["enum"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(commands.len(), 13);
    for c in commands {
        let out = run(&[c, "--help"]);
        assert_eq!(out.code, EXIT_OK, "{c}");
    }
}

#[test]
fn fault_injection_names_the_item() {
    let clean = verify_paper(&Fixtures::standard());
    assert!(clean.all_passed(), "{:?}", clean.table());

    let mut fx = Fixtures::standard();
    fx.even_disc_order.basis[1] = Quaternion::halves(2, 1, 1, 1, 1);
    let r = verify_paper(&fx);
    let failed: Vec<&str> = r.items.iter().filter(|i| !i.pass).map(|i| i.id).collect();
    assert!(failed.contains(&"order-even-disc-m3"), "{failed:?}");
    assert!(r.table().iter().any(|l| l.starts_with("FAIL order-even-disc-m3")));
    assert!(failed.iter().all(|id| ["order-even-disc-m3", "action-even-disc", "twist-norms"].contains(id)));

    let mut fx = Fixtures::standard();
    fx.quintics[0].label = GaloisLabel::A5;
    let r = verify_paper(&fx);
    assert_eq!(r.items.iter().filter(|i| !i.pass).map(|i| i.id).collect::<Vec<_>>(), ["quintic-labels"]);

    let mut fx = Fixtures::standard();
    fx.class_number_131 = 7;
    assert!(!verify_paper(&fx).item("class-number-131").unwrap().pass);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn malformed_coefficients_never_succeed(junk in "[a-z\\[\\],.\" ]{0,12}") {
        prop_assume!(serde_json::from_str::<Vec<i64>>(&junk).is_err());
        for cmd in ["quintic-galois", "quartic-galois", "dedekind2", "endo-field", "classify-quintic"] {
            let out = run(&[cmd, "--coeffs", &junk]);
            prop_assert_ne!(out.code, EXIT_OK, "{} {:?}", cmd, junk);
        }
    }

    #[test]
    fn malformed_job_files_never_succeed(key in "[a-z_]{1,8}", value in -5i64..5) {
        prop_assume!(!["coeffs", "d", "m", "g", "p", "base_d", "candidate", "mu", "order", "assert_galois", "budget", "seed"]
            .contains(&key.as_str()));
        let path = temp_file(&format!("prop-{key}-{value}.json"),
            &format!(r#"{{"command":"class-number","params":{{"d":-131,"{key}":{value}}}}}"#));
        let out = run(&["--job", path.to_str().unwrap()]);
        prop_assert_eq!(out.code, EXIT_SCHEMA);
    }

    #[test]
    fn wrong_degree_quintics_fail(coeffs in proptest::collection::vec(-9i64..9, 1..5)) {
        let text = serde_json::to_string(&coeffs).unwrap();
        let out = run(&["quintic-galois", "--coeffs", &text]);
        prop_assert_ne!(out.code, EXIT_OK);
    }
}
