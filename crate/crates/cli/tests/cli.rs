use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onesided"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn fractions(result: &Value) -> Vec<String> {
    result["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| format!("{}/{}", m["p"], m["q"]))
        .collect()
}

#[test]
fn expand_examples() {
    let out = run(&["expand", "--alpha", "surd:(0+1*sqrt(5))/1", "--terms", "5"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["schema"], "1");
    assert_eq!(doc["cf_prefix"].to_string(), "[2,4,4,4,4]");
    assert_eq!(doc["periodicity"]["preperiod"], 0);
    assert_eq!(doc["periodicity"]["period"], 1);

    let doc = json(&run(&["expand", "--alpha", "rat:7/2", "--terms", "10"]));
    assert_eq!(doc["cf_prefix"].to_string(), "[3,2]");
    assert_eq!(doc["periodicity"]["type"], "finite");

    let doc = json(&run(&[
        "expand",
        "--alpha",
        "cf:[3;7,15,1,292,1]",
        "--terms",
        "6",
    ]));
    let conv: Vec<String> = doc["convergents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| format!("{}/{}", r["p"], r["q"]))
        .collect();
    assert_eq!(&conv[..4], ["3/1", "22/7", "333/106", "355/113"]);
    for row in doc["convergents"].as_array().unwrap() {
        let n = row["n"].as_i64().unwrap();
        assert_eq!(
            row["residue"].as_i64().unwrap(),
            if n % 2 == 0 { 1 } else { -1 }
        );
    }
}

#[test]
fn field_order_is_fixed() {
    let out = run(&[
        "classify", "--alpha", "rat:7/2", "--kind", "1", "--side", "lower", "--q-max", "1",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = [
        "\"schema\"",
        "\"command\"",
        "\"alpha\"",
        "\"cf_prefix\"",
        "\"periodicity\"",
        "\"kind\"",
        "\"q_max\"",
        "\"results\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn classify_examples() {
    let out = run(&[
        "classify",
        "--alpha",
        "cf:[3;7,15,1,292,1]",
        "--kind",
        "2",
        "--side",
        "upper",
        "--q-max",
        "7",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(
        fractions(&doc["results"][0]),
        ["4/1", "7/2", "10/3", "13/4", "16/5", "19/6", "22/7"]
    );

    let out = run(&[
        "classify",
        "--alpha",
        "surd:(0+1*sqrt(5))/1",
        "--kind",
        "3",
        "--side",
        "upper",
        "--q-max",
        "10000",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(fractions(&doc["results"][0]), ["3/1", "9/4"]);
    assert_eq!(doc["results"][0]["check"]["agree"], true);
    assert_eq!(doc["results"][0]["finiteness"]["status"], "proven_finite");

    let doc = json(&run(&[
        "classify", "--alpha", "rat:7/2", "--kind", "1", "--side", "lower", "--q-max", "1",
    ]));
    assert_eq!(fractions(&doc["results"][0]), ["3/1"]);
}

#[test]
fn both_sides_and_oracle_command() {
    let args = [
        "--alpha",
        "surd:(1+1*sqrt(5))/2",
        "--kind",
        "2",
        "--q-max",
        "50",
    ];
    let a = json(&run(&[&["classify"][..], &args[..]].concat()));
    let b = json(&run(&[&["oracle"][..], &args[..]].concat()));
    assert_eq!(a["results"].as_array().unwrap().len(), 2);
    assert_eq!(b["command"], "oracle");
    for i in 0..2 {
        assert_eq!(fractions(&a["results"][i]), fractions(&b["results"][i]));
    }
}

#[test]
fn output_is_byte_stable() {
    let args = [
        "classify",
        "--alpha",
        "surd:(3+2*sqrt(7))/5",
        "--kind",
        "3",
        "--q-max",
        "100000",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "gaps",
        "--a",
        "rat:1/1",
        "--b",
        "surd:(0+1*sqrt(5))/1",
        "--u",
        "2.9608",
        "--m-max",
        "2000",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn digits_flag() {
    let doc = json(&run(&[
        "expand",
        "--alpha",
        "surd:(0+1*sqrt(2))/1",
        "--digits",
        "5",
        "--terms",
        "2",
    ]));
    assert_eq!(doc["value_decimal"], "1.41421±5e-6");
}

#[test]
fn check_never_disagrees_on_exact_inputs() {
    for alpha in [
        "rat:-17/29",
        "surd:(2-3*sqrt(13))/4",
        "cf:[1;2,3,(4,5)]",
        "surd:(7-8*sqrt(6))/12",
    ] {
        for kind in ["1", "2", "3", "4", "5"] {
            let out = run(&[
                "classify", "--alpha", alpha, "--kind", kind, "--q-max", "3000", "--check",
            ]);
            assert_eq!(out.status.code(), Some(0), "{alpha} kind {kind}");
        }
    }
}

#[test]
fn exit_code_parse() {
    let out = run(&[
        "classify",
        "--alpha",
        "surd:(0+1*sqr(5))/1",
        "--kind",
        "1",
        "--q-max",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("column 11"), "{err}");
    let out = run(&["expand", "--alpha", "cf:[1;2,0]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "classify", "--alpha", "rat:1/2", "--kind", "0", "--q-max", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "gaps", "--a", "rat:1/1", "--b", "rat:2/1", "--u", "-1", "--m-max", "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_exactness() {
    let out = run(&[
        "oracle",
        "--alpha",
        "dec:3.14159~5",
        "--kind",
        "1",
        "--q-max",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&[
        "classify",
        "--alpha",
        "dec:3.14159~5",
        "--kind",
        "1",
        "--q-max",
        "10",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&[
        "classify",
        "--alpha",
        "dec:3.14159265358979~14",
        "--kind",
        "3",
        "--side",
        "lower",
        "--q-max",
        "100000000000",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let doc = json(&out);
    assert_eq!(doc["results"][0]["exhaustive"], false);
    // a stream that fixes enough terms is fine
    let out = run(&[
        "classify",
        "--alpha",
        "dec:3.14159265358979~14",
        "--kind",
        "1",
        "--side",
        "upper",
        "--q-max",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fractions(&json(&out)["results"][0]).len(), 7);
    let out = run(&[
        "gaps",
        "--a",
        "dec:1.5~3",
        "--b",
        "rat:2/1",
        "--u",
        "1",
        "--m-max",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exit_code_boundary() {
    // u/π² agrees with L = 1/(2√5) to about 40 digits
    let u = "2.206910635186690531034384924258012586438";
    let args = [
        "gaps",
        "--a",
        "rat:1/1",
        "--b",
        "surd:(0+1*sqrt(5))/1",
        "--u",
        u,
        "--m-max",
        "0",
    ];
    let out = run(&[&args[..], &["--precision-bits", "64"][..]].concat());
    assert_eq!(out.status.code(), Some(5));
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gaps_examples() {
    let doc = json(&run(&[
        "gaps",
        "--a",
        "rat:1/1",
        "--b",
        "surd:(0+1*sqrt(5))/1",
        "--u",
        "2.9608",
        "--m-max",
        "10000",
    ]));
    assert_eq!(doc["classification"], "infinite");
    assert_eq!(doc["thresholds"]["L_a"]["exact"], "(sqrt(5))/10");
    assert!(doc["solution_count"].as_u64().unwrap() > 0);

    let out = run(&[
        "gaps",
        "--a",
        "rat:1/1",
        "--b",
        "surd:(0+1*sqrt(5))/1",
        "--u",
        "0.9870",
        "--m-max",
        "0",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    assert!(doc["solutions"].as_array().unwrap().is_empty());
    assert!(["infinite", "zero"].contains(&doc["classification"].as_str().unwrap()));

    // rational ratio: no limit structure, classification unknown
    let doc = json(&run(&[
        "gaps", "--a", "rat:1/1", "--b", "rat:3/2", "--u", "5", "--m-max", "10",
    ]));
    assert_eq!(doc["classification"], "unknown");
    assert!(doc["thresholds"]["L_a"].is_null());
}
