use std::process::Command as Process;

use chromlat_cli::{run, strip_timing, Cli, Outcome};
use chromlat_core::{ChainPartitionCertificate, Partition, PosetSpec};
use clap::Parser;
use serde_json::Value;

fn invoke(args: &[&str]) -> Outcome {
    let cli = Cli::try_parse_from(std::iter::once("chromlat").chain(args.iter().copied())).unwrap();
    run(&cli)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = invoke(&full);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn documented_examples() {
    let (code, v) = json(&["schur-coeff", "--poset", "prod:8x3", "--shape", "10,8,2,2,2"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["coefficient"], "-18");
    assert_eq!(v["result"]["coeffs"]["10,8,2,2,2"], "-18");
    assert_eq!(v["method"], "tabloid_closed");

    let (code, v) = json(&["scp", "--poset", "chain:4", "--type", "2,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], "12");

    let (code, v) = json(&["nice", "--poset", "b3:6", "--witness"]);
    assert_eq!(code, 4);
    assert_eq!(v["result"]["nice"], false);
    assert_eq!(v["result"]["witness"]["achieved"], "9,7,2");
    assert_eq!(v["result"]["witness"]["missing"], "6,6,6");
}

#[test]
fn schur_payload_shape() {
    let (code, v) = json(&["schur", "--poset", "chain:3"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["poset"], "chain:3");
    assert_eq!(r["degree"], 3);
    assert_eq!(r["coeffs"]["3"], "1");
    assert_eq!(r["coeffs"]["2,1"], "2");
    assert_eq!(r["coeffs"]["1,1,1"], "1");
    assert!(v["wall_time_ms"].is_u64());
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["request"]["command"], "schur");
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["poset", "--poset", "chain:"]).code, 2);
    assert_eq!(invoke(&["poset", "--poset", "prod:3y2"]).code, 2);
    assert_eq!(invoke(&["scp", "--poset", "chain:4", "--type", "1,2,1"]).code, 2);
    assert_eq!(invoke(&["scp", "--poset", "chain:4", "--type", "2,1"]).code, 1);
    assert_eq!(invoke(&["scp", "--poset", "chain:4", "--type", "2,2", "--method", "closed"]).code, 1);
    assert_eq!(invoke(&["schur", "--poset", "chain:13"]).code, 1);
    assert_eq!(invoke(&["nice", "--poset", "b3:4"]).code, 0);
    assert_eq!(invoke(&["nice", "--poset", "b3:8", "--max-elements", "20"]).code, 1);
    assert_eq!(invoke(&["schur", "--poset", "prod:2x2"]).code, 0);
    assert_eq!(invoke(&["--threads", "0", "poset", "--poset", "chain:2"]).code, 2);
    assert_eq!(invoke(&["theorem41", "--n", "1", "--k", "5"]).code, 1);

    let (code, v) = json(&["poset", "--poset", "sum:1+chain:2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("byte"));
}

#[test]
fn certificates_round_trip() {
    let cases = [
        vec!["nice", "--poset", "b3:6", "--witness"],
        vec!["chain-partition", "--poset", "sum:1+prod:4x2+2", "--type", "7,4"],
        vec!["chain-partition", "--poset", "prod:3x3", "--type", "5,3,1"],
        vec!["chain-partition", "--poset", "bool:3", "--type", "4,2,2"],
    ];
    for args in cases {
        let (_, v) = json(&args);
        let r = &v["result"];
        let cert = if r["witness"].is_object() { &r["witness"]["certificate"] } else { &r["certificate"] };
        let spec: PosetSpec = r["poset"].as_str().unwrap().parse().unwrap();
        let p = spec.build().unwrap();
        let ty: Partition = cert["type"].as_str().unwrap().parse().unwrap();
        let blocks: Vec<Vec<String>> = serde_json::from_value(cert["blocks"].clone()).unwrap();
        let rebuilt = ChainPartitionCertificate::from_labels(&p, ty, &blocks).unwrap();
        rebuilt.validate(&p).unwrap();
    }
    let (_, v) = json(&["chain-partition", "--poset", "b3:6", "--type", "6,6,6"]);
    assert_eq!(v["result"]["exists"], false);
    assert!(v["result"]["certificate"].is_null());
}

#[test]
fn deterministic_across_thread_counts() {
    let requests = [
        vec!["schur", "--poset", "prod:3x3"],
        vec!["nice", "--poset", "b3:6", "--witness", "--all-types"],
        vec!["sweep", "--family", "two-chain-negativity", "--from", "8", "--to", "20"],
        vec!["sweep", "--family", "product-niceness", "--bound", "12"],
        vec!["tabloid", "--shape", "4,3,2,1"],
    ];
    for args in requests {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let mut full = vec!["--threads", threads];
            full.extend(&args);
            let (_, mut v) = json(&full);
            strip_timing(&mut v);
            outputs.push(serde_json::to_string(&v).unwrap());
        }
        let (_, mut again) = json(&args);
        strip_timing(&mut again);
        outputs.push(serde_json::to_string(&again).unwrap());
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn bigints_are_strings() {
    let (_, v) = json(&["sweep", "--family", "two-chain-negativity", "--d", "9", "--from", "40", "--to", "45"]);
    for row in v["result"]["rows"].as_array().unwrap() {
        let c = row["coefficient"].as_str().unwrap();
        assert!(c.starts_with('-'), "{c}");
        assert!(c.parse::<i128>().is_ok());
    }
    assert_eq!(v["result"]["all_negative"], true);
}

#[test]
fn negativity_window_for_d8_ends_at_21() {
    let (_, v) = json(&["sweep", "--family", "two-chain-negativity", "--from", "8", "--to", "30"]);
    for row in v["result"]["rows"].as_array().unwrap() {
        let m = row["m"].as_u64().unwrap();
        assert_eq!(row["negative"], m <= 21, "m={m}");
    }
}

#[test]
fn theorem41_agrees_with_closed_path() {
    for (n, k, want) in [("3", "5", "-18"), ("4", "6", "-288"), ("5", "7", "-3840")] {
        let (code, v) = json(&["theorem41", "--n", n, "--k", k, "--check"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["coefficient"], want);
        assert_eq!(v["result"]["closed_path"], want);
        assert_eq!(v["result"]["compositional"], want);
    }
}

#[test]
fn tabloid_json() {
    let (code, v) = json(&["tabloid", "--shape", "2,1"]);
    assert_eq!(code, 0);
    let ts = v["result"]["tabloids"].as_array().unwrap();
    assert_eq!(ts.len(), 2);
    for t in ts {
        let cells: usize = t["hooks"].as_array().unwrap().iter().map(|h| h.as_array().unwrap().len()).sum();
        assert_eq!(cells, 3);
    }
    assert_eq!(v["result"]["signed_count"], "0");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_chromlat");
    let out = Process::new(bin)
        .args(["schur-coeff", "--poset", "prod:10x4", "--shape", "13,11,9,3,2,2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-288");

    let out = Process::new(bin).args(["nice", "--poset", "b3:2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = Process::new(bin).args(["bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Process::new(bin)
        .env("CHROMLAT_THREADS", "2")
        .args(["--json", "scp", "--poset", "prod:5x3", "--type", "7,5,3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["method"], "closed");
}
