use antimagic_web::{construct, leg_pattern, verify};
use serde_json::Value;

fn parse(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn construct_returns_result_trace_and_drawing() {
    let out = parse(&construct(r#"{"p":6,"k":3,"legs":[2,2,5]}"#).unwrap());
    assert_eq!(out["result"]["edges"].as_array().unwrap().len(), 15);
    assert_eq!(
        out["trace"]["joint_edges"]["matching"],
        serde_json::json!([0, 2])
    );
    let svg = out["svg"].as_str().unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<line").count(), 15);
    assert_eq!(svg.matches("<circle").count(), 16);
    assert!(!svg.contains("#f6c1c1"));
}

#[test]
fn construct_errors_are_messages() {
    assert!(construct(r#"{"p":0,"k":2,"legs":[]}"#)
        .unwrap_err()
        .contains("`p`"));
    assert!(construct(r#"{"p":5,"k":1,"legs":[2]}"#)
        .unwrap_err()
        .contains("below 2"));
    assert!(construct("not json").is_err());
}

#[test]
fn verify_round_trip_and_mutation() {
    let built = parse(&construct(r#"{"p":5,"k":4,"legs":[1,3,4]}"#).unwrap());
    let doc = built["result"].to_string();
    let ok = parse(&verify(&doc).unwrap());
    assert_eq!(ok["ok"], true);
    assert!(ok["violation"].is_null());

    let mut broken = built["result"].clone();
    broken["edges"][0]["label"] = 0.into();
    let bad = parse(&verify(&broken.to_string()).unwrap());
    assert_eq!(bad["ok"], false);
    assert!(bad["violation"]
        .as_str()
        .unwrap()
        .starts_with("NotBijection"));

    // reverse one arc at a time until two sums collide; the drawing marks them
    let n = built["result"]["edges"].as_array().unwrap().len();
    let clash = (0..n).find_map(|i| {
        let mut d = built["result"].clone();
        let flipped = if d["edges"][i]["direction"] == "forward" {
            "backward"
        } else {
            "forward"
        };
        d["edges"][i]["direction"] = flipped.into();
        let v = parse(&verify(&d.to_string()).unwrap());
        (v["ok"] == false).then_some(v)
    });
    let clash = clash.expect("some single reversal collides");
    assert!(clash["svg"].as_str().unwrap().contains("#f6c1c1"));
}

#[test]
fn leg_pattern_matches_closed_forms() {
    for (kind, k) in [("I", 6), ("I", 7), ("II", 6), ("III", 7), ("II", 12)] {
        let out = parse(&leg_pattern(kind, k, 40, 3).unwrap());
        assert_eq!(out["sums"], out["closed_form"], "{kind} k={k}");
        assert_eq!(out["labels"].as_array().unwrap().len(), k);
    }
    let out = parse(&leg_pattern("II", 6, 20, 2).unwrap());
    assert_eq!(out["labels"], serde_json::json!([16, 10, 18, 12, 20, 14]));
    assert!(leg_pattern("II", 5, 20, 2).is_err());
    assert!(leg_pattern("IV", 5, 20, 2).is_err());
}
