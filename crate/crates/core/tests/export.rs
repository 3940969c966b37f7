use evenpoints::polytope::{build_pw, build_qw, normality_check};
use evenpoints::toric::{export_basis, generate_basis, groebner_certify, TermOrderContext};
use evenpoints::WeightVector;
use serde_json::{json, Value};

fn w(s: &str) -> WeightVector {
    s.parse().unwrap()
}

#[test]
fn polytope_json_shape() {
    let p = serde_json::to_value(build_pw(&w("2^4")).unwrap()).unwrap();
    assert_eq!(p["dim"], 1);
    assert_eq!(p["lattice"], "2Z");
    assert_eq!(p["equalities"], json!([]));
    assert_eq!(p["inequalities"].as_array().unwrap().len(), 6);
    assert_eq!(p["inequalities"][0], json!({"normal": [-1], "offset": 4}));

    let q = serde_json::to_value(build_qw(&w("1^4"))).unwrap();
    assert_eq!(q["lattice"], "Z");
    assert_eq!(q["equalities"], json!([{"normal": [2, 2, 2, 2], "offset": -4}]));
}

#[test]
fn basis_json_shape() {
    let ctx = TermOrderContext::new(&w("2^6")).unwrap();
    let basis = generate_basis(&ctx).unwrap();
    let value = serde_json::to_value(export_basis(&ctx, &basis)).unwrap();
    let entries = value.as_array().unwrap();
    assert_eq!(entries.len(), basis.len());
    for e in entries {
        let kind = e["type"].as_str().unwrap();
        assert!(kind == "A" || kind == "B");
        assert_eq!(e.get("position").is_some(), kind == "B");
        for side in ["lhs", "rhs"] {
            let points = e[side].as_array().unwrap();
            assert_eq!(points.len(), 2);
            assert!(points.iter().all(|p| p.as_array().unwrap().len() == 3));
        }
    }
    assert!(entries.iter().any(|e| e["type"] == "B"));
}

#[test]
fn export_is_deterministic() {
    let once = || {
        let ctx = TermOrderContext::new(&w("2,4,2,4,2")).unwrap();
        serde_json::to_string(&export_basis(&ctx, &generate_basis(&ctx).unwrap())).unwrap()
    };
    assert_eq!(once(), once());
    let report = || serde_json::to_string(&groebner_certify(&w("2^5"), 3).unwrap()).unwrap();
    assert_eq!(report(), report());
}

#[test]
fn reports_serialize() {
    let r: Value = serde_json::to_value(normality_check(&w("2^5"), 2).unwrap()).unwrap();
    assert_eq!(r["weights"], json!([2, 2, 2, 2, 2]));
    assert_eq!(r["levels"][0], json!({"level": 1, "points": 6, "failures": []}));
}
