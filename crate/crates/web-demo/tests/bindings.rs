use border3_web::{classify_tensor, limit_demo, normal_form};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn generate_then_classify() {
    for id in 34..=39 {
        let t = normal_form("orbit", 3, id, 7);
        let v = parse(&classify_tensor(&t));
        assert_eq!(v["report"]["orbit_id"], id);
        assert_eq!(v["slice_cubics"].as_array().unwrap().len(), 3);
    }
    let v = parse(&classify_tensor(&normal_form("iv", 4, 0, 0)));
    assert_eq!(v["report"]["type_tag"]["type"], "iv");
    assert!(v.get("slice_cubics").is_none());
    let v = parse(&classify_tensor(&normal_form("sigma2", 3, 0, 3)));
    assert_eq!(v["report"]["border_rank_class"], "2");
}

#[test]
fn limit_cases() {
    for (case, tag) in [("honest_secant", "i"), ("point_plus_tangent", "ii"), ("collision", "iii-iv"), ("line", "iii-iv")] {
        let v = parse(&limit_demo(case, 5));
        assert_eq!(v["predicted_type"], tag, "{case}");
        assert_eq!(v["classification"]["border_rank_class"], "3");
    }
}

#[test]
fn errors_are_json() {
    assert!(parse(&classify_tensor("{")).get("error").is_some());
    assert!(parse(&normal_form("v", 3, 0, 0)).get("error").is_some());
    assert!(parse(&normal_form("orbit", 3, 40, 0)).get("error").is_some());
    assert!(parse(&limit_demo("spiral", 1)).get("error").is_some());
}
