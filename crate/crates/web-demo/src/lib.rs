//! Browser bindings: every export takes and returns JSON strings, with failures reported
//! as `{"error": "..."}` so the page never has to catch exceptions.

use border3::classifier::classify;
use border3::equations::{cubic_line_pattern, slice_det_cubic};
use border3::limits::{limit_type, sample_plane_point, segre_point, segre_recipe, LimitCase, PLANE_SAMPLE_SEED};
use border3::normal_forms::{orbit_representative, sigma2_point, sigma3_point, SigmaThreeSpec, SigmaType};
use border3::random::{random_gl, rng};
use border3::{Result, Tensor};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn classify_value(tensor_json: &str) -> Result<Value> {
    let t = Tensor::from_json_str(tensor_json)?;
    let report = classify(&t);
    let mut out = json!({ "report": report });
    if t.dims() == [3, 3, 3] {
        let cubics = (0..3)
            .map(|m| {
                let c = slice_det_cubic(&t, m)?;
                Ok(json!({ "mode": m, "cubic": c.to_string(), "pattern": cubic_line_pattern(&c) }))
            })
            .collect::<Result<Vec<_>>>()?;
        out["slice_cubics"] = Value::Array(cubics);
    }
    Ok(out)
}

/// Classification report, plus the slice determinant cubics for 3 x 3 x 3 input.
#[wasm_bindgen]
pub fn classify_tensor(tensor_json: &str) -> String {
    respond(classify_value(tensor_json))
}

fn normal_form_value(kind: &str, n: usize, orbit: u32, seed: u64) -> Result<Value> {
    let t = match kind {
        "orbit" => orbit_representative(orbit)?,
        "sigma2" => sigma2_point(n, &(0..n).collect::<Vec<_>>(), &vec![2; n])?,
        tag => sigma3_point(&SigmaThreeSpec::new(tag.parse::<SigmaType>()?, n))?,
    };
    let t = if seed == 0 { t } else { t.apply_gl(&random_gl(&mut rng(seed), t.dims()))? };
    Ok(serde_json::to_value(t.to_json()).expect("tensor json"))
}

/// A normal form (`sigma2`, `i`..`iv` or `orbit`) as tensor JSON; a nonzero seed applies a
/// random change of basis.
#[wasm_bindgen]
pub fn normal_form(kind: &str, n: usize, orbit: u32, seed: u64) -> String {
    respond(normal_form_value(kind, n, orbit, seed))
}

fn limit_value(case: &str, seed: u64) -> Result<Value> {
    let case: LimitCase = serde_json::from_value(json!(case))
        .map_err(|_| border3::Error::InvalidArgument(format!("unknown limit case {case:?}")))?;
    let dims = [3, 3, 3];
    let cfg = segre_recipe(&dims, case, &mut rng(seed))?;
    let plane = cfg.limit_plane()?;
    let point = segre_point(&dims, &sample_plane_point(&plane.plane, PLANE_SAMPLE_SEED))?;
    Ok(json!({
        "config": cfg.to_json(),
        "predicted_type": limit_type(&cfg)?,
        "limit": plane.to_json(),
        "sample_point": point.to_json(),
        "classification": classify(&point).without_witnesses(),
    }))
}

/// Random curves on Seg(P2 x P2 x P2) for one case of the limit analysis (`honest_secant`,
/// `point_plus_tangent`, `collision`, `line`), their limit plane, and the class of a point on it.
#[wasm_bindgen]
pub fn limit_demo(case: &str, seed: u64) -> String {
    respond(limit_value(case, seed))
}
