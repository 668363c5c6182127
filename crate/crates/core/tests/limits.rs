mod common;

use border3::classifier::classify;
use border3::equations::strassen_equations;
use border3::limits::{
    fubini_orders, limit_span, limit_type, prolongation_check, sample_plane_point, segre_point, segre_recipe,
    LimitCase, LimitConfig, LimitType, Series, SeriesVector, PLANE_SAMPLE_SEED,
};
use border3::normal_forms::CominusculeModel;
use border3::random::{random_vector, rng, small_int, small_nonzero};
use border3::rational::q;
use border3::Error;
use common::{line_start_series, prolongation_input, prolongation_models, same_span};
use num_traits::Zero;

#[test]
fn recipes_reach_their_branch() {
    let mut g = rng(41);
    for dims in [vec![3, 3, 3], vec![3, 4, 3]] {
        for case in LimitCase::ALL {
            for _ in 0..5 {
                let cfg = segre_recipe(&dims, case, &mut g).unwrap();
                assert_eq!(limit_type(&cfg).unwrap(), case.expected());
                let plane = cfg.limit_plane().unwrap();
                let p = segre_point(&dims, &sample_plane_point(&plane.plane, PLANE_SAMPLE_SEED)).unwrap();
                assert_eq!(LimitType::from_report(&classify(&p)), Some(case.expected()), "{case:?} on {dims:?}");
            }
        }
    }
}

#[test]
fn limit_planes_satisfy_strassen() {
    let mut g = rng(42);
    for case in LimitCase::ALL {
        for _ in 0..3 {
            let plane = segre_recipe(&[3, 3, 3], case, &mut g).unwrap().limit_plane().unwrap();
            assert_eq!(plane.plane.len(), 3);
            for seed in 0..5 {
                let p = segre_point(&[3, 3, 3], &sample_plane_point(&plane.plane, seed)).unwrap();
                assert!(strassen_equations(&p).unwrap().iter().all(Zero::is_zero), "{case:?}");
            }
        }
    }
}

#[test]
fn limit_is_invariant_under_reparameterization() {
    let mut g = rng(43);
    for case in LimitCase::ALL {
        for _ in 0..3 {
            let cfg = segre_recipe(&[3, 3, 3], case, &mut g).unwrap();
            let curves = cfg.curves(16).unwrap();
            let mut u = vec![small_nonzero(&mut g, 3)];
            u.extend((0..4).map(|_| small_int(&mut g, 3)));
            let u = Series::from_coeffs(u, 16);
            let moved: Vec<SeriesVector> = curves.iter().map(|c| c.reparameterize(&u)).collect();
            let a = limit_span(&curves).unwrap();
            let b = limit_span(&moved).unwrap();
            assert!(!a.degenerate && !b.degenerate);
            assert!(same_span(&a.plane, &b.plane), "{case:?}");
        }
    }
}

#[test]
fn fubini_order_bound() {
    let mut g = rng(44);
    let dims = [2, 3, 2, 3];
    let model = CominusculeModel::Segre { dims: dims.to_vec() };
    let mut positive_m = 0;
    for s in [3, 4] {
        for _ in 0..50 {
            let v = line_start_series(&mut g, &dims);
            let o = fubini_orders(&model, &v, s).unwrap();
            assert!(o.bound_holds, "{o:?}");
            positive_m += usize::from(o.ii_order.is_some_and(|m| m > 0));
        }
    }
    assert!(positive_m > 90);
}

#[test]
fn prolongation_on_three_models() {
    let mut g = rng(45);
    let models = prolongation_models();
    for (i, model) in models.iter().enumerate() {
        for _ in 0..50 {
            let (f1, f2) = prolongation_input(&mut g, i);
            assert!(prolongation_check(model, &f1, &f2).unwrap(), "{model:?}");
        }
    }
    let segre = &models[0];
    // directions in different factors: II does not vanish, so the input is rejected
    let a = vec![q(1), q(0), q(0), q(0), q(0), q(0)];
    let b = vec![q(0), q(0), q(1), q(0), q(0), q(0)];
    assert!(matches!(prolongation_check(segre, &[a, b], &[random_vector(&mut g, 6, 3)]), Err(Error::Precondition(_))));
}

#[test]
fn config_json_round_trip() {
    let mut g = rng(46);
    let cfg = segre_recipe(&[3, 3, 3], LimitCase::Collision, &mut g).unwrap();
    let text = serde_json::to_string(&cfg.to_json()).unwrap();
    let back = LimitConfig::from_json_str(&text).unwrap();
    assert_eq!(back, cfg);
    assert!(LimitConfig::from_json_str(r#"{"model":{"kind":"segre","dims":[3,3,3]},"y":{"coeffs":[]}}"#).is_err());
}
