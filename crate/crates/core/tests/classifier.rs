use border3::classifier::{
    classify, orbit_dimension, scheme_intersection_check, stabilizer_dimension, BorderRankClass, SchemeType,
};
use border3::normal_forms::{orbit_dimension_formula, orbit_rank, orbit_representative, sigma2_point, ORBIT_IDS};
use border3::random::{random_gl, random_rank_sum, random_tensor, rng};
use border3::Tensor;

#[test]
fn orbit_ids_and_ranks() {
    for id in ORBIT_IDS {
        let r = classify(&orbit_representative(id).unwrap());
        assert_eq!(r.orbit_id, Some(id));
        assert_eq!(r.border_rank_class, BorderRankClass::Three);
        assert_eq!(r.rank, orbit_rank(id));
    }
}

#[test]
fn classification_is_orbit_invariant() {
    let mut g = rng(31);
    for id in ORBIT_IDS {
        let t = orbit_representative(id).unwrap();
        let base = classify(&t).without_witnesses();
        for _ in 0..50 {
            let moved = t.apply_gl(&random_gl(&mut g, &[3, 3, 3])).unwrap();
            assert_eq!(classify(&moved).without_witnesses(), base, "orbit {id}");
        }
    }
}

#[test]
fn dimensions_add_up() {
    for id in ORBIT_IDS {
        let t = orbit_representative(id).unwrap();
        let stab = stabilizer_dimension(&t).dimension;
        let orbit = orbit_dimension(&t).unwrap();
        assert_eq!(stab + orbit + 1, 27, "orbit {id}");
        assert_eq!(Some(orbit), orbit_dimension_formula(id, (3, 3, 3)));
    }
    let z = Tensor::zeros(vec![3, 3, 3]).unwrap();
    assert!(stabilizer_dimension(&z).degenerate);
    assert!(orbit_dimension(&z).is_err());
}

#[test]
fn random_rank_three_is_orbit_39() {
    let mut g = rng(32);
    for _ in 0..500 {
        let t = random_rank_sum(&mut g, &[3, 3, 3], 3, 5);
        if t.multilinear_rank() != [3, 3, 3] {
            continue;
        }
        let r = classify(&t);
        assert_eq!((r.orbit_id, r.rank), (Some(39), Some(3)));
    }
}

#[test]
fn generic_tensors_exceed_three() {
    let mut g = rng(33);
    for _ in 0..20 {
        let r = classify(&random_tensor(&mut g, &[3, 3, 3], 9));
        assert_eq!(r.border_rank_class, BorderRankClass::GreaterThan3);
        assert!(r.is_definite());
    }
}

#[test]
fn sigma2_points() {
    for n in 3..=5 {
        let j: Vec<usize> = (0..n).collect();
        let r = classify(&sigma2_point(n, &j, &vec![2; n]).unwrap());
        assert_eq!(r.border_rank_class, BorderRankClass::Two);
        assert_eq!(r.rank, Some(n));
    }
    let r = classify(&sigma2_point(3, &[0, 2], &[2, 2, 2]).unwrap());
    assert_eq!((r.border_rank_class, r.rank), (BorderRankClass::Two, Some(2)));
}

#[test]
fn scheme_types_of_the_nets() {
    let expect = [
        (39, SchemeType::ThreeReducedPoints),
        (38, SchemeType::DoublePlusReduced),
        (37, SchemeType::CurvilinearTriple),
        (34, SchemeType::FatTriple),
    ];
    let mut g = rng(34);
    for (id, s) in expect {
        let t = orbit_representative(id).unwrap();
        assert_eq!(scheme_intersection_check(&t).unwrap(), s);
        // basis changes in B and C leave the mode-0 net's scheme alone
        let moved = t.apply_gl(&random_gl(&mut g, &[3, 3, 3])).unwrap();
        assert_eq!(scheme_intersection_check(&moved).unwrap(), s, "orbit {id}");
    }
    assert!(scheme_intersection_check(&sigma2_point(3, &[1, 2], &[3, 3, 3]).unwrap()).is_err());
}
