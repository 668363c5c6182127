use border3::equations::{
    cubic_line_pattern, line_pattern_triple, slice_det_cubic, strassen_equations, strassen_jacobian_rank,
    strassen_polynomials, subspace_membership, LinePattern, TernaryCubic,
};
use border3::normal_forms::orbit_representative;
use border3::poly::Poly;
use border3::random::{random_gl, random_invertible, random_rank_sum, random_tensor, rng};
use border3::rational::q;
use border3::{Matrix, Tensor};
use num_traits::Zero;

/// `c(M^T x)`: the substitution `x_i -> Σ_a M[a,i] x_a`.
fn substitute(c: &TernaryCubic, m: &Matrix) -> TernaryCubic {
    let images: Vec<Poly> = (0..3)
        .map(|i| (0..3).fold(Poly::zero(3), |acc, a| acc.add(&Poly::var(3, a).scale(&m[(a, i)]))))
        .collect();
    TernaryCubic::from_poly(c.poly().compose(&images, 3)).unwrap()
}

#[test]
fn quartics_vanish_on_rank_three() {
    let mut g = rng(11);
    for r in 1..=3 {
        for _ in 0..100 {
            let t = random_rank_sum(&mut g, &[3, 3, 3], r, 4);
            assert!(strassen_equations(&t).unwrap().iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn quartics_detect_generic_tensors() {
    let mut g = rng(12);
    for _ in 0..100 {
        let t = random_tensor(&mut g, &[3, 3, 3], 9);
        assert!(strassen_equations(&t).unwrap().iter().any(|x| !x.is_zero()));
    }
}

#[test]
fn symbolic_and_direct_evaluation_agree() {
    let mut g = rng(13);
    let polys = strassen_polynomials();
    assert_eq!(polys.len(), 27);
    for _ in 0..5 {
        let t = random_tensor(&mut g, &[3, 3, 3], 5);
        let direct = strassen_equations(&t).unwrap();
        for (p, d) in polys.iter().zip(&direct) {
            assert!(p.is_homogeneous_of(4));
            assert_eq!(&p.eval(t.entries()), d);
        }
    }
}

#[test]
fn jacobian_at_orbit_35() {
    assert_eq!(strassen_jacobian_rank(&orbit_representative(35).unwrap()).unwrap(), 6);
}

#[test]
fn det_cubic_transforms_by_substitution() {
    let mut g = rng(14);
    for _ in 0..10 {
        let t = random_tensor(&mut g, &[3, 3, 3], 3);
        let gl = random_gl(&mut g, &[3, 3, 3]);
        let moved = t.apply_gl(&gl).unwrap();
        let m = &gl.mats();
        let scale = m[1].determinant().unwrap() * m[2].determinant().unwrap();
        let expected = substitute(&slice_det_cubic(&t, 0).unwrap(), &m[0]);
        let got = slice_det_cubic(&moved, 0).unwrap();
        assert_eq!(got.coefficients(), expected.coefficients().iter().map(|c| c * &scale).collect::<Vec<_>>());
    }
}

#[test]
fn line_patterns_are_invariant() {
    let mut g = rng(15);
    for id in 34..=39 {
        let t = orbit_representative(id).unwrap();
        let base = line_pattern_triple(&t).unwrap();
        for _ in 0..10 {
            let moved = t.apply_gl(&random_gl(&mut g, &[3, 3, 3])).unwrap();
            assert_eq!(line_pattern_triple(&moved).unwrap(), base, "orbit {id}");
        }
        for mode in 0..3 {
            let c = slice_det_cubic(&t, mode).unwrap();
            let sub = substitute(&c, &random_invertible(&mut g, 3, 3));
            assert_eq!(cubic_line_pattern(&sub), cubic_line_pattern(&c));
        }
    }
}

#[test]
fn first_three_orbits_have_one_zero_mode() {
    for id in 34..=36 {
        let p = line_pattern_triple(&orbit_representative(id).unwrap()).unwrap();
        assert_eq!(p.iter().filter(|&&x| x == LinePattern::IdenticallyZero).count(), 1, "orbit {id}");
        assert_eq!(p.iter().filter(|&&x| x == LinePattern::TripleLine).count(), 2, "orbit {id}");
    }
}

#[test]
fn cubic_shapes() {
    let c = |terms: &[([u32; 3], i64)]| {
        TernaryCubic::from_coeffs(&terms.iter().map(|&(e, x)| (e, q(x))).collect::<Vec<_>>()).unwrap()
    };
    assert_eq!(cubic_line_pattern(&c(&[([1, 1, 1], 1)])), LinePattern::Squarefree);
    assert_eq!(cubic_line_pattern(&c(&[([2, 1, 0], 1)])), LinePattern::DoubleLinePlusLine);
    assert_eq!(cubic_line_pattern(&c(&[([3, 0, 0], 2)])), LinePattern::TripleLine);
    assert_eq!(cubic_line_pattern(&c(&[])), LinePattern::IdenticallyZero);
    // smooth cubic s^3 + t^3 + u^3 is squarefree
    assert_eq!(cubic_line_pattern(&c(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)])), LinePattern::Squarefree);
    // nodal cubic t^2 u - s^2 (s + u)
    assert_eq!(cubic_line_pattern(&c(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)])), LinePattern::Squarefree);
}

#[test]
fn wrong_shapes_error() {
    let t = Tensor::zeros(vec![2, 3, 3]).unwrap();
    assert!(strassen_equations(&t).is_err());
    assert!(slice_det_cubic(&t, 0).is_err());
    assert!(subspace_membership(&t, &[2, 2]).is_err());
    assert!(subspace_membership(&t, &[0, 0, 0]).unwrap());
}
