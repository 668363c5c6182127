use border3::classifier::classify;
use border3::minors::{all_minors, determinant, pfaffian, subsets};
use border3::normal_forms::{
    binomial, sigma2_point, sigma3_point, sigma3_terms, CominusculeModel, SigmaThreeSpec, SigmaType,
};
use border3::random::{random_gl, random_matrix, rng, small_int};
use border3::rational::q;
use border3::{Matrix, Q};

fn rows(m: &Matrix) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn compound(m: &Matrix, s: usize) -> Matrix {
    let minors = all_minors(&rows(m), s);
    let r = subsets(m.rows(), s).len();
    let c = subsets(m.cols(), s).len();
    Matrix::new(r, c, minors[s - 1].clone()).unwrap()
}

#[test]
fn sigma2_flattening_ranks() {
    for n in 2..=5 {
        for mask in 1u32..(1 << n) {
            let j: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let t = sigma2_point(n, &j, &vec![2; n]).unwrap();
            let expect: Vec<usize> = (0..n).map(|i| if j.contains(&i) { 2 } else { 1 }).collect();
            // a single-mode J is a rank-one tensor
            let expect = if j.len() == 1 { vec![1; n] } else { expect };
            assert_eq!(t.multilinear_rank(), expect, "J = {j:?}");
        }
    }
}

#[test]
fn pfaffian_squares_to_determinant() {
    let mut g = rng(21);
    for k in (2..=8).step_by(2) {
        for _ in 0..3 {
            let mut m = vec![vec![q(0); k]; k];
            for i in 0..k {
                for j in i + 1..k {
                    let x = small_int(&mut g, 4);
                    m[j][i] = -x.clone();
                    m[i][j] = x;
                }
            }
            let pf = pfaffian(&m, &q(1));
            let det = Matrix::from_rows(&m).unwrap().determinant().unwrap();
            assert_eq!(&pf * &pf, det, "k = {k}");
            assert_eq!(determinant(&m), det);
        }
    }
    assert_eq!(pfaffian::<Q>(&[], &q(1)), q(1));
}

#[test]
fn cauchy_binet() {
    let mut g = rng(22);
    for _ in 0..3 {
        let m = random_matrix(&mut g, 3, 4, 3);
        let n = random_matrix(&mut g, 4, 5, 3);
        let mn = m.mul(&n).unwrap();
        for s in 1..=3 {
            assert_eq!(compound(&mn, s), compound(&m, s).mul(&compound(&n, s)).unwrap(), "s = {s}");
        }
    }
}

#[test]
fn sigma3_forms_classify_stably() {
    let mut g = rng(23);
    for tag in SigmaType::ALL {
        let t = sigma3_point(&SigmaThreeSpec::new(tag, 3)).unwrap();
        for _ in 0..100 {
            let moved = t.apply_gl(&random_gl(&mut g, &[3, 3, 3])).unwrap();
            let r = classify(&moved);
            assert_eq!(r.type_tag.map(|x| x.kind), Some(tag));
        }
    }
}

#[test]
fn type_iv_family() {
    for n in 3..=5 {
        let forms: Vec<_> = (0..n)
            .map(|f| sigma3_terms(&SigmaThreeSpec::new(SigmaType::IV, n).with_factor(f)).unwrap())
            .collect();
        for f in 0..n {
            assert_eq!(forms[f].len(), n - 1 + n);
            for h in f + 1..n {
                assert_ne!(forms[f], forms[h]);
            }
        }
        let iii = sigma3_terms(&SigmaThreeSpec::new(SigmaType::III, n)).unwrap();
        assert_eq!(iii.len(), binomial(n + 1, 2));
    }
    assert!(sigma3_point(&SigmaThreeSpec::new(SigmaType::IV, 3).with_factor(3)).is_err());
    assert!(sigma3_point(&SigmaThreeSpec::new(SigmaType::II, 2)).is_err());
}

#[test]
fn model_dimensions() {
    let cases = [
        (CominusculeModel::Segre { dims: vec![3, 3, 3] }, 6, 27, 3),
        (CominusculeModel::Grassmannian { k: 3, n: 6 }, 9, 20, 3),
        (CominusculeModel::Lagrangian { k: 3 }, 6, 20, 3),
        (CominusculeModel::Spinor { k: 6 }, 15, 32, 3),
    ];
    for (m, t, a, f) in cases {
        m.validate().unwrap();
        assert_eq!((m.tangent_dim(), m.ambient_dim(), m.max_degree()), (t, a, f), "{m:?}");
        assert_eq!(m.coordinate_degrees().len(), a);
    }
    assert!(CominusculeModel::Grassmannian { k: 4, n: 4 }.validate().is_err());
}
