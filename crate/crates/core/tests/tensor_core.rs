use border3::random::{random_gl, random_rank_sum, random_tensor, rng};
use border3::rational::{q, qf};
use border3::{Error, Tensor};
use proptest::prelude::*;

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=4, 2..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn flattening_ranks_survive_basis_change(dims in dims_strategy(), r in 1usize..4, seed in any::<u64>()) {
        let mut g = rng(seed);
        let t = random_rank_sum(&mut g, &dims, r, 3);
        let moved = t.apply_gl(&random_gl(&mut g, &dims)).unwrap();
        prop_assert_eq!(t.multilinear_rank(), moved.multilinear_rank());
    }

    #[test]
    fn concise_core_reconstructs(dims in dims_strategy(), r in 1usize..4, seed in any::<u64>()) {
        let mut g = rng(seed);
        let t = random_rank_sum(&mut g, &dims, r, 3);
        prop_assume!(!t.is_zero());
        let cc = t.concise_core().unwrap();
        prop_assert_eq!(cc.core_dims().to_vec(), t.multilinear_rank());
        prop_assert_eq!(cc.reconstruct().unwrap(), t);
    }

    #[test]
    fn multilinear_rank_bounds(dims in dims_strategy(), seed in any::<u64>()) {
        let t = random_tensor(&mut rng(seed), &dims, 2);
        let ml = t.multilinear_rank();
        for (i, &r) in ml.iter().enumerate() {
            prop_assert!(r <= dims[i]);
            let others: usize = ml.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).product();
            prop_assert!(r <= others);
        }
    }

    #[test]
    fn json_round_trip(dims in dims_strategy(), seed in any::<u64>()) {
        let mut g = rng(seed);
        let t = random_tensor(&mut g, &dims, 5).scale(&qf(3, 7));
        prop_assert_eq!(Tensor::from_json_str(&t.to_json_string()).unwrap(), t);
    }
}

#[test]
fn layout_is_row_major() {
    let t = Tensor::from_i64(vec![2, 3], &[1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(t.get(&[1, 0]), &q(4));
    assert_eq!(t.flatten(1).unwrap().row(2), &[q(3), q(6)]);
}

#[test]
fn bad_input_is_rejected() {
    assert!(matches!(Tensor::new(vec![2, 2], vec![q(1)]), Err(Error::LengthMismatch { .. })));
    assert!(Tensor::zeros(vec![2, 0]).is_err());
    assert!(matches!(Tensor::zeros(vec![1000, 1000, 2]), Err(Error::TooLarge { .. })));
    assert!(Tensor::from_json_str(r#"{"dims":[2],"entries":["1","x"]}"#).is_err());
    assert!(Tensor::from_json_str(r#"{"dims":[1,1],"entries":["1/0"]}"#).is_err());
}
