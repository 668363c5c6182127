//! Sampling helpers shared by the limit tests and the acceptance run.
#![allow(dead_code)]

use border3::limits::SeriesVector;
use border3::normal_forms::CominusculeModel;
use border3::linalg::rank_of;
use border3::random::{random_nonzero_vector, random_vector, small_int, small_nonzero, Rng};
use border3::rational::q;
use border3::Q;
use num_traits::Zero;
use rand::Rng as _;

pub fn same_span(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    let both: Vec<Vec<Q>> = a.iter().chain(b).cloned().collect();
    rank_of(a) == rank_of(b) && rank_of(&both) == rank_of(a)
}

/// `v(t) = v0 + t^j v1 + t^{j+1} v2` with `v0` inside one factor, so `II(v²)` starts at `t^j`.
pub fn line_start_series(g: &mut Rng, dims: &[usize]) -> SeriesVector {
    let tdim: usize = dims.iter().map(|d| d - 1).sum();
    let f = g.gen_range(0..dims.len());
    let offset: usize = dims[..f].iter().map(|d| d - 1).sum();
    let mut v0 = vec![q(0); tdim];
    while v0.iter().all(Zero::is_zero) {
        for x in &mut v0[offset..offset + dims[f] - 1] {
            *x = small_int(g, 3);
        }
    }
    let j = g.gen_range(1..4);
    let terms = vec![(0, v0), (j, random_nonzero_vector(g, tdim, 3)), (j + 1, random_vector(g, tdim, 3))];
    SeriesVector::new(tdim, 12, terms).unwrap()
}

pub fn rank_one_pair(g: &mut Rng, rows: usize, cols: usize) -> Vec<Vec<Q>> {
    let x = random_nonzero_vector(g, rows, 3);
    let (y1, y2) = (random_nonzero_vector(g, cols, 3), random_nonzero_vector(g, cols, 3));
    let outer = |a: &[Q], b: &[Q]| a.iter().flat_map(|p| b.iter().map(move |r| p * r)).collect::<Vec<Q>>();
    if g.gen_bool(0.5) {
        vec![outer(&x, &y1), outer(&x, &y2)]
    } else {
        // shared row space: transpose of the same construction
        let (a, b) = (outer(&y1, &x), outer(&y2, &x));
        let t = |m: &[Q]| (0..rows).flat_map(|i| (0..cols).map(move |j| m[j * rows + i].clone())).collect::<Vec<Q>>();
        vec![t(&a), t(&b)]
    }
}

/// `x ∧ y` and `x ∧ z` as strict upper triangles of skew k x k matrices.
pub fn wedge_pair(g: &mut Rng, k: usize) -> Vec<Vec<Q>> {
    let x = random_nonzero_vector(g, k, 3);
    let wedge = |y: &[Q]| {
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                out.push(&x[i] * &y[j] - &x[j] * &y[i]);
            }
        }
        out
    };
    let (y, z) = (random_nonzero_vector(g, k, 3), random_nonzero_vector(g, k, 3));
    vec![wedge(&y), wedge(&z)]
}


/// The three models of the prolongation check.
pub fn prolongation_models() -> [CominusculeModel; 3] {
    [
        CominusculeModel::Segre { dims: vec![3, 3, 3] },
        CominusculeModel::Grassmannian { k: 3, n: 6 },
        CominusculeModel::Spinor { k: 6 },
    ]
}

/// A random `(f1, f2)` with `F_2(f1) = 0` on the model of that index.
pub fn prolongation_input(g: &mut Rng, model: usize) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    match model {
        0 => {
            // two directions in one Segre factor
            let f = g.gen_range(0..3);
            let mut block = || {
                let mut v = vec![q(0); 6];
                v[2 * f] = small_nonzero(g, 3);
                v[2 * f + 1] = small_int(g, 3);
                v
            };
            let f1 = vec![block(), block()];
            (f1, vec![random_vector(g, 6, 3)])
        }
        1 => (rank_one_pair(g, 3, 3), vec![random_vector(g, 9, 3)]),
        _ => (wedge_pair(g, 6), vec![random_vector(g, 15, 3)]),
    }
}
