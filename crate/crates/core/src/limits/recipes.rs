//! Curve configurations realizing each branch of the case analysis on a Segre product.

use num_traits::Zero;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rank_of;
use crate::normal_forms::CominusculeModel;
use crate::random::{random_nonzero_vector, small_int, small_nonzero, Rng};
use crate::rational::Q;

use super::{second_fundamental_form, LimitConfig, LimitType, SeriesVector, START_TRUNCATION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitCase {
    /// Three distinct limit points: `l = 0`.
    HonestSecant,
    /// `k = 0`, `λ0 ∈ {0, 1}`.
    PointPlusTangent,
    /// `k ≥ 1`: all three points collide.
    Collision,
    /// The first direction lies on a line of X: `II(v0²) = 0`.
    Line,
}

impl LimitCase {
    pub const ALL: [LimitCase; 4] = [LimitCase::HonestSecant, LimitCase::PointPlusTangent, LimitCase::Collision, LimitCase::Line];

    pub fn expected(self) -> LimitType {
        match self {
            LimitCase::HonestSecant => LimitType::I,
            LimitCase::PointPlusTangent => LimitType::II,
            LimitCase::Collision | LimitCase::Line => LimitType::IIIorIV,
        }
    }
}

/// Tangent directions whose factor blocks are nonzero and pairwise non-proportional, so that
/// the chosen points are in general position inside each factor.
fn generic_pair(model: &CominusculeModel, dims: &[usize], rng: &mut Rng) -> Result<(Vec<Q>, Vec<Q>)> {
    let tdim = model.tangent_dim();
    for _ in 0..256 {
        let v = random_nonzero_vector(rng, tdim, 5);
        let w = random_nonzero_vector(rng, tdim, 5);
        let mut offset = 0;
        let mut ok = true;
        for &d in dims {
            let (a, b) = (&v[offset..offset + d - 1], &w[offset..offset + d - 1]);
            offset += d - 1;
            if d == 1 {
                continue;
            }
            let rank = rank_of(&[a.to_vec(), b.to_vec()]);
            ok &= a.iter().any(|x| !x.is_zero()) && b.iter().any(|x| !x.is_zero()) && a != b;
            ok &= d == 2 || rank == 2;
        }
        if ok && second_fundamental_form(model, &v, &v)?.iter().any(|x| !x.is_zero()) {
            return Ok((v, w));
        }
    }
    Err(Error::InvalidArgument("could not sample a generic pair of directions".into()))
}

/// A scalar outside {0, 1}.
fn generic_scalar(rng: &mut Rng) -> Q {
    loop {
        let c = small_nonzero(rng, 4);
        if c != Q::from_integer(1.into()) {
            return c;
        }
    }
}

fn scaled(v: &[Q], c: &Q) -> Vec<Q> {
    v.iter().map(|x| x * c).collect()
}

/// Random configuration on `Seg(P^{d_1-1} x ..)` falling into `case`.
pub fn segre_recipe(dims: &[usize], case: LimitCase, rng: &mut Rng) -> Result<LimitConfig> {
    let model = CominusculeModel::Segre { dims: dims.to_vec() };
    model.validate()?;
    let tdim = model.tangent_dim();
    let tr = START_TRUNCATION;
    let series = |terms: Vec<(usize, Vec<Q>)>| SeriesVector::new(tdim, tr, terms);
    let (v, w) = generic_pair(&model, dims, rng)?;
    let (y, z) = match case {
        LimitCase::HonestSecant => (series(vec![(0, v)])?, series(vec![(0, w)])?),
        LimitCase::PointPlusTangent => {
            // λ0 = 0: z runs into ô; λ0 = 1: z runs into y
            let lam0 = Q::from_integer(rng.gen_range(0..2i64).into());
            let l = rng.gen_range(1..4usize);
            let mut z = vec![(0, scaled(&v, &lam0)), (l, w)];
            if rng.gen_bool(0.5) {
                z.push((l + 1, scaled(&v, &small_nonzero(rng, 3))));
            }
            (series(vec![(0, v)])?, series(z)?)
        }
        LimitCase::Collision => {
            // y = t^k v, z = λ t^k v + t^{2k} w
            let k = rng.gen_range(1..3usize);
            let lam = generic_scalar(rng);
            (series(vec![(k, v.clone())])?, series(vec![(k, scaled(&v, &lam)), (2 * k, w)])?)
        }
        LimitCase::Line => {
            // v(t) = v0 + t v1 with v0 in one factor, z = λ v(t) + t w
            let factors: Vec<usize> = (0..dims.len()).filter(|&i| dims[i] > 1).collect();
            let f = factors[rng.gen_range(0..factors.len())];
            let offset: usize = dims[..f].iter().map(|d| d - 1).sum();
            let block = offset..offset + dims[f] - 1;
            let mut v0 = vec![Q::zero(); tdim];
            // w must leave the line inside its own factor
            while rank_of(&[v0[block.clone()].to_vec(), w[block.clone()].to_vec()]) < block.len().min(2) {
                for x in &mut v0[block.clone()] {
                    *x = small_int(rng, 3);
                }
            }
            let lam = generic_scalar(rng);
            (
                series(vec![(0, v0.clone()), (1, v.clone())])?,
                series(vec![(0, scaled(&v0, &lam)), (1, scaled(&v, &lam)), (1, w)])?,
            )
        }
    };
    LimitConfig::new(model, y, z)
}
