//! Leading coefficients of wedge products of curves and the limiting subspaces they span.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::span_basis;
use crate::rational::{format_q, Q};

use super::series::SeriesVector;

/// Largest ambient dimension accepted by the wedge computations.
pub const MAX_WEDGE_AMBIENT: usize = 64;

/// A k-vector: coefficients on `e_S`, keyed by the bitmask of the sorted index set `S`.
type MultiVector = BTreeMap<u64, Q>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitPlaneResult {
    /// Basis of the limit (empty when degenerate).
    pub plane: Vec<Vec<Q>>,
    /// Order in `t` of the leading wedge coefficient.
    pub leading_order: Option<usize>,
    /// Wedge vanished up to the truncation order.
    pub degenerate: bool,
    /// Truncation order actually used.
    pub truncation_order: usize,
}

#[derive(Serialize, Deserialize)]
pub struct LimitPlaneJson {
    pub plane: Vec<Vec<String>>,
    pub leading_order: Option<usize>,
    pub degenerate: bool,
    pub truncation_order: usize,
}

impl LimitPlaneResult {
    pub fn to_json(&self) -> LimitPlaneJson {
        LimitPlaneJson {
            plane: self.plane.iter().map(|v| v.iter().map(format_q).collect()).collect(),
            leading_order: self.leading_order,
            degenerate: self.degenerate,
            truncation_order: self.truncation_order,
        }
    }
}

/// `e_S ∧ e_p = sign * e_{S ∪ p}`; the sign counts elements of `S` above `p`.
fn wedge_sign(mask: u64, p: usize) -> Option<bool> {
    if mask & (1 << p) != 0 {
        return None;
    }
    let above = (mask >> p).count_ones();
    Some(above.is_multiple_of(2))
}

fn wedge_vec(w: &MultiVector, v: &[Q]) -> MultiVector {
    let mut out = MultiVector::new();
    for (&mask, c) in w {
        for (p, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if let Some(positive) = wedge_sign(mask, p) {
                let term = c * x;
                let e = out.entry(mask | (1 << p)).or_insert_with(Q::zero);
                if positive {
                    *e += term;
                } else {
                    *e -= term;
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Coefficients (by order, up to the common truncation) of `c_1 ∧ .. ∧ c_k`.
pub fn wedge_series(curves: &[SeriesVector]) -> Result<Vec<MultiVectorCoeff>> {
    let first = curves.first().ok_or_else(|| Error::InvalidArgument("no curves given".into()))?;
    let dim = first.ambient_dim();
    if dim > MAX_WEDGE_AMBIENT {
        return Err(Error::TooLarge { size: dim, limit: MAX_WEDGE_AMBIENT });
    }
    if let Some(c) = curves.iter().find(|c| c.ambient_dim() != dim) {
        return Err(Error::LengthMismatch { expected: dim, got: c.ambient_dim() });
    }
    let trunc = curves.iter().map(SeriesVector::truncation_order).min().unwrap_or(0);
    let mut acc: Vec<MultiVector> = vec![MultiVector::new(); trunc];
    acc[0].insert(0, Q::from_integer(1.into()));
    for c in curves {
        let mut next = vec![MultiVector::new(); trunc];
        for (a, w) in acc.iter().enumerate() {
            if w.is_empty() {
                continue;
            }
            for (b, v) in c.coeffs() {
                if a + b >= trunc {
                    break;
                }
                for (mask, x) in wedge_vec(w, v) {
                    *next[a + b].entry(mask).or_insert_with(Q::zero) += x;
                }
            }
        }
        for m in &mut next {
            m.retain(|_, c| !c.is_zero());
        }
        acc = next;
    }
    Ok(acc.into_iter().map(|m| MultiVectorCoeff { dim, coeffs: m }).collect())
}

/// One coefficient of a wedge series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiVectorCoeff {
    dim: usize,
    coeffs: MultiVector,
}

impl MultiVectorCoeff {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient on `e_{i_1} ∧ .. ∧ e_{i_k}` for arbitrary distinct indices.
    pub fn get(&self, indices: &[usize]) -> Q {
        let mut mask = 0u64;
        let mut inversions = 0;
        for (a, &i) in indices.iter().enumerate() {
            if mask & (1 << i) != 0 {
                return Q::zero();
            }
            mask |= 1 << i;
            inversions += indices[..a].iter().filter(|&&j| j > i).count();
        }
        let c = self.coeffs.get(&mask).cloned().unwrap_or_else(Q::zero);
        if inversions % 2 == 0 {
            c
        } else {
            -c
        }
    }

    /// For a decomposable k-vector, a basis of the k-plane it represents.
    pub fn plane(&self) -> Vec<Vec<Q>> {
        let Some((&mask, _)) = self.coeffs.iter().next() else {
            return Vec::new();
        };
        let support: Vec<usize> = (0..self.dim).filter(|&i| mask & (1 << i) != 0).collect();
        // interior products with e_R^* for R = support minus one index
        let vectors: Vec<Vec<Q>> = (0..support.len())
            .map(|drop| {
                let rest: Vec<usize> = support.iter().enumerate().filter(|(j, _)| *j != drop).map(|(_, &i)| i).collect();
                (0..self.dim)
                    .map(|p| {
                        let mut idx = rest.clone();
                        idx.push(p);
                        self.get(&idx)
                    })
                    .collect()
            })
            .collect();
        span_basis(&vectors)
    }
}

/// Limit of the span of `curves` as `t -> 0` at their common truncation order.
pub fn limit_span(curves: &[SeriesVector]) -> Result<LimitPlaneResult> {
    let wedge = wedge_series(curves)?;
    let trunc = wedge.len();
    match wedge.iter().position(|c| !c.is_zero()) {
        Some(order) => {
            let plane = wedge[order].plane();
            debug_assert_eq!(plane.len(), curves.len());
            Ok(LimitPlaneResult { plane, leading_order: Some(order), degenerate: false, truncation_order: trunc })
        }
        None => Ok(LimitPlaneResult { plane: Vec::new(), leading_order: None, degenerate: true, truncation_order: trunc }),
    }
}

/// Limiting 3-plane of three curves.
pub fn limit_plane(c1: &SeriesVector, c2: &SeriesVector, c3: &SeriesVector) -> Result<LimitPlaneResult> {
    limit_span(&[c1.clone(), c2.clone(), c3.clone()])
}

pub const START_TRUNCATION: usize = 8;
pub const MAX_TRUNCATION: usize = 64;

/// Rebuilds the curves at truncation 8, 16, 32, 64 until the wedge has a nonzero term.
pub fn limit_span_adaptive<F>(mut build: F) -> Result<LimitPlaneResult>
where
    F: FnMut(usize) -> Result<Vec<SeriesVector>>,
{
    let mut trunc = START_TRUNCATION;
    loop {
        let res = limit_span(&build(trunc)?)?;
        if !res.degenerate {
            return Ok(res);
        }
        if trunc >= MAX_TRUNCATION {
            return Err(Error::DegenerateLimit(trunc));
        }
        trunc *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn e(i: usize, n: usize) -> Vec<Q> {
        (0..n).map(|j| q((i == j) as i64)).collect()
    }

    #[test]
    fn signs() {
        let w = wedge_series(&[
            SeriesVector::constant(e(2, 4), 2).unwrap(),
            SeriesVector::constant(e(0, 4), 2).unwrap(),
        ])
        .unwrap();
        assert_eq!(w[0].get(&[0, 2]), q(-1));
        assert_eq!(w[0].get(&[2, 0]), q(1));
        assert!(w[1].is_zero());
    }

    #[test]
    fn collapsing_secant_gives_tangent_line() {
        // x = e0, y(t) = e0 + t e1 + t^2 e2: limit is <e0, e1>
        let x = SeriesVector::constant(e(0, 3), 4).unwrap();
        let y = SeriesVector::new(3, 4, vec![(0, e(0, 3)), (1, e(1, 3)), (2, e(2, 3))]).unwrap();
        let r = limit_span(&[x, y]).unwrap();
        assert_eq!(r.leading_order, Some(1));
        assert_eq!(r.plane, vec![e(0, 3), e(1, 3)]);
    }

    #[test]
    fn degenerate_and_adaptive() {
        let x = SeriesVector::constant(e(0, 3), 4).unwrap();
        let r = limit_span(&[x.clone(), x.clone()]).unwrap();
        assert!(r.degenerate);
        // difference only at order 10: needs the second truncation step
        let res = limit_span_adaptive(|tr| {
            Ok(vec![
                SeriesVector::constant(e(0, 3), tr)?,
                SeriesVector::new(3, tr, vec![(0, e(0, 3)), (10, e(1, 3))])?,
            ])
        })
        .unwrap();
        assert_eq!(res.truncation_order, 16);
        assert_eq!(res.leading_order, Some(10));
        let stuck = limit_span_adaptive(|tr| Ok(vec![SeriesVector::constant(e(0, 3), tr)?; 2]));
        assert_eq!(stuck.unwrap_err(), Error::DegenerateLimit(64));
    }
}
