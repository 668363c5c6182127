//! Truncated power series in `t` with rational coefficients, scalar and vector valued.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minors::Ring;
use crate::rational::{format_q, parse_q, Q};

/// Scalar series `c[0] + c[1] t + ..` known modulo `t^trunc` (`c.len() == trunc`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    c: Vec<Q>,
}

impl Series {
    pub fn zero(trunc: usize) -> Self {
        Series { c: vec![Q::zero(); trunc] }
    }

    pub fn constant(c: Q, trunc: usize) -> Self {
        let mut s = Series::zero(trunc);
        if trunc > 0 {
            s.c[0] = c;
        }
        s
    }

    /// `c t^order`, or zero when the order is past the truncation.
    pub fn monomial(c: Q, order: usize, trunc: usize) -> Self {
        let mut s = Series::zero(trunc);
        if order < trunc {
            s.c[order] = c;
        }
        s
    }

    /// Takes the given coefficients, dropping or zero-padding to `trunc`.
    pub fn from_coeffs(mut c: Vec<Q>, trunc: usize) -> Self {
        c.resize(trunc, Q::zero());
        Series { c }
    }

    pub fn truncation(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.c.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Lowest order with a nonzero coefficient, `None` if zero modulo `t^trunc`.
    pub fn order(&self) -> Option<usize> {
        self.c.iter().position(|x| !Zero::is_zero(x))
    }

    pub fn scale(&self, k: &Q) -> Series {
        Series { c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Series> {
        let n = self.c.len();
        if n == 0 || Zero::is_zero(&self.c[0]) {
            return Err(Error::Singular);
        }
        let inv0 = Q::one() / &self.c[0];
        let mut out = vec![Q::zero(); n];
        out[0] = inv0.clone();
        for i in 1..n {
            let mut acc = Q::zero();
            for j in 1..=i {
                acc += &self.c[j] * &out[i - j];
            }
            out[i] = -acc * &inv0;
        }
        Ok(Series { c: out })
    }

    /// `self(t * u(t))` for a series `u`.
    pub fn compose_scaled(&self, u: &Series) -> Series {
        let n = self.c.len();
        let tu = Series::monomial(Q::one(), 1, n).mul(u);
        let mut out = Series::zero(n);
        let mut power = Series::constant(Q::one(), n);
        for c in &self.c {
            if !Zero::is_zero(c) {
                out = out.add(&power.scale(c));
            }
            power = power.mul(&tu);
        }
        out
    }
}

impl Ring for Series {
    fn zero_like(&self) -> Self {
        Series::zero(self.c.len())
    }
    fn one_like(&self) -> Self {
        Series::constant(Q::one(), self.c.len())
    }
    fn add(&self, other: &Self) -> Self {
        Series { c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() }
    }
    fn sub(&self, other: &Self) -> Self {
        Series { c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect() }
    }
    fn mul(&self, other: &Self) -> Self {
        let n = self.c.len().min(other.c.len());
        let mut out = vec![Q::zero(); n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.c.iter().enumerate().take(n - i) {
                if !Zero::is_zero(b) {
                    out[i + j] += a * b;
                }
            }
        }
        Series { c: out }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

/// Vector-valued series, stored sparsely by order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesVector {
    ambient_dim: usize,
    truncation_order: usize,
    coeffs: Vec<(usize, Vec<Q>)>,
}

impl SeriesVector {
    /// Orders at or past the truncation are dropped, zero vectors skipped, equal orders summed.
    pub fn new(ambient_dim: usize, truncation_order: usize, terms: Vec<(usize, Vec<Q>)>) -> Result<Self> {
        if truncation_order < 1 {
            return Err(Error::InvalidArgument("truncation order must be at least 1".into()));
        }
        let mut dense = vec![vec![Q::zero(); ambient_dim]; truncation_order];
        for (order, v) in terms {
            if v.len() != ambient_dim {
                return Err(Error::LengthMismatch { expected: ambient_dim, got: v.len() });
            }
            if order < truncation_order {
                for (d, x) in dense[order].iter_mut().zip(v) {
                    *d += x;
                }
            }
        }
        Ok(Self::from_dense(ambient_dim, dense))
    }

    pub fn zero(ambient_dim: usize, truncation_order: usize) -> Self {
        SeriesVector { ambient_dim, truncation_order, coeffs: Vec::new() }
    }

    /// The constant curve at `v`.
    pub fn constant(v: Vec<Q>, truncation_order: usize) -> Result<Self> {
        Self::new(v.len(), truncation_order, vec![(0, v)])
    }

    fn from_dense(ambient_dim: usize, dense: Vec<Vec<Q>>) -> Self {
        let truncation_order = dense.len();
        let coeffs = dense
            .into_iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|x| !Zero::is_zero(x)))
            .collect();
        SeriesVector { ambient_dim, truncation_order, coeffs }
    }

    pub fn from_components(comps: &[Series]) -> Self {
        let trunc = comps.iter().map(Series::truncation).min().unwrap_or(0);
        let dense = (0..trunc).map(|i| comps.iter().map(|s| s.coeff(i)).collect()).collect();
        Self::from_dense(comps.len(), dense)
    }

    pub fn components(&self) -> Vec<Series> {
        let mut comps = vec![Series::zero(self.truncation_order); self.ambient_dim];
        for (order, v) in &self.coeffs {
            for (s, x) in comps.iter_mut().zip(v) {
                s.c[*order] = x.clone();
            }
        }
        comps
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn truncation_order(&self) -> usize {
        self.truncation_order
    }

    pub fn coeffs(&self) -> &[(usize, Vec<Q>)] {
        &self.coeffs
    }

    /// Coefficient vector at `order` (zero if absent).
    pub fn coeff(&self, order: usize) -> Vec<Q> {
        self.coeffs
            .iter()
            .find(|(o, _)| *o == order)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| vec![Q::zero(); self.ambient_dim])
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.first().map(|(o, _)| *o)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn with_truncation(&self, trunc: usize) -> Result<SeriesVector> {
        SeriesVector::new(self.ambient_dim, trunc, self.coeffs.clone())
    }

    pub fn add(&self, other: &SeriesVector) -> Result<SeriesVector> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::LengthMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        let trunc = self.truncation_order.min(other.truncation_order);
        let mut terms = self.coeffs.clone();
        terms.extend(other.coeffs.iter().cloned());
        SeriesVector::new(self.ambient_dim, trunc, terms)
    }

    pub fn scale_series(&self, s: &Series) -> SeriesVector {
        let comps: Vec<Series> = self.components().iter().map(|c| c.mul(s)).collect();
        SeriesVector::from_components(&comps)
    }

    /// Divide by `t^k`; fails if some coefficient below order `k` is nonzero.
    pub fn shift_down(&self, k: usize) -> Result<SeriesVector> {
        if self.coeffs.iter().any(|(o, _)| *o < k) {
            return Err(Error::Precondition(format!("series is not divisible by t^{k}")));
        }
        let trunc = self.truncation_order.saturating_sub(k).max(1);
        let terms = self.coeffs.iter().map(|(o, v)| (o - k, v.clone())).collect();
        SeriesVector::new(self.ambient_dim, trunc, terms)
    }

    /// The curve `t -> self(t u(t))`.
    pub fn reparameterize(&self, u: &Series) -> SeriesVector {
        let comps: Vec<Series> = self.components().iter().map(|c| c.compose_scaled(u)).collect();
        SeriesVector::from_components(&comps)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            truncation_order: Some(self.truncation_order),
            coeffs: self
                .coeffs
                .iter()
                .map(|(o, v)| TermJson { order: *o, vector: v.iter().map(format_q).collect() })
                .collect(),
        }
    }
}

/// JSON form `{"truncation_order": 8, "coeffs": [{"order": 1, "vector": ["1", "0"]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_order: Option<usize>,
    pub coeffs: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub order: usize,
    pub vector: Vec<String>,
}

impl SeriesJson {
    pub fn to_series(&self, ambient_dim: usize, default_trunc: usize) -> Result<SeriesVector> {
        let terms = self
            .coeffs
            .iter()
            .map(|t| Ok((t.order, t.vector.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<Vec<_>>>()?;
        SeriesVector::new(ambient_dim, self.truncation_order.unwrap_or(default_trunc), terms)
    }
}
