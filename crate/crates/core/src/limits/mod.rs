//! Curves on cominuscule varieties as truncated power series, their fundamental forms,
//! and limits of spans of curves.
//!
//! Every model is used in its standard chart at the base point `ô` (the first ambient
//! coordinate), with `V = ô ⊕ T ⊕ N` split by coordinate degree.

mod plane;
mod recipes;
mod series;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classifier::ClassificationReport;
use crate::error::{Error, Result};
use crate::linalg::{rank_of, Matrix};
use crate::minors::subsets;
use crate::normal_forms::{CominusculeModel, SigmaType};
use crate::random::{rng, small_nonzero};
use crate::rational::Q;
use crate::tensor::Tensor;

pub use plane::{
    limit_plane, limit_span, limit_span_adaptive, wedge_series, LimitPlaneJson, LimitPlaneResult, MultiVectorCoeff,
    MAX_TRUNCATION, MAX_WEDGE_AMBIENT, START_TRUNCATION,
};
pub use recipes::{segre_recipe, LimitCase};
pub use series::{Series, SeriesJson, SeriesVector, TermJson};

/// Seed for the coefficients of sampled plane points.
pub const PLANE_SAMPLE_SEED: u64 = 0x5eed_0003;

/// The curve `φ(v(t))` on the cone over the model through `ô`.
pub fn parameterize(model: &CominusculeModel, tangent: &SeriesVector) -> Result<SeriesVector> {
    model.validate()?;
    if tangent.ambient_dim() != model.tangent_dim() {
        return Err(Error::LengthMismatch { expected: model.tangent_dim(), got: tangent.ambient_dim() });
    }
    let comps = tangent.components();
    let unit = Series::constant(Q::one(), tangent.truncation_order());
    Ok(SeriesVector::from_components(&model.phi(&comps, &unit)?))
}

/// `F_s(v^s)`: the degree-`s` coordinates of `φ(v)`, other coordinates zero.
fn fubini_diagonal(model: &CominusculeModel, degrees: &[usize], s: usize, v: &[Q]) -> Result<Vec<Q>> {
    let mut p = model.phi(v, &Q::one())?;
    for (x, &d) in p.iter_mut().zip(degrees) {
        if d != s {
            *x = Q::zero();
        }
    }
    Ok(p)
}

fn fubini_polarized(model: &CominusculeModel, args: &[Vec<Q>]) -> Result<Vec<Q>> {
    model.validate()?;
    let s = args.len();
    if s == 0 || s > 12 {
        return Err(Error::InvalidArgument(format!("form degree {s} out of range")));
    }
    let tdim = model.tangent_dim();
    if let Some(a) = args.iter().find(|a| a.len() != tdim) {
        return Err(Error::LengthMismatch { expected: tdim, got: a.len() });
    }
    let degrees = model.coordinate_degrees();
    let mut acc = vec![Q::zero(); model.ambient_dim()];
    if s > model.max_degree() {
        return Ok(acc);
    }
    // F(v_1..v_s) = 1/s! sum over nonempty S of (-1)^(s-|S|) F((sum_S v_i)^s)
    for mask in 1u32..(1 << s) {
        let mut v = vec![Q::zero(); tdim];
        for (i, a) in args.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (x, y) in v.iter_mut().zip(a) {
                    *x += y;
                }
            }
        }
        let f = fubini_diagonal(model, &degrees, s, &v)?;
        let negative = (s - mask.count_ones() as usize) % 2 == 1;
        for (a, x) in acc.iter_mut().zip(f) {
            if negative {
                *a -= x;
            } else {
                *a += x;
            }
        }
    }
    let fact: Q = (1..=s).map(|i| Q::from_integer((i as i64).into())).product();
    Ok(acc.into_iter().map(|x| x / &fact).collect())
}

/// The symmetric form `F_s(v_1 ⋯ v_s)` as a vector of `V` supported on the degree-`s`
/// coordinates (zero when `s` exceeds the model's top degree).
pub fn fubini_form(model: &CominusculeModel, s: usize, args: &[Vec<Q>]) -> Result<Vec<Q>> {
    if s < 2 {
        return Err(Error::InvalidArgument("fundamental forms start at degree 2".into()));
    }
    if args.len() != s {
        return Err(Error::InvalidArgument(format!("F_{s} takes {s} arguments, got {}", args.len())));
    }
    fubini_polarized(model, args)
}

/// `II(a b)`.
pub fn second_fundamental_form(model: &CominusculeModel, a: &[Q], b: &[Q]) -> Result<Vec<Q>> {
    fubini_form(model, 2, &[a.to_vec(), b.to_vec()])
}

/// Given `F_{s1}(f1) = 0`, reports whether `F_{s1+s2}(f1 f2) = 0`. The symmetric tensors
/// `f1`, `f2` are given as products of the listed tangent vectors.
pub fn prolongation_check(model: &CominusculeModel, f1: &[Vec<Q>], f2: &[Vec<Q>]) -> Result<bool> {
    if f1.is_empty() || f2.is_empty() {
        return Err(Error::InvalidArgument("both factors need at least one vector".into()));
    }
    if !is_zero_vec(&fubini_polarized(model, f1)?) {
        return Err(Error::Precondition(format!("F_{} does not vanish on f1", f1.len())));
    }
    let mut all = f1.to_vec();
    all.extend_from_slice(f2);
    Ok(is_zero_vec(&fubini_polarized(model, &all)?))
}

fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Vanishing orders of `II(v(t)²)` and `F_s(v(t)^s)` along a tangent curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FubiniOrders {
    pub ii_order: Option<usize>,
    pub form_order: Option<usize>,
    /// `F_s(v^s) = t^{m+s-2}(..)` whenever `II(v²) = t^m(..)` with `m > 0`.
    pub bound_holds: bool,
}

pub fn fubini_orders(model: &CominusculeModel, v: &SeriesVector, s: usize) -> Result<FubiniOrders> {
    if s < 2 {
        return Err(Error::InvalidArgument("fundamental forms start at degree 2".into()));
    }
    let curve = parameterize(model, v)?;
    let degrees = model.coordinate_degrees();
    let block_order = |deg: usize| {
        curve
            .coeffs()
            .iter()
            .find(|(_, c)| c.iter().zip(&degrees).any(|(x, &d)| d == deg && !x.is_zero()))
            .map(|(o, _)| *o)
    };
    let ii_order = block_order(2);
    let form_order = block_order(s);
    let bound_holds = match (ii_order, form_order) {
        (_, None) => true,
        (Some(0), _) => true,
        (None, Some(_)) => false,
        (Some(m), Some(o)) => o + 2 >= m + s,
    };
    Ok(FubiniOrders { ii_order, form_order, bound_holds })
}

/// Coarse type of a point of the third secant variety as seen by the limit analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitType {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii-iv")]
    IIIorIV,
}

impl LimitType {
    pub fn from_sigma_type(t: SigmaType) -> LimitType {
        match t {
            SigmaType::I => LimitType::I,
            SigmaType::II => LimitType::II,
            SigmaType::III | SigmaType::IV => LimitType::IIIorIV,
        }
    }

    pub fn from_report(r: &ClassificationReport) -> Option<LimitType> {
        r.type_tag.as_ref().map(|t| LimitType::from_sigma_type(t.kind))
    }
}

impl std::fmt::Display for LimitType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LimitType::I => "i",
            LimitType::II => "ii",
            LimitType::IIIorIV => "iii-iv",
        })
    }
}

/// Three curves `x = ô`, `y = φ(y_T(t))`, `z = φ(z_T(t))` given by their tangent parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitConfig {
    pub model: CominusculeModel,
    pub y: SeriesVector,
    pub z: SeriesVector,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitConfigJson {
    pub model: CominusculeModel,
    #[serde(default)]
    pub truncation_order: Option<usize>,
    pub y: SeriesJson,
    pub z: SeriesJson,
}

impl LimitConfig {
    pub fn new(model: CominusculeModel, y: SeriesVector, z: SeriesVector) -> Result<Self> {
        model.validate()?;
        for c in [&y, &z] {
            if c.ambient_dim() != model.tangent_dim() {
                return Err(Error::LengthMismatch { expected: model.tangent_dim(), got: c.ambient_dim() });
            }
        }
        Ok(LimitConfig { model, y, z })
    }

    pub fn from_json(j: &LimitConfigJson) -> Result<Self> {
        let trunc = j.truncation_order.unwrap_or(START_TRUNCATION);
        let dim = j.model.tangent_dim();
        LimitConfig::new(j.model.clone(), j.y.to_series(dim, trunc)?, j.z.to_series(dim, trunc)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: LimitConfigJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        LimitConfig::from_json(&j)
    }

    pub fn to_json(&self) -> LimitConfigJson {
        LimitConfigJson {
            model: self.model.clone(),
            truncation_order: Some(self.y.truncation_order().min(self.z.truncation_order())),
            y: self.y.to_json(),
            z: self.z.to_json(),
        }
    }

    /// `[ô, φ(y), φ(z)]` at truncation `trunc`.
    pub fn curves(&self, trunc: usize) -> Result<Vec<SeriesVector>> {
        let dim = self.model.ambient_dim();
        let mut base = vec![Q::zero(); dim];
        base[0] = Q::one();
        Ok(vec![
            SeriesVector::constant(base, trunc)?,
            parameterize(&self.model, &self.y.with_truncation(trunc)?)?,
            parameterize(&self.model, &self.z.with_truncation(trunc)?)?,
        ])
    }

    /// Limit plane with the adaptive truncation schedule.
    pub fn limit_plane(&self) -> Result<LimitPlaneResult> {
        limit_span_adaptive(|trunc| self.curves(trunc))
    }
}

/// Normalized data `y_T = t^k v`, `z_T = t^k λ v + t^l w` with `k ≤ l`, `l` maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitData {
    pub k: usize,
    /// `None` when `z_T` is a multiple of `v` up to truncation.
    pub l: Option<usize>,
    /// Coefficients of `λ(t)` up to the truncation.
    pub lambda: Vec<Q>,
    pub v0: Vec<Q>,
    pub w0: Option<Vec<Q>>,
    pub ii_v0_vanishes: bool,
    /// `y` and `z` were exchanged to get `k ≤ l`.
    pub swapped: bool,
}

pub fn limit_data(cfg: &LimitConfig) -> Result<LimitData> {
    let (oy, oz) = match (cfg.y.order(), cfg.z.order()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Precondition("a moving curve is constant at the base point".into())),
    };
    let swapped = oz < oy;
    let (y, z) = if swapped { (&cfg.z, &cfg.y) } else { (&cfg.y, &cfg.z) };
    let k = oy.min(oz);
    let v = y.shift_down(k)?;
    let zs = z.shift_down(k)?;
    let trunc = v.truncation_order().min(zs.truncation_order());
    let v0 = v.coeff(0);
    let pivot = v0.iter().position(|x| !x.is_zero()).expect("v0 is nonzero");
    let mut lambda = vec![Q::zero(); trunc];
    let mut l = None;
    let mut w0 = None;
    for j in 0..trunc {
        // residual z' - λ v at order j
        let mut r = zs.coeff(j);
        for i in 0..=j {
            if lambda[i].is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(v.coeff(j - i)) {
                *x -= &lambda[i] * y;
            }
        }
        if is_zero_vec(&r) {
            continue;
        }
        let c = &r[pivot] / &v0[pivot];
        if r.iter().zip(&v0).all(|(a, b)| *a == &c * b) {
            lambda[j] = c;
        } else {
            l = Some(k + j);
            w0 = Some(r);
            break;
        }
    }
    let ii_v0_vanishes = is_zero_vec(&second_fundamental_form(&cfg.model, &v0, &v0)?);
    Ok(LimitData { k, l, lambda, v0, w0, ii_v0_vanishes, swapped })
}

/// Type predicted by the case analysis of the limit of `⟨ô, y(t), z(t)⟩`.
pub fn limit_type(cfg: &LimitConfig) -> Result<LimitType> {
    let d = limit_data(cfg)?;
    if d.l == Some(0) {
        return Ok(LimitType::I);
    }
    if d.k >= 1 || d.ii_v0_vanishes {
        return Ok(LimitType::IIIorIV);
    }
    let l0 = &d.lambda[0];
    if l0.is_zero() || l0.is_one() {
        if d.l.is_none() && d.lambda[1..].iter().all(Zero::is_zero) {
            return Err(Error::Precondition("two of the three curves coincide".into()));
        }
        return Ok(LimitType::II);
    }
    Ok(LimitType::I)
}

/// A point `Σ c_i b_i` of the plane with fixed pseudorandom nonzero coefficients.
pub fn sample_plane_point(plane: &[Vec<Q>], seed: u64) -> Vec<Q> {
    let mut r = rng(seed);
    let dim = plane.first().map_or(0, Vec::len);
    let mut p = vec![Q::zero(); dim];
    for b in plane {
        let c = small_nonzero(&mut r, 10_000);
        for (x, y) in p.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    p
}

/// Reads a Segre ambient vector as a tensor.
pub fn segre_point(dims: &[usize], v: &[Q]) -> Result<Tensor> {
    Tensor::new(dims.to_vec(), v.to_vec())
}

fn segre_factor_of(dims: &[usize], direction: &[Q]) -> Result<usize> {
    let tdim: usize = dims.iter().map(|d| d - 1).sum();
    if direction.len() != tdim {
        return Err(Error::LengthMismatch { expected: tdim, got: direction.len() });
    }
    let mut offset = 0;
    let mut hit = Vec::new();
    for (i, d) in dims.iter().enumerate() {
        if direction[offset..offset + d - 1].iter().any(|x| !x.is_zero()) {
            hit.push(i);
        }
        offset += d - 1;
    }
    match hit[..] {
        [i] => Ok(i),
        _ => Err(Error::InvalidArgument("line direction must lie in a single factor".into())),
    }
}

/// The direction `e_1` of factor `i` in the Segre tangent space.
pub fn segre_factor_direction(dims: &[usize], i: usize) -> Result<Vec<Q>> {
    if i >= dims.len() || dims[i] < 2 {
        return Err(Error::InvalidArgument(format!("factor {i} has no tangent directions")));
    }
    let mut v = vec![Q::zero(); dims.iter().map(|d| d - 1).sum()];
    v[dims[..i].iter().map(|d| d - 1).sum::<usize>()] = Q::one();
    Ok(v)
}

fn affine_tangent_space(dims: &[usize], factors: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    let mut out = Vec::new();
    for (j, &d) in dims.iter().enumerate() {
        for b in 0..d {
            let mut fs = factors.to_vec();
            fs[j] = (0..d).map(|x| Q::from_integer(((x == b) as i64).into())).collect();
            out.push(Tensor::rank_one(&fs)?.into_entries());
        }
    }
    Ok(out)
}

/// `dim(T̂_ô X + T̂_η X)` for the point `η = φ(v0)` on the line through `ô` in direction
/// `v0`, computed from explicit spanning sets.
pub fn line_tangent_span(dims: &[usize], direction: &[Q]) -> Result<usize> {
    CominusculeModel::Segre { dims: dims.to_vec() }.validate()?;
    segre_factor_of(dims, direction)?;
    let mut offset = 0;
    let mut base = Vec::new();
    let mut eta = Vec::new();
    for &d in dims {
        let mut e0 = vec![Q::zero(); d];
        e0[0] = Q::one();
        let mut f = e0.clone();
        f[1..].clone_from_slice(&direction[offset..offset + d - 1]);
        offset += d - 1;
        base.push(e0);
        eta.push(f);
    }
    let mut span = affine_tangent_space(dims, &base)?;
    span.extend(affine_tangent_space(dims, &eta)?);
    Ok(rank_of(&span))
}

/// The same dimension from `𝒯 = {ξ' + II(ζ' ν')}`: `2 dim X + 1 - dim ker II(v0 ·)`.
pub fn line_tangent_span_via_ii(dims: &[usize], direction: &[Q]) -> Result<usize> {
    let model = CominusculeModel::Segre { dims: dims.to_vec() };
    model.validate()?;
    segre_factor_of(dims, direction)?;
    let tdim = model.tangent_dim();
    let cols: Vec<Vec<Q>> = (0..tdim)
        .map(|i| {
            let mut e = vec![Q::zero(); tdim];
            e[i] = Q::one();
            second_fundamental_form(&model, direction, &e)
        })
        .collect::<Result<_>>()?;
    let image_rank = rank_of(&cols);
    let kernel = tdim - image_rank;
    Ok(2 * tdim + 1 - kernel)
}

/// `2 dim X + 2 - dim A_i`.
pub fn line_tangent_span_formula(dims: &[usize], factor: usize) -> usize {
    let dim_x: usize = dims.iter().map(|d| d - 1).sum();
    2 * dim_x + 2 - dims[factor]
}

/// Monomial helper: the span of all degree-`s` products `F_s` can reach, used to size checks.
pub fn fubini_image_dim(model: &CominusculeModel, s: usize) -> Result<usize> {
    let tdim = model.tangent_dim();
    let basis: Vec<Vec<Q>> = (0..tdim)
        .map(|i| {
            let mut e = vec![Q::zero(); tdim];
            e[i] = Q::one();
            e
        })
        .collect();
    let mut images = Vec::new();
    for idx in multisets(tdim, s) {
        let args: Vec<Vec<Q>> = idx.iter().map(|&i| basis[i].clone()).collect();
        images.push(fubini_form(model, s, &args)?);
    }
    Ok(rank_of(&images))
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    // k-multisets of 0..n via subsets of 0..n+k-1
    subsets(n + k - 1, k)
        .into_iter()
        .map(|s| s.iter().enumerate().map(|(j, &x)| x - j).collect())
        .collect()
}

/// Matrix of `w -> II(v0 w)` restricted to its nonzero rows (for inspection).
pub fn second_form_operator(model: &CominusculeModel, v0: &[Q]) -> Result<Matrix> {
    let tdim = model.tangent_dim();
    let cols: Vec<Vec<Q>> = (0..tdim)
        .map(|i| {
            let mut e = vec![Q::zero(); tdim];
            e[i] = Q::one();
            second_fundamental_form(model, v0, &e)
        })
        .collect::<Result<_>>()?;
    Matrix::from_rows(&cols).map(|m| m.transpose())
}
