//! Generators for the normal forms: secant-line points, the four families of points on
//! the third secant variety for any number of factors, the six orbit representatives
//! of concise border-rank-three tensors in C3⊗C3⊗C3, and the minor / sub-Pfaffian
//! coordinates of Grassmannian, Lagrangian and spinor charts.
//!
//! Basis vectors a^j_1, a^j_2, a^j_3 of factor j are the standard vectors e0, e1, e2.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::minors::{all_minors, all_subpfaffians, Ring};
use crate::rational::Q;
use crate::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaType {
    I,
    II,
    III,
    IV,
}

impl SigmaType {
    pub const ALL: [SigmaType; 4] = [SigmaType::I, SigmaType::II, SigmaType::III, SigmaType::IV];
}

impl fmt::Display for SigmaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigmaType::I => "i",
            SigmaType::II => "ii",
            SigmaType::III => "iii",
            SigmaType::IV => "iv",
        })
    }
}

impl std::str::FromStr for SigmaType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(SigmaType::I),
            "ii" => Ok(SigmaType::II),
            "iii" => Ok(SigmaType::III),
            "iv" => Ok(SigmaType::IV),
            _ => Err(Error::InvalidArgument(format!("unknown type {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaThreeSpec {
    pub type_tag: SigmaType,
    pub n: usize,
    pub dims: Vec<usize>,
    pub distinguished_factor: Option<usize>,
}

impl SigmaThreeSpec {
    pub fn new(type_tag: SigmaType, n: usize) -> Self {
        let distinguished_factor = (type_tag == SigmaType::IV).then_some(0);
        SigmaThreeSpec { type_tag, n, dims: vec![3; n], distinguished_factor }
    }

    pub fn with_factor(mut self, factor: usize) -> Self {
        self.distinguished_factor = Some(factor);
        self
    }
}

fn check_dims(n: usize, dims: &[usize]) -> Result<()> {
    if dims.len() != n {
        return Err(Error::ShapeMismatch(format!("{} dims given for {n} factors", dims.len())));
    }
    if n < 2 {
        return Err(Error::TooFewModes { min: 2, got: n });
    }
    Ok(())
}

/// Index tuple with `base` in every mode except the listed overrides.
fn term(n: usize, overrides: &[(usize, usize)]) -> Vec<usize> {
    let mut t = vec![0; n];
    for &(mode, idx) in overrides {
        t[mode] = idx;
    }
    t
}

/// `sum_{j in J} a_1 ⊗ .. ⊗ a_2^j ⊗ .. ⊗ a_1`. Modes in `j_set` are 0-based.
pub fn sigma2_point(n: usize, j_set: &[usize], dims: &[usize]) -> Result<Tensor> {
    Tensor::from_terms(dims.to_vec(), &sigma2_terms(n, j_set, dims)?)
}

pub fn sigma2_terms(n: usize, j_set: &[usize], dims: &[usize]) -> Result<Vec<Vec<usize>>> {
    check_dims(n, dims)?;
    if j_set.is_empty() {
        return Err(Error::InvalidArgument("J must be nonempty".into()));
    }
    let mut seen = vec![false; n];
    for &j in j_set {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(Error::InvalidArgument(format!("J = {j_set:?} is not a set of modes below {n}")));
        }
        if dims[j] < 2 {
            return Err(Error::InvalidArgument(format!("mode {j} needs dimension at least 2")));
        }
    }
    Ok(j_set.iter().map(|&j| term(n, &[(j, 1)])).collect())
}

/// Rank-one index tuples of the requested normal form, distinguished factor already
/// moved into place.
pub fn sigma3_terms(spec: &SigmaThreeSpec) -> Result<Vec<Vec<usize>>> {
    let n = spec.n;
    check_dims(n, &spec.dims)?;
    if n < 3 && spec.type_tag != SigmaType::I {
        return Err(Error::TooFewModes { min: 3, got: n });
    }
    if let Some(d) = spec.dims.iter().position(|&d| d < 3) {
        return Err(Error::InvalidArgument(format!("mode {d} needs dimension at least 3")));
    }
    let terms: Vec<Vec<usize>> = match spec.type_tag {
        SigmaType::I => (0..3).map(|i| vec![i; n]).collect(),
        SigmaType::II => (0..n).map(|i| term(n, &[(i, 1)])).chain(std::iter::once(vec![2; n])).collect(),
        SigmaType::III => {
            let mut v = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    v.push(term(n, &[(i, 1), (j, 1)]));
                }
            }
            v.extend((0..n).map(|i| term(n, &[(i, 2)])));
            v
        }
        SigmaType::IV => {
            let f = spec
                .distinguished_factor
                .ok_or_else(|| Error::InvalidArgument("type iv needs a distinguished factor".into()))?;
            if f >= n {
                return Err(Error::ModeOutOfRange { mode: f, order: n });
            }
            let mut v: Vec<Vec<usize>> = (1..n).map(|s| term(n, &[(0, 1), (s, 1)])).collect();
            v.extend((0..n).map(|i| term(n, &[(i, 2)])));
            // exchange the roles of factor 0 and factor f
            for t in &mut v {
                t.swap(0, f);
            }
            v
        }
    };
    Ok(terms)
}

pub fn sigma3_point(spec: &SigmaThreeSpec) -> Result<Tensor> {
    Tensor::from_terms(spec.dims.clone(), &sigma3_terms(spec)?)
}

pub const ORBIT_IDS: [u32; 6] = [34, 35, 36, 37, 38, 39];

/// Slice pattern `s X + t Y + u Z` of each orbit; 0, 1, 2 stand for s, t, u and 3 for
/// an empty cell. Rows index B, columns index C.
fn orbit_slice(id: u32) -> Option<[[u8; 3]; 3]> {
    const E: u8 = 3;
    Some(match id {
        34 => [[1, 0, 2], [0, E, E], [2, E, E]],
        35 => [[1, 0, E], [0, E, E], [2, E, 0]],
        36 => [[1, 0, 2], [0, E, E], [E, E, 0]],
        37 => [[2, 1, 0], [1, 0, E], [0, E, E]],
        38 => [[1, 0, E], [0, E, E], [E, E, 2]],
        39 => [[0, E, E], [E, 1, E], [E, E, 2]],
        _ => return None,
    })
}

pub fn orbit_terms(id: u32) -> Result<Vec<Vec<usize>>> {
    let slice = orbit_slice(id).ok_or_else(|| Error::InvalidArgument(format!("orbit id {id} not in 34..39")))?;
    let mut terms = Vec::new();
    for (b, row) in slice.iter().enumerate() {
        for (c, &a) in row.iter().enumerate() {
            if a < 3 {
                terms.push(vec![a as usize, b, c]);
            }
        }
    }
    terms.sort();
    Ok(terms)
}

pub fn orbit_representative(id: u32) -> Result<Tensor> {
    Tensor::from_terms(vec![3, 3, 3], &orbit_terms(id)?)
}

/// Rank of each orbit as listed in the orbit table.
pub fn orbit_rank(id: u32) -> Option<usize> {
    match id {
        34..=37 => Some(5),
        38 => Some(4),
        39 => Some(3),
        _ => None,
    }
}

/// Orbit closure dimension `3a + 3b + 3c - offset` at a = b = c = 3.
pub fn orbit_dimension_formula(id: u32, dims: (usize, usize, usize)) -> Option<usize> {
    let offset = match id {
        34..=36 => 11,
        37 => 9,
        38 => 8,
        39 => 7,
        _ => return None,
    };
    Some(3 * (dims.0 + dims.1 + dims.2) - offset)
}

/// The homogeneous variety whose local chart is being used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CominusculeModel {
    Segre { dims: Vec<usize> },
    Grassmannian { k: usize, n: usize },
    Lagrangian { k: usize },
    Spinor { k: usize },
}

impl CominusculeModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            CominusculeModel::Segre { dims } => {
                if dims.len() < 2 || dims.iter().any(|&d| d < 1) {
                    return Err(Error::InvalidArgument("Segre needs at least two positive dims".into()));
                }
                let size: usize = dims.iter().product();
                if size > 4096 {
                    return Err(Error::TooLarge { size, limit: 4096 });
                }
            }
            CominusculeModel::Grassmannian { k, n } => {
                if *k < 1 || k >= n || *n > 12 {
                    return Err(Error::InvalidArgument(format!("G({k},{n}) needs 1 <= k < n <= 12")));
                }
            }
            CominusculeModel::Lagrangian { k } => {
                if *k < 1 || *k > 6 {
                    return Err(Error::InvalidArgument(format!("Lagrangian k = {k} must lie in 1..=6")));
                }
            }
            CominusculeModel::Spinor { k } => {
                if *k < 2 || *k > 12 {
                    return Err(Error::InvalidArgument(format!("spinor k = {k} must lie in 2..=12")));
                }
            }
        }
        Ok(())
    }

    /// Dimension of the tangent space T (number of chart parameters).
    pub fn tangent_dim(&self) -> usize {
        match self {
            CominusculeModel::Segre { dims } => dims.iter().map(|d| d - 1).sum(),
            CominusculeModel::Grassmannian { k, n } => k * (n - k),
            CominusculeModel::Lagrangian { k } => k * (k + 1) / 2,
            CominusculeModel::Spinor { k } => k * (k - 1) / 2,
        }
    }

    /// Dimension of the affine ambient space V.
    pub fn ambient_dim(&self) -> usize {
        match self {
            CominusculeModel::Segre { dims } => dims.iter().product(),
            CominusculeModel::Grassmannian { k, n } => binomial(*n, *k),
            CominusculeModel::Lagrangian { k } => binomial(2 * k, *k),
            CominusculeModel::Spinor { k } => 1 << (k - 1),
        }
    }

    /// Largest degree `f` with a nonzero fundamental form.
    pub fn max_degree(&self) -> usize {
        match self {
            CominusculeModel::Segre { dims } => dims.iter().filter(|&&d| d > 1).count(),
            CominusculeModel::Grassmannian { k, n } => (*k).min(n - k),
            CominusculeModel::Lagrangian { k } => *k,
            CominusculeModel::Spinor { k } => k / 2,
        }
    }

    /// Coordinates of the chart point with tangent parameters `params` (layout per model:
    /// Segre concatenates a'_i in C^{d_i - 1}; Grassmannian is row-major k x (n-k);
    /// Lagrangian and spinor list the upper triangle row by row, with the diagonal
    /// included for the Lagrangian case).
    pub fn phi<R: Ring>(&self, params: &[R], unit: &R) -> Result<Vec<R>> {
        if params.len() != self.tangent_dim() {
            return Err(Error::LengthMismatch { expected: self.tangent_dim(), got: params.len() });
        }
        Ok(match self {
            CominusculeModel::Segre { dims } => segre_coords(dims, params, unit),
            CominusculeModel::Grassmannian { k, n } => {
                let cols = n - k;
                let m: Vec<Vec<R>> = (0..*k).map(|i| params[i * cols..(i + 1) * cols].to_vec()).collect();
                grassmann_coords(&m, unit)
            }
            CominusculeModel::Lagrangian { k } => grassmann_coords(&symmetric_from_params(*k, params), unit),
            CominusculeModel::Spinor { k } => spinor_coords(&skew_from_params(*k, params, unit), unit),
        })
    }

    /// Degree (number of tangent parameters multiplied) of each ambient coordinate;
    /// the degree-s block is where the fundamental form F_s lands.
    pub fn coordinate_degrees(&self) -> Vec<usize> {
        match self {
            CominusculeModel::Segre { dims } => (0..dims.iter().product())
                .map(|idx| crate::tensor::multi_index(idx, dims).iter().filter(|&&i| i > 0).count())
                .collect(),
            CominusculeModel::Grassmannian { k, n } => grassmann_degrees(*k, n - k),
            CominusculeModel::Lagrangian { k } => grassmann_degrees(*k, *k),
            CominusculeModel::Spinor { k } => {
                let mut v = vec![0];
                let mut s = 2;
                while s <= *k {
                    v.extend(std::iter::repeat_n(s / 2, binomial(*k, s)));
                    s += 2;
                }
                v
            }
        }
    }
}

fn grassmann_degrees(rows: usize, cols: usize) -> Vec<usize> {
    let mut v = vec![0];
    for s in 1..=rows.min(cols) {
        v.extend(std::iter::repeat_n(s, binomial(rows, s) * binomial(cols, s)));
    }
    v
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn segre_coords<R: Ring>(dims: &[usize], params: &[R], unit: &R) -> Vec<R> {
    // factor i is e0 + a'_i
    let mut offset = 0;
    let factors: Vec<Vec<R>> = dims
        .iter()
        .map(|&d| {
            let mut v = vec![unit.one_like()];
            v.extend_from_slice(&params[offset..offset + d - 1]);
            offset += d - 1;
            v
        })
        .collect();
    let mut out = vec![unit.one_like()];
    for f in &factors {
        let mut next = Vec::with_capacity(out.len() * f.len());
        for a in &out {
            for b in f {
                next.push(if a.is_zero() || b.is_zero() { unit.zero_like() } else { a.mul(b) });
            }
        }
        out = next;
    }
    out
}

fn symmetric_from_params<R: Ring>(k: usize, params: &[R]) -> Vec<Vec<R>> {
    let mut m = vec![vec![params[0].zero_like(); k]; k];
    let mut p = 0;
    for i in 0..k {
        for j in i..k {
            m[i][j] = params[p].clone();
            m[j][i] = params[p].clone();
            p += 1;
        }
    }
    m
}

fn skew_from_params<R: Ring>(k: usize, params: &[R], unit: &R) -> Vec<Vec<R>> {
    let zero = unit.zero_like();
    let mut m = vec![vec![zero.clone(); k]; k];
    let mut p = 0;
    for i in 0..k {
        for j in i + 1..k {
            m[i][j] = params[p].clone();
            m[j][i] = zero.sub(&params[p]);
            p += 1;
        }
    }
    m
}

/// `(1, M, ∧²M, ..)`: all minors by size, row subsets then column subsets in lex order.
pub fn grassmann_coords<R: Ring>(m: &[Vec<R>], unit: &R) -> Vec<R> {
    let mut out = vec![unit.one_like()];
    if m.is_empty() || m[0].is_empty() {
        return out;
    }
    let max = m.len().min(m[0].len());
    out.extend(all_minors(m, max).into_iter().flatten());
    out
}

/// `(1, M_{i<j}, Pf4, Pf6, ..)` over index subsets in lex order.
pub fn spinor_coords<R: Ring>(m: &[Vec<R>], unit: &R) -> Vec<R> {
    let mut out = vec![unit.one_like()];
    out.extend(all_subpfaffians(m, m.len()).into_iter().flatten());
    out
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Grassmannian chart coordinates of a `k x (n-k)` matrix; with `symmetric` the matrix
/// must be a symmetric `k x k` matrix (Lagrangian chart, n = 2k).
pub fn grassmann_phi(m: &Matrix, k: usize, n: usize, symmetric: bool) -> Result<Vec<Q>> {
    if k == 0 || k >= n || m.rows() != k || m.cols() != n - k {
        return Err(Error::ShapeMismatch(format!(
            "expected a {k}x{} matrix, got {}x{}",
            n.saturating_sub(k),
            m.rows(),
            m.cols()
        )));
    }
    if symmetric && (n != 2 * k || m != &m.transpose()) {
        return Err(Error::InvalidArgument("Lagrangian chart needs a symmetric k x k matrix".into()));
    }
    Ok(grassmann_coords(&matrix_rows(m), &Q::one()))
}

pub fn spinor_phi(m: &Matrix, k: usize) -> Result<Vec<Q>> {
    if m.rows() != k || m.cols() != k {
        return Err(Error::ShapeMismatch(format!("expected a {k}x{k} matrix")));
    }
    if m.add(&m.transpose())?.entries().iter().any(|x| !Zero::is_zero(x)) {
        return Err(Error::InvalidArgument("spinor chart needs a skew-symmetric matrix".into()));
    }
    Ok(spinor_coords(&matrix_rows(m), &Q::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn term_counts() {
        for n in 3..=6 {
            let count = |t| sigma3_terms(&SigmaThreeSpec::new(t, n)).unwrap().len();
            assert_eq!(count(SigmaType::I), 3);
            assert_eq!(count(SigmaType::II), n + 1);
            assert_eq!(count(SigmaType::III), n * (n + 1) / 2);
            assert_eq!(count(SigmaType::IV), 2 * n - 1);
        }
    }

    #[test]
    fn sigma2_errors() {
        assert!(sigma2_point(3, &[0, 3], &[2, 2, 2]).is_err());
        assert!(sigma2_point(3, &[0, 0], &[2, 2, 2]).is_err());
        assert!(sigma2_point(3, &[1], &[2, 1, 2]).is_err());
        assert!(sigma2_point(3, &[0, 1, 2], &[2, 2, 2]).is_ok());
    }

    #[test]
    fn type_iv_needs_factor() {
        let mut spec = SigmaThreeSpec::new(SigmaType::IV, 3);
        spec.distinguished_factor = None;
        assert!(sigma3_point(&spec).is_err());
        assert!(sigma3_point(&SigmaThreeSpec::new(SigmaType::I, 3).with_factor(0)).is_ok());
        let mut small = SigmaThreeSpec::new(SigmaType::III, 3);
        small.dims = vec![3, 2, 3];
        assert!(sigma3_point(&small).is_err());
    }

    #[test]
    fn orbit_ids() {
        assert!(orbit_representative(33).is_err());
        assert_eq!(orbit_terms(39).unwrap(), vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]);
        assert_eq!(orbit_terms(34).unwrap().len(), 5);
    }

    #[test]
    fn model_dimensions() {
        let cases = [
            (CominusculeModel::Segre { dims: vec![3, 3, 3] }, 6, 27),
            (CominusculeModel::Grassmannian { k: 3, n: 6 }, 9, 20),
            (CominusculeModel::Lagrangian { k: 3 }, 6, 20),
            (CominusculeModel::Spinor { k: 6 }, 15, 32),
        ];
        for (m, t, v) in cases {
            assert_eq!(m.tangent_dim(), t);
            assert_eq!(m.ambient_dim(), v);
            assert_eq!(m.coordinate_degrees().len(), v);
            let params = vec![q(0); t];
            let coords = m.phi(&params, &q(1)).unwrap();
            assert_eq!(coords.len(), v);
            assert_eq!(coords[0], q(1));
            assert!(coords[1..].iter().all(Zero::is_zero));
        }
    }
}
