//! Dense exact tensors: storage, flattenings, multilinear rank, group actions and slices.
//!
//! Entries are stored in row-major order with mode 0 varying slowest, so the entry at
//! multi-index `(i0, .., i_{n-1})` lives at `sum_k i_k * stride_k` with
//! `stride_k = dims[k+1] * .. * dims[n-1]`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{format_q, parse_q, Q};

/// Upper bound on the number of stored entries.
pub const MAX_ENTRIES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    dims: Vec<usize>,
    entries: Vec<Q>,
}

/// One change of basis per mode, acting as `g_0 ⊗ .. ⊗ g_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLTuple {
    mats: Vec<Matrix>,
}

/// A tensor rewritten inside the span of its mode-wise supports.
///
/// `bases[i]` is `dims[i] x core_dims[i]` with independent columns, and
/// `(bases[0] ⊗ .. ⊗ bases[n-1]) · core` reproduces the original tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConciseCore {
    pub core: Tensor,
    pub bases: Vec<Matrix>,
}

/// JSON form: `{"dims": [...], "entries": ["p/q", ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorJson {
    pub dims: Vec<usize>,
    pub entries: Vec<String>,
}

fn product(dims: &[usize]) -> Result<usize> {
    dims.iter().try_fold(1usize, |acc, &d| {
        acc.checked_mul(d)
            .filter(|&s| s <= MAX_ENTRIES)
            .ok_or(Error::TooLarge { size: usize::MAX, limit: MAX_ENTRIES })
    })
}

impl Tensor {
    /// `make_tensor`: validate shape and store entries exactly.
    pub fn new(dims: Vec<usize>, entries: Vec<Q>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::TooFewModes { min: 2, got: dims.len() });
        }
        if dims.contains(&0) {
            return Err(Error::ZeroDimension);
        }
        let size = product(&dims).map_err(|_| Error::TooLarge {
            size: dims.iter().fold(1u128, |a, &d| a.saturating_mul(d as u128)) as usize,
            limit: MAX_ENTRIES,
        })?;
        if entries.len() != size {
            return Err(Error::LengthMismatch { expected: size, got: entries.len() });
        }
        Ok(Tensor { dims, entries })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let size = product(&dims)?;
        Self::new(dims, vec![Q::zero(); size])
    }

    pub fn from_i64(dims: Vec<usize>, entries: &[i64]) -> Result<Self> {
        Self::new(dims, entries.iter().map(|&x| crate::rational::q(x)).collect())
    }

    /// Outer product `v_0 ⊗ .. ⊗ v_{n-1}`.
    pub fn rank_one(factors: &[Vec<Q>]) -> Result<Self> {
        let dims: Vec<usize> = factors.iter().map(Vec::len).collect();
        let mut t = Self::zeros(dims)?;
        for (idx, e) in t.entries.iter_mut().enumerate() {
            let mi = multi_index(idx, &t.dims);
            let mut v = Q::one();
            for (k, &i) in mi.iter().enumerate() {
                if factors[k][i].is_zero() {
                    v = Q::zero();
                    break;
                }
                v *= &factors[k][i];
            }
            *e = v;
        }
        Ok(t)
    }

    /// Sum of `e_{i_0} ⊗ .. ⊗ e_{i_{n-1}}` over the given index tuples.
    pub fn from_terms(dims: Vec<usize>, terms: &[Vec<usize>]) -> Result<Self> {
        let mut t = Self::zeros(dims)?;
        for term in terms {
            if term.len() != t.order() || term.iter().zip(&t.dims).any(|(&i, &d)| i >= d) {
                return Err(Error::ShapeMismatch(format!("index {term:?} outside dims {:?}", t.dims)));
            }
            let k = t.offset(term);
            t.entries[k] += Q::one();
        }
        Ok(t)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn entries(&self) -> &[Q] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Q> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn offset(&self, index: &[usize]) -> usize {
        index.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn get(&self, index: &[usize]) -> &Q {
        &self.entries[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Q) {
        let k = self.offset(index);
        self.entries[k] = value;
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.dims != other.dims {
            return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Tensor { dims: self.dims.clone(), entries })
    }

    pub fn scale(&self, c: &Q) -> Tensor {
        Tensor { dims: self.dims.clone(), entries: self.entries.iter().map(|a| a * c).collect() }
    }

    /// Mode-`mode` flattening: `dims[mode] x (N / dims[mode])`, remaining modes in
    /// lexicographic order.
    pub fn flatten(&self, mode: usize) -> Result<Matrix> {
        self.check_mode(mode)?;
        let rows = self.dims[mode];
        let cols = self.len() / rows;
        let mut out = Matrix::zeros(rows, cols);
        let inner: usize = self.dims[mode + 1..].iter().product();
        for (idx, e) in self.entries.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let outer_part = idx / (inner * rows);
            let i = (idx / inner) % rows;
            let inner_part = idx % inner;
            out[(i, outer_part * inner + inner_part)] = e.clone();
        }
        Ok(out)
    }

    /// Flattening along a set of modes: rows indexed by `row_modes` (lexicographic in the
    /// given order), columns by the remaining modes.
    pub fn flatten_modes(&self, row_modes: &[usize]) -> Result<Matrix> {
        for &m in row_modes {
            self.check_mode(m)?;
        }
        let col_modes: Vec<usize> = (0..self.order()).filter(|m| !row_modes.contains(m)).collect();
        let rows: usize = row_modes.iter().map(|&m| self.dims[m]).product();
        let cols: usize = col_modes.iter().map(|&m| self.dims[m]).product();
        let mut out = Matrix::zeros(rows, cols);
        for (idx, e) in self.entries.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let mi = multi_index(idx, &self.dims);
            let r = row_modes.iter().fold(0, |acc, &m| acc * self.dims[m] + mi[m]);
            let c = col_modes.iter().fold(0, |acc, &m| acc * self.dims[m] + mi[m]);
            out[(r, c)] = e.clone();
        }
        Ok(out)
    }

    pub fn multilinear_rank(&self) -> Vec<usize> {
        (0..self.order()).map(|m| self.flatten(m).expect("mode in range").rank()).collect()
    }

    /// Rewrite the tensor in bases adapted to its mode-wise supports.
    pub fn concise_core(&self) -> Result<ConciseCore> {
        if self.is_zero() {
            return Err(Error::ZeroTensor("concise core of the zero tensor"));
        }
        let mut bases = Vec::with_capacity(self.order());
        let mut projections = Vec::with_capacity(self.order());
        for m in 0..self.order() {
            let flat = self.flatten(m)?;
            // reduced column echelon basis: transpose, rref, take nonzero rows
            let (r, pivots) = flat.transpose().rref();
            let rank = pivots.len();
            let mut basis = Matrix::zeros(self.dims[m], rank);
            let mut proj = Matrix::zeros(rank, self.dims[m]);
            for (j, &p) in pivots.iter().enumerate() {
                for i in 0..self.dims[m] {
                    basis[(i, j)] = r[(j, i)].clone();
                }
                // basis has identity rows at the pivot positions
                proj[(j, p)] = Q::one();
            }
            bases.push(basis);
            projections.push(proj);
        }
        let core = self.mode_products(&projections)?;
        Ok(ConciseCore { core, bases })
    }

    /// Apply one (possibly rectangular) matrix per mode.
    pub fn mode_products(&self, mats: &[Matrix]) -> Result<Tensor> {
        if mats.len() != self.order() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for a tensor with {} modes",
                mats.len(),
                self.order()
            )));
        }
        let mut t = self.clone();
        for (m, g) in mats.iter().enumerate() {
            t = t.mode_product(m, g)?;
        }
        Ok(t)
    }

    pub fn mode_product(&self, mode: usize, g: &Matrix) -> Result<Tensor> {
        self.check_mode(mode)?;
        if g.cols() != self.dims[mode] {
            return Err(Error::ShapeMismatch(format!(
                "matrix with {} columns applied to mode of size {}",
                g.cols(),
                self.dims[mode]
            )));
        }
        let mut dims = self.dims.clone();
        dims[mode] = g.rows();
        let mut out = Tensor::zeros(dims)?;
        let inner: usize = self.dims[mode + 1..].iter().product();
        let outer: usize = self.dims[..mode].iter().product();
        let (d_in, d_out) = (self.dims[mode], g.rows());
        for o in 0..outer {
            for b in 0..d_in {
                for i in 0..inner {
                    let x = &self.entries[(o * d_in + b) * inner + i];
                    if x.is_zero() {
                        continue;
                    }
                    for a in 0..d_out {
                        let c = &g[(a, b)];
                        if !c.is_zero() {
                            out.entries[(o * d_out + a) * inner + i] += c * x;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply_gl(&self, g: &GLTuple) -> Result<Tensor> {
        if g.mats.len() != self.order() || g.mats.iter().zip(&self.dims).any(|(m, &d)| m.rows() != d) {
            return Err(Error::ShapeMismatch("GL tuple does not match tensor dims".into()));
        }
        self.mode_products(&g.mats)
    }

    /// Contract mode `mode` against a covector, giving a tensor of order `n - 1`.
    pub fn contract(&self, mode: usize, covector: &[Q]) -> Result<Tensor> {
        self.check_mode(mode)?;
        if self.order() < 3 {
            return Err(Error::TooFewModes { min: 3, got: self.order() });
        }
        if covector.len() != self.dims[mode] {
            return Err(Error::LengthMismatch { expected: self.dims[mode], got: covector.len() });
        }
        let row = Matrix::new(1, covector.len(), covector.to_vec())?;
        let t = self.mode_product(mode, &row)?;
        let mut dims = self.dims.clone();
        dims.remove(mode);
        Tensor::new(dims, t.entries)
    }

    /// The slices of a 3-way tensor along `mode` against the standard dual basis.
    pub fn slices(&self, mode: usize) -> Result<Vec<Matrix>> {
        if self.order() != 3 {
            return Err(Error::WrongDims { expected: "a 3-way tensor", got: self.dims.clone() });
        }
        self.check_mode(mode)?;
        (0..self.dims[mode])
            .map(|i| {
                let mut cov = vec![Q::zero(); self.dims[mode]];
                cov[i] = Q::one();
                let s = self.contract(mode, &cov)?;
                Matrix::new(s.dims[0], s.dims[1], s.entries)
            })
            .collect()
    }

    /// Reorder modes: mode `k` of the result is mode `perm[k]` of `self`.
    pub fn permute_modes(&self, perm: &[usize]) -> Result<Tensor> {
        let n = self.order();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut out = Tensor::zeros(dims)?;
        for (idx, e) in self.entries.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let mi = multi_index(idx, &self.dims);
            let new: Vec<usize> = perm.iter().map(|&p| mi[p]).collect();
            let k = out.offset(&new);
            out.entries[k] = e.clone();
        }
        Ok(out)
    }

    /// Merge groups of modes into single modes. Each group is ordered and the groups
    /// together partition `0..n`; merged indices are lexicographic within a group.
    pub fn group_modes(&self, groups: &[Vec<usize>]) -> Result<Tensor> {
        let perm: Vec<usize> = groups.iter().flatten().copied().collect();
        let permuted = self.permute_modes(&perm)?;
        let dims: Vec<usize> = groups.iter().map(|g| g.iter().map(|&m| self.dims[m]).product()).collect();
        Tensor::new(dims, permuted.entries)
    }

    /// Drop the listed modes, which must all have size one.
    pub fn squeeze(&self, modes: &[usize]) -> Result<Tensor> {
        if modes.iter().any(|&m| m >= self.order() || self.dims[m] != 1) {
            return Err(Error::InvalidArgument("only size-one modes can be dropped".into()));
        }
        let dims: Vec<usize> =
            self.dims.iter().enumerate().filter(|(m, _)| !modes.contains(m)).map(|(_, &d)| d).collect();
        Tensor::new(dims, self.entries.clone())
    }

    pub fn to_json(&self) -> TensorJson {
        TensorJson { dims: self.dims.clone(), entries: self.entries.iter().map(format_q).collect() }
    }

    pub fn from_json(json: &TensorJson) -> Result<Self> {
        let entries = json.entries.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
        Self::new(json.dims.clone(), entries)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("tensor serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: TensorJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.order() {
            return Err(Error::ModeOutOfRange { mode, order: self.order() });
        }
        Ok(())
    }
}

impl ConciseCore {
    pub fn core_dims(&self) -> &[usize] {
        self.core.dims()
    }

    pub fn reconstruct(&self) -> Result<Tensor> {
        self.core.mode_products(&self.bases)
    }
}

impl GLTuple {
    /// Validates that every matrix is square with nonzero determinant.
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        for m in &mats {
            if !m.is_square() {
                return Err(Error::ShapeMismatch("GL tuple entries must be square".into()));
            }
            if m.determinant()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(GLTuple { mats })
    }

    pub fn identity(dims: &[usize]) -> Self {
        GLTuple { mats: dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(GLTuple { mats: self.mats.iter().map(Matrix::inverse).collect::<Result<_>>()? })
    }
}

/// Decompose a flat offset into a multi-index.
pub fn multi_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}
