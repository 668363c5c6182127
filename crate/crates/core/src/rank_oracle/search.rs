//! Exhaustive rank search over a small prime field.
//!
//! The rank of `T` equals the least `r` such that the slice space `U = T(A_1^*)` lies in
//! the span of `r` rank-one tensors. Equivalently, some `r`-dimensional `W ⊇ U` is spanned
//! by the rank-one tensors it contains; any such `W` is `U` plus `r - dim U` rank-one
//! tensors, so the search runs over those completions only.

use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal_forms::binomial;
use crate::rational::reduce_mod;
use crate::tensor::{multi_index, Tensor};

use super::field::{check_prime, projective_points, Echelon};

pub const MAX_RMAX: usize = 6;
/// Largest number of completions examined for one value of `r`.
pub const MAX_COMPLETIONS: usize = 20_000_000;
/// Largest number of rank-one candidates.
pub const MAX_RANK_ONES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldRank {
    Exact(usize),
    GreaterThan(usize),
}

impl FieldRank {
    pub fn exact(self) -> Option<usize> {
        match self {
            FieldRank::Exact(r) => Some(r),
            FieldRank::GreaterThan(_) => None,
        }
    }
}

impl std::fmt::Display for FieldRank {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldRank::Exact(r) => write!(f, "{r}"),
            FieldRank::GreaterThan(r) => write!(f, ">{r}"),
        }
    }
}

/// Tensor with residues mod `q`, restricted to a concise core.
struct ReducedCore {
    q: u32,
    dims: Vec<usize>,
    entries: Vec<u8>,
}

impl ReducedCore {
    fn from_tensor(t: &Tensor, q: u32) -> Result<Self> {
        let entries = t.entries().iter().map(|x| reduce_mod(x, q).map(|v| v as u8)).collect::<Result<Vec<_>>>()?;
        let mut core = ReducedCore { q, dims: t.dims().to_vec(), entries };
        for mode in 0..core.dims.len() {
            let keep = core.fiber_pivots(mode);
            core = core.restrict(mode, &keep);
        }
        Ok(core)
    }

    /// Pivot coordinates of the span of the mode fibers. Every fiber is determined by its
    /// entries there, so keeping only those indices is an isomorphism onto the core.
    fn fiber_pivots(&self, mode: usize) -> Vec<usize> {
        let d = self.dims[mode];
        let inner: usize = self.dims[mode + 1..].iter().product();
        let outer: usize = self.dims[..mode].iter().product();
        let mut ech = Echelon::new(self.q);
        for o in 0..outer {
            for i in 0..inner {
                let fiber: Vec<u8> = (0..d).map(|b| self.entries[(o * d + b) * inner + i]).collect();
                ech.insert(&fiber);
            }
        }
        let mut p = ech.pivots().to_vec();
        p.sort_unstable();
        p
    }

    fn restrict(&self, mode: usize, keep: &[usize]) -> ReducedCore {
        let d = self.dims[mode];
        let inner: usize = self.dims[mode + 1..].iter().product();
        let outer: usize = self.dims[..mode].iter().product();
        let mut entries = Vec::with_capacity(outer * keep.len() * inner);
        for o in 0..outer {
            for &b in keep {
                entries.extend_from_slice(&self.entries[(o * d + b) * inner..(o * d + b + 1) * inner]);
            }
        }
        let mut dims = self.dims.clone();
        dims[mode] = keep.len();
        ReducedCore { q: self.q, dims, entries }
    }

    fn is_zero(&self) -> bool {
        self.dims.contains(&0)
    }
}

/// Flattened `v_1 ⊗ .. ⊗ v_m` over all projective representatives in each factor.
fn rank_one_candidates(q: u32, dims: &[usize]) -> Result<Vec<Vec<u8>>> {
    let count: usize = dims.iter().map(|&d| ((q as usize).pow(d as u32) - 1) / (q as usize - 1)).product();
    if count > MAX_RANK_ONES {
        return Err(Error::SearchSpaceOverflow(format!("{count} rank-one candidates over F_{q}")));
    }
    let points: Vec<Vec<Vec<u8>>> = dims.iter().map(|&d| projective_points(q, d)).collect();
    let len: usize = dims.iter().product();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let choice = multi_index(k, &points.iter().map(Vec::len).collect::<Vec<_>>());
        let v: Vec<u8> = (0..len)
            .map(|idx| {
                let ii = multi_index(idx, dims);
                ii.iter().zip(&choice).zip(&points).fold(1u32, |acc, ((&i, &c), pts)| acc * pts[c][i] as u32 % q) as u8
            })
            .collect();
        out.push(v);
    }
    Ok(out)
}

struct Search<'a> {
    base: Echelon,
    cands: &'a [Vec<u8>],
    target: usize,
    found: &'a AtomicBool,
}

impl Search<'_> {
    /// Whether the rank-one candidates inside `w` span all of it.
    fn spanned_by_rank_ones(&self, w: &Echelon) -> bool {
        let mut inside = Echelon::new(w.q as u32);
        for c in self.cands {
            if w.contains(c) && inside.insert(c) && inside.dim() == self.target {
                return true;
            }
        }
        false
    }

    fn dfs(&self, w: &Echelon, start: usize, remaining: usize) -> bool {
        if self.found.load(Ordering::Relaxed) {
            return true;
        }
        if remaining == 0 {
            return self.spanned_by_rank_ones(w);
        }
        let last = self.cands.len() + 1 - remaining;
        for i in start..last {
            let mut next = w.clone();
            if !next.insert(&self.cands[i]) {
                continue;
            }
            if self.dfs(&next, i + 1, remaining - 1) {
                return true;
            }
        }
        false
    }
}

/// Smallest `r <= r_max` such that the tensor reduced mod `q` has rank `r` over F_q.
/// `jobs > 1` splits the first choice of each completion across threads.
pub fn rank_over_field(t: &Tensor, q: u32, r_max: usize, jobs: usize) -> Result<FieldRank> {
    check_prime(q)?;
    if r_max > MAX_RMAX {
        return Err(Error::InvalidArgument(format!("r_max {r_max} exceeds {MAX_RMAX}")));
    }
    let core = ReducedCore::from_tensor(t, q)?;
    if core.is_zero() {
        return Ok(FieldRank::Exact(0));
    }
    let u = core.dims[0];
    let rest = &core.dims[1..];
    let slice_len: usize = rest.iter().product();
    let mut base = Echelon::new(q);
    for a in 0..u {
        base.insert(&core.entries[a * slice_len..(a + 1) * slice_len]);
    }
    // rank is at least every flattening rank
    let lower = *core.dims.iter().max().expect("nonempty");
    if lower > r_max {
        return Ok(FieldRank::GreaterThan(r_max));
    }
    let cands = rank_one_candidates(q, rest)?;
    for r in lower..=r_max {
        let extra = r - u;
        let work = binomial(cands.len(), extra);
        if work > MAX_COMPLETIONS {
            return Err(Error::SearchSpaceOverflow(format!(
                "{work} completions of dimension {extra} for rank {r} over F_{q}"
            )));
        }
        let found = AtomicBool::new(false);
        let search = Search { base: base.clone(), cands: &cands, target: r, found: &found };
        let hit = if extra == 0 || jobs <= 1 {
            search.dfs(&search.base, 0, extra)
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..jobs)
                    .map(|j| {
                        let search = &search;
                        scope.spawn(move || {
                            let last = search.cands.len() + 1 - extra;
                            for i in (j..last).step_by(jobs) {
                                let mut next = search.base.clone();
                                if next.insert(&search.cands[i]) && search.dfs(&next, i + 1, extra - 1) {
                                    search.found.store(true, Ordering::Relaxed);
                                    return true;
                                }
                                if search.found.load(Ordering::Relaxed) {
                                    return true;
                                }
                            }
                            false
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("search thread")).fold(false, |a, b| a | b)
            })
        };
        if hit {
            return Ok(FieldRank::Exact(r));
        }
    }
    Ok(FieldRank::GreaterThan(r_max))
}
