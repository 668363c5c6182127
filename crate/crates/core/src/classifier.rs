//! Border-rank classification up to three.
//!
//! The pipeline reduces a tensor to its concise core, drops modes of rank one, and then
//! branches on the number of remaining modes and their flattening ranks:
//!
//! * two modes: a matrix, whose rank is both rank and border rank;
//! * all flattening ranks at most two: a secant-variety test (flattenings of every
//!   bipartition), then the pencil of two slices decides between a point on a secant
//!   line (rank 2) and a tangent point (rank = number of modes);
//! * three modes with core 3×3×3: Strassen's equations, then the line patterns of the
//!   three slice-net cubics name the orbit;
//! * more modes: every grouping `A_i ⊗ A_j ⊗ (rest)` is classified as a three-way
//!   tensor and the answers are combined.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::equations::{cubic_line_pattern, slice_det_cubic, strassen_equations, LinePattern};
use crate::error::{Error, Result};
use crate::linalg::{rank_of, span_basis, Matrix};
use crate::normal_forms::{orbit_rank, SigmaType};
use crate::poly::{Poly, UPoly};
use crate::rational::{q, Q};
use crate::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BorderRankClass {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "greater_than_3")]
    GreaterThan3,
    #[serde(rename = "unknown")]
    Unknown,
}

impl BorderRankClass {
    fn of(r: usize) -> Self {
        match r {
            0 => BorderRankClass::Zero,
            1 => BorderRankClass::One,
            2 => BorderRankClass::Two,
            3 => BorderRankClass::Three,
            _ => BorderRankClass::GreaterThan3,
        }
    }
}

impl fmt::Display for BorderRankClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BorderRankClass::Zero => "0",
            BorderRankClass::One => "1",
            BorderRankClass::Two => "2",
            BorderRankClass::Three => "3",
            BorderRankClass::GreaterThan3 => "greater_than_3",
            BorderRankClass::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeTag {
    #[serde(rename = "type")]
    pub kind: SigmaType,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub distinguished_factor: Option<usize>,
}

impl TypeTag {
    fn plain(kind: SigmaType) -> Self {
        TypeTag { kind, distinguished_factor: None }
    }
}

/// How a point of the secant variety sits there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sigma2Kind {
    SecantLine,
    Tangent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub multilinear_rank: Vec<usize>,
    pub border_rank_class: BorderRankClass,
    pub type_tag: Option<TypeTag>,
    pub orbit_id: Option<u32>,
    pub rank: Option<usize>,
    /// Mode bounds of the smallest subspace variety containing the tensor, when it is
    /// not concise.
    pub subspace_label: Option<Vec<usize>>,
    pub sigma2_kind: Option<Sigma2Kind>,
    /// Set when the rank is not determined here and needs the rank oracle.
    pub rank_deferred: bool,
    pub witnesses: Vec<String>,
}

impl ClassificationReport {
    fn new(t: &Tensor, mlrank: Vec<usize>) -> Self {
        let subspace_label = (mlrank.as_slice() != t.dims()).then(|| mlrank.clone());
        ClassificationReport {
            multilinear_rank: mlrank,
            border_rank_class: BorderRankClass::Unknown,
            type_tag: None,
            orbit_id: None,
            rank: None,
            subspace_label,
            sigma2_kind: None,
            rank_deferred: false,
            witnesses: Vec::new(),
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.witnesses.push(s.into());
    }

    pub fn is_definite(&self) -> bool {
        self.border_rank_class != BorderRankClass::Unknown
    }

    /// The report without its witness trace, for comparing classifications.
    pub fn without_witnesses(&self) -> ClassificationReport {
        ClassificationReport { witnesses: Vec::new(), ..self.clone() }
    }
}

/// Concise core with rank-one modes removed, plus the original index of each kept mode.
struct Reduced {
    core: Tensor,
    modes: Vec<usize>,
}

fn reduce(t: &Tensor) -> Result<Reduced> {
    let concise = t.concise_core()?.core;
    let dims = concise.dims().to_vec();
    let drop: Vec<usize> = (0..dims.len()).filter(|&m| dims[m] == 1).collect();
    let modes: Vec<usize> = (0..dims.len()).filter(|&m| dims[m] > 1).collect();
    let core = if modes.len() >= 2 {
        concise.squeeze(&drop)?
    } else {
        concise
    };
    Ok(Reduced { core, modes })
}

pub fn classify(t: &Tensor) -> ClassificationReport {
    let mlrank = t.multilinear_rank();
    let mut report = ClassificationReport::new(t, mlrank.clone());
    report.note(format!("multilinear rank {mlrank:?}"));
    if t.is_zero() {
        report.border_rank_class = BorderRankClass::Zero;
        report.rank = Some(0);
        report.note("zero tensor");
        return report;
    }
    if let Some(m) = mlrank.iter().position(|&r| r > 3) {
        report.border_rank_class = BorderRankClass::GreaterThan3;
        report.note(format!("mode {m} flattening has rank {} > 3", mlrank[m]));
        return report;
    }
    let reduced = match reduce(t) {
        Ok(r) => r,
        Err(e) => {
            report.note(format!("reduction failed: {e}"));
            return report;
        }
    };
    let n = t.order();
    let n_eff = reduced.modes.len();
    report.note(format!("{n_eff} modes of rank at least 2"));
    match n_eff {
        0 => {
            report.border_rank_class = BorderRankClass::One;
            report.rank = Some(1);
            report.note("rank one");
        }
        1 => report.note("a single mode of rank > 1 is impossible for a nonzero tensor"),
        2 => {
            let r = mlrank[reduced.modes[0]];
            report.border_rank_class = BorderRankClass::of(r);
            report.rank = Some(r);
            report.note(format!("matrix of rank {r} after dropping rank-one modes"));
            if r == 2 {
                report.sigma2_kind = Some(Sigma2Kind::SecantLine);
            }
            if r == 3 && n >= 3 {
                report.type_tag = Some(TypeTag::plain(SigmaType::I));
            }
        }
        _ => classify_reduced(&reduced, &mut report),
    }
    report
}

fn classify_reduced(reduced: &Reduced, report: &mut ClassificationReport) {
    let k = &reduced.core;
    let dims = k.dims().to_vec();
    let n_eff = dims.len();
    let max_flat = if n_eff >= 4 { max_bipartition_rank(k) } else { *dims.iter().max().unwrap_or(&0) };
    if n_eff >= 4 {
        report.note(format!("largest bipartition flattening rank {max_flat}"));
        if max_flat > 3 {
            report.border_rank_class = BorderRankClass::GreaterThan3;
            return;
        }
    }
    if max_flat <= 2 {
        sigma2_analysis(k, report);
        return;
    }
    if n_eff == 3 {
        classify_three_way(k, &reduced.modes, report);
    } else {
        classify_by_groupings(k, &reduced.modes, report);
    }
}

/// Largest rank over all flattenings `(S | complement)`.
fn max_bipartition_rank(k: &Tensor) -> usize {
    let n = k.order();
    let mut best = 0;
    for mask in 1u32..(1 << (n - 1)) {
        // subsets containing the last mode are covered by their complements
        let rows: Vec<usize> = (0..n - 1).filter(|&m| mask & (1 << m) != 0).collect();
        let r = k.flatten_modes(&rows).expect("modes in range").rank();
        best = best.max(r);
    }
    best
}

/// Binary quadratic `a s² + b st + c t²` as `[a, b, c]`.
type BinaryQuadratic = [Q; 3];

fn pencil_minors(m1: &Tensor, m2: &Tensor) -> Vec<BinaryQuadratic> {
    let n = m1.order();
    let mut out = Vec::new();
    for mask in 1u32..(1 << (n - 1)) {
        let rows: Vec<usize> = (0..n - 1).filter(|&m| mask & (1 << m) != 0).collect();
        let f1 = m1.flatten_modes(&rows).expect("modes in range");
        let f2 = m2.flatten_modes(&rows).expect("modes in range");
        for r1 in 0..f1.rows() {
            for r2 in r1 + 1..f1.rows() {
                for c1 in 0..f1.cols() {
                    for c2 in c1 + 1..f1.cols() {
                        // entries are s * f1 + t * f2
                        let e = |r: usize, c: usize| (f1[(r, c)].clone(), f2[(r, c)].clone());
                        let (a11, b11) = e(r1, c1);
                        let (a22, b22) = e(r2, c2);
                        let (a12, b12) = e(r1, c2);
                        let (a21, b21) = e(r2, c1);
                        let quad = [
                            &a11 * &a22 - &a12 * &a21,
                            &a11 * &b22 + &b11 * &a22 - &a12 * &b21 - &b12 * &a21,
                            &b11 * &b22 - &b12 * &b21,
                        ];
                        if quad.iter().any(|x| !x.is_zero()) {
                            out.push(quad);
                        }
                    }
                }
            }
        }
    }
    out
}

fn sigma2_analysis(k: &Tensor, report: &mut ClassificationReport) {
    let n_eff = k.order();
    if n_eff >= 4 {
        report.note("every bipartition flattening has rank <= 2");
    }
    report.border_rank_class = BorderRankClass::Two;
    let m1 = k.contract(0, &[Q::one(), Q::zero()]).expect("mode of size 2");
    let m2 = k.contract(0, &[Q::zero(), Q::one()]).expect("mode of size 2");
    let quads: Vec<Vec<Q>> = pencil_minors(&m1, &m2).into_iter().map(|q| q.to_vec()).collect();
    let basis = span_basis(&quads);
    let kind = match basis.len() {
        1 => {
            let [a, b, c] = [&basis[0][0], &basis[0][1], &basis[0][2]];
            let disc = b * b - q(4) * a * c;
            report.note(format!("pencil minors span one quadratic, discriminant {disc}"));
            if disc.is_zero() {
                Sigma2Kind::Tangent
            } else {
                Sigma2Kind::SecantLine
            }
        }
        2 => {
            let res = resultant_quadratics(&basis[0], &basis[1]);
            report.note(format!("pencil minors span two quadratics, resultant {res}"));
            if res.is_zero() {
                Sigma2Kind::Tangent
            } else {
                report.border_rank_class = BorderRankClass::Unknown;
                report.note("no rank-one member in the pencil");
                return;
            }
        }
        d => {
            report.border_rank_class = BorderRankClass::Unknown;
            report.note(format!("pencil minors span {d} quadratics"));
            return;
        }
    };
    report.sigma2_kind = Some(kind);
    report.rank = Some(match kind {
        Sigma2Kind::SecantLine => 2,
        Sigma2Kind::Tangent => n_eff,
    });
}

/// Resultant of two binary quadratics (zero iff they share a projective root).
fn resultant_quadratics(p: &[Q], r: &[Q]) -> Q {
    let sylvester = Matrix::from_rows(&[
        vec![p[0].clone(), p[1].clone(), p[2].clone(), Q::zero()],
        vec![Q::zero(), p[0].clone(), p[1].clone(), p[2].clone()],
        vec![r[0].clone(), r[1].clone(), r[2].clone(), Q::zero()],
        vec![Q::zero(), r[0].clone(), r[1].clone(), r[2].clone()],
    ])
    .expect("4x4");
    sylvester.determinant().expect("square")
}

/// Orbit id of a concise 3×3×3 tensor on which Strassen's equations vanish.
pub fn orbit_from_patterns(patterns: &[LinePattern; 3]) -> Option<u32> {
    use LinePattern::*;
    match patterns {
        [Squarefree, Squarefree, Squarefree] => Some(39),
        [DoubleLinePlusLine, DoubleLinePlusLine, DoubleLinePlusLine] => Some(38),
        [TripleLine, TripleLine, TripleLine] => Some(37),
        [IdenticallyZero, TripleLine, TripleLine] => Some(34),
        [TripleLine, IdenticallyZero, TripleLine] => Some(35),
        [TripleLine, TripleLine, IdenticallyZero] => Some(36),
        _ => None,
    }
}

fn type_of_orbit(id: u32) -> (SigmaType, Option<usize>) {
    match id {
        39 => (SigmaType::I, None),
        38 => (SigmaType::II, None),
        37 => (SigmaType::III, None),
        34 => (SigmaType::IV, Some(0)),
        35 => (SigmaType::IV, Some(1)),
        _ => (SigmaType::IV, Some(2)),
    }
}

enum ThreeWay {
    GreaterThan3,
    Orbit(u32),
    Unmatched([LinePattern; 3]),
}

fn three_way_orbit(k: &Tensor) -> Result<ThreeWay> {
    let values = strassen_equations(k)?;
    if values.iter().any(|v| !v.is_zero()) {
        return Ok(ThreeWay::GreaterThan3);
    }
    let mut pats = [LinePattern::IdenticallyZero; 3];
    for (m, p) in pats.iter_mut().enumerate() {
        *p = cubic_line_pattern(&slice_det_cubic(k, m)?);
    }
    Ok(match orbit_from_patterns(&pats) {
        Some(id) => ThreeWay::Orbit(id),
        None => ThreeWay::Unmatched(pats),
    })
}

fn classify_three_way(k: &Tensor, modes: &[usize], report: &mut ClassificationReport) {
    let dims = k.dims();
    let threes = dims.iter().filter(|&&d| d == 3).count();
    match threes {
        1 => {
            report.border_rank_class = BorderRankClass::Three;
            report.rank = Some(3);
            report.type_tag = Some(TypeTag::plain(SigmaType::I));
            report.note(format!("core {dims:?}: a 3-dimensional space of 2x2 matrices is spanned by rank-one matrices"));
        }
        2 => {
            report.border_rank_class = BorderRankClass::Three;
            report.rank_deferred = true;
            report.note(format!("core {dims:?} lies in a subspace variety of type 233; its orbit is not resolved here"));
        }
        _ => match three_way_orbit(k) {
            Ok(ThreeWay::GreaterThan3) => {
                report.border_rank_class = BorderRankClass::GreaterThan3;
                report.note("a Strassen equation is nonzero on the 3x3x3 core");
            }
            Ok(ThreeWay::Orbit(id)) => {
                report.note(format!("Strassen equations vanish; line patterns give orbit {id}"));
                report.border_rank_class = BorderRankClass::Three;
                report.orbit_id = Some(id);
                report.rank = orbit_rank(id);
                let (kind, factor) = type_of_orbit(id);
                report.type_tag = Some(TypeTag { kind, distinguished_factor: factor.map(|f| modes[f]) });
            }
            Ok(ThreeWay::Unmatched(p)) => {
                report.note(format!("Strassen equations vanish but line patterns {p:?} match no orbit"));
            }
            Err(e) => report.note(format!("three-way analysis failed: {e}")),
        },
    }
}

fn classify_by_groupings(k: &Tensor, modes: &[usize], report: &mut ClassificationReport) {
    let n = k.order();
    let mut seen: Vec<(usize, usize, u32)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&m| m != i && m != j).collect();
            let g = k.group_modes(&[vec![i], vec![j], rest]).expect("valid grouping");
            let Ok(core) = g.concise_core().map(|c| c.core) else { continue };
            if core.dims() != [3, 3, 3] {
                continue;
            }
            match three_way_orbit(&core) {
                Ok(ThreeWay::GreaterThan3) => {
                    report.border_rank_class = BorderRankClass::GreaterThan3;
                    report.note(format!("grouping ({i})({j})(rest) violates a Strassen equation"));
                    return;
                }
                Ok(ThreeWay::Orbit(id)) => seen.push((i, j, id)),
                Ok(ThreeWay::Unmatched(p)) => {
                    report.note(format!("grouping ({i})({j})(rest) has unmatched patterns {p:?}"));
                    return;
                }
                Err(e) => {
                    report.note(format!("grouping analysis failed: {e}"));
                    return;
                }
            }
        }
    }
    if seen.is_empty() {
        report.note("no grouping has a concise 3x3x3 core");
        return;
    }
    report.note(format!("grouping orbits {:?}", seen.iter().map(|s| s.2).collect::<Vec<_>>()));
    let all = |id: u32| seen.iter().all(|s| s.2 == id);
    let tag = if all(39) {
        Some(TypeTag::plain(SigmaType::I))
    } else if all(38) {
        Some(TypeTag::plain(SigmaType::II))
    } else if all(37) {
        Some(TypeTag::plain(SigmaType::III))
    } else if seen.iter().all(|s| (34..=36).contains(&s.2)) {
        // 34: factor i; 35: factor j; 36: neither
        let consistent = |f: usize| {
            seen.iter().all(|&(i, j, id)| match id {
                34 => f == i,
                35 => f == j,
                _ => f != i && f != j,
            })
        };
        let candidates: Vec<usize> = (0..n).filter(|&f| consistent(f)).collect();
        match candidates.as_slice() {
            [f] => Some(TypeTag { kind: SigmaType::IV, distinguished_factor: Some(modes[*f]) }),
            _ => None,
        }
    } else {
        None
    };
    match tag {
        Some(tag) => {
            report.border_rank_class = BorderRankClass::Three;
            if tag.kind == SigmaType::I {
                report.rank = Some(3);
            } else {
                report.rank_deferred = true;
            }
            report.type_tag = Some(tag);
        }
        None => report.note("grouping orbits are inconsistent with a single normal form"),
    }
}

/// Dimension of the annihilator of `t` in `gl(A_1) ⊕ .. ⊕ gl(A_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerDimension {
    pub dimension: usize,
    /// True for the zero tensor, whose annihilator is everything.
    pub degenerate: bool,
}

/// Columns: the tensors `E_pq ·_i T` for every mode `i` and matrix unit `E_pq`.
fn lie_action_matrix(t: &Tensor) -> Matrix {
    let dims = t.dims();
    let total: usize = dims.iter().map(|d| d * d).sum();
    let mut cols: Vec<Vec<Q>> = Vec::with_capacity(total);
    for (mode, &d) in dims.iter().enumerate() {
        for p in 0..d {
            for qq in 0..d {
                let mut e = Matrix::zeros(d, d);
                e[(p, qq)] = Q::one();
                cols.push(t.mode_product(mode, &e).expect("square action").into_entries());
            }
        }
    }
    Matrix::from_rows(&cols).expect("equal lengths").transpose()
}

pub fn stabilizer_dimension(t: &Tensor) -> StabilizerDimension {
    let total: usize = t.dims().iter().map(|d| d * d).sum();
    if t.is_zero() {
        return StabilizerDimension { dimension: total, degenerate: true };
    }
    StabilizerDimension { dimension: total - lie_action_matrix(t).rank(), degenerate: false }
}

/// Dimension of the orbit of `[t]` in projective space.
pub fn orbit_dimension(t: &Tensor) -> Result<usize> {
    if t.is_zero() {
        return Err(Error::ZeroTensor("orbit dimension of the zero tensor"));
    }
    let total: usize = t.dims().iter().map(|d| d * d).sum();
    // {Γ : Γ·T ∈ span T} is the kernel of [A | -T] projected to Γ, injectively
    let a = lie_action_matrix(t);
    let mut rows: Vec<Vec<Q>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    for (row, x) in rows.iter_mut().zip(t.entries()) {
        row.push(-x.clone());
    }
    let line_stabilizer = total + 1 - rank_of(&rows);
    Ok(total - line_stabilizer)
}

/// Type of the length-three scheme cut on the Segre variety by the plane of a slice net.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeType {
    ThreeReducedPoints,
    DoublePlusReduced,
    CurvilinearTriple,
    FatTriple,
    NotLengthThree,
}

fn monomials3(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push(vec![i, j, d - i - j]);
        }
    }
    out
}

/// Degree-`d` part of the ideal: reduced echelon rows over the monomial list.
struct GradedPiece {
    monos: Vec<Vec<u32>>,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl GradedPiece {
    fn new(gens: &[Poly], d: u32) -> Self {
        let monos = monomials3(d);
        let mut vecs = Vec::new();
        for g in gens {
            for m in monomials3(d - 2) {
                let p = g.mul(&Poly::monomial(m, Q::one()));
                vecs.push(monos.iter().map(|mm| p.coeff(mm)).collect::<Vec<Q>>());
            }
        }
        let rows = span_basis(&vecs);
        let (rows, pivots) = if rows.is_empty() {
            (Matrix::zeros(0, monos.len()), Vec::new())
        } else {
            Matrix::from_rows(&rows).expect("equal lengths").rref()
        };
        GradedPiece { monos, rows, pivots }
    }

    fn quotient_dim(&self) -> usize {
        self.monos.len() - self.pivots.len()
    }

    fn standard(&self) -> Vec<usize> {
        (0..self.monos.len()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `p` in the quotient, on the standard monomials.
    fn normal_form(&self, p: &Poly) -> Vec<Q> {
        let mut v: Vec<Q> = self.monos.iter().map(|m| p.coeff(m)).collect();
        for (i, &piv) in self.pivots.iter().enumerate() {
            if v[piv].is_zero() {
                continue;
            }
            let f = v[piv].clone();
            for (c, x) in v.iter_mut().enumerate() {
                let r = &self.rows[(i, c)];
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        self.standard().into_iter().map(|c| v[c].clone()).collect()
    }
}

/// The scheme cut on the Segre variety by the plane spanned by the mode-0 slices: the
/// 2×2 minors of `s X + t Y + u Z` generate its ideal in the plane.
pub fn scheme_intersection_check(t: &Tensor) -> Result<SchemeType> {
    scheme_intersection_check_in_mode(t, 0)
}

/// Same check for the net of slices along `mode`. The orbits that are not symmetric under
/// permuting factors show their fat point only in one mode.
pub fn scheme_intersection_check_in_mode(t: &Tensor, mode: usize) -> Result<SchemeType> {
    if t.order() != 3 {
        return Err(Error::WrongDims { expected: "a three-way tensor", got: t.dims().to_vec() });
    }
    if mode >= 3 {
        return Err(Error::ModeOutOfRange { mode, order: 3 });
    }
    let slices = t.slices(mode)?;
    if t.flatten(mode)?.rank() != 3 || slices.len() != 3 {
        return Err(Error::Precondition("the slice net is not 3-dimensional".into()));
    }
    let entry = |r: usize, c: usize| {
        (0..3).fold(Poly::zero(3), |acc, v| acc.add(&Poly::var(3, v).scale(&slices[v][(r, c)])))
    };
    let (rows, cols) = (slices[0].rows(), slices[0].cols());
    let mut gens = Vec::new();
    for r1 in 0..rows {
        for r2 in r1 + 1..rows {
            for c1 in 0..cols {
                for c2 in c1 + 1..cols {
                    let m = entry(r1, c1).mul(&entry(r2, c2)).sub(&entry(r1, c2).mul(&entry(r2, c1)));
                    if !m.is_zero() {
                        gens.push(m);
                    }
                }
            }
        }
    }
    // find a degree where the Hilbert function has settled at 3
    let Some(d) = (3..=6).find(|&d| {
        GradedPiece::new(&gens, d).quotient_dim() == 3 && GradedPiece::new(&gens, d + 1).quotient_dim() == 3
    }) else {
        return Ok(SchemeType::NotLengthThree);
    };
    let lo = GradedPiece::new(&gens, d);
    let hi = GradedPiece::new(&gens, d + 1);
    let standard: Vec<Vec<u32>> = lo.standard().into_iter().map(|c| lo.monos[c].clone()).collect();
    let mult = |l: &Poly| -> Matrix {
        let cols: Vec<Vec<Q>> =
            standard.iter().map(|m| hi.normal_form(&l.mul(&Poly::monomial(m.clone(), Q::one())))).collect();
        Matrix::from_rows(&cols).expect("3 columns").transpose()
    };
    let linear = |c: [i64; 3]| (0..3).fold(Poly::zero(3), |acc, v| acc.add(&Poly::var(3, v).scale(&q(c[v]))));
    // a linear form not vanishing at any point of the scheme acts invertibly
    let Some(l0_inv) = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [3, -1, 2]]
        .iter()
        .find_map(|&c| mult(&linear(c)).inverse().ok())
    else {
        return Ok(SchemeType::NotLengthThree);
    };
    let mut best = SchemeType::NotLengthThree;
    for c in [[2, 5, -3], [1, -4, 7], [6, 1, 2]] {
        let op = l0_inv.mul(&mult(&linear(c)))?;
        let found = classify_operator(&op);
        if rank_scheme(found) > rank_scheme(best) {
            best = found;
        }
    }
    Ok(best)
}

/// Ordering used to keep the most separated answer across generic elements.
fn rank_scheme(s: SchemeType) -> u8 {
    match s {
        SchemeType::NotLengthThree => 0,
        SchemeType::FatTriple => 1,
        SchemeType::CurvilinearTriple => 2,
        SchemeType::DoublePlusReduced => 3,
        SchemeType::ThreeReducedPoints => 4,
    }
}

fn classify_operator(m: &Matrix) -> SchemeType {
    // characteristic polynomial of a 3x3 matrix: x^3 - tr x^2 + c2 x - det
    let tr = &m[(0, 0)] + &m[(1, 1)] + &m[(2, 2)];
    let c2 = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .fold(Q::zero(), |acc, (i, j)| acc + &m[(i, i)] * &m[(j, j)] - &m[(i, j)] * &m[(j, i)]);
    let det = m.determinant().expect("square");
    let p = UPoly::new(vec![-det, c2, -tr.clone(), Q::one()]);
    let g = p.gcd(&p.derivative());
    match g.degree() {
        Some(0) => SchemeType::ThreeReducedPoints,
        Some(1) => SchemeType::DoublePlusReduced,
        Some(2) => {
            let a = tr / q(3);
            let n = m.add(&Matrix::identity(3).scale(&-a)).expect("same shape");
            if n.mul(&n).expect("square").is_zero() {
                SchemeType::FatTriple
            } else {
                SchemeType::CurvilinearTriple
            }
        }
        _ => SchemeType::NotLengthThree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::{orbit_representative, sigma2_point};

    #[test]
    fn zero_and_rank_one() {
        let z = Tensor::zeros(vec![2, 2, 2]).unwrap();
        assert_eq!(classify(&z).border_rank_class, BorderRankClass::Zero);
        let t = Tensor::from_terms(vec![3, 3, 3], &[vec![1, 2, 0]]).unwrap();
        let r = classify(&t);
        assert_eq!((r.border_rank_class, r.rank), (BorderRankClass::One, Some(1)));
        assert_eq!(r.subspace_label, Some(vec![1, 1, 1]));
    }

    #[test]
    fn secant_versus_tangent() {
        let w = sigma2_point(3, &[0, 1, 2], &[2, 2, 2]).unwrap();
        let r = classify(&w);
        assert_eq!((r.border_rank_class, r.rank, r.sigma2_kind), (BorderRankClass::Two, Some(3), Some(Sigma2Kind::Tangent)));
        let ghz = Tensor::from_terms(vec![2, 2, 2], &[vec![0, 0, 0], vec![1, 1, 1]]).unwrap();
        let r = classify(&ghz);
        assert_eq!((r.rank, r.sigma2_kind), (Some(2), Some(Sigma2Kind::SecantLine)));
    }

    #[test]
    fn json_field_names() {
        let r = classify(&orbit_representative(35).unwrap());
        let v = serde_json::to_value(r.without_witnesses()).unwrap();
        assert_eq!(v["border_rank_class"], "3");
        assert_eq!(v["type_tag"]["type"], "iv");
        assert_eq!(v["type_tag"]["distinguished_factor"], 1);
        assert_eq!(v["orbit_id"], 35);
    }

    #[test]
    fn dimensions_of_the_zero_tensor() {
        let z = Tensor::zeros(vec![3, 3, 3]).unwrap();
        assert_eq!(stabilizer_dimension(&z), StabilizerDimension { dimension: 27, degenerate: true });
        assert!(orbit_dimension(&z).is_err());
    }
}

#[cfg(test)]
mod scheme_modes {
    use super::*;
    use crate::normal_forms::orbit_representative;

    #[test]
    fn fat_point_mode() {
        for (id, mode) in [(34, 0), (35, 1), (36, 2)] {
            let t = orbit_representative(id).unwrap();
            for m in 0..3 {
                let expect = if m == mode { SchemeType::FatTriple } else { SchemeType::NotLengthThree };
                assert_eq!(scheme_intersection_check_in_mode(&t, m).unwrap(), expect, "orbit {id} mode {m}");
            }
        }
        let t = orbit_representative(37).unwrap();
        assert!((0..3).all(|m| scheme_intersection_check_in_mode(&t, m).unwrap() == SchemeType::CurvilinearTriple));
        assert!(scheme_intersection_check_in_mode(&t, 3).is_err());
    }
}
