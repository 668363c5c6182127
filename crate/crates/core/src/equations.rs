//! Polynomial tests on 3×3×3 tensors: Strassen's degree-four equations, their Jacobian,
//! subspace-variety membership, and the determinant cubic of a slice net with its
//! line pattern.
//!
//! With `X, Y, Z` the three A-slices (rows B, columns C), each block of nine equations is
//! the matrix `Z adj(X) Y - Y adj(X) Z` read row-major. The 27 equations are the three
//! blocks for the role assignments `(X, Y, Z)`, `(Y, Z, X)` and `(Z, X, Y)`, in that
//! order.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{gcd_bivariate, Poly};
use crate::rational::{q, Q};
use crate::tensor::Tensor;

fn require_333(t: &Tensor) -> Result<()> {
    if t.dims() != [3, 3, 3] {
        return Err(Error::WrongDims { expected: "3x3x3", got: t.dims().to_vec() });
    }
    Ok(())
}

const ROLES: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];

/// Adjugate of a square matrix over any ring given by closures.
fn adjugate3<R: Clone>(m: &[[R; 3]; 3], mul: impl Fn(&R, &R) -> R, sub: impl Fn(&R, &R) -> R) -> [[R; 3]; 3] {
    // adj[k][j] = (-1)^{j+k} det(m without row j, column k)
    let cof = |j: usize, k: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != k).collect();
        let d = sub(&mul(&m[r[0]][c[0]], &m[r[1]][c[1]]), &mul(&m[r[0]][c[1]], &m[r[1]][c[0]]));
        if (j + k).is_multiple_of(2) {
            d
        } else {
            sub(&sub(&d, &d), &d)
        }
    };
    std::array::from_fn(|k| std::array::from_fn(|j| cof(j, k)))
}

fn slices_of(t: &Tensor) -> [[[Q; 3]; 3]; 3] {
    std::array::from_fn(|a| std::array::from_fn(|b| std::array::from_fn(|c| t.get(&[a, b, c]).clone())))
}

fn mat_mul3(a: &[[Q; 3]; 3], b: &[[Q; 3]; 3]) -> [[Q; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).fold(Q::zero(), |acc, k| acc + &a[i][k] * &b[k][j])))
}

/// The 27 Strassen values of a 3×3×3 tensor in the documented order.
pub fn strassen_equations(t: &Tensor) -> Result<Vec<Q>> {
    require_333(t)?;
    let s = slices_of(t);
    let mut out = Vec::with_capacity(27);
    for [x, y, z] in ROLES {
        let adj = adjugate3(&s[x], |a, b| a * b, |a, b| a - b);
        let left = mat_mul3(&mat_mul3(&s[z], &adj), &s[y]);
        let right = mat_mul3(&mat_mul3(&s[y], &adj), &s[z]);
        for i in 0..3 {
            for j in 0..3 {
                out.push(&left[i][j] - &right[i][j]);
            }
        }
    }
    Ok(out)
}

/// The 27 quartics as polynomials in the 27 entries (variable `9a + 3b + c`).
pub fn strassen_polynomials() -> &'static [Poly] {
    static POLYS: OnceLock<Vec<Poly>> = OnceLock::new();
    POLYS.get_or_init(|| {
        let var = |a: usize, b: usize, c: usize| Poly::var(27, 9 * a + 3 * b + c);
        let s: [[[Poly; 3]; 3]; 3] =
            std::array::from_fn(|a| std::array::from_fn(|b| std::array::from_fn(|c| var(a, b, c))));
        let mm = |a: &[[Poly; 3]; 3], b: &[[Poly; 3]; 3]| -> [[Poly; 3]; 3] {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..3).fold(Poly::zero(27), |acc, k| acc.add(&a[i][k].mul(&b[k][j]))))
            })
        };
        let mut out = Vec::with_capacity(27);
        for [x, y, z] in ROLES {
            let adj = adjugate3(&s[x], |a, b| a.mul(b), |a, b| a.sub(b));
            let left = mm(&mm(&s[z], &adj), &s[y]);
            let right = mm(&mm(&s[y], &adj), &s[z]);
            for i in 0..3 {
                for j in 0..3 {
                    out.push(left[i][j].sub(&right[i][j]));
                }
            }
        }
        out
    })
}

fn strassen_gradients() -> &'static [Vec<Poly>] {
    static GRADS: OnceLock<Vec<Vec<Poly>>> = OnceLock::new();
    GRADS.get_or_init(|| strassen_polynomials().iter().map(|p| (0..27).map(|v| p.derivative(v)).collect()).collect())
}

/// The 27×27 Jacobian matrix (rows: equations, columns: entries) at `t`.
pub fn strassen_jacobian(t: &Tensor) -> Result<Matrix> {
    require_333(t)?;
    let point = t.entries();
    let rows: Vec<Vec<Q>> = strassen_gradients().iter().map(|g| g.iter().map(|d| d.eval(point)).collect()).collect();
    Matrix::from_rows(&rows)
}

pub fn strassen_jacobian_rank(t: &Tensor) -> Result<usize> {
    Ok(strassen_jacobian(t)?.rank())
}

/// Whether the tensor fits in a subspace variety with the given mode bounds.
pub fn subspace_membership(t: &Tensor, bounds: &[usize]) -> Result<bool> {
    if bounds.len() != t.order() {
        return Err(Error::LengthMismatch { expected: t.order(), got: bounds.len() });
    }
    Ok(t.multilinear_rank().iter().zip(bounds).all(|(r, b)| r <= b))
}

/// Homogeneous cubic in `s, t, u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryCubic {
    poly: Poly,
}

impl TernaryCubic {
    pub fn from_poly(poly: Poly) -> Result<Self> {
        if poly.nvars() != 3 || !poly.is_homogeneous_of(3) {
            return Err(Error::InvalidArgument("not a ternary cubic form".into()));
        }
        Ok(TernaryCubic { poly })
    }

    /// From `(exponents, coefficient)` pairs.
    pub fn from_coeffs(coeffs: &[([u32; 3], Q)]) -> Result<Self> {
        let mut p = Poly::zero(3);
        for (e, c) in coeffs {
            p.add_term(e.to_vec(), c.clone());
        }
        Self::from_poly(p)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> Q {
        self.poly.coeff(&[i, j, k])
    }

    /// The ten coefficients in the order s³, s²t, s²u, st², stu, su², t³, t²u, tu², u³.
    pub fn coefficients(&self) -> Vec<Q> {
        let mut out = Vec::with_capacity(10);
        for i in (0..=3).rev() {
            for j in (0..=3 - i).rev() {
                out.push(self.coeff(i, j, 3 - i - j));
            }
        }
        out
    }

    pub fn eval(&self, s: &Q, t: &Q, u: &Q) -> Q {
        self.poly.eval(&[s.clone(), t.clone(), u.clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl std::fmt::Display for TernaryCubic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let names = ["s", "t", "u"];
        let mut first = true;
        for (m, c) in self.poly.terms().iter().rev() {
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if !mag.is_one() {
                write!(f, "{}*", crate::rational::format_q(&mag))?;
            }
            let mut parts = Vec::new();
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(names[v].to_string()),
                    _ => parts.push(format!("{}^{e}", names[v])),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Factorization shape of a ternary cubic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinePattern {
    IdenticallyZero,
    TripleLine,
    DoubleLinePlusLine,
    Squarefree,
}

/// `det(s S0 + t S1 + u S2)` for the three slices along `mode`.
pub fn slice_det_cubic(t: &Tensor, mode: usize) -> Result<TernaryCubic> {
    require_333(t)?;
    let slices = t.slices(mode)?;
    let net: Vec<Vec<Poly>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    (0..3).fold(Poly::zero(3), |acc, v| acc.add(&Poly::var(3, v).scale(&slices[v][(i, j)])))
                })
                .collect()
        })
        .collect();
    let det = crate::minors::determinant(&net);
    TernaryCubic::from_poly(det)
}

impl crate::minors::Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Poly::one(self.nvars())
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Poly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

pub fn cubic_line_pattern(c: &TernaryCubic) -> LinePattern {
    let f = c.poly();
    if f.is_zero() {
        return LinePattern::IdenticallyZero;
    }
    let partials: Vec<Vec<Q>> = (0..3)
        .map(|v| {
            let d = f.derivative(v);
            // coefficient vector over the six quadratic monomials
            let mut row = Vec::with_capacity(6);
            for i in 0..=2u32 {
                for j in 0..=2 - i {
                    row.push(d.coeff(&[i, j, 2 - i - j]));
                }
            }
            row
        })
        .collect();
    if crate::linalg::rank_of(&partials) == 1 {
        return LinePattern::TripleLine;
    }
    if is_squarefree(f) {
        LinePattern::Squarefree
    } else {
        LinePattern::DoubleLinePlusLine
    }
}

/// A nonzero cubic form is squarefree iff, after a substitution `u -> u + a s + b t`
/// making `u` not divide it, the dehomogenized polynomial `g` has `gcd(g, g_x, g_y)`
/// constant.
fn is_squarefree(f: &Poly) -> bool {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let line = |a: i64, b: i64| x.scale(&q(a)).add(&y.scale(&q(b)));
    let (a, b) = (-2..=2)
        .flat_map(|a| (-2..=2).map(move |b| (a, b)))
        .find(|&(a, b)| !f.compose(&[x.clone(), y.clone(), line(a, b)], 2).is_zero())
        .expect("a cubic has at most three line components");
    // g(x, y) = f(x, y, 1 + a x + b y)
    let g = f.compose(&[x.clone(), y.clone(), line(a, b).add(&Poly::one(2))], 2);
    let h = gcd_bivariate(&gcd_bivariate(&g, &g.derivative(0)), &g.derivative(1));
    h.total_degree() == Some(0)
}

pub fn line_pattern_triple(t: &Tensor) -> Result<[LinePattern; 3]> {
    let mut out = [LinePattern::IdenticallyZero; 3];
    for (m, slot) in out.iter_mut().enumerate() {
        *slot = cubic_line_pattern(&slice_det_cubic(t, m)?);
    }
    Ok(out)
}
