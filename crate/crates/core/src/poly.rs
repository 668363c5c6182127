//! Sparse multivariate polynomials over Q, dense univariate polynomials, and a
//! bivariate gcd by primitive pseudo-remainder sequences.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{format_q, Q};

pub type Monomial = Vec<u32>;

/// Polynomial in a fixed number of variables, stored as exponent vector -> coefficient.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, Q::one())
    }

    pub fn monomial(exps: Monomial, c: Q) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.iter().sum::<u32>() == d)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(self.nvars), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[var] -= 1;
            out.add_term(m2, c * Q::from_integer(m[var].into()));
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e == 0 {
                    continue;
                }
                if x.is_zero() {
                    v = Q::zero();
                    break;
                }
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        total
    }

    /// Substitute a polynomial (in `target_nvars` variables) for each variable.
    pub fn compose(&self, images: &[Poly], target_nvars: usize) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut v = Poly::constant(target_nvars, c.clone());
            for (img, &e) in images.iter().zip(m) {
                if e > 0 {
                    v = v.mul(&img.pow(e));
                }
            }
            out = out.add(&v);
        }
        out
    }
}

impl fmt::Display for Poly {
    /// Variables print as x0, x1, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_q(c))?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        UPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> UPoly {
        UPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let lead_inv = d.lead().recip();
        let mut quot = vec![Q::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &lead_inv;
            for (j, b) in d.0.iter().enumerate() {
                r[k + j] -= &c * b;
            }
            quot[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(r))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer((i as i64).into())).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }
}

/// A bivariate polynomial viewed in `Q[y][x]`: entry `i` is the coefficient of `x^i`.
type Bi = Vec<UPoly>;

fn to_bi(p: &Poly) -> Bi {
    assert_eq!(p.nvars(), 2);
    let dx = p.degree_in(0).unwrap_or(0) as usize;
    let dy = p.degree_in(1).unwrap_or(0) as usize;
    let mut rows = vec![vec![Q::zero(); dy + 1]; dx + 1];
    for (m, c) in p.terms() {
        rows[m[0] as usize][m[1] as usize] = c.clone();
    }
    trim_bi(rows.into_iter().map(UPoly::new).collect())
}

fn from_bi(b: &Bi) -> Poly {
    let mut p = Poly::zero(2);
    for (i, cy) in b.iter().enumerate() {
        for (j, c) in cy.coeffs().iter().enumerate() {
            p.add_term(vec![i as u32, j as u32], c.clone());
        }
    }
    p
}

fn trim_bi(mut b: Bi) -> Bi {
    while b.last().is_some_and(UPoly::is_zero) {
        b.pop();
    }
    b
}

fn bi_content(b: &Bi) -> UPoly {
    b.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn bi_primitive(b: &Bi) -> Bi {
    let c = bi_content(b);
    b.iter().map(|x| x.div_rem(&c).0).collect()
}

/// Pseudo-remainder of `a` by `b` in x.
fn bi_prem(a: &Bi, b: &Bi) -> Bi {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r[r.len() - 1].clone();
        // r <- lb * r - lr * x^k * b
        r = r.iter().map(|c| c.mul(&lb)).collect();
        for (j, c) in b.iter().enumerate() {
            r[k + j] = r[k + j].sub(&c.mul(&lr));
        }
        r = trim_bi(r);
    }
    r
}

/// Gcd of two bivariate polynomials (variables x0, x1), normalized so that its
/// leading coefficient in x0, as a polynomial in x1, is monic. Zero only if both inputs are.
pub fn gcd_bivariate(p: &Poly, q: &Poly) -> Poly {
    let (a, b) = (to_bi(p), to_bi(q));
    if a.is_empty() {
        return normalize_bi(&b);
    }
    if b.is_empty() {
        return normalize_bi(&a);
    }
    let content = bi_content(&a).gcd(&bi_content(&b));
    let (mut a, mut b) = (bi_primitive(&a), bi_primitive(&b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let prim = loop {
        if b.len() == 1 {
            // b is a nonzero element of Q[y] that is primitive, hence a constant
            break vec![UPoly::constant(Q::one())];
        }
        let r = bi_prem(&a, &b);
        if r.is_empty() {
            break b;
        }
        a = b;
        b = bi_primitive(&r);
    };
    normalize_bi(&prim.iter().map(|c| c.mul(&content)).collect())
}

fn normalize_bi(b: &Bi) -> Poly {
    if b.is_empty() {
        return Poly::zero(2);
    }
    let lead = b[b.len() - 1].lead();
    from_bi(b).scale(&lead.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }
    fn c(v: i64) -> Poly {
        Poly::constant(2, q(v))
    }

    #[test]
    fn arithmetic_and_derivative() {
        let p = x().add(&y()).pow(3);
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.coeff(&[2, 1]), q(3));
        assert_eq!(p.derivative(0), x().add(&y()).pow(2).scale(&q(3)));
        assert_eq!(p.eval(&[q(1), q(2)]), q(27));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn univariate_gcd() {
        let a = UPoly::new(vec![q(-1), q(0), q(1)]); // y^2 - 1
        let b = UPoly::new(vec![q(1), q(1)]); // y + 1
        assert_eq!(a.gcd(&b), b);
        let (qq, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(qq, UPoly::new(vec![q(-1), q(1)]));
    }

    #[test]
    fn bivariate_gcd_cases() {
        let l1 = x().add(&y().scale(&q(2))).add(&c(1));
        let l2 = x().sub(&y());
        let l3 = y().add(&c(3));
        let g = gcd_bivariate(&l1.mul(&l2).mul(&l2), &l2.mul(&l3));
        assert_eq!(g, l2);
        assert_eq!(gcd_bivariate(&l1, &l3).total_degree(), Some(0));
        // common factor free of x
        let g = gcd_bivariate(&l3.mul(&l1), &l3.mul(&l2));
        assert_eq!(g, l3);
        // x*y against its partials: the gcd of all three is constant
        let xy = x().mul(&y());
        let g = gcd_bivariate(&gcd_bivariate(&xy, &xy.derivative(0)), &xy.derivative(1));
        assert_eq!(g.total_degree(), Some(0));
    }
}
