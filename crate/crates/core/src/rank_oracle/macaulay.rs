//! Degree-bounded ideal membership by linear algebra on a Macaulay-style coefficient matrix.
//!
//! Variables split into graded ones (degree 1) and parameters (degree 0). A certificate is a
//! list of multipliers `h_i` with `target = Σ h_i g_i`, each `h_i` homogeneous of graded
//! degree `deg target - deg g_i` and of parameter degree at most the bound.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Poly};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipResult {
    pub member: bool,
    /// One multiplier per generator; present exactly when `member`.
    pub certificate: Option<Vec<Poly>>,
    /// No certificate at this bound, but a larger bound could still find one.
    pub bound_limited: bool,
}

fn graded_degree(m: &[u32], is_param: &[bool]) -> u32 {
    m.iter().zip(is_param).filter(|(_, &p)| !p).map(|(&e, _)| e).sum()
}

fn homogeneous_degree(p: &Poly, is_param: &[bool]) -> Result<Option<u32>> {
    let mut degs = p.terms().keys().map(|m| graded_degree(m, is_param));
    let Some(d) = degs.next() else { return Ok(None) };
    if degs.any(|e| e != d) {
        return Err(Error::InvalidArgument(format!("{p} is not homogeneous in the graded variables")));
    }
    Ok(Some(d))
}

/// Exponent vectors supported on `vars` with total degree exactly `deg`.
fn monomials_of_degree(nvars: usize, vars: &[usize], deg: u32) -> Vec<Monomial> {
    fn rec(vars: &[usize], deg: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if deg == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&v, rest)) => {
                for e in (0..=deg).rev() {
                    cur[v] = e;
                    rec(rest, deg - e, cur, out);
                }
                cur[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, deg, &mut vec![0; nvars], &mut out);
    out
}

pub fn macaulay_membership(target: &Poly, generators: &[Poly], param_vars: &[usize], bound: u32) -> Result<MembershipResult> {
    let nvars = target.nvars();
    if generators.iter().any(|g| g.nvars() != nvars) || param_vars.iter().any(|&v| v >= nvars) {
        return Err(Error::ShapeMismatch("generators and target must share one polynomial ring".into()));
    }
    let mut is_param = vec![false; nvars];
    for &v in param_vars {
        is_param[v] = true;
    }
    let graded: Vec<usize> = (0..nvars).filter(|&v| !is_param[v]).collect();
    let zero_cert = || generators.iter().map(|_| Poly::zero(nvars)).collect::<Vec<_>>();
    let Some(d) = homogeneous_degree(target, &is_param)? else {
        return Ok(MembershipResult { member: true, certificate: Some(zero_cert()), bound_limited: false });
    };

    let params: Vec<Monomial> = (0..=bound).flat_map(|b| monomials_of_degree(nvars, param_vars, b)).collect();
    // columns: (generator, multiplier monomial)
    let mut columns: Vec<(usize, Monomial, Poly)> = Vec::new();
    for (i, g) in generators.iter().enumerate() {
        let Some(dg) = homogeneous_degree(g, &is_param)? else { continue };
        if dg > d {
            continue;
        }
        for gm in monomials_of_degree(nvars, &graded, d - dg) {
            for pm in &params {
                let m: Monomial = gm.iter().zip(pm).map(|(a, b)| a + b).collect();
                let prod = g.mul(&Poly::monomial(m.clone(), Q::from_integer(1.into())));
                columns.push((i, m, prod));
            }
        }
    }

    let mut rows: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in columns.iter().map(|c| &c.2).chain(std::iter::once(target)) {
        for m in p.terms().keys() {
            let n = rows.len();
            rows.entry(m).or_insert(n);
        }
    }
    let mut mat = Matrix::zeros(rows.len(), columns.len());
    for (j, (_, _, p)) in columns.iter().enumerate() {
        for (m, c) in p.terms() {
            mat[(rows[m], j)] = c.clone();
        }
    }
    let mut rhs = vec![Q::zero(); rows.len()];
    for (m, c) in target.terms() {
        rhs[rows[m]] = c.clone();
    }

    let Some(x) = mat.solve(&rhs) else {
        return Ok(MembershipResult { member: false, certificate: None, bound_limited: !param_vars.is_empty() });
    };
    let mut cert = zero_cert();
    for ((i, m, _), c) in columns.iter().zip(x) {
        if !c.is_zero() {
            cert[*i].add_term(m.clone(), c);
        }
    }
    if !verify_certificate(target, generators, &cert) {
        return Err(Error::InvalidArgument("membership certificate failed re-substitution".into()));
    }
    Ok(MembershipResult { member: true, certificate: Some(cert), bound_limited: false })
}

/// `Σ h_i g_i == target`, recomputed from scratch.
pub fn verify_certificate(target: &Poly, generators: &[Poly], cert: &[Poly]) -> bool {
    if cert.len() != generators.len() {
        return false;
    }
    let sum = generators.iter().zip(cert).fold(Poly::zero(target.nvars()), |acc, (g, h)| acc.add(&g.mul(h)));
    &sum == target
}

/// Ring layout `[f1, f2, f3, g1, g2, g3, s, t, u, x]` for the pencil family
/// `[[t, s, u], [s, 0, 0], [u, 0, 0]] + x f g^T`.
pub mod pencil {
    use super::*;

    pub const NVARS: usize = 10;
    pub const PARAMS: [usize; 6] = [0, 1, 2, 3, 4, 5];
    const S: usize = 6;
    const T: usize = 7;
    const U: usize = 8;
    const X: usize = 9;

    fn var(i: usize) -> Poly {
        Poly::var(NVARS, i)
    }

    /// The nonzero 2 x 2 minors.
    pub fn generators() -> Vec<Poly> {
        let base = [[var(T), var(S), var(U)], [var(S), Poly::zero(NVARS), Poly::zero(NVARS)], [var(U), Poly::zero(NVARS), Poly::zero(NVARS)]];
        let m: Vec<Vec<Poly>> = (0..3)
            .map(|i| (0..3).map(|j| base[i][j].add(&var(X).mul(&var(i)).mul(&var(3 + j)))).collect())
            .collect();
        let mut out = Vec::new();
        for (r0, r1) in [(0, 1), (0, 2), (1, 2)] {
            for (c0, c1) in [(0, 1), (0, 2), (1, 2)] {
                let minor = m[r0][c0].mul(&m[r1][c1]).sub(&m[r0][c1].mul(&m[r1][c0]));
                if !minor.is_zero() {
                    out.push(minor);
                }
            }
        }
        out
    }

    /// `(s f3 - u f2)^2` and `(s g3 - u g2)^2`.
    pub fn targets() -> [Poly; 2] {
        let sq = |a: usize, b: usize| var(S).mul(&var(a)).sub(&var(U).mul(&var(b))).pow(2);
        [sq(2, 1), sq(5, 4)]
    }

    /// Smallest bound in `0..=max_bound` certifying every target.
    pub fn minimal_bound(max_bound: u32) -> Result<Option<u32>> {
        let gens = generators();
        for b in 0..=max_bound {
            let mut all = true;
            for t in targets() {
                all &= macaulay_membership(&t, &gens, &PARAMS, b)?.member;
            }
            if all {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn trivial_cases() {
        let s = Poly::var(3, 0);
        let t = Poly::var(3, 1);
        let u = Poly::var(3, 2);
        let gens = vec![s.mul(&s), u.mul(&u)];
        let r = macaulay_membership(&gens[0], &gens, &[], 0).unwrap();
        assert!(r.member);
        let r = macaulay_membership(&s.mul(&t), &gens, &[], 3).unwrap();
        assert!(!r.member && !r.bound_limited && r.certificate.is_none());
        let combo = gens[0].scale(&q(3)).add(&gens[1].mul(&t));
        assert!(macaulay_membership(&combo, &gens, &[], 0).is_err());
        let cubic = gens[0].mul(&t).add(&gens[1].mul(&s));
        assert!(macaulay_membership(&cubic, &gens, &[], 0).unwrap().member);
    }

    #[test]
    fn pencil_bound() {
        let gens = pencil::generators();
        assert_eq!(gens.len(), 8);
        for t in pencil::targets() {
            assert!(macaulay_membership(&t, &gens, &pencil::PARAMS, 1).unwrap().bound_limited);
            let r = macaulay_membership(&t, &gens, &pencil::PARAMS, 2).unwrap();
            assert!(verify_certificate(&t, &gens, r.certificate.as_ref().unwrap()));
        }
        assert_eq!(pencil::minimal_bound(3).unwrap(), Some(2));
    }
}
