//! Arithmetic and row reduction over the prime fields F_2, F_3, F_5.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{inv_mod, reduce_mod, Q};

pub const SUPPORTED_PRIMES: [u32; 3] = [2, 3, 5];

pub fn check_prime(q: u32) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&q) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("field size {q} is not one of 2, 3, 5")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    prime: u32,
}

impl FieldElement {
    pub fn new(value: i64, prime: u32) -> Result<Self> {
        check_prime(prime)?;
        Ok(FieldElement { value: value.rem_euclid(prime as i64) as u32, prime })
    }

    pub fn from_q(x: &Q, prime: u32) -> Result<Self> {
        check_prime(prime)?;
        Ok(FieldElement { value: reduce_mod(x, prime)?, prime })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prime(self) -> u32 {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.prime, o.prime);
        FieldElement { value: (self.value + o.value) % self.prime, prime: self.prime }
    }

    pub fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.prime, o.prime);
        FieldElement { value: (self.value + self.prime - o.value) % self.prime, prime: self.prime }
    }

    pub fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.prime, o.prime);
        FieldElement { value: self.value * o.value % self.prime, prime: self.prime }
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::Singular);
        }
        Ok(FieldElement { value: inv_mod(self.value, self.prime), prime: self.prime })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.prime)
    }
}

/// Row space over F_q kept in reduced echelon form; vectors are residues stored as `u8`.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub(crate) q: u8,
    inv: [u8; 5],
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(q: u32) -> Self {
        let mut inv = [0u8; 5];
        for (a, slot) in inv.iter_mut().enumerate().take(q as usize).skip(1) {
            *slot = inv_mod(a as u32, q) as u8;
        }
        Echelon { q: q as u8, inv, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the current span.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let q = self.q;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + (q - c) * r % q) % q;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false (and changes nothing) when it is already in the span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let q = self.q;
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = self.inv[r[p] as usize];
        for x in r.iter_mut() {
            *x = *x * s % q;
        }
        for row in &mut self.rows {
            let c = row[p];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = (*x + (q - c) * y % q) % q;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }
}

/// Projective representatives (first nonzero coordinate 1) of `F_q^d`.
pub fn projective_points(q: u32, d: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let total = (q as usize).pow(d as u32);
    for code in 1..total {
        let mut v = Vec::with_capacity(d);
        let mut c = code;
        for _ in 0..d {
            v.push((c % q as usize) as u8);
            c /= q as usize;
        }
        v.reverse();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn element_ops() {
        let a = FieldElement::new(4, 5).unwrap();
        let b = FieldElement::new(-2, 5).unwrap();
        assert_eq!(b.value(), 3);
        assert_eq!(a.add(b).value(), 2);
        assert_eq!(a.sub(b).value(), 1);
        assert_eq!(a.mul(b).value(), 2);
        assert_eq!(a.mul(a.inv().unwrap()).value(), 1);
        assert_eq!(FieldElement::from_q(&qf(1, 2), 3).unwrap().value(), 2);
        assert!(FieldElement::from_q(&qf(1, 2), 2).is_err());
        assert!(FieldElement::new(1, 7).is_err());
    }

    #[test]
    fn echelon_spans() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[1, 2, 0]));
        assert!(e.insert(&[0, 1, 1]));
        assert!(!e.insert(&[1, 0, 1])); // (1,2,0) + 2 (0,1,1)
        assert!(e.contains(&[2, 1, 0]));
        assert!(!e.contains(&[0, 0, 1]));
        assert_eq!(e.dim(), 2);
    }

    #[test]
    fn projective_counts() {
        assert_eq!(projective_points(2, 3).len(), 7);
        assert_eq!(projective_points(3, 3).len(), 13);
        assert_eq!(projective_points(5, 2).len(), 6);
    }
}
