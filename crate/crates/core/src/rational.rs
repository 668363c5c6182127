//! Exact rational scalars and their text form.
//!
//! Every scalar in the crate is a [`Q`], an arbitrary precision rational.
//! The text form is `"p"` for integers and `"p/q"` otherwise, with `q > 0`
//! and `gcd(p, q) = 1`; it is the form used by the JSON files.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(num, den))
}

/// Reduce a rational modulo a small prime. Fails when the prime divides the denominator.
pub fn reduce_mod(x: &Q, p: u32) -> Result<u32> {
    let pb = BigInt::from(p);
    let den = ((x.denom() % &pb) + &pb) % &pb;
    if den.is_zero() {
        return Err(Error::NotReducible(p));
    }
    let num = ((x.numer() % &pb) + &pb) % &pb;
    let num: u32 = num.try_into().expect("residue fits in u32");
    let den: u32 = den.try_into().expect("residue fits in u32");
    Ok((num as u64 * inv_mod(den, p) as u64 % p as u64) as u32)
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    // Fermat; p is prime
    let mut result = 1u64;
    let mut base = (a % p) as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for s in ["0", "1", "-7", "3/4", "-22/7"] {
            assert_eq!(format_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(format_q(&parse_q("6/8").unwrap()), "3/4");
        assert_eq!(format_q(&parse_q("3/-4").unwrap()), "-3/4");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn modular_reduction() {
        assert_eq!(reduce_mod(&qf(1, 2), 3).unwrap(), 2);
        assert_eq!(reduce_mod(&q(-1), 5).unwrap(), 4);
        assert!(reduce_mod(&qf(1, 2), 2).is_err());
    }
}
