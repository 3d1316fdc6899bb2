use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobpoly::CharPoly;
use crate::systems::{is_prime, FrobSample, Place};

pub const MAX_COUNT_PRIME: u64 = 1_000_000;

/// `y² = x³ + a x + b` reduced modulo an odd prime `p ≥ 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EllipticCurve {
    a: i64,
    b: i64,
    p: u64,
}

impl EllipticCurve {
    pub fn new(a: i64, b: i64, p: u64) -> Result<Self> {
        if p == 2 || p == 3 {
            return Err(Error::Curve(format!("characteristic {p} is not supported")));
        }
        if !is_prime(p) {
            return Err(Error::Curve(format!("{p} is not prime")));
        }
        if p > MAX_COUNT_PRIME {
            return Err(Error::Curve(format!("p = {p} exceeds {MAX_COUNT_PRIME}")));
        }
        let c = EllipticCurve { a, b, p };
        if c.discriminant_mod_p() == 0 {
            return Err(Error::Curve(format!("y^2 = x^3 + {a}x + {b} is singular mod {p}")));
        }
        Ok(c)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `4a³ + 27b² mod p`.
    pub fn discriminant_mod_p(&self) -> u64 {
        let p = self.p;
        let a = residue(self.a, p);
        let b = residue(self.b, p);
        let a3 = mul_mod(mul_mod(a, a, p), a, p);
        (mul_mod(4, a3, p) + mul_mod(27, mul_mod(b, b, p), p)) % p
    }

    /// The quadratic twist by `d`: `(a d², b d³)`.
    pub fn twist(&self, d: i64) -> Result<Self> {
        let d = residue(d, self.p);
        let p = self.p;
        let a = mul_mod(residue(self.a, p), mul_mod(d, d, p), p);
        let b = mul_mod(residue(self.b, p), mul_mod(d, mul_mod(d, d, p), p), p);
        EllipticCurve::new(a as i64, b as i64, p)
    }

    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let x2 = mul_mod(x, x, p);
        (mul_mod(x2, x, p) + mul_mod(residue(self.a, p), x, p) + residue(self.b, p)) % p
    }
}

pub(crate) fn residue(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Legendre symbol by Euler's criterion.
pub fn legendre(v: i64, p: u64) -> i64 {
    let r = residue(v, p);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&d| legendre(d as i64, p) == -1).expect("odd prime has non-residues")
}

/// `a_p = p + 1 − #E(F_p) = −Σ_x χ(x³ + a x + b)`.
pub fn count_points(curve: &EllipticCurve) -> Result<i64> {
    let p = curve.p;
    let s: i64 = (0..p)
        .into_par_iter()
        .map(|x| legendre(curve.rhs(x) as i64, p))
        .sum();
    let ap = -s;
    if (ap as i128) * (ap as i128) > 4 * p as i128 {
        return Err(Error::Curve(format!("a_{p} = {ap} violates the Weil bound")));
    }
    Ok(ap)
}

/// `t² − a_p t + p`.
pub fn weil_poly(ap: i64, p: u64) -> CharPoly {
    CharPoly::from_ints(&[p as i64, -ap, 1]).expect("monic with constant term p")
}

/// Sample of `F_p` on `H¹` at the degree-one place over `p`.
pub fn frobenius_poly(curve: &EllipticCurve) -> Result<FrobSample> {
    let ap = count_points(curve)?;
    FrobSample::new(Place::prime(curve.p)?, 1, weil_poly(ap, curve.p))
}

/// Trace of `F^k` from `a_p` by `t_k = a_p t_{k−1} − p t_{k−2}`.
pub fn extension_trace(ap: i64, p: u64, k: u32) -> BigInt {
    let a = BigInt::from(ap);
    let q = BigInt::from(p);
    let mut prev = BigInt::from(2);
    let mut cur = a.clone();
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &a * &cur - &q * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobpoly::power_charpoly;

    #[test]
    fn counts() {
        assert_eq!(count_points(&EllipticCurve::new(1, 0, 5).unwrap()).unwrap(), 2);
        assert_eq!(count_points(&EllipticCurve::new(1, 0, 7).unwrap()).unwrap(), 0);
        assert!(count_points(&EllipticCurve::new(-1, 0, 5).unwrap()).unwrap().abs() <= 4);
    }

    #[test]
    fn rejects() {
        assert!(EllipticCurve::new(0, 0, 5).is_err());
        assert!(EllipticCurve::new(1, 0, 3).is_err());
        assert!(EllipticCurve::new(1, 0, 9).is_err());
        assert!(EllipticCurve::new(1, 0, 1_000_003).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let s = frobenius_poly(&EllipticCurve::new(1, 0, 5).unwrap()).unwrap();
        assert_eq!(s.poly(), &CharPoly::from_ints(&[5, -2, 1]).unwrap());
        let s = frobenius_poly(&EllipticCurve::new(1, 0, 7).unwrap()).unwrap();
        assert_eq!(s.poly(), &CharPoly::from_ints(&[7, 0, 1]).unwrap());
    }

    #[test]
    fn traces() {
        assert_eq!(extension_trace(2, 5, 2), BigInt::from(-6));
        assert_eq!(extension_trace(2, 5, 1), BigInt::from(2));
        assert_eq!(extension_trace(0, 7, 2), BigInt::from(-14));
        for k in 1..6u32 {
            let t = extension_trace(2, 5, k);
            let qk = 5i64.pow(k);
            let expected = CharPoly::from_ints(&[qk, -i64::try_from(t).unwrap(), 1]).unwrap();
            assert_eq!(power_charpoly(&weil_poly(2, 5), u64::from(k)).unwrap(), expected);
        }
    }

    #[test]
    fn twist_negates_trace() {
        let c = EllipticCurve::new(1, 0, 13).unwrap();
        let d = least_nonresidue(13);
        let t = c.twist(d as i64).unwrap();
        assert_eq!(count_points(&t).unwrap(), -count_points(&c).unwrap());
    }
}
