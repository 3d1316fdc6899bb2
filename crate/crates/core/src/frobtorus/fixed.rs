//! Binary fixed-point reals and complexes: a value `x` is stored as the
//! integer `round(x · 2^bits)`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numfield::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub re: BigInt,
    pub im: BigInt,
}

impl Cx {
    pub fn zero() -> Self {
        Cx { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn real(re: BigInt) -> Self {
        Cx { re, im: BigInt::zero() }
    }
}

/// Arithmetic context at a fixed number of fractional bits.
#[derive(Clone, Debug)]
pub struct Fixed {
    bits: u32,
    pi: BigInt,
    ln2: BigInt,
}

fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    if (&r << 1u32).abs() >= d.abs() {
        q + 1
    } else {
        q
    }
}

impl Fixed {
    pub fn new(bits: u32) -> Self {
        let mut f = Fixed { bits: bits + 16, pi: BigInt::zero(), ln2: BigInt::zero() };
        let one = f.one();
        let fifth = f.div(&one, &f.from_int(5));
        let inv239 = f.div(&one, &f.from_int(239));
        let pi_guard = f.atan_series(&fifth) * 16 - f.atan_series(&inv239) * 4;
        let ln2_guard = f.atanh_series(&f.div(&one, &(f.one() * 3))) * 2;
        f.bits = bits;
        f.pi = pi_guard >> 16u32;
        f.ln2 = ln2_guard >> 16u32;
        f
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    pub fn pi(&self) -> &BigInt {
        &self.pi
    }

    pub fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n) << self.bits
    }

    pub fn from_rational(&self, r: &Rational) -> BigInt {
        round_div(&(r.numer() << self.bits), r.denom())
    }

    pub fn from_f64(&self, x: f64) -> BigInt {
        let scaled = x * 2f64.powi(52);
        BigInt::from(scaled as i64) << self.bits >> 52u32
    }

    pub fn to_f64(&self, a: &BigInt) -> f64 {
        let shift = a.bits().saturating_sub(60) as u32;
        let top = (a >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    /// `a` rounded to `bits` fractional bits, as a plain integer.
    pub fn rescale(&self, a: &BigInt, bits: u32) -> BigInt {
        if bits >= self.bits {
            a << (bits - self.bits)
        } else {
            round_div(a, &(BigInt::one() << (self.bits - bits)))
        }
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.bits
    }

    pub fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        round_div(&(a << self.bits), b)
    }

    pub fn sqrt(&self, a: &BigInt) -> BigInt {
        if a.sign() != Sign::Plus {
            return BigInt::zero();
        }
        (a << self.bits).sqrt()
    }

    /// `Σ s^{2j+1}/(2j+1)`, for `|s|` well below 1.
    fn atanh_series(&self, s: &BigInt) -> BigInt {
        let s2 = self.mul(s, s);
        let mut term = s.clone();
        let mut sum = s.clone();
        let mut j = 1u32;
        loop {
            term = self.mul(&term, &s2);
            let t = &term / (2 * j + 1);
            if t.is_zero() {
                return sum;
            }
            sum += t;
            j += 1;
        }
    }

    fn atan_series(&self, s: &BigInt) -> BigInt {
        let s2 = self.mul(s, s);
        let mut term = s.clone();
        let mut sum = s.clone();
        let mut j = 1u32;
        loop {
            term = -self.mul(&term, &s2);
            let t = &term / (2 * j + 1);
            if t.is_zero() {
                return sum;
            }
            sum += t;
            j += 1;
        }
    }

    /// `ln n` for a positive integer `n` (not a fixed-point value).
    fn ln_int(&self, n: &BigInt) -> BigInt {
        assert!(n.is_positive(), "logarithm of a non-positive value");
        let e = n.bits() - 1;
        let bits = u64::from(self.bits);
        let m = if bits >= e { n << (bits - e) } else { n >> (e - bits) };
        let one = self.one();
        let s = self.div(&(&m - &one), &(&m + &one));
        self.atanh_series(&s) * 2 + &self.ln2 * e
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self, a: &BigInt) -> BigInt {
        self.ln_int(a) - &self.ln2 * self.bits
    }

    pub fn atan(&self, x: &BigInt) -> BigInt {
        let one = self.one();
        if x.abs() > one {
            let half_pi = &self.pi >> 1u32;
            let r = self.atan(&self.div(&one, x));
            return if x.is_positive() { half_pi - r } else { -half_pi - r };
        }
        let mut y = x.clone();
        for _ in 0..3 {
            let root = self.sqrt(&(&one + self.mul(&y, &y)));
            y = self.div(&y, &(&one + root));
        }
        self.atan_series(&y) << 3u32
    }

    /// Argument in `(−π, π]`.
    pub fn atan2(&self, y: &BigInt, x: &BigInt) -> BigInt {
        if x.is_zero() {
            let half_pi = &self.pi >> 1u32;
            return if y.is_negative() { -half_pi } else { half_pi };
        }
        let base = self.atan(&self.div(y, x));
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base - &self.pi
        } else {
            base + &self.pi
        }
    }

    pub fn cadd(&self, a: &Cx, b: &Cx) -> Cx {
        Cx { re: &a.re + &b.re, im: &a.im + &b.im }
    }

    pub fn csub(&self, a: &Cx, b: &Cx) -> Cx {
        Cx { re: &a.re - &b.re, im: &a.im - &b.im }
    }

    pub fn cmul(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: (&a.re * &b.re - &a.im * &b.im) >> self.bits,
            im: (&a.re * &b.im + &a.im * &b.re) >> self.bits,
        }
    }

    pub fn cscale(&self, a: &Cx, r: &BigInt) -> Cx {
        Cx { re: self.mul(&a.re, r), im: self.mul(&a.im, r) }
    }

    pub fn cabs2(&self, a: &Cx) -> BigInt {
        self.mul(&a.re, &a.re) + self.mul(&a.im, &a.im)
    }

    /// `None` when `b` vanishes at this precision.
    pub fn cdiv(&self, a: &Cx, b: &Cx) -> Option<Cx> {
        let den = &b.re * &b.re + &b.im * &b.im;
        if den.is_zero() {
            return None;
        }
        let re = &a.re * &b.re + &a.im * &b.im;
        let im = &a.im * &b.re - &a.re * &b.im;
        Some(Cx { re: round_div(&(re << self.bits), &den), im: round_div(&(im << self.bits), &den) })
    }

    /// Max-norm of `a`, a cheap stand-in for `|a|`.
    pub fn cmax(&self, a: &Cx) -> BigInt {
        a.re.abs().max(a.im.abs())
    }

    /// `(ln |z|, arg z)`.
    pub fn clog(&self, z: &Cx) -> Option<(BigInt, BigInt)> {
        let r2 = &z.re * &z.re + &z.im * &z.im;
        if r2.is_zero() {
            return None;
        }
        let ln_abs = (self.ln_int(&r2) - &self.ln2 * (2 * self.bits)) >> 1u32;
        Some((ln_abs, self.atan2(&z.im, &z.re)))
    }

    pub fn to_cf64(&self, z: &Cx) -> (f64, f64) {
        (self.to_f64(&z.re), self.to_f64(&z.im))
    }

    pub fn from_cf64(&self, z: (f64, f64)) -> Cx {
        Cx { re: self.from_f64(z.0), im: self.from_f64(z.1) }
    }
}
