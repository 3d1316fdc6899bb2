//! Irreducibility certificates by reduction modulo small primes.
//!
//! A monic polynomial over `Q` that stays irreducible of the same degree
//! modulo some prime is irreducible. For a relative extension `E[y]/(g)`,
//! reducing `g` through a degree-one prime of `E` above an unramified `p`
//! gives the same kind of certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Field, Irreducibility, Rational, Value};

pub const FIRST_PRIMES: [u64; 50] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229,
];

pub(super) fn certify_field(field: &Field) -> Irreducibility {
    let Some(base) = field.base() else {
        return Irreducibility::Trivial;
    };
    let g = field.min_poly_values().expect("extension");
    if base.is_rationals() {
        let coeffs: Vec<Rational> = g.iter().map(|c| c.as_rational().unwrap().clone()).collect();
        return match certify_irreducible_over_q(&coeffs) {
            Some(p) => Irreducibility::CertifiedModulo(p),
            None => Irreducibility::Trusted,
        };
    }
    if base.is_trusted() || base.depth() != 1 {
        return Irreducibility::Trusted;
    }
    let m: Vec<Rational> = base
        .min_poly_values()
        .unwrap()
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    for &p in FIRST_PRIMES.iter() {
        let Some(m_bar) = reduce(&m, p) else { continue };
        if !is_squarefree(&m_bar, p) {
            continue;
        }
        for r in 0..p {
            if eval(&m_bar, r, p) != 0 {
                continue;
            }
            let reduced: Option<Vec<u64>> = g.iter().map(|c| reduce_at_root(c, r, p)).collect();
            let Some(g_bar) = reduced else { break };
            if degree(&g_bar) == Some(g.len() - 1) && is_irreducible_mod_p(&g_bar, p) {
                return Irreducibility::CertifiedModulo(p);
            }
        }
    }
    Irreducibility::Trusted
}

/// First prime (among the first 50) modulo which the monic polynomial is
/// irreducible of the same degree.
pub fn certify_irreducible_over_q(coeffs: &[Rational]) -> Option<u64> {
    let n = coeffs.len().checked_sub(1)?;
    FIRST_PRIMES.iter().copied().find(|&p| {
        reduce(coeffs, p)
            .filter(|f| degree(f) == Some(n))
            .is_some_and(|f| is_irreducible_mod_p(&f, p))
    })
}

fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb);
    if d.is_zero() {
        return None;
    }
    let n = r.numer().mod_floor(&pb).to_u64().unwrap();
    let d = d.to_u64().unwrap();
    Some(n * inv_mod(d, p) % p)
}

fn reduce(coeffs: &[Rational], p: u64) -> Option<Vec<u64>> {
    coeffs.iter().map(|c| reduce_rational(c, p)).collect()
}

/// Image of a base-field value under `gen -> r` in `F_p`.
fn reduce_at_root(v: &Value, r: u64, p: u64) -> Option<u64> {
    match v {
        Value::Rat(q) => reduce_rational(q, p),
        Value::Vec(cs) => {
            let mut acc = 0u64;
            for c in cs.iter().rev() {
                acc = (acc * r + reduce_at_root(c, r, p)?) % p;
            }
            Some(acc)
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    let mut r = trim(a.to_vec());
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        for i in 0..=db {
            r[k - db + i] = (r[k - db + i] + p - c * b[i] % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, f, p)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn is_squarefree(f: &[u64], p: u64) -> bool {
    let df: Vec<u64> = f.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect();
    let df = trim(df);
    if df.is_empty() {
        return false;
    }
    gcd(f, &df, p).len() == 1
}

/// Ben-Or style test: squarefree and `gcd(x^(p^i) - x, f) = 1` for
/// `i <= deg f / 2`.
pub fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let Some(n) = degree(&f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if !is_squarefree(&f, p) {
        return false;
    }
    let x = vec![0, 1];
    let mut h = rem(&x, &f, p);
    for _ in 1..=n / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, &f, p);
            }
            base = mul_mod(&base, &base, &f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if gcd(&f, &diff, p).len() != 1 {
            return false;
        }
    }
    true
}
