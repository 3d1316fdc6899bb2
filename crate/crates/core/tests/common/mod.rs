//! Independent reference computations for the integration tests: matrix
//! characteristic polynomials, power sums, brute-force point counts over
//! explicit finite fields and norms through multiplication matrices.
#![allow(dead_code)]

use frobsys::frobpoly::CharPoly;
use frobsys::numfield::{Field, Polynomial, Rational, Value};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> IntMatrix {
    (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b[0].len();
    let mut c = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                c[i][j] += aik * &b[k][j];
            }
        }
    }
    c
}

pub fn mat_pow(a: &IntMatrix, n: u32) -> IntMatrix {
    let mut r: IntMatrix =
        (0..a.len()).map(|i| (0..a.len()).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    for _ in 0..n {
        r = mat_mul(&r, a);
    }
    r
}

pub fn block_sum(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (n, m) = (a.len(), b.len());
    let mut c = vec![vec![BigInt::zero(); n + m]; n + m];
    for i in 0..n {
        for j in 0..n {
            c[i][j] = a[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            c[n + i][n + j] = b[i][j].clone();
        }
    }
    c
}

pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (n, m) = (a.len(), b.len());
    let mut c = vec![vec![BigInt::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    c[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    c
}

/// Faddeev–LeVerrier over the integers (every division is exact).
/// Ascending coefficients, leading 1 included.
pub fn int_charpoly(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m: IntMatrix = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = mat_mul(a, &m);
        let trace: BigInt = (0..n).map(|i| &m[i][i]).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    coeffs
}

/// Faddeev–LeVerrier over `Q`.
pub fn rat_charpoly(a: &RatMatrix) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m: RatMatrix = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += &a[i][l] * &m[l][j];
                }
            }
        }
        m = next;
        let trace: Rational = (0..n).map(|i| m[i][i].clone()).sum();
        coeffs[n - k] = -trace / Rational::from_integer(k.into());
    }
    coeffs
}

pub fn to_rational(a: &IntMatrix) -> RatMatrix {
    a.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
}

/// Gauss–Jordan inverse, `None` when singular.
pub fn rat_inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = Rational::one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let src = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rat_det(a: &RatMatrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                let src = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

pub fn charpoly_from_ints(c: &[BigInt]) -> CharPoly {
    let q = Field::rationals();
    let coeffs: Vec<Rational> = c.iter().map(|x| Rational::from_integer(x.clone())).collect();
    CharPoly::new(Polynomial::from_rationals(&q, &coeffs)).expect("charpoly of an invertible matrix")
}

pub fn charpoly_from_rationals(c: &[Rational]) -> CharPoly {
    CharPoly::new(Polynomial::from_rationals(&Field::rationals(), c)).expect("charpoly")
}

/// Gaussian rationals `re + im·i`, kept apart from the library's field code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

impl Gauss {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gauss { re, im }
    }

    pub fn zero() -> Self {
        Gauss::new(Rational::zero(), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        Gauss::new(r, Rational::zero())
    }

    pub fn add(&self, o: &Gauss) -> Gauss {
        Gauss::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Gauss) -> Gauss {
        Gauss::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Gauss) -> Gauss {
        Gauss::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    pub fn scale(&self, r: &Rational) -> Gauss {
        Gauss::new(&self.re * r, &self.im * r)
    }
}

/// Minimal arithmetic needed by the power-sum oracle.
pub trait Scalar: Clone {
    fn nil() -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;
}

impl Scalar for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Scalar for Gauss {
    fn nil() -> Self {
        Gauss::zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

/// Power sums `p_1 … p_count` of the roots of a monic polynomial given by its
/// lower coefficients `a_0 … a_{n−1}` (Newton's identities).
pub fn power_sums<S: Scalar>(lower: &[S], count: usize) -> Vec<S> {
    let n = lower.len();
    let a = |j: isize| -> S {
        if j < 0 {
            S::nil()
        } else {
            lower[j as usize].clone()
        }
    };
    let mut p: Vec<S> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut s = if k <= n { a(n as isize - k as isize).scaled(&Rational::from_integer((k as i64).into())) } else { S::nil() };
        for i in 1..k.min(n + 1) {
            s = s.plus(&a(n as isize - i as isize).times(&p[k - i - 1]));
        }
        p.push(S::nil().minus(&s));
    }
    p
}

/// Lower coefficients of the monic degree-`n` polynomial with power sums
/// `p_1 … p_n`.
pub fn from_power_sums<S: Scalar>(p: &[S], n: usize) -> Vec<S> {
    // e_0 = 1 is represented implicitly
    let mut e: Vec<S> = Vec::with_capacity(n + 1);
    for k in 1..=n {
        let mut s = if k % 2 == 1 { p[k - 1].clone() } else { S::nil().minus(&p[k - 1]) };
        for i in 1..k {
            let term = e[k - i - 1].times(&p[i - 1]);
            s = if (i - 1) % 2 == 0 { s.plus(&term) } else { s.minus(&term) };
        }
        e.push(s.scaled(&Rational::new(1.into(), (k as i64).into())));
    }
    // a_{n−k} = (−1)^k e_k
    let mut lower = vec![S::nil(); n];
    for k in 1..=n {
        lower[n - k] = if k % 2 == 0 { e[k - 1].clone() } else { S::nil().minus(&e[k - 1]) };
    }
    lower
}

/// `F_{p^k}` as `F_p[x]/(m)` with `m` monic irreducible of degree `k`, found
/// by trying polynomials in order; elements are coefficient vectors.
pub struct FiniteField {
    pub p: u64,
    pub k: usize,
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(p: u64, k: usize) -> Self {
        assert!((1..=3).contains(&k), "degrees up to 3 only (root test suffices)");
        let mut c = vec![0u64; k];
        loop {
            let has_root = (0..p).any(|x| {
                let mut v = 1u64;
                for i in (0..k).rev() {
                    v = (v * x + c[i]) % p;
                }
                v == 0
            });
            if !has_root || k == 1 {
                let mut modulus = c.clone();
                modulus.push(1);
                return FiniteField { p, k, modulus };
            }
            // next coefficient vector
            let mut i = 0;
            loop {
                c[i] += 1;
                if c[i] < p {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn element(&self, mut index: u64) -> Vec<u64> {
        (0..self.k)
            .map(|_| {
                let d = index % self.p;
                index /= self.p;
                d
            })
            .collect()
    }

    pub fn index(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn constant(&self, c: i64) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = c.rem_euclid(self.p as i64) as u64;
        v
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for d in (self.k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for i in 0..=self.k {
                let t = c * self.modulus[i] % p;
                prod[d - self.k + i] = (prod[d - self.k + i] + p - t) % p;
            }
        }
        prod.truncate(self.k);
        prod
    }
}

/// `#E(F_q)` for `y² = x³ + a x + b` by counting square roots of every
/// right-hand side, point at infinity included.
pub fn brute_force_count(field: &FiniteField, a: i64, b: i64) -> u64 {
    let q = field.order();
    let mut roots = vec![0u64; q as usize];
    for y in 0..q {
        let e = field.element(y);
        roots[field.index(&field.mul(&e, &e)) as usize] += 1;
    }
    let (ca, cb) = (field.constant(a), field.constant(b));
    let mut total = 1;
    for x in 0..q {
        let e = field.element(x);
        let x3 = field.mul(&field.mul(&e, &e), &e);
        let rhs = field.add(&field.add(&x3, &field.mul(&ca, &e)), &cb);
        total += roots[field.index(&rhs) as usize];
    }
    total
}

/// Trace `q + 1 − #E(F_q)`.
pub fn brute_force_trace(field: &FiniteField, a: i64, b: i64) -> i64 {
    field.order() as i64 + 1 - brute_force_count(field, a, b) as i64
}

/// `N_{L/Q}(x)` as the determinant of multiplication by `x` on the
/// `Q`-basis of `L`.
pub fn absolute_norm(field: &Field, x: &Value) -> Rational {
    let d = field.abs_degree();
    let basis: Vec<Value> = (0..d)
        .map(|i| {
            let mut c = vec![Rational::zero(); d];
            c[i] = Rational::one();
            field.unflatten(&c)
        })
        .collect();
    let m: RatMatrix = basis.iter().map(|b| field.flatten(&field.mul(x, b))).collect();
    rat_det(&m)
}

/// `N_{L/Q}(P)(t)` by evaluating at `deg·[L:Q] + 1` rational points and
/// interpolating.
pub fn absolute_norm_poly(p: &Polynomial) -> Vec<Rational> {
    let field = p.field();
    let n = p.degree().unwrap() * field.abs_degree();
    let xs: Vec<Rational> = (0..=n as i64).map(|t| Rational::from_integer(t.into())).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|t| {
            let v = p.coeffs().iter().rev().fold(field.zero(), |acc, c| {
                field.add(&field.mul(&acc, &field.from_rational(t)), c)
            });
            absolute_norm(field, &v)
        })
        .collect();
    lagrange(&xs, &ys)
}

/// Ascending coefficients of the interpolating polynomial.
pub fn lagrange(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let f = &ys[i] / denom;
        for (o, c) in out.iter_mut().zip(&basis) {
            *o += c * &f;
        }
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

pub fn rational_coeffs(p: &Polynomial) -> Vec<Rational> {
    p.to_rationals().expect("polynomial over Q")
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn abs_le(a: &BigInt, b: i64) -> bool {
    a.abs() <= BigInt::from(b)
}
