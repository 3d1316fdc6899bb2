//! Integral LLL reduction (all Gram–Schmidt data kept as exact integers).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    // d > 0
    let (q, r) = n.div_mod_floor(d);
    if (&r << 1u32) >= *d {
        q + 1
    } else {
        q
    }
}

/// LLL-reduces the rows of `basis` in place with `δ = 99/100`. The rows must
/// be linearly independent.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    // d[0] = 1, d[i+1] = Gram determinant of the first i+1 rows
    let mut d: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut lam: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::from(1);
    d[1] = dot(&basis[0], &basis[0]);
    let mut k = 1usize;
    let mut kmax = 0usize;

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&basis[k], &basis[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input rows are dependent");
                    d[k + 1] = u;
                }
            }
        }
        reduce(basis, &mut lam, &d, k, k - 1);
        let lhs = BigInt::from(100) * &d[k + 1] * &d[k - 1];
        let rhs = BigInt::from(99) * &d[k] * &d[k] - BigInt::from(100) * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            swap(basis, &mut lam, &mut d, k, kmax);
            k = k.saturating_sub(1).max(1);
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                reduce(basis, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
}

fn reduce(basis: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    if (&lam[k][l] << 1u32).abs() <= d[l + 1] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l + 1]);
    let row_l = basis[l].clone();
    for (x, y) in basis[k].iter_mut().zip(&row_l) {
        *x -= &q * y;
    }
    lam[k][l] -= &q * &d[l + 1];
    for i in 0..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(basis: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    basis.swap(k, k - 1);
    for j in 0..k - 1 {
        let t = std::mem::take(&mut lam[k][j]);
        lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
    }
    let l = lam[k][k - 1].clone();
    let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
        lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
    }
    d[k] = b;
}
