use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::{Field, NFElement, Rational};

/// First linear dependence among `vectors`, as coefficients `c` with
/// `sum c_i v_i = 0` and `c_last = 1`, if the last vector lies in the span
/// of the earlier ones (which must be independent).
pub fn linear_dependence(vectors: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let (target, basis) = vectors.split_last()?;
    let dim = target.len();
    let k = basis.len();
    // Solve sum_{i<k} x_i v_i = target by elimination on the dim x (k+1)
    // augmented matrix.
    let mut rows: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<Rational> = basis.iter().map(|v| v[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(p) = (rank..dim).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..dim {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..=k {
                    let t = &rows[rank][c] * &factor;
                    rows[r][c] = &rows[r][c] - t;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut coeffs = vec![Rational::zero(); k + 1];
    for (r, &col) in pivot_cols.iter().enumerate() {
        coeffs[col] = -rows[r][k].clone();
    }
    coeffs[k] = Rational::one();
    Some(coeffs)
}

/// Monic minimal polynomial over `Q`: the lowest-degree linear dependence
/// among `1, θ, θ², …` in `Q`-coordinates.
pub fn minimal_polynomial(theta: &NFElement) -> Polynomial {
    let field = theta.field();
    let mut powers: Vec<Vec<Rational>> = Vec::new();
    let mut cur = field.one();
    for _ in 0..=field.abs_degree() {
        powers.push(field.flatten(&cur));
        if let Some(c) = linear_dependence(&powers) {
            return Polynomial::from_rationals(&Field::rationals(), &c);
        }
        cur = field.mul(&cur, theta.value());
    }
    unreachable!("abs_degree + 1 vectors in a space of dimension abs_degree are dependent")
}
