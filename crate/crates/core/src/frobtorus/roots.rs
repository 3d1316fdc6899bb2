//! Complex embeddings of towers and simultaneous root refinement.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::fixed::{Cx, Fixed};
use crate::error::{Error, Result};
use crate::numfield::{Field, Value};

const MAX_ITERATIONS: usize = 4000;

fn horner(fx: &Fixed, coeffs: &[Cx], z: &Cx) -> Cx {
    coeffs.iter().rev().fold(Cx::zero(), |acc, c| fx.cadd(&fx.cmul(&acc, z), c))
}

fn derivative(coeffs: &[Cx]) -> Vec<Cx> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| Cx { re: &c.re * k as u64, im: &c.im * k as u64 })
        .collect()
}

/// All roots of a monic polynomial with complex coefficients (ascending,
/// leading 1 included), refined by Aberth's method until every correction
/// is below `2^{-(bits − slack)}`.
pub fn polynomial_roots(fx: &Fixed, coeffs: &[Cx], slack: u32) -> Result<Vec<Cx>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![Cx { re: -&coeffs[0].re, im: -&coeffs[0].im }]);
    }
    // Fujiwara's bound sets the starting circle.
    let radius = (0..n)
        .map(|k| {
            let (re, im) = fx.to_cf64(&coeffs[k]);
            let m = (re * re + im * im).sqrt();
            let e = (n - k) as f64;
            if k == 0 { (m / 2.0).powf(1.0 / e) } else { m.powf(1.0 / e) }
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Cx> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            fx.from_cf64((radius * theta.cos(), radius * theta.sin()))
        })
        .collect();
    let dcoeffs = derivative(coeffs);
    let tolerance = BigInt::one() << slack;
    for _ in 0..MAX_ITERATIONS {
        let mut worst = BigInt::from(0);
        for k in 0..n {
            let p = horner(fx, coeffs, &z[k]);
            let dp = horner(fx, &dcoeffs, &z[k]);
            let Some(ratio) = fx.cdiv(&p, &dp) else {
                // derivative vanishes numerically: nudge
                z[k] = fx.cadd(&z[k], &Cx { re: tolerance.clone() << 8u32, im: tolerance.clone() << 7u32 });
                worst = tolerance.clone() << 9u32;
                continue;
            };
            let mut sum = Cx::zero();
            for j in 0..n {
                if j == k {
                    continue;
                }
                let diff = fx.csub(&z[k], &z[j]);
                match fx.cdiv(&Cx::real(fx.one()), &diff) {
                    Some(inv) => sum = fx.cadd(&sum, &inv),
                    None => return Err(Error::PrecisionExhausted("roots collided during refinement".into())),
                }
            }
            let denom = fx.csub(&Cx::real(fx.one()), &fx.cmul(&ratio, &sum));
            let step = fx.cdiv(&ratio, &denom).unwrap_or(ratio);
            worst = worst.max(fx.cmax(&step));
            z[k] = fx.csub(&z[k], &step);
        }
        if worst <= tolerance {
            return Ok(z);
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "root refinement did not settle within {MAX_ITERATIONS} iterations at {} bits",
        fx.bits()
    )))
}

/// Images of the generators of each level of a tower under one complex
/// embedding, bottom level first.
#[derive(Clone, Debug)]
pub struct ComplexEmbedding {
    pub generators: Vec<Cx>,
}

impl ComplexEmbedding {
    pub fn eval(&self, fx: &Fixed, field: &Field, v: &Value) -> Cx {
        match (v, field.base()) {
            (Value::Rat(r), _) => Cx::real(fx.from_rational(r)),
            (Value::Vec(cs), Some(base)) => {
                let g = &self.generators[field.depth() - 1];
                cs.iter().rev().fold(Cx::zero(), |acc, c| fx.cadd(&fx.cmul(&acc, g), &self.eval(fx, base, c)))
            }
            (Value::Vec(_), None) => unreachable!("vector value over Q"),
        }
    }

    pub fn eval_poly(&self, fx: &Fixed, field: &Field, coeffs: &[Value]) -> Vec<Cx> {
        coeffs.iter().map(|c| self.eval(fx, field, c)).collect()
    }

    pub fn extended(&self, g: Cx) -> Self {
        let mut generators = self.generators.clone();
        generators.push(g);
        ComplexEmbedding { generators }
    }
}

/// Deterministic choice among roots: largest imaginary part, then largest
/// real part, comparing at half precision.
pub fn preferred_root(fx: &Fixed, roots: &[Cx]) -> Cx {
    let shift = fx.bits() / 2;
    let key = |z: &Cx| (&z.im >> shift, &z.re >> shift);
    roots.iter().max_by(|a, b| key(a).cmp(&key(b))).expect("nonempty").clone()
}

/// The embedding of every level of `field`'s tower sending each generator
/// to its preferred root.
pub fn default_embedding(fx: &Fixed, field: &Field, slack: u32) -> Result<ComplexEmbedding> {
    let mut emb = ComplexEmbedding { generators: Vec::new() };
    for level in field.tower().iter().filter(|f| !f.is_rationals()) {
        let base = level.base().unwrap();
        let coeffs = emb.eval_poly(fx, base, level.min_poly_values().unwrap());
        let roots = polynomial_roots(fx, &coeffs, slack)?;
        emb = emb.extended(preferred_root(fx, &roots));
    }
    Ok(emb)
}

/// Smallest pairwise max-norm distance.
pub fn min_separation(fx: &Fixed, roots: &[Cx]) -> Option<BigInt> {
    let mut best: Option<BigInt> = None;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = fx.cmax(&fx.csub(&roots[i], &roots[j]));
            best = Some(match best {
                Some(b) if b <= d => b,
                _ => d,
            });
        }
    }
    best.map(|b| b.abs())
}
