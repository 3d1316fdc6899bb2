//! Characteristic-polynomial combinators.
//!
//! Every operation is a resultant in an auxiliary variable `y` with
//! coefficients in `E[t]`:
//!
//! * power:  `Res_y(P(y), t - y^n)`            roots `α^n`, with `y^n`
//!   first reduced modulo `P`
//! * tensor: `Res_y(P(y), y^{n'} P'(t/y))`     roots `α α'`
//!
//! Sum is the product and the dual is the monic reversal.

use std::fmt;

use crate::error::{Error, Result};
use crate::numfield::{poly, resultant_over, Field, NFElement, PolyRing, Polynomial, Value};

/// Monic polynomial of positive degree with nonzero constant term: the
/// characteristic polynomial of an invertible operator.
#[derive(Clone, PartialEq, Eq)]
pub struct CharPoly {
    poly: Polynomial,
}

impl CharPoly {
    pub fn new(poly: Polynomial) -> Result<Self> {
        match poly.degree() {
            None | Some(0) => {
                return Err(Error::NotCharPoly(format!("degree must be positive: {poly}")))
            }
            _ => {}
        }
        if !poly.is_monic() {
            return Err(Error::NotCharPoly(format!("not monic: {poly}")));
        }
        if poly.field().is_zero(&poly.coeffs()[0]) {
            return Err(Error::NotCharPoly(format!("zero constant term: {poly}")));
        }
        Ok(CharPoly { poly })
    }

    /// From integer coefficients over `Q`, ascending and including the leading 1.
    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        CharPoly::new(Polynomial::from_ints(coeffs))
    }

    /// `t - a`.
    pub fn linear(a: &NFElement) -> Result<Self> {
        CharPoly::new(Polynomial::linear_root(a))
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("positive degree")
    }

    pub fn constant_term(&self) -> NFElement {
        self.poly.coeff(0)
    }

    /// Non-leading coefficients, ascending.
    pub fn lower_coeffs(&self) -> &[Value] {
        &self.poly.coeffs()[..self.degree()]
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.poly)
    }
}

fn same_field(p: &CharPoly, q: &CharPoly) -> Result<()> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch(format!(
            "charpolys over {} and {}",
            p.field().name(),
            q.field().name()
        )));
    }
    Ok(())
}

/// `P` as a polynomial in `y` with constant coefficients in `E[t]`.
fn as_constants_in_t(field: &Field, p: &CharPoly) -> Vec<Vec<Value>> {
    p.poly
        .coeffs()
        .iter()
        .map(|c| if field.is_zero(c) { Vec::new() } else { vec![c.clone()] })
        .collect()
}

fn finish(field: &Field, coeffs: Vec<Value>) -> CharPoly {
    CharPoly::new(Polynomial::new(field.clone(), coeffs).expect("valid coefficients"))
        .expect("combinator output is a characteristic polynomial")
}

/// Charpoly of `F^n` given the charpoly of `F`: `∏ (t - α_i^n)`.
pub fn power_charpoly(p: &CharPoly, n: u64) -> Result<CharPoly> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    if n == 1 {
        return Ok(p.clone());
    }
    let field = p.field();
    let ring = PolyRing::new(field.clone());
    let f = as_constants_in_t(field, p);
    // t - (y^n mod P(y)); the resultant against monic P only sees the residue
    let r = power_mod(field, p.poly.coeffs(), n);
    let mut g: Vec<Vec<Value>> = r
        .iter()
        .map(|c| if field.is_zero(c) { Vec::new() } else { vec![field.neg(c)] })
        .collect();
    if g.is_empty() {
        g.push(Vec::new());
    }
    g[0] = poly::trimmed(field, vec![g[0].first().cloned().unwrap_or_else(|| field.zero()), field.one()]);
    while g.len() > 1 && g.last().is_some_and(|c| c.is_empty()) {
        g.pop();
    }
    let dg = g.len() - 1;
    let res = resultant_over(&ring, &f, &g, p.degree(), dg)?;
    Ok(finish(field, res))
}

/// `y^n mod m(y)` for monic `m`, by repeated squaring.
fn power_mod(field: &Field, m: &[Value], mut n: u64) -> Vec<Value> {
    let reduce = |a: Vec<Value>| poly::divrem(field, &a, m).1;
    let mut acc = reduce(vec![field.one()]);
    let mut base = reduce(vec![field.zero(), field.one()]);
    while n > 0 {
        if n & 1 == 1 {
            acc = reduce(poly::mul(field, &acc, &base));
        }
        n >>= 1;
        if n > 0 {
            base = reduce(poly::mul(field, &base, &base));
        }
    }
    acc
}

/// `∏ (t - 1/α_i)`: the monic reversal of `P`.
pub fn dual_charpoly(p: &CharPoly) -> CharPoly {
    let field = p.field();
    let c0 = &p.poly.coeffs()[0];
    let inv = field.inv(c0).expect("nonzero constant term");
    let reversed: Vec<Value> = p.poly.coeffs().iter().rev().map(|c| field.mul(c, &inv)).collect();
    finish(field, reversed)
}

/// Charpoly of a direct sum: the product.
pub fn sum_charpoly(p: &CharPoly, q: &CharPoly) -> Result<CharPoly> {
    same_field(p, q)?;
    Ok(CharPoly { poly: p.poly.mul(&q.poly)? })
}

/// Charpoly of a tensor product: `∏_{i,j} (t - α_i α'_j)`.
pub fn tensor_charpoly(p: &CharPoly, q: &CharPoly) -> Result<CharPoly> {
    same_field(p, q)?;
    let field = p.field();
    let ring = PolyRing::new(field.clone());
    let f = as_constants_in_t(field, p);
    let nq = q.degree();
    // y^{n'} P'(t/y) = sum_k b_k t^k y^{n'-k}
    let mut kernel: Vec<Vec<Value>> = vec![Vec::new(); nq + 1];
    for (k, b) in q.poly.coeffs().iter().enumerate() {
        if field.is_zero(b) {
            continue;
        }
        let mut tk = vec![field.zero(); k + 1];
        tk[k] = b.clone();
        kernel[nq - k] = tk;
    }
    let res = resultant_over(&ring, &f, &kernel, p.degree(), nq)?;
    Ok(finish(field, res))
}

/// Charpoly of the internal Hom: `∏_{i,j} (t - α'_j / α_i)`.
pub fn hom_charpoly(p: &CharPoly, q: &CharPoly) -> Result<CharPoly> {
    same_field(p, q)?;
    tensor_charpoly(&dual_charpoly(p), q)
}
