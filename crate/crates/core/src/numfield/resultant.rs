//! Sylvester resultants by fraction-free (Bareiss) elimination.
//!
//! The kernel is generic over an integral domain with exact division, so the
//! same code computes resultants with coefficients in a number field `K` and
//! in `K[t]` (the bivariate resultants behind charpoly combinators and norms).

use super::poly::{self, Polynomial};
use super::{Field, NFElement, Value};
use crate::error::{Error, Result};

/// An integral domain in which exact quotients can be computed.
pub trait Domain {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a / b`, where `b` is known to divide `a`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl Domain for Field {
    type Elem = Value;

    fn zero(&self) -> Value {
        Field::zero(self)
    }
    fn one(&self) -> Value {
        Field::one(self)
    }
    fn is_zero(&self, a: &Value) -> bool {
        Field::is_zero(self, a)
    }
    fn add(&self, a: &Value, b: &Value) -> Value {
        Field::add(self, a, b)
    }
    fn sub(&self, a: &Value, b: &Value) -> Value {
        Field::sub(self, a, b)
    }
    fn mul(&self, a: &Value, b: &Value) -> Value {
        Field::mul(self, a, b)
    }
    fn neg(&self, a: &Value) -> Value {
        Field::neg(self, a)
    }
    fn div_exact(&self, a: &Value, b: &Value) -> Value {
        Field::div(self, a, b).expect("division by a non-invertible element")
    }
}

/// `K[t]` for a number field `K`; elements are trimmed ascending vectors.
#[derive(Clone, Debug)]
pub struct PolyRing {
    coeffs: Field,
}

impl PolyRing {
    pub fn new(coeffs: Field) -> Self {
        PolyRing { coeffs }
    }

    pub fn coeff_field(&self) -> &Field {
        &self.coeffs
    }
}

impl Domain for PolyRing {
    type Elem = Vec<Value>;

    fn zero(&self) -> Vec<Value> {
        Vec::new()
    }
    fn one(&self) -> Vec<Value> {
        vec![self.coeffs.one()]
    }
    fn is_zero(&self, a: &Vec<Value>) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Vec<Value>, b: &Vec<Value>) -> Vec<Value> {
        poly::add(&self.coeffs, a, b)
    }
    fn sub(&self, a: &Vec<Value>, b: &Vec<Value>) -> Vec<Value> {
        poly::sub(&self.coeffs, a, b)
    }
    fn mul(&self, a: &Vec<Value>, b: &Vec<Value>) -> Vec<Value> {
        poly::mul(&self.coeffs, a, b)
    }
    fn neg(&self, a: &Vec<Value>) -> Vec<Value> {
        a.iter().map(|c| self.coeffs.neg(c)).collect()
    }
    fn div_exact(&self, a: &Vec<Value>, b: &Vec<Value>) -> Vec<Value> {
        let (q, r) = poly::divrem(&self.coeffs, a, b);
        debug_assert!(r.is_empty(), "inexact division in Bareiss elimination");
        q
    }
}

fn actual_degree<D: Domain>(dom: &D, f: &[D::Elem]) -> Option<usize> {
    f.iter().rposition(|c| !dom.is_zero(c))
}

/// The `(df + dg)`-square Sylvester matrix; `f` fills the first `dg` rows.
pub fn sylvester_matrix<D: Domain>(
    dom: &D,
    f: &[D::Elem],
    g: &[D::Elem],
    df: usize,
    dg: usize,
) -> Vec<Vec<D::Elem>> {
    let n = df + dg;
    let coeff = |p: &[D::Elem], k: usize| p.get(k).cloned().unwrap_or_else(|| dom.zero());
    let mut m = vec![vec![dom.zero(); n]; n];
    for i in 0..dg {
        for k in 0..=df {
            m[i][i + df - k] = coeff(f, k);
        }
    }
    for i in 0..df {
        for k in 0..=dg {
            m[dg + i][i + dg - k] = coeff(g, k);
        }
    }
    m
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_determinant<D: Domain>(dom: &D, mut m: Vec<Vec<D::Elem>>) -> D::Elem {
    let n = m.len();
    if n == 0 {
        return dom.one();
    }
    let mut negate = false;
    let mut prev = dom.one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !dom.is_zero(&m[r][k])) else {
            return dom.zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::replace(&mut row[k], dom.zero());
            for j in k + 1..n {
                let mut v = dom.mul(&row[j], pivot);
                if !dom.is_zero(&lead) && !dom.is_zero(&pivot_row[j]) {
                    v = dom.sub(&v, &dom.mul(&lead, &pivot_row[j]));
                }
                row[j] = dom.div_exact(&v, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        dom.neg(&det)
    } else {
        det
    }
}

fn check_declared<D: Domain>(
    dom: &D,
    f: &[D::Elem],
    g: &[D::Elem],
    df: usize,
    dg: usize,
) -> Result<()> {
    let af = actual_degree(dom, f);
    let ag = actual_degree(dom, g);
    if af.is_none() && ag.is_none() {
        return Err(Error::BothZero);
    }
    if let Some(a) = af.filter(|&a| a > df) {
        return Err(Error::DeclaredDegree { declared: df, actual: a });
    }
    if let Some(a) = ag.filter(|&a| a > dg) {
        return Err(Error::DeclaredDegree { declared: dg, actual: a });
    }
    Ok(())
}

/// Determinant of the full Sylvester matrix, with no shortcuts.
pub fn sylvester_resultant<D: Domain>(
    dom: &D,
    f: &[D::Elem],
    g: &[D::Elem],
    df: usize,
    dg: usize,
) -> Result<D::Elem> {
    check_declared(dom, f, g, df, dg)?;
    Ok(bareiss_determinant(dom, sylvester_matrix(dom, f, g, df, dg)))
}

/// Remainder of `g` modulo a monic `f` in `D[y]`.
fn rem_by_monic<D: Domain>(dom: &D, g: &[D::Elem], f: &[D::Elem], df: usize) -> Vec<D::Elem> {
    let mut r = g.to_vec();
    for k in (df..r.len()).rev() {
        let c = std::mem::replace(&mut r[k], dom.zero());
        if dom.is_zero(&c) {
            continue;
        }
        for i in 0..df {
            if dom.is_zero(&f[i]) {
                continue;
            }
            r[k - df + i] = dom.sub(&r[k - df + i], &dom.mul(&c, &f[i]));
        }
    }
    r.truncate(df.min(r.len()));
    while r.last().is_some_and(|c| dom.is_zero(c)) {
        r.pop();
    }
    r
}

/// Sylvester resultant `Res_{df,dg}(f, g)`.
///
/// When one argument is monic of its declared degree, the other is first
/// reduced modulo it (`Res(f, g) = Res(f, g mod f)` for monic `f`), which
/// shrinks the Sylvester matrix to at most `2 df - 1` rows without changing
/// the determinant.
pub fn resultant_over<D: Domain>(
    dom: &D,
    f: &[D::Elem],
    g: &[D::Elem],
    df: usize,
    dg: usize,
) -> Result<D::Elem> {
    check_declared(dom, f, g, df, dg)?;
    let monic = |p: &[D::Elem], d: usize| {
        d > 0 && actual_degree(dom, p) == Some(d) && p[d] == dom.one()
    };
    if monic(f, df) && dg > 0 {
        let r = rem_by_monic(dom, g, f, df);
        if r.is_empty() {
            return Ok(dom.zero());
        }
        let dr = r.len() - 1;
        return Ok(bareiss_determinant(dom, sylvester_matrix(dom, f, &r, df, dr)));
    }
    if monic(g, dg) && df > 0 {
        let r = resultant_over(dom, g, f, dg, df)?;
        return Ok(if (df * dg) % 2 == 1 { dom.neg(&r) } else { r });
    }
    Ok(bareiss_determinant(dom, sylvester_matrix(dom, f, g, df, dg)))
}

/// `Res(f, g)` for polynomials over a common number field, with declared
/// degrees at least the actual ones. Equals `lc(f)^dg * prod g(alpha)` over
/// the roots of `f`.
pub fn resultant(f: &Polynomial, g: &Polynomial, df: usize, dg: usize) -> Result<NFElement> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(format!(
            "resultant of polynomials over {} and {}",
            f.field().name(),
            g.field().name()
        )));
    }
    let field = f.field().clone();
    let v = resultant_over(&field, f.coeffs(), g.coeffs(), df, dg)?;
    Ok(NFElement::from_parts(field, v))
}
