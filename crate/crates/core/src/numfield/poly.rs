use std::fmt;

use super::resultant::{resultant_over, PolyRing};
use super::{Field, NFElement, Rational, Value};
use crate::error::{Error, Result};

// ---- raw dense polynomials over a field (ascending, trimmed) --------------

pub(crate) fn trimmed(field: &Field, mut c: Vec<Value>) -> Vec<Value> {
    while c.last().is_some_and(|x| field.is_zero(x)) {
        c.pop();
    }
    c
}

pub(crate) fn add(field: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let out = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trimmed(field, out)
}

pub(crate) fn sub(field: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let out = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trimmed(field, out)
}

pub(crate) fn mul(field: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if field.is_zero(y) {
                continue;
            }
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trimmed(field, out)
}

pub(crate) fn scale(field: &Field, a: &[Value], c: &Value) -> Vec<Value> {
    trimmed(field, a.iter().map(|x| field.mul(x, c)).collect())
}

/// Division with remainder; `b` must be nonzero with invertible leading
/// coefficient.
pub(crate) fn divrem(field: &Field, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>) {
    let b = trimmed(field, b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let lead_inv = field.inv(&b[db]).expect("leading coefficient not invertible");
    let mut r = trimmed(field, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1;
        let c = field.mul(&r[k], &lead_inv);
        for i in 0..=db {
            let t = field.mul(&c, &b[i]);
            r[k - db + i] = field.sub(&r[k - db + i], &t);
        }
        q[k - db] = c;
        r.pop();
        r = trimmed(field, r);
    }
    (trimmed(field, q), r)
}

fn make_monic(field: &Field, a: Vec<Value>) -> Vec<Value> {
    match a.last() {
        None => a,
        Some(l) => {
            let li = field.inv(l).expect("nonzero leading coefficient");
            scale(field, &a, &li)
        }
    }
}

pub(crate) fn gcd(field: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let mut a = trimmed(field, a.to_vec());
    let mut b = trimmed(field, b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(field, &a, &b);
        a = std::mem::replace(&mut b, make_monic(field, r));
    }
    make_monic(field, a)
}

/// `(g, s, t)` with `s a + t b = g`, `g` not normalized.
pub(crate) fn xgcd(
    field: &Field,
    a: &[Value],
    b: &[Value],
) -> (Vec<Value>, Vec<Value>, Vec<Value>) {
    let mut r0 = trimmed(field, a.to_vec());
    let mut r1 = trimmed(field, b.to_vec());
    let mut s0 = vec![field.one()];
    let mut s1: Vec<Value> = Vec::new();
    let mut t0: Vec<Value> = Vec::new();
    let mut t1 = vec![field.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(field, &r0, &r1);
        let s2 = sub(field, &s0, &mul(field, &q, &s1));
        let t2 = sub(field, &t0, &mul(field, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

pub(crate) fn eval(field: &Field, a: &[Value], x: &Value) -> Value {
    a.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

// ---- the public polynomial type -------------------------------------------

/// Dense univariate polynomial over a number field, coefficients ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Value>,
}

impl Polynomial {
    pub fn new(field: Field, coeffs: Vec<Value>) -> Result<Self> {
        for c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_values(field, coeffs))
    }

    pub(crate) fn from_values(field: Field, coeffs: Vec<Value>) -> Self {
        let coeffs = trimmed(&field, coeffs);
        Polynomial { field, coeffs }
    }

    pub fn from_elements(field: &Field, coeffs: &[NFElement]) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(format!(
                "coefficient in {} for a polynomial over {}",
                c.field().name(),
                field.name()
            )));
        }
        Ok(Self::from_values(field.clone(), coeffs.iter().map(|c| c.value().clone()).collect()))
    }

    pub fn from_rationals(field: &Field, coeffs: &[Rational]) -> Self {
        Self::from_values(field.clone(), coeffs.iter().map(|c| field.from_rational(c)).collect())
    }

    /// Integer coefficients over `Q`, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        let q = Field::rationals();
        Self::from_values(q.clone(), coeffs.iter().map(|&c| q.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Polynomial { field: field.clone(), coeffs: vec![field.one()] }
    }

    /// `t - a`.
    pub fn linear_root(a: &NFElement) -> Self {
        let f = a.field();
        Polynomial { field: f.clone(), coeffs: vec![f.neg(a.value()), f.one()] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> NFElement {
        NFElement::from_parts(
            self.field.clone(),
            self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Value> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|l| self.field.is_one(l))
    }

    fn same_field(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "polynomials over {} and {}",
                self.field.name(),
                other.field.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(Polynomial { field: self.field.clone(), coeffs: add(&self.field, &self.coeffs, &other.coeffs) })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(Polynomial { field: self.field.clone(), coeffs: sub(&self.field, &self.coeffs, &other.coeffs) })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(Polynomial { field: self.field.clone(), coeffs: mul(&self.field, &self.coeffs, &other.coeffs) })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    pub fn scale(&self, c: &Value) -> Polynomial {
        Polynomial { field: self.field.clone(), coeffs: scale(&self.field, &self.coeffs, c) }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&self.field.from_int(-1))
    }

    pub fn divrem(&self, other: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(other)?;
        if other.is_zero() {
            return Err(Error::InvalidArgument("polynomial division by zero".into()));
        }
        let (q, r) = divrem(&self.field, &self.coeffs, &other.coeffs);
        Ok((
            Polynomial { field: self.field.clone(), coeffs: q },
            Polynomial { field: self.field.clone(), coeffs: r },
        ))
    }

    /// Exact quotient, `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.divrem(other)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(Polynomial { field: self.field.clone(), coeffs: gcd(&self.field, &self.coeffs, &other.coeffs) })
    }

    pub fn monic(&self) -> Polynomial {
        Polynomial { field: self.field.clone(), coeffs: make_monic(&self.field, self.coeffs.clone()) }
    }

    pub fn derivative(&self) -> Polynomial {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.scale(c, &Rational::from_integer((i as i64).into())))
            .collect();
        Polynomial::from_values(self.field.clone(), c)
    }

    /// Product of the distinct monic irreducible factors (characteristic 0).
    pub fn squarefree_part(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative()).expect("same field");
        self.monic().div_exact(&g).expect("same field").expect("gcd divides")
    }

    pub fn eval(&self, x: &NFElement) -> Result<NFElement> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch("evaluation point".into()));
        }
        Ok(NFElement::from_parts(self.field.clone(), eval(&self.field, &self.coeffs, x.value())))
    }

    /// All coefficients as rationals, if they lie in `Q`.
    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| self.field.to_rational(c)).collect()
    }

    /// The same polynomial with coefficients in a field higher in the tower.
    pub fn lift_to(&self, target: &Field) -> Result<Polynomial> {
        let coeffs: Option<Vec<Value>> =
            self.coeffs.iter().map(|c| target.lift_from(&self.field, c)).collect();
        coeffs
            .map(|c| Polynomial::from_values(target.clone(), c))
            .ok_or_else(|| {
                Error::FieldMismatch(format!("{} does not lie below {}", self.field.name(), target.name()))
            })
    }

    /// Rendering in the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let monomial = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let cs = self.field.format_value(c);
            let compound = self.field.is_compound(c);
            let neg_one = self.field.is_one(&self.field.neg(c));
            let term = if k == 0 {
                if compound {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if self.field.is_one(c) {
                monomial
            } else if neg_one {
                format!("-{monomial}")
            } else if compound {
                format!("({cs})*{monomial}")
            } else {
                format!("{cs}*{monomial}")
            };
            terms.push(term);
        }
        super::join_terms(&terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] over {}", self, self.field.name())
    }
}

/// Relative norm `Nm^E_{E'} P(t) = Res_y(g(y), P(t)|_{gen -> y})` for `P`
/// over `E = E'[y]/(g)`. `presentation` must be `g` itself.
pub fn norm_poly(p: &Polynomial, presentation: &Polynomial) -> Result<Polynomial> {
    let e = p.field();
    let base = e.base().ok_or_else(|| {
        Error::FieldMismatch("Q has no presentation over a subfield".into())
    })?;
    if !presentation.is_monic() {
        return Err(Error::InvalidArgument("presentation polynomial is not monic".into()));
    }
    if presentation.field() != base || e.min_poly().as_ref() != Some(presentation) {
        return Err(Error::FieldMismatch(format!(
            "presentation does not define {} over {}",
            e.name(),
            base.name()
        )));
    }
    Ok(norm_to_base(p))
}

/// `norm_poly` against the field's own presentation.
pub(crate) fn norm_to_base(p: &Polynomial) -> Polynomial {
    let e = p.field();
    let base = e.base().expect("extension field").clone();
    let d = e.degree();
    let ring = PolyRing::new(base.clone());
    // y-coefficients of P(t, y), each a polynomial in t over the base
    let mut by_y: Vec<Vec<Value>> = vec![Vec::new(); d];
    for (k, c) in p.coeffs().iter().enumerate() {
        let Value::Vec(parts) = c else { unreachable!("extension value") };
        for (j, part) in parts.iter().enumerate() {
            if base.is_zero(part) {
                continue;
            }
            let col = &mut by_y[j];
            if col.len() <= k {
                col.resize(k + 1, base.zero());
            }
            col[k] = part.clone();
        }
    }
    let by_y: Vec<Vec<Value>> = by_y.into_iter().map(|c| trimmed(&base, c)).collect();
    let gy: Vec<Vec<Value>> = e
        .min_poly_values()
        .unwrap()
        .iter()
        .map(|c| trimmed(&base, vec![c.clone()]))
        .collect();
    let by_y = {
        let mut v = by_y;
        while v.last().is_some_and(|c| c.is_empty()) {
            v.pop();
        }
        v
    };
    if by_y.is_empty() {
        return Polynomial::zero(&base);
    }
    let dg = by_y.len() - 1;
    let res = resultant_over(&ring, &gy, &by_y, d, dg).expect("declared degrees are exact");
    Polynomial::from_values(base, res)
}
