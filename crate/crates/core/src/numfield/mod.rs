//! Exact arithmetic over `Q` and over explicit number-field towers.
//!
//! A field is either `Q` or `B[y]/(m(y))` for a monic `m` over a base field
//! `B`, with towers at most two extensions deep. Elements are stored as
//! [`Value`]s: a rational for `Q`, otherwise the coefficient vector (in the
//! base field) of the reduced representative, always of full length.

mod embedding;
mod irreducible;
mod minpoly;
pub(crate) mod poly;
mod resultant;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use embedding::{embed_poly, Embedding};
pub use irreducible::{certify_irreducible_over_q, is_irreducible_mod_p, FIRST_PRIMES};
pub use minpoly::{linear_dependence, minimal_polynomial};
pub use poly::{norm_poly, Polynomial};
pub use resultant::{
    bareiss_determinant, resultant, resultant_over, sylvester_matrix, sylvester_resultant, Domain,
    PolyRing,
};

pub type Rational = BigRational;

/// Towers deeper than `Q ⊂ E ⊂ Ẽ` are rejected.
pub const MAX_TOWER_DEPTH: usize = 2;

/// Raw element representation; only meaningful together with its [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Rat(Rational),
    Vec(Vec<Value>),
}

impl Value {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Value::Rat(r) => Some(r),
            Value::Vec(_) => None,
        }
    }
}

/// How irreducibility of a defining polynomial was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// `Q` itself.
    Trivial,
    /// Irreducible modulo this prime (for towers: modulo a degree-one prime
    /// of the base field above it).
    CertifiedModulo(u64),
    /// No certificate found among the first 50 primes; accepted on trust.
    Trusted,
}

#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

enum FieldKind {
    Rationals,
    Extension(Extension),
}

struct Extension {
    name: String,
    base: Field,
    min_poly: Vec<Value>,
    certificate: Irreducibility,
    abs_degree: usize,
    depth: usize,
}

static RATIONALS: OnceLock<Field> = OnceLock::new();

impl Field {
    pub fn rationals() -> Field {
        RATIONALS
            .get_or_init(|| Field(Arc::new(FieldKind::Rationals)))
            .clone()
    }

    /// `base[name]/(min_poly)`, with `min_poly` given ascending and monic.
    pub fn extension(name: &str, base: &Field, min_poly: Vec<Value>) -> Result<Field> {
        if name.is_empty() || name == "Q" {
            return Err(Error::InvalidField(format!("reserved or empty name {name:?}")));
        }
        if !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::InvalidField(format!(
                "generator name {name:?} must be alphanumeric"
            )));
        }
        if base.tower_names().iter().any(|n| n == name) {
            return Err(Error::InvalidField(format!("name {name} already used in the tower")));
        }
        if base.depth() >= MAX_TOWER_DEPTH {
            return Err(Error::InvalidField(format!(
                "tower depth would exceed {MAX_TOWER_DEPTH}"
            )));
        }
        if min_poly.len() < 2 {
            return Err(Error::InvalidField("minimal polynomial must have degree >= 1".into()));
        }
        for c in &min_poly {
            base.check(c)?;
        }
        if !base.is_one(min_poly.last().unwrap()) {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        let degree = min_poly.len() - 1;
        let provisional = Field(Arc::new(FieldKind::Extension(Extension {
            name: name.to_string(),
            base: base.clone(),
            min_poly: min_poly.clone(),
            certificate: Irreducibility::Trusted,
            abs_degree: degree * base.abs_degree(),
            depth: base.depth() + 1,
        })));
        let certificate = irreducible::certify_field(&provisional);
        Ok(Field(Arc::new(FieldKind::Extension(Extension {
            name: name.to_string(),
            base: base.clone(),
            min_poly,
            certificate,
            abs_degree: degree * base.abs_degree(),
            depth: base.depth() + 1,
        }))))
    }

    /// Simple extension of `Q` from integer coefficients, ascending and monic.
    pub fn over_q(name: &str, min_poly: &[i64]) -> Result<Field> {
        let coeffs = min_poly.iter().map(|&c| Value::Rat(Rational::from_integer(c.into()))).collect();
        Field::extension(name, &Field::rationals(), coeffs)
    }

    fn ext(&self) -> Option<&Extension> {
        match &*self.0 {
            FieldKind::Rationals => None,
            FieldKind::Extension(e) => Some(e),
        }
    }

    pub fn is_rationals(&self) -> bool {
        self.ext().is_none()
    }

    pub fn name(&self) -> &str {
        self.ext().map_or("Q", |e| e.name.as_str())
    }

    pub fn base(&self) -> Option<&Field> {
        self.ext().map(|e| &e.base)
    }

    /// Degree over the immediate base field.
    pub fn degree(&self) -> usize {
        self.ext().map_or(1, |e| e.min_poly.len() - 1)
    }

    pub fn abs_degree(&self) -> usize {
        self.ext().map_or(1, |e| e.abs_degree)
    }

    pub fn depth(&self) -> usize {
        self.ext().map_or(0, |e| e.depth)
    }

    pub fn certificate(&self) -> Irreducibility {
        self.ext().map_or(Irreducibility::Trivial, |e| e.certificate)
    }

    pub fn is_trusted(&self) -> bool {
        self.certificate() == Irreducibility::Trusted
    }

    /// Defining polynomial over the base field.
    pub fn min_poly(&self) -> Option<Polynomial> {
        self.ext()
            .map(|e| Polynomial::from_values(e.base.clone(), e.min_poly.clone()))
    }

    pub fn min_poly_values(&self) -> Option<&[Value]> {
        self.ext().map(|e| e.min_poly.as_slice())
    }

    /// Fields from `Q` up to and including `self`.
    pub fn tower(&self) -> Vec<Field> {
        let mut out = vec![self.clone()];
        let mut cur = self.clone();
        while let Some(b) = cur.base().cloned() {
            out.push(b.clone());
            cur = b;
        }
        out.reverse();
        out
    }

    fn tower_names(&self) -> Vec<String> {
        self.tower().iter().map(|f| f.name().to_string()).collect()
    }

    /// Whether `sub` occurs in the tower below (or equal to) `self`.
    pub fn contains(&self, sub: &Field) -> bool {
        self.tower().iter().any(|f| f == sub)
    }

    pub fn generator(&self) -> Option<NFElement> {
        let e = self.ext()?;
        let mut v = vec![e.base.zero(); self.degree()];
        if self.degree() > 1 {
            v[1] = e.base.one();
        } else {
            // degree-one extension: the generator is the root of y - c
            v[0] = e.base.neg(&e.min_poly[0]);
        }
        Some(NFElement { field: self.clone(), value: Value::Vec(v) })
    }

    // ---- value arithmetic -------------------------------------------------

    pub fn zero(&self) -> Value {
        match self.ext() {
            None => Value::Rat(Rational::zero()),
            Some(e) => Value::Vec(vec![e.base.zero(); self.degree()]),
        }
    }

    pub fn one(&self) -> Value {
        self.from_rational(&Rational::one())
    }

    pub fn from_rational(&self, r: &Rational) -> Value {
        match self.ext() {
            None => Value::Rat(r.clone()),
            Some(e) => {
                let mut v = vec![e.base.zero(); self.degree()];
                v[0] = e.base.from_rational(r);
                Value::Vec(v)
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Value {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self, a: &Value) -> bool {
        match (self.ext(), a) {
            (None, Value::Rat(r)) => r.is_zero(),
            (Some(e), Value::Vec(v)) => v.iter().all(|c| e.base.is_zero(c)),
            _ => false,
        }
    }

    pub fn is_one(&self, a: &Value) -> bool {
        *a == self.one()
    }

    /// Checks that `a` has the shape of an element of this field.
    pub fn check(&self, a: &Value) -> Result<()> {
        match (self.ext(), a) {
            (None, Value::Rat(_)) => Ok(()),
            (Some(e), Value::Vec(v)) if v.len() == self.degree() => {
                v.iter().try_for_each(|c| e.base.check(c))
            }
            _ => Err(Error::InvalidElement(format!(
                "value does not have the shape of an element of {}",
                self.name()
            ))),
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self.ext(), a, b) {
            (None, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (Some(e), Value::Vec(x), Value::Vec(y)) => {
                Value::Vec(x.iter().zip(y).map(|(p, q)| e.base.add(p, q)).collect())
            }
            _ => panic!("add: value shape does not match field {}", self.name()),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self.ext(), a) {
            (None, Value::Rat(x)) => Value::Rat(-x),
            (Some(e), Value::Vec(x)) => Value::Vec(x.iter().map(|p| e.base.neg(p)).collect()),
            _ => panic!("neg: value shape does not match field {}", self.name()),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        match (self.ext(), a, b) {
            (None, Value::Rat(x), Value::Rat(y)) => Value::Rat(x - y),
            (Some(e), Value::Vec(x), Value::Vec(y)) => {
                Value::Vec(x.iter().zip(y).map(|(p, q)| e.base.sub(p, q)).collect())
            }
            _ => panic!("sub: value shape does not match field {}", self.name()),
        }
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self.ext(), a, b) {
            (None, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (Some(e), Value::Vec(x), Value::Vec(y)) => Value::Vec(e.mul(x, y)),
            _ => panic!("mul: value shape does not match field {}", self.name()),
        }
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, a: &Value, r: &Rational) -> Value {
        match (self.ext(), a) {
            (None, Value::Rat(x)) => Value::Rat(x * r),
            (Some(e), Value::Vec(x)) => Value::Vec(x.iter().map(|c| e.base.scale(c, r)).collect()),
            _ => panic!("scale: value shape does not match field {}", self.name()),
        }
    }

    /// `None` for zero, and for zero divisors when the defining polynomial
    /// turns out to be reducible.
    pub fn inv(&self, a: &Value) -> Option<Value> {
        match (self.ext(), a) {
            (None, Value::Rat(x)) => (!x.is_zero()).then(|| Value::Rat(x.recip())),
            (Some(e), Value::Vec(x)) => e.inv(x).map(Value::Vec),
            _ => None,
        }
    }

    pub fn div(&self, a: &Value, b: &Value) -> Option<Value> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Value, mut exp: u64) -> Value {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power, inverting for negative exponents.
    pub fn pow_signed(&self, a: &Value, exp: i64) -> Option<Value> {
        if exp >= 0 {
            Some(self.pow(a, exp as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, exp.unsigned_abs()))
        }
    }

    /// Coordinates over `Q` in the tower power basis: index `i * e_base + j`
    /// holds the coefficient of `gen^i * b_j`.
    pub fn flatten(&self, a: &Value) -> Vec<Rational> {
        match a {
            Value::Rat(r) => vec![r.clone()],
            Value::Vec(v) => {
                let base = self.base().expect("vector value in Q");
                v.iter().flat_map(|c| base.flatten(c)).collect()
            }
        }
    }

    pub fn unflatten(&self, coords: &[Rational]) -> Value {
        assert_eq!(coords.len(), self.abs_degree(), "coordinate count");
        match self.ext() {
            None => Value::Rat(coords[0].clone()),
            Some(e) => {
                let chunk = e.base.abs_degree();
                Value::Vec(coords.chunks(chunk).map(|c| e.base.unflatten(c)).collect())
            }
        }
    }

    /// Canonical image of an element of a field lower in the tower.
    pub fn lift_from(&self, sub: &Field, a: &Value) -> Option<Value> {
        if self == sub {
            return Some(a.clone());
        }
        if sub.is_rationals() {
            return a.as_rational().map(|r| self.from_rational(r));
        }
        let e = self.ext()?;
        let inner = e.base.lift_from(sub, a)?;
        let mut v = vec![e.base.zero(); self.degree()];
        v[0] = inner;
        Some(Value::Vec(v))
    }

    /// The value as an element of `Q`, if it lies there.
    pub fn to_rational(&self, a: &Value) -> Option<Rational> {
        match (self.ext(), a) {
            (None, Value::Rat(r)) => Some(r.clone()),
            (Some(e), Value::Vec(v)) => {
                if v[1..].iter().all(|c| e.base.is_zero(c)) {
                    e.base.to_rational(&v[0])
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Human-readable rendering such as `1 + 2*i`.
    pub fn format_value(&self, a: &Value) -> String {
        match (self.ext(), a) {
            (None, Value::Rat(r)) => format_rational(r),
            (Some(e), Value::Vec(v)) => {
                let mut terms: Vec<String> = Vec::new();
                for (k, c) in v.iter().enumerate() {
                    if e.base.is_zero(c) {
                        continue;
                    }
                    let cs = e.base.format_value(c);
                    let compound = e.base.is_compound(c);
                    let monomial = match k {
                        0 => String::new(),
                        1 => e.name.clone(),
                        _ => format!("{}^{}", e.name, k),
                    };
                    let term = if k == 0 {
                        cs
                    } else if e.base.is_one(c) {
                        monomial
                    } else if compound {
                        format!("({cs})*{monomial}")
                    } else {
                        format!("{cs}*{monomial}")
                    };
                    terms.push(term);
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    join_terms(&terms)
                }
            }
            _ => "<invalid>".into(),
        }
    }

    /// Whether the rendering needs parentheses when used as a factor.
    pub fn is_compound(&self, a: &Value) -> bool {
        match (self.ext(), a) {
            (None, Value::Rat(_)) => false,
            (Some(e), Value::Vec(v)) => {
                let nz: Vec<_> = v.iter().filter(|c| !e.base.is_zero(c)).collect();
                nz.len() > 1 || nz.iter().any(|c| e.base.is_compound(c))
            }
            _ => false,
        }
    }

    /// Encoded height: the largest bit length among numerators and
    /// denominators of the `Q`-coordinates.
    pub fn height_bits(&self, a: &Value) -> u64 {
        self.flatten(a)
            .iter()
            .map(|r| r.numer().bits().max(r.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl Extension {
    fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    fn mul(&self, a: &[Value], b: &[Value]) -> Vec<Value> {
        let base = &self.base;
        let d = self.degree();
        let mut prod = vec![base.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if base.is_zero(y) {
                    continue;
                }
                prod[i + j] = base.add(&prod[i + j], &base.mul(x, y));
            }
        }
        for k in (d..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], base.zero());
            if base.is_zero(&c) {
                continue;
            }
            for i in 0..d {
                let t = base.mul(&c, &self.min_poly[i]);
                prod[k - d + i] = base.sub(&prod[k - d + i], &t);
            }
        }
        prod.truncate(d);
        prod
    }

    fn inv(&self, a: &[Value]) -> Option<Vec<Value>> {
        let base = &self.base;
        let a = poly::trimmed(base, a.to_vec());
        if a.is_empty() {
            return None;
        }
        let (g, s, _) = poly::xgcd(base, &a, &self.min_poly);
        if g.len() != 1 {
            return None;
        }
        let ginv = base.inv(&g[0])?;
        let mut out: Vec<Value> = s.iter().map(|c| base.mul(c, &ginv)).collect();
        out.resize(self.degree(), base.zero());
        Some(out)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (self.ext(), other.ext()) {
            (None, None) => true,
            (Some(a), Some(b)) => a.name == b.name && a.base == b.base && a.min_poly == b.min_poly,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ext() {
            None => write!(f, "Q"),
            Some(e) => {
                let mp = Polynomial::from_values(e.base.clone(), e.min_poly.clone());
                write!(f, "{}[{}]/({})", e.base.name(), e.name, mp.display_in(&e.name))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// An element together with the field it lives in.
#[derive(Clone, PartialEq, Eq)]
pub struct NFElement {
    field: Field,
    value: Value,
}

impl NFElement {
    pub fn new(field: Field, value: Value) -> Result<Self> {
        field.check(&value)?;
        Ok(NFElement { field, value })
    }

    pub(crate) fn from_parts(field: Field, value: Value) -> Self {
        NFElement { field, value }
    }

    pub fn from_rational(field: &Field, r: &Rational) -> Self {
        NFElement { field: field.clone(), value: field.from_rational(r) }
    }

    pub fn from_int(field: &Field, n: i64) -> Self {
        NFElement { field: field.clone(), value: field.from_int(n) }
    }

    /// `a + b * gen` in a field of relative degree >= 2 over its base, with
    /// `a, b` rational.
    pub fn linear(field: &Field, a: Rational, b: Rational) -> Result<Self> {
        let g = field
            .generator()
            .ok_or_else(|| Error::InvalidElement("Q has no generator".into()))?;
        let v = field.add(&field.from_rational(&a), &field.scale(&g.value, &b));
        Ok(NFElement { field: field.clone(), value: v })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.value)
    }

    fn same_field(&self, other: &NFElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field.name(),
                other.field.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &NFElement) -> Result<NFElement> {
        self.same_field(other)?;
        Ok(NFElement::from_parts(self.field.clone(), self.field.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &NFElement) -> Result<NFElement> {
        self.same_field(other)?;
        Ok(NFElement::from_parts(self.field.clone(), self.field.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &NFElement) -> Result<NFElement> {
        self.same_field(other)?;
        Ok(NFElement::from_parts(self.field.clone(), self.field.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> NFElement {
        NFElement::from_parts(self.field.clone(), self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Option<NFElement> {
        self.field
            .inv(&self.value)
            .map(|v| NFElement::from_parts(self.field.clone(), v))
    }

    pub fn pow(&self, exp: u64) -> NFElement {
        NFElement::from_parts(self.field.clone(), self.field.pow(&self.value, exp))
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.field.to_rational(&self.value)
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_value(&self.value))
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field.name())
    }
}

// ---- rationals ------------------------------------------------------------

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"num"` or `"num/den"` in lowest terms.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"num"` or `"num/den"`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidElement(format!("malformed rational {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> Field {
        Field::over_q("i", &[1, 0, 1]).unwrap()
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = qi();
        let a = NFElement::linear(&k, int(1), int(2)).unwrap();
        let b = NFElement::linear(&k, int(1), int(-2)).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_rational(), Some(int(5)));
        let ai = a.inv().unwrap();
        assert!(a.mul(&ai).unwrap().is_one());
        assert_eq!(a.to_string(), "1 + 2*i");
        assert_eq!(b.to_string(), "1 - 2*i");
    }

    #[test]
    fn tower_of_depth_two() {
        let k = qi();
        let two = k.from_int(-2);
        let l = Field::extension("w", &k, vec![two, k.zero(), k.one()]).unwrap();
        assert_eq!(l.abs_degree(), 4);
        assert_eq!(l.depth(), 2);
        let w = l.generator().unwrap();
        assert_eq!(w.pow(2).to_rational(), Some(int(2)));
        assert!(!l.is_trusted());
        let i_in_l = l.lift_from(&k, k.generator().unwrap().value()).unwrap();
        assert_eq!(l.mul(&i_in_l, &i_in_l), l.from_int(-1));
        // a third level is rejected
        let err = Field::extension("z", &l, vec![l.from_int(-3), l.zero(), l.one()]);
        assert!(matches!(err, Err(Error::InvalidField(_))));
    }

    #[test]
    fn rejects_non_monic_and_reserved_names() {
        let q = Field::rationals();
        assert!(Field::extension("Q", &q, vec![Value::Rat(int(1)), Value::Rat(int(1))]).is_err());
        assert!(Field::over_q("u", &[1, 0, 2]).is_err());
        assert!(Field::over_q("u", &[5]).is_err());
    }

    #[test]
    fn reducible_polynomial_is_trusted() {
        // u^2 - 1 = (u - 1)(u + 1) is reducible modulo every prime
        let k = Field::over_q("u", &[-1, 0, 1]).unwrap();
        assert!(k.is_trusted());
        let u = k.generator().unwrap();
        let zero_divisor = u.sub(&NFElement::from_int(&k, 1)).unwrap();
        assert!(zero_divisor.inv().is_none());
    }

    #[test]
    fn rational_parsing_is_canonical() {
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-10/5").unwrap()), "-2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn flatten_roundtrip() {
        let k = qi();
        let l = Field::extension("w", &k, vec![k.from_int(-2), k.zero(), k.one()]).unwrap();
        let coords: Vec<Rational> = (1..=4).map(int).collect();
        let v = l.unflatten(&coords);
        assert_eq!(l.flatten(&v), coords);
    }
}
