//! Places, Frobenius samples, λ-adic sheets and systems of them.
//!
//! A [`System`] is the data-scale shadow of a system of Galois
//! representations `(E, Λ, (ρ_λ))`: for each λ a [`RepSheet`] records, per
//! closed point `x`, the characteristic polynomial of some power `F_x^n`, or
//! that `ρ_λ` is ramified at `x`, or that nothing is known.

mod compat;
mod subfield;
mod transform;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::frobpoly::CharPoly;
use crate::numfield::Field;

pub use compat::{
    check_system, normalize_to_level, quasi_compatible_at, witness_level, Cell, CheckOptions,
    CompatReport, Verdict, DEFAULT_N_MAX,
};
pub use subfield::{coefficient_subfield_degree, SubfieldBound, DEFAULT_COMBINATIONS};
pub use transform::{
    base_change_sample, combine_systems, extend_system, identity_fiber, restrict_system, CombineOp,
    DEFAULT_LEVEL_CAP,
};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A closed point with residue field `F_q`, `q = p^f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Place {
    label: String,
    p: u64,
    f: u32,
    q: u64,
}

impl Place {
    pub fn new(label: impl Into<String>, p: u64, f: u32) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::InvalidPlace("empty label".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidPlace(format!("{label}: residue characteristic {p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidPlace(format!("{label}: residue degree must be positive")));
        }
        let q = p
            .checked_pow(f)
            .ok_or_else(|| Error::InvalidPlace(format!("{label}: {p}^{f} overflows")))?;
        Ok(Place { label, p, f, q })
    }

    /// The degree-one place over `p`, labelled by `p` itself.
    pub fn prime(p: u64) -> Result<Self> {
        Place::new(p.to_string(), p, 1)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Sort key: residue characteristic, then degree, then label.
    pub fn sort_key(&self) -> (u64, u32, &str) {
        (self.p, self.f, &self.label)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (q={})", self.label, self.q)
    }
}

/// "The characteristic polynomial of `F_x^n` is `poly`."
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobSample {
    place: Place,
    n: u64,
    poly: CharPoly,
}

impl FrobSample {
    pub fn new(place: Place, n: u64, poly: CharPoly) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(FrobSample { place, n, poly })
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn poly(&self) -> &CharPoly {
        &self.poly
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }
}

/// State of one sheet at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Unramified(FrobSample),
    Ramified(Place),
    /// `note` optionally carries the charpoly of the representation restricted
    /// to a smaller coefficient field (e.g. the `Q`-level Weil polynomial at a
    /// place where a CM splitting was not possible).
    Unknown { place: Place, note: Option<CharPoly> },
}

impl Entry {
    pub fn place(&self) -> &Place {
        match self {
            Entry::Unramified(s) => s.place(),
            Entry::Ramified(p) => p,
            Entry::Unknown { place, .. } => place,
        }
    }

    pub fn sample(&self) -> Option<&FrobSample> {
        match self {
            Entry::Unramified(s) => Some(s),
            _ => None,
        }
    }

    pub fn unknown(place: Place) -> Entry {
        Entry::Unknown { place, note: None }
    }
}

/// The data of one λ-adic representation `ρ_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSheet {
    field: Field,
    lambda: String,
    ell: u64,
    over: Option<String>,
    dim: usize,
    entries: BTreeMap<String, Entry>,
}

impl RepSheet {
    pub fn new(
        field: &Field,
        lambda: impl Into<String>,
        ell: u64,
        over: Option<String>,
        dim: usize,
    ) -> Result<Self> {
        let lambda = lambda.into();
        if lambda.is_empty() {
            return Err(Error::InvalidArgument("empty sheet label".into()));
        }
        if !is_prime(ell) {
            return Err(Error::InvalidArgument(format!(
                "sheet {lambda}: residue characteristic {ell} is not prime"
            )));
        }
        if dim == 0 {
            return Err(Error::DimensionMismatch(format!("sheet {lambda}: dimension 0")));
        }
        Ok(RepSheet { field: field.clone(), lambda, ell, over, dim, entries: BTreeMap::new() })
    }

    pub fn insert(&mut self, entry: Entry) -> Result<()> {
        let label = entry.place().label().to_string();
        if let Entry::Unramified(s) = &entry {
            if s.field() != &self.field {
                return Err(Error::FieldMismatch(format!(
                    "sheet {} over {} given a sample over {}",
                    self.lambda,
                    self.field.name(),
                    s.field().name()
                )));
            }
            if s.poly().degree() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "sheet {} has dimension {} but the sample at {} has degree {}",
                    self.lambda,
                    self.dim,
                    label,
                    s.poly().degree()
                )));
            }
        }
        if self.entries.contains_key(&label) {
            return Err(Error::InvalidArgument(format!(
                "sheet {} already has an entry at {}",
                self.lambda, label
            )));
        }
        self.entries.insert(label, entry);
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lambda(&self) -> &str {
        &self.lambda
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn over(&self) -> Option<&str> {
        self.over.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, place: &str) -> Option<&Entry> {
        self.entries.get(place)
    }

    /// Entries ordered by place (residue characteristic, degree, label).
    pub fn entries(&self) -> Vec<&Entry> {
        let mut v: Vec<&Entry> = self.entries.values().collect();
        v.sort_by(|a, b| a.place().sort_key().cmp(&b.place().sort_key()));
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn with_label(mut self, lambda: impl Into<String>) -> Self {
        self.lambda = lambda.into();
        self
    }
}

/// A family of sheets over one coefficient field and of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    field: Field,
    dim: usize,
    sheets: Vec<RepSheet>,
}

impl System {
    pub fn new(sheets: Vec<RepSheet>) -> Result<Self> {
        let first = sheets.first().ok_or(Error::EmptySystem)?;
        let field = first.field.clone();
        let dim = first.dim;
        let mut places: BTreeMap<&str, &Place> = BTreeMap::new();
        for (i, s) in sheets.iter().enumerate() {
            if s.field != field {
                return Err(Error::FieldMismatch(format!(
                    "sheet {} is over {}, the system over {}",
                    s.lambda,
                    s.field.name(),
                    field.name()
                )));
            }
            if s.dim != dim {
                return Err(Error::DimensionMismatch(format!(
                    "sheet {} has dimension {}, expected {}",
                    s.lambda, s.dim, dim
                )));
            }
            if sheets[..i].iter().any(|t| t.lambda == s.lambda) {
                return Err(Error::LabelMismatch(format!("duplicate sheet label {}", s.lambda)));
            }
            for e in s.entries.values() {
                let pl = e.place();
                match places.get(pl.label()) {
                    Some(prev) if (prev.p, prev.f) != (pl.p, pl.f) => {
                        return Err(Error::InvalidPlace(format!(
                            "place {} has inconsistent residue data across sheets",
                            pl.label()
                        )))
                    }
                    _ => {
                        places.insert(pl.label(), pl);
                    }
                }
            }
        }
        Ok(System { field, dim, sheets })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sheets(&self) -> &[RepSheet] {
        &self.sheets
    }

    pub fn sheet(&self, lambda: &str) -> Option<&RepSheet> {
        self.sheets.iter().find(|s| s.lambda == lambda)
    }

    /// Every place occurring in any sheet, in place order.
    pub fn places(&self) -> Vec<Place> {
        let mut m: BTreeMap<&str, &Place> = BTreeMap::new();
        for s in &self.sheets {
            for e in s.entries.values() {
                m.entry(e.place().label()).or_insert(e.place());
            }
        }
        let mut v: Vec<Place> = m.into_values().cloned().collect();
        v.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        v
    }

    /// Sheets of both systems in one system (labels must be distinct).
    pub fn merge(&self, other: &System) -> Result<System> {
        let mut sheets = self.sheets.clone();
        sheets.extend(other.sheets.iter().cloned());
        System::new(sheets)
    }
}
