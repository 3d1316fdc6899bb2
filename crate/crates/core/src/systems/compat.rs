use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;

use super::{Entry, FrobSample, Place, RepSheet, System};
use crate::error::{Error, Result};
use crate::frobpoly::{power_charpoly, CharPoly};

pub const DEFAULT_N_MAX: u64 = 120;

/// Charpoly of `F_x^level` from a sample of `F_x^n`; `n` must divide `level`.
pub fn normalize_to_level(s: &FrobSample, level: u64) -> Result<CharPoly> {
    if level == 0 {
        return Err(Error::ZeroExponent);
    }
    if !level.is_multiple_of(s.n()) {
        return Err(Error::LevelNotMultiple { level, n: s.n() });
    }
    power_charpoly(s.poly(), level / s.n())
}

/// Least `N ≤ n_max`, a multiple of `lcm(n₁, n₂)`, at which the two samples
/// give the same charpoly of `F_x^N`.
pub fn witness_level(a: &FrobSample, b: &FrobSample, n_max: u64) -> Result<Option<u64>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!(
            "samples at {} over {} and {}",
            a.place().label(),
            a.field().name(),
            b.field().name()
        )));
    }
    if a.poly().degree() != b.poly().degree() {
        return Err(Error::DimensionMismatch(format!(
            "samples at {} of degrees {} and {}",
            a.place().label(),
            a.poly().degree(),
            b.poly().degree()
        )));
    }
    let step = a.n().lcm(&b.n());
    let mut level = step;
    while level <= n_max {
        if normalize_to_level(a, level)? == normalize_to_level(b, level)? {
            return Ok(Some(level));
        }
        level = match level.checked_add(step) {
            Some(l) => l,
            None => break,
        };
    }
    Ok(None)
}

fn unramified<'a>(sheet: &'a RepSheet, place: &str) -> Result<&'a FrobSample> {
    match sheet.entry(place) {
        Some(Entry::Unramified(s)) => Ok(s),
        Some(Entry::Ramified(_)) => Err(Error::MissingEntry {
            place: place.to_string(),
            reason: format!("ramified in sheet {}", sheet.lambda()),
        }),
        Some(Entry::Unknown { .. }) => Err(Error::MissingEntry {
            place: place.to_string(),
            reason: format!("unknown in sheet {}", sheet.lambda()),
        }),
        None => Err(Error::MissingEntry {
            place: place.to_string(),
            reason: format!("absent from sheet {}", sheet.lambda()),
        }),
    }
}

pub fn quasi_compatible_at(
    s1: &RepSheet,
    s2: &RepSheet,
    place: &str,
    n_max: u64,
) -> Result<Option<u64>> {
    witness_level(unramified(s1, place)?, unramified(s2, place)?, n_max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CompatibleAt(u64),
    IncompatibleUpTo(u64),
    ExcludedResidueCharClash,
    ExcludedRamified,
    ExcludedUnknown,
}

impl Verdict {
    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::IncompatibleUpTo(_))
    }

    pub fn is_excluded(&self) -> bool {
        matches!(
            self,
            Verdict::ExcludedResidueCharClash | Verdict::ExcludedRamified | Verdict::ExcludedUnknown
        )
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::CompatibleAt(_) => "compatible",
            Verdict::IncompatibleUpTo(_) => "incompatible",
            Verdict::ExcludedResidueCharClash => "excluded-residue-char",
            Verdict::ExcludedRamified => "excluded-ramified",
            Verdict::ExcludedUnknown => "excluded-unknown",
        }
    }

    pub fn level(&self) -> Option<u64> {
        match self {
            Verdict::CompatibleAt(n) | Verdict::IncompatibleUpTo(n) => Some(*n),
            _ => None,
        }
    }
}

/// One (sheet pair, place) verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub sheet_a: String,
    pub sheet_b: String,
    pub place: Place,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub n_max: u64,
    /// Residue characteristics whose places may fail without breaking plain
    /// quasi-compatibility: the complement of the open set `U`.
    pub exceptional_primes: BTreeSet<u64>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { n_max: DEFAULT_N_MAX, exceptional_primes: BTreeSet::new() }
    }
}

impl CheckOptions {
    pub fn with_n_max(n_max: u64) -> Self {
        CheckOptions { n_max, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub n_max: u64,
    pub exceptional_primes: BTreeSet<u64>,
    pub pairs: usize,
    pub cells: Vec<Cell>,
}

impl CompatReport {
    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.verdict.is_failure())
    }

    pub fn strong_quasi_compatible(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Every failure sits over an exceptional prime.
    pub fn plain_quasi_compatible(&self) -> bool {
        self.failures().all(|c| self.exceptional_primes.contains(&c.place.p()))
    }

    pub fn first_failure(&self) -> Option<&Cell> {
        self.failures().min_by(|a, b| a.place.sort_key().cmp(&b.place.sort_key()))
    }

    pub fn count(&self, pred: impl Fn(&Verdict) -> bool) -> usize {
        self.cells.iter().filter(|c| pred(&c.verdict)).count()
    }
}

fn verdict(a: &RepSheet, b: &RepSheet, place: &Place, n_max: u64) -> Result<Verdict> {
    if place.p() == a.ell() || place.p() == b.ell() {
        return Ok(Verdict::ExcludedResidueCharClash);
    }
    let ea = a.entry(place.label());
    let eb = b.entry(place.label());
    if matches!(ea, Some(Entry::Ramified(_))) || matches!(eb, Some(Entry::Ramified(_))) {
        return Ok(Verdict::ExcludedRamified);
    }
    match (ea, eb) {
        (Some(Entry::Unramified(sa)), Some(Entry::Unramified(sb))) => {
            Ok(match witness_level(sa, sb, n_max)? {
                Some(n) => Verdict::CompatibleAt(n),
                None => Verdict::IncompatibleUpTo(n_max),
            })
        }
        _ => Ok(Verdict::ExcludedUnknown),
    }
}

/// Verdicts for every unordered sheet pair at every place of the system.
/// Cells are ordered by pair (sheet order), then place.
pub fn check_system(sys: &System, opts: &CheckOptions) -> Result<CompatReport> {
    if opts.n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let places = sys.places();
    let sheets = sys.sheets();
    let mut jobs = Vec::new();
    for i in 0..sheets.len() {
        for j in i + 1..sheets.len() {
            for pl in &places {
                jobs.push((i, j, pl));
            }
        }
    }
    let cells = jobs
        .par_iter()
        .map(|&(i, j, pl)| {
            let (a, b) = (&sheets[i], &sheets[j]);
            Ok(Cell {
                sheet_a: a.lambda().to_string(),
                sheet_b: b.lambda().to_string(),
                place: pl.clone(),
                verdict: verdict(a, b, pl, opts.n_max)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = sheets.len();
    Ok(CompatReport {
        n_max: opts.n_max,
        exceptional_primes: opts.exceptional_primes.clone(),
        pairs: n * (n - 1) / 2,
        cells,
    })
}
