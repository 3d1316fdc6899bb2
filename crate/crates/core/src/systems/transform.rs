use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use super::compat::normalize_to_level;
use super::{Entry, FrobSample, Place, RepSheet, System};
use crate::error::{Error, Result};
use crate::frobpoly::{
    dual_charpoly, hom_charpoly, power_charpoly, sum_charpoly, tensor_charpoly, CharPoly,
};
use crate::numfield::{embed_poly, norm_poly, Embedding, Polynomial};

pub const DEFAULT_LEVEL_CAP: u64 = 120;

/// The sample at the degree-`k` extension of the residue field: same `n`,
/// polynomial raised to the `k`-th power of its roots.
pub fn base_change_sample(s: &FrobSample, k: u32) -> Result<FrobSample> {
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    if k == 1 {
        return Ok(s.clone());
    }
    let pl = s.place();
    let f = pl
        .f()
        .checked_mul(k)
        .ok_or_else(|| Error::InvalidPlace(format!("{}: residue degree overflows", pl.label())))?;
    let place = Place::new(format!("{}^{}", pl.label(), k), pl.p(), f)?;
    FrobSample::new(place, s.n(), power_charpoly(s.poly(), u64::from(k))?)
}

/// Restriction of scalars along `E ⊃ E'`, where `presentation` is the
/// minimal polynomial of `E` over `E'`. Sheets are grouped by their `over`
/// label; each group becomes one sheet named by that label.
pub fn restrict_system(sys: &System, presentation: &Polynomial, level_cap: u64) -> Result<System> {
    let field = sys.field();
    let sub = presentation.field();
    if field.base() != Some(sub) || field.min_poly().as_ref() != Some(presentation) {
        return Err(Error::FieldMismatch(format!(
            "presentation does not define {} over {}",
            field.name(),
            sub.name()
        )));
    }
    let mut groups: BTreeMap<&str, Vec<&RepSheet>> = BTreeMap::new();
    let mut order = Vec::new();
    for s in sys.sheets() {
        let over = s.over().ok_or_else(|| {
            Error::Grouping(format!("sheet {} has no over label", s.lambda()))
        })?;
        if !groups.contains_key(over) {
            order.push(over);
        }
        groups.entry(over).or_default().push(s);
    }
    let size = groups[order[0]].len();
    if groups.values().any(|g| g.len() != size) {
        return Err(Error::Grouping("groups under over labels differ in size".into()));
    }
    let dim = sys.dim() * field.degree() * size;

    let mut sheets = Vec::new();
    for over in order {
        let group = &groups[over];
        let ell = group[0].ell();
        if group.iter().any(|s| s.ell() != ell) {
            return Err(Error::Grouping(format!(
                "sheets grouped under {over} have different residue characteristics"
            )));
        }
        let labels: BTreeSet<&str> = group[0].entries.keys().map(String::as_str).collect();
        for s in &group[1..] {
            let other: BTreeSet<&str> = s.entries.keys().map(String::as_str).collect();
            if other != labels {
                return Err(Error::Grouping(format!(
                    "sheets {} and {} have different place sets",
                    group[0].lambda(),
                    s.lambda()
                )));
            }
        }
        let mut out = RepSheet::new(sub, over, ell, None, dim)?;
        for label in labels {
            let entries: Vec<&Entry> = group.iter().map(|s| s.entry(label).unwrap()).collect();
            out.insert(restrict_entry(&entries, presentation, dim, level_cap)?)?;
        }
        sheets.push(out);
    }
    System::new(sheets)
}

fn restrict_entry(
    entries: &[&Entry],
    presentation: &Polynomial,
    dim: usize,
    level_cap: u64,
) -> Result<Entry> {
    let place = entries[0].place().clone();
    if entries.iter().any(|e| matches!(e, Entry::Ramified(_))) {
        return Ok(Entry::Ramified(place));
    }
    let samples: Vec<&FrobSample> = entries.iter().filter_map(|e| e.sample()).collect();
    if samples.len() < entries.len() {
        return note_entry(entries, place, presentation, dim);
    }
    let level = samples.iter().fold(1u64, |acc, s| acc.lcm(&s.n()));
    if level > level_cap {
        return Err(Error::NoCommonLevel { place: place.label().to_string(), cap: level_cap });
    }
    let sub = presentation.field();
    let mut prod = Polynomial::one(sub);
    for s in samples {
        let at_level = normalize_to_level(s, level)?;
        prod = prod.mul(&norm_poly(at_level.poly(), presentation)?)?;
    }
    Ok(Entry::Unramified(FrobSample::new(place, level, CharPoly::new(prod)?)?))
}

/// A note recorded at an unknown place is the charpoly after restriction to
/// its own field; restricting a lone sheet to exactly that field recovers a
/// sample.
fn note_entry(entries: &[&Entry], place: Place, presentation: &Polynomial, dim: usize) -> Result<Entry> {
    let note = match entries {
        [Entry::Unknown { note: Some(n), .. }] => n,
        _ => return Ok(Entry::unknown(place)),
    };
    if note.field() == presentation.field() && note.degree() == dim {
        return Ok(Entry::Unramified(FrobSample::new(place, 1, note.clone())?));
    }
    Ok(Entry::Unknown { place, note: Some(note.clone()) })
}

/// Extension of scalars along `phi`. `fiber` lists `(new label, old label)`
/// pairs; the new sheet `λ̃` copies the sheet `λ` it lies over.
pub fn extend_system(sys: &System, phi: &Embedding, fiber: &[(String, String)]) -> Result<System> {
    if phi.source() != sys.field() {
        return Err(Error::FieldMismatch(format!(
            "embedding of {} applied to a system over {}",
            phi.source().name(),
            sys.field().name()
        )));
    }
    if fiber.is_empty() {
        return Err(Error::LabelMismatch("empty fiber map".into()));
    }
    let mut sheets = Vec::new();
    for (new, old) in fiber {
        let src = sys
            .sheet(old)
            .ok_or_else(|| Error::LabelMismatch(format!("fiber refers to unknown sheet {old}")))?;
        let mut out =
            RepSheet::new(phi.target(), new.clone(), src.ell(), Some(old.clone()), src.dim())?;
        for e in src.entries.values() {
            let e = match e {
                Entry::Unramified(s) => {
                    let poly = CharPoly::new(embed_poly(s.poly().poly(), phi)?)?;
                    Entry::Unramified(FrobSample::new(s.place().clone(), s.n(), poly)?)
                }
                other => other.clone(),
            };
            out.insert(e)?;
        }
        sheets.push(out);
    }
    System::new(sheets)
}

/// Each sheet over itself.
pub fn identity_fiber(sys: &System) -> Vec<(String, String)> {
    sys.sheets().iter().map(|s| (s.lambda().to_string(), s.lambda().to_string())).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Dual,
    Sum,
    Tensor,
    Hom,
}

impl CombineOp {
    pub fn is_unary(self) -> bool {
        self == CombineOp::Dual
    }

    pub fn name(self) -> &'static str {
        match self {
            CombineOp::Dual => "dual",
            CombineOp::Sum => "sum",
            CombineOp::Tensor => "tensor",
            CombineOp::Hom => "hom",
        }
    }

    fn dim(self, d: usize, e: usize) -> usize {
        match self {
            CombineOp::Dual => d,
            CombineOp::Sum => d + e,
            CombineOp::Tensor | CombineOp::Hom => d * e,
        }
    }

    fn apply(self, p: &CharPoly, q: &CharPoly) -> Result<CharPoly> {
        match self {
            CombineOp::Dual => Ok(dual_charpoly(p)),
            CombineOp::Sum => sum_charpoly(p, q),
            CombineOp::Tensor => tensor_charpoly(p, q),
            CombineOp::Hom => hom_charpoly(p, q),
        }
    }
}

impl std::str::FromStr for CombineOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dual" => Ok(CombineOp::Dual),
            "sum" => Ok(CombineOp::Sum),
            "tensor" => Ok(CombineOp::Tensor),
            "hom" => Ok(CombineOp::Hom),
            _ => Err(Error::InvalidArgument(format!("unknown operation {s}"))),
        }
    }
}

/// Placewise combination. `Dual` takes no second system; the binary
/// operations need one with the same field and sheet labels.
pub fn combine_systems(op: CombineOp, a: &System, b: Option<&System>) -> Result<System> {
    match (op.is_unary(), b) {
        (true, None) => dual_system(a),
        (true, Some(_)) => Err(Error::InvalidArgument("dual takes one system".into())),
        (false, None) => Err(Error::InvalidArgument(format!("{} takes two systems", op.name()))),
        (false, Some(b)) => binary_system(op, a, b),
    }
}

fn dual_system(sys: &System) -> Result<System> {
    let mut sheets = Vec::new();
    for s in sys.sheets() {
        let mut out = RepSheet::new(s.field(), s.lambda(), s.ell(), s.over.clone(), s.dim())?;
        for e in s.entries.values() {
            out.insert(match e {
                Entry::Unramified(x) => Entry::Unramified(FrobSample::new(
                    x.place().clone(),
                    x.n(),
                    dual_charpoly(x.poly()),
                )?),
                Entry::Ramified(p) => Entry::Ramified(p.clone()),
                Entry::Unknown { place, note } => Entry::Unknown {
                    place: place.clone(),
                    note: note.as_ref().map(dual_charpoly),
                },
            })?;
        }
        sheets.push(out);
    }
    System::new(sheets)
}

fn binary_system(op: CombineOp, a: &System, b: &System) -> Result<System> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(format!(
            "systems over {} and {}",
            a.field().name(),
            b.field().name()
        )));
    }
    let la: BTreeSet<&str> = a.sheets().iter().map(|s| s.lambda()).collect();
    let lb: BTreeSet<&str> = b.sheets().iter().map(|s| s.lambda()).collect();
    if la != lb {
        return Err(Error::LabelMismatch("systems have different sheet labels".into()));
    }
    let dim = op.dim(a.dim(), b.dim());
    let mut sheets = Vec::new();
    for sa in a.sheets() {
        let sb = b.sheet(sa.lambda()).unwrap();
        if sa.ell() != sb.ell() {
            return Err(Error::LabelMismatch(format!(
                "sheet {} has residue characteristic {} and {}",
                sa.lambda(),
                sa.ell(),
                sb.ell()
            )));
        }
        let mut out = RepSheet::new(a.field(), sa.lambda(), sa.ell(), sa.over.clone(), dim)?;
        let labels: BTreeSet<&String> = sa.entries.keys().chain(sb.entries.keys()).collect();
        for label in labels {
            let (ea, eb) = (sa.entry(label), sb.entry(label));
            let place = ea.or(eb).unwrap().place().clone();
            if let (Some(x), Some(y)) = (ea, eb) {
                let (px, py) = (x.place(), y.place());
                if (px.p(), px.f()) != (py.p(), py.f()) {
                    return Err(Error::InvalidPlace(format!(
                        "place {label} has different residue data in the two systems"
                    )));
                }
            }
            let entry = match (ea, eb) {
                (Some(Entry::Ramified(_)), _) | (_, Some(Entry::Ramified(_))) => {
                    Entry::Ramified(place)
                }
                (Some(Entry::Unramified(x)), Some(Entry::Unramified(y))) => {
                    let level = x.n().lcm(&y.n());
                    let p = normalize_to_level(x, level)?;
                    let q = normalize_to_level(y, level)?;
                    Entry::Unramified(FrobSample::new(place, level, op.apply(&p, &q)?)?)
                }
                _ => Entry::unknown(place),
            };
            out.insert(entry)?;
        }
        sheets.push(out);
    }
    System::new(sheets)
}
