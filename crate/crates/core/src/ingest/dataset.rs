//! Line-delimited JSON datasets.
//!
//! ```text
//! {"kind":"field","name":"i","base":"Q","min_poly":["1","0","1"]}
//! {"kind":"sheet","label":"lambda3","field":"i","ell":3,"over":"ell3","dim":1}
//! {"kind":"sample","sheet":"lambda3","place":"5","p":5,"f":1,"q":5,"status":"unramified","n":1,"coeffs":[["-1","-2"]]}
//! ```
//!
//! Field minimal polynomials list every coefficient including the leading 1;
//! sample polynomials omit it. Rationals are strings in lowest terms and an
//! element of a relative extension is the array of its base-field
//! coordinates.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::frobpoly::CharPoly;
use crate::numfield::{format_rational, parse_rational, Field, Polynomial, Value};
use crate::systems::{Entry, FrobSample, Place, RepSheet, System};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Unramified,
    Ramified,
    Unknown,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum Record {
    Field {
        name: String,
        base: String,
        min_poly: Vec<Json>,
    },
    Sheet {
        label: String,
        field: String,
        ell: u64,
        #[serde(default)]
        over: Option<String>,
        dim: usize,
    },
    Sample {
        sheet: String,
        place: String,
        p: u64,
        f: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<u64>,
        status: Status,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coeffs: Option<Vec<Json>>,
        /// Charpoly over `Q` recorded at an unknown place.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<Vec<Json>>,
    },
}

pub fn encode_value(field: &Field, v: &Value) -> Json {
    match (v, field.base()) {
        (Value::Rat(r), _) => Json::String(format_rational(r)),
        (Value::Vec(cs), Some(base)) => Json::Array(cs.iter().map(|c| encode_value(base, c)).collect()),
        (Value::Vec(_), None) => unreachable!("vector value over Q"),
    }
}

pub fn decode_value(field: &Field, j: &Json) -> std::result::Result<Value, String> {
    match field.base() {
        None => match j {
            Json::String(s) => parse_rational(s).map(Value::Rat).map_err(|e| e.to_string()),
            Json::Number(n) if n.is_i64() => Ok(field.from_int(n.as_i64().unwrap())),
            _ => Err(format!("expected a rational string, found {j}")),
        },
        Some(base) => {
            let Json::Array(items) = j else {
                return Err(format!("expected an element of {}, found {j}", field.name()));
            };
            if items.len() != field.degree() {
                return Err(format!(
                    "element of {} needs {} coordinates, found {}",
                    field.name(),
                    field.degree(),
                    items.len()
                ));
            }
            let cs = items.iter().map(|c| decode_value(base, c)).collect::<std::result::Result<_, _>>()?;
            Ok(Value::Vec(cs))
        }
    }
}

fn encode_charpoly(p: &CharPoly) -> Vec<Json> {
    p.lower_coeffs().iter().map(|c| encode_value(p.field(), c)).collect()
}

fn decode_charpoly(field: &Field, coeffs: &[Json]) -> std::result::Result<CharPoly, String> {
    let mut values = coeffs.iter().map(|c| decode_value(field, c)).collect::<std::result::Result<Vec<_>, _>>()?;
    values.push(field.one());
    let poly = Polynomial::new(field.clone(), values).map_err(|e| e.to_string())?;
    CharPoly::new(poly).map_err(|e| e.to_string())
}

fn to_line(r: &Record) -> String {
    serde_json::to_string(r).expect("records serialize")
}

/// Canonical text of a system: its field tower, then each sheet followed by
/// its entries in place order.
pub fn dataset_to_string(sys: &System) -> String {
    let mut out = String::new();
    for f in sys.field().tower().iter().filter(|f| !f.is_rationals()) {
        let base = f.base().unwrap();
        let r = Record::Field {
            name: f.name().to_string(),
            base: base.name().to_string(),
            min_poly: f.min_poly_values().unwrap().iter().map(|c| encode_value(base, c)).collect(),
        };
        out.push_str(&to_line(&r));
        out.push('\n');
    }
    for s in sys.sheets() {
        let r = Record::Sheet {
            label: s.lambda().to_string(),
            field: s.field().name().to_string(),
            ell: s.ell(),
            over: s.over().map(str::to_string),
            dim: s.dim(),
        };
        out.push_str(&to_line(&r));
        out.push('\n');
        for e in s.entries() {
            let pl = e.place();
            let (status, n, coeffs, note) = match e {
                Entry::Unramified(x) => (Status::Unramified, Some(x.n()), Some(encode_charpoly(x.poly())), None),
                Entry::Ramified(_) => (Status::Ramified, None, None, None),
                Entry::Unknown { note, .. } => (Status::Unknown, None, None, note.as_ref().map(encode_charpoly)),
            };
            let r = Record::Sample {
                sheet: s.lambda().to_string(),
                place: pl.label().to_string(),
                p: pl.p(),
                f: pl.f(),
                q: Some(pl.q()),
                status,
                n,
                coeffs,
                note,
            };
            out.push_str(&to_line(&r));
            out.push('\n');
        }
    }
    out
}

pub fn dataset_from_str(text: &str) -> Result<System> {
    let mut fields: BTreeMap<String, Field> = BTreeMap::new();
    fields.insert("Q".into(), Field::rationals());
    let mut sheets: Vec<RepSheet> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let bad = |reason: String| Error::Dataset { line, reason };
        if raw.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(raw).map_err(|e| bad(e.to_string()))?;
        match rec {
            Record::Field { name, base, min_poly } => {
                if fields.contains_key(&name) {
                    return Err(bad(format!("field {name} declared twice")));
                }
                let base = fields.get(&base).ok_or_else(|| bad(format!("unknown base field {base}")))?;
                let values = min_poly.iter().map(|c| decode_value(base, c)).collect::<std::result::Result<Vec<_>, _>>();
                let f = Field::extension(&name, base, values.map_err(&bad)?).map_err(|e| bad(e.to_string()))?;
                fields.insert(name, f);
            }
            Record::Sheet { label, field, ell, over, dim } => {
                let f = fields.get(&field).ok_or_else(|| bad(format!("unknown field {field}")))?;
                if index.contains_key(&label) {
                    return Err(bad(format!("sheet {label} declared twice")));
                }
                let sheet = RepSheet::new(f, label.clone(), ell, over, dim).map_err(|e| bad(e.to_string()))?;
                index.insert(label, sheets.len());
                sheets.push(sheet);
            }
            Record::Sample { sheet, place, p, f, q, status, n, coeffs, note } => {
                let &k = index.get(&sheet).ok_or_else(|| bad(format!("unknown sheet {sheet}")))?;
                let pl = Place::new(place, p, f).map_err(|e| bad(e.to_string()))?;
                if let Some(q) = q {
                    if q != pl.q() {
                        return Err(bad(format!("q = {q} but {p}^{f} = {}", pl.q())));
                    }
                }
                let field = sheets[k].field().clone();
                let entry = match status {
                    Status::Unramified => {
                        if note.is_some() {
                            return Err(bad("note on an unramified sample".into()));
                        }
                        let n = n.ok_or_else(|| bad("unramified sample without n".into()))?;
                        let coeffs = coeffs.ok_or_else(|| bad("unramified sample without coeffs".into()))?;
                        let poly = decode_charpoly(&field, &coeffs).map_err(&bad)?;
                        Entry::Unramified(FrobSample::new(pl, n, poly).map_err(|e| bad(e.to_string()))?)
                    }
                    Status::Ramified | Status::Unknown => {
                        if n.is_some() || coeffs.is_some() {
                            return Err(bad(format!("{status:?} entry carries a sample").to_lowercase()));
                        }
                        if status == Status::Ramified {
                            if note.is_some() {
                                return Err(bad("note on a ramified entry".into()));
                            }
                            Entry::Ramified(pl)
                        } else {
                            let note = note
                                .map(|c| decode_charpoly(&Field::rationals(), &c))
                                .transpose()
                                .map_err(&bad)?;
                            Entry::Unknown { place: pl, note }
                        }
                    }
                };
                sheets[k].insert(entry).map_err(|e| bad(e.to_string()))?;
            }
        }
    }
    System::new(sheets)
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<System> {
    let text = std::fs::read_to_string(path)?;
    dataset_from_str(&text)
}

pub fn store_dataset(sys: &System, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, dataset_to_string(sys))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{build_cm_system, build_curve_system, CmConfig, CurveConfig};

    #[test]
    fn round_trip_cm_fixture() {
        let k = Field::over_q("i", &[1, 0, 1]).unwrap();
        let sys = build_cm_system(&k, &CmConfig::new(1, 0, 60)).unwrap();
        let text = dataset_to_string(&sys);
        let back = dataset_from_str(&text).unwrap();
        assert_eq!(back, sys);
        assert_eq!(dataset_to_string(&back), text);
        assert!(text.starts_with(r#"{"kind":"field","name":"i","base":"Q","min_poly":["1","0","1"]}"#));
        assert!(text.contains(r#""coeffs":[["-1","-2"]]"#));
    }

    #[test]
    fn round_trip_tower() {
        let k = Field::over_q("i", &[1, 0, 1]).unwrap();
        let l = Field::extension("r", &k, vec![k.from_int(-2), k.zero(), k.one()]).unwrap();
        let mut s = RepSheet::new(&l, "x", 5, None, 1).unwrap();
        let g = l.generator().unwrap();
        let sample = FrobSample::new(Place::new("7", 7, 1).unwrap(), 3, CharPoly::linear(&g).unwrap());
        s.insert(Entry::Unramified(sample.unwrap())).unwrap();
        s.insert(Entry::Ramified(Place::prime(11).unwrap())).unwrap();
        let sys = System::new(vec![s]).unwrap();
        let text = dataset_to_string(&sys);
        assert_eq!(dataset_from_str(&text).unwrap(), sys);
    }

    #[test]
    fn curve_round_trip() {
        let mut cfg = CurveConfig::new(1, 0, 40);
        cfg.ext_degrees = vec![2, 3];
        let sys = build_curve_system(&cfg).unwrap();
        let text = dataset_to_string(&sys);
        assert_eq!(dataset_to_string(&dataset_from_str(&text).unwrap()), text);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(dataset_from_str(""), Err(Error::EmptySystem));
        let sheet = r#"{"kind":"sheet","label":"a","field":"Q","ell":3,"over":null,"dim":2}"#;
        let bad_q = format!(
            "{sheet}\n{}",
            r#"{"kind":"sample","sheet":"a","place":"5","p":5,"f":2,"q":5,"status":"unramified","n":1,"coeffs":["5","-2"]}"#
        );
        assert!(matches!(dataset_from_str(&bad_q), Err(Error::Dataset { line: 2, .. })));
        let unknown_field = r#"{"kind":"sheet","label":"a","field":"K","ell":3,"dim":2}"#;
        assert!(matches!(dataset_from_str(unknown_field), Err(Error::Dataset { line: 1, .. })));
        let junk = format!("{sheet}\n\nnot json");
        assert!(matches!(dataset_from_str(&junk), Err(Error::Dataset { line: 3, .. })));
        let degree = format!(
            "{sheet}\n{}",
            r#"{"kind":"sample","sheet":"a","place":"5","p":5,"f":1,"status":"unramified","n":1,"coeffs":["5"]}"#
        );
        assert!(matches!(dataset_from_str(&degree), Err(Error::Dataset { line: 2, .. })));
        let extra = r#"{"kind":"sheet","label":"a","field":"Q","ell":3,"dim":2,"colour":1}"#;
        assert!(matches!(dataset_from_str(extra), Err(Error::Dataset { line: 1, .. })));
    }
}
