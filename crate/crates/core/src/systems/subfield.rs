use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RepSheet;
use crate::error::{Error, Result};
use crate::numfield::{minimal_polynomial, NFElement};

pub const DEFAULT_COMBINATIONS: usize = 8;

/// Lower bound for the degree of the field generated by Frobenius
/// coefficients, with the elements attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldBound {
    pub degree: usize,
    pub witnesses: Vec<NFElement>,
}

/// Degree over `Q` of the field generated by the coefficients of the selected
/// samples (all unramified samples when `selection` is `None`), probed through
/// single coefficients and `combinations` random small integer combinations.
pub fn coefficient_subfield_degree(
    sheet: &RepSheet,
    selection: Option<&[String]>,
    combinations: usize,
    seed: u64,
) -> Result<SubfieldBound> {
    let samples: Vec<_> = match selection {
        Some(labels) => labels
            .iter()
            .map(|l| {
                sheet.entry(l).and_then(|e| e.sample()).ok_or_else(|| Error::MissingEntry {
                    place: l.clone(),
                    reason: format!("no unramified sample in sheet {}", sheet.lambda()),
                })
            })
            .collect::<Result<_>>()?,
        None => sheet.entries().into_iter().filter_map(|e| e.sample()).collect(),
    };
    if samples.is_empty() {
        return Err(Error::InvalidArgument("empty sample selection".into()));
    }
    let field = sheet.field();
    let mut coeffs: Vec<NFElement> = Vec::new();
    for s in samples {
        for c in s.poly().lower_coeffs() {
            let e = NFElement::new(field.clone(), c.clone())?;
            if !coeffs.contains(&e) {
                coeffs.push(e);
            }
        }
    }
    let mut candidates = coeffs.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..combinations {
        let mut acc = NFElement::from_int(field, 0);
        for c in &coeffs {
            let k: i64 = rng.gen_range(-3..=3);
            acc = acc.add(&c.mul(&NFElement::from_int(field, k))?)?;
        }
        candidates.push(acc);
    }
    let mut best = SubfieldBound { degree: 0, witnesses: Vec::new() };
    for c in candidates {
        let d = minimal_polynomial(&c).degree().unwrap_or(1);
        if d > best.degree {
            best = SubfieldBound { degree: d, witnesses: vec![c] };
        } else if d == best.degree && !best.witnesses.contains(&c) {
            best.witnesses.push(c);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobpoly::CharPoly;
    use crate::numfield::{int, Field, Polynomial};
    use crate::systems::{Entry, FrobSample, Place};

    #[test]
    fn examples() {
        let k = Field::over_q("i", &[1, 0, 1]).unwrap();
        let mut s = RepSheet::new(&k, "l", 3, None, 2).unwrap();
        let p = Polynomial::from_ints(&[5, -2, 1]).lift_to(&k).unwrap();
        let sample = FrobSample::new(Place::prime(5).unwrap(), 1, CharPoly::new(p).unwrap());
        s.insert(Entry::Unramified(sample.unwrap())).unwrap();
        assert_eq!(coefficient_subfield_degree(&s, None, 8, 1).unwrap().degree, 1);

        let mut t = RepSheet::new(&k, "m", 3, None, 1).unwrap();
        let pi = NFElement::linear(&k, int(1), int(2)).unwrap();
        let sample = FrobSample::new(Place::prime(5).unwrap(), 1, CharPoly::linear(&pi).unwrap());
        t.insert(Entry::Unramified(sample.unwrap())).unwrap();
        let b = coefficient_subfield_degree(&t, None, 8, 1).unwrap();
        assert_eq!(b.degree, 2);
        assert!(b.witnesses.contains(&pi.neg()));

        let q = Field::rationals();
        let mut u = RepSheet::new(&q, "n", 3, None, 1).unwrap();
        let sample = FrobSample::new(Place::prime(5).unwrap(), 1, CharPoly::from_ints(&[-2, 1]).unwrap());
        u.insert(Entry::Unramified(sample.unwrap())).unwrap();
        assert_eq!(coefficient_subfield_degree(&u, Some(&["5".into()]), 8, 1).unwrap().degree, 1);
        assert!(coefficient_subfield_degree(&u, Some(&[]), 8, 1).is_err());
        assert!(coefficient_subfield_degree(&u, Some(&["7".into()]), 8, 1).is_err());
    }
}
