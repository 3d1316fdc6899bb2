use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::curve::{count_points, least_nonresidue, weil_poly, EllipticCurve};
use crate::error::{Error, Result};
use crate::frobpoly::CharPoly;
use crate::numfield::{norm_poly, Field, NFElement, Rational};
use crate::systems::{base_change_sample, is_prime, Entry, FrobSample, Place, RepSheet, System};

/// `d` for a field presented as `Q[u]/(u² + d)`, `d > 0`.
fn imaginary_quadratic_d(e: &Field) -> Result<BigInt> {
    let m = e.min_poly().ok_or(Error::InvalidField("Q is not imaginary quadratic".into()))?;
    let ok_shape = e.base().is_some_and(Field::is_rationals) && e.degree() == 2;
    let c = m.to_rationals().filter(|_| ok_shape);
    match c.as_deref() {
        Some([d, z, _]) if z.is_zero() && d.is_integer() && d.is_positive() => Ok(d.to_integer()),
        _ => Err(Error::InvalidField(format!("{} is not given by u^2 + d with d > 0", e.name()))),
    }
}

/// Roots `π, π̄ = (a ± c√−d)/2` of an ordinary Weil polynomial `t² − a t + p`
/// in `E = Q(√−d)`, when `4p − a² = d c²`.
pub fn cm_split(weil: &CharPoly, e: &Field) -> Result<Option<(NFElement, NFElement)>> {
    let d = imaginary_quadratic_d(e)?;
    let coeffs = weil
        .poly()
        .to_rationals()
        .filter(|c| c.len() == 3 && c.iter().all(Rational::is_integer))
        .ok_or_else(|| Error::InvalidArgument(format!("{weil} is not an integral quadratic over Q")))?;
    let p = coeffs[0].to_integer();
    let a = -coeffs[1].to_integer();
    if a.is_zero() {
        return Ok(None);
    }
    let disc: BigInt = BigInt::from(4) * &p - &a * &a;
    if !disc.is_positive() || !(&disc % &d).is_zero() {
        return Ok(None);
    }
    let c2 = &disc / &d;
    let c = c2.sqrt();
    if &c * &c != c2 {
        return Ok(None);
    }
    let half = |n: &BigInt| Rational::new(n.clone(), BigInt::from(2));
    let pi = NFElement::linear(e, half(&a), half(&c))?;
    let pibar = NFElement::linear(e, half(&a), half(&-c))?;
    let norm = norm_poly(&CharPoly::linear(&pi)?.into_poly(), &e.min_poly().unwrap())?;
    if &norm != weil.poly() {
        return Err(Error::InvalidArgument(format!("norm of t - ({pi}) is {norm}, not {weil}")));
    }
    Ok(Some((pi, pibar)))
}

fn primes_below(p_max: u64) -> Vec<u64> {
    (5..p_max).filter(|&p| is_prime(p)).collect()
}

/// Good primes `5 ≤ p < p_max` of the curve with their `a_p`, in order.
fn good_traces(a: i64, b: i64, p_max: u64, twist: bool) -> Result<Vec<(u64, i64)>> {
    let disc = BigInt::from(4) * BigInt::from(a).pow(3) + BigInt::from(27) * BigInt::from(b).pow(2);
    if disc.is_zero() {
        return Err(Error::Curve(format!("y^2 = x^3 + {a}x + {b} is singular over Q")));
    }
    primes_below(p_max)
        .into_par_iter()
        .filter_map(|p| {
            let curve = match EllipticCurve::new(a, b, p) {
                Ok(c) => c,
                Err(_) => return None,
            };
            let curve = if twist {
                match curve.twist(least_nonresidue(p) as i64) {
                    Ok(c) => c,
                    Err(e) => return Some(Err(e)),
                }
            } else {
                curve
            };
            Some(count_points(&curve).map(|ap| (p, ap)))
        })
        .collect()
}

/// A λ-sheet label with its residue characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheetSpec {
    pub label: String,
    pub ell: u64,
}

impl SheetSpec {
    pub fn new(label: impl Into<String>, ell: u64) -> Self {
        SheetSpec { label: label.into(), ell }
    }

    pub fn for_ell(ell: u64) -> Self {
        SheetSpec::new(format!("lambda{ell}"), ell)
    }
}

/// Curve data over `Q`, one sheet per requested `ℓ`.
#[derive(Clone, Debug)]
pub struct CurveConfig {
    pub a: i64,
    pub b: i64,
    pub p_max: u64,
    /// Residue-field extension degrees sampled in addition to `F_p`.
    pub ext_degrees: Vec<u32>,
    pub sheets: Vec<SheetSpec>,
    /// Count the quadratic twist by the least non-residue at each place.
    pub twist: bool,
}

impl CurveConfig {
    pub fn new(a: i64, b: i64, p_max: u64) -> Self {
        CurveConfig { a, b, p_max, ext_degrees: Vec::new(), sheets: vec![SheetSpec::for_ell(3)], twist: false }
    }
}

pub fn build_curve_system(cfg: &CurveConfig) -> Result<System> {
    if cfg.sheets.is_empty() {
        return Err(Error::EmptySystem);
    }
    let traces = good_traces(cfg.a, cfg.b, cfg.p_max, cfg.twist)?;
    let mut entries = Vec::new();
    for &(p, ap) in &traces {
        let base = FrobSample::new(Place::prime(p)?, 1, weil_poly(ap, p))?;
        for &k in &cfg.ext_degrees {
            if k > 1 {
                entries.push(base_change_sample(&base, k)?);
            }
        }
        entries.push(base);
    }
    let q = Field::rationals();
    let sheets = cfg
        .sheets
        .iter()
        .map(|s| {
            let mut sheet = RepSheet::new(&q, s.label.clone(), s.ell, None, 2)?;
            for e in &entries {
                sheet.insert(Entry::Unramified(e.clone()))?;
            }
            Ok(sheet)
        })
        .collect::<Result<Vec<_>>>()?;
    System::new(sheets)
}

/// Rank-one system over an imaginary quadratic field from a CM curve.
#[derive(Clone, Debug)]
pub struct CmConfig {
    pub a: i64,
    pub b: i64,
    pub p_max: u64,
    pub sheets: [SheetSpec; 2],
    /// Give the second sheet `t − π̄` instead of `t − π`.
    pub conjugate: bool,
}

impl CmConfig {
    pub fn new(a: i64, b: i64, p_max: u64) -> Self {
        CmConfig {
            a,
            b,
            p_max,
            sheets: [SheetSpec::for_ell(3), SheetSpec::for_ell(7)],
            conjugate: false,
        }
    }
}

/// Each sheet lies over the place `ell{ℓ}` of `Q`, so restriction to `Q`
/// keeps the sheets apart.
pub fn build_cm_system(e: &Field, cfg: &CmConfig) -> Result<System> {
    imaginary_quadratic_d(e)?;
    if cfg.sheets[0].ell == cfg.sheets[1].ell {
        return Err(Error::InvalidArgument("the two sheets need distinct residue characteristics".into()));
    }
    let traces = good_traces(cfg.a, cfg.b, cfg.p_max, false)?;
    let mut sheets = cfg
        .sheets
        .iter()
        .map(|s| RepSheet::new(e, s.label.clone(), s.ell, Some(format!("ell{}", s.ell)), 1))
        .collect::<Result<Vec<_>>>()?;
    for (p, ap) in traces {
        let place = Place::prime(p)?;
        let weil = weil_poly(ap, p);
        match cm_split(&weil, e)? {
            Some((pi, pibar)) => {
                let second = if cfg.conjugate { &pibar } else { &pi };
                for (sheet, root) in sheets.iter_mut().zip([&pi, second]) {
                    let s = FrobSample::new(place.clone(), 1, CharPoly::linear(root)?)?;
                    sheet.insert(Entry::Unramified(s))?;
                }
            }
            None => {
                for sheet in sheets.iter_mut() {
                    sheet.insert(Entry::Unknown { place: place.clone(), note: Some(weil.clone()) })?;
                }
            }
        }
    }
    System::new(sheets)
}

/// The rational integer a sample's trace coefficient carries, if any.
pub fn rational_trace(s: &FrobSample) -> Option<i64> {
    let c = s.poly().poly().to_rationals()?;
    let t = c.get(c.len().checked_sub(2)?)?;
    if t.is_integer() {
        (-t.to_integer()).to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::int;
    use crate::systems::{check_system, CheckOptions, Verdict};

    fn gaussian() -> Field {
        Field::over_q("i", &[1, 0, 1]).unwrap()
    }

    #[test]
    fn split_examples() {
        let k = gaussian();
        let (pi, pibar) = cm_split(&weil_poly(2, 5), &k).unwrap().unwrap();
        assert_eq!(pi, NFElement::linear(&k, int(1), int(2)).unwrap());
        assert_eq!(pibar, NFElement::linear(&k, int(1), int(-2)).unwrap());
        let w = Field::over_q("w", &[3, 0, 1]).unwrap();
        assert_eq!(cm_split(&weil_poly(2, 5), &w).unwrap(), None);
        assert_eq!(cm_split(&weil_poly(0, 7), &k).unwrap(), None);
        let s = Field::over_q("s", &[-2, 0, 1]).unwrap();
        assert!(cm_split(&weil_poly(2, 5), &s).is_err());
    }

    #[test]
    fn cm_fixture_places() {
        let k = gaussian();
        let sys = build_cm_system(&k, &CmConfig::new(1, 0, 50)).unwrap();
        let split: Vec<u64> = sys.sheets()[0]
            .entries()
            .into_iter()
            .filter_map(|e| e.sample().map(|s| s.place().p()))
            .collect();
        assert_eq!(split, vec![5, 13, 17, 29, 37, 41]);
        let r = check_system(&sys, &CheckOptions::default()).unwrap();
        assert!(r.strong_quasi_compatible());
        assert!(r
            .cells
            .iter()
            .all(|c| c.verdict == Verdict::CompatibleAt(1) || c.verdict.is_excluded()));
    }

    #[test]
    fn conjugate_fixture_fails() {
        let k = gaussian();
        let mut cfg = CmConfig::new(1, 0, 50);
        cfg.conjugate = true;
        let sys = build_cm_system(&k, &cfg).unwrap();
        let r = check_system(&sys, &CheckOptions::default()).unwrap();
        assert!(!r.strong_quasi_compatible());
        assert_eq!(r.first_failure().unwrap().place.label(), "5");
    }

    #[test]
    fn curve_system_with_extensions() {
        let mut cfg = CurveConfig::new(1, 0, 50);
        cfg.ext_degrees = vec![2];
        let sys = build_curve_system(&cfg).unwrap();
        let sheet = &sys.sheets()[0];
        let s5 = sheet.entry("5").unwrap().sample().unwrap();
        assert_eq!(s5.poly(), &CharPoly::from_ints(&[5, -2, 1]).unwrap());
        let s25 = sheet.entry("5^2").unwrap().sample().unwrap();
        assert_eq!(s25.place().q(), 25);
        assert_eq!(s25.poly(), &CharPoly::from_ints(&[25, 6, 1]).unwrap());
        assert_eq!(rational_trace(s5), Some(2));
    }
}
