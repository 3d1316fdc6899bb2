//! C interface to `frobsys`.
//!
//! Objects are opaque handles created by `*_new`/`*_load`-style functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`FrobsysStatus`]; on failure a message is available from
//! [`frobsys_last_error`] on the same thread. Strings returned by the library
//! are released with [`frobsys_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use frobsys::frobpoly::{dual_charpoly, hom_charpoly, power_charpoly, sum_charpoly, tensor_charpoly, CharPoly};
use frobsys::frobtorus::{torus_rank, RankConfig, RankMode};
use frobsys::ingest::{count_points, dataset_from_str, dataset_to_string, load_dataset, store_dataset, EllipticCurve};
use frobsys::numfield::format_rational;
use frobsys::systems::{check_system, CheckOptions, System};
use frobsys::Error;

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobsysStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidPolynomial = 3,
    InvalidField = 4,
    Dataset = 5,
    Io = 6,
    Curve = 7,
    NotSplit = 8,
    PrecisionExhausted = 9,
    Incompatible = 10,
    Other = 11,
    Panic = 12,
}

/// Monic characteristic polynomial over `Q`.
pub struct FrobsysCharPoly(CharPoly);

/// A parsed dataset.
pub struct FrobsysDataset(System);

/// Outcome of a torus rank computation.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FrobsysTorusRank {
    pub rank_estimate: usize,
    pub rank_certified_upper: usize,
    pub certified: bool,
    pub precision_bits_used: u32,
    pub dimension: usize,
}

/// Summary of a compatibility check.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FrobsysCheckSummary {
    pub cells: usize,
    pub compatible: usize,
    pub incompatible: usize,
    pub excluded: usize,
    pub strong_quasi_compatible: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FrobsysStatus {
    match e {
        Error::NotCharPoly(_) | Error::ZeroExponent | Error::DeclaredDegree { .. } | Error::BothZero => {
            FrobsysStatus::InvalidPolynomial
        }
        Error::FieldMismatch(_) | Error::InvalidField(_) | Error::InvalidElement(_) | Error::InvalidEmbedding(_) => {
            FrobsysStatus::InvalidField
        }
        Error::Dataset { .. } | Error::EmptySystem => FrobsysStatus::Dataset,
        Error::Io(_) => FrobsysStatus::Io,
        Error::Curve(_) => FrobsysStatus::Curve,
        Error::NotSplit(_) => FrobsysStatus::NotSplit,
        Error::PrecisionExhausted(_) => FrobsysStatus::PrecisionExhausted,
        Error::InvalidArgument(_) => FrobsysStatus::InvalidArgument,
        _ => FrobsysStatus::Other,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), FrobsysStatus>) -> FrobsysStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FrobsysStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            FrobsysStatus::Panic
        }
    }
}

fn fail(e: Error) -> FrobsysStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> FrobsysStatus {
    set_error(format!("{what} is null"));
    FrobsysStatus::NullPointer
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, FrobsysStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        FrobsysStatus::InvalidArgument
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), FrobsysStatus> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next library call on this thread.
#[no_mangle]
pub extern "C" fn frobsys_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn frobsys_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn frobsys_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Polynomial from `len` integer coefficients, ascending, leading 1 included.
///
/// # Safety
/// `coeffs` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frobsys_charpoly_from_ints(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut FrobsysCharPoly,
) -> FrobsysStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        let c = std::slice::from_raw_parts(coeffs, len);
        let p = CharPoly::from_ints(c).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(FrobsysCharPoly(p))))
    })
}

/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn frobsys_charpoly_free(p: *mut FrobsysCharPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree of `p`, or 0 for a null handle.
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn frobsys_charpoly_degree(p: *const FrobsysCharPoly) -> usize {
    p.as_ref().map_or(0, |p| p.0.degree())
}

/// Coefficient `index` (ascending) as a rational string such as `-3/2`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frobsys_charpoly_coefficient(
    p: *const FrobsysCharPoly,
    index: usize,
    out: *mut *mut c_char,
) -> FrobsysStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        let coeffs = p.0.poly().to_rationals().expect("polynomials here are over Q");
        let c = coeffs.get(index).ok_or_else(|| {
            set_error(format!("index {index} exceeds degree {}", p.0.degree()));
            FrobsysStatus::InvalidArgument
        })?;
        write_out(out, into_c_string(format_rational(c)))
    })
}

/// Human-readable rendering in the variable `t`.
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn frobsys_charpoly_to_string(p: *const FrobsysCharPoly) -> *mut c_char {
    match p.as_ref() {
        Some(p) => into_c_string(p.0.poly().display_in("t")),
        None => ptr::null_mut(),
    }
}

/// Charpoly of the `n`-th power.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frobsys_charpoly_power(
    p: *const FrobsysCharPoly,
    n: u64,
    out: *mut *mut FrobsysCharPoly,
) -> FrobsysStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        let r = power_charpoly(&p.0, n).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(FrobsysCharPoly(r))))
    })
}

/// Charpoly of the inverse operator.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frobsys_charpoly_dual(p: *const FrobsysCharPoly, out: *mut *mut FrobsysCharPoly) -> FrobsysStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        write_out(out, Box::into_raw(Box::new(FrobsysCharPoly(dual_charpoly(&p.0)))))
    })
}

/// Binary operations on two charpolys.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobsysBinaryOp {
    Sum = 0,
    Tensor = 1,
    Hom = 2,
}

/// Charpoly of the direct sum, tensor product or Hom of two operators.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frobsys_charpoly_combine(
    op: FrobsysBinaryOp,
    a: *const FrobsysCharPoly,
    b: *const FrobsysCharPoly,
    out: *mut *mut FrobsysCharPoly,
) -> FrobsysStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("first polynomial"))?;
        let b = b.as_ref().ok_or_else(|| null("second polynomial"))?;
        let r = match op {
            FrobsysBinaryOp::Sum => sum_charpoly(&a.0, &b.0),
            FrobsysBinaryOp::Tensor => tensor_charpoly(&a.0, &b.0),
            FrobsysBinaryOp::Hom => hom_charpoly(&a.0, &b.0),
        }
        .map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(FrobsysCharPoly(r))))
    })
}

/// Whether two polynomials are equal.
///
/// # Safety
/// `a` and `b` must be live handles or null.
#[no_mangle]
pub unsafe extern "C" fn frobsys_charpoly_equal(a: *const FrobsysCharPoly, b: *const FrobsysCharPoly) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// Frobenius torus rank of `p`. `exact` selects exact verification of the
/// relations found; otherwise the result is heuristic.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frobsys_torus_rank(
    p: *const FrobsysCharPoly,
    exact: bool,
    precision_bits: u32,
    relation_bound: u32,
    out: *mut FrobsysTorusRank,
) -> FrobsysStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polynomial"))?;
        let cfg = RankConfig {
            mode: if exact { RankMode::ExactInField } else { RankMode::Heuristic },
            precision_bits,
            relation_bound,
        };
        let r = torus_rank(&p.0, &cfg).map_err(fail)?;
        write_out(
            out,
            FrobsysTorusRank {
                rank_estimate: r.rank_estimate,
                rank_certified_upper: r.rank_certified_upper,
                certified: r.certified,
                precision_bits_used: r.precision_bits_used,
                dimension: r.dimension(),
            },
        )
    })
}

/// Trace of Frobenius `a_p` of `y² = x³ + a x + b` over `F_p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frobsys_count_points(a: i64, b: i64, p: u64, out: *mut i64) -> FrobsysStatus {
    guard(|| {
        let curve = EllipticCurve::new(a, b, p).map_err(fail)?;
        let ap = count_points(&curve).map_err(fail)?;
        write_out(out, ap)
    })
}

/// Reads a dataset file.
///
/// # Safety
/// `path` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frobsys_dataset_load(path: *const c_char, out: *mut *mut FrobsysDataset) -> FrobsysStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let sys = load_dataset(path).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(FrobsysDataset(sys))))
    })
}

/// Parses dataset text.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn frobsys_dataset_parse(text: *const c_char, out: *mut *mut FrobsysDataset) -> FrobsysStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let sys = dataset_from_str(text).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(FrobsysDataset(sys))))
    })
}

/// # Safety
/// `d` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn frobsys_dataset_free(d: *mut FrobsysDataset) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Canonical dataset text.
///
/// # Safety
/// `d` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn frobsys_dataset_to_string(d: *const FrobsysDataset) -> *mut c_char {
    match d.as_ref() {
        Some(d) => into_c_string(dataset_to_string(&d.0)),
        None => ptr::null_mut(),
    }
}

/// Writes the canonical dataset text to `path`.
///
/// # Safety
/// `d` must be a live handle; `path` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn frobsys_dataset_store(d: *const FrobsysDataset, path: *const c_char) -> FrobsysStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("dataset"))?;
        let path = str_arg(path, "path")?;
        store_dataset(&d.0, path).map_err(fail)
    })
}

/// Number of sheets in the dataset, or 0 for a null handle.
///
/// # Safety
/// `d` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn frobsys_dataset_sheet_count(d: *const FrobsysDataset) -> usize {
    d.as_ref().map_or(0, |d| d.0.sheets().len())
}

/// Quasi-compatibility check across all sheet pairs with witness levels up
/// to `n_max`. Returns `FROBSYS_STATUS_INCOMPATIBLE` (with the summary
/// filled in) when some place fails, and `first_failure`, if non-null,
/// receives the earliest failing place label (or null).
///
/// # Safety
/// `d` must be a live handle; `summary` must be writable; `first_failure`
/// writable or null.
#[no_mangle]
pub unsafe extern "C" fn frobsys_dataset_check(
    d: *const FrobsysDataset,
    n_max: u64,
    summary: *mut FrobsysCheckSummary,
    first_failure: *mut *mut c_char,
) -> FrobsysStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("dataset"))?;
        let report = check_system(&d.0, &CheckOptions::with_n_max(n_max)).map_err(fail)?;
        let s = FrobsysCheckSummary {
            cells: report.cells.len(),
            compatible: report.count(|v| v.level().is_some() && !v.is_failure()),
            incompatible: report.failures().count(),
            excluded: report.count(|v| v.is_excluded()),
            strong_quasi_compatible: report.strong_quasi_compatible(),
        };
        write_out(summary, s)?;
        if !first_failure.is_null() {
            let label = report.first_failure().map(|c| into_c_string(c.place.label().to_string()));
            first_failure.write(label.unwrap_or(ptr::null_mut()));
        }
        if s.strong_quasi_compatible {
            Ok(())
        } else {
            set_error(format!("{} incompatible cells", s.incompatible));
            Err(FrobsysStatus::Incompatible)
        }
    })
}
