//! Rank, modulo torsion, of the multiplicative group generated by the roots
//! of a Frobenius characteristic polynomial.
//!
//! Candidate relations come from lattice reduction on the complex logarithms
//! of the roots. When the roots can be written down exactly (in the
//! coefficient field, or in one quadratic extension of it) every candidate
//! is checked by computing the product of powers exactly and testing it for
//! being a root of unity.

pub mod fixed;
pub mod lll;
pub mod roots;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobpoly::CharPoly;
use crate::numfield::{Field, Irreducibility, Polynomial, Rational, Value};
use crate::systems::{normalize_to_level, FrobSample};
use fixed::{Cx, Fixed};
use lll::lll_reduce;
use roots::{default_embedding, min_separation, polynomial_roots, ComplexEmbedding};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const DEFAULT_RELATION_BOUND: u32 = 32;

/// Extra working bits on top of the requested precision.
const GUARD_BITS: u32 = 64;
/// Aberth stops once corrections drop below `2^{-(working − SLACK)}`.
const SLACK: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    ExactInField,
    Heuristic,
}

impl std::str::FromStr for RankMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact_in_field" | "exact-in-field" => Ok(RankMode::ExactInField),
            "heuristic" => Ok(RankMode::Heuristic),
            _ => Err(Error::InvalidArgument(format!("unknown rank mode {s:?}"))),
        }
    }
}

impl RankMode {
    pub fn name(&self) -> &'static str {
        match self {
            RankMode::ExactInField => "exact_in_field",
            RankMode::Heuristic => "heuristic",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RankConfig {
    pub mode: RankMode,
    pub precision_bits: u32,
    pub relation_bound: u32,
}

impl Default for RankConfig {
    fn default() -> Self {
        RankConfig {
            mode: RankMode::ExactInField,
            precision_bits: DEFAULT_PRECISION_BITS,
            relation_bound: DEFAULT_RELATION_BOUND,
        }
    }
}

impl RankConfig {
    pub fn heuristic() -> Self {
        RankConfig { mode: RankMode::Heuristic, ..RankConfig::default() }
    }
}

/// Exponent vectors `v` (one slot per distinct root) for which `∏ αᵢ^{vᵢ}`
/// is a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLattice {
    pub dimension: usize,
    pub basis: Vec<Vec<i64>>,
    /// `true` where the relation was confirmed by exact arithmetic.
    pub verified: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusRankResult {
    pub rank_estimate: usize,
    pub rank_certified_upper: usize,
    pub certified: bool,
    pub precision_bits_used: u32,
    pub mode: RankMode,
    /// Multiplicity of each distinct root, in slot order.
    pub multiplicities: Vec<usize>,
    pub lattice: RelationLattice,
    /// The quadratic extension adjoined to write the roots down, if any.
    pub splitting_field: Option<String>,
}

impl TorusRankResult {
    pub fn dimension(&self) -> usize {
        self.lattice.dimension
    }
}

/// Squarefree factors `(Sᵢ, i)` with `P = ∏ Sᵢ^i`, each `Sᵢ` monic of
/// positive degree.
fn squarefree_factors(p: &Polynomial) -> Vec<(Polynomial, usize)> {
    let mut out = Vec::new();
    let mut a = p.monic();
    let mut mult = 1;
    while a.degree().unwrap_or(0) > 0 {
        let rest = a.gcd(&a.derivative()).expect("same field");
        let sqf = a.div_exact(&rest).expect("same field").expect("gcd divides");
        let next_sqf = sqf.gcd(&rest).expect("same field");
        let exact_mult = sqf.div_exact(&next_sqf).expect("same field").expect("gcd divides");
        if exact_mult.degree().unwrap_or(0) > 0 {
            out.push((exact_mult, mult));
        }
        a = rest;
        mult += 1;
    }
    out
}

/// Numeric images of a `Q`-basis of `field` under `emb`.
fn basis_images(fx: &Fixed, field: &Field, emb: &ComplexEmbedding) -> Vec<Cx> {
    let d = field.abs_degree();
    (0..d)
        .map(|i| {
            let mut coords = vec![Rational::zero(); d];
            coords[i] = Rational::one();
            emb.eval(fx, field, &field.unflatten(&coords))
        })
        .collect()
}

/// An element of `field` whose image is `z` and which is a root of `target`,
/// found as an integer relation between `z` and the basis images.
fn recognize(fx: &Fixed, field: &Field, basis: &[Cx], z: &Cx, target: &Polynomial, scale_bits: u32) -> Option<Value> {
    let d = basis.len();
    let cols = d + 3;
    let big = |a: &BigInt| fx.rescale(a, scale_bits);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
    let mut first = vec![BigInt::zero(); cols];
    first[0] = BigInt::one();
    first[d + 1] = big(&z.re);
    first[d + 2] = big(&z.im);
    rows.push(first);
    for (i, b) in basis.iter().enumerate() {
        let mut r = vec![BigInt::zero(); cols];
        r[i + 1] = BigInt::one();
        r[d + 1] = big(&b.re);
        r[d + 2] = big(&b.im);
        rows.push(r);
    }
    // Purely real data leaves the imaginary column zero; drop it so the rows
    // stay independent.
    if rows.iter().all(|r| r[d + 2].is_zero()) {
        for r in rows.iter_mut() {
            r.pop();
        }
    }
    lll_reduce(&mut rows);
    for r in &rows {
        let c0 = &r[0];
        if c0.is_zero() {
            continue;
        }
        let coords: Vec<Rational> = r[1..=d].iter().map(|c| BigRational::new(-c.clone(), c0.clone())).collect();
        let x = field.unflatten(&coords);
        if field.is_zero(&crate::numfield::poly::eval(field, target.coeffs(), &x)) {
            return Some(x);
        }
    }
    None
}

fn fresh_name(field: &Field) -> String {
    let used: Vec<String> = field.tower().iter().map(|f| f.name().to_string()).collect();
    (0..)
        .map(|k| if k == 0 { "theta".to_string() } else { format!("theta{k}") })
        .find(|n| !used.contains(n))
        .expect("unbounded")
}

/// Distinct roots written exactly in `field`, aligned with their numeric
/// images.
struct ExactRoots {
    field: Field,
    values: Vec<Value>,
    splitting_field: Option<String>,
}

/// Tries to write every root of the squarefree `s` in its coefficient field,
/// adjoining at most one quadratic factor when needed.
fn exact_roots(fx: &Fixed, s: &Polynomial, emb: &ComplexEmbedding, zs: &[Cx], scale_bits: u32) -> Result<ExactRoots> {
    let e = s.field().clone();
    let basis = basis_images(fx, &e, emb);
    let found: Vec<Option<Value>> = zs.iter().map(|z| recognize(fx, &e, &basis, z, s, scale_bits)).collect();
    let missing: Vec<usize> = (0..zs.len()).filter(|&i| found[i].is_none()).collect();
    if missing.is_empty() {
        return Ok(ExactRoots { field: e, values: found.into_iter().map(Option::unwrap).collect(), splitting_field: None });
    }
    let not_split = || Error::NotSplit(format!("{} does not split over {} or a quadratic extension of it", s, e.name()));
    if e.depth() >= crate::numfield::MAX_TOWER_DEPTH {
        return Err(not_split());
    }

    // Look for a quadratic factor over `e` through two of the missing roots.
    for (a, &i) in missing.iter().enumerate() {
        for &j in &missing[a + 1..] {
            let sum = fx.cadd(&zs[i], &zs[j]);
            let prod = fx.cmul(&zs[i], &zs[j]);
            let Some(sv) = recognize_any(fx, &e, &basis, &sum, scale_bits) else { continue };
            let Some(pv) = recognize_any(fx, &e, &basis, &prod, scale_bits) else { continue };
            let quad = Polynomial::new(e.clone(), vec![pv.clone(), e.neg(&sv), e.one()])?;
            if s.div_exact(&quad)?.is_none() {
                continue;
            }
            let l = Field::extension(&fresh_name(&e), &e, quad.coeffs().to_vec())?;
            let emb_l = emb.extended(zs[i].clone());
            let basis_l = basis_images(fx, &l, &emb_l);
            let s_l = s.lift_to(&l)?;
            let u = l.generator().expect("extension").into_value();
            let mut values = Vec::with_capacity(zs.len());
            for (k, z) in zs.iter().enumerate() {
                let v = if k == i {
                    Some(u.clone())
                } else if k == j {
                    Some(l.sub(&l.lift_from(&e, &sv).expect("base"), &u))
                } else if let Some(v) = &found[k] {
                    l.lift_from(&e, v)
                } else {
                    recognize(fx, &l, &basis_l, z, &s_l, scale_bits)
                };
                values.push(v.ok_or_else(not_split)?);
            }
            let description = format!("{} = {}[{}]/({})", l.name(), e.name(), l.name(), quad.display_in(l.name()));
            return Ok(ExactRoots { field: l, values, splitting_field: Some(description) });
        }
    }
    Err(not_split())
}

/// Recognition of an element of `field` with no polynomial to check against:
/// accepts the shortest relation whose image matches `z` closely.
fn recognize_any(fx: &Fixed, field: &Field, basis: &[Cx], z: &Cx, scale_bits: u32) -> Option<Value> {
    let d = basis.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
    let cols = d + 3;
    let big = |a: &BigInt| fx.rescale(a, scale_bits);
    let mut first = vec![BigInt::zero(); cols];
    first[0] = BigInt::one();
    first[d + 1] = big(&z.re);
    first[d + 2] = big(&z.im);
    rows.push(first);
    for (i, b) in basis.iter().enumerate() {
        let mut r = vec![BigInt::zero(); cols];
        r[i + 1] = BigInt::one();
        r[d + 1] = big(&b.re);
        r[d + 2] = big(&b.im);
        rows.push(r);
    }
    if rows.iter().all(|r| r[d + 2].is_zero()) {
        for r in rows.iter_mut() {
            r.pop();
        }
    }
    lll_reduce(&mut rows);
    let limit = BigInt::one() << (scale_bits / 2);
    rows.iter().find(|r| !r[0].is_zero() && r.iter().all(|c| c.abs() < limit)).map(|r| {
        let coords: Vec<Rational> = r[1..=d].iter().map(|c| BigRational::new(-c.clone(), r[0].clone())).collect();
        field.unflatten(&coords)
    })
}

/// Primitive candidate relation vectors among the numeric roots `zs`,
/// discovered at `bits` bits of precision, reduced to an independent set.
fn candidate_relations(fx: &Fixed, zs: &[Cx], bits: u32, bound: u32) -> Result<Vec<Vec<i64>>> {
    let k = zs.len();
    let cols = k + 3;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k + 1);
    for (j, z) in zs.iter().enumerate() {
        let (ln_abs, arg) = fx
            .clog(z)
            .ok_or_else(|| Error::PrecisionExhausted("a root vanished numerically".into()))?;
        let mut r = vec![BigInt::zero(); cols];
        r[j] = BigInt::one();
        r[k + 1] = fx.rescale(&ln_abs, bits);
        r[k + 2] = fx.rescale(&arg, bits);
        rows.push(r);
    }
    let mut turn = vec![BigInt::zero(); cols];
    turn[k] = BigInt::one();
    turn[k + 2] = fx.rescale(&(fx.pi() << 1u32), bits);
    rows.push(turn);
    lll_reduce(&mut rows);

    let residual_limit = BigInt::one() << (bits / 2);
    let bound = BigInt::from(bound);
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for r in &rows {
        if r[k + 1].abs() > residual_limit || r[k + 2].abs() > residual_limit {
            continue;
        }
        let v = &r[..k];
        if v.iter().all(Zero::is_zero) || v.iter().any(|c| c.abs() > bound) {
            continue;
        }
        let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let mut prim: Vec<i64> = v.iter().map(|c| (c / &g).to_i64().expect("bounded")).collect();
        if let Some(lead) = prim.iter().find(|c| **c != 0) {
            if *lead < 0 {
                prim.iter_mut().for_each(|c| *c = -*c);
            }
        }
        if extends_rank(&mut echelon, &prim) {
            chosen.push(prim);
        }
    }
    chosen.sort();
    Ok(chosen)
}

/// Adds `v` to a row echelon basis if it is independent of it.
fn extends_rank(echelon: &mut Vec<Vec<Rational>>, v: &[i64]) -> bool {
    let mut w: Vec<Rational> = v.iter().map(|&c| Rational::from_integer(c.into())).collect();
    for row in echelon.iter() {
        let pivot = row.iter().position(|c| !c.is_zero()).expect("nonzero row");
        if !w[pivot].is_zero() {
            let f = &w[pivot] / &row[pivot];
            for (x, y) in w.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
    if w.iter().all(Zero::is_zero) {
        return false;
    }
    echelon.push(w);
    true
}

fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Least common multiple of every possible order of a root of unity in a
/// field of absolute degree `degree`.
pub fn torsion_exponent(degree: usize) -> u64 {
    let d = degree as u64;
    // φ(m) ≥ √(m/2), so m ≤ 2d² covers every order with φ(m) ≤ d.
    (1..=2 * d * d + 2).filter(|&m| euler_phi(m) <= d).fold(1, |acc, m| acc.lcm(&m))
}

/// Whether `∏ αⱼ^{vⱼ}` is a root of unity, computed exactly.
fn is_torsion_relation(field: &Field, roots: &[Value], v: &[i64]) -> bool {
    let mut beta = field.one();
    for (a, &e) in roots.iter().zip(v) {
        if e == 0 {
            continue;
        }
        match field.pow_signed(a, e) {
            Some(x) => beta = field.mul(&beta, &x),
            None => return false,
        }
    }
    field.is_one(&field.pow(&beta, torsion_exponent(field.abs_degree())))
}

struct Numeric {
    fx: Fixed,
    emb: ComplexEmbedding,
    roots: Vec<Cx>,
}

fn numeric_roots(s: &Polynomial, bits: u32) -> Result<Numeric> {
    let fx = Fixed::new(bits + GUARD_BITS);
    let emb = default_embedding(&fx, s.field(), SLACK)?;
    let coeffs = emb.eval_poly(&fx, s.field(), s.coeffs());
    let roots = polynomial_roots(&fx, &coeffs, SLACK)?;
    if let Some(sep) = min_separation(&fx, &roots) {
        if sep < (fx.one() >> (bits / 2)) {
            return Err(Error::PrecisionExhausted(format!(
                "roots not separated at {bits} bits; raise the precision"
            )));
        }
    }
    Ok(Numeric { fx, emb, roots })
}

/// Rank modulo torsion of the group generated by the roots of `p`.
pub fn torus_rank(p: &CharPoly, cfg: &RankConfig) -> Result<TorusRankResult> {
    if cfg.precision_bits < 32 {
        return Err(Error::InvalidArgument("precision must be at least 32 bits".into()));
    }
    if cfg.relation_bound == 0 {
        return Err(Error::InvalidArgument("relation bound must be positive".into()));
    }
    let factors = squarefree_factors(p.poly());
    let mut s = Polynomial::one(p.field());
    for (f, _) in &factors {
        s = s.mul(f)?;
    }

    let base = numeric_roots(&s, cfg.precision_bits)?;
    // Slot order follows the root order of `s`; multiplicities are read off
    // the squarefree factor each root belongs to.
    let multiplicities: Vec<usize> = base
        .roots
        .iter()
        .map(|z| {
            factors
                .iter()
                .min_by_key(|(f, _)| {
                    let c = base.emb.eval_poly(&base.fx, f.field(), f.coeffs());
                    let v = c.iter().rev().fold(Cx::zero(), |acc, c| base.fx.cadd(&base.fx.cmul(&acc, z), c));
                    base.fx.cabs2(&v)
                })
                .map(|(_, m)| *m)
                .expect("at least one factor")
        })
        .collect();
    let k = base.roots.len();

    let candidates = candidate_relations(&base.fx, &base.roots, cfg.precision_bits, cfg.relation_bound)?;
    let estimate = k - candidates.len();

    let (verified, splitting_field, exact_complete) = match cfg.mode {
        RankMode::Heuristic => (vec![false; candidates.len()], None, false),
        RankMode::ExactInField => {
            let exact = exact_roots(&base.fx, &s, &base.emb, &base.roots, cfg.precision_bits)?;
            let flags: Vec<bool> =
                candidates.par_iter().map(|v| is_torsion_relation(&exact.field, &exact.values, v)).collect();
            let trusted = exact.field.tower().iter().all(|f| f.certificate() != Irreducibility::Trusted);
            (flags, exact.splitting_field, trusted)
        }
    };
    let verified_count = verified.iter().filter(|b| **b).count();
    let upper = match cfg.mode {
        RankMode::Heuristic => k,
        RankMode::ExactInField => k - verified_count,
    };

    let mut certified = false;
    let mut bits_used = cfg.precision_bits;
    if cfg.mode == RankMode::ExactInField && exact_complete && verified_count == candidates.len() {
        let doubled = cfg.precision_bits * 2;
        let high = numeric_roots(&s, doubled)?;
        let again = candidate_relations(&high.fx, &high.roots, doubled, cfg.relation_bound)?;
        bits_used = doubled;
        certified = again.len() == candidates.len();
    }

    Ok(TorusRankResult {
        rank_estimate: estimate,
        rank_certified_upper: upper,
        certified,
        precision_bits_used: bits_used,
        mode: cfg.mode,
        multiplicities,
        lattice: RelationLattice { dimension: k, basis: candidates, verified },
        splitting_field,
    })
}

#[derive(Clone, Debug)]
pub struct RankRow {
    pub label: String,
    pub degree: usize,
    pub result: TorusRankResult,
}

/// Torus ranks of several samples at one place, brought to a common level.
#[derive(Clone, Debug)]
pub struct RankComparison {
    pub place: String,
    pub level: u64,
    pub rows: Vec<RankRow>,
}

impl RankComparison {
    pub fn ranks_agree(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].result.rank_estimate == w[1].result.rank_estimate)
    }

    pub fn all_certified(&self) -> bool {
        self.rows.iter().all(|r| r.result.certified)
    }
}

pub fn rank_compare(samples: &[(String, FrobSample)], cfg: &RankConfig) -> Result<RankComparison> {
    let Some((_, first)) = samples.first() else {
        return Err(Error::InvalidArgument("no samples to compare".into()));
    };
    let place = first.place().clone();
    if let Some((label, s)) = samples.iter().find(|(_, s)| s.place() != &place) {
        return Err(Error::InvalidPlace(format!(
            "sample {label} is at {} but the comparison is at {place}",
            s.place()
        )));
    }
    let level = samples.iter().fold(1u64, |acc, (_, s)| acc.lcm(&s.n()));
    let rows = samples
        .iter()
        .map(|(label, s)| {
            let poly = normalize_to_level(s, level)?;
            Ok(RankRow { label: label.clone(), degree: poly.degree(), result: torus_rank(&poly, cfg)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankComparison { place: place.label().to_string(), level, rows })
}
