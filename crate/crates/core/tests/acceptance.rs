//! Acceptance suite: one PASS/FAIL line per criterion, with timing against
//! its budget. Runs as a plain binary (`harness = false`) and exits non-zero
//! if any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use frobsys::cmhodge::{half_twist_ladder, CMField, EHodgeType};
use frobsys::frobpoly::{dual_charpoly, power_charpoly, sum_charpoly, tensor_charpoly, CharPoly};
use frobsys::frobtorus::{torus_rank, RankConfig};
use frobsys::ingest::{
    build_cm_system, build_curve_system, cm_split, count_points, dataset_to_string, weil_poly,
    CmConfig, CurveConfig, EllipticCurve, SheetSpec,
};
use frobsys::numfield::{norm_poly, Embedding, Field, NFElement, Polynomial, Rational, Value};
use frobsys::systems::{
    base_change_sample, check_system, extend_system, identity_fiber, restrict_system, CheckOptions,
    Entry, FrobSample, Place, RepSheet, System, Verdict,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: frobsys::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn gaussian() -> Field {
    Field::over_q("i", &[1, 0, 1]).unwrap()
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=3).into())
}

fn combinators_match_matrices() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut tested = 0;
    while tested < 200 {
        let n = rng.gen_range(1..=5);
        let a = random_matrix(&mut rng, n, 3);
        let ca = int_charpoly(&a);
        if ca[0].is_zero() {
            continue;
        }
        let m = rng.gen_range(1..=5);
        let b = random_matrix(&mut rng, m, 3);
        let cb = int_charpoly(&b);
        if cb[0].is_zero() {
            continue;
        }
        let (pa, pb) = (charpoly_from_ints(&ca), charpoly_from_ints(&cb));

        let k = rng.gen_range(1..=4);
        let got = lib(power_charpoly(&pa, k as u64))?;
        ensure(got == charpoly_from_ints(&int_charpoly(&mat_pow(&a, k))), || {
            format!("power {k} of {pa}")
        })?;
        let got = lib(sum_charpoly(&pa, &pb))?;
        ensure(got == charpoly_from_ints(&int_charpoly(&block_sum(&a, &b))), || {
            format!("sum of {pa} and {pb}")
        })?;
        let got = lib(tensor_charpoly(&pa, &pb))?;
        ensure(got == charpoly_from_ints(&int_charpoly(&kronecker(&a, &b))), || {
            format!("tensor of {pa} and {pb}")
        })?;
        let inv = rat_inverse(&to_rational(&a)).ok_or("invertible matrix has no inverse")?;
        ensure(dual_charpoly(&pa) == charpoly_from_rationals(&rat_charpoly(&inv)), || {
            format!("dual of {pa}")
        })?;
        tested += 1;
    }
    Ok(format!("{tested} matrices"))
}

fn random_monic<S>(rng: &mut ChaCha8Rng, coeff: impl Fn(&mut ChaCha8Rng) -> S, is_zero: impl Fn(&S) -> bool) -> Vec<S> {
    let d = rng.gen_range(1..=4);
    loop {
        let c: Vec<S> = (0..d).map(|_| coeff(rng)).collect();
        if !is_zero(&c[0]) {
            return c;
        }
    }
}

fn tensor_over_q_and_gaussians() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let q = Field::rationals();
    for _ in 0..50 {
        let f = random_monic(&mut rng, small_rational, Rational::is_zero);
        let g = random_monic(&mut rng, small_rational, Rational::is_zero);
        let n = f.len() * g.len();
        let pf: Vec<Rational> = power_sums(&f, n);
        let pg: Vec<Rational> = power_sums(&g, n);
        let prod: Vec<Rational> = pf.iter().zip(&pg).map(|(x, y)| x * y).collect();
        let mut expected = from_power_sums(&prod, n);
        expected.push(Rational::one());

        let lift = |c: &[Rational]| {
            let mut c = c.to_vec();
            c.push(Rational::one());
            CharPoly::new(Polynomial::from_rationals(&q, &c)).unwrap()
        };
        let got = lib(tensor_charpoly(&lift(&f), &lift(&g)))?;
        ensure(got.poly().to_rationals().as_deref() == Some(&expected[..]), || {
            format!("tensor over Q of {} and {}", lift(&f), lift(&g))
        })?;
    }

    let e = gaussian();
    let gauss = |rng: &mut ChaCha8Rng| Gauss::new(small_rational(rng), small_rational(rng));
    let to_value = |z: &Gauss| Value::Vec(vec![Value::Rat(z.re.clone()), Value::Rat(z.im.clone())]);
    let lift = |c: &[Gauss]| {
        let mut v: Vec<Value> = c.iter().map(to_value).collect();
        v.push(e.one());
        CharPoly::new(Polynomial::new(e.clone(), v).unwrap()).unwrap()
    };
    for _ in 0..50 {
        let f = random_monic(&mut rng, gauss, |z| *z == Gauss::zero());
        let g = random_monic(&mut rng, gauss, |z| *z == Gauss::zero());
        let n = f.len() * g.len();
        let pf: Vec<Gauss> = power_sums(&f, n);
        let pg: Vec<Gauss> = power_sums(&g, n);
        let prod: Vec<Gauss> = pf.iter().zip(&pg).map(|(x, y)| x.mul(y)).collect();
        let expected = lift(&from_power_sums(&prod, n));
        let got = lib(tensor_charpoly(&lift(&f), &lift(&g)))?;
        ensure(got == expected, || format!("tensor over Q(i) of {} and {}", lift(&f), lift(&g)))?;
    }
    Ok("100 pairs".into())
}

fn prime_field_trace(a: i64, b: i64, p: u64) -> i64 {
    brute_force_trace(&FiniteField::new(p, 1), a, b)
}

fn cm_curve_over_gaussians() -> Outcome {
    let e = gaussian();
    let presentation = e.min_poly().unwrap();
    let mut split = 0;
    for p in (5..500).filter(|&p| is_prime(p) && p % 4 == 1) {
        let ap = prime_field_trace(1, 0, p);
        let weil = weil_poly(ap, p);
        let (pi, _) = lib(cm_split(&weil, &e))?.ok_or_else(|| format!("no split at {p}"))?;
        let norm = lib(norm_poly(CharPoly::linear(&pi).unwrap().poly(), &presentation))?;
        ensure(norm.to_rationals() == Polynomial::from_ints(&[p as i64, -ap, 1]).to_rationals(), || {
            format!("norm of t - ({pi}) at {p} is {norm}")
        })?;
        split += 1;
    }
    let sys = lib(build_cm_system(&e, &CmConfig::new(1, 0, 500)))?;
    let report = lib(check_system(&sys, &CheckOptions::default()))?;
    ensure(report.strong_quasi_compatible(), || "system is not strongly quasi-compatible".into())?;
    let compared: Vec<_> = report.cells.iter().filter(|c| !c.verdict.is_excluded()).collect();
    ensure(compared.len() == split, || format!("{} compared cells, {split} split places", compared.len()))?;
    if let Some(c) = compared.iter().find(|c| c.verdict != Verdict::CompatibleAt(1)) {
        return Err(format!("{} at place {}", c.verdict.tag(), c.place));
    }
    Ok(format!("{split} split places"))
}

fn curve_against_twist() -> Outcome {
    let mut cfg = CurveConfig::new(1, 0, 200);
    cfg.sheets = vec![SheetSpec::new("curve", 2)];
    let curve = lib(build_curve_system(&cfg))?;
    cfg.sheets = vec![SheetSpec::new("twist", 3)];
    cfg.twist = true;
    let twist = lib(build_curve_system(&cfg))?;
    let sys = lib(curve.merge(&twist))?;
    let report = lib(check_system(&sys, &CheckOptions::default()))?;
    let mut genuine = 0;
    for cell in &report.cells {
        let p = cell.place.p();
        let ap = prime_field_trace(1, 0, p);
        let d = frobsys::ingest::least_nonresidue(p) as i64;
        ensure(prime_field_trace(d * d, 0, p) == -ap, || format!("twist law at {p}"))?;
        if ap == 0 {
            continue;
        }
        let a = sys.sheet("curve").unwrap().entry(cell.place.label()).and_then(Entry::sample).unwrap();
        let b = sys.sheet("twist").unwrap().entry(cell.place.label()).and_then(Entry::sample).unwrap();
        ensure(a.poly() != b.poly(), || format!("level 1 polynomials agree at {p}"))?;
        ensure(cell.verdict == Verdict::CompatibleAt(2), || format!("{:?} at {p}", cell.verdict))?;
        genuine += 1;
    }
    ensure(genuine > 0, || "no ordinary places".into())?;
    Ok(format!("{genuine} places need n = 2"))
}

fn base_change_against_point_counts() -> Outcome {
    let mut checked = 0;
    for (a, b) in [(1, 0), (-1, 1)] {
        for p in [5u64, 7, 11, 13] {
            let Ok(curve) = EllipticCurve::new(a, b, p) else { continue };
            let ap = lib(count_points(&curve))?;
            let base = lib(FrobSample::new(lib(Place::prime(p))?, 1, weil_poly(ap, p)))?;
            for k in 1..=3u32 {
                let field = FiniteField::new(p, k as usize);
                let q = field.order() as i64;
                let expected = CharPoly::from_ints(&[q, -brute_force_trace(&field, a, b), 1]).unwrap();
                let s = lib(base_change_sample(&base, k))?;
                ensure(s.poly() == &expected, || format!("y^2 = x^3 + {a}x + {b} over F_{p}^{k}"))?;
                ensure(s.place().q() == q as u64, || format!("residue size at {p}^{k}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} residue fields"))
}

fn torus_ranks() -> Outcome {
    let cfg = RankConfig::default();
    let e = gaussian();
    let ordinary = weil_poly(2, 5);
    let supersingular = CharPoly::from_ints(&[7, 0, 1]).unwrap();
    let (pi, _) = lib(cm_split(&ordinary, &e))?.ok_or("5 does not split")?;
    let cm = CharPoly::linear(&pi).unwrap();
    for (name, poly, rank) in [("ordinary", ordinary, 2), ("supersingular", supersingular, 1), ("cm", cm, 1)] {
        for n in 1..=6u64 {
            let p = lib(power_charpoly(&poly, n))?;
            let r = lib(torus_rank(&p, &cfg))?;
            ensure(r.rank_estimate == rank && r.certified, || {
                format!("{name} power {n}: rank {} certified {}", r.rank_estimate, r.certified)
            })?;
        }
    }
    Ok("3 polynomials, powers 1..6".into())
}

fn half_twist_ladders() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let g = rng.gen_range(1..=4);
        let field = lib(CMField::standard(g))?;
        let w: i64 = rng.gen_range(0..=8);
        let mut slots = vec![(0, 0); field.size()];
        for (s, t) in field.pairs() {
            let p = rng.gen_range(0..=w);
            slots[s] = (p, w - p);
            slots[t] = (w - p, p);
        }
        let v = lib(EHodgeType::new(&field, slots))?;
        let steps = lib(half_twist_ladder(&v))?;
        ensure(steps.len() as i64 == v.level(), || format!("ladder length {} for {v}", steps.len()))?;
        let mut cur = v.clone();
        for (_, next) in &steps {
            ensure(next.weight() == cur.weight() + 1 && next.level() == cur.level() - 1, || {
                format!("step {cur} -> {next}")
            })?;
            cur = next.clone();
        }
    }
    Ok("500 Hodge types".into())
}

fn random_gaussian_system(rng: &mut ChaCha8Rng, e: &Field) -> System {
    let sheets = ["u", "v"]
        .iter()
        .enumerate()
        .map(|(j, label)| {
            let mut s = RepSheet::new(e, *label, [3, 5][j], None, 2).unwrap();
            for p in [7u64, 11, 13, 17] {
                let place = Place::prime(p).unwrap();
                let entry = match rng.gen_range(0..5) {
                    0 => Entry::Ramified(place),
                    1 => Entry::unknown(place),
                    _ => {
                        let c0 = NFElement::linear(e, Rational::from_integer(p.into()), small_rational(rng)).unwrap();
                        let c1 = NFElement::linear(e, small_rational(rng), small_rational(rng)).unwrap();
                        let poly = Polynomial::from_elements(e, &[c0, c1, NFElement::from_int(e, 1)]).unwrap();
                        let n = rng.gen_range(1..=3);
                        Entry::Unramified(FrobSample::new(place, n, CharPoly::new(poly).unwrap()).unwrap())
                    }
                };
                s.insert(entry).unwrap();
            }
            s
        })
        .collect();
    System::new(sheets).unwrap()
}

fn random_monic_over(rng: &mut ChaCha8Rng, field: &Field, max_degree: usize) -> Polynomial {
    let d = rng.gen_range(1..=max_degree);
    let coords = field.abs_degree();
    let mut c: Vec<Value> = (0..d)
        .map(|_| field.unflatten(&(0..coords).map(|_| small_rational(rng)).collect::<Vec<_>>()))
        .collect();
    c.push(field.one());
    Polynomial::new(field.clone(), c).unwrap()
}

fn norm_and_extension_coherence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let q = Field::rationals();
    let e = gaussian();

    for base in [q.clone(), e.clone()] {
        let lin = lib(Field::extension("c", &base, vec![base.from_int(-3), base.one()]))?;
        let inc = lib(Embedding::inclusion(&base, &lin))?;
        for _ in 0..5 {
            let sys = if base.is_rationals() {
                let (a, b) = loop {
                    let (a, b): (i64, i64) = (rng.gen_range(-3..=3), rng.gen_range(1..=3));
                    if 4 * a.pow(3) + 27 * b * b != 0 {
                        break (a, b);
                    }
                };
                let mut cfg = CurveConfig::new(a, b, 60);
                cfg.sheets = vec![SheetSpec::for_ell(3), SheetSpec::for_ell(5)];
                cfg.ext_degrees = vec![2];
                lib(build_curve_system(&cfg))?
            } else {
                random_gaussian_system(&mut rng, &e)
            };
            let ext = lib(extend_system(&sys, &inc, &identity_fiber(&sys)))?;
            let back = lib(restrict_system(&ext, &lin.min_poly().unwrap(), 120))?;
            ensure(dataset_to_string(&back) == dataset_to_string(&sys), || {
                format!("restrict after extend changed a system over {}", base.name())
            })?;
        }
    }

    let r2 = lib(Field::over_q("r", &[-2, 0, 1]))?;
    let mut pairs = 0;
    for field in [&e, &r2] {
        let presentation = field.min_poly().unwrap();
        for _ in 0..50 {
            let a = random_monic_over(&mut rng, field, 3);
            let b = random_monic_over(&mut rng, field, 3);
            let na = lib(norm_poly(&a, &presentation))?;
            let nb = lib(norm_poly(&b, &presentation))?;
            let nab = lib(norm_poly(&lib(a.mul(&b))?, &presentation))?;
            ensure(nab == lib(na.mul(&nb))?, || format!("norm of ({a})({b}) over {}", field.name()))?;
            ensure(rational_coeffs(&na) == absolute_norm_poly(&a), || format!("norm of {a} against determinants"))?;
            pairs += 1;
        }
    }

    let top = lib(Field::extension("s", &e, vec![e.from_int(-2), e.zero(), e.one()]))?;
    let (upper, lower) = (top.min_poly().unwrap(), e.min_poly().unwrap());
    for _ in 0..100 {
        let p = random_monic_over(&mut rng, &top, 2);
        let stepwise = lib(norm_poly(&lib(norm_poly(&p, &upper))?, &lower))?;
        ensure(rational_coeffs(&stepwise) == absolute_norm_poly(&p), || format!("tower norm of {p}"))?;
    }
    Ok(format!("10 systems, {pairs} products, 100 tower norms"))
}

fn conjugate_fixture_fails() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let data = dir.path().join("conjugate.jsonl");
    let bin = env!("CARGO_BIN_EXE_frobsys");
    let made = Command::new(bin)
        .args(["cm-fixture", "--conjugate", "--out"])
        .arg(&data)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(made.status.success(), || String::from_utf8_lossy(&made.stderr).into_owned())?;
    let run = || {
        Command::new(bin)
            .arg("check")
            .arg(&data)
            .args(["--n-max", "120"])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    ensure(first.status.code() == Some(1), || format!("exit status {:?}", first.status.code()))?;
    ensure(first.stdout == second.stdout, || "report differs between runs".into())?;
    let text = String::from_utf8_lossy(&first.stdout);
    let line = text
        .lines()
        .find(|l| l.starts_with("first failing place:"))
        .ok_or("report does not name a failing place")?;
    ensure(line.starts_with("first failing place: 5 "), || line.to_string())?;
    Ok(line.to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("combinators match matrix charpolys", 60, combinators_match_matrices),
        ("tensor resultant matches eigenvalue products", 30, tensor_over_q_and_gaussians),
        ("CM curve over Q(i) is strongly compatible", 60, cm_curve_over_gaussians),
        ("curve and twist are compatible at n = 2", 60, curve_against_twist),
        ("base change matches point counts", 120, base_change_against_point_counts),
        ("Frobenius torus ranks", 120, torus_ranks),
        ("half-twist ladders", 10, half_twist_ladders),
        ("norm and extension coherence", 30, norm_and_extension_coherence),
        ("conjugate fixture is rejected", 30, conjugate_fixture_fails),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("took {:.1}s, budget {budget}s", elapsed.as_secs_f64()))
            }
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{:.2}s]", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [{:.2}s]", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
