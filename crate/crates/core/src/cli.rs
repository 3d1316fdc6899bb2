//! The `frobsys` command line.
//!
//! Exit status: 0 success, 1 a compatibility check came out negative,
//! 2 invalid input or any other error, 3 numerical precision ran out.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};
use sha2::{Digest, Sha256};

use crate::cmhodge::{find_compatible_cm_type, half_twist, half_twist_ladder, CMField, CMType, EHodgeType};
use crate::error::{Error, Result};
use crate::frobtorus::{rank_compare, RankConfig, RankMode, DEFAULT_PRECISION_BITS, DEFAULT_RELATION_BOUND};
use crate::ingest::{
    build_cm_system, build_curve_system, dataset_from_str, dataset_to_string, decode_value, CmConfig, CurveConfig,
    SheetSpec,
};
use crate::numfield::{Embedding, Field, Value};
use crate::systems::{
    check_system, combine_systems, extend_system, identity_fiber, restrict_system, CheckOptions, CombineOp, Entry,
    System, DEFAULT_LEVEL_CAP, DEFAULT_N_MAX,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCOMPATIBLE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "frobsys", version, about = "Frobenius characteristic-polynomial systems")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count points of y^2 = x^3 + ax + b and write a dataset over Q.
    Count(CountArgs),
    /// Write the rank-one CM dataset of a curve over an imaginary quadratic field.
    CmFixture(CmArgs),
    /// Decide quasi-compatibility across the sheets of one or two datasets.
    Check(CheckArgs),
    /// Dual, direct sum, tensor product or Hom of datasets.
    Combine(CombineArgs),
    /// Restrict the coefficient field one step down the tower.
    Restrict(RestrictArgs),
    /// Extend the coefficient field by a new generator.
    Extend(ExtendArgs),
    /// Frobenius torus ranks per sheet and place.
    TorusRank(TorusArgs),
    /// Half twists of a rank-one Hodge type.
    Halftwist(HalftwistArgs),
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
    /// Count at every good prime below this bound.
    #[arg(long)]
    pub p_max: u64,
    /// Also record places with residue field F_{p^k}.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub ext_degrees: Vec<u32>,
    /// Residue characteristics of the λ-sheets (default 3).
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub ell: Vec<u64>,
    /// Count the quadratic twist by the least non-residue instead.
    #[arg(long)]
    pub twist: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CmArgs {
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub b: i64,
    #[arg(long, default_value_t = 500)]
    pub p_max: u64,
    /// `d` in E = Q(sqrt(-d)), presented by u^2 + d.
    #[arg(long, default_value_t = 1)]
    pub d: i64,
    /// Name of the generator of E.
    #[arg(long, default_value = "i")]
    pub generator: String,
    /// Residue characteristics of the two sheets.
    #[arg(long, num_args = 2, value_delimiter = ',', default_values_t = [3u64, 7])]
    pub ell: Vec<u64>,
    /// Give the second sheet the conjugate root (a negative control).
    #[arg(long)]
    pub conjugate: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(required = true, num_args = 1..=2)]
    pub files: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub n_max: u64,
    /// Require the strong verdict (no failure anywhere).
    #[arg(long)]
    pub strict: bool,
    /// Residue characteristics allowed to fail for the plain verdict.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub exceptional: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct CombineArgs {
    #[arg(long)]
    pub op: CombineOp,
    #[arg(required = true, num_args = 1..=2)]
    pub files: Vec<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RestrictArgs {
    pub file: PathBuf,
    /// Expected name of the target field (the base of the current one).
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = DEFAULT_LEVEL_CAP)]
    pub level_cap: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ExtendArgs {
    pub file: PathBuf,
    /// Name of the new generator.
    #[arg(long)]
    pub field: String,
    /// Its minimal polynomial over the current field: a JSON array of
    /// coefficients, ascending, leading 1 included.
    #[arg(long)]
    pub min_poly: String,
    /// Image of the current field's generator in the new field, as a JSON
    /// value (default: the inclusion).
    #[arg(long)]
    pub embed: Option<String>,
    /// Sheet correspondence `new=old` (default: keep every label).
    #[arg(long)]
    pub fiber: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct TorusArgs {
    pub file: PathBuf,
    /// Place labels to examine (default: all).
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub place: Vec<String>,
    #[arg(long, default_value = "exact")]
    pub mode: RankMode,
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: u32,
    #[arg(long, default_value_t = DEFAULT_RELATION_BOUND)]
    pub relation_bound: u32,
}

#[derive(Args, Debug)]
pub struct HalftwistArgs {
    /// Number of complex embeddings.
    #[arg(long)]
    pub sigma: usize,
    /// Complex conjugation in cycle notation, e.g. "(0 2)(1 3)".
    #[arg(long)]
    pub dagger: String,
    /// Bidegrees per embedding, e.g. "1,0 1,0 0,1 0,1".
    #[arg(long)]
    pub slots: String,
    /// CM type to twist by (default: the least compatible one).
    #[arg(long, value_delimiter = ',')]
    pub phi: Option<Vec<usize>>,
    /// Twist repeatedly down to level 0.
    #[arg(long, conflicts_with = "phi")]
    pub ladder: bool,
}

/// Report lines in either format.
struct Report {
    format: Format,
    out: Vec<String>,
}

impl Report {
    fn new(format: Format, command: &str, mut config: Json) -> Self {
        let mut r = Report { format, out: Vec::new() };
        config["kind"] = json!("config");
        config["command"] = json!(command);
        config["version"] = json!(env!("CARGO_PKG_VERSION"));
        match format {
            Format::Text => r.out.push(format!("# frobsys {command} {}", serde_json::to_string(&config).unwrap())),
            Format::Json => r.out.push(serde_json::to_string(&config).unwrap()),
        }
        r
    }

    fn line(&mut self, record: Json, text: String) {
        match self.format {
            Format::Text => self.out.push(text),
            Format::Json => self.out.push(serde_json::to_string(&record).unwrap()),
        }
    }

    fn emit(self, w: &mut dyn Write) {
        for l in self.out {
            let _ = writeln!(w, "{l}");
        }
    }
}

fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read_input(path: &Path) -> Result<(System, Json)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let sys = dataset_from_str(&text)?;
    Ok((sys, json!({"path": path.display().to_string(), "sha256": digest(text.as_bytes())})))
}

fn write_output(path: &Path, sys: &System) -> Result<Json> {
    let text = dataset_to_string(sys);
    std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(json!({"path": path.display().to_string(), "sha256": digest(text.as_bytes())}))
}

fn prefixed(sys: &System, prefix: &str) -> Result<System> {
    System::new(sys.sheets().iter().map(|s| s.clone().with_label(format!("{prefix}:{}", s.lambda()))).collect())
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted(_) => EXIT_PRECISION,
        _ => EXIT_ERROR,
    }
}

fn summary(sys: &System) -> String {
    let n = sys.sheets().len();
    format!(
        "{n} sheet{} over {}, dimension {}, {} places",
        if n == 1 { "" } else { "s" },
        sys.field().name(),
        sys.dim(),
        sys.places().len()
    )
}

fn cmd_count(args: &CountArgs, format: Format, w: &mut dyn Write) -> Result<i32> {
    let mut cfg = CurveConfig::new(args.a, args.b, args.p_max);
    cfg.ext_degrees = args.ext_degrees.clone();
    cfg.twist = args.twist;
    if !args.ell.is_empty() {
        cfg.sheets = args.ell.iter().map(|&l| SheetSpec::for_ell(l)).collect();
    }
    let config = json!({
        "a": args.a, "b": args.b, "p_max": args.p_max, "ext_degrees": args.ext_degrees,
        "ell": cfg.sheets.iter().map(|s| s.ell).collect::<Vec<_>>(), "twist": args.twist,
        "threads": rayon::current_num_threads(),
    });
    let sys = build_curve_system(&cfg)?;
    let out = write_output(&args.out, &sys)?;
    let mut r = Report::new(format, "count", config);
    r.line(json!({"kind": "output", "file": out, "places": sys.places().len()}), format!("wrote {}: {}", args.out.display(), summary(&sys)));
    r.emit(w);
    Ok(EXIT_OK)
}

fn cmd_cm_fixture(args: &CmArgs, format: Format, w: &mut dyn Write) -> Result<i32> {
    if args.d <= 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let e = Field::over_q(&args.generator, &[args.d, 0, 1])?;
    let mut cfg = CmConfig::new(args.a, args.b, args.p_max);
    cfg.sheets = [SheetSpec::for_ell(args.ell[0]), SheetSpec::for_ell(args.ell[1])];
    cfg.conjugate = args.conjugate;
    let config = json!({
        "a": args.a, "b": args.b, "p_max": args.p_max, "d": args.d, "generator": args.generator,
        "ell": args.ell, "conjugate": args.conjugate, "threads": rayon::current_num_threads(),
    });
    let sys = build_cm_system(&e, &cfg)?;
    let split = sys.sheets()[0].entries().iter().filter(|e| matches!(e, Entry::Unramified(_))).count();
    let out = write_output(&args.out, &sys)?;
    let mut r = Report::new(format, "cm-fixture", config);
    r.line(
        json!({"kind": "output", "file": out, "places": sys.places().len(), "split_places": split}),
        format!("wrote {}: {}, {split} split", args.out.display(), summary(&sys)),
    );
    r.emit(w);
    Ok(EXIT_OK)
}

fn cmd_check(args: &CheckArgs, format: Format, w: &mut dyn Write) -> Result<i32> {
    let mut inputs = Vec::new();
    let mut systems = Vec::new();
    for f in &args.files {
        let (s, d) = read_input(f)?;
        systems.push(s);
        inputs.push(d);
    }
    let sys = match systems.as_slice() {
        [one] => one.clone(),
        [a, b] => prefixed(a, "a")?.merge(&prefixed(b, "b")?)?,
        _ => unreachable!("clap limits the file count"),
    };
    let opts = CheckOptions { n_max: args.n_max, exceptional_primes: args.exceptional.iter().copied().collect::<BTreeSet<_>>() };
    let config = json!({
        "inputs": inputs, "n_max": args.n_max, "strict": args.strict, "exceptional": args.exceptional,
        "threads": rayon::current_num_threads(),
    });
    let report = check_system(&sys, &opts)?;
    let mut r = Report::new(format, "check", config);
    for c in &report.cells {
        let level = c.verdict.level();
        r.line(
            json!({"kind": "verdict", "sheet_a": c.sheet_a, "sheet_b": c.sheet_b, "place": c.place.label(),
                   "p": c.place.p(), "f": c.place.f(), "verdict": c.verdict.tag(), "n": level}),
            format!(
                "{:<14} {:<14} {:>8}  {}{}",
                c.sheet_a,
                c.sheet_b,
                c.place.label(),
                c.verdict.tag(),
                level.map(|n| format!(" N={n}")).unwrap_or_default()
            ),
        );
    }
    let strong = report.strong_quasi_compatible();
    let plain = report.plain_quasi_compatible();
    let compatible = report.count(|v| matches!(v, crate::systems::Verdict::CompatibleAt(_)));
    let failures = report.failures().count();
    let excluded = report.count(|v| v.is_excluded());
    let first = report.first_failure();
    r.line(
        json!({"kind": "summary", "pairs": report.pairs, "cells": report.cells.len(), "compatible": compatible,
               "incompatible": failures, "excluded": excluded, "strong_quasi_compatible": strong,
               "plain_quasi_compatible": plain,
               "first_failure": first.map(|c| json!({"place": c.place.label(), "sheet_a": c.sheet_a, "sheet_b": c.sheet_b}))}),
        format!(
            "summary: {} pairs, {} cells, {compatible} compatible, {failures} incompatible, {excluded} excluded\nstrong_quasi_compatible: {strong}\nplain_quasi_compatible: {plain}{}",
            report.pairs,
            report.cells.len(),
            first
                .map(|c| format!("\nfirst failing place: {} ({} vs {})", c.place.label(), c.sheet_a, c.sheet_b))
                .unwrap_or_default()
        ),
    );
    r.emit(w);
    let ok = if args.strict { strong } else { plain };
    Ok(if ok { EXIT_OK } else { EXIT_INCOMPATIBLE })
}

fn cmd_combine(args: &CombineArgs, format: Format, w: &mut dyn Write) -> Result<i32> {
    let mut inputs = Vec::new();
    let mut systems = Vec::new();
    for f in &args.files {
        let (s, d) = read_input(f)?;
        systems.push(s);
        inputs.push(d);
    }
    let sys = combine_systems(args.op, &systems[0], systems.get(1))?;
    let out = write_output(&args.out, &sys)?;
    let mut r = Report::new(format, "combine", json!({"op": args.op.name(), "inputs": inputs}));
    r.line(json!({"kind": "output", "file": out}), format!("wrote {}: {}", args.out.display(), summary(&sys)));
    r.emit(w);
    Ok(EXIT_OK)
}

fn cmd_restrict(args: &RestrictArgs, format: Format, w: &mut dyn Write) -> Result<i32> {
    let (sys, input) = read_input(&args.file)?;
    let field = sys.field();
    let (Some(base), Some(presentation)) = (field.base(), field.min_poly()) else {
        return Err(Error::InvalidArgument("dataset is already over Q".into()));
    };
    if let Some(name) = &args.field {
        if name != base.name() {
            return Err(Error::InvalidArgument(format!(
                "{} lies directly over {}, not {name}",
                field.name(),
                base.name()
            )));
        }
    }
    let out_sys = restrict_system(&sys, &presentation, args.level_cap)?;
    let out = write_output(&args.out, &out_sys)?;
    let mut r = Report::new(
        format,
        "restrict",
        json!({"inputs": [input], "from": field.name(), "to": base.name(), "level_cap": args.level_cap}),
    );
    r.line(json!({"kind": "output", "file": out}), format!("wrote {}: {}", args.out.display(), summary(&out_sys)));
    r.emit(w);
    Ok(EXIT_OK)
}

fn parse_json_values(field: &Field, text: &str, what: &str) -> Result<Vec<Value>> {
    let j: Json = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("{what}: {e}")))?;
    let items = j.as_array().ok_or_else(|| Error::InvalidArgument(format!("{what} must be a JSON array")))?;
    items
        .iter()
        .map(|c| decode_value(field, c).map_err(|e| Error::InvalidArgument(format!("{what}: {e}"))))
        .collect()
}

fn cmd_extend(args: &ExtendArgs, format: Format, w: &mut dyn Write) -> Result<i32> {
    let (sys, input) = read_input(&args.file)?;
    let source = sys.field().clone();
    let min_poly = parse_json_values(&source, &args.min_poly, "--min-poly")?;
    let target = Field::extension(&args.field, &source, min_poly)?;
    let phi = match &args.embed {
        None => Embedding::inclusion(&source, &target)?,
        Some(text) => {
            let j: Json = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("--embed: {e}")))?;
            let v = decode_value(&target, &j).map_err(|e| Error::InvalidArgument(format!("--embed: {e}")))?;
            Embedding::new(&source, &target, Some(crate::numfield::NFElement::new(target.clone(), v)?))?
        }
    };
    let fiber = if args.fiber.is_empty() {
        identity_fiber(&sys)
    } else {
        args.fiber
            .iter()
            .map(|s| {
                s.split_once('=')
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .ok_or_else(|| Error::InvalidArgument(format!("--fiber {s:?} is not new=old")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    let out_sys = extend_system(&sys, &phi, &fiber)?;
    let out = write_output(&args.out, &out_sys)?;
    let mut r = Report::new(
        format,
        "extend",
        json!({"inputs": [input], "field": args.field, "min_poly": args.min_poly, "embed": args.embed, "fiber": fiber}),
    );
    r.line(json!({"kind": "output", "file": out}), format!("wrote {}: {}", args.out.display(), summary(&out_sys)));
    r.emit(w);
    Ok(EXIT_OK)
}

fn cmd_torus_rank(args: &TorusArgs, format: Format, w: &mut dyn Write) -> Result<i32> {
    let (sys, input) = read_input(&args.file)?;
    let cfg = RankConfig { mode: args.mode, precision_bits: args.precision_bits, relation_bound: args.relation_bound };
    let config = json!({
        "inputs": [input], "places": args.place, "mode": args.mode.name(),
        "precision_bits": args.precision_bits, "relation_bound": args.relation_bound,
        "threads": rayon::current_num_threads(),
    });
    let places: Vec<String> = if args.place.is_empty() {
        sys.places().iter().map(|p| p.label().to_string()).collect()
    } else {
        let known: BTreeSet<String> = sys.places().iter().map(|p| p.label().to_string()).collect();
        if let Some(p) = args.place.iter().find(|p| !known.contains(*p)) {
            return Err(Error::InvalidPlace(format!("no place {p} in the dataset")));
        }
        args.place.clone()
    };
    let mut r = Report::new(format, "torus-rank", config);
    for place in &places {
        let samples: Vec<(String, crate::systems::FrobSample)> = sys
            .sheets()
            .iter()
            .filter_map(|s| s.entry(place).and_then(Entry::sample).map(|x| (s.lambda().to_string(), x.clone())))
            .collect();
        if samples.is_empty() {
            r.line(json!({"kind": "rank_skip", "place": place}), format!("{place:>8}  no unramified samples"));
            continue;
        }
        let cmp = rank_compare(&samples, &cfg)?;
        for row in &cmp.rows {
            let t = &row.result;
            r.line(
                json!({"kind": "rank", "sheet": row.label, "place": cmp.place, "level": cmp.level, "degree": row.degree,
                       "rank_estimate": t.rank_estimate, "rank_certified_upper": t.rank_certified_upper,
                       "certified": t.certified, "precision_bits_used": t.precision_bits_used,
                       "relations": t.lattice.basis, "verified": t.lattice.verified,
                       "multiplicities": t.multiplicities, "splitting_field": t.splitting_field}),
                format!(
                    "{:<14} {:>8}  N={} deg={} rank={} upper={} certified={}{}",
                    row.label,
                    cmp.place,
                    cmp.level,
                    row.degree,
                    t.rank_estimate,
                    t.rank_certified_upper,
                    t.certified,
                    t.splitting_field.as_ref().map(|s| format!(" via {s}")).unwrap_or_default()
                ),
            );
        }
        r.line(
            json!({"kind": "rank_compare", "place": cmp.place, "agree": cmp.ranks_agree(), "all_certified": cmp.all_certified()}),
            format!("{:>23}  agree={} all_certified={}", cmp.place, cmp.ranks_agree(), cmp.all_certified()),
        );
    }
    r.emit(w);
    Ok(EXIT_OK)
}

fn parse_slots(text: &str) -> Result<Vec<(i64, i64)>> {
    text.split(|c: char| c.is_whitespace() || c == ';')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.trim_matches(|c| c == '(' || c == ')');
            let (p, q) = t.split_once(',').ok_or_else(|| Error::InvalidArgument(format!("slot {t:?} is not p,q")))?;
            let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad slot {t:?}")));
            Ok((parse(p)?, parse(q)?))
        })
        .collect()
}

fn hodge_json(v: &EHodgeType) -> Json {
    json!({"weight": v.weight(), "level": v.level(), "slots": v.bidegrees()})
}

fn cmd_halftwist(args: &HalftwistArgs, format: Format, w: &mut dyn Write) -> Result<i32> {
    let field = CMField::parse(&args.dagger, args.sigma)?;
    let v = EHodgeType::new(&field, parse_slots(&args.slots)?)?;
    let config = json!({"sigma": args.sigma, "dagger": field.cycle_notation(), "slots": args.slots, "phi": args.phi, "ladder": args.ladder});
    let steps: Vec<(CMType, EHodgeType)> = if args.ladder {
        half_twist_ladder(&v)?
    } else {
        let phi = match &args.phi {
            Some(p) => CMType::new(&field, p.iter().copied())?,
            None => find_compatible_cm_type(&v)
                .ok_or_else(|| Error::Hodge("the upper set meets its conjugate; no compatible CM type".into()))?,
        };
        let w = half_twist(&v, &phi)?;
        vec![(phi, w)]
    };
    let mut r = Report::new(format, "halftwist", config);
    r.line(
        json!({"kind": "hodge", "step": 0, "type": hodge_json(&v)}),
        format!("step 0  weight {} level {}  {v}", v.weight(), v.level()),
    );
    for (i, (phi, t)) in steps.iter().enumerate() {
        r.line(
            json!({"kind": "hodge", "step": i + 1, "phi": phi.phi(), "type": hodge_json(t)}),
            format!("step {}  phi {phi}  weight {} level {}  {t}", i + 1, t.weight(), t.level()),
        );
    }
    r.emit(w);
    Ok(EXIT_OK)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("FROBSYS_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| Error::InvalidArgument(format!("FROBSYS_THREADS={v:?} is not a positive integer")))?;
        // A second call in the same process finds the pool already built.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs a parsed invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the exit status.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Count(a) => cmd_count(a, cli.format, out),
        Command::CmFixture(a) => cmd_cm_fixture(a, cli.format, out),
        Command::Check(a) => cmd_check(a, cli.format, out),
        Command::Combine(a) => cmd_combine(a, cli.format, out),
        Command::Restrict(a) => cmd_restrict(a, cli.format, out),
        Command::Extend(a) => cmd_extend(a, cli.format, out),
        Command::TorusRank(a) => cmd_torus_rank(a, cli.format, out),
        Command::Halftwist(a) => cmd_halftwist(a, cli.format, out),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Parses `args` (program name first) and runs. Usage errors exit with 2.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            code
        }
    }
}
