//! Command-line front end: argument definitions and the commands behind
//! them. Each command returns a [`Report`]; `main` prints it and exits with
//! its status.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::cuspdata::{class_number_one_list, nonarith_cusp_table, picard_cusp_descriptor, verify_vertical_generator};
use crate::family::{build_presentation, parse_relators, FamilyError, FamilyId, FamilyParams, Word};
use crate::heis::IsomClass;
use crate::holonomy::{erratum_family4, standard_rep, verify_holonomy, HolonomyError};
use crate::obstruct::{
    allowed_d, antihol_required, root_of_unity, rotational_order, smallest_allowed_d, UNIT_SEARCH_BOUND,
};
use crate::report::{CheckRecord, Outcome, Report, ReportParseError};
use crate::ring::{is_squarefree, SquarefreeD};
use crate::text::{parse_heis, ParseError};

/// Environment variable capping the number of worker threads.
pub const WORKERS_ENV: &str = "HEISCUSP_WORKERS";

#[derive(Debug, Parser)]
#[command(name = "heiscusp", version, about = "Exact verification of Nil-manifold cusp holonomy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the standard holonomy representations over a parameter sweep.
    Verify(VerifyArgs),
    /// Classify a stabilizer element given as "(z; t; u)" or "(z; t; u)*sigma".
    Classify(ClassifyArgs),
    /// Print the allowed fields and antiholomorphy verdicts per family.
    Obstruct(ObstructArgs),
    /// Print Picard cusp descriptors or the non-arithmetic cusp table.
    Cusp(CuspArgs),
    /// Print a family presentation, or compare one read from a file.
    Presentation(PresentationArgs),
    /// Read a saved report (text or JSON) and print its summary.
    Summarize(SummarizeArgs),
}

/// Comma-separated integers and inclusive ranges, e.g. `1..5,8`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSet(pub Vec<IntItem>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntItem {
    pub value: i64,
    /// Came from an `a..b` range rather than being listed.
    pub from_range: bool,
}

const MAX_RANGE: i64 = 100_000;

pub fn parse_int_set(s: &str) -> Result<IntSet, String> {
    let mut items = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let num = |x: &str| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| format!("{x:?} is not an integer (in {s:?})"))
        };
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (num(a)?, num(b)?);
            if a > b {
                return Err(format!("empty range {part:?}"));
            }
            if b - a > MAX_RANGE {
                return Err(format!("range {part:?} is longer than {MAX_RANGE}"));
            }
            items.extend((a..=b).map(|value| IntItem { value, from_range: true }));
        } else {
            items.push(IntItem {
                value: num(part)?,
                from_range: false,
            });
        }
    }
    Ok(IntSet(items))
}

impl IntSet {
    pub fn values(&self) -> Vec<i64> {
        self.0.iter().map(|i| i.value).collect()
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Families to sweep (default: all seven).
    #[arg(long, value_parser = parse_int_set)]
    pub family: Option<IntSet>,
    /// Values of k (default 1..10; with --erratum, 1..3).
    #[arg(long, value_parser = parse_int_set)]
    pub k: Option<IntSet>,
    /// Values of p for family 5 (default 1,3).
    #[arg(long, value_parser = parse_int_set)]
    pub p: Option<IntSet>,
    /// Values of k1 for families 6 and 7 (default 0,1 and 1,5).
    #[arg(long, value_parser = parse_int_set)]
    pub k1: Option<IntSet>,
    /// Values of k2 for family 6 (default 1,2).
    #[arg(long, value_parser = parse_int_set)]
    pub k2: Option<IntSet>,
    /// Values of d; non-squarefree values inside ranges are skipped
    /// (default: the least d the family is allowed over).
    #[arg(long, value_parser = parse_int_set)]
    pub d: Option<IntSet>,
    /// Reproduce the misprinted family-4 generator instead of sweeping.
    #[arg(long)]
    pub erratum: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// The element, e.g. "(0; 2*sqrt(3); 1)".
    pub element: String,
    /// The field parameter, when the element text does not determine it.
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ObstructArgs {
    #[arg(long, value_parser = parse_int_set)]
    pub family: Option<IntSet>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CuspArgs {
    /// Values of d (default 1..20 unless --nonarith is given).
    #[arg(long, value_parser = parse_int_set)]
    pub d: Option<IntSet>,
    #[arg(long)]
    pub nonarith: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PresentationArgs {
    #[arg(long)]
    pub family: u8,
    #[arg(long)]
    pub k: i64,
    #[arg(long)]
    pub p: Option<i64>,
    #[arg(long)]
    pub k1: Option<i64>,
    #[arg(long)]
    pub k2: Option<i64>,
    /// Compare against relators read from this file and emit a report.
    #[arg(long)]
    pub ingest: Option<std::path::PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SummarizeArgs {
    pub path: std::path::PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Report(#[from] ReportParseError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// What a command produced: a report, or plain text for `presentation`.
#[derive(Debug)]
pub enum Output {
    Report { report: Report, json: bool },
    Text(String),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Report { report, json: true } => report.to_json() + "\n",
            Output::Report { report, json: false } => report.to_text(),
            Output::Text(t) => t.clone(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Report { report, .. } => report.exit_code(),
            Output::Text(_) => 0,
        }
    }
}

/// Runs a parsed command line. `echo` is the command as typed, recorded in
/// the report.
pub fn run(cli: &Cli, echo: &str) -> Result<Output, CliError> {
    let report = |report, json| Ok(Output::Report { report, json });
    match &cli.command {
        Command::Verify(a) => report(cmd_verify(a, echo)?, a.json),
        Command::Classify(a) => report(cmd_classify(a, echo)?, a.json),
        Command::Obstruct(a) => report(cmd_obstruct(a, echo)?, a.json),
        Command::Cusp(a) => report(cmd_cusp(a, echo)?, a.json),
        Command::Presentation(a) => cmd_presentation(a, echo),
        Command::Summarize(a) => {
            let r = read_report(&a.path)?;
            Ok(Output::Report { report: r, json: false })
        }
    }
}

fn read_report(path: &std::path::Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    if text.trim_start().starts_with('{') {
        Ok(Report::from_json(&text)?)
    } else {
        Ok(Report::from_text(&text)?)
    }
}

/// Runs `f` on a pool capped by `HEISCUSP_WORKERS` when it is set.
fn with_workers<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(f());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?;
    Ok(pool.install(f))
}

fn families(set: Option<&IntSet>) -> Result<Vec<FamilyId>, CliError> {
    let Some(set) = set else {
        return Ok(FamilyId::ALL.to_vec());
    };
    let mut out = Vec::new();
    for v in set.values() {
        let id = u8::try_from(v).map_err(|_| CliError::Family(FamilyError::UnknownFamily(0)))?;
        let f = FamilyId::from_index(id)?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out.sort();
    Ok(out)
}

/// Squarefree `d` from the flag. Listed values must be squarefree; values
/// from ranges that are not are dropped.
fn field_params(set: &IntSet) -> Result<Vec<SquarefreeD>, CliError> {
    let mut out = Vec::new();
    for item in &set.0 {
        let v = u64::try_from(item.value).ok().filter(|&v| v >= 1);
        match v {
            Some(v) if is_squarefree(v) => out.push(SquarefreeD::new(v).expect("checked")),
            Some(_) | None if item.from_range => {}
            _ => return Err(CliError::Usage(format!("d = {} is not a squarefree positive integer", item.value))),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone)]
struct SweepPoint {
    family: FamilyId,
    params: FamilyParams,
    d: SquarefreeD,
    /// Every parameter relevant to the family was given on the command line.
    explicit: bool,
}

/// Values of one optional parameter; `None` where the family lacks it.
type Choices = Vec<Option<i64>>;

fn sweep_points(a: &VerifyArgs) -> Result<Vec<SweepPoint>, CliError> {
    let mut points = Vec::new();
    let ks = a.k.as_ref().map_or_else(|| (1..=10).collect(), IntSet::values);
    let given = |s: &Option<IntSet>| s.as_ref().map(IntSet::values);
    for family in families(a.family.as_ref())? {
        let ds = match &a.d {
            Some(set) => field_params(set)?,
            None => vec![smallest_allowed_d(family)],
        };
        let (ps, k1s, k2s, explicit): (Choices, Choices, Choices, bool) = match family {
            FamilyId::QuarterTwist => (
                given(&a.p).unwrap_or_else(|| vec![1, 3]).into_iter().map(Some).collect(),
                vec![None],
                vec![None],
                a.p.is_some(),
            ),
            FamilyId::ThirdTwist => (
                vec![None],
                given(&a.k1).unwrap_or_else(|| vec![0, 1]).into_iter().map(Some).collect(),
                given(&a.k2).unwrap_or_else(|| vec![1, 2]).into_iter().map(Some).collect(),
                a.k1.is_some() && a.k2.is_some(),
            ),
            FamilyId::SixthTwist => (
                vec![None],
                given(&a.k1).unwrap_or_else(|| vec![1, 5]).into_iter().map(Some).collect(),
                vec![None],
                a.k1.is_some(),
            ),
            _ => (vec![None], vec![None], vec![None], true),
        };
        for &k in &ks {
            for &p in &ps {
                for &k1 in &k1s {
                    for &k2 in &k2s {
                        let params = FamilyParams { k, p, k1, k2 };
                        for &d in &ds {
                            points.push(SweepPoint {
                                family,
                                params,
                                d,
                                explicit: explicit && a.k.is_some(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(points)
}

fn point_name(family: FamilyId, params: &FamilyParams, d: SquarefreeD) -> String {
    format!("verify family={} {params} d={d}", family.index())
}

fn verify_point(pt: &SweepPoint) -> Option<CheckRecord> {
    let name = point_name(pt.family, &pt.params, pt.d);
    let base = |outcome| {
        CheckRecord::new(name.clone(), outcome)
            .input("family", pt.family)
            .input("params", pt.params)
            .input("d", pt.d)
    };
    if let Err(e) = pt.params.validate(pt.family) {
        return pt.explicit.then(|| base(Outcome::Skipped).detail(e.to_string()));
    }
    let rep = match standard_rep(pt.family, pt.params, pt.d) {
        Ok(rep) => rep,
        Err(e @ HolonomyError::Obstructed { .. }) => return Some(base(Outcome::Refused).detail(e.to_string())),
        Err(e) => return Some(base(Outcome::Fail).detail(e.to_string())),
    };
    let cert = verify_holonomy(&rep);
    let mut rec = base(if cert.all_ok() { Outcome::Pass } else { Outcome::Fail });
    for (g, img) in &rep.images {
        rec = rec.input(g.name(), img);
    }
    for c in &cert.details {
        rec = rec.detail(format!("{}: {} ({})", c.name, if c.ok { "ok" } else { "FAILED" }, c.detail));
    }
    rec.residuals = cert
        .residuals
        .iter()
        .filter(|r| !r.is_identity)
        .map(|r| (r.relation.clone(), r.value.clone()))
        .collect();
    Some(rec)
}

pub fn cmd_verify(a: &VerifyArgs, echo: &str) -> Result<Report, CliError> {
    if a.erratum {
        return cmd_erratum(a, echo);
    }
    let points = sweep_points(a)?;
    let mut records: Vec<(usize, CheckRecord)> = with_workers(|| {
        points
            .par_iter()
            .enumerate()
            .filter_map(|(i, p)| verify_point(p).map(|r| (i, r)))
            .collect()
    })?;
    // Points are generated in sweep-key order; sort on that index so the
    // report does not depend on scheduling.
    records.sort_by_key(|(i, _)| *i);
    Ok(Report::new(echo, records.into_iter().map(|(_, r)| r).collect()))
}

fn cmd_erratum(a: &VerifyArgs, echo: &str) -> Result<Report, CliError> {
    if let Some(f) = &a.family {
        if f.values() != [4] {
            return Err(CliError::Usage("--erratum applies to family 4 only".into()));
        }
    }
    let ks = a.k.as_ref().map_or_else(|| vec![1, 2, 3], IntSet::values);
    if let Some(bad) = ks.iter().find(|&&k| k <= 0) {
        return Err(CliError::Usage(format!("k = {bad} must be positive")));
    }
    let records = ks
        .iter()
        .map(|&k| {
            let r = erratum_family4(k);
            let mut rec = CheckRecord::new(
                format!("erratum family=4 k={k} d=1"),
                if r.reproduced() { Outcome::Pass } else { Outcome::Fail },
            )
            .input("rho(c)", &r.rho_c)
            .input("misprinted alpha", &r.erroneous_alpha)
            .input("corrected alpha", &r.corrected_alpha)
            .detail(format!(
                "misprinted alpha^2 = {} (identity: {})",
                r.erroneous_square, r.erroneous_square_is_identity
            ))
            .detail(format!("misprinted alpha^2 differs from (0; {}; 1): {}", 32 * k, r.differs_from_quoted_value))
            .detail(format!(
                "misprinted alpha breaks: {}",
                r.erroneous_failing_relations.join("; ")
            ))
            .detail(format!(
                "corrected alpha^2 = {}, alpha^2 c^-1 = {} (relation holds: {})",
                r.corrected_square, r.corrected_residual, r.corrected_ok
            ));
            rec.residuals
                .push(("alpha^2 = c with misprinted alpha".into(), r.erroneous_residual.clone()));
            rec
        })
        .collect();
    Ok(Report::new(echo, records))
}

pub fn cmd_classify(a: &ClassifyArgs, echo: &str) -> Result<Report, CliError> {
    let d = a
        .d
        .map(|d| SquarefreeD::new(d).map_err(|e| CliError::Usage(e.to_string())))
        .transpose()?;
    let g = parse_heis(&a.element, d)?;
    let mut rec = CheckRecord::new(format!("classify {g}"), Outcome::Pass)
        .input("element", &g)
        .input("d", g.d());
    match g.classify() {
        Err(_) => {
            let sq = g.antihol_square().expect("antiholomorphic");
            rec.outcome = Outcome::Refused;
            rec = rec
                .detail("classification covers holomorphic elements; this one carries sigma")
                .detail(format!("square = {sq}"));
            if let Ok(c) = sq.classify() {
                rec = rec.detail(format!("square class: {c}"));
            }
        }
        Ok(class) => {
            rec = rec.detail(format!("class: {class}"));
            if !g.u().is_one() {
                if let Ok(c) = g.centered() {
                    rec = rec.detail(format!("centered: {c}"));
                }
            }
            match g.matrix_lift() {
                Ok((m, _)) => {
                    rec = rec.detail(format!("min poly: {}", m.min_poly()));
                    if let Ok(ev) = m.eigenvalues_upper() {
                        let ev: Vec<String> = ev.iter().map(ToString::to_string).collect();
                        rec = rec.detail(format!("eigenvalues: {}", ev.join(", ")));
                    }
                }
                Err(e) => rec = rec.detail(format!("lift: {e}")),
            }
            if g.u().is_one() {
                let by_poly = g.classify_by_min_poly();
                if let Some(c) = by_poly {
                    rec = rec.detail(format!("min-poly route: {c}"));
                }
                if by_poly.is_some_and(|c| c != class) {
                    rec.outcome = Outcome::Fail;
                }
            } else if class == IsomClass::Elliptic || class == IsomClass::ElliptoParabolic {
                rec = rec.detail(format!("rotational part u = {}", g.u()));
            }
        }
    }
    Ok(Report::new(echo, vec![rec]))
}

pub fn cmd_obstruct(a: &ObstructArgs, echo: &str) -> Result<Report, CliError> {
    let mut records = Vec::new();
    for family in families(a.family.as_ref())? {
        let n = rotational_order(family);
        let allowed = allowed_d(family);
        let params = FamilyParams::smallest_valid(family);
        let mut rec = CheckRecord::new(format!("allowed_d family={}", family.index()), Outcome::Pass)
            .input("family", family)
            .input("rotational order", n)
            .input("allowed", &allowed);
        for d in SquarefreeD::up_to(UNIT_SEARCH_BOUND + 1) {
            let root = root_of_unity(n, d).expect("family orders are supported");
            rec = rec.detail(match &root.value {
                Some(v) => format!("d={d}: zeta_{n} = {v} lies in Q(i*sqrt({d}))"),
                None => format!("d={d}: zeta_{n} is not in Q(i*sqrt({d})); obstructed"),
            });
        }
        rec = rec.detail(format!(
            "d > {UNIT_SEARCH_BOUND}: O_d has only the units 1, -1, as for d = {}",
            UNIT_SEARCH_BOUND + 1
        ));
        // The standard representation must exist exactly over the allowed d.
        let mismatched: Vec<u64> = SquarefreeD::up_to(30)
            .filter(|&d| standard_rep(family, params, d).is_ok() != allowed.contains(d))
            .map(SquarefreeD::get)
            .collect();
        if mismatched.is_empty() {
            rec = rec.detail(format!("standard representation ({params}) exists exactly over allowed d <= 30"));
        } else {
            rec.outcome = Outcome::Fail;
            rec = rec.detail(format!("standard representation disagrees at d = {mismatched:?}"));
        }
        records.push(rec);

        let v = antihol_required(family);
        let mut rec = CheckRecord::new(
            format!("antihol_required family={}", family.index()),
            if v.all_checks_pass() { Outcome::Pass } else { Outcome::Fail },
        )
        .input("family", family)
        .input("required", v.required);
        for (step, ok) in &v.steps {
            rec = rec.detail(format!("[{}] {step}", if *ok { "ok" } else { "FAILED" }));
        }
        records.push(rec);
    }
    Ok(Report::new(echo, records))
}

pub fn cmd_cusp(a: &CuspArgs, echo: &str) -> Result<Report, CliError> {
    let mut records = Vec::new();
    let ds = match &a.d {
        Some(set) => field_params(set)?,
        None if a.nonarith => Vec::new(),
        None => SquarefreeD::up_to(20).collect(),
    };
    let single_cusp = class_number_one_list();
    for d in ds {
        let desc = picard_cusp_descriptor(d);
        let v = verify_vertical_generator(d);
        records.push(
            CheckRecord::new(
                format!("picard_cusp d={d}"),
                if v.confirmed() { Outcome::Pass } else { Outcome::Fail },
            )
            .input("d", d)
            .input("horizontal", desc.horizontal_tag)
            .input("vertical generator", &desc.vertical_generator)
            .detail(format!(
                "{} has corner entry {}, integral: {}",
                v.generator, v.generator_corner, v.generator_integral
            ))
            .detail(format!(
                "{} has corner entry {}, integral: {}",
                v.misstated, v.misstated_corner, v.misstated_integral
            ))
            .detail(format!("half-turn (0; 0; -1) integral: {}", v.half_turn_integral))
            .detail(format!("generator class {}, min poly {}", v.generator_class, v.generator_min_poly))
            .detail(format!("single cusp (class number one): {}", single_cusp.contains(&d.get()))),
        );
    }
    if a.nonarith {
        for row in nonarith_cusp_table() {
            let mut rec = CheckRecord::new(format!("nonarith p={}", row.p), Outcome::Info)
                .input("p", row.p)
                .input("horizontal", row.horizontal)
                .input("vertical", row.vertical_word());
            let matching = match &row.matching_picard {
                Some(m) => format!("{:?} Gamma_inf({})", m.relation, m.d),
                None => "none".to_string(),
            };
            rec = rec.input("picard match", matching);
            if !row.reflection_lattices.is_empty() {
                rec = rec.detail(format!(
                    "R-reflection lattices with cusp group G_inf(O_d): {}",
                    row.reflection_lattices.join(", ")
                ));
            }
            records.push(rec);
        }
    }
    Ok(Report::new(echo, records))
}

fn cmd_presentation(a: &PresentationArgs, echo: &str) -> Result<Output, CliError> {
    let family = FamilyId::from_index(a.family)?;
    let params = FamilyParams {
        k: a.k,
        p: a.p,
        k1: a.k1,
        k2: a.k2,
    };
    let pres = build_presentation(family, params)?;
    let Some(path) = &a.ingest else {
        return Ok(Output::Text(pres.to_text()));
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let read = parse_relators(&text)?;
    let want: Vec<&Word> = pres.relators.iter().map(|r| &r.word).collect();
    let same = read.len() == want.len() && read.iter().zip(&want).all(|(x, y)| x == *y);
    let mut rec = CheckRecord::new(
        format!("presentation family={} {params}", family.index()),
        if same { Outcome::Pass } else { Outcome::Fail },
    )
    .input("file", path.display())
    .detail(format!("{} relators read, {} expected", read.len(), want.len()));
    let mut diffs = String::new();
    for (i, (x, y)) in read.iter().zip(&want).enumerate() {
        if x != *y {
            let _ = write!(diffs, "line {}: read {x}, expected {y}; ", i + 1);
        }
    }
    if !diffs.is_empty() {
        rec = rec.detail(diffs.trim_end_matches("; ").to_string());
    }
    Ok(Output::Report {
        report: Report::new(echo, vec![rec]),
        json: a.json,
    })
}
