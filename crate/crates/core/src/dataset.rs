//! Polytope files, batch verification and report output.
//!
//! A file is a sequence of blocks separated by blank lines:
//!
//! ```text
//! # comment
//! polytope hexagon
//! dim 2
//! vertices 6
//! 1 0
//! ...
//! ```
//!
//! The `polytope` line may be omitted, in which case the id is `source:line`.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use walkdir::WalkDir;

use crate::bounds::{check_delta_unimodal, check_volume_sandwich};
use crate::ehrhart::{check_volume_identity, count_lattice_points, delta_vector, DeltaVector};
use crate::idp::idp_check;
use crate::linalg::IntegerVector;
use crate::polytope::{h_from_f, FVector, HVector, Polytope};
use crate::reflexive::{check_reflexive_equivalences, check_smooth_fano_equivalences, is_reflexive, is_smooth_fano};
use crate::triangulation::{boundary_triangulation, check_hibi_inequality, verify_oda_theorem};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeRecord {
    pub id: String,
    pub dim: usize,
    pub vertices: Vec<IntegerVector>,
    /// `file:line` of the block header.
    pub source: String,
}

impl PolytopeRecord {
    pub fn to_polytope(&self) -> Result<Polytope> {
        Polytope::new(self.dim, self.vertices.clone())
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate().peekable(),
            last: 0,
        }
    }

    /// Next non-comment line as `(line number, text)`.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            if !line.trim_start().starts_with('#') {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn skip_blank(&mut self) {
        while let Some((_, line)) = self.inner.peek() {
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                self.inner.next();
            } else {
                break;
            }
        }
    }
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, i)),
            (true, Some((c, s))) => {
                out.push((c, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, s)) = start {
        out.push((c, &line[s..]));
    }
    out
}

/// Parses every block in `text`; `source` names the input in locations.
pub fn parse_polytopes(text: &str, source: &str) -> Result<Vec<PolytopeRecord>> {
    let err = |line: usize, column: usize, message: String| Error::Parse {
        file: source.to_string(),
        line,
        column,
        message,
    };
    let mut lines = Lines::new(text);
    let mut records: Vec<PolytopeRecord> = Vec::new();
    let mut seen: HashMap<String, String> = HashMap::new();
    loop {
        lines.skip_blank();
        let Some((header_no, header)) = lines.next() else {
            break;
        };
        let toks = tokens(header);
        let (id, dim_line) = match toks.first() {
            Some((_, "polytope")) => {
                let id = match toks.as_slice() {
                    [_, (_, id)] => id.to_string(),
                    [_] => return Err(err(header_no, header.chars().count() + 1, "missing polytope id".into())),
                    [_, _, (c, _), ..] => return Err(err(header_no, *c, "polytope id must be a single token".into())),
                    [] => unreachable!(),
                };
                let next = lines.next();
                (id, next)
            }
            Some((_, "dim")) => (format!("{source}:{header_no}"), Some((header_no, header))),
            Some((c, t)) => return Err(err(header_no, *c, format!("expected `polytope` or `dim`, found `{t}`"))),
            None => unreachable!("blank lines are skipped"),
        };
        let dim = header_value(dim_line, "dim", lines.last + 1, &err)?;
        if dim == 0 {
            return Err(err(lines.last, 5, "dimension must be at least 1".into()));
        }
        let count = header_value(lines.next(), "vertices", lines.last + 1, &err)?;
        let mut vertices = Vec::with_capacity(count);
        for k in 0..count {
            let (no, row) = match lines.next() {
                Some((no, row)) if !row.trim().is_empty() => (no, row),
                Some((no, _)) => return Err(err(no, 1, format!("expected {count} vertex rows, found {k}"))),
                None => return Err(err(lines.last + 1, 1, format!("expected {count} vertex rows, found {k}"))),
            };
            let toks = tokens(row);
            if toks.len() > dim {
                return Err(err(no, toks[dim].0, format!("expected {dim} coordinates, found {}", toks.len())));
            }
            if toks.len() < dim {
                return Err(err(
                    no,
                    row.chars().count() + 1,
                    format!("expected {dim} coordinates, found {}", toks.len()),
                ));
            }
            let coords = toks
                .iter()
                .map(|(c, t)| BigInt::from_str(t).map_err(|_| err(no, *c, format!("`{t}` is not an integer"))))
                .collect::<Result<Vec<_>>>()?;
            vertices.push(IntegerVector::new(coords));
        }
        let origin = format!("{source}:{header_no}");
        if let Some(first) = seen.insert(id.clone(), origin.clone()) {
            return Err(Error::Validation(format!("duplicate id `{id}` at {origin}, first defined at {first}")));
        }
        records.push(PolytopeRecord {
            id,
            dim,
            vertices,
            source: origin,
        });
    }
    Ok(records)
}

fn header_value(
    line: Option<(usize, &str)>,
    key: &str,
    eof_line: usize,
    err: &impl Fn(usize, usize, String) -> Error,
) -> Result<usize> {
    let Some((no, text)) = line else {
        return Err(err(eof_line, 1, format!("expected `{key}` line")));
    };
    match tokens(text).as_slice() {
        [(_, k), (c, v)] if *k == key => v.parse().map_err(|_| err(no, *c, format!("`{v}` is not a count"))),
        [(c, k), ..] if *k != key => Err(err(no, *c, format!("expected `{key}`, found `{k}`"))),
        _ => Err(err(no, 1, format!("expected `{key} <integer>`"))),
    }
}

/// Canonical text form; `parse_polytopes` reads it back to the same records.
pub fn serialize_polytopes(records: &[PolytopeRecord]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("polytope {}\ndim {}\nvertices {}\n", r.id, r.dim, r.vertices.len()));
        for v in &r.vertices {
            let row: Vec<String> = v.entries().iter().map(BigInt::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn load_file(path: &Path) -> Result<Vec<PolytopeRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_polytopes(&text, &path.display().to_string())
}

/// Every `*.poly` file below `dir`, in file-name order. Ids must be unique
/// across files.
pub fn load_dir(dir: &Path) -> Result<Vec<PolytopeRecord>> {
    let mut records = Vec::new();
    let mut seen: HashMap<String, String> = HashMap::new();
    for entry in WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| Error::Io(e.to_string()))?;
        let path = entry.path();
        if !entry.file_type().is_file() || path.extension().is_none_or(|e| e != "poly") {
            continue;
        }
        let rel = path.strip_prefix(dir).unwrap_or(path);
        let name = rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/");
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        for r in parse_polytopes(&text, &name)? {
            if let Some(first) = seen.insert(r.id.clone(), r.source.clone()) {
                return Err(Error::Validation(format!(
                    "duplicate id `{}` at {}, first defined at {first}",
                    r.id, r.source
                )));
            }
            records.push(r);
        }
    }
    Ok(records)
}

/// Which checks [`batch_check`] runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchConfig {
    pub reflexive: bool,
    pub smooth_fano: bool,
    /// Cross-check the reflexive and smooth Fano characterizations against each other.
    pub equivalences: bool,
    /// Cone triangulation for smooth Fano inputs, boundary h-vector versus δ for reflexive ones.
    pub triangulation: bool,
    pub idp_cmax: Option<u64>,
    pub bounds: bool,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig {
            reflexive: true,
            smooth_fano: true,
            equivalences: true,
            triangulation: true,
            idp_cmax: Some(2),
            bounds: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Ok,
    Failed,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Ok => "ok",
            CheckStatus::Failed => "failed",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub id: String,
    pub dim: usize,
    pub n_vertices: usize,
    pub n_boundary_points: Option<u64>,
    pub reflexive: Option<bool>,
    pub smooth_fano: Option<bool>,
    pub normalized_volume: Option<BigInt>,
    pub delta: Option<DeltaVector>,
    pub h: Option<HVector>,
    pub f: Option<FVector>,
    pub oda: Option<bool>,
    pub idp_cmax: Option<u64>,
    pub idp_holds: Option<bool>,
    pub sandwich_lower: Option<BigInt>,
    pub sandwich_upper: Option<BigInt>,
    pub within: Option<bool>,
    pub notes: Vec<String>,
    pub status: CheckStatus,
}

impl CheckReport {
    fn new(record: &PolytopeRecord) -> Self {
        CheckReport {
            id: record.id.clone(),
            dim: record.dim,
            n_vertices: record.vertices.len(),
            n_boundary_points: None,
            reflexive: None,
            smooth_fano: None,
            normalized_volume: None,
            delta: None,
            h: None,
            f: None,
            oda: None,
            idp_cmax: None,
            idp_holds: None,
            sandwich_lower: None,
            sandwich_upper: None,
            within: None,
            notes: Vec::new(),
            status: CheckStatus::Ok,
        }
    }

    fn fail(&mut self, note: String) {
        self.status = CheckStatus::Failed;
        self.notes.push(note);
    }
}

/// Runs the configured checks on every record. Errors are recorded per record;
/// the output has one report per record, in input order.
pub fn batch_check(records: &[PolytopeRecord], config: &BatchConfig) -> Vec<CheckReport> {
    records.iter().map(|r| check_record(r, config)).collect()
}

fn check_record(record: &PolytopeRecord, config: &BatchConfig) -> CheckReport {
    let mut report = CheckReport::new(record);
    let p = match record.to_polytope() {
        Ok(p) => p,
        Err(e @ Error::Degenerate(_)) => {
            report.status = CheckStatus::Skipped;
            report.notes.push(e.to_string());
            return report;
        }
        Err(e) => {
            report.fail(e.to_string());
            return report;
        }
    };
    report.n_vertices = p.vertices().len();
    if let Err(e) = run_checks(&p, config, &mut report) {
        report.fail(e.to_string());
    }
    report
}

fn run_checks(p: &Polytope, config: &BatchConfig, report: &mut CheckReport) -> Result<()> {
    let d = p.dim();
    report.normalized_volume = Some(p.normalized_volume());
    report.n_boundary_points = Some(count_lattice_points(p, 1, false)?.0.boundary);
    report.delta = Some(delta_vector(p)?);
    if !check_volume_identity(p)? {
        report.fail("sum of δ differs from the normalized volume".into());
    }
    if p.is_simplicial() {
        let f = p.f_vector()?;
        report.h = Some(h_from_f(&f, d)?);
        report.f = Some(f);
    }
    let reflexive = is_reflexive(p);
    let smooth = is_smooth_fano(p);
    if config.reflexive {
        report.reflexive = Some(reflexive);
    }
    if config.smooth_fano {
        report.smooth_fano = Some(smooth);
    }
    if config.equivalences {
        if p.has_interior_origin() {
            let r = check_reflexive_equivalences(p)?;
            if !r.verdicts_agree {
                report.fail(format!(
                    "reflexivity criteria disagree: dual lattice {}, boundary volume {}, palindromic {}",
                    r.dual_is_lattice, r.volume_identity_holds, r.palindromic
                ));
            }
        }
        check_smooth_fano_equivalences(p)?;
    }
    if config.triangulation {
        if smooth {
            report.oda = Some(verify_oda_theorem(p)?);
        }
        if reflexive {
            let t = boundary_triangulation(p, !p.is_simplicial())?;
            let hibi = check_hibi_inequality(p, &t)?;
            if !hibi.holds {
                report.fail(format!("boundary h-vector {} exceeds δ {}", hibi.h, hibi.delta));
            } else if hibi.equality {
                report.notes.push(format!("boundary h-vector {} equals δ", hibi.h));
            } else {
                report.notes.push(format!("boundary h-vector {} < δ {} (strict)", hibi.h, hibi.delta));
            }
        }
    }
    if let Some(c) = config.idp_cmax {
        let r = idp_check(p, c)?;
        report.idp_cmax = Some(c);
        report.idp_holds = Some(r.holds_up_to_c_max);
        if let Some(level) = r.per_level.iter().find(|l| !l.failures.is_empty()) {
            let note = format!("decomposition fails at c = {} for {}", level.c, level.failures[0]);
            if smooth {
                report.fail(note);
            } else {
                report.notes.push(note);
            }
        }
    }
    if config.bounds && d >= 2 {
        let s = check_volume_sandwich(p)?;
        if (smooth && !s.within) || (reflexive && s.actual < s.lower) {
            report.fail(format!("volume {} outside [{}, {}]", s.actual, s.lower, s.upper));
        }
        report.sandwich_lower = Some(s.lower);
        report.sandwich_upper = Some(s.upper);
        report.within = Some(s.within);
        if smooth {
            let u = check_delta_unimodal(p)?;
            if !u.unimodal || !u.mcmullen_ok {
                report.fail(format!(
                    "δ {} unimodal {}, first-half bounds {}",
                    u.delta, u.unimodal, u.mcmullen_ok
                ));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    /// One tab-separated `key=value` record per line.
    Records,
    /// Aligned columns under a header line.
    Table,
}

pub const REPORT_FIELDS: [&str; 18] = [
    "id",
    "dim",
    "n_vertices",
    "n_boundary_points",
    "reflexive",
    "smooth_fano",
    "normalized_volume",
    "delta",
    "h",
    "f",
    "oda",
    "idp_cmax",
    "idp_holds",
    "sandwich_lower",
    "sandwich_upper",
    "within",
    "notes",
    "status",
];

fn opt<T: fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn report_values(r: &CheckReport) -> [String; 18] {
    let notes = if r.notes.is_empty() {
        "-".to_string()
    } else {
        r.notes.join("; ").replace(['\t', '\n'], " ")
    };
    [
        r.id.clone(),
        r.dim.to_string(),
        r.n_vertices.to_string(),
        opt(&r.n_boundary_points),
        opt(&r.reflexive),
        opt(&r.smooth_fano),
        opt(&r.normalized_volume),
        opt(&r.delta),
        opt(&r.h),
        opt(&r.f),
        opt(&r.oda),
        opt(&r.idp_cmax),
        opt(&r.idp_holds),
        opt(&r.sandwich_lower),
        opt(&r.sandwich_upper),
        opt(&r.within),
        notes,
        r.status.to_string(),
    ]
}

pub fn write_report(reports: &[CheckReport], format: ReportFormat) -> String {
    let rows: Vec<[String; 18]> = reports.iter().map(report_values).collect();
    let mut out = String::new();
    match format {
        ReportFormat::Records => {
            for row in &rows {
                let fields: Vec<String> = REPORT_FIELDS.iter().zip(row).map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&fields.join("\t"));
                out.push('\n');
            }
        }
        ReportFormat::Table => {
            let widths: Vec<usize> = (0..REPORT_FIELDS.len())
                .map(|j| {
                    rows.iter()
                        .map(|r| r[j].chars().count())
                        .chain([REPORT_FIELDS[j].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(REPORT_FIELDS.to_vec()));
            for row in &rows {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
    }
    out
}
