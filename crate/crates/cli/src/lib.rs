//! Command-line front end. [`run`] takes the argument list and output streams
//! so it can be driven from tests.
//!
//! Exit codes: 0 when every requested check passed, 1 when some polytope
//! failed a check, 2 on usage, parse or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use latpoly::bounds::{
    casagrande_volume_bound, check_volume_sandwich, conjecture_bound, cyclic_facet_count, evaluate_conjecture,
    mcmullen_h_bound, stacked_f_vector,
};
use latpoly::dataset::{batch_check, load_dir, load_file, write_report, BatchConfig, CheckStatus, ReportFormat};
use latpoly::ehrhart::{count_lattice_points, delta_vector, ehrhart_polynomial};
use latpoly::idp::idp_check;
use latpoly::reflexive::{check_reflexive_equivalences, check_smooth_fano_equivalences, is_reflexive, is_smooth_fano};
use latpoly::triangulation::{cone_triangulation, is_unimodular_triangulation, triangulation_index_lcm};
use latpoly::{Error, Polytope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "latpoly", version, about = "Exact computations on lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Delta-vector, Ehrhart polynomial and lattice point counts.
    Delta { file: PathBuf },
    /// Reflexivity, smooth Fano and decomposition checks. Without flags, all but the decomposition check run.
    Check {
        file: PathBuf,
        #[arg(long)]
        reflexive: bool,
        #[arg(long)]
        smooth_fano: bool,
        /// Cross-check the equivalent characterizations of both properties.
        #[arg(long)]
        equivalences: bool,
        /// Check the integer decomposition property for dilations up to C.
        #[arg(long, value_name = "C", value_parser = clap::value_parser!(u64).range(1..))]
        idp_max: Option<u64>,
    },
    /// Cone triangulation from the origin with simplex determinants.
    Triangulate { file: PathBuf },
    /// Face-count and volume bounds for given dimension and vertex count.
    Bounds {
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        n: u64,
    },
    /// Volume bounds in terms of the number of boundary lattice points.
    Sandwich { file: PathBuf },
    /// Compare the volume maximizers of a smooth Fano dataset with the conjectured extremal polytopes.
    Conjecture {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        dim: u64,
    },
    /// Run every check on all `*.poly` files in a directory.
    Batch {
        dir: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Records)]
        format: Format,
        #[arg(long, value_name = "C", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        idp_max: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Records,
    Table,
}

/// Why a subcommand stopped early.
enum Failure {
    /// Bad input or arguments; exit 2.
    Usage(String),
    /// A computation contradicted a theorem; exit 1.
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(_) | Error::InternalInconsistency(_) => Failure::Violation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut text = String::new();
    let result = dispatch(cli.command, &mut text);
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_CHECK_FAILED
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut String) -> Outcome {
    match command {
        Command::Delta { file } => delta(&file, out),
        Command::Check {
            file,
            reflexive,
            smooth_fano,
            equivalences,
            idp_max,
        } => {
            let all = !(reflexive || smooth_fano || equivalences || idp_max.is_some());
            check(
                &file,
                CheckFlags {
                    reflexive: reflexive || all,
                    smooth_fano: smooth_fano || all,
                    equivalences: equivalences || all,
                    idp_max,
                },
                out,
            )
        }
        Command::Triangulate { file } => triangulate(&file, out),
        Command::Bounds { dim, n } => bounds(dim, n, out),
        Command::Sandwich { file } => sandwich(&file, out),
        Command::Conjecture { dataset, dim } => conjecture(&dataset, dim, out),
        Command::Batch {
            dir,
            out: path,
            format,
            idp_max,
        } => batch(&dir, path.as_deref(), format, idp_max, out),
    }
}

fn load(file: &Path) -> Result<Vec<(String, Polytope)>, Failure> {
    let records = load_file(file)?;
    records
        .into_iter()
        .map(|r| {
            let p = r.to_polytope().map_err(|e| Failure::Usage(format!("{}: {e}", r.source)))?;
            Ok((r.id, p))
        })
        .collect()
}

fn delta(file: &Path, out: &mut String) -> Outcome {
    for (id, p) in load(file)? {
        let (count, _) = count_lattice_points(&p, 1, false)?;
        writeln!(out, "polytope {id}").unwrap();
        writeln!(out, "dim {}", p.dim()).unwrap();
        writeln!(out, "vertices {}", p.vertices().len()).unwrap();
        writeln!(out, "lattice_points {}", count.total).unwrap();
        writeln!(out, "boundary_points {}", count.boundary).unwrap();
        writeln!(out, "interior_points {}", count.interior()).unwrap();
        writeln!(out, "normalized_volume {}", p.normalized_volume()).unwrap();
        writeln!(out, "delta {}", delta_vector(&p)?).unwrap();
        writeln!(out, "ehrhart {}", ehrhart_polynomial(&p)?).unwrap();
        writeln!(out).unwrap();
    }
    Ok(true)
}

struct CheckFlags {
    reflexive: bool,
    smooth_fano: bool,
    equivalences: bool,
    idp_max: Option<u64>,
}

fn check(file: &Path, flags: CheckFlags, out: &mut String) -> Outcome {
    let mut passed = true;
    for (id, p) in load(file)? {
        let mut fields = vec![id];
        if flags.reflexive {
            let r = is_reflexive(&p);
            passed &= r;
            fields.push(format!("reflexive={r}"));
        }
        if flags.smooth_fano {
            let s = is_smooth_fano(&p);
            passed &= s;
            fields.push(format!("smooth_fano={s}"));
        }
        if flags.equivalences {
            if p.has_interior_origin() {
                let r = check_reflexive_equivalences(&p)?;
                passed &= r.verdicts_agree;
                fields.push(format!("reflexive_criteria_agree={}", r.verdicts_agree));
            } else {
                fields.push("reflexive_criteria_agree=-".into());
            }
            match check_smooth_fano_equivalences(&p) {
                Ok(r) if r.note.is_none() => fields.push("smooth_fano_criteria_agree=true".into()),
                Ok(_) => fields.push("smooth_fano_criteria_agree=-".into()),
                Err(e @ Error::TheoremViolation(_)) => {
                    passed = false;
                    fields.push(format!("smooth_fano_criteria_agree=false ({e})"));
                }
                Err(e) => return Err(e.into()),
            }
        }
        if let Some(c) = flags.idp_max {
            let r = idp_check(&p, c)?;
            passed &= r.holds_up_to_c_max;
            fields.push(format!("idp_up_to_{c}={}", r.holds_up_to_c_max));
        }
        writeln!(out, "{}", fields.join("\t")).unwrap();
    }
    Ok(passed)
}

fn triangulate(file: &Path, out: &mut String) -> Outcome {
    let mut passed = true;
    for (id, p) in load(file)? {
        let t = cone_triangulation(&p)?;
        writeln!(out, "polytope {id}").unwrap();
        for (i, s) in t.simplices.iter().enumerate() {
            let verts: Vec<String> = s.vertices.iter().map(ToString::to_string).collect();
            writeln!(out, "simplex {i} det {} vertices {}", s.det, verts.join(" ")).unwrap();
        }
        let unimodular = is_unimodular_triangulation(&t);
        writeln!(out, "simplices {}", t.simplices.len()).unwrap();
        writeln!(out, "total_det {}", t.total_det()).unwrap();
        writeln!(out, "unimodular {unimodular}").unwrap();
        writeln!(out, "index_lcm {}", triangulation_index_lcm(&t)?).unwrap();
        writeln!(out).unwrap();
        passed &= !is_smooth_fano(&p) || unimodular;
    }
    Ok(passed)
}

fn bounds(d: u64, n: u64, out: &mut String) -> Outcome {
    let mcmullen = (0..=d / 2)
        .map(|i| mcmullen_h_bound(n, d, i).map(|b| b.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = [
        ("dim", d.to_string()),
        ("n", n.to_string()),
        ("cyclic_facets", cyclic_facet_count(n, d)?.to_string()),
        ("stacked_f", stacked_f_vector(n, d)?.to_string()),
        ("mcmullen_h", format!("[{}]", mcmullen.join(", "))),
        ("casagrande", casagrande_volume_bound(d)?.to_string()),
        ("conjecture", conjecture_bound(d)?.to_string()),
    ];
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}").unwrap();
    }
    Ok(true)
}

fn sandwich(file: &Path, out: &mut String) -> Outcome {
    let mut passed = true;
    for (id, p) in load(file)? {
        let s = check_volume_sandwich(&p)?;
        passed &= s.within;
        writeln!(
            out,
            "{id}\tn={}\tlower={}\tactual={}\tupper={}\twithin={}\tsmooth_fano={}",
            s.n, s.lower, s.actual, s.upper, s.within, s.smooth_fano
        )
        .unwrap();
    }
    Ok(passed)
}

fn conjecture(dir: &Path, d: u64, out: &mut String) -> Outcome {
    let dataset = load_dir(dir)?
        .into_iter()
        .map(|r| {
            let p = r.to_polytope().map_err(|e| Failure::Usage(format!("{}: {e}", r.source)))?;
            Ok((r.id, p))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let r = evaluate_conjecture(&dataset, d)?;
    writeln!(out, "dim {}", r.dim).unwrap();
    writeln!(out, "bound {}", r.bound).unwrap();
    writeln!(out, "max_normalized_volume {}", r.max_normalized_volume).unwrap();
    writeln!(out, "attainers {}", r.attainers.join(" ")).unwrap();
    writeln!(out, "attainer_vertex_counts {:?}", r.attainer_vertex_counts).unwrap();
    writeln!(out, "centrally_symmetric {:?}", r.centrally_symmetric_flags).unwrap();
    for c in &r.claims {
        writeln!(out, "claim {}: {} ({})", c.claim, c.verdict, c.detail).unwrap();
    }
    for (id, why) in &r.skipped {
        writeln!(out, "skipped {id}: {why}").unwrap();
    }
    for n in &r.notes {
        writeln!(out, "note {n}").unwrap();
    }
    Ok(true)
}

fn batch(dir: &Path, path: Option<&Path>, format: Format, idp_max: u64, out: &mut String) -> Outcome {
    let records = load_dir(dir)?;
    let config = BatchConfig {
        idp_cmax: Some(idp_max),
        ..BatchConfig::default()
    };
    let reports = batch_check(&records, &config);
    let format = match format {
        Format::Records => ReportFormat::Records,
        Format::Table => ReportFormat::Table,
    };
    let text = write_report(&reports, format);
    match path {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => out.push_str(&text),
    }
    Ok(reports.iter().all(|r| r.status != CheckStatus::Failed))
}
