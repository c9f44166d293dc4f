//! Command-line front end.
//!
//! Results and witnesses go to stdout as JSON (or CSV / plot data where
//! asked); a one-line summary goes to stderr. Exit status is 0 on success,
//! 1 when a mathematical check fails and 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::accumulate::{build_lazy, check_equivalence, verify_truncation, LazyId, Mode};
use crate::classify::classify;
use crate::error::{Error, Result};
use crate::families::{build_family, FamilyId};
use crate::h2_enum::{enumerate, CaseId, H2Row};
use crate::io::{Metadata, SetDocument};
use crate::polygonal::{Flavor, Polygonal};
use crate::rational::{int, parse_rational, Rational};
use crate::tiling::{verify_mra, verify_wavelet, Space, Verdict};

pub const DEPTH_ENV: &str = "WAVESETS_DEPTH";

#[derive(Parser, Debug)]
#[command(name = "wavesets", version, about = "Exact tools for MSF wavelet sets of L2(R) and H2(R)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the tiling conditions of a set document.
    Verify {
        /// Defaults to the space named in the document.
        #[arg(long, value_parser = parse_space)]
        space: Option<Space>,
        /// Also check the MRA condition on a truncated core.
        #[arg(long)]
        mra: bool,
        #[arg(long, env = DEPTH_ENV, default_value_t = 16)]
        depth: u32,
        file: PathBuf,
    },
    /// Build a set from a polygonal or a named family.
    #[command(subcommand)]
    Construct(Construct),
    /// Recover classification data of a symmetric wavelet set.
    Classify { file: PathBuf },
    /// List three-interval H2 wavelet sets.
    Enumerate {
        #[arg(long, value_parser = parse_case)]
        case: CaseId,
        #[arg(long)]
        r_max: i64,
        #[arg(long)]
        s_max: i64,
        #[arg(long)]
        csv: bool,
    },
    /// Translation or dilation equivalence of two sets.
    Equiv {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        a: PathBuf,
        b: PathBuf,
    },
    /// Materialize and verify a family accumulating at 0.
    Accumulate {
        #[arg(long, value_parser = parse_lazy)]
        id: LazyId,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, value_parser = parse_rat)]
        eps: Option<Rational>,
        #[arg(long, env = DEPTH_ENV, default_value_t = 16)]
        depth: u32,
    },
    /// Re-emit a set document.
    Export {
        #[arg(long, value_enum)]
        format: Format,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// From a polygonal JSON file.
    Polygonal { file: PathBuf },
    /// From a family tag and comma-separated parameters.
    Family {
        #[arg(long)]
        id: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plotdata,
}

fn parse_space(s: &str) -> std::result::Result<Space, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_case(s: &str) -> std::result::Result<CaseId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_lazy(s: &str) -> std::result::Result<LazyId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rat(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// What a subcommand produced: stdout text, a stderr summary and whether
/// the mathematical check passed.
struct Outcome {
    stdout: String,
    summary: String,
    passed: bool,
}

impl Outcome {
    fn ok(stdout: String, summary: impl Into<String>) -> Self {
        Outcome {
            stdout,
            summary: summary.into(),
            passed: true,
        }
    }

    fn verdict(v: &Verdict) -> Self {
        let summary = if v.passed {
            format!("PASS {}", names(v))
        } else {
            format!("FAIL {}: {}", names(v), v.details.join("; "))
        };
        Outcome {
            stdout: json(v),
            summary,
            passed: v.passed,
        }
    }
}

fn names(v: &Verdict) -> String {
    v.checked_conditions
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("outputs always serialize")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidDocument(format!("{}: {e}", path.display())))
}

fn read_doc(path: &Path) -> Result<SetDocument> {
    SetDocument::from_json(&read(path)?).map_err(|e| match e {
        Error::InvalidDocument(m) => Error::InvalidDocument(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Verify {
            space,
            mra,
            depth,
            file,
        } => {
            let doc = read_doc(&file)?;
            let space = space.unwrap_or(doc.space);
            let mut v = verify_wavelet(&doc.intervals, space);
            if mra && v.passed {
                if space != Space::L2 {
                    return Err(Error::domain("the MRA check applies to L2 sets"));
                }
                let m = verify_mra(&doc.intervals, depth)?;
                let residual = m.residual.clone();
                v = Verdict::all(vec![v, m]);
                v.residual = residual;
            }
            Ok(Outcome::verdict(&v))
        }
        Command::Construct(Construct::Polygonal { file }) => {
            let text = read(&file)?;
            let poly: Polygonal = serde_json::from_str(&text).map_err(|e| {
                Error::InvalidDocument(format!("{}: line {} column {}: {e}", file.display(), e.line(), e.column()))
            })?;
            let v = poly.validate();
            if !v.passed {
                return Ok(Outcome::verdict(&v));
            }
            let space = if poly.flavor == Flavor::H2 { Space::H2 } else { Space::L2 };
            let doc = SetDocument::new(space, poly.build()?);
            Ok(Outcome::ok(doc.to_json(), format!("built {} intervals", doc.intervals.len())))
        }
        Command::Construct(Construct::Family { id, params }) => {
            let fam = FamilyId::parse(&id, &params)?;
            let mut doc = SetDocument::new(fam.tag.space(), build_family(&fam)?);
            doc.metadata = Metadata {
                family: Some(fam.tag.name().to_string()),
                params: fam.params.clone(),
                ..Metadata::default()
            };
            Ok(Outcome::ok(doc.to_json(), format!("built {} intervals", doc.intervals.len())))
        }
        Command::Classify { file } => {
            let doc = read_doc(&file)?;
            let data = classify(&doc.intervals)?;
            Ok(Outcome::ok(json(&data), format!("classified with n = {}", data.n)))
        }
        Command::Enumerate {
            case,
            r_max,
            s_max,
            csv,
        } => {
            let e = enumerate(case, r_max, s_max)?;
            let mut summary = format!("{} rows", e.rows.len());
            if !e.discrepancies.is_empty() {
                summary.push_str(&format!(
                    "; reduced inequalities disagree with the full ordering in {} cells",
                    e.discrepancies.len()
                ));
            }
            let stdout = if csv {
                let mut s = format!("{}\n", H2Row::CSV_HEADER);
                for row in &e.rows {
                    s.push_str(&row.csv());
                    s.push('\n');
                }
                s
            } else {
                json(&e)
            };
            Ok(Outcome::ok(stdout, summary))
        }
        Command::Equiv { mode, a, b } => {
            let (a, b) = (read_doc(&a)?, read_doc(&b)?);
            Ok(Outcome::verdict(&check_equivalence(&a.intervals, &b.intervals, mode)))
        }
        Command::Accumulate { id, n, eps, depth } => {
            let params = match (id, n, eps) {
                (LazyId::PROPBRA, None, None) => Vec::new(),
                (LazyId::PROPBRA, _, _) => return Err(Error::domain("PROPBRA takes no parameters")),
                (_, Some(n), Some(eps)) => vec![int(n), eps],
                _ => return Err(Error::domain(format!("{id} needs --n and --eps"))),
            };
            let (_, t) = build_lazy(id, &params, depth)?;
            let v = verify_truncation(&t, Space::L2);
            let mut doc = SetDocument::new(Space::L2, t.set());
            doc.metadata = Metadata {
                family: Some(id.to_string()),
                params,
                depth: Some(depth),
                tail: Some(t.tail.clone()),
            };
            #[derive(Serialize)]
            struct Report<'a> {
                document: &'a SetDocument,
                verdict: &'a Verdict,
            }
            let mut out = Outcome::verdict(&v);
            out.stdout = json(&Report {
                document: &doc,
                verdict: &v,
            });
            out.summary.push_str(&format!(" (tail {})", t.tail));
            Ok(out)
        }
        Command::Export { format, file } => {
            let doc = read_doc(&file)?;
            let stdout = match format {
                Format::Json => doc.to_json(),
                Format::Csv => doc.to_csv(),
                Format::Plotdata => doc.to_plotdata(),
            };
            Ok(Outcome::ok(stdout, format!("{} intervals", doc.intervals.len())))
        }
    }
}

/// Runs one command line, writing to the given streams, and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command) {
        Ok(o) => {
            let _ = write!(out, "{}", o.stdout);
            if !o.stdout.ends_with('\n') {
                let _ = writeln!(out);
            }
            let _ = writeln!(err, "{}", o.summary);
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e @ (Error::NotAWaveletSet(_) | Error::NotClassifiable(_))) => {
            let _ = writeln!(out, "{}", json(&serde_json::json!({ "error": e.to_string() })));
            let _ = writeln!(err, "FAIL {e}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
