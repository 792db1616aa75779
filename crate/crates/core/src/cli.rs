//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but the
//! operation fails (bad diagram, contradictory filter, refused long run),
//! 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::compare::{compare_texts, CompareError, ListOptions};
use crate::enumerate::{
    census, enumerate_naive, enumerate_with_sink, CensusOptions, CensusProgressFn, Emit,
    EnumerationError, EnumerationRequest, Mode, Progress, SurfaceFilter,
};
use crate::feasibility::{
    admissible_tilings, max_polygon_size, tile_count_bounds, FeasibilityError, Rational,
};
use crate::io::{
    format_diagram, format_vertex_set, parse_diagram, parse_tiling, render_svg, write_catalog,
    Catalog, CatalogError, ParseError, RenderOptions, TilingText,
};
use crate::model::{PlanarDiagram, Surface};
use crate::symmetry::{canonical_form, equivalent, SymmetryError};
use crate::trace::{classify, diagram_of, validate_vertex_set, vertices_of, TraceError};

#[derive(Debug, Parser)]
#[command(
    name = "tilecensus",
    version,
    about = "Single-tile tilings of closed surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tile-count bounds for n-gon tilings of a surface
    Bounds {
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
        #[arg(long)]
        n: Option<i64>,
    },
    /// All admissible (n, f) combinations for a surface
    Admissible {
        #[arg(long, allow_negative_numbers = true)]
        chi: i64,
    },
    /// Vertex set of a diagram
    Vertices {
        #[arg(long)]
        diagram: String,
    },
    /// Diagram induced by a vertex set
    Diagram {
        #[arg(long = "vertex-set")]
        vertex_set: String,
    },
    /// Euler number, surface and vertex degrees of a diagram
    Classify {
        #[arg(long)]
        diagram: String,
    },
    /// Canonical representative of a diagram's class
    Canon {
        #[arg(long)]
        diagram: String,
    },
    /// Decide whether two tilings are the same
    Eq {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Enumerate tilings by one n-gon
    Enumerate(EnumerateArgs),
    /// Counts for every polygon size a surface admits
    Census {
        #[arg(long)]
        surface: Surface,
        /// Also run sizes whose raw search space exceeds 1e9 leaves
        #[arg(long)]
        long: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Directory for per-size resume files
        #[arg(long)]
        checkpoint_dir: Option<PathBuf>,
        /// Report progress on stderr
        #[arg(long)]
        progress: bool,
    },
    /// Draw a diagram as SVG
    Render {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 400.0)]
        size: f64,
        /// Draw every corner dot in black
        #[arg(long)]
        no_vertex_colors: bool,
    },
    /// Compare two tiling lists up to equivalence
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Tab-separated records instead of the text report
        #[arg(long)]
        records: bool,
        /// Accept vertex sets whose cycles are written in mixed directions
        #[arg(long)]
        loose_orientation: bool,
    },
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    orientable_only: bool,
    #[arg(long, conflicts_with = "chi")]
    surface: Option<Surface>,
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<i64>,
    /// Unpruned oracle search
    #[arg(long, conflicts_with_all = ["out", "checkpoint"])]
    naive: bool,
    /// Write the catalog of canonical representatives here
    #[arg(long, conflicts_with = "count_only")]
    out: Option<PathBuf>,
    #[arg(long)]
    count_only: bool,
    #[arg(long)]
    long: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Resume file for count-only runs
    #[arg(long, conflicts_with = "out")]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    progress: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Compare(#[from] CompareError),
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Output(#[from] std::io::Error),
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(CliError::Output(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn show(r: Rational) -> String {
    let mut d = *r.denom();
    while d % 2 == 0 {
        d /= 2;
    }
    while d % 5 == 0 {
        d /= 5;
    }
    if d == 1 {
        let v = *r.numer() as f64 / *r.denom() as f64;
        format!("{v}")
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn bounds_line(n: i64, chi: i64) -> Result<String, CliError> {
    let b = tile_count_bounds(n, chi)?;
    let (lo, hi) = (show(b.lower_exclusive), show(b.upper_inclusive));
    let tail = if b.max_is_all_degree_three {
        format!("f={hi} attains max (all vertices degree 3)")
    } else {
        "max not attained".to_string()
    };
    Ok(format!("f in ({lo}, {hi}]; {tail}"))
}

fn tiling_diagram(text: &str) -> Result<PlanarDiagram, CliError> {
    match parse_tiling(text)? {
        TilingText::Diagram(d) => Ok(d),
        TilingText::VertexSet(vs) => {
            let report = validate_vertex_set(&vs);
            if !report.is_valid() {
                return Err(CliError::Invalid(report.to_string()));
            }
            Ok(diagram_of(&vs)?)
        }
    }
}

fn print_progress(n: usize, p: &Progress) {
    eprintln!(
        "n={n}: {}/{} units, {} nodes, {} found",
        p.tasks_done, p.tasks_total, p.nodes, p.emitted
    );
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Bounds { chi, n: Some(n) } => writeln!(out, "{}", bounds_line(n, chi)?)?,
        Command::Bounds { chi, n: None } => {
            tile_count_bounds(7, chi)?;
            let top = max_polygon_size(chi, false).max(max_polygon_size(chi, true));
            for n in 7..=top {
                writeln!(out, "n={n}: {}", bounds_line(n, chi)?)?;
            }
        }
        Command::Admissible { chi } => {
            let list = admissible_tilings(chi)?;
            let mut groups: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
            for (n, fs) in list.iter().rev() {
                match groups.last_mut() {
                    Some((ns, prev)) if prev == fs => ns.insert(0, *n),
                    _ => groups.push((vec![*n], fs.clone())),
                }
            }
            let join = |v: &[i64]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            for (ns, fs) in &groups {
                writeln!(out, "n={}: f={}", join(ns), join(fs))?;
            }
            let attained: Vec<i64> = list
                .iter()
                .filter(|(n, _)| {
                    tile_count_bounds(*n, chi).is_ok_and(|b| b.max_is_all_degree_three)
                })
                .map(|(n, _)| *n)
                .collect();
            writeln!(
                out,
                "all vertices degree 3 exactly at max f for n={}",
                join(&attained)
            )?;
        }
        Command::Vertices { diagram } => {
            let d = parse_diagram(&diagram)?;
            writeln!(out, "{}", format_vertex_set(&vertices_of(&d)))?;
        }
        Command::Diagram { vertex_set } => {
            let d = tiling_diagram(&vertex_set)?;
            writeln!(out, "{}", format_diagram(&d))?;
        }
        Command::Classify { diagram } => {
            let s = classify(&parse_diagram(&diagram)?);
            let kind = if s.orientable {
                "orientable"
            } else {
                "non-orientable"
            };
            writeln!(out, "n={} e={} v={} chi={} {kind}", s.n, s.e, s.v, s.chi)?;
            writeln!(out, "surface {}", s.surface)?;
            let mut degrees: Vec<String> = Vec::new();
            for &k in &s.degrees {
                let entry = format!("{k}:{}", s.vertices_of_degree(k));
                if !degrees.contains(&entry) {
                    degrees.push(entry);
                }
            }
            writeln!(out, "degrees {}", degrees.join(" "))?;
            if s.degree_too_small {
                writeln!(out, "warning: a vertex has degree below 3")?;
            }
        }
        Command::Canon { diagram } => {
            let cf = canonical_form(&parse_diagram(&diagram)?);
            writeln!(out, "{}", format_diagram(&cf.representative))?;
            writeln!(
                out,
                "orbit {} stabilizer {}",
                cf.orbit_size(),
                cf.stabilizer_order
            )?;
        }
        Command::Eq { a, b } => {
            let (a, b) = (tiling_diagram(&a)?, tiling_diagram(&b)?);
            let verdict = if equivalent(&a, &b)? {
                "equivalent"
            } else {
                "not equivalent"
            };
            writeln!(out, "{verdict}")?;
        }
        Command::Enumerate(args) => enumerate_command(args, out, err)?,
        Command::Census {
            surface,
            long,
            threads,
            checkpoint_dir,
            progress,
        } => {
            let opts = CensusOptions {
                threads,
                allow_large: long,
                checkpoint_dir,
            };
            let printer: CensusProgressFn<'_> = &print_progress;
            let row = census(surface, &opts, progress.then_some(printer))?;
            for (n, count) in &row.counts {
                writeln!(out, "{surface} {n} {count}")?;
            }
            for (n, estimate) in &row.skipped {
                writeln!(
                    err,
                    "skipped {surface} {n}: about {estimate:.2e} leaves, pass --long"
                )?;
            }
        }
        Command::Render {
            diagram,
            out: path,
            size,
            no_vertex_colors,
        } => {
            let d = parse_diagram(&diagram)?;
            let opts = RenderOptions {
                size,
                color_vertices: !no_vertex_colors,
                ..RenderOptions::default()
            };
            fs::write(&path, render_svg(&d, &opts)).map_err(|source| CliError::File {
                path: path.clone(),
                source,
            })?;
            writeln!(out, "wrote {}", path.display())?;
        }
        Command::Compare {
            a,
            b,
            records,
            loose_orientation,
        } => {
            let read = |p: &PathBuf| {
                fs::read_to_string(p).map_err(|source| CliError::File {
                    path: p.clone(),
                    source,
                })
            };
            let report = compare_texts(&read(&a)?, &read(&b)?, ListOptions { loose_orientation })?;
            if records {
                write!(out, "{}", report.records())?;
            } else {
                write!(out, "{report}")?;
            }
        }
    }
    Ok(())
}

fn enumerate_command(
    args: EnumerateArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let mode = if args.orientable_only {
        Mode::OrientableOnly
    } else {
        Mode::AllSigned
    };
    let filter = match (args.surface, args.chi) {
        (Some(s), _) => SurfaceFilter::surface(s),
        (None, Some(chi)) => SurfaceFilter::chi(chi),
        (None, None) => SurfaceFilter::default(),
    };
    let mut req = EnumerationRequest::new(args.n, mode).with_filter(filter);
    req.threads = args.threads;
    req.allow_large = args.long;
    req.checkpoint = args.checkpoint;
    if args.out.is_some() {
        req = req.with_emit(Emit::Catalog);
    }

    let counts = if args.naive {
        enumerate_naive(&req, args.long)?.classes
    } else {
        let n = args.n;
        let per_run = move |p: &Progress| print_progress(n, p);
        let progress: Option<&(dyn Fn(&Progress) + Sync)> = args.progress.then_some(&per_run);
        let result = enumerate_with_sink(&req, &|_, _| {}, progress)?;
        if let (Some(path), Some(entries)) = (&args.out, result.catalog) {
            let catalog = Catalog::new(args.surface, args.n, entries);
            write_catalog(path, &catalog)?;
            writeln!(err, "wrote {} entries to {}", catalog.len(), path.display())?;
        }
        result.counts
    };

    let mut rows: Vec<(Surface, u64)> = counts.into_iter().collect();
    if let Some(s) = args.surface {
        if !rows.iter().any(|(t, _)| *t == s) {
            rows.push((s, 0));
        }
    }
    for (s, c) in rows {
        writeln!(out, "{s} {} {c}", args.n)?;
    }
    Ok(())
}
