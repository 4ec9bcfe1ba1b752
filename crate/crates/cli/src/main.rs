use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use parallelohedra::factorize::{factor, split};
use parallelohedra::format::{read_gain, read_lattice, read_polytope, write_polytope};
use parallelohedra::gain::{check_gain, linear_cell_function, scaled_gain};
use parallelohedra::paratile::{build_patch, check_parallelohedron, tiling_lattice};
use parallelohedra::polytope::{direct_product, volume, EmbeddedPolytope, Polytope};
use parallelohedra::ratlin::parse_rat;
use parallelohedra::venkov::venkov_graph;
use parallelohedra::voronoi::voronoi_cell;
use parallelohedra::{Error, QVec, Rat};

#[derive(Parser)]
#[command(name = "parallelohedra", version, about = "Exact analysis of parallelohedra")]
struct Cli {
    /// Output style: human-readable text or key=value lines.
    #[arg(long, global = true, value_enum, default_value_t = Summary::Text)]
    summary: Summary,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Summary {
    Text,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Minkowski–Venkov report; exit 0 iff the input is a parallelohedron.
    Check { polytope: PathBuf },
    /// Venkov graph as DOT on stdout, summary line on stderr.
    Venkov { polytope: PathBuf },
    /// Irreducible factors and their sublattices; exit 0 iff the
    /// reconstruction is verified.
    Factor {
        polytope: PathBuf,
        /// Write one polytope file per factor into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Split along two blocks of Venkov vertices, e.g. `0,1,2|3`.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Direct product of two polytopes.
    Product { first: PathBuf, second: PathBuf },
    /// Voronoi cell of a lattice.
    VoronoiCell { lattice: PathBuf },
    /// Check a gain assignment on a patch; exit 0 iff it is valid.
    ///
    /// The gain comes from a file or, with `--linear w`, from the cell
    /// function `λ ↦ λ·w`, optionally scaled by `--alpha` on the second
    /// block of `--partition`.
    GainCheck {
        polytope: PathBuf,
        /// Gain file; omit when using `--linear`.
        gain: Option<PathBuf>,
        /// Patch radius in lattice-basis coordinates.
        #[arg(long, default_value_t = 1)]
        radius: i64,
        /// Comma-separated rational vector `w`.
        #[arg(long, allow_hyphen_values = true)]
        linear: Option<String>,
        /// Rational scale for the second partition block.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Two blocks of Venkov vertices, e.g. `0|1,2`.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Cell, shared-facet and ridge-cycle counts of a patch.
    Patch {
        polytope: PathBuf,
        /// Patch radius in lattice-basis coordinates.
        #[arg(long, default_value_t = 1)]
        radius: i64,
    },
}

/// Outcome of a command: text for stdout/stderr and an exit code.
struct Outcome {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String, success: bool) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: if success { 0 } else { 1 },
        }
    }
}

/// Errors from the command layer, mapped to exit codes.
enum Failure {
    /// Malformed input or usage: exit 2.
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn resolve(path: &Path, ext: &str) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    let with_ext = path.with_extension(ext);
    if with_ext.exists() {
        with_ext
    } else {
        path.to_path_buf()
    }
}

fn read_file(path: &Path, ext: &str) -> Res<(PathBuf, String)> {
    let p = resolve(path, ext);
    let text = fs::read_to_string(&p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    Ok((p, text))
}

fn with_path<T>(path: &Path, r: parallelohedra::Result<T>) -> Res<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } | Error::NotFullDimensional { .. } | Error::DimensionMismatch { .. } => {
            Failure::Input(format!("{}: {e}", path.display()))
        }
        other => Failure::Lib(other),
    })
}

fn load_polytope(path: &Path) -> Res<Polytope> {
    let (p, text) = read_file(path, "poly")?;
    let mut poly = with_path(&p, read_polytope(&text))?;
    if poly.name.is_none() {
        poly.name = p.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(poly)
}

fn parse_rational(what: &str, s: &str) -> Res<Rat> {
    parse_rat(s.trim()).map_err(|i| Failure::Input(format!("{what}: invalid rational {s:?} at offset {i}")))
}

fn parse_vector(s: &str) -> Res<QVec> {
    let coords = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|t| parse_rational("--linear", t))
        .collect::<Res<Vec<_>>>()?;
    Ok(QVec::new(coords))
}

fn parse_partition(s: &str) -> Res<Vec<Vec<usize>>> {
    s.split('|')
        .map(|block| {
            block
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Failure::Input(format!("--partition: invalid vertex {t:?}")))
                })
                .collect()
        })
        .collect()
}

fn two_blocks(s: &str) -> Res<(Vec<usize>, Vec<usize>)> {
    let mut blocks = parse_partition(s)?;
    if blocks.len() != 2 {
        return Err(Failure::Input(format!(
            "--partition: expected two blocks separated by '|', found {}",
            blocks.len()
        )));
    }
    let b = blocks.pop().unwrap();
    let a = blocks.pop().unwrap();
    Ok((a, b))
}

fn cmd_check(path: &Path, kv: bool) -> Res<Outcome> {
    let p = load_polytope(path)?;
    let r = check_parallelohedron(&p);
    let mut out = String::new();
    if kv {
        let _ = writeln!(out, "verdict={}", r.verdict);
        let _ = writeln!(out, "centrally_symmetric={}", r.centrally_symmetric);
        let _ = writeln!(out, "facet_symmetry_failures={}", r.facet_symmetry_failures.len());
        let _ = writeln!(out, "belt_length_violations={}", r.belt_length_violations.len());
        let _ = writeln!(out, "facets={}", p.facets().len());
        let _ = writeln!(out, "belts={}", r.belts.len());
    } else {
        let _ = writeln!(out, "{r}");
    }
    Ok(Outcome::ok(out, r.verdict))
}

fn cmd_venkov(path: &Path, kv: bool) -> Res<Outcome> {
    let p = load_polytope(path)?;
    let g = venkov_graph(&p)?;
    if kv {
        let out = g.summary().split(' ').map(|s| format!("{s}\n")).collect();
        return Ok(Outcome::ok(out, true));
    }
    Ok(Outcome {
        stdout: g.to_dot(),
        stderr: format!("{}\n", g.summary()),
        code: 0,
    })
}

fn factor_file(name: &str, piece: &EmbeddedPolytope) -> String {
    let frame: Vec<String> = piece.basis.rows().iter().map(|r| r.to_string()).collect();
    let mut s = format!("# frame {}\n", frame.join(" "));
    s.push_str(&write_polytope(&piece.local.clone().with_name(name)));
    s
}

fn block_list(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

fn cmd_factor(path: &Path, out_dir: Option<&Path>, partition: Option<&str>, kv: bool) -> Res<Outcome> {
    let p = load_polytope(path)?;
    let stem = p.name.clone().unwrap_or_else(|| "polytope".into());
    let (pieces, blocks, ok, summary) = match partition {
        Some(spec) => {
            let (a1, a2) = two_blocks(spec)?;
            let (f1, f2) = split(&p, &a1, &a2)?;
            let mut summary = format!("components=2\npartition={}\n", block_list(&[a1.clone(), a2.clone()]));
            for (i, f) in [&f1, &f2].iter().enumerate() {
                let _ = writeln!(summary, "factor {i}: dim={} vertices={}", f.dim(), f.local.vertices().len());
            }
            summary.push_str("reconstruction=ok\n");
            (vec![f1, f2], vec![a1, a2], true, summary)
        }
        None => {
            let d = factor(&p)?;
            let pieces = d.factors.iter().map(|f| f.polytope.clone()).collect();
            (pieces, d.partition(), d.reconstruction_ok, format!("{d}\n"))
        }
    };
    let mut out = String::new();
    let files: Vec<(String, String)> = pieces
        .iter()
        .enumerate()
        .map(|(i, piece)| {
            let name = format!("{stem}.factor{i}");
            let text = factor_file(&name, piece);
            (name, text)
        })
        .collect();
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        for (name, text) in &files {
            let target = dir.join(format!("{name}.poly"));
            fs::write(&target, text).map_err(|e| Failure::Input(format!("{}: {e}", target.display())))?;
        }
    }
    if kv {
        let _ = writeln!(out, "components={}", pieces.len());
        let _ = writeln!(out, "partition={}", block_list(&blocks));
        let dims: Vec<String> = pieces.iter().map(|f| f.dim().to_string()).collect();
        let _ = writeln!(out, "factor_dims={}", dims.join(","));
        let _ = writeln!(out, "reconstruction={}", if ok { "ok" } else { "failed" });
    } else {
        if out_dir.is_none() {
            for (_, text) in &files {
                out.push_str(text);
                out.push('\n');
            }
        }
        out.push_str(&summary);
    }
    if !ok {
        return Ok(Outcome { stdout: out, stderr: "reconstruction failed\n".into(), code: 3 });
    }
    Ok(Outcome::ok(out, true))
}

fn cmd_product(a: &Path, b: &Path) -> Res<Outcome> {
    let p = direct_product(&load_polytope(a)?, &load_polytope(b)?);
    Ok(Outcome::ok(write_polytope(&p), true))
}

fn cmd_voronoi(path: &Path, kv: bool) -> Res<Outcome> {
    let (p, text) = read_file(path, "lat")?;
    let l = with_path(&p, read_lattice(&text))?;
    let mut cell = voronoi_cell(&l)?;
    if kv {
        let out = format!(
            "vertices={}\nfacets={}\nvolume={}\n",
            cell.vertices().len(),
            cell.facets().len(),
            volume(&cell)
        );
        return Ok(Outcome::ok(out, true));
    }
    cell.name = p.file_stem().map(|s| format!("voronoi_{}", s.to_string_lossy()));
    Ok(Outcome::ok(write_polytope(&cell), true))
}

#[allow(clippy::too_many_arguments)]
fn cmd_gain_check(
    path: &Path,
    gain: Option<&Path>,
    radius: i64,
    linear: Option<&str>,
    alpha: Option<&str>,
    partition: Option<&str>,
    kv: bool,
) -> Res<Outcome> {
    let p = load_polytope(path)?;
    let patch = build_patch(&p, radius)?;
    let g = match (gain, linear) {
        (Some(file), None) => {
            let (fp, text) = read_file(file, "gain")?;
            with_path(&fp, read_gain(&text, p.dim()))?
        }
        (None, Some(w)) => {
            let w = parse_vector(w)?;
            if w.dim() != p.dim() {
                return Err(Failure::Input(format!("--linear: expected {} coordinates", p.dim())));
            }
            let f = linear_cell_function(&patch, &w);
            let alpha = alpha.map(|a| parse_rational("--alpha", a)).transpose()?.unwrap_or_else(|| Rat::from_integer(1.into()));
            let (a1, a2) = match partition {
                Some(s) => two_blocks(s)?,
                None => ((0..patch.table.pair_count()).collect(), Vec::new()),
            };
            scaled_gain(&patch, &f, &a1, &a2, &alpha)?
        }
        _ => return Err(Failure::Input("give either a gain file or --linear".into())),
    };
    let (ok, report) = check_gain(&patch, &g);
    let out = if kv {
        format!(
            "valid={ok}\nmissing={}\nextraneous={}\nantisymmetry_violations={}\ncycle_violations={}\ncycles_checked={}\n",
            report.missing.len(),
            report.extraneous.len(),
            report.antisymmetry_violations.len(),
            report.cycle_violations.len(),
            report.cycles_checked
        )
    } else {
        format!("{report}\nverdict: {}\n", if ok { "valid gain" } else { "invalid gain" })
    };
    Ok(Outcome::ok(out, ok))
}

fn cmd_patch(path: &Path, radius: i64, kv: bool) -> Res<Outcome> {
    let p = load_polytope(path)?;
    let patch = build_patch(&p, radius)?;
    let mut out = String::new();
    let sep = if kv { "=" } else { ": " };
    let _ = writeln!(out, "cells{sep}{}", patch.cells.len());
    let _ = writeln!(out, "shared_facets{sep}{}", patch.shared_facets.len());
    let _ = writeln!(out, "ridge_cycles{sep}{}", patch.ridge_cycles.len());
    for (len, count) in patch.cycle_lengths() {
        let _ = writeln!(out, "cycles_of_length_{len}{sep}{count}");
    }
    let det = tiling_lattice(&p)?.abs_det().expect("full-rank tiling lattice");
    let _ = writeln!(out, "lattice_det{sep}{det}");
    Ok(Outcome::ok(out, true))
}

fn run(cli: Cli) -> Res<Outcome> {
    let kv = cli.summary == Summary::Kv;
    match &cli.command {
        Command::Check { polytope } => cmd_check(polytope, kv),
        Command::Venkov { polytope } => cmd_venkov(polytope, kv),
        Command::Factor { polytope, out_dir, partition } => {
            cmd_factor(polytope, out_dir.as_deref(), partition.as_deref(), kv)
        }
        Command::Product { first, second } => cmd_product(first, second),
        Command::VoronoiCell { lattice } => cmd_voronoi(lattice, kv),
        Command::GainCheck { polytope, gain, radius, linear, alpha, partition } => cmd_gain_check(
            polytope,
            gain.as_deref(),
            *radius,
            linear.as_deref(),
            alpha.as_deref(),
            partition.as_deref(),
            kv,
        ),
        Command::Patch { polytope, radius } => cmd_patch(polytope, *radius, kv),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            eprint!("{}", o.stderr);
            ExitCode::from(o.code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                e if e.is_internal() => 3,
                Error::InvalidArgument(_)
                | Error::InvalidPartition(_)
                | Error::MissingCell(_)
                | Error::RankDeficient { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
