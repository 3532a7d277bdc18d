use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use fiberface::alexander::{alexander_ball, alexander_polynomial};
use fiberface::arith::{special_primes_checked, tower_report};
use fiberface::dualsurface::{randomized_norm_search, SearchConfig};
use fiberface::fibering::{certify_fiber, whitehead_cover, whitehead_report, FiberOptions, WHITEHEAD_TRI};
use fiberface::fpgroup::{enumerate_cyclic_covers, enumerate_regular_covers, reidemeister_schreier, CosetTable, Presentation};
use fiberface::triangulation::{cohomology_basis, Cocycle, Triangulation};

const FORMATS: &str = "pres v1, table v1, tri v1, cocycle v1, poly v1, ball v1, surface v1, cert v1, whitehead v1, tower tsv";

#[derive(Parser)]
#[command(name = "fiberface", about = "Norm balls, fibered faces and the arithmetic tower", disable_version_flag = true)]
struct Cli {
    /// Print the crate and format versions.
    #[arg(long, global = true)]
    version: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Pachner moves for randomized searches.
    #[arg(long, default_value_t = 0)]
    budget: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial and norm ball of a presented group or a subgroup.
    Alex {
        presentation: PathBuf,
        /// Coset table of a finite-index subgroup to pass to first.
        #[arg(long)]
        table: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Subgroup presentations and homology of finite covers.
    Covers {
        presentation: PathBuf,
        #[arg(long, conflicts_with_all = ["cyclic", "regular"])]
        table: Option<PathBuf>,
        /// All cyclic covers of this degree.
        #[arg(long)]
        cyclic: Option<u64>,
        /// All regular covers with this abelian deck group, e.g. `2,2`.
        #[arg(long, value_delimiter = ',')]
        regular: Option<Vec<u64>>,
        #[command(flatten)]
        common: Common,
    },
    /// Thurston-norm upper bound from dual surfaces and Pachner search.
    NormBall {
        /// Triangulation file, `whitehead`, or `W<n>`.
        #[arg(long)]
        tri: String,
        /// Coordinates in the vertex basis for `W<n>`, else in a cohomology basis.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        class: Vec<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Fibering certificate for one class.
    Fiber {
        #[arg(long)]
        tri: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        class: Vec<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Degrees, face bounds, genera and Betti bounds, as TSV.
    Tower {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The prime set below a limit.
    Primes {
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Norm ball and fibered faces of the n-th cyclic Whitehead cover.
    Whitehead {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn presentation(path: &Path) -> Result<Presentation> {
    Ok(Presentation::parse(&read(path)?)?)
}

/// A triangulation with the basis class coordinates refer to: the ball
/// vertices `ω_i` for the Whitehead covers, a cohomology basis otherwise.
fn triangulation(spec: &str) -> Result<(Triangulation, Vec<Cocycle>)> {
    let cover = |n: usize| -> Result<(Triangulation, Vec<Cocycle>)> {
        let base = Triangulation::parse(WHITEHEAD_TRI)?;
        let wc = whitehead_cover(&base, n)?;
        let omega = wc.vertex_basis().iter().map(|w| wc.class(w)).collect();
        Ok((wc.cover.triangulation, omega))
    };
    if spec == "whitehead" {
        return cover(1);
    }
    if let Some(n) = spec.strip_prefix('W').and_then(|s| s.parse().ok()) {
        return cover(n);
    }
    let t = Triangulation::parse(&read(Path::new(spec))?)?;
    let basis = cohomology_basis(&t);
    Ok((t, basis))
}

fn class(t: &Triangulation, basis: &[Cocycle], coeffs: &[i64]) -> Result<Cocycle> {
    if coeffs.len() != basis.len() {
        bail!("class has {} coordinates but H^1 has rank {}", coeffs.len(), basis.len());
    }
    Ok(Cocycle::combine(t, basis, coeffs))
}

fn run(cmd: Command) -> Result<(String, Option<PathBuf>)> {
    let mut out = String::new();
    let dest = match cmd {
        Command::Alex { presentation: path, table, common } => {
            let mut p = presentation(&path)?;
            if let Some(tp) = table {
                let t = CosetTable::parse(&read(&tp)?, &p)?;
                p = reidemeister_schreier(&p, &t).presentation;
            }
            let data = alexander_polynomial(&p)?;
            writeln!(out, "homology {}", p.abelianization())?;
            writeln!(out, "delta {}", data.delta.pretty())?;
            if data.delta.is_zero() {
                writeln!(out, "ball undefined (zero ideal)")?;
            } else {
                write!(out, "{}", alexander_ball(&data.delta)?.report())?;
            }
            common.out
        }
        Command::Covers { presentation: path, table, cyclic, regular, common } => {
            let p = presentation(&path)?;
            if let Some(tp) = table {
                let t = CosetTable::parse(&read(&tp)?, &p)?;
                let s = reidemeister_schreier(&p, &t);
                writeln!(out, "index {}", t.degree())?;
                writeln!(out, "homology {}", s.presentation.abelianization())?;
                write!(out, "{}", s.presentation)?;
            } else {
                let covers = match (cyclic, regular) {
                    (Some(n), None) => enumerate_cyclic_covers(&p, n),
                    (None, Some(m)) => enumerate_regular_covers(&p, &m),
                    _ => bail!("give exactly one of --table, --cyclic, --regular"),
                };
                writeln!(out, "covers {}", covers.len())?;
                for (i, c) in covers.iter().enumerate() {
                    writeln!(out, "cover {i} homology {}", c.homology)?;
                    write!(out, "{}", c.table.format(p.names()))?;
                }
            }
            common.out
        }
        Command::NormBall { tri, class: coeffs, common } => {
            let (t, basis) = triangulation(&tri)?;
            let c = class(&t, &basis, &coeffs)?;
            let cfg = SearchConfig { budget: common.budget, seed: common.seed, workers: common.workers, ..Default::default() };
            let res = randomized_norm_search(&t, &[c], &cfg)?;
            let best = &res.best[0];
            writeln!(out, "bound {}", best.bound)?;
            writeln!(out, "moves {}", best.trace.len())?;
            for s in &best.trace {
                writeln!(out, "move {s}")?;
            }
            write!(out, "{}", best.surface.report())?;
            common.out
        }
        Command::Fiber { tri, class: coeffs, common } => {
            let (t, basis) = triangulation(&tri)?;
            let c = class(&t, &basis, &coeffs)?;
            let opts = FiberOptions { search_budget: common.budget, seed: common.seed, ..Default::default() };
            let cert = certify_fiber(&t, &c, &opts)?;
            write!(out, "{}", cert.report())?;
            common.out
        }
        Command::Tower { n, common } => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            write!(out, "{}", tower_report(n)?)?;
            common.out
        }
        Command::Primes { limit, common } => {
            if limit < 2 {
                bail!("--limit must be at least 2");
            }
            for p in special_primes_checked(limit) {
                writeln!(out, "{p}")?;
            }
            common.out
        }
        Command::Whitehead { n, common } => {
            let base = Triangulation::parse(WHITEHEAD_TRI)?;
            let opts = FiberOptions { seed: common.seed, ..Default::default() };
            let cfg = SearchConfig { budget: common.budget, seed: common.seed, workers: common.workers, ..Default::default() };
            write!(out, "{}", whitehead_report(&base, n, &opts, &cfg)?)?;
            common.out
        }
    };
    Ok((out, dest))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.version {
        println!("fiberface {}", env!("CARGO_PKG_VERSION"));
        println!("formats {FORMATS}");
        return ExitCode::SUCCESS;
    }
    let Some(cmd) = cli.command else {
        eprintln!("error: no command given (see --help)");
        return ExitCode::from(1);
    };
    match std::panic::catch_unwind(|| run(cmd)) {
        Ok(Ok((text, dest))) => {
            let written = match dest {
                Some(path) => fs::write(&path, text).map_err(|e| anyhow!("writing {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(1)
                }
            }
        }
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(_) => ExitCode::from(2),
    }
}
