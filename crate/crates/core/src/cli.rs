//! Command-line front end. Exit codes: 0 success, 1 a checked property
//! failed, 2 malformed input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{sign_formula, CocycleOrder, Flavor, GridComplex};
use crate::grid::GridDiagram;
use crate::homology::{alexander_polynomial, bigraded_homology, hat_reduction, HomologySummary};
use crate::io::{parse_generator, parse_grid, parse_moves, write_grid, ParseError};
use crate::moves::{apply_move, invariance_report};
use crate::spin::{cocycle_identity_holds, relation_failures, Permutation, SpinElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gridfloer", about = "Signed grid complexes and their homology")]
struct Cli {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a grid file.
    Validate { file: PathBuf },
    /// Size, components, and optionally the gradings of one generator.
    Info {
        file: PathBuf,
        /// Images of the generator, e.g. "1 0 2".
        #[arg(long)]
        generator: Option<String>,
    },
    /// Run verification suites; all of them when no flag is given.
    Check {
        file: PathBuf,
        #[arg(long)]
        d2: bool,
        #[arg(long)]
        signs: bool,
        #[arg(long)]
        spin_relations: bool,
        #[arg(long)]
        mod2: bool,
    },
    /// Bigraded homology.
    Homology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FlavorArg::Tilde)]
        flavor: FlavorArg,
        #[arg(long)]
        json: bool,
    },
    /// Normalized Alexander polynomial.
    Alexander { file: PathBuf },
    /// Apply a move script and write the resulting grid.
    Move {
        file: PathBuf,
        #[arg(long)]
        script: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Compare the homology of two grids.
    Invariance { first: PathBuf, second: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Tilde,
    Hat,
}

struct InputError(String);

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_grid(path: &Path) -> Result<GridDiagram, InputError> {
    parse_grid(&read(path)?).map_err(|e| match e {
        ParseError::Grid(g) => InputError(format!("{}: {g:?}: {g}", path.display())),
        e => InputError(format!("{}: {e}", path.display())),
    })
}

/// Formats a doubled Alexander grading as an integer or half-integer.
fn half(v: i64) -> String {
    if v % 2 == 0 {
        (v / 2).to_string()
    } else {
        format!("{v}/2")
    }
}

fn write_summary(out: &mut dyn Write, h: &HomologySummary) -> std::io::Result<()> {
    for (g, piece) in &h.pieces {
        let a: Vec<String> = g.alexander2.iter().map(|&v| half(v)).collect();
        write!(
            out,
            "M={} A=({}) rank {}",
            g.maslov,
            a.join(","),
            piece.free_rank
        )?;
        if !piece.torsion.is_empty() {
            let t: Vec<String> = piece.torsion.iter().map(|d| format!("Z/{d}")).collect();
            write!(out, " torsion {}", t.join(" "))?;
        }
        writeln!(out)?;
    }
    writeln!(out, "total rank {}", h.total_rank())?;
    writeln!(out, "poincare {}", h.poincare)?;
    writeln!(out, "euler {}", h.euler)
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    if cli.threads > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Input(InputError(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

enum Failure {
    Input(InputError),
    Io(std::io::Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Validate { file } => {
            let g = load_grid(file)?;
            writeln!(out, "ok: {}x{} grid", g.size(), g.size())?;
            Ok(EXIT_OK)
        }
        Command::Info { file, generator } => {
            let g = load_grid(file)?;
            let comps = g.trace_components();
            writeln!(out, "n {}", g.size())?;
            writeln!(out, "components {}", comps.count)?;
            let sizes: Vec<String> = comps
                .rows_per_component
                .iter()
                .map(|v| v.to_string())
                .collect();
            writeln!(out, "rows per component {}", sizes.join(" "))?;
            if let Some(text) = generator {
                let x = parse_generator(text, g.size()).map_err(|e| InputError(e.to_string()))?;
                let b = g.bigrading(&x, &comps);
                let a: Vec<String> = b.alexander2.iter().map(|&v| half(v)).collect();
                writeln!(out, "generator {x}")?;
                writeln!(out, "maslov {}", b.maslov)?;
                writeln!(out, "alexander {}", a.join(" "))?;
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            file,
            d2,
            signs,
            spin_relations,
            mod2,
        } => {
            let g = load_grid(file)?;
            let all = !(*d2 || *signs || *spin_relations || *mod2);
            let c = GridComplex::new(g);
            let mut ok = true;
            if all || *d2 {
                let pass = check_d2(&c);
                writeln!(out, "{} d2", verdict(pass))?;
                ok &= pass;
            }
            if all || *signs {
                let pass = check_signs(&c, out)?;
                writeln!(out, "{} signs", verdict(pass))?;
                ok &= pass;
            }
            if all || *spin_relations {
                let pass = check_spin(c.size(), cli.seed);
                writeln!(out, "{} spin-relations", verdict(pass))?;
                ok &= pass;
            }
            if all || *mod2 {
                let pass = check_mod2(&c);
                writeln!(out, "{} mod2", verdict(pass))?;
                ok &= pass;
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Homology { file, flavor, json } => {
            let g = load_grid(file)?;
            let c = GridComplex::new(g);
            let tilde = bigraded_homology(&c);
            let h = match flavor {
                FlavorArg::Tilde => tilde,
                FlavorArg::Hat => match hat_reduction(&tilde, &c.comps) {
                    Ok(h) => h,
                    Err(e) => {
                        writeln!(out, "FAIL hat reduction: {e}")?;
                        return Ok(EXIT_FAILED);
                    }
                },
            };
            if *json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&h.to_json()).expect("json values serialize")
                )?;
            } else {
                write_summary(out, &h)?;
            }
            Ok(EXIT_OK)
        }
        Command::Alexander { file } => {
            let g = load_grid(file)?;
            match alexander_polynomial(&g) {
                Ok(p) => {
                    writeln!(out, "{p}")?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(out, "FAIL {e}")?;
                    Ok(EXIT_FAILED)
                }
            }
        }
        Command::Move {
            file,
            script,
            output,
        } => {
            let mut g = load_grid(file)?;
            let moves = parse_moves(&read(script)?)
                .map_err(|e| InputError(format!("{}: {e}", script.display())))?;
            for m in &moves {
                g = apply_move(&g, m).map_err(|e| InputError(format!("{m}: {e}")))?;
            }
            fs::write(output, write_grid(&g))
                .map_err(|e| InputError(format!("{}: {e}", output.display())))?;
            writeln!(
                out,
                "applied {} moves; wrote {}x{} grid to {}",
                moves.len(),
                g.size(),
                g.size(),
                output.display()
            )?;
            Ok(EXIT_OK)
        }
        Command::Invariance { first, second } => {
            let g1 = load_grid(first)?;
            let g2 = load_grid(second)?;
            let rep = match invariance_report(&g1, &g2) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(out, "FAIL {e}")?;
                    return Ok(EXIT_FAILED);
                }
            };
            writeln!(out, "hat first  {}", rep.hat_first.poincare)?;
            writeln!(out, "hat second {}", rep.hat_second.poincare)?;
            if let Some(m) = &rep.component_matching {
                let shift: Vec<String> = rep.alexander_shift.iter().map(|&v| half(v)).collect();
                writeln!(
                    out,
                    "component matching {m:?}, alexander shift ({})",
                    shift.join(",")
                )?;
            }
            if g1.size().abs_diff(g2.size()) == 1 {
                match rep.tilde_factor_component {
                    Some(i) => writeln!(out, "tilde factor (1 + q^-1*t^-1) on component {i}")?,
                    None => writeln!(out, "tilde factor not found")?,
                }
            }
            writeln!(out, "{} invariance", verdict(rep.passed()))?;
            Ok(if rep.passed() { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn check_d2(c: &GridComplex) -> bool {
    Permutation::all(c.size()).par_iter().all(|x| {
        let g = SpinElement::section(x);
        c.d_squared(&g, Flavor::Minus).is_zero() && c.d_squared(&g, Flavor::TildeGraded).is_zero()
    })
}

fn check_mod2(c: &GridComplex) -> bool {
    Permutation::all(c.size()).par_iter().all(|x| {
        c.spin_differential(&SpinElement::section(x), Flavor::Mod2Minus)
            == c.unsigned_differential_mod2(x)
    })
}

fn check_signs(c: &GridComplex, out: &mut dyn Write) -> std::io::Result<bool> {
    let mut ok = true;
    for order in [CocycleOrder::BaseThenTrans, CocycleOrder::TransThenBase] {
        let rep = c.check_sign_axioms(|x, l| sign_formula(x, l, order));
        let matches = Permutation::all(c.size()).par_iter().all(|x| {
            c.differential_signed(x, order) == c.differential_minus(&SpinElement::section(x))
        });
        let gauge = c.check_coboundary_equivalence(
            |x, l| sign_formula(x, l, order),
            |x, l| sign_formula(x, l, CocycleOrder::BaseThenTrans),
        );
        let role = match order {
            CocycleOrder::BaseThenTrans => "in use",
            CocycleOrder::TransThenBase => "informational",
        };
        writeln!(
            out,
            "  {order:?} ({role}): {} squares, {} vertical, {} horizontal, {} violations; equals spin differential: {}; gauge-equivalent: {}",
            rep.square_checked,
            rep.vertical_checked,
            rep.horizontal_checked,
            rep.violations.len(),
            if matches { "yes" } else { "no" },
            if gauge.is_ok() { "yes" } else { "no" },
        )?;
        if order == CocycleOrder::BaseThenTrans {
            ok &= rep.passed() && matches;
        }
    }
    Ok(ok)
}

fn check_spin(n: usize, seed: u64) -> bool {
    if !relation_failures(n).is_empty() {
        return false;
    }
    if n <= 4 {
        let all = Permutation::all(n);
        all.par_iter().all(|p| {
            all.iter().all(|q| {
                all.iter()
                    .all(|r| cocycle_identity_holds(p, q, r).unwrap_or(false))
            })
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                v.swap(i, rng.gen_range(0..=i));
            }
            Permutation::new(v).expect("shuffled identity")
        };
        (0..10_000).all(|_| {
            let (p, q, r) = (random(&mut rng), random(&mut rng), random(&mut rng));
            cocycle_identity_holds(&p, &q, &r).unwrap_or(false)
        })
    }
}
