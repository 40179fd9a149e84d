//! Command-line front end of the workbench.
//!
//! [`run_from_args`] does all the work and returns the process exit code, so
//! the binary is a thin wrapper and tests can drive commands in-process.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success; for `solve`, a verified solution was found |
//! | 2    | `solve` proved (or exhaustively searched) that no regular solution exists |
//! | 3    | `solve` gave up before deciding |
//! | 64   | usage error: bad flag, unknown method, parameter out of range, guard tripped |
//! | 65   | input file is malformed |
//! | 66   | input file is missing or unreadable |
//! | 70   | internal failure (estimator could not converge, and the like) |
//! | 74   | output could not be written |

pub mod table1;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rmq_core::altmodel::{alt_hybrid_solve, alt_xl_solve, log2_exact};
use rmq_core::estimator::{
    compare_all, estimate, render_compare_csv, EstimateParams, Method, ALTERNATIVE_CURVES,
    COMPLEXITY_CSV_HEADER, QUADRATIC_CURVES,
};
use rmq_core::instance::{
    brute_force_solve, default_m, parse_instance, plant_instance, render_instance, RmqInstance,
};
use rmq_core::modeling::{
    build_modeling, hybrid_solve, xl_solve, HybridOptions, SolveReport, SolveStatus, Strategy,
    XlOptions, SOLVE_CSV_HEADER,
};
use rmq_core::polymethod::{polymethod_solve, PolyMethodParams};
use rmq_core::CSV_VERSION_LINE;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSAT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 74;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "RMQ_LAB_THREADS";

pub const DEFAULT_SEED: u64 = 42;

/// Default `l` values of the two comparison sheets.
pub const QUADRATIC_LS: [usize; 9] = [2, 3, 4, 5, 6, 10, 20, 50, 100];
pub const ALTERNATIVE_LS: [usize; 7] = [2, 4, 8, 16, 32, 64, 128];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    NoInput { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Core(#[from] rmq_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use rmq_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::NoInput { .. } => EXIT_NO_INPUT,
            CliError::Output { .. } => EXIT_IO,
            CliError::Core(e) => match e {
                E::Parameter(_) | E::Size(_) | E::Domain(_) | E::InfeasibleGuess(_) => EXIT_USAGE,
                E::Parse(_) | E::Dimension(_) | E::IncompleteData(_) => EXIT_DATA,
                E::Degree(_) | E::Estimator(_) | E::InconsistentDecision(_) => EXIT_SOFTWARE,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "rmq-lab",
    version,
    about = "Regular MQ over GF(2): generate instances, solve them, price the attacks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plant a random instance with a known regular solution.
    Gen {
        /// Window length.
        #[arg(long)]
        l: usize,
        /// Number of windows.
        #[arg(long)]
        w: usize,
        /// Number of equations; defaults to ceil(1.2 * w * log2 l).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance file and print one CSV row.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: SolveMethod,
        /// Fraction of windows guessed (hybrid-full).
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        /// Free coordinates kept per window (hybrid-partial).
        #[arg(long, default_value_t = 2)]
        l_prime: usize,
        /// Comma-separated window counts; entry k is the number of windows
        /// keeping k free coordinates (hybrid-different).
        #[arg(long, value_delimiter = ',')]
        windows: Option<Vec<usize>>,
        /// Bits left unguessed per window (alt-hybrid); defaults to log2 l.
        #[arg(long)]
        s_prime: Option<usize>,
        /// Extra random combinations per parity draw (polymethod).
        #[arg(long, default_value_t = 3)]
        k_margin: usize,
        /// Highest XL degree before giving up.
        #[arg(long, default_value_t = 12)]
        d_max: usize,
        /// Randomness of the polynomial method.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Collect every solution instead of stopping at the first.
        #[arg(long)]
        exhaustive: bool,
        /// Lift the Macaulay column guard.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Price one attack asymptotically.
    Estimate {
        /// Attack to price, e.g. plain, full, partial or dinur-alt.
        #[arg(long)]
        method: String,
        /// Window length.
        #[arg(long)]
        l: usize,
        /// Field size; plain-fq needs q >= 3.
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 2.0)]
        omega: f64,
        /// Grid denominator of the different-windows search.
        #[arg(long)]
        split: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a set of attacks over a range of l.
    Compare {
        /// Comma-separated l values; defaults depend on the sheet.
        #[arg(long, value_delimiter = ',')]
        l: Option<Vec<usize>>,
        #[arg(long, default_value_t = 2.0)]
        omega: f64,
        #[arg(long, value_enum, default_value_t = Sheet::Quadratic)]
        sheet: Sheet,
        /// Comma-separated estimator methods, overriding the sheet's curves.
        #[arg(long, value_delimiter = ',')]
        methods: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure solving degrees of both modelings on small unique instances.
    #[command(name = "experiment-table1")]
    ExperimentTable1 {
        /// Comma-separated `s:w` rows, with l = 2^s; defaults to the allowlist.
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<String>>,
        /// Run rows outside the allowlist.
        #[arg(long)]
        force: bool,
        /// First seed tried for each row.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Skip the binary re-encoding.
        #[arg(long)]
        no_alt: bool,
        #[arg(long, default_value_t = 12)]
        d_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Brute,
    Xl,
    HybridFull,
    HybridPartial,
    HybridDifferent,
    Polymethod,
    AltXl,
    AltHybrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Sheet {
    Quadratic,
    Alternative,
    All,
}

/// Sizes the global thread pool from [`THREADS_ENV`]. Does nothing when the
/// variable is unset or the pool already exists.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Gen {
            l,
            w,
            m,
            seed,
            out: path,
        } => {
            let inst = plant_instance(l, w, m.unwrap_or_else(|| default_m(l, w)), seed)?;
            emit(out, path.as_deref(), &render_instance(&inst))?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            file,
            method,
            gamma,
            l_prime,
            windows,
            s_prime,
            k_margin,
            d_max,
            seed,
            exhaustive,
            force,
            out: path,
        } => {
            let text = fs::read_to_string(&file).map_err(|source| CliError::NoInput {
                path: file.clone(),
                source,
            })?;
            let inst = parse_instance(&text)?;
            let mut xl = XlOptions {
                d_max,
                ..XlOptions::default()
            };
            if force {
                let _ = writeln!(err, "warning: Macaulay column guard disabled");
                xl.column_guard = usize::MAX;
            }
            let args = SolveArgs {
                gamma,
                l_prime,
                windows,
                s_prime,
                k_margin,
                seed,
                exhaustive,
                xl,
            };
            let rep = solve(&inst, method, &args)?;
            if !rep.note.is_empty() {
                let _ = writeln!(err, "note: {}", rep.note);
            }
            let csv = format!(
                "{CSV_VERSION_LINE}\n{SOLVE_CSV_HEADER}\n{}\n",
                rep.csv_row()
            );
            emit(out, path.as_deref(), &csv)?;
            Ok(match rep.status {
                SolveStatus::Found => EXIT_OK,
                SolveStatus::Unsatisfiable => EXIT_UNSAT,
                SolveStatus::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
        Command::Estimate {
            method,
            l,
            q,
            omega,
            split,
            out: path,
        } => {
            let method: Method = method
                .parse()
                .map_err(|e: rmq_core::Error| CliError::Usage(e.to_string()))?;
            let params = EstimateParams { l, q, omega, split };
            let rep = estimate(method, &params)?;
            let mut csv = format!(
                "{CSV_VERSION_LINE}\n{COMPLEXITY_CSV_HEADER}\n{}\n",
                rep.csv_row()
            );
            if method != Method::BruteForce {
                let verdict = if rep.beats_brute_force() {
                    "beats"
                } else {
                    "does not beat"
                };
                csv.push_str(&format!("# {verdict} brute force\n"));
            }
            if let Some(note) = rep.note.as_deref().filter(|_| rep.heuristic) {
                csv.push_str(&format!("# {note}\n"));
            }
            emit(out, path.as_deref(), &csv)?;
            Ok(EXIT_OK)
        }
        Command::Compare {
            l,
            omega,
            sheet,
            methods,
            out: path,
        } => {
            let rows = match methods {
                Some(names) => {
                    let ms = names
                        .iter()
                        .map(|n| n.trim().parse::<Method>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    let ls = l.unwrap_or_else(|| match sheet {
                        Sheet::Alternative => ALTERNATIVE_LS.to_vec(),
                        _ => QUADRATIC_LS.to_vec(),
                    });
                    compare_all(&ls, omega, &ms)
                }
                None => {
                    let mut rows = Vec::new();
                    if sheet != Sheet::Alternative {
                        let ls = l.clone().unwrap_or_else(|| QUADRATIC_LS.to_vec());
                        rows.extend(compare_all(&ls, omega, &QUADRATIC_CURVES));
                    }
                    if sheet != Sheet::Quadratic {
                        let ls = l.unwrap_or_else(|| ALTERNATIVE_LS.to_vec());
                        rows.extend(compare_all(&ls, omega, &ALTERNATIVE_CURVES));
                    }
                    rows
                }
            };
            emit(out, path.as_deref(), &render_compare_csv(&rows))?;
            Ok(EXIT_OK)
        }
        Command::ExperimentTable1 {
            rows,
            force,
            seed,
            no_alt,
            d_max,
            out: path,
        } => {
            let selected = match rows {
                Some(specs) => specs
                    .iter()
                    .map(|s| parse_row(s))
                    .collect::<CliResult<Vec<_>>>()?,
                None => table1::ALLOWLIST.to_vec(),
            };
            for &(s, w) in &selected {
                if !table1::ALLOWLIST.contains(&(s, w)) {
                    if !force {
                        return Err(CliError::Usage(format!(
                            "row ({s},{w}) is outside the desk-scale allowlist; pass --force to run it anyway"
                        )));
                    }
                    let _ = writeln!(
                        err,
                        "warning: row ({s},{w}) is outside the allowlist and may take very long or exhaust memory"
                    );
                }
            }
            let xl = XlOptions {
                d_max,
                ..XlOptions::default()
            };
            let mut results = Vec::with_capacity(selected.len());
            for (s, w) in selected {
                results.push(table1::run_row(s, w, seed, !no_alt, &xl)?);
            }
            emit(out, path.as_deref(), &table1::render_csv(&results))?;
            Ok(EXIT_OK)
        }
    }
}

struct SolveArgs {
    gamma: f64,
    l_prime: usize,
    windows: Option<Vec<usize>>,
    s_prime: Option<usize>,
    k_margin: usize,
    seed: u64,
    exhaustive: bool,
    xl: XlOptions,
}

fn solve(inst: &RmqInstance, method: SolveMethod, a: &SolveArgs) -> CliResult<SolveReport> {
    let hybrid = |strategy: Strategy, name: &str| -> CliResult<SolveReport> {
        let opts = HybridOptions {
            xl: a.xl.clone(),
            exhaustive: a.exhaustive,
            ..HybridOptions::default()
        };
        let mut rep = hybrid_solve(inst, &strategy, &opts)?;
        rep.method = name.to_string();
        Ok(rep)
    };
    let rep = match method {
        SolveMethod::Brute => brute_report(inst)?,
        SolveMethod::Xl => {
            let md = build_modeling(inst, None, true)?;
            xl_solve(inst, &md, &a.xl)?
        }
        SolveMethod::HybridFull => hybrid(Strategy::Full { gamma: a.gamma }, "hybrid-full")?,
        SolveMethod::HybridPartial => {
            hybrid(Strategy::Partial { l_prime: a.l_prime }, "hybrid-partial")?
        }
        SolveMethod::HybridDifferent => {
            let windows = a
                .windows
                .clone()
                .ok_or_else(|| CliError::Usage("hybrid-different needs --windows".to_string()))?;
            hybrid(Strategy::Different { windows }, "hybrid-different")?
        }
        SolveMethod::Polymethod => {
            let mut params = PolyMethodParams::new(a.seed);
            params.k_margin = a.k_margin;
            polymethod_solve(inst, &params)?
        }
        SolveMethod::AltXl => alt_xl_solve(inst, &a.xl)?,
        SolveMethod::AltHybrid => {
            let s_prime = match a.s_prime {
                Some(v) => v,
                None => log2_exact(inst.l)?,
            };
            alt_hybrid_solve(inst, s_prime, &a.xl)?
        }
    };
    Ok(rep)
}

fn brute_report(inst: &RmqInstance) -> CliResult<SolveReport> {
    let start = std::time::Instant::now();
    let mut rep = SolveReport::new("brute", inst);
    rep.solutions = brute_force_solve(inst)?;
    rep.guesses_tried = (inst.l as u128)
        .checked_pow(inst.w as u32)
        .and_then(|v| usize::try_from(v).ok())
        .unwrap_or(usize::MAX);
    rep.status = if rep.solutions.is_empty() {
        SolveStatus::Unsatisfiable
    } else {
        SolveStatus::Found
    };
    rep.elapsed = start.elapsed().as_secs_f64();
    Ok(rep)
}

fn parse_row(spec: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("row '{spec}' is not of the form s:w"));
    let (s, w) = spec.trim().split_once(':').ok_or_else(bad)?;
    Ok((
        s.trim().parse().map_err(|_| bad())?,
        w.trim().parse().map_err(|_| bad())?,
    ))
}

/// Writes `text` to `path` atomically (temporary file, then rename), or to
/// `out` when no path is given.
fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult<()> {
    let Some(path) = path else {
        return out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Output {
                path: PathBuf::from("<stdout>"),
                source,
            });
    };
    let fail = |source| CliError::Output {
        path: path.to_path_buf(),
        source,
    };
    let name = path.file_name().ok_or_else(|| {
        fail(io::Error::new(
            io::ErrorKind::InvalidInput,
            "not a file path",
        ))
    })?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, text).map_err(fail)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        fail(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rmq-lab").chain(args.iter().copied());
        let code = run_from_args(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn row_specs() {
        assert_eq!(parse_row("4:2").unwrap(), (4, 2));
        assert_eq!(parse_row(" 2 : 7 ").unwrap(), (2, 7));
        assert!(parse_row("4").is_err());
        assert!(parse_row("a:2").is_err());
    }

    #[test]
    fn unknown_subcommand_is_usage_error() {
        let (code, _, err) = run(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("experiment-table1"));
    }

    #[test]
    fn gen_rejects_zero_equations() {
        let (code, _, err) = run(&["gen", "--l", "3", "--w", "2", "--m", "0"]);
        assert_eq!(code, EXIT_USAGE, "{err}");
    }

    #[test]
    fn unknown_estimator_method() {
        let (code, _, _) = run(&["estimate", "--method", "magic", "--l", "4"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn table1_guard() {
        let (code, _, err) = run(&["experiment-table1", "--rows", "6:6"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("allowlist"));
    }

    #[test]
    fn error_codes() {
        let e = CliError::Core(rmq_core::Error::Parse("x".into()));
        assert_eq!(e.exit_code(), EXIT_DATA);
        let e = CliError::Core(rmq_core::Error::Size("x".into()));
        assert_eq!(e.exit_code(), EXIT_USAGE);
    }
}
