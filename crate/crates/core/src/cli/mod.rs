//! Command-line front end. [`run`] parses arguments, dispatches to
//! [`commands`] and maps outcomes to exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | solved / conjugate / valid / nonempty |
//! | 1 | internal error (failed self-check or oracle disagreement) |
//! | 2 | bad input |
//! | 3 | not conjugate / invalid candidate / empty intersection |

pub mod commands;
pub mod json;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use json::{ElementJson, GroupJson, InstanceFile, IntersectFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "esp", version, about = "Conjugacy search in extraspecial p-groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a conjugator for an instance file.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        /// Cross-check against brute force when the group is small enough.
        #[arg(long)]
        oracle: bool,
    },
    /// Decide whether the two elements of an instance are conjugate.
    Decide {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Check a candidate conjugator (defaults to the instance's known one).
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Candidate element as inline JSON, or `@path` to read it from a file.
        #[arg(long)]
        candidate: Option<String>,
    },
    /// Emit a random solvable instance.
    Random {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the solver and count congruence solves.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "16,32,48,62")]
        p_bits: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32")]
        components: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simulate a commuting-subgroup key exchange and break it.
    DemoKeyexchange {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        oracle: bool,
    },
    /// Find a common element of two translated conjugacy classes.
    Intersect {
        /// Intersection file with `group`, `h`, `u`, `k`, `v`.
        #[arg(long = "in", required_unless_present = "sweep")]
        input: Option<PathBuf>,
        /// Check every quadruple of a small group against brute force.
        #[arg(long, requires = "kind")]
        sweep: bool,
        /// Group kind for `--sweep`.
        #[arg(long, value_parser = ["esp", "mp", "np", "dihedral", "quaternion"])]
        kind: Option<String>,
        /// `n` for dihedral (`D_n`) or quaternion (`Q_{2^n}`) sweeps.
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        oracle: bool,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => EXIT_INTERNAL,
        _ => EXIT_BAD_INPUT,
    }
}

struct Output {
    format: Format,
    out: Option<PathBuf>,
}

impl Output {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<(), Error> {
        let body = match self.format {
            Format::Json => json::to_json_text(value),
            Format::Text => text(),
        };
        match &self.out {
            Some(path) => std::fs::write(path, body).map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(body.as_bytes()).map_err(|e| Error::Verification(e.to_string()))
            }
        }
    }
}

fn elem_text(e: &Option<ElementJson>) -> String {
    e.as_ref().map_or_else(|| "-".into(), |e| serde_json::to_string(e).expect("json"))
}

fn oracle_text(o: &Option<commands::OracleCheck>) -> String {
    match o {
        None => String::new(),
        Some(o) => match &o.skipped {
            Some(why) => format!("oracle: skipped ({why})\n"),
            None => format!("oracle: {}\n", if o.agrees { "agrees" } else { "DISAGREES" }),
        },
    }
}

fn oracle_ok(o: &Option<commands::OracleCheck>) -> bool {
    o.as_ref().is_none_or(|o| o.agrees)
}

fn parse_candidate(arg: &str) -> Result<ElementJson, Error> {
    match arg.strip_prefix('@') {
        Some(path) => json::read_json(std::path::Path::new(path)),
        None => json::parse_json(arg),
    }
}

fn sweep_group(kind: &str, n: Option<String>, p: Option<u64>, r: Option<usize>, s: Option<usize>) -> Result<GroupJson, Error> {
    let need_p = || p.map(|p| p.to_string()).ok_or_else(|| Error::Parse("--p is required".into()));
    let need_n = || n.clone().ok_or_else(|| Error::Parse("--n is required".into()));
    Ok(match kind {
        "esp" => GroupJson::Esp { p: need_p()?, r: r.unwrap_or(1).to_string(), s: s.unwrap_or(0).to_string() },
        "mp" => GroupJson::Mp { p: need_p()? },
        "np" => GroupJson::Np { p: need_p()? },
        "dihedral" => GroupJson::Dihedral { n: need_n()? },
        "quaternion" => GroupJson::Quaternion { n: need_n()? },
        other => return Err(Error::Parse(format!("unknown group kind {other:?}"))),
    })
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    let out = Output { format: cli.format, out: cli.out };
    match cli.command {
        Command::Solve { input, oracle } => {
            let file: InstanceFile = json::read_json(&input)?;
            let rep = commands::solve(&file, oracle)?;
            out.emit(&rep, || {
                let head = if rep.conjugate {
                    format!("solved: {} (verified: {})\n", elem_text(&rep.conjugator), rep.verified)
                } else {
                    format!("not conjugate: {}\n", rep.refusal.as_deref().unwrap_or("-"))
                };
                let steps: String = rep
                    .trace
                    .iter()
                    .map(|s| format!("  factor {} {}: t = {}, local = {}\n", s.factor, s.kind, s.t, elem_text(&Some(s.local.clone()))))
                    .collect();
                format!("{head}{steps}congruence solves: {}\n{}", rep.congruence_solves, oracle_text(&rep.oracle))
            })?;
            Ok(if !oracle_ok(&rep.oracle) {
                EXIT_INTERNAL
            } else if rep.conjugate {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Decide { input, oracle } => {
            let file: InstanceFile = json::read_json(&input)?;
            let rep = commands::decide(&file, oracle)?;
            out.emit(&rep, || {
                let reason = rep.reason.as_ref().map(|r| format!(" ({r})")).unwrap_or_default();
                format!("{}{reason}\n{}", if rep.conjugate { "conjugate" } else { "not conjugate" }, oracle_text(&rep.oracle))
            })?;
            Ok(if !oracle_ok(&rep.oracle) {
                EXIT_INTERNAL
            } else if rep.conjugate {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Verify { input, candidate } => {
            let file: InstanceFile = json::read_json(&input)?;
            let cand = candidate.as_deref().map(parse_candidate).transpose()?;
            let rep = commands::verify(&file, cand.as_ref())?;
            out.emit(&rep, || {
                if rep.valid {
                    "valid\n".to_string()
                } else {
                    format!("invalid: differs at {}\n", rep.diff.join(", "))
                }
            })?;
            Ok(if rep.valid { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Random { p, r, s, seed } => {
            let inst = commands::random(p, r, s, seed)?;
            out.emit(&inst, || {
                format!(
                    "g_tilde: {}\ng_prime: {}\nknown_conjugator: {}\n",
                    elem_text(&Some(inst.g_tilde.clone())),
                    elem_text(&Some(inst.g_prime.clone())),
                    elem_text(&inst.known_conjugator)
                )
            })?;
            Ok(EXIT_OK)
        }
        Command::Bench { p_bits, components, trials, seed } => {
            let rep = commands::bench(&p_bits, &components, trials, seed)?;
            out.emit(&rep, || {
                let mut s = String::from("p_bits,p,components,trials,median_us,mean_us,max_solves,solve_bound\n");
                for r in &rep.rows {
                    s += &format!(
                        "{},{},{},{},{:.1},{:.1},{},{}\n",
                        r.p_bits, r.p, r.components, r.trials, r.median_us, r.mean_us, r.max_solves, r.solve_bound
                    );
                }
                s
            })?;
            Ok(if rep.within_bound && rep.independent_of_p { EXIT_OK } else { EXIT_INTERNAL })
        }
        Command::DemoKeyexchange { p, r, s, seed, oracle } => {
            let t = commands::demo_keyexchange(p, r, s, seed, oracle)?;
            out.emit(&t, || {
                let mut s = format!(
                    "public: {}\nalice sends: {}\nbob sends: {}\nshared key: {}\nkeys agree: {}\nattacker key: {}\nattacker success: {}\n",
                    elem_text(&Some(t.public.clone())),
                    elem_text(&Some(t.alice_sends.clone())),
                    elem_text(&Some(t.bob_sends.clone())),
                    elem_text(&Some(t.alice_key.clone())),
                    t.keys_agree,
                    elem_text(&Some(t.attacker.key.clone())),
                    t.attacker.success
                );
                if let Some(o) = &t.oracle {
                    s += &format!("brute-force key matches: {}\n", o.success);
                }
                s
            })?;
            let ok = t.keys_agree && t.attacker.success && t.oracle.as_ref().is_none_or(|o| o.success);
            Ok(if ok { EXIT_OK } else { EXIT_INTERNAL })
        }
        Command::Intersect { input, sweep, kind, n, p, r, s, oracle } => {
            if sweep {
                let group = sweep_group(kind.as_deref().unwrap_or_default(), n, p, r, s)?;
                let rep = commands::sweep(&group)?;
                out.emit(&rep, || {
                    format!("quadruples: {}\nnonempty: {}\nmismatches: {}\n", rep.quadruples, rep.nonempty, rep.mismatches)
                })?;
                return Ok(if rep.mismatches == 0 { EXIT_OK } else { EXIT_INTERNAL });
            }
            let path = input.ok_or_else(|| Error::Parse("--in is required".into()))?;
            let file: IntersectFile = json::read_json(&path)?;
            let rep = commands::intersect(&file, oracle)?;
            out.emit(&rep, || format!("common: {}\n{}", elem_text(&rep.common), oracle_text(&rep.oracle)))?;
            Ok(if !oracle_ok(&rep.oracle) {
                EXIT_INTERNAL
            } else if rep.common.is_some() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
