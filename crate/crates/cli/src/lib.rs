//! Command-line front end. [`run`] takes the argument vector and output
//! streams so the whole CLI can be driven from tests.
//!
//! Exit codes: 0 on success, 1 on a domain error (a precondition of the
//! requested operation fails), 2 when an input cannot be read or parsed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use lexmono::congruence::{sigma_image, sigma_s_related, CongruenceSpec};
use lexmono::generators::{factor_into_generators, factor_o, Budget, GenWord};
use lexmono::solver::{solve, Side};
use lexmono::structure::{green_related, GreenRelation};
use lexmono::suite::{run_all, run_criterion, SuiteConfig};
use lexmono::text::{format_element, parse_element, parse_raw};
use lexmono::{automorphism::Automorphism, random::rand_element, Element};

#[derive(Parser, Debug)]
#[command(name = "lexmono", version, about = "Exact arithmetic for cofinite monotone partial bijections of L_n x_lex Z")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a generator word such as "E(0,1) S(1,2)".
    Eval {
        word: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Product a·b (apply a first).
    Compose { a: String, b: String },
    Inverse { a: String },
    /// Green's relation test; prints true or false.
    Green {
        #[arg(long, value_enum)]
        rel: Rel,
        a: String,
        b: String,
    },
    /// Offset image as a flat row cL1 cR1 cL2 cR2 ...
    Sigma { a: String },
    /// Test a σ_S b for the coordinate set S, e.g. --set 1,2 (empty for equality).
    Cong {
        #[arg(long, default_value = "")]
        set: String,
        a: String,
        b: String,
    },
    /// Factor into ε, ε⁻¹ and ς_{±1} symbols.
    Factor { a: String },
    /// Split a = b·g with b of full range and g of full domain.
    FactorO { a: String },
    /// All solutions of a·x = b (right) or x·a = b (left), one per line.
    Solve {
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        a: String,
        b: String,
    },
    /// Apply the automorphism: permute coordinates, then conjugate by the unit.
    Auto {
        #[arg(long, value_delimiter = ',')]
        perm: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        unit: Option<Vec<i64>>,
        a: String,
    },
    /// Validate a raw windowed table and print the element it shadows.
    Validate { raw: String },
    /// Deterministic random element.
    Rand {
        #[arg(long, env = "LEXMONO_SEED")]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Default for every budget component.
        #[arg(long, default_value_t = 2)]
        budget: u32,
        #[arg(long)]
        budget_excl: Option<usize>,
        #[arg(long)]
        budget_shift: Option<i64>,
        /// Bound on exclusion point magnitude; defaults to the shift budget.
        #[arg(long)]
        budget_pos: Option<i64>,
    },
    /// Run the property suite and print one line per criterion.
    Check {
        #[arg(long, env = "LEXMONO_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        window: i64,
        /// Run a single criterion (1-9).
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rel {
    R,
    L,
    H,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

enum Failure {
    Domain(String),
    Parse(String),
}

impl From<lexmono::Error> for Failure {
    fn from(e: lexmono::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn read_input(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| Failure::Parse(format!("cannot read {arg}: {e}")))
}

fn element(arg: &str) -> Result<Element, Failure> {
    let src = read_input(arg)?;
    parse_element(&src).map_err(|e| Failure::Parse(format!("parse error at {e}")))
}

fn parse_set(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Parse(format!("bad coordinate `{t}` in --set"))))
        .collect()
}

fn execute(command: Command, out: &mut dyn Write) -> Result<bool, Failure> {
    let mut lines: Vec<String> = Vec::new();
    let mut ok = true;
    match command {
        Command::Eval { word, n } => {
            let w = GenWord::<i64>::parse(&word, n).map_err(|e| Failure::Parse(format!("parse error at {e}")))?;
            lines.push(format_element(&w.eval()?));
        }
        Command::Compose { a, b } => lines.push(format_element(&element(&a)?.compose(&element(&b)?)?)),
        Command::Inverse { a } => lines.push(format_element(&element(&a)?.inverse()?)),
        Command::Green { rel, a, b } => {
            let rel = match rel {
                Rel::R => GreenRelation::R,
                Rel::L => GreenRelation::L,
                Rel::H => GreenRelation::H,
                Rel::D => GreenRelation::D,
            };
            lines.push(green_related(rel, &element(&a)?, &element(&b)?)?.to_string());
        }
        Command::Sigma { a } => lines.push(sigma_image(&element(&a)?)?.to_string()),
        Command::Cong { set, a, b } => {
            let (a, b) = (element(&a)?, element(&b)?);
            let spec = CongruenceSpec::new(a.n(), parse_set(&set)?)?;
            lines.push(sigma_s_related(&a, &b, &spec)?.to_string());
        }
        Command::Factor { a } => lines.push(factor_into_generators(&element(&a)?)?.to_string()),
        Command::FactorO { a } => {
            let (b, g) = factor_o(&element(&a)?)?;
            lines.push(format_element(&b));
            lines.push(format_element(&g));
        }
        Command::Solve { side, a, b } => {
            let side = if side == SideArg::Left { Side::Left } else { Side::Right };
            for x in solve(side, &element(&a)?, &element(&b)?)?.solutions {
                lines.push(format_element(&x));
            }
        }
        Command::Auto { perm, unit, a } => {
            let a = element(&a)?;
            let n = a.n();
            let f = Automorphism::new(perm.unwrap_or_else(|| (1..=n).collect()), unit.unwrap_or_else(|| vec![0; n]))?;
            lines.push(format_element(&f.apply(&a)?));
        }
        Command::Validate { raw } => {
            let src = read_input(&raw)?;
            let w = parse_raw::<i64>(&src).map_err(|e| Failure::Parse(format!("parse error at {e}")))?;
            lines.push(format_element(&Element::validate_raw(&w)?));
        }
        Command::Rand {
            seed,
            n,
            budget,
            budget_excl,
            budget_shift,
            budget_pos,
        } => {
            let shift = budget_shift.unwrap_or(budget as i64);
            let b = Budget {
                excl: budget_excl.unwrap_or(budget as usize),
                shift,
                pos: budget_pos.unwrap_or(shift),
            };
            if b.shift < 0 || b.pos < 0 {
                return Err(Failure::Domain("budgets must be non-negative".into()));
            }
            lines.push(format_element(&rand_element(seed, n, &b)?));
        }
        Command::Check { seed, window, only } => {
            let cfg = SuiteConfig { seed, window };
            let reports = match only {
                Some(id) => vec![run_criterion(id, &cfg)
                    .ok_or_else(|| Failure::Domain(format!("no criterion {id}; expected 1-9")))?],
                None => run_all(&cfg),
            };
            for r in &reports {
                ok &= r.passed;
                lines.push(r.to_string());
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            lines.push(format!("{passed}/{} criteria passed", reports.len()));
        }
    }
    for l in lines {
        writeln!(out, "{l}").map_err(|e| Failure::Domain(e.to_string()))?;
    }
    Ok(ok)
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}
