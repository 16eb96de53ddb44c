//! Command-line front end. Reports go to stdout (or `--output`) as JSON, a
//! short summary goes to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::io::{element_to_json, params_to_json, read_params, write_structure_constants};
use crate::params::{admissibility_report, generic_admissible, random_admissible_finite_field, ParamSet, Sign};
use crate::report::Report;
use crate::words::parse_word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARAMS: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bmw2k", version, about = "Exact computations in the two-strand cyclotomic BMW algebra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the admissibility report of a parameter set.
    Admissible(Common),
    /// Print an admissible parameter set as a parameter file.
    GenericParams(Common),
    /// Check the module relations on V and Ξ, the basis, and the 3x3 lemma.
    Verify(Common),
    /// Expand a word in the basis.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Multiply the reductions of several words, left to right.
    Multiply {
        #[command(flatten)]
        common: Common,
        #[arg(long = "word", required = true)]
        words: Vec<String>,
    },
    /// Stream the nonzero structure constants as JSON lines.
    StructureConstants(Common),
    /// Check the relations of the quotient by the ideal generated by e.
    HeckeCheck(Common),
    /// Check the structure of the ideal generated by e.
    IdealCheck(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Parameter file (JSON).
    #[arg(long, value_name = "FILE")]
    pub params: Option<PathBuf>,
    #[arg(long, value_name = "K")]
    pub k: Option<usize>,
    /// Generic admissible parameters over a rational function field.
    #[arg(long)]
    pub generic: bool,
    /// Root of beta = 0 used for q0.
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    /// Seeded admissible parameters over F_p.
    #[arg(long, value_name = "P")]
    pub fp: Option<u64>,
    #[arg(long, value_name = "S")]
    pub seed: Option<u64>,
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Include residual matrices of failed checks.
    #[arg(long)]
    pub residuals: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Compact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamSource {
    File(PathBuf),
    Generic { k: usize, sign: Sign },
    FiniteField { k: usize, p: u64, seed: u64 },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

impl Common {
    /// Resolves the parameter source. `default_generic` lets `generic-params`
    /// accept `--k` alone.
    pub fn source(&self, default_generic: bool) -> Result<ParamSource, String> {
        let chosen = [self.params.is_some(), self.generic, self.fp.is_some()].iter().filter(|b| **b).count();
        if chosen > 1 {
            return Err("choose exactly one of --params, --generic, --fp".into());
        }
        if let Some(path) = &self.params {
            if self.k.is_some() || self.sign.is_some() || self.seed.is_some() {
                return Err("--params cannot be combined with --k, --sign or --seed".into());
            }
            return Ok(ParamSource::File(path.clone()));
        }
        let k = self.k.ok_or("--k is required unless --params is given")?;
        if let Some(p) = self.fp {
            if self.sign.is_some() {
                return Err("--sign applies to --generic only; --fp draws the sign from the seed".into());
            }
            return Ok(ParamSource::FiniteField { k, p, seed: self.seed.unwrap_or(0) });
        }
        if self.generic || default_generic {
            if self.seed.is_some() {
                return Err("--seed applies to --fp only".into());
            }
            return Ok(ParamSource::Generic { k, sign: self.sign.unwrap_or(SignArg::Plus).into() });
        }
        Err("no parameter source: use --params FILE, --k K --generic, or --k K --fp P --seed S".into())
    }
}

fn load(common: &Common, default_generic: bool) -> Result<ParamSet, Failure> {
    match common.source(default_generic).map_err(usage)? {
        ParamSource::File(path) => {
            read_params(&path).map_err(|e| Failure { code: EXIT_PARAMS, message: e.to_string() })
        }
        ParamSource::Generic { k, sign } => generic_admissible(k, sign).map_err(|e| usage(e.to_string())),
        ParamSource::FiniteField { k, p, seed } => {
            random_admissible_finite_field(k, p, seed).map_err(|e| usage(e.to_string()))
        }
    }
}

fn algebra(ps: &ParamSet) -> Result<Algebra, Failure> {
    Algebra::from_params(ps).map_err(|e| Failure { code: EXIT_FAILED, message: e.to_string() })
}

struct Outcome {
    body: Value,
    summary: String,
    passed: bool,
}

fn report_summary(name: &str, r: &Report) -> String {
    let total = r.checks().len();
    let ok = total - r.failures().count();
    let mut s = format!("{name}: {ok}/{total} checks passed");
    for f in r.failures() {
        s.push_str(&format!("\n  failed: {}", f.name));
    }
    s
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<(Common, Outcome), Failure> {
    let (common, outcome) = match command {
        Command::Admissible(c) => {
            let ps = load(c, false)?;
            let r = admissibility_report(&ps);
            let summary = format!("admissible: {}", r.admissible);
            (c, Outcome { body: r.to_json(ps.domain()), summary, passed: r.admissible })
        }
        Command::GenericParams(c) => {
            let ps = load(c, true)?;
            let summary = format!("k = {} over {}", ps.k(), ps.domain());
            (c, Outcome { body: params_to_json(&ps), summary, passed: true })
        }
        Command::Verify(c) => {
            let ps = load(c, false)?;
            let alg = algebra(&ps)?;
            let result = alg.verify_all();
            let summary = [
                report_summary("V", &result.v),
                report_summary("Xi", &result.xi),
                report_summary("phi", &result.phi),
                format!("3x3 lemma: {}", result.three_by_three),
            ]
            .join("\n");
            (c, Outcome { body: result.to_json(ps.domain(), c.residuals), summary, passed: result.passed() })
        }
        Command::Reduce { common, word } => {
            let w = parse_word(word).map_err(|e| usage(format!("--word: {e}")))?;
            let ps = load(common, false)?;
            let alg = algebra(&ps)?;
            let r = alg.reduce_word(&w);
            let summary = format!("{} nonzero coefficients", r.support(alg.k()).len());
            (common, Outcome { body: element_to_json(&alg, &r), summary, passed: true })
        }
        Command::Multiply { common, words } => {
            let parsed = words
                .iter()
                .map(|w| parse_word(w).map_err(|e| usage(format!("--word {w:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let ps = load(common, false)?;
            let alg = algebra(&ps)?;
            let mut acc = alg.one_element();
            for w in &parsed {
                acc = alg.multiply(&acc, &alg.reduce_word(w)).expect("same algebra");
            }
            let summary = format!("{} nonzero coefficients", acc.support(alg.k()).len());
            (common, Outcome { body: element_to_json(&alg, &acc), summary, passed: true })
        }
        Command::StructureConstants(c) => {
            let ps = load(c, false)?;
            let alg = algebra(&ps)?;
            let io_failure = |e: std::io::Error| usage(e.to_string());
            let count = match &c.output {
                Some(path) => {
                    let file = std::fs::File::create(path).map_err(io_failure)?;
                    let mut w = std::io::BufWriter::new(file);
                    let n = write_structure_constants(&alg, &mut w).map_err(io_failure)?;
                    w.flush().map_err(io_failure)?;
                    n
                }
                None => write_structure_constants(&alg, out).map_err(io_failure)?,
            };
            let summary = format!("{count} nonzero structure constants, dimension {}", alg.dim());
            (c, Outcome { body: Value::Null, summary, passed: true })
        }
        Command::HeckeCheck(c) => {
            let ps = load(c, false)?;
            let alg = algebra(&ps)?;
            let (dim, r) = alg.hecke_quotient_check();
            let body = json!({
                "dimension": dim,
                "relations": r.to_json(ps.domain(), c.residuals),
                "passed": r.passed(),
            });
            (c, Outcome { body, summary: report_summary(&format!("quotient of dimension {dim}"), &r), passed: r.passed() })
        }
        Command::IdealCheck(c) => {
            let ps = load(c, false)?;
            let alg = algebra(&ps)?;
            let r = alg.ideal_check();
            let body = json!({ "relations": r.to_json(ps.domain(), c.residuals), "passed": r.passed() });
            (c, Outcome { body, summary: report_summary("ideal", &r), passed: r.passed() })
        }
    };
    Ok((common.clone(), outcome))
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(&cli.command, stdout) {
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
        Ok((common, outcome)) => {
            if !outcome.body.is_null() {
                let text = match common.format {
                    Format::Pretty => serde_json::to_string_pretty(&outcome.body),
                    Format::Compact => serde_json::to_string(&outcome.body),
                }
                .expect("json values serialize");
                let written = match &common.output {
                    Some(path) => std::fs::write(path, format!("{text}\n")),
                    None => writeln!(stdout, "{text}"),
                };
                if let Err(e) = written {
                    let _ = writeln!(stderr, "error: cannot write output: {e}");
                    return EXIT_USAGE;
                }
            }
            let _ = writeln!(stderr, "{}", outcome.summary);
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
    }
}
