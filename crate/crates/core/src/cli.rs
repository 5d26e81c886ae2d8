//! Command-line front end. [`run`] does all the work and writes to the given
//! streams so that it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactlin::Fp;
use crate::io::{module_from_invariants, parse_matrix, parse_module};
use crate::kmod::{Invariants, ModuleRep};
use crate::oracle::{
    check_kernel_bound, check_permutation_criterion, check_summand_criteria, AgreementReport,
    Certification, KernelTrialReport, SearchBudget, Searcher,
};
use crate::pdist::{chain_diagram, size_int, size_module};
use crate::resolve::build_resolution;

/// Largest prime accepted by `resolve`.
pub const RESOLVE_MAX_P: u64 = 97;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ppdim",
    version,
    about = "Permutation resolutions of modules over F_p[C_p]"
)]
pub struct Cli {
    /// Output format; `resolve` defaults to json, everything else to text.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance of the block size x from {1, p}.
    Size {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: usize,
    },
    /// The chain of block sizes ordered by distance.
    Chain {
        #[arg(long)]
        p: u64,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Jordan block sizes of a module.
    Decompose(ModuleArgs),
    /// A permutation resolution of a module.
    Resolve {
        #[command(flatten)]
        module: ModuleArgs,
        /// Verify exactness and that every term is a permutation module.
        #[arg(long)]
        check: bool,
    },
    /// Permutation dimension of a module.
    Ppdim(ModuleArgs),
    /// Exhaustive search for the shortest resolution, compared with the formula.
    Oracle {
        #[command(flatten)]
        module: ModuleArgs,
        /// Cap on the number of surjections examined.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        max_p_copies: Option<usize>,
        #[arg(long)]
        max_1_copies: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Primes to run at (comma separated); each suite has its own default.
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        max_dim: Option<usize>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Agreement of the three summand criteria on every element.
    Lemma34,
    /// The permutation-module summand test against the general one.
    Lemma35,
    /// Random kernel-size trials.
    Prop37,
    /// Resolution lengths against the formula and the search.
    Thm38,
}

/// A module from `--module FILE`, `--p P --invariants a,b,..` or
/// `--p P --matrix-file FILE`.
#[derive(Debug, Args)]
pub struct ModuleArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub invariants: Option<Vec<usize>>,
    #[arg(long)]
    pub matrix_file: Option<PathBuf>,
    /// Module JSON file.
    #[arg(long)]
    pub module: Option<PathBuf>,
}

impl ModuleArgs {
    pub fn load(&self) -> Result<ModuleRep> {
        let read = |path: &PathBuf| {
            std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))
        };
        match (&self.invariants, &self.matrix_file, &self.module) {
            (Some(parts), None, None) => module_from_invariants(self.require_p()?, parts),
            (None, Some(path), None) => parse_matrix(self.require_p()?, &read(path)?),
            (None, None, Some(path)) => {
                let m = parse_module(&read(path)?)?;
                match self.p {
                    Some(p) if p != m.p() as u64 => Err(Error::Input(format!(
                        "--p {p} disagrees with p = {} in {}",
                        m.p(),
                        path.display()
                    ))),
                    _ => Ok(m),
                }
            }
            _ => Err(Error::Input(
                "give exactly one of --invariants, --matrix-file or --module".to_string(),
            )),
        }
    }

    fn require_p(&self) -> Result<u64> {
        self.p
            .ok_or_else(|| Error::Input("--p is required".to_string()))
    }
}

/// Text and JSON renderings of a command's result.
struct Output {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Output {
            text,
            json,
            ok: true,
        }
    }
}

/// Executes `cli`, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let default = match cli.command {
        Command::Resolve { .. } => Format::Json,
        _ => Format::Text,
    };
    let format = cli.format.unwrap_or(default);
    match execute(&cli.command) {
        Ok(o) => {
            let written = match format {
                Format::Text => write!(out, "{}", o.text),
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("serializable")
                ),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_FAILED;
            }
            if o.ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "verification failed");
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::BudgetExceeded(_) => EXIT_FAILED,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn join(parts: &[usize]) -> String {
    parts
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Size { p, x } => {
            let s = size_int(Fp::new(*p)?, *x)?;
            Ok(Output::ok(
                format!("{s}\n"),
                json!({ "p": p, "x": x, "size": s }),
            ))
        }
        Command::Chain { p, dot } => {
            let chain = chain_diagram(Fp::new(*p)?);
            if *dot {
                let s = chain.to_dot();
                return Ok(Output::ok(s.clone(), json!({ "p": p, "dot": s })));
            }
            let text = chain
                .entries()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" - ");
            Ok(Output::ok(
                format!("{text}\n"),
                json!({ "p": p, "chain": chain.entries() }),
            ))
        }
        Command::Decompose(args) => {
            let m = args.load()?;
            let inv = m.decompose();
            Ok(Output::ok(
                format!("{}\n", join(inv.parts())),
                json!({ "p": m.p(), "invariants": inv.parts() }),
            ))
        }
        Command::Ppdim(args) => {
            let m = args.load()?;
            let inv = m.decompose();
            let s = size_module(&inv);
            Ok(Output::ok(
                format!("{s}\n"),
                json!({ "p": m.p(), "invariants": inv.parts(), "ppdim": s }),
            ))
        }
        Command::Resolve { module, check } => resolve(module, *check),
        Command::Oracle {
            module,
            budget,
            max_depth,
            max_p_copies,
            max_1_copies,
        } => {
            let defaults = SearchBudget::default();
            let budget = SearchBudget {
                max_maps: budget.unwrap_or(defaults.max_maps),
                max_depth: max_depth.unwrap_or(defaults.max_depth),
                max_p_copies: max_p_copies.unwrap_or(defaults.max_p_copies),
                max_1_copies: max_1_copies.unwrap_or(defaults.max_1_copies),
                ..defaults
            };
            oracle(&module.load()?, budget)
        }
        Command::Verify {
            suite,
            seed,
            p,
            trials,
            max_dim,
            jobs,
        } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Error::Input(format!("--jobs: {e}")))?;
            pool.install(|| verify(*suite, *seed, p, *trials, *max_dim))
        }
    }
}

fn resolve(args: &ModuleArgs, check: bool) -> Result<Output> {
    let m = args.load()?;
    if m.p() as u64 > RESOLVE_MAX_P {
        return Err(Error::Input(format!(
            "resolve supports p <= {RESOLVE_MAX_P} (got {})",
            m.p()
        )));
    }
    let res = build_resolution(&m)?;
    let verdict = check.then(|| res.check_exact() && res.all_terms_permutation());
    let wire = res.to_json(verdict);
    let mut text = format!("length {}\n", wire.length);
    for (i, t) in wire.terms.iter().enumerate() {
        text.push_str(&format!(
            "P{i}: {}\n",
            Invariants::new(m.field(), t.clone())?
        ));
    }
    if let Some(c) = verdict {
        text.push_str(&format!("check: {c}\n"));
    }
    Ok(Output {
        text,
        json: to_json(&wire),
        ok: verdict != Some(false),
    })
}

fn oracle(m: &ModuleRep, budget: SearchBudget) -> Result<Output> {
    let inv = m.decompose();
    let formula = size_module(&inv);
    let outcome = Searcher::new(m.field(), budget).ppdim(&inv)?;
    let agree = outcome.value == formula;
    let label = match outcome.certification {
        Certification::Certified => "certified",
        Certification::WithinBudget => "certified within budget",
    };
    let text = format!(
        "invariants {}\nsize {formula}\nsearch {} ({label}, {} maps)\n{}\n",
        join(inv.parts()),
        outcome.value,
        outcome.maps_examined,
        if agree { "agree" } else { "DISAGREE" },
    );
    let json = json!({
        "p": m.p(),
        "invariants": inv.parts(),
        "size": formula,
        "search": outcome,
        "agree": agree,
    });
    Ok(Output {
        text,
        json,
        ok: agree,
    })
}

fn primes_or(given: &[u64], default: &[u64]) -> Result<Vec<Fp>> {
    let ps = if given.is_empty() { default } else { given };
    ps.iter().map(|&p| Fp::new(p)).collect()
}

fn agreement_output(reports: Vec<AgreementReport>) -> Output {
    let mut text = String::from(
        "| p | max dim | modules | elements | disagreements |\n|---|---|---|---|---|\n",
    );
    for r in &reports {
        text.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            r.p,
            r.max_dim,
            r.modules,
            r.elements,
            r.disagreements.len()
        ));
    }
    let ok = reports.iter().all(AgreementReport::passed);
    Output {
        text,
        json: to_json(&reports),
        ok,
    }
}

/// Constructive resolution checks for one cyclic module.
#[derive(Debug, Serialize)]
struct ResolutionCheck {
    x: usize,
    size: usize,
    length: usize,
    exact: bool,
    permutation_terms: bool,
}

#[derive(Debug, Serialize)]
struct SearchCheck {
    invariants: Vec<usize>,
    size: usize,
    search: usize,
    certification: Certification,
}

#[derive(Debug, Serialize)]
struct LengthReport {
    p: u32,
    resolutions: Vec<ResolutionCheck>,
    searches: Vec<SearchCheck>,
    passed: bool,
}

/// Modules compared against the search at `field`: every module of
/// dimension at most `max_dim` for p ≤ 3, the cyclic ones for p = 5.
fn search_targets(field: Fp, max_dim: usize) -> Vec<Invariants> {
    match field.p() {
        2 | 3 => (1..=max_dim)
            .flat_map(|d| Invariants::all_of_dim(field, d))
            .collect(),
        5 => (1..=5)
            .map(|x| Invariants::cyclic(field, x).expect("x <= p"))
            .collect(),
        _ => Vec::new(),
    }
}

fn length_report(field: Fp, max_dim: usize) -> Result<LengthReport> {
    use rayon::prelude::*;
    let resolutions = (1..=field.p_usize())
        .into_par_iter()
        .map(|x| {
            let m = ModuleRep::cyclic(field, x)?;
            let res = build_resolution(&m)?;
            Ok(ResolutionCheck {
                x,
                size: size_int(field, x)?,
                length: res.length(),
                exact: res.check_exact(),
                permutation_terms: res.all_terms_permutation(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let searcher = Searcher::new(field, SearchBudget::default());
    let mut searches = Vec::new();
    for inv in search_targets(field, max_dim) {
        let out = searcher.ppdim(&inv)?;
        searches.push(SearchCheck {
            invariants: inv.parts().to_vec(),
            size: size_module(&inv),
            search: out.value,
            certification: out.certification,
        });
    }
    let passed = resolutions
        .iter()
        .all(|r| r.exact && r.permutation_terms && r.length == r.size)
        && searches.iter().all(|s| s.search == s.size);
    Ok(LengthReport {
        p: field.p(),
        resolutions,
        searches,
        passed,
    })
}

fn verify(
    suite: Suite,
    seed: u64,
    ps: &[u64],
    trials: Option<u64>,
    max_dim: Option<usize>,
) -> Result<Output> {
    match suite {
        Suite::Lemma34 => {
            let dim = max_dim.unwrap_or(5);
            let reports = primes_or(ps, &[2, 3, 5])?
                .into_iter()
                .map(|f| check_summand_criteria(f, dim))
                .collect::<Result<Vec<_>>>()?;
            Ok(agreement_output(reports))
        }
        Suite::Lemma35 => {
            let dim = max_dim.unwrap_or(6);
            let reports = primes_or(ps, &[2, 3, 5])?
                .into_iter()
                .map(|f| check_permutation_criterion(f, dim))
                .collect::<Result<Vec<_>>>()?;
            Ok(agreement_output(reports))
        }
        Suite::Prop37 => {
            let dim = max_dim.unwrap_or(6);
            let n = trials.unwrap_or(1000);
            let reports = primes_or(ps, &[2, 3, 5])?
                .into_iter()
                .map(|f| check_kernel_bound(f, n, seed, dim))
                .collect::<Result<Vec<_>>>()?;
            let mut text = format!(
                "seed {seed}\n| p | trials | passing filter | violations |\n|---|---|---|---|\n"
            );
            for r in &reports {
                text.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    r.p, r.trials_attempted, r.trials_passing_filter, r.violations
                ));
            }
            for r in reports.iter().flat_map(|r| &r.records) {
                if let Some(v) = &r.violation {
                    text.push_str(&format!(
                        "violation (trial {}, seed {}): {v}\n",
                        r.trial, r.seed
                    ));
                }
            }
            let ok = reports.iter().all(KernelTrialReport::passed);
            Ok(Output {
                text,
                json: to_json(&reports),
                ok,
            })
        }
        Suite::Thm38 => {
            let dim = max_dim.unwrap_or(6);
            let reports = primes_or(ps, &[2, 3, 5, 7, 11, 13])?
                .into_iter()
                .map(|f| length_report(f, dim))
                .collect::<Result<Vec<_>>>()?;
            let mut text = String::from(
                "| p | resolutions | searched modules | passed |\n|---|---|---|---|\n",
            );
            for r in &reports {
                text.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    r.p,
                    r.resolutions.len(),
                    r.searches.len(),
                    r.passed
                ));
            }
            let ok = reports.iter().all(|r| r.passed);
            Ok(Output {
                text,
                json: to_json(&reports),
                ok,
            })
        }
    }
}
