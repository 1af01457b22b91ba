//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the rendered output with an exit code so it can be driven from tests.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certificates::{
    gamma_graph, multiset_certificate, restriction_certificate, tensor_certificate, trivial_certificate, MatchingGraph,
    MatchingWitness,
};
use crate::combinatorics::{
    enumerate_set_partitions, r_exponent, ArcMultiset, NodeSet, QSetPartition, DEFAULT_ENUMERATION_GUARD,
};
use crate::engine::{expand, restrict, tensor, CharacterCombination, Coefficient};
use crate::error::Error;
use crate::explicit::{explicit_trivial_coefficient, mixed_label_trivial_coefficient, significant_crossings};
use crate::field::PrimeModulus;
use crate::poset::{one_step_descents, DEFAULT_STEP_GUARD};
use crate::straighten::{check_identity, straighten};
use crate::values::{char_value, Decomposed, PointwiseVerifier};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "superchar",
    version,
    about = "Exact supercharacter decompositions for U_K(q)"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Cross-check results pointwise and against the matching certificate.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Include graphs and matching witnesses in nonvanishing answers.
    #[arg(long, global = true)]
    pub witness: bool,
    /// Run one command per line of FILE, in parallel, output in input order.
    #[arg(long, value_name = "FILE")]
    pub batch: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args, Clone)]
pub struct Field {
    /// Prime field size.
    #[arg(long)]
    pub q: u32,
}

#[derive(Debug, Subcommand, Clone)]
pub enum Command {
    /// Restrict χ^λ from U_L to U_K.
    Restrict {
        #[command(flatten)]
        field: Field,
        #[arg(long = "L")]
        l: String,
        #[arg(long = "K")]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        arcs: String,
        /// Report only the coefficient of this partition.
        #[arg(long)]
        coeff_of: Option<String>,
    },
    /// Decompose χ^a ⊗ χ^b over U_K.
    Tensor {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        coeff_of: Option<String>,
    },
    /// Decompose the character of an arc multiset over U_K.
    Expand {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        arcs: String,
        #[arg(long)]
        coeff_of: Option<String>,
    },
    /// Is the trivial coefficient of the restriction nonzero?
    NonzeroTrivial {
        #[command(flatten)]
        field: Field,
        #[arg(long = "L")]
        l: String,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        arcs: String,
    },
    /// Is the coefficient of χ^nu in χ^a ⊗ χ^b nonzero?
    NonzeroTensor {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        nu: String,
    },
    /// Is the coefficient of χ^mu in the restriction nonzero?
    NonzeroRestriction {
        #[command(flatten)]
        field: Field,
        #[arg(long = "L")]
        l: String,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        arcs: String,
        #[arg(long)]
        mu: String,
    },
    /// Print the labelled bipartite graph of a multiset.
    Gamma {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        /// Ambient node set (defaults to K plus all arc endpoints).
        #[arg(long = "L")]
        l: Option<String>,
        #[arg(long)]
        arcs: String,
    },
    /// Straighten a multiset into a set partition over a larger node set.
    Straighten {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        arcs: String,
    },
    /// Closed-form trivial coefficient (with --L: set-partition form).
    Explicit {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        #[arg(long = "L")]
        l: Option<String>,
        #[arg(long)]
        arcs: String,
    },
    /// One-step conflict resolutions, or the down-set to --depth.
    PosetSteps {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        #[arg(long = "L")]
        l: Option<String>,
        #[arg(long)]
        arcs: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_STEP_GUARD)]
        guard: usize,
    },
    /// List the q-set partitions of K.
    Enumerate {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        arc_count: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_GUARD)]
        guard: usize,
    },
    /// Value of χ^arcs on the superclass mu.
    Value {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        arcs: String,
        #[arg(long)]
        mu: String,
    },
    /// Check a decomposition pointwise and against the certificates.
    Verify {
        #[command(flatten)]
        field: Field,
        #[arg(long = "K")]
        k: String,
        /// Restriction source; omit for tensor or multiset checks.
        #[arg(long = "L")]
        l: Option<String>,
        #[arg(long)]
        arcs: String,
        /// Second tensor factor.
        #[arg(long)]
        b: Option<String>,
        /// JSON object of term → coefficient; defaults to the oracle's answer.
        #[arg(long)]
        combination: Option<String>,
    },
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::NotPrime(_) | Error::BadLabel { .. } | Error::BadArc { .. } => EXIT_USAGE,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn verification_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_VERIFICATION,
        message: message.into(),
    }
}

struct Report {
    json: Value,
    text: String,
}

#[derive(Debug, Clone, Copy)]
struct Flags {
    verify: bool,
    witness: bool,
}

type Outcome1 = std::result::Result<Report, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code: EXIT_OK,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: EXIT_USAGE,
                },
            };
        }
    };
    let flags = Flags {
        verify: cli.verify,
        witness: cli.witness,
    };
    match (&cli.batch, &cli.command) {
        (Some(path), None) => run_batch(path, cli.format, flags),
        (None, Some(cmd)) => render(execute(cmd, flags), cli.format),
        _ => Outcome {
            stdout: String::new(),
            stderr: "exactly one of a subcommand or --batch is required\n".into(),
            code: EXIT_USAGE,
        },
    }
}

fn render(result: Outcome1, format: Format) -> Outcome {
    match result {
        Ok(report) => Outcome {
            stdout: match format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).expect("json")),
                Format::Text => format!("{}\n", report.text.trim_end()),
            },
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(f) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
            code: f.code,
        },
    }
}

fn run_batch(path: &PathBuf, format: Format, outer: Flags) -> Outcome {
    let content = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: cannot read {}: {e}\n", path.display()),
                code: EXIT_USAGE,
            }
        }
    };
    let lines: Vec<(usize, &str)> = content
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let results: Vec<(usize, Outcome1)> = lines.par_iter().map(|&(n, line)| (n, run_line(line, outer))).collect();
    let code = results
        .iter()
        .map(|(_, r)| r.as_ref().map_or_else(|f| f.code, |_| EXIT_OK))
        .max()
        .unwrap_or(EXIT_OK);
    let stdout = match format {
        Format::Json => {
            let items: Vec<Value> = results
                .iter()
                .map(|(n, r)| match r {
                    Ok(rep) => json!({"line": n, "exit": EXIT_OK, "result": rep.json}),
                    Err(f) => json!({"line": n, "exit": f.code, "error": f.message}),
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&items).expect("json"))
        }
        Format::Text => results
            .iter()
            .map(|(n, r)| match r {
                Ok(rep) => format!("# line {n} (exit 0)\n{}\n", rep.text.trim_end()),
                Err(f) => format!("# line {n} (exit {})\nerror: {}\n", f.code, f.message),
            })
            .collect(),
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}

fn run_line(line: &str, outer: Flags) -> Outcome1 {
    let words = shlex::split(line).ok_or_else(|| Failure {
        code: EXIT_USAGE,
        message: format!("unbalanced quotes in {line:?}"),
    })?;
    let cli = Cli::try_parse_from(std::iter::once("superchar".to_string()).chain(words)).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: e.render().to_string().trim_end().to_string(),
    })?;
    let cmd = cli.command.ok_or_else(|| Failure {
        code: EXIT_USAGE,
        message: "batch lines must name a subcommand".into(),
    })?;
    let flags = Flags {
        verify: outer.verify || cli.verify,
        witness: outer.witness || cli.witness,
    };
    execute(&cmd, flags)
}

fn modulus(f: &Field) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::new(f.q)?)
}

fn nodes(text: &str) -> Result<NodeSet, Failure> {
    Ok(text.parse::<NodeSet>()?)
}

fn partition(q: PrimeModulus, support: &NodeSet, text: &str) -> Result<QSetPartition, Failure> {
    Ok(QSetPartition::parse(q, support.clone(), text)?)
}

fn multiset(q: PrimeModulus, support: &NodeSet, text: &str) -> Result<ArcMultiset, Failure> {
    Ok(ArcMultiset::parse(q, support.clone(), text)?)
}

/// Support defaulting to `k` plus every endpoint in `text`.
fn support_for(q: PrimeModulus, k: &NodeSet, l: Option<&str>, text: &str) -> Result<ArcMultiset, Failure> {
    match l {
        Some(l) => multiset(q, &nodes(l)?, text),
        None => {
            let arcs = crate::combinatorics::parse_arc_list(text)?;
            let ends = NodeSet::new(arcs.iter().flat_map(|a| [a.left, a.right]))?;
            multiset(q, &k.union(&ends), text)
        }
    }
}

fn coeff_json(c: Coefficient) -> Value {
    match u64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn combination_report(comb: &CharacterCombination, coeff_of: Option<&str>) -> Outcome1 {
    if let Some(target) = coeff_of {
        let nu = partition(comb.modulus(), comb.ambient(), target)?;
        let c = comb.coefficient(&nu);
        return Ok(Report {
            json: coeff_json(c),
            text: c.to_string(),
        });
    }
    let map = comb.to_string_map();
    let json = Value::Object(map.iter().map(|(k, &v)| (k.clone(), coeff_json(v))).collect());
    let text = if map.is_empty() {
        "0".to_string()
    } else {
        map.iter().map(|(k, v)| format!("{v}\t{{{k}}}\n")).collect()
    };
    Ok(Report { json, text })
}

fn graph_json(g: &MatchingGraph) -> Value {
    let names = |v: &[crate::certificates::GraphVertex]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
    let edges: Vec<Value> = g.edges().map(|(s, o)| json!([s.to_string(), o.to_string()])).collect();
    json!({"solid": names(&g.solid), "open": names(&g.open), "edges": edges})
}

fn verdict_report(g: &MatchingGraph, w: &MatchingWitness, flags: Flags, oracle: Option<Coefficient>) -> Outcome1 {
    if !w.verify(&g.graph) {
        return Err(verification_failure("matching witness failed its own check"));
    }
    let nonzero = w.is_covering();
    if let Some(c) = oracle {
        if (c > 0) != nonzero {
            return Err(verification_failure(format!(
                "certificate says {nonzero} but the oracle coefficient is {c}"
            )));
        }
    }
    let mut json = json!({"nonzero": nonzero});
    let mut text = nonzero.to_string();
    if flags.witness {
        json["graph"] = graph_json(g);
        json["witness"] = json!(g.describe_witness(w));
        text = format!("{text}\n{g}\n{}", g.describe_witness(w));
    }
    if let Some(c) = oracle {
        json["oracle_coefficient"] = coeff_json(c);
    }
    Ok(Report { json, text })
}

/// Every superclass label of `U_K(q)`, guarded.
fn all_partitions(k: &NodeSet, q: PrimeModulus) -> Result<Vec<QSetPartition>, Failure> {
    Ok(enumerate_set_partitions(k, q, None, DEFAULT_ENUMERATION_GUARD)?.collect())
}

fn check_pointwise(lhs: Decomposed<'_>, comb: &CharacterCombination) -> Result<usize, Failure> {
    let mut verifier = PointwiseVerifier::new(comb.ambient(), comb.modulus(), DEFAULT_ENUMERATION_GUARD)?;
    if !verifier.verify(lhs, comb)? {
        return Err(verification_failure("pointwise character values disagree"));
    }
    Ok(verifier.superclass_count())
}

fn check_certificates(
    comb: &CharacterCombination,
    mut nonzero: impl FnMut(&QSetPartition) -> crate::error::Result<bool>,
) -> Result<(), Failure> {
    for nu in all_partitions(comb.ambient(), comb.modulus())? {
        let cert = nonzero(&nu)?;
        let c = comb.coefficient(&nu);
        if cert != (c > 0) {
            return Err(verification_failure(format!(
                "certificate says {cert} for {{{nu}}} but the coefficient is {c}"
            )));
        }
    }
    Ok(())
}

fn with_verified(mut report: Report, verified: bool) -> Report {
    if verified {
        if let Value::Object(_) = report.json {
            report.json["verified"] = json!(true);
        } else {
            report.json = json!({"result": report.json, "verified": true});
        }
        report.text = format!("{}\nverified", report.text.trim_end());
    }
    report
}

fn execute(cmd: &Command, flags: Flags) -> Outcome1 {
    match cmd {
        Command::Restrict {
            field,
            l,
            k,
            arcs,
            coeff_of,
        } => {
            let q = modulus(field)?;
            let (l, k) = (nodes(l)?, nodes(k)?);
            let lambda = partition(q, &l, arcs)?;
            let comb = restrict(&lambda, &k, &l)?;
            if flags.verify {
                check_pointwise(Decomposed::Restriction { lambda: &lambda, l: &l }, &comb)?;
                check_certificates(&comb, |mu| {
                    crate::certificates::restriction_coeff_nonzero(&lambda, mu, &k, &l)
                })?;
                let deg = (q.get() as Coefficient)
                    .checked_pow(crate::combinatorics::degree_exponent(&lambda, &l))
                    .ok_or(Error::Overflow)?;
                if comb.total_degree()? != deg {
                    return Err(verification_failure("degree not conserved"));
                }
            }
            Ok(with_verified(
                combination_report(&comb, coeff_of.as_deref())?,
                flags.verify,
            ))
        }
        Command::Tensor {
            field,
            k,
            a,
            b,
            coeff_of,
        } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let (lambda, mu) = (partition(q, &k, a)?, partition(q, &k, b)?);
            let comb = tensor(&lambda, &mu, &k)?;
            if flags.verify {
                check_pointwise(
                    Decomposed::Tensor {
                        lambda: &lambda,
                        mu: &mu,
                    },
                    &comb,
                )?;
                check_certificates(&comb, |nu| {
                    crate::certificates::tensor_coeff_nonzero(&lambda, &mu, nu, &k)
                })?;
            }
            Ok(with_verified(
                combination_report(&comb, coeff_of.as_deref())?,
                flags.verify,
            ))
        }
        Command::Expand {
            field,
            k,
            arcs,
            coeff_of,
        } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let lambda = multiset(q, &k, arcs)?;
            let comb = expand(&lambda, &k)?;
            if flags.verify {
                check_pointwise(Decomposed::Multiset { lambda: &lambda }, &comb)?;
                check_certificates(&comb, |nu| crate::certificates::multiset_coeff_nonzero(&lambda, nu, &k))?;
                let s = straighten(&lambda, &k)?;
                if !check_identity(&lambda, &k, &s)? {
                    return Err(verification_failure("straightening identity failed"));
                }
            }
            Ok(with_verified(
                combination_report(&comb, coeff_of.as_deref())?,
                flags.verify,
            ))
        }
        Command::NonzeroTrivial { field, l, k, arcs } => {
            let q = modulus(field)?;
            let (l, k) = (nodes(l)?, nodes(k)?);
            let lambda = partition(q, &l, arcs)?;
            let (g, w) = trivial_certificate(&lambda, &k, &l)?;
            let oracle = if flags.verify {
                Some(restrict(&lambda, &k, &l)?.trivial_coefficient())
            } else {
                None
            };
            verdict_report(&g, &w, flags, oracle)
        }
        Command::NonzeroTensor { field, k, a, b, nu } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let (lambda, mu, nu) = (partition(q, &k, a)?, partition(q, &k, b)?, partition(q, &k, nu)?);
            let (g, w) = tensor_certificate(&lambda, &mu, &nu, &k)?;
            let oracle = if flags.verify {
                Some(tensor(&lambda, &mu, &k)?.coefficient(&nu))
            } else {
                None
            };
            verdict_report(&g, &w, flags, oracle)
        }
        Command::NonzeroRestriction { field, l, k, arcs, mu } => {
            let q = modulus(field)?;
            let (l, k) = (nodes(l)?, nodes(k)?);
            let lambda = partition(q, &l, arcs)?;
            let mu = partition(q, &k, mu)?;
            let (g, w) = restriction_certificate(&lambda, &mu, &k, &l)?;
            let oracle = if flags.verify {
                Some(restrict(&lambda, &k, &l)?.coefficient(&mu))
            } else {
                None
            };
            verdict_report(&g, &w, flags, oracle)
        }
        Command::Gamma { field, k, l, arcs } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let lambda = support_for(q, &k, l.as_deref(), arcs)?;
            let g = gamma_graph(&lambda, &k);
            let w = g.complete_matching();
            if flags.verify && !w.verify(&g.graph) {
                return Err(verification_failure("matching witness failed its own check"));
            }
            let mut json = graph_json(&g);
            json["complete_matching"] = json!(w.is_covering());
            let mut text = g.to_string();
            if flags.witness {
                json["witness"] = json!(g.describe_witness(&w));
                text = format!("{text}\n{}", g.describe_witness(&w));
            }
            Ok(Report { json, text })
        }
        Command::Straighten { field, k, arcs } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let lambda = multiset(q, &k, arcs)?;
            let res = straighten(&lambda, &k)?;
            if flags.verify && !check_identity(&lambda, &k, &res)? {
                return Err(verification_failure("straightening identity failed"));
            }
            let index_map: BTreeMap<String, u32> = res.index_map.iter().map(|(a, b)| (a.to_string(), *b)).collect();
            let trace: Vec<String> = res.trace.iter().map(ToString::to_string).collect();
            let json = json!({
                "tilde_lambda": res.tilde_lambda.to_string(),
                "K_prime": res.k_prime.to_string(),
                "L_prime": res.l_prime.to_string(),
                "r": res.r,
                "index_map": index_map,
                "trace": trace,
            });
            let text = format!(
                "{}tilde_lambda: {}\nK': {}\nL': {}\nr: {}",
                res.trace_text(),
                res.tilde_lambda,
                res.k_prime,
                res.l_prime,
                res.r
            );
            Ok(with_verified(Report { json, text }, flags.verify))
        }
        Command::Explicit { field, k, l, arcs } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let (form, value, lambda, oracle) = match l {
                Some(l) => {
                    let l = nodes(l)?;
                    let lambda = partition(q, &l, arcs)?;
                    let v = explicit_trivial_coefficient(&lambda, &k, &l)?;
                    let oracle = flags
                        .verify
                        .then(|| restrict(&lambda, &k, &l).map(|c| c.trivial_coefficient()))
                        .transpose()?;
                    ("set-partition", v, lambda.into_multiset(), oracle)
                }
                None => {
                    let lambda = multiset(q, &k, arcs)?;
                    let v = mixed_label_trivial_coefficient(&lambda, &k)?;
                    let oracle = flags
                        .verify
                        .then(|| expand(&lambda, &k).map(|c| c.trivial_coefficient()))
                        .transpose()?;
                    ("labeled", v, lambda, oracle)
                }
            };
            if let Some(o) = oracle {
                if o != value {
                    return Err(verification_failure(format!("closed form {value} but oracle {o}")));
                }
            }
            let c = significant_crossings(&lambda, &k);
            let pairs: Vec<Value> = c
                .pairs
                .iter()
                .map(|&(x, y)| json!([lambda.occurrence_string(x), lambda.occurrence_string(y)]))
                .collect();
            let mut json = json!({"form": form, "coefficient": coeff_json(value), "significant_crossings": pairs});
            if let (Some(l), "set-partition") = (l, form) {
                json["r"] = json!(r_exponent(&lambda, &k, &nodes(l)?)?);
            }
            Ok(with_verified(
                Report {
                    json,
                    text: value.to_string(),
                },
                flags.verify,
            ))
        }
        Command::PosetSteps {
            field,
            k,
            l,
            arcs,
            depth,
            guard,
        } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let lambda = support_for(q, &k, l.as_deref(), arcs)?;
            match depth {
                None => {
                    let steps = one_step_descents(&lambda, &k, *guard)?;
                    if flags.verify {
                        for s in &steps {
                            if crate::poset::shrinking_injection(&s.child, &s.parent).is_none() {
                                return Err(verification_failure(format!("step {s} does not shrink")));
                            }
                        }
                    }
                    let lines: Vec<String> = steps.iter().map(ToString::to_string).collect();
                    let text = if lines.is_empty() {
                        "no conflicts".to_string()
                    } else {
                        lines.join("\n")
                    };
                    Ok(Report {
                        json: json!({ "steps": lines }),
                        text,
                    })
                }
                Some(d) => down_set(&lambda, &k, *d, *guard),
            }
        }
        Command::Enumerate {
            field,
            k,
            arc_count,
            guard,
        } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let all: Vec<String> = enumerate_set_partitions(&k, q, *arc_count, *guard)?
                .map(|p| p.to_string())
                .collect();
            let text = all.iter().map(|p| format!("{{{p}}}")).collect::<Vec<_>>().join("\n");
            Ok(Report {
                json: json!({"count": all.len(), "partitions": all}),
                text: format!("{text}\ncount: {}", all.len()),
            })
        }
        Command::Value { field, k, arcs, mu } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let (lambda, mu) = (partition(q, &k, arcs)?, partition(q, &k, mu)?);
            let v = char_value(&lambda, &mu, &k)?;
            let coeffs: Vec<String> = v.coefficients().iter().map(ToString::to_string).collect();
            Ok(Report {
                json: json!({"value": v.to_string(), "coefficients": coeffs}),
                text: v.to_string(),
            })
        }
        Command::Verify {
            field,
            k,
            l,
            arcs,
            b,
            combination,
        } => {
            let q = modulus(field)?;
            let k = nodes(k)?;
            let given = combination
                .as_deref()
                .map(|text| -> Result<CharacterCombination, Failure> {
                    let map: BTreeMap<String, Coefficient> = serde_json::from_str(text).map_err(|e| Failure {
                        code: EXIT_USAGE,
                        message: format!("bad combination JSON: {e}"),
                    })?;
                    Ok(CharacterCombination::parse_map(q, k.clone(), &map)?)
                })
                .transpose()?;
            let (kind, superclasses) = match (l, b) {
                (Some(l), None) => {
                    let l = nodes(l)?;
                    let lambda = partition(q, &l, arcs)?;
                    let comb = match given {
                        Some(c) => c,
                        None => restrict(&lambda, &k, &l)?,
                    };
                    let n = check_pointwise(Decomposed::Restriction { lambda: &lambda, l: &l }, &comb)?;
                    check_certificates(&comb, |mu| {
                        crate::certificates::restriction_coeff_nonzero(&lambda, mu, &k, &l)
                    })?;
                    ("restriction", n)
                }
                (None, Some(b)) => {
                    let (lambda, mu) = (partition(q, &k, arcs)?, partition(q, &k, b)?);
                    let comb = match given {
                        Some(c) => c,
                        None => tensor(&lambda, &mu, &k)?,
                    };
                    let n = check_pointwise(
                        Decomposed::Tensor {
                            lambda: &lambda,
                            mu: &mu,
                        },
                        &comb,
                    )?;
                    check_certificates(&comb, |nu| {
                        crate::certificates::tensor_coeff_nonzero(&lambda, &mu, nu, &k)
                    })?;
                    ("tensor", n)
                }
                (None, None) => {
                    let lambda = multiset(q, &k, arcs)?;
                    let comb = match given {
                        Some(c) => c,
                        None => expand(&lambda, &k)?,
                    };
                    let n = check_pointwise(Decomposed::Multiset { lambda: &lambda }, &comb)?;
                    check_certificates(&comb, |nu| {
                        let (_, w) = multiset_certificate(&lambda, nu, &k)?;
                        Ok(w.is_covering())
                    })?;
                    ("expansion", n)
                }
                (Some(_), Some(_)) => {
                    return Err(Failure {
                        code: EXIT_USAGE,
                        message: "--L and --b are mutually exclusive".into(),
                    })
                }
            };
            Ok(Report {
                json: json!({"kind": kind, "verified": true, "superclasses": superclasses}),
                text: format!("{kind} verified on {superclasses} superclasses"),
            })
        }
    }
}

fn down_set(lambda: &ArcMultiset, k: &NodeSet, depth: usize, guard: usize) -> Outcome1 {
    let mut seen: HashSet<String> = HashSet::new();
    let mut order: Vec<(usize, String)> = Vec::new();
    let mut queue = VecDeque::from([(lambda.clone(), 0usize)]);
    seen.insert(lambda.canonical_string());
    order.push((0, lambda.canonical_string()));
    let mut truncated = false;
    while let Some((node, d)) = queue.pop_front() {
        let steps = one_step_descents(&node, k, guard)?;
        if d == depth {
            truncated |= !steps.is_empty();
            continue;
        }
        for s in steps {
            let key = s.child.canonical_string();
            if seen.insert(key.clone()) {
                if seen.len() > guard {
                    return Err(Error::GuardExceeded(format!("down-set exceeds {guard} elements")).into());
                }
                order.push((d + 1, key));
                queue.push_back((s.child, d + 1));
            }
        }
    }
    let items: Vec<Value> = order.iter().map(|(d, m)| json!({"depth": d, "multiset": m})).collect();
    let text = order
        .iter()
        .map(|(d, m)| format!("{d}\t{{{m}}}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report {
        json: json!({"down_set": items, "truncated": truncated}),
        text: if truncated {
            format!("{text}\n(truncated)")
        } else {
            text
        },
    })
}
