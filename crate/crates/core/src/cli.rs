//! Command-line driver. [`run`] returns the exit status and both output
//! streams so the binary stays a thin shell around it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{
    classify, finite_presentation, ComplexityVerdict, PresentationRegistry, SpacePresentation,
};
use crate::deciders::DeciderRegistry;
use crate::error::{Error, Result};
use crate::lts::{
    extend_to_hyperconnected, format_lts, fresh_state, genericity_sample, induced_space,
    is_hyperconnected_lts, parse_lts, subbasis,
};
use crate::monitor::{decompose, is_hyperconnected, Decomposition};
use crate::reductions::{
    certify_grid_random, certify_grid_reduction, certify_tree_sweep, CertificationReport, GridAlpha,
};
use crate::symbolic::{parse_symbolic, SymbolicSet};
use crate::text::{format_space, parse_set, parse_space};
use crate::topology::{FiniteSpace, PointSet};

#[derive(Debug, Parser)]
#[command(
    name = "monitorability",
    version,
    about = "Decide and classify monitorability of sets in topological spaces"
)]
pub struct Cli {
    /// Output rendering.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Same as `--format pretty`.
    #[arg(long, global = true, conflicts_with = "format")]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Space,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SetSource {
    /// Points of the set, e.g. "0 2" or "set: 0 2".
    #[arg(long)]
    pub set: Option<String>,
    /// File holding a `set:` line.
    #[arg(long)]
    pub set_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a set is monitorable.
    Monitorable {
        /// Finite space file.
        #[arg(long, requires = "set_source", conflicts_with_all = ["symbolic", "symbolic_text"])]
        space: Option<PathBuf>,
        #[arg(long, group = "set_source")]
        set: Option<String>,
        #[arg(long, group = "set_source")]
        set_file: Option<PathBuf>,
        /// Decider used on finite spaces.
        #[arg(long, default_value = "frontier")]
        decider: String,
        /// Symbolic set file (cofinite, grid, scott or sum).
        #[arg(long, conflicts_with = "symbolic_text")]
        symbolic: Option<PathBuf>,
        /// Symbolic set given inline.
        #[arg(long)]
        symbolic_text: Option<String>,
    },
    /// Split a monitorable set into regular-open and nowhere-dense parts.
    Decompose {
        #[arg(long)]
        space: PathBuf,
        #[command(flatten)]
        source: SetSource,
    },
    /// Classify the family of monitorable sets of a space.
    Classify {
        /// Built-in space: discrete[(n)], indiscrete[(n)], sum[(k)], cofinite, grid, scott.
        #[arg(long, conflicts_with_all = ["space", "lts"])]
        builtin: Option<String>,
        #[arg(long, conflicts_with = "lts")]
        space: Option<PathBuf>,
        #[arg(long)]
        lts: Option<PathBuf>,
        /// Number of disjoint opens to look for.
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
    /// Test whether any two non-empty opens meet.
    Hyperconnected {
        #[arg(long, conflicts_with = "lts")]
        space: Option<PathBuf>,
        #[arg(long)]
        lts: Option<PathBuf>,
    },
    /// Compute the subbasis and induced space of a transition system.
    LtsTopology {
        #[arg(long)]
        lts: PathBuf,
        /// `space` prints the induced space in the space file format.
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Extend required transitions to a hyperconnected relation avoiding forbidden ones.
    Extend {
        #[arg(long)]
        states: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<String>,
        /// Required transitions as `q:event:q'`, comma separated.
        #[arg(long, value_delimiter = ',')]
        required: Vec<String>,
        /// Forbidden transitions as `q:event:q'`, comma separated.
        #[arg(long, value_delimiter = ',')]
        forbidden: Vec<String>,
    },
    /// Sample random relations and report how often they are hyperconnected.
    Genericity {
        #[arg(long)]
        states: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<String>,
        /// Probability of including each transition.
        #[arg(long)]
        p: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Evaluate samples on the thread pool.
        #[arg(long)]
        parallel: bool,
    },
    /// Check the grid reduction on random or given inputs.
    CertifyGrid {
        /// Seeds for random inputs; each seed contributes `--cases` inputs.
        #[arg(long, value_delimiter = ',', required_unless_present = "input")]
        seed: Vec<u64>,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        /// Grid file giving a single α.
        #[arg(long, conflicts_with = "seed")]
        input: Option<PathBuf>,
    },
    /// Check the tree reduction on every small tree, with and without spines.
    CertifyTree {
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        width: usize,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct MonitorOutput {
    monitorable: bool,
    witness: Option<Vec<usize>>,
    decomposition: Option<Decomposition>,
}

#[derive(Serialize)]
struct HyperconnectedOutput {
    hyperconnected: bool,
}

#[derive(Serialize)]
struct SubbasisEntry {
    set: Vec<usize>,
    witness: Vec<String>,
}

#[derive(Serialize)]
struct LtsTopologyOutput {
    states: usize,
    alphabet: Vec<String>,
    subbasis: Vec<SubbasisEntry>,
    minopen: Vec<Vec<usize>>,
    hyperconnected: bool,
}

#[derive(Serialize)]
struct ExtendOutput {
    fresh_state: usize,
    triples: Vec<(usize, String, usize)>,
    hyperconnected: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let status = e.exit_code();
            return if e.use_stderr() {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    status,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome {
            status: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            status: if e.is_input_error() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn load_set(
    space: &FiniteSpace,
    set: &Option<String>,
    set_file: &Option<PathBuf>,
) -> Result<PointSet> {
    match (set, set_file) {
        (Some(text), _) => parse_set(text, space.len()),
        (None, Some(path)) => parse_set(&read(path)?, space.len()),
        (None, None) => Err(Error::InvalidArgument("a set is required".into())),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn list(points: &[usize]) -> String {
    format!(
        "{{{}}}",
        points
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn render_monitor(format: Format, out: &MonitorOutput) -> String {
    match format {
        Format::Json => json(out),
        Format::Pretty => {
            let mut s = format!(
                "monitorable: {}\n",
                if out.monitorable { "yes" } else { "no" }
            );
            if let Some(w) = &out.witness {
                let _ = writeln!(s, "dense and codense in: {}", list(w));
            }
            if let Some(d) = &out.decomposition {
                let _ = writeln!(
                    s,
                    "regular open part:    {}",
                    list(&d.regular_part.to_vec())
                );
                let _ = writeln!(
                    s,
                    "nowhere dense part:   {}",
                    list(&d.nowhere_dense_part.to_vec())
                );
            }
            s
        }
    }
}

fn render_classification(format: Format, v: &ComplexityVerdict) -> String {
    match format {
        Format::Json => json(v),
        Format::Pretty => {
            let mut s = format!("space: {}\nclass: {}", v.evidence.space, v.tag);
            if let Some(r) = v.refinement {
                let _ = write!(s, " ({r:?})");
            }
            let _ = write!(
                s,
                "\nisolated points dense: {}\nsecond countable: {}\nminimal opens: {}  H = {}  L = {}\n",
                v.evidence.isolated_points_dense,
                v.evidence.second_countable,
                v.evidence
                    .minimal_opens
                    .count
                    .map_or("infinitely many".to_string(), |c| c.to_string()),
                v.evidence.minimal_opens.h,
                v.evidence.minimal_opens.l,
            );
            if let Some(c) = &v.evidence.certificate {
                let _ = writeln!(s, "certificate: {c}");
            }
            let _ = writeln!(s, "budget used: {}", v.budget_used);
            s
        }
    }
}

fn render_report(format: Format, r: &CertificationReport) -> String {
    match format {
        Format::Json => json(r),
        Format::Pretty => {
            let mut s = format!("cases: {}\nfailures: {}\n", r.cases, r.failures.len());
            for f in &r.failures {
                let _ = writeln!(s, "  {f}");
            }
            s
        }
    }
}

fn parse_triple(text: &str, alphabet: &[String], n: usize) -> Result<(usize, usize, usize)> {
    let bad = || Error::parse(1, text, "expected `q:event:q'`");
    let parts: Vec<&str> = text.split(':').collect();
    let [q, e, r] = parts[..] else {
        return Err(bad());
    };
    let q: usize = q.parse().map_err(|_| bad())?;
    let r: usize = r.parse().map_err(|_| bad())?;
    if q >= n || r >= n {
        return Err(Error::parse(1, text, format!("state out of range 0..{n}")));
    }
    let e = alphabet
        .iter()
        .position(|a| a == e)
        .ok_or_else(|| Error::parse(1, text, "event not in alphabet"))?;
    Ok((q, e, r))
}

fn execute(cli: &Cli) -> Result<String> {
    let format = if cli.pretty {
        Format::Pretty
    } else {
        cli.format
    };
    match &cli.command {
        Command::Monitorable {
            space,
            set,
            set_file,
            decider,
            symbolic,
            symbolic_text,
        } => {
            if let Some(path) = space {
                let space = parse_space(&read(path)?)?;
                let a = load_set(&space, set, set_file)?;
                let registry = DeciderRegistry::default();
                let verdict = registry.get(decider)?.decide(&space, &a)?;
                let decomposition = if verdict.monitorable {
                    Some(decompose(&space, &a)?)
                } else {
                    None
                };
                let out = MonitorOutput {
                    monitorable: verdict.monitorable,
                    witness: verdict.witness.map(|w| w.to_vec()),
                    decomposition,
                };
                return Ok(render_monitor(format, &out));
            }
            let text = match (symbolic, symbolic_text) {
                (Some(path), _) => read(path)?,
                (None, Some(text)) => text.clone(),
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "one of --space, --symbolic or --symbolic-text is required".into(),
                    ))
                }
            };
            let set: SymbolicSet = parse_symbolic(&text)?;
            let verdict = set.decide();
            let out = MonitorOutput {
                monitorable: verdict.monitorable,
                witness: verdict.witness,
                decomposition: None,
            };
            Ok(render_monitor(format, &out))
        }
        Command::Decompose { space, source } => {
            let space = parse_space(&read(space)?)?;
            let a = load_set(&space, &source.set, &source.set_file)?;
            let d = decompose(&space, &a)?;
            let out = MonitorOutput {
                monitorable: true,
                witness: None,
                decomposition: Some(d),
            };
            Ok(render_monitor(format, &out))
        }
        Command::Classify {
            builtin,
            space,
            lts,
            budget,
        } => {
            let presentation: Box<dyn SpacePresentation> = match (builtin, space, lts) {
                (Some(name), _, _) => PresentationRegistry::default().build(name)?,
                (None, Some(path), _) => Box::new(finite_presentation(parse_space(&read(path)?)?)),
                (None, None, Some(path)) => Box::new(finite_presentation(induced_space(
                    &parse_lts(&read(path)?)?,
                ))),
                (None, None, None) => {
                    return Err(Error::InvalidArgument(
                        "one of --builtin, --space or --lts is required".into(),
                    ))
                }
            };
            let verdict = classify(presentation.as_ref(), *budget)?;
            Ok(render_classification(format, &verdict))
        }
        Command::Hyperconnected { space, lts } => {
            let hyperconnected = match (space, lts) {
                (Some(path), _) => is_hyperconnected(&parse_space(&read(path)?)?),
                (None, Some(path)) => is_hyperconnected_lts(&parse_lts(&read(path)?)?),
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "one of --space or --lts is required".into(),
                    ))
                }
            };
            Ok(match format {
                Format::Json => json(&HyperconnectedOutput { hyperconnected }),
                Format::Pretty => format!(
                    "hyperconnected: {}\n",
                    if hyperconnected { "yes" } else { "no" }
                ),
            })
        }
        Command::LtsTopology { lts, emit } => {
            let t = parse_lts(&read(lts)?)?;
            let space = induced_space(&t);
            if *emit == Emit::Space {
                return Ok(format_space(&space));
            }
            let family = subbasis(&t);
            let out = LtsTopologyOutput {
                states: t.n_states(),
                alphabet: t.alphabet().to_vec(),
                subbasis: family
                    .sets
                    .iter()
                    .map(|s| SubbasisEntry {
                        set: s.set.to_vec(),
                        witness: s.witness.iter().map(|&e| t.alphabet()[e].clone()).collect(),
                    })
                    .collect(),
                minopen: space.minopens().iter().map(PointSet::to_vec).collect(),
                hyperconnected: is_hyperconnected_lts(&t),
            };
            Ok(match format {
                Format::Json => json(&out),
                Format::Pretty => {
                    let mut s = String::from("subbasis:\n");
                    for entry in &out.subbasis {
                        let word = if entry.witness.is_empty() {
                            "ε".to_string()
                        } else {
                            entry.witness.join(" ")
                        };
                        let _ = writeln!(s, "  U[{word}] = {}", list(&entry.set));
                    }
                    s.push_str(&format_space(&space));
                    s
                }
            })
        }
        Command::Extend {
            states,
            alphabet,
            required,
            forbidden,
        } => {
            let parse_all = |items: &[String]| {
                items
                    .iter()
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_triple(s, alphabet, *states))
                    .collect::<Result<std::collections::BTreeSet<_>>>()
            };
            let required = parse_all(required)?;
            let forbidden = parse_all(forbidden)?;
            let t = extend_to_hyperconnected(&required, &forbidden, *states, alphabet)?;
            let fresh = fresh_state(&required, &forbidden, *states).expect("extension succeeded");
            let out = ExtendOutput {
                fresh_state: fresh,
                triples: t
                    .triples()
                    .iter()
                    .map(|&(q, e, r)| (q, alphabet[e].clone(), r))
                    .collect(),
                hyperconnected: is_hyperconnected_lts(&t),
            };
            Ok(match format {
                Format::Json => json(&out),
                Format::Pretty => format_lts(&t),
            })
        }
        Command::Genericity {
            states,
            alphabet,
            p,
            samples,
            seed,
            parallel,
        } => {
            let report = genericity_sample(*states, alphabet, *p, *samples, *seed, *parallel)?;
            Ok(match format {
                Format::Json => json(&report),
                Format::Pretty => format!(
                    "samples: {}\nhyperconnected: {}\nsigma02 branch: {}\nnote: {}\n",
                    report.samples,
                    report.hyperconnected_fraction,
                    report.sigma02_fraction,
                    report.note
                ),
            })
        }
        Command::CertifyGrid { seed, cases, input } => {
            let report = match input {
                Some(path) => match parse_symbolic(&read(path)?)? {
                    SymbolicSet::Grid(grid) => {
                        let alpha = GridAlpha(grid);
                        let failures = if certify_grid_reduction(&alpha) {
                            Vec::new()
                        } else {
                            vec![SymbolicSet::Grid(alpha.0).to_string()]
                        };
                        CertificationReport { cases: 1, failures }
                    }
                    other => {
                        return Err(Error::parse(1, other.space_name(), "expected a grid set"));
                    }
                },
                None => {
                    let mut total = CertificationReport {
                        cases: 0,
                        failures: Vec::new(),
                    };
                    for &s in seed {
                        let r = certify_grid_random(s, *cases);
                        total.cases += r.cases;
                        total.failures.extend(r.failures);
                    }
                    total
                }
            };
            Ok(render_report(format, &report))
        }
        Command::CertifyTree { depth, width } => {
            if *depth > 4 || *width > 3 {
                return Err(Error::SizeGuard {
                    n: (*depth).max(*width),
                    limit: 4,
                });
            }
            Ok(render_report(format, &certify_tree_sweep(*width, *depth)))
        }
    }
}
