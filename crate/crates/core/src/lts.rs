//! Topologies induced by transition relations.
//!
//! For a string `s` of events, `U_s` is the set of states from which `s` can
//! be executed. The sets `U_F = ⋂_{s ∈ F} U_s` over finite `F` form a basis.
//! On a finite carrier the distinct `U_s` are found by a predecessor fixpoint
//! from the full state set, since `U_{e·s} = Pre_e(U_s)`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify, finite_presentation, ComplexityTag};
use crate::error::{Error, Result};
use crate::text::{content_lines, parse_usize};
use crate::topology::{FiniteSpace, PointSet};

/// A transition `(source, event index, target)`.
pub type Triple = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    n_states: usize,
    alphabet: Vec<String>,
    triples: BTreeSet<Triple>,
}

impl TransitionSystem {
    pub fn new(
        n_states: usize,
        alphabet: Vec<String>,
        triples: impl IntoIterator<Item = Triple>,
    ) -> Result<Self> {
        let distinct: BTreeSet<&String> = alphabet.iter().collect();
        if distinct.len() != alphabet.len() {
            return Err(Error::InvalidArgument(
                "alphabet has repeated events".into(),
            ));
        }
        if alphabet
            .iter()
            .any(|e| e.is_empty() || e.contains(|c: char| c.is_whitespace() || c == ','))
        {
            return Err(Error::InvalidArgument(
                "events must be non-empty words without commas".into(),
            ));
        }
        let triples: BTreeSet<Triple> = triples.into_iter().collect();
        for &(q, e, r) in &triples {
            if q >= n_states || r >= n_states {
                return Err(Error::PointOutOfRange {
                    point: q.max(r),
                    n: n_states,
                });
            }
            if e >= alphabet.len() {
                return Err(Error::InvalidArgument(format!(
                    "event index {e} out of range"
                )));
            }
        }
        Ok(TransitionSystem {
            n_states,
            alphabet,
            triples,
        })
    }

    /// Builds a system naming events by string.
    pub fn with_events<'a>(
        n_states: usize,
        alphabet: &[&str],
        triples: impl IntoIterator<Item = (usize, &'a str, usize)>,
    ) -> Result<Self> {
        let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let indexed = triples
            .into_iter()
            .map(|(q, e, r)| {
                alphabet
                    .iter()
                    .position(|a| a == e)
                    .map(|i| (q, i, r))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown event `{e}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        TransitionSystem::new(n_states, alphabet, indexed)
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn event_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    /// `Pre_e(U) = {q : ∃ q' ∈ U, (q, e, q') ∈ R}`.
    pub fn pre(&self, event: usize, target: &PointSet) -> PointSet {
        let mut out = PointSet::empty(self.n_states);
        for &(q, e, r) in &self.triples {
            if e == event && target.contains(r) {
                out.insert(q);
            }
        }
        out
    }

    /// States from which `word` (event indices) is executable.
    pub fn executable_from(&self, word: &[usize]) -> PointSet {
        word.iter()
            .rev()
            .fold(PointSet::full(self.n_states), |acc, &e| self.pre(e, &acc))
    }

    /// Event indices ordered by event name.
    fn events_lexicographic(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.alphabet.len()).collect();
        idx.sort_by(|&a, &b| self.alphabet[a].cmp(&self.alphabet[b]));
        idx
    }
}

/// One distinct `U_s` with a shortest string realising it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubbasisSet {
    pub set: PointSet,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubbasisFamily {
    pub sets: Vec<SubbasisSet>,
}

impl SubbasisFamily {
    pub fn contains(&self, set: &PointSet) -> bool {
        self.sets.iter().any(|s| &s.set == set)
    }
}

/// Breadth-first predecessor fixpoint from `U_ε = X`.
///
/// Sets appear in discovery order, which gives every witness minimal length;
/// events are tried in lexicographic order of their names.
pub fn subbasis(t: &TransitionSystem) -> SubbasisFamily {
    let events = t.events_lexicographic();
    let full = PointSet::full(t.n_states);
    let mut seen: HashMap<PointSet, usize> = HashMap::from([(full.clone(), 0)]);
    let mut sets = vec![SubbasisSet {
        set: full,
        witness: Vec::new(),
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &e in &events {
            let pre = t.pre(e, &sets[i].set);
            if seen.contains_key(&pre) {
                continue;
            }
            let mut witness = Vec::with_capacity(sets[i].witness.len() + 1);
            witness.push(e);
            witness.extend_from_slice(&sets[i].witness);
            seen.insert(pre.clone(), sets.len());
            queue.push_back(sets.len());
            sets.push(SubbasisSet { set: pre, witness });
        }
    }
    SubbasisFamily { sets }
}

/// `minopen[q]` is the intersection of all subbasis sets containing `q`.
pub fn induced_space(t: &TransitionSystem) -> FiniteSpace {
    induced_space_from(t.n_states, &subbasis(t))
}

fn induced_space_from(n: usize, family: &SubbasisFamily) -> FiniteSpace {
    let minopen = (0..n)
        .map(|q| {
            family
                .sets
                .iter()
                .filter(|s| s.set.contains(q))
                .fold(PointSet::full(n), |acc, s| &acc & &s.set)
        })
        .collect();
    FiniteSpace::from_sets(minopen).expect("intersections of a family containing X form a topology")
}

/// Every two non-empty basic opens `U_F`, `U_G` meet.
///
/// The basis is the closure of the subbasis under finite intersection;
/// pairwise meeting of subbasis members alone does not suffice.
pub fn is_hyperconnected_lts(t: &TransitionSystem) -> bool {
    let family = subbasis(t);
    let mut basis: BTreeSet<PointSet> = family.sets.into_iter().map(|s| s.set).collect();
    loop {
        let current: Vec<PointSet> = basis.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let meet = a & b;
                if meet.is_empty() {
                    if !a.is_empty() && !b.is_empty() {
                        return false;
                    }
                } else if basis.insert(meet) {
                    grew = true;
                }
            }
        }
        if !grew {
            return true;
        }
    }
}

/// Smallest state occurring in no required or forbidden triple.
pub fn fresh_state(
    required: &BTreeSet<Triple>,
    forbidden: &BTreeSet<Triple>,
    n_states: usize,
) -> Option<usize> {
    let used: BTreeSet<usize> = required
        .iter()
        .chain(forbidden)
        .flat_map(|&(q, _, r)| [q, r])
        .collect();
    (0..n_states).find(|q| !used.contains(q))
}

/// Adds self-loops on every event at a fresh state to the required triples.
///
/// The chosen state occurs in no required or forbidden triple, so every
/// string is executable from it and it lies in every basic open.
pub fn extend_to_hyperconnected(
    required: &BTreeSet<Triple>,
    forbidden: &BTreeSet<Triple>,
    n_states: usize,
    alphabet: &[String],
) -> Result<TransitionSystem> {
    if let Some(&(q, e, r)) = required.intersection(forbidden).next() {
        let name = alphabet.get(e).cloned().unwrap_or_else(|| e.to_string());
        return Err(Error::ConflictingConstraints(q, name, r));
    }
    let fresh = fresh_state(required, forbidden, n_states).ok_or(Error::NoFreshState)?;
    let loops = (0..alphabet.len()).map(|e| (fresh, e, fresh));
    TransitionSystem::new(
        n_states,
        alphabet.to_vec(),
        required.iter().copied().chain(loops),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenericityReport {
    pub p: f64,
    pub samples: usize,
    pub hyperconnected_fraction: f64,
    pub sigma02_fraction: f64,
    pub seed: u64,
    pub note: &'static str,
}

const GENERICITY_NOTE: &str = "empirical frequencies over independently drawn finite relations; \
    comeagreness is a Baire-category notion and is not a probability statement";

/// Draws relation number `index` of a sample run.
///
/// Each sample gets its own ChaCha8 stream selected by its index, so the
/// draws do not depend on evaluation order.
pub fn sample_relation(
    n: usize,
    alphabet: &[String],
    p: f64,
    seed: u64,
    index: u64,
) -> TransitionSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut triples = Vec::new();
    for q in 0..n {
        for e in 0..alphabet.len() {
            for r in 0..n {
                if rng.random::<f64>() < p {
                    triples.push((q, e, r));
                }
            }
        }
    }
    TransitionSystem::new(n, alphabet.to_vec(), triples).expect("indices in range")
}

fn sample_outcome(n: usize, alphabet: &[String], p: f64, seed: u64, index: u64) -> (bool, bool) {
    let t = sample_relation(n, alphabet, p, seed, index);
    let hyper = is_hyperconnected_lts(&t);
    let verdict = classify(&finite_presentation(induced_space(&t)), 1).expect("budget is positive");
    let sigma02 = matches!(
        verdict.tag,
        ComplexityTag::Sigma02Branch | ComplexityTag::AllSets
    );
    (hyper, sigma02)
}

pub fn genericity_sample(
    n: usize,
    alphabet: &[String],
    p: f64,
    samples: usize,
    seed: u64,
    parallel: bool,
) -> Result<GenericityReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "density {p} is outside [0, 1]"
        )));
    }
    let outcomes: Vec<(bool, bool)> = if parallel {
        (0..samples as u64)
            .into_par_iter()
            .map(|i| sample_outcome(n, alphabet, p, seed, i))
            .collect()
    } else {
        (0..samples as u64)
            .map(|i| sample_outcome(n, alphabet, p, seed, i))
            .collect()
    };
    let hyper = outcomes.iter().filter(|o| o.0).count();
    let sigma = outcomes.iter().filter(|o| o.1).count();
    Ok(GenericityReport {
        p,
        samples,
        hyperconnected_fraction: hyper as f64 / samples as f64,
        sigma02_fraction: sigma as f64 / samples as f64,
        seed,
        note: GENERICITY_NOTE,
    })
}

/// Parses `lts <n> <a,b,...>` followed by `<q> <event> <q'>` lines.
pub fn parse_lts(text: &str) -> Result<TransitionSystem> {
    let mut lines = content_lines(text);
    let (hl, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "", "expected `lts <n> <alphabet>`"))?;
    let mut tokens = header.split_whitespace();
    match tokens.next() {
        Some("lts") => {}
        Some(tok) => return Err(Error::parse(hl, tok, "expected `lts`")),
        None => return Err(Error::parse(hl, "", "expected `lts`")),
    }
    let n_tok = tokens
        .next()
        .ok_or_else(|| Error::parse(hl, "", "missing state count"))?;
    let n = parse_usize(hl, n_tok, "a state count")?;
    let alpha_tok = tokens
        .next()
        .ok_or_else(|| Error::parse(hl, "", "missing alphabet"))?;
    let alphabet: Vec<String> = alpha_tok.split(',').map(str::to_string).collect();
    if alphabet.iter().any(String::is_empty)
        || alphabet.iter().collect::<BTreeSet<_>>().len() != alphabet.len()
    {
        return Err(Error::parse(
            hl,
            alpha_tok,
            "alphabet must list distinct non-empty events",
        ));
    }
    if let Some(extra) = tokens.next() {
        return Err(Error::parse(hl, extra, "trailing token"));
    }
    let mut triples = BTreeSet::new();
    for (l, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::parse(l, line, "expected `<q> <event> <q'>`"));
        }
        let state = |tok: &str| -> Result<usize> {
            let q = parse_usize(l, tok, "a state")?;
            if q >= n {
                return Err(Error::parse(l, tok, format!("state out of range 0..{n}")));
            }
            Ok(q)
        };
        let q = state(parts[0])?;
        let e = alphabet
            .iter()
            .position(|a| a == parts[1])
            .ok_or_else(|| Error::parse(l, parts[1], "event not in alphabet"))?;
        let r = state(parts[2])?;
        if !triples.insert((q, e, r)) {
            return Err(Error::parse(l, line, "duplicate transition"));
        }
    }
    TransitionSystem::new(n, alphabet, triples)
}

pub fn format_lts(t: &TransitionSystem) -> String {
    let mut out = format!("lts {} {}\n", t.n_states, t.alphabet.join(","));
    for &(q, e, r) in &t.triples {
        out.push_str(&format!("{q} {} {r}\n", t.alphabet[e]));
    }
    out
}
