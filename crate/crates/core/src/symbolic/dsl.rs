//! Text syntax for symbolic sets.
//!
//! ```text
//! cofinite pre=101 per=0
//! grid default pre= per=0
//! col 3 pre= per=10
//! scott inf node eps node 0.1 cone 2 spine 0 1
//! sum y=5 bits=10 part=0,3
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::grid::GridSet;
use super::scott::{ScottSet, Seq};
use super::sets::{CofiniteSpaceSet, SumSpaceSet};
use super::word::{bits_to_string, EventuallyPeriodicWord};
use super::SymbolicSet;
use crate::error::{Error, Result};
use crate::text::{content_lines, parse_usize};

fn key_value<'a>(line: usize, token: &'a str, key: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| Error::parse(line, token, format!("expected `{key}=`")))
}

fn parse_word<'a>(
    line: usize,
    mut tokens: impl Iterator<Item = &'a str>,
) -> Result<EventuallyPeriodicWord> {
    let pre_tok = tokens
        .next()
        .ok_or_else(|| Error::parse(line, "", "expected `pre=<bits>`"))?;
    let pre = key_value(line, pre_tok, "pre")?;
    let per_tok = tokens
        .next()
        .ok_or_else(|| Error::parse(line, "", "expected `per=<bits>`"))?;
    let per = key_value(line, per_tok, "per")?;
    if let Some(extra) = tokens.next() {
        return Err(Error::parse(line, extra, "trailing token"));
    }
    EventuallyPeriodicWord::from_bits(pre, per).map_err(|e| {
        let token = if per.is_empty() || per.chars().any(|c| c != '0' && c != '1') {
            per_tok
        } else {
            pre_tok
        };
        Error::parse(line, token, e.to_string())
    })
}

fn parse_seq(line: usize, token: &str) -> Result<Seq> {
    if token == "eps" {
        return Ok(Vec::new());
    }
    token
        .split('.')
        .map(|part| {
            parse_usize(line, part, "a natural in a sequence")
                .map_err(|_| Error::parse(line, token, "expected `eps` or dot-separated naturals"))
        })
        .collect()
}

pub fn parse_symbolic(text: &str) -> Result<SymbolicSet> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let Some(&(first_line, first)) = lines.first() else {
        return Err(Error::parse(1, "", "expected a symbolic set"));
    };
    let mut head = first.split_whitespace();
    let kind = head.next().unwrap_or("");
    match kind {
        "cofinite" => {
            if let Some(&(l, extra)) = lines.get(1) {
                return Err(Error::parse(l, extra, "cofinite sets take a single line"));
            }
            Ok(SymbolicSet::Cofinite(CofiniteSpaceSet {
                word: parse_word(first_line, head)?,
            }))
        }
        "grid" => {
            match head.next() {
                Some("default") => {}
                Some(tok) => return Err(Error::parse(first_line, tok, "expected `default`")),
                None => return Err(Error::parse(first_line, "", "expected `default`")),
            }
            let default = parse_word(first_line, head)?;
            let mut exceptional = BTreeMap::new();
            for &(l, line) in &lines[1..] {
                let mut tokens = line.split_whitespace();
                match tokens.next() {
                    Some("col") => {}
                    Some(tok) => return Err(Error::parse(l, tok, "expected `col <m>`")),
                    None => unreachable!("content lines are non-empty"),
                }
                let m_tok = tokens
                    .next()
                    .ok_or_else(|| Error::parse(l, "", "expected column index"))?;
                let m = parse_usize(l, m_tok, "a column index")?;
                let word = parse_word(l, tokens)?;
                if exceptional.insert(m, word).is_some() {
                    return Err(Error::parse(l, m_tok, "duplicate column"));
                }
            }
            Ok(SymbolicSet::Grid(GridSet {
                default,
                exceptional,
            }))
        }
        "scott" => {
            let mut set = ScottSet::default();
            let mut tokens = lines
                .iter()
                .flat_map(|&(l, line)| line.split_whitespace().map(move |t| (l, t)))
                .skip(1)
                .peekable();
            if let Some(&(_, "inf")) = tokens.peek() {
                tokens.next();
                set.infinity_member = true;
            }
            while let Some((l, tok)) = tokens.next() {
                let mut operand = |what: &str| {
                    tokens
                        .next()
                        .ok_or_else(|| Error::parse(l, tok, format!("missing {what}")))
                };
                match tok {
                    "node" => {
                        let (l, s) = operand("sequence")?;
                        set.explicit_nodes.insert(parse_seq(l, s)?);
                    }
                    "cone" => {
                        let (l, s) = operand("sequence")?;
                        set.cone_roots.insert(parse_seq(l, s)?);
                    }
                    "spine" => {
                        let (l, s) = operand("sequence")?;
                        let base = parse_seq(l, s)?;
                        let (l, k) = operand("spine digit")?;
                        set.spines
                            .insert((base, parse_usize(l, k, "a spine digit")?));
                    }
                    _ => return Err(Error::parse(l, tok, "expected `node`, `cone` or `spine`")),
                }
            }
            Ok(SymbolicSet::Scott(set))
        }
        "sum" => {
            if let Some(&(l, extra)) = lines.get(1) {
                return Err(Error::parse(l, extra, "sum sets take a single line"));
            }
            let l = first_line;
            let y_tok = head
                .next()
                .ok_or_else(|| Error::parse(l, "", "expected `y=<k>`"))?;
            let y = parse_usize(l, key_value(l, y_tok, "y")?, "a size")
                .map_err(|_| Error::parse(l, y_tok, "expected `y=<k>`"))?;
            let bits_tok = head
                .next()
                .ok_or_else(|| Error::parse(l, "", "expected `bits=<b1><b2>`"))?;
            let bits = match key_value(l, bits_tok, "bits")? {
                "00" => (false, false),
                "01" => (false, true),
                "10" => (true, false),
                "11" => (true, true),
                _ => return Err(Error::parse(l, bits_tok, "expected two bits")),
            };
            let part_tok = head
                .next()
                .ok_or_else(|| Error::parse(l, "", "expected `part=<indices>`"))?;
            let part = key_value(l, part_tok, "part")?
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| parse_usize(l, t, "a discrete index"))
                .collect::<Result<BTreeSet<_>>>()?;
            if let Some(extra) = head.next() {
                return Err(Error::parse(l, extra, "trailing token"));
            }
            SumSpaceSet::new(y, part, bits)
                .map(SymbolicSet::Sum)
                .map_err(|e| Error::parse(l, part_tok, e.to_string()))
        }
        other => Err(Error::parse(
            first_line,
            other,
            "expected `cofinite`, `grid`, `scott` or `sum`",
        )),
    }
}

impl fmt::Display for SymbolicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicSet::Cofinite(a) => write!(f, "cofinite {}", a.word),
            SymbolicSet::Grid(a) => {
                write!(f, "grid default {}", a.default)?;
                for (m, w) in &a.exceptional {
                    write!(f, "\ncol {m} {w}")?;
                }
                Ok(())
            }
            SymbolicSet::Scott(a) => write!(f, "{a}"),
            SymbolicSet::Sum(a) => {
                let (b1, b2) = a.indiscrete_bits();
                write!(
                    f,
                    "sum y={} bits={} part={}",
                    a.discrete_size(),
                    bits_to_string(&[b1, b2]),
                    a.discrete_part()
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )
            }
        }
    }
}
