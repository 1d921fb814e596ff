//! Line-oriented text format for finite spaces and point sets.
//!
//! ```text
//! # Sierpinski space
//! space 2
//! minopen 0: 0
//! minopen 1: 0 1
//! ```
//!
//! Sets are written `set: <points>`; the `set:` prefix is optional on input.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::topology::{validate_minopen, FiniteSpace, PointSet};

/// Content lines with their 1-based line numbers; comments and blanks dropped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, token, format!("expected {what}")))
}

pub fn parse_space(text: &str) -> Result<FiniteSpace> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "", "expected `space <n>`"))?;
    let mut tokens = header.split_whitespace();
    match tokens.next() {
        Some("space") => {}
        Some(tok) => return Err(Error::parse(hline, tok, "expected `space <n>`")),
        None => return Err(Error::parse(hline, "", "expected `space <n>`")),
    }
    let n_tok = tokens
        .next()
        .ok_or_else(|| Error::parse(hline, "", "missing point count"))?;
    let n = parse_usize(hline, n_tok, "a point count")?;
    if let Some(extra) = tokens.next() {
        return Err(Error::parse(
            hline,
            extra,
            "trailing token after point count",
        ));
    }

    let mut minopen: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut last_line = hline;
    for (lno, line) in lines {
        last_line = lno;
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(lno, line, "expected `minopen <x>: <points>`"))?;
        let mut head_tokens = head.split_whitespace();
        match head_tokens.next() {
            Some("minopen") => {}
            Some(tok) => return Err(Error::parse(lno, tok, "expected `minopen`")),
            None => return Err(Error::parse(lno, ":", "expected `minopen <x>:`")),
        }
        let x_tok = head_tokens
            .next()
            .ok_or_else(|| Error::parse(lno, ":", "missing point index"))?;
        let x = parse_usize(lno, x_tok, "a point index")?;
        if x >= n {
            return Err(Error::parse(
                lno,
                x_tok,
                format!("point index out of range 0..{n}"),
            ));
        }
        if let Some(extra) = head_tokens.next() {
            return Err(Error::parse(lno, extra, "unexpected token before `:`"));
        }
        if minopen[x].is_some() {
            return Err(Error::parse(lno, x_tok, "duplicate minopen line"));
        }
        let points = rest
            .split_whitespace()
            .map(|t| {
                let p = parse_usize(lno, t, "a point index")?;
                if p >= n {
                    Err(Error::parse(
                        lno,
                        t,
                        format!("point index out of range 0..{n}"),
                    ))
                } else {
                    Ok(p)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        minopen[x] = Some(points);
    }
    let lists = minopen
        .into_iter()
        .enumerate()
        .map(|(x, l)| {
            l.ok_or_else(|| Error::parse(last_line, format!("minopen {x}"), "missing line"))
        })
        .collect::<Result<Vec<_>>>()?;
    validate_minopen(n, &lists).map_err(Error::InvalidSpace)?;
    FiniteSpace::from_lists(&lists)
}

pub fn format_space(space: &FiniteSpace) -> String {
    let mut out = format!("space {}\n", space.len());
    for x in 0..space.len() {
        let _ = writeln!(out, "minopen {x}: {}", space.minopen(x));
    }
    out
}

/// Parses `set: 0 2` or a bare `0 2`; commas are accepted as separators.
pub fn parse_set(text: &str, n: usize) -> Result<PointSet> {
    let mut found: Option<PointSet> = None;
    for (lno, line) in content_lines(text) {
        if found.is_some() {
            return Err(Error::parse(lno, line, "more than one set given"));
        }
        let body = match line.split_once(':') {
            Some((head, rest)) if head.trim() == "set" => rest,
            Some((head, _)) => return Err(Error::parse(lno, head.trim(), "expected `set:`")),
            None => line,
        };
        let mut set = PointSet::empty(n);
        for tok in body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let p = parse_usize(lno, tok, "a point index")?;
            if p >= n {
                return Err(Error::parse(
                    lno,
                    tok,
                    format!("point index out of range 0..{n}"),
                ));
            }
            set.insert(p);
        }
        found = Some(set);
    }
    Ok(found.unwrap_or_else(|| PointSet::empty(n)))
}

pub fn format_set(set: &PointSet) -> String {
    format!("set: {set}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let text = "# sierpinski\n\nspace 2\nminopen 1: 0 1  # closure point\nminopen 0: 0\n";
        assert_eq!(parse_space(text).unwrap(), FiniteSpace::sierpinski());
    }

    #[test]
    fn incoherent_space_reports_pair() {
        let text = "space 3\nminopen 0: 0 1\nminopen 1: 1 2\nminopen 2: 2\n";
        match parse_space(text) {
            Err(Error::InvalidSpace(v)) => assert_eq!((v.x, v.y), (0, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_name_line_and_token() {
        match parse_space("space 2\nminopen 0: 0\nminopen 1: 0 x\n") {
            Err(Error::Parse { line, token, .. }) => assert_eq!((line, token.as_str()), (3, "x")),
            other => panic!("unexpected {other:?}"),
        }
        match parse_space("space 2\nminopen 0: 0\n") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "minopen 1"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_space("spaces 2"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn sets() {
        assert_eq!(parse_set("set: 0 2", 3).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(parse_set("1", 2).unwrap().to_vec(), vec![1]);
        assert!(parse_set("set:", 2).unwrap().is_empty());
        assert!(parse_set("", 2).unwrap().is_empty());
        assert!(matches!(parse_set("set: 3", 3), Err(Error::Parse { .. })));
    }

    proptest! {
        #[test]
        fn space_text_round_trips(idx in 0usize..355, mask in 0u64..16) {
            let space = crate::topology::all_spaces(4)[idx].clone();
            prop_assert_eq!(parse_space(&format_space(&space)).unwrap(), space);
            let a = PointSet::from_mask(4, mask);
            prop_assert_eq!(parse_set(&format_set(&a), 4).unwrap(), a);
        }
    }
}
