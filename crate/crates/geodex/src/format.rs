//! Plain-text digraph files (`.gdx`).
//!
//! The format is line-oriented and bit-exact:
//!
//! ```text
//! # optional comment lines start with '#'
//! 3
//! 1 2
//! 0 2
//! 0 1
//! ```
//!
//! The first significant line holds the order `n`; the next `n`
//! significant lines hold the out-neighbours of vertices `0..n` in
//! ascending order, space-separated. An empty line is a vertex with no
//! out-arcs. Lines are LF-terminated. `parse` rejects loops, duplicate
//! neighbours, out-of-range ids and wrong line counts with
//! line/column-addressed diagnostics; `render` produces the canonical
//! encoding, so `parse(render(g)) == g`.

use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingOrder,
    InvalidInteger { token: String },
    InvalidOrder { order: usize },
    VertexOutOfRange { id: usize, n: usize },
    SelfLoop { vertex: usize },
    DuplicateNeighbor { from: usize, to: usize },
    WrongLineCount { expected: usize, found: usize },
}

/// Parse failure at `line`/`col` (both 1-based; `col` is a byte offset).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {}", self.message())]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn message(&self) -> String {
        match &self.kind {
            ParseErrorKind::MissingOrder => "missing order line".into(),
            ParseErrorKind::InvalidInteger { token } => {
                format!("expected an integer, found {token:?}")
            }
            ParseErrorKind::InvalidOrder { order } => {
                format!("order must be at least 1, found {order}")
            }
            ParseErrorKind::VertexOutOfRange { id, n } => {
                format!("vertex id {id} out of range for order {n}")
            }
            ParseErrorKind::SelfLoop { vertex } => format!("self-loop at vertex {vertex}"),
            ParseErrorKind::DuplicateNeighbor { from, to } => {
                format!("duplicate neighbour {to} of vertex {from}")
            }
            ParseErrorKind::WrongLineCount { expected, found } => {
                format!("expected {expected} neighbour lines, found {found}")
            }
        }
    }
}

/// Significant (non-comment) lines with their 1-based file line numbers.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#'))
}

fn parse_token(line_no: usize, start: usize, token: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError {
        line: line_no,
        col: start + 1,
        kind: ParseErrorKind::InvalidInteger { token: token.to_string() },
    })
}

/// Tokens of a line together with their byte offsets.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let start = tok.as_ptr() as usize - line.as_ptr() as usize;
        (start, tok)
    })
}

pub fn parse(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = significant_lines(text);

    let (order_line_no, order_line) = lines.next().ok_or(ParseError {
        line: 1,
        col: 1,
        kind: ParseErrorKind::MissingOrder,
    })?;
    let mut order_tokens = tokens(order_line);
    let (start, token) = order_tokens.next().ok_or(ParseError {
        line: order_line_no,
        col: 1,
        kind: ParseErrorKind::MissingOrder,
    })?;
    let n = parse_token(order_line_no, start, token)?;
    if let Some((extra_start, extra)) = order_tokens.next() {
        return Err(ParseError {
            line: order_line_no,
            col: extra_start + 1,
            kind: ParseErrorKind::InvalidInteger { token: extra.to_string() },
        });
    }
    if n == 0 {
        return Err(ParseError {
            line: order_line_no,
            col: start + 1,
            kind: ParseErrorKind::InvalidOrder { order: n },
        });
    }

    let mut lists: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut last_line_no = order_line_no;
    for (line_no, line) in lines {
        if lists.len() == n {
            return Err(ParseError {
                line: line_no,
                col: 1,
                kind: ParseErrorKind::WrongLineCount { expected: n, found: n + 1 },
            });
        }
        let u = lists.len();
        let mut nbrs = Vec::new();
        for (start, token) in tokens(line) {
            let v = parse_token(line_no, start, token)?;
            let err = |kind| ParseError { line: line_no, col: start + 1, kind };
            if v >= n {
                return Err(err(ParseErrorKind::VertexOutOfRange { id: v, n }));
            }
            if v == u {
                return Err(err(ParseErrorKind::SelfLoop { vertex: u }));
            }
            if nbrs.contains(&v) {
                return Err(err(ParseErrorKind::DuplicateNeighbor { from: u, to: v }));
            }
            nbrs.push(v);
        }
        lists.push(nbrs);
        last_line_no = line_no;
    }
    if lists.len() != n {
        return Err(ParseError {
            line: last_line_no + 1,
            col: 1,
            kind: ParseErrorKind::WrongLineCount { expected: n, found: lists.len() },
        });
    }
    Ok(Digraph::from_out_lists(lists).expect("all invariants checked during parsing"))
}

/// Canonical rendering: order line, then one ascending neighbour line per
/// vertex, LF-terminated.
pub fn render(g: &Digraph) -> String {
    let mut text = format!("{}\n", g.n());
    for u in 0..g.n() {
        let nbrs: Vec<String> = g.out_neighbors(u).iter().map(usize::to_string).collect();
        text.push_str(&nbrs.join(" "));
        text.push('\n');
    }
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_complete_digraph() {
        let g = parse("3\n1 2\n0 2\n0 1\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.arc_count(), 6);
        assert!(g.has_arc(0, 1) && g.has_arc(2, 0));
    }

    #[test]
    fn parses_cycle_and_sinks() {
        let g = parse("3\n1\n2\n0\n").unwrap();
        assert_eq!(g.out_neighbors(0), &[1]);
        let g = parse("2\n1\n\n").unwrap();
        assert_eq!(g.out_neighbors(1), &[] as &[usize]);
    }

    #[test]
    fn comments_are_skipped() {
        let g = parse("# a triangle\n3\n# row of vertex 0\n1\n2\n0\n").unwrap();
        assert_eq!(g.arc_count(), 3);
    }

    #[test]
    fn loop_is_rejected_with_position() {
        let err = parse("2\n0\n1\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 1));
        assert_eq!(err.kind, ParseErrorKind::SelfLoop { vertex: 0 });
    }

    #[test]
    fn bad_token_is_rejected_with_position() {
        let err = parse("3\n1 x\n2\n0\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 3));
        assert_eq!(err.kind, ParseErrorKind::InvalidInteger { token: "x".into() });
    }

    #[test]
    fn out_of_range_and_duplicates_rejected() {
        let err = parse("2\n5\n\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::VertexOutOfRange { id: 5, n: 2 });
        let err = parse("3\n1 1\n\n\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateNeighbor { from: 0, to: 1 });
    }

    #[test]
    fn wrong_line_counts_rejected() {
        let err = parse("3\n1\n2\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::WrongLineCount { expected: 3, found: 2 });
        let err = parse("2\n1\n0\n1\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::WrongLineCount { expected: 2, found: 3 });
        let err = parse("0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::InvalidOrder { order: 0 });
        let err = parse("# only comments\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingOrder);
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(
            n in 1usize..9,
            raw in proptest::collection::vec((0usize..9, 0usize..9), 0..30),
        ) {
            let arcs: Vec<(usize, usize)> = {
                let mut seen = std::collections::BTreeSet::new();
                raw.into_iter()
                    .map(|(u, v)| (u % n, v % n))
                    .filter(|&(u, v)| u != v && seen.insert((u, v)))
                    .collect()
            };
            let g = Digraph::from_arcs(n, arcs).unwrap();
            prop_assert_eq!(parse(&render(&g)).unwrap(), g);
        }
    }
}
