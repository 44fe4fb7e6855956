//! Problem instances and their two text formats: `.tsd` instance files and
//! `.wit` witness move lists.
//!
//! A `.tsd` file starts with a header `p tsd <n> <m>`, followed in any order
//! by `m` arc lines `a <u> <v>`, one source line `s <k> <v1> ... <vk>` and
//! one target line `t <k> <v1> ... <vk>`. A `#` starts a comment running to
//! the end of the line. Serialization is canonical: header, arcs in
//! lexicographic order, source, target.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{GraphError, OrientedGraph, Vertex};

/// Token set on a graph, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    tokens: Vec<Vertex>,
}

impl Configuration {
    /// Accepts tokens in any order; duplicates are rejected.
    pub fn new(mut tokens: Vec<Vertex>) -> Result<Self, InstanceError> {
        tokens.sort_unstable();
        for w in tokens.windows(2) {
            if w[0] == w[1] {
                return Err(InstanceError::DuplicateToken { vertex: w[0] });
            }
        }
        Ok(Configuration { tokens })
    }

    pub fn tokens(&self) -> &[Vertex] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.tokens.binary_search(&v).is_ok()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// One token slide along the arc `(from, to)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Vertex,
    pub to: Vertex,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.from, self.to)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReconfSequence {
    pub moves: Vec<Move>,
}

impl ReconfSequence {
    pub fn new(moves: Vec<Move>) -> Self {
        ReconfSequence { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("duplicate token on vertex {vertex}")]
    DuplicateToken { vertex: Vertex },
    #[error("source tokens are not pairwise non-adjacent")]
    SourceNotIndependent,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A reconfiguration question: slide the tokens of `source` into `target`.
///
/// The source must be independent. The target may be any token set; a target
/// that is not independent is unreachable and every solver answers no. Equal
/// sizes are not required either; solvers answer no when sizes differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: OrientedGraph,
    source: Configuration,
    target: Configuration,
}

impl Instance {
    pub fn new(
        graph: OrientedGraph,
        source: Configuration,
        target: Configuration,
    ) -> Result<Self, InstanceError> {
        for &v in source.tokens().iter().chain(target.tokens()) {
            if v == 0 || v > graph.vertex_count() {
                return Err(InstanceError::Graph(GraphError::VertexOutOfRange {
                    vertex: v,
                    vertex_count: graph.vertex_count(),
                }));
            }
        }
        if !graph.is_independent(source.tokens()) {
            return Err(InstanceError::SourceNotIndependent);
        }
        Ok(Instance { graph, source, target })
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn source(&self) -> &Configuration {
        &self.source
    }

    pub fn target(&self) -> &Configuration {
        &self.target
    }
}

// ---------------------------------------------------------------------------
// .tsd parsing

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("header declares {expected} arcs, file has {found}")]
    ArcCountMismatch { expected: u32, found: u32 },
    #[error("source token set is not independent")]
    TokenSetNotIndependent,
    #[error("duplicate token {vertex}")]
    DuplicateToken { vertex: Vertex },
    #[error("missing section '{0}'")]
    MissingSection(char),
    #[error(transparent)]
    Graph(GraphError),
}

fn err<T>(line: u32, col: u32, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, col, kind })
}

/// Splits a line into whitespace-separated words with 1-based char columns.
pub(crate) fn split_words(line: &str) -> Vec<(u32, &str)> {
    let mut out = Vec::new();
    let mut col = 0u32;
    let mut start: Option<(u32, usize)> = None;
    for (idx, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some((c, s)) = start.take() {
                out.push((c, &line[s..idx]));
            }
        } else if start.is_none() {
            start = Some((col, idx));
        }
    }
    if let Some((c, s)) = start {
        out.push((c, &line[s..]));
    }
    out
}

fn parse_u32(line: u32, col: u32, word: &str, what: &str) -> Result<u32, ParseError> {
    word.parse::<u32>().map_err(|_| ParseError {
        line,
        col,
        kind: ParseErrorKind::Syntax(format!("expected {what}, found '{word}'")),
    })
}

struct TokenLine {
    line: u32,
    col: u32,
    tokens: Vec<Vertex>,
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(u32, u32, u32)> = None; // line, n, m
    let mut arcs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut arc_seen: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut source: Option<TokenLine> = None;
    let mut target: Option<TokenLine> = None;
    let mut last_line = 0u32;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx as u32 + 1;
        last_line = line;
        let content = &raw[..raw.find('#').unwrap_or(raw.len())];
        let w = split_words(content);
        if w.is_empty() {
            continue;
        }
        let (c0, head) = w[0];
        if header.is_none() && head != "p" {
            return err(line, c0, ParseErrorKind::MissingSection('p'));
        }
        match head {
            "p" => {
                if header.is_some() {
                    return err(line, c0, ParseErrorKind::Syntax("second 'p' header".into()));
                }
                if w.len() != 4 || w[1].1 != "tsd" {
                    return err(
                        line,
                        c0,
                        ParseErrorKind::Syntax("expected 'p tsd <n> <m>'".into()),
                    );
                }
                let n = parse_u32(line, w[2].0, w[2].1, "vertex count")?;
                let m = parse_u32(line, w[3].0, w[3].1, "arc count")?;
                if n == 0 {
                    return err(line, w[2].0, ParseErrorKind::Graph(GraphError::NoVertices));
                }
                header = Some((line, n, m));
            }
            "a" => {
                let (_, n, _) = header.unwrap();
                if w.len() != 3 {
                    return err(line, c0, ParseErrorKind::Syntax("expected 'a <u> <v>'".into()));
                }
                let u = parse_u32(line, w[1].0, w[1].1, "vertex")?;
                let v = parse_u32(line, w[2].0, w[2].1, "vertex")?;
                for (col, x) in [(w[1].0, u), (w[2].0, v)] {
                    if x == 0 || x > n {
                        return err(
                            line,
                            col,
                            ParseErrorKind::Graph(GraphError::VertexOutOfRange {
                                vertex: x,
                                vertex_count: n,
                            }),
                        );
                    }
                }
                if u == v {
                    return err(line, c0, ParseErrorKind::Graph(GraphError::SelfLoop { vertex: u }));
                }
                if arc_seen.contains(&(u, v)) {
                    return err(line, c0, ParseErrorKind::Graph(GraphError::DuplicateArc { u, v }));
                }
                if arc_seen.contains(&(v, u)) {
                    return err(
                        line,
                        c0,
                        ParseErrorKind::Graph(GraphError::AntiParallelPair { u, v }),
                    );
                }
                arc_seen.insert((u, v));
                arcs.push((u, v));
            }
            "s" | "t" => {
                let (_, n, _) = header.unwrap();
                let slot = if head == "s" { &mut source } else { &mut target };
                if slot.is_some() {
                    return err(
                        line,
                        c0,
                        ParseErrorKind::Syntax(format!("second '{head}' section")),
                    );
                }
                if w.len() < 2 {
                    return err(
                        line,
                        c0,
                        ParseErrorKind::Syntax(format!("expected '{head} <k> <v1> ... <vk>'")),
                    );
                }
                let k = parse_u32(line, w[1].0, w[1].1, "token count")?;
                if w.len() as u32 != 2 + k {
                    return err(
                        line,
                        c0,
                        ParseErrorKind::Syntax(format!(
                            "'{head}' declares {k} tokens, line has {}",
                            w.len() - 2
                        )),
                    );
                }
                let mut tokens = Vec::with_capacity(k as usize);
                for &(col, word) in &w[2..] {
                    let v = parse_u32(line, col, word, "vertex")?;
                    if v == 0 || v > n {
                        return err(
                            line,
                            col,
                            ParseErrorKind::Graph(GraphError::VertexOutOfRange {
                                vertex: v,
                                vertex_count: n,
                            }),
                        );
                    }
                    if tokens.contains(&v) {
                        return err(line, col, ParseErrorKind::DuplicateToken { vertex: v });
                    }
                    tokens.push(v);
                }
                *slot = Some(TokenLine { line, col: c0, tokens });
            }
            other => {
                return err(
                    line,
                    c0,
                    ParseErrorKind::Syntax(format!("unknown line type '{other}'")),
                );
            }
        }
    }

    let eof = last_line.max(1);
    let Some((p_line, n, m)) = header else {
        return err(eof, 1, ParseErrorKind::MissingSection('p'));
    };
    if arcs.len() as u32 != m {
        return err(
            p_line,
            1,
            ParseErrorKind::ArcCountMismatch { expected: m, found: arcs.len() as u32 },
        );
    }
    let Some(s) = source else {
        return err(eof, 1, ParseErrorKind::MissingSection('s'));
    };
    let Some(t) = target else {
        return err(eof, 1, ParseErrorKind::MissingSection('t'));
    };

    let graph = OrientedGraph::new(n, &arcs).expect("arc lines were validated");
    if !graph.is_independent(&s.tokens) {
        return err(s.line, s.col, ParseErrorKind::TokenSetNotIndependent);
    }
    let source = Configuration::new(s.tokens).expect("duplicates were rejected");
    let target = Configuration::new(t.tokens).expect("duplicates were rejected");
    Ok(Instance::new(graph, source, target).expect("components were validated"))
}

/// Canonical text form; `parse_instance` of the result is the identity.
pub fn serialize_instance(i: &Instance) -> String {
    let g = i.graph();
    let mut out = format!("p tsd {} {}\n", g.vertex_count(), g.arc_count());
    for &(u, v) in g.arcs() {
        out.push_str(&format!("a {u} {v}\n"));
    }
    for (tag, cfg) in [("s", i.source()), ("t", i.target())] {
        out.push_str(&format!("{tag} {}", cfg.len()));
        for v in cfg.tokens() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Witness format

/// `None` encodes a negative answer.
pub fn serialize_witness(witness: Option<&ReconfSequence>) -> String {
    match witness {
        None => "no\n".to_string(),
        Some(seq) => {
            let mut out = format!("yes {}\n", seq.len());
            for m in &seq.moves {
                out.push_str(&format!("{} {}\n", m.from, m.to));
            }
            out
        }
    }
}

pub fn parse_witness(text: &str) -> Result<Option<ReconfSequence>, ParseError> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx as u32 + 1;
        let content = &raw[..raw.find('#').unwrap_or(raw.len())];
        let w = split_words(content);
        if !w.is_empty() {
            lines.push((line, w));
        }
    }
    let Some((first_line, first)) = lines.first() else {
        return err(1, 1, ParseErrorKind::Syntax("empty witness".into()));
    };
    match first[0].1 {
        "no" => {
            if first.len() != 1 || lines.len() != 1 {
                return err(*first_line, first[0].0, ParseErrorKind::Syntax(
                    "'no' witness admits nothing else".into(),
                ));
            }
            Ok(None)
        }
        "yes" => {
            if first.len() != 2 {
                return err(*first_line, first[0].0, ParseErrorKind::Syntax(
                    "expected 'yes <length>'".into(),
                ));
            }
            let declared = parse_u32(*first_line, first[1].0, first[1].1, "move count")?;
            let body = &lines[1..];
            if body.len() as u32 != declared {
                return err(
                    *first_line,
                    first[0].0,
                    ParseErrorKind::Syntax(format!(
                        "witness declares {declared} moves, file has {}",
                        body.len()
                    )),
                );
            }
            let mut moves = Vec::with_capacity(body.len());
            for (line, w) in body {
                if w.len() != 2 {
                    return err(*line, w[0].0, ParseErrorKind::Syntax(
                        "expected '<from> <to>'".into(),
                    ));
                }
                let from = parse_u32(*line, w[0].0, w[0].1, "vertex")?;
                let to = parse_u32(*line, w[1].0, w[1].1, "vertex")?;
                moves.push(Move { from, to });
            }
            Ok(Some(ReconfSequence::new(moves)))
        }
        other => err(
            *first_line,
            first[0].0,
            ParseErrorKind::Syntax(format!("expected 'yes' or 'no', found '{other}'")),
        ),
    }
}
