//! Text encodings of graphs: graph6 (short header form only) and a plain edge list.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Largest vertex count representable with a single-byte graph6 header.
pub const GRAPH6_MAX_VERTICES: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { byte: u8, offset: usize },
    #[error("unsupported size: graph6 headers for more than {GRAPH6_MAX_VERTICES} vertices are not supported")]
    UnsupportedSize,
    #[error("graph6 string for {n} vertices needs {expected} bytes, found {found}")]
    WrongLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("nonzero padding bits in the last graph6 byte")]
    NonzeroPadding,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
}

fn graph6_body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 line. Trailing whitespace (including the newline) is ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let bytes = text.trim_end().as_bytes();
    let (&header, body) = bytes.split_first().ok_or(ParseError::Empty)?;
    if let Some((offset, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(63..=126).contains(&b))
    {
        return Err(ParseError::InvalidByte { byte, offset });
    }
    if header == 126 {
        return Err(ParseError::UnsupportedSize);
    }
    let n = (header - 63) as usize;
    let expected = graph6_body_len(n);
    if body.len() != expected {
        return Err(ParseError::WrongLength {
            n,
            expected,
            found: body.len(),
        });
    }

    let mut adj = vec![0u64; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - 63;
            if chunk >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let used = k % 6;
        let last = body[body.len() - 1] - 63;
        if last & ((1 << (6 - used)) - 1) != 0 {
            return Err(ParseError::NonzeroPadding);
        }
    }
    Ok(Graph::from_adjacency(adj).expect("graph6 decoding yields a simple graph"))
}

/// Encodes a graph with at most 62 vertices as a graph6 string (no newline).
pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let mut out = Vec::with_capacity(1 + graph6_body_len(n));
    out.push(n as u8 + 63);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

/// Parses the edge-list format: a header line `n <count>` followed by one
/// `u v` pair per line, 0-indexed. Blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or(ParseError::Empty)?;
    let n = parse_header(header_line, header)?;
    let mut edges = Vec::new();
    for (line, text) in lines {
        let mut fields = text.split_whitespace();
        let (Some(u), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(ParseError::Malformed {
                line,
                message: format!("expected `u v`, found `{text}`"),
            });
        };
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| ParseError::Malformed {
                line,
                message: format!("`{s}` is not a vertex index"),
            })
        };
        let (u, v) = (parse(u)?, parse(v)?);
        for w in [u, v] {
            if w >= n {
                return Err(ParseError::Graph {
                    line,
                    source: GraphError::VertexOutOfRange { vertex: w, n },
                });
            }
        }
        if u == v {
            return Err(ParseError::Graph {
                line,
                source: GraphError::Loop(u),
            });
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges).map_err(|source| ParseError::Graph {
        line: header_line,
        source,
    })
}

fn parse_header(line: usize, text: &str) -> Result<usize, ParseError> {
    let mut fields = text.split_whitespace();
    match (fields.next(), fields.next(), fields.next()) {
        (Some("n"), Some(count), None) => count.parse().map_err(|_| ParseError::Malformed {
            line,
            message: format!("`{count}` is not a vertex count"),
        }),
        _ => Err(ParseError::Malformed {
            line,
            message: format!("expected header `n <count>`, found `{text}`"),
        }),
    }
}

/// Writes a graph in the edge-list format.
pub fn encode_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Splits a stream of concatenated edge lists into one chunk per graph; each
/// `n <count>` header line starts a new graph. Returns the 1-based starting
/// line of each chunk with its text.
pub fn split_edge_lists(text: &str) -> Vec<(usize, String)> {
    let mut chunks: Vec<(usize, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('n') || chunks.is_empty() {
            chunks.push((i + 1, String::new()));
        }
        let chunk = &mut chunks.last_mut().expect("chunk pushed above").1;
        chunk.push_str(trimmed);
        chunk.push('\n');
    }
    chunks
}
