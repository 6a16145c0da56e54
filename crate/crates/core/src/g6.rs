//! graph6 encoding and decoding, plus DOT export.
//!
//! The format packs the upper triangle of the adjacency matrix in column
//! order (bit (i,j) for j = 1..v, i = 0..j-1) into 6-bit chunks, each
//! printed as the byte `chunk + 63`. Vertex counts up to 62 use a single
//! size byte; larger graphs use the `~` + 3 byte form.

use crate::graph::{Graph, GraphError};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum G6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid size byte {byte:#04x} at offset {offset}")]
    BadSizeByte { byte: u8, offset: usize },
    #[error("truncated size field at offset {offset}")]
    TruncatedSize { offset: usize },
    #[error("invalid data byte {byte:#04x} at offset {offset}")]
    BadDataByte { byte: u8, offset: usize },
    #[error("expected {expected} data bytes, found {found} (offset {offset})")]
    WrongLength {
        expected: usize,
        found: usize,
        offset: usize,
    },
    #[error("graph rejected: {0}")]
    Graph(#[from] GraphError),
}

/// Encodes a graph as a graph6 line (no trailing newline).
pub fn encode(g: &Graph) -> String {
    let v = g.vertex_count();
    let mut out = Vec::new();
    if v <= 62 {
        out.push(63 + v as u8);
    } else {
        // 63 <= v <= 258047: '~' then three 6-bit groups, high first.
        out.push(126);
        out.push(63 + ((v >> 12) & 63) as u8);
        out.push(63 + ((v >> 6) & 63) as u8);
        out.push(63 + (v & 63) as u8);
    }
    let mut chunk = 0u8;
    let mut filled = 0u8;
    for j in 1..v {
        for i in 0..j {
            chunk <<= 1;
            if g.has_edge(i, j) {
                chunk |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(63 + chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        chunk <<= 6 - filled;
        out.push(63 + chunk);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. Trailing whitespace is tolerated; byte offsets
/// in errors refer to the input string.
pub fn decode(s: &str) -> Result<Graph, G6Error> {
    let bytes = s.trim_end().as_bytes();
    if bytes.is_empty() {
        return Err(G6Error::Empty);
    }
    let (v, mut pos) = decode_size(bytes)?;
    let g = Graph::empty(v.max(1))?;
    if v == 0 {
        return Err(G6Error::Graph(GraphError::NoVertices));
    }
    let nbits = v * (v - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let found = bytes.len() - pos;
    if found != nbytes {
        return Err(G6Error::WrongLength {
            expected: nbytes,
            found,
            offset: pos,
        });
    }
    let mut g = g;
    let mut bit_index = 0usize;
    let mut pairs = Vec::with_capacity(nbits);
    for j in 1..v {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while pos < bytes.len() {
        let byte = bytes[pos];
        if !(63..=126).contains(&byte) {
            return Err(G6Error::BadDataByte { byte, offset: pos });
        }
        let chunk = byte - 63;
        for shift in (0..6).rev() {
            if bit_index >= nbits {
                break;
            }
            if (chunk >> shift) & 1 == 1 {
                let (i, j) = pairs[bit_index];
                g.set_edge(i, j);
            }
            bit_index += 1;
        }
        pos += 1;
    }
    Ok(g)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), G6Error> {
    let b0 = bytes[0];
    if b0 == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // '~~' + six bytes would allow v up to 2^36 - 1; far beyond the
            // vertex cap, so refuse rather than silently truncate.
            return Err(G6Error::BadSizeByte { byte: b0, offset: 1 });
        }
        if bytes.len() < 4 {
            return Err(G6Error::TruncatedSize { offset: bytes.len() });
        }
        let mut v = 0usize;
        for (k, &b) in bytes[1..4].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(G6Error::BadSizeByte { byte: b, offset: 1 + k });
            }
            v = (v << 6) | (b - 63) as usize;
        }
        Ok((v, 4))
    } else if (63..126).contains(&b0) {
        Ok(((b0 - 63) as usize, 1))
    } else {
        Err(G6Error::BadSizeByte { byte: b0, offset: 0 })
    }
}

/// DOT representation for visualisation.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for u in 0..g.vertex_count() {
        out.push_str(&format!("  {u};\n"));
    }
    for (u, w) in g.edges() {
        out.push_str(&format!("  {u} -- {w};\n"));
    }
    out.push_str("}\n");
    out
}
