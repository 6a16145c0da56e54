//! Reference adjacency matrices for the 16-vertex graphs, stored as
//! transcribed text with their original column orderings and a checksum.
//!
//! Each fixture column is headed by a 2×2 coordinate pattern `ab/cd`,
//! standing for the vertex with matrix view `(x₁ x₃ / x₂ x₄) = (a b / c d)`.
//! One source ordering prints the same pattern over two columns; the file
//! keeps the printed text in a `printed-label` line and resolves the
//! ambiguous column by position, which the structural checks then confirm.

use anyhow::{bail, ensure, Context, Result};
use neumaier_core::Graph;

pub const FIXTURE_NAMES: [&str; 4] = ["A2", "A21", "B2", "B22"];

const A2: &str = include_str!("../fixtures/a2.txt");
const A21: &str = include_str!("../fixtures/a21.txt");
const B2: &str = include_str!("../fixtures/b2.txt");
const B22: &str = include_str!("../fixtures/b22.txt");

/// A transcribed adjacency matrix plus its header labels.
pub struct Fixture {
    pub name: String,
    /// Column label strings, duplicate positions already resolved.
    pub labels: Vec<String>,
    /// Positions whose printed label differed from the resolved one.
    pub printed_overrides: Vec<(usize, String)>,
    /// The graph in fixture ordering: vertex p is the column-p vertex.
    pub graph: Graph,
    /// `ordering[p]` = construction vertex index of column `p`.
    pub ordering: Vec<usize>,
}

fn fnv1a(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Vertex index of an `ab/cd` label: coordinates pack little-endian as
/// `x₁ + 2x₂ + 4x₃ + 8x₄`.
fn label_index(label: &str) -> Result<usize> {
    let (top, bottom) = label
        .split_once('/')
        .with_context(|| format!("label {label:?} is not of the form ab/cd"))?;
    ensure!(
        top.len() == 2 && bottom.len() == 2,
        "label {label:?} must have two bits per row"
    );
    let bit = |s: &str, i: usize| -> Result<usize> {
        match s.as_bytes()[i] {
            b'0' => Ok(0),
            b'1' => Ok(1),
            other => bail!("label {label:?} has non-binary byte {other:#04x}"),
        }
    };
    Ok(bit(top, 0)? + 2 * bit(bottom, 0)? + 4 * bit(top, 1)? + 8 * bit(bottom, 1)?)
}

pub fn load_fixture(name: &str) -> Result<Fixture> {
    let text = match name {
        "A2" => A2,
        "A21" => A21,
        "B2" => B2,
        "B22" => B22,
        other => bail!("unknown fixture {other:?} (expected one of {FIXTURE_NAMES:?})"),
    };
    parse_fixture(text)
}

fn parse_fixture(text: &str) -> Result<Fixture> {
    let mut name = None;
    let mut labels: Vec<String> = Vec::new();
    let mut printed_overrides = Vec::new();
    let mut checksum = None;
    let mut rows: Vec<String> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name ") {
            name = Some(rest.to_string());
        } else if let Some(rest) = line.strip_prefix("labels ") {
            labels = rest.split_whitespace().map(str::to_string).collect();
        } else if let Some(rest) = line.strip_prefix("printed-label ") {
            let (pos, lab) = rest
                .split_once(' ')
                .context("printed-label needs a position and a label")?;
            printed_overrides.push((pos.parse::<usize>()? - 1, lab.to_string()));
        } else if let Some(rest) = line.strip_prefix("checksum ") {
            checksum = Some(u64::from_str_radix(rest, 16)?);
        } else {
            rows.push(line.to_string());
        }
    }
    let name = name.context("fixture lacks a name line")?;
    let expected = checksum.context("fixture lacks a checksum line")?;
    let actual = fnv1a(rows.concat().as_bytes());
    ensure!(
        actual == expected,
        "fixture {name}: checksum mismatch ({actual:016x} != {expected:016x})"
    );
    let v = rows.len();
    ensure!(v == 16, "fixture {name}: expected 16 rows, found {v}");
    ensure!(labels.len() == v, "fixture {name}: expected {v} labels");
    let mut matrix = vec![vec![false; v]; v];
    for (i, row) in rows.iter().enumerate() {
        ensure!(row.len() == v, "fixture {name}: row {i} has wrong length");
        for (j, ch) in row.bytes().enumerate() {
            matrix[i][j] = match ch {
                b'0' => false,
                b'1' => true,
                other => bail!("fixture {name}: bad byte {other:#04x} in row {i}"),
            };
        }
    }
    for (i, row) in matrix.iter().enumerate() {
        ensure!(!row[i], "fixture {name}: nonzero diagonal at {i}");
        for (j, &bit) in row.iter().enumerate() {
            ensure!(
                bit == matrix[j][i],
                "fixture {name}: asymmetric at ({i},{j})"
            );
        }
    }
    let ordering: Vec<usize> = labels
        .iter()
        .map(|l| label_index(l))
        .collect::<Result<_>>()?;
    let mut seen = vec![false; v];
    for &idx in &ordering {
        ensure!(!seen[idx], "fixture {name}: label indices collide at {idx}");
        seen[idx] = true;
    }
    let graph = Graph::from_edges(
        v,
        (0..v)
            .flat_map(|i| ((i + 1)..v).map(move |j| (i, j)))
            .filter(|&(i, j)| matrix[i][j]),
    )?;
    Ok(Fixture {
        name,
        labels,
        printed_overrides,
        graph,
        ordering,
    })
}

impl Fixture {
    /// Checks that this fixture is exactly `reference` viewed through the
    /// fixture's column ordering: fixture edge (p,q) iff reference edge
    /// between the vertices the columns stand for.
    pub fn matches(&self, reference: &Graph) -> bool {
        let v = self.graph.vertex_count();
        if reference.vertex_count() != v {
            return false;
        }
        (0..v).all(|p| {
            ((p + 1)..v).all(|q| {
                self.graph.has_edge(p, q)
                    == reference.has_edge(self.ordering[p], self.ordering[q])
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse_and_validate() {
        for name in FIXTURE_NAMES {
            let f = load_fixture(name).unwrap();
            assert_eq!(f.graph.vertex_count(), 16);
            assert!(f.graph.degree_sequence().iter().all(|&d| d == 9));
        }
    }

    #[test]
    fn duplicate_printed_labels_recorded() {
        let f = load_fixture("A2").unwrap();
        assert_eq!(f.printed_overrides, vec![(7, "11/01".to_string())]);
        assert_eq!(f.labels[7], "11/10");
        let b = load_fixture("B2").unwrap();
        assert!(b.printed_overrides.is_empty());
    }

    #[test]
    fn unknown_fixture_rejected() {
        assert!(load_fixture("A3").is_err());
    }

    #[test]
    fn fixture_classifications() {
        use neumaier_core::graph::{RegularityClass, SrgParams};
        let a2 = load_fixture("A2").unwrap();
        assert_eq!(
            a2.graph.classify(),
            RegularityClass::StronglyRegular(SrgParams::new(16, 9, 4, 6))
        );
        let a21 = load_fixture("A21").unwrap();
        let report = neumaier_core::cliques::verify(&a21.graph);
        assert!(report.classification.is_strictly_neumaier());
        let b22 = load_fixture("B22").unwrap();
        assert!(neumaier_core::iso::is_isomorphic(&b22.graph, &a21.graph).is_some());
    }
}
