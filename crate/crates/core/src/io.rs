//! JSON file formats and Graphviz output.
//!
//! Poset: `{"n": 4, "lt": [[0, 1], ...]}` (strict pairs, closed on load).
//! Coloring: `{"f": [0, 1, ...], "N": 1}`.
//! Trace: `{"U": 3, "B": 4, "rows": ["0110", ...]}`, one bitstring per row.
//! Sequence: `{"assign": [column per element]}`.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::coloring::ColoredPoset;
use crate::decomposition::Decomposition;
use crate::poset::Poset;
use crate::trace::{IndexedSequence, TraceStructure};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub n: usize,
    pub lt: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringFile {
    pub f: Vec<u8>,
    #[serde(rename = "N")]
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    #[serde(rename = "U")]
    pub u: usize,
    #[serde(rename = "B")]
    pub b: usize,
    pub rows: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqFile {
    pub assign: Vec<usize>,
}

impl PosetFile {
    pub fn from_poset(p: &Poset) -> Self {
        PosetFile { n: p.len(), lt: p.relation_pairs().into_iter().map(|(i, j)| [i, j]).collect() }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        let pairs: Vec<(usize, usize)> = self.lt.iter().map(|&[i, j]| (i, j)).collect();
        Poset::from_pairs(self.n, &pairs)
    }
}

impl ColoringFile {
    pub fn from_colored(cp: &ColoredPoset) -> Self {
        ColoringFile { f: cp.colors().to_vec(), n: cp.n_param }
    }

    pub fn attach(&self, p: Poset) -> Result<ColoredPoset> {
        ColoredPoset::new(p, self.f.clone(), self.n)
    }
}

impl TraceFile {
    pub fn from_trace(t: &TraceStructure) -> Self {
        let rows = (0..t.rows())
            .map(|u| t.row(u).iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect();
        TraceFile { u: t.rows(), b: t.columns(), rows }
    }

    pub fn to_trace(&self) -> Result<TraceStructure> {
        if self.rows.len() != self.u {
            return Err(Error::Schema(format!("U = {} but {} rows given", self.u, self.rows.len())));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                if r.chars().count() != self.b {
                    return Err(Error::Schema(format!("row {r:?} does not have B = {} bits", self.b)));
                }
                r.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::Schema(format!("row {r:?} is not a bitstring"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<bool>>>>()?;
        TraceStructure::new(rows, self.b)
    }
}

impl SeqFile {
    pub fn to_sequence(&self, p: Poset) -> Result<IndexedSequence> {
        IndexedSequence::new(p, self.assign.clone())
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), reason: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io { path: path.display().to_string(), reason: e.to_string() })
}

pub fn load_poset(path: &Path) -> Result<Poset> {
    read_json::<PosetFile>(path)?.to_poset()
}

pub fn load_colored(poset: &Path, coloring: &Path) -> Result<ColoredPoset> {
    read_json::<ColoringFile>(coloring)?.attach(load_poset(poset)?)
}

pub fn load_trace(path: &Path) -> Result<TraceStructure> {
    read_json::<TraceFile>(path)?.to_trace()
}

pub fn load_sequence(poset: &Path, seq: &Path) -> Result<IndexedSequence> {
    read_json::<SeqFile>(seq)?.to_sequence(load_poset(poset)?)
}

const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal"];

/// Hasse diagram with one ranked cluster per block and each chain drawn as
/// a colored path; color-1 elements are filled.
pub fn decomposition_dot(cp: &ColoredPoset, dec: &Decomposition) -> String {
    let p = &cp.poset;
    let mut out = String::from("digraph decomposition {\n  rankdir=BT;\n  node [style=filled];\n");
    for (n, block) in dec.block_sets.iter().enumerate() {
        out.push_str(&format!("  subgraph cluster_{n} {{\n    label=\"block {n}\";\n    rank=same;\n"));
        for i in block.iter() {
            let fill = if cp.color(i) == 1 { "gray40" } else { "white" };
            out.push_str(&format!("    {i} [fillcolor={fill}];\n"));
        }
        out.push_str("  }\n");
    }
    for (i, j) in p.covers() {
        out.push_str(&format!("  {i} -> {j} [color=gray80];\n"));
    }
    let mut k = 0;
    for chains in &dec.chain_covers {
        for chain in chains {
            let color = PALETTE[k % PALETTE.len()];
            k += 1;
            for w in chain.windows(2) {
                out.push_str(&format!("  {} -> {} [color={color}, penwidth=2];\n", w[0], w[1]));
            }
        }
    }
    out.push_str("}\n");
    out
}
