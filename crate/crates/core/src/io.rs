//! JSON file formats.
//!
//! A lattice file is `{"n": <count>, "covers": [[x, y], ...]}` listing the
//! irredundant cover relation. A table file adds `"table": [[...], ...]`, an
//! `n × n` matrix. A congruence file is `{"blocks": [[...], ...]}`. Emitters
//! always write covers sorted, on one line, followed by a newline, so the
//! output of every command is reproducible byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::commutator::CommutatorTable;
use crate::error::LatticeError;
use crate::lattice::{FiniteLattice, LatticePartition};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceFile {
    pub blocks: Vec<Vec<usize>>,
}

impl From<&FiniteLattice> for LatticeFile {
    fn from(l: &FiniteLattice) -> Self {
        LatticeFile {
            n: l.n(),
            covers: l.covers().iter().map(|&(x, y)| [x, y]).collect(),
        }
    }
}

impl LatticeFile {
    pub fn to_lattice(&self) -> Result<FiniteLattice, LatticeError> {
        FiniteLattice::build(self.n, self.covers.iter().map(|c| (c[0], c[1])))
    }
}

impl From<&CommutatorTable> for TableFile {
    fn from(t: &CommutatorTable) -> Self {
        let LatticeFile { n, covers } = LatticeFile::from(t.lattice());
        TableFile {
            n,
            covers,
            table: t.rows(),
        }
    }
}

impl TableFile {
    pub fn to_table(&self) -> Result<CommutatorTable, LatticeError> {
        let l = FiniteLattice::build(self.n, self.covers.iter().map(|c| (c[0], c[1])))?;
        CommutatorTable::new(l, &self.table)
    }
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice, FormatError> {
    let file: LatticeFile = serde_json::from_str(text)?;
    Ok(file.to_lattice()?)
}

pub fn parse_table(text: &str) -> Result<CommutatorTable, FormatError> {
    let file: TableFile = serde_json::from_str(text)?;
    Ok(file.to_table()?)
}

pub fn parse_congruence(text: &str, n: usize) -> Result<LatticePartition, FormatError> {
    let file: CongruenceFile = serde_json::from_str(text)?;
    Ok(LatticePartition::from_blocks(n, &file.blocks)?)
}

fn line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn lattice_to_json(l: &FiniteLattice) -> String {
    line(&LatticeFile::from(l))
}

pub fn table_to_json(t: &CommutatorTable) -> String {
    line(&TableFile::from(t))
}

pub fn congruence_to_json(p: &LatticePartition) -> String {
    line(&CongruenceFile { blocks: p.blocks() })
}
