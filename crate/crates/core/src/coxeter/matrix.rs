//! Coxeter matrices and systems. A system is the matrix plus derived data;
//! every operation on words/elements hangs off `CoxeterSystem`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator index. Systems are capped at rank 16, so u8 is plenty.
pub type Gen = u8;

/// Sorted set of generator indices.
pub type GenSet = BTreeSet<Gen>;

/// Largest admissible rank. Keeps subset searches desk-scale and every
/// finite-type order inside u64.
pub const MAX_RANK: usize = 16;

/// Order m(s,t) of the product of two generators. `Infinite` is serialized
/// as 0 in the JSON matrix format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoxLabel {
    Finite(u32),
    Infinite,
}

impl CoxLabel {
    pub fn is_finite(self) -> bool {
        matches!(self, CoxLabel::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            CoxLabel::Finite(m) => Some(m),
            CoxLabel::Infinite => None,
        }
    }

    fn to_raw(self) -> u64 {
        match self {
            CoxLabel::Finite(m) => u64::from(m),
            CoxLabel::Infinite => 0,
        }
    }
}

impl fmt::Display for CoxLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxLabel::Finite(m) => write!(f, "{m}"),
            CoxLabel::Infinite => write!(f, "inf"),
        }
    }
}

/// Symmetric matrix of labels with 1 on the diagonal and entries >= 2 (or
/// infinity) off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<CoxLabel>,
}

impl CoxeterMatrix {
    /// Builds from raw u64 rows with the 0 = infinity convention, running the
    /// full validation.
    pub fn from_raw(rows: &[Vec<u64>]) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::InvalidMatrix("rank 0".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::CapExceeded(format!(
                "rank {rank} exceeds the supported maximum {MAX_RANK}"
            )));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {rank}",
                    row.len()
                )));
            }
            for (j, &raw) in row.iter().enumerate() {
                let label = match raw {
                    0 => CoxLabel::Infinite,
                    m => {
                        let m32 = u32::try_from(m).map_err(|_| {
                            Error::InvalidMatrix(format!("entry ({i},{j}) = {m} is out of range"))
                        })?;
                        CoxLabel::Finite(m32)
                    }
                };
                if i == j && label != CoxLabel::Finite(1) {
                    return Err(Error::InvalidMatrix(format!(
                        "diagonal entry ({i},{i}) must be 1, got {label}"
                    )));
                }
                if i != j {
                    if let CoxLabel::Finite(m) = label {
                        if m < 2 {
                            return Err(Error::InvalidMatrix(format!(
                                "off-diagonal entry ({i},{j}) must be >= 2 or infinite, got {m}"
                            )));
                        }
                    }
                }
                entries.push(label);
            }
        }
        for i in 0..rank {
            for j in (i + 1)..rank {
                if entries[i * rank + j] != entries[j * rank + i] {
                    return Err(Error::InvalidMatrix(format!(
                        "not symmetric at ({i},{j}): {} vs {}",
                        entries[i * rank + j],
                        entries[j * rank + i]
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { rank, entries })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, s: Gen, t: Gen) -> CoxLabel {
        self.entries[usize::from(s) * self.rank + usize::from(t)]
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    rank: usize,
    m: Vec<Vec<u64>>,
}

/// A Coxeter system (W,S): the validated matrix. Pure value, shareable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        CoxeterSystem { matrix }
    }

    /// Builds from raw rows (0 = infinity) with validation.
    pub fn from_raw(rows: &[Vec<u64>]) -> Result<Self> {
        Ok(CoxeterSystem::new(CoxeterMatrix::from_raw(rows)?))
    }

    /// Strict parse of the `{"rank": n, "m": [[..]]}` file format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text)?;
        if file.m.len() != file.rank {
            return Err(Error::InvalidMatrix(format!(
                "declared rank {} but matrix has {} rows",
                file.rank,
                file.m.len()
            )));
        }
        CoxeterSystem::from_raw(&file.m)
    }

    pub fn to_json(&self) -> String {
        let rank = self.rank();
        let m: Vec<Vec<u64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| self.label(i as Gen, j as Gen).to_raw())
                    .collect()
            })
            .collect();
        serde_json::to_string(&SystemFile { rank, m }).expect("matrix serializes")
    }

    /// Raw rows with the 0 = infinity convention, for echoing in reports.
    pub fn raw_rows(&self) -> Vec<Vec<u64>> {
        let rank = self.rank();
        (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| self.label(i as Gen, j as Gen).to_raw())
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn label(&self, s: Gen, t: Gen) -> CoxLabel {
        self.matrix.label(s, t)
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.rank() as Gen).into_iter()
    }

    pub fn check_gen(&self, s: Gen) -> Result<()> {
        if usize::from(s) < self.rank() {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange {
                index: usize::from(s),
                rank: self.rank(),
            })
        }
    }

    /// All generators of the full set S as a GenSet.
    pub fn full_set(&self) -> GenSet {
        self.generators().collect()
    }
}

/// Renders a generator subset as `{0,2}`.
pub fn format_genset(set: &GenSet) -> String {
    let inner: Vec<String> = set.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
