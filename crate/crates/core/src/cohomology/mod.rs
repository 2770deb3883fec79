//! Dolbeault, conjugate Dolbeault, de Rham, Bott-Chern and Aeppli cohomology,
//! the `A`/`B`/`C` groups, and the checks relating them.

mod groups;
mod reports;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complexes::{Bidegree, ComplexError, ValidationReport};
use crate::exactmath::{ExactError, Quotient, Vector};

pub use groups::{abc_groups, aeppli, anti_dolbeault, bott_chern, derham, dolbeault, AbcGroups, SlotData};
pub use reports::{
    duality_report, frolicher_check, natural_maps, verify_five_term, DualityEntry, DualityReport, FiveTermNode,
    FiveTermReport, FiveTermSlot, FrolicherReport, FrolicherRow, NaturalMap, NaturalMapsReport, BC_TO_DEL,
    BC_TO_DELBAR, BC_TO_DR, DELBAR_TO_A, DEL_TO_A, DR_TO_A,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("invalid bicomplex: {0}")]
    Invalid(String),
    #[error("ill-defined induced map {map} at {key}: {source}")]
    IllDefined {
        map: String,
        key: String,
        source: ExactError,
    },
    #[error("sequence not exact at {node} in slot {slot} (dims {dims:?})")]
    NotExact {
        slot: Bidegree,
        node: FiveTermNode,
        dims: [usize; 5],
    },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl From<ValidationReport> for CohomologyError {
    fn from(r: ValidationReport) -> Self {
        CohomologyError::Invalid(r.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "dolbeault")]
    Dolbeault,
    #[serde(rename = "anti")]
    AntiDolbeault,
    #[serde(rename = "derham")]
    DeRham,
    #[serde(rename = "bc")]
    BottChern,
    #[serde(rename = "aeppli")]
    Aeppli,
    A,
    B,
    C,
    #[serde(rename = "C_aeppli")]
    CAeppli,
}

impl Flavor {
    pub const ALL: [Flavor; 9] = [
        Flavor::Dolbeault,
        Flavor::AntiDolbeault,
        Flavor::DeRham,
        Flavor::BottChern,
        Flavor::Aeppli,
        Flavor::A,
        Flavor::B,
        Flavor::C,
        Flavor::CAeppli,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Dolbeault => "dolbeault",
            Flavor::AntiDolbeault => "anti",
            Flavor::DeRham => "derham",
            Flavor::BottChern => "bc",
            Flavor::Aeppli => "aeppli",
            Flavor::A => "A",
            Flavor::B => "B",
            Flavor::C => "C",
            Flavor::CAeppli => "C_aeppli",
        }
    }

    pub fn is_bigraded(self) -> bool {
        self != Flavor::DeRham
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown flavor {s:?}"))
    }
}

/// A table key: a bidegree, or a total degree for de Rham.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Slot(Bidegree),
    Degree(usize),
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Slot(bd) => write!(f, "{},{}", bd.p, bd.q),
            Key::Degree(k) => write!(f, "{k}"),
        }
    }
}

/// One subquotient per key, over the whole grid (empty slots included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    flavor: Flavor,
    n: usize,
    groups: BTreeMap<Key, Quotient>,
}

impl CohomologyTable {
    pub(crate) fn new(flavor: Flavor, n: usize, groups: BTreeMap<Key, Quotient>) -> Self {
        CohomologyTable { flavor, n, groups }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, key: Key) -> usize {
        self.groups.get(&key).map_or(0, Quotient::dim)
    }

    pub fn slot_dim(&self, p: usize, q: usize) -> usize {
        self.dim(Key::Slot(Bidegree::new(p, q)))
    }

    pub fn degree_dim(&self, k: usize) -> usize {
        self.dim(Key::Degree(k))
    }

    pub fn group(&self, key: Key) -> Option<&Quotient> {
        self.groups.get(&key)
    }

    pub fn keys(&self) -> impl Iterator<Item = Key> + '_ {
        self.groups.keys().copied()
    }

    pub fn dims(&self) -> BTreeMap<Key, usize> {
        self.groups.iter().map(|(k, g)| (*k, g.dim())).collect()
    }

    /// Dimensions keyed by `"p,q"` or `"k"`.
    pub fn dims_by_name(&self) -> BTreeMap<String, usize> {
        self.groups.iter().map(|(k, g)| (k.to_string(), g.dim())).collect()
    }

    pub fn representatives(&self, key: Key) -> &[Vector] {
        self.groups.get(&key).map_or(&[], |g| g.representatives())
    }

    pub fn total(&self) -> usize {
        self.groups.values().map(Quotient::dim).sum()
    }

    pub fn same_dims(&self, other: &CohomologyTable) -> bool {
        self.dims() == other.dims()
    }
}

impl fmt::Display for CohomologyTable {
    /// Hodge-diamond grid (rows `q = n..0`, columns `p = 0..n`) or a
    /// Betti row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.flavor.is_bigraded() {
            writeln!(f, "{} (rows q = {}..0, columns p = 0..{})", self.flavor, self.n, self.n)?;
            for q in (0..=self.n).rev() {
                let row: Vec<String> = (0..=self.n).map(|p| self.slot_dim(p, q).to_string()).collect();
                writeln!(f, "  q={q}: {}", row.join(" "))?;
            }
        } else {
            let row: Vec<String> = (0..=2 * self.n).map(|k| self.degree_dim(k).to_string()).collect();
            writeln!(f, "{} (k = 0..{}): {}", self.flavor, 2 * self.n, row.join(" "))?;
        }
        Ok(())
    }
}
