use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::complexes::{Bicomplex, Bidegree};
use crate::exactmath::{induced_map, is_exact_at, ExactMatrix, Quotient};

use super::groups::{
    abc_from, aeppli_from, all_slot_data, anti_from, bott_chern_from, dolbeault_from, require_del, require_valid,
};
use super::{derham, CohomologyError, CohomologyTable, Key};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiveTermNode {
    A,
    B,
    Dolbeault,
    Aeppli,
    C,
}

impl fmt::Display for FiveTermNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiveTermNode::A => "A",
            FiveTermNode::B => "B",
            FiveTermNode::Dolbeault => "H_delbar",
            FiveTermNode::Aeppli => "H_A",
            FiveTermNode::C => "C",
        })
    }
}

const NODES: [FiveTermNode; 5] = [
    FiveTermNode::A,
    FiveTermNode::B,
    FiveTermNode::Dolbeault,
    FiveTermNode::Aeppli,
    FiveTermNode::C,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveTermSlot {
    pub slot: Bidegree,
    /// Dimensions of `A, B, H_∂̄, H_A, C`.
    pub dims: [usize; 5],
    /// Ranks of the four maps between them.
    pub ranks: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiveTermReport {
    pub slots: Vec<FiveTermSlot>,
}

impl fmt::Display for FiveTermReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<String> = self
            .slots
            .iter()
            .filter(|s| s.dims.iter().any(|&d| d > 0))
            .map(|s| {
                let d = s.dims;
                format!("{}: {} {} {} {} {}", s.slot, d[0], d[1], d[2], d[3], d[4])
            })
            .collect();
        write!(
            f,
            "exact at all {} slots; dims A B H_delbar H_A C: {}",
            self.slots.len(),
            nonzero.join("; ")
        )
    }
}

fn ill_defined(map: &str, key: Key) -> impl FnOnce(crate::exactmath::ExactError) -> CohomologyError + '_ {
    move |source| CohomologyError::IllDefined {
        map: map.to_string(),
        key: key.to_string(),
        source,
    }
}

fn group(t: &CohomologyTable, key: Key) -> &Quotient {
    t.group(key).expect("tables cover the whole grid")
}

/// Builds `0 → A → B → H_∂̄ → H_A → C → 0` in every slot from maps induced
/// by the identity and checks exactness at each node. A failure is an error.
pub fn verify_five_term(b: &Bicomplex) -> Result<FiveTermReport, CohomologyError> {
    require_del(b)?;
    require_valid(b)?;
    let data = all_slot_data(b);
    let abc = abc_from(b, &data)?;
    let dol = dolbeault_from(b, &data)?;
    let ae = aeppli_from(b, &data)?;
    let mut slots = Vec::new();
    for bd in b.space().grid() {
        let key = Key::Slot(bd);
        let chain = [
            group(&abc.a, key),
            group(&abc.b, key),
            group(&dol, key),
            group(&ae, key),
            group(&abc.c, key),
        ];
        let id = ExactMatrix::identity(b.space().dim(bd));
        let mut maps = Vec::with_capacity(4);
        for (k, w) in chain.windows(2).enumerate() {
            let name = format!("{}->{}", NODES[k], NODES[k + 1]);
            maps.push(induced_map(&id, w[0], w[1]).map_err(ill_defined(&name, key))?);
        }
        let dims = chain.map(Quotient::dim);
        for (k, node) in NODES.iter().enumerate() {
            let incoming = if k == 0 {
                ExactMatrix::zeros(dims[0], 0)
            } else {
                maps[k - 1].clone()
            };
            let outgoing = if k == 4 {
                ExactMatrix::zeros(0, dims[4])
            } else {
                maps[k].clone()
            };
            if !is_exact_at(&incoming, &outgoing, dims[k]) {
                return Err(CohomologyError::NotExact {
                    slot: bd,
                    node: *node,
                    dims,
                });
            }
        }
        let ranks = [0, 1, 2, 3].map(|k| maps[k].rank());
        slots.push(FiveTermSlot { slot: bd, dims, ranks });
    }
    Ok(FiveTermReport { slots })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrolicherRow {
    pub k: usize,
    pub betti: usize,
    pub hodge_sum: usize,
}

impl FrolicherRow {
    pub fn slack(&self) -> i64 {
        self.hodge_sum as i64 - self.betti as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrolicherReport {
    pub rows: Vec<FrolicherRow>,
}

impl FrolicherReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.betti <= r.hodge_sum)
    }

    pub fn strict_degrees(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.betti < r.hodge_sum)
            .map(|r| r.k)
            .collect()
    }
}

impl fmt::Display for FrolicherReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let rel = if r.betti < r.hodge_sum {
                    "<"
                } else if r.betti == r.hodge_sum {
                    "="
                } else {
                    ">"
                };
                format!("k={}: {} {} {}", r.k, r.betti, rel, r.hodge_sum)
            })
            .collect();
        f.write_str(&rows.join(", "))
    }
}

/// `dim H^k_dR` against `Σ_{p+q=k} dim H^{p,q}_∂̄` for every `k`.
pub fn frolicher_check(b: &Bicomplex) -> Result<FrolicherReport, CohomologyError> {
    let dr = derham(b)?;
    let dol = dolbeault_from(b, &all_slot_data(b))?;
    let rows = (0..=2 * b.n())
        .map(|k| FrolicherRow {
            k,
            betti: dr.degree_dim(k),
            hodge_sum: b
                .space()
                .grid()
                .filter(|bd| bd.total() == k)
                .map(|bd| dol.dim(Key::Slot(bd)))
                .sum(),
        })
        .collect();
    Ok(FrolicherReport { rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityEntry {
    pub slot: Bidegree,
    pub bott_chern: usize,
    pub aeppli_dual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub n: usize,
    pub entries: Vec<DualityEntry>,
    pub warnings: Vec<String>,
}

impl DualityReport {
    pub fn matched(&self) -> bool {
        self.warnings.is_empty()
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.matched() {
            write!(f, "h_BC^(p,q) = h_A^(n-p,n-q) for all (p,q), n = {}", self.n)
        } else {
            f.write_str(&self.warnings.join("; "))
        }
    }
}

/// Compares `dim H_BC^{p,q}` with `dim H_A^{n−p,n−q}`. A mismatch is a
/// warning: arbitrary bicomplexes need not satisfy the duality.
pub fn duality_report(b: &Bicomplex, n: usize) -> Result<DualityReport, CohomologyError> {
    require_del(b)?;
    require_valid(b)?;
    let data = all_slot_data(b);
    let bc = bott_chern_from(b, &data)?;
    let ae = aeppli_from(b, &data)?;
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            let slot = Bidegree::new(p, q);
            let entry = DualityEntry {
                slot,
                bott_chern: bc.dim(Key::Slot(slot)),
                aeppli_dual: ae.dim(Key::Slot(Bidegree::new(n - p, n - q))),
            };
            if entry.bott_chern != entry.aeppli_dual {
                warnings.push(format!(
                    "h_BC^{slot} = {} but h_A^({},{}) = {}",
                    entry.bott_chern,
                    n - p,
                    n - q,
                    entry.aeppli_dual
                ));
            }
            entries.push(entry);
        }
    }
    Ok(DualityReport { n, entries, warnings })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalMap {
    pub name: &'static str,
    pub source: Key,
    pub target: Key,
    pub matrix: ExactMatrix,
}

impl NaturalMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.matrix.cols() - self.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.matrix.rows() - self.rank()
    }

    pub fn is_iso(&self) -> bool {
        self.kernel_dim() == 0 && self.cokernel_dim() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalMapsReport {
    pub maps: Vec<NaturalMap>,
}

impl NaturalMapsReport {
    pub fn find(&self, name: &str, source: Key) -> Option<&NaturalMap> {
        self.maps.iter().find(|m| m.name == name && m.source == source)
    }

    pub fn all_isomorphisms(&self) -> bool {
        self.maps.iter().all(NaturalMap::is_iso)
    }
}

impl fmt::Display for NaturalMapsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut per_name: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for m in &self.maps {
            let e = per_name.entry(m.name).or_default();
            e.0 += m.kernel_dim();
            e.1 += m.cokernel_dim();
        }
        let parts: Vec<String> = per_name
            .iter()
            .map(|(name, (k, c))| format!("{name}: total ker {k}, coker {c}"))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

pub const BC_TO_DEL: &str = "BC->del";
pub const BC_TO_DELBAR: &str = "BC->delbar";
pub const BC_TO_DR: &str = "BC->dR";
pub const DEL_TO_A: &str = "del->A";
pub const DELBAR_TO_A: &str = "delbar->A";
pub const DR_TO_A: &str = "dR->A";

/// Induced maps between Bott-Chern, Dolbeault, conjugate Dolbeault, de Rham
/// and Aeppli cohomology. A slot `(p,q)` enters de Rham in degree `p+q` by
/// inclusion; de Rham maps to `H_A^{p,q}` by taking the `(p,q)` component.
pub fn natural_maps(b: &Bicomplex) -> Result<NaturalMapsReport, CohomologyError> {
    require_del(b)?;
    require_valid(b)?;
    let data = all_slot_data(b);
    let bc = bott_chern_from(b, &data)?;
    let dol = dolbeault_from(b, &data)?;
    let anti = anti_from(b, &data)?;
    let ae = aeppli_from(b, &data)?;
    let dr = derham(b)?;
    let space = b.space();
    let mut maps = Vec::new();
    let mut push = |name: &'static str, t: &ExactMatrix, src: (&CohomologyTable, Key), dst: (&CohomologyTable, Key)| {
        let matrix = induced_map(t, group(src.0, src.1), group(dst.0, dst.1)).map_err(ill_defined(name, src.1))?;
        maps.push(NaturalMap {
            name,
            source: src.1,
            target: dst.1,
            matrix,
        });
        Ok::<(), CohomologyError>(())
    };
    for bd in space.grid() {
        let key = Key::Slot(bd);
        let dim = space.dim(bd);
        let id = ExactMatrix::identity(dim);
        let k = bd.total();
        let total_dim = space.total_dim(k);
        let mut inclusion = ExactMatrix::zeros(total_dim, dim);
        if let Some(&(_, offset)) = space.total_layout(k).iter().find(|(s, _)| *s == bd) {
            inclusion.paste(offset, 0, &ExactMatrix::identity(dim));
        }
        let projection = inclusion.transpose();
        let deg = Key::Degree(k);
        push(BC_TO_DEL, &id, (&bc, key), (&anti, key))?;
        push(BC_TO_DELBAR, &id, (&bc, key), (&dol, key))?;
        push(BC_TO_DR, &inclusion, (&bc, key), (&dr, deg))?;
        push(DEL_TO_A, &id, (&anti, key), (&ae, key))?;
        push(DELBAR_TO_A, &id, (&dol, key), (&ae, key))?;
        push(DR_TO_A, &projection, (&dr, deg), (&ae, key))?;
    }
    Ok(NaturalMapsReport { maps })
}
