use std::collections::BTreeMap;
use std::fmt;

use crate::cohomology::{dolbeault, CohomologyTable, Key};
use crate::complexes::{Bicomplex, Bidegree, BigradedSpace, GradedOperator, Parity, Shift};
use crate::exactmath::{induced_map, is_exact_at, ExactMatrix, Quotient};

use super::{SlotLayout, VaismanError, VaismanModel};

/// The Dolbeault model `T` as an extension `0 → S → T → Q → 0`, where
/// `S^{p,q} = K^{p,q}` spans the summands without `θ^{1,0}` and
/// `Q^{p,q} ≅ K^{p−1,q}` spans the summands with `θ^{1,0}`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub total: Bicomplex,
    pub sub: Bicomplex,
    pub quotient: Bicomplex,
    /// `S^{p,q} → T^{p,q}` per slot.
    pub inclusion: BTreeMap<Bidegree, ExactMatrix>,
    /// `T^{p,q} → Q^{p,q}` per slot.
    pub projection: BTreeMap<Bidegree, ExactMatrix>,
    /// Chain-level connecting map `Q^{p,q} → S^{p,q+1}`, keyed by source.
    pub connecting: BTreeMap<Bidegree, ExactMatrix>,
    /// `c·L : K^{p−1,q} → K^{p,q+1}` in the same bases as `connecting`.
    pub scaled_lefschetz: BTreeMap<Bidegree, ExactMatrix>,
}

fn split_dims(model: &VaismanModel, bd: Bidegree) -> (usize, usize) {
    let l = SlotLayout::of(&model.basic, bd.p as i64, bd.q as i64);
    (l.dims[0] + l.dims[1], l.dims[2] + l.dims[3])
}

pub fn build_cone(model: &VaismanModel) -> Result<Cone, VaismanError> {
    let total = model.complex.dolbeault_part();
    let space = total.space();
    let n = space.n();
    let c = model.normalization.coefficient();
    let mut s_space = BigradedSpace::new(n);
    let mut q_space = BigradedSpace::new(n);
    for bd in space.grid() {
        let (s, _) = split_dims(model, bd);
        let labels = space.labels(bd);
        s_space.add_slot(bd, labels[..s].to_vec())?;
        q_space.add_slot(bd, labels[s..].to_vec())?;
    }
    let mut s_delbar = GradedOperator::zero(Shift::DELBAR, Parity::Odd);
    let mut q_delbar = GradedOperator::zero(Shift::DELBAR, Parity::Odd);
    let mut inclusion = BTreeMap::new();
    let mut projection = BTreeMap::new();
    let mut connecting = BTreeMap::new();
    let mut scaled_lefschetz = BTreeMap::new();
    for bd in space.grid() {
        let (s, q) = split_dims(model, bd);
        inclusion.insert(bd, ExactMatrix::identity(s + q).submatrix(0, 0, s + q, s));
        projection.insert(bd, ExactMatrix::identity(s + q).submatrix(s, 0, q, s + q));
        let Some(up) = bd.shifted(Shift::DELBAR).filter(|&t| space.in_grid(t)) else {
            continue;
        };
        let (s2, q2) = split_dims(model, up);
        let m = total.delbar_block(bd);
        if !m.submatrix(s2, 0, q2, s).is_zero() {
            return Err(VaismanError::Invariant(format!("S is not a subcomplex at {bd}")));
        }
        s_delbar.set_block(bd, m.submatrix(0, 0, s2, s));
        q_delbar.set_block(bd, m.submatrix(s2, s, q2, q));
        connecting.insert(bd, m.submatrix(0, s, s2, q));
        let k = model.basic.k_lefschetz(bd.p as i64 - 1, bd.q as i64);
        scaled_lefschetz.insert(bd, k.scale(&c));
    }
    let sub = Bicomplex::new(s_space, None, s_delbar)?;
    let quotient = Bicomplex::new(q_space, None, q_delbar)?;
    Ok(Cone {
        total,
        sub,
        quotient,
        inclusion,
        projection,
        connecting,
        scaled_lefschetz,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum LesNode {
    S,
    T,
    Q,
}

impl fmt::Display for LesNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LesNode::S => "H(S)",
            LesNode::T => "H(T)",
            LesNode::Q => "H(Q)",
        })
    }
}

/// One segment `H(S)^{p,q} → H(T)^{p,q} → H(Q)^{p,q} → H(S)^{p,q+1}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LesRow {
    pub slot: Bidegree,
    pub h_s: usize,
    pub h_t: usize,
    pub h_q: usize,
    pub rank_inclusion: usize,
    pub rank_projection: usize,
    pub rank_connecting: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeLesReport {
    pub rows: Vec<LesRow>,
    /// Induced connecting map equals the class of `c·L`.
    pub connecting_is_lefschetz: bool,
    /// Chain-level connecting block equals `c·L`.
    pub chain_connecting_is_lefschetz: bool,
}

impl ConeLesReport {
    /// `h^{p,q}(T) = (h_S^{p,q} − rank δ^{p,q−1}) + (h_Q^{p,q} − rank δ^{p,q})`.
    pub fn les_dimensions(&self) -> BTreeMap<Bidegree, usize> {
        let by_slot: BTreeMap<Bidegree, &LesRow> = self.rows.iter().map(|r| (r.slot, r)).collect();
        by_slot
            .iter()
            .map(|(&bd, r)| {
                let before =
                    bd.q.checked_sub(1)
                        .and_then(|q| by_slot.get(&Bidegree::new(bd.p, q)))
                        .map_or(0, |x| x.rank_connecting);
                (bd, (r.h_s - before) + (r.h_q - r.rank_connecting))
            })
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.connecting_is_lefschetz && self.chain_connecting_is_lefschetz
    }
}

fn group(t: &CohomologyTable, bd: Bidegree) -> &Quotient {
    t.group(Key::Slot(bd)).expect("table covers the grid")
}

fn induced(t: &ExactMatrix, src: &Quotient, dst: &Quotient, what: &str) -> Result<ExactMatrix, VaismanError> {
    induced_map(t, src, dst).map_err(|e| VaismanError::Invariant(format!("{what}: {e}")))
}

/// Builds the induced maps of the extension on Dolbeault cohomology, checks
/// exactness of the long exact sequence in `q` for every `p`, and compares
/// the connecting map with `c·L`.
pub fn verify_cone_les(cone: &Cone) -> Result<ConeLesReport, VaismanError> {
    let hs = dolbeault(&cone.sub)?;
    let ht = dolbeault(&cone.total)?;
    let hq = dolbeault(&cone.quotient)?;
    let space = cone.total.space();
    let n = space.n();
    let mut inc = BTreeMap::new();
    let mut proj = BTreeMap::new();
    let mut conn = BTreeMap::new();
    let mut connecting_is_lefschetz = true;
    let mut chain_connecting_is_lefschetz = true;
    for bd in space.grid() {
        let i = &cone.inclusion[&bd];
        let pr = &cone.projection[&bd];
        inc.insert(bd, induced(i, group(&hs, bd), group(&ht, bd), "inclusion")?);
        proj.insert(bd, induced(pr, group(&ht, bd), group(&hq, bd), "projection")?);
        let up = Bidegree::new(bd.p, bd.q + 1);
        let (delta, lefschetz) = if bd.q < n {
            let chain = &cone.connecting[&bd];
            let cl = &cone.scaled_lefschetz[&bd];
            let hq_g = group(&hq, bd);
            let hs_up = group(&hs, up);
            chain_connecting_is_lefschetz &= chain.shape() == cl.shape() && chain.sub(cl).is_zero();
            (
                induced(chain, hq_g, hs_up, "connecting")?,
                Some(induced(cl, hq_g, hs_up, "lefschetz")?),
            )
        } else {
            (ExactMatrix::zeros(0, group(&hq, bd).dim()), None)
        };
        if let Some(l) = lefschetz {
            connecting_is_lefschetz &= l.shape() == delta.shape() && l.sub(&delta).is_zero();
        }
        conn.insert(bd, delta);
    }
    let mut rows = Vec::new();
    for bd in space.grid() {
        let (p, q) = (bd.p, bd.q);
        let before = match q.checked_sub(1) {
            Some(q0) => conn[&Bidegree::new(p, q0)].clone(),
            None => ExactMatrix::zeros(group(&hs, bd).dim(), 0),
        };
        let checks = [
            (LesNode::S, &before, &inc[&bd], group(&hs, bd).dim()),
            (LesNode::T, &inc[&bd], &proj[&bd], group(&ht, bd).dim()),
            (LesNode::Q, &proj[&bd], &conn[&bd], group(&hq, bd).dim()),
        ];
        for (position, incoming, outgoing, dim) in checks {
            if !is_exact_at(incoming, outgoing, dim) {
                return Err(VaismanError::LesNotExact { p, q, position });
            }
        }
        rows.push(LesRow {
            slot: bd,
            h_s: group(&hs, bd).dim(),
            h_t: group(&ht, bd).dim(),
            h_q: group(&hq, bd).dim(),
            rank_inclusion: inc[&bd].rank(),
            rank_projection: proj[&bd].rank(),
            rank_connecting: conn[&bd].rank(),
        });
    }
    Ok(ConeLesReport {
        rows,
        connecting_is_lefschetz,
        chain_connecting_is_lefschetz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vaisman::{build_invariant_model, hopf_basic, Normalization};

    #[test]
    fn hopf_les_exact_and_connecting_is_lefschetz() {
        for n in [2, 3] {
            for norm in [Normalization::Imaginary, Normalization::One] {
                let m = build_invariant_model(&hopf_basic(n).unwrap(), false, norm).unwrap();
                let cone = build_cone(&m).unwrap();
                let r = verify_cone_les(&cone).unwrap();
                assert!(r.passed());
                let direct = dolbeault(&m.complex).unwrap();
                for (bd, d) in r.les_dimensions() {
                    assert_eq!(direct.dim(Key::Slot(bd)), d, "slot {bd}");
                }
            }
        }
    }

    #[test]
    fn hopf2_sub_and_quotient_dimensions() {
        let m = build_invariant_model(&hopf_basic(2).unwrap(), false, Normalization::Imaginary).unwrap();
        let cone = build_cone(&m).unwrap();
        assert_eq!(cone.sub.space().dimension(), 4);
        assert_eq!(cone.quotient.space().dimension(), 4);
        assert!(cone.sub.delbar().is_zero());
        assert!(cone.quotient.delbar().is_zero());
    }
}
