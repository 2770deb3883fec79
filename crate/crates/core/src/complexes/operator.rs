use std::collections::BTreeMap;

use crate::exactmath::{ExactMatrix, GaussianRational};

use super::grading::{Bidegree, BigradedSpace, Parity, Shift};
use super::ComplexError;

/// A linear map of fixed bidegree shift, given by one block per source slot.
/// A missing block is the zero map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedOperator {
    shift: Shift,
    parity: Parity,
    blocks: BTreeMap<Bidegree, ExactMatrix>,
}

impl GradedOperator {
    pub fn zero(shift: Shift, parity: Parity) -> Self {
        GradedOperator {
            shift,
            parity,
            blocks: BTreeMap::new(),
        }
    }

    /// Scalar multiple of the identity on each slot, `f(p, q)`.
    pub fn diagonal(space: &BigradedSpace, f: impl Fn(Bidegree) -> GaussianRational) -> Self {
        let mut op = GradedOperator::zero(Shift::ZERO, Parity::Even);
        for (bd, dim) in space.slots() {
            op.set_block(bd, ExactMatrix::identity(dim).scale(&f(bd)));
        }
        op
    }

    pub fn identity(space: &BigradedSpace) -> Self {
        Self::diagonal(space, |_| GaussianRational::one())
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn target(&self, src: Bidegree) -> Option<Bidegree> {
        src.shifted(self.shift)
    }

    pub fn block(&self, src: Bidegree) -> Option<&ExactMatrix> {
        self.blocks.get(&src)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (Bidegree, &ExactMatrix)> {
        self.blocks.iter().map(|(&bd, m)| (bd, m))
    }

    /// The block at `src`, materialised as a zero matrix of the right shape
    /// when absent.
    pub fn block_or_zero(&self, space: &BigradedSpace, src: Bidegree) -> ExactMatrix {
        if let Some(m) = self.blocks.get(&src) {
            return m.clone();
        }
        let rows = self.target(src).map_or(0, |t| space.dim(t));
        ExactMatrix::zeros(rows, space.dim(src))
    }

    /// Stores `m` at `src`; all-zero blocks are dropped.
    pub fn set_block(&mut self, src: Bidegree, m: ExactMatrix) {
        if m.is_zero() {
            self.blocks.remove(&src);
        } else {
            self.blocks.insert(src, m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(ExactMatrix::is_zero)
    }

    pub fn check_shapes(&self, space: &BigradedSpace) -> Result<(), ComplexError> {
        for (&src, m) in &self.blocks {
            let target = self
                .target(src)
                .filter(|&t| space.in_grid(t))
                .ok_or(ComplexError::BlockOutOfGrid {
                    slot: src,
                    shift: self.shift,
                })?;
            let expected = (space.dim(target), space.dim(src));
            if m.shape() != expected {
                return Err(ComplexError::BlockShape {
                    slot: src,
                    expected,
                    found: m.shape(),
                });
            }
        }
        Ok(())
    }

    pub fn scale(&self, s: &GaussianRational) -> GradedOperator {
        let mut out = GradedOperator::zero(self.shift, self.parity);
        for (&bd, m) in &self.blocks {
            out.set_block(bd, m.scale(s));
        }
        out
    }

    pub fn neg(&self) -> GradedOperator {
        self.scale(&GaussianRational::from(-1))
    }

    /// Sum of two operators with the same shift.
    pub fn add(&self, other: &GradedOperator) -> GradedOperator {
        assert_eq!(self.shift, other.shift, "adding operators of different shift");
        let mut out = self.clone();
        for (&bd, m) in &other.blocks {
            let sum = match out.blocks.get(&bd) {
                Some(a) => a.add(m),
                None => m.clone(),
            };
            out.set_block(bd, sum);
        }
        out
    }

    pub fn sub(&self, other: &GradedOperator) -> GradedOperator {
        self.add(&other.neg())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GradedOperator) -> GradedOperator {
        let mut out = GradedOperator::zero(self.shift + other.shift, self.parity + other.parity);
        for (&src, b) in &other.blocks {
            let Some(mid) = other.target(src) else { continue };
            if let Some(a) = self.blocks.get(&mid) {
                out.set_block(src, a.mul(b));
            }
        }
        out
    }

    /// Blockwise entry conjugation with blocks moved to conjugate slots;
    /// the shift `(dp, dq)` becomes `(dq, dp)`.
    pub fn conjugate(&self) -> GradedOperator {
        let mut out = GradedOperator::zero(Shift::new(self.shift.dq, self.shift.dp), self.parity);
        for (&bd, m) in &self.blocks {
            out.set_block(bd.conjugate(), m.conj());
        }
        out
    }
}

/// A finite sum of homogeneous graded operators, keyed by shift.
///
/// Differentials like `d = ∂ + ∂̄` and Lie derivatives of non-holomorphic
/// fields live here; operator algebra is carried out componentwise.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorSum {
    components: BTreeMap<Shift, GradedOperator>,
}

impl OperatorSum {
    pub fn zero() -> Self {
        OperatorSum::default()
    }

    pub fn from_parts(parts: impl IntoIterator<Item = GradedOperator>) -> Self {
        let mut out = OperatorSum::zero();
        for p in parts {
            out.add_component(p);
        }
        out
    }

    fn add_component(&mut self, op: GradedOperator) {
        let shift = op.shift();
        let merged = match self.components.remove(&shift) {
            Some(existing) => existing.add(&op),
            None => op,
        };
        if !merged.is_zero() {
            self.components.insert(shift, merged);
        }
    }

    pub fn components(&self) -> impl Iterator<Item = &GradedOperator> {
        self.components.values()
    }

    pub fn component(&self, shift: Shift) -> Option<&GradedOperator> {
        self.components.get(&shift)
    }

    /// Shifts carrying a nonzero component.
    pub fn shifts(&self) -> Vec<Shift> {
        self.components.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &OperatorSum) -> OperatorSum {
        let mut out = self.clone();
        for c in other.components.values() {
            out.add_component(c.clone());
        }
        out
    }

    pub fn sub(&self, other: &OperatorSum) -> OperatorSum {
        self.add(&other.scale(&GaussianRational::from(-1)))
    }

    pub fn scale(&self, s: &GaussianRational) -> OperatorSum {
        OperatorSum::from_parts(self.components.values().map(|c| c.scale(s)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OperatorSum) -> OperatorSum {
        let mut out = OperatorSum::zero();
        for a in self.components.values() {
            for b in other.components.values() {
                out.add_component(a.compose(b));
            }
        }
        out
    }

    /// `ab − ba`.
    pub fn commutator(&self, other: &OperatorSum) -> OperatorSum {
        self.compose(other).sub(&other.compose(self))
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, other: &OperatorSum) -> OperatorSum {
        self.compose(other).add(&other.compose(self))
    }

    pub fn conjugate(&self) -> OperatorSum {
        OperatorSum::from_parts(self.components.values().map(GradedOperator::conjugate))
    }

    /// Matrix from total degree `k` to total degree `k + s`, where `s` is the
    /// common total shift of all components. Rows are ordered by the layout
    /// of [`BigradedSpace::total_layout`].
    pub fn total_matrix(&self, space: &BigradedSpace, k: usize, total_shift: i32) -> ExactMatrix {
        let target_k = k as i64 + total_shift as i64;
        let rows = if target_k < 0 {
            0
        } else {
            space.total_dim(target_k as usize)
        };
        let mut m = ExactMatrix::zeros(rows, space.total_dim(k));
        if target_k < 0 {
            return m;
        }
        let dst_layout: BTreeMap<Bidegree, usize> = space.total_layout(target_k as usize).into_iter().collect();
        for comp in self.components.values() {
            assert_eq!(comp.shift().total(), total_shift, "mixed total degrees in total_matrix");
            for (src, c0) in space.total_layout(k) {
                let (Some(block), Some(t)) = (comp.block(src), comp.target(src)) else {
                    continue;
                };
                let r0 = dst_layout[&t];
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        let v = block.get(r, c);
                        if !v.is_zero() {
                            *m.entry_mut(r0 + r, c0 + c) += v;
                        }
                    }
                }
            }
        }
        m
    }
}

impl From<GradedOperator> for OperatorSum {
    fn from(op: GradedOperator) -> Self {
        OperatorSum::from_parts([op])
    }
}

/// `a ∘ b` for homogeneous operators.
pub fn op_compose(a: &GradedOperator, b: &GradedOperator) -> GradedOperator {
    a.compose(b)
}

/// `ab + ba`.
pub fn op_anticommutator(a: &GradedOperator, b: &GradedOperator) -> GradedOperator {
    a.compose(b).add(&b.compose(a))
}

pub fn op_commutator(a: &GradedOperator, b: &GradedOperator) -> GradedOperator {
    a.compose(b).sub(&b.compose(a))
}

/// `ab − (−1)^{|a||b|} ba`.
pub fn op_graded_commutator(a: &GradedOperator, b: &GradedOperator) -> GradedOperator {
    if a.parity() == Parity::Odd && b.parity() == Parity::Odd {
        op_anticommutator(a, b)
    } else {
        op_commutator(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> BigradedSpace {
        let mut s = BigradedSpace::new(1);
        s.add_slot(Bidegree::new(0, 0), vec!["a".into()]).unwrap();
        s.add_slot(Bidegree::new(1, 0), vec!["b".into(), "c".into()]).unwrap();
        s
    }

    #[test]
    fn commutator_of_even_operator_with_itself_vanishes() {
        let s = space();
        let mut a = GradedOperator::zero(Shift::ZERO, Parity::Even);
        a.set_block(Bidegree::new(1, 0), ExactMatrix::from_i64(&[&[1, 2], &[3, 4]]));
        assert!(op_commutator(&a, &a).is_zero());
        assert!(op_graded_commutator(&a, &a).is_zero());
        assert!(a.check_shapes(&s).is_ok());
    }

    #[test]
    fn composition_adds_shifts_and_parities() {
        let mut a = GradedOperator::zero(Shift::DEL, Parity::Odd);
        a.set_block(Bidegree::new(0, 0), ExactMatrix::from_i64(&[&[1], &[1]]));
        let id = GradedOperator::identity(&space());
        let c = op_compose(&a, &id);
        assert_eq!(c.shift(), Shift::DEL);
        assert_eq!(c.parity(), Parity::Odd);
        assert_eq!(c.block(Bidegree::new(0, 0)), a.block(Bidegree::new(0, 0)));
        let aa = op_compose(&a, &a);
        assert_eq!(aa.shift(), Shift::new(2, 0));
        assert_eq!(aa.parity(), Parity::Even);
        assert!(aa.is_zero());
    }

    #[test]
    fn shape_errors_are_reported() {
        let s = space();
        let mut a = GradedOperator::zero(Shift::DEL, Parity::Odd);
        a.set_block(Bidegree::new(0, 0), ExactMatrix::from_i64(&[&[1]]));
        assert!(matches!(a.check_shapes(&s), Err(ComplexError::BlockShape { .. })));
        let mut b = GradedOperator::zero(Shift::DEL, Parity::Odd);
        b.set_block(Bidegree::new(1, 0), ExactMatrix::from_i64(&[&[1, 1]]));
        assert!(matches!(b.check_shapes(&s), Err(ComplexError::BlockOutOfGrid { .. })));
    }

    #[test]
    fn total_matrix_places_blocks() {
        let s = space();
        let mut a = GradedOperator::zero(Shift::DEL, Parity::Odd);
        a.set_block(Bidegree::new(0, 0), ExactMatrix::from_i64(&[&[1], &[2]]));
        let m = OperatorSum::from(a).total_matrix(&s, 0, 1);
        assert_eq!(m, ExactMatrix::from_i64(&[&[1], &[2]]));
    }
}
