use std::collections::BTreeMap;

use crate::complexes::{total_differential, Bicomplex, Bidegree, ComplexError};
use crate::exactmath::{ExactError, Quotient, Subspace};

use super::{CohomologyError, CohomologyTable, Flavor, Key};

/// Kernels and images of `∂`, `∂̄` and `∂∂̄` seen from one slot. Images are
/// of the maps arriving at the slot; kernels are of the maps leaving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotData {
    pub ker_del: Subspace,
    pub ker_delbar: Subspace,
    pub ker_deldelbar: Subspace,
    pub im_del: Subspace,
    pub im_delbar: Subspace,
    pub im_deldelbar: Subspace,
}

impl SlotData {
    pub fn compute(b: &Bicomplex, bd: Bidegree) -> SlotData {
        let dim = b.space().dim(bd);
        let ker_del = b.del_block(bd).kernel_basis();
        let ker_delbar = b.delbar_block(bd).kernel_basis();
        let up = Bidegree::new(bd.p, bd.q + 1);
        let ker_deldelbar = b.del_block(up).mul(&b.delbar_block(bd)).kernel_basis();
        let im_del = match bd.p.checked_sub(1) {
            Some(p) => b.del_block(Bidegree::new(p, bd.q)).image_basis(),
            None => Subspace::zero(dim),
        };
        let im_delbar = match bd.q.checked_sub(1) {
            Some(q) => b.delbar_block(Bidegree::new(bd.p, q)).image_basis(),
            None => Subspace::zero(dim),
        };
        let im_deldelbar = match (bd.p.checked_sub(1), bd.q.checked_sub(1)) {
            (Some(p), Some(q)) => {
                let src = Bidegree::new(p, q);
                b.del_block(Bidegree::new(p, bd.q))
                    .mul(&b.delbar_block(src))
                    .image_basis()
            }
            _ => Subspace::zero(dim),
        };
        SlotData {
            ker_del,
            ker_delbar,
            ker_deldelbar,
            im_del,
            im_delbar,
            im_deldelbar,
        }
    }
}

pub(crate) fn require_valid(b: &Bicomplex) -> Result<(), CohomologyError> {
    let report = b.validate();
    if report.passed() {
        Ok(())
    } else {
        Err(report.into())
    }
}

pub(crate) fn require_del(b: &Bicomplex) -> Result<(), CohomologyError> {
    if b.has_del() {
        Ok(())
    } else {
        Err(ComplexError::MissingDel.into())
    }
}

pub(crate) fn all_slot_data(b: &Bicomplex) -> BTreeMap<Bidegree, SlotData> {
    b.space().grid().map(|bd| (bd, SlotData::compute(b, bd))).collect()
}

fn invariant(e: ExactError) -> CohomologyError {
    CohomologyError::Invariant(e.to_string())
}

pub(crate) fn bigraded_table(
    flavor: Flavor,
    b: &Bicomplex,
    data: &BTreeMap<Bidegree, SlotData>,
    pick: impl Fn(&SlotData) -> Result<(Subspace, Subspace), ExactError>,
) -> Result<CohomologyTable, CohomologyError> {
    let mut groups = BTreeMap::new();
    for (&bd, s) in data {
        let (num, den) = pick(s).map_err(invariant)?;
        groups.insert(Key::Slot(bd), Quotient::new(num, den).map_err(invariant)?);
    }
    Ok(CohomologyTable::new(flavor, b.n(), groups))
}

pub(crate) fn dolbeault_from(
    b: &Bicomplex,
    data: &BTreeMap<Bidegree, SlotData>,
) -> Result<CohomologyTable, CohomologyError> {
    bigraded_table(Flavor::Dolbeault, b, data, |s| {
        Ok((s.ker_delbar.clone(), s.im_delbar.clone()))
    })
}

pub(crate) fn anti_from(
    b: &Bicomplex,
    data: &BTreeMap<Bidegree, SlotData>,
) -> Result<CohomologyTable, CohomologyError> {
    bigraded_table(Flavor::AntiDolbeault, b, data, |s| {
        Ok((s.ker_del.clone(), s.im_del.clone()))
    })
}

pub(crate) fn bott_chern_from(
    b: &Bicomplex,
    data: &BTreeMap<Bidegree, SlotData>,
) -> Result<CohomologyTable, CohomologyError> {
    bigraded_table(Flavor::BottChern, b, data, |s| {
        Ok((s.ker_del.intersect(&s.ker_delbar)?, s.im_deldelbar.clone()))
    })
}

pub(crate) fn aeppli_from(
    b: &Bicomplex,
    data: &BTreeMap<Bidegree, SlotData>,
) -> Result<CohomologyTable, CohomologyError> {
    bigraded_table(Flavor::Aeppli, b, data, |s| {
        Ok((s.ker_deldelbar.clone(), s.im_del.sum(&s.im_delbar)?))
    })
}

/// `H_∂̄ = ker ∂̄ / im ∂̄` per slot.
pub fn dolbeault(b: &Bicomplex) -> Result<CohomologyTable, CohomologyError> {
    require_valid(b)?;
    let data = all_slot_data(b);
    dolbeault_from(b, &data)
}

/// `H_∂ = ker ∂ / im ∂` per slot.
pub fn anti_dolbeault(b: &Bicomplex) -> Result<CohomologyTable, CohomologyError> {
    require_del(b)?;
    require_valid(b)?;
    anti_from(b, &all_slot_data(b))
}

/// Cohomology of the total complex, keyed by degree `0..=2n`.
pub fn derham(b: &Bicomplex) -> Result<CohomologyTable, CohomologyError> {
    require_del(b)?;
    require_valid(b)?;
    let total = total_differential(b)?;
    let mut groups = BTreeMap::new();
    for k in 0..=total.top_degree() {
        let num = total.map(k).kernel_basis();
        let den = total.incoming(k).image_basis();
        groups.insert(Key::Degree(k), Quotient::new(num, den).map_err(invariant)?);
    }
    Ok(CohomologyTable::new(Flavor::DeRham, b.n(), groups))
}

/// `(ker ∂ ∩ ker ∂̄) / im ∂∂̄` per slot.
pub fn bott_chern(b: &Bicomplex) -> Result<CohomologyTable, CohomologyError> {
    require_del(b)?;
    require_valid(b)?;
    bott_chern_from(b, &all_slot_data(b))
}

/// `ker ∂∂̄ / (im ∂ + im ∂̄)` per slot.
pub fn aeppli(b: &Bicomplex) -> Result<CohomologyTable, CohomologyError> {
    require_del(b)?;
    require_valid(b)?;
    aeppli_from(b, &all_slot_data(b))
}

/// The groups fitting into `0 → A → B → H_∂̄ → H_A → C → 0`.
///
/// `c` is `ker ∂∂̄ / (ker ∂̄ + im ∂)`, the cokernel of `H_∂̄ → H_A`.
/// `c_aeppli` is `ker ∂∂̄ / (im ∂ + im ∂̄)`, which is Aeppli cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcGroups {
    pub a: CohomologyTable,
    pub b: CohomologyTable,
    pub c: CohomologyTable,
    pub c_aeppli: CohomologyTable,
}

pub(crate) fn abc_from(b: &Bicomplex, data: &BTreeMap<Bidegree, SlotData>) -> Result<AbcGroups, CohomologyError> {
    let a = bigraded_table(Flavor::A, b, data, |s| {
        Ok((s.im_del.intersect(&s.im_delbar)?, s.im_deldelbar.clone()))
    })?;
    let bg = bigraded_table(Flavor::B, b, data, |s| {
        Ok((s.im_del.intersect(&s.ker_delbar)?, s.im_deldelbar.clone()))
    })?;
    let c = bigraded_table(Flavor::C, b, data, |s| {
        Ok((s.ker_deldelbar.clone(), s.ker_delbar.sum(&s.im_del)?))
    })?;
    let c_aeppli = bigraded_table(Flavor::CAeppli, b, data, |s| {
        Ok((s.ker_deldelbar.clone(), s.im_del.sum(&s.im_delbar)?))
    })?;
    let ae = aeppli_from(b, data)?;
    if c_aeppli.groups != ae.groups {
        return Err(CohomologyError::Invariant("C_aeppli differs from Aeppli".into()));
    }
    Ok(AbcGroups { a, b: bg, c, c_aeppli })
}

pub fn abc_groups(b: &Bicomplex) -> Result<AbcGroups, CohomologyError> {
    require_del(b)?;
    require_valid(b)?;
    abc_from(b, &all_slot_data(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{BigradedSpace, GradedOperator, Parity, Shift};
    use crate::exactmath::ExactMatrix;

    fn grid_space(n: usize, dim: usize) -> BigradedSpace {
        let dims = (0..=n)
            .flat_map(|p| (0..=n).map(move |q| (Bidegree::new(p, q), dim)))
            .collect();
        BigradedSpace::from_dims(n, &dims).unwrap()
    }

    #[test]
    fn zero_differentials_give_slot_dimensions() {
        let b = Bicomplex::trivial(grid_space(1, 2), true);
        for t in [dolbeault(&b), anti_dolbeault(&b), bott_chern(&b), aeppli(&b)] {
            let t = t.unwrap();
            assert!(t.dims().values().all(|&d| d == 2));
        }
        assert_eq!(
            derham(&b).unwrap().dims_by_name(),
            [("0", 2), ("1", 4), ("2", 2)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect()
        );
        let abc = abc_groups(&b).unwrap();
        assert_eq!(abc.a.total(), 0);
        assert_eq!(abc.b.total(), 0);
        assert_eq!(abc.c.total(), 0);
        assert_eq!(abc.c_aeppli.total(), 8);
    }

    #[test]
    fn dolbeault_only_complex_rejects_del_flavors() {
        let b = Bicomplex::trivial(grid_space(1, 1), false);
        assert!(dolbeault(&b).is_ok());
        assert!(matches!(
            aeppli(&b),
            Err(CohomologyError::Complex(ComplexError::MissingDel))
        ));
        assert!(matches!(
            derham(&b),
            Err(CohomologyError::Complex(ComplexError::MissingDel))
        ));
    }

    #[test]
    fn invalid_complex_rejected() {
        let mut space = BigradedSpace::new(2);
        for q in 0..=2 {
            space.add_slot(Bidegree::new(0, q), vec![format!("x{q}")]).unwrap();
        }
        let mut delbar = GradedOperator::zero(Shift::DELBAR, Parity::Odd);
        delbar.set_block(Bidegree::new(0, 0), ExactMatrix::from_i64(&[&[1]]));
        delbar.set_block(Bidegree::new(0, 1), ExactMatrix::from_i64(&[&[1]]));
        let b = Bicomplex::new(space, None, delbar).unwrap();
        assert!(matches!(dolbeault(&b), Err(CohomologyError::Invalid(_))));
    }

    #[test]
    fn single_arrow_kills_both_ends() {
        let mut space = BigradedSpace::new(1);
        space.add_slot(Bidegree::new(0, 0), vec!["x".into()]).unwrap();
        space.add_slot(Bidegree::new(0, 1), vec!["y".into()]).unwrap();
        let mut delbar = GradedOperator::zero(Shift::DELBAR, Parity::Odd);
        delbar.set_block(Bidegree::new(0, 0), ExactMatrix::from_i64(&[&[2]]));
        let b = Bicomplex::new(space, Some(GradedOperator::zero(Shift::DEL, Parity::Odd)), delbar).unwrap();
        assert_eq!(dolbeault(&b).unwrap().total(), 0);
        assert_eq!(anti_dolbeault(&b).unwrap().total(), 2);
        assert_eq!(bott_chern(&b).unwrap().total(), 1);
        assert_eq!(aeppli(&b).unwrap().total(), 1);
        assert_eq!(derham(&b).unwrap().total(), 0);
    }
}
