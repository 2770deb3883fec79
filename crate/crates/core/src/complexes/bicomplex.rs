use crate::exactmath::{ExactMatrix, GaussianRational};

use super::grading::{Bidegree, BigradedSpace, Parity, Shift};
use super::operator::{op_anticommutator, GradedOperator, OperatorSum};
use super::ComplexError;

/// A bigraded space with `∂̄` of bidegree `(0,1)` and, optionally, `∂` of
/// bidegree `(1,0)`. Dolbeault-only complexes carry `∂̄` alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicomplex {
    space: BigradedSpace,
    del: Option<GradedOperator>,
    delbar: GradedOperator,
}

impl Bicomplex {
    /// Assembles a bicomplex after checking block shapes. The differential
    /// identities are not enforced here; see [`Bicomplex::validate`].
    pub fn new(
        space: BigradedSpace,
        del: Option<GradedOperator>,
        delbar: GradedOperator,
    ) -> Result<Self, ComplexError> {
        if delbar.shift() != Shift::DELBAR {
            return Err(ComplexError::WrongShift {
                name: "delbar",
                found: delbar.shift(),
            });
        }
        delbar.check_shapes(&space)?;
        if let Some(d) = &del {
            if d.shift() != Shift::DEL {
                return Err(ComplexError::WrongShift {
                    name: "del",
                    found: d.shift(),
                });
            }
            d.check_shapes(&space)?;
        }
        Ok(Bicomplex { space, del, delbar })
    }

    /// Bicomplex with all differentials zero.
    pub fn trivial(space: BigradedSpace, has_del: bool) -> Self {
        Bicomplex {
            space,
            del: has_del.then(|| GradedOperator::zero(Shift::DEL, Parity::Odd)),
            delbar: GradedOperator::zero(Shift::DELBAR, Parity::Odd),
        }
    }

    pub fn space(&self) -> &BigradedSpace {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn has_del(&self) -> bool {
        self.del.is_some()
    }

    pub fn del(&self) -> Result<&GradedOperator, ComplexError> {
        self.del.as_ref().ok_or(ComplexError::MissingDel)
    }

    pub fn delbar(&self) -> &GradedOperator {
        &self.delbar
    }

    /// Copy of this complex with `∂` dropped.
    pub fn dolbeault_part(&self) -> Bicomplex {
        Bicomplex {
            space: self.space.clone(),
            del: None,
            delbar: self.delbar.clone(),
        }
    }

    /// `d = ∂ + ∂̄`.
    pub fn d(&self) -> Result<OperatorSum, ComplexError> {
        Ok(OperatorSum::from_parts([self.del()?.clone(), self.delbar.clone()]))
    }

    pub fn del_block(&self, src: Bidegree) -> ExactMatrix {
        match &self.del {
            Some(d) => d.block_or_zero(&self.space, src),
            None => ExactMatrix::zeros(self.space.dim(Bidegree::new(src.p + 1, src.q)), self.space.dim(src)),
        }
    }

    pub fn delbar_block(&self, src: Bidegree) -> ExactMatrix {
        self.delbar.block_or_zero(&self.space, src)
    }

    /// Checks `∂̄² = 0` and, when `∂` is present, `∂² = 0` and
    /// `∂∂̄ + ∂̄∂ = 0`, slot by slot.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let mut check = |identity: Identity, op: GradedOperator| {
            for (slot, m) in op.blocks() {
                if !m.is_zero() {
                    failures.push(IdentityFailure {
                        identity,
                        slot,
                        matrix: m.clone(),
                    });
                }
            }
        };
        check(Identity::DelbarSquared, self.delbar.compose(&self.delbar));
        if let Some(del) = &self.del {
            check(Identity::DelSquared, del.compose(del));
            check(
                Identity::Anticommute,
                del.compose(&self.delbar).add(&self.delbar.compose(del)),
            );
        }
        failures.sort_by_key(|f| (f.slot, f.identity));
        ValidationReport { failures }
    }

    /// Componentwise complex conjugate: slot `(p,q)` becomes `(q,p)`, `∂`
    /// and `∂̄` swap roles. Only meaningful when the basis of each slot is
    /// the conjugate of the basis of the mirrored slot.
    pub fn conjugate(&self) -> Result<Bicomplex, ComplexError> {
        let del = self.del()?;
        let mut space = BigradedSpace::new(self.space.n());
        for (bd, _) in self.space.slots() {
            let labels = self.space.labels(bd).iter().map(|l| format!("conj({l})")).collect();
            space.add_slot(bd.conjugate(), labels)?;
        }
        Bicomplex::new(space, Some(self.delbar.conjugate()), del.conjugate())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    DelSquared,
    DelbarSquared,
    Anticommute,
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Identity::DelSquared => "del^2 = 0",
            Identity::DelbarSquared => "delbar^2 = 0",
            Identity::Anticommute => "del delbar + delbar del = 0",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: Identity,
    /// Source slot of the offending block.
    pub slot: Bidegree,
    pub matrix: ExactMatrix,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<IdentityFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&IdentityFailure> {
        self.failures.first()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.first_failure() {
            None => write!(f, "all differential identities hold"),
            Some(x) => write!(f, "{} fails at slot {}: {}", x.identity, x.slot, x.matrix),
        }
    }
}

/// Single-graded complex `D_k = ⊕_{p+q=k} (∂ + ∂̄)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalComplex {
    dims: Vec<usize>,
    maps: Vec<ExactMatrix>,
}

impl TotalComplex {
    pub fn from_maps(dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Self {
        assert_eq!(dims.len(), maps.len());
        TotalComplex { dims, maps }
    }

    /// Highest degree carried (`2n`).
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// `D_k : C^k → C^{k+1}`.
    pub fn map(&self, k: usize) -> &ExactMatrix {
        &self.maps[k]
    }

    /// Matrix into degree `k` (zero matrix for `k = 0`).
    pub fn incoming(&self, k: usize) -> ExactMatrix {
        if k == 0 {
            ExactMatrix::zeros(self.dim(0), 0)
        } else {
            self.maps[k - 1].clone()
        }
    }

    pub fn squares_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }
}

pub fn total_differential(b: &Bicomplex) -> Result<TotalComplex, ComplexError> {
    let d = b.d()?;
    let space = b.space();
    let top = space.max_total_degree();
    let dims = (0..=top).map(|k| space.total_dim(k)).collect();
    let maps = (0..=top).map(|k| d.total_matrix(space, k, 1)).collect();
    Ok(TotalComplex { dims, maps })
}

/// `d^c = i(∂̄ − ∂)`: components `−i∂` (shift (1,0)) and `i∂̄` (shift (0,1)).
pub fn dc_operator(b: &Bicomplex) -> Result<OperatorSum, ComplexError> {
    let i = GaussianRational::i();
    Ok(OperatorSum::from_parts([
        b.del()?.scale(&-i.clone()),
        b.delbar().scale(&i),
    ]))
}

/// Weil operator: `i^{p−q}` on slot `(p,q)`.
pub fn weil_j(space: &BigradedSpace) -> GradedOperator {
    GradedOperator::diagonal(space, |bd| GaussianRational::i_pow(bd.p as i64 - bd.q as i64))
}

pub fn weil_j_inverse(space: &BigradedSpace) -> GradedOperator {
    GradedOperator::diagonal(space, |bd| GaussianRational::i_pow(bd.q as i64 - bd.p as i64))
}

/// `(−1)^{p+q}` on slot `(p,q)`.
pub fn degree_sign(space: &BigradedSpace) -> GradedOperator {
    GradedOperator::diagonal(space, |bd| {
        GaussianRational::from(if bd.total() % 2 == 0 { 1 } else { -1 })
    })
}

/// Operator identities of a full bicomplex, each evaluated on the whole
/// space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    pub del_squared: bool,
    pub delbar_squared: bool,
    pub anticommute: bool,
    pub d_squared: bool,
    pub dc_squared: bool,
    pub d_dc_anticommute: bool,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.del_squared
            && self.delbar_squared
            && self.anticommute
            && self.d_squared
            && self.dc_squared
            && self.d_dc_anticommute
    }

    /// Names of the identities that fail.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.del_squared, "del^2 = 0"),
            (self.delbar_squared, "delbar^2 = 0"),
            (self.anticommute, "del delbar + delbar del = 0"),
            (self.d_squared, "d^2 = 0"),
            (self.dc_squared, "(d^c)^2 = 0"),
            (self.d_dc_anticommute, "d d^c + d^c d = 0"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

pub fn structural_identities(b: &Bicomplex) -> Result<StructuralReport, ComplexError> {
    let del = b.del()?;
    let d = b.d()?;
    let dc = dc_operator(b)?;
    Ok(StructuralReport {
        del_squared: del.compose(del).is_zero(),
        delbar_squared: b.delbar.compose(&b.delbar).is_zero(),
        anticommute: op_anticommutator(del, &b.delbar).is_zero(),
        d_squared: d.compose(&d).is_zero(),
        dc_squared: dc.compose(&dc).is_zero(),
        d_dc_anticommute: d.anticommutator(&dc).is_zero(),
    })
}

/// How the two J-conjugation formulas for `d^c` compare with `i(∂̄ − ∂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JConventionReport {
    /// `s` with `J d J⁻¹ = s · d^c`, or `None` if it is not a multiple.
    pub conjugation_sign: Option<i64>,
    /// `s` with `(−1)^{|α|} J d J = s · d^c`.
    pub signed_conjugation_sign: Option<i64>,
}

impl std::fmt::Display for JConventionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |s: Option<i64>| match s {
            Some(1) => "+d^c".to_string(),
            Some(-1) => "-d^c".to_string(),
            _ => "not proportional to d^c".to_string(),
        };
        write!(
            f,
            "J d J^-1 = {}; (-1)^|a| J d J = {} (d^c := i(delbar - del))",
            show(self.conjugation_sign),
            show(self.signed_conjugation_sign)
        )
    }
}

pub fn j_convention_report(b: &Bicomplex) -> Result<JConventionReport, ComplexError> {
    let d = b.d()?;
    let dc = dc_operator(b)?;
    let space = b.space();
    let j = OperatorSum::from(weil_j(space));
    let j_inv = OperatorSum::from(weil_j_inverse(space));
    let sign = OperatorSum::from(degree_sign(space));
    let conj = j.compose(&d).compose(&j_inv);
    let signed = j.compose(&d).compose(&j).compose(&sign);
    let compare = |x: &OperatorSum| {
        if x.sub(&dc).is_zero() {
            Some(1)
        } else if x.add(&dc).is_zero() {
            Some(-1)
        } else {
            None
        }
    };
    Ok(JConventionReport {
        conjugation_sign: compare(&conj),
        signed_conjugation_sign: compare(&signed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space_1() -> BigradedSpace {
        let mut s = BigradedSpace::new(1);
        s.add_slot(Bidegree::new(0, 0), vec!["1".into()]).unwrap();
        s.add_slot(Bidegree::new(0, 1), vec!["y".into()]).unwrap();
        s.add_slot(Bidegree::new(1, 0), vec!["x".into()]).unwrap();
        s.add_slot(Bidegree::new(1, 1), vec!["xy".into()]).unwrap();
        s
    }

    #[test]
    fn zero_differentials_validate() {
        let b = Bicomplex::trivial(space_1(), true);
        assert!(b.validate().passed());
        let t = total_differential(&b).unwrap();
        assert!((0..=2).all(|k| t.map(k).is_zero()));
        assert!(dc_operator(&b).unwrap().is_zero());
    }

    #[test]
    fn nonzero_delbar_square_names_slot() {
        let mut s = BigradedSpace::new(2);
        for q in 0..3 {
            s.add_slot(Bidegree::new(0, q), vec![format!("v{q}")]).unwrap();
        }
        let mut delbar = GradedOperator::zero(Shift::DELBAR, Parity::Odd);
        delbar.set_block(Bidegree::new(0, 0), ExactMatrix::from_i64(&[&[1]]));
        delbar.set_block(Bidegree::new(0, 1), ExactMatrix::from_i64(&[&[1]]));
        let b = Bicomplex::new(s, None, delbar).unwrap();
        let report = b.validate();
        assert!(!report.passed());
        let first = report.first_failure().unwrap();
        assert_eq!(first.identity, Identity::DelbarSquared);
        assert_eq!(first.slot, Bidegree::new(0, 0));
    }

    #[test]
    fn weil_j_scalars() {
        let s = space_1();
        let j = weil_j(&s);
        let at = |p, q| j.block(Bidegree::new(p, q)).unwrap().get(0, 0).clone();
        assert_eq!(at(1, 1), GaussianRational::one());
        assert_eq!(at(1, 0), GaussianRational::i());
        assert_eq!(at(0, 1), -GaussianRational::i());
        let j4 = j.compose(&j).compose(&j).compose(&j);
        assert_eq!(j4, GradedOperator::identity(&s));
    }

    #[test]
    fn missing_del_is_an_error() {
        let b = Bicomplex::trivial(space_1(), false);
        assert_eq!(total_differential(&b).unwrap_err(), ComplexError::MissingDel);
        assert_eq!(dc_operator(&b).unwrap_err(), ComplexError::MissingDel);
    }
}
