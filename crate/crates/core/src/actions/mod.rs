//! Contractions, Lie derivatives and their action on cohomology.

mod homotopy;

use std::collections::BTreeMap;
use std::fmt;

use crate::cohomology::{aeppli, bott_chern, derham, dolbeault, CohomologyError, CohomologyTable, Flavor, Key};
use crate::complexes::{
    dc_operator, op_anticommutator, Bicomplex, ComplexError, ExteriorAlgebra, GradedOperator, OperatorSum, Parity,
    Shift,
};
use crate::exactmath::{induced_map, ExactMatrix, GaussianRational};

pub use homotopy::{delta_operator, homotopy_coefficients, HomotopySolution, SolutionField};

pub const IOTA10: Shift = Shift::new(-1, 0);
pub const IOTA01: Shift = Shift::new(0, -1);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("{name} has shift {found}, expected {expected}")]
    WrongShift {
        name: &'static str,
        found: Shift,
        expected: Shift,
    },
    #[error("a = b = 0: no operator delta exists")]
    BothZero,
    #[error("a^2 + b^2 = 0 for a = {a}, b = {b}: the system is singular")]
    Degenerate {
        a: Box<GaussianRational>,
        b: Box<GaussianRational>,
    },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Contraction with a real vector field, split as `ι = ι^{1,0} + ι^{0,1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    name: String,
    iota10: GradedOperator,
    iota01: GradedOperator,
}

impl Contraction {
    pub fn new(name: impl Into<String>, iota10: GradedOperator, iota01: GradedOperator) -> Result<Self, ActionError> {
        for (label, op, expected) in [("iota10", &iota10, IOTA10), ("iota01", &iota01, IOTA01)] {
            if op.shift() != expected {
                return Err(ActionError::WrongShift {
                    name: label,
                    found: op.shift(),
                    expected,
                });
            }
        }
        Ok(Contraction {
            name: name.into(),
            iota10,
            iota01,
        })
    }

    pub fn zero(name: impl Into<String>) -> Self {
        Contraction {
            name: name.into(),
            iota10: GradedOperator::zero(IOTA10, Parity::Odd),
            iota01: GradedOperator::zero(IOTA01, Parity::Odd),
        }
    }

    /// Contraction on an exterior algebra taking generator `k` to
    /// `values[k]`.
    pub fn from_values(name: impl Into<String>, algebra: &ExteriorAlgebra, values: &[GaussianRational]) -> Self {
        let mut parts = algebra.contraction_parts(values);
        let take = |parts: &mut BTreeMap<Shift, GradedOperator>, s: Shift| {
            parts.remove(&s).unwrap_or_else(|| GradedOperator::zero(s, Parity::Odd))
        };
        let iota10 = take(&mut parts, IOTA10);
        let iota01 = take(&mut parts, IOTA01);
        debug_assert!(parts.is_empty(), "generators have type (1,0) or (0,1)");
        Contraction {
            name: name.into(),
            iota10,
            iota01,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn iota10(&self) -> &GradedOperator {
        &self.iota10
    }

    pub fn iota01(&self) -> &GradedOperator {
        &self.iota01
    }

    pub fn total(&self) -> OperatorSum {
        OperatorSum::from_parts([self.iota10.clone(), self.iota01.clone()])
    }

    /// `ι^{1,0}² = ι^{0,1}² = {ι^{1,0}, ι^{0,1}} = 0`.
    pub fn squares_to_zero(&self) -> bool {
        self.iota10.compose(&self.iota10).is_zero()
            && self.iota01.compose(&self.iota01).is_zero()
            && op_anticommutator(&self.iota10, &self.iota01).is_zero()
    }

    /// Contraction with `JX`: `i ι^{1,0} − i ι^{0,1}`.
    pub fn j_rotated(&self) -> Contraction {
        let i = GaussianRational::i();
        Contraction {
            name: format!("J{}", self.name),
            iota10: self.iota10.scale(&i),
            iota01: self.iota01.scale(&-i),
        }
    }
}

/// `L_X` with its bidegree-changing components kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieDerivative {
    pub operator: OperatorSum,
}

impl LieDerivative {
    /// True when a component other than shift `(0,0)` is nonzero.
    pub fn mixed_type(&self) -> bool {
        self.operator.shifts().iter().any(|&s| s != Shift::ZERO)
    }

    /// The bidegree-preserving part.
    pub fn pure_part(&self) -> GradedOperator {
        self.operator
            .component(Shift::ZERO)
            .cloned()
            .unwrap_or_else(|| GradedOperator::zero(Shift::ZERO, Parity::Even))
    }

    pub fn warning(&self) -> Option<String> {
        self.mixed_type().then(|| {
            let shifts: Vec<String> = self.operator.shifts().iter().map(Shift::to_string).collect();
            format!("Lie derivative mixes bidegrees: components {}", shifts.join(", "))
        })
    }
}

/// `L_X = {d, ι_X}`.
pub fn lie_derivative(b: &Bicomplex, c: &Contraction) -> Result<LieDerivative, ActionError> {
    let d = b.d()?;
    Ok(LieDerivative {
        operator: d.anticommutator(&c.total()),
    })
}

/// `L_{JX} = −{d^c, ι_X}`.
pub fn lie_derivative_j(b: &Bicomplex, c: &Contraction) -> Result<LieDerivative, ActionError> {
    let dc = dc_operator(b)?;
    Ok(LieDerivative {
        operator: dc.anticommutator(&c.total()).scale(&GaussianRational::from(-1)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolomorphyReport {
    pub pure_type: bool,
    pub commutes_with_delbar: bool,
    /// `None` for complexes without `∂`.
    pub commutes_with_del: Option<bool>,
}

impl HolomorphyReport {
    pub fn passed(&self) -> bool {
        self.pure_type && self.commutes_with_delbar && self.commutes_with_del.unwrap_or(true)
    }
}

impl fmt::Display for HolomorphyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "preserves bidegree: {}; [L, delbar] = 0: {}; [L, del] = 0: {}",
            self.pure_type,
            self.commutes_with_delbar,
            match self.commutes_with_del {
                Some(v) => v.to_string(),
                None => "n/a".to_string(),
            }
        )
    }
}

/// `L` preserves bidegree and commutes with `∂̄` (and `∂` when present).
pub fn holomorphy_check(b: &Bicomplex, l: &OperatorSum) -> HolomorphyReport {
    let pure_type = l.shifts().iter().all(|&s| s == Shift::ZERO);
    let delbar = OperatorSum::from(b.delbar().clone());
    let commutes_with_delbar = l.commutator(&delbar).is_zero();
    let commutes_with_del = b
        .del()
        .ok()
        .map(|del| l.commutator(&OperatorSum::from(del.clone())).is_zero());
    HolomorphyReport {
        pure_type,
        commutes_with_delbar,
        commutes_with_del,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applicability {
    Applicable,
    NotApplicable(String),
}

/// Induced maps on one cohomology flavor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlavorAction {
    pub flavor: Flavor,
    pub applicability: Applicability,
    pub maps: BTreeMap<Key, ExactMatrix>,
}

impl FlavorAction {
    /// `None` when the flavor is not applicable.
    pub fn is_trivial(&self) -> Option<bool> {
        match self.applicability {
            Applicability::Applicable => Some(self.maps.values().all(ExactMatrix::is_zero)),
            Applicability::NotApplicable(_) => None,
        }
    }

    /// Keys whose induced map is nonzero.
    pub fn nontrivial_keys(&self) -> Vec<Key> {
        self.maps
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(k, _)| *k)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionVerdict {
    pub flavors: Vec<FlavorAction>,
}

impl ActionVerdict {
    pub fn flavor(&self, flavor: Flavor) -> Option<&FlavorAction> {
        self.flavors.iter().find(|f| f.flavor == flavor)
    }

    /// Trivial on every applicable flavor.
    pub fn is_trivial(&self) -> bool {
        self.flavors.iter().all(|f| f.is_trivial() != Some(false))
    }
}

impl fmt::Display for ActionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .flavors
            .iter()
            .map(|a| match (&a.applicability, a.is_trivial()) {
                (Applicability::NotApplicable(why), _) => format!("{}: n/a ({why})", a.flavor),
                (_, Some(true)) => format!("{}: trivial", a.flavor),
                _ => {
                    let keys: Vec<String> = a.nontrivial_keys().iter().map(|k| format!("({k})")).collect();
                    format!("{}: NONTRIVIAL at {}", a.flavor, keys.join(" "))
                }
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

fn bigraded_action(table: &CohomologyTable, b: &Bicomplex, l: &GradedOperator) -> Result<FlavorAction, ActionError> {
    let mut maps = BTreeMap::new();
    for bd in b.space().grid() {
        let key = Key::Slot(bd);
        let g = table.group(key).expect("tables cover the grid");
        let block = l.block_or_zero(b.space(), bd);
        match induced_map(&block, g, g) {
            Ok(m) => {
                maps.insert(key, m);
            }
            Err(e) => {
                return Ok(FlavorAction {
                    flavor: table.flavor(),
                    applicability: Applicability::NotApplicable(format!("not a chain map at ({key}): {e}")),
                    maps: BTreeMap::new(),
                })
            }
        }
    }
    Ok(FlavorAction {
        flavor: table.flavor(),
        applicability: Applicability::Applicable,
        maps,
    })
}

fn not_applicable(flavor: Flavor, why: impl Into<String>) -> FlavorAction {
    FlavorAction {
        flavor,
        applicability: Applicability::NotApplicable(why.into()),
        maps: BTreeMap::new(),
    }
}

/// Maps induced by the even operator `l` on Dolbeault, Bott-Chern, Aeppli
/// and de Rham cohomology. Bigraded flavors need `l` to preserve bidegree;
/// a flavor where `l` is not a chain map is marked not applicable.
type TableFn = fn(&Bicomplex) -> Result<CohomologyTable, CohomologyError>;

pub fn induced_on_cohomology(b: &Bicomplex, l: &OperatorSum) -> Result<ActionVerdict, ActionError> {
    let pure = l.shifts().iter().all(|&s| s == Shift::ZERO);
    let block = l
        .component(Shift::ZERO)
        .cloned()
        .unwrap_or_else(|| GradedOperator::zero(Shift::ZERO, Parity::Even));
    let mut flavors = Vec::new();
    let bigraded: [(Flavor, TableFn); 3] = [
        (Flavor::Dolbeault, dolbeault),
        (Flavor::BottChern, bott_chern),
        (Flavor::Aeppli, aeppli),
    ];
    for (flavor, compute) in bigraded {
        if !pure {
            flavors.push(not_applicable(flavor, "operator does not preserve bidegree"));
        } else if flavor != Flavor::Dolbeault && !b.has_del() {
            flavors.push(not_applicable(flavor, "complex carries no del"));
        } else {
            flavors.push(bigraded_action(&compute(b)?, b, &block)?);
        }
    }
    if b.has_del() {
        let dr = derham(b)?;
        let mut maps = BTreeMap::new();
        let mut failure = None;
        for k in 0..=2 * b.n() {
            let key = Key::Degree(k);
            let g = dr.group(key).expect("degrees 0..=2n");
            let t = l.total_matrix(b.space(), k, 0);
            match induced_map(&t, g, g) {
                Ok(m) => {
                    maps.insert(key, m);
                }
                Err(e) => {
                    failure = Some(format!("not a chain map in degree {k}: {e}"));
                    break;
                }
            }
        }
        flavors.push(match failure {
            None => FlavorAction {
                flavor: Flavor::DeRham,
                applicability: Applicability::Applicable,
                maps,
            },
            Some(why) => not_applicable(Flavor::DeRham, why),
        });
    } else {
        flavors.push(not_applicable(Flavor::DeRham, "complex carries no del"));
    }
    Ok(ActionVerdict { flavors })
}

/// Outcome of the Cartan-formula identities for one contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanReport {
    pub contraction_squares_to_zero: bool,
    /// `L_X` equals `D ι + ι D` on every total degree.
    pub lie_matches_total: bool,
    /// `L_{JX}` equals `−(D^c ι + ι D^c)` on every total degree.
    pub lie_j_matches_total: bool,
    /// `−{d^c, ι}` equals its expansion
    /// `i{∂,ι^{1,0}} + i{∂,ι^{0,1}} − i{∂̄,ι^{1,0}} − i{∂̄,ι^{0,1}}`.
    pub lie_j_matches_expansion: bool,
    /// `L_{JX} = {d, ι_{JX}}`; `None` unless `L_X` is holomorphic.
    pub lie_j_matches_rotated: Option<bool>,
}

impl CartanReport {
    pub fn passed(&self) -> bool {
        self.contraction_squares_to_zero
            && self.lie_matches_total
            && self.lie_j_matches_total
            && self.lie_j_matches_expansion
            && self.lie_j_matches_rotated.unwrap_or(true)
    }
}

fn matches_total(b: &Bicomplex, lhs: &OperatorSum, d: &OperatorSum, iota: &OperatorSum, sign: i64) -> bool {
    let space = b.space();
    (0..=2 * b.n()).all(|k| {
        let before = match k.checked_sub(1) {
            Some(km) => d.total_matrix(space, km, 1).mul(&iota.total_matrix(space, k, -1)),
            None => ExactMatrix::zeros(space.total_dim(0), space.total_dim(0)),
        };
        let after = iota.total_matrix(space, k + 1, -1).mul(&d.total_matrix(space, k, 1));
        lhs.total_matrix(space, k, 0) == before.add(&after).scale(&GaussianRational::from(sign))
    })
}

pub fn cartan_report(b: &Bicomplex, c: &Contraction) -> Result<CartanReport, ActionError> {
    let lx = lie_derivative(b, c)?;
    let ljx = lie_derivative_j(b, c)?;
    let d = b.d()?;
    let dc = dc_operator(b)?;
    let iota = c.total();
    let del = b.del()?;
    let delbar = b.delbar();
    let i = GaussianRational::i();
    let expansion = OperatorSum::from_parts([
        op_anticommutator(del, c.iota10()).scale(&i),
        op_anticommutator(del, c.iota01()).scale(&i),
        op_anticommutator(delbar, c.iota10()).scale(&-i.clone()),
        op_anticommutator(delbar, c.iota01()).scale(&-i.clone()),
    ]);
    let holomorphic = holomorphy_check(b, &lx.operator).passed();
    let rotated = holomorphic.then(|| {
        let r = lie_derivative(b, &c.j_rotated()).expect("del present");
        r.operator == ljx.operator
    });
    Ok(CartanReport {
        contraction_squares_to_zero: c.squares_to_zero(),
        lie_matches_total: matches_total(b, &lx.operator, &d, &iota, 1),
        lie_j_matches_total: matches_total(b, &ljx.operator, &dc, &iota, -1),
        lie_j_matches_expansion: ljx.operator == expansion,
        lie_j_matches_rotated: rotated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{from_structure_equations, Bidegree, DifferentialDecl, GeneratorDecl, StructureSpec, Term};

    fn iwasawa() -> crate::complexes::StructureModel {
        let g = |name: &str| GeneratorDecl {
            name: name.into(),
            bidegree: Bidegree::new(1, 0),
        };
        from_structure_equations(&StructureSpec {
            name: "iwasawa".into(),
            n: 3,
            generators: vec![g("f1"), g("f2"), g("f3")],
            differentials: vec![DifferentialDecl {
                generator: "f3".into(),
                terms: vec![Term {
                    coeff: GaussianRational::from(-1),
                    factors: vec!["f1".into(), "f2".into()],
                }],
            }],
        })
        .unwrap()
    }

    fn dual_to(model: &crate::complexes::StructureModel, name: &str) -> Contraction {
        let alg = &model.algebra;
        let mut values = vec![GaussianRational::zero(); alg.generators().len()];
        values[alg.generator_index(name).unwrap()] = GaussianRational::one();
        values[alg.generator_index(&format!("~{name}")).unwrap()] = GaussianRational::one();
        Contraction::from_values(name, alg, &values)
    }

    fn apply(
        model: &crate::complexes::StructureModel,
        op: &OperatorSum,
        name: &str,
    ) -> (Bidegree, Vec<GaussianRational>) {
        let (bd, v) = model.algebra.vector(&[name]).unwrap();
        let comp = op.component(Shift::ZERO).unwrap();
        (bd, comp.block_or_zero(model.bicomplex.space(), bd).mul_vec(&v))
    }

    #[test]
    fn zero_contraction_gives_zero() {
        let m = iwasawa();
        let c = Contraction::zero("none");
        assert!(lie_derivative(&m.bicomplex, &c).unwrap().operator.is_zero());
        assert!(lie_derivative_j(&m.bicomplex, &c).unwrap().operator.is_zero());
    }

    #[test]
    fn central_field_acts_by_zero() {
        let m = iwasawa();
        let c = dual_to(&m, "f3");
        let l = lie_derivative(&m.bicomplex, &c).unwrap();
        assert!(l.operator.is_zero());
        let report = cartan_report(&m.bicomplex, &c).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn phi1_dual_field_on_generators() {
        let m = iwasawa();
        let c = dual_to(&m, "f1");
        let l = lie_derivative(&m.bicomplex, &c).unwrap();
        assert!(!l.mixed_type());
        let (_, f2) = m.algebra.vector(&["f2"]).unwrap();
        let neg_f2: Vec<_> = f2.iter().map(|x| -x.clone()).collect();
        assert_eq!(apply(&m, &l.operator, "f3").1, neg_f2);
        let (_, cf2) = m.algebra.vector(&["~f2"]).unwrap();
        let neg_cf2: Vec<_> = cf2.iter().map(|x| -x.clone()).collect();
        assert_eq!(apply(&m, &l.operator, "~f3").1, neg_cf2);
        assert!(apply(&m, &l.operator, "f1").1.iter().all(GaussianRational::is_zero));

        let lj = lie_derivative_j(&m.bicomplex, &c).unwrap();
        let i = GaussianRational::i();
        let want: Vec<_> = f2.iter().map(|x| -(&i * x)).collect();
        assert_eq!(apply(&m, &lj.operator, "f3").1, want);
        let want: Vec<_> = cf2.iter().map(|x| &i * x).collect();
        assert_eq!(apply(&m, &lj.operator, "~f3").1, want);

        let report = cartan_report(&m.bicomplex, &c).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.lie_j_matches_rotated, Some(true));
    }

    #[test]
    fn holomorphy_rejects_mixed_shift() {
        let m = iwasawa();
        let mut op = GradedOperator::zero(Shift::new(-1, 1), Parity::Even);
        let (bd, _) = m.algebra.vector(&["f1"]).unwrap();
        let src = m.bicomplex.space().dim(bd);
        let dst = m.bicomplex.space().dim(Bidegree::new(0, 1));
        op.set_block(bd, ExactMatrix::from_fn(dst, src, |_, _| GaussianRational::one()));
        let report = holomorphy_check(&m.bicomplex, &OperatorSum::from(op));
        assert!(!report.pure_type);
        assert!(!report.passed());
        assert!(holomorphy_check(&m.bicomplex, &OperatorSum::zero()).passed());
    }

    #[test]
    fn verdicts_for_iwasawa_fields() {
        let m = iwasawa();
        let central = lie_derivative(&m.bicomplex, &dual_to(&m, "f3")).unwrap();
        let v = induced_on_cohomology(&m.bicomplex, &central.operator).unwrap();
        assert!(v.is_trivial());
        assert_eq!(v.flavors.len(), 4);

        let phi1 = lie_derivative(&m.bicomplex, &dual_to(&m, "f1")).unwrap();
        let v = induced_on_cohomology(&m.bicomplex, &phi1.operator).unwrap();
        let dol = v.flavor(Flavor::Dolbeault).unwrap();
        assert_eq!(dol.is_trivial(), Some(false));
        assert!(dol.nontrivial_keys().contains(&Key::Slot(Bidegree::new(1, 0))));
    }

    #[test]
    fn wrong_shift_rejected() {
        let bad = GradedOperator::zero(Shift::new(1, 0), Parity::Odd);
        let ok = GradedOperator::zero(IOTA01, Parity::Odd);
        assert!(matches!(
            Contraction::new("x", bad, ok),
            Err(ActionError::WrongShift { .. })
        ));
    }
}
