//! Invariant-form models of Vaisman manifolds built from basic cohomology
//! and the Lefschetz operator of the transverse Kähler class.

mod cone;
mod theorem;

use std::collections::BTreeMap;
use std::fmt;

use crate::actions::{ActionError, Contraction, IOTA01, IOTA10};
use crate::cohomology::CohomologyError;
use crate::complexes::{Bicomplex, Bidegree, BigradedSpace, ComplexError, GradedOperator, Parity, Shift};
use crate::exactmath::{ExactMatrix, GaussianRational, Vector};

pub use cone::{build_cone, verify_cone_les, Cone, ConeLesReport, LesNode, LesRow};
pub use theorem::{
    crosscheck, theorem_formula, theorem_formula_unshifted, CrosscheckReport, CrosscheckRow, FormulaOutcome,
};

pub const LEFSCHETZ: Shift = Shift::new(1, 1);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VaismanError {
    #[error("complex dimension {0} is below 2")]
    DimensionTooSmall(usize),
    #[error("invalid basic cohomology: {0}")]
    InvalidBasic(String),
    #[error("formula not applicable at {slot}: {reason}")]
    NotApplicable { slot: Bidegree, reason: String },
    #[error("long exact sequence not exact at {position} for p = {p}, q = {q}")]
    LesNotExact { p: usize, q: usize, position: LesNode },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Basic cohomology `H_B^{p,q}`, `0 ≤ p, q ≤ n−1`, of a Vaisman manifold of
/// complex dimension `n`, with the Lefschetz operator `L` of shift `(1,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCohomology {
    n: usize,
    space: BigradedSpace,
    lefschetz: GradedOperator,
}

impl BasicCohomology {
    pub fn new(n: usize, space: BigradedSpace, lefschetz: GradedOperator) -> Result<Self, VaismanError> {
        if n < 2 {
            return Err(VaismanError::DimensionTooSmall(n));
        }
        if space.n() != n - 1 {
            return Err(VaismanError::InvalidBasic(format!(
                "basic grid has size {}, expected {}",
                space.n(),
                n - 1
            )));
        }
        if lefschetz.shift() != LEFSCHETZ {
            return Err(VaismanError::InvalidBasic(format!(
                "lefschetz has shift {}",
                lefschetz.shift()
            )));
        }
        lefschetz
            .check_shapes(&space)
            .map_err(|e| VaismanError::InvalidBasic(e.to_string()))?;
        Ok(BasicCohomology { n, space, lefschetz })
    }

    /// Builds the basis from slot dimensions with labels `e(p,q)#k`.
    pub fn from_dims(
        n: usize,
        dims: &BTreeMap<Bidegree, usize>,
        lefschetz: GradedOperator,
    ) -> Result<Self, VaismanError> {
        if n < 2 {
            return Err(VaismanError::DimensionTooSmall(n));
        }
        let space = BigradedSpace::from_dims(n - 1, dims).map_err(|e| VaismanError::InvalidBasic(e.to_string()))?;
        Self::new(n, space, lefschetz)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &BigradedSpace {
        &self.space
    }

    pub fn lefschetz(&self) -> &GradedOperator {
        &self.lefschetz
    }

    /// `dim H_B^{p,q}`, zero for negative or out-of-range indices.
    pub fn dim(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 {
            return 0;
        }
        self.space.dim(Bidegree::new(p as usize, q as usize))
    }

    /// `L : H_B^{p,q} → H_B^{p+1,q+1}` as a matrix (empty for negative
    /// indices).
    pub fn l_block(&self, p: i64, q: i64) -> ExactMatrix {
        if p < 0 || q < 0 {
            return ExactMatrix::zeros(self.dim(p + 1, q + 1), 0);
        }
        self.lefschetz
            .block_or_zero(&self.space, Bidegree::new(p as usize, q as usize))
    }

    pub fn labels(&self, p: i64, q: i64) -> Vec<String> {
        if p < 0 || q < 0 {
            return Vec::new();
        }
        self.space.labels(Bidegree::new(p as usize, q as usize)).to_vec()
    }

    /// `dim K^{p,q}` with `K^{p,q} = H_B^{p,q} ⊕ θ^{0,1} H_B^{p,q−1}`.
    pub fn k_dim(&self, p: i64, q: i64) -> usize {
        self.dim(p, q) + self.dim(p, q - 1)
    }

    /// `L : K^{p,q} → K^{p+1,q+1}`, block diagonal on the two summands.
    pub fn k_lefschetz(&self, p: i64, q: i64) -> ExactMatrix {
        let a = self.l_block(p, q);
        let b = self.l_block(p, q - 1);
        let mut m = ExactMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
        m.paste(0, 0, &a);
        m.paste(a.rows(), a.cols(), &b);
        m
    }

    /// Transverse hard-Lefschetz data: injectivity of `L` from total degree
    /// `k` for `k ≤ n − 2` and surjectivity onto degree `k` for `k ≥ n`.
    pub fn lefschetz_report(&self) -> LefschetzReport {
        let top = self.n as i64 - 1;
        let mut injective_below_middle = true;
        let mut surjective_above_middle = true;
        for p in 0..=top {
            for q in 0..=top {
                let m = self.l_block(p, q);
                if p + q < top && m.rank() < m.cols() {
                    injective_below_middle = false;
                }
                let into = self.l_block(p - 1, q - 1);
                if p + q > top && into.rank() < self.dim(p, q) {
                    surjective_above_middle = false;
                }
            }
        }
        let nilpotent_order = (1..=2 * self.n)
            .find(|&k| self.lefschetz_power(k).is_zero())
            .unwrap_or(usize::MAX);
        LefschetzReport {
            injective_below_middle,
            surjective_above_middle,
            nilpotent_order,
        }
    }

    pub fn lefschetz_power(&self, k: usize) -> GradedOperator {
        let mut out = GradedOperator::identity(&self.space);
        for _ in 0..k {
            out = self.lefschetz.compose(&out);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzReport {
    pub injective_below_middle: bool,
    pub surjective_above_middle: bool,
    /// Least `k` with `L^k = 0`.
    pub nilpotent_order: usize,
}

/// Basic cohomology of the Hopf manifold `S¹ × S^{2n−1}`: that of `ℂP^{n−1}`,
/// with `L` sending `ω0^p` to `ω0^{p+1}`.
pub fn hopf_basic(n: usize) -> Result<BasicCohomology, VaismanError> {
    if n < 2 {
        return Err(VaismanError::DimensionTooSmall(n));
    }
    let mut space = BigradedSpace::new(n - 1);
    for p in 0..n {
        let label = match p {
            0 => "1".to_string(),
            1 => "w0".to_string(),
            _ => format!("w0^{p}"),
        };
        space.add_slot(Bidegree::new(p, p), vec![label])?;
    }
    let mut lefschetz = GradedOperator::zero(LEFSCHETZ, Parity::Even);
    for p in 0..n - 1 {
        lefschetz.set_block(Bidegree::new(p, p), ExactMatrix::identity(1));
    }
    BasicCohomology::new(n, space, lefschetz)
}

/// Coefficient `c` in `∂̄θ^{1,0} = c·ω0` (and `∂θ^{0,1} = −c·ω0`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// `c = i`: `θ = θ^{1,0} + θ^{0,1}` is real and closed.
    #[default]
    Imaginary,
    /// `c = 1`.
    One,
}

impl Normalization {
    pub fn coefficient(self) -> GaussianRational {
        match self {
            Normalization::Imaginary => GaussianRational::i(),
            Normalization::One => GaussianRational::one(),
        }
    }
}

/// Position of a slot's four summands
/// `[H_B^{p,q}, θ^{0,1}H_B^{p,q−1}, θ^{1,0}H_B^{p−1,q}, θ^{1,0}θ^{0,1}H_B^{p−1,q−1}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlotLayout {
    pub dims: [usize; 4],
}

impl SlotLayout {
    pub fn of(basic: &BasicCohomology, p: i64, q: i64) -> SlotLayout {
        SlotLayout {
            dims: [
                basic.dim(p, q),
                basic.dim(p, q - 1),
                basic.dim(p - 1, q),
                basic.dim(p - 1, q - 1),
            ],
        }
    }

    pub fn offset(&self, summand: usize) -> usize {
        self.dims[..summand].iter().sum()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// The complex `H_B ⊗ Λ[θ^{1,0}, θ^{0,1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaismanModel {
    pub basic: BasicCohomology,
    pub complex: Bicomplex,
    pub normalization: Normalization,
}

fn model_labels(basic: &BasicCohomology, p: i64, q: i64) -> Vec<String> {
    let wrap = |prefix: &str, labels: Vec<String>| -> Vec<String> {
        labels
            .into_iter()
            .map(|l| {
                if l == "1" {
                    prefix.to_string()
                } else {
                    format!("{prefix}^{l}")
                }
            })
            .collect()
    };
    let mut out = basic.labels(p, q);
    out.extend(wrap("t01", basic.labels(p, q - 1)));
    out.extend(wrap("t10", basic.labels(p - 1, q)));
    out.extend(wrap("t10^t01", basic.labels(p - 1, q - 1)));
    out
}

/// Builds the invariant model. `∂̄` is always present; `full` adds `∂`.
pub fn build_invariant_model(
    basic: &BasicCohomology,
    full: bool,
    normalization: Normalization,
) -> Result<VaismanModel, VaismanError> {
    let n = basic.n();
    let c = normalization.coefficient();
    let mut space = BigradedSpace::new(n);
    for p in 0..=n as i64 {
        for q in 0..=n as i64 {
            space.add_slot(Bidegree::new(p as usize, q as usize), model_labels(basic, p, q))?;
        }
    }
    let mut delbar = GradedOperator::zero(Shift::DELBAR, Parity::Odd);
    let mut del = GradedOperator::zero(Shift::DEL, Parity::Odd);
    for p in 0..=n as i64 {
        for q in 0..=n as i64 {
            let src = SlotLayout::of(basic, p, q);
            let bd = Bidegree::new(p as usize, q as usize);
            if q < n as i64 {
                // θ^{1,0}x ↦ c·Lx, θ^{1,0}θ^{0,1}x ↦ c·θ^{0,1}Lx
                let dst = SlotLayout::of(basic, p, q + 1);
                let mut m = ExactMatrix::zeros(dst.total(), src.total());
                m.paste(dst.offset(0), src.offset(2), &basic.l_block(p - 1, q).scale(&c));
                m.paste(dst.offset(1), src.offset(3), &basic.l_block(p - 1, q - 1).scale(&c));
                delbar.set_block(bd, m);
            }
            if full && p < n as i64 {
                // θ^{0,1}x ↦ −c·Lx, θ^{1,0}θ^{0,1}x ↦ c·θ^{1,0}Lx
                let dst = SlotLayout::of(basic, p + 1, q);
                let mut m = ExactMatrix::zeros(dst.total(), src.total());
                m.paste(
                    dst.offset(0),
                    src.offset(1),
                    &basic.l_block(p, q - 1).scale(&-c.clone()),
                );
                m.paste(dst.offset(2), src.offset(3), &basic.l_block(p - 1, q - 1).scale(&c));
                del.set_block(bd, m);
            }
        }
    }
    let complex = Bicomplex::new(space, full.then_some(del), delbar)?;
    let report = complex.validate();
    if !report.passed() {
        return Err(VaismanError::Invariant(report.to_string()));
    }
    Ok(VaismanModel {
        basic: basic.clone(),
        complex,
        normalization,
    })
}

impl VaismanModel {
    /// Vector of `prefix·x` where `x` is basis element `k` of `H_B^{p,q}`
    /// and `summand` selects the exterior factor.
    pub fn element(&self, slot: Bidegree, summand: usize, k: usize) -> Vector {
        let layout = SlotLayout::of(&self.basic, slot.p as i64, slot.q as i64);
        let mut v = vec![GaussianRational::zero(); layout.total()];
        v[layout.offset(summand) + k] = GaussianRational::one();
        v
    }

    /// `θ^{1,0}` and `θ^{0,1}` (requires `H_B^{0,0}` one-dimensional).
    pub fn theta(&self) -> Result<(Vector, Vector), VaismanError> {
        if self.basic.dim(0, 0) != 1 {
            return Err(VaismanError::InvalidBasic("H_B^{0,0} must be one-dimensional".into()));
        }
        Ok((
            self.element(Bidegree::new(1, 0), 2, 0),
            self.element(Bidegree::new(0, 1), 1, 0),
        ))
    }

    /// `ω0 = L(1)` in slot `(1,1)`.
    pub fn omega0(&self) -> Result<Vector, VaismanError> {
        self.theta()?;
        let w = self.basic.l_block(0, 0).column(0);
        let layout = SlotLayout::of(&self.basic, 1, 1);
        let mut v = vec![GaussianRational::zero(); layout.total()];
        for (k, x) in w.into_iter().enumerate() {
            v[k] = x;
        }
        Ok(v)
    }

    /// Checks `dθ = 0` and returns `λ` with `dθ^c = λ·ω0`, where
    /// `θ^c = Jθ = iθ^{1,0} − iθ^{0,1}`. Requires the full model.
    pub fn lee_form_check(&self) -> Result<LeeFormReport, VaismanError> {
        let (t10, t01) = self.theta()?;
        let w = self.omega0()?;
        let b = &self.complex;
        let del = b.del()?;
        let space = b.space();
        let s10 = Bidegree::new(1, 0);
        let s01 = Bidegree::new(0, 1);
        let d10_11 = b.delbar().block_or_zero(space, s10).mul_vec(&t10);
        let d01_11 = del.block_or_zero(space, s01).mul_vec(&t01);
        let d10_20 = del.block_or_zero(space, s10).mul_vec(&t10);
        let d01_02 = b.delbar().block_or_zero(space, s01).mul_vec(&t01);
        let side_zero = d10_20.iter().chain(&d01_02).all(GaussianRational::is_zero);
        let dtheta: Vec<GaussianRational> = d10_11.iter().zip(&d01_11).map(|(a, b)| a + b).collect();
        let i = GaussianRational::i();
        let dtheta_c: Vec<GaussianRational> = d10_11.iter().zip(&d01_11).map(|(a, b)| &(&i * a) - &(&i * b)).collect();
        let lambda = proportionality(&dtheta_c, &w);
        Ok(LeeFormReport {
            theta_closed: side_zero && dtheta.iter().all(GaussianRational::is_zero),
            dtheta_c_over_omega0: lambda,
        })
    }

    /// Contraction with the Lee field: `ιθ^{1,0} = ιθ^{0,1} = 1/2`, zero on
    /// basic classes.
    pub fn lee_contraction(&self) -> Contraction {
        let half = GaussianRational::ratio(1, 2);
        let basic = &self.basic;
        let space = self.complex.space();
        let mut iota10 = GradedOperator::zero(IOTA10, Parity::Odd);
        let mut iota01 = GradedOperator::zero(IOTA01, Parity::Odd);
        for bd in space.grid() {
            let (p, q) = (bd.p as i64, bd.q as i64);
            let src = SlotLayout::of(basic, p, q);
            if p > 0 {
                // θ^{1,0}x ↦ x/2, θ^{1,0}θ^{0,1}x ↦ θ^{0,1}x/2
                let dst = SlotLayout::of(basic, p - 1, q);
                let mut m = ExactMatrix::zeros(dst.total(), src.total());
                m.paste(
                    dst.offset(0),
                    src.offset(2),
                    &ExactMatrix::identity(src.dims[2]).scale(&half),
                );
                m.paste(
                    dst.offset(1),
                    src.offset(3),
                    &ExactMatrix::identity(src.dims[3]).scale(&half),
                );
                iota10.set_block(bd, m);
            }
            if q > 0 {
                // θ^{0,1}x ↦ x/2, θ^{1,0}θ^{0,1}x ↦ −θ^{1,0}x/2
                let dst = SlotLayout::of(basic, p, q - 1);
                let mut m = ExactMatrix::zeros(dst.total(), src.total());
                m.paste(
                    dst.offset(0),
                    src.offset(1),
                    &ExactMatrix::identity(src.dims[1]).scale(&half),
                );
                m.paste(
                    dst.offset(2),
                    src.offset(3),
                    &ExactMatrix::identity(src.dims[3]).scale(&-half.clone()),
                );
                iota01.set_block(bd, m);
            }
        }
        Contraction::new("lee", iota10, iota01).expect("shifts are fixed above")
    }

    /// Slot-dimension identity of the tensor decomposition.
    pub fn dimension_identity_holds(&self) -> bool {
        let space = self.complex.space();
        space.grid().all(|bd| {
            let (p, q) = (bd.p as i64, bd.q as i64);
            let b = &self.basic;
            space.dim(bd) == b.dim(p, q) + b.dim(p, q - 1) + b.dim(p - 1, q) + b.dim(p - 1, q - 1)
        })
    }
}

/// `λ` with `v = λ·w`, if any (`w` nonzero).
fn proportionality(v: &[GaussianRational], w: &[GaussianRational]) -> Option<GaussianRational> {
    let k = w.iter().position(|x| !x.is_zero())?;
    let lambda = &v[k] / &w[k];
    v.iter().zip(w).all(|(a, b)| *a == &lambda * b).then_some(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeeFormReport {
    pub theta_closed: bool,
    pub dtheta_c_over_omega0: Option<GaussianRational>,
}

impl fmt::Display for LeeFormReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lambda = match &self.dtheta_c_over_omega0 {
            Some(l) => format!("{l}"),
            None => "not proportional".to_string(),
        };
        write!(f, "d theta = 0: {}; d theta^c = {} * omega0", self.theta_closed, lambda)
    }
}
