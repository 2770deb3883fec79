use std::fmt;

use serde::Serialize;

use crate::complexes::{dc_operator, Bicomplex, OperatorSum};
use crate::exactmath::{ExactMatrix, GaussianRational};

use super::ActionError;

/// Smallest field among `ℚ`, `iℚ` and `ℚ(i)` containing both coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolutionField {
    Rational,
    Imaginary,
    Gaussian,
}

impl fmt::Display for SolutionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionField::Rational => "rational",
            SolutionField::Imaginary => "imaginary",
            SolutionField::Gaussian => "gaussian",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopySolution {
    pub y1: GaussianRational,
    pub y2: GaussianRational,
    pub field: SolutionField,
}

impl HomotopySolution {
    /// Residuals of `a y2 − b y1 = 0` and `a y1 + b y2 = 1`.
    pub fn residuals(&self, a: &GaussianRational, b: &GaussianRational) -> (GaussianRational, GaussianRational) {
        let r1 = &(a * &self.y2) - &(b * &self.y1);
        let r2 = &(&(a * &self.y1) + &(b * &self.y2)) - &GaussianRational::one();
        (r1, r2)
    }
}

fn field_of(values: &[&GaussianRational]) -> SolutionField {
    if values.iter().all(|v| v.is_real()) {
        SolutionField::Rational
    } else if values.iter().all(|v| v.is_imaginary()) {
        SolutionField::Imaginary
    } else {
        SolutionField::Gaussian
    }
}

/// Solves `a y2 − b y1 = 0`, `a y1 + b y2 = 1` for `(y1, y2)`.
/// The determinant is `−(a² + b²)`.
pub fn homotopy_coefficients(a: &GaussianRational, b: &GaussianRational) -> Result<HomotopySolution, ActionError> {
    if a.is_zero() && b.is_zero() {
        return Err(ActionError::BothZero);
    }
    let system = ExactMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => -b.clone(),
        (0, 1) => a.clone(),
        (1, 0) => a.clone(),
        _ => b.clone(),
    });
    if system.rank() < 2 {
        return Err(ActionError::Degenerate {
            a: Box::new(a.clone()),
            b: Box::new(b.clone()),
        });
    }
    let y = system
        .solve(&[GaussianRational::zero(), GaussianRational::one()])
        .expect("nonsingular system");
    let field = field_of(&[&y[0], &y[1]]);
    Ok(HomotopySolution {
        y1: y[0].clone(),
        y2: y[1].clone(),
        field,
    })
}

/// `δ = b·d + a·d^c`, checked to square to zero.
pub fn delta_operator(bc: &Bicomplex, a: &GaussianRational, b: &GaussianRational) -> Result<OperatorSum, ActionError> {
    let delta = bc.d()?.scale(b).add(&dc_operator(bc)?.scale(a));
    if !delta.compose(&delta).is_zero() {
        return Err(ActionError::Invariant("delta^2 != 0".into()));
    }
    Ok(delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn hand_solved_cases() {
        let s = homotopy_coefficients(&g("i"), &g("0")).unwrap();
        assert_eq!((s.y1.clone(), s.y2.clone()), (g("-i"), g("0")));
        assert_eq!(s.field, SolutionField::Imaginary);
        let s = homotopy_coefficients(&g("0"), &g("i")).unwrap();
        assert_eq!((s.y1, s.y2), (g("0"), g("-i")));
        let s = homotopy_coefficients(&g("3"), &g("4")).unwrap();
        assert_eq!((s.y1, s.y2), (g("3/25"), g("4/25")));
        assert_eq!(s.field, SolutionField::Rational);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(matches!(
            homotopy_coefficients(&g("1"), &g("i")),
            Err(ActionError::Degenerate { .. })
        ));
        assert!(matches!(
            homotopy_coefficients(&g("0"), &g("0")),
            Err(ActionError::BothZero)
        ));
    }

    #[test]
    fn closed_form_agrees() {
        for (a, b) in [("2i", "-i"), ("(1+i)", "3"), ("1/2", "(2-i)")] {
            let (a, b) = (g(a), g(b));
            let s = homotopy_coefficients(&a, &b).unwrap();
            let norm = &(&a * &a) + &(&b * &b);
            assert_eq!(s.y1, &a / &norm);
            assert_eq!(s.y2, &b / &norm);
            let (r1, r2) = s.residuals(&a, &b);
            assert!(r1.is_zero() && r2.is_zero());
        }
    }
}
