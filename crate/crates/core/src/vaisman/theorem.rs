use std::fmt;

use serde::Serialize;

use crate::cohomology::{dolbeault, Key};
use crate::complexes::Bidegree;

use super::{build_cone, verify_cone_les, BasicCohomology, VaismanError, VaismanModel};

/// Closed-form value at one slot together with its applicability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaOutcome {
    pub slot: Bidegree,
    pub value: usize,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn rank_and_cols(basic: &BasicCohomology, p: i64, q: i64) -> (usize, usize) {
    let m = basic.k_lefschetz(p, q);
    (m.rank(), m.cols())
}

/// `h^{p,q}` of the Dolbeault model from `K` and `L`:
/// `dim K^{p,q} − rank(L : K^{p−1,q−1} → K^{p,q})` for `p + q ≤ n`,
/// `dim ker(L : K^{p−1,q} → K^{p,q+1})` for `p + q > n`.
///
/// The first form needs `L` injective on `K^{p−1,q}`; the second needs
/// `L : K^{p−1,q−1} → K^{p,q}` onto.
pub fn theorem_formula(basic: &BasicCohomology, slot: Bidegree) -> FormulaOutcome {
    let (p, q) = (slot.p as i64, slot.q as i64);
    let n = basic.n() as i64;
    if p + q <= n {
        let (into_rank, _) = rank_and_cols(basic, p - 1, q - 1);
        let (out_rank, out_cols) = rank_and_cols(basic, p - 1, q);
        let applicable = out_rank == out_cols;
        FormulaOutcome {
            slot,
            value: basic.k_dim(p, q) - into_rank,
            applicable,
            reason: (!applicable).then(|| format!("L is not injective on K^({},{})", p - 1, q)),
        }
    } else {
        let (into_rank, _) = rank_and_cols(basic, p - 1, q - 1);
        let (out_rank, out_cols) = rank_and_cols(basic, p - 1, q);
        let applicable = into_rank == basic.k_dim(p, q);
        FormulaOutcome {
            slot,
            value: out_cols - out_rank,
            applicable,
            reason: (!applicable).then(|| format!("L does not map K^({},{}) onto K^({p},{q})", p - 1, q - 1)),
        }
    }
}

/// Variant of [`theorem_formula`] whose `p + q > n` branch takes the kernel
/// of `L` on `K^{p,q}` instead of `K^{p−1,q}`.
pub fn theorem_formula_unshifted(basic: &BasicCohomology, slot: Bidegree) -> FormulaOutcome {
    let (p, q) = (slot.p as i64, slot.q as i64);
    if p + q <= basic.n() as i64 {
        return theorem_formula(basic, slot);
    }
    let (rank, cols) = rank_and_cols(basic, p, q);
    FormulaOutcome {
        slot,
        value: cols - rank,
        applicable: true,
        reason: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckRow {
    pub slot: Bidegree,
    pub direct: usize,
    pub les: usize,
    pub formula: FormulaOutcome,
    pub unshifted: FormulaOutcome,
}

impl CrosscheckRow {
    /// Direct and sequence values agree, and so does the formula wherever
    /// it applies.
    pub fn agrees(&self) -> bool {
        self.direct == self.les && (!self.formula.applicable || self.formula.value == self.direct)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub n: usize,
    pub rows: Vec<CrosscheckRow>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CrosscheckRow::agrees)
    }

    pub fn inapplicable(&self) -> Vec<Bidegree> {
        self.rows
            .iter()
            .filter(|r| !r.formula.applicable)
            .map(|r| r.slot)
            .collect()
    }

    /// Slots where the unshifted variant disagrees with the direct value.
    pub fn unshifted_differences(&self) -> Vec<Bidegree> {
        self.rows
            .iter()
            .filter(|r| r.unshifted.value != r.direct)
            .map(|r| r.slot)
            .collect()
    }
}

impl fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "slot   direct  les  formula  unshifted")?;
        for r in &self.rows {
            let mark = if r.formula.applicable { "" } else { "*" };
            writeln!(
                f,
                "{:<6} {:>6} {:>4} {:>7}{:<1} {:>9}",
                r.slot.to_string(),
                r.direct,
                r.les,
                r.formula.value,
                mark,
                r.unshifted.value
            )?;
        }
        Ok(())
    }
}

/// Compares Dolbeault dimensions of the model computed directly, through
/// the long exact sequence of the extension, and from the closed forms.
pub fn crosscheck(model: &VaismanModel) -> Result<CrosscheckReport, VaismanError> {
    let direct = dolbeault(&model.complex)?;
    let les = verify_cone_les(&build_cone(model)?)?.les_dimensions();
    let rows = model
        .complex
        .space()
        .grid()
        .map(|bd| CrosscheckRow {
            slot: bd,
            direct: direct.dim(Key::Slot(bd)),
            les: les[&bd],
            formula: theorem_formula(&model.basic, bd),
            unshifted: theorem_formula_unshifted(&model.basic, bd),
        })
        .collect();
    Ok(CrosscheckReport {
        n: model.basic.n(),
        rows,
    })
}
