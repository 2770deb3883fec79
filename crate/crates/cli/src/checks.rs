use std::fmt;

use serde::Serialize;

use bigraded_core::actions::{cartan_report, induced_on_cohomology, lie_derivative, Applicability};
use bigraded_core::cohomology::{
    dolbeault, duality_report, frolicher_check, natural_maps, verify_five_term, CohomologyTable, Flavor, Key,
};
use bigraded_core::complexes::random::{random_suite, RandomParams};
use bigraded_core::complexes::{j_convention_report, structural_identities, Bidegree, BigradedSpace};
use bigraded_core::exactmath::{ExactMatrix, GaussianRational};
use bigraded_core::vaisman::{build_cone, crosscheck, verify_cone_les, VaismanError};

use crate::config::{CheckSpec, LoadedModel};

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const RANDOM_COUNT: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Warn,
    Trivial,
    Nontrivial,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Warn => "WARN",
            Verdict::Trivial => "TRIVIAL",
            Verdict::Nontrivial => "NONTRIVIAL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

fn result(spec: &CheckSpec, verdict: Verdict, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: spec.name(),
        verdict,
        detail: detail.into(),
    }
}

fn pass_fail(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// `c₁ e₁ + c₂ e₂ …` over the basis labels of one slot.
fn format_vector(labels: &[String], v: &[GaussianRational]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (label, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let term = if c.is_one() {
            label.clone()
        } else if (-c.clone()).is_one() {
            format!("-{label}")
        } else {
            format!("{c} {label}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// `[r_j] ↦ Σ m_ij [r_i]` for each class representative `r_j`.
fn format_induced(space: &BigradedSpace, table: &CohomologyTable, slot: Bidegree, m: &ExactMatrix) -> String {
    let labels = space.labels(slot);
    let reps: Vec<String> = table
        .representatives(Key::Slot(slot))
        .iter()
        .map(|r| format!("[{}]", format_vector(labels, r)))
        .collect();
    (0..m.cols())
        .filter(|&j| !m.column(j).iter().all(GaussianRational::is_zero))
        .map(|j| {
            let image: Vec<String> = reps.clone();
            format!("{} -> {}", reps[j], format_vector(&image, &m.column(j)))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn key_text(key: Key) -> String {
    match key {
        Key::Slot(bd) => bd.to_string(),
        Key::Degree(k) => format!("k={k}"),
    }
}

pub fn run_check(spec: &CheckSpec, model: &LoadedModel, seed: u64) -> anyhow::Result<CheckResult> {
    let b = &model.built.bicomplex;
    Ok(match spec {
        CheckSpec::FiveTerm => match verify_five_term(b) {
            Ok(r) => result(spec, Verdict::Pass, format!("exact at all {} slots", r.slots.len())),
            Err(e) => result(spec, Verdict::Fail, e.to_string()),
        },
        CheckSpec::Frolicher => {
            let r = frolicher_check(b)?;
            let strict = r.strict_degrees();
            let note = if strict.is_empty() {
                "equality in every degree".to_string()
            } else {
                let parts: Vec<String> = r
                    .rows
                    .iter()
                    .filter(|row| strict.contains(&row.k))
                    .map(|row| format!("k={} ({} < {})", row.k, row.betti, row.hodge_sum))
                    .collect();
                format!("strict at {}", parts.join(", "))
            };
            result(spec, pass_fail(r.holds()), note)
        }
        CheckSpec::Duality => {
            let r = duality_report(b, b.n())?;
            let verdict = if r.matched() { Verdict::Pass } else { Verdict::Warn };
            result(spec, verdict, r.to_string())
        }
        CheckSpec::NaturalMaps => {
            let r = natural_maps(b)?;
            let non_iso: Vec<String> = r
                .maps
                .iter()
                .filter(|m| !m.is_iso())
                .map(|m| {
                    format!(
                        "{} at {}: ker {}, coker {}",
                        m.name,
                        key_text(m.source),
                        m.kernel_dim(),
                        m.cokernel_dim()
                    )
                })
                .collect();
            let detail = if non_iso.is_empty() {
                "all natural maps are isomorphisms".to_string()
            } else {
                non_iso.join("; ")
            };
            result(spec, Verdict::Pass, detail)
        }
        CheckSpec::ConeLes => {
            let vm = model.built.vaisman.as_ref().expect("applicability checked");
            match verify_cone_les(&build_cone(vm)?) {
                Ok(r) => {
                    let detail = format!(
                        "exact at every node ({} segments); connecting map = c*L: {}",
                        r.rows.len(),
                        r.passed()
                    );
                    result(spec, pass_fail(r.passed()), detail)
                }
                Err(e @ VaismanError::LesNotExact { .. }) => result(spec, Verdict::Fail, e.to_string()),
                Err(e) => return Err(e.into()),
            }
        }
        CheckSpec::TheoremCrosscheck => {
            let vm = model.built.vaisman.as_ref().expect("applicability checked");
            let r = crosscheck(vm)?;
            let fmt_slots = |v: Vec<Bidegree>| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let mut detail = if r.passed() {
                "direct, sequence and closed form agree".to_string()
            } else {
                let bad: Vec<String> = r
                    .rows
                    .iter()
                    .filter(|row| !row.agrees())
                    .map(|row| {
                        format!(
                            "{}: direct {}, les {}, formula {}",
                            row.slot, row.direct, row.les, row.formula.value
                        )
                    })
                    .collect();
                format!("mismatch {}", bad.join("; "))
            };
            let inapplicable = r.inapplicable();
            if !inapplicable.is_empty() {
                detail.push_str(&format!("; formula not applicable at {}", fmt_slots(inapplicable)));
            }
            let diff = r.unshifted_differences();
            if !diff.is_empty() {
                detail.push_str(&format!("; unshifted (p,q) indexing differs at {}", fmt_slots(diff)));
            }
            result(spec, pass_fail(r.passed()), detail)
        }
        CheckSpec::Cartan => {
            let mut ok = true;
            let mut parts = Vec::new();
            for c in &model.built.contractions {
                let r = cartan_report(b, c)?;
                ok &= r.passed();
                parts.push(format!("{}: {}", c.name(), if r.passed() { "holds" } else { "fails" }));
            }
            result(spec, pass_fail(ok), parts.join("; "))
        }
        CheckSpec::Action(field) => {
            let c = model.built.contraction(field)?;
            let l = lie_derivative(b, c)?;
            let verdict = induced_on_cohomology(b, &l.operator)?;
            let mut detail = verdict.to_string();
            if let Some(w) = l.warning() {
                detail.push_str(&format!("; {w}"));
            }
            if let Some(a) = verdict.flavor(Flavor::Dolbeault) {
                if a.applicability == Applicability::Applicable && a.is_trivial() == Some(false) {
                    let table = dolbeault(b)?;
                    for key in a.nontrivial_keys() {
                        if let Key::Slot(slot) = key {
                            let text = format_induced(b.space(), &table, slot, &a.maps[&key]);
                            detail.push_str(&format!("; dolbeault {}: {text}", key_text(key)));
                        }
                    }
                }
            }
            let v = if verdict.is_trivial() {
                Verdict::Trivial
            } else {
                Verdict::Nontrivial
            };
            result(spec, v, detail)
        }
        CheckSpec::Random => {
            let suite = random_suite(seed, RANDOM_COUNT, &RandomParams::default());
            let mut failure = None;
            for (k, r) in suite.iter().enumerate() {
                let s = structural_identities(r)?;
                if !s.passed() {
                    failure = Some(format!("complex #{k}: {}", s.failures().join(", ")));
                    break;
                }
                if let Err(e) = verify_five_term(r) {
                    failure = Some(format!("complex #{k}: {e}"));
                    break;
                }
            }
            match failure {
                None => result(
                    spec,
                    Verdict::Pass,
                    format!("{RANDOM_COUNT} random bicomplexes (seed {seed}): identities hold, five-term exact"),
                ),
                Some(f) => result(spec, Verdict::Fail, format!("seed {seed}: {f}")),
            }
        }
        CheckSpec::Structure => {
            let s = structural_identities(b)?;
            let j = j_convention_report(b)?;
            let mut ok = s.passed();
            let mut detail = if ok {
                "del^2, delbar^2, {del,delbar}, d^2, (d^c)^2, {d,d^c} vanish".to_string()
            } else {
                format!("failing: {}", s.failures().join(", "))
            };
            detail.push_str(&format!("; {j}"));
            if let Some(vm) = &model.built.vaisman {
                let lee = vm.lee_form_check()?;
                ok &= lee.theta_closed && lee.dtheta_c_over_omega0.is_some();
                detail.push_str(&format!("; {lee}"));
            }
            result(spec, pass_fail(ok), detail)
        }
        CheckSpec::Default => unreachable!("expanded before running"),
    })
}
