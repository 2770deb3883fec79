use std::path::Path;
use std::str::FromStr;

use bigraded_core::cohomology::Flavor;
use bigraded_core::models::{self, BuiltModel, ModelError, ModelKind, ModelSpec};

/// Bad input: unknown names, unreadable or invalid model files, checks
/// that do not apply. Exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub struct LoadedModel {
    pub spec: ModelSpec,
    pub built: BuiltModel,
}

impl LoadedModel {
    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn has_del(&self) -> bool {
        self.built.bicomplex.has_del()
    }

    pub fn is_vaisman(&self) -> bool {
        self.spec.kind() == ModelKind::Vaisman
    }
}

/// A catalog name, or a path to a model file.
pub fn resolve_model(reference: &str) -> anyhow::Result<LoadedModel> {
    let spec = match models::find(reference) {
        Ok(spec) => spec,
        Err(ModelError::UnknownModel(_)) => {
            let path = Path::new(reference);
            if !path.is_file() {
                return Err(usage(format!(
                    "unknown model `{reference}`: not in the catalog and no such file"
                )));
            }
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{reference}: {e}")))?;
            models::parse_model_file(&text).map_err(|e| usage(format!("{reference}: {e}")))?
        }
        Err(e) => return Err(usage(format!("{reference}: {e}"))),
    };
    let built = models::build(&spec).map_err(|e| usage(format!("{reference}: {e}")))?;
    Ok(LoadedModel { spec, built })
}

/// Requested flavors in output order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlavorSet(pub Vec<Flavor>);

const ALL_FLAVORS: [Flavor; 5] = [
    Flavor::Dolbeault,
    Flavor::AntiDolbeault,
    Flavor::DeRham,
    Flavor::BottChern,
    Flavor::Aeppli,
];

impl FromStr for FlavorSet {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let mut out: Vec<Flavor> = Vec::new();
        for name in s.split(',').map(str::trim) {
            let add: Vec<Flavor> = match name {
                "all" => ALL_FLAVORS.to_vec(),
                "abc" => vec![Flavor::A, Flavor::B, Flavor::C],
                "dolbeault" | "anti" | "derham" | "bc" | "aeppli" => vec![name.parse().map_err(usage)?],
                other => {
                    return Err(usage(format!(
                        "unknown flavor `{other}` (expected dolbeault, anti, derham, bc, aeppli, abc, all)"
                    )))
                }
            };
            for f in add {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        Ok(FlavorSet(out))
    }
}

impl FlavorSet {
    pub fn check_applicable(&self, model: &LoadedModel) -> anyhow::Result<()> {
        if model.has_del() {
            return Ok(());
        }
        match self.0.iter().find(|&&f| f != Flavor::Dolbeault) {
            Some(f) => Err(usage(format!(
                "flavor `{f}` needs a full bicomplex; `{}` carries only delbar",
                model.name()
            ))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckSpec {
    FiveTerm,
    Frolicher,
    Duality,
    NaturalMaps,
    ConeLes,
    TheoremCrosscheck,
    Cartan,
    Action(String),
    Random,
    Structure,
    Default,
}

impl CheckSpec {
    pub fn name(&self) -> String {
        match self {
            CheckSpec::FiveTerm => "five-term".into(),
            CheckSpec::Frolicher => "frolicher".into(),
            CheckSpec::Duality => "duality".into(),
            CheckSpec::NaturalMaps => "natural-maps".into(),
            CheckSpec::ConeLes => "cone-les".into(),
            CheckSpec::TheoremCrosscheck => "theorem-crosscheck".into(),
            CheckSpec::Cartan => "cartan".into(),
            CheckSpec::Action(name) => format!("action:{name}"),
            CheckSpec::Random => "random".into(),
            CheckSpec::Structure => "structure".into(),
            CheckSpec::Default => "default".into(),
        }
    }

    pub fn parse_list(s: &str) -> anyhow::Result<Vec<CheckSpec>> {
        let mut out: Vec<CheckSpec> = Vec::new();
        for name in s.split(',').map(str::trim) {
            let spec = match name {
                "five-term" => CheckSpec::FiveTerm,
                "frolicher" => CheckSpec::Frolicher,
                "duality" => CheckSpec::Duality,
                "natural-maps" => CheckSpec::NaturalMaps,
                "cone-les" => CheckSpec::ConeLes,
                "theorem-crosscheck" => CheckSpec::TheoremCrosscheck,
                "cartan" => CheckSpec::Cartan,
                "random" => CheckSpec::Random,
                "structure" => CheckSpec::Structure,
                "default" => CheckSpec::Default,
                other => match other.strip_prefix("action:") {
                    Some(field) if !field.is_empty() => CheckSpec::Action(field.to_string()),
                    _ => return Err(usage(format!("unknown check `{other}`"))),
                },
            };
            if !out.contains(&spec) {
                out.push(spec);
            }
        }
        Ok(out)
    }

    pub fn check_applicable(&self, model: &LoadedModel) -> anyhow::Result<()> {
        let needs_del = !matches!(
            self,
            CheckSpec::Random | CheckSpec::ConeLes | CheckSpec::TheoremCrosscheck
        );
        if needs_del && !model.has_del() {
            return Err(usage(format!(
                "check `{}` needs a full bicomplex; `{}` carries only delbar",
                self.name(),
                model.name()
            )));
        }
        match self {
            CheckSpec::ConeLes | CheckSpec::TheoremCrosscheck if !model.is_vaisman() => Err(usage(format!(
                "check `{}` applies to vaisman models; `{}` is a {} model",
                self.name(),
                model.name(),
                model.spec.kind()
            ))),
            CheckSpec::Cartan if model.built.contractions.is_empty() => Err(usage(format!(
                "check `cartan` needs a declared contraction; `{}` has none",
                model.name()
            ))),
            CheckSpec::Action(field) => model.built.contraction(field).map(|_| ()).map_err(|e| {
                usage(format!(
                    "{e} (available: {})",
                    model.spec.contraction_names().join(", ")
                ))
            }),
            _ => Ok(()),
        }
    }
}

/// Replaces `default` with the checks that apply to `model`.
pub fn expand_default(specs: Vec<CheckSpec>, model: &LoadedModel) -> Vec<CheckSpec> {
    let mut out: Vec<CheckSpec> = Vec::new();
    for spec in specs {
        let add = if spec == CheckSpec::Default {
            let mut d = Vec::new();
            if model.has_del() {
                d.extend([
                    CheckSpec::Structure,
                    CheckSpec::FiveTerm,
                    CheckSpec::Frolicher,
                    CheckSpec::Duality,
                    CheckSpec::NaturalMaps,
                ]);
                if !model.built.contractions.is_empty() {
                    d.push(CheckSpec::Cartan);
                }
            }
            if model.is_vaisman() {
                d.extend([CheckSpec::ConeLes, CheckSpec::TheoremCrosscheck]);
            }
            d
        } else {
            vec![spec]
        };
        for s in add {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}
