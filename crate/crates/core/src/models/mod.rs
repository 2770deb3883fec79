//! Model specifications, their text format, and the built-in catalog.

mod catalog;
mod parse;

use std::fmt;

use crate::actions::Contraction;
use crate::complexes::{
    from_structure_equations, Bicomplex, ComplexError, ExteriorAlgebra, StructureError, StructureSpec,
};
use crate::exactmath::GaussianRational;
use crate::vaisman::{build_invariant_model, BasicCohomology, Normalization, VaismanError, VaismanModel};

pub use catalog::{catalog, catalog_names, catalog_text, find};
pub use parse::{parse_model_file, serialize_model};

/// Name of the Lee-field contraction on Vaisman models.
pub const LEE: &str = "lee";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("model `{model}` has no contraction `{name}`")]
    UnknownContraction { model: String, name: String },
    #[error("contraction `{name}`: {message}")]
    InvalidContraction { name: String, message: String },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Vaisman(#[from] VaismanError),
    #[error("invalid model: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Lie,
    Matrix,
    Vaisman,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Lie => "lie",
            ModelKind::Matrix => "matrix",
            ModelKind::Vaisman => "vaisman",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Lie(StructureSpec),
    Matrix(Bicomplex),
    Vaisman {
        basic: BasicCohomology,
        normalization: Normalization,
    },
}

/// Contraction with a field, given by its values on generators. On Vaisman
/// models only the Lee field (no values) is available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionDecl {
    pub name: String,
    pub values: Vec<(String, GaussianRational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub name: String,
    pub payload: Payload,
    pub contractions: Vec<ContractionDecl>,
}

impl ModelSpec {
    pub fn kind(&self) -> ModelKind {
        match self.payload {
            Payload::Lie(_) => ModelKind::Lie,
            Payload::Matrix(_) => ModelKind::Matrix,
            Payload::Vaisman { .. } => ModelKind::Vaisman,
        }
    }

    pub fn n(&self) -> usize {
        match &self.payload {
            Payload::Lie(s) => s.n,
            Payload::Matrix(b) => b.n(),
            Payload::Vaisman { basic, .. } => basic.n(),
        }
    }

    pub fn contraction_names(&self) -> Vec<&str> {
        self.contractions.iter().map(|c| c.name.as_str()).collect()
    }
}

/// A model realised as a bicomplex, with its declared contractions.
#[derive(Clone, Debug)]
pub struct BuiltModel {
    pub name: String,
    pub kind: ModelKind,
    pub bicomplex: Bicomplex,
    pub algebra: Option<ExteriorAlgebra>,
    pub vaisman: Option<VaismanModel>,
    pub contractions: Vec<Contraction>,
}

impl BuiltModel {
    pub fn n(&self) -> usize {
        self.bicomplex.n()
    }

    pub fn contraction(&self, name: &str) -> Result<&Contraction, ModelError> {
        self.contractions
            .iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| ModelError::UnknownContraction {
                model: self.name.clone(),
                name: name.to_string(),
            })
    }
}

fn lie_contraction(algebra: &ExteriorAlgebra, decl: &ContractionDecl) -> Result<Contraction, ModelError> {
    let mut values = vec![GaussianRational::zero(); algebra.generators().len()];
    for (g, v) in &decl.values {
        let k = algebra
            .generator_index(g)
            .ok_or_else(|| ModelError::InvalidContraction {
                name: decl.name.clone(),
                message: format!("unknown generator `{g}`"),
            })?;
        values[k] = v.clone();
    }
    Ok(Contraction::from_values(decl.name.clone(), algebra, &values))
}

pub fn build(spec: &ModelSpec) -> Result<BuiltModel, ModelError> {
    let kind = spec.kind();
    let invalid_contraction = |d: &ContractionDecl, message: &str| ModelError::InvalidContraction {
        name: d.name.clone(),
        message: message.to_string(),
    };
    match &spec.payload {
        Payload::Lie(s) => {
            let m = from_structure_equations(s)?;
            let contractions = spec
                .contractions
                .iter()
                .map(|d| lie_contraction(&m.algebra, d))
                .collect::<Result<_, _>>()?;
            Ok(BuiltModel {
                name: spec.name.clone(),
                kind,
                bicomplex: m.bicomplex,
                algebra: Some(m.algebra),
                vaisman: None,
                contractions,
            })
        }
        Payload::Matrix(b) => {
            let report = b.validate();
            if !report.passed() {
                return Err(ModelError::Invalid(report.to_string()));
            }
            if let Some(d) = spec.contractions.first() {
                return Err(invalid_contraction(d, "matrix models carry no contractions"));
            }
            Ok(BuiltModel {
                name: spec.name.clone(),
                kind,
                bicomplex: b.clone(),
                algebra: None,
                vaisman: None,
                contractions: Vec::new(),
            })
        }
        Payload::Vaisman { basic, normalization } => {
            let model = build_invariant_model(basic, true, *normalization)?;
            let mut contractions = Vec::new();
            for d in &spec.contractions {
                if d.name != LEE || !d.values.is_empty() {
                    return Err(invalid_contraction(d, "vaisman models support only `contract lee`"));
                }
                contractions.push(model.lee_contraction());
            }
            Ok(BuiltModel {
                name: spec.name.clone(),
                kind,
                bicomplex: model.complex.clone(),
                algebra: None,
                vaisman: Some(model),
                contractions,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Bidegree;

    #[test]
    fn every_catalog_model_builds_and_validates() {
        for spec in catalog() {
            let m = build(&spec).unwrap();
            assert!(m.bicomplex.validate().passed(), "{}", spec.name);
            assert!(!m.contractions.is_empty(), "{}", spec.name);
        }
    }

    #[test]
    fn catalog_shapes() {
        let t1 = build(&find("torus1").unwrap()).unwrap();
        assert!(t1.bicomplex.d().unwrap().is_zero());
        let iw = build(&find("iwasawa").unwrap()).unwrap();
        assert_eq!(iw.bicomplex.space().dim(Bidegree::new(2, 0)), 3);
        assert!(iw.contraction("central").is_ok());
        assert!(iw.contraction("phi1-dual").is_ok());
        let kt = build(&find("kodaira_thurston").unwrap()).unwrap();
        assert_eq!(kt.bicomplex.delbar_block(Bidegree::new(1, 0)).rank(), 1);
        let h2 = find("hopf2").unwrap();
        assert_eq!(h2.kind(), ModelKind::Vaisman);
        assert_eq!(build(&h2).unwrap().bicomplex.space().dimension(), 8);
        assert!(matches!(find("nope"), Err(ModelError::UnknownModel(_))));
    }

    #[test]
    fn vaisman_rejects_foreign_contractions() {
        let mut spec = find("hopf2").unwrap();
        spec.contractions.push(ContractionDecl {
            name: "x".into(),
            values: Vec::new(),
        });
        assert!(matches!(build(&spec), Err(ModelError::InvalidContraction { .. })));
    }
}
