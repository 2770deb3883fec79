use super::{parse_model_file, ModelError, ModelSpec};

const SOURCES: [(&str, &str); 7] = [
    ("torus1", include_str!("../../models/torus1.cplx")),
    ("torus2", include_str!("../../models/torus2.cplx")),
    ("torus3", include_str!("../../models/torus3.cplx")),
    ("iwasawa", include_str!("../../models/iwasawa.cplx")),
    ("kodaira_thurston", include_str!("../../models/kodaira_thurston.cplx")),
    ("hopf2", include_str!("../../models/hopf2.vsm")),
    ("hopf3", include_str!("../../models/hopf3.vsm")),
];

pub fn catalog_names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).collect()
}

/// Source text of a catalog model.
pub fn catalog_text(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn catalog() -> Vec<ModelSpec> {
    SOURCES
        .iter()
        .map(|(name, text)| parse_model_file(text).unwrap_or_else(|e| panic!("catalog model {name}: {e}")))
        .collect()
}

pub fn find(name: &str) -> Result<ModelSpec, ModelError> {
    let text = catalog_text(name).ok_or_else(|| ModelError::UnknownModel(name.to_string()))?;
    parse_model_file(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Payload;
    use crate::vaisman::hopf_basic;

    #[test]
    fn names_unique_and_match_headers() {
        let specs = catalog();
        for (spec, name) in specs.iter().zip(catalog_names()) {
            assert_eq!(spec.name, name);
        }
        let mut names = catalog_names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), SOURCES.len());
    }

    #[test]
    fn hopf_entries_equal_hopf_basic() {
        for n in [2, 3] {
            let Payload::Vaisman { basic, .. } = find(&format!("hopf{n}")).unwrap().payload else {
                panic!("hopf is a vaisman model");
            };
            assert_eq!(basic, hopf_basic(n).unwrap());
        }
    }
}
