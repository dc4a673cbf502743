use super::{validate_opca, FiniteOpca, OpcaError};

const BUNDLED: &[(&str, &str)] = &[
    ("one", include_str!("../../data/one.opca")),
    ("s2", include_str!("../../data/s2.opca")),
    ("s3", include_str!("../../data/s3.opca")),
    ("diamond", include_str!("../../data/diamond.opca")),
    ("lproj3", include_str!("../../data/lproj3.opca")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

/// One of the bundled structures, by name.
pub fn builtin(name: &str) -> Option<FiniteOpca> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| validate_opca(text).expect("bundled structure is valid"))
}

/// Loads `builtin:NAME` or a file path.
pub fn load_opca(spec: &str) -> Result<FiniteOpca, OpcaError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name).ok_or_else(|| OpcaError::Io {
            path: spec.to_string(),
            message: format!(
                "no bundled structure `{name}` (have: {})",
                builtin_names().collect::<Vec<_>>().join(", ")
            ),
        });
    }
    let text = std::fs::read_to_string(spec).map_err(|e| OpcaError::Io {
        path: spec.to_string(),
        message: e.to_string(),
    })?;
    validate_opca(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_structures_validate() {
        for n in builtin_names() {
            let a = builtin(n).unwrap();
            assert!(a.len() <= 4, "{n}");
            assert!(a.is_monotone());
        }
    }

    #[test]
    fn unknown_builtin_is_an_error() {
        assert!(load_opca("builtin:nope").is_err());
        assert!(load_opca("builtin:s3").is_ok());
    }
}
