use crate::{parse_scheme, SchemeDef, SchemeError};

macro_rules! schemes {
    ($($name:literal),* $(,)?) => {
        const SOURCES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../schemes/", $name, ".scheme")))),*
        ];
    };
}

schemes!(
    "d2q9-iso",
    "d2q13-iso",
    "d3q19-iso",
    "d3q27-iso",
    "d3q33-iso",
    "d3q27-2-iso",
    "d2q13-th",
    "d2q17-th",
    "d2v17-th",
    "d2w17-th",
    "d3q33-th",
    "d3q27-2-th",
);

/// Names of the built-in schemes, in registry order.
pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

/// Descriptor text of a built-in.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn builtin(name: &str) -> Result<SchemeDef, SchemeError> {
    let src = builtin_source(name).ok_or_else(|| SchemeError::UnknownScheme(name.to_string()))?;
    Ok(parse_scheme(src).expect("built-in descriptors are valid"))
}

/// A built-in with a named variant applied when the scheme declares it.
/// Schemes without that variant are returned unchanged.
pub fn builtin_variant(name: &str, variant: Option<&str>) -> Result<SchemeDef, SchemeError> {
    let s = builtin(name)?;
    match variant {
        Some(v) if s.has_variant(v) => s.with_variant(v),
        _ => Ok(s),
    }
}
