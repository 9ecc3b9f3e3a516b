//! Example algebras shipped with the crate.

use crate::field::FieldSpec;
use crate::presentation::{gamma_presentation, parse_presentation, Presentation};

/// `(name, source)` of every bundled presentation file.
pub const BUNDLED: &[(&str, &str)] = &[
    ("lambda1", include_str!("../data/lambda1.alg")),
    ("lambda2", include_str!("../data/lambda2.alg")),
    ("kx2", include_str!("../data/kx2.alg")),
    ("gamma1", include_str!("../data/gamma1.alg")),
    ("point", include_str!("../data/point.alg")),
    ("a", include_str!("../data/a.alg")),
    ("a_char2", include_str!("../data/a_char2.alg")),
];

pub fn source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".alg").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// A bundled presentation, optionally moved to another field.
pub fn presentation(name: &str, field: Option<FieldSpec>) -> Option<Presentation> {
    let p = parse_presentation(source(name)?).expect("bundled files parse");
    Some(match field {
        Some(f) => p.with_field(f),
        None => p,
    })
}

/// `Γ_n` for `n` in `0..=max`.
pub fn gammas(max: usize, field: FieldSpec) -> Vec<Presentation> {
    (0..=max).map(|n| gamma_presentation(n, field)).collect()
}
