//! Named frames used as fixtures throughout the crate and the CLI.

use std::sync::Arc;

use crate::frame::{FiniteFrame, FrameError};
use crate::realfn::{Codomain, RealFnError};
use crate::sublocale::all_sublocales;

fn build(name: &str, elements: &[&str], covers: &[(&str, &str)]) -> Arc<FiniteFrame> {
    Arc::new(FiniteFrame::from_covers(name, elements, covers).expect("fixture is a frame"))
}

/// The one-element frame `0 = 1`.
pub fn trivial() -> Arc<FiniteFrame> {
    build("1", &["0"], &[])
}

/// The two-element frame `0 < 1`.
pub fn two() -> Arc<FiniteFrame> {
    build("2", &["0", "1"], &[("0", "1")])
}

/// The chain `0 < a < 1`.
pub fn c3() -> Arc<FiniteFrame> {
    build("C3", &["0", "a", "1"], &[("0", "a"), ("a", "1")])
}

/// The four-element Boolean algebra with atoms `u`, `w`.
pub fn d4() -> Arc<FiniteFrame> {
    build(
        "D4",
        &["0", "u", "w", "1"],
        &[("0", "u"), ("0", "w"), ("u", "1"), ("w", "1")],
    )
}

/// Opens of the three-point space with open sets `∅, {p}, {q}, {p,q}, X`.
pub fn w5() -> Arc<FiniteFrame> {
    build(
        "W5",
        &["0", "x", "y", "xy", "1"],
        &[("0", "x"), ("0", "y"), ("x", "xy"), ("y", "xy"), ("xy", "1")],
    )
}

/// The eight-element Boolean algebra on atoms `p`, `q`, `r`.
pub fn b8() -> Arc<FiniteFrame> {
    build(
        "B8",
        &["0", "p", "q", "r", "pq", "pr", "qr", "1"],
        &[
            ("0", "p"),
            ("0", "q"),
            ("0", "r"),
            ("p", "pq"),
            ("p", "pr"),
            ("q", "pq"),
            ("q", "qr"),
            ("r", "pr"),
            ("r", "qr"),
            ("pq", "1"),
            ("pr", "1"),
            ("qr", "1"),
        ],
    )
}

pub const BUILTIN_NAMES: &[&str] = &["1", "2", "C3", "D4", "W5", "B8"];

/// Looks up a fixture by name (`"F2"` is accepted for `"2"`).
pub fn builtin(name: &str) -> Result<Arc<FiniteFrame>, FrameError> {
    match name {
        "1" | "trivial" => Ok(trivial()),
        "2" | "F2" => Ok(two()),
        "C3" => Ok(c3()),
        "D4" => Ok(d4()),
        "W5" => Ok(w5()),
        "B8" => Ok(b8()),
        other => Err(FrameError::UnknownElement(other.to_string())),
    }
}

/// Resolves a codomain name: a frame name, `coS(NAME)` or `B(NAME)`, where
/// `NAME` is one of `known` or a builtin.
pub fn codomain(name: &str, known: &[Arc<FiniteFrame>]) -> Result<Codomain, RealFnError> {
    let base = |n: &str| -> Result<Arc<FiniteFrame>, FrameError> {
        match known.iter().find(|f| f.name() == n) {
            Some(f) => Ok(f.clone()),
            None => builtin(n),
        }
    };
    if let Some(inner) = name.strip_prefix("coS(").and_then(|r| r.strip_suffix(')')) {
        let parent = base(inner)?;
        return Ok(Codomain::sublocales(Arc::new(all_sublocales(&parent)?)));
    }
    if let Some(inner) = name.strip_prefix("B(").and_then(|r| r.strip_suffix(')')) {
        return Ok(Codomain::frame(base(inner)?).boolean_codomain());
    }
    Ok(Codomain::frame(base(name)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codomain_names_resolve() {
        assert_eq!(codomain("W5", &[]).unwrap().name(), "W5");
        let cos = codomain("coS(C3)", &[]).unwrap();
        assert_eq!(cos.name(), "coS(C3)");
        assert!(cos.cos().is_some());
        assert_eq!(codomain("B(W5)", &[]).unwrap().get().len(), 4);
        assert!(codomain("coS(nope)", &[]).is_err());
    }

    #[test]
    fn fixtures_pass_their_own_laws() {
        for name in BUILTIN_NAMES {
            let f = builtin(name).unwrap();
            assert_eq!(f.name(), *name);
            f.check_laws().unwrap();
        }
        assert!(builtin("nope").is_err());
    }
}
