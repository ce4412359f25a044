//! JSON form of functions, with exact `p/q` rationals.

use serde::{Deserialize, Serialize};

use super::{Codomain, ExtPartialRealFn, RealFnError, Trail, TrailKind};
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailFile {
    pub breakpoints: Vec<String>,
    pub values: Vec<String>,
}

/// `{"frame": name, "lower": {...}, "upper": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionFile {
    pub frame: String,
    pub lower: TrailFile,
    pub upper: TrailFile,
}

impl TrailFile {
    pub fn from_trail(t: &Trail, codomain: &Codomain) -> Self {
        TrailFile {
            breakpoints: t.breakpoints().iter().map(format_rational).collect(),
            values: t
                .values()
                .iter()
                .map(|&v| codomain.get().name_of(v).to_string())
                .collect(),
        }
    }

    fn to_trail(&self, kind: TrailKind, codomain: &Codomain) -> Result<Trail, RealFnError> {
        let bps = self
            .breakpoints
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        let vals = self
            .values
            .iter()
            .map(|s| codomain.get().elem(s))
            .collect::<Result<Vec<_>, _>>()?;
        if vals.len() != bps.len() + 1 {
            return Err(RealFnError::Malformed(format!(
                "{} values for {} breakpoints",
                vals.len(),
                bps.len()
            )));
        }
        Ok(Trail::raw(kind, bps, vals))
    }
}

impl FunctionFile {
    pub fn from_fn(f: &ExtPartialRealFn) -> Self {
        FunctionFile {
            frame: f.codomain().name().to_string(),
            lower: TrailFile::from_trail(f.lower(), f.codomain()),
            upper: TrailFile::from_trail(f.upper(), f.codomain()),
        }
    }

    pub fn parse(text: &str) -> Result<Self, RealFnError> {
        serde_json::from_str(text).map_err(|e| RealFnError::Malformed(e.to_string()))
    }

    /// The stored trails, checked only for shape.
    pub fn to_raw_trails(&self, codomain: &Codomain) -> Result<(Trail, Trail), RealFnError> {
        Ok((
            self.lower.to_trail(TrailKind::Lower, codomain)?,
            self.upper.to_trail(TrailKind::Upper, codomain)?,
        ))
    }

    /// Reads the function into `codomain`, whose name must match `frame`.
    pub fn to_fn(&self, codomain: &Codomain) -> Result<ExtPartialRealFn, RealFnError> {
        if codomain.name() != self.frame {
            return Err(RealFnError::Malformed(format!(
                "function is over {:?}, codomain is {:?}",
                self.frame,
                codomain.name()
            )));
        }
        ExtPartialRealFn::new(
            codomain.clone(),
            self.lower.to_trail(TrailKind::Lower, codomain)?,
            self.upper.to_trail(TrailKind::Upper, codomain)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realfn::{sample_fn, Profile};
    use crate::registry;

    #[test]
    fn round_trip() {
        let m = Codomain::frame(registry::w5());
        for seed in 0..50 {
            let f = sample_fn(&m, Profile::ArbitraryIc, seed);
            let text = serde_json::to_string(&FunctionFile::from_fn(&f)).unwrap();
            assert_eq!(FunctionFile::parse(&text).unwrap().to_fn(&m).unwrap(), f);
        }
    }

    #[test]
    fn bad_rational_is_rejected() {
        let m = Codomain::frame(registry::c3());
        let text = r#"{"frame":"C3","lower":{"breakpoints":["1/0"],"values":["1","0"]},
                       "upper":{"breakpoints":[],"values":["0"]}}"#;
        let err = FunctionFile::parse(text).unwrap().to_fn(&m).unwrap_err();
        assert!(matches!(err, RealFnError::Rational(_)));
    }
}
