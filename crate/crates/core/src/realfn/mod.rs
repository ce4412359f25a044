//! Functions on frames as pairs of trails.
//!
//! A frame homomorphism from the frame of extended partial reals into a
//! finite frame `M` is determined by its two generator families
//! `r ↦ f(r,—)` and `s ↦ f(—,s)`. With rational cuts both families are
//! finite step maps, stored here as a lower and an upper [`Trail`]. Every
//! function class (continuous, Hausdorff, semicontinuous, …) is a predicate
//! on this one type.

mod classes;
mod io;
mod ops;
mod sample;
mod trail;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::frame::{Booleanization, FiniteFrame, FrameError};
use crate::order::Elem;
use crate::rational::{Rational, RationalError};
use crate::sublocale::{SublocaleError, SublocaleFrame};

pub use io::{FunctionFile, TrailFile};
pub use ops::{
    delta, gamma, join_hausdorff, join_pointwise, lower_regularization, meet_hausdorff, meet_pointwise, phi, psi,
    upper_regularization, upper_regularization_direct, Regularized,
};
pub use sample::{sample_fn, sample_unit_fn, Profile, SampleConfig};
pub use trail::{merged_cuts, Side, Trail, TrailKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealFnError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Sublocale(#[from] SublocaleError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error("malformed trail: {0}")]
    Malformed(String),
    #[error("lower trail is not antitone at position {0}")]
    NotAntitone(usize),
    #[error("upper trail is not isotone at position {0}")]
    NotIsotone(usize),
    #[error("lower and upper values meet above 0 on cell {0}")]
    ViolatesDisjointness(usize),
    #[error("{a} ∧ {b} ≠ 0")]
    NotDisjoint { a: String, b: String },
    #[error("functions have different codomains")]
    MixedCodomains,
    #[error("function is not extended continuous")]
    NotInCbar,
    #[error("function is not continuous")]
    NotInC,
    #[error("function is not Hausdorff continuous")]
    NotHausdorff,
    #[error("function is not extended continuous over the Booleanization")]
    NotExtContinuous,
    #[error("function is not between the constants -1 and 1")]
    OutOfUnitRange,
    #[error("codomain is not a sublocale frame")]
    CodomainNotSublocaleFrame,
    #[error("codomain {0} is not the Booleanization of the target")]
    NotBooleanizationOf(String),
}

struct CodomainInner {
    frame: Arc<FiniteFrame>,
    cos: Option<Arc<SublocaleFrame>>,
    boolean: OnceLock<Booleanization>,
}

/// The frame a function takes values in, optionally known to be `coS(L)`.
#[derive(Clone)]
pub struct Codomain(Arc<CodomainInner>);

impl Codomain {
    pub fn frame(frame: Arc<FiniteFrame>) -> Self {
        Codomain(Arc::new(CodomainInner {
            frame,
            cos: None,
            boolean: OnceLock::new(),
        }))
    }

    pub fn sublocales(cos: Arc<SublocaleFrame>) -> Self {
        Codomain(Arc::new(CodomainInner {
            frame: cos.frame().clone(),
            cos: Some(cos),
            boolean: OnceLock::new(),
        }))
    }

    pub fn get(&self) -> &Arc<FiniteFrame> {
        &self.0.frame
    }

    pub fn cos(&self) -> Option<&Arc<SublocaleFrame>> {
        self.0.cos.as_ref()
    }

    pub fn require_cos(&self) -> Result<&Arc<SublocaleFrame>, RealFnError> {
        self.cos().ok_or(RealFnError::CodomainNotSublocaleFrame)
    }

    pub fn name(&self) -> &str {
        self.0.frame.name()
    }

    /// `𝔅(M)` with `β`, computed once per codomain.
    pub fn booleanization(&self) -> &Booleanization {
        self.0.boolean.get_or_init(|| self.0.frame.booleanization())
    }

    /// `𝔅(M)` as a codomain of its own.
    pub fn boolean_codomain(&self) -> Codomain {
        Codomain::frame(self.booleanization().frame.clone())
    }

    pub fn same(&self, other: &Codomain) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || Arc::ptr_eq(&self.0.frame, &other.0.frame) || *self.0.frame == *other.0.frame
    }
}

impl fmt::Debug for Codomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codomain({})", self.name())
    }
}

/// A homomorphism out of the frame of extended partial reals.
///
/// Invariants, enforced by [`ExtPartialRealFn::new`]: the lower trail is
/// antitone, the upper isotone, both canonical, and on every cell the lower
/// and upper values are disjoint.
#[derive(Clone)]
pub struct ExtPartialRealFn {
    codomain: Codomain,
    lower: Trail,
    upper: Trail,
}

impl PartialEq for ExtPartialRealFn {
    fn eq(&self, other: &Self) -> bool {
        self.lower == other.lower && self.upper == other.upper && self.codomain.same(&other.codomain)
    }
}

impl Eq for ExtPartialRealFn {}

impl fmt::Debug for ExtPartialRealFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |t: &Trail| {
            let frame = self.codomain.get();
            let mut out = frame.name_of(t.values()[0]).to_string();
            for (b, v) in t.breakpoints().iter().zip(&t.values()[1..]) {
                out.push_str(&format!(" |{b}| {}", frame.name_of(*v)));
            }
            out
        };
        write!(
            f,
            "Fn[{}]{{ lower: {}; upper: {} }}",
            self.codomain.name(),
            show(&self.lower),
            show(&self.upper)
        )
    }
}

impl ExtPartialRealFn {
    /// Validates and normalizes a trail pair.
    pub fn new(codomain: Codomain, lower: Trail, upper: Trail) -> Result<Self, RealFnError> {
        let frame = codomain.get().clone();
        for t in [&lower, &upper] {
            if !t.breakpoints_increasing() {
                return Err(RealFnError::Malformed("breakpoints must increase strictly".into()));
            }
            if t.values().iter().any(|v| v.0 >= frame.len()) {
                return Err(RealFnError::Malformed("value outside the codomain".into()));
            }
        }
        if lower.kind() != TrailKind::Lower || upper.kind() != TrailKind::Upper {
            return Err(RealFnError::Malformed("trail kinds swapped".into()));
        }
        if let Some(i) = lower.monotonicity_violation(&frame) {
            return Err(RealFnError::NotAntitone(i));
        }
        if let Some(i) = upper.monotonicity_violation(&frame) {
            return Err(RealFnError::NotIsotone(i));
        }
        let f = ExtPartialRealFn {
            codomain,
            lower: lower.normalized(),
            upper: upper.normalized(),
        };
        let (l, u) = f.cells();
        if let Some(j) = (0..l.len()).find(|&j| frame.meet(l[j], u[j]) != frame.bottom()) {
            return Err(RealFnError::ViolatesDisjointness(j));
        }
        Ok(f)
    }

    /// Builds from per-cell values on shared cuts (already known to be valid).
    pub(crate) fn from_cells(codomain: &Codomain, cuts: &[Rational], lower: &[Elem], upper: &[Elem]) -> Self {
        let f = ExtPartialRealFn {
            codomain: codomain.clone(),
            lower: Trail::from_cells(TrailKind::Lower, cuts, lower),
            upper: Trail::from_cells(TrailKind::Upper, cuts, upper),
        };
        debug_assert!(Self::new(f.codomain.clone(), f.lower.clone(), f.upper.clone()).is_ok());
        f
    }

    pub fn codomain(&self) -> &Codomain {
        &self.codomain
    }

    pub fn frame(&self) -> &Arc<FiniteFrame> {
        self.codomain.get()
    }

    pub fn lower(&self) -> &Trail {
        &self.lower
    }

    pub fn upper(&self) -> &Trail {
        &self.upper
    }

    /// Union of both trails' breakpoints.
    pub fn cuts(&self) -> Vec<Rational> {
        merged_cuts([&self.lower, &self.upper])
    }

    /// Lower and upper value on each open cell of [`Self::cuts`].
    pub fn cells(&self) -> (Vec<Elem>, Vec<Elem>) {
        let cuts = self.cuts();
        (self.lower.cells(&cuts), self.upper.cells(&cuts))
    }

    /// `f(q,—)` (lower) or `f(—,q)` (upper) read at `side` of `q`.
    pub fn eval(&self, kind: TrailKind, q: &Rational, side: Side) -> Elem {
        match kind {
            TrailKind::Lower => self.lower.eval(q, side),
            TrailKind::Upper => self.upper.eval(q, side),
        }
    }

    pub(crate) fn check_same(&self, other: &ExtPartialRealFn) -> Result<(), RealFnError> {
        if self.codomain.same(&other.codomain) {
            Ok(())
        } else {
            Err(RealFnError::MixedCodomains)
        }
    }
}
