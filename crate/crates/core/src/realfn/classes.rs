//! Order and class membership predicates.
//!
//! All ℚ-indexed joins and meets of a step trail are attained on some cell,
//! so every condition below reduces to a finite scan over cells.

use super::{ExtPartialRealFn, RealFnError};
use crate::order::Elem;

impl ExtPartialRealFn {
    /// `f ≤ g`: `f(r,—) ≤ g(r,—)` and `g(—,s) ≤ f(—,s)` everywhere.
    pub fn le(&self, other: &ExtPartialRealFn) -> Result<bool, RealFnError> {
        self.check_same(other)?;
        let frame = self.frame();
        let cuts = super::merged_cuts([&self.lower, &self.upper, &other.lower, &other.upper]);
        let (fl, fu) = (self.lower.cells(&cuts), self.upper.cells(&cuts));
        let (gl, gu) = (other.lower.cells(&cuts), other.upper.cells(&cuts));
        Ok((0..fl.len()).all(|j| frame.leq(fl[j], gl[j]) && frame.leq(gu[j], fu[j])))
    }

    /// Compares lower trails only; enough for Hausdorff functions.
    pub fn le_lower_only(&self, other: &ExtPartialRealFn) -> Result<bool, RealFnError> {
        self.check_same(other)?;
        let frame = self.frame();
        let cuts = super::merged_cuts([&self.lower, &other.lower]);
        let (fl, gl) = (self.lower.cells(&cuts), other.lower.cells(&cuts));
        Ok(fl.iter().zip(&gl).all(|(&a, &b)| frame.leq(a, b)))
    }

    /// `(r,—) ∨ (—,s) = 1` whenever `r < s`.
    pub fn is_extended_continuous(&self) -> bool {
        let frame = self.frame();
        let (l, u) = self.cells();
        l.iter().zip(&u).all(|(&a, &b)| frame.join(a, b) == frame.top())
    }

    /// `⋁ f(r,—) = 1 = ⋁ f(—,s)`.
    pub fn joins_to_top(&self) -> bool {
        let top = self.frame().top();
        self.lower.first() == top && self.upper.last() == top
    }

    /// Membership in `C(M)`.
    pub fn is_continuous(&self) -> bool {
        self.is_extended_continuous() && self.joins_to_top()
    }

    /// Lies between two rational constants.
    pub fn is_bounded(&self) -> bool {
        let frame = self.frame();
        self.lower.first() == frame.top()
            && self.lower.last() == frame.bottom()
            && self.upper.first() == frame.bottom()
            && self.upper.last() == frame.top()
    }

    /// Local form: on each cell the upper value is the pseudocomplement of
    /// the lower value and vice versa.
    pub fn is_hausdorff(&self) -> bool {
        let frame = self.frame();
        let (l, u) = self.cells();
        l.iter()
            .zip(&u)
            .all(|(&a, &b)| frame.pstar(a) == b && frame.pstar(b) == a)
    }

    /// `⋀ f(r,—) = 0 = ⋀ f(—,s)`.
    pub fn is_real_valued(&self) -> bool {
        let bottom = self.frame().bottom();
        self.lower.last() == bottom && self.upper.first() == bottom
    }

    /// `(⋁ f(r,—))* = 0 = (⋁ f(—,s))*`.
    pub fn is_real_valued_star(&self) -> bool {
        let frame = self.frame();
        frame.is_dense(self.lower.first()) && frame.is_dense(self.upper.last())
    }

    fn all_closed(&self, values: &[Elem]) -> Result<bool, RealFnError> {
        let cos = self.codomain.require_cos()?;
        Ok(values.iter().all(|&v| cos.is_closed(v)))
    }

    /// Every `f(r,—)` is a closed sublocale.
    pub fn is_lsc_extended(&self) -> Result<bool, RealFnError> {
        self.all_closed(self.lower.values())
    }

    /// Every `f(—,s)` is a closed sublocale.
    pub fn is_usc_extended(&self) -> Result<bool, RealFnError> {
        self.all_closed(self.upper.values())
    }

    /// Closed lower values with `⋁ f(r,—) = 1` and `⋀ f(r,—) = 0`.
    pub fn is_lsc(&self) -> Result<bool, RealFnError> {
        let frame = self.frame();
        Ok(self.is_lsc_extended()? && self.lower.first() == frame.top() && self.lower.last() == frame.bottom())
    }

    pub fn is_usc(&self) -> Result<bool, RealFnError> {
        let frame = self.frame();
        Ok(self.is_usc_extended()? && self.upper.last() == frame.top() && self.upper.first() == frame.bottom())
    }

    /// `f(—,0) ∨ f(0,—)` for continuous `f`.
    pub fn coz(&self) -> Result<Elem, RealFnError> {
        if !self.is_continuous() {
            return Err(RealFnError::NotInC);
        }
        let zero = crate::rational::Rational::from_integer(0);
        let frame = self.frame();
        Ok(frame.join(
            self.lower.eval(&zero, super::Side::At),
            self.upper.eval(&zero, super::Side::At),
        ))
    }
}
