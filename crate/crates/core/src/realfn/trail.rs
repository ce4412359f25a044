//! Step maps `ℚ → M` with finitely many rational breakpoints.
//!
//! With breakpoints `b₁ < … < b_k` and values `v₀, …, v_k`:
//! a lower trail takes `vᵢ` on `[bᵢ, bᵢ₊₁)` (right-continuous, antitone);
//! an upper trail takes `vᵢ` on `(bᵢ, bᵢ₊₁]` (left-continuous, isotone).
//! On any open interval between consecutive breakpoints both kinds are
//! constant, so most operations work on the open cells of a merged partition.

use serde::{Deserialize, Serialize};

use crate::frame::FiniteFrame;
use crate::order::Elem;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrailKind {
    /// `r ↦ f(r,—)`: antitone, right-continuous.
    Lower,
    /// `s ↦ f(—,s)`: isotone, left-continuous.
    Upper,
}

impl TrailKind {
    pub fn flip(self) -> Self {
        match self {
            TrailKind::Lower => TrailKind::Upper,
            TrailKind::Upper => TrailKind::Lower,
        }
    }
}

/// Where to read a trail relative to a rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    At,
    LeftLimit,
    RightLimit,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trail {
    kind: TrailKind,
    breakpoints: Vec<Rational>,
    values: Vec<Elem>,
}

impl Trail {
    /// Builds a trail without checking monotonicity; shape is asserted.
    pub(crate) fn raw(kind: TrailKind, breakpoints: Vec<Rational>, values: Vec<Elem>) -> Self {
        assert_eq!(values.len(), breakpoints.len() + 1, "one more value than breakpoints");
        Trail {
            kind,
            breakpoints,
            values,
        }
    }

    pub fn constant(kind: TrailKind, value: Elem) -> Self {
        Trail::raw(kind, Vec::new(), vec![value])
    }

    pub fn kind(&self) -> TrailKind {
        self.kind
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn first(&self) -> Elem {
        self.values[0]
    }

    pub fn last(&self) -> Elem {
        *self.values.last().expect("trails are nonempty")
    }

    fn count_leq(&self, q: &Rational) -> usize {
        self.breakpoints.partition_point(|b| b <= q)
    }

    fn count_lt(&self, q: &Rational) -> usize {
        self.breakpoints.partition_point(|b| b < q)
    }

    pub fn eval(&self, q: &Rational, side: Side) -> Elem {
        let idx = match (side, self.kind) {
            (Side::At, TrailKind::Lower) | (Side::RightLimit, _) => self.count_leq(q),
            (Side::At, TrailKind::Upper) | (Side::LeftLimit, _) => self.count_lt(q),
        };
        self.values[idx]
    }

    /// Value on each open cell of the partition by `cuts` (which must contain
    /// every breakpoint of this trail): `cuts.len() + 1` entries.
    pub fn cells(&self, cuts: &[Rational]) -> Vec<Elem> {
        std::iter::once(self.values[0])
            .chain(cuts.iter().map(|c| self.values[self.count_leq(c)]))
            .collect()
    }

    /// Rebuilds a canonical trail from per-cell values on `cuts`.
    pub fn from_cells(kind: TrailKind, cuts: &[Rational], cells: &[Elem]) -> Self {
        assert_eq!(cells.len(), cuts.len() + 1);
        let mut breakpoints = Vec::new();
        let mut values = vec![cells[0]];
        for (c, &v) in cuts.iter().zip(&cells[1..]) {
            if v != *values.last().expect("nonempty") {
                breakpoints.push(*c);
                values.push(v);
            }
        }
        Trail {
            kind,
            breakpoints,
            values,
        }
    }

    /// Removes breakpoints whose adjacent values coincide.
    pub fn normalized(&self) -> Self {
        Trail::from_cells(self.kind, &self.breakpoints, &self.values)
    }

    pub fn is_canonical(&self) -> bool {
        self.values.windows(2).all(|w| w[0] != w[1])
    }

    pub fn map_values(&self, f: impl Fn(Elem) -> Elem) -> Self {
        Trail {
            kind: self.kind,
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
        .normalized()
    }

    /// First offending index if values are not monotone in the required direction.
    pub fn monotonicity_violation(&self, frame: &FiniteFrame) -> Option<usize> {
        self.values.windows(2).position(|w| match self.kind {
            TrailKind::Lower => !frame.leq(w[1], w[0]),
            TrailKind::Upper => !frame.leq(w[0], w[1]),
        })
    }

    pub fn breakpoints_increasing(&self) -> bool {
        self.breakpoints.windows(2).all(|w| w[0] < w[1])
    }
}

/// Sorted union of the breakpoints of all given trails.
pub fn merged_cuts<'a>(trails: impl IntoIterator<Item = &'a Trail>) -> Vec<Rational> {
    let mut cuts: Vec<Rational> = trails.into_iter().flat_map(|t| t.breakpoints.iter().copied()).collect();
    cuts.sort();
    cuts.dedup();
    cuts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn continuity_conventions() {
        let lower = Trail::raw(TrailKind::Lower, vec![q(0)], vec![Elem(1), Elem(0)]);
        assert_eq!(lower.eval(&q(0), Side::At), Elem(0));
        assert_eq!(lower.eval(&q(0), Side::LeftLimit), Elem(1));
        assert_eq!(lower.eval(&q(0), Side::RightLimit), Elem(0));
        let upper = Trail::raw(TrailKind::Upper, vec![q(0)], vec![Elem(0), Elem(1)]);
        assert_eq!(upper.eval(&q(0), Side::At), Elem(0));
        assert_eq!(upper.eval(&q(0), Side::RightLimit), Elem(1));
        let c = Trail::constant(TrailKind::Lower, Elem(3));
        assert_eq!(c.eval(&q(-7), Side::At), Elem(3));
    }

    #[test]
    fn cells_and_rebuild() {
        let t = Trail::raw(TrailKind::Lower, vec![q(0), q(2)], vec![Elem(2), Elem(1), Elem(0)]);
        let cuts = vec![q(-1), q(0), q(1), q(2)];
        let cells = t.cells(&cuts);
        assert_eq!(cells, vec![Elem(2), Elem(2), Elem(1), Elem(1), Elem(0)]);
        assert_eq!(Trail::from_cells(TrailKind::Lower, &cuts, &cells), t);
    }

    #[test]
    fn normalization_merges_equal_neighbours() {
        let t = Trail::raw(TrailKind::Upper, vec![q(0), q(1)], vec![Elem(0), Elem(0), Elem(1)]);
        let n = t.normalized();
        assert_eq!(n.breakpoints(), &[q(1)]);
        assert!(n.is_canonical());
        assert!(!t.is_canonical());
    }
}
