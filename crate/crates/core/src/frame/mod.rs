//! Finite frames: validated finite distributive lattices with Heyting tables.
//!
//! A finite distributive lattice is automatically a frame (arbitrary joins
//! are finite joins), so validation only has to check the binary laws.

mod canon;
mod enumerate;
mod hom;
mod io;
mod predicates;

use std::fmt;

use serde_json::json;

use crate::order::{Elem, FiniteLattice, FinitePoset};

pub use canon::{canonical_form, isomorphic, CanonicalForm};
pub use enumerate::{enumerate_frames, frames_of_size, DEFAULT_ENUMERATION_LIMIT};
pub use hom::FrameMap;
pub use io::{FrameFile, TablesFile};
pub use predicates::{Booleanization, SubfitFailure};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("a frame needs at least one element")]
    Empty,
    #[error("element {0:?} listed twice")]
    DuplicateElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("order is not antisymmetric: {a} <= {b} <= {a}")]
    NotAPoset { a: String, b: String },
    #[error("relation is not transitive: {a} <= {b} <= {c} but not {a} <= {c}")]
    NotTransitive { a: String, b: String, c: String },
    #[error("no least element")]
    NoBottom,
    #[error("no greatest element")]
    NoTop,
    #[error("{a} and {b} lack a meet or a join")]
    NotALattice { a: String, b: String },
    #[error("distributivity fails at ({a}, {b}, {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("{law} violated at {witness:?}")]
    LawViolated { law: String, witness: Vec<String> },
    #[error("{what}: requested {requested}, limit is {limit}")]
    LimitExceeded {
        what: String,
        requested: usize,
        limit: usize,
    },
    #[error("maps between different frames: {0}")]
    Mismatch(String),
    #[error("malformed frame file: {0}")]
    Schema(String),
}

impl FrameError {
    /// Machine-readable rejection: the violated law and its witness elements.
    pub fn diagnostic(&self) -> serde_json::Value {
        let (law, witness): (&str, Vec<&str>) = match self {
            FrameError::Empty => ("nonempty", vec![]),
            FrameError::DuplicateElement(e) => ("distinct-elements", vec![e]),
            FrameError::UnknownElement(e) => ("known-element", vec![e]),
            FrameError::NotAPoset { a, b } => ("antisymmetry", vec![a, b]),
            FrameError::NotTransitive { a, b, c } => ("transitivity", vec![a, b, c]),
            FrameError::NoBottom => ("bottom", vec![]),
            FrameError::NoTop => ("top", vec![]),
            FrameError::NotALattice { a, b } => ("lattice", vec![a, b]),
            FrameError::NotDistributive { a, b, c } => ("distributivity", vec![a, b, c]),
            FrameError::LawViolated { law, witness } => {
                return json!({ "law": law, "witness": witness });
            }
            FrameError::LimitExceeded { .. } => ("limit", vec![]),
            FrameError::Mismatch(_) => ("same-frame", vec![]),
            FrameError::Schema(_) => ("schema", vec![]),
        };
        json!({ "law": law, "witness": witness })
    }
}

/// Raw operation tables, indexed by element position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameTables {
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub arrow: Vec<Vec<usize>>,
    pub pstar: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
}

/// A finite frame with all operation tables precomputed.
///
/// Values built through [`FiniteFrame::from_covers`] and friends satisfy every
/// frame law. [`FiniteFrame::from_tables_unchecked`] exists so that corrupted
/// tables can be loaded and then caught by [`FiniteFrame::check_laws`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFrame {
    lattice: FiniteLattice,
    arrow: Vec<Elem>,
    pstar: Vec<Elem>,
}

impl FiniteFrame {
    /// Validates a frame given by its cover relation (`(x, y)`: y covers x).
    pub fn from_covers<S: AsRef<str>>(
        name: impl Into<String>,
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, FrameError> {
        Self::from_poset(FinitePoset::from_covers(name, elements, covers)?)
    }

    /// Validates a frame given by a full order relation.
    pub fn from_relation(
        name: impl Into<String>,
        names: Vec<String>,
        relation: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, FrameError> {
        Self::from_poset(FinitePoset::from_relation(name, names, relation)?)
    }

    pub fn from_poset(poset: FinitePoset) -> Result<Self, FrameError> {
        Self::from_lattice(FiniteLattice::from_poset(poset)?)
    }

    pub fn from_lattice(lattice: FiniteLattice) -> Result<Self, FrameError> {
        if let Some((a, b, c)) = lattice.distributivity_violation() {
            let name = |e: Elem| lattice.poset().name_of(e).to_string();
            return Err(FrameError::NotDistributive {
                a: name(a),
                b: name(b),
                c: name(c),
            });
        }
        let n = lattice.len();
        let mut arrow = vec![Elem(0); n * n];
        for b in lattice.elements() {
            for c in lattice.elements() {
                // b -> c is the largest x with x ∧ b <= c
                let v = lattice.join_all(lattice.elements().filter(|&x| lattice.leq(lattice.meet(x, b), c)));
                arrow[b.0 * n + c.0] = v;
            }
        }
        let bottom = lattice.bottom();
        let pstar = lattice.elements().map(|a| arrow[a.0 * n + bottom.0]).collect();
        Ok(FiniteFrame { lattice, arrow, pstar })
    }

    /// Loads tables verbatim without checking any law.
    pub fn from_tables_unchecked(
        name: impl Into<String>,
        names: Vec<String>,
        tables: &FrameTables,
    ) -> Result<Self, FrameError> {
        let n = names.len();
        let square_ok =
            |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n));
        if n == 0 {
            return Err(FrameError::Empty);
        }
        if tables.leq.len() != n
            || tables.leq.iter().any(|r| r.len() != n)
            || !square_ok(&tables.meet)
            || !square_ok(&tables.join)
            || !square_ok(&tables.arrow)
            || tables.pstar.len() != n
            || tables.pstar.iter().any(|&x| x >= n)
            || tables.bottom >= n
            || tables.top >= n
        {
            return Err(FrameError::Schema("table dimensions do not match elements".into()));
        }
        let flat = |t: &Vec<Vec<usize>>| t.iter().flatten().map(|&x| Elem(x)).collect::<Vec<_>>();
        let leq = tables.leq.iter().flatten().copied().collect();
        let poset = FinitePoset::from_parts_unchecked(name.into(), names, leq);
        let lattice = FiniteLattice::from_parts_unchecked(
            poset,
            flat(&tables.meet),
            flat(&tables.join),
            Elem(tables.bottom),
            Elem(tables.top),
        );
        Ok(FiniteFrame {
            lattice,
            arrow: flat(&tables.arrow),
            pstar: tables.pstar.iter().map(|&x| Elem(x)).collect(),
        })
    }

    pub fn tables(&self) -> FrameTables {
        let n = self.len();
        let rows =
            |f: &dyn Fn(Elem, Elem) -> usize| (0..n).map(|i| (0..n).map(|j| f(Elem(i), Elem(j))).collect()).collect();
        FrameTables {
            leq: (0..n)
                .map(|i| (0..n).map(|j| self.leq(Elem(i), Elem(j))).collect())
                .collect(),
            meet: rows(&|a, b| self.meet(a, b).0),
            join: rows(&|a, b| self.join(a, b).0),
            arrow: rows(&|a, b| self.arrow(a, b).0),
            pstar: self.elements().map(|a| self.pstar(a).0).collect(),
            bottom: self.bottom().0,
            top: self.top().0,
        }
    }

    /// Re-checks every frame law directly against the stored tables.
    pub fn check_laws(&self) -> Result<(), FrameError> {
        let names = |es: &[Elem]| es.iter().map(|&e| self.name_of(e).to_string()).collect();
        let fail = |law: &str, es: &[Elem]| {
            Err(FrameError::LawViolated {
                law: law.to_string(),
                witness: names(es),
            })
        };
        let all: Vec<Elem> = self.elements().collect();
        for &a in &all {
            if !self.leq(a, a) {
                return fail("reflexivity", &[a]);
            }
            if !self.leq(self.bottom(), a) {
                return fail("bottom", &[a]);
            }
            if !self.leq(a, self.top()) {
                return fail("top", &[a]);
            }
            for &b in &all {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return fail("antisymmetry", &[a, b]);
                }
                for &c in &all {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return fail("transitivity", &[a, b, c]);
                    }
                }
            }
        }
        for &a in &all {
            for &b in &all {
                let m = self.meet(a, b);
                let glb = self.leq(m, a)
                    && self.leq(m, b)
                    && all
                        .iter()
                        .all(|&x| !(self.leq(x, a) && self.leq(x, b)) || self.leq(x, m));
                if !glb {
                    return fail("meet", &[a, b]);
                }
                let j = self.join(a, b);
                let lub = self.leq(a, j)
                    && self.leq(b, j)
                    && all
                        .iter()
                        .all(|&x| !(self.leq(a, x) && self.leq(b, x)) || self.leq(j, x));
                if !lub {
                    return fail("join", &[a, b]);
                }
            }
        }
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return fail("distributivity", &[a, b, c]);
                    }
                    if self.leq(self.meet(a, b), c) != self.leq(a, self.arrow(b, c)) {
                        return fail("heyting-adjunction", &[a, b, c]);
                    }
                }
            }
        }
        for &a in &all {
            if self.pstar(a) != self.arrow(a, self.bottom()) {
                return fail("pseudocomplement", &[a]);
            }
            if self.pstar(self.pstar(self.pstar(a))) != self.pstar(a) {
                return fail("triple-star", &[a]);
            }
            for &b in &all {
                if self.leq(a, b) && !self.leq(self.pstar(b), self.pstar(a)) {
                    return fail("pstar-antitone", &[a, b]);
                }
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn poset(&self) -> &FinitePoset {
        self.lattice.poset()
    }

    pub fn name(&self) -> &str {
        self.poset().name()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.lattice.poset_mut().set_name(name);
        self
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn names(&self) -> &[String] {
        self.poset().names()
    }

    pub fn name_of(&self, e: Elem) -> &str {
        self.poset().name_of(e)
    }

    pub fn elem(&self, name: &str) -> Result<Elem, FrameError> {
        self.poset().elem(name)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.lattice.elements()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lattice.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.meet(a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }

    #[inline]
    pub fn arrow(&self, a: Elem, b: Elem) -> Elem {
        self.arrow[a.0 * self.len() + b.0]
    }

    #[inline]
    pub fn pstar(&self, a: Elem) -> Elem {
        self.pstar[a.0]
    }

    pub fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }

    pub fn top(&self) -> Elem {
        self.lattice.top()
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        self.lattice.meet_all(items)
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        self.lattice.join_all(items)
    }

    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        self.poset().covers()
    }

    pub fn is_boolean(&self) -> bool {
        self.elements().all(|a| self.is_complemented(a))
    }

    /// Regular elements `a = a**`.
    pub fn regular_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.pstar(self.pstar(a)) == a).collect()
    }
}

impl fmt::Display for FiniteFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} elements)", self.name(), self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> FiniteFrame {
        FiniteFrame::from_covers("C3", &["0", "a", "1"], &[("0", "a"), ("a", "1")]).unwrap()
    }

    fn m5() -> Result<FiniteFrame, FrameError> {
        FiniteFrame::from_covers(
            "M5",
            &["0", "x", "y", "z", "1"],
            &[("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
        )
    }

    #[test]
    fn trivial_frame() {
        let t = FiniteFrame::from_covers::<&str>("1", &["0"], &[]).unwrap();
        assert_eq!(t.bottom(), t.top());
        assert_eq!(t.pstar(t.top()), t.bottom());
        t.check_laws().unwrap();
    }

    #[test]
    fn chain_tables() {
        let f = c3();
        let a = f.elem("a").unwrap();
        assert_eq!(f.arrow(a, f.bottom()), f.bottom());
        assert_eq!(f.pstar(a), f.bottom());
        assert_eq!(f.arrow(a, a), f.top());
        f.check_laws().unwrap();
    }

    #[test]
    fn diamond_is_not_distributive() {
        let err = m5().unwrap_err();
        assert!(matches!(err, FrameError::NotDistributive { .. }));
        assert_eq!(err.diagnostic()["law"], "distributivity");
        assert_eq!(err.diagnostic()["witness"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn tables_round_trip_and_mutation_is_caught() {
        let f = c3();
        let t = f.tables();
        let g = FiniteFrame::from_tables_unchecked("C3", f.names().to_vec(), &t).unwrap();
        assert_eq!(f, g);
        let mut bad = t.clone();
        bad.arrow[1][0] = 2;
        let g = FiniteFrame::from_tables_unchecked("C3", f.names().to_vec(), &bad).unwrap();
        let err = g.check_laws().unwrap_err();
        assert!(matches!(err, FrameError::LawViolated { ref law, .. } if law == "heyting-adjunction"));
    }
}
