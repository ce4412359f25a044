//! Finite posets and finite lattices.
//!
//! Everything is index based: an [`Elem`] is a position in the element list
//! of the structure it came from and is only meaningful relative to that
//! structure. Names are kept alongside for I/O and diagnostics.

use std::collections::HashMap;
use std::fmt;

use crate::frame::FrameError;

/// Index of an element inside a finite ordered structure.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub usize);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite partially ordered set with a dense order matrix.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    name: String,
    names: Vec<String>,
    lookup: HashMap<String, Elem>,
    leq: Vec<bool>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.leq == other.leq
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    /// Builds the order from a cover (Hasse) relation: `(x, y)` means x is covered by y.
    pub fn from_covers<S: AsRef<str>>(
        name: impl Into<String>,
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, FrameError> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup = build_lookup(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let lo = resolve(&lookup, lo.as_ref())?;
            let hi = resolve(&lookup, hi.as_ref())?;
            leq[lo.0 * n + hi.0] = true;
        }
        transitive_closure(&mut leq, n);
        Self::finish(name.into(), names, lookup, leq)
    }

    /// Builds the poset from a full order relation given as a predicate.
    pub fn from_relation(
        name: impl Into<String>,
        names: Vec<String>,
        relation: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, FrameError> {
        let lookup = build_lookup(&names)?;
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = i == j || relation(i, j);
            }
        }
        // a full relation must already be transitive
        for i in 0..n {
            for j in 0..n {
                if !leq[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j * n + k] && !leq[i * n + k] {
                        return Err(FrameError::NotTransitive {
                            a: names[i].clone(),
                            b: names[j].clone(),
                            c: names[k].clone(),
                        });
                    }
                }
            }
        }
        Self::finish(name.into(), names, lookup, leq)
    }

    fn finish(
        name: String,
        names: Vec<String>,
        lookup: HashMap<String, Elem>,
        leq: Vec<bool>,
    ) -> Result<Self, FrameError> {
        let n = names.len();
        if n == 0 {
            return Err(FrameError::Empty);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(FrameError::NotAPoset {
                        a: names[i].clone(),
                        b: names[j].clone(),
                    });
                }
            }
        }
        Ok(FinitePoset {
            name,
            names,
            lookup,
            leq,
        })
    }

    pub(crate) fn from_parts_unchecked(name: String, names: Vec<String>, leq: Vec<bool>) -> Self {
        let lookup = names.iter().enumerate().map(|(i, s)| (s.clone(), Elem(i))).collect();
        FinitePoset {
            name,
            names,
            lookup,
            leq,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, e: Elem) -> &str {
        &self.names[e.0]
    }

    pub fn elem(&self, name: &str) -> Result<Elem, FrameError> {
        resolve(&self.lookup, name)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).map(Elem)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.0 * self.len() + b.0]
    }

    pub(crate) fn leq_matrix(&self) -> &[bool] {
        &self.leq
    }

    /// The cover relation (Hasse diagram) as `(lower, upper)` pairs.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let covered = !self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if covered {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn lower_bounds(&self, set: &[Elem]) -> Vec<Elem> {
        self.elements()
            .filter(|&x| set.iter().all(|&s| self.leq(x, s)))
            .collect()
    }

    pub fn upper_bounds(&self, set: &[Elem]) -> Vec<Elem> {
        self.elements()
            .filter(|&x| set.iter().all(|&s| self.leq(s, x)))
            .collect()
    }

    /// Greatest element of `set`, if it has one.
    pub fn greatest(&self, set: &[Elem]) -> Option<Elem> {
        set.iter().copied().find(|&g| set.iter().all(|&x| self.leq(x, g)))
    }

    pub fn least(&self, set: &[Elem]) -> Option<Elem> {
        set.iter().copied().find(|&g| set.iter().all(|&x| self.leq(g, x)))
    }

    /// Every pair has an upper bound in the poset.
    pub fn is_up_directed(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| !self.upper_bounds(&[a, b]).is_empty()))
    }

    pub fn is_down_directed(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| !self.lower_bounds(&[a, b]).is_empty()))
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        // linear extension: fewer elements below first
        order.sort_by_key(|&i| (0..n).filter(|&j| self.leq[j * n + i]).count());
        let mut height = vec![0usize; n];
        for &i in &order {
            for j in 0..n {
                if j != i && self.leq[j * n + i] {
                    height[i] = height[i].max(height[j] + 1);
                }
            }
        }
        height
    }

    /// The dual poset (same elements, reversed order).
    pub fn dual(&self) -> FinitePoset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq[j * n + i];
            }
        }
        FinitePoset::from_parts_unchecked(format!("{}^op", self.name), self.names.clone(), leq)
    }
}

/// A finite lattice: a poset where every pair has a meet and a join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl FiniteLattice {
    pub fn from_poset(poset: FinitePoset) -> Result<Self, FrameError> {
        let n = poset.len();
        let all: Vec<Elem> = poset.elements().collect();
        let bottom = poset.least(&all).ok_or(FrameError::NoBottom)?;
        let top = poset.greatest(&all).ok_or(FrameError::NoTop)?;
        let mut meet = vec![Elem(0); n * n];
        let mut join = vec![Elem(0); n * n];
        for a in 0..n {
            for b in a..n {
                let pair = [Elem(a), Elem(b)];
                let not_lattice = || FrameError::NotALattice {
                    a: poset.names[a].clone(),
                    b: poset.names[b].clone(),
                };
                let m = poset.greatest(&poset.lower_bounds(&pair)).ok_or_else(not_lattice)?;
                let j = poset.least(&poset.upper_bounds(&pair)).ok_or_else(not_lattice)?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        Ok(FiniteLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub(crate) fn from_parts_unchecked(
        poset: FinitePoset,
        meet: Vec<Elem>,
        join: Vec<Elem>,
        bottom: Elem,
        top: Elem,
    ) -> Self {
        FiniteLattice {
            poset,
            meet,
            join,
            bottom,
            top,
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub(crate) fn poset_mut(&mut self) -> &mut FinitePoset {
        &mut self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.poset.elements()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.0 * self.len() + b.0]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.0 * self.len() + b.0]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// First triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_violation(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

fn build_lookup(names: &[String]) -> Result<HashMap<String, Elem>, FrameError> {
    let mut lookup = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if lookup.insert(name.clone(), Elem(i)).is_some() {
            return Err(FrameError::DuplicateElement(name.clone()));
        }
    }
    Ok(lookup)
}

fn resolve(lookup: &HashMap<String, Elem>, name: &str) -> Result<Elem, FrameError> {
    lookup
        .get(name)
        .copied()
        .ok_or_else(|| FrameError::UnknownElement(name.to_string()))
}

/// Warshall closure of a square boolean matrix.
pub(crate) fn transitive_closure(leq: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain2() -> FinitePoset {
        FinitePoset::from_covers::<&str>("A2", &["x", "y"], &[]).unwrap()
    }

    #[test]
    fn covers_round_trip() {
        let p = FinitePoset::from_covers("C3", &["0", "a", "1"], &[("0", "a"), ("a", "1")]).unwrap();
        assert!(p.leq(Elem(0), Elem(2)));
        assert_eq!(p.covers(), vec![(Elem(0), Elem(1)), (Elem(1), Elem(2))]);
        assert_eq!(p.heights(), vec![0, 1, 2]);
    }

    #[test]
    fn cycle_is_rejected() {
        let err = FinitePoset::from_covers("bad", &["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, FrameError::NotAPoset { .. }));
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let err = FiniteLattice::from_poset(antichain2()).unwrap_err();
        assert_eq!(err, FrameError::NoBottom);
        assert!(!antichain2().is_up_directed());
    }

    #[test]
    fn missing_join_is_reported() {
        // 0 < a, b < c, d < 1: a and b have two minimal upper bounds
        let p = FinitePoset::from_covers(
            "bowtie",
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap();
        let err = FiniteLattice::from_poset(p).unwrap_err();
        assert!(matches!(err, FrameError::NotALattice { .. }));
    }

    #[test]
    fn non_transitive_relation_rejected() {
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let err = FinitePoset::from_relation("r", names, |i, j| (i, j) == (0, 1) || (i, j) == (1, 2)).unwrap_err();
        assert!(matches!(err, FrameError::NotTransitive { .. }));
    }
}
