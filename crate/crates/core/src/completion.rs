//! Completion by cuts of finite posets.
//!
//! A cut is stored as its lower set `A = (A^u)^l`. Cuts are exactly the
//! intersections of principal down-sets (the empty intersection being the
//! whole poset), so the cut lattice is built as the intersection closure of
//! the principal down-sets.

use std::collections::BTreeSet;

use crate::bits::{self, Mask};
use crate::frame::FrameError;
use crate::order::{Elem, FiniteLattice, FinitePoset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompletionError {
    #[error(transparent)]
    Order(#[from] FrameError),
    #[error("poset is neither up- nor down-directed")]
    NotDirected,
}

/// The cut lattice of a poset with the principal-cut embedding.
#[derive(Debug, Clone)]
pub struct Completion {
    pub lattice: FiniteLattice,
    /// Image of each poset element.
    pub embed: Vec<Elem>,
    /// Lower set of each cut, indexed like the lattice elements.
    pub cuts: Vec<Mask>,
}

fn down_set(p: &FinitePoset, x: Elem) -> Mask {
    bits::from_indices(p.elements().filter(|&y| p.leq(y, x)).map(|y| y.0))
}

/// Builds the completion and checks both density properties of the embedding.
pub fn macneille(p: &FinitePoset) -> Result<Completion, CompletionError> {
    if p.len() > bits::MAX_BITS {
        return Err(FrameError::LimitExceeded {
            what: "poset size".into(),
            requested: p.len(),
            limit: bits::MAX_BITS,
        }
        .into());
    }
    let principal: Vec<Mask> = p.elements().map(|x| down_set(p, x)).collect();
    let mut cuts: BTreeSet<Mask> = BTreeSet::new();
    cuts.insert(bits::full(p.len()));
    for &d in &principal {
        let current: Vec<Mask> = cuts.iter().copied().collect();
        for c in current {
            cuts.insert(c & d);
        }
        cuts.insert(d);
    }
    let mut cuts: Vec<Mask> = cuts.into_iter().collect();
    cuts.sort_by_key(|&m| (m.count_ones(), m));
    let names: Vec<String> = cuts
        .iter()
        .map(|&c| match principal.iter().position(|&d| d == c) {
            Some(i) => p.names()[i].clone(),
            None => {
                let inner: Vec<&str> = bits::iter(c).map(|i| p.names()[i].as_str()).collect();
                format!("{{{}}}", inner.join(","))
            }
        })
        .collect();
    let poset = FinitePoset::from_relation(format!("M({})", p.name()), names, |i, j| {
        bits::is_subset(cuts[i], cuts[j])
    })?;
    let lattice = FiniteLattice::from_poset(poset)?;
    let embed: Vec<Elem> = principal
        .iter()
        .map(|d| Elem(cuts.iter().position(|c| c == d).expect("principal cuts are cuts")))
        .collect();
    debug_assert!(is_join_dense(&embed, &lattice) && is_meet_dense(&embed, &lattice));
    Ok(Completion { lattice, embed, cuts })
}

/// Every element is the join of the members of `sub` below it.
pub fn is_join_dense(sub: &[Elem], lattice: &FiniteLattice) -> bool {
    lattice
        .elements()
        .all(|x| lattice.join_all(sub.iter().copied().filter(|&s| lattice.leq(s, x))) == x)
}

/// Every element is the meet of the members of `sub` above it.
pub fn is_meet_dense(sub: &[Elem], lattice: &FiniteLattice) -> bool {
    lattice
        .elements()
        .all(|x| lattice.meet_all(sub.iter().copied().filter(|&s| lattice.leq(x, s))) == x)
}

/// Drops the bottom and top of the cut lattice when they are not images of
/// poset elements.
pub fn dedekind_trim(p: &FinitePoset, c: &Completion) -> Result<FinitePoset, CompletionError> {
    if !p.is_up_directed() && !p.is_down_directed() {
        return Err(CompletionError::NotDirected);
    }
    let l = &c.lattice;
    let keep: Vec<usize> = l
        .elements()
        .filter(|&x| {
            let bound = x == l.bottom() || x == l.top();
            !bound || c.embed.contains(&x)
        })
        .map(|x| x.0)
        .collect();
    let names = keep.iter().map(|&i| l.poset().names()[i].clone()).collect();
    Ok(FinitePoset::from_relation(
        format!("D({})", p.name()),
        names,
        |i, j| l.leq(Elem(keep[i]), Elem(keep[j])),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::isomorphic;
    use crate::registry;

    fn poset(elements: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
        FinitePoset::from_covers("P", elements, covers).unwrap()
    }

    #[test]
    fn complete_lattice_is_its_own_completion() {
        let w5 = registry::w5();
        let c = macneille(w5.poset()).unwrap();
        assert_eq!(c.lattice.len(), 5);
        assert!(isomorphic(c.lattice.poset(), w5.poset()));
        let mut image = c.embed.clone();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 5);
    }

    #[test]
    fn antichain_gains_bounds() {
        let p = poset(&["x", "y"], &[]);
        let c = macneille(&p).unwrap();
        assert_eq!(c.lattice.len(), 4);
        assert!(isomorphic(c.lattice.poset(), registry::d4().poset()));
    }

    #[test]
    fn chain_of_constants() {
        let p = poset(&["-inf", "0", "1", "+inf"], &[("-inf", "0"), ("0", "1"), ("1", "+inf")]);
        let c = macneille(&p).unwrap();
        assert_eq!(c.lattice.len(), 4);
        assert_eq!(c.embed, vec![Elem(0), Elem(1), Elem(2), Elem(3)]);
    }

    #[test]
    fn density_of_atoms() {
        let b8 = registry::b8();
        let atoms: Vec<Elem> = ["p", "q", "r"].iter().map(|a| b8.elem(a).unwrap()).collect();
        assert!(is_join_dense(&atoms, b8.lattice()));
        assert!(!is_meet_dense(&atoms, b8.lattice()));
        let all: Vec<Elem> = b8.elements().collect();
        assert!(is_join_dense(&all, b8.lattice()) && is_meet_dense(&all, b8.lattice()));
    }

    #[test]
    fn trimming() {
        let bounded = poset(&["0", "x", "y", "1"], &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")]);
        let c = macneille(&bounded).unwrap();
        assert_eq!(dedekind_trim(&bounded, &c).unwrap().len(), 4);

        // finite chains keep their endpoints as principal cuts
        let chain = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let c = macneille(&chain).unwrap();
        assert_eq!(dedekind_trim(&chain, &c).unwrap().len(), 3);

        let vee = poset(&["0", "x", "y"], &[("0", "x"), ("0", "y")]);
        let c = macneille(&vee).unwrap();
        assert_eq!(c.lattice.len(), 4);
        let t = dedekind_trim(&vee, &c).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.elem("0").is_ok());

        let anti = poset(&["x", "y"], &[]);
        let c = macneille(&anti).unwrap();
        assert_eq!(dedekind_trim(&anti, &c), Err(CompletionError::NotDirected));
    }
}
