//! Canonical forms of finite posets for isomorphism testing.
//!
//! Elements are first grouped by an isomorphism invariant (height, number of
//! elements below, number above). Only orderings that list the groups in
//! sorted invariant order are considered, and among those the one with the
//! lexicographically smallest order matrix wins.

use itertools::Itertools;

use crate::order::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    /// Sorted element invariants followed by the order matrix rows as bits.
    pub code: Vec<u64>,
    /// `perm[i]` is the original index of the element placed at position `i`.
    pub perm: Vec<usize>,
}

impl CanonicalForm {
    /// The part of the form that is independent of the chosen labelling.
    pub fn key(&self) -> &[u64] {
        &self.code
    }
}

fn invariants(p: &FinitePoset) -> Vec<(usize, usize, usize)> {
    let n = p.len();
    let heights = p.heights();
    let leq = p.leq_matrix();
    (0..n)
        .map(|i| {
            let below = (0..n).filter(|&j| leq[j * n + i]).count();
            let above = (0..n).filter(|&j| leq[i * n + j]).count();
            (heights[i], below, above)
        })
        .collect()
}

fn encode(leq: &[bool], n: usize, order: &[usize]) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    for &i in order {
        let mut row = 0u64;
        for (pos, &j) in order.iter().enumerate() {
            if leq[i * n + j] {
                row |= 1 << (63 - pos.min(63));
            }
        }
        out.push(row);
    }
    out
}

/// Lexicographically least order matrix over invariant-respecting relabellings.
pub fn canonical_form(p: &FinitePoset) -> CanonicalForm {
    let n = p.len();
    assert!(n <= 64, "canonical forms are limited to 64 elements");
    let inv = invariants(p);
    let mut classes: Vec<((usize, usize, usize), Vec<usize>)> = Vec::new();
    for i in (0..n).sorted_by_key(|&i| (inv[i], i)) {
        match classes.last_mut() {
            Some((key, members)) if *key == inv[i] => members.push(i),
            _ => classes.push((inv[i], vec![i])),
        }
    }
    let mut header: Vec<u64> = Vec::new();
    for (key, members) in &classes {
        header.push(((key.0 as u64) << 32) | ((key.1 as u64) << 16) | key.2 as u64);
        header.push(members.len() as u64);
    }
    let leq = p.leq_matrix();
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    let per_class = classes
        .iter()
        .map(|(_, members)| members.iter().copied().permutations(members.len()).collect::<Vec<_>>());
    for choice in per_class.multi_cartesian_product() {
        let order: Vec<usize> = choice.into_iter().flatten().collect();
        let code = encode(leq, n, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, order));
        }
    }
    // multi_cartesian_product of zero iterators yields nothing
    let (code, perm) = best.unwrap_or_else(|| (Vec::new(), Vec::new()));
    header.extend(code);
    CanonicalForm { code: header, perm }
}

pub fn isomorphic(a: &FinitePoset, b: &FinitePoset) -> bool {
    a.len() == b.len() && canonical_form(a).code == canonical_form(b).code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_posets_agree() {
        let a = FinitePoset::from_covers(
            "a",
            &["0", "x", "y", "1"],
            &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
        )
        .unwrap();
        let b = FinitePoset::from_covers(
            "b",
            &["t", "p", "b", "q"],
            &[("b", "p"), ("b", "q"), ("p", "t"), ("q", "t")],
        )
        .unwrap();
        let c = FinitePoset::from_covers("c", &["0", "x", "y", "1"], &[("0", "x"), ("x", "y"), ("y", "1")]).unwrap();
        assert!(isomorphic(&a, &b));
        assert!(!isomorphic(&a, &c));
    }

    #[test]
    fn perm_is_a_permutation() {
        let a = FinitePoset::from_covers("v", &["r", "s", "t"], &[("t", "r"), ("t", "s")]).unwrap();
        let cf = canonical_form(&a);
        assert_eq!(cf.perm.iter().copied().sorted().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(cf.perm[0], 2);
    }
}
