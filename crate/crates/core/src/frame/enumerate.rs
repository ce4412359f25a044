//! Enumeration of finite frames up to isomorphism.
//!
//! Every finite distributive lattice is the lattice of down-sets of its poset
//! of join-irreducibles. Posets are grown one point at a time, the new point
//! always being maximal, so its strict down-set is a down-set of the existing
//! poset. Adding points never shrinks the number of down-sets, which lets the
//! search prune as soon as the lattice would exceed the size bound.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use super::{canonical_form, FiniteFrame, FrameError};
use crate::bits;
use crate::order::FinitePoset;

pub const DEFAULT_ENUMERATION_LIMIT: usize = 8;

/// Strict down-set of each point.
type Poset = Vec<u64>;

fn downsets(p: &Poset) -> Vec<u64> {
    let k = p.len();
    (0..1u64 << k)
        .filter(|&m| bits::iter(m).all(|i| bits::is_subset(p[i], m)))
        .collect()
}

fn poset_key(p: &Poset) -> Vec<u64> {
    let names: Vec<String> = (0..p.len()).map(|i| i.to_string()).collect();
    let poset = FinitePoset::from_parts_unchecked(
        String::new(),
        names,
        (0..p.len())
            .flat_map(|i| (0..p.len()).map(move |j| (i, j)))
            .map(|(i, j)| i == j || bits::contains(p[j], i))
            .collect(),
    );
    canonical_form(&poset).code
}

fn element_name(pos: usize, n: usize) -> String {
    if pos == 0 {
        "0".into()
    } else if pos + 1 == n {
        "1".into()
    } else if pos <= 26 {
        ((b'a' + (pos - 1) as u8) as char).to_string()
    } else {
        format!("e{pos}")
    }
}

/// The down-set lattice of `p`, relabelled into canonical order.
fn lattice_of(p: &Poset) -> (Vec<u64>, FiniteFrame) {
    let mut ds = downsets(p);
    ds.sort_by_key(|&m| (m.count_ones(), m));
    let n = ds.len();
    let raw = FinitePoset::from_parts_unchecked(
        String::new(),
        (0..n).map(|i| i.to_string()).collect(),
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| bits::is_subset(ds[i], ds[j]))
            .collect(),
    );
    let cf = canonical_form(&raw);
    let names: Vec<String> = (0..n).map(|pos| element_name(pos, n)).collect();
    let perm = cf.perm.clone();
    let frame = FiniteFrame::from_relation(String::new(), names, |i, j| bits::is_subset(ds[perm[i]], ds[perm[j]]))
        .expect("down-set lattices are distributive");
    (cf.code, frame)
}

/// One frame per isomorphism class with at most `max_size` elements, ordered
/// by size and then by canonical form. Frames are named `DL<size>_<index>`.
pub fn enumerate_frames(max_size: usize) -> Result<Vec<Arc<FiniteFrame>>, FrameError> {
    enumerate_frames_with_limit(max_size, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_frames_with_limit(max_size: usize, limit: usize) -> Result<Vec<Arc<FiniteFrame>>, FrameError> {
    if max_size > limit {
        return Err(FrameError::LimitExceeded {
            what: "frame enumeration size".into(),
            requested: max_size,
            limit,
        });
    }
    if max_size == 0 {
        return Ok(Vec::new());
    }
    let mut by_size: BTreeMap<usize, BTreeMap<Vec<u64>, FiniteFrame>> = BTreeMap::new();
    let mut frontier: Vec<Poset> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for p in &frontier {
            let (code, frame) = lattice_of(p);
            by_size.entry(frame.len()).or_default().entry(code).or_insert(frame);
            for d in downsets(p) {
                let mut q = p.clone();
                q.push(d);
                if downsets(&q).len() > max_size {
                    continue;
                }
                if seen.insert(poset_key(&q)) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    let mut out = Vec::new();
    for (size, frames) in by_size {
        for (idx, (_, frame)) in frames.into_iter().enumerate() {
            out.push(Arc::new(frame.with_name(format!("DL{size}_{idx}"))));
        }
    }
    Ok(out)
}

/// Frames with exactly `size` elements.
pub fn frames_of_size(size: usize) -> Result<Vec<Arc<FiniteFrame>>, FrameError> {
    Ok(enumerate_frames(size)?
        .into_iter()
        .filter(|f| f.len() == size)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(max: usize) -> Vec<usize> {
        let frames = enumerate_frames(max).unwrap();
        (1..=max)
            .map(|s| frames.iter().filter(|f| f.len() == s).count())
            .collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(counts(1), vec![1]);
        assert_eq!(counts(3), vec![1, 1, 1]);
        assert_eq!(counts(5), vec![1, 1, 1, 2, 3]);
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(enumerate_frames(9), Err(FrameError::LimitExceeded { .. })));
        assert!(enumerate_frames(0).unwrap().is_empty());
    }

    #[test]
    fn names_are_stable() {
        let frames = enumerate_frames(4).unwrap();
        let names: Vec<&str> = frames.iter().map(|f| f.name()).collect();
        assert_eq!(names, ["DL1_0", "DL2_0", "DL3_0", "DL4_0", "DL4_1"]);
        for f in &frames {
            assert_eq!(f.name_of(f.bottom()), "0");
            f.check_laws().unwrap();
        }
    }
}
