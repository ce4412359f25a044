//! Maps between finite frames.

use std::sync::Arc;

use super::{FiniteFrame, FrameError};
use crate::order::Elem;

/// A total map between the elements of two frames.
///
/// Whether the map is a frame homomorphism is computed by [`FrameMap::is_hom`].
#[derive(Debug, Clone)]
pub struct FrameMap {
    source: Arc<FiniteFrame>,
    target: Arc<FiniteFrame>,
    assignment: Vec<Elem>,
}

impl FrameMap {
    pub fn new(source: Arc<FiniteFrame>, target: Arc<FiniteFrame>, assignment: Vec<Elem>) -> Result<Self, FrameError> {
        if assignment.len() != source.len() {
            return Err(FrameError::Mismatch(format!(
                "assignment has {} entries, source has {} elements",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(bad) = assignment.iter().find(|e| e.0 >= target.len()) {
            return Err(FrameError::UnknownElement(bad.to_string()));
        }
        Ok(FrameMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(source element, target element)` name pairs.
    pub fn from_names(
        source: Arc<FiniteFrame>,
        target: Arc<FiniteFrame>,
        pairs: &[(&str, &str)],
    ) -> Result<Self, FrameError> {
        let mut assignment = vec![None; source.len()];
        for (s, t) in pairs {
            assignment[source.elem(s)?.0] = Some(target.elem(t)?);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| FrameError::Mismatch(format!("{} unmapped", source.names()[i]))))
            .collect::<Result<_, _>>()?;
        Self::new(source, target, assignment)
    }

    pub fn identity(frame: Arc<FiniteFrame>) -> Self {
        let assignment = frame.elements().collect();
        FrameMap {
            source: frame.clone(),
            target: frame,
            assignment,
        }
    }

    pub fn source(&self) -> &Arc<FiniteFrame> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteFrame> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.assignment[a.0]
    }

    pub fn assignment(&self) -> &[Elem] {
        &self.assignment
    }

    /// The first preservation law the map breaks, if any.
    pub fn hom_violation(&self) -> Option<String> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.bottom()) != t.bottom() {
            return Some("bottom".into());
        }
        if self.apply(s.top()) != t.top() {
            return Some("top".into());
        }
        for a in s.elements() {
            for b in s.elements() {
                if self.apply(s.meet(a, b)) != t.meet(self.apply(a), self.apply(b)) {
                    return Some(format!("meet of {} and {}", s.name_of(a), s.name_of(b)));
                }
                if self.apply(s.join(a, b)) != t.join(self.apply(a), self.apply(b)) {
                    return Some(format!("join of {} and {}", s.name_of(a), s.name_of(b)));
                }
            }
        }
        None
    }

    /// Preserves 0, 1, binary meets and binary (hence all) joins.
    pub fn is_hom(&self) -> bool {
        self.hom_violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.assignment.iter().all(|e| !std::mem::replace(&mut seen[e.0], true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn identity_is_hom() {
        for f in [registry::c3(), registry::w5(), registry::b8()] {
            assert!(FrameMap::identity(f).is_hom());
        }
    }

    #[test]
    fn broken_map_fails_top() {
        let c3 = registry::c3();
        let two = registry::two();
        let m = FrameMap::from_names(c3, two, &[("0", "0"), ("a", "1"), ("1", "0")]).unwrap();
        assert_eq!(m.hom_violation().as_deref(), Some("top"));
    }

    #[test]
    fn collapsing_map_is_hom() {
        let m = FrameMap::from_names(registry::c3(), registry::two(), &[("0", "0"), ("a", "1"), ("1", "1")]).unwrap();
        assert!(m.is_hom());
        assert!(!m.is_injective());
    }
}
