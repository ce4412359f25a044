//! Structural predicates on finite frames and the Booleanization.

use std::sync::Arc;

use super::{FiniteFrame, FrameError, FrameMap};
use crate::order::Elem;

/// A pair `a ≰ b` for which no `c` has `a ∨ c = 1 ≠ b ∨ c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubfitFailure {
    pub a: Elem,
    pub b: Elem,
}

/// The Boolean algebra of regular elements together with `a ↦ a**`.
#[derive(Debug, Clone)]
pub struct Booleanization {
    pub frame: Arc<FiniteFrame>,
    /// `β: L → 𝔅(L)`.
    pub beta: FrameMap,
    /// Position in `L` of each element of `𝔅(L)`.
    pub embed: Vec<Elem>,
}

impl Booleanization {
    /// The element of `L` underlying an element of `𝔅(L)`.
    pub fn to_parent(&self, b: Elem) -> Elem {
        self.embed[b.0]
    }

    /// The element of `𝔅(L)` for a regular element of `L`.
    pub fn from_parent(&self, a: Elem) -> Option<Elem> {
        self.embed.iter().position(|&e| e == a).map(Elem)
    }
}

impl FiniteFrame {
    pub fn is_dense(&self, a: Elem) -> bool {
        self.pstar(a) == self.bottom()
    }

    pub fn is_complemented(&self, a: Elem) -> bool {
        self.join(a, self.pstar(a)) == self.top()
    }

    pub fn is_dense_named(&self, a: &str) -> Result<bool, FrameError> {
        Ok(self.is_dense(self.elem(a)?))
    }

    pub fn is_complemented_named(&self, a: &str) -> Result<bool, FrameError> {
        Ok(self.is_complemented(self.elem(a)?))
    }

    /// First pair `a ≰ b` without a separating `c`, scanning in element order.
    pub fn subfit_failure(&self) -> Option<SubfitFailure> {
        let top = self.top();
        for a in self.elements() {
            for b in self.elements() {
                if self.leq(a, b) {
                    continue;
                }
                let separated = self
                    .elements()
                    .any(|c| self.join(a, c) == top && self.join(b, c) != top);
                if !separated {
                    return Some(SubfitFailure { a, b });
                }
            }
        }
        None
    }

    pub fn is_subfit(&self) -> bool {
        self.subfit_failure().is_none()
    }

    /// First `a` with `a* ∨ a** ≠ 1`.
    pub fn extremal_disconnection_witness(&self) -> Option<Elem> {
        self.elements().find(|&a| {
            let s = self.pstar(a);
            self.join(s, self.pstar(s)) != self.top()
        })
    }

    pub fn is_extremally_disconnected(&self) -> bool {
        self.extremal_disconnection_witness().is_none()
    }

    /// `b ≺ a` iff `b* ∨ a = 1`, as a dense `n × n` matrix indexed `[b][a]`.
    pub fn rather_below(&self) -> Vec<bool> {
        let n = self.len();
        let mut rel = vec![false; n * n];
        for b in self.elements() {
            for a in self.elements() {
                rel[b.0 * n + a.0] = self.join(self.pstar(b), a) == self.top();
            }
        }
        rel
    }

    /// Greatest interpolating relation inside `≺`, indexed `[b][a]`.
    pub fn completely_below(&self) -> Vec<bool> {
        let n = self.len();
        let mut rel = self.rather_below();
        loop {
            let mut next = rel.clone();
            for b in 0..n {
                for a in 0..n {
                    if rel[b * n + a] {
                        next[b * n + a] = (0..n).any(|c| rel[b * n + c] && rel[c * n + a]);
                    }
                }
            }
            if next == rel {
                return rel;
            }
            rel = next;
        }
    }

    pub fn is_completely_regular(&self) -> bool {
        let n = self.len();
        let rel = self.completely_below();
        self.elements().all(|a| {
            let below = self.elements().filter(|b| rel[b.0 * n + a.0]);
            self.join_all(below) == a
        })
    }

    /// `𝔅(L)` on the regular elements, with joins `(a ∨ b)**` and meets inherited.
    pub fn booleanization(&self) -> Booleanization {
        let embed = self.regular_elements();
        let names: Vec<String> = embed.iter().map(|&e| self.name_of(e).to_string()).collect();
        let frame = FiniteFrame::from_relation(format!("B({})", self.name()), names, |i, j| {
            self.leq(embed[i], embed[j])
        })
        .expect("regular elements of a frame form a Boolean algebra");
        debug_assert!(frame.is_boolean());
        let frame = Arc::new(frame);
        let assignment = self
            .elements()
            .map(|a| {
                let r = self.pstar(self.pstar(a));
                Elem(embed.iter().position(|&e| e == r).expect("a** is regular"))
            })
            .collect();
        let beta = FrameMap::new(Arc::new(self.clone()), frame.clone(), assignment).expect("assignment is total");
        Booleanization { frame, beta, embed }
    }
}

#[cfg(test)]
mod tests {
    use crate::registry;

    #[test]
    fn density_examples() {
        let c3 = registry::c3();
        let a = c3.elem("a").unwrap();
        assert!(c3.is_dense(a));
        assert!(!c3.is_complemented(a));
        assert!(c3.is_dense(c3.top()) && c3.is_complemented(c3.top()));

        let w5 = registry::w5();
        let x = w5.elem("x").unwrap();
        assert_eq!(w5.pstar(x), w5.elem("y").unwrap());
        assert!(!w5.is_dense(x));
        assert!(!w5.is_complemented(x));
        assert!(w5.is_dense_named("nope").is_err());
    }

    #[test]
    fn subfitness_examples() {
        assert!(registry::d4().is_subfit());
        assert!(registry::trivial().is_subfit());
        let c3 = registry::c3();
        let cert = c3.subfit_failure().unwrap();
        assert_eq!((c3.name_of(cert.a), c3.name_of(cert.b)), ("a", "0"));
    }

    #[test]
    fn extremal_disconnection_examples() {
        assert!(registry::c3().is_extremally_disconnected());
        assert!(registry::b8().is_extremally_disconnected());
        let w5 = registry::w5();
        assert_eq!(w5.extremal_disconnection_witness(), Some(w5.elem("x").unwrap()));
    }

    #[test]
    fn complete_regularity_examples() {
        assert!(registry::d4().is_completely_regular());
        assert!(registry::b8().is_completely_regular());
        assert!(!registry::c3().is_completely_regular());
        assert!(!registry::w5().is_completely_regular());
    }

    #[test]
    fn booleanization_examples() {
        let c3 = registry::c3();
        let b = c3.booleanization();
        assert_eq!(b.frame.len(), 2);
        assert_eq!(b.beta.apply(c3.elem("a").unwrap()), b.frame.top());
        assert!(b.beta.is_hom());

        let w5 = registry::w5();
        let b = w5.booleanization();
        assert_eq!(b.frame.len(), 4);
        let x = b.frame.elem("x").unwrap();
        let y = b.frame.elem("y").unwrap();
        assert_eq!(b.frame.join(x, y), b.frame.top());
        assert!(b.beta.is_hom());

        let d4 = registry::d4();
        let b = d4.booleanization();
        assert_eq!(b.frame.len(), 4);
        assert!(d4.elements().all(|e| b.to_parent(b.beta.apply(e)) == e));
    }
}
