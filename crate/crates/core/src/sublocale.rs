//! Sublocales of finite frames.
//!
//! A sublocale is stored as a bit mask over the parent's elements and is
//! always read in inclusion order (the coframe `S(L)`). [`SublocaleFrame`]
//! packages all sublocales of a frame as a frame under reverse inclusion
//! (`coS(L)`), which is the orientation used for function codomains. Every
//! public operation says which orientation it uses.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::frame::{FiniteFrame, FrameError, FrameFile};
use crate::order::Elem;

/// Largest parent accepted by [`all_sublocales`] unless a limit is given.
pub const DEFAULT_SUBLOCALE_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SublocaleError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("{0} is not a sublocale: {1}")]
    NotASublocale(String, &'static str),
    #[error("sublocales belong to different frames")]
    MixedParents,
    #[error("frame is not subfit: {a} ≰ {b} has no separating element")]
    NotSubfit { a: String, b: String },
}

/// A subset of a frame closed under all meets and under `x → (−)`.
#[derive(Clone)]
pub struct Sublocale {
    parent: Arc<FiniteFrame>,
    carrier: Mask,
}

impl PartialEq for Sublocale {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && same_parent(&self.parent, &other.parent)
    }
}

impl Eq for Sublocale {}

impl fmt::Debug for Sublocale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublocale({} of {})", self, self.parent.name())
    }
}

impl fmt::Display for Sublocale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&carrier_name(&self.parent, self.carrier))
    }
}

fn same_parent(a: &Arc<FiniteFrame>, b: &Arc<FiniteFrame>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn carrier_name(frame: &FiniteFrame, mask: Mask) -> String {
    let names: Vec<&str> = bits::iter(mask).map(|i| frame.name_of(Elem(i))).collect();
    format!("{{{}}}", names.join(","))
}

/// Checks that a subset contains 1, is closed under meets and under `x → s`.
///
/// On finite frames, closure under binary meets plus containing the top is
/// closure under all meets.
pub fn sublocale_violation(frame: &FiniteFrame, mask: Mask) -> Option<&'static str> {
    if !bits::contains(mask, frame.top().0) {
        return Some("missing the top element");
    }
    for s in bits::iter(mask) {
        for t in bits::iter(mask) {
            if !bits::contains(mask, frame.meet(Elem(s), Elem(t)).0) {
                return Some("not closed under meets");
            }
        }
        for x in frame.elements() {
            if !bits::contains(mask, frame.arrow(x, Elem(s)).0) {
                return Some("not closed under implication");
            }
        }
    }
    None
}

fn check_size(frame: &FiniteFrame, limit: usize) -> Result<(), FrameError> {
    if frame.len() > limit.min(bits::MAX_BITS) {
        return Err(FrameError::LimitExceeded {
            what: "sublocale parent size".into(),
            requested: frame.len(),
            limit: limit.min(bits::MAX_BITS),
        });
    }
    Ok(())
}

impl Sublocale {
    pub fn new(parent: Arc<FiniteFrame>, carrier: Mask) -> Result<Self, SublocaleError> {
        check_size(&parent, bits::MAX_BITS)?;
        if carrier & !bits::full(parent.len()) != 0 {
            return Err(SublocaleError::NotASublocale(
                format!("{carrier:#b}"),
                "mask has bits outside the frame",
            ));
        }
        if let Some(why) = sublocale_violation(&parent, carrier) {
            return Err(SublocaleError::NotASublocale(carrier_name(&parent, carrier), why));
        }
        Ok(Sublocale { parent, carrier })
    }

    pub fn from_names(parent: Arc<FiniteFrame>, names: &[&str]) -> Result<Self, SublocaleError> {
        let mut mask = 0;
        for n in names {
            mask |= 1 << parent.elem(n)?.0;
        }
        Self::new(parent, mask)
    }

    pub(crate) fn from_mask_unchecked(parent: Arc<FiniteFrame>, carrier: Mask) -> Self {
        Sublocale { parent, carrier }
    }

    /// The whole frame: top of `S(L)`, bottom of `coS(L)`.
    pub fn whole(parent: Arc<FiniteFrame>) -> Self {
        let carrier = bits::full(parent.len());
        Sublocale { parent, carrier }
    }

    /// `{1}`: bottom of `S(L)`, top of `coS(L)`.
    pub fn top_only(parent: Arc<FiniteFrame>) -> Self {
        let carrier = 1 << parent.top().0;
        Sublocale { parent, carrier }
    }

    pub fn parent(&self) -> &Arc<FiniteFrame> {
        &self.parent
    }

    pub fn carrier(&self) -> Mask {
        self.carrier
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        bits::iter(self.carrier).map(Elem)
    }

    pub fn contains(&self, e: Elem) -> bool {
        bits::contains(self.carrier, e.0)
    }

    pub fn len(&self) -> usize {
        self.carrier.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.carrier == 0
    }

    /// Inclusion order (`S(L)`).
    pub fn is_subset(&self, other: &Sublocale) -> bool {
        bits::is_subset(self.carrier, other.carrier)
    }

    /// A sublocale is dense when it contains the bottom of the parent.
    ///
    /// Not to be confused with density of the corresponding element of `coS(L)`.
    pub fn contains_bottom(&self) -> bool {
        self.contains(self.parent.bottom())
    }

    /// `⋀S` computed in the parent.
    pub fn meet_of_carrier(&self) -> Elem {
        self.parent.meet_all(self.elements())
    }
}

/// The closed sublocale `𝔠(a) = ↑a`.
pub fn closed(parent: &Arc<FiniteFrame>, a: Elem) -> Sublocale {
    let carrier = bits::from_indices(parent.elements().filter(|&x| parent.leq(a, x)).map(|x| x.0));
    debug_assert!(sublocale_violation(parent, carrier).is_none());
    Sublocale::from_mask_unchecked(parent.clone(), carrier)
}

/// The open sublocale `𝔬(a) = {a → b : b ∈ L}`.
pub fn open_(parent: &Arc<FiniteFrame>, a: Elem) -> Sublocale {
    let carrier = bits::from_indices(parent.elements().map(|b| parent.arrow(a, b).0));
    debug_assert!(sublocale_violation(parent, carrier).is_none());
    Sublocale::from_mask_unchecked(parent.clone(), carrier)
}

fn common_parent(items: &[Sublocale]) -> Result<Option<Arc<FiniteFrame>>, SublocaleError> {
    let Some(first) = items.first() else {
        return Ok(None);
    };
    if items.iter().any(|s| !same_parent(&s.parent, &first.parent)) {
        return Err(SublocaleError::MixedParents);
    }
    Ok(Some(first.parent.clone()))
}

/// Smallest meet-closed superset of `mask` (always contains the top).
pub(crate) fn meet_closure(frame: &FiniteFrame, mask: Mask) -> Mask {
    let mut closed = mask | 1 << frame.top().0;
    loop {
        let mut next = closed;
        for s in bits::iter(closed) {
            for t in bits::iter(closed) {
                next |= 1 << frame.meet(Elem(s), Elem(t)).0;
            }
        }
        if next == closed {
            return closed;
        }
        closed = next;
    }
}

/// Join in `S(L)` (= meet in `coS(L)`): all meets of elements of the union.
///
/// The empty join is `{1}`; `parent` is only consulted when `items` is empty.
pub fn join_s(parent: &Arc<FiniteFrame>, items: &[Sublocale]) -> Result<Sublocale, SublocaleError> {
    let parent = common_parent(items)?.unwrap_or_else(|| parent.clone());
    let union = items.iter().fold(0, |m, s| m | s.carrier);
    let carrier = meet_closure(&parent, union);
    Ok(Sublocale::from_mask_unchecked(parent, carrier))
}

/// Meet in `S(L)` (= join in `coS(L)`): the intersection.
pub fn meet_s(parent: &Arc<FiniteFrame>, items: &[Sublocale]) -> Result<Sublocale, SublocaleError> {
    let parent = common_parent(items)?.unwrap_or_else(|| parent.clone());
    let carrier = items.iter().fold(bits::full(parent.len()), |m, s| m & s.carrier);
    Ok(Sublocale::from_mask_unchecked(parent, carrier))
}

/// Closure `𝔠(⋀S)`: the smallest closed sublocale containing `S`.
pub fn closure(s: &Sublocale) -> Sublocale {
    closed(&s.parent, s.meet_of_carrier())
}

/// Interior: the `S(L)`-join of all open sublocales contained in `S`.
pub fn interior(s: &Sublocale) -> Sublocale {
    let opens: Vec<Sublocale> = s
        .parent
        .elements()
        .map(|a| open_(&s.parent, a))
        .filter(|o| o.is_subset(s))
        .collect();
    join_s(&s.parent, &opens).expect("same parent")
}

/// Every open sublocale is the `S(L)`-join of the closed sublocales inside it.
pub fn subfit_via_sublocales(parent: &Arc<FiniteFrame>) -> bool {
    let closeds: Vec<Sublocale> = parent.elements().map(|a| closed(parent, a)).collect();
    parent.elements().all(|a| {
        let o = open_(parent, a);
        let inside: Vec<Sublocale> = closeds.iter().filter(|c| c.is_subset(&o)).cloned().collect();
        join_s(parent, &inside).expect("same parent") == o
    })
}

/// The regular elements form a sublocale that is dense and lies inside
/// every dense sublocale.
pub fn least_dense_check(parent: &Arc<FiniteFrame>) -> Result<bool, SublocaleError> {
    let regular = bits::from_indices(parent.regular_elements().into_iter().map(|e| e.0));
    let Ok(b) = Sublocale::new(parent.clone(), regular) else {
        return Ok(false);
    };
    if !b.contains_bottom() {
        return Ok(false);
    }
    let all = all_sublocales_with_limit(parent, bits::MAX_BITS)?;
    let least = all
        .sublocales()
        .filter(|s| s.contains_bottom())
        .all(|s| b.is_subset(&s));
    Ok(least)
}

/// All sublocales of a frame, as the frame `coS(L)` (reverse inclusion).
#[derive(Clone)]
pub struct SublocaleFrame {
    parent: Arc<FiniteFrame>,
    frame: Arc<FiniteFrame>,
    carriers: Vec<Mask>,
    closed_of: Vec<Elem>,
    open_of: Vec<Elem>,
}

impl fmt::Debug for SublocaleFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SublocaleFrame({})", self.frame.name())
    }
}

pub fn all_sublocales(parent: &Arc<FiniteFrame>) -> Result<SublocaleFrame, SublocaleError> {
    all_sublocales_with_limit(parent, DEFAULT_SUBLOCALE_LIMIT)
}

pub fn all_sublocales_with_limit(parent: &Arc<FiniteFrame>, limit: usize) -> Result<SublocaleFrame, SublocaleError> {
    check_size(parent, limit.min(20))?;
    let n = parent.len();
    let top = parent.top().0;
    let others: Vec<usize> = (0..n).filter(|&i| i != top).collect();
    let mut carriers: Vec<Mask> = (0..1u64 << others.len())
        .map(|sel| bits::iter(sel).fold(1 << top, |m, k| m | 1 << others[k]))
        .filter(|&m| sublocale_violation(parent, m).is_none())
        .collect();
    // coS bottom (the whole frame) first, coS top ({1}) last
    carriers.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
    let names: Vec<String> = carriers.iter().map(|&m| carrier_name(parent, m)).collect();
    let frame = FiniteFrame::from_relation(format!("coS({})", parent.name()), names, |i, j| {
        bits::is_subset(carriers[j], carriers[i])
    })?;
    let index_of = |m: Mask| Elem(carriers.iter().position(|&c| c == m).expect("sublocale is listed"));
    let closed_of = parent.elements().map(|a| index_of(closed(parent, a).carrier)).collect();
    let open_of = parent.elements().map(|a| index_of(open_(parent, a).carrier)).collect();
    Ok(SublocaleFrame {
        parent: parent.clone(),
        frame: Arc::new(frame),
        carriers,
        closed_of,
        open_of,
    })
}

impl SublocaleFrame {
    pub fn parent(&self) -> &Arc<FiniteFrame> {
        &self.parent
    }

    /// `coS(L)` as a frame.
    pub fn frame(&self) -> &Arc<FiniteFrame> {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.carriers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carriers.is_empty()
    }

    pub fn carrier(&self, e: Elem) -> Mask {
        self.carriers[e.0]
    }

    pub fn sublocale(&self, e: Elem) -> Sublocale {
        Sublocale::from_mask_unchecked(self.parent.clone(), self.carriers[e.0])
    }

    pub fn sublocales(&self) -> impl Iterator<Item = Sublocale> + '_ {
        self.frame.elements().map(|e| self.sublocale(e))
    }

    /// The `coS(L)` element of a sublocale of the parent.
    pub fn element_of(&self, s: &Sublocale) -> Result<Elem, SublocaleError> {
        if !same_parent(&s.parent, &self.parent) {
            return Err(SublocaleError::MixedParents);
        }
        Ok(self.element_of_mask(s.carrier))
    }

    pub(crate) fn element_of_mask(&self, m: Mask) -> Elem {
        Elem(
            self.carriers
                .iter()
                .position(|&c| c == m)
                .expect("every sublocale is listed"),
        )
    }

    /// `𝔠(a)` as an element of `coS(L)`.
    pub fn closed(&self, a: Elem) -> Elem {
        self.closed_of[a.0]
    }

    /// `𝔬(a)` as an element of `coS(L)`.
    pub fn open(&self, a: Elem) -> Elem {
        self.open_of[a.0]
    }

    /// The parent element `a` with `𝔠(a) = e`, if `e` is closed.
    pub fn closed_tag(&self, e: Elem) -> Option<Elem> {
        self.closed_of.iter().position(|&c| c == e).map(Elem)
    }

    pub fn open_tag(&self, e: Elem) -> Option<Elem> {
        self.open_of.iter().position(|&c| c == e).map(Elem)
    }

    pub fn is_closed(&self, e: Elem) -> bool {
        self.closed_tag(e).is_some()
    }

    /// Inclusion order between two `coS(L)` elements (`S(L)` order).
    pub fn included(&self, a: Elem, b: Elem) -> bool {
        bits::is_subset(self.carriers[a.0], self.carriers[b.0])
    }

    /// Closure in the sense of sublocales, as a `coS(L)` operation.
    pub fn closure(&self, e: Elem) -> Elem {
        self.element_of_mask(closure(&self.sublocale(e)).carrier)
    }

    /// `S` is the `coS`-meet of the closed sublocales above it in `coS(L)`.
    pub fn is_meet_of_closed(&self, e: Elem) -> bool {
        let f = &self.frame;
        let above = self.closed_of.iter().copied().filter(|&c| f.leq(e, c));
        f.meet_all(above) == e
    }

    /// Export: the frame file of `coS(L)` with closed/open tags.
    pub fn to_json(&self) -> serde_json::Value {
        let tag = |v: &Vec<Elem>| -> serde_json::Map<String, serde_json::Value> {
            self.parent
                .elements()
                .map(|a| {
                    (
                        self.parent.name_of(a).to_string(),
                        serde_json::Value::String(self.frame.name_of(v[a.0]).to_string()),
                    )
                })
                .collect()
        };
        let mut value = serde_json::to_value(FrameFile::from_frame(&self.frame, false)).expect("frame files serialize");
        value["tags"] = serde_json::json!({
            "closed": tag(&self.closed_of),
            "open": tag(&self.open_of),
        });
        value
    }
}

/// `{"frame": name, "carrier": [element names]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublocaleFile {
    pub frame: String,
    pub carrier: Vec<String>,
}

impl SublocaleFile {
    pub fn from_sublocale(s: &Sublocale) -> Self {
        SublocaleFile {
            frame: s.parent.name().to_string(),
            carrier: s.elements().map(|e| s.parent.name_of(e).to_string()).collect(),
        }
    }

    pub fn to_sublocale(&self, parent: Arc<FiniteFrame>) -> Result<Sublocale, SublocaleError> {
        if parent.name() != self.frame {
            return Err(SublocaleError::MixedParents);
        }
        let names: Vec<&str> = self.carrier.iter().map(String::as_str).collect();
        Sublocale::from_names(parent, &names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    fn names(s: &Sublocale) -> String {
        s.to_string()
    }

    #[test]
    fn chain_sublocales() {
        let c3 = registry::c3();
        let cos = all_sublocales(&c3).unwrap();
        let mut got: Vec<String> = cos.sublocales().map(|s| names(&s)).collect();
        got.sort();
        assert_eq!(got, ["{0,1}", "{0,a,1}", "{1}", "{a,1}"]);
        assert_eq!(cos.frame().name_of(cos.frame().bottom()), "{0,a,1}");
        assert_eq!(cos.frame().name_of(cos.frame().top()), "{1}");
    }

    #[test]
    fn w5_has_boolean_sublocale_frame() {
        let cos = all_sublocales(&registry::w5()).unwrap();
        assert_eq!(cos.len(), 8);
        assert!(cos.frame().is_boolean());
        assert_eq!(all_sublocales(&registry::trivial()).unwrap().len(), 1);
    }

    #[test]
    fn closed_and_open_examples() {
        let c3 = registry::c3();
        let a = c3.elem("a").unwrap();
        assert_eq!(names(&closed(&c3, a)), "{a,1}");
        assert_eq!(names(&open_(&c3, a)), "{0,1}");
        assert_eq!(closed(&c3, c3.bottom()), Sublocale::whole(c3.clone()));
        assert_eq!(closed(&c3, c3.top()), Sublocale::top_only(c3.clone()));
        assert_eq!(open_(&c3, c3.top()), Sublocale::whole(c3.clone()));
        assert_eq!(open_(&c3, c3.bottom()), Sublocale::top_only(c3.clone()));
    }

    #[test]
    fn joins_and_meets() {
        let c3 = registry::c3();
        let a = c3.elem("a").unwrap();
        let (ca, oa) = (closed(&c3, a), open_(&c3, a));
        assert_eq!(names(&join_s(&c3, &[ca.clone(), oa.clone()]).unwrap()), "{0,a,1}");
        assert_eq!(meet_s(&c3, &[ca.clone(), oa]).unwrap(), Sublocale::top_only(c3.clone()));
        assert_eq!(join_s(&c3, std::slice::from_ref(&ca)).unwrap(), ca);
        let other = closed(&registry::d4(), registry::d4().bottom());
        assert_eq!(join_s(&c3, &[ca, other]), Err(SublocaleError::MixedParents));
    }

    #[test]
    fn closure_and_interior() {
        let c3 = registry::c3();
        let a = c3.elem("a").unwrap();
        let s = Sublocale::from_names(c3.clone(), &["0", "1"]).unwrap();
        assert_eq!(closure(&s), Sublocale::whole(c3.clone()));
        assert_eq!(interior(&closed(&c3, a)), Sublocale::top_only(c3.clone()));
        assert_eq!(closure(&closed(&c3, a)), closed(&c3, a));
    }

    #[test]
    fn rejects_non_sublocales() {
        let c3 = registry::c3();
        assert!(Sublocale::from_names(c3.clone(), &["0", "a"]).is_err());
        // {0, a, 1} minus 1 fails; {a} lacks top
        assert!(Sublocale::from_names(c3, &["a"]).is_err());
    }

    #[test]
    fn subfitness_via_sublocales() {
        assert!(subfit_via_sublocales(&registry::d4()));
        assert!(!subfit_via_sublocales(&registry::c3()));
        assert!(!subfit_via_sublocales(&registry::w5()));
    }

    #[test]
    fn meets_of_closed() {
        let c3 = registry::c3();
        let cos = all_sublocales(&c3).unwrap();
        let a = c3.elem("a").unwrap();
        assert!(cos.is_meet_of_closed(cos.closed(a)));
        assert!(!cos.is_meet_of_closed(cos.open(a)));
        let d4 = registry::d4();
        let cos = all_sublocales(&d4).unwrap();
        assert!(cos
            .frame()
            .regular_elements()
            .into_iter()
            .all(|e| cos.is_meet_of_closed(e)));
    }

    #[test]
    fn least_dense() {
        for f in [registry::c3(), registry::d4(), registry::trivial(), registry::w5()] {
            assert!(least_dense_check(&f).unwrap());
        }
    }

    #[test]
    fn limit() {
        let big = crate::frame::enumerate_frames(8).unwrap().pop().unwrap();
        assert!(matches!(
            all_sublocales(&big),
            Err(SublocaleError::Frame(FrameError::LimitExceeded { .. }))
        ));
    }

    #[test]
    fn file_round_trip() {
        let c3 = registry::c3();
        let s = closed(&c3, c3.elem("a").unwrap());
        let file = SublocaleFile::from_sublocale(&s);
        assert_eq!(file.carrier, ["a", "1"]);
        assert_eq!(file.to_sublocale(c3).unwrap(), s);
    }
}
